//! Correlation functions, each computed by every route that applies.
//!
//! A correlator is the vacuum expectation of a string of row operators.
//! Every space admits several independent evaluation strategies, registered
//! behind one trait so callers and verifiers can run them all and compare:
//!
//! - `direct`: build bra and ket with the row operators, then pair;
//! - `rectangle-sum`: partition sum over the bounding box;
//! - `determinant`: det(I + T) over hook-Schur entries (bc only);
//! - `series-inverse`: invert the bc polynomial as a series (boson only);
//! - `product-formula`: infinite-cutoff product expansion, certified by
//!   finite-cutoff stabilization (limit requests only).
//!
//! Degree caps count the degree in one variable family: `D = 4` keeps
//! `(x1 y1)^4`. Every correlator monomial has equal x- and y-degree, so
//! this is the same as capping the y-degree.

pub mod plane;
pub mod routes;
pub mod stabilization;

use crate::fock::truncate_degree_where;
use fock_exact::{MultiPoly, TruncatedSeries, Var};
use serde::Serialize;
use std::fmt;
use thiserror::Error;

/// Which Fock space the correlator lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Space {
    Bc,
    Boson,
    Neutral,
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Space::Bc => "bc",
            Space::Boson => "boson",
            Space::Neutral => "neutral",
        })
    }
}

/// Finite mode cutoff or the stabilized limit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MSpec {
    Finite(u32),
    Limit,
}

impl fmt::Display for MSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MSpec::Finite(m) => write!(f, "{m}"),
            MSpec::Limit => f.write_str("limit"),
        }
    }
}

/// Route tags accepted by the registry.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Route {
    Direct,
    RectangleSum,
    Determinant,
    SeriesInverse,
    ProductFormula,
}

impl Route {
    pub const ALL: [Route; 5] = [
        Route::Direct,
        Route::RectangleSum,
        Route::Determinant,
        Route::SeriesInverse,
        Route::ProductFormula,
    ];
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Route::Direct => "direct",
            Route::RectangleSum => "rectangle-sum",
            Route::Determinant => "determinant",
            Route::SeriesInverse => "series-inverse",
            Route::ProductFormula => "product-formula",
        })
    }
}

/// One correlator evaluation request.
#[derive(Debug, Clone, Copy)]
pub struct CorrelatorRequest {
    pub space: Space,
    pub n: u32,
    pub m: MSpec,
    pub d: Option<u32>,
    pub route: Route,
}

#[derive(Debug, Error, PartialEq)]
pub enum CorrelatorError {
    #[error("route {route} does not apply to space {space} at M = {m}")]
    RouteMismatch { route: Route, space: Space, m: MSpec },
    #[error("this request needs a degree cap D")]
    CapRequired,
    #[error("limit coefficients failed to stabilize: {0}")]
    StabilityFailure(String),
    #[error("depth {depth} exceeds the supported bound {bound}")]
    DepthExceeded { depth: u32, bound: u32 },
}

/// Exact polynomial or degree-capped series, depending on the route.
#[derive(Debug, Clone, PartialEq)]
pub enum RouteValue {
    Poly(MultiPoly),
    Series(TruncatedSeries),
}

impl RouteValue {
    pub fn poly(&self) -> &MultiPoly {
        match self {
            RouteValue::Poly(p) => p,
            RouteValue::Series(s) => s.poly(),
        }
    }

    pub fn into_poly(self) -> MultiPoly {
        match self {
            RouteValue::Poly(p) => p,
            RouteValue::Series(s) => s.into_poly(),
        }
    }

    pub fn canonical_text(&self) -> String {
        self.poly().canonical_text()
    }
}

/// One way of computing a correlator.
pub trait CorrelatorRoute: Sync {
    fn tag(&self) -> Route;
    fn supports(&self, req: &CorrelatorRequest) -> bool;
    fn evaluate(&self, req: &CorrelatorRequest) -> Result<RouteValue, CorrelatorError>;
}

/// Every registered route, in reporting order.
pub fn route_registry() -> &'static [&'static dyn CorrelatorRoute] {
    &routes::REGISTRY
}

fn lookup(route: Route) -> &'static dyn CorrelatorRoute {
    route_registry()
        .iter()
        .copied()
        .find(|r| r.tag() == route)
        .expect("registry covers every route tag")
}

/// Evaluates a request through the registry.
pub fn evaluate(req: &CorrelatorRequest) -> Result<RouteValue, CorrelatorError> {
    let strategy = lookup(req.route);
    if !strategy.supports(req) {
        return Err(CorrelatorError::RouteMismatch {
            route: req.route,
            space: req.space,
            m: req.m,
        });
    }
    strategy.evaluate(req)
}

fn expect_space(req: &CorrelatorRequest, want: Space) -> Result<(), CorrelatorError> {
    if req.space == want {
        Ok(())
    } else {
        Err(CorrelatorError::RouteMismatch {
            route: req.route,
            space: req.space,
            m: req.m,
        })
    }
}

/// `<0| C(x_N)...C(x_1) B(y_1)...B(y_N) |0>` as an exact polynomial.
pub fn bc_correlator(req: &CorrelatorRequest) -> Result<MultiPoly, CorrelatorError> {
    expect_space(req, Space::Bc)?;
    Ok(evaluate(req)?.into_poly())
}

/// `<0| C*(x_N)...C*(x_1) B*(y_1)...B*(y_N) |0>` capped at family degree D.
pub fn boson_correlator(req: &CorrelatorRequest) -> Result<TruncatedSeries, CorrelatorError> {
    expect_space(req, Space::Boson)?;
    let d = req.d.ok_or(CorrelatorError::CapRequired)?;
    match evaluate(req)? {
        RouteValue::Series(s) => Ok(s),
        RouteValue::Poly(p) => Ok(TruncatedSeries::new(p, 2 * d)),
    }
}

/// The neutral-fermion correlator as an exact (or cap-truncated) polynomial.
pub fn neutral_correlator(req: &CorrelatorRequest) -> Result<MultiPoly, CorrelatorError> {
    expect_space(req, Space::Neutral)?;
    Ok(evaluate(req)?.into_poly())
}

/// Drops monomials whose x-degree or y-degree exceeds `d`.
pub(crate) fn truncate_xy(p: &MultiPoly, d: u32) -> MultiPoly {
    let x_cut = truncate_degree_where(p, |v| matches!(v, Var::X(_)), d);
    truncate_degree_where(&x_cut, |v| matches!(v, Var::Y(_)), d)
}

/// Smallest monomial on which two polynomials differ, in canonical order.
pub fn first_differing_monomial(a: &MultiPoly, b: &MultiPoly) -> Option<String> {
    let diff = a - b;
    let mono = diff.terms().next().map(|(mono, _)| mono.clone());
    mono.map(|m| MultiPoly::term(fock_exact::rat(1), m).canonical_text())
}

/// Canonical-text result of one route.
#[derive(Debug, Clone, Serialize)]
pub struct RouteResult {
    pub route: String,
    pub value: String,
}

/// Every applicable route for one request, compared pairwise.
#[derive(Debug, Clone, Serialize)]
pub struct RouteReport {
    pub space: String,
    pub n: u32,
    pub m: String,
    pub d: Option<u32>,
    pub routes: Vec<RouteResult>,
    pub agreement: bool,
    pub first_mismatch: Option<String>,
}

/// Runs all routes that support the request and compares their values.
pub fn route_agreement_report(space: Space, n: u32, m: MSpec, d: Option<u32>) -> RouteReport {
    let mut values: Vec<(Route, RouteValue)> = Vec::new();
    let mut results = Vec::new();
    let mut agreement = true;
    let mut first_mismatch = None;
    for strategy in route_registry() {
        let req = CorrelatorRequest { space, n, m, d, route: strategy.tag() };
        if !strategy.supports(&req) {
            continue;
        }
        match strategy.evaluate(&req) {
            Ok(v) => {
                results.push(RouteResult {
                    route: strategy.tag().to_string(),
                    value: v.canonical_text(),
                });
                values.push((strategy.tag(), v));
            }
            Err(e) => {
                agreement = false;
                results.push(RouteResult {
                    route: strategy.tag().to_string(),
                    value: format!("error: {e}"),
                });
            }
        }
    }
    for pair in values.windows(2) {
        if let Some(mono) = first_differing_monomial(pair[0].1.poly(), pair[1].1.poly()) {
            agreement = false;
            first_mismatch = Some(mono);
            break;
        }
    }
    RouteReport {
        space: space.to_string(),
        n,
        m: m.to_string(),
        d,
        routes: results,
        agreement,
        first_mismatch,
    }
}

/// Report for the boson x bc inverse relation.
#[derive(Debug, Clone, Serialize)]
pub struct InverseReport {
    pub n: u32,
    pub m: u32,
    pub d: u32,
    pub pass: bool,
    pub first_mismatch: Option<String>,
}

/// Asserts boson x bc = 1 below the cap, through both boson routes.
pub fn inverse_relation_check(n: u32, m: u32, d: u32) -> InverseReport {
    let bc = routes::rectangle_sum_bc(n, m);
    let mut pass = true;
    let mut first_mismatch = None;
    for route in [Route::Direct, Route::SeriesInverse] {
        let req = CorrelatorRequest {
            space: Space::Boson,
            n,
            m: MSpec::Finite(m),
            d: Some(d),
            route,
        };
        let boson = evaluate(&req).expect("boson routes apply at finite M");
        let product = truncate_xy(&(boson.poly() * &bc), d);
        if !product.is_one() {
            pass = false;
            if first_mismatch.is_none() {
                first_mismatch = first_differing_monomial(&product, &MultiPoly::one());
            }
        }
    }
    InverseReport { n, m, d, pass, first_mismatch }
}
