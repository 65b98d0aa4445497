//! The five registered correlator routes.
//!
//! - `Direct` grows bra and ket with the row-operator rules (exact for the
//!   fermionic spaces, weight-capped for bosons) and pairs them.
//! - `RectangleSum` sums Schur or Schur-Q squares over the bounding box.
//! - `Determinant` expands det(I + T) with hook-Schur entries.
//! - `SeriesInverse` inverts the bc polynomial as a truncated series.
//! - `ProductFormula` expands the infinite-cutoff products and certifies
//!   them against finite-cutoff values at two successive cutoffs.

use super::{truncate_xy, CorrelatorError, CorrelatorRequest, CorrelatorRoute, MSpec, Route,
    RouteValue, Space};
use crate::fock::bc::{pair_bc, BcState};
use crate::fock::boson::{pair_boson, BosonState};
use crate::fock::neutral::{pair_neutral, NeutralState};
use crate::partition::enumerate_rectangle;
use crate::rowops::bc::{apply_b_rule, apply_c_dual_rule};
use crate::rowops::boson::{apply_b_star_exp, apply_c_star_exp};
use crate::rowops::neutral::{apply_b_tilde_rule, apply_c_tilde_dual_rule};
use crate::symmetric::{schur, schur_q, schur_q_halved, HookSchurCache, VariableSet};
use fock_exact::{poly_det, rat, Monomial, MultiPoly, TruncatedSeries, Var};

pub(crate) static REGISTRY: [&dyn CorrelatorRoute; 5] =
    [&Direct, &RectangleSum, &Determinant, &SeriesInverse, &ProductFormula];

fn finite_m(req: &CorrelatorRequest) -> Option<u32> {
    match req.m {
        MSpec::Finite(m) => Some(m),
        MSpec::Limit => None,
    }
}

struct Direct;

impl CorrelatorRoute for Direct {
    fn tag(&self) -> Route {
        Route::Direct
    }

    fn supports(&self, req: &CorrelatorRequest) -> bool {
        finite_m(req).is_some()
    }

    fn evaluate(&self, req: &CorrelatorRequest) -> Result<RouteValue, CorrelatorError> {
        let m = finite_m(req).expect("support was checked");
        match req.space {
            Space::Bc => {
                let mut ket = BcState::vacuum(false);
                let mut bra = BcState::vacuum(true);
                for i in (1..=req.n).rev() {
                    ket = apply_b_rule(&ket, Var::Y(i), m).expect("rows stay inside the box");
                    bra = apply_c_dual_rule(&bra, Var::X(i), m).expect("rows stay inside the box");
                }
                Ok(RouteValue::Poly(pair_bc(&bra, &ket).expect("bra meets ket")))
            }
            Space::Neutral => {
                let mut ket = NeutralState::vacuum(false);
                let mut bra = NeutralState::vacuum(true);
                for i in (1..=req.n).rev() {
                    ket = apply_b_tilde_rule(&ket, Var::Y(i), m)
                        .expect("rows stay inside the box");
                    bra = apply_c_tilde_dual_rule(&bra, Var::X(i), m)
                        .expect("rows stay inside the box");
                }
                Ok(RouteValue::Poly(pair_neutral(&bra, &ket).expect("bra meets ket")))
            }
            Space::Boson => {
                let d = req.d.ok_or(CorrelatorError::CapRequired)?;
                let mut ket = BosonState::vacuum(false);
                let mut bra = BosonState::vacuum(true);
                for i in (1..=req.n).rev() {
                    ket = apply_b_star_exp(&ket, Var::Y(i), m, d);
                    bra = apply_c_star_exp(&bra, Var::X(i), m, d);
                }
                let p = pair_boson(&bra, &ket).expect("bra meets ket");
                Ok(RouteValue::Series(TruncatedSeries::new(p, 2 * d)))
            }
        }
    }
}

/// Schur square sum over diagrams inside the `[N, M]` box.
pub(crate) fn rectangle_sum_bc(n: u32, m: u32) -> MultiPoly {
    let xs = VariableSet::x(n);
    let ys = VariableSet::y(n);
    let mut total = MultiPoly::zero();
    for mu in enumerate_rectangle(n as usize, m, false) {
        total = &total + &(&schur(&mu, &xs) * &schur(&mu, &ys));
    }
    total
}

/// Halved Schur-Q square sum over strict diagrams with parts at most `m`.
pub(crate) fn rectangle_sum_neutral(n: u32, m: u32) -> MultiPoly {
    let xs = VariableSet::x(n);
    let ys = VariableSet::y(n);
    let mut total = MultiPoly::zero();
    for mu in enumerate_rectangle(m as usize, m, true) {
        // a Q-polynomial in fewer variables than rows vanishes
        let (Ok(qx), Ok(qy)) = (schur_q_halved(&mu, &xs), schur_q(&mu, &ys)) else {
            continue;
        };
        total = &total + &(&qx * &qy);
    }
    total
}

struct RectangleSum;

impl CorrelatorRoute for RectangleSum {
    fn tag(&self) -> Route {
        Route::RectangleSum
    }

    fn supports(&self, req: &CorrelatorRequest) -> bool {
        finite_m(req).is_some() && matches!(req.space, Space::Bc | Space::Neutral)
    }

    fn evaluate(&self, req: &CorrelatorRequest) -> Result<RouteValue, CorrelatorError> {
        let m = finite_m(req).expect("support was checked");
        let poly = match req.space {
            Space::Bc => rectangle_sum_bc(req.n, m),
            Space::Neutral => rectangle_sum_neutral(req.n, m),
            Space::Boson => unreachable!("support was checked"),
        };
        Ok(RouteValue::Poly(poly))
    }
}

struct Determinant;

impl CorrelatorRoute for Determinant {
    fn tag(&self) -> Route {
        Route::Determinant
    }

    fn supports(&self, req: &CorrelatorRequest) -> bool {
        finite_m(req).is_some() && req.space == Space::Bc
    }

    fn evaluate(&self, req: &CorrelatorRequest) -> Result<RouteValue, CorrelatorError> {
        let m = finite_m(req).expect("support was checked");
        let xs = VariableSet::x(req.n);
        let ys = VariableSet::y(req.n);
        let mut cx = HookSchurCache::new();
        let mut cy = HookSchurCache::new();
        let matrix: Vec<Vec<MultiPoly>> = (1..=m)
            .map(|k| {
                (1..=m)
                    .map(|t| {
                        let mut entry =
                            if k == t { MultiPoly::one() } else { MultiPoly::zero() };
                        for rank in 1..=req.n {
                            entry = &entry + &(&cx.get(k, rank, &xs) * &cy.get(t, rank, &ys));
                        }
                        entry
                    })
                    .collect()
            })
            .collect();
        Ok(RouteValue::Poly(poly_det(&matrix).expect("square matrix")))
    }
}

struct SeriesInverse;

impl CorrelatorRoute for SeriesInverse {
    fn tag(&self) -> Route {
        Route::SeriesInverse
    }

    fn supports(&self, req: &CorrelatorRequest) -> bool {
        finite_m(req).is_some() && req.space == Space::Boson
    }

    fn evaluate(&self, req: &CorrelatorRequest) -> Result<RouteValue, CorrelatorError> {
        let m = finite_m(req).expect("support was checked");
        let d = req.d.ok_or(CorrelatorError::CapRequired)?;
        let series = TruncatedSeries::new(rectangle_sum_bc(req.n, m), 2 * d)
            .inverse()
            .expect("constant term is 1");
        Ok(RouteValue::Series(series))
    }
}

/// Infinite-cutoff product expansion, capped at family degree `d`.
pub(crate) fn limit_product_series(space: Space, n: u32, d: u32) -> TruncatedSeries {
    let cap = 2 * d;
    let mut acc = TruncatedSeries::one(cap);
    for i in 1..=n {
        for j in 1..=n {
            let xy = MultiPoly::term(
                rat(1),
                Monomial::from_pairs([(Var::X(i), 1), (Var::Y(j), 1)]),
            );
            let minus = TruncatedSeries::new(&MultiPoly::one() - &xy, cap);
            acc = match space {
                Space::Boson => &acc * &minus,
                Space::Bc => &acc * &minus.inverse().expect("unit constant term"),
                Space::Neutral => {
                    let plus = TruncatedSeries::new(&MultiPoly::one() + &xy, cap);
                    &(&acc * &plus) * &minus.inverse().expect("unit constant term")
                }
            };
        }
    }
    acc
}

/// Finite-cutoff value truncated to family degree `d`.
fn finite_sample(space: Space, n: u32, m: u32, d: u32) -> MultiPoly {
    let poly = match space {
        Space::Bc => rectangle_sum_bc(n, m),
        Space::Neutral => rectangle_sum_neutral(n, m),
        Space::Boson => TruncatedSeries::new(rectangle_sum_bc(n, m), 2 * d)
            .inverse()
            .expect("unit constant term")
            .into_poly(),
    };
    truncate_xy(&poly, d)
}

struct ProductFormula;

impl CorrelatorRoute for ProductFormula {
    fn tag(&self) -> Route {
        Route::ProductFormula
    }

    fn supports(&self, req: &CorrelatorRequest) -> bool {
        req.m == MSpec::Limit
    }

    fn evaluate(&self, req: &CorrelatorRequest) -> Result<RouteValue, CorrelatorError> {
        let d = req.d.ok_or(CorrelatorError::CapRequired)?;
        let lo = finite_sample(req.space, req.n, d + 1, d);
        let hi = finite_sample(req.space, req.n, d + 2, d);
        if lo != hi {
            return Err(CorrelatorError::StabilityFailure(format!(
                "degree-{d} coefficients differ between M = {} and M = {}",
                d + 1,
                d + 2
            )));
        }
        let product = truncate_xy(limit_product_series(req.space, req.n, d).poly(), d);
        if product != lo {
            return Err(CorrelatorError::StabilityFailure(format!(
                "product formula differs from the stabilized finite value at M = {}",
                d + 1
            )));
        }
        Ok(RouteValue::Series(TruncatedSeries::new(product, 2 * d)))
    }
}
