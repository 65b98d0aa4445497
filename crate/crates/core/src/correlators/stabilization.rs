//! Finite-cutoff stabilization behind the limit statements.
//!
//! As the cutoff M grows, the low-degree coefficients of the N = 1
//! correlators freeze at their limit values. These reports pin that down
//! against the closed forms 1/(1-xy), 1-xy, and (1+xy)/(1-xy).

use super::routes::{rectangle_sum_bc, rectangle_sum_neutral};
use super::{evaluate, truncate_xy, CorrelatorRequest, MSpec, Route, Space};
use fock_exact::{rat, Monomial, MultiPoly, Var};
use serde::Serialize;

/// Outcome for one space at one cutoff.
#[derive(Debug, Clone, Serialize)]
pub struct StabilizationEntry {
    pub space: String,
    pub m: u32,
    pub pass: bool,
    pub first_failing_degree: Option<u32>,
}

/// Outcomes across all requested cutoffs.
#[derive(Debug, Clone, Serialize)]
pub struct StabilizationReport {
    pub n_max: u32,
    pub entries: Vec<StabilizationEntry>,
    pub pass: bool,
}

/// Checks the N = 1 correlators against their limit series below each cutoff.
pub fn heisenberg_stabilization_check(n_max: u32, m_list: &[u32]) -> StabilizationReport {
    let mut entries = Vec::new();
    for &m in m_list {
        entries.push(bc_entry(n_max, m));
        entries.push(boson_entry(n_max, m));
        entries.push(neutral_entry(n_max, m));
    }
    let pass = entries.iter().all(|e| e.pass);
    StabilizationReport { n_max, entries, pass }
}

fn xy_pow(k: u32) -> Monomial {
    Monomial::from_pairs([(Var::X(1), k), (Var::Y(1), k)])
}

fn entry(space: &str, m: u32, fail: Option<u32>) -> StabilizationEntry {
    StabilizationEntry {
        space: space.to_string(),
        m,
        pass: fail.is_none(),
        first_failing_degree: fail,
    }
}

/// Lowest x-degree carried by any term, used to locate a failure.
fn lowest_x_degree(p: &MultiPoly) -> Option<u32> {
    p.terms()
        .map(|(mono, _)| mono.degree_where(|v| matches!(v, Var::X(_))))
        .min()
}

fn bc_entry(n_max: u32, m: u32) -> StabilizationEntry {
    let p = rectangle_sum_bc(1, m);
    // every coefficient of 1/(1-xy) is 1
    let fail = (0..=n_max.min(m)).find(|&k| p.coeff(&xy_pow(k)) != rat(1));
    entry("bc", m, fail)
}

fn boson_entry(n_max: u32, m: u32) -> StabilizationEntry {
    let d = n_max.min(m);
    let req = CorrelatorRequest {
        space: Space::Boson,
        n: 1,
        m: MSpec::Finite(m),
        d: Some(d),
        route: Route::Direct,
    };
    let boson = evaluate(&req).expect("direct boson route").into_poly();
    // the product with the bc polynomial telescopes to 1 below the cap
    let product = truncate_xy(&(&boson * &rectangle_sum_bc(1, m)), d);
    let mut fail = if product.is_one() {
        None
    } else {
        lowest_x_degree(&(&product - &MultiPoly::one()))
    };
    if fail.is_none() {
        // below the cutoff the series freezes at 1 - xy
        fail = (0..=n_max.min(m.saturating_sub(1))).find(|&k| {
            let want = match k {
                0 => rat(1),
                1 => rat(-1),
                _ => rat(0),
            };
            boson.coeff(&xy_pow(k)) != want
        });
    }
    entry("boson", m, fail)
}

fn neutral_entry(n_max: u32, m: u32) -> StabilizationEntry {
    let p = rectangle_sum_neutral(1, m);
    // (1+xy)/(1-xy) = 1 + 2xy + 2(xy)^2 + ...
    let fail = (0..=n_max.min(m)).find(|&k| {
        let want = if k == 0 { rat(1) } else { rat(2) };
        p.coeff(&xy_pow(k)) != want
    });
    entry("neutral", m, fail)
}
