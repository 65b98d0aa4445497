//! Row operators B(x) and C(x) for the charged fermion pair.
//!
//! B(x) adds horizontal strips to kets with every row bounded by M: the
//! coefficient of |lambda) in B(x)|mu) is x^{|lambda|-|mu|} when lambda
//! interlaces with mu, else zero. C(x) acts the same way on bras. Each
//! operator has three realizations:
//! - the box-adding rule on partition labels,
//! - a finite product of nilpotent factors 1 + x b(-j)c(j-1) on words
//!   (with the species-swapped factors b(1-k)c(k) on bra words),
//! - an exponential of the quadratic sums Lambda_n = sum_i b(-i)c(i-n).

use crate::fock::bc::BcState;
use crate::fock::bc_words::{BraWordState, WordState};
use crate::fock::{apply_exp_operator, truncate_degree_where};
use crate::partition::interlacing_covers;
use crate::rowops::RowOpError;
use crate::symmetric::{schur, VariableSet};
use fock_exact::{ratio, MultiPoly, Var};

fn strip_rule(state: &BcState, x: Var, m: u32) -> Result<BcState, RowOpError> {
    if state.max_part() > m {
        return Err(RowOpError::PartExceedsM { part: state.max_part(), m });
    }
    let xp = MultiPoly::var(x);
    let mut out = BcState::zero(state.is_dual());
    for (mu, coeff) in state.terms() {
        for lam in interlacing_covers(mu, mu.length() + 1, m, false) {
            out.add_term(lam.clone(), &(coeff * &xp.pow(lam.weight() - mu.weight())));
        }
    }
    Ok(out)
}

/// B(x) on a partition-indexed ket by the box-adding rule.
pub fn apply_b_rule(state: &BcState, x: Var, m: u32) -> Result<BcState, RowOpError> {
    assert!(!state.is_dual(), "B acts on kets");
    strip_rule(state, x, m)
}

/// C(x) on a partition-indexed bra by the box-adding rule.
pub fn apply_c_dual_rule(state: &BcState, x: Var, m: u32) -> Result<BcState, RowOpError> {
    assert!(state.is_dual(), "C acts on bras");
    strip_rule(state, x, m)
}

/// B(x) on ket words as the product over j of 1 + x b(-j)c(j-1), applied
/// in ascending j so strips grow row by row from the bottom. The window
/// floor is the lowest c mode: factor j adds a box of content j, and the
/// lowest addable content is minus the number of rows, which the canonical
/// word records as its lowest c mode.
pub fn apply_b_product(state: &WordState, x: Var, m: u32) -> WordState {
    let xp = MultiPoly::var(x);
    let lo = state.min_c_mode().unwrap_or(0).min(0);
    let mut out = state.clone();
    for j in lo..=(m as i64 - 1) {
        out = out.add(&out.apply_quadratic(&[(xp.clone(), -j, j - 1)]));
    }
    out
}

/// C(x) on bra words as the product over k of 1 + x b(1-k)c(k); on the bra
/// side the row count is the highest b mode.
pub fn apply_c_dual_product(state: &BraWordState, x: Var, m: u32) -> BraWordState {
    let xp = MultiPoly::var(x);
    let lo = state.max_b_mode().map_or(0, |b| (-b).min(0));
    let mut out = state.clone();
    for k in lo..=(m as i64 - 1) {
        out = out.add(&out.apply_quadratic(&[(xp.clone(), 1 - k, k)]));
    }
    out
}

/// B(x) as exp(sum_{n>=1} (x^n/n) Lambda_n) with
/// Lambda_n = sum_{i <= M-1} b(-i)c(i-n). Truncating the x-degree at M is
/// exact: a strip bounded by M adds at most M boxes.
pub fn apply_b_exp(state: &WordState, x: Var, m: u32) -> WordState {
    let xp = MultiPoly::var(x);
    let op = |s: &WordState| {
        let lo = s.min_c_mode().unwrap_or(0).min(0);
        let mut ops = Vec::new();
        for n in 1..=m as i64 {
            let coeff = xp.pow(n as u32).scale(&ratio(1, n));
            for i in lo..=(m as i64 - 1) {
                ops.push((coeff.clone(), -i, i - n));
            }
        }
        s.apply_quadratic(&ops)
            .map_coeffs(|c| truncate_degree_where(c, |v| v == x, m))
    };
    apply_exp_operator(state, op)
}

/// C(x) as exp(sum_{n>=1} (x^n/n) Lambda'_n) with
/// Lambda'_n = sum_{k <= M-1} b(n-k)c(k) acting on bra words.
pub fn apply_c_dual_exp(state: &BraWordState, x: Var, m: u32) -> BraWordState {
    let xp = MultiPoly::var(x);
    let op = |s: &BraWordState| {
        let lo = s.max_b_mode().map_or(0, |b| (-b).min(0));
        let mut ops = Vec::new();
        for n in 1..=m as i64 {
            let coeff = xp.pow(n as u32).scale(&ratio(1, n));
            for k in lo..=(m as i64 - 1) {
                ops.push((coeff.clone(), n - k, k));
            }
        }
        s.apply_quadratic(&ops)
            .map_coeffs(|c| truncate_degree_where(c, |v| v == x, m))
    };
    apply_exp_operator(state, op)
}

/// B(x_1) .. B(x_N)|0>, asserting along the way that the coefficient of
/// each |mu) is the Schur polynomial of mu in the given variables.
pub fn bethe_vector(vars: &VariableSet, m: u32) -> BcState {
    let mut state = BcState::vacuum(false);
    for i in 1..=vars.count {
        state = apply_b_rule(&state, vars.var(i), m).expect("parts stay bounded by M");
    }
    for (mu, coeff) in state.terms() {
        assert_eq!(coeff, &schur(mu, vars), "coefficient of {}", mu.label());
    }
    state
}
