//! Row operators B*(x) and C*(x) for the charged bosons.
//!
//! These raise the mode weight without bound, so every realization works
//! under an explicit weight cap. Three cross-checking realizations:
//! - an exponential of the quadratic sums
//!   LamBar_n = sum_{i <= M} phi_{-i} phi*_{i-n} with coefficients
//!   ((-1)^{n+1}/n) x^n,
//! - an ordered product of factors exp(x phi_{-i} phi*_{i-1}), the ket
//!   meeting low factors first,
//! - a closed form on the vacuum whose exponent has hook Schur
//!   coefficients and commuting creator pairs.
//!
//! C*(x) acts on bras by the adjoint: species swap with mode negation,
//! which reverses the product order so bras again meet low factors first.

use crate::fock::apply_exp_operator;
use crate::fock::boson::BosonState;
use crate::symmetric::{hook_schur, VariableSet};
use fock_exact::{rat, ratio, MultiPoly, Var};

fn alt_inv(n: i64) -> fock_exact::Rational {
    if n % 2 == 1 {
        ratio(1, n)
    } else {
        ratio(-1, n)
    }
}

/// B*(x) on kets as exp(sum_n ((-1)^{n+1}/n) x^n LamBar_n). The window
/// floor is minus the largest phi* slot: lower terms annihilate.
pub fn apply_b_star_exp(state: &BosonState, x: Var, m: u32, cap: u32) -> BosonState {
    assert!(!state.is_dual(), "B* acts on kets");
    let xp = MultiPoly::var(x);
    let op = |s: &BosonState| {
        let lo = s.max_star_slot().map_or(1, |t| -(t as i64));
        let mut ops = Vec::new();
        for n in 1..=cap as i64 {
            let coeff = xp.pow(n as u32).scale(&alt_inv(n));
            for i in lo..=m as i64 {
                ops.push((coeff.clone(), -i, i - n));
            }
        }
        s.apply_pair(&ops).truncate_weight(cap)
    };
    apply_exp_operator(state, op)
}

/// B*(x) on kets as the ordered product of exp(x phi_{-i} phi*_{i-1})
/// over i up to M; each factor raises the weight by one per power of x,
/// so its exponential terminates under the cap.
pub fn apply_b_star_product(state: &BosonState, x: Var, m: u32, cap: u32) -> BosonState {
    assert!(!state.is_dual(), "B* acts on kets");
    let xp = MultiPoly::var(x);
    let lo = -((state.max_star_slot().unwrap_or(0) + cap) as i64);
    let mut out = state.clone();
    for i in lo..=m as i64 {
        let ops = [(xp.clone(), -i, i - 1)];
        out = apply_exp_operator(&out, |s: &BosonState| {
            s.apply_pair(&ops).truncate_weight(cap)
        });
    }
    out
}

/// C*(x) on bras: the mirror exponential with
/// LamBar'_n = sum_{i <= M} phi_{n-i} phi*_i.
pub fn apply_c_star_exp(state: &BosonState, x: Var, m: u32, cap: u32) -> BosonState {
    assert!(state.is_dual(), "C* acts on bras");
    let xp = MultiPoly::var(x);
    let op = |s: &BosonState| {
        let lo = s.max_phi_slot().map_or(1, |t| -(t as i64));
        let mut ops = Vec::new();
        for n in 1..=cap as i64 {
            let coeff = xp.pow(n as u32).scale(&alt_inv(n));
            for i in lo..=m as i64 {
                ops.push((coeff.clone(), n - i, i));
            }
        }
        s.apply_pair(&ops).truncate_weight(cap)
    };
    apply_exp_operator(state, op)
}

/// C*(x) on bras as the ordered product of exp(x phi_{1-i} phi*_i).
pub fn apply_c_star_product(state: &BosonState, x: Var, m: u32, cap: u32) -> BosonState {
    assert!(state.is_dual(), "C* acts on bras");
    let xp = MultiPoly::var(x);
    let lo = -((state.max_phi_slot().unwrap_or(0) + cap) as i64);
    let mut out = state.clone();
    for i in lo..=m as i64 {
        let ops = [(xp.clone(), 1 - i, i)];
        out = apply_exp_operator(&out, |s: &BosonState| {
            s.apply_pair(&ops).truncate_weight(cap)
        });
    }
    out
}

/// B*(x_1) .. B*(x_N)|0> in closed form: the exponent is
/// sum_{m,n} (-1)^{m-1} s_{(m,1^{n-1})}(x) phi_{-m} phi*_{1-n}, a sum of
/// commuting creator pairs.
pub fn b_star_closed_form(vars: &VariableSet, m: u32, cap: u32) -> BosonState {
    let mut ops = Vec::new();
    for row in 1..=m {
        for n in 1..=vars.count {
            let sign = if row % 2 == 1 { rat(1) } else { rat(-1) };
            let coeff = hook_schur(row, n, vars).scale(&sign);
            ops.push((coeff, -(row as i64), 1 - n as i64));
        }
    }
    apply_exp_operator(&BosonState::vacuum(false), |s: &BosonState| {
        s.apply_pair(&ops).truncate_weight(cap)
    })
}

/// <0| C*(x_1) .. C*(x_N) in closed form, the mirror of
/// `b_star_closed_form`.
pub fn c_star_closed_form(vars: &VariableSet, m: u32, cap: u32) -> BosonState {
    let mut ops = Vec::new();
    for row in 1..=m {
        for n in 1..=vars.count {
            let sign = if row % 2 == 1 { rat(1) } else { rat(-1) };
            let coeff = hook_schur(row, n, vars).scale(&sign);
            ops.push((coeff, n as i64 - 1, row as i64));
        }
    }
    apply_exp_operator(&BosonState::vacuum(true), |s: &BosonState| {
        s.apply_pair(&ops).truncate_weight(cap)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::boson::pair_boson;

    #[test]
    fn three_realizations_agree_on_kets() {
        for m in 1..=3u32 {
            let y1 = Var::Y(1);
            let vac = BosonState::vacuum(false);
            let exp = apply_b_star_exp(&vac, y1, m, 4);
            let product = apply_b_star_product(&vac, y1, m, 4);
            let closed = b_star_closed_form(&VariableSet::y(1), m, 4);
            assert_eq!(exp, product, "M = {m}");
            assert_eq!(exp, closed, "M = {m}");
        }
    }

    #[test]
    fn three_realizations_agree_on_bras() {
        for m in 1..=3u32 {
            let x1 = Var::X(1);
            let vac = BosonState::vacuum(true);
            let exp = apply_c_star_exp(&vac, x1, m, 4);
            let product = apply_c_star_product(&vac, x1, m, 4);
            let closed = c_star_closed_form(&VariableSet::x(1), m, 4);
            assert_eq!(exp, product, "M = {m}");
            assert_eq!(exp, closed, "M = {m}");
        }
    }

    #[test]
    fn two_variable_states_match_closed_form() {
        let vars = VariableSet::y(2);
        let vac = BosonState::vacuum(false);
        let by_exp = apply_b_star_exp(&apply_b_star_exp(&vac, Var::Y(2), 2, 4), Var::Y(1), 2, 4);
        let by_product =
            apply_b_star_product(&apply_b_star_product(&vac, Var::Y(2), 2, 4), Var::Y(1), 2, 4);
        let closed = b_star_closed_form(&vars, 2, 4);
        assert_eq!(by_exp, closed);
        assert_eq!(by_product, closed);
    }

    #[test]
    fn vacuum_pairing_reproduces_the_alternating_series() {
        let bra = apply_c_star_exp(&BosonState::vacuum(true), Var::X(1), 1, 2);
        let ket = apply_b_star_exp(&BosonState::vacuum(false), Var::Y(1), 1, 2);
        let value = pair_boson(&bra, &ket).unwrap();
        assert_eq!(value.canonical_text(), "1 - x1*y1 + x1^2*y1^2");
    }

    #[test]
    fn weight_matches_x_degree_and_charge_is_zero() {
        let state = apply_b_star_exp(&BosonState::vacuum(false), Var::Y(1), 2, 4);
        assert!(state.num_terms() > 1);
        for (w, coeff) in state.terms() {
            assert_eq!(w.charge(), 0);
            for (mono, _) in coeff.terms() {
                assert_eq!(mono.total_degree(), w.weight(), "word {w:?}");
            }
        }
    }
}
