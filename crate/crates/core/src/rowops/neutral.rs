//! Row operators Btilde(x) and Ctilde(x) for the neutral fermions.
//!
//! Btilde adds horizontal strips between strict partitions, weighting each
//! transition nu -> mu by x^{|mu|-|nu|} times a power of two counting the
//! rows that moved: 2^{#(mu not in nu) - l(mu) + l(nu)}. Ctilde acts on
//! bras with the extra sign (-1)^{|mu|-|nu| + T(l(mu)) - T(l(nu))}, T the
//! triangular numbers. Each also has a product realization over
//! factors exp((x/2)(-1)^j phi_{1-j} phi_j); the factors square to zero,
//! which the product checks on every state rather than assuming.

use crate::fock::neutral::{NeutralState, NeutralWord};
use crate::partition::interlacing_covers;
use crate::rowops::RowOpError;
use fock_exact::{pow2, ratio, MultiPoly, Var};

fn triangular(l: usize) -> usize {
    l * (l.saturating_sub(1)) / 2
}

fn strict_rule(state: &NeutralState, x: Var, m: u32, dual_sign: bool) -> Result<NeutralState, RowOpError> {
    if let Some(top) = state.max_mode() {
        if top > m {
            return Err(RowOpError::PartExceedsM { part: top, m });
        }
    }
    let base = MultiPoly::var(x);
    let mut out = NeutralState::zero(state.is_dual());
    for (w, coeff) in state.terms() {
        debug_assert_eq!(w.zero, w.modes.len() % 2 == 1, "canonical word expected");
        let nu = w.partition();
        for mu in interlacing_covers(&nu, nu.length() + 1, m, true) {
            let fresh = mu.parts().iter().filter(|p| !nu.parts().contains(p)).count();
            let twos = fresh as i64 - mu.length() as i64 + nu.length() as i64;
            let mut value = pow2(twos);
            if dual_sign {
                let flips = (mu.weight() - nu.weight()) as usize + triangular(mu.length())
                    - triangular(nu.length());
                if flips % 2 == 1 {
                    value = -value;
                }
            }
            let step = base.pow(mu.weight() - nu.weight()).scale(&value);
            let word = NeutralWord { modes: mu.parts().to_vec(), zero: mu.length() % 2 == 1 };
            out.add_word(word, &(coeff * &step));
        }
    }
    Ok(out)
}

/// Btilde(x) on kets by the strict strip rule.
pub fn apply_b_tilde_rule(state: &NeutralState, x: Var, m: u32) -> Result<NeutralState, RowOpError> {
    assert!(!state.is_dual(), "Btilde acts on kets");
    strict_rule(state, x, m, false)
}

/// Ctilde(x) on bras by the strict strip rule with the triangular sign.
pub fn apply_c_tilde_dual_rule(
    state: &NeutralState,
    x: Var,
    m: u32,
) -> Result<NeutralState, RowOpError> {
    assert!(state.is_dual(), "Ctilde acts on bras");
    strict_rule(state, x, m, true)
}

fn nilpotent_step(
    state: &NeutralState,
    coeff: &MultiPoly,
    p: i64,
    q: i64,
) -> Result<NeutralState, RowOpError> {
    let once = state.apply_pair(&[(MultiPoly::one(), p, q)]);
    if !once.apply_pair(&[(MultiPoly::one(), p, q)]).is_zero() {
        return Err(RowOpError::NonNilpotentFactor);
    }
    Ok(state.add(&once.scale(coeff)))
}

/// Btilde(x) on kets as the ordered product over j of
/// exp((x/2)(-1)^j phi_{1-j} phi_j), low factors meeting the ket first.
pub fn apply_b_tilde_product(
    state: &NeutralState,
    x: Var,
    m: u32,
) -> Result<NeutralState, RowOpError> {
    assert!(!state.is_dual(), "Btilde acts on kets");
    let xp = MultiPoly::var(x);
    let mut out = state.clone();
    for j in (1 - m as i64)..=(m as i64) {
        let c = xp.scale(&if j.rem_euclid(2) == 0 { ratio(1, 2) } else { ratio(-1, 2) });
        out = nilpotent_step(&out, &c, 1 - j, j)?;
    }
    Ok(out)
}

/// Ctilde(x) on bras as the ordered product over i of
/// exp((x/2)(-1)^{i-1} phi_{-i} phi_{i-1}), low factors meeting the bra
/// first.
pub fn apply_c_tilde_product(
    state: &NeutralState,
    x: Var,
    m: u32,
) -> Result<NeutralState, RowOpError> {
    assert!(state.is_dual(), "Ctilde acts on bras");
    let xp = MultiPoly::var(x);
    let mut out = state.clone();
    for i in (1 - m as i64)..=(m as i64) {
        let c = xp.scale(&if i.rem_euclid(2) == 1 { ratio(1, 2) } else { ratio(-1, 2) });
        out = nilpotent_step(&out, &c, -i, i - 1)?;
    }
    Ok(out)
}
