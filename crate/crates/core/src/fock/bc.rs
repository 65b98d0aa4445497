//! Charge-zero states of the charged fermion pair, indexed by partitions.
//!
//! The basis ket for a partition with parts m_i = mu_i - i is
//! b(-m_1)..b(-m_l) c(-l)..c(-1)|0>, and the bra mirrors it as
//! <0|b(1)..b(l) c(m_l)..c(m_1). Conversions to reduced words go through
//! the word engine, so signs are derived rather than postulated.

use crate::fock::bc_words::{BcMode, BraWordState, WordState};
use crate::fock::FockError;
use crate::partition::Partition;
use fock_exact::MultiPoly;
use std::collections::BTreeMap;

/// Linear combination of partition basis states, bra or ket.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BcState {
    terms: BTreeMap<Partition, MultiPoly>,
    dual: bool,
}

impl BcState {
    pub fn zero(dual: bool) -> Self {
        BcState { terms: BTreeMap::new(), dual }
    }

    pub fn vacuum(dual: bool) -> Self {
        Self::basis(Partition::empty(), dual)
    }

    pub fn basis(mu: Partition, dual: bool) -> Self {
        let mut s = Self::zero(dual);
        s.add_term(mu, &MultiPoly::one());
        s
    }

    pub fn is_dual(&self) -> bool {
        self.dual
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &MultiPoly)> {
        self.terms.iter()
    }

    pub fn coeff(&self, mu: &Partition) -> MultiPoly {
        self.terms.get(mu).cloned().unwrap_or_else(MultiPoly::zero)
    }

    pub fn add_term(&mut self, mu: Partition, coeff: &MultiPoly) {
        if coeff.is_zero() {
            return;
        }
        let sum = match self.terms.get(&mu) {
            Some(existing) => existing + coeff,
            None => coeff.clone(),
        };
        if sum.is_zero() {
            self.terms.remove(&mu);
        } else {
            self.terms.insert(mu, sum);
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, FockError> {
        if self.dual != other.dual {
            return Err(FockError::FlagMismatch);
        }
        let mut out = self.clone();
        for (mu, c) in other.terms() {
            out.add_term(mu.clone(), c);
        }
        Ok(out)
    }

    pub fn scale(&self, c: &MultiPoly) -> Self {
        let mut out = Self::zero(self.dual);
        for (mu, coeff) in self.terms() {
            out.add_term(mu.clone(), &(coeff * c));
        }
        out
    }

    /// Largest part over all labels, 0 for the vacuum.
    pub fn max_part(&self) -> u32 {
        self.terms.keys().map(|mu| mu.part(1)).max().unwrap_or(0)
    }

    pub fn max_length(&self) -> usize {
        self.terms.keys().map(|mu| mu.length()).max().unwrap_or(0)
    }
}

/// (lambda| , |mu) -> delta_{lambda mu}, extended bilinearly.
pub fn pair_bc(bra: &BcState, ket: &BcState) -> Result<MultiPoly, FockError> {
    if !bra.is_dual() || ket.is_dual() {
        return Err(FockError::FlagMismatch);
    }
    let mut total = MultiPoly::zero();
    for (mu, bc) in bra.terms() {
        let kc = ket.coeff(mu);
        total = &total + &(bc * &kc);
    }
    Ok(total)
}

/// The reduced word for a basis ket, built from the defining product.
pub fn ket_word_state(mu: &Partition) -> WordState {
    let l = mu.length();
    let mut state = WordState::vacuum();
    for i in 1..=l {
        state = state.apply_mode(BcMode::C(-(i as i64)));
    }
    for i in (1..=l).rev() {
        let m = mu.part(i) as i64 - i as i64;
        state = state.apply_mode(BcMode::B(-m));
    }
    debug_assert_eq!(state.num_terms(), 1);
    state
}

/// The reduced word for a basis bra, built from the defining product.
pub fn bra_word_state(mu: &Partition) -> BraWordState {
    let l = mu.length();
    let mut state = BraWordState::vacuum();
    for i in 1..=l {
        state = state.apply_mode(BcMode::B(i as i64));
    }
    for i in (1..=l).rev() {
        let m = mu.part(i) as i64 - i as i64;
        state = state.apply_mode(BcMode::C(m));
    }
    debug_assert_eq!(state.num_terms(), 1);
    state
}

/// Expand a partition-indexed ket into reduced words.
pub fn to_word_state(state: &BcState) -> WordState {
    assert!(!state.is_dual(), "kets only");
    let mut out = WordState::zero();
    for (mu, coeff) in state.terms() {
        for (w, c) in ket_word_state(mu).terms() {
            out.add_word(w.clone(), &(coeff * c));
        }
    }
    out
}

/// Expand a partition-indexed bra into reduced words.
pub fn to_bra_word_state(state: &BcState) -> BraWordState {
    assert!(state.is_dual(), "bras only");
    let mut out = BraWordState::zero();
    for (mu, coeff) in state.terms() {
        for (w, c) in bra_word_state(mu).terms() {
            out.add_word(w.clone(), &(coeff * c));
        }
    }
    out
}

/// Recover the partition labelled by a reduced charge-zero word, together
/// with the sign relating the word to the basis state: word = sign * |mu).
fn word_partition(b: &[i64], c: &[i64]) -> Partition {
    debug_assert_eq!(b.len(), c.len());
    let d = b.len();
    // b modes ascending are -(arm_1) < .. < -(arm_d); legs likewise
    let arms: Vec<i64> = b.iter().map(|&i| -i).collect();
    let legs: Vec<i64> = c.iter().map(|&j| -j - 1).collect();
    let col_heights: Vec<i64> = (0..d).map(|j| legs[j] + j as i64 + 1).collect();
    let total_rows = col_heights.first().copied().unwrap_or(0);
    let mut parts = Vec::new();
    for i in 1..=total_rows {
        let p = if i as usize <= d {
            arms[i as usize - 1] + i
        } else {
            col_heights.iter().filter(|&&h| h >= i).count() as i64
        };
        parts.push(p as u32);
    }
    Partition::new(parts)
}

/// Collapse a charge-zero word state back onto the partition basis.
pub fn from_word_state(ws: &WordState) -> BcState {
    let mut out = BcState::zero(false);
    for (w, coeff) in ws.terms() {
        assert_eq!(w.charge(), 0, "charge-zero words only");
        let mu = word_partition(&w.b, &w.c);
        let canonical = ket_word_state(&mu);
        let (cw, cc) = canonical.terms().next().expect("basis word");
        assert_eq!(cw, w, "word does not label a basis state");
        let sign = cc.constant_term();
        out.add_term(mu, &coeff.scale(&sign));
    }
    out
}

/// Collapse a charge-zero bra word state back onto the partition basis.
pub fn from_bra_word_state(ws: &BraWordState) -> BcState {
    let mut out = BcState::zero(true);
    for (w, coeff) in ws.terms() {
        // the bra mirror swaps species: bra c modes are the ket's negated
        // b modes (arms) and bra b modes the ket's negated c modes (legs)
        assert_eq!(w.b.len(), w.c.len(), "charge-zero words only");
        let kb: Vec<i64> = w.c.iter().rev().map(|&j| -j).collect();
        let kc: Vec<i64> = w.b.iter().rev().map(|&i| -i).collect();
        let mu = word_partition(&kb, &kc);
        let canonical = bra_word_state(&mu);
        let (cw, cc) = canonical.terms().next().expect("basis word");
        assert_eq!(cw, w, "word does not label a basis state");
        let sign = cc.constant_term();
        out.add_term(mu, &coeff.scale(&sign));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::bc_words::{pair_word_states, BraWord, KetWord};
    use crate::partition::enumerate_rectangle;
    use fock_exact::rat;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec())
    }

    #[test]
    fn one_one_reduces_with_sign() {
        let ws = ket_word_state(&p(&[1, 1]));
        let expect = KetWord { b: vec![0], c: vec![-2] };
        assert_eq!(ws.coeff(&expect), MultiPoly::constant(rat(-1)));
    }

    #[test]
    fn word_round_trip() {
        for mu in enumerate_rectangle(3, 3, false) {
            let ket = BcState::basis(mu.clone(), false);
            assert_eq!(from_word_state(&to_word_state(&ket)), ket, "{}", mu.label());
            let bra = BcState::basis(mu.clone(), true);
            assert_eq!(from_bra_word_state(&to_bra_word_state(&bra)), bra, "{}", mu.label());
        }
    }

    #[test]
    fn word_pairing_is_kronecker() {
        for lam in enumerate_rectangle(3, 3, false) {
            let bra = bra_word_state(&lam);
            for mu in enumerate_rectangle(3, 3, false) {
                let ket = ket_word_state(&mu);
                let value = pair_word_states(&bra, &ket);
                let expect = if lam == mu { MultiPoly::one() } else { MultiPoly::zero() };
                assert_eq!(value, expect, "({}|{})", lam.label(), mu.label());
            }
        }
    }

    #[test]
    fn partition_pairing_examples() {
        let bra = BcState::basis(p(&[2, 1]), true);
        let ket = BcState::basis(p(&[2, 1]), false);
        assert_eq!(pair_bc(&bra, &ket).unwrap(), MultiPoly::one());
        let other = BcState::basis(p(&[1, 1]), false);
        assert!(pair_bc(&bra, &other).unwrap().is_zero());
        assert_eq!(
            pair_bc(&BcState::vacuum(true), &BcState::vacuum(false)).unwrap(),
            MultiPoly::one()
        );
    }

    #[test]
    fn flag_mismatch_is_rejected() {
        let ket = BcState::vacuum(false);
        assert_eq!(pair_bc(&ket, &ket).unwrap_err(), FockError::FlagMismatch);
        assert!(BcState::vacuum(true).add(&ket).is_err());
    }

    #[test]
    fn bra_word_of_one_one() {
        let ws = bra_word_state(&p(&[1, 1]));
        let expect = BraWord { b: vec![2], c: vec![0] };
        assert_eq!(ws.coeff(&expect), MultiPoly::constant(rat(-1)));
    }
}
