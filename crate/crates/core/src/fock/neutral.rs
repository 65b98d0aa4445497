//! Word engine for the neutral fermions phi_m with relations
//! {phi_m, phi_n} = 2 (-1)^m delta_{m+n,0} (so phi_0^2 = 1) and vacuum
//! conditions phi_{-m}|0> = 0 for m >= 1.
//!
//! A reduced ket word is phi_{m_1} .. phi_{m_k} [phi_0] |0> with
//! m_1 > .. > m_k >= 1; bra words mirror it as <0| [phi_0] phi_{-m_1} ..
//! phi_{-m_k}. Strict partitions label these words directly and the
//! defining products are already reduced, so no conversion signs arise.

use crate::fock::{FockError, LinearState};
use crate::partition::Partition;
use fock_exact::{rat, MultiPoly, Rational};
use num_traits::{One, Zero};
use std::collections::BTreeMap;

/// Reduced word: positive modes strictly descending, plus a phi_0 flag on
/// the side next to the vacuum.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Default)]
pub struct NeutralWord {
    pub modes: Vec<u32>,
    pub zero: bool,
}

impl NeutralWord {
    pub fn vacuum() -> Self {
        NeutralWord::default()
    }

    pub fn is_vacuum(&self) -> bool {
        self.modes.is_empty() && !self.zero
    }

    /// The strict partition labelling this word.
    pub fn partition(&self) -> Partition {
        Partition::new(self.modes.clone())
    }
}

fn sign(passes: usize) -> Rational {
    if passes % 2 == 0 {
        Rational::one()
    } else {
        -Rational::one()
    }
}

/// Linear combination of neutral words, bra or ket.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NeutralState {
    terms: BTreeMap<NeutralWord, MultiPoly>,
    dual: bool,
}

impl NeutralState {
    pub fn zero(dual: bool) -> Self {
        NeutralState { terms: BTreeMap::new(), dual }
    }

    pub fn vacuum(dual: bool) -> Self {
        Self::from_word(NeutralWord::vacuum(), MultiPoly::one(), dual)
    }

    pub fn from_word(w: NeutralWord, coeff: MultiPoly, dual: bool) -> Self {
        let mut s = Self::zero(dual);
        s.add_word(w, &coeff);
        s
    }

    /// Basis state of a strict partition: modes are its parts and the
    /// phi_0 flag tracks odd length.
    pub fn basis(nu: &Partition, dual: bool) -> Self {
        assert!(nu.is_strict(), "neutral states are labelled by strict partitions");
        let w = NeutralWord { modes: nu.parts().to_vec(), zero: nu.length() % 2 == 1 };
        Self::from_word(w, MultiPoly::one(), dual)
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

    pub fn terms(&self) -> impl Iterator<Item = (&NeutralWord, &MultiPoly)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &NeutralWord) -> MultiPoly {
        self.terms.get(w).cloned().unwrap_or_else(MultiPoly::zero)
    }

    pub fn add_word(&mut self, w: NeutralWord, coeff: &MultiPoly) {
        if coeff.is_zero() {
            return;
        }
        let sum = match self.terms.get(&w) {
            Some(existing) => existing + coeff,
            None => coeff.clone(),
        };
        if sum.is_zero() {
            self.terms.remove(&w);
        } else {
            self.terms.insert(w, sum);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dual, other.dual, "cannot mix bra and ket states");
        let mut out = self.clone();
        for (w, c) in other.terms() {
            out.add_word(w.clone(), c);
        }
        out
    }

    pub fn scale(&self, c: &MultiPoly) -> Self {
        let mut out = Self::zero(self.dual);
        for (w, coeff) in self.terms() {
            out.add_word(w.clone(), &(coeff * c));
        }
        out
    }

    pub fn map_coeffs(&self, f: impl Fn(&MultiPoly) -> MultiPoly) -> Self {
        let mut out = Self::zero(self.dual);
        for (w, coeff) in self.terms() {
            out.add_word(w.clone(), &f(coeff));
        }
        out
    }

    /// Multiply by phi at the given mode: from the left for kets, from the
    /// right for bras.
    pub fn apply_phi(&self, mode: i64) -> Self {
        let mut out = Self::zero(self.dual);
        for (w, coeff) in self.terms() {
            if mode == 0 {
                let word = NeutralWord { modes: w.modes.clone(), zero: !w.zero };
                out.add_word(word, &coeff.scale(&sign(w.modes.len())));
                continue;
            }
            let m = mode.unsigned_abs() as u32;
            let pos = w.modes.partition_point(|&x| x > m);
            let creates = if self.dual { mode <= -1 } else { mode >= 1 };
            if creates {
                if w.modes.get(pos) == Some(&m) {
                    continue;
                }
                let mut modes = w.modes.clone();
                modes.insert(pos, m);
                // a ket creator passes the larger modes, a bra creator the
                // smaller ones
                let passes = if self.dual { w.modes.len() - pos } else { pos };
                out.add_word(NeutralWord { modes, zero: w.zero }, &coeff.scale(&sign(passes)));
            } else {
                if w.modes.get(pos) != Some(&m) {
                    continue;
                }
                let mut modes = w.modes.clone();
                modes.remove(pos);
                let passes = if self.dual { w.modes.len() - 1 - pos } else { pos };
                let value = sign(passes) * rat(2) * sign(m as usize);
                out.add_word(NeutralWord { modes, zero: w.zero }, &coeff.scale(&value));
            }
        }
        out
    }

    /// Apply a sum of quadratic terms coeff * phi(p) phi(q); a ket meets
    /// the q factor first, a bra the p factor.
    pub fn apply_pair(&self, ops: &[(MultiPoly, i64, i64)]) -> Self {
        let mut out = Self::zero(self.dual);
        for (coeff, p, q) in ops {
            let term = if self.dual {
                self.apply_phi(*p).apply_phi(*q)
            } else {
                self.apply_phi(*q).apply_phi(*p)
            };
            out = out.add(&term.scale(coeff));
        }
        out
    }

    pub fn max_mode(&self) -> Option<u32> {
        self.terms.keys().filter_map(|w| w.modes.first().copied()).max()
    }
}

impl LinearState for NeutralState {
    fn add(&self, other: &Self) -> Self {
        NeutralState::add(self, other)
    }

    fn scale_rat(&self, c: &Rational) -> Self {
        self.scale(&MultiPoly::constant(c.clone()))
    }

    fn is_zero(&self) -> bool {
        NeutralState::is_zero(self)
    }
}

/// <bra|ket>: replay each ket word's operator string onto the bra by right
/// multiplication and read off the vacuum coefficient.
pub fn pair_neutral(bra: &NeutralState, ket: &NeutralState) -> Result<MultiPoly, FockError> {
    if !bra.is_dual() || ket.is_dual() {
        return Err(FockError::FlagMismatch);
    }
    let mut total = MultiPoly::zero();
    for (kw, kc) in ket.terms() {
        let mut state = bra.clone();
        for &m in &kw.modes {
            state = state.apply_phi(m as i64);
        }
        if kw.zero {
            state = state.apply_phi(0);
        }
        let vac = state.coeff(&NeutralWord::vacuum());
        total = &total + &(&vac * kc);
    }
    Ok(total)
}

/// Independent evaluation of <0| phi_{a_1} .. phi_{a_q} |0> by recursive
/// contraction, for cross-checking the word engines.
pub fn vacuum_expectation(seq: &[i64]) -> Rational {
    if seq.iter().any(|&a| a == 0) {
        // move every phi_0 to the right end; each passes the nonzero
        // factors after it, and an adjacent pair collapses to 1
        let mut passes = 0usize;
        let mut zeros = 0usize;
        for (i, &a) in seq.iter().enumerate() {
            if a == 0 {
                zeros += 1;
                passes += seq[i + 1..].iter().filter(|&&b| b != 0).count();
            }
        }
        if zeros % 2 == 1 {
            return Rational::zero();
        }
        let nonzero: Vec<i64> = seq.iter().copied().filter(|&a| a != 0).collect();
        return sign(passes) * vacuum_expectation(&nonzero);
    }
    let q = seq.len();
    if q == 0 {
        return Rational::one();
    }
    let a = seq[q - 1];
    if a < 0 {
        return Rational::zero();
    }
    let mut total = Rational::zero();
    for k in 0..q - 1 {
        if seq[k] == -a {
            let mut rest: Vec<i64> = seq[..q - 1].to_vec();
            rest.remove(k);
            let value = sign(q - 2 - k) * rat(2) * sign(a as usize);
            total += value * vacuum_expectation(&rest);
        }
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec())
    }

    fn pair_value(bra: &Partition, ket: &Partition) -> MultiPoly {
        pair_neutral(&NeutralState::basis(bra, true), &NeutralState::basis(ket, false)).unwrap()
    }

    #[test]
    fn anticommutators_on_words() {
        let bases = [
            NeutralState::vacuum(false).apply_phi(1).apply_phi(3),
            NeutralState::vacuum(false).apply_phi(0).apply_phi(2),
        ];
        for base in &bases {
            assert!(!base.is_zero());
            for m in -3..=3i64 {
                for n in -3..=3i64 {
                    let lhs = base
                        .apply_phi(n)
                        .apply_phi(m)
                        .add(&base.apply_phi(m).apply_phi(n));
                    let expect = if m + n == 0 {
                        base.scale_rat(&(rat(2) * sign(m.unsigned_abs() as usize)))
                    } else {
                        NeutralState::zero(false)
                    };
                    assert_eq!(lhs, expect, "m={m} n={n}");
                }
            }
        }
    }

    #[test]
    fn pinned_pairings() {
        assert_eq!(pair_value(&p(&[1]), &p(&[1])), MultiPoly::constant(rat(-2)));
        assert_eq!(pair_value(&p(&[2]), &p(&[2])), MultiPoly::constant(rat(2)));
        assert_eq!(pair_value(&p(&[2, 1]), &p(&[2, 1])), MultiPoly::constant(rat(4)));
        assert_eq!(pair_value(&p(&[]), &p(&[])), MultiPoly::one());
        assert!(pair_value(&p(&[1]), &p(&[2])).is_zero());
        assert!(pair_value(&p(&[]), &p(&[1])).is_zero());
    }

    #[test]
    fn oracle_matches_pinned_values() {
        assert_eq!(vacuum_expectation(&[-1, 1]), rat(-2));
        assert_eq!(vacuum_expectation(&[-2, 2]), rat(2));
        assert_eq!(vacuum_expectation(&[0, -1, 1, 0]), rat(-2));
        assert_eq!(vacuum_expectation(&[-2, -1, 1, 2]), rat(-4));
        assert_eq!(vacuum_expectation(&[0]), rat(0));
        assert_eq!(vacuum_expectation(&[]), rat(1));
    }

    #[test]
    fn engines_match_oracle_on_random_words() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let len = rng.gen_range(0..=6);
            let seq: Vec<i64> = (0..len).map(|_| rng.gen_range(-3..=3)).collect();
            let expect = MultiPoly::constant(vacuum_expectation(&seq));

            // as ket operators, rightmost first
            let mut ket = NeutralState::vacuum(false);
            for &a in seq.iter().rev() {
                ket = ket.apply_phi(a);
            }
            assert_eq!(ket.coeff(&NeutralWord::vacuum()), expect, "ket {seq:?}");

            // as bra operators, leftmost first
            let mut bra = NeutralState::vacuum(true);
            for &a in &seq {
                bra = bra.apply_phi(a);
            }
            assert_eq!(bra.coeff(&NeutralWord::vacuum()), expect, "bra {seq:?}");
        }
    }

    #[test]
    fn basis_words_are_reduced_products() {
        // |nu~) built mode by mode equals the direct basis word, sign free
        let nu = p(&[4, 2, 1]);
        let mut ket = NeutralState::vacuum(false).apply_phi(0);
        for &m in nu.parts().iter().rev() {
            ket = ket.apply_phi(m as i64);
        }
        assert_eq!(ket, NeutralState::basis(&nu, false));

        let mut bra = NeutralState::vacuum(true).apply_phi(0);
        for &m in nu.parts() {
            bra = bra.apply_phi(-(m as i64));
        }
        assert_eq!(bra, NeutralState::basis(&nu, true));
    }
}
