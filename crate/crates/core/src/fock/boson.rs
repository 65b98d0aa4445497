//! Word engine for the charged free bosons phi_m, phi*_n with relations
//! [phi_m, phi*_n] = delta_{m+n,0}, all other commutators zero, and vacuum
//! conditions phi_m|0> = 0 (m >= 0), phi*_n|0> = 0 (n >= 1).
//!
//! Ket words are multisets of the creators phi_{-m} (m >= 1) and phi*_{-s}
//! (s >= 0); bra words mirror them with phi_s (s >= 0) and phi*_m (m >= 1).
//! Creators on one side commute, so a word is a pair of multiplicity maps
//! keyed by the absolute mode value.

use crate::fock::{FockError, LinearState};
use fock_exact::{factorial, rat, MultiPoly, Rational};
use num_traits::One;
use std::collections::BTreeMap;

fn bumped(map: &BTreeMap<u32, u32>, slot: u32, up: bool) -> BTreeMap<u32, u32> {
    let mut out = map.clone();
    if up {
        *out.entry(slot).or_insert(0) += 1;
    } else {
        let m = out.get_mut(&slot).expect("slot present");
        *m -= 1;
        if *m == 0 {
            out.remove(&slot);
        }
    }
    out
}

/// Multiset word over the two species, keyed by |mode|.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Default)]
pub struct BosonWord {
    /// phi multiplicities: slot m means phi_{-m} in kets, phi_m in bras.
    pub phi: BTreeMap<u32, u32>,
    /// phi* multiplicities: slot s means phi*_{-s} in kets, phi*_s in bras.
    pub phi_star: BTreeMap<u32, u32>,
}

impl BosonWord {
    pub fn vacuum() -> Self {
        BosonWord::default()
    }

    pub fn is_vacuum(&self) -> bool {
        self.phi.is_empty() && self.phi_star.is_empty()
    }

    /// phi count minus phi* count; vacuum-generated states stay at zero.
    pub fn charge(&self) -> i64 {
        let a: u64 = self.phi.values().map(|&m| m as u64).sum();
        let b: u64 = self.phi_star.values().map(|&m| m as u64).sum();
        a as i64 - b as i64
    }

    /// Sum of slot * multiplicity over both species.
    pub fn weight(&self) -> u32 {
        self.phi
            .iter()
            .chain(self.phi_star.iter())
            .map(|(&slot, &mult)| slot * mult)
            .sum()
    }
}

/// Linear combination of boson words, bra or ket.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BosonState {
    terms: BTreeMap<BosonWord, MultiPoly>,
    dual: bool,
}

impl BosonState {
    pub fn zero(dual: bool) -> Self {
        BosonState { terms: BTreeMap::new(), dual }
    }

    pub fn vacuum(dual: bool) -> Self {
        Self::from_word(BosonWord::vacuum(), MultiPoly::one(), dual)
    }

    pub fn from_word(w: BosonWord, coeff: MultiPoly, dual: bool) -> Self {
        let mut s = Self::zero(dual);
        s.add_word(w, &coeff);
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

    pub fn terms(&self) -> impl Iterator<Item = (&BosonWord, &MultiPoly)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &BosonWord) -> MultiPoly {
        self.terms.get(w).cloned().unwrap_or_else(MultiPoly::zero)
    }

    pub fn add_word(&mut self, w: BosonWord, coeff: &MultiPoly) {
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
            let creates = if self.dual { mode >= 0 } else { mode <= -1 };
            if creates {
                let word = BosonWord {
                    phi: bumped(&w.phi, mode.unsigned_abs() as u32, true),
                    phi_star: w.phi_star.clone(),
                };
                out.add_word(word, coeff);
            } else {
                // contracts one phi* of the opposite mode
                let slot = mode.unsigned_abs() as u32;
                let Some(&k) = w.phi_star.get(&slot) else { continue };
                let factor = if self.dual { -(k as i64) } else { k as i64 };
                let word = BosonWord {
                    phi: w.phi.clone(),
                    phi_star: bumped(&w.phi_star, slot, false),
                };
                out.add_word(word, &coeff.scale(&rat(factor)));
            }
        }
        out
    }

    /// Multiply by phi* at the given mode, with the same conventions.
    pub fn apply_phi_star(&self, mode: i64) -> Self {
        let mut out = Self::zero(self.dual);
        for (w, coeff) in self.terms() {
            let creates = if self.dual { mode >= 1 } else { mode <= 0 };
            if creates {
                let word = BosonWord {
                    phi: w.phi.clone(),
                    phi_star: bumped(&w.phi_star, mode.unsigned_abs() as u32, true),
                };
                out.add_word(word, coeff);
            } else {
                // contracts one phi of the opposite mode
                let slot = mode.unsigned_abs() as u32;
                let Some(&k) = w.phi.get(&slot) else { continue };
                let factor = if self.dual { k as i64 } else { -(k as i64) };
                let word = BosonWord {
                    phi: bumped(&w.phi, slot, false),
                    phi_star: w.phi_star.clone(),
                };
                out.add_word(word, &coeff.scale(&rat(factor)));
            }
        }
        out
    }

    /// Apply a sum of quadratic terms coeff * phi(p) phi*(q); a ket meets
    /// the phi* factor first, a bra the phi factor.
    pub fn apply_pair(&self, ops: &[(MultiPoly, i64, i64)]) -> Self {
        let mut out = Self::zero(self.dual);
        for (coeff, p, q) in ops {
            let term = if self.dual {
                self.apply_phi(*p).apply_phi_star(*q)
            } else {
                self.apply_phi_star(*q).apply_phi(*p)
            };
            out = out.add(&term.scale(coeff));
        }
        out
    }

    /// Drop every word whose mode weight exceeds `cap`.
    pub fn truncate_weight(&self, cap: u32) -> Self {
        let mut out = Self::zero(self.dual);
        for (w, coeff) in self.terms() {
            if w.weight() <= cap {
                out.add_word(w.clone(), coeff);
            }
        }
        out
    }

    /// Largest phi* slot over all words.
    pub fn max_star_slot(&self) -> Option<u32> {
        self.terms
            .keys()
            .filter_map(|w| w.phi_star.keys().next_back().copied())
            .max()
    }

    /// Largest phi slot over all words.
    pub fn max_phi_slot(&self) -> Option<u32> {
        self.terms
            .keys()
            .filter_map(|w| w.phi.keys().next_back().copied())
            .max()
    }
}

impl LinearState for BosonState {
    fn add(&self, other: &Self) -> Self {
        BosonState::add(self, other)
    }

    fn scale_rat(&self, c: &Rational) -> Self {
        self.scale(&MultiPoly::constant(c.clone()))
    }

    fn is_zero(&self) -> bool {
        BosonState::is_zero(self)
    }
}

/// <bra|ket>: words pair when the ket's phi block matches the bra's phi*
/// block slotwise and vice versa; each matched slot of multiplicity k
/// contributes k!, and each ket phi contributes a factor -1.
pub fn pair_boson(bra: &BosonState, ket: &BosonState) -> Result<MultiPoly, FockError> {
    if !bra.is_dual() || ket.is_dual() {
        return Err(FockError::FlagMismatch);
    }
    let mut total = MultiPoly::zero();
    for (bw, bc) in bra.terms() {
        for (kw, kc) in ket.terms() {
            if kw.phi != bw.phi_star || kw.phi_star != bw.phi {
                continue;
            }
            let phis: u32 = kw.phi.values().sum();
            let mut value = if phis % 2 == 0 { Rational::one() } else { -Rational::one() };
            for &mult in kw.phi.values().chain(kw.phi_star.values()) {
                value *= factorial(mult as u64);
            }
            total = &total + &(bc * kc).scale(&value);
        }
    }
    Ok(total)
}

/// Oracle for the pairing: replay each ket word's creator string onto the
/// bra by right multiplication and read off the vacuum coefficient.
pub fn pair_boson_fold(bra: &BosonState, ket: &BosonState) -> Result<MultiPoly, FockError> {
    if !bra.is_dual() || ket.is_dual() {
        return Err(FockError::FlagMismatch);
    }
    let mut total = MultiPoly::zero();
    for (kw, kc) in ket.terms() {
        let mut state = bra.clone();
        for (&m, &mult) in &kw.phi {
            for _ in 0..mult {
                state = state.apply_phi(-(m as i64));
            }
        }
        for (&s, &mult) in &kw.phi_star {
            for _ in 0..mult {
                state = state.apply_phi_star(-(s as i64));
            }
        }
        let vac = state.coeff(&BosonWord::vacuum());
        total = &total + &(&vac * kc);
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn word(phi: &[(u32, u32)], phi_star: &[(u32, u32)]) -> BosonWord {
        BosonWord {
            phi: phi.iter().copied().collect(),
            phi_star: phi_star.iter().copied().collect(),
        }
    }

    #[test]
    fn commutator_on_kets() {
        // [phi_m, phi*_n] = delta_{m+n,0} on a nontrivial ket
        let base = BosonState::vacuum(false)
            .apply_phi(-1)
            .apply_phi_star(0)
            .apply_phi_star(-2);
        for m in -2..=2i64 {
            for n in -2..=2i64 {
                let ab = base.apply_phi_star(n).apply_phi(m);
                let ba = base.apply_phi(m).apply_phi_star(n);
                let diff = ab.add(&ba.scale(&MultiPoly::constant(rat(-1))));
                let expect = if m + n == 0 { base.clone() } else { BosonState::zero(false) };
                assert_eq!(diff, expect, "m={m} n={n}");
            }
        }
    }

    #[test]
    fn annihilators_kill_the_vacuum() {
        for m in 0..=2i64 {
            assert!(BosonState::vacuum(false).apply_phi(m).is_zero());
        }
        for n in 1..=2i64 {
            assert!(BosonState::vacuum(false).apply_phi_star(n).is_zero());
        }
        for m in -2..=-1i64 {
            assert!(BosonState::vacuum(true).apply_phi(m).is_zero());
        }
        for n in -2..=0i64 {
            assert!(BosonState::vacuum(true).apply_phi_star(n).is_zero());
        }
    }

    #[test]
    fn pinned_pairings() {
        let bra = BosonState::from_word(word(&[(0, 1)], &[(1, 1)]), MultiPoly::one(), true);
        let ket = BosonState::from_word(word(&[(1, 1)], &[(0, 1)]), MultiPoly::one(), false);
        assert_eq!(pair_boson(&bra, &ket).unwrap(), MultiPoly::constant(rat(-1)));

        let bra2 = BosonState::from_word(word(&[(0, 2)], &[(1, 2)]), MultiPoly::one(), true);
        let ket2 = BosonState::from_word(word(&[(1, 2)], &[(0, 2)]), MultiPoly::one(), false);
        assert_eq!(pair_boson(&bra2, &ket2).unwrap(), MultiPoly::constant(rat(4)));

        // mismatched slots are orthogonal
        assert!(pair_boson(&bra, &ket2).unwrap().is_zero());
        assert_eq!(
            pair_boson(&BosonState::vacuum(true), &BosonState::vacuum(false)).unwrap(),
            MultiPoly::one()
        );
    }

    #[test]
    fn pairing_matches_fold_oracle() {
        let words = [
            word(&[], &[]),
            word(&[(1, 1)], &[(0, 1)]),
            word(&[(2, 1)], &[(0, 1)]),
            word(&[(1, 2)], &[(0, 2)]),
            word(&[(1, 1), (2, 1)], &[(0, 1), (1, 1)]),
            word(&[(1, 3)], &[(0, 3)]),
        ];
        for kw in &words {
            let ket = BosonState::from_word(kw.clone(), MultiPoly::one(), false);
            for bw in &words {
                let bra = BosonState::from_word(bw.clone(), MultiPoly::one(), true);
                assert_eq!(
                    pair_boson(&bra, &ket).unwrap(),
                    pair_boson_fold(&bra, &ket).unwrap(),
                    "bra {bw:?} ket {kw:?}"
                );
            }
        }
    }

    #[test]
    fn weight_counts_both_species() {
        let w = word(&[(1, 2), (3, 1)], &[(0, 4), (2, 1)]);
        assert_eq!(w.weight(), 2 + 3 + 2);
        assert_eq!(w.charge(), 3 - 5);
        let state = BosonState::from_word(w, MultiPoly::one(), false);
        assert!(state.truncate_weight(6).is_zero());
        assert_eq!(state.truncate_weight(7), state);
        assert_eq!(state.max_star_slot(), Some(2));
    }
}
