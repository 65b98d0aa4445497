//! Normal-ordered word engine for the charged fermion pair, with relations
//! {b(i), c(j)} = delta_{i+j,0}, {b,b} = {c,c} = 0 and vacuum conditions
//! b(i)|0> = 0 (i >= 1), c(j)|0> = 0 (j >= 0).
//!
//! Ket words are kept in the reduced form b(i_1)..b(i_k) c(j_1)..c(j_m)|0>
//! with modes strictly ascending, b modes <= 0 and c modes <= -1; bra words
//! mirror this with b modes >= 1 and c modes >= 0. Multiplying by a single
//! mode yields at most one reduced word, so states stay sparse.

use crate::fock::LinearState;
use fock_exact::{MultiPoly, Rational};
use std::collections::BTreeMap;

/// Insert `p` into a strictly ascending block, counting passed entries from
/// the given end. Returns None when `p` is already present.
fn insert_ascending(block: &[i64], p: i64) -> Option<(usize, Vec<i64>)> {
    if block.binary_search(&p).is_ok() {
        return None;
    }
    let pos = block.partition_point(|&q| q < p);
    let mut out = Vec::with_capacity(block.len() + 1);
    out.extend_from_slice(&block[..pos]);
    out.push(p);
    out.extend_from_slice(&block[pos..]);
    Some((pos, out))
}

fn remove_at(block: &[i64], pos: usize) -> Vec<i64> {
    let mut out = Vec::with_capacity(block.len() - 1);
    out.extend_from_slice(&block[..pos]);
    out.extend_from_slice(&block[pos + 1..]);
    out
}

fn sign(passes: usize) -> i64 {
    if passes % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Reduced word applied to the vacuum ket.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct KetWord {
    /// b modes, strictly ascending, all <= 0.
    pub b: Vec<i64>,
    /// c modes, strictly ascending, all <= -1.
    pub c: Vec<i64>,
}

impl KetWord {
    pub fn vacuum() -> Self {
        KetWord { b: Vec::new(), c: Vec::new() }
    }

    pub fn is_vacuum(&self) -> bool {
        self.b.is_empty() && self.c.is_empty()
    }

    /// b count minus c count; partition states live at charge zero.
    pub fn charge(&self) -> i64 {
        self.b.len() as i64 - self.c.len() as i64
    }

    /// Left-multiply by b(p); None means the result is zero.
    pub fn mul_b(&self, p: i64) -> Option<(i64, KetWord)> {
        if p <= 0 {
            let (pos, b) = insert_ascending(&self.b, p)?;
            Some((sign(pos), KetWord { b, c: self.c.clone() }))
        } else {
            // annihilator: passes the b block, then contracts with c(-p)
            let pos = self.c.binary_search(&(-p)).ok()?;
            Some((sign(self.b.len() + pos), KetWord { b: self.b.clone(), c: remove_at(&self.c, pos) }))
        }
    }

    /// Left-multiply by c(q); None means the result is zero.
    pub fn mul_c(&self, q: i64) -> Option<(i64, KetWord)> {
        if q <= -1 {
            // creator: anticommutes past the whole b block, then inserts
            let (pos, c) = insert_ascending(&self.c, q)?;
            Some((sign(self.b.len() + pos), KetWord { b: self.b.clone(), c }))
        } else {
            // annihilator: contracts with b(-q) or dies on the vacuum
            let pos = self.b.binary_search(&(-q)).ok()?;
            Some((sign(pos), KetWord { b: remove_at(&self.b, pos), c: self.c.clone() }))
        }
    }
}

/// Reduced word multiplying the vacuum bra from the right.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct BraWord {
    /// b modes, strictly ascending, all >= 1.
    pub b: Vec<i64>,
    /// c modes, strictly ascending, all >= 0.
    pub c: Vec<i64>,
}

impl BraWord {
    pub fn vacuum() -> Self {
        BraWord { b: Vec::new(), c: Vec::new() }
    }

    pub fn is_vacuum(&self) -> bool {
        self.b.is_empty() && self.c.is_empty()
    }

    /// Right-multiply by b(p); None means the result is zero.
    pub fn mul_b(&self, p: i64) -> Option<(i64, BraWord)> {
        if p >= 1 {
            // creator: passes the c block from the right, then inserts
            let (pos, b) = insert_ascending(&self.b, p)?;
            let passed = self.c.len() + (self.b.len() - pos);
            Some((sign(passed), BraWord { b, c: self.c.clone() }))
        } else {
            // annihilator: contracts with c(-p) inside the c block
            let pos = self.c.binary_search(&(-p)).ok()?;
            Some((sign(self.c.len() - 1 - pos), BraWord { b: self.b.clone(), c: remove_at(&self.c, pos) }))
        }
    }

    /// Right-multiply by c(q); None means the result is zero.
    pub fn mul_c(&self, q: i64) -> Option<(i64, BraWord)> {
        if q >= 0 {
            let (pos, c) = insert_ascending(&self.c, q)?;
            Some((sign(self.c.len() - pos), BraWord { b: self.b.clone(), c }))
        } else {
            // annihilator: passes the whole c block, contracts with b(-q)
            let pos = self.b.binary_search(&(-q)).ok()?;
            Some((sign(self.c.len() + self.b.len() - 1 - pos), BraWord { b: remove_at(&self.b, pos), c: self.c.clone() }))
        }
    }
}

/// Either species at a given mode, for driving the engines generically.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BcMode {
    B(i64),
    C(i64),
}

/// Linear combination of reduced ket words.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct WordState {
    terms: BTreeMap<KetWord, MultiPoly>,
}

/// Linear combination of reduced bra words.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BraWordState {
    terms: BTreeMap<BraWord, MultiPoly>,
}

macro_rules! word_state_impl {
    ($state:ident, $word:ident) => {
        impl $state {
            pub fn zero() -> Self {
                Self { terms: BTreeMap::new() }
            }

            pub fn vacuum() -> Self {
                Self::from_word($word::vacuum(), MultiPoly::one())
            }

            pub fn from_word(w: $word, coeff: MultiPoly) -> Self {
                let mut terms = BTreeMap::new();
                if !coeff.is_zero() {
                    terms.insert(w, coeff);
                }
                Self { terms }
            }

            pub fn is_zero(&self) -> bool {
                self.terms.is_empty()
            }

            pub fn terms(&self) -> impl Iterator<Item = (&$word, &MultiPoly)> {
                self.terms.iter()
            }

            pub fn num_terms(&self) -> usize {
                self.terms.len()
            }

            pub fn coeff(&self, w: &$word) -> MultiPoly {
                self.terms.get(w).cloned().unwrap_or_else(MultiPoly::zero)
            }

            pub fn add_word(&mut self, w: $word, coeff: &MultiPoly) {
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
                let mut out = self.clone();
                for (w, c) in other.terms() {
                    out.add_word(w.clone(), c);
                }
                out
            }

            pub fn scale(&self, c: &MultiPoly) -> Self {
                let mut out = Self::zero();
                for (w, coeff) in self.terms() {
                    out.add_word(w.clone(), &(coeff * c));
                }
                out
            }

            pub fn map_coeffs(&self, f: impl Fn(&MultiPoly) -> MultiPoly) -> Self {
                let mut out = Self::zero();
                for (w, coeff) in self.terms() {
                    out.add_word(w.clone(), &f(coeff));
                }
                out
            }

            /// Multiply by the given mode (from the left for kets, from the
            /// right for bras).
            pub fn apply_mode(&self, mode: BcMode) -> Self {
                let mut out = Self::zero();
                for (w, coeff) in self.terms() {
                    let reduced = match mode {
                        BcMode::B(p) => w.mul_b(p),
                        BcMode::C(q) => w.mul_c(q),
                    };
                    if let Some((s, word)) = reduced {
                        out.add_word(word, &coeff.scale(&Rational::from_integer(s.into())));
                    }
                }
                out
            }

        }

        impl LinearState for $state {
            fn add(&self, other: &Self) -> Self {
                $state::add(self, other)
            }

            fn scale_rat(&self, c: &Rational) -> Self {
                self.scale(&MultiPoly::constant(c.clone()))
            }

            fn is_zero(&self) -> bool {
                $state::is_zero(self)
            }
        }
    };
}

word_state_impl!(WordState, KetWord);
word_state_impl!(BraWordState, BraWord);

impl WordState {
    /// Apply a sum of quadratic terms coeff * b(p)c(q); on kets the c factor
    /// acts first.
    pub fn apply_quadratic(&self, ops: &[(MultiPoly, i64, i64)]) -> Self {
        let mut out = Self::zero();
        for (coeff, p, q) in ops {
            let term = self
                .apply_mode(BcMode::C(*q))
                .apply_mode(BcMode::B(*p))
                .scale(coeff);
            out = out.add(&term);
        }
        out
    }

    pub fn min_c_mode(&self) -> Option<i64> {
        self.terms.keys().filter_map(|w| w.c.first().copied()).min()
    }

    pub fn max_b_rows(&self) -> usize {
        self.terms.keys().map(|w| w.b.len()).max().unwrap_or(0)
    }
}

impl BraWordState {
    /// Apply a sum of quadratic terms coeff * b(p)c(q); a bra meets the b
    /// factor first.
    pub fn apply_quadratic(&self, ops: &[(MultiPoly, i64, i64)]) -> Self {
        let mut out = Self::zero();
        for (coeff, p, q) in ops {
            let term = self
                .apply_mode(BcMode::B(*p))
                .apply_mode(BcMode::C(*q))
                .scale(coeff);
            out = out.add(&term);
        }
        out
    }

    pub fn max_c_mode(&self) -> Option<i64> {
        self.terms.keys().filter_map(|w| w.c.last().copied()).max()
    }

    pub fn max_b_mode(&self) -> Option<i64> {
        self.terms.keys().filter_map(|w| w.b.last().copied()).max()
    }

    pub fn max_b_rows(&self) -> usize {
        self.terms.keys().map(|w| w.b.len()).max().unwrap_or(0)
    }
}

/// Pair a reduced bra word against a ket word state by replaying the bra's
/// operators onto the ket (rightmost factor first) and reading off the
/// vacuum coefficient.
pub fn pair_word_states(bra: &BraWordState, ket: &WordState) -> MultiPoly {
    let mut total = MultiPoly::zero();
    for (bw, bcoeff) in bra.terms() {
        let mut state = ket.clone();
        for &q in bw.c.iter().rev() {
            state = state.apply_mode(BcMode::C(q));
        }
        for &p in bw.b.iter().rev() {
            state = state.apply_mode(BcMode::B(p));
        }
        let vac = state.coeff(&KetWord::vacuum());
        total = &total + &(bcoeff * &vac);
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use fock_exact::rat;

    fn one() -> MultiPoly {
        MultiPoly::one()
    }

    #[test]
    fn anticommutator_on_words() {
        // {b(p), c(q)} = delta_{p+q,0} as operators on a nontrivial word
        let base = WordState::vacuum()
            .apply_mode(BcMode::C(-2))
            .apply_mode(BcMode::B(-1));
        assert_eq!(base.num_terms(), 1);
        for p in -2..=2i64 {
            for q in -2..=2i64 {
                let bc = base.apply_mode(BcMode::C(q)).apply_mode(BcMode::B(p));
                let cb = base.apply_mode(BcMode::B(p)).apply_mode(BcMode::C(q));
                let sum = bc.add(&cb);
                let expect = if p + q == 0 { base.clone() } else { WordState::zero() };
                assert_eq!(sum, expect, "p={p} q={q}");
            }
        }
    }

    #[test]
    fn same_species_squares_vanish() {
        let base = WordState::vacuum().apply_mode(BcMode::C(-1));
        for p in [-1i64, 0, 2] {
            let twice = base.apply_mode(BcMode::B(p)).apply_mode(BcMode::B(p));
            assert!(twice.is_zero(), "b({p})^2");
        }
        for q in [-2i64, -1, 1] {
            let twice = base.apply_mode(BcMode::C(q)).apply_mode(BcMode::C(q));
            assert!(twice.is_zero(), "c({q})^2");
        }
    }

    #[test]
    fn one_one_partition_word() {
        // b(0)b(1)c(-2)c(-1)|0> reduces to -b(0)c(-2)|0>
        let state = WordState::vacuum()
            .apply_mode(BcMode::C(-1))
            .apply_mode(BcMode::C(-2))
            .apply_mode(BcMode::B(1))
            .apply_mode(BcMode::B(0));
        let expect = KetWord { b: vec![0], c: vec![-2] };
        assert_eq!(state.num_terms(), 1);
        assert_eq!(state.coeff(&expect), MultiPoly::constant(rat(-1)));
    }

    #[test]
    fn bra_mirror_of_one_one() {
        // <0|b(1)b(2)c(-1)c(0) reduces to -<0|b(2)c(0)
        let state = BraWordState::vacuum()
            .apply_mode(BcMode::B(1))
            .apply_mode(BcMode::B(2))
            .apply_mode(BcMode::C(-1))
            .apply_mode(BcMode::C(0));
        let expect = BraWord { b: vec![2], c: vec![0] };
        assert_eq!(state.num_terms(), 1);
        assert_eq!(state.coeff(&expect), MultiPoly::constant(rat(-1)));
    }

    #[test]
    fn pairing_of_elementary_words() {
        // <0|b(1)c(0) against b(0)c(-1)|0> pairs to 1
        let ket = WordState::vacuum().apply_mode(BcMode::C(-1)).apply_mode(BcMode::B(0));
        let bra = BraWordState::vacuum().apply_mode(BcMode::B(1)).apply_mode(BcMode::C(0));
        assert_eq!(pair_word_states(&bra, &ket), one());
        // and against the vacuum it pairs to 0
        assert_eq!(pair_word_states(&bra, &WordState::vacuum()), MultiPoly::zero());
        assert_eq!(pair_word_states(&BraWordState::vacuum(), &ket), MultiPoly::zero());
        assert_eq!(pair_word_states(&BraWordState::vacuum(), &WordState::vacuum()), one());
    }
}
