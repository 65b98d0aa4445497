//! Lattice states and the monodromy-matrix engine.
//!
//! Both models place a bosonic site at each of 0..=M and form the monodromy
//! matrix T(x) = L_M(x)...L_0(x) from 2x2 L-matrices whose diagonal carries
//! x^{-1/2}, x^{1/2} and whose off-diagonal carries the site creation and
//! annihilation operators (with the sqrt(2) factors of the i-boson model
//! folded in, so every coefficient stays rational). Spectral arithmetic runs
//! over u with u^2 = x; the dressed entries BB(x) = x^{M/2} B(x) and
//! CC(x) = x^{M/2} C(1/x) must come out polynomial in x, which is asserted
//! rather than assumed.
//!
//! Bras carry the mirror module: an operator acting on a bra from the right
//! follows the same occupation formulas with creation and annihilation
//! exchanged. For the phase model this coincides with the transpose action;
//! for the i-boson model it is the convention under which the dual
//! commutative diagram holds.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use fock_exact::{pow2, rat, Laurent, Monomial, MultiPoly, Rational, Var};
use num_traits::One;

use crate::fock::bc::BcState;
use crate::fock::neutral::NeutralState;
use crate::partition::Partition;
use crate::qism::QismError;

/// Which lattice model the occupations obey.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Model {
    Phase,
    Iboson,
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Model::Phase => write!(f, "phase"),
            Model::Iboson => write!(f, "iboson"),
        }
    }
}

/// Occupation numbers (n_0, ..., n_M) of one lattice basis state.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct LatticeState {
    model: Model,
    occupations: Vec<u32>,
}

impl LatticeState {
    pub fn new(model: Model, occupations: Vec<u32>) -> Self {
        assert!(!occupations.is_empty(), "site 0 must exist");
        if model == Model::Iboson {
            assert!(
                occupations.iter().skip(1).all(|&n| n <= 1),
                "i-boson sites past 0 hold at most one quantum"
            );
        }
        LatticeState { model, occupations }
    }

    pub fn model(&self) -> Model {
        self.model
    }

    pub fn occupations(&self) -> &[u32] {
        &self.occupations
    }

    /// Total quanta.
    pub fn total(&self) -> u32 {
        self.occupations.iter().sum()
    }

    /// Site-weighted occupation sum i * n_i.
    pub fn weight(&self) -> u64 {
        self.occupations
            .iter()
            .enumerate()
            .map(|(i, &n)| i as u64 * u64::from(n))
            .sum()
    }

    pub fn label(&self) -> String {
        let parts: Vec<String> = self.occupations.iter().map(u32::to_string).collect();
        format!("({})", parts.join(","))
    }
}

/// Lattice vectors: occupation sequences weighted by Laurent coefficients.
pub(crate) type UVec = BTreeMap<Vec<u32>, Laurent>;

pub(crate) fn add_into(out: &mut UVec, occ: Vec<u32>, add: Laurent) {
    if add.is_zero() {
        return;
    }
    match out.entry(occ) {
        Entry::Vacant(e) => {
            e.insert(add);
        }
        Entry::Occupied(mut e) => {
            let sum = &*e.get() + &add;
            if sum.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = sum;
            }
        }
    }
}

pub(crate) fn merge(dst: &mut UVec, src: UVec) {
    for (occ, c) in src {
        add_into(dst, occ, c);
    }
}

pub(crate) fn scale_uvec(v: &UVec, s: &Laurent) -> UVec {
    let mut out = UVec::new();
    for (occ, c) in v {
        add_into(&mut out, occ.clone(), c * s);
    }
    out
}

#[derive(Clone, Copy)]
enum LEntry {
    UPow(i64),
    Create,
    Annihilate,
}

fn l_matrix(invert: bool) -> [[LEntry; 2]; 2] {
    let e = if invert { -1 } else { 1 };
    [
        [LEntry::UPow(-e), LEntry::Create],
        [LEntry::Annihilate, LEntry::UPow(e)],
    ]
}

struct Engine {
    model: Model,
    cap: u32,
    nvars: usize,
}

impl Engine {
    fn upow(&self, uvar: usize, e: i64) -> Laurent {
        let mut exps = vec![0i64; self.nvars];
        exps[uvar] = e;
        Laurent::monomial(exps, Rational::one())
    }

    /// Raise n_site with the model's creation coefficient.
    fn raise(&self, occ: &[u32], site: usize) -> Result<Option<(Vec<u32>, Rational)>, QismError> {
        let n = occ[site];
        let coeff = match self.model {
            Model::Phase => Rational::one(),
            Model::Iboson if site == 0 => Rational::one(),
            Model::Iboson => {
                if n >= 1 {
                    return Ok(None);
                }
                rat(2)
            }
        };
        if (self.model == Model::Phase || site == 0) && n + 1 > self.cap {
            return Err(QismError::OccupationOverflow {
                site,
                cap: self.cap,
            });
        }
        let mut next = occ.to_vec();
        next[site] += 1;
        Ok(Some((next, coeff)))
    }

    /// Lower n_site with the model's annihilation coefficient.
    fn lower(&self, occ: &[u32], site: usize) -> Result<Option<(Vec<u32>, Rational)>, QismError> {
        let n = occ[site];
        if n == 0 {
            return Ok(None);
        }
        let coeff = match self.model {
            Model::Phase => Rational::one(),
            Model::Iboson if site == 0 => {
                if n % 2 == 0 {
                    return Ok(None);
                }
                rat(2)
            }
            Model::Iboson => Rational::one(),
        };
        let mut next = occ.to_vec();
        next[site] -= 1;
        Ok(Some((next, coeff)))
    }

    fn apply(
        &self,
        entry: LEntry,
        site: usize,
        uvar: usize,
        bra: bool,
        vec: &UVec,
    ) -> Result<UVec, QismError> {
        let mut out = UVec::new();
        for (occ, coeff) in vec {
            match entry {
                LEntry::UPow(e) => {
                    add_into(&mut out, occ.clone(), coeff * &self.upow(uvar, e));
                }
                LEntry::Create | LEntry::Annihilate => {
                    let create = matches!(entry, LEntry::Create);
                    // bras exchange the roles of creation and annihilation
                    let moved = if create != bra {
                        self.raise(occ, site)?
                    } else {
                        self.lower(occ, site)?
                    };
                    if let Some((next, f)) = moved {
                        add_into(&mut out, next, coeff.scale(&f));
                    }
                }
            }
        }
        Ok(out)
    }
}

/// Default per-site occupation bound for the capped models.
pub const DEFAULT_OCCUPATION_CAP: u32 = 3;

/// The ordered product L_M(x)...L_0(x) with a per-site occupation cap.
#[derive(Debug, Clone, Copy)]
pub struct Monodromy {
    model: Model,
    m: u32,
    cap: u32,
}

/// Monodromy matrix over sites 0..=m with the default cap.
pub fn monodromy(model: Model, m: u32) -> Monodromy {
    Monodromy {
        model,
        m,
        cap: DEFAULT_OCCUPATION_CAP,
    }
}

impl Monodromy {
    pub fn model(&self) -> Model {
        self.model
    }

    pub fn cutoff(&self) -> u32 {
        self.m
    }

    pub fn with_cap(mut self, cap: u32) -> Self {
        self.cap = cap;
        self
    }

    fn engine(&self, nvars: usize) -> Engine {
        Engine {
            model: self.model,
            cap: self.cap,
            nvars,
        }
    }

    /// All four entries of T applied to a ket vector; `invert` runs the
    /// spectral parameter at 1/x.
    pub(crate) fn entries_ket(
        &self,
        input: &UVec,
        nvars: usize,
        uvar: usize,
        invert: bool,
    ) -> Result<[[UVec; 2]; 2], QismError> {
        let eng = self.engine(nvars);
        let l = l_matrix(invert);
        let mut acc = [
            [input.clone(), UVec::new()],
            [UVec::new(), input.clone()],
        ];
        for site in 0..=self.m as usize {
            let mut next = [
                [UVec::new(), UVec::new()],
                [UVec::new(), UVec::new()],
            ];
            for i in 0..2 {
                for j in 0..2 {
                    for k in 0..2 {
                        let applied = eng.apply(l[i][k], site, uvar, false, &acc[k][j])?;
                        merge(&mut next[i][j], applied);
                    }
                }
            }
            acc = next;
        }
        Ok(acc)
    }

    /// All four entries of a bra vector times T; the leftmost L-factor acts
    /// first, so sites run from M down to 0.
    pub(crate) fn entries_bra(
        &self,
        input: &UVec,
        nvars: usize,
        uvar: usize,
        invert: bool,
    ) -> Result<[[UVec; 2]; 2], QismError> {
        let eng = self.engine(nvars);
        let l = l_matrix(invert);
        let mut acc = [
            [input.clone(), UVec::new()],
            [UVec::new(), input.clone()],
        ];
        for site in (0..=self.m as usize).rev() {
            let mut next = [
                [UVec::new(), UVec::new()],
                [UVec::new(), UVec::new()],
            ];
            for i in 0..2 {
                for j in 0..2 {
                    for k in 0..2 {
                        let applied = eng.apply(l[k][j], site, uvar, true, &acc[i][k])?;
                        merge(&mut next[i][j], applied);
                    }
                }
            }
            acc = next;
        }
        Ok(acc)
    }

    /// BB(x) = x^{M/2} B(x) on a ket basis state, coefficients polynomial
    /// in x.
    pub fn apply_bb(
        &self,
        state: &LatticeState,
        x: Var,
    ) -> Result<BTreeMap<Vec<u32>, MultiPoly>, QismError> {
        assert_eq!(state.model(), self.model);
        let input = UVec::from([(state.occupations().to_vec(), Laurent::one(1))]);
        let entries = self.entries_ket(&input, 1, 0, false)?;
        clear_half_powers(&entries[0][1], self.m, x)
    }

    /// CC(x) = x^{M/2} C(1/x) acting on a bra basis state.
    pub fn apply_cc(
        &self,
        state: &LatticeState,
        x: Var,
    ) -> Result<BTreeMap<Vec<u32>, MultiPoly>, QismError> {
        assert_eq!(state.model(), self.model);
        let input = UVec::from([(state.occupations().to_vec(), Laurent::one(1))]);
        let entries = self.entries_bra(&input, 1, 0, true)?;
        clear_half_powers(&entries[1][0], self.m, x)
    }
}

/// Multiply by u^M, insist on even non-negative exponents, and substitute
/// u^2 = x.
fn clear_half_powers(
    vec: &UVec,
    m: u32,
    x: Var,
) -> Result<BTreeMap<Vec<u32>, MultiPoly>, QismError> {
    let mut out = BTreeMap::new();
    for (occ, laurent) in vec {
        let mut poly = MultiPoly::zero();
        for (exps, c) in laurent.terms() {
            let e = exps[0] + i64::from(m);
            if e < 0 || e % 2 != 0 {
                return Err(QismError::UnclearedHalfPowers);
            }
            poly.add_term(Monomial::var_pow(x, (e / 2) as u32), c.clone());
        }
        if !poly.is_zero() {
            out.insert(occ.clone(), poly);
        }
    }
    Ok(out)
}

/// Partition (M^{n_M}, ..., 1^{n_1}) read off the occupations; n_0 is
/// discarded.
pub(crate) fn occupation_partition(occ: &[u32]) -> Partition {
    let mut parts = Vec::new();
    for site in (1..occ.len()).rev() {
        for _ in 0..occ[site] {
            parts.push(site as u32);
        }
    }
    Partition::new(parts)
}

/// Phase-model image |nu) of a lattice state.
pub fn map_to_bc(state: &LatticeState, dual: bool) -> BcState {
    assert_eq!(state.model(), Model::Phase);
    BcState::basis(occupation_partition(state.occupations()), dual)
}

/// i-boson image 2^{-l} |nu~): the strict partition of occupied sites past
/// 0, with the phi_0 flag following the length parity and n_0 discarded.
/// Bras pick up the extra sign (-1)^{|nu| + l(l-1)/2} so that the mirror
/// action of the lattice operators, which has no signs of its own, lands on
/// the signed Ctilde rule.
pub fn map_to_neutral(state: &LatticeState, dual: bool) -> NeutralState {
    assert_eq!(state.model(), Model::Iboson);
    let occ = state.occupations();
    let parts: Vec<u32> = (1..occ.len())
        .rev()
        .filter(|&s| occ[s] == 1)
        .map(|s| s as u32)
        .collect();
    let ell = parts.len();
    let mut norm = pow2(-(ell as i64));
    if dual {
        let weight: u32 = parts.iter().sum();
        if (weight as usize + ell * ell.saturating_sub(1) / 2) % 2 == 1 {
            norm = -norm;
        }
    }
    NeutralState::basis(&Partition::new(parts), dual).scale(&MultiPoly::constant(norm))
}

#[cfg(test)]
mod tests {
    use super::*;
    use fock_exact::ratio;

    fn x() -> Var {
        Var::X(1)
    }

    fn xp(k: u32) -> MultiPoly {
        MultiPoly::var_pow(x(), k)
    }

    fn image(entries: Vec<(Vec<u32>, MultiPoly)>) -> BTreeMap<Vec<u32>, MultiPoly> {
        entries.into_iter().collect()
    }

    #[test]
    fn single_site_bb_is_bare_creation() {
        let mono = monodromy(Model::Phase, 0);
        let out = mono
            .apply_bb(&LatticeState::new(Model::Phase, vec![2]), x())
            .unwrap();
        assert_eq!(out, image(vec![(vec![3], MultiPoly::one())]));
    }

    #[test]
    fn phase_bb_on_the_two_site_vacuum_is_pinned() {
        let mono = monodromy(Model::Phase, 1);
        let out = mono
            .apply_bb(&LatticeState::new(Model::Phase, vec![0, 0]), x())
            .unwrap();
        assert_eq!(
            out,
            image(vec![(vec![1, 0], MultiPoly::one()), (vec![0, 1], xp(1))])
        );
    }

    #[test]
    fn phase_bb_walks_quanta_through_intermediate_sites() {
        let mono = monodromy(Model::Phase, 2);
        let out = mono
            .apply_bb(&LatticeState::new(Model::Phase, vec![0, 1, 0]), x())
            .unwrap();
        assert_eq!(
            out,
            image(vec![
                (vec![1, 1, 0], MultiPoly::one()),
                (vec![0, 2, 0], xp(1)),
                (vec![1, 0, 1], xp(1)),
                (vec![0, 1, 1], xp(2)),
            ])
        );
    }

    #[test]
    fn phase_cc_mirrors_bb_on_bras() {
        let mono = monodromy(Model::Phase, 1);
        let out = mono
            .apply_cc(&LatticeState::new(Model::Phase, vec![0, 0]), x())
            .unwrap();
        assert_eq!(
            out,
            image(vec![(vec![1, 0], MultiPoly::one()), (vec![0, 1], xp(1))])
        );
    }

    #[test]
    fn iboson_bb_doubles_on_interior_sites() {
        let mono = monodromy(Model::Iboson, 1);
        let out = mono
            .apply_bb(&LatticeState::new(Model::Iboson, vec![0, 0]), x())
            .unwrap();
        assert_eq!(
            out,
            image(vec![
                (vec![1, 0], MultiPoly::one()),
                (vec![0, 1], xp(1).scale(&rat(2))),
            ])
        );
    }

    #[test]
    fn bb_raises_weight_by_the_x_degree() {
        let mono = monodromy(Model::Phase, 2);
        for occ in [vec![0, 0, 0], vec![1, 1, 0], vec![0, 0, 2], vec![2, 1, 1]] {
            let state = LatticeState::new(Model::Phase, occ);
            for (target, coeff) in mono.apply_bb(&state, x()).unwrap() {
                let out = LatticeState::new(Model::Phase, target);
                assert_eq!(coeff.num_terms(), 1, "single path weight class");
                let (mono_term, _) = coeff.terms().next().unwrap();
                assert_eq!(
                    u64::from(mono_term.exp(x())),
                    out.weight() - state.weight()
                );
            }
        }
    }

    #[test]
    fn cap_overflow_is_reported() {
        let mono = monodromy(Model::Phase, 0).with_cap(1);
        let err = mono
            .apply_bb(&LatticeState::new(Model::Phase, vec![1]), x())
            .unwrap_err();
        assert_eq!(err, QismError::OccupationOverflow { site: 0, cap: 1 });
    }

    #[test]
    fn phase_map_discards_site_zero() {
        let s = LatticeState::new(Model::Phase, vec![5, 0, 0]);
        assert_eq!(map_to_bc(&s, false), BcState::basis(Partition::empty(), false));
        let s = LatticeState::new(Model::Phase, vec![0, 2, 1]);
        assert_eq!(
            map_to_bc(&s, false),
            BcState::basis(Partition::new(vec![2, 1, 1]), false)
        );
    }

    #[test]
    fn iboson_map_carries_the_half_power_normalization() {
        let s = LatticeState::new(Model::Iboson, vec![0, 1, 1]);
        let img = map_to_neutral(&s, false);
        let expected = NeutralState::basis(&Partition::new(vec![2, 1]), false)
            .scale(&MultiPoly::constant(ratio(1, 4)));
        assert_eq!(img, expected);
    }

    #[test]
    fn iboson_bra_map_signs_follow_weight_and_length() {
        // (0,1): |nu| = 1, l = 1, sign (-1)^{1+0} = -1.
        let s = LatticeState::new(Model::Iboson, vec![0, 1]);
        let expected = NeutralState::basis(&Partition::new(vec![1]), true)
            .scale(&MultiPoly::constant(ratio(-1, 2)));
        assert_eq!(map_to_neutral(&s, true), expected);
        // (0,1,1): |nu| = 3, l = 2, sign (-1)^{3+1} = +1.
        let s = LatticeState::new(Model::Iboson, vec![0, 1, 1]);
        let expected = NeutralState::basis(&Partition::new(vec![2, 1]), true)
            .scale(&MultiPoly::constant(ratio(1, 4)));
        assert_eq!(map_to_neutral(&s, true), expected);
        // Kets never pick up the sign.
        let s = LatticeState::new(Model::Iboson, vec![2, 1]);
        let expected = NeutralState::basis(&Partition::new(vec![1]), false)
            .scale(&MultiPoly::constant(ratio(1, 2)));
        assert_eq!(map_to_neutral(&s, false), expected);
    }
}
