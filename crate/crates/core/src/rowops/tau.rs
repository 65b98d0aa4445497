//! Bilinear residue identities satisfied by the generated states.
//!
//! For a state tau built by row operators from the vacuum:
//! - charged fermions: sum_i b(i) tau (x) c(-i) tau = 0,
//! - charged bosons:   sum_i phi_i tau (x) phi*_{-i} tau = 0 on the
//!   bidegrees unaffected by the weight cap,
//! - neutral fermions: sum_i (-1)^i phi_i tau (x) phi_{-i} tau
//!                     = sigma (x) sigma,
//!   where sigma is the image of the odd vacuum phi_0|0> under the same
//!   operator string that built tau. (phi_0 tau does not work: the factors
//!   of Btilde involving phi_0 anticommute with it, so the odd partner of
//!   tau is the odd-vacuum image, not phi_0 applied after the fact.)
//!
//! Each sum is finite: outside an explicit mode window one of the two
//! factors annihilates every word of tau. The residues return the
//! offending tensor components, so an empty map certifies the identity.

use crate::fock::bc_words::{BcMode, KetWord, WordState};
use crate::fock::boson::{BosonState, BosonWord};
use crate::fock::neutral::{NeutralState, NeutralWord};
use fock_exact::MultiPoly;
use std::collections::BTreeMap;

fn accumulate<W: Ord + Clone>(
    map: &mut BTreeMap<(W, W), MultiPoly>,
    left: impl Iterator<Item = (W, MultiPoly)>,
    right: Vec<(W, MultiPoly)>,
    negate: bool,
) {
    for (w1, c1) in left {
        for (w2, c2) in &right {
            let mut term = &c1 * c2;
            if negate {
                term = term.scale(&fock_exact::rat(-1));
            }
            let entry = map.entry((w1.clone(), w2.clone())).or_insert_with(MultiPoly::zero);
            *entry = &*entry + &term;
        }
    }
    map.retain(|_, v| !v.is_zero());
}

/// sum_i b(i) tau (x) c(-i) tau over the window where both factors can
/// survive: b(i) with i >= 1 needs a c mode -i, c(-i) with i <= 0 needs a
/// b mode i.
pub fn kp_residue(tau: &WordState) -> BTreeMap<(KetWord, KetWord), MultiPoly> {
    let min_b = tau.terms().filter_map(|(w, _)| w.b.first().copied()).min();
    let min_c = tau.terms().filter_map(|(w, _)| w.c.first().copied()).min();
    let lo = min_b.unwrap_or(1);
    let hi = min_c.map_or(0, |c| -c);
    let mut map = BTreeMap::new();
    for i in lo..=hi {
        let left = tau.apply_mode(BcMode::B(i));
        let right = tau.apply_mode(BcMode::C(-i));
        accumulate(
            &mut map,
            left.terms().map(|(w, c)| (w.clone(), c.clone())),
            right.terms().map(|(w, c)| (w.clone(), c.clone())).collect(),
            false,
        );
    }
    map
}

/// sum_i phi_i tau (x) phi*_{-i} tau for a tau truncated at weight `cap`,
/// restricted to the bidegrees the truncation cannot affect: the left
/// weight may reach cap minus the largest phi* slot of tau, the right
/// weight cap minus the largest phi slot.
pub fn boson_kp_residue(tau: &BosonState, cap: u32) -> BTreeMap<(BosonWord, BosonWord), MultiPoly> {
    let max_phi = tau.max_phi_slot();
    let max_star = tau.max_star_slot();
    let lo = max_phi.map_or(0, |p| -(p as i64));
    let hi = max_star.map_or(-1, |s| s as i64);
    let mut map = BTreeMap::new();
    for i in lo..=hi {
        let left = tau.apply_phi(i);
        let right = tau.apply_phi_star(-i);
        accumulate(
            &mut map,
            left.terms().map(|(w, c)| (w.clone(), c.clone())),
            right.terms().map(|(w, c)| (w.clone(), c.clone())).collect(),
            false,
        );
    }
    let amax = cap as i64 - max_star.unwrap_or(0) as i64;
    let bmax = cap as i64 - max_phi.unwrap_or(0) as i64;
    map.retain(|(w1, w2), _| w1.weight() as i64 <= amax && w2.weight() as i64 <= bmax);
    map
}

/// sum_i (-1)^i phi_i tau (x) phi_{-i} tau minus sigma (x) sigma.
pub fn bkp_residue(
    tau: &NeutralState,
    sigma: &NeutralState,
) -> BTreeMap<(NeutralWord, NeutralWord), MultiPoly> {
    let top = tau.max_mode().unwrap_or(0) as i64;
    let mut map = BTreeMap::new();
    for i in -top..=top {
        let left = tau.apply_phi(i);
        let right = tau.apply_phi(-i);
        accumulate(
            &mut map,
            left.terms().map(|(w, c)| (w.clone(), c.clone())),
            right.terms().map(|(w, c)| (w.clone(), c.clone())).collect(),
            i.rem_euclid(2) == 1,
        );
    }
    accumulate(
        &mut map,
        sigma.terms().map(|(w, c)| (w.clone(), c.clone())),
        sigma.terms().map(|(w, c)| (w.clone(), c.clone())).collect(),
        true,
    );
    map
}
