//! Commutative diagrams between the lattice monodromy entries and the row
//! operators.
//!
//! For every bounded lattice basis state the two routes around the square
//! must agree exactly: mapping to the Fock space and applying the row
//! operator, against applying the dressed monodromy entry and then mapping.
//! Kets pair BB(x) with B(x); bras pair CC(x) with C(x).

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use fock_exact::{MultiPoly, Var};

use crate::fock::bc::BcState;
use crate::fock::neutral::NeutralState;
use crate::qism::lattice::{
    map_to_bc, map_to_neutral, monodromy, occupation_partition, LatticeState, Model, Monodromy,
};
use crate::rowops::bc::{apply_b_rule, apply_c_dual_rule};
use crate::rowops::neutral::{apply_b_tilde_rule, apply_c_tilde_dual_rule};

/// Outcome of the diagram check over all bounded basis states.
#[derive(Debug, Clone, Serialize)]
pub struct DiagramReport {
    pub model: String,
    pub m: u32,
    pub max_particles: u32,
    pub states_checked: usize,
    pub pass: bool,
    pub failures: Vec<String>,
}

/// Check both squares for every lattice basis state with at most
/// `max_particles` quanta on sites 0..=m.
pub fn verify_commutative_diagram(model: Model, m: u32, max_particles: u32) -> DiagramReport {
    let states = enumerate_states(model, m, max_particles);
    let mut failures: Vec<String> = states
        .par_iter()
        .flat_map(|state| {
            let mut bad = Vec::new();
            if !ket_square_commutes(state, m) {
                bad.push(format!("ket {}", state.label()));
            }
            if !bra_square_commutes(state, m) {
                bad.push(format!("bra {}", state.label()));
            }
            bad
        })
        .collect();
    failures.sort();
    DiagramReport {
        model: model.to_string(),
        m,
        max_particles,
        states_checked: states.len(),
        pass: failures.is_empty(),
        failures,
    }
}

fn enumerate_states(model: Model, m: u32, max_particles: u32) -> Vec<LatticeState> {
    let mut out = Vec::new();
    let mut occ = vec![0u32; m as usize + 1];
    fill(model, max_particles, 0, &mut occ, &mut out);
    out
}

fn fill(model: Model, budget: u32, site: usize, occ: &mut Vec<u32>, out: &mut Vec<LatticeState>) {
    if site == occ.len() {
        out.push(LatticeState::new(model, occ.clone()));
        return;
    }
    let top = if model == Model::Iboson && site >= 1 {
        budget.min(1)
    } else {
        budget
    };
    for n in 0..=top {
        occ[site] = n;
        fill(model, budget - n, site + 1, occ, out);
    }
    occ[site] = 0;
}

fn checked_monodromy(state: &LatticeState, m: u32) -> Monodromy {
    monodromy(state.model(), m).with_cap(state.total() + 1)
}

fn collect_bc(image: &BTreeMap<Vec<u32>, MultiPoly>, dual: bool) -> BcState {
    let mut out = BcState::zero(dual);
    for (occ, coeff) in image {
        out.add_term(occupation_partition(occ), coeff);
    }
    out
}

fn collect_neutral(image: &BTreeMap<Vec<u32>, MultiPoly>, dual: bool) -> NeutralState {
    let mut out = NeutralState::zero(dual);
    for (occ, coeff) in image {
        let s = map_to_neutral(&LatticeState::new(Model::Iboson, occ.clone()), dual);
        out = out.add(&s.scale(coeff));
    }
    out
}

fn ket_square_commutes(state: &LatticeState, m: u32) -> bool {
    let x = Var::X(1);
    let Ok(image) = checked_monodromy(state, m).apply_bb(state, x) else {
        return false;
    };
    match state.model() {
        Model::Phase => {
            let fock = apply_b_rule(&map_to_bc(state, false), x, m).expect("parts bounded by m");
            collect_bc(&image, false) == fock
        }
        Model::Iboson => {
            let fock =
                apply_b_tilde_rule(&map_to_neutral(state, false), x, m).expect("parts bounded");
            collect_neutral(&image, false) == fock
        }
    }
}

fn bra_square_commutes(state: &LatticeState, m: u32) -> bool {
    let x = Var::X(1);
    let Ok(image) = checked_monodromy(state, m).apply_cc(state, x) else {
        return false;
    };
    match state.model() {
        Model::Phase => {
            let fock = apply_c_dual_rule(&map_to_bc(state, true), x, m).expect("parts bounded");
            collect_bc(&image, true) == fock
        }
        Model::Iboson => {
            let fock = apply_c_tilde_dual_rule(&map_to_neutral(state, true), x, m)
                .expect("parts bounded");
            collect_neutral(&image, true) == fock
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::Partition;

    #[test]
    fn phase_vacuum_diagram_is_pinned() {
        let state = LatticeState::new(Model::Phase, vec![0, 0]);
        let image = monodromy(Model::Phase, 1)
            .apply_bb(&state, Var::X(1))
            .unwrap();
        let mut expected = BcState::zero(false);
        expected.add_term(Partition::empty(), &MultiPoly::one());
        expected.add_term(Partition::new(vec![1]), &MultiPoly::var(Var::X(1)));
        assert_eq!(collect_bc(&image, false), expected);
        let fock = apply_b_rule(&map_to_bc(&state, false), Var::X(1), 1).unwrap();
        assert_eq!(fock, expected);
    }

    #[test]
    fn iboson_vacuum_diagram_is_pinned() {
        let state = LatticeState::new(Model::Iboson, vec![0, 0]);
        let image = monodromy(Model::Iboson, 1)
            .apply_bb(&state, Var::X(1))
            .unwrap();
        let expected = NeutralState::basis(&Partition::empty(), false).add(
            &NeutralState::basis(&Partition::new(vec![1]), false)
                .scale(&MultiPoly::var(Var::X(1))),
        );
        assert_eq!(collect_neutral(&image, false), expected);
        let fock = apply_b_tilde_rule(&map_to_neutral(&state, false), Var::X(1), 1).unwrap();
        assert_eq!(fock, expected);

        // The bra square needs the signed map: the lattice side is positive
        // while Ctilde sends (empty| to (empty| - x ((1)|.
        let image = monodromy(Model::Iboson, 1)
            .apply_cc(&state, Var::X(1))
            .unwrap();
        let expected = NeutralState::basis(&Partition::empty(), true).add(
            &NeutralState::basis(&Partition::new(vec![1]), true)
                .scale(&MultiPoly::var(Var::X(1)).scale(&fock_exact::rat(-1))),
        );
        assert_eq!(collect_neutral(&image, true), expected);
        let fock = apply_c_tilde_dual_rule(&map_to_neutral(&state, true), Var::X(1), 1).unwrap();
        assert_eq!(fock, expected);
    }

    #[test]
    fn diagrams_commute_for_both_models() {
        for m in 0..=3 {
            let phase = verify_commutative_diagram(Model::Phase, m, 3);
            assert!(phase.pass, "phase m = {m}: {:?}", phase.failures);
            let iboson = verify_commutative_diagram(Model::Iboson, m, 3);
            assert!(iboson.pass, "iboson m = {m}: {:?}", iboson.failures);
        }
    }

    fn bb_twice(
        model: Model,
        m: u32,
        state: &LatticeState,
        first: Var,
        second: Var,
    ) -> BTreeMap<Vec<u32>, MultiPoly> {
        let mono = monodromy(model, m).with_cap(state.total() + 2);
        let mut out: BTreeMap<Vec<u32>, MultiPoly> = BTreeMap::new();
        for (occ, c) in mono.apply_bb(state, first).unwrap() {
            let mid = LatticeState::new(model, occ);
            for (occ2, c2) in mono.apply_bb(&mid, second).unwrap() {
                let sum = match out.remove(&occ2) {
                    Some(prev) => &prev + &(&c * &c2),
                    None => &c * &c2,
                };
                out.insert(occ2, sum);
            }
        }
        out
    }

    fn cc_twice(
        model: Model,
        m: u32,
        state: &LatticeState,
        first: Var,
        second: Var,
    ) -> BTreeMap<Vec<u32>, MultiPoly> {
        let mono = monodromy(model, m).with_cap(state.total() + 2);
        let mut out: BTreeMap<Vec<u32>, MultiPoly> = BTreeMap::new();
        for (occ, c) in mono.apply_cc(state, first).unwrap() {
            let mid = LatticeState::new(model, occ);
            for (occ2, c2) in mono.apply_cc(&mid, second).unwrap() {
                let sum = match out.remove(&occ2) {
                    Some(prev) => &prev + &(&c * &c2),
                    None => &c * &c2,
                };
                out.insert(occ2, sum);
            }
        }
        out
    }

    #[test]
    fn dressed_entries_commute_among_themselves() {
        let (x, y) = (Var::X(1), Var::Y(1));
        for (model, occ) in [
            (Model::Phase, vec![0, 0, 0, 0]),
            (Model::Phase, vec![1, 0, 2, 0]),
            (Model::Iboson, vec![0, 0, 0, 0]),
            (Model::Iboson, vec![2, 1, 0, 1]),
        ] {
            let state = LatticeState::new(model, occ);
            assert_eq!(
                bb_twice(model, 3, &state, x, y),
                bb_twice(model, 3, &state, y, x),
                "BB on {}",
                state.label()
            );
            assert_eq!(
                cc_twice(model, 3, &state, x, y),
                cc_twice(model, 3, &state, y, x),
                "CC on {}",
                state.label()
            );
        }
    }

    #[test]
    fn reports_serialize_with_counts() {
        let report = verify_commutative_diagram(Model::Phase, 1, 2);
        assert!(report.pass);
        // sites 0..=1 with at most two quanta: 6 occupation patterns
        assert_eq!(report.states_checked, 6);
        let json = serde_json::to_value(&report).unwrap();
        assert_eq!(json["model"], "phase");
        assert_eq!(json["states_checked"], 6);
    }
}
