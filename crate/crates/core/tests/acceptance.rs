//! Acceptance gate: one test per certified claim, each printing its own
//! pass line. Everything here is exact; a failure is a mathematical
//! counterexample, not a tolerance issue.

use fock_core::bch::{verify_lemma_identities, verify_product_exp_identity};
use fock_core::correlators::plane::{plane_partition_series, z_coefficients, PlaneMode};
use fock_core::correlators::{
    evaluate, inverse_relation_check, route_agreement_report, CorrelatorRequest, MSpec, Route,
    Space,
};
use fock_core::fock::neutral::{NeutralState, NeutralWord};
use fock_core::fock::truncate_degree_where;
use fock_core::partition::{enumerate_rectangle, plane_partition_count};
use fock_core::qism::lattice::Model;
use fock_core::qism::rll::verify_rll;
use fock_core::rowops::neutral::apply_b_tilde_rule;
use fock_core::symmetric::{schur, schur_by_branching, schur_q_halved, VariableSet};
use fock_core::verify::find_suite;
use fock_exact::{rat, MultiPoly, TruncatedSeries, Var};

fn family_cut(p: &MultiPoly, d: u32) -> MultiPoly {
    let x = truncate_degree_where(p, |v| matches!(v, Var::X(_)), d);
    truncate_degree_where(&x, |v| matches!(v, Var::Y(_)), d)
}

/// `prod_{i,j <= n} (1 + sign x_i y_j)`.
fn cauchy_product(n: u32, sign: i64) -> MultiPoly {
    let mut out = MultiPoly::one();
    for i in 1..=n {
        for j in 1..=n {
            let mut factor = MultiPoly::one();
            factor = &factor
                + &(&MultiPoly::var(Var::X(i)) * &MultiPoly::var(Var::Y(j))).scale(&rat(sign));
            out = &out * &factor;
        }
    }
    out
}

fn request(space: Space, n: u32, m: MSpec, d: Option<u32>, route: Route) -> CorrelatorRequest {
    CorrelatorRequest { space, n, m, d, route }
}

#[test]
fn criterion_01_bc_route_agreement() {
    for n in 1..=3u32 {
        for m in 1..=3u32 {
            let report = route_agreement_report(Space::Bc, n, MSpec::Finite(m), None);
            assert_eq!(report.routes.len(), 3, "N = {n}, M = {m}");
            assert!(report.agreement, "N = {n}, M = {m}: {:?}", report.first_mismatch);
        }
    }
    println!("criterion 01 (bc three-route agreement, (N,M) in {{1,2,3}}^2): pass");
}

#[test]
fn criterion_02_inverse_relation() {
    for n in 1..=2u32 {
        for m in 1..=2u32 {
            let report = inverse_relation_check(n, m, 6);
            assert!(report.pass, "N = {n}, M = {m}: {:?}", report.first_mismatch);
        }
    }
    println!("criterion 02 (boson x bc = 1 mod degree > 6, (N,M) in {{1,2}}^2): pass");
}

#[test]
fn criterion_03_cauchy_stabilization() {
    for n in 1..=2u32 {
        let minus = cauchy_product(n, -1);
        for m in [3u32, 4, 5] {
            let cap = m - 1;
            let inverse = TruncatedSeries::new(minus.clone(), 2 * cap)
                .inverse()
                .expect("constant term 1");
            let bc = evaluate(&request(Space::Bc, n, MSpec::Finite(m), None, Route::Direct))
                .expect("bc direct route")
                .into_poly();
            assert_eq!(
                family_cut(&bc, cap),
                family_cut(inverse.poly(), cap),
                "bc N = {n}, M = {m}"
            );
            let boson = evaluate(&request(
                Space::Boson,
                n,
                MSpec::Finite(m),
                Some(cap),
                Route::Direct,
            ))
            .expect("boson direct route")
            .into_poly();
            assert_eq!(
                family_cut(&boson, cap),
                family_cut(&minus, cap),
                "boson N = {n}, M = {m}"
            );
        }
    }
    println!("criterion 03 (Cauchy limits below degree M-1, M in {{3,4,5}}): pass");
}

#[test]
fn criterion_04_neutral_identities() {
    for n in 1..=2u32 {
        let plus = cauchy_product(n, 1);
        let minus = cauchy_product(n, -1);
        for m in 1..=3u32 {
            let report = route_agreement_report(Space::Neutral, n, MSpec::Finite(m), None);
            assert!(report.agreement, "N = {n}, M = {m}: {:?}", report.first_mismatch);
            let cap = m - 1;
            let inverse = TruncatedSeries::new(minus.clone(), 2 * cap)
                .inverse()
                .expect("constant term 1");
            let limit = family_cut(&(&plus * inverse.poly()), cap);
            let neutral =
                evaluate(&request(Space::Neutral, n, MSpec::Finite(m), None, Route::Direct))
                    .expect("neutral direct route")
                    .into_poly();
            assert_eq!(family_cut(&neutral, cap), limit, "N = {n}, M = {m}");
        }
    }
    println!("criterion 04 (neutral routes agree and match the Cauchy-Q limit): pass");
}

#[test]
fn criterion_05_plane_partitions() {
    let series = plane_partition_series(PlaneMode::Bc, 8).expect("depth 8 is in bounds");
    let coeffs = z_coefficients(&series, 8);
    let pinned: Vec<i64> = vec![1, 1, 3, 6, 13, 24, 48, 86, 160];
    for (k, want) in pinned.iter().enumerate() {
        assert_eq!(coeffs[k], rat(*want), "z^{k}");
        let oracle = plane_partition_count(k as u32).expect("depth 8 is in bounds");
        assert_eq!(*want, oracle as i64, "enumeration at {k}");
    }
    println!("criterion 05 (plane partitions z^0..z^8 = 1,1,3,6,13,24,48,86,160): pass");
}

#[test]
fn criterion_06_bch_ledger() {
    let lemmas = verify_lemma_identities(20);
    assert!(lemmas.pass, "{:?}", lemmas.failures);
    for m in 1..=3u32 {
        let report = verify_product_exp_identity(m, -3, 6);
        assert!(report.pass, "M = {m}: {:?}", report.failures);
    }
    println!("criterion 06 (coefficient identities to 20; product = exp to x-degree 6): pass");
}

#[test]
fn criterion_07_macmahon_master_theorem() {
    let suite = find_suite("macmahon").expect("registered suite");
    let params = suite.defaults();
    assert_eq!(params.nmax, 8);
    assert_eq!(params.seed, 0);
    let report = suite.run(&params);
    assert_eq!(report.details["master"].as_array().unwrap().len(), 20);
    assert!(report.pass, "{}", report.details);
    println!("criterion 07 (constant-term master theorem, 20 seeded matrices, t-order 8): pass");
}

#[test]
fn criterion_08_qism_diagrams() {
    let suite = find_suite("diagram").expect("registered suite");
    let report = suite.run(&suite.defaults());
    assert!(report.pass, "{}", report.details);
    let rll = verify_rll(Model::Phase, 2);
    assert!(rll.pass && rll.yang_baxter_pass, "{:?}", rll.failures);
    println!("criterion 08 (lattice/Fock squares commute; phase Yang-Baxter exact): pass");
}

#[test]
fn criterion_09_tau_residues() {
    let suite = find_suite("tau").expect("registered suite");
    let params = suite.defaults();
    assert_eq!((params.n, params.m, params.d), (2, 2, 6));
    let report = suite.run(&params);
    assert!(report.pass, "{}", report.details);
    println!("criterion 09 (Hirota residues vanish for Bethe vectors, all three spaces): pass");
}

#[test]
fn criterion_10_schur_engine() {
    for n in 1..=3u32 {
        let vars = VariableSet::x(n);
        for mu in enumerate_rectangle(3, 3, false) {
            assert_eq!(
                schur(&mu, &vars),
                schur_by_branching(&mu, &vars),
                "mu = {}, N = {n}",
                mu.label()
            );
        }
    }
    let m = 3u32;
    let mut ket = NeutralState::vacuum(false);
    for i in [2u32, 1] {
        ket = apply_b_tilde_rule(&ket, Var::Y(i), m).expect("rows fit the box");
    }
    let ys = VariableSet::y(2);
    for mu in enumerate_rectangle(2, m, true) {
        let word = NeutralWord {
            modes: mu.parts().to_vec(),
            zero: mu.length() % 2 == 1,
        };
        assert_eq!(
            ket.coeff(&word),
            schur_q_halved(&mu, &ys).expect("two rows, two variables"),
            "mu = {}",
            mu.label()
        );
    }
    println!("criterion 10 (schur = branching oracle; 2^-l Q = Btilde coefficients): pass");
}

#[test]
fn neutral_rectangle_includes_vanishing_terms() {
    // the N = 1, M = 2 rectangle sum runs over (2,1) whose Q needs two
    // variables; skipping it silently would break route agreement
    let report = route_agreement_report(Space::Neutral, 1, MSpec::Finite(2), None);
    assert!(report.agreement);
    let direct = evaluate(&request(Space::Neutral, 1, MSpec::Finite(2), None, Route::Direct))
        .expect("neutral direct route")
        .into_poly();
    let xy = &MultiPoly::var(Var::X(1)) * &MultiPoly::var(Var::Y(1));
    let expected = &(&MultiPoly::one() + &xy.scale(&rat(2))) + &(&xy * &xy).scale(&rat(2));
    assert_eq!(direct, expected);
}
