//! Named verification suites behind one registry.
//!
//! Each family of identity checks is packaged as a `Suite` trait object
//! keyed by name, so the command line and the acceptance harness run the
//! same code: pick a suite, size it with `SuiteParams`, get a uniform
//! `SuiteReport`. The nine names are
//!
//! - `routes`: every applicable correlator route agrees, all three spaces;
//! - `bch`: coefficient identities plus the windowed product vs exponential;
//! - `macmahon`: the constant-term master theorem on seeded random matrices
//!   and the rational constant-term lemma;
//! - `diagram`: lattice vs Fock commutative squares for both models;
//! - `rll`: the RLL exchange relation and the Yang-Baxter equation;
//! - `inverse`: boson times bc equals one below the cap;
//! - `tau`: bilinear residues vanish on row-generated states and are
//!   nonzero on the planted controls;
//! - `planepartition`: the specialized series against direct enumeration;
//! - `stabilization`: low-degree coefficients freeze as the cutoff grows.
//!
//! Heavy work parallelizes inside a suite; reports are assembled single
//! threaded. `with_thread_cap` honors the FOCK_THREADS variable.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::bch::{
    verify_constant_term_lemma_scaled, verify_lemma_identities, verify_macmahon,
    verify_product_exp_identity, CtLemmaReport, MacmahonReport,
};
use crate::correlators::plane::{plane_partition_series, z_coefficients, PlaneMode};
use crate::correlators::stabilization::heisenberg_stabilization_check;
use crate::correlators::{
    inverse_relation_check, route_agreement_report, InverseReport, MSpec, RouteReport, Space,
};
use crate::fock::bc::ket_word_state;
use crate::fock::bc_words::WordState;
use crate::fock::boson::BosonState;
use crate::fock::neutral::NeutralState;
use crate::partition::{plane_partition_count, Partition};
use crate::qism::diagram::verify_commutative_diagram;
use crate::qism::lattice::Model;
use crate::qism::rll::verify_rll;
use crate::rowops::bc::apply_b_product;
use crate::rowops::boson::apply_b_star_exp;
use crate::rowops::neutral::apply_b_tilde_product;
use crate::rowops::tau::{bkp_residue, boson_kp_residue, kp_residue};
use fock_exact::{rat, ratio, Rational, Var};

/// Sizes for one suite run; every suite reads only the fields it documents.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SuiteParams {
    pub n: u32,
    pub m: u32,
    pub d: u32,
    pub depth: u32,
    pub nmax: u32,
    pub seed: u64,
}

impl Default for SuiteParams {
    fn default() -> Self {
        SuiteParams { n: 2, m: 2, d: 6, depth: 6, nmax: 8, seed: 0 }
    }
}

/// Uniform outcome: the suite name, the overall verdict, and the full
/// sub-reports in JSON form.
#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub pass: bool,
    pub details: Value,
}

/// One named family of checks.
pub trait Suite: Sync {
    fn name(&self) -> &'static str;
    /// Sizes at which the suite certifies its identities when none are given.
    fn defaults(&self) -> SuiteParams;
    fn run(&self, params: &SuiteParams) -> SuiteReport;
}

static REGISTRY: [&dyn Suite; 9] = [
    &RoutesSuite,
    &BchSuite,
    &MacmahonSuite,
    &DiagramSuite,
    &RllSuite,
    &InverseSuite,
    &TauSuite,
    &PlanePartitionSuite,
    &StabilizationSuite,
];

/// Every registered suite, in reporting order.
pub fn suite_registry() -> &'static [&'static dyn Suite] {
    &REGISTRY
}

/// Looks a suite up by its registry name.
pub fn find_suite(name: &str) -> Option<&'static dyn Suite> {
    REGISTRY.iter().copied().find(|s| s.name() == name)
}

/// The nine registry names, in reporting order.
pub fn suite_names() -> Vec<&'static str> {
    REGISTRY.iter().map(|s| s.name()).collect()
}

/// Runs `f` on a pool of the given size, or inline when `threads` is None.
pub fn pooled<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> T {
    match threads {
        Some(t) if t >= 1 => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .expect("pool construction")
            .install(f),
        _ => f(),
    }
}

/// Runs `f` under the FOCK_THREADS cap when that variable is set.
pub fn with_thread_cap<T: Send>(f: impl FnOnce() -> T + Send) -> T {
    let cap = std::env::var("FOCK_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok());
    pooled(cap, f)
}

fn report(name: &str, pass: bool, details: Value) -> SuiteReport {
    SuiteReport { suite: name.to_string(), pass, details }
}

struct RoutesSuite;

impl Suite for RoutesSuite {
    fn name(&self) -> &'static str {
        "routes"
    }

    fn defaults(&self) -> SuiteParams {
        SuiteParams { n: 3, m: 3, ..SuiteParams::default() }
    }

    fn run(&self, p: &SuiteParams) -> SuiteReport {
        let mut cases = Vec::new();
        for space in [Space::Bc, Space::Boson, Space::Neutral] {
            // the boson routes are certified at N <= 2; beyond that the
            // weight-capped expansions grow far past the cross-check scale
            let n_top = if space == Space::Boson { p.n.min(2) } else { p.n };
            for n in 1..=n_top {
                for m in 1..=p.m {
                    cases.push((space, n, m));
                }
            }
        }
        let reports: Vec<RouteReport> = cases
            .par_iter()
            .map(|&(space, n, m)| {
                let d = (space == Space::Boson).then_some(p.d);
                route_agreement_report(space, n, MSpec::Finite(m), d)
            })
            .collect();
        let pass = reports.iter().all(|r| r.agreement);
        report(self.name(), pass, json!({ "cases": reports }))
    }
}

struct BchSuite;

impl Suite for BchSuite {
    fn name(&self) -> &'static str {
        "bch"
    }

    fn defaults(&self) -> SuiteParams {
        SuiteParams { nmax: 20, m: 3, ..SuiteParams::default() }
    }

    fn run(&self, p: &SuiteParams) -> SuiteReport {
        let lemmas = verify_lemma_identities(p.nmax);
        let product_exp: Vec<_> = (1..=p.m)
            .into_par_iter()
            // the basis rectangle has three rows, so the window must reach
            // down to -3 regardless of the cutoff
            .map(|m| verify_product_exp_identity(m, -3, p.d))
            .collect();
        let pass = lemmas.pass && product_exp.iter().all(|r| r.pass);
        report(
            self.name(),
            pass,
            json!({ "lemmas": lemmas, "product_exp": product_exp }),
        )
    }
}

fn random_rational(rng: &mut ChaCha8Rng, nonzero: bool) -> Rational {
    let mut num = rng.gen_range(-4i64..=4);
    while nonzero && num == 0 {
        num = rng.gen_range(-4i64..=4);
    }
    ratio(num, rng.gen_range(1i64..=3))
}

fn random_matrix(rng: &mut ChaCha8Rng, n: usize) -> Vec<Vec<Rational>> {
    (0..n)
        .map(|i| (0..n).map(|j| random_rational(rng, i == j)).collect())
        .collect()
}

struct MacmahonSuite;

impl Suite for MacmahonSuite {
    fn name(&self) -> &'static str {
        "macmahon"
    }

    fn defaults(&self) -> SuiteParams {
        SuiteParams::default()
    }

    fn run(&self, p: &SuiteParams) -> SuiteReport {
        let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
        let matrices: Vec<Vec<Vec<Rational>>> = (0..20)
            .map(|_| {
                let n = rng.gen_range(1..=3);
                random_matrix(&mut rng, n)
            })
            .collect();
        let lemma_instances: Vec<(Vec<Rational>, Vec<Rational>, Rational)> = (0..5)
            .map(|_| {
                let len = rng.gen_range(1..=3);
                let a = (0..len).map(|_| random_rational(&mut rng, false)).collect();
                let c = (0..len).map(|_| random_rational(&mut rng, true)).collect();
                (a, c, random_rational(&mut rng, false))
            })
            .collect();
        let master: Vec<MacmahonReport> = matrices
            .par_iter()
            .map(|t| verify_macmahon(t, p.nmax).expect("diagonals were drawn nonzero"))
            .collect();
        let ct_lemma: Vec<CtLemmaReport> = lemma_instances
            .par_iter()
            .map(|(a, c, b)| verify_constant_term_lemma_scaled(a, c, b, p.nmax))
            .collect();
        let pass = master.iter().all(|r| r.pass) && ct_lemma.iter().all(|r| r.pass);
        report(
            self.name(),
            pass,
            json!({ "master": master, "ct_lemma": ct_lemma, "seed": p.seed }),
        )
    }
}

struct DiagramSuite;

impl Suite for DiagramSuite {
    fn name(&self) -> &'static str {
        "diagram"
    }

    fn defaults(&self) -> SuiteParams {
        SuiteParams { n: 3, m: 3, ..SuiteParams::default() }
    }

    fn run(&self, p: &SuiteParams) -> SuiteReport {
        let mut reports = Vec::new();
        for model in [Model::Phase, Model::Iboson] {
            for m in 0..=p.m {
                reports.push(verify_commutative_diagram(model, m, p.n));
            }
        }
        let pass = reports.iter().all(|r| r.pass);
        report(self.name(), pass, json!({ "squares": reports }))
    }
}

struct RllSuite;

impl Suite for RllSuite {
    fn name(&self) -> &'static str {
        "rll"
    }

    fn defaults(&self) -> SuiteParams {
        SuiteParams::default()
    }

    fn run(&self, p: &SuiteParams) -> SuiteReport {
        let mut reports = Vec::new();
        for model in [Model::Phase, Model::Iboson] {
            for m in 0..=p.m.min(2) {
                reports.push(verify_rll(model, m));
            }
        }
        let pass = reports.iter().all(|r| r.pass && r.yang_baxter_pass);
        report(self.name(), pass, json!({ "relations": reports }))
    }
}

struct InverseSuite;

impl Suite for InverseSuite {
    fn name(&self) -> &'static str {
        "inverse"
    }

    fn defaults(&self) -> SuiteParams {
        SuiteParams::default()
    }

    fn run(&self, p: &SuiteParams) -> SuiteReport {
        let mut cases = Vec::new();
        for n in 1..=p.n {
            for m in 1..=p.m {
                cases.push((n, m));
            }
        }
        let reports: Vec<InverseReport> = cases
            .par_iter()
            .map(|&(n, m)| inverse_relation_check(n, m, p.d))
            .collect();
        let pass = reports.iter().all(|r| r.pass);
        report(self.name(), pass, json!({ "products": reports }))
    }
}

/// One residue computation inside the tau suite.
#[derive(Debug, Clone, Serialize)]
struct TauEntry {
    space: String,
    kind: String,
    n: u32,
    m: u32,
    residue_terms: usize,
    pass: bool,
}

struct TauSuite;

impl TauSuite {
    fn orbit_entries(p: &SuiteParams) -> Vec<TauEntry> {
        let mut out = Vec::new();
        for m in 1..=p.m {
            for n in 0..=p.n {
                let mut bc = WordState::vacuum();
                let mut boson = BosonState::vacuum(false);
                let mut neutral = NeutralState::vacuum(false);
                let mut odd = neutral.apply_phi(0);
                for i in (1..=n).rev() {
                    bc = apply_b_product(&bc, Var::Y(i), m);
                    boson = apply_b_star_exp(&boson, Var::Y(i), m, p.d);
                    neutral = apply_b_tilde_product(&neutral, Var::Y(i), m)
                        .expect("rows stay inside the box");
                    odd = apply_b_tilde_product(&odd, Var::Y(i), m)
                        .expect("rows stay inside the box");
                }
                let kp = kp_residue(&bc).len();
                out.push(TauEntry {
                    space: "bc".into(),
                    kind: "orbit".into(),
                    n,
                    m,
                    residue_terms: kp,
                    pass: kp == 0,
                });
                let bkp = boson_kp_residue(&boson, p.d).len();
                out.push(TauEntry {
                    space: "boson".into(),
                    kind: "orbit".into(),
                    n,
                    m,
                    residue_terms: bkp,
                    pass: bkp == 0,
                });
                let nkp = bkp_residue(&neutral, &odd).len();
                out.push(TauEntry {
                    space: "neutral".into(),
                    kind: "orbit".into(),
                    n,
                    m,
                    residue_terms: nkp,
                    pass: nkp == 0,
                });
            }
        }
        out
    }

    /// Planted non-orbit states; here a PASS means a nonzero residue.
    fn control_entries(p: &SuiteParams) -> Vec<TauEntry> {
        let bc = WordState::vacuum().add(&ket_word_state(&Partition::new(vec![2, 2])));
        let linear = BosonState::vacuum(false).apply_phi_star(0).apply_phi(-1);
        let boson = BosonState::vacuum(false).add(&linear);
        let neutral =
            NeutralState::vacuum(false).add(&NeutralState::basis(&Partition::new(vec![3, 2, 1]), false));
        let kp = kp_residue(&bc).len();
        let bkp = boson_kp_residue(&boson, p.d).len();
        let nkp = bkp_residue(&neutral, &neutral.apply_phi(0)).len();
        vec![
            TauEntry {
                space: "bc".into(),
                kind: "control".into(),
                n: 0,
                m: 2,
                residue_terms: kp,
                pass: kp > 0,
            },
            TauEntry {
                space: "boson".into(),
                kind: "control".into(),
                n: 0,
                m: 1,
                residue_terms: bkp,
                pass: bkp > 0,
            },
            TauEntry {
                space: "neutral".into(),
                kind: "control".into(),
                n: 0,
                m: 3,
                residue_terms: nkp,
                pass: nkp > 0,
            },
        ]
    }
}

impl Suite for TauSuite {
    fn name(&self) -> &'static str {
        "tau"
    }

    fn defaults(&self) -> SuiteParams {
        SuiteParams::default()
    }

    fn run(&self, p: &SuiteParams) -> SuiteReport {
        let mut entries = Self::orbit_entries(p);
        entries.extend(Self::control_entries(p));
        let pass = entries.iter().all(|e| e.pass);
        report(self.name(), pass, json!({ "residues": entries }))
    }
}

struct PlanePartitionSuite;

impl Suite for PlanePartitionSuite {
    fn name(&self) -> &'static str {
        "planepartition"
    }

    fn defaults(&self) -> SuiteParams {
        SuiteParams::default()
    }

    fn run(&self, p: &SuiteParams) -> SuiteReport {
        let series = match plane_partition_series(PlaneMode::Bc, p.depth) {
            Ok(s) => s,
            Err(e) => {
                return report(
                    self.name(),
                    false,
                    json!({ "depth": p.depth, "error": e.to_string() }),
                )
            }
        };
        let coeffs = z_coefficients(&series, p.depth);
        let oracle: Vec<u64> = (0..=p.depth)
            .map(|k| plane_partition_count(k).expect("depth stays under the bound"))
            .collect();
        let pass = coeffs
            .iter()
            .zip(&oracle)
            .all(|(c, &o)| *c == rat(o as i64));
        let printed: Vec<String> = coeffs.iter().map(|c| c.to_string()).collect();
        report(
            self.name(),
            pass,
            json!({ "depth": p.depth, "coefficients": printed, "enumeration": oracle }),
        )
    }
}

struct StabilizationSuite;

impl Suite for StabilizationSuite {
    fn name(&self) -> &'static str {
        "stabilization"
    }

    fn defaults(&self) -> SuiteParams {
        SuiteParams { m: 5, ..SuiteParams::default() }
    }

    fn run(&self, p: &SuiteParams) -> SuiteReport {
        let lo = p.m.min(3);
        let m_list: Vec<u32> = (lo..=p.m).collect();
        let rep = heisenberg_stabilization_check(p.n, &m_list);
        let pass = rep.pass;
        report(self.name(), pass, json!({ "cutoffs": rep }))
    }
}
