//! Every registered suite runs end to end at reduced sizes through the
//! public registry, so a regression in any runner surfaces even when the
//! acceptance gate only exercises its default shape.

use fock_core::verify::{find_suite, suite_names, with_thread_cap, SuiteParams};

fn small(name: &str) -> SuiteParams {
    let base = SuiteParams { n: 2, m: 2, d: 4, depth: 4, nmax: 6, seed: 0 };
    match name {
        "rll" => SuiteParams { m: 1, ..base },
        "stabilization" => SuiteParams { m: 4, ..base },
        "bch" => SuiteParams { nmax: 6, m: 2, ..base },
        _ => base,
    }
}

#[test]
fn every_suite_passes_at_reduced_sizes() {
    for name in suite_names() {
        let suite = find_suite(name).expect("registered");
        let report = with_thread_cap(|| suite.run(&small(name)));
        assert_eq!(report.suite, name);
        assert!(report.pass, "{name}: {}", report.details);
    }
}

#[test]
fn reports_round_trip_through_json() {
    let suite = find_suite("planepartition").expect("registered");
    let report = suite.run(&small("planepartition"));
    let text = serde_json::to_string(&report).expect("serializes");
    let value: serde_json::Value = serde_json::from_str(&text).expect("parses back");
    assert_eq!(value["suite"], "planepartition");
    assert_eq!(value["pass"], true);
}
