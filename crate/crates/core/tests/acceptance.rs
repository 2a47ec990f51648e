//! Acceptance suite: one PASS/FAIL line per criterion. Set `KOITER_SEED` to
//! change the seed of the randomized checks.
//!
//! Criteria with a known, documented failure are still reported as FAIL; the
//! test itself fails only if a criterion outside `KNOWN_FAILURES` fails.

use std::io::Write;

use cylbuckle_core::acceptance::{run_all, seed_from_env, AcceptanceConfig};

/// Criteria whose strict bound is not met by the current implementation.
const KNOWN_FAILURES: [u8; 3] = [2, 5, 8];

// Written to the process stdout directly so the table shows up even when
// libtest captures output.
macro_rules! report {
    ($($arg:tt)*) => {
        writeln!(std::io::stdout().lock(), $($arg)*).expect("stdout")
    };
}

#[test]
fn acceptance() {
    let cfg = AcceptanceConfig {
        seed: seed_from_env(),
        ..AcceptanceConfig::default()
    };
    report!("seed = {}", cfg.seed);
    let outcomes = run_all(&cfg);
    for o in &outcomes {
        report!("{o}");
        for note in &o.notes {
            report!("    {note}");
        }
    }
    let failed: Vec<u8> = outcomes.iter().filter(|o| !o.passed()).map(|o| o.id).collect();
    let passed = outcomes.len() - failed.len();
    report!("{passed}/{} criteria passed", outcomes.len());
    let unexpected: Vec<u8> = failed
        .iter()
        .copied()
        .filter(|id| !KNOWN_FAILURES.contains(id))
        .collect();
    assert!(unexpected.is_empty(), "unexpected failures: {unexpected:?}");
}
