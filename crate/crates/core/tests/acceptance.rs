//! Acceptance suite: one test per criterion, each printing a pass/fail line.
//! All comparisons are exact in Q(z); no numerical tolerances exist anywhere.

use partalg::bratteli::{enumerate_paths, vertices};
use partalg::diagram::{bell_number, enumerate_basis, generator, GenKind};
use partalg::jm::JmTables;
use partalg::level::LevelIndex;
use partalg::par::Mode;
use partalg::report::{Report, Status};
use partalg::suites;

fn conclude(n: u32, name: &str, reports: &[&Report]) {
    let ok = reports.iter().all(|r| r.passed());
    let (pass, fail, known) = reports.iter().fold((0, 0, 0), |acc, r| {
        let (p, f, k) = r.counts();
        (acc.0 + p, acc.1 + f, acc.2 + k)
    });
    println!(
        "acceptance {n} ({name}): {} ({pass} pass, {fail} fail, {known} known-discrepancy)",
        if ok { "PASS" } else { "FAIL" }
    );
    if !ok {
        for r in reports {
            print!("{r}");
        }
        panic!("acceptance criterion {n} failed");
    }
}

const MAX: LevelIndex = LevelIndex { twice: 7 };

#[test]
fn acceptance_1_golden_reproduction() {
    let r = suites::suite_golden(Mode::Parallel);
    conclude(1, "golden reproduction of the published tables", &[&r]);
}

#[test]
fn acceptance_2_presentation_relations() {
    let r = suites::suite_presentations(MAX, Mode::Parallel);
    conclude(2, "presentation relations, diagram algebra and matrices", &[&r]);
}

#[test]
fn acceptance_3_jm_identity_suite() {
    let mut r = suites::suite_jm();
    // the generator transition: s_1 = sigma_2, s_l = sigma_{l+1/2} sigma_{l+1}
    let t = JmTables::new(3);
    for l in 1..=2usize {
        r.push(
            format!("transition s_{l}"),
            "interchange product equals the transposition",
            t.coxeter_via_sigma(l) == generator(GenKind::S, l, 3),
        );
    }
    conclude(3, "collected JM identities at k=3", &[&r]);
}

#[test]
fn acceptance_4_spectral_suite() {
    // JM diagonality with content eigenvalues and the central scalar are
    // inside the seminormal suite; assert those entries exist and pass
    let r = suites::suite_seminormal(MAX, Mode::Parallel);
    let spectral: Vec<_> = r
        .checks
        .iter()
        .filter(|c| c.id.starts_with("spectral") || c.id.starts_with("central-scalar"))
        .collect();
    assert!(spectral.len() >= 22, "spectral checks cover every label");
    let ok = spectral.iter().all(|c| c.status == Status::Pass);
    println!(
        "acceptance 4 (spectral suite): {} ({} checks)",
        if ok { "PASS" } else { "FAIL" },
        spectral.len()
    );
    assert!(ok, "spectral suite failed");
}

#[test]
fn acceptance_5_formula_vs_oracle_with_errata_detection() {
    let r = suites::suite_seminormal(MAX, Mode::Parallel);
    let formula: Vec<_> = r
        .checks
        .iter()
        .filter(|c| c.id.starts_with("formula-vs-oracle") || c.id.starts_with("case1"))
        .collect();
    assert!(!formula.is_empty());
    let ok = formula.iter().all(|c| c.status == Status::Pass);
    // the two printed mixed-case discrepancies must be detected and
    // classified sign-only
    let known: Vec<_> = r
        .checks
        .iter()
        .filter(|c| c.status == Status::KnownDiscrepancy && c.id.starts_with("case2"))
        .collect();
    let has_half = known.iter().any(|c| {
        c.note.as_deref().unwrap_or("").contains("p-half-case2")
    });
    let has_whole = known.iter().any(|c| {
        c.note.as_deref().unwrap_or("").contains("p-whole-case2")
    });
    // and no case2 check may be a hard failure
    let case2_fail = r
        .checks
        .iter()
        .any(|c| c.id.starts_with("case2") && c.status == Status::Fail);
    let all = ok && has_half && has_whole && !case2_fail;
    println!(
        "acceptance 5 (formula vs oracle, errata detected): {} ({} formula checks, {} classified discrepancies)",
        if all { "PASS" } else { "FAIL" },
        formula.len(),
        known.len()
    );
    assert!(ok, "formula route disagreed with the oracle");
    assert!(
        has_half && has_whole,
        "the two printed sign errata were not both detected"
    );
    assert!(!case2_fail, "a mixed-case diagonal mismatch was not sign-only");
}

#[test]
fn acceptance_6_quadratic_entry_identities() {
    let r = suites::suite_seminormal(MAX, Mode::Parallel);
    let quad: Vec<_> = r
        .checks
        .iter()
        .filter(|c| c.id.starts_with("chain-identity") || c.id.starts_with("squared-entry"))
        .collect();
    assert!(!quad.is_empty());
    let ok = quad.iter().all(|c| c.status == Status::Pass);
    println!(
        "acceptance 6 (quadratic entry identities): {} ({} checks)",
        if ok { "PASS" } else { "FAIL" },
        quad.len()
    );
    assert!(ok, "quadratic identities failed");
}

#[test]
fn acceptance_7_gram_suite() {
    // edge products equal oracle norms; orthogonality is enforced by the
    // eigenbasis construction (a non-diagonal form aborts the build), and
    // re-verified here through the reported norm checks
    let r = suites::suite_seminormal(MAX, Mode::Parallel);
    let gram: Vec<_> = r
        .checks
        .iter()
        .filter(|c| c.id.starts_with("gram-"))
        .collect();
    assert!(!gram.is_empty());
    let ok = gram.iter().all(|c| c.status == Status::Pass);
    println!(
        "acceptance 7 (gram suite): {} ({} checks)",
        if ok { "PASS" } else { "FAIL" },
        gram.len()
    );
    assert!(ok, "gram suite failed");
}

#[test]
fn acceptance_8_central_recursions() {
    let r = suites::suite_central(Mode::Parallel);
    conclude(8, "central series recursions, residues, contracted powers", &[&r]);
}

#[test]
fn acceptance_9_combinatorial_counts() {
    use std::time::Instant;
    let t0 = Instant::now();
    let r = suites::suite_counts();
    // the headline numbers, pinned
    assert_eq!(enumerate_basis(2, false).len(), 15);
    assert_eq!(enumerate_basis(3, false).len(), 203);
    assert_eq!(enumerate_basis(2, true).len(), 5);
    assert_eq!(enumerate_basis(3, true).len(), 52);
    assert_eq!(bell_number(4), 15u32.into());
    assert_eq!(bell_number(6), 203u32.into());
    // per-level square sums double-checked directly
    for tw in 2..=7u32 {
        let lvl = LevelIndex::from_twice(tw);
        let total: num_bigint::BigInt = vertices(lvl)
            .iter()
            .map(|v| {
                let d = enumerate_paths(lvl, v).len();
                num_bigint::BigInt::from(d * d)
            })
            .sum();
        assert_eq!(total, bell_number(tw as usize));
    }
    let elapsed = t0.elapsed();
    assert!(elapsed.as_secs() < 60, "counts exceeded one minute");
    conclude(9, "combinatorial counts against the Bell recurrence", &[&r]);
}
