//! Acceptance suite: every criterion is exact (zero tolerance) and prints
//! one pass/fail line. Run with `cargo test --test acceptance -- --nocapture`
//! to see the lines.

use corr_cli::{execute, parse, ExecOptions};
use corr_transfers::corpus::*;

fn criterion(n: u32, name: &str, ok: bool) {
    println!("[{}] criterion {n}: {name}", if ok { "PASS" } else { "FAIL" });
    assert!(ok, "criterion {n} failed: {name}");
}

fn suite_passes(rows: &[LemmaOutcome], minimum: usize) -> bool {
    rows.len() >= minimum && rows.iter().all(|r| r.passed)
}

#[test]
fn criterion_1_reduction_lemma() {
    // >= 20 artinian local algebras over Q and F_p: u equals
    // multiply-then-residue on every orbit basis element, exactly.
    let rows = reduction_suite(0, CorpusSize::Small);
    criterion(1, "u = multiply-then-residue on >= 20 local algebras", suite_passes(&rows, 20));
}

#[test]
fn criterion_2_norm_trace_lemma() {
    // >= 30 extensions, >= 5 random elements each: the symmetric-power
    // pushforward equals det/trace of the multiplication matrix, exactly.
    let rows = norm_trace_suite(0, CorpusSize::Small);
    criterion(2, "pushforward = Nm/Tr on >= 30 extensions", suite_passes(&rows, 30));
}

#[test]
fn criterion_3_splitting_matrix_identity() {
    // (u x u) o p = u for >= 10 pairs with total rank <= 6, exactly.
    let rows = split_p_suite(0, CorpusSize::Small);
    let artinian = split_p_over_artinian_base().unwrap();
    criterion(
        3,
        "(u x u) o p = u on >= 10 pairs (including a non-field base ring)",
        suite_passes(&rows, 10) && artinian,
    );
}

#[test]
fn criterion_4_section_and_split_points() {
    // Connected algebras with a section: pushforward = d * section value;
    // split algebras over F_q: pushforward = sum d_i * point values.
    let rows = section_and_split_suite(0, CorpusSize::Small);
    let sections = rows.iter().filter(|r| r.label.contains("section")).count();
    let splits = rows.iter().filter(|r| r.label.contains("split algebra")).count();
    criterion(
        4,
        "section and split-point formulas, >= 10 instances each",
        suite_passes(&rows, 20) && sections >= 10 && splits >= 10,
    );
}

#[test]
fn criterion_5_coproduct() {
    // Both sides of the coproduct identity for >= 10 tuples, exactly.
    let rows = coproduct_suite(0, CorpusSize::Small);
    criterion(5, "coproduct identity on >= 10 tuples", suite_passes(&rows, 10));
}

#[test]
fn criterion_6_functoriality() {
    // A curated corpus of >= 8 composable pairs over Q and F_p, including
    // the worked quadratic-point example, a mixed split case over GF(5),
    // and a multiplicity-weighted case, for Ga, Gm, and mu_n.
    let cases = functoriality_corpus();
    let labels: Vec<&str> = cases.iter().map(|c| c.label.as_str()).collect();
    let curated = cases.len() >= 8
        && labels.iter().any(|l| l.contains("sqrt2"))
        && labels.iter().any(|l| l.contains("GF(5)"))
        && labels.iter().any(|l| l.contains("multiplicity"))
        && cases
            .iter()
            .any(|c| c.plugins.iter().any(|p| matches!(p, corr_transfers::GroupPlugin::MuN(_))));
    let rows = functoriality_suite(0);
    criterion(
        6,
        "alpha* beta* = (beta o alpha)* on the curated corpus",
        curated && suite_passes(&rows, 8),
    );
}

#[test]
fn criterion_7_radicial() {
    // Char-p corpus (p in {2,3,5}, plus degree p^2 towers): the radicial
    // identity and agreement with the canonical transfer, and the perturbed
    // probe flags exactly the perturbed entries.
    let corpus = radicial_corpus();
    let shaped = corpus.len() >= 6
        && corpus.iter().any(|(_, l)| l.contains("degree p^2"))
        && [2u64, 3, 5].iter().all(|p| {
            corpus.iter().any(|(d, _)| d.base().characteristic() == *p && d.degree > 1)
        });
    let rows = radicial_suite(0);
    criterion(
        7,
        "radicial transfers: p*(t_V(g)) = d q*(g), t_V = [V]*, probe isolates perturbations",
        shaped && suite_passes(&rows, 6),
    );
}

#[test]
fn criterion_8_composition_calculus() {
    // Associativity on >= 5 triples, graph substitution, degree
    // multiplicativity; length conservation is enforced on every pullback
    // inside these computations (violations error out).
    let rows = composition_suite(0);
    let assoc = rows.iter().filter(|r| r.label.contains("associativity")).count();
    criterion(
        8,
        "composition calculus (associativity >= 5, substitution, degrees, conservation)",
        suite_passes(&rows, 8) && assoc >= 5,
    );
}

#[test]
fn criterion_9_cli_goldens() {
    // The shipped example scripts reproduce their golden JSON reports
    // byte-identically with seed 0.
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("scripts");
    let mut ok = true;
    for name in ["01_sqrt2_functoriality", "02_radicial_char2", "03_mixed_f5"] {
        let text = std::fs::read_to_string(dir.join(format!("{name}.corr"))).unwrap();
        let script = parse(&text).unwrap();
        let report = execute(&script, &ExecOptions::default()).unwrap();
        let golden = std::fs::read_to_string(dir.join(format!("{name}.golden.json"))).unwrap();
        if report.to_json() != golden {
            ok = false;
        }
    }
    criterion(9, "CLI example scripts match golden JSON byte-for-byte", ok);
}
