use grentropy::harness::{run_sweep, summarize_report, ReportFormat, SweepConfig, SweepReport};
use grentropy::{TheoremId, Variant};

fn small(seed: u64) -> SweepConfig {
    let mut cfg = SweepConfig::new(seed, (3, 7), vec![0.4, 0.8], 3);
    cfg.alpha_grid = vec![0.5, 2.0, 3.0];
    cfg
}

#[test]
fn star_ten_exposes_literal_thm1() {
    let mut cfg = SweepConfig::new(1, (10, 10), vec![], 1);
    cfg.alpha_grid = vec![0.5];
    cfg.theorems = vec![TheoremId::Thm1];
    cfg.variants = vec![Variant::Literal];
    let r = run_sweep(&cfg).unwrap();
    let star = r
        .cells
        .iter()
        .find(|c| c.graph_id == "star_10" && c.family == "orbits")
        .unwrap();
    assert_eq!(star.holds, Some(false));
    assert!(
        r.aggregate(TheoremId::Thm1, Variant::Literal)
            .unwrap()
            .violated
            >= 1
    );
    assert!(r.aggregate(TheoremId::Thm1, Variant::Corrected).is_none());
    assert!(!r.exemplars.is_empty());
}

#[test]
fn corrected_sweep_has_no_sound_violations() {
    let mut cfg = small(5);
    cfg.variants = vec![Variant::Corrected];
    let r = run_sweep(&cfg).unwrap();
    for a in &r.aggregates {
        assert_eq!(a.checked, a.held + a.violated + a.not_applicable);
        if a.theorem.has_variants() {
            assert_eq!(a.variant, Variant::Corrected, "{:?}", a.theorem);
        }
        if matches!(
            a.theorem,
            TheoremId::Thm1
                | TheoremId::Cor1Epsilon
                | TheoremId::Thm3
                | TheoremId::Thm4
                | TheoremId::Thm4Corollary
        ) {
            assert_eq!(a.violated, 0, "{a:?}");
        }
    }
    let thm3 = r
        .aggregates
        .iter()
        .find(|a| a.theorem == TheoremId::Thm3)
        .unwrap();
    assert!(thm3.held > 0);
}

#[test]
fn empty_theorem_set() {
    let mut cfg = small(5);
    cfg.theorems.clear();
    let r = run_sweep(&cfg).unwrap();
    assert!(r.aggregates.is_empty() && r.cells.is_empty());
    assert!(!r.corpus.is_empty());
}

#[test]
fn reproducible_across_thread_counts() {
    let cfg = small(11);
    let one = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .unwrap();
    let four = rayon::ThreadPoolBuilder::new()
        .num_threads(4)
        .build()
        .unwrap();
    let a = one.install(|| run_sweep(&cfg)).unwrap();
    let b = four.install(|| run_sweep(&cfg)).unwrap();
    let ja = summarize_report(&a, ReportFormat::Json);
    assert_eq!(ja, summarize_report(&b, ReportFormat::Json));
    let other = run_sweep(&small(12)).unwrap();
    assert_ne!(ja, summarize_report(&other, ReportFormat::Json));
}

#[test]
fn json_round_trips_byte_identically() {
    let r = run_sweep(&small(3)).unwrap();
    let json = summarize_report(&r, ReportFormat::Json);
    let back: SweepReport = serde_json::from_str(&json).unwrap();
    assert_eq!(summarize_report(&back, ReportFormat::Json), json);
    for key in [
        "\"config\"",
        "\"cells\"",
        "\"aggregates\"",
        "\"exemplars\"",
        "\"graph_id\"",
    ] {
        assert!(json.contains(key), "{key}");
    }
    assert!(!json.contains("runtime"));
}

#[test]
fn csv_and_text_have_a_row_per_aggregate() {
    let r = run_sweep(&small(3)).unwrap();
    let csv = summarize_report(&r, ReportFormat::Csv);
    assert_eq!(csv.lines().count(), r.aggregates.len() + 1);
    assert!(csv.starts_with(
        "theorem,variant,checked,held,violated,not_applicable,min_slack,mean_slack\n"
    ));
    let text = summarize_report(&r, ReportFormat::Text);
    assert_eq!(text.lines().count(), r.aggregates.len() + 2);
    assert!(text.contains("min_slack"));
}

#[test]
fn exemplars_are_capped_per_cell_and_carry_graphs() {
    let mut cfg = small(9);
    cfg.max_exemplars = 2;
    let r = run_sweep(&cfg).unwrap();
    for a in &r.aggregates {
        let kept = r
            .exemplars
            .iter()
            .filter(|e| e.cell.theorem == a.theorem && e.cell.variant == a.variant)
            .count();
        assert_eq!(kept, a.violated.min(2));
    }
    for e in &r.exemplars {
        let g = grentropy::graph::parse_edge_list(&e.edge_list, None).unwrap();
        assert!(g.is_connected());
    }
}
