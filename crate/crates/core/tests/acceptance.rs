//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any failure.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use grentropy::graph::{connected_gnp, generate_graph, GraphClass};
use grentropy::harness::{
    run_sweep, summarize_report, ReportFormat, SweepConfig, SweepReport, DEFAULT_ALPHA_GRID,
};
use grentropy::inequalities::{lemma_checks, thm1_renyi_shannon_bounds, LemmaId};
use grentropy::measures::{partition_distribution, renyi_entropy, shannon_entropy};
use grentropy::orbits::{brute_force_orbits, vertex_orbits};
use grentropy::{Distribution, TheoremId, Variant};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    ensure(elapsed < limit, || {
        format!("took {elapsed:?}, limit {limit:?}")
    })
}

fn closed_forms() -> Outcome {
    let start = Instant::now();
    let mut checked = 0;
    for n in 3..=10usize {
        let nf = n as f64;
        let m = nf - 1.0;
        for alpha in DEFAULT_ALPHA_GRID {
            let star = partition_distribution::<f64>(
                &vertex_orbits(&generate_graph(GraphClass::Star, n, None).unwrap()).unwrap(),
            )
            .unwrap();
            let renyi = renyi_entropy(&star, alpha).unwrap();
            let expected = ((1.0 + m.powf(alpha)).log2() - alpha * nf.log2()) / (1.0 - alpha);
            ensure((renyi - expected).abs() <= 1e-12, || {
                format!("S_{n} alpha {alpha}: {renyi} vs {expected}")
            })?;
            checked += 1;
            if n % 2 == 0 {
                let path = partition_distribution::<f64>(
                    &vertex_orbits(&generate_graph(GraphClass::Path, n, None).unwrap()).unwrap(),
                )
                .unwrap();
                let h = renyi_entropy(&path, alpha).unwrap();
                ensure((h - (nf / 2.0).log2()).abs() <= 1e-12, || {
                    format!("P_{n} alpha {alpha}: {h}")
                })?;
                checked += 1;
            }
        }
        let star = partition_distribution::<f64>(
            &vertex_orbits(&generate_graph(GraphClass::Star, n, None).unwrap()).unwrap(),
        )
        .unwrap();
        let h = shannon_entropy(&star);
        let expected = nf.log2() - (m / nf) * m.log2();
        ensure((h - expected).abs() <= 1e-12, || {
            format!("H(S_{n}) {h} vs {expected}")
        })?;
        checked += 1;
    }
    within(start.elapsed(), Duration::from_secs(5))?;
    Ok(format!(
        "{checked} identities within 1e-12 in {:?}",
        start.elapsed()
    ))
}

fn orbit_exactness() -> Outcome {
    let start = Instant::now();
    let mut compared = 0;
    for class in GraphClass::DETERMINISTIC {
        for n in class.min_n().max(3)..=12 {
            let g = generate_graph(class, n, None).unwrap();
            let fast = vertex_orbits(&g).unwrap();
            if n <= 8 {
                let slow = brute_force_orbits(&g).unwrap();
                ensure(fast == slow, || {
                    format!("{class} {n}: {fast:?} vs {slow:?}")
                })?;
                compared += 1;
            } else {
                let k = match class {
                    GraphClass::Star | GraphClass::Wheel => 2,
                    GraphClass::Path => n.div_ceil(2),
                    _ => 1,
                };
                ensure(fast.k() == k, || {
                    format!("{class} {n}: {} orbits, expected {k}", fast.k())
                })?;
            }
        }
    }
    for i in 0..200u64 {
        let n = 3 + (i as usize % 5);
        let p = [0.3, 0.5, 0.7][(i / 5) as usize % 3];
        let g = connected_gnp(n, p, 0xACCE_5500 + i, 1000).unwrap().graph;
        let (fast, slow) = (vertex_orbits(&g).unwrap(), brute_force_orbits(&g).unwrap());
        ensure(fast == slow, || {
            format!("gnp sample {i}: {fast:?} vs {slow:?}")
        })?;
        compared += 1;
    }
    within(start.elapsed(), Duration::from_secs(60))?;
    Ok(format!(
        "{compared} graphs identical to brute force in {:?}",
        start.elapsed()
    ))
}

fn acceptance_config() -> SweepConfig {
    SweepConfig::new(20_240_601, (3, 12), vec![0.3, 0.5, 0.7], 17)
}

fn violations(r: &SweepReport, t: TheoremId, v: Variant) -> Result<usize, String> {
    r.aggregate(t, v)
        .map(|a| a.violated)
        .ok_or_else(|| format!("no cells for {t} {v}"))
}

fn sound_suite(r: &SweepReport, elapsed: Duration) -> Outcome {
    let gnp = r
        .corpus
        .iter()
        .filter(|e| e.graph_id.starts_with("gnp_"))
        .count();
    ensure(gnp >= 500, || format!("only {gnp} gnp graphs"))?;
    let sound = [
        (TheoremId::Ordering, Variant::Literal),
        (TheoremId::JensenGap, Variant::Literal),
        (TheoremId::Thm1, Variant::Corrected),
        (TheoremId::Cor1Epsilon, Variant::Corrected),
        (TheoremId::Thm3, Variant::Literal),
        (TheoremId::Thm4, Variant::Literal),
        (TheoremId::Thm4Corollary, Variant::Literal),
    ];
    let mut checked = 0;
    for (t, v) in sound {
        let bad = violations(r, t, v)?;
        ensure(bad == 0, || format!("{t} {v}: {bad} violations"))?;
        checked += r.aggregate(t, v).unwrap().checked;
    }
    for family in ["orbits", "linear", "exp_b0.5", "exp_b2"] {
        ensure(r.cells.iter().any(|c| c.family == family), || {
            format!("no {family} cells")
        })?;
    }
    within(elapsed, Duration::from_secs(300))?;
    Ok(format!(
        "{} graphs, {checked} sound cells, 0 violations, sweep {elapsed:?}",
        r.corpus.len()
    ))
}

fn erratum_detection() -> Outcome {
    // both sides rebuilt from scratch for each distribution
    let cases = [([0.9, 0.1], 0.5), ([0.99, 0.01], 3.0)];
    let mut out = Vec::new();
    for (p, alpha) in cases {
        let h: f64 = -p.iter().map(|x: &f64| x * x.log2()).sum::<f64>();
        let h_alpha = p.iter().map(|x: &f64| x.powf(alpha)).sum::<f64>().log2() / (1.0 - alpha);
        let rho = p[0] / p[1];
        let bound = if alpha < 1.0 {
            h + 2.0 * (1.0 - alpha) * rho.powf(alpha - 2.0) / (2.0 * std::f64::consts::LN_2)
        } else {
            h - (alpha - 1.0) * 2.0 / (2.0 * std::f64::consts::LN_2 * rho.powf(alpha - 2.0))
        };
        let r = &thm1_renyi_shannon_bounds(
            &Distribution::new(p.to_vec()).unwrap(),
            alpha,
            Variant::Literal,
            false,
        )
        .unwrap()[1];
        ensure(r.holds == Some(false), || {
            format!("{p:?} alpha {alpha}: literal bound not flagged")
        })?;
        ensure(
            (r.bound - bound).abs() < 1e-12 && (r.lhs - h_alpha).abs() < 1e-12,
            || {
                format!(
                    "{p:?}: bound {} vs {bound}, lhs {} vs {h_alpha}",
                    r.bound, r.lhs
                )
            },
        )?;
        out.push(format!(
            "alpha {alpha}: H_a {h_alpha:.6} vs bound {bound:.6}"
        ));
    }
    let first = &out[0];
    ensure(
        first.contains("0.678072") && first.contains("0.495712"),
        || first.clone(),
    )?;
    Ok(out.join("; "))
}

fn connected_bounds(r: &SweepReport) -> Outcome {
    ensure(
        violations(r, TheoremId::ConnectedLinear, Variant::Literal)? == 0,
        || "linear violated".into(),
    )?;
    ensure(
        violations(r, TheoremId::ConnectedExponential, Variant::Corrected)? == 0,
        || "corrected exponential violated".into(),
    )?;
    let literal: Vec<_> = r
        .cells
        .iter()
        .filter(|c| c.theorem == TheoremId::ConnectedExponential && c.variant == Variant::Literal)
        .collect();
    for c in &literal {
        let beta = c.params.get("beta").copied().unwrap_or(f64::NAN);
        if beta >= 1.0 {
            ensure(c.holds == Some(true), || {
                format!("literal exponential failed on {}", c.graph_id)
            })?;
        } else {
            ensure(c.holds.is_none(), || {
                format!("literal exponential applied with beta {beta}")
            })?;
        }
    }
    let applied = literal.iter().filter(|c| c.holds.is_some()).count();
    let linear = r
        .aggregate(TheoremId::ConnectedLinear, Variant::Literal)
        .unwrap()
        .checked;
    Ok(format!(
        "{linear} linear, {applied} literal exponential (beta >= 1), 0 violations"
    ))
}

fn lemmas() -> Outcome {
    let checks = lemma_checks(7, 10_000).map_err(|e| e.to_string())?;
    for id in [LemmaId::L1, LemmaId::L2, LemmaId::L3] {
        let mine: Vec<_> = checks.iter().filter(|c| c.lemma_id == id).collect();
        ensure(mine.len() == 10_000, || {
            format!("{id:?}: {} samples", mine.len())
        })?;
        if let Some(bad) = mine.iter().find(|c| !c.satisfied) {
            return Err(format!("{id:?} violated at {:?}", bad.inputs));
        }
    }
    Ok("3 x 10000 samples, 0 violations".into())
}

fn thm5_thm6_reporting(r: &SweepReport) -> Outcome {
    let mut parts = Vec::new();
    for t in [TheoremId::Thm5, TheoremId::Thm6, TheoremId::Thm6Symmetric] {
        let bad = violations(r, t, Variant::Corrected)?;
        ensure(bad == 0, || format!("{t} corrected: {bad} violations"))?;
        let lit = violations(r, t, Variant::Literal)?;
        if lit > 0 {
            let kept = r
                .exemplars
                .iter()
                .filter(|e| e.cell.theorem == t && e.cell.variant == Variant::Literal)
                .count();
            ensure(kept > 0, || {
                format!("{t} literal: {lit} violations but no exemplars")
            })?;
        }
        parts.push(format!("{t} literal {lit} violations"));
    }
    Ok(format!("corrected 0 violations; {}", parts.join(", ")))
}

fn reproducibility(first: &SweepReport) -> Outcome {
    let again = run_sweep(&acceptance_config()).map_err(|e| e.to_string())?;
    let (a, b) = (
        summarize_report(first, ReportFormat::Json),
        summarize_report(&again, ReportFormat::Json),
    );
    ensure(a == b, || "JSON differs between runs".into())?;
    Ok(format!("{} bytes identical", a.len()))
}

fn run(label: &str, f: impl FnOnce() -> Outcome) -> bool {
    let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
    match outcome {
        Ok(detail) => {
            println!("PASS {label}: {detail}");
            true
        }
        Err(why) => {
            println!("FAIL {label}: {why}");
            false
        }
    }
}

fn main() -> ExitCode {
    let start = Instant::now();
    let sweep = run_sweep(&acceptance_config());
    let elapsed = start.elapsed();
    let sweep = sweep.map_err(|e| e.to_string());
    let with_sweep = |f: &dyn Fn(&SweepReport) -> Outcome| -> Outcome {
        match &sweep {
            Ok(r) => f(r),
            Err(e) => Err(format!("sweep failed: {e}")),
        }
    };

    let results = [
        run("1 closed forms", closed_forms),
        run("2 orbit exactness", orbit_exactness),
        run("3 sound inequalities", || {
            with_sweep(&|r| sound_suite(r, elapsed))
        }),
        run("4 erratum detection", erratum_detection),
        run("5 connected-graph bounds", || with_sweep(&connected_bounds)),
        run("6 lemma oracles", lemmas),
        run("7 thm5/thm6 reporting", || with_sweep(&thm5_thm6_reporting)),
        run("8 reproducibility", || with_sweep(&reproducibility)),
    ];
    if results.iter().all(|&ok| ok) {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
