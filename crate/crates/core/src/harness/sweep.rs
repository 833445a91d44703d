use std::collections::{BTreeMap, HashMap};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::graph::{distance_matrix, mix_seed, Graph, GraphClass};
use crate::inequalities::{
    class_closed_forms, connected_functional_bounds, jensen_gap_bound, thm1_renyi_shannon_bounds,
    thm3_partition_vs_functional, thm4_scaled_dominance, thm5_additive_dominance,
    thm6_convex_combination, BoundReport, CombinationMode, LogBase, PsiSource, TheoremId, Variant,
};
use crate::measures::{
    distribution_from_values, functional_values, partition_distribution, Distribution,
    FunctionalKind, FunctionalSpec, FunctionalValues,
};
use crate::orbits::{vertex_orbits, OrbitPartition};

use super::config::{SpecTemplate, SweepConfig};
use super::corpus::{generate_corpus, CorpusEntry, CorpusGraph, SkippedSample};
use super::{real_opt, Cell};

const FUNCTIONAL_STREAM: u64 = 0x6675_6e63;
const ORBITS: &str = "orbits";

/// Verdict counts and slack statistics of one theorem/variant pair.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Aggregate {
    pub theorem: TheoremId,
    pub variant: Variant,
    pub checked: usize,
    pub held: usize,
    pub violated: usize,
    pub not_applicable: usize,
    /// Over applicable cells only; `None` when there are none.
    #[serde(with = "real_opt")]
    pub min_slack: Option<f64>,
    #[serde(with = "real_opt")]
    pub mean_slack: Option<f64>,
}

/// A violating cell together with the graph it was found on.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Exemplar {
    pub cell: Cell,
    pub edge_list: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SweepReport {
    pub config: SweepConfig,
    pub corpus: Vec<CorpusEntry>,
    pub skipped: Vec<SkippedSample>,
    pub cells: Vec<Cell>,
    pub aggregates: Vec<Aggregate>,
    pub exemplars: Vec<Exemplar>,
    /// Wall-clock time; left out of the JSON form so reports stay reproducible.
    #[serde(skip)]
    pub runtime: Option<Duration>,
}

impl SweepReport {
    pub fn aggregate(&self, theorem: TheoremId, variant: Variant) -> Option<&Aggregate> {
        self.aggregates
            .iter()
            .find(|a| a.theorem == theorem && a.variant == variant)
    }

    pub fn total_violations(&self) -> usize {
        self.aggregates.iter().map(|a| a.violated).sum()
    }
}

/// A sampled functional on one graph, plus the companions the two-functional
/// bounds need.
struct FunctionalFamily {
    name: String,
    spec: FunctionalSpec<f64>,
    fv: FunctionalValues<f64>,
    dist: Distribution<f64>,
    /// Independent linear functional for the ψ, φ and combination bounds.
    other: FunctionalValues<f64>,
    other_dist: Distribution<f64>,
    /// Linear functional dominating `fv` pointwise (linear families only).
    dominating: Option<FunctionalValues<f64>>,
    c1: f64,
    c2: f64,
}

fn sample_coeffs(rng: &mut ChaCha8Rng, eta: usize, (lo, hi): (f64, f64)) -> Vec<f64> {
    (0..eta).map(|_| rng.gen_range(lo..=hi)).collect()
}

fn build_family(
    g: &Graph,
    eta: usize,
    template: &SpecTemplate,
    name: String,
    seed: u64,
) -> Result<FunctionalFamily> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let range = template.coeff_range();
    let coeffs = sample_coeffs(&mut rng, eta, range);
    let other_coeffs = sample_coeffs(&mut rng, eta, range);
    let bumps = sample_coeffs(&mut rng, eta, (0.0, 0.5));
    let c1 = rng.gen_range(0.25..=2.0);
    let c2 = rng.gen_range(0.25..=2.0);

    let spec = match *template {
        SpecTemplate::Linear { .. } => FunctionalSpec::linear(coeffs.clone()),
        SpecTemplate::Exponential { beta, .. } => FunctionalSpec::exponential(coeffs.clone(), beta),
    };
    let fv = functional_values(g, &spec)?;
    let dist = distribution_from_values(&fv)?;
    let other = functional_values(g, &FunctionalSpec::linear(other_coeffs))?;
    let other_dist = distribution_from_values(&other)?;
    let dominating = match spec.kind {
        FunctionalKind::Linear => {
            let up = coeffs.iter().zip(&bumps).map(|(c, b)| c + b).collect();
            Some(functional_values(g, &FunctionalSpec::linear(up))?)
        }
        FunctionalKind::Exponential => None,
    };
    Ok(FunctionalFamily {
        name,
        spec,
        fv,
        dist,
        other,
        other_dist,
        dominating,
        c1,
        c2,
    })
}

fn family_names(templates: &[SpecTemplate]) -> Vec<String> {
    templates
        .iter()
        .enumerate()
        .map(|(i, t)| {
            let label = t.label();
            if templates.iter().filter(|u| u.label() == label).count() > 1 {
                format!("{label}#{i}")
            } else {
                label
            }
        })
        .collect()
}

/// Collects the cells of one graph, dropping theorems and variants the config excludes.
struct Sink<'a> {
    cfg: &'a SweepConfig,
    graph_id: &'a str,
    cells: Vec<Cell>,
}

impl Sink<'_> {
    fn keeps(&self, theorem: TheoremId, variant: Variant) -> bool {
        self.cfg.wants(theorem) && (!theorem.has_variants() || self.cfg.variants.contains(&variant))
    }

    fn push(&mut self, family: &str, r: &BoundReport<f64>) {
        if self.keeps(r.theorem, r.variant) {
            self.cells.push(Cell::from_report(r, self.graph_id, family));
        }
    }

    /// Records the reports, or one failed cell per expected `(theorem, variant)`.
    fn record(
        &mut self,
        family: &str,
        alpha: f64,
        result: Result<Vec<BoundReport<f64>>>,
        expected: &[(TheoremId, Variant)],
    ) {
        match result {
            Ok(reports) => reports.iter().for_each(|r| self.push(family, r)),
            Err(e) => {
                for &(t, v) in expected {
                    if self.keeps(t, v) {
                        self.cells.push(Cell::failed(
                            t,
                            v,
                            alpha,
                            self.graph_id,
                            family,
                            e.to_string(),
                        ));
                    }
                }
            }
        }
    }

    fn any(&self, theorems: &[TheoremId]) -> bool {
        theorems.iter().any(|t| self.cfg.wants(*t))
    }
}

fn distribution_cells(sink: &mut Sink, family: &str, d: &Distribution<f64>, alpha: f64) {
    let lit = Variant::Literal;
    let cfg = sink.cfg;
    if cfg.wants(TheoremId::Ordering) {
        let r = thm1_renyi_shannon_bounds(d, alpha, lit, false).map(|mut rs| {
            rs.truncate(1);
            rs
        });
        sink.record(family, alpha, r, &[(TheoremId::Ordering, lit)]);
    }
    if sink.cfg.wants(TheoremId::JensenGap) {
        sink.record(
            family,
            alpha,
            jensen_gap_bound(d, alpha).map(|r| vec![r]),
            &[(TheoremId::JensenGap, lit)],
        );
    }
    for &variant in &cfg.variants {
        for (eps, id) in [(false, TheoremId::Thm1), (true, TheoremId::Cor1Epsilon)] {
            if sink.cfg.wants(id) {
                let r =
                    thm1_renyi_shannon_bounds(d, alpha, variant, eps).map(|rs| rs[1..].to_vec());
                sink.record(family, alpha, r, &[(id, variant)]);
            }
        }
    }
}

fn connected_id(kind: FunctionalKind) -> TheoremId {
    match kind {
        FunctionalKind::Linear => TheoremId::ConnectedLinear,
        FunctionalKind::Exponential => TheoremId::ConnectedExponential,
    }
}

fn class_ids(class: GraphClass) -> Option<(&'static [TheoremId], &'static [TheoremId])> {
    use TheoremId::*;
    match class {
        GraphClass::Star => Some((
            &[StarShannonExact, StarRenyiExact, StarOrbitBound],
            &[StarFunctionalBound],
        )),
        GraphClass::Wheel => Some((
            &[WheelShannonExact, WheelRenyiExact, WheelOrbitBound],
            &[WheelFunctionalBound],
        )),
        GraphClass::Path => Some((&[PathRenyiExact], &[PathFunctionalBound])),
        _ => None,
    }
}

fn expected(ids: &[TheoremId]) -> Vec<(TheoremId, Variant)> {
    ids.iter()
        .flat_map(|&t| {
            let variants: &[Variant] = if t.has_variants() {
                &Variant::BOTH
            } else {
                &[Variant::Literal]
            };
            variants.iter().map(move |&v| (t, v))
        })
        .collect()
}

fn orbit_cells(
    sink: &mut Sink,
    cg: &CorpusGraph,
    part: &Result<OrbitPartition>,
    families: &[(String, Result<FunctionalFamily>)],
    alpha: f64,
) {
    let dist = part
        .as_ref()
        .map_err(Clone::clone)
        .and_then(partition_distribution::<f64>);
    match &dist {
        Ok(d) => distribution_cells(sink, ORBITS, d, alpha),
        Err(e) => {
            let ids = expected(&[
                TheoremId::Ordering,
                TheoremId::JensenGap,
                TheoremId::Thm1,
                TheoremId::Cor1Epsilon,
            ]);
            sink.record(ORBITS, alpha, Err(e.clone()), &ids);
        }
    }
    if sink.cfg.wants(TheoremId::Thm3) {
        for (name, fam) in families {
            let r = match (part, fam) {
                (Ok(p), Ok(f)) => {
                    thm3_partition_vs_functional(&cg.graph, p, &f.fv, alpha).map(|r| vec![r])
                }
                (Err(e), _) | (_, Err(e)) => Err(e.clone()),
            };
            sink.record(name, alpha, r, &[(TheoremId::Thm3, Variant::Literal)]);
        }
    }
    if let Some((orbit_ids, _)) = class_ids(cg.class) {
        if sink.any(orbit_ids) {
            let r = class_closed_forms(cg.class, cg.graph.n(), alpha, None);
            sink.record(ORBITS, alpha, r, &expected(orbit_ids));
        }
    }
}

fn functional_cells(sink: &mut Sink, cg: &CorpusGraph, f: &FunctionalFamily, alpha: f64) {
    let name = f.name.as_str();
    let cfg = sink.cfg;
    let lit = Variant::Literal;
    distribution_cells(sink, name, &f.dist, alpha);

    let connected = connected_id(f.spec.kind);
    if sink.cfg.wants(connected) {
        let variants: &[Variant] = if connected.has_variants() {
            &cfg.variants
        } else {
            &[Variant::Literal]
        };
        for &variant in variants {
            let r =
                connected_functional_bounds(&cg.graph, &f.spec, alpha, variant).map(|r| vec![r]);
            sink.record(name, alpha, r, &[(connected, variant)]);
        }
    }

    if sink.cfg.wants(TheoremId::Thm4) {
        let psi = f
            .dist
            .probs()
            .iter()
            .zip(f.other_dist.probs())
            .map(|(a, b)| a / b)
            .fold(0.0, f64::max);
        let r = thm4_scaled_dominance(&f.dist, &f.other_dist, PsiSource::Explicit(psi), alpha)
            .map(|r| vec![r]);
        sink.record(name, alpha, r, &[(TheoremId::Thm4, lit)]);
    }
    if let (true, Some(up)) = (sink.cfg.wants(TheoremId::Thm4Corollary), &f.dominating) {
        let psi = PsiSource::Totals {
            ln_s1: f.fv.ln_total,
            ln_s2: up.ln_total,
        };
        let r = distribution_from_values(up)
            .and_then(|d2| thm4_scaled_dominance(&f.dist, &d2, psi, alpha))
            .map(|r| vec![r]);
        sink.record(name, alpha, r, &[(TheoremId::Thm4Corollary, lit)]);
    }
    for &variant in &cfg.variants {
        if cfg.wants(TheoremId::Thm5) {
            let phi = f
                .dist
                .probs()
                .iter()
                .zip(f.other_dist.probs())
                .map(|(a, b)| a - b)
                .fold(f64::EPSILON, f64::max);
            let r =
                thm5_additive_dominance(&f.dist, &f.other_dist, phi, alpha, variant, LogBase::Two)
                    .map(|r| vec![r]);
            sink.record(name, alpha, r, &[(TheoremId::Thm5, variant)]);
        }
        for (mode, id) in [
            (CombinationMode::Single, TheoremId::Thm6),
            (CombinationMode::Symmetric, TheoremId::Thm6Symmetric),
        ] {
            if sink.cfg.wants(id) {
                let r = thm6_convex_combination(
                    &f.fv,
                    &f.other,
                    f.c1,
                    f.c2,
                    alpha,
                    variant,
                    mode,
                    LogBase::Two,
                )
                .map(|r| vec![r]);
                sink.record(name, alpha, r, &[(id, variant)]);
            }
        }
    }
    if let Some((_, functional_ids)) = class_ids(cg.class) {
        if sink.any(functional_ids) {
            let r = class_closed_forms(cg.class, cg.graph.n(), alpha, Some(&f.fv)).map(|rs| {
                rs.into_iter()
                    .filter(|r| functional_ids.contains(&r.theorem))
                    .collect()
            });
            sink.record(name, alpha, r, &expected(functional_ids));
        }
    }
}

fn graph_cells(cfg: &SweepConfig, index: usize, cg: &CorpusGraph, names: &[String]) -> Vec<Cell> {
    let g = &cg.graph;
    let eta = distance_matrix(g).eta;
    let part = vertex_orbits(g);
    let base = mix_seed(cfg.seed ^ FUNCTIONAL_STREAM, index as u64);
    let families: Vec<(String, Result<FunctionalFamily>)> = cfg
        .functional_specs
        .iter()
        .zip(names)
        .enumerate()
        .map(|(i, (t, name))| {
            (
                name.clone(),
                build_family(g, eta, t, name.clone(), mix_seed(base, i as u64)),
            )
        })
        .collect();

    let mut sink = Sink {
        cfg,
        graph_id: &cg.id,
        cells: Vec::new(),
    };
    for &alpha in &cfg.alpha_grid {
        orbit_cells(&mut sink, cg, &part, &families, alpha);
        for ((name, fam), template) in families.iter().zip(&cfg.functional_specs) {
            match fam {
                Ok(f) => functional_cells(&mut sink, cg, f, alpha),
                Err(e) => {
                    let connected = match template {
                        SpecTemplate::Linear { .. } => TheoremId::ConnectedLinear,
                        SpecTemplate::Exponential { .. } => TheoremId::ConnectedExponential,
                    };
                    let mut ids = vec![
                        TheoremId::Ordering,
                        TheoremId::JensenGap,
                        TheoremId::Thm1,
                        TheoremId::Cor1Epsilon,
                        TheoremId::Thm4,
                        TheoremId::Thm5,
                        TheoremId::Thm6,
                        TheoremId::Thm6Symmetric,
                        connected,
                    ];
                    if matches!(template, SpecTemplate::Linear { .. }) {
                        ids.push(TheoremId::Thm4Corollary);
                    }
                    if let Some((_, functional_ids)) = class_ids(cg.class) {
                        ids.extend_from_slice(functional_ids);
                    }
                    sink.record(name, alpha, Err(e.clone()), &expected(&ids));
                }
            }
        }
    }
    sink.cells
}

/// Evaluates every cell of the sweep and aggregates the verdicts.
///
/// Graphs are processed in parallel; cells are gathered in corpus order, so the
/// report does not depend on scheduling.
pub fn run_sweep(cfg: &SweepConfig) -> Result<SweepReport> {
    let start = Instant::now();
    let corpus = generate_corpus(cfg)?;
    let names = family_names(&cfg.functional_specs);
    let per_graph: Vec<Vec<Cell>> = corpus
        .graphs
        .par_iter()
        .enumerate()
        .map(|(i, cg)| graph_cells(cfg, i, cg, &names))
        .collect();
    let cells: Vec<Cell> = per_graph.into_iter().flatten().collect();

    let edge_lists: HashMap<&str, &Graph> = corpus
        .graphs
        .iter()
        .map(|g| (g.id.as_str(), &g.graph))
        .collect();
    let aggregates = aggregate(&cells);
    let mut kept: BTreeMap<(TheoremId, Variant), usize> = BTreeMap::new();
    let mut exemplars = Vec::new();
    for c in cells.iter().filter(|c| c.holds == Some(false)) {
        let count = kept.entry((c.theorem, c.variant)).or_default();
        if *count < cfg.max_exemplars {
            *count += 1;
            exemplars.push(Exemplar {
                cell: c.clone(),
                edge_list: edge_lists[c.graph_id.as_str()].to_edge_list(),
            });
        }
    }
    Ok(SweepReport {
        config: cfg.clone(),
        corpus: corpus.graphs.iter().map(CorpusEntry::from).collect(),
        skipped: corpus.skipped,
        cells: if cfg.record_cells { cells } else { Vec::new() },
        aggregates,
        exemplars,
        runtime: Some(start.elapsed()),
    })
}

fn aggregate(cells: &[Cell]) -> Vec<Aggregate> {
    let mut acc: BTreeMap<(TheoremId, Variant), (Aggregate, f64)> = BTreeMap::new();
    for c in cells {
        let (a, sum) = acc.entry((c.theorem, c.variant)).or_insert_with(|| {
            (
                Aggregate {
                    theorem: c.theorem,
                    variant: c.variant,
                    checked: 0,
                    held: 0,
                    violated: 0,
                    not_applicable: 0,
                    min_slack: None,
                    mean_slack: None,
                },
                0.0,
            )
        });
        a.checked += 1;
        match c.holds {
            None => a.not_applicable += 1,
            Some(h) => {
                if h {
                    a.held += 1;
                } else {
                    a.violated += 1;
                }
                a.min_slack = Some(a.min_slack.map_or(c.slack, |m| m.min(c.slack)));
                *sum += c.slack;
            }
        }
    }
    acc.into_values()
        .map(|(mut a, sum)| {
            let applicable = a.held + a.violated;
            if applicable > 0 {
                a.mean_slack = Some(sum / applicable as f64);
            }
            a
        })
        .collect()
}
