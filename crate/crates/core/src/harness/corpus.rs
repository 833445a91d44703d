use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{connected_gnp, generate_graph, mix_seed, Graph, GraphClass};

use super::config::SweepConfig;

// separates the corpus stream from the per-graph functional streams
const GNP_STREAM: u64 = 0x0067_6e70;

/// One corpus graph with its provenance.
#[derive(Debug, Clone)]
pub struct CorpusGraph {
    pub id: String,
    pub class: GraphClass,
    pub graph: Graph,
    /// Rejected disconnected draws before this sample (0 for the battery).
    pub redraws: usize,
}

/// Serializable summary of a corpus graph, echoed in sweep reports.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusEntry {
    pub graph_id: String,
    pub n: usize,
    pub edge_count: usize,
    pub redraws: usize,
}

impl From<&CorpusGraph> for CorpusEntry {
    fn from(g: &CorpusGraph) -> Self {
        Self {
            graph_id: g.id.clone(),
            n: g.graph.n(),
            edge_count: g.graph.edge_count(),
            redraws: g.redraws,
        }
    }
}

/// A G(n, p) cell that produced no connected sample within the redraw cap.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkippedSample {
    pub graph_id: String,
    pub reason: String,
}

#[derive(Debug, Clone, Default)]
pub struct Corpus {
    pub graphs: Vec<CorpusGraph>,
    pub skipped: Vec<SkippedSample>,
}

/// Seed of the `trial`-th G(n, p) sample for probability index `p_index`.
pub fn gnp_seed(seed: u64, n: usize, p_index: usize, trial: usize) -> u64 {
    let s = mix_seed(seed ^ GNP_STREAM, n as u64);
    mix_seed(mix_seed(s, p_index as u64), trial as u64)
}

/// The class battery (when enabled) followed by the connected G(n, p) samples,
/// both in ascending `n`. Fully determined by the config.
pub fn generate_corpus(cfg: &SweepConfig) -> Result<Corpus> {
    cfg.validate()?;
    let (lo, hi) = cfg.n_range;
    let mut corpus = Corpus::default();
    if cfg.include_battery {
        for n in lo..=hi {
            for class in GraphClass::DETERMINISTIC {
                if n < class.min_n() {
                    continue;
                }
                corpus.graphs.push(CorpusGraph {
                    id: format!("{class}_{n}"),
                    class,
                    graph: generate_graph(class, n, None)?,
                    redraws: 0,
                });
            }
        }
    }
    for n in lo..=hi {
        for (pi, &p) in cfg.edge_probabilities.iter().enumerate() {
            for t in 0..cfg.trials_per_cell {
                let id = format!("gnp_{n}_p{p}_t{t}");
                match connected_gnp(n, p, gnp_seed(cfg.seed, n, pi, t), cfg.max_redraws) {
                    Ok(sample) => corpus.graphs.push(CorpusGraph {
                        id,
                        class: GraphClass::Gnp,
                        graph: sample.graph,
                        redraws: sample.redraws,
                    }),
                    Err(Error::Domain(reason)) => corpus.skipped.push(SkippedSample {
                        graph_id: id,
                        reason,
                    }),
                    Err(e) => return Err(e),
                }
            }
        }
    }
    Ok(corpus)
}
