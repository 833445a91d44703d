//! Simple undirected graphs on dense vertex ids `0..n`.
//!
//! Covers edge-list parsing and writing, the deterministic graph classes used
//! throughout the crate (stars, paths, cycles, wheels, complete graphs), seeded
//! G(n, p) sampling, BFS distances and j-sphere profiles.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};

/// A simple undirected graph. Edges are stored as `(u, v)` with `u < v`, sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph, collapsing duplicate (and reversed) edges.
    ///
    /// Self-loops and endpoints outside `0..n` are rejected.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            if u == v {
                return Err(Error::Validation(format!("self-loop at vertex {u}")));
            }
            if u >= n || v >= n {
                return Err(Error::Validation(format!(
                    "edge ({u}, {v}) has an endpoint outside 0..{n}"
                )));
            }
            set.insert((u.min(v), u.max(v)));
        }
        let edges: Vec<_> = set.into_iter().collect();
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for nb in &mut adj {
            nb.sort_unstable();
        }
        Ok(Self { n, edges, adj })
    }

    pub fn empty(n: usize) -> Self {
        Self {
            n,
            edges: Vec::new(),
            adj: vec![Vec::new(); n],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        bfs(self, 0).iter().all(Option::is_some)
    }

    /// Returns the graph with vertex `v` renamed to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.n {
            return domain("permutation length differs from vertex count");
        }
        let mut seen = vec![false; self.n];
        for &p in perm {
            if p >= self.n || std::mem::replace(&mut seen[p], true) {
                return domain("relabeling is not a permutation");
            }
        }
        Graph::new(self.n, self.edges.iter().map(|&(u, v)| (perm[u], perm[v])))
    }

    /// Writes one `u v` line per edge, `u < v`, in ascending order.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::with_capacity(self.edges.len() * 6);
        for &(u, v) in &self.edges {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }
}

/// Parses an edge list. Blank lines and lines starting with `#` are skipped.
///
/// With `n = None` the vertex count is `1 + max id` and every id below it must
/// occur in some edge. With an explicit `n`, isolated vertices are allowed.
pub fn parse_edge_list(text: &str, n: Option<usize>) -> Result<Graph> {
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut toks = line.split_whitespace();
        let mut next = |what: &str| -> Result<usize> {
            let tok = toks.next().ok_or_else(|| Error::Parse {
                line: line_no,
                msg: format!("missing {what} vertex"),
            })?;
            tok.parse::<usize>().map_err(|_| Error::Parse {
                line: line_no,
                msg: format!("invalid vertex id {tok:?}"),
            })
        };
        let u = next("first")?;
        let v = next("second")?;
        if let Some(extra) = toks.next() {
            return Err(Error::Parse {
                line: line_no,
                msg: format!("unexpected token {extra:?}"),
            });
        }
        if u == v {
            return Err(Error::Validation(format!(
                "self-loop at vertex {u} on line {line_no}"
            )));
        }
        edges.push((u, v));
    }
    let max_id = edges.iter().map(|&(u, v)| u.max(v)).max();
    match n {
        Some(n) => Graph::new(n, edges),
        None => {
            let n = max_id.map_or(0, |m| m + 1);
            let mut touched = vec![false; n];
            for &(u, v) in &edges {
                touched[u] = true;
                touched[v] = true;
            }
            if let Some(gap) = touched.iter().position(|t| !t) {
                return Err(Error::Validation(format!(
                    "vertex {gap} does not appear in any edge; ids must be dense 0..{n}"
                )));
            }
            Graph::new(n, edges)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GraphClass {
    Star,
    Path,
    Cycle,
    Wheel,
    Complete,
    Gnp,
}

impl GraphClass {
    pub const DETERMINISTIC: [GraphClass; 5] = [
        GraphClass::Star,
        GraphClass::Path,
        GraphClass::Cycle,
        GraphClass::Wheel,
        GraphClass::Complete,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GraphClass::Star => "star",
            GraphClass::Path => "path",
            GraphClass::Cycle => "cycle",
            GraphClass::Wheel => "wheel",
            GraphClass::Complete => "complete",
            GraphClass::Gnp => "gnp",
        }
    }

    /// Smallest vertex count the class is defined for.
    pub fn min_n(self) -> usize {
        match self {
            GraphClass::Star | GraphClass::Cycle => 3,
            GraphClass::Wheel => 4,
            GraphClass::Path | GraphClass::Complete | GraphClass::Gnp => 1,
        }
    }
}

impl fmt::Display for GraphClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GraphClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "star" => GraphClass::Star,
            "path" => GraphClass::Path,
            "cycle" => GraphClass::Cycle,
            "wheel" => GraphClass::Wheel,
            "complete" => GraphClass::Complete,
            "gnp" => GraphClass::Gnp,
            other => return domain(format!("unknown graph class {other:?}")),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct GnpParams {
    pub p: f64,
    pub seed: u64,
}

/// Builds a graph of the given class.
///
/// Stars have centre 0. Wheels are the hub 0 joined to the cycle `1..n`.
/// `Gnp` requires `params`; the same `(n, p, seed)` always yields the same graph.
pub fn generate_graph(class: GraphClass, n: usize, params: Option<GnpParams>) -> Result<Graph> {
    if n < class.min_n() {
        return domain(format!("{class} requires n >= {}, got {n}", class.min_n()));
    }
    let edges: Vec<(usize, usize)> = match class {
        GraphClass::Star => (1..n).map(|v| (0, v)).collect(),
        GraphClass::Path => (1..n).map(|v| (v - 1, v)).collect(),
        GraphClass::Cycle => (0..n).map(|v| (v, (v + 1) % n)).collect(),
        GraphClass::Wheel => {
            let rim = n - 1;
            (1..n)
                .map(|v| (0, v))
                .chain((0..rim).map(|i| (1 + i, 1 + (i + 1) % rim)))
                .collect()
        }
        GraphClass::Complete => (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect(),
        GraphClass::Gnp => {
            let GnpParams { p, seed } =
                params.ok_or_else(|| Error::Domain("gnp requires p and seed".into()))?;
            if !(0.0..=1.0).contains(&p) {
                return domain(format!("edge probability {p} outside [0, 1]"));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen::<f64>() < p {
                        edges.push((u, v));
                    }
                }
            }
            edges
        }
    };
    Graph::new(n, edges)
}

/// A connected G(n, p) sample plus the number of rejected draws.
#[derive(Debug, Clone)]
pub struct ConnectedSample {
    pub graph: Graph,
    pub redraws: usize,
}

/// Draws G(n, p) samples from a seed-derived stream until one is connected.
///
/// Fails with a domain error once `max_redraws` disconnected samples were rejected.
pub fn connected_gnp(n: usize, p: f64, seed: u64, max_redraws: usize) -> Result<ConnectedSample> {
    for attempt in 0..=max_redraws {
        let sub_seed = mix_seed(seed, attempt as u64);
        let graph = generate_graph(GraphClass::Gnp, n, Some(GnpParams { p, seed: sub_seed }))?;
        if graph.is_connected() {
            return Ok(ConnectedSample {
                graph,
                redraws: attempt,
            });
        }
    }
    domain(format!(
        "no connected G({n}, {p}) sample within {max_redraws} redraws"
    ))
}

/// SplitMix64-style mixing of a seed with a coordinate.
pub fn mix_seed(seed: u64, coord: u64) -> u64 {
    let mut z = seed ^ coord.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// All-pairs hop distances. `None` marks an unreachable pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceData {
    pub dist: Vec<Vec<Option<usize>>>,
    /// Eccentricity; `None` when some vertex is unreachable.
    pub ecc: Vec<Option<usize>>,
    /// Diameter over finite entries.
    pub eta: usize,
}

impl DistanceData {
    pub fn get(&self, u: usize, v: usize) -> Option<usize> {
        self.dist[u][v]
    }

    pub fn is_connected(&self) -> bool {
        self.ecc.iter().all(Option::is_some)
    }
}

fn bfs(g: &Graph, src: usize) -> Vec<Option<usize>> {
    let mut dist = vec![None; g.n()];
    dist[src] = Some(0);
    let mut queue = VecDeque::from([src]);
    while let Some(u) = queue.pop_front() {
        let du = dist[u].unwrap();
        for &w in g.neighbors(u) {
            if dist[w].is_none() {
                dist[w] = Some(du + 1);
                queue.push_back(w);
            }
        }
    }
    dist
}

pub fn distance_matrix(g: &Graph) -> DistanceData {
    let dist: Vec<_> = (0..g.n()).map(|s| bfs(g, s)).collect();
    let ecc = dist
        .iter()
        .map(|row| row.iter().try_fold(0, |acc, d| d.map(|d| acc.max(d))))
        .collect();
    let eta = dist.iter().flatten().flatten().copied().max().unwrap_or(0);
    DistanceData { dist, ecc, eta }
}

/// `counts[j-1] = |S_j(v)|` for `j = 1..=eta`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SphereProfile {
    pub vertex: usize,
    pub counts: Vec<usize>,
}

pub fn j_sphere_profile(g: &Graph, d: &DistanceData, v: usize) -> Result<SphereProfile> {
    if v >= g.n() {
        return domain(format!("vertex {v} outside 0..{}", g.n()));
    }
    if !d.is_connected() {
        return domain("j-spheres require a connected graph");
    }
    let mut counts = vec![0; d.eta];
    for x in 0..g.n() {
        let dx = d.get(v, x).expect("connected");
        if dx > 0 {
            counts[dx - 1] += 1;
        }
    }
    Ok(SphereProfile { vertex: v, counts })
}
