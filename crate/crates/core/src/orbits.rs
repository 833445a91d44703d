//! Vertex orbits of the full automorphism group.
//!
//! [`vertex_orbits`] colours vertices by distance invariants, refines the
//! colouring to an equitable one, and then confirms candidate pairs with a
//! backtracking search for an explicit automorphism. Every automorphism found
//! merges its cycles in a union-find, so each confirmed pair usually settles
//! many others at once. [`brute_force_orbits`] enumerates all permutations and
//! is only meant as an oracle for small graphs.

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::graph::{distance_matrix, Graph};

/// Largest graph [`vertex_orbits`] accepts by default.
pub const DEFAULT_ORBIT_CAP: usize = 64;
/// Hard limit for the permutation-enumerating oracle.
pub const BRUTE_FORCE_CAP: usize = 8;

/// Partition of `0..n` into orbits, ordered by `(size, smallest member)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OrbitPartition {
    blocks: Vec<Vec<usize>>,
    total: usize,
}

impl OrbitPartition {
    /// Normalizes and validates a set of blocks covering `0..n`.
    pub fn from_blocks(mut blocks: Vec<Vec<usize>>) -> Result<Self> {
        let total: usize = blocks.iter().map(Vec::len).sum();
        let mut seen = vec![false; total];
        for block in &mut blocks {
            if block.is_empty() {
                return domain("empty orbit block");
            }
            block.sort_unstable();
            for &v in block.iter() {
                if v >= total || std::mem::replace(&mut seen[v], true) {
                    return domain("orbit blocks must partition 0..n");
                }
            }
        }
        blocks.sort_by_key(|b| (b.len(), b[0]));
        Ok(Self { blocks, total })
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    /// Number of blocks `k`.
    pub fn k(&self) -> usize {
        self.blocks.len()
    }

    /// `|X|`, the number of vertices covered.
    pub fn total(&self) -> usize {
        self.total
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(Vec::len).collect()
    }

    /// Index of the block containing `v`.
    pub fn block_of(&self, v: usize) -> Option<usize> {
        self.blocks.iter().position(|b| b.binary_search(&v).is_ok())
    }

    /// The partition obtained by renaming every vertex `v` to `perm[v]`.
    pub fn relabeled(&self, perm: &[usize]) -> Result<Self> {
        Self::from_blocks(
            self.blocks
                .iter()
                .map(|b| b.iter().map(|&v| perm[v]).collect())
                .collect(),
        )
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // smaller root wins so results do not depend on merge order
            let (lo, hi) = (ra.min(rb), ra.max(rb));
            self.parent[hi] = lo;
        }
    }

    fn into_blocks(mut self) -> Vec<Vec<usize>> {
        let n = self.parent.len();
        let mut by_root: Vec<Vec<usize>> = vec![Vec::new(); n];
        for v in 0..n {
            let r = self.find(v);
            by_root[r].push(v);
        }
        by_root.into_iter().filter(|b| !b.is_empty()).collect()
    }
}

fn is_automorphism(g: &Graph, perm: &[usize]) -> bool {
    g.edges().iter().all(|&(u, v)| g.has_edge(perm[u], perm[v]))
}

/// Colour by degree and the sorted multiset of distances (unreachable last).
fn initial_colours(g: &Graph) -> Vec<u32> {
    let d = distance_matrix(g);
    let invariants: Vec<(usize, Vec<usize>)> = (0..g.n())
        .map(|v| {
            let mut ds: Vec<usize> = d.dist[v].iter().map(|x| x.unwrap_or(usize::MAX)).collect();
            ds.sort_unstable();
            (g.degree(v), ds)
        })
        .collect();
    rank(&invariants)
}

fn rank<T: Ord + Clone>(keys: &[T]) -> Vec<u32> {
    let mut distinct = keys.to_vec();
    distinct.sort();
    distinct.dedup();
    keys.iter()
        .map(|k| distinct.binary_search(k).unwrap() as u32)
        .collect()
}

fn signatures(g: &Graph, colours: &[u32]) -> Vec<(u32, Vec<u32>)> {
    (0..g.n())
        .map(|v| {
            let mut nb: Vec<u32> = g.neighbors(v).iter().map(|&w| colours[w]).collect();
            nb.sort_unstable();
            (colours[v], nb)
        })
        .collect()
}

fn colour_count(colours: &[u32]) -> usize {
    colours.iter().copied().max().map_or(0, |m| m as usize + 1)
}

/// Refines two colourings in lockstep with a shared colour naming.
///
/// Returns `false` as soon as their signature multisets differ, which rules
/// out any colour-preserving map between them.
fn refine_pair(g: &Graph, a: &mut Vec<u32>, b: &mut Vec<u32>) -> bool {
    loop {
        let before = colour_count(a);
        let sa = signatures(g, a);
        let sb = signatures(g, b);
        let mut shared = sa.clone();
        shared.sort();
        let mut sorted_b = sb.clone();
        sorted_b.sort();
        if shared != sorted_b {
            return false;
        }
        shared.dedup();
        let rename = |s: &(u32, Vec<u32>)| shared.binary_search(s).unwrap() as u32;
        *a = sa.iter().map(rename).collect();
        *b = sb.iter().map(rename).collect();
        if shared.len() == before {
            return true;
        }
    }
}

fn refine(g: &Graph, colours: Vec<u32>) -> Vec<u32> {
    let mut a = colours.clone();
    let mut b = colours;
    refine_pair(g, &mut a, &mut b);
    a
}

/// Searches for an automorphism carrying colouring `a` onto colouring `b`.
fn search(g: &Graph, mut a: Vec<u32>, mut b: Vec<u32>) -> Option<Vec<usize>> {
    if !refine_pair(g, &mut a, &mut b) {
        return None;
    }
    let k = colour_count(&a);
    let mut sizes = vec![0usize; k];
    for &c in &a {
        sizes[c as usize] += 1;
    }
    match sizes.iter().position(|&s| s > 1) {
        None => {
            let mut by_colour = vec![0; k];
            for (v, &c) in b.iter().enumerate() {
                by_colour[c as usize] = v;
            }
            let perm: Vec<usize> = a.iter().map(|&c| by_colour[c as usize]).collect();
            is_automorphism(g, &perm).then_some(perm)
        }
        Some(cell) => {
            let cell = cell as u32;
            let x = a.iter().position(|&c| c == cell).unwrap();
            let fresh = k as u32;
            for y in (0..g.n()).filter(|&y| b[y] == cell) {
                let mut a2 = a.clone();
                let mut b2 = b.clone();
                a2[x] = fresh;
                b2[y] = fresh;
                if let Some(perm) = search(g, a2, b2) {
                    return Some(perm);
                }
            }
            None
        }
    }
}

/// Exact vertex orbits for graphs up to [`DEFAULT_ORBIT_CAP`] vertices.
pub fn vertex_orbits(g: &Graph) -> Result<OrbitPartition> {
    vertex_orbits_with_cap(g, DEFAULT_ORBIT_CAP)
}

pub fn vertex_orbits_with_cap(g: &Graph, cap: usize) -> Result<OrbitPartition> {
    let n = g.n();
    if n == 0 {
        return domain("orbits need at least one vertex");
    }
    if n > cap {
        return Err(Error::Capacity { n, limit: cap });
    }
    let base = refine(g, initial_colours(g));
    let fresh = colour_count(&base) as u32;
    let mut uf = UnionFind::new(n);
    let cells = (0..n).into_group_map_by(|&v| base[v]);
    for cell in cells.into_values().sorted() {
        let mut reps: Vec<usize> = Vec::new();
        for &v in &cell {
            let root = uf.find(v);
            if reps.iter().any(|&r| uf.find(r) == root) {
                continue;
            }
            let mut merged = false;
            for &r in &reps {
                let mut a = base.clone();
                let mut b = base.clone();
                a[r] = fresh;
                b[v] = fresh;
                if let Some(perm) = search(g, a, b) {
                    for (i, &j) in perm.iter().enumerate() {
                        uf.union(i, j);
                    }
                    merged = true;
                    break;
                }
            }
            if !merged {
                reps.push(v);
            }
        }
    }
    OrbitPartition::from_blocks(uf.into_blocks())
}

/// Every automorphism of `g`, found by enumerating all `n!` permutations.
pub fn brute_force_automorphisms(g: &Graph) -> Result<Vec<Vec<usize>>> {
    let n = g.n();
    if n > BRUTE_FORCE_CAP {
        return Err(Error::Capacity {
            n,
            limit: BRUTE_FORCE_CAP,
        });
    }
    let mut adj = vec![vec![false; n]; n];
    for &(u, v) in g.edges() {
        adj[u][v] = true;
        adj[v][u] = true;
    }
    Ok((0..n)
        .permutations(n)
        .filter(|p| (0..n).all(|u| (0..n).all(|v| adj[u][v] == adj[p[u]][p[v]])))
        .collect())
}

/// Orbits by brute force: `u ~ v` iff some automorphism maps `u` to `v`.
pub fn brute_force_orbits(g: &Graph) -> Result<OrbitPartition> {
    let n = g.n();
    if n == 0 {
        return domain("orbits need at least one vertex");
    }
    let autos = brute_force_automorphisms(g)?;
    let mut block_id: Vec<Option<usize>> = vec![None; n];
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for v in 0..n {
        if block_id[v].is_some() {
            continue;
        }
        let mut orbit: Vec<usize> = autos.iter().map(|p| p[v]).collect();
        orbit.sort_unstable();
        orbit.dedup();
        for &w in &orbit {
            block_id[w] = Some(blocks.len());
        }
        blocks.push(orbit);
    }
    OrbitPartition::from_blocks(blocks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate_graph, GraphClass};

    fn class(c: GraphClass, n: usize) -> Graph {
        generate_graph(c, n, None).unwrap()
    }

    #[test]
    fn star_orbits() {
        let o = vertex_orbits(&class(GraphClass::Star, 4)).unwrap();
        assert_eq!(o.blocks(), &[vec![0], vec![1, 2, 3]]);
        assert_eq!(o.k(), 2);
        assert_eq!(o.total(), 4);
    }

    #[test]
    fn path_orbits() {
        let o = vertex_orbits(&class(GraphClass::Path, 6)).unwrap();
        assert_eq!(o.blocks(), &[vec![0, 5], vec![1, 4], vec![2, 3]]);
        let odd = vertex_orbits(&class(GraphClass::Path, 5)).unwrap();
        assert_eq!(odd.sizes(), vec![1, 2, 2]);
    }

    #[test]
    fn complete_and_wheel() {
        assert_eq!(
            vertex_orbits(&class(GraphClass::Complete, 4))
                .unwrap()
                .blocks(),
            &[vec![0, 1, 2, 3]]
        );
        // W4 is K4
        assert_eq!(vertex_orbits(&class(GraphClass::Wheel, 4)).unwrap().k(), 1);
        for n in 5..=12 {
            let o = vertex_orbits(&class(GraphClass::Wheel, n)).unwrap();
            assert_eq!(o.sizes(), vec![1, n - 1], "W{n}");
        }
    }

    #[test]
    fn brute_force_examples() {
        let c4 = class(GraphClass::Cycle, 4);
        assert_eq!(brute_force_automorphisms(&c4).unwrap().len(), 8);
        assert_eq!(
            brute_force_orbits(&c4).unwrap().blocks(),
            &[vec![0, 1, 2, 3]]
        );

        let p4 = class(GraphClass::Path, 4);
        assert_eq!(brute_force_automorphisms(&p4).unwrap().len(), 2);
        assert_eq!(
            brute_force_orbits(&p4).unwrap().blocks(),
            &[vec![0, 3], vec![1, 2]]
        );

        let single = Graph::empty(1);
        assert_eq!(brute_force_orbits(&single).unwrap().blocks(), &[vec![0]]);
    }

    #[test]
    fn capacity_errors() {
        let big = class(GraphClass::Path, 9);
        assert_eq!(
            brute_force_orbits(&big),
            Err(Error::Capacity { n: 9, limit: 8 })
        );
        assert!(matches!(
            vertex_orbits_with_cap(&big, 8),
            Err(Error::Capacity { .. })
        ));
        let too_big = class(GraphClass::Path, 65);
        assert!(vertex_orbits(&too_big).is_err());
        assert!(vertex_orbits(&Graph::empty(0)).is_err());
    }

    #[test]
    fn refinement_alone_would_over_merge() {
        // Two triangles vs a hexagon: both 2-regular, so degree refinement
        // cannot separate them, but distance invariants and the search do.
        let g = Graph::new(
            9,
            [
                (0, 1),
                (1, 2),
                (2, 0),
                (3, 4),
                (4, 5),
                (5, 6),
                (6, 7),
                (7, 8),
                (8, 3),
            ],
        )
        .unwrap();
        assert_eq!(
            vertex_orbits(&g).unwrap().blocks(),
            &[vec![0, 1, 2], vec![3, 4, 5, 6, 7, 8]]
        );
    }

    #[test]
    fn prism_is_vertex_transitive() {
        let prism = Graph::new(
            6,
            [
                (0, 1),
                (1, 2),
                (2, 0),
                (3, 4),
                (4, 5),
                (5, 3),
                (0, 3),
                (1, 4),
                (2, 5),
            ],
        )
        .unwrap();
        assert_eq!(vertex_orbits(&prism).unwrap().k(), 1);
        assert_eq!(
            vertex_orbits(&prism).unwrap(),
            brute_force_orbits(&prism).unwrap()
        );
    }

    #[test]
    fn petersen_is_vertex_transitive() {
        let outer = (0..5).map(|i| (i, (i + 1) % 5));
        let spokes = (0..5).map(|i| (i, i + 5));
        let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
        let g = Graph::new(10, outer.chain(spokes).chain(inner)).unwrap();
        assert_eq!(vertex_orbits(&g).unwrap().k(), 1);
    }

    #[test]
    fn disconnected_isolated_vertices() {
        let g = Graph::new(4, [(0, 1)]).unwrap();
        let o = vertex_orbits(&g).unwrap();
        assert_eq!(o.blocks(), &[vec![0, 1], vec![2, 3]]);
        assert_eq!(o, brute_force_orbits(&g).unwrap());
    }

    #[test]
    fn from_blocks_validates() {
        assert!(OrbitPartition::from_blocks(vec![vec![0], vec![0, 1]]).is_err());
        assert!(OrbitPartition::from_blocks(vec![vec![], vec![0]]).is_err());
        let p = OrbitPartition::from_blocks(vec![vec![2, 1], vec![0]]).unwrap();
        assert_eq!(p.blocks(), &[vec![0], vec![1, 2]]);
        assert_eq!(p.block_of(2), Some(1));
    }
}
