//! Seeded random instances.

use std::collections::BTreeSet;
use std::ops::RangeInclusive;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{MultiGraph, VertexId};
use crate::model::{MmcuInstance, Partition};
use crate::reductions::BpvcInstance;

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random spanning tree on `n` vertices plus random extra copies until
/// `m` edges exist. Parallel copies may occur.
pub fn random_connected_multigraph(rng: &mut impl Rng, n: usize, m: usize) -> MultiGraph {
    let mut g = MultiGraph::with_vertices(n);
    for i in 1..n {
        let parent = rng.gen_range(0..i);
        g.add_edge(VertexId(parent), VertexId(i)).expect("distinct endpoints");
    }
    while n >= 2 && g.edge_count() < m {
        let a = rng.gen_range(0..n);
        let b = rng.gen_range(0..n);
        if a != b {
            g.add_edge(VertexId(a), VertexId(b)).expect("distinct endpoints");
        }
    }
    g
}

/// A random spanning tree plus every other pair independently with
/// probability `p`. No parallel copies.
pub fn random_connected_simple_graph(rng: &mut impl Rng, n: usize, p: f64) -> MultiGraph {
    let mut g = MultiGraph::with_vertices(n);
    for i in 1..n {
        let parent = rng.gen_range(0..i);
        g.add_edge(VertexId(parent), VertexId(i)).expect("distinct endpoints");
    }
    for a in 0..n {
        for b in a + 1..n {
            if !g.adjacent(VertexId(a), VertexId(b)) && rng.gen_bool(p) {
                g.add_edge(VertexId(a), VertexId(b)).expect("distinct endpoints");
            }
        }
    }
    g
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MmcuGenParams {
    pub n: RangeInclusive<usize>,
    pub max_edges: usize,
    pub terminals: RangeInclusive<usize>,
    pub max_classes: usize,
    pub max_k: usize,
    pub max_l: usize,
}

impl Default for MmcuGenParams {
    fn default() -> Self {
        Self {
            n: 2..=8,
            max_edges: 14,
            terminals: 2..=4,
            max_classes: 3,
            max_k: 2,
            max_l: 2,
        }
    }
}

/// A connected instance with terminals split into random classes.
pub fn random_mmcu(rng: &mut impl Rng, p: &MmcuGenParams) -> MmcuInstance {
    let n = rng.gen_range(p.n.clone());
    let m = rng.gen_range(n.saturating_sub(1)..=p.max_edges.max(n.saturating_sub(1)));
    let g = random_connected_multigraph(rng, n, m);
    let t_hi = (*p.terminals.end()).min(n);
    let t = rng.gen_range((*p.terminals.start()).min(t_hi)..=t_hi);
    let mut ids: Vec<usize> = (0..n).collect();
    ids.shuffle(rng);
    let classes = rng.gen_range(1..=p.max_classes.max(1)).min(t.max(1));
    let mut buckets: Vec<Vec<VertexId>> = vec![Vec::new(); classes];
    for (i, &v) in ids[..t].iter().enumerate() {
        // the first `classes` terminals open one class each
        let c = if i < classes { i } else { rng.gen_range(0..classes) };
        buckets[c].push(VertexId(v));
    }
    let relation = Partition::new(buckets.into_iter().filter(|b| !b.is_empty())).expect("disjoint buckets");
    let k = rng.gen_range(0..=p.max_k);
    let l = rng.gen_range(0..=p.max_l);
    MmcuInstance::new(g, relation, k, l).expect("terminals are vertices")
}

/// Left side `0..nx`, right side `nx..nx+ny`, each cross pair present with
/// probability `density`; `p` and `q_edges` drawn within their valid ranges.
pub fn random_bpvc(rng: &mut impl Rng, nx: usize, ny: usize, density: f64) -> BpvcInstance {
    let left: Vec<VertexId> = (0..nx).map(VertexId).collect();
    let right: Vec<VertexId> = (nx..nx + ny).map(VertexId).collect();
    let edges: Vec<(VertexId, VertexId)> = left
        .iter()
        .flat_map(|&x| right.iter().map(move |&y| (x, y)))
        .filter(|_| rng.gen_bool(density))
        .collect();
    let p = rng.gen_range(0..=nx + ny);
    let q = rng.gen_range(0..=edges.len());
    BpvcInstance::new(left, right, edges, p, q).expect("generated edges cross the bipartition")
}

/// Every bipartite graph on the given sides, as edge lists, in mask order.
pub fn all_bipartite_edge_sets(nx: usize, ny: usize) -> Vec<Vec<(VertexId, VertexId)>> {
    let pairs: Vec<(VertexId, VertexId)> = (0..nx)
        .flat_map(|x| (nx..nx + ny).map(move |y| (VertexId(x), VertexId(y))))
        .collect();
    (0u32..1 << pairs.len())
        .map(|mask| {
            pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &e)| e)
                .collect()
        })
        .collect()
}

/// Vertex ids `0..n` as a set.
pub fn id_range(n: usize) -> BTreeSet<VertexId> {
    (0..n).map(VertexId).collect()
}
