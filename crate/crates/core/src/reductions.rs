//! Partial vertex cover on bipartite graphs to Mixed Cut, and Mixed Cut to
//! a two-class cut-uncut instance.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::graph::{MultiGraph, VertexId};
use crate::model::{MmcuInstance, Partition};

/// Bipartite partial vertex cover: is there `S` with `|S| ≤ p` covering at
/// least `q_edges` edges?
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BpvcInstance {
    left: BTreeSet<VertexId>,
    right: BTreeSet<VertexId>,
    edges: Vec<(VertexId, VertexId)>,
    pub p: usize,
    pub q_edges: usize,
}

impl BpvcInstance {
    /// Edges are `(left, right)` pairs. Duplicate edges are rejected.
    pub fn new(
        left: impl IntoIterator<Item = VertexId>,
        right: impl IntoIterator<Item = VertexId>,
        edges: impl IntoIterator<Item = (VertexId, VertexId)>,
        p: usize,
        q_edges: usize,
    ) -> Result<Self> {
        let left: BTreeSet<_> = left.into_iter().collect();
        let right: BTreeSet<_> = right.into_iter().collect();
        if let Some(v) = left.intersection(&right).next() {
            return Err(Error::InvalidInstance(format!("{v} is on both sides")));
        }
        let edges: Vec<_> = edges.into_iter().collect();
        let mut seen = BTreeSet::new();
        for &(x, y) in &edges {
            if !left.contains(&x) || !right.contains(&y) {
                return Err(Error::InvalidInstance(format!("edge {x}-{y} does not cross the bipartition")));
            }
            if !seen.insert((x, y)) {
                return Err(Error::InvalidInstance(format!("duplicate edge {x}-{y}")));
            }
        }
        Ok(Self {
            left,
            right,
            edges,
            p,
            q_edges,
        })
    }

    pub fn left(&self) -> &BTreeSet<VertexId> {
        &self.left
    }

    pub fn right(&self) -> &BTreeSet<VertexId> {
        &self.right
    }

    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.left.len() + self.right.len()
    }

    /// Drops every vertex with no incident edge. The answer is unchanged.
    pub fn without_isolated(&self) -> Self {
        let used: BTreeSet<VertexId> = self.edges.iter().flat_map(|&(x, y)| [x, y]).collect();
        Self {
            left: self.left.intersection(&used).copied().collect(),
            right: self.right.intersection(&used).copied().collect(),
            ..self.clone()
        }
    }
}

/// Separate `source` from `sink` with at most `k` vertex and `l` edge deletions.
#[derive(Clone, Debug)]
pub struct MixedCutInstance {
    graph: MultiGraph,
    source: VertexId,
    sink: VertexId,
    pub k: usize,
    pub l: usize,
}

impl MixedCutInstance {
    pub fn new(graph: MultiGraph, source: VertexId, sink: VertexId, k: usize, l: usize) -> Result<Self> {
        graph.check_vertex(source)?;
        graph.check_vertex(sink)?;
        if source == sink {
            return Err(Error::InvalidInstance("source equals sink".into()));
        }
        Ok(Self {
            graph,
            source,
            sink,
            k,
            l,
        })
    }

    pub fn graph(&self) -> &MultiGraph {
        &self.graph
    }

    pub fn source(&self) -> VertexId {
        self.source
    }

    pub fn sink(&self) -> VertexId {
        self.sink
    }
}

/// Isolated vertices are dropped first. Remaining vertices get ids `0..n`,
/// left side first, then `s = n` and `t = n + 1`. The budgets are `k = p` and
/// `l = m - q_edges`.
///
/// Only one direction holds: a cover yields a cut, but a cut may delete the
/// attachment edges `sx` and `ty` instead of covering anything. With left
/// side `{x}`, right side `{y1, y2}`, `p = 0` and `q = 1`, no cover exists
/// while deleting `sx` alone is a cut within `l = 1`.
pub fn bpvc_to_mixedcut(b: &BpvcInstance) -> Result<MixedCutInstance> {
    build_mixedcut(b, 1)
}

/// As [`bpvc_to_mixedcut`], but every attachment edge gets `l + 1` parallel
/// copies so that no cut can afford to delete it. This variant is an
/// equivalence.
pub fn bpvc_to_mixedcut_bundled(b: &BpvcInstance) -> Result<MixedCutInstance> {
    let m = b.edges.len();
    build_mixedcut(b, m.saturating_sub(b.q_edges) + 1)
}

fn build_mixedcut(b: &BpvcInstance, copies: usize) -> Result<MixedCutInstance> {
    let b = b.without_isolated();
    let m = b.edges.len();
    if b.q_edges > m {
        return Err(Error::InvalidInstance(format!(
            "q_edges = {} exceeds the {m} edges",
            b.q_edges
        )));
    }
    let n = b.vertex_count();
    let mut g = MultiGraph::with_vertices(n + 2);
    let ids: BTreeMap<VertexId, VertexId> = b
        .left
        .iter()
        .chain(&b.right)
        .enumerate()
        .map(|(i, &v)| (v, VertexId(i)))
        .collect();
    let (s, t) = (VertexId(n), VertexId(n + 1));
    for &(x, y) in &b.edges {
        g.add_edge(ids[&x], ids[&y])?;
    }
    for x in &b.left {
        for _ in 0..copies {
            g.add_edge(s, ids[x])?;
        }
    }
    for y in &b.right {
        for _ in 0..copies {
            g.add_edge(t, ids[y])?;
        }
    }
    MixedCutInstance::new(g, s, t, b.p, m - b.q_edges)
}

pub fn mixedcut_to_mmcu(mc: &MixedCutInstance) -> MmcuInstance {
    MmcuInstance::new(
        mc.graph.clone(),
        Partition::singletons([mc.source, mc.sink]),
        mc.k,
        mc.l,
    )
    .expect("a valid mixed cut instance is a valid two-class instance")
}
