//! Undirected multigraph with stable vertex and edge-copy identities.
//!
//! Every parallel copy of an edge carries its own [`EdgeId`], so a solution can
//! name individual copies. Ids are never reused within one graph lineage: the
//! id counters travel with every derived graph (subgraphs, removals,
//! identifications), so fresh ids never collide with ids of an ancestor.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub usize);

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId(pub usize);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MultiGraph {
    incidence: BTreeMap<VertexId, BTreeSet<EdgeId>>,
    // endpoints stored with the smaller id first
    edges: BTreeMap<EdgeId, (VertexId, VertexId)>,
    next_vertex: usize,
    next_edge: usize,
}

impl MultiGraph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Graph with vertices `0..n` and no edges.
    pub fn with_vertices(n: usize) -> Self {
        let mut g = Self::new();
        for _ in 0..n {
            g.add_vertex();
        }
        g
    }

    pub fn add_vertex(&mut self) -> VertexId {
        let v = VertexId(self.next_vertex);
        self.next_vertex += 1;
        self.incidence.insert(v, BTreeSet::new());
        v
    }

    pub fn add_edge(&mut self, u: VertexId, v: VertexId) -> Result<EdgeId> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        let e = EdgeId(self.next_edge);
        self.next_edge += 1;
        self.edges.insert(e, (u.min(v), u.max(v)));
        self.incidence.get_mut(&u).unwrap().insert(e);
        self.incidence.get_mut(&v).unwrap().insert(e);
        Ok(e)
    }

    pub fn remove_edge(&mut self, e: EdgeId) -> Result<(VertexId, VertexId)> {
        let (a, b) = self.edges.remove(&e).ok_or(Error::UnknownEdge(e))?;
        self.incidence.get_mut(&a).unwrap().remove(&e);
        self.incidence.get_mut(&b).unwrap().remove(&e);
        Ok((a, b))
    }

    /// Deletes `v` together with its incident edge copies, which are returned.
    pub fn remove_vertex(&mut self, v: VertexId) -> Result<Vec<EdgeId>> {
        let incident = self.incidence.remove(&v).ok_or(Error::UnknownVertex(v))?;
        for &e in &incident {
            let (a, b) = self.edges.remove(&e).unwrap();
            let other = if a == v { b } else { a };
            self.incidence.get_mut(&other).unwrap().remove(&e);
        }
        Ok(incident.into_iter().collect())
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        self.incidence.contains_key(&v)
    }

    pub fn contains_edge(&self, e: EdgeId) -> bool {
        self.edges.contains_key(&e)
    }

    pub fn check_vertex(&self, v: VertexId) -> Result<()> {
        if self.contains_vertex(v) {
            Ok(())
        } else {
            Err(Error::UnknownVertex(v))
        }
    }

    pub fn check_edge(&self, e: EdgeId) -> Result<()> {
        if self.contains_edge(e) {
            Ok(())
        } else {
            Err(Error::UnknownEdge(e))
        }
    }

    pub fn endpoints(&self, e: EdgeId) -> Result<(VertexId, VertexId)> {
        self.edges.get(&e).copied().ok_or(Error::UnknownEdge(e))
    }

    /// The endpoint of `e` that is not `v`.
    pub fn opposite(&self, e: EdgeId, v: VertexId) -> Result<VertexId> {
        let (a, b) = self.endpoints(e)?;
        Ok(if a == v { b } else { a })
    }

    /// Exclusive upper bound on every vertex id this graph has handed out.
    pub fn vertex_id_bound(&self) -> usize {
        self.next_vertex
    }

    pub fn edge_id_bound(&self) -> usize {
        self.next_edge
    }

    pub fn vertex_count(&self) -> usize {
        self.incidence.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.incidence.keys().copied()
    }

    pub fn vertex_set(&self) -> BTreeSet<VertexId> {
        self.vertices().collect()
    }

    /// All edge copies as `(id, smaller endpoint, larger endpoint)`, ascending by id.
    pub fn edges(&self) -> impl Iterator<Item = (EdgeId, VertexId, VertexId)> + '_ {
        self.edges.iter().map(|(&e, &(a, b))| (e, a, b))
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.edges.keys().copied()
    }

    pub fn incident_edges(&self, v: VertexId) -> Result<&BTreeSet<EdgeId>> {
        self.incidence.get(&v).ok_or(Error::UnknownVertex(v))
    }

    pub fn degree(&self, v: VertexId) -> Result<usize> {
        Ok(self.incident_edges(v)?.len())
    }

    /// Open neighbourhood of `v`, deduplicated across parallel copies.
    pub fn neighbors(&self, v: VertexId) -> Result<BTreeSet<VertexId>> {
        let incident = self.incident_edges(v)?;
        Ok(incident
            .iter()
            .map(|&e| {
                let (a, b) = self.edges[&e];
                if a == v {
                    b
                } else {
                    a
                }
            })
            .collect())
    }

    /// `N(S)`: the union of the neighbourhoods of `set`, minus `set` itself.
    pub fn neighborhood_of_set(&self, set: &BTreeSet<VertexId>) -> Result<BTreeSet<VertexId>> {
        let mut out = BTreeSet::new();
        for &v in set {
            for u in self.neighbors(v)? {
                if !set.contains(&u) {
                    out.insert(u);
                }
            }
        }
        Ok(out)
    }

    /// Edge copies joining `u` and `v`, ascending by id.
    pub fn edges_between(&self, u: VertexId, v: VertexId) -> Vec<EdgeId> {
        let (a, b) = (u.min(v), u.max(v));
        match self.incidence.get(&u) {
            Some(inc) => inc
                .iter()
                .copied()
                .filter(|e| self.edges[e] == (a, b))
                .collect(),
            None => Vec::new(),
        }
    }

    pub fn multiplicity(&self, u: VertexId, v: VertexId) -> usize {
        self.edges_between(u, v).len()
    }

    pub fn adjacent(&self, u: VertexId, v: VertexId) -> bool {
        self.multiplicity(u, v) > 0
    }

    /// `G - (X, F)`: deletes the vertices of `x` (with their incident copies)
    /// and the edge copies of `f`.
    pub fn remove_solution(
        &self,
        x: &BTreeSet<VertexId>,
        f: &BTreeSet<EdgeId>,
    ) -> Result<MultiGraph> {
        for &v in x {
            self.check_vertex(v)?;
        }
        for &e in f {
            self.check_edge(e)?;
        }
        let mut g = self.clone();
        for &e in f {
            g.remove_edge(e)?;
        }
        for &v in x {
            g.remove_vertex(v)?;
        }
        Ok(g)
    }

    /// Connected components, each sorted, ordered by their minimum vertex id.
    pub fn connected_components(&self) -> Vec<BTreeSet<VertexId>> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for start in self.vertices() {
            if seen.contains(&start) {
                continue;
            }
            let mut comp = BTreeSet::new();
            let mut queue = VecDeque::from([start]);
            seen.insert(start);
            while let Some(v) = queue.pop_front() {
                comp.insert(v);
                for &e in &self.incidence[&v] {
                    let (a, b) = self.edges[&e];
                    let w = if a == v { b } else { a };
                    if seen.insert(w) {
                        queue.push_back(w);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    /// True for the empty graph as well.
    pub fn is_connected(&self) -> bool {
        self.connected_components().len() <= 1
    }

    /// `G(Z)` for `Z = V' ∪ E'`: the edges `E'` plus the vertices `V'` and
    /// every endpoint of `E'`.
    pub fn edge_subgraph(
        &self,
        vertices: &BTreeSet<VertexId>,
        edges: &BTreeSet<EdgeId>,
    ) -> Result<MultiGraph> {
        let mut keep: BTreeSet<VertexId> = BTreeSet::new();
        for &v in vertices {
            self.check_vertex(v)?;
            keep.insert(v);
        }
        for &e in edges {
            let (a, b) = self.endpoints(e)?;
            keep.insert(a);
            keep.insert(b);
        }
        Ok(self.restrict(&keep, |e| edges.contains(&e)))
    }

    /// `G[S]`: the vertices of `set` and every copy with both endpoints in it.
    pub fn induced_subgraph(&self, set: &BTreeSet<VertexId>) -> Result<MultiGraph> {
        for &v in set {
            self.check_vertex(v)?;
        }
        Ok(self.restrict(set, |_| true))
    }

    fn restrict(&self, keep: &BTreeSet<VertexId>, edge_ok: impl Fn(EdgeId) -> bool) -> MultiGraph {
        let edges: BTreeMap<EdgeId, (VertexId, VertexId)> = self
            .edges
            .iter()
            .filter(|(&e, (a, b))| keep.contains(a) && keep.contains(b) && edge_ok(e))
            .map(|(&e, &ab)| (e, ab))
            .collect();
        let mut incidence: BTreeMap<VertexId, BTreeSet<EdgeId>> =
            keep.iter().map(|&v| (v, BTreeSet::new())).collect();
        for (&e, &(a, b)) in &edges {
            incidence.get_mut(&a).unwrap().insert(e);
            incidence.get_mut(&b).unwrap().insert(e);
        }
        MultiGraph {
            incidence,
            edges,
            next_vertex: self.next_vertex,
            next_edge: self.next_edge,
        }
    }

    /// Replaces `u` and `v` by a fresh vertex that inherits every copy incident
    /// to either of them. Retargeted copies keep their ids; copies joining `u`
    /// and `v` would become loops and are dropped.
    pub fn identify(&mut self, u: VertexId, v: VertexId) -> Result<VertexId> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        let merged = self.add_vertex();
        let mut moved = BTreeSet::new();
        for old in [u, v] {
            let incident = self.incidence.remove(&old).unwrap();
            for e in incident {
                if moved.contains(&e) {
                    continue;
                }
                let (a, b) = self.edges[&e];
                let other = if a == old { b } else { a };
                if other == u || other == v {
                    // u-v copy: drop it entirely
                    self.edges.remove(&e);
                    if let Some(inc) = self.incidence.get_mut(&other) {
                        inc.remove(&e);
                    }
                    continue;
                }
                self.edges.insert(e, (merged.min(other), merged.max(other)));
                self.incidence.get_mut(&merged).unwrap().insert(e);
                moved.insert(e);
            }
        }
        Ok(merged)
    }
}
