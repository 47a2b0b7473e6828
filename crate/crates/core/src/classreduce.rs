//! Class-count preprocessing: the forced-vertex rule, the class bound, and
//! the split into connected components.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::error::{Error, Result};
use crate::graph::VertexId;
use crate::model::{MixedSolution, MmcuInstance};

#[derive(Clone, Debug)]
struct Arc {
    to: usize,
    cap: u32,
}

/// Unit-capacity network for counting paths out of one vertex `v`.
///
/// Every vertex other than `v` is split into an in-half and an out-half
/// joined by a unit arc, so paths share no vertex except `v`. Each terminal's
/// out-half feeds an aggregator node of its class, and each aggregator has a
/// unit arc to the super-sink, so every unit of flow ends at a different
/// class. Paths may pass through terminals.
#[derive(Clone, Debug)]
pub struct FlowNetwork {
    arcs: Vec<Arc>,
    adj: Vec<Vec<usize>>,
    source: usize,
    sink: usize,
}

impl FlowNetwork {
    pub fn build(inst: &MmcuInstance, v: VertexId) -> Result<Self> {
        let g = inst.graph();
        g.check_vertex(v)?;
        let vertices: Vec<VertexId> = g.vertices().collect();
        let slot: BTreeMap<VertexId, usize> = vertices.iter().enumerate().map(|(i, &u)| (u, i)).collect();
        let n = vertices.len();
        let classes = inst.relation().len();
        // in(u) = 2i, out(u) = 2i + 1, then aggregators, then the sink.
        let source = 2 * slot[&v];
        let sink = 2 * n + classes;
        let mut net = Self {
            arcs: Vec::new(),
            adj: vec![Vec::new(); sink + 1],
            source,
            sink,
        };
        for (i, &u) in vertices.iter().enumerate() {
            if u == v {
                continue;
            }
            net.add_arc(2 * i, 2 * i + 1);
            if let Some(c) = inst.relation().class_of(u) {
                net.add_arc(2 * i + 1, 2 * n + c);
            }
        }
        for c in 0..classes {
            net.add_arc(2 * n + c, sink);
        }
        for (i, &u) in vertices.iter().enumerate() {
            for w in g.neighbors(u)? {
                if w == v {
                    continue;
                }
                let from = if u == v { source } else { 2 * i + 1 };
                net.add_arc(from, 2 * slot[&w]);
            }
        }
        Ok(net)
    }

    fn add_arc(&mut self, from: usize, to: usize) {
        self.adj[from].push(self.arcs.len());
        self.arcs.push(Arc { to, cap: 1 });
        self.adj[to].push(self.arcs.len());
        self.arcs.push(Arc { to: from, cap: 0 });
    }

    /// Maximum flow from the source, stopping once `limit` is reached.
    pub fn max_flow(&mut self, limit: usize) -> usize {
        let mut flow = 0;
        while flow < limit && self.augment() {
            flow += 1;
        }
        flow
    }

    fn augment(&mut self) -> bool {
        let mut via = vec![usize::MAX; self.adj.len()];
        let mut seen = vec![false; self.adj.len()];
        seen[self.source] = true;
        let mut queue = VecDeque::from([self.source]);
        while let Some(x) = queue.pop_front() {
            if x == self.sink {
                break;
            }
            for &a in &self.adj[x] {
                let to = self.arcs[a].to;
                if self.arcs[a].cap > 0 && !seen[to] {
                    seen[to] = true;
                    via[to] = a;
                    queue.push_back(to);
                }
            }
        }
        if !seen[self.sink] {
            return false;
        }
        let mut x = self.sink;
        while x != self.source {
            let a = via[x];
            self.arcs[a].cap -= 1;
            self.arcs[a ^ 1].cap += 1;
            x = self.arcs[a ^ 1].to;
        }
        true
    }
}

/// Whether `v` has `k + l + 2` paths to terminals of pairwise different
/// classes that share no vertex but `v`. Such a vertex lies in every solution.
pub fn forced_vertex_check(inst: &MmcuInstance, v: VertexId) -> Result<bool> {
    if inst.is_terminal(v) {
        return Err(Error::Precondition(format!("{v} is a terminal")));
    }
    let need = inst.k + inst.l + 2;
    Ok(FlowNetwork::build(inst, v)?.max_flow(need) >= need)
}

/// Deletes forced vertices one at a time, restarting the scan after each
/// deletion. Returns the reduced instance and the deleted vertices, or `None`
/// when more than `k` vertices are forced.
pub fn apply_step1(inst: &MmcuInstance) -> Result<Option<(MmcuInstance, Vec<VertexId>)>> {
    let mut cur = inst.clone();
    let mut deleted = Vec::new();
    'restart: loop {
        let candidates: Vec<VertexId> = cur.graph().vertices().filter(|v| !cur.is_terminal(*v)).collect();
        for v in candidates {
            if forced_vertex_check(&cur, v)? {
                if cur.k == 0 {
                    return Ok(None);
                }
                cur.graph_mut().remove_vertex(v)?;
                cur.k -= 1;
                deleted.push(v);
                continue 'restart;
            }
        }
        return Ok(Some((cur, deleted)));
    }
}

/// False when two related terminals lie in different components, or one
/// component meets more than `max(1, (k+l)(k+l+1))` classes. With nothing
/// to delete a component can still hold a single class.
pub fn apply_step2(inst: &MmcuInstance) -> bool {
    let kl = inst.k + inst.l;
    let bound = (kl * (kl + 1)).max(1);
    let comps = inst.graph().connected_components();
    let comp_of = |v: VertexId| comps.iter().position(|c| c.contains(&v));
    for class in inst.relation().classes() {
        let first = comp_of(class[0]);
        if class.iter().any(|&v| comp_of(v) != first) {
            return false;
        }
    }
    comps.iter().all(|c| {
        let classes: BTreeSet<usize> = c.iter().filter_map(|&v| inst.relation().class_of(v)).collect();
        classes.len() <= bound
    })
}

/// Solves each connected component under every budget split and combines
/// them by dynamic programming over `(component, k used, l used)`. `solve`
/// receives the component sub-instance with budgets `(k', l')`. Components
/// without terminals are skipped.
pub fn decompose_components(
    inst: &MmcuInstance,
    mut solve: impl FnMut(&MmcuInstance) -> Result<Option<MixedSolution>>,
) -> Result<Option<MixedSolution>> {
    let (k, l) = (inst.k, inst.l);
    let mut tables = Vec::new();
    for comp in inst.graph().connected_components() {
        let terminals: BTreeSet<VertexId> = comp.iter().copied().filter(|v| inst.is_terminal(*v)).collect();
        if terminals.is_empty() {
            continue;
        }
        let sub = MmcuInstance::new(
            inst.graph().induced_subgraph(&comp)?,
            inst.relation().restrict(&terminals),
            k,
            l,
        )?;
        let mut table = vec![vec![None; l + 1]; k + 1];
        for (kk, row) in table.iter_mut().enumerate() {
            for (ll, cell) in row.iter_mut().enumerate() {
                *cell = solve(&sub.with_budgets(kk, ll))?;
            }
        }
        tables.push(table);
    }
    // reach[kk][ll]: partial solution using exactly those totals.
    let mut reach: Vec<Vec<Option<MixedSolution>>> = vec![vec![None; l + 1]; k + 1];
    reach[0][0] = Some(MixedSolution::empty());
    for table in &tables {
        let mut next: Vec<Vec<Option<MixedSolution>>> = vec![vec![None; l + 1]; k + 1];
        for k0 in 0..=k {
            for l0 in 0..=l {
                let Some(base) = &reach[k0][l0] else { continue };
                for (kk, row) in table.iter().enumerate().take(k - k0 + 1) {
                    for (ll, cell) in row.iter().enumerate().take(l - l0 + 1) {
                        let Some(part) = cell else { continue };
                        let slot = &mut next[k0 + kk][l0 + ll];
                        if slot.is_none() {
                            let mut merged = base.clone();
                            merged.vertices.extend(part.vertices.iter().copied());
                            merged.edges.extend(part.edges.iter().copied());
                            *slot = Some(merged);
                        }
                    }
                }
            }
        }
        reach = next;
    }
    Ok(reach.into_iter().flatten().flatten().next())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::MultiGraph;
    use crate::model::{is_solution, Partition};
    use crate::oracle::oracle_solve;

    fn v(i: usize) -> VertexId {
        VertexId(i)
    }

    fn star(leaves: usize, classes: Partition, k: usize, l: usize) -> MmcuInstance {
        let mut g = MultiGraph::with_vertices(leaves + 1);
        for i in 1..=leaves {
            g.add_edge(v(0), v(i)).unwrap();
        }
        MmcuInstance::new(g, classes, k, l).unwrap()
    }

    #[test]
    fn forced_center_of_star() {
        let distinct = star(2, Partition::singletons([v(1), v(2)]), 0, 0);
        assert!(forced_vertex_check(&distinct, v(0)).unwrap());
        let same = star(2, Partition::new([vec![v(1), v(2)]]).unwrap(), 0, 0);
        assert!(!forced_vertex_check(&same, v(0)).unwrap());
        let three = star(3, Partition::singletons([v(1), v(2), v(3)]), 1, 0);
        assert!(forced_vertex_check(&three, v(0)).unwrap());
        assert!(forced_vertex_check(&three, v(1)).is_err());
    }

    #[test]
    fn paths_may_run_through_terminals() {
        // v0 - t1 - t2 and v0 - w3 - t4, with t1 and t4 in one class.
        let mut g = MultiGraph::with_vertices(5);
        g.add_edge(v(0), v(1)).unwrap();
        g.add_edge(v(1), v(2)).unwrap();
        g.add_edge(v(0), v(3)).unwrap();
        g.add_edge(v(3), v(4)).unwrap();
        let rel = Partition::new([vec![v(1), v(4)], vec![v(2)]]).unwrap();
        let inst = MmcuInstance::new(g, rel, 0, 0).unwrap();
        assert!(forced_vertex_check(&inst, v(0)).unwrap());
    }

    #[test]
    fn step1_examples() {
        let inst = star(3, Partition::singletons([v(1), v(2), v(3)]), 1, 0);
        let (reduced, deleted) = apply_step1(&inst).unwrap().unwrap();
        assert_eq!(deleted, vec![v(0)]);
        assert_eq!(reduced.k, 0);
        assert!(oracle_solve(&reduced).is_some());

        // Two paths do not force the centre when k + l + 2 = 3.
        let two = star(2, Partition::singletons([v(1), v(2)]), 1, 0);
        assert!(apply_step1(&two).unwrap().unwrap().1.is_empty());

        let forced_no_budget = star(2, Partition::singletons([v(1), v(2)]), 0, 0);
        assert!(apply_step1(&forced_no_budget).unwrap().is_none());

        let quiet = star(2, Partition::new([vec![v(1), v(2)]]).unwrap(), 0, 0);
        let (same, deleted) = apply_step1(&quiet).unwrap().unwrap();
        assert!(deleted.is_empty());
        assert_eq!(same, quiet);
    }

    #[test]
    fn step2_examples() {
        let mut g = MultiGraph::with_vertices(2);
        g.add_vertex();
        let inst = MmcuInstance::new(g, Partition::new([vec![v(0), v(1)]]).unwrap(), 1, 1).unwrap();
        assert!(!apply_step2(&inst));

        let seven = star(7, Partition::singletons((1..=7).map(v)), 1, 1);
        assert!(!apply_step2(&seven));
        let six = star(6, Partition::singletons((1..=6).map(v)), 1, 1);
        assert!(apply_step2(&six));

        let one_class = star(2, Partition::new([vec![v(1), v(2)]]).unwrap(), 0, 0);
        assert!(apply_step2(&one_class));
        let two_classes = star(2, Partition::singletons([v(1), v(2)]), 0, 0);
        assert!(!apply_step2(&two_classes));
    }

    fn two_paths() -> MmcuInstance {
        // s0 - a1 - t2 and s3 - b4 - t5, also a pendant edge at t5 to t6.
        let mut g = MultiGraph::with_vertices(7);
        g.add_edge(v(0), v(1)).unwrap();
        g.add_edge(v(1), v(2)).unwrap();
        g.add_edge(v(3), v(4)).unwrap();
        g.add_edge(v(4), v(5)).unwrap();
        MmcuInstance::new(g, Partition::singletons([v(0), v(2), v(3), v(5)]), 2, 0).unwrap()
    }

    #[test]
    fn components_add_up() {
        let inst = two_paths();
        let sol = decompose_components(&inst, |sub| Ok(oracle_solve(sub))).unwrap().unwrap();
        assert!(is_solution(&inst, &sol).unwrap());
        assert!(decompose_components(&inst.with_budgets(1, 0), |sub| Ok(oracle_solve(sub)))
            .unwrap()
            .is_none());

        let mut g = MultiGraph::with_vertices(6);
        g.add_edge(v(0), v(1)).unwrap();
        g.add_edge(v(1), v(2)).unwrap();
        g.add_edge(v(3), v(4)).unwrap();
        let inst = MmcuInstance::new(g, Partition::singletons([v(0), v(2), v(3), v(4)]), 1, 1).unwrap();
        let sol = decompose_components(&inst, |sub| Ok(oracle_solve(sub))).unwrap().unwrap();
        assert!(is_solution(&inst, &sol).unwrap());
    }

    #[test]
    fn single_component_matches_direct_solve() {
        let inst = star(2, Partition::singletons([v(1), v(2)]), 1, 0);
        let direct = oracle_solve(&inst);
        let split = decompose_components(&inst, |sub| Ok(oracle_solve(sub))).unwrap();
        assert_eq!(direct.is_some(), split.is_some());
    }
}
