//! Recursive understanding: split off a well-separated part, solve it for
//! every profile, keep the vertices some answer touches and bypass the rest.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::VertexId;
use crate::graphops::{bypass, reduce_terminals, TerminalTrack};
use crate::model::{enumerate_profiles, BorderInstance, BorderOutput, MmcuInstance};
use crate::separations::{find_flower_separation, find_good_node_separation};

use super::highconn::solve_profiles;
use super::{SolveStats, SolverConfig};

/// A separator `Z*` and the part `V*` it cuts off.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecursionSplit {
    pub zstar: BTreeSet<VertexId>,
    pub vstar: BTreeSet<VertexId>,
}

/// A good node separation (the side with at most `k+l` border terminals),
/// else a flower separation (the union of its petals), with terminals
/// undeletable.
pub fn find_split(ib: &BorderInstance, q: usize) -> Result<Option<RecursionSplit>> {
    let g = ib.graph();
    let kl = ib.base().k + ib.base().l;
    // both kinds need more than q deletable vertices on each side
    if g.vertex_count() < q.saturating_mul(2).saturating_add(3) {
        return Ok(None);
    }
    let terminals = ib.base().terminals();
    if let Some(sep) = find_good_node_separation(g, terminals, q, kl)? {
        let border_in = |side: &BTreeSet<VertexId>| side.intersection(ib.border()).count();
        let vstar = if border_in(&sep.v1) <= kl { sep.v1 } else { sep.v2 };
        return Ok(Some(RecursionSplit { zstar: sep.z, vstar }));
    }
    Ok(find_flower_separation(g, terminals, ib.border(), q, kl)?.map(|f| RecursionSplit {
        vstar: f.petal_union(),
        zstar: f.z,
    }))
}

/// `(G[W], T ∩ W, R|W, k, l, (T_b ∪ Z_W) ∩ W)` with `Z_W = N(V*)` and
/// `W = V* ∪ Z_W`.
pub fn build_sub_instance(ib: &BorderInstance, split: &RecursionSplit) -> Result<BorderInstance> {
    let base = ib.base();
    let g = ib.graph();
    let kl = base.k + base.l;
    let fail = |msg: String| Err(Error::Precondition(msg));
    if split.zstar.len() > kl {
        return fail(format!("separator of size {} exceeds k+l = {kl}", split.zstar.len()));
    }
    if split.zstar.iter().any(|v| base.is_terminal(*v)) {
        return fail("separator contains a terminal".into());
    }
    if !split.zstar.is_disjoint(&split.vstar) {
        return fail("separator meets the separated part".into());
    }
    if split.vstar.intersection(ib.border()).count() > kl {
        return fail("separated part holds more than k+l border terminals".into());
    }
    let zw = g.neighborhood_of_set(&split.vstar)?;
    if !zw.is_subset(&split.zstar) {
        return fail("separated part has neighbours outside the separator".into());
    }
    let w: BTreeSet<VertexId> = split.vstar.union(&zw).copied().collect();
    let terminals: BTreeSet<VertexId> = base.terminals().intersection(&w).copied().collect();
    let border: BTreeSet<VertexId> = ib.border().union(&zw).filter(|v| w.contains(v)).copied().collect();
    let sub = MmcuInstance::new(g.induced_subgraph(&w)?, base.relation().restrict(&terminals), base.k, base.l)?;
    BorderInstance::new(sub, border)
}

/// `T_b*` plus every vertex some non-⊥ answer deletes or touches with a
/// deleted edge.
pub fn affected_union(ib_star: &BorderInstance, out: &BorderOutput) -> Result<BTreeSet<VertexId>> {
    let mut u = ib_star.border().clone();
    for sol in out.values().flatten() {
        u.extend(sol.affected_vertices(ib_star.graph())?);
    }
    Ok(u)
}

pub(crate) fn solve_recursive(
    ib: &BorderInstance,
    cfg: &SolverConfig,
    stats: &mut SolveStats,
    depth: usize,
) -> Result<BorderOutput> {
    let profiles = enumerate_profiles(ib);
    let (k, l) = (ib.base().k, ib.base().l);
    let q = cfg.q_eff(&cfg.thresholds(k, l));
    let mut cur = ib.clone();
    let mut track = TerminalTrack::new(ib.base().terminals());
    stats.max_depth = stats.max_depth.max(depth);

    loop {
        if !cur.graph().is_connected() {
            stats.stalled += 1;
            break;
        }
        let Some(split) = find_split(&cur, q)? else { break };
        let sub = build_sub_instance(&cur, &split)?;
        if sub.graph().vertex_count() >= cur.graph().vertex_count() {
            return Err(Error::Audit("recursive call on a graph that is not smaller".into()));
        }
        stats.recursive_calls += 1;
        let sub_out = solve_recursive(&sub, cfg, stats, depth + 1)?;
        let affected = affected_union(&sub, &sub_out)?;
        let before = (cur.graph().vertex_count(), cur.base().l);
        for &v in &split.vstar {
            if !cur.base().is_terminal(v) && !affected.contains(&v) {
                *cur.base_mut() = bypass(cur.base(), v)?;
                stats.bypassed += 1;
            }
        }
        let scope: BTreeSet<VertexId> = split.vstar.iter().copied().filter(|v| cur.base().is_terminal(*v)).collect();
        if !reduce_terminals(cur.base_mut(), Some(scope), &mut track)? {
            return Ok(profiles.into_iter().map(|p| (p, None)).collect());
        }
        if (cur.graph().vertex_count(), cur.base().l) == before {
            stats.stalled += 1;
            break;
        }
    }
    stats.phase_entries += 1;
    solve_profiles(ib, &cur, track, &profiles, cfg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{EdgeId, MultiGraph};
    use crate::model::{MixedSolution, Partition, Profile};

    fn v(i: usize) -> VertexId {
        VertexId(i)
    }

    fn set(ids: &[usize]) -> BTreeSet<VertexId> {
        ids.iter().map(|&i| v(i)).collect()
    }

    fn graph(n: usize, edges: &[(usize, usize)]) -> MultiGraph {
        let mut g = MultiGraph::with_vertices(n);
        for &(a, b) in edges {
            g.add_edge(v(a), v(b)).unwrap();
        }
        g
    }

    #[test]
    fn pendant_subtree() {
        // terminal 0 - c1 - subtree {2, 3, 4}
        let g = graph(5, &[(0, 1), (1, 2), (2, 3), (2, 4)]);
        let inst = MmcuInstance::new(g, Partition::singletons([v(0), v(3)]), 1, 0).unwrap();
        let ib = BorderInstance::unbordered(inst).unwrap();
        let split = RecursionSplit { zstar: set(&[1]), vstar: set(&[2, 3, 4]) };
        let sub = build_sub_instance(&ib, &split).unwrap();
        assert_eq!(sub.graph().vertex_set(), set(&[1, 2, 3, 4]));
        assert_eq!(sub.border(), &set(&[1]));
        assert_eq!(sub.base().terminals(), &set(&[3]));
        assert_eq!((sub.base().k, sub.base().l), (1, 0));

        let bad = RecursionSplit { zstar: BTreeSet::new(), vstar: set(&[2, 3, 4]) };
        assert!(build_sub_instance(&ib, &bad).is_err());
    }

    #[test]
    fn affected_sets() {
        let g = graph(3, &[(0, 1), (1, 2)]);
        let inst = MmcuInstance::new(g, Partition::singletons([v(0)]), 1, 1).unwrap();
        let ib = BorderInstance::new(inst, set(&[2])).unwrap();
        let p = |i: usize| Profile {
            deleted: BTreeSet::new(),
            outside: Partition::default(),
            relation: Partition::singletons([v(0), v(2)]),
            k_cap: i,
            l_cap: 0,
        };
        let mut out = BorderOutput::new();
        out.insert(p(0), None);
        assert_eq!(affected_union(&ib, &out).unwrap(), set(&[2]));
        out.insert(p(1), Some(MixedSolution::new([v(1)], [])));
        assert_eq!(affected_union(&ib, &out).unwrap(), set(&[1, 2]));
        out.insert(p(1), Some(MixedSolution::new([], [EdgeId(0)])));
        assert_eq!(affected_union(&ib, &out).unwrap(), set(&[0, 1, 2]));
    }

    #[test]
    fn split_on_long_path() {
        // 0 - 1 - 2 - 3 - 4 - 5 - 6, terminals at both ends
        let g = graph(7, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6)]);
        let inst = MmcuInstance::new(g, Partition::singletons([v(0), v(6)]), 1, 0).unwrap();
        let ib = BorderInstance::unbordered(inst).unwrap();
        let split = find_split(&ib, 1).unwrap().unwrap();
        assert_eq!(split.zstar, set(&[3]));
        assert_eq!(split.vstar, set(&[0, 1, 2]));
        assert!(find_split(&ib, 3).unwrap().is_none());
    }
}
