//! Solution-preserving surgery: bypassing, forced edges, terminal
//! identification, twin-terminal deletion and parallel-copy pruning.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::graph::{EdgeId, VertexId};
use crate::model::MmcuInstance;

/// Deletes the non-terminal `v` and joins every pair of its former
/// neighbours, topping each pair up to `l + 1` parallel copies.
///
/// With fewer copies a solution of the new instance could cut the only
/// link between two neighbours that `v` used to connect.
pub fn bypass(inst: &MmcuInstance, v: VertexId) -> Result<MmcuInstance> {
    if inst.is_terminal(v) {
        return Err(Error::Precondition(format!("cannot bypass terminal {v}")));
    }
    let mut out = inst.clone();
    let nbrs: Vec<VertexId> = out.graph().neighbors(v)?.into_iter().collect();
    out.graph_mut().remove_vertex(v)?;
    let want = inst.l + 1;
    for (i, &a) in nbrs.iter().enumerate() {
        for &b in &nbrs[i + 1..] {
            for _ in out.graph().multiplicity(a, b)..want {
                out.graph_mut().add_edge(a, b)?;
            }
        }
    }
    Ok(out)
}

/// Deletes every copy joining terminals of different classes, paying one unit
/// of `l` per copy. `None` when the budget runs out.
pub fn force_edge_rule(inst: &MmcuInstance) -> Option<(MmcuInstance, Vec<EdgeId>)> {
    let mut out = inst.clone();
    let mut forced = Vec::new();
    while let Some(e) = inter_class_edge(&out, None) {
        if out.l == 0 {
            return None;
        }
        out.graph_mut().remove_edge(e).expect("edge is live");
        out.l -= 1;
        forced.push(e);
    }
    Some((out, forced))
}

/// Whether `u` and `v` may be identified: distinct related terminals that are
/// adjacent or share more than `k + l` neighbours.
pub fn can_identify(inst: &MmcuInstance, u: VertexId, v: VertexId) -> bool {
    if u == v || !inst.relation().related(u, v) {
        return false;
    }
    let g = inst.graph();
    if g.adjacent(u, v) {
        return true;
    }
    match (g.neighbors(u), g.neighbors(v)) {
        (Ok(a), Ok(b)) => a.intersection(&b).count() > inst.k + inst.l,
        _ => false,
    }
}

/// Replaces `u` and `v` by a fresh terminal of their class. Returns the new
/// instance and the fresh vertex.
pub fn identify_terminals(inst: &MmcuInstance, u: VertexId, v: VertexId) -> Result<(MmcuInstance, VertexId)> {
    if !can_identify(inst, u, v) {
        return Err(Error::Precondition(format!("{u} and {v} cannot be identified")));
    }
    let mut out = inst.clone();
    let x = out.graph_mut().identify(u, v)?;
    let relation = inst
        .relation()
        .map_elements(|w| Some(if w == u || w == v { x } else { w }))?;
    out.set_relation(relation);
    Ok((out, x))
}

/// Groups of more than `l + 2` same-class terminals with one common
/// neighbourhood free of terminals. Each group keeps its `l + 2` lowest ids;
/// the rest are returned.
fn redundant_terminals(inst: &MmcuInstance, scope: Option<&BTreeSet<VertexId>>) -> Vec<VertexId> {
    let g = inst.graph();
    let mut groups: BTreeMap<(usize, Vec<VertexId>), Vec<VertexId>> = BTreeMap::new();
    for &t in inst.terminals() {
        if scope.is_some_and(|s| !s.contains(&t)) {
            continue;
        }
        let nbrs = g.neighbors(t).expect("terminal is live");
        if nbrs.iter().any(|w| inst.is_terminal(*w)) {
            continue;
        }
        let class = inst.relation().class_of(t).expect("terminal has a class");
        groups.entry((class, nbrs.into_iter().collect())).or_default().push(t);
    }
    groups
        .into_values()
        .flat_map(|group| group.into_iter().skip(inst.l + 2))
        .collect()
}

fn delete_terminals(inst: &mut MmcuInstance, gone: &[VertexId]) {
    for &t in gone {
        inst.graph_mut().remove_vertex(t).expect("terminal is live");
    }
    let keep: BTreeSet<VertexId> = inst.terminals().iter().copied().filter(|t| !gone.contains(t)).collect();
    let relation = inst.relation().restrict(&keep);
    inst.set_relation(relation);
}

/// Deletes all but `l + 2` terminals of every twin group (same class,
/// identical terminal-free neighbourhoods). Returns the deleted terminals.
pub fn delete_redundant_terminals(inst: &MmcuInstance) -> (MmcuInstance, Vec<VertexId>) {
    let mut out = inst.clone();
    let gone = redundant_terminals(inst, None);
    delete_terminals(&mut out, &gone);
    (out, gone)
}

/// Keeps at most `l + 1` copies (the lowest ids) of every endpoint pair.
/// Returns the removed copies.
pub fn prune_parallel(inst: &MmcuInstance) -> (MmcuInstance, Vec<EdgeId>) {
    let mut out = inst.clone();
    let mut seen: BTreeMap<(VertexId, VertexId), usize> = BTreeMap::new();
    let mut removed = Vec::new();
    for (e, a, b) in inst.graph().edges() {
        let count = seen.entry((a, b)).or_default();
        *count += 1;
        if *count > inst.l + 1 {
            removed.push(e);
        }
    }
    for &e in &removed {
        out.graph_mut().remove_edge(e).expect("edge is live");
    }
    (out, removed)
}

fn inter_class_edge(inst: &MmcuInstance, scope: Option<&BTreeSet<VertexId>>) -> Option<EdgeId> {
    let inside = |v: VertexId| inst.is_terminal(v) && scope.is_none_or(|s| s.contains(&v));
    inst.graph()
        .edges()
        .find(|&(_, a, b)| inside(a) && inside(b) && !inst.relation().related(a, b))
        .map(|(e, _, _)| e)
}

fn identifiable_pair(inst: &MmcuInstance, scope: Option<&BTreeSet<VertexId>>) -> Option<(VertexId, VertexId)> {
    let pool: Vec<VertexId> = inst
        .terminals()
        .iter()
        .copied()
        .filter(|t| scope.is_none_or(|s| s.contains(t)))
        .collect();
    for (i, &u) in pool.iter().enumerate() {
        for &v in &pool[i + 1..] {
            if can_identify(inst, u, v) {
                return Some((u, v));
            }
        }
    }
    None
}

/// How the terminal rules changed an instance: where every original terminal
/// went (`None` once deleted) and which edges were forced into the solution.
#[derive(Clone, Debug, Default)]
pub(crate) struct TerminalTrack {
    pub map: BTreeMap<VertexId, Option<VertexId>>,
    pub forced: Vec<EdgeId>,
}

impl TerminalTrack {
    pub fn new(terminals: &BTreeSet<VertexId>) -> Self {
        Self {
            map: terminals.iter().map(|&t| (t, Some(t))).collect(),
            forced: Vec::new(),
        }
    }

    fn redirect(&mut self, from: &[VertexId], to: Option<VertexId>) {
        for target in self.map.values_mut() {
            if target.is_some_and(|t| from.contains(&t)) {
                *target = to;
            }
        }
    }
}

/// Applies forced-edge deletion, identification and twin deletion
/// exhaustively to the terminals in `scope` (all terminals when `None`).
/// Returns false when forced edges exceed the budget.
pub(crate) fn reduce_terminals(
    inst: &mut MmcuInstance,
    mut scope: Option<BTreeSet<VertexId>>,
    track: &mut TerminalTrack,
) -> Result<bool> {
    loop {
        while let Some(e) = inter_class_edge(inst, scope.as_ref()) {
            if inst.l == 0 {
                return Ok(false);
            }
            inst.graph_mut().remove_edge(e)?;
            inst.l -= 1;
            track.forced.push(e);
        }
        if let Some((u, v)) = identifiable_pair(inst, scope.as_ref()) {
            let (next, x) = identify_terminals(inst, u, v)?;
            *inst = next;
            if let Some(s) = scope.as_mut() {
                s.remove(&u);
                s.remove(&v);
                s.insert(x);
            }
            track.redirect(&[u, v], Some(x));
            continue;
        }
        let gone = redundant_terminals(inst, scope.as_ref());
        if gone.is_empty() {
            return Ok(true);
        }
        delete_terminals(inst, &gone);
        track.redirect(&gone, None);
    }
}
