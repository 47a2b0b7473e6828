//! The high-connectivity phase: terminal reduction, branching over a covering
//! family and reading candidate solutions off each branch.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::ops::ControlFlow;

use fixedbitset::FixedBitSet;
use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::dsu::Dsu;
use crate::error::{Error, Result};
use crate::graph::{EdgeId, MultiGraph, VertexId};
use crate::graphops::{prune_parallel, reduce_terminals, TerminalTrack};
use crate::model::{
    check_border_solution, minimalize_border, BorderInstance, MixedSolution, Profile, SolutionCheck,
};
use crate::oracle::for_each_subset_upto;
use crate::setfamily::{build_family, family_size, SetFamily};

use super::{SolverConfig, FAMILY_CAP};

/// The vertices of `S(T^big)` together with the edges of its components.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Region {
    pub vertices: BTreeSet<VertexId>,
    pub edges: BTreeSet<EdgeId>,
}

impl Region {
    /// `vertices` with every copy of `g` joining two of them.
    pub fn induced(g: &MultiGraph, vertices: BTreeSet<VertexId>) -> Self {
        let edges = g
            .edges()
            .filter(|(_, a, b)| vertices.contains(a) && vertices.contains(b))
            .map(|(e, _, _)| e)
            .collect();
        Self { vertices, edges }
    }
}

/// `A_{G,X}(region)`: copies with an endpoint in the region that are not
/// region edges and not incident to `X`.
pub fn boundary_edges(g: &MultiGraph, x: &BTreeSet<VertexId>, region: &Region) -> BTreeSet<EdgeId> {
    g.edges()
        .filter(|(e, a, b)| {
            (region.vertices.contains(a) || region.vertices.contains(b))
                && !region.edges.contains(e)
                && !x.contains(a)
                && !x.contains(b)
        })
        .map(|(e, _, _)| e)
        .collect()
}

/// Components of `g - sol` as (vertices, edges).
fn components_after(g: &MultiGraph, sol: &MixedSolution) -> Vec<(Vec<VertexId>, Vec<EdgeId>)> {
    let mut dsu = Dsu::new(g.vertex_id_bound());
    let live = |a: &VertexId, b: &VertexId, e: &EdgeId| {
        !sol.vertices.contains(a) && !sol.vertices.contains(b) && !sol.edges.contains(e)
    };
    for (e, a, b) in g.edges() {
        if live(&a, &b, &e) {
            dsu.union(a.0, b.0);
        }
    }
    let mut comps: BTreeMap<usize, (Vec<VertexId>, Vec<EdgeId>)> = BTreeMap::new();
    for v in g.vertices().filter(|v| !sol.vertices.contains(v)) {
        comps.entry(dsu.find(v.0)).or_default().0.push(v);
    }
    for (e, a, b) in g.edges() {
        if live(&a, &b, &e) {
            comps.get_mut(&dsu.find(a.0)).expect("endpoint has a component").1.push(e);
        }
    }
    comps.into_values().collect()
}

/// `S` is disjoint from the solution and holds every non-terminal vertex and
/// every edge of each component of `g - sol` with at most `q` non-terminals.
pub fn interrogates(
    g: &MultiGraph,
    terminals: &BTreeSet<VertexId>,
    sol: &MixedSolution,
    s_vertices: &BTreeSet<VertexId>,
    s_edges: &BTreeSet<EdgeId>,
    q: usize,
) -> bool {
    if !sol.vertices.is_disjoint(s_vertices) || !sol.edges.is_disjoint(s_edges) {
        return false;
    }
    components_after(g, sol).into_iter().all(|(vs, es)| {
        let inner: Vec<&VertexId> = vs.iter().filter(|v| !terminals.contains(v)).collect();
        inner.len() > q
            || (inner.into_iter().all(|v| s_vertices.contains(v)) && es.iter().all(|e| s_edges.contains(e)))
    })
}

/// Branching machinery over one reduced instance.
pub(crate) struct Phase<'a> {
    ib: &'a BorderInstance,
    q: usize,
    vertices: Vec<VertexId>,
    edges: Vec<(EdgeId, VertexId, VertexId)>,
    vpos: HashMap<VertexId, usize>,
    epos: HashMap<EdgeId, usize>,
    family: SetFamily,
}

impl<'a> Phase<'a> {
    /// Universe: non-terminal vertices in id order, then edges in id order.
    pub fn new(ib: &'a BorderInstance, q: usize, a: &BigUint, b: usize) -> Result<Self> {
        let g = ib.graph();
        let vertices: Vec<VertexId> = g.vertices().filter(|v| !ib.base().is_terminal(*v)).collect();
        let edges: Vec<(EdgeId, VertexId, VertexId)> = g.edges().collect();
        let n = vertices.len() + edges.len();
        let a = a.to_usize().unwrap_or(usize::MAX).min(n);
        let size = family_size(n, a, b);
        if size > FAMILY_CAP {
            return Err(Error::SizeGuard { candidates: size, cap: FAMILY_CAP });
        }
        let vpos = vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let epos = edges.iter().enumerate().map(|(i, &(e, _, _))| (e, vertices.len() + i)).collect();
        Ok(Self {
            ib,
            q,
            vertices,
            edges,
            vpos,
            epos,
            family: build_family(n, a, b),
        })
    }

    fn universe(&self) -> usize {
        self.vertices.len() + self.edges.len()
    }

    /// Universe bits of the non-terminal vertices and edges of every small
    /// component of `G - sol`.
    fn required(&self, sol: &MixedSolution) -> FixedBitSet {
        let mut req = FixedBitSet::with_capacity(self.universe());
        for (vs, es) in components_after(self.ib.graph(), sol) {
            let inner: Vec<usize> = vs.iter().filter_map(|v| self.vpos.get(v).copied()).collect();
            if inner.len() <= self.q {
                req.extend(inner);
                req.extend(es.iter().map(|e| self.epos[e]));
            }
        }
        req
    }

    fn sol_bits(&self, sol: &MixedSolution) -> FixedBitSet {
        let mut bits = FixedBitSet::with_capacity(self.universe());
        bits.extend(sol.vertices.iter().map(|v| self.vpos[v]));
        bits.extend(sol.edges.iter().map(|e| self.epos[e]));
        bits
    }

    /// Every `(X, F)` accepted in some branch for the shape of `p`, with the
    /// budgets of `p` as caps.
    pub fn candidates(&self, p: &Profile) -> Result<BTreeSet<MixedSolution>> {
        let mut out = BTreeSet::new();
        if p.deleted.len() > p.k_cap {
            return Ok(out);
        }
        let ib = self.ib;
        let g = ib.graph();
        let kl = ib.base().k + ib.base().l;
        let alive = p.relation.elements();
        let classes = p.relation.classes();
        // None: not a solution; Some(required bits, solution bits)
        let mut memo: HashMap<MixedSolution, Option<(FixedBitSet, FixedBitSet)>> = HashMap::new();
        let mut failure = None;

        for s in self.family.members() {
            let in_v = |v: &VertexId| alive.contains(v) || self.vpos.get(v).is_some_and(|&i| s.contains(i));
            let mut dsu = Dsu::new(g.vertex_id_bound());
            for &(e, a, b) in &self.edges {
                if s.contains(self.epos[&e]) && in_v(&a) && in_v(&b) {
                    dsu.union(a.0, b.0);
                }
            }
            for big in std::iter::once(None).chain((0..classes.len()).map(Some)) {
                let roots: BTreeSet<usize> = alive
                    .iter()
                    .filter(|v| big.is_none_or(|c| !classes[c].contains(v)))
                    .map(|v| dsu.find(v.0))
                    .collect();
                let mut region = Region::default();
                for v in g.vertices().filter(|v| in_v(v)) {
                    if roots.contains(&dsu.find(v.0)) {
                        region.vertices.insert(v);
                    }
                }
                for &(e, a, b) in &self.edges {
                    if s.contains(self.epos[&e])
                        && region.vertices.contains(&a)
                        && region.vertices.contains(&b)
                    {
                        region.edges.insert(e);
                    }
                }
                let nbhd = g.neighborhood_of_set(&region.vertices)?;
                if nbhd.len() > kl {
                    continue;
                }
                let pool: Vec<VertexId> = nbhd
                    .into_iter()
                    .filter(|v| !ib.base().is_terminal(*v) && !ib.border().contains(v))
                    .collect();
                let _ = for_each_subset_upto(pool.len(), p.k_cap - p.deleted.len(), |ys| {
                    let x: BTreeSet<VertexId> = p.deleted.iter().copied().chain(ys.iter().map(|&i| pool[i])).collect();
                    let f = boundary_edges(g, &x, &region);
                    if f.len() > p.l_cap {
                        return ControlFlow::Continue(());
                    }
                    let sol = MixedSolution { vertices: x, edges: f };
                    if out.contains(&sol) {
                        return ControlFlow::Continue(());
                    }
                    let entry = match memo.get(&sol) {
                        Some(entry) => entry.clone(),
                        None => {
                            let entry = match check_border_solution(ib, p, &sol) {
                                Ok(SolutionCheck::Valid) => Some((self.required(&sol), self.sol_bits(&sol))),
                                Ok(_) => None,
                                Err(e) => {
                                    failure = Some(e);
                                    return ControlFlow::Break(());
                                }
                            };
                            memo.insert(sol.clone(), entry.clone());
                            entry
                        }
                    };
                    if let Some((req, bits)) = entry {
                        if s.is_disjoint(&bits) && req.is_subset(s) {
                            out.insert(sol);
                        }
                    }
                    ControlFlow::Continue(())
                });
                if let Some(e) = failure.take() {
                    return Err(e);
                }
            }
        }
        Ok(out)
    }
}

/// The terminal rules on all terminals, then parallel pruning. `None` when
/// the forced edges exceed the edge budget.
pub(crate) fn reduce_all(
    ib: &BorderInstance,
    track: &mut TerminalTrack,
) -> Result<Option<BorderInstance>> {
    let mut base = ib.base().clone();
    if !reduce_terminals(&mut base, None, track)? {
        return Ok(None);
    }
    let (base, _) = prune_parallel(&base);
    Ok(Some(BorderInstance::new_unchecked(base, ib.border().clone())?))
}

/// The profile of the reduced instance matching `p`; `None` when the forced
/// edges already exceed its edge cap.
pub(crate) fn translate_profile(p: &Profile, track: &TerminalTrack) -> Result<Option<Profile>> {
    let Some(l_cap) = p.l_cap.checked_sub(track.forced.len()) else {
        return Ok(None);
    };
    let relation = p
        .relation
        .map_elements(|v| track.map.get(&v).copied().unwrap_or(Some(v)))?;
    Ok(Some(Profile {
        deleted: p.deleted.clone(),
        outside: p.outside.clone(),
        relation,
        k_cap: p.k_cap,
        l_cap,
    }))
}

/// Maps a solution of the reduced instance back: edges that only exist there
/// are dropped, forced edges are added, and the result is minimalized.
pub(crate) fn lift_solution(
    orig: &BorderInstance,
    p: &Profile,
    sol: &MixedSolution,
    track: &TerminalTrack,
) -> Result<MixedSolution> {
    let g = orig.graph();
    let lifted = MixedSolution::new(
        sol.vertices.iter().copied().filter(|v| g.contains_vertex(*v)),
        sol.edges
            .iter()
            .copied()
            .filter(|e| g.contains_edge(*e))
            .chain(track.forced.iter().copied()),
    );
    minimalize_border(orig, p, &lifted)
        .map_err(|e| Error::Audit(format!("lifted solution {lifted:?} for {p:?}: {e}")))
}

/// The reduced shape of `p` with the reduced instance's budgets as caps.
fn shape_key(p: &Profile, reduced: &BorderInstance) -> Profile {
    Profile {
        k_cap: reduced.base().k,
        l_cap: reduced.base().l,
        ..p.clone()
    }
}

/// Runs the phase for every profile of `orig`, where `cur` is `orig` after
/// the surgery recorded in `track`.
pub(crate) fn solve_profiles(
    orig: &BorderInstance,
    cur: &BorderInstance,
    mut track: TerminalTrack,
    profiles: &[Profile],
    cfg: &SolverConfig,
) -> Result<BTreeMap<Profile, Option<MixedSolution>>> {
    let mut out: BTreeMap<Profile, Option<MixedSolution>> = profiles.iter().map(|p| (p.clone(), None)).collect();
    let Some(reduced) = reduce_all(cur, &mut track)? else {
        return Ok(out);
    };
    let (k, l) = (orig.base().k, orig.base().l);
    let th = cfg.thresholds(k, l);
    let phase = Phase::new(&reduced, cfg.q_eff(&th), &th.family_a(), th.family_b())?;
    let mut by_shape: HashMap<Profile, BTreeSet<MixedSolution>> = HashMap::new();
    for p in profiles {
        let Some(tp) = translate_profile(p, &track)? else { continue };
        let key = shape_key(&tp, &reduced);
        if !by_shape.contains_key(&key) {
            by_shape.insert(key.clone(), phase.candidates(&key)?);
        }
        let pick = by_shape[&key]
            .iter()
            .find(|c| c.vertices.len() <= tp.k_cap && c.edges.len() <= tp.l_cap);
        if let Some(c) = pick {
            out.insert(p.clone(), Some(lift_solution(orig, p, c, &track)?));
        }
    }
    Ok(out)
}

/// The phase for a single profile, on an instance where no separation is
/// looked for.
pub fn high_connectivity_phase(
    ib: &BorderInstance,
    p: &Profile,
    cfg: &SolverConfig,
) -> Result<Option<MixedSolution>> {
    cfg.validate()?;
    let track = TerminalTrack::new(ib.base().terminals());
    let out = solve_profiles(ib, ib, track, std::slice::from_ref(p), cfg)?;
    Ok(out.into_values().next().flatten())
}
