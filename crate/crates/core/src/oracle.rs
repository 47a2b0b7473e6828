//! Exhaustive ground-truth solvers. Nothing here prunes beyond early exit.
//!
//! Candidates are visited in size-then-lexicographic order: deleted vertex
//! sets by size and then by sorted ids, and for each of them deleted edge
//! sets the same way. The first valid candidate is returned.

use std::collections::{BTreeSet, HashSet};
use std::ops::ControlFlow;

use crate::dsu::Dsu;
use crate::error::{Error, Result};
use crate::graph::{EdgeId, VertexId};
use crate::model::{is_border_solution, BorderInstance, MixedSolution, MmcuInstance, Profile};
use crate::reductions::BpvcInstance;

/// Default ceiling on the number of candidate pairs the guarded oracles visit.
pub const DEFAULT_CANDIDATE_CAP: u128 = 100_000_000;

fn binomial(n: usize, r: usize) -> u128 {
    if r > n {
        return 0;
    }
    let r = r.min(n - r);
    let mut acc: u128 = 1;
    for i in 0..r {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// `Σ_{i ≤ r} C(n, i)`.
pub fn binomial_prefix(n: usize, r: usize) -> u128 {
    (0..=r.min(n)).map(|i| binomial(n, i)).fold(0u128, u128::saturating_add)
}

/// Calls `f` on every `r`-subset of `0..n` in lexicographic order.
pub(crate) fn for_each_combination<B>(
    n: usize,
    r: usize,
    mut f: impl FnMut(&[usize]) -> ControlFlow<B>,
) -> ControlFlow<B> {
    if r > n {
        return ControlFlow::Continue(());
    }
    let mut idx: Vec<usize> = (0..r).collect();
    loop {
        f(&idx)?;
        let mut i = r;
        while i > 0 && idx[i - 1] == i - 1 + n - r {
            i -= 1;
        }
        if i == 0 {
            return ControlFlow::Continue(());
        }
        idx[i - 1] += 1;
        for j in i..r {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Calls `f` on every subset of `0..n` with at most `max` elements, by size
/// then lexicographically.
pub(crate) fn for_each_subset_upto<B>(
    n: usize,
    max: usize,
    mut f: impl FnMut(&[usize]) -> ControlFlow<B>,
) -> ControlFlow<B> {
    for r in 0..=max.min(n) {
        for_each_combination(n, r, &mut f)?;
    }
    ControlFlow::Continue(())
}

/// Dense-index view of an instance used by the enumeration loops.
struct Dense {
    deletable: Vec<VertexId>,
    edge_ids: Vec<EdgeId>,
    // endpoints as dense vertex indices
    ends: Vec<(usize, usize)>,
    // dense index of each deletable vertex
    deletable_idx: Vec<usize>,
    classes: Vec<Vec<usize>>,
    n: usize,
}

impl Dense {
    fn new(inst: &MmcuInstance) -> Self {
        let g = inst.graph();
        let all: Vec<VertexId> = g.vertices().collect();
        let index = |v: VertexId| all.binary_search(&v).unwrap();
        let deletable: Vec<VertexId> = all.iter().copied().filter(|v| !inst.is_terminal(*v)).collect();
        let deletable_idx = deletable.iter().map(|&v| index(v)).collect();
        let mut edge_ids = Vec::new();
        let mut ends = Vec::new();
        for (e, a, b) in g.edges() {
            edge_ids.push(e);
            ends.push((index(a), index(b)));
        }
        let classes = inst
            .relation()
            .classes()
            .iter()
            .map(|c| c.iter().map(|&v| index(v)).collect())
            .collect();
        Self {
            deletable,
            edge_ids,
            ends,
            deletable_idx,
            classes,
            n: all.len(),
        }
    }

    fn respects(&self, removed: &[bool], cut: &[bool]) -> bool {
        let mut dsu = Dsu::new(self.n);
        for (i, &(a, b)) in self.ends.iter().enumerate() {
            if !cut[i] && !removed[a] && !removed[b] {
                dsu.union(a, b);
            }
        }
        let mut roots = Vec::with_capacity(self.classes.len());
        for class in &self.classes {
            let root = dsu.find(class[0]);
            if class[1..].iter().any(|&v| dsu.find(v) != root) || roots.contains(&root) {
                return false;
            }
            roots.push(root);
        }
        true
    }

    fn solution(&self, xs: &[usize], fs: &[usize]) -> MixedSolution {
        MixedSolution::new(
            xs.iter().map(|&i| self.deletable[i]),
            fs.iter().map(|&i| self.edge_ids[i]),
        )
    }

    /// Visits every valid `(X, F)` within the budgets, in oracle order.
    fn for_each_solution<B>(
        &self,
        k: usize,
        l: usize,
        mut f: impl FnMut(&[usize], &[usize]) -> ControlFlow<B>,
    ) -> ControlFlow<B> {
        let mut removed = vec![false; self.n];
        let mut cut = vec![false; self.edge_ids.len()];
        for_each_subset_upto(self.deletable.len(), k, |xs| {
            for &i in xs {
                removed[self.deletable_idx[i]] = true;
            }
            let flow = for_each_subset_upto(self.edge_ids.len(), l, |fs| {
                for &i in fs {
                    cut[i] = true;
                }
                let ok = self.respects(&removed, &cut);
                for &i in fs {
                    cut[i] = false;
                }
                if ok {
                    f(xs, fs)
                } else {
                    ControlFlow::Continue(())
                }
            });
            for &i in xs {
                removed[self.deletable_idx[i]] = false;
            }
            flow
        })
    }
}

/// Number of candidate pairs the oracle may visit on `inst`.
pub fn candidate_count(inst: &MmcuInstance) -> u128 {
    let deletable = inst.graph().vertex_count() - inst.terminals().len();
    binomial_prefix(deletable, inst.k).saturating_mul(binomial_prefix(inst.graph().edge_count(), inst.l))
}

fn guard(candidates: u128, cap: u128) -> Result<()> {
    if candidates > cap {
        Err(Error::SizeGuard { candidates, cap })
    } else {
        Ok(())
    }
}

/// First valid solution in oracle order, or `None`. Unguarded: the caller
/// decides whether the instance is small enough.
pub fn oracle_solve(inst: &MmcuInstance) -> Option<MixedSolution> {
    let dense = Dense::new(inst);
    match dense.for_each_solution(inst.k, inst.l, |xs, fs| ControlFlow::Break(dense.solution(xs, fs))) {
        ControlFlow::Break(sol) => Some(sol),
        ControlFlow::Continue(()) => None,
    }
}

pub fn oracle_solve_guarded(inst: &MmcuInstance, cap: u128) -> Result<Option<MixedSolution>> {
    guard(candidate_count(inst), cap)?;
    Ok(oracle_solve(inst))
}

/// Every minimal solution of `inst`.
pub fn oracle_all_minimal(inst: &MmcuInstance, cap: u128) -> Result<BTreeSet<MixedSolution>> {
    guard(candidate_count(inst), cap)?;
    let dense = Dense::new(inst);
    let mut all: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
    let _ = dense.for_each_solution::<()>(inst.k, inst.l, |xs, fs| {
        all.push((xs.to_vec(), fs.to_vec()));
        ControlFlow::Continue(())
    });
    let lookup: HashSet<(Vec<usize>, Vec<usize>)> = all.iter().cloned().collect();
    let mut out = BTreeSet::new();
    for (xs, fs) in &all {
        let total = xs.len() + fs.len();
        let full = (1u64 << total) - 1;
        let has_smaller = (0..full).any(|keep| {
            let sx: Vec<usize> = xs
                .iter()
                .enumerate()
                .filter(|(i, _)| keep >> i & 1 == 1)
                .map(|(_, &x)| x)
                .collect();
            let sf: Vec<usize> = fs
                .iter()
                .enumerate()
                .filter(|(i, _)| keep >> (xs.len() + i) & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            lookup.contains(&(sx, sf))
        });
        if !has_smaller {
            out.insert(dense.solution(xs, fs));
        }
    }
    Ok(out)
}

/// First solution to `(I_b, P)` in oracle order: `X = X_b ∪ Y` with `Y` drawn
/// from the non-terminal, non-border vertices.
pub fn oracle_border_solve(ib: &BorderInstance, p: &Profile, cap: u128) -> Result<Option<MixedSolution>> {
    if p.deleted.len() > p.k_cap {
        return Ok(None);
    }
    let g = ib.graph();
    let free: Vec<VertexId> = g
        .vertices()
        .filter(|v| !ib.base().is_terminal(*v) && !ib.border().contains(v))
        .collect();
    let edges: Vec<EdgeId> = g.edge_ids().collect();
    let extra = p.k_cap - p.deleted.len();
    guard(
        binomial_prefix(free.len(), extra).saturating_mul(binomial_prefix(edges.len(), p.l_cap)),
        cap,
    )?;
    let mut found = None;
    let mut failure = None;
    let _ = for_each_subset_upto(free.len(), extra, |ys| {
        for_each_subset_upto(edges.len(), p.l_cap, |fs| {
            let sol = MixedSolution::new(
                p.deleted.iter().copied().chain(ys.iter().map(|&i| free[i])),
                fs.iter().map(|&i| edges[i]),
            );
            match is_border_solution(ib, p, &sol) {
                Ok(true) => {
                    found = Some(sol);
                    ControlFlow::Break(())
                }
                Ok(false) => ControlFlow::Continue(()),
                Err(e) => {
                    failure = Some(e);
                    ControlFlow::Break(())
                }
            }
        })
    });
    match failure {
        Some(e) => Err(e),
        None => Ok(found),
    }
}

/// Some `S` with `|S| ≤ p` covers at least `q` edges (an edge is covered when
/// one of its endpoints lies in `S`).
pub fn oracle_bpvc(b: &BpvcInstance, cap: u128) -> Result<bool> {
    let vertices: Vec<VertexId> = b.left().iter().chain(b.right()).copied().collect();
    guard(binomial_prefix(vertices.len(), b.p), cap)?;
    let ends: Vec<(usize, usize)> = b
        .edges()
        .iter()
        .map(|(x, y)| {
            (
                vertices.iter().position(|v| v == x).unwrap(),
                vertices.iter().position(|v| v == y).unwrap(),
            )
        })
        .collect();
    let mut chosen = vec![false; vertices.len()];
    let hit = for_each_subset_upto(vertices.len(), b.p, |s| {
        for &i in s {
            chosen[i] = true;
        }
        let covered = ends.iter().filter(|&&(x, y)| chosen[x] || chosen[y]).count();
        for &i in s {
            chosen[i] = false;
        }
        if covered >= b.q_edges {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    Ok(hit.is_break())
}
