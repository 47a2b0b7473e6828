//! Good node separations, flower separations and the threshold constants.

use std::collections::BTreeSet;
use std::ops::ControlFlow;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::graph::{MultiGraph, VertexId};
use crate::oracle::for_each_combination;

/// `(Z, V1, V2)`: `|Z| ≤ k`, and `V1`, `V2` are components of `G - Z` with
/// more than `q` deletable vertices each.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoodNodeSeparation {
    pub z: BTreeSet<VertexId>,
    pub v1: BTreeSet<VertexId>,
    pub v2: BTreeSet<VertexId>,
}

/// A core `Z` with petals: small border-free components of `G - Z` whose
/// neighbourhood is all of `Z`. Petals and stalk both hold more than `q`
/// deletable vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlowerSeparation {
    pub z: BTreeSet<VertexId>,
    pub petals: Vec<BTreeSet<VertexId>>,
}

impl FlowerSeparation {
    pub fn petal_union(&self) -> BTreeSet<VertexId> {
        self.petals.iter().flatten().copied().collect()
    }
}

/// Components of `g - z`.
pub(crate) fn components_without(g: &MultiGraph, z: &BTreeSet<VertexId>) -> Vec<BTreeSet<VertexId>> {
    g.remove_solution(z, &BTreeSet::new())
        .expect("separator vertices are live")
        .connected_components()
}

fn deletable_count(c: &BTreeSet<VertexId>, undeletable: &BTreeSet<VertexId>) -> usize {
    c.iter().filter(|v| !undeletable.contains(v)).count()
}

/// Calls `f` on every `Z ⊆ V ∖ V∞` with `lo ≤ |Z| ≤ hi`, by size then
/// lexicographically.
fn for_each_separator<B>(
    g: &MultiGraph,
    undeletable: &BTreeSet<VertexId>,
    lo: usize,
    hi: usize,
    mut f: impl FnMut(BTreeSet<VertexId>) -> ControlFlow<B>,
) -> Option<B> {
    let pool: Vec<VertexId> = g.vertices().filter(|v| !undeletable.contains(v)).collect();
    for size in lo..=hi.min(pool.len()) {
        if let ControlFlow::Break(b) =
            for_each_combination(pool.len(), size, |idx| f(idx.iter().map(|&i| pool[i]).collect()))
        {
            return Some(b);
        }
    }
    None
}

/// Least `Z` (by size, then lexicographically), then the first two qualifying
/// components in order of their least vertex.
pub fn find_good_node_separation(
    g: &MultiGraph,
    undeletable: &BTreeSet<VertexId>,
    q: usize,
    k: usize,
) -> Result<Option<GoodNodeSeparation>> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    Ok(for_each_separator(g, undeletable, 0, k, |z| {
        let mut big = components_without(g, &z)
            .into_iter()
            .filter(|c| deletable_count(c, undeletable) > q);
        match (big.next(), big.next()) {
            (Some(v1), Some(v2)) => ControlFlow::Break(GoodNodeSeparation { z, v1, v2 }),
            _ => ControlFlow::Continue(()),
        }
    }))
}

/// Least core `Z` admitting petals. Among the eligible petals the chosen set
/// has the smallest deletable total exceeding `q` that still leaves more than
/// `q` deletable vertices in the stalk; ties go to the earliest petals.
/// Petals without deletable vertices are never chosen.
pub fn find_flower_separation(
    g: &MultiGraph,
    undeletable: &BTreeSet<VertexId>,
    border: &BTreeSet<VertexId>,
    q: usize,
    k: usize,
) -> Result<Option<FlowerSeparation>> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    Ok(for_each_separator(g, undeletable, 1, k, |z| {
        let comps = components_without(g, &z);
        let total: usize = comps.iter().map(|c| deletable_count(c, undeletable)).sum();
        let eligible: Vec<(BTreeSet<VertexId>, usize)> = comps
            .into_iter()
            .filter(|c| c.is_disjoint(border))
            .map(|c| {
                let w = deletable_count(&c, undeletable);
                (c, w)
            })
            .filter(|(c, w)| {
                *w > 0 && *w <= q && g.neighborhood_of_set(c).expect("live component") == z
            })
            .collect();
        let weights: Vec<usize> = eligible.iter().map(|(_, w)| *w).collect();
        match choose_petals(&weights, q, total) {
            Some(pick) => ControlFlow::Break(FlowerSeparation {
                z,
                petals: pick.into_iter().map(|i| eligible[i].0.clone()).collect(),
            }),
            None => ControlFlow::Continue(()),
        }
    }))
}

/// Subset-sum over petal weights: indices of a subset whose sum `s` is the
/// least with `q < s` and `total - s > q`.
fn choose_petals(weights: &[usize], q: usize, total: usize) -> Option<Vec<usize>> {
    let cap: usize = weights.iter().sum();
    // via[s]: the petal whose addition first reached sum s
    let mut reach = vec![false; cap + 1];
    reach[0] = true;
    let mut via: Vec<Option<usize>> = vec![None; cap + 1];
    for (i, &w) in weights.iter().enumerate() {
        for s in (w..=cap).rev() {
            if !reach[s] && reach[s - w] {
                reach[s] = true;
                via[s] = Some(i);
            }
        }
    }
    let target = (q + 1..=cap).find(|&s| reach[s] && total - s > q)?;
    let mut pick = Vec::new();
    let mut s = target;
    while s > 0 {
        let i = via[s].expect("reachable sum has a predecessor");
        pick.push(i);
        s -= weights[i];
    }
    pick.sort_unstable();
    Some(pick)
}

/// `(2q + 2)(2^kk - 1) + border + 1`.
pub fn high_connectivity_component_bound(q: usize, kk: usize, border: usize) -> BigUint {
    (BigUint::from(q) * 2u32 + 2u32) * ((BigUint::one() << kk) - 1u32) + border + 1u32
}

/// The threshold constants as exact integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Thresholds {
    pub q: BigUint,
    pub q_prime: BigUint,
    pub t: BigUint,
    pub q_dprime: BigUint,
    pub profile_bound: BigUint,
    k: usize,
    l: usize,
}

/// `(x+kl)^{kl+1} + (l+2)·kl·(kl+1)·Σ_{i=1}^{kl} (x+kl)^i`.
fn terminal_bound(x: &BigUint, k: usize, l: usize) -> BigUint {
    let kl = k + l;
    let base = x + kl;
    let head = base.pow(kl as u32 + 1);
    let sum = (1..=kl as u32).fold(BigUint::zero(), |acc, i| acc + base.pow(i));
    head + BigUint::from((l + 2) * kl * (kl + 1)) * sum
}

pub fn compute_thresholds(k: usize, l: usize, border: usize) -> Thresholds {
    let kl = k + l;
    let inner = BigUint::from(1 + 2 * kl * kl * (kl + 3));
    let q = BigUint::from((k + 2 * l) * (k + 1) * (l + 1)) * inner.pow(2 * kl as u32) + kl;
    Thresholds::from_q(q, k, l, border)
}

impl Thresholds {
    /// Every derived constant computed from the given `q`.
    pub fn from_q(q: BigUint, k: usize, l: usize, border: usize) -> Self {
        let kl = k + l;
        let t = (&q * 2u32 + 2u32) * ((BigUint::one() << kl) - 1u32) + border + 1u32;
        let q_prime = terminal_bound(&q, k, l);
        let q_dprime = terminal_bound(&(&q * &t), k, l);
        let base = 1 + border * (border + kl * (kl + 1));
        let profile_bound = BigUint::from((k + 1) * (l + 1)) * BigUint::from(base).pow(border as u32);
        Self {
            q,
            q_prime,
            t,
            q_dprime,
            profile_bound,
            k,
            l,
        }
    }

    /// `a = q″ + qt + (l+1)·C(q″+qt, 2)`.
    pub fn family_a(&self) -> BigUint {
        let s = &self.q_dprime + &self.q * &self.t;
        let pairs = if s.is_zero() { BigUint::zero() } else { &s * (&s - 1u32) / 2u32 };
        &s + BigUint::from(self.l + 1) * pairs
    }

    pub fn family_b(&self) -> usize {
        self.k + self.l
    }

    /// `q`, saturated to `usize`.
    pub fn q_usize(&self) -> usize {
        self.q.to_usize().unwrap_or(usize::MAX)
    }
}
