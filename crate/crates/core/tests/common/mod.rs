//! Shared helpers for the integration tests: small builders, brute-force
//! reference searches and planted instance generators.
#![allow(dead_code)]

use std::collections::BTreeSet;

use mmcu::gen::{random_connected_multigraph, random_mmcu, MmcuGenParams};
use mmcu::{MmcuInstance, MultiGraph, Partition, VertexId};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn v(i: usize) -> VertexId {
    VertexId(i)
}

pub fn set(ids: &[usize]) -> BTreeSet<VertexId> {
    ids.iter().map(|&i| v(i)).collect()
}

pub fn graph(n: usize, edges: &[(usize, usize)]) -> MultiGraph {
    let mut g = MultiGraph::with_vertices(n);
    for &(a, b) in edges {
        g.add_edge(v(a), v(b)).unwrap();
    }
    g
}

pub fn mask_of(s: &BTreeSet<VertexId>) -> u32 {
    s.iter().fold(0, |m, x| m | 1 << x.0)
}

/// Neighbour masks of a graph with vertex ids `0..n`, `n ≤ 32`.
pub fn adjacency(g: &MultiGraph) -> Vec<u32> {
    let mut adj = vec![0u32; g.vertex_id_bound()];
    for (_, a, b) in g.edges() {
        adj[a.0] |= 1 << b.0;
        adj[b.0] |= 1 << a.0;
    }
    adj
}

/// Components of the subgraph induced by `alive`, as masks.
pub fn components(adj: &[u32], alive: u32) -> Vec<u32> {
    let mut left = alive;
    let mut out = Vec::new();
    while left != 0 {
        let mut comp = left & left.wrapping_neg();
        loop {
            let grow = (0..adj.len())
                .filter(|&i| comp >> i & 1 == 1)
                .fold(comp, |m, i| m | (adj[i] & alive));
            if grow == comp {
                break;
            }
            comp = grow;
        }
        out.push(comp);
        left &= !comp;
    }
    out
}

fn neighbourhood(adj: &[u32], s: u32) -> u32 {
    (0..adj.len()).filter(|&i| s >> i & 1 == 1).fold(0, |m, i| m | adj[i]) & !s
}

fn all_vertices(n: usize) -> u32 {
    if n == 32 { u32::MAX } else { (1 << n) - 1 }
}

/// Some `Z` of at most `k` deletable vertices leaves two components with
/// more than `q` deletable vertices each.
pub fn brute_good_separation(g: &MultiGraph, undeletable: u32, q: usize, k: usize) -> bool {
    let adj = adjacency(g);
    let full = all_vertices(adj.len());
    (0..=full).any(|z| {
        if z & undeletable != 0 || z.count_ones() as usize > k {
            return false;
        }
        let big = components(&adj, full & !z)
            .into_iter()
            .filter(|c| (c & !undeletable).count_ones() as usize > q)
            .count();
        big >= 2
    })
}

/// Some core `Z` with `1 ≤ |Z| ≤ k` and some set of petals (border-free
/// components with at most `q` deletable vertices and neighbourhood `Z`)
/// whose deletable total `s` has `s > q` and leaves more than `q` outside.
pub fn brute_flower(g: &MultiGraph, undeletable: u32, border: u32, q: usize, k: usize) -> bool {
    let adj = adjacency(g);
    let full = all_vertices(adj.len());
    (1..=full).any(|z| {
        if z & undeletable != 0 || z.count_ones() as usize > k {
            return false;
        }
        let comps = components(&adj, full & !z);
        let weight = |c: u32| (c & !undeletable).count_ones() as usize;
        let total: usize = comps.iter().map(|&c| weight(c)).sum();
        let petals: Vec<u32> = comps
            .into_iter()
            .filter(|&c| c & border == 0 && weight(c) <= q && neighbourhood(&adj, c) == z)
            .collect();
        (0u32..1 << petals.len()).any(|pick| {
            let s: usize = (0..petals.len()).filter(|i| pick >> i & 1 == 1).map(|i| weight(petals[i])).sum();
            s > q && total - s > q
        })
    })
}

/// Exhaustive search for `need` paths out of `v` that share only `v` and end
/// at terminals of pairwise different classes. Paths may run through
/// terminals.
pub fn brute_path_system(inst: &MmcuInstance, v: VertexId, need: usize) -> bool {
    let adj = adjacency(inst.graph());
    let class: Vec<Option<usize>> = (0..adj.len()).map(|i| inst.relation().class_of(VertexId(i))).collect();
    // classes are taken in increasing order so each system is met once
    fn more(adj: &[u32], class: &[Option<usize>], v: usize, used: u32, min_class: usize, need: usize) -> bool {
        if need == 0 {
            return true;
        }
        let mut stack: Vec<(usize, u32)> = (0..adj.len())
            .filter(|&w| adj[v] >> w & 1 == 1 && used >> w & 1 == 0)
            .map(|w| (w, 1u32 << w))
            .collect();
        while let Some((end, path)) = stack.pop() {
            if let Some(c) = class[end] {
                if c >= min_class && more(adj, class, v, used | path, c + 1, need - 1) {
                    return true;
                }
            }
            for w in 0..adj.len() {
                if adj[end] >> w & 1 == 1 && (used | path) >> w & 1 == 0 {
                    stack.push((w, path | 1 << w));
                }
            }
        }
        false
    }
    more(&adj, &class, v.0, 1 << v.0, 0, need)
}

fn small_params(n_hi: usize) -> MmcuGenParams {
    MmcuGenParams {
        n: 3..=n_hi,
        max_edges: 10,
        terminals: 2..=4,
        max_classes: 3,
        max_k: 1,
        max_l: 1,
    }
}

/// A non-terminal hub joined, directly or through one extra vertex, to
/// `k + l + 2` or more terminals of distinct classes, plus random edges.
pub fn planted_hub(rng: &mut impl Rng) -> MmcuInstance {
    let (k, l) = (rng.gen_range(0..=1), rng.gen_range(0..=1));
    let arms = k + l + 2 + rng.gen_range(0..=1);
    let mut g = MultiGraph::with_vertices(1);
    let mut terminals = Vec::new();
    for _ in 0..arms {
        let t = g.add_vertex();
        if g.vertex_count() < 7 && rng.gen_bool(0.3) {
            let mid = g.add_vertex();
            g.add_edge(v(0), mid).unwrap();
            g.add_edge(mid, t).unwrap();
        } else {
            g.add_edge(v(0), t).unwrap();
        }
        terminals.push(t);
    }
    let n = g.vertex_count();
    for _ in 0..rng.gen_range(0..=3) {
        let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if a != b {
            g.add_edge(v(a), v(b)).unwrap();
        }
    }
    MmcuInstance::new(g, Partition::singletons(terminals), k, l).unwrap()
}

/// A random instance, sometimes with a few edges removed so that related
/// terminals may fall apart.
pub fn maybe_split(rng: &mut impl Rng) -> MmcuInstance {
    let inst = random_mmcu(rng, &small_params(8));
    let mut g = inst.graph().clone();
    if rng.gen_bool(0.5) {
        let mut ids: Vec<_> = g.edge_ids().collect();
        ids.shuffle(rng);
        for e in ids.into_iter().take(rng.gen_range(1..=3)) {
            g.remove_edge(e).unwrap();
        }
    }
    MmcuInstance::new(g, inst.relation().clone(), inst.k, inst.l).unwrap()
}

fn two_terminals(rng: &mut impl Rng, inst: &MmcuInstance, related: bool) -> Option<(VertexId, VertexId)> {
    let ts: Vec<VertexId> = inst.terminals().iter().copied().collect();
    let pairs: Vec<(VertexId, VertexId)> = ts
        .iter()
        .enumerate()
        .flat_map(|(i, &a)| ts[i + 1..].iter().map(move |&b| (a, b)))
        .filter(|&(a, b)| inst.relation().related(a, b) == related)
        .collect();
    pairs.choose(rng).copied()
}

/// A random instance with one or two extra copies between terminals of
/// different classes.
pub fn planted_cross_edge(rng: &mut impl Rng) -> MmcuInstance {
    loop {
        let inst = random_mmcu(rng, &small_params(7));
        let Some((a, b)) = two_terminals(rng, &inst, false) else { continue };
        let mut g = inst.graph().clone();
        for _ in 0..rng.gen_range(1..=2) {
            g.add_edge(a, b).unwrap();
        }
        return MmcuInstance::new(g, inst.relation().clone(), inst.k, inst.l).unwrap();
    }
}

/// A random instance with two related terminals made adjacent or given
/// `k + l + 1` common neighbours. Returns the instance and the pair.
pub fn planted_identifiable(rng: &mut impl Rng) -> (MmcuInstance, VertexId, VertexId) {
    loop {
        let inst = random_mmcu(rng, &small_params(7));
        let Some((a, b)) = two_terminals(rng, &inst, true) else { continue };
        let mut g = inst.graph().clone();
        let others: Vec<VertexId> = g.vertices().filter(|w| !inst.is_terminal(*w)).collect();
        let want = inst.k + inst.l + 1;
        if rng.gen_bool(0.5) || others.len() < want {
            g.add_edge(a, b).unwrap();
        } else {
            for &w in others.choose_multiple(rng, want) {
                for t in [a, b] {
                    if !g.adjacent(t, w) {
                        g.add_edge(t, w).unwrap();
                    }
                }
            }
        }
        return (MmcuInstance::new(g, inst.relation().clone(), inst.k, inst.l).unwrap(), a, b);
    }
}

/// A small base graph plus `l + 3` or `l + 4` same-class terminals attached
/// to one common set of non-terminals.
pub fn planted_twins(rng: &mut impl Rng) -> MmcuInstance {
    let (k, l) = (rng.gen_range(0..=1), rng.gen_range(0..=1));
    let twins = l + 3 + rng.gen_range(0..=1);
    let n0 = rng.gen_range(2..=(7 - twins).max(2));
    let m0 = rng.gen_range(n0 - 1..=n0 + 1);
    let mut g = random_connected_multigraph(rng, n0, m0);
    // vertex 0 stays a non-terminal
    let base_terms: Vec<VertexId> = (1..n0).map(VertexId).filter(|_| rng.gen_bool(0.4)).collect();
    let hosts: Vec<VertexId> = (0..n0).map(VertexId).filter(|w| !base_terms.contains(w)).collect();
    let width = rng.gen_range(1..=hosts.len().min(2));
    let attach: Vec<VertexId> = hosts.choose_multiple(rng, width).copied().collect();
    let mut twin_ids = Vec::new();
    for _ in 0..twins {
        let t = g.add_vertex();
        for &w in &attach {
            g.add_edge(t, w).unwrap();
        }
        twin_ids.push(t);
    }
    let mut classes: Vec<Vec<VertexId>> = base_terms.iter().map(|&t| vec![t]).collect();
    match classes.iter_mut().next() {
        Some(first) if rng.gen_bool(0.5) => first.extend(twin_ids),
        _ => classes.push(twin_ids),
    }
    MmcuInstance::new(g, Partition::new(classes).unwrap(), k, l).unwrap()
}

/// A random instance with extra copies of one edge, beyond `l + 1`.
pub fn planted_parallel(rng: &mut impl Rng) -> MmcuInstance {
    let inst = random_mmcu(rng, &small_params(8));
    let mut g = inst.graph().clone();
    let (_, a, b) = g.edges().collect::<Vec<_>>().choose(rng).copied().unwrap();
    let extra = inst.l + 2 - g.multiplicity(a, b).min(inst.l + 1) + rng.gen_range(0..=1);
    for _ in 0..extra {
        g.add_edge(a, b).unwrap();
    }
    MmcuInstance::new(g, inst.relation().clone(), inst.k, inst.l).unwrap()
}
