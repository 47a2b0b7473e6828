//! Instances, mixed solutions, validity and minimality, and the profile
//! machinery of the bordered problem.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use crate::dsu::Dsu;
use crate::error::{Error, Result};
use crate::graph::{EdgeId, MultiGraph, VertexId};

/// Minimality is decided by enumerating every proper sub-pair up to this many
/// removable elements, and by single-element removals above it.
pub const EXACT_MINIMALITY_LIMIT: usize = 8;

/// A partition of a finite vertex set, kept canonical: every class sorted,
/// classes ordered by their minimum member.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition {
    classes: Vec<Vec<VertexId>>,
}

impl Partition {
    pub fn new<I, C>(classes: I) -> Result<Self>
    where
        I: IntoIterator<Item = C>,
        C: IntoIterator<Item = VertexId>,
    {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for class in classes {
            let mut c: Vec<VertexId> = class.into_iter().collect();
            c.sort();
            c.dedup();
            if c.is_empty() {
                return Err(Error::InvalidInstance("empty equivalence class".into()));
            }
            for &v in &c {
                if !seen.insert(v) {
                    return Err(Error::InvalidInstance(format!("{v} appears in two classes")));
                }
            }
            out.push(c);
        }
        out.sort();
        Ok(Self { classes: out })
    }

    pub fn singletons(elements: impl IntoIterator<Item = VertexId>) -> Self {
        let mut classes: Vec<Vec<VertexId>> = elements.into_iter().map(|v| vec![v]).collect();
        classes.sort();
        classes.dedup();
        Self { classes }
    }

    pub fn classes(&self) -> &[Vec<VertexId>] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn elements(&self) -> BTreeSet<VertexId> {
        self.classes.iter().flatten().copied().collect()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.class_of(v).is_some()
    }

    pub fn class_of(&self, v: VertexId) -> Option<usize> {
        self.classes.iter().position(|c| c.binary_search(&v).is_ok())
    }

    pub fn related(&self, u: VertexId, v: VertexId) -> bool {
        match (self.class_of(u), self.class_of(v)) {
            (Some(a), Some(b)) => a == b,
            _ => false,
        }
    }

    /// The partition induced on `keep`; classes that become empty vanish.
    pub fn restrict(&self, keep: &BTreeSet<VertexId>) -> Partition {
        let mut classes: Vec<Vec<VertexId>> = self
            .classes
            .iter()
            .map(|c| c.iter().copied().filter(|v| keep.contains(v)).collect::<Vec<_>>())
            .filter(|c| !c.is_empty())
            .collect();
        classes.sort();
        Partition { classes }
    }

    /// Every class of `self` lies inside one class of `coarser`.
    pub fn refines(&self, coarser: &Partition) -> bool {
        self.classes.iter().all(|c| {
            let first = coarser.class_of(c[0]);
            first.is_some() && c.iter().all(|&v| coarser.class_of(v) == first)
        })
    }

    /// Renames elements through `f`, dropping those mapped to `None`. Two
    /// elements mapped to the same id must already share a class.
    pub fn map_elements(&self, mut f: impl FnMut(VertexId) -> Option<VertexId>) -> Result<Partition> {
        Partition::new(
            self.classes
                .iter()
                .map(|c| c.iter().filter_map(|&v| f(v)).collect::<Vec<_>>())
                .filter(|c| !c.is_empty()),
        )
    }
}

/// A candidate solution `(X, F)`: deleted vertices and deleted edge copies.
/// The derived order is lexicographic by sorted vertex ids, then edge ids.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MixedSolution {
    pub vertices: BTreeSet<VertexId>,
    pub edges: BTreeSet<EdgeId>,
}

impl MixedSolution {
    pub fn new(
        vertices: impl IntoIterator<Item = VertexId>,
        edges: impl IntoIterator<Item = EdgeId>,
    ) -> Self {
        Self {
            vertices: vertices.into_iter().collect(),
            edges: edges.into_iter().collect(),
        }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn size(&self) -> usize {
        self.vertices.len() + self.edges.len()
    }

    /// Componentwise inclusion: `self ≤ other`.
    pub fn is_le(&self, other: &MixedSolution) -> bool {
        self.vertices.is_subset(&other.vertices) && self.edges.is_subset(&other.edges)
    }

    /// Vertices the solution affects: `X` plus every endpoint of `F`.
    pub fn affected_vertices(&self, g: &MultiGraph) -> Result<BTreeSet<VertexId>> {
        let mut out = self.vertices.clone();
        for &e in &self.edges {
            let (a, b) = g.endpoints(e)?;
            out.insert(a);
            out.insert(b);
        }
        Ok(out)
    }

    /// True when some deleted edge copy is incident to a deleted vertex.
    pub fn has_edge_incident_to_deleted_vertex(&self, g: &MultiGraph) -> Result<bool> {
        for &e in &self.edges {
            let (a, b) = g.endpoints(e)?;
            if self.vertices.contains(&a) || self.vertices.contains(&b) {
                return Ok(true);
            }
        }
        Ok(false)
    }

    fn check_live(&self, g: &MultiGraph) -> Result<()> {
        for &v in &self.vertices {
            g.check_vertex(v)?;
        }
        for &e in &self.edges {
            g.check_edge(e)?;
        }
        Ok(())
    }
}

/// Mixed Multiway Cut-Uncut instance `(G, T, R, k, l)`; the terminal set is
/// the ground set of the relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MmcuInstance {
    graph: MultiGraph,
    relation: Partition,
    terminals: BTreeSet<VertexId>,
    pub k: usize,
    pub l: usize,
}

impl MmcuInstance {
    pub fn new(graph: MultiGraph, relation: Partition, k: usize, l: usize) -> Result<Self> {
        let terminals = relation.elements();
        for &t in &terminals {
            if !graph.contains_vertex(t) {
                return Err(Error::InvalidInstance(format!("terminal {t} is not a vertex")));
            }
        }
        Ok(Self {
            graph,
            relation,
            terminals,
            k,
            l,
        })
    }

    pub fn graph(&self) -> &MultiGraph {
        &self.graph
    }

    pub fn relation(&self) -> &Partition {
        &self.relation
    }

    pub fn terminals(&self) -> &BTreeSet<VertexId> {
        &self.terminals
    }

    pub fn is_terminal(&self, v: VertexId) -> bool {
        self.terminals.contains(&v)
    }

    pub fn with_budgets(&self, k: usize, l: usize) -> Self {
        Self {
            k,
            l,
            ..self.clone()
        }
    }

    pub(crate) fn graph_mut(&mut self) -> &mut MultiGraph {
        &mut self.graph
    }

    pub(crate) fn set_relation(&mut self, relation: Partition) {
        self.terminals = relation.elements();
        self.relation = relation;
    }

}

/// Outcome of checking a candidate against an instance.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum SolutionCheck {
    Valid,
    OverBudget,
    /// `X` contains a terminal.
    TouchesTerminals,
    /// `X ∩ T_b` differs from the profile's deleted border set.
    BorderMismatch,
    WrongConnectivity,
}

/// Whether, in `g - (x, f)` with the classes of `extra` additionally joined,
/// two elements of `relation` share a component exactly when they share a class.
pub(crate) fn connectivity_respects(
    g: &MultiGraph,
    x: &BTreeSet<VertexId>,
    f: &BTreeSet<EdgeId>,
    extra: &Partition,
    relation: &Partition,
) -> bool {
    let mut dsu = Dsu::new(g.vertex_id_bound());
    for (e, a, b) in g.edges() {
        if !f.contains(&e) && !x.contains(&a) && !x.contains(&b) {
            dsu.union(a.0, b.0);
        }
    }
    for class in extra.classes() {
        for w in class.windows(2) {
            if !x.contains(&w[0]) && !x.contains(&w[1]) {
                dsu.union(w[0].0, w[1].0);
            }
        }
    }
    let mut roots = HashSet::new();
    for class in relation.classes() {
        let root = dsu.find(class[0].0);
        if class[1..].iter().any(|v| dsu.find(v.0) != root) {
            return false;
        }
        if !roots.insert(root) {
            return false;
        }
    }
    true
}

pub fn check_solution(inst: &MmcuInstance, sol: &MixedSolution) -> Result<SolutionCheck> {
    sol.check_live(&inst.graph)?;
    if sol.vertices.iter().any(|v| inst.is_terminal(*v)) {
        return Ok(SolutionCheck::TouchesTerminals);
    }
    if sol.vertices.len() > inst.k || sol.edges.len() > inst.l {
        return Ok(SolutionCheck::OverBudget);
    }
    if connectivity_respects(
        &inst.graph,
        &sol.vertices,
        &sol.edges,
        &Partition::default(),
        &inst.relation,
    ) {
        Ok(SolutionCheck::Valid)
    } else {
        Ok(SolutionCheck::WrongConnectivity)
    }
}

pub fn is_solution(inst: &MmcuInstance, sol: &MixedSolution) -> Result<bool> {
    Ok(check_solution(inst, sol)? == SolutionCheck::Valid)
}

/// Shared minimality test: no proper sub-pair that keeps `fixed` is valid.
fn minimal_under(
    sol: &MixedSolution,
    fixed: &BTreeSet<VertexId>,
    mut valid: impl FnMut(&MixedSolution) -> bool,
) -> bool {
    let xs: Vec<VertexId> = sol.vertices.difference(fixed).copied().collect();
    let fs: Vec<EdgeId> = sol.edges.iter().copied().collect();
    let total = xs.len() + fs.len();
    if total <= EXACT_MINIMALITY_LIMIT {
        let full = (1u32 << total) - 1;
        (0..full).all(|keep| {
            let cand = MixedSolution {
                vertices: fixed
                    .iter()
                    .copied()
                    .chain(xs.iter().enumerate().filter(|(i, _)| keep >> i & 1 == 1).map(|(_, &v)| v))
                    .collect(),
                edges: fs
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| keep >> (xs.len() + i) & 1 == 1)
                    .map(|(_, &e)| e)
                    .collect(),
            };
            !valid(&cand)
        })
    } else {
        let edge_removals = fs.iter().map(|e| {
            let mut c = sol.clone();
            c.edges.remove(e);
            c
        });
        let vertex_removals = xs.iter().map(|v| {
            let mut c = sol.clone();
            c.vertices.remove(v);
            c
        });
        edge_removals.chain(vertex_removals).all(|c| !valid(&c))
    }
}

/// Greedy shrinking: edges before vertices, ascending ids, restarting after
/// every successful removal.
fn minimalize_under(
    sol: &MixedSolution,
    fixed: &BTreeSet<VertexId>,
    mut valid: impl FnMut(&MixedSolution) -> bool,
) -> MixedSolution {
    let mut cur = sol.clone();
    'restart: loop {
        for e in cur.edges.clone() {
            let mut c = cur.clone();
            c.edges.remove(&e);
            if valid(&c) {
                cur = c;
                continue 'restart;
            }
        }
        for v in cur.vertices.clone() {
            if fixed.contains(&v) {
                continue;
            }
            let mut c = cur.clone();
            c.vertices.remove(&v);
            if valid(&c) {
                cur = c;
                continue 'restart;
            }
        }
        return cur;
    }
}

pub fn is_minimal_solution(inst: &MmcuInstance, sol: &MixedSolution) -> Result<bool> {
    if !is_solution(inst, sol)? {
        return Err(Error::NotASolution("minimality asked of a non-solution".into()));
    }
    Ok(minimal_under(sol, &BTreeSet::new(), |c| {
        is_solution(inst, c).unwrap_or(false)
    }))
}

/// Shrinks a solution to a minimal one below it.
pub fn minimalize(inst: &MmcuInstance, sol: &MixedSolution) -> Result<MixedSolution> {
    if !is_solution(inst, sol)? {
        return Err(Error::NotASolution("cannot minimalize a non-solution".into()));
    }
    Ok(minimalize_under(sol, &BTreeSet::new(), |c| {
        is_solution(inst, c).unwrap_or(false)
    }))
}

/// An MMCU instance together with border terminals `T_b ⊆ V(G) ∖ T`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BorderInstance {
    base: MmcuInstance,
    border: BTreeSet<VertexId>,
}

impl BorderInstance {
    /// Validates `T_b ⊆ V ∖ T`, `|T_b| ≤ 2(k+l)` and connectivity of the graph.
    pub fn new(base: MmcuInstance, border: BTreeSet<VertexId>) -> Result<Self> {
        let ib = Self::new_unchecked(base, border)?;
        let budget = ib.base.k + ib.base.l;
        if ib.border.len() > 2 * budget {
            return Err(Error::InvalidInstance(format!(
                "{} border terminals exceed 2(k+l) = {}",
                ib.border.len(),
                2 * budget
            )));
        }
        if !ib.base.graph.is_connected() {
            return Err(Error::Disconnected);
        }
        Ok(ib)
    }

    /// Only checks that border vertices are live non-terminals.
    pub(crate) fn new_unchecked(base: MmcuInstance, border: BTreeSet<VertexId>) -> Result<Self> {
        for &b in &border {
            base.graph.check_vertex(b)?;
            if base.is_terminal(b) {
                return Err(Error::InvalidInstance(format!("border vertex {b} is a terminal")));
            }
        }
        Ok(Self { base, border })
    }

    /// `T_b = ∅`.
    pub fn unbordered(base: MmcuInstance) -> Result<Self> {
        Self::new(base, BTreeSet::new())
    }

    pub fn base(&self) -> &MmcuInstance {
        &self.base
    }

    pub fn border(&self) -> &BTreeSet<VertexId> {
        &self.border
    }

    pub fn graph(&self) -> &MultiGraph {
        &self.base.graph
    }

    pub(crate) fn base_mut(&mut self) -> &mut MmcuInstance {
        &mut self.base
    }
}

/// A bordered-problem behaviour `(X_b, E_b, R_b, k', l')`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Profile {
    /// `X_b`: border terminals the solution deletes.
    pub deleted: BTreeSet<VertexId>,
    /// `E_b`: how the outside world connects the surviving border terminals.
    pub outside: Partition,
    /// `R_b`: the required pattern on `T ∪ (T_b ∖ X_b)`.
    pub relation: Partition,
    pub k_cap: usize,
    pub l_cap: usize,
}

impl Profile {
    /// The profile part that does not depend on the budget caps.
    pub fn shape(&self) -> (BTreeSet<VertexId>, Partition, Partition) {
        (self.deleted.clone(), self.outside.clone(), self.relation.clone())
    }
}

/// For every profile, a minimal solution or `None` (⊥).
pub type BorderOutput = BTreeMap<Profile, Option<MixedSolution>>;

/// Restricted-growth strings of length `len` whose first `fixed` labels
/// `0..fixed` are pre-opened. Each string assigns every element a label; new
/// labels are opened in increasing order.
fn growth_strings(len: usize, fixed: usize) -> Vec<Vec<usize>> {
    fn go(len: usize, opened: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for label in 0..=opened {
            cur.push(label);
            go(len, opened.max(label + 1), cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(len, fixed, &mut Vec::with_capacity(len), &mut out);
    out
}

fn subsets_by_size<T: Copy>(items: &[T]) -> Vec<Vec<T>> {
    let mut out = Vec::new();
    for size in 0..=items.len() {
        out.extend(itertools::Itertools::combinations(items.iter().copied(), size));
    }
    out
}

/// All profiles of `ib`, sorted.
pub fn enumerate_profiles(ib: &BorderInstance) -> Vec<Profile> {
    let border: Vec<VertexId> = ib.border.iter().copied().collect();
    let base_classes = ib.base.relation.classes();
    let mut out = Vec::new();
    for deleted in subsets_by_size(&border) {
        let rest: Vec<VertexId> = border.iter().copied().filter(|v| !deleted.contains(v)).collect();
        let outside_options: Vec<Partition> = growth_strings(rest.len(), 0)
            .into_iter()
            .map(|labels| labelled_partition(&rest, &labels, &[]))
            .collect();
        for labels in growth_strings(rest.len(), base_classes.len()) {
            let relation = labelled_partition(&rest, &labels, base_classes);
            for outside in outside_options.iter().filter(|e| e.refines(&relation)) {
                for k_cap in 0..=ib.base.k {
                    for l_cap in 0..=ib.base.l {
                        out.push(Profile {
                            deleted: deleted.iter().copied().collect(),
                            outside: outside.clone(),
                            relation: relation.clone(),
                            k_cap,
                            l_cap,
                        });
                    }
                }
            }
        }
    }
    out.sort();
    out
}

/// Classes `base[i]` extended by the elements labelled `i`, followed by the
/// freshly opened labels.
fn labelled_partition(elems: &[VertexId], labels: &[usize], base: &[Vec<VertexId>]) -> Partition {
    let opened = labels.iter().map(|l| l + 1).max().unwrap_or(0).max(base.len());
    let mut classes: Vec<Vec<VertexId>> = (0..opened)
        .map(|i| base.get(i).cloned().unwrap_or_default())
        .collect();
    for (&v, &label) in elems.iter().zip(labels) {
        classes[label].push(v);
    }
    Partition::new(classes.into_iter().filter(|c| !c.is_empty()))
        .expect("labelled classes are disjoint")
}

pub fn check_border_solution(
    ib: &BorderInstance,
    p: &Profile,
    sol: &MixedSolution,
) -> Result<SolutionCheck> {
    let g = ib.graph();
    sol.check_live(g)?;
    if sol.vertices.iter().any(|v| ib.base.is_terminal(*v)) {
        return Ok(SolutionCheck::TouchesTerminals);
    }
    if sol.vertices.len() > p.k_cap || sol.edges.len() > p.l_cap {
        return Ok(SolutionCheck::OverBudget);
    }
    let hit: BTreeSet<VertexId> = sol.vertices.intersection(&ib.border).copied().collect();
    if hit != p.deleted {
        return Ok(SolutionCheck::BorderMismatch);
    }
    if connectivity_respects(g, &sol.vertices, &sol.edges, &p.outside, &p.relation) {
        Ok(SolutionCheck::Valid)
    } else {
        Ok(SolutionCheck::WrongConnectivity)
    }
}

/// Solution to `(I_b, P)`: budgets capped by the profile, `X ∩ T_b = X_b`, and
/// in `G_P - (X, F)` the surviving terminals and border terminals connect
/// exactly as `R_b` prescribes.
pub fn is_border_solution(ib: &BorderInstance, p: &Profile, sol: &MixedSolution) -> Result<bool> {
    Ok(check_border_solution(ib, p, sol)? == SolutionCheck::Valid)
}

pub fn is_minimal_border_solution(
    ib: &BorderInstance,
    p: &Profile,
    sol: &MixedSolution,
) -> Result<bool> {
    if !is_border_solution(ib, p, sol)? {
        return Err(Error::NotASolution("minimality asked of a non-solution".into()));
    }
    Ok(minimal_under(sol, &p.deleted, |c| {
        is_border_solution(ib, p, c).unwrap_or(false)
    }))
}

pub fn minimalize_border(
    ib: &BorderInstance,
    p: &Profile,
    sol: &MixedSolution,
) -> Result<MixedSolution> {
    if !is_border_solution(ib, p, sol)? {
        return Err(Error::NotASolution("cannot minimalize a non-solution".into()));
    }
    Ok(minimalize_under(sol, &p.deleted, |c| {
        is_border_solution(ib, p, c).unwrap_or(false)
    }))
}

/// `(k+1)(l+1)(1 + |T_b|(|T_b| + (k+l)(k+l+1)))^{|T_b|}`, saturating.
pub fn profile_count_bound(k: usize, l: usize, border: usize) -> u128 {
    let kl = (k + l) as u128;
    let base = 1 + border as u128 * (border as u128 + kl * (kl + 1));
    let mut pow: u128 = 1;
    for _ in 0..border {
        pow = pow.saturating_mul(base);
    }
    ((k as u128 + 1) * (l as u128 + 1)).saturating_mul(pow)
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn v(i: usize) -> VertexId {
        VertexId(i)
    }

    fn path_instance(k: usize, l: usize) -> MmcuInstance {
        // s=0 - v=1 - t=2
        let mut g = MultiGraph::with_vertices(3);
        g.add_edge(v(0), v(1)).unwrap();
        g.add_edge(v(1), v(2)).unwrap();
        MmcuInstance::new(g, Partition::singletons([v(0), v(2)]), k, l).unwrap()
    }

    fn four_cycle(k: usize, l: usize) -> MmcuInstance {
        // s=0, a=1, t=2, b=3; edges sa=e0, at=e1, tb=e2, bs=e3
        let mut g = MultiGraph::with_vertices(4);
        for (a, b) in [(0, 1), (1, 2), (2, 3), (3, 0)] {
            g.add_edge(v(a), v(b)).unwrap();
        }
        MmcuInstance::new(g, Partition::singletons([v(0), v(2)]), k, l).unwrap()
    }

    #[test]
    fn partition_is_canonical() {
        let p = Partition::new([vec![v(5), v(2)], vec![v(1)]]).unwrap();
        assert_eq!(p.classes(), &[vec![v(1)], vec![v(2), v(5)]]);
        assert!(Partition::new([vec![v(1)], vec![v(1)]]).is_err());
        assert!(p.related(v(5), v(2)));
        assert!(!p.related(v(5), v(1)));
    }

    #[test]
    fn path_solutions() {
        let inst = path_instance(1, 0);
        assert!(is_solution(&inst, &MixedSolution::new([v(1)], [])).unwrap());
        assert!(!is_solution(&inst, &MixedSolution::empty()).unwrap());
    }

    #[test]
    fn terminal_deletion_is_rejected_not_an_error() {
        let inst = path_instance(1, 0);
        let sol = MixedSolution::new([v(0)], []);
        assert_eq!(check_solution(&inst, &sol).unwrap(), SolutionCheck::TouchesTerminals);
        assert!(check_solution(&inst, &MixedSolution::new([v(9)], [])).is_err());
    }

    #[test]
    fn four_cycle_mixed_solution() {
        // brute force over |X| ≤ 1, |F| ≤ 1 lists ({a},{sb}) among the valid ones
        let inst = four_cycle(1, 1);
        let sol = MixedSolution::new([v(1)], [EdgeId(3)]);
        assert!(is_solution(&inst, &sol).unwrap());
        let mut valid = Vec::new();
        for x in [None, Some(v(1)), Some(v(3))] {
            for f in [None, Some(0), Some(1), Some(2), Some(3)] {
                let c = MixedSolution::new(x, f.map(EdgeId));
                if is_solution(&inst, &c).unwrap() {
                    valid.push(c);
                }
            }
        }
        assert!(valid.contains(&sol));
        assert_eq!(valid.len(), 4);
    }

    #[test]
    fn minimality_examples() {
        let inst = path_instance(1, 1);
        assert!(is_minimal_solution(&inst, &MixedSolution::new([v(1)], [])).unwrap());
        assert!(!is_minimal_solution(&inst, &MixedSolution::new([v(1)], [EdgeId(1)])).unwrap());

        let mut g = MultiGraph::with_vertices(3);
        g.add_edge(v(0), v(1)).unwrap();
        g.add_edge(v(1), v(2)).unwrap();
        let uncut = MmcuInstance::new(g, Partition::new([vec![v(0), v(2)]]).unwrap(), 1, 1).unwrap();
        assert!(is_minimal_solution(&uncut, &MixedSolution::empty()).unwrap());

        assert!(is_minimal_solution(&inst, &MixedSolution::empty()).is_err());
    }

    #[test]
    fn minimalize_examples() {
        let inst = path_instance(1, 1);
        let out = minimalize(&inst, &MixedSolution::new([v(1)], [EdgeId(1)])).unwrap();
        assert_eq!(out, MixedSolution::new([v(1)], []));
        assert_eq!(minimalize(&inst, &out).unwrap(), out);

        let cyc = four_cycle(2, 0);
        let both = MixedSolution::new([v(1), v(3)], []);
        assert_eq!(minimalize(&cyc, &both).unwrap(), both);
        assert!(minimalize(&inst, &MixedSolution::empty()).is_err());
    }

    fn bordered(base: MmcuInstance, border: &[usize]) -> BorderInstance {
        BorderInstance::new(base, border.iter().map(|&i| v(i)).collect()).unwrap()
    }

    #[test]
    fn profiles_empty_border() {
        let ib = bordered(path_instance(0, 0), &[]);
        let ps = enumerate_profiles(&ib);
        assert_eq!(ps.len(), 1);
        assert_eq!(ps[0].relation, *ib.base().relation());
        assert!(ps[0].deleted.is_empty() && ps[0].outside.is_empty());

        let ib = bordered(path_instance(1, 1), &[]);
        assert_eq!(enumerate_profiles(&ib).len(), 4);
    }

    #[test]
    fn profiles_single_border_vertex() {
        // one class {s, t}, border {v}, k=1, l=0
        let mut g = MultiGraph::with_vertices(3);
        g.add_edge(v(0), v(1)).unwrap();
        g.add_edge(v(1), v(2)).unwrap();
        let inst = MmcuInstance::new(g, Partition::new([vec![v(0), v(2)]]).unwrap(), 1, 0).unwrap();
        let ib = bordered(inst, &[1]);
        let ps = enumerate_profiles(&ib);
        assert_eq!(ps.len(), 6);
        for p in &ps {
            assert!(p.outside.refines(&p.relation));
            let terminals = ib.base().terminals().clone();
            assert_eq!(p.relation.restrict(&terminals), *ib.base().relation());
        }
    }

    #[test]
    fn border_solution_examples() {
        // u=0 - w=1 - v=2, T = ∅, T_b = {u, v}
        let mut g = MultiGraph::with_vertices(3);
        g.add_edge(v(0), v(1)).unwrap();
        g.add_edge(v(1), v(2)).unwrap();
        let inst = MmcuInstance::new(g, Partition::default(), 1, 0).unwrap();
        let ib = bordered(inst, &[0, 2]);
        let separate = Profile {
            deleted: BTreeSet::new(),
            outside: Partition::singletons([v(0), v(2)]),
            relation: Partition::singletons([v(0), v(2)]),
            k_cap: 1,
            l_cap: 0,
        };
        let sol = MixedSolution::new([v(1)], []);
        assert!(is_border_solution(&ib, &separate, &sol).unwrap());

        let joined_outside = Profile {
            outside: Partition::new([vec![v(0), v(2)]]).unwrap(),
            ..separate.clone()
        };
        assert!(!is_border_solution(&ib, &joined_outside, &sol).unwrap());
        assert!(!enumerate_profiles(&ib).contains(&joined_outside));

        let wrong_deleted = Profile {
            deleted: BTreeSet::from([v(0)]),
            ..separate
        };
        assert_eq!(
            check_border_solution(&ib, &wrong_deleted, &sol).unwrap(),
            SolutionCheck::BorderMismatch
        );
    }

    #[test]
    fn empty_border_agrees_with_plain_check() {
        let inst = four_cycle(1, 1);
        let ib = bordered(inst.clone(), &[]);
        let p = &enumerate_profiles(&ib)[3];
        assert_eq!((p.k_cap, p.l_cap), (1, 1));
        for x in [vec![], vec![v(1)], vec![v(3)], vec![v(1), v(3)]] {
            for f in [vec![], vec![EdgeId(0)], vec![EdgeId(0), EdgeId(3)]] {
                let c = MixedSolution::new(x.clone(), f.clone());
                assert_eq!(is_border_solution(&ib, p, &c).unwrap(), is_solution(&inst, &c).unwrap());
            }
        }
    }

    #[test]
    fn profile_bound_values() {
        assert_eq!(profile_count_bound(0, 0, 0), 1);
        assert_eq!(profile_count_bound(1, 1, 0), 4);
        // 2 * (1 + 1 * (1 + 2)) = 8
        assert_eq!(profile_count_bound(1, 0, 1), 8);
    }
}
