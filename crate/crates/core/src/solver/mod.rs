//! The bordered-problem solver and the MMCU entry point.
//!
//! Sound mode uses the exact thresholds. Heuristic mode replaces `q` by a
//! small override, which keeps the recursion and the branching exercised at
//! desk scale; every answer is still checked, and NO answers count as
//! verified only once the oracle agrees.

mod highconn;
mod recursion;

use std::collections::{BTreeSet, HashMap};

use num_bigint::BigUint;

use crate::classreduce::{apply_step1, apply_step2, decompose_components};
use crate::error::{Error, Result};
use crate::graph::VertexId;
use crate::model::{
    is_border_solution, is_minimal_border_solution, minimalize, BorderInstance, BorderOutput,
    MixedSolution, MmcuInstance,
};
use crate::oracle::{oracle_border_solve, oracle_solve_guarded};
use crate::separations::{compute_thresholds, Thresholds};

pub use highconn::{boundary_edges, high_connectivity_phase, interrogates, Region};
pub use recursion::{affected_union, build_sub_instance, find_split, RecursionSplit};

/// Largest covering family the phase will build.
pub const FAMILY_CAP: u128 = 20_000_000;

/// Oracle budget for audit cross-checks; larger instances skip the check.
pub const AUDIT_ORACLE_CAP: u128 = 2_000_000;

#[derive(Copy, Clone, Debug, Default, PartialEq, Eq)]
pub enum Mode {
    #[default]
    Sound,
    Heuristic,
}

#[derive(Copy, Clone, Debug, Default, PartialEq, Eq)]
pub struct SolverConfig {
    pub mode: Mode,
    pub q_override: Option<usize>,
    pub audit: bool,
}

impl SolverConfig {
    pub fn sound() -> Self {
        Self::default()
    }

    pub fn heuristic(q: usize) -> Self {
        Self {
            mode: Mode::Heuristic,
            q_override: Some(q),
            audit: false,
        }
    }

    pub fn audited(self) -> Self {
        Self { audit: true, ..self }
    }

    pub fn validate(&self) -> Result<()> {
        match (self.mode, self.q_override) {
            (Mode::Sound, None) | (Mode::Heuristic, Some(1..)) => Ok(()),
            (Mode::Sound, Some(_)) => Err(Error::Precondition("q override given in sound mode".into())),
            (Mode::Heuristic, _) => Err(Error::Precondition("heuristic mode needs a positive q override".into())),
        }
    }

    /// Thresholds for budgets `(k, l)` and `2(k+l)` border terminals.
    pub fn thresholds(&self, k: usize, l: usize) -> Thresholds {
        let border = 2 * (k + l);
        match self.q_override {
            Some(q) => Thresholds::from_q(BigUint::from(q), k, l, border),
            None => compute_thresholds(k, l, border),
        }
    }

    pub fn q_eff(&self, th: &Thresholds) -> usize {
        th.q_usize()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolveOutcome {
    Yes(MixedSolution),
    /// `verified` is set in sound mode or when the oracle confirmed the answer.
    No { verified: bool },
}

impl SolveOutcome {
    pub fn is_yes(&self) -> bool {
        matches!(self, SolveOutcome::Yes(_))
    }

    pub fn solution(&self) -> Option<&MixedSolution> {
        match self {
            SolveOutcome::Yes(sol) => Some(sol),
            SolveOutcome::No { .. } => None,
        }
    }
}

/// Counters collected while solving.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SolveStats {
    pub recursive_calls: usize,
    pub bypassed: usize,
    /// Separation loops left without progress or on a disconnected graph.
    pub stalled: usize,
    pub phase_entries: usize,
    pub max_depth: usize,
}

pub fn solve_border(ib: &BorderInstance, cfg: &SolverConfig) -> Result<BorderOutput> {
    Ok(solve_border_with_stats(ib, cfg)?.0)
}

pub fn solve_border_with_stats(ib: &BorderInstance, cfg: &SolverConfig) -> Result<(BorderOutput, SolveStats)> {
    cfg.validate()?;
    let mut stats = SolveStats::default();
    let out = recursion::solve_recursive(ib, cfg, &mut stats, 0)?;
    if cfg.audit {
        audit_border(ib, &out)?;
    }
    Ok((out, stats))
}

fn audit_border(ib: &BorderInstance, out: &BorderOutput) -> Result<()> {
    for (p, sol) in out {
        match sol {
            Some(sol) => {
                if !is_border_solution(ib, p, sol)? || !is_minimal_border_solution(ib, p, sol)? {
                    return Err(Error::Audit(format!("{sol:?} is not a minimal solution for {p:?}")));
                }
            }
            None => match oracle_border_solve(ib, p, AUDIT_ORACLE_CAP) {
                Ok(Some(found)) => {
                    return Err(Error::Audit(format!("⊥ reported for {p:?} but {found:?} solves it")));
                }
                Ok(None) | Err(Error::SizeGuard { .. }) => {}
                Err(e) => return Err(e),
            },
        }
    }
    Ok(())
}

pub fn solve_mmcu(inst: &MmcuInstance, cfg: &SolverConfig) -> Result<SolveOutcome> {
    Ok(solve_mmcu_with_stats(inst, cfg)?.0)
}

pub fn solve_mmcu_with_stats(inst: &MmcuInstance, cfg: &SolverConfig) -> Result<(SolveOutcome, SolveStats)> {
    cfg.validate()?;
    let mut stats = SolveStats::default();
    let found = match apply_step1(inst)? {
        Some((reduced, forced)) if apply_step2(&reduced) => {
            solve_components(&reduced, cfg, &mut stats)?.map(|mut sol| {
                sol.vertices.extend(forced);
                sol
            })
        }
        _ => None,
    };
    let outcome = match found {
        Some(sol) => {
            let sol = minimalize(inst, &sol)
                .map_err(|e| Error::Audit(format!("assembled answer {sol:?}: {e}")))?;
            if sol.has_edge_incident_to_deleted_vertex(inst.graph())? {
                return Err(Error::Audit(format!("{sol:?} deletes an edge at a deleted vertex")));
            }
            SolveOutcome::Yes(sol)
        }
        None => SolveOutcome::No {
            verified: confirm_no(inst, cfg)?,
        },
    };
    Ok((outcome, stats))
}

/// Sound mode needs no confirmation. Otherwise the oracle is consulted when
/// the instance is small enough; a solution it finds is an audit failure.
fn confirm_no(inst: &MmcuInstance, cfg: &SolverConfig) -> Result<bool> {
    if cfg.mode == Mode::Sound && !cfg.audit {
        return Ok(true);
    }
    match oracle_solve_guarded(inst, AUDIT_ORACLE_CAP) {
        Ok(Some(sol)) => Err(Error::Audit(format!("NO reported but {sol:?} is a solution"))),
        Ok(None) => Ok(true),
        Err(Error::SizeGuard { .. }) => Ok(cfg.mode == Mode::Sound),
        Err(e) => Err(e),
    }
}

/// Every component is solved once as an unbordered instance with the full
/// budgets; its profiles answer every budget split.
fn solve_components(
    inst: &MmcuInstance,
    cfg: &SolverConfig,
    stats: &mut SolveStats,
) -> Result<Option<MixedSolution>> {
    let (k, l) = (inst.k, inst.l);
    let mut cache: HashMap<BTreeSet<VertexId>, BorderOutput> = HashMap::new();
    decompose_components(inst, |sub| {
        let key = sub.graph().vertex_set();
        if !cache.contains_key(&key) {
            let ib = BorderInstance::unbordered(sub.with_budgets(k, l))?;
            let (out, s) = solve_border_with_stats(&ib, cfg)?;
            stats.recursive_calls += s.recursive_calls;
            stats.bypassed += s.bypassed;
            stats.stalled += s.stalled;
            stats.phase_entries += s.phase_entries;
            stats.max_depth = stats.max_depth.max(s.max_depth);
            cache.insert(key.clone(), out);
        }
        Ok(cache[&key]
            .iter()
            .find(|(p, _)| p.k_cap == sub.k && p.l_cap == sub.l)
            .and_then(|(_, sol)| sol.clone()))
    })
}
