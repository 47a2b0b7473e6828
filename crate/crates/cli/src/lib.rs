//! Command implementations behind the `mmcu` binary.

pub mod format;

use std::fmt::Write as _;

use mmcu::gen::{random_bpvc, random_mmcu, seeded, MmcuGenParams};
use mmcu::model::is_solution;
use mmcu::oracle::{oracle_all_minimal, oracle_bpvc, oracle_solve_guarded, DEFAULT_CANDIDATE_CAP};
use mmcu::reductions::{bpvc_to_mixedcut, bpvc_to_mixedcut_bundled, mixedcut_to_mmcu};
use mmcu::solver::{solve_mmcu, SolveOutcome, SolverConfig};
use mmcu::MmcuInstance;
use thiserror::Error;

use format::{parse_witness, write_instance, write_witness, Instance};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error(transparent)]
    Core(#[from] mmcu::Error),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(mmcu::Error::Audit(_)) => 3,
            _ => 2,
        }
    }
}

/// Text to print and the exit status: 0 for YES, 1 for NO.
#[derive(Debug, PartialEq, Eq)]
pub struct Report {
    pub text: String,
    pub status: u8,
}

impl Report {
    fn answer(text: String, yes: bool) -> Self {
        Self { text, status: if yes { 0 } else { 1 } }
    }
}

fn as_mmcu(inst: Instance) -> Result<MmcuInstance, CliError> {
    match inst {
        Instance::Mmcu(i) => Ok(i),
        Instance::MixedCut(mc) => Ok(mixedcut_to_mmcu(&mc)),
        Instance::Bpvc(_) => Err(CliError::Usage("expected an mmcu or mixedcut instance".into())),
    }
}

pub fn solve(inst: Instance, cfg: &SolverConfig) -> Result<Report, CliError> {
    let inst = as_mmcu(inst)?;
    match solve_mmcu(&inst, cfg)? {
        SolveOutcome::Yes(sol) => Ok(Report::answer(write_witness(inst.graph(), Some(&sol)), true)),
        SolveOutcome::No { verified } => {
            let mut text = write_witness(inst.graph(), None);
            if !verified {
                text.push_str("c unverified\n");
            }
            Ok(Report::answer(text, false))
        }
    }
}

pub fn oracle(inst: Instance, all_minimal: bool) -> Result<Report, CliError> {
    if let Instance::Bpvc(b) = &inst {
        let yes = oracle_bpvc(b, DEFAULT_CANDIDATE_CAP)?;
        return Ok(Report::answer(format!("s {}\n", if yes { "YES" } else { "NO" }), yes));
    }
    let inst = as_mmcu(inst)?;
    if !all_minimal {
        let sol = oracle_solve_guarded(&inst, DEFAULT_CANDIDATE_CAP)?;
        return Ok(Report::answer(write_witness(inst.graph(), sol.as_ref()), sol.is_some()));
    }
    let all = oracle_all_minimal(&inst, DEFAULT_CANDIDATE_CAP)?;
    let mut text = String::new();
    for (i, sol) in all.iter().enumerate() {
        writeln!(text, "c minimal solution {}", i + 1).unwrap();
        text.push_str(&write_witness(inst.graph(), Some(sol)));
    }
    if all.is_empty() {
        text.push_str(&write_witness(inst.graph(), None));
    }
    Ok(Report::answer(text, !all.is_empty()))
}

/// A YES witness is accepted when it is a solution; a NO witness when the
/// oracle finds none.
pub fn verify(inst: Instance, witness: &str) -> Result<Report, CliError> {
    let inst = as_mmcu(inst)?;
    let ok = match parse_witness(witness, inst.graph())? {
        Some(sol) => is_solution(&inst, &sol)?,
        None => oracle_solve_guarded(&inst, DEFAULT_CANDIDATE_CAP)?.is_none(),
    };
    Ok(Report::answer(format!("{}\n", if ok { "valid" } else { "invalid" }), ok))
}

pub fn bpvc_to_mixedcut_file(inst: Instance, bundled: bool) -> Result<String, CliError> {
    let Instance::Bpvc(b) = inst else {
        return Err(CliError::Usage("expected a bpvc instance".into()));
    };
    let mc = if bundled { bpvc_to_mixedcut_bundled(&b)? } else { bpvc_to_mixedcut(&b)? };
    Ok(write_instance(&Instance::MixedCut(mc)))
}

pub fn mixedcut_to_mmcu_file(inst: Instance) -> Result<String, CliError> {
    let Instance::MixedCut(mc) = inst else {
        return Err(CliError::Usage("expected a mixedcut instance".into()));
    };
    Ok(write_instance(&Instance::Mmcu(mixedcut_to_mmcu(&mc))))
}

pub fn gen_mmcu(seed: u64, params: &MmcuGenParams) -> Result<String, CliError> {
    if params.n.is_empty() || params.terminals.is_empty() {
        return Err(CliError::Usage("empty range".into()));
    }
    Ok(write_instance(&Instance::Mmcu(random_mmcu(&mut seeded(seed), params))))
}

pub fn gen_bpvc(seed: u64, nx: usize, ny: usize, density: f64) -> Result<String, CliError> {
    if !(0.0..=1.0).contains(&density) {
        return Err(CliError::Usage(format!("density {density} outside [0, 1]")));
    }
    Ok(write_instance(&Instance::Bpvc(random_bpvc(&mut seeded(seed), nx, ny, density))))
}
