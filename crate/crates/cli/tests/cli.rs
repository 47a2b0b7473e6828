use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use mmcu::gen::{random_mmcu, seeded, MmcuGenParams};
use mmcu::model::is_solution;
use mmcu::{MixedSolution, VertexId};
use mmcu_cli::format::{parse_instance, write_instance, write_witness, Instance};
use mmcu_cli::CliError;
use rand::Rng;
use tempfile::TempDir;

const PATH: &str = "c terminals at both ends\np mmcu 3 2 1 0\ne 1 2\ne 2 3\nt 1 a\nt 3 b\n";

fn mmcu(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mmcu")).args(args).output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn put(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn solve_and_verify_a_path() {
    let dir = TempDir::new().unwrap();
    let file = put(&dir, "path.mmcu", PATH);
    let out = mmcu(&["solve", "--mode", "heuristic", "--q-override", "3", "--audit", s(&file)]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "s YES\nv 2\nf\n");
    let witness = put(&dir, "path.sol", &stdout(&out));
    let check = mmcu(&["verify", s(&file), s(&witness)]);
    assert_eq!((check.status.code(), stdout(&check).as_str()), (Some(0), "valid\n"));

    let oracle = mmcu(&["oracle", s(&file)]);
    assert_eq!(oracle.status.code(), Some(0));
    assert!(stdout(&oracle).starts_with("s YES"));
    let sound = mmcu(&["solve", s(&file)]);
    assert_eq!(sound.status.code(), Some(0));
}

#[test]
fn no_answers_and_bad_witnesses() {
    let dir = TempDir::new().unwrap();
    let file = put(&dir, "tight.mmcu", &PATH.replace("p mmcu 3 2 1 0", "p mmcu 3 2 0 0"));
    let out = mmcu(&["solve", "--mode", "heuristic", "--q-override", "3", "--audit", s(&file)]);
    assert_eq!((out.status.code(), stdout(&out).as_str()), (Some(1), "s NO\n"));
    assert_eq!(mmcu(&["oracle", s(&file)]).status.code(), Some(1));

    let empty = put(&dir, "empty.sol", "s YES\nv\nf\n");
    assert_eq!(mmcu(&["verify", s(&file), s(&empty)]).status.code(), Some(1));
    let no = put(&dir, "no.sol", "s NO\n");
    assert_eq!(mmcu(&["verify", s(&file), s(&no)]).status.code(), Some(0));
}

#[test]
fn all_minimal_lists_each_solution() {
    let dir = TempDir::new().unwrap();
    let file = put(&dir, "path.mmcu", &PATH.replace("p mmcu 3 2 1 0", "p mmcu 3 2 1 1"));
    let out = mmcu(&["oracle", "--all-minimal", s(&file)]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).matches("s YES").count(), 3);
}

#[test]
fn usage_errors_exit_with_two() {
    let dir = TempDir::new().unwrap();
    let file = put(&dir, "path.mmcu", PATH);
    assert_eq!(mmcu(&[]).status.code(), Some(2));
    assert_eq!(mmcu(&["solve", "--q-override", "3", s(&file)]).status.code(), Some(2));
    assert_eq!(mmcu(&["solve", "--mode", "heuristic", s(&file)]).status.code(), Some(2));
    assert_eq!(mmcu(&["solve", s(&dir.path().join("missing"))]).status.code(), Some(2));
    let broken = put(&dir, "broken.mmcu", "p mmcu 2 1 0 0\ne 1 9\n");
    let out = mmcu(&["solve", s(&broken)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
    assert_eq!(CliError::Core(mmcu::Error::Audit("x".into())).exit_code(), 3);
}

#[test]
fn reduction_pipeline() {
    let dir = TempDir::new().unwrap();
    // one left vertex, two right vertices: no cover without deletions
    let b = put(&dir, "b.bpvc", "p bpvc 1 2 2 0 1\ne 1 2\ne 1 3\n");
    assert_eq!(mmcu(&["oracle", s(&b)]).status.code(), Some(1));

    let mc = mmcu(&["reduce", "bpvc-to-mixedcut", s(&b)]);
    assert_eq!(mc.status.code(), Some(0));
    assert!(stdout(&mc).starts_with("p mixedcut 5 5 0 1\n"));
    let mc_file = put(&dir, "b.mixedcut", &stdout(&mc));
    let mm = mmcu(&["reduce", "mixedcut-to-mmcu", s(&mc_file)]);
    assert!(stdout(&mm).starts_with("p mmcu 5 5 0 1\n"));
    // the plain reduction lets a cut remove an attachment edge
    assert_eq!(mmcu(&["oracle", s(&mc_file)]).status.code(), Some(0));

    let bundled = mmcu(&["reduce", "bpvc-to-mixedcut", "--bundled", s(&b)]);
    let bundled_file = put(&dir, "bundled.mixedcut", &stdout(&bundled));
    assert_eq!(mmcu(&["oracle", s(&bundled_file)]).status.code(), Some(1));
    assert_eq!(mmcu(&["reduce", "mixedcut-to-mmcu", s(&b)]).status.code(), Some(2));
}

#[test]
fn generators_are_seeded() {
    let a = mmcu(&["gen", "random-mmcu", "--seed", "7"]);
    let b = mmcu(&["gen", "random-mmcu", "--seed", "7"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(stdout(&a), stdout(&b));
    assert!(matches!(parse_instance(&stdout(&a)).unwrap(), Instance::Mmcu(_)));
    let c = mmcu(&["gen", "random-bpvc", "--seed", "7", "--nx", "2", "--ny", "3"]);
    assert!(matches!(parse_instance(&stdout(&c)).unwrap(), Instance::Bpvc(_)));
}

#[test]
fn files_round_trip_with_identical_ids() {
    let mut rng = seeded(12);
    for _ in 0..100 {
        let inst = random_mmcu(&mut rng, &MmcuGenParams::default());
        let text = write_instance(&Instance::Mmcu(inst.clone()));
        let Instance::Mmcu(back) = parse_instance(&text).unwrap() else { panic!() };
        assert_eq!(back.graph(), inst.graph());
        assert_eq!((back.k, back.l), (inst.k, inst.l));
        assert_eq!(back.terminals(), inst.terminals());
        for &a in inst.terminals() {
            for &b in inst.terminals() {
                assert_eq!(back.relation().related(a, b), inst.relation().related(a, b));
            }
        }
        assert_eq!(write_instance(&Instance::Mmcu(back)), text);
    }
}

#[test]
fn verify_accepts_exactly_the_solutions() {
    let mut rng = seeded(13);
    for _ in 0..300 {
        let inst = random_mmcu(&mut rng, &MmcuGenParams::default());
        let g = inst.graph();
        let xs: Vec<VertexId> = g.vertices().filter(|_| rng.gen_bool(0.25)).collect();
        let fs: Vec<_> = g.edge_ids().filter(|_| rng.gen_bool(0.25)).collect();
        let sol = MixedSolution::new(xs, fs);
        let report = mmcu_cli::verify(Instance::Mmcu(inst.clone()), &write_witness(g, Some(&sol))).unwrap();
        assert_eq!(report.status == 0, is_solution(&inst, &sol).unwrap());
    }
}
