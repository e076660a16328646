use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

const TWO_CLAUSE: &str = "p cnf 3 2\n1 2 3 0\n1 -2 -3 0\n";
const BALANCED: &str = "p cnf 3 4\n1 2 3 0\n1 -2 -3 0\n-1 2 -3 0\n-1 -2 3 0\n";
const UNSAT: &str = "p cnf 3 8\n-1 -2 -3 0\n1 -2 -3 0\n-1 2 -3 0\n1 2 -3 0\n-1 -2 3 0\n1 -2 3 0\n-1 2 3 0\n1 2 3 0\n";
const PARALLEL: &str = "3 2\nr s t\nr s t\n";
const SINGLE: &str = "3 1\nr s t\n";
const TRIANGLE: &str = "3 3\na b\nb c\nc a\n";

struct Workspace {
    dir: TempDir,
}

impl Workspace {
    fn new() -> Self {
        Workspace { dir: TempDir::new().unwrap() }
    }

    fn file(&self, name: &str, contents: &str) -> PathBuf {
        let path = self.dir.path().join(name);
        fs::write(&path, contents).unwrap();
        path
    }

    fn path(&self, name: &str) -> PathBuf {
        self.dir.path().join(name)
    }
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hyperorient")).args(args).output().unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

fn reduce_sat(ws: &Workspace, cnf: &str, name: &str) -> PathBuf {
    let input = ws.file(&format!("{name}.cnf"), cnf);
    let output = ws.path(&format!("{name}.hg"));
    let out = run(&["reduce", "--kind", "sat2sht", "--input", p(&input), "--output", p(&output)]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    output
}

#[test]
fn two_clause_formula_has_a_hypertree() {
    let ws = Workspace::new();
    let hg = reduce_sat(&ws, TWO_CLAUSE, "two_clause");
    let cert = ws.path("cert.txt");
    for engine in [&[][..], &["--oracle"][..]] {
        let mut args = vec!["sht", "--hypergraph", p(&hg), "--terminals", "zC1 zC2 a", "--certificate", p(&cert)];
        args.extend_from_slice(engine);
        let out = run(&args);
        assert_eq!(code(&out), 0);
        assert!(stdout(&out).starts_with("YES"));

        let verify = run(&["verify", "--hypergraph", p(&hg), "--terminals", "zC1 zC2 a", "--kind", "sht", "--witness", p(&cert)]);
        assert_eq!(code(&verify), 0);

        let cnf = ws.path("two_clause.cnf");
        let back = run(&["reduce", "--kind", "sat2sht", "--input", p(&cnf), "--witness", p(&cert)]);
        assert_eq!(code(&back), 0);
        let values: Vec<i64> = stdout(&back).split_whitespace().map(|t| t.parse().unwrap()).collect();
        let truth = |lit: i64| values.contains(&lit);
        assert!(truth(1) || truth(2) || truth(3));
        assert!(truth(1) || truth(-2) || truth(-3));
    }
}

#[test]
fn unsatisfiable_formula_has_no_hypertree() {
    let ws = Workspace::new();
    let hg = reduce_sat(&ws, UNSAT, "unsat");
    let out = run(&["sht", "--hypergraph", p(&hg), "--terminals", "zC1 zC2 zC3 zC4 zC5 zC6 zC7 zC8 a"]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).starts_with("NO"));

    let phi = ws.file("phi.txt", "1 2 3\n");
    let cnf = ws.path("unsat.cnf");
    let forward = run(&["reduce", "--kind", "sat2sht", "--input", p(&cnf), "--assignment", p(&phi)]);
    assert_eq!(code(&forward), 1);
}

#[test]
fn rejected_certificate_is_invalid() {
    let ws = Workspace::new();
    let hg = reduce_sat(&ws, TWO_CLAUSE, "two_clause");
    let cycle = ws.file("bad.txt", "0 wx1 a\n1 wx2 a\n3 wx1 wx2\n");
    let out = run(&["verify", "--hypergraph", p(&hg), "--terminals", "zC1 zC2 a", "--kind", "sht", "--witness", p(&cycle)]);
    assert_eq!(code(&out), 1);
    assert_eq!(stdout(&out).trim(), "INVALID");
}

#[test]
fn balanced_gadget_round_trip() {
    let ws = Workspace::new();
    let cnf = ws.file("balanced.cnf", BALANCED);
    let gadget = ws.path("gadget.hg");
    let names = ws.path("gadget.map");
    let out = run(&["reduce", "--kind", "b2sat2wboh", "--input", p(&cnf), "--output", p(&gadget), "--names", p(&names)]);
    assert_eq!(code(&out), 0);
    assert!(fs::read_to_string(&gadget).unwrap().contains("\n41 65\n"));
    assert_eq!(fs::read_to_string(&names).unwrap().lines().count(), 42);

    let phi = ws.file("phi.txt", "1 2 3\n");
    let orientation = ws.path("balanced.or");
    let forward = run(&["reduce", "--kind", "b2sat2wboh", "--input", p(&cnf), "--assignment", p(&phi), "--certificate", p(&orientation)]);
    assert_eq!(code(&forward), 0);

    let check = run(&["wbo-check", "--hypergraph", p(&gadget), "--orientation", p(&orientation)]);
    assert_eq!(code(&check), 0);

    let back = run(&["reduce", "--kind", "b2sat2wboh", "--input", p(&cnf), "--witness", p(&orientation)]);
    assert_eq!(code(&back), 0);
    assert_eq!(stdout(&back).trim(), "1 2 3");

    let lambda = run(&["lambda", "--hypergraph", p(&gadget), "--from", "a", "--to", "zC3"]);
    assert_eq!(stdout(&lambda).trim(), "8");

    let guard = run(&["wbo-solve", "--hypergraph", p(&gadget)]);
    assert_eq!(code(&guard), 2);
}

#[test]
fn unbalanced_orientation_is_reported() {
    let ws = Workspace::new();
    let hg = ws.file("tri.hg", TRIANGLE);
    let sink = ws.file("sink.or", "b\nb\nc\n");
    let out = run(&["wbo-check", "--hypergraph", p(&hg), "--orientation", p(&sink)]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).starts_with("NO"));
    let verify = run(&["verify", "--hypergraph", p(&hg), "--kind", "wbo", "--witness", p(&sink)]);
    assert_eq!(code(&verify), 1);
}

#[test]
fn exhaustive_well_balanced_search() {
    let ws = Workspace::new();
    let tri = ws.file("tri.hg", TRIANGLE);
    let par = ws.file("par.hg", "3 2\na b c\na b c\n");
    let cert = ws.path("tri.or");
    assert_eq!(code(&run(&["wbo-solve", "--hypergraph", p(&tri), "--certificate", p(&cert)])), 0);
    let heads: std::collections::BTreeSet<String> = fs::read_to_string(&cert).unwrap().lines().map(String::from).collect();
    assert_eq!(heads.len(), 3);
    assert_eq!(code(&run(&["wbo-solve", "--hypergraph", p(&par)])), 1);
}

#[test]
fn rooted_and_strong_orientations() {
    let ws = Workspace::new();
    let par = ws.file("par.hg", PARALLEL);
    let single = ws.file("single.hg", SINGLE);
    let rooted = ws.path("rooted.or");
    for engine in [&[][..], &["--oracle"][..]] {
        let mut args = vec!["srcoh", "--hypergraph", p(&par), "--root", "r", "--terminals", "s t", "--certificate", p(&rooted)];
        args.extend_from_slice(engine);
        assert_eq!(code(&run(&args)), 0);
        let verify = run(&["verify", "--hypergraph", p(&par), "--terminals", "s t", "--kind", "srcoh", "--root", "r", "--witness", p(&rooted)]);
        assert_eq!(code(&verify), 0);
        let mut args = vec!["srcoh", "--hypergraph", p(&single), "--root", "r", "--terminals", "s t"];
        args.extend_from_slice(engine);
        assert_eq!(code(&run(&args)), 1);
    }

    let reduced = ws.path("strong.hg");
    let out = run(&["reduce", "--kind", "srcoh2sscoh", "--input", p(&par), "--root", "r", "--terminals", "s t", "--output", p(&reduced)]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("terminals: r s t"));
    let strong = ws.path("strong.or");
    let solve = run(&["sscoh", "--hypergraph", p(&reduced), "--terminals", "r s t", "--certificate", p(&strong)]);
    assert_eq!(code(&solve), 0);

    let lowered = ws.path("lowered.or");
    let back = run(&["reduce", "--kind", "srcoh2sscoh", "--input", p(&par), "--root", "r", "--terminals", "s t", "--witness", p(&strong), "--certificate", p(&lowered)]);
    assert_eq!(code(&back), 0);
    let verify = run(&["verify", "--hypergraph", p(&par), "--terminals", "s t", "--kind", "srcoh", "--root", "r", "--witness", p(&lowered)]);
    assert_eq!(code(&verify), 0);

    let lifted = ws.path("lifted.or");
    let forward = run(&["reduce", "--kind", "srcoh2sscoh", "--input", p(&par), "--root", "r", "--terminals", "s t", "--orientation", p(&rooted), "--certificate", p(&lifted)]);
    assert_eq!(code(&forward), 0);
    let verify = run(&["verify", "--hypergraph", p(&reduced), "--terminals", "r s t", "--kind", "sscoh", "--witness", p(&lifted)]);
    assert_eq!(code(&verify), 0);

    let single_reduced = ws.path("single_strong.hg");
    run(&["reduce", "--kind", "srcoh2sscoh", "--input", p(&single), "--root", "r", "--terminals", "s t", "--output", p(&single_reduced)]);
    assert_eq!(code(&run(&["sscoh", "--hypergraph", p(&single_reduced), "--terminals", "r s t"])), 1);
}

#[test]
fn lambda_engines_agree() {
    let ws = Workspace::new();
    let par = ws.file("par.hg", PARALLEL);
    let o = ws.file("par.or", "s\nt\n");
    for engine in [&[][..], &["--oracle"][..]] {
        let mut args = vec!["lambda", "--hypergraph", p(&par), "--from", "r", "--to", "s"];
        args.extend_from_slice(engine);
        assert_eq!(stdout(&run(&args)).trim(), "2");
        args.extend_from_slice(&["--orientation", p(&o)]);
        assert_eq!(stdout(&run(&args)).trim(), "1");
    }
    let same = run(&["lambda", "--hypergraph", p(&par), "--from", "r", "--to", "r"]);
    assert_eq!(code(&same), 2);
}

#[test]
fn errors_exit_with_two() {
    let ws = Workspace::new();
    assert_eq!(code(&run(&["frobnicate"])), 2);
    assert_eq!(code(&run(&["sht"])), 2);
    assert_eq!(code(&run(&["sht", "--hypergraph", "/nonexistent/file.hg"])), 2);
    let bad = ws.file("bad.hg", "2 1\na\n");
    assert_eq!(code(&run(&["sht", "--hypergraph", p(&bad)])), 2);
    let par = ws.file("par.hg", PARALLEL);
    assert_eq!(code(&run(&["sht", "--hypergraph", p(&par), "--terminals", "r zz"])), 2);
    let not_b2 = ws.file("two_clause.cnf", TWO_CLAUSE);
    assert_eq!(code(&run(&["reduce", "--kind", "b2sat2wboh", "--input", p(&not_b2)])), 2);
}

#[test]
fn selftest_passes() {
    let out = run(&["selftest", "--seed", "7", "--cases", "20"]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    assert_eq!(stdout(&out).lines().filter(|l| l.starts_with("ok")).count(), 5);
}
