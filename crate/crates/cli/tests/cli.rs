use std::path::Path;
use std::process::{Command, Output};

use latcc::circuit::circuit_from_json;
use latcc::formula::formula_from_json;
use latcc::lowering::{BooleanCircuit, ReachInstance};
use latcc::order::poset_from_json;
use latcc::partition::make_partition_lattice;

fn latcc(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_latcc"))
        .args(args)
        .current_dir(dir)
        .env_remove("LATCC_SIZE_GUARD")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn write(dir: &Path, name: &str, body: &str) {
    std::fs::write(dir.join(name), body).unwrap();
}

const M3: &str = r#"{"elements":["b","x","y","z","t"],"relation":[["b","x"],["b","y"],["b","z"],["x","t"],["y","t"],["z","t"]]}"#;
const AND: &str = r#"{"gates":[{"input":1},{"input":2},{"input":3},{"and":[0,1]},{"or":[3,2]}],"output":4}"#;

#[test]
fn accepts_sets_exit_status() {
    let d = tempfile::tempdir().unwrap();
    write(d.path(), "b.json", AND);
    let o = latcc(d.path(), &["compile", "mcvp", "--circuit", "b.json"]);
    assert_eq!(code(&o), 0);
    write(d.path(), "c.json", &stdout(&o));
    assert_eq!(code(&latcc(d.path(), &["cc", "accepts", "--circuit", "c.json", "--input", "101"])), 0);
    assert_eq!(code(&latcc(d.path(), &["cc", "accepts", "--circuit", "c.json", "--input", "100"])), 1);
    assert_eq!(code(&latcc(d.path(), &["cc", "accepts", "--circuit", "c.json", "--input", "110"])), 0);
}

#[test]
fn bundled_ledgers_hold() {
    let d = tempfile::tempdir().unwrap();
    write(d.path(), "np.json", latcc::assets::NP_POSET_JSON);
    write(d.path(), "np.txt", latcc::assets::NP_LEDGER);
    let o = latcc(d.path(), &["verify", "ledger", "--poset", "np.json", "--ledger", "np.txt"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert_eq!(code(&latcc(d.path(), &["verify", "ledger", "--poset", "@p", "--ledger", "@p"])), 0);
    assert_eq!(code(&latcc(d.path(), &["verify", "ledger", "--poset", "@p", "--ledger", "@np"])), 1);
}

#[test]
fn m3_is_not_distributive() {
    let d = tempfile::tempdir().unwrap();
    write(d.path(), "m3.json", M3);
    assert_eq!(code(&latcc(d.path(), &["poset", "distributive", "--poset", "m3.json"])), 1);
    let o = latcc(d.path(), &["poset", "m3n5", "--poset", "m3.json"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "M3: b x y z t\n");
    assert_eq!(code(&latcc(d.path(), &["poset", "birkhoff", "--poset", "m3.json"])), 1);
}

#[test]
fn usage_and_validation_errors_exit_2() {
    let d = tempfile::tempdir().unwrap();
    assert_eq!(code(&latcc(d.path(), &["poset"])), 2);
    assert_eq!(code(&latcc(d.path(), &["frobnicate"])), 2);
    assert_eq!(code(&latcc(d.path(), &["poset", "check", "--poset", "missing.json"])), 2);
    write(d.path(), "cyc.json", r#"{"elements":["a","b"],"relation":[["a","b"],["b","a"]]}"#);
    assert_eq!(code(&latcc(d.path(), &["poset", "check", "--poset", "cyc.json"])), 2);
    assert_eq!(code(&latcc(d.path(), &["cc", "decode", "1101"])), 2);
    let o = latcc(d.path(), &["pi", "build", "9"]);
    assert_eq!(code(&o), 2);
    assert!(!o.stderr.is_empty());
}

#[test]
fn size_guard_can_be_raised() {
    let d = tempfile::tempdir().unwrap();
    assert_eq!(code(&latcc(d.path(), &["pi", "build", "7"])), 2);
    let o = Command::new(env!("CARGO_BIN_EXE_latcc"))
        .args(["pi", "build", "7"])
        .env("LATCC_SIZE_GUARD", "7")
        .output()
        .unwrap();
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).lines().count(), 877);
}

#[test]
fn output_is_deterministic() {
    let d = tempfile::tempdir().unwrap();
    write(d.path(), "b.json", AND);
    for args in [
        &["compile", "mcvp", "--circuit", "b.json"][..],
        &["compile", "growing", "--circuit", "b.json", "--check", "3", "--seed", "7"],
        &["compile", "normalize", "--circuit", "b.json", "--n", "4", "--accept", "12/34", "--reject", "13/24"],
        &["poset", "dm", "--poset", "@p"],
        &["pi", "formula", "geb", "--n", "4", "13/24"],
    ] {
        let (a, b) = (latcc(d.path(), args), latcc(d.path(), args));
        assert_eq!(code(&a), 0, "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn emitted_json_reparses() {
    let d = tempfile::tempdir().unwrap();
    write(d.path(), "m3.json", M3);
    write(d.path(), "b.json", AND);
    for args in [&["poset", "dm", "--poset", "m3.json"][..], &["poset", "bounded", "--poset", "m3.json"], &["pi", "build", "3", "--json"]] {
        poset_from_json(&stdout(&latcc(d.path(), args))).unwrap();
    }
    for args in [
        &["compile", "mcvp", "--circuit", "b.json"][..],
        &["compile", "csat", "--circuit", "b.json"],
        &["compile", "growing", "--circuit", "b.json"],
        &["cc", "universal", "--n", "3", "--m", "2"],
        &["cc", "universal", "--n", "2", "--m", "1", "--poset", "m3.json"],
    ] {
        let text = stdout(&latcc(d.path(), args));
        let c = circuit_from_json(&text, None).unwrap();
        assert_eq!(latcc::circuit::circuit_to_json(&c), text.trim_end(), "{args:?}");
    }
    let o = latcc(d.path(), &["cc", "dag", "--circuit", "missing.json", "--json"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn satisfiability_compilation_runs_without_input() {
    let d = tempfile::tempdir().unwrap();
    write(d.path(), "sat.json", AND);
    write(d.path(), "c.json", &stdout(&latcc(d.path(), &["compile", "csat", "--circuit", "sat.json"])));
    assert_eq!(code(&latcc(d.path(), &["cc", "accepts", "--circuit", "c.json"])), 0);
    let unsat = r#"{"gates":[{"input":1},{"neg_input":1},{"and":[0,1]}],"output":2}"#;
    write(d.path(), "unsat.json", unsat);
    BooleanCircuit::from_json(unsat).unwrap();
    write(d.path(), "u.json", &stdout(&latcc(d.path(), &["compile", "csat", "--circuit", "unsat.json"])));
    assert_eq!(code(&latcc(d.path(), &["cc", "accepts", "--circuit", "u.json"])), 1);
}

#[test]
fn branching_program_pipeline() {
    let d = tempfile::tempdir().unwrap();
    // Accepts iff x1 = x2.
    let bp = r#"{"states":[{"var":1,"on0":1,"on1":2},{"var":2,"on0":3,"on1":4},{"var":2,"on0":4,"on1":3},
        {"var":null,"on0":3,"on1":3},{"var":null,"on0":4,"on1":4}],"layers":[[0],[1,2],[3,4]],"start":0,"accept":3}"#;
    write(d.path(), "bp.json", bp);
    let o = latcc(d.path(), &["compile", "bp", "--bp", "bp.json", "--check", "4"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    write(d.path(), "c.json", &stdout(&o));
    assert_eq!(code(&latcc(d.path(), &["cc", "skew", "--circuit", "c.json"])), 0);
    for (w, want) in [("00", 0), ("01", 1), ("10", 1), ("11", 0)] {
        assert_eq!(code(&latcc(d.path(), &["cc", "accepts", "--circuit", "c.json", "--input", w])), want, "{w}");
        let r = stdout(&latcc(d.path(), &["compile", "dgap", "--circuit", "c.json", "--input", w]));
        let r = ReachInstance::from_json(&r).unwrap();
        assert_eq!(latcc::lowering::dgap_reach(&r), want == 0, "{w}");
        let bits = stdout(&latcc(d.path(), &["cc", "encode", "--circuit", "c.json", "--input", w]));
        write(d.path(), "dec.json", &stdout(&latcc(d.path(), &["cc", "decode", bits.trim()])));
        assert_eq!(code(&latcc(d.path(), &["cc", "accepts", "--circuit", "dec.json"])), want, "{w}");
    }
}

#[test]
fn traces_and_dot() {
    let d = tempfile::tempdir().unwrap();
    write(d.path(), "b.json", AND);
    write(d.path(), "c.json", &stdout(&latcc(d.path(), &["compile", "mcvp", "--circuit", "b.json"])));
    let o = latcc(d.path(), &["cc", "eval", "--circuit", "c.json", "--input", "111", "--trace"]);
    let text = stdout(&o);
    assert!(text.starts_with("init: "));
    assert!(text.ends_with("output: 1\n"));
    let o = latcc(d.path(), &["cc", "accepts", "--circuit", "c.json", "--input", "111", "--trace", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["accepts"], true);
    assert!(v["trace"].as_array().unwrap().len() > 1);
    assert!(stdout(&latcc(d.path(), &["cc", "dag", "--circuit", "c.json", "--dot"])).starts_with("digraph circuit {"));
    assert!(stdout(&latcc(d.path(), &["poset", "dm", "--poset", "@p", "--dot"])).starts_with("digraph poset {"));
}

#[test]
fn spira_output_reparses_and_agrees() {
    let d = tempfile::tempdir().unwrap();
    let leaf = |v: usize| format!(r#"{{"input":{v},"map":{{"0":"1/2/3","1":"12/3"}}}}"#);
    let mut f = leaf(1);
    for (k, c) in ["13/2", "1/23", "123", "12/3", "1/2/3", "13/2"].iter().enumerate() {
        let op = if k % 2 == 0 { "join" } else { "meet" };
        f = format!(r#"{{"op":"{op}","l":{f},"r":{{"op":"join","l":{{"const":"{c}"}},"r":{}}}}}"#, leaf(k % 2 + 1));
    }
    write(d.path(), "f.json", &f);
    let o = latcc(d.path(), &["compile", "spira", "--formula", "f.json", "--n", "3", "--json"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let pl = make_partition_lattice(3).unwrap();
    let alphabet = vec!["0".to_owned(), "1".to_owned()];
    let src = formula_from_json(&f, pl.lattice(), &alphabet).unwrap();
    let out = formula_from_json(&stdout(&o), pl.lattice(), &alphabet).unwrap();
    assert!(out.depth() <= src.depth());
    for w in latcc::circuit::all_words(2, 2) {
        assert_eq!(out.eval(pl.lattice(), &w).unwrap(), src.eval(pl.lattice(), &w).unwrap());
    }
}
