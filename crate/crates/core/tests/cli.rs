use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

use polyconj::cli::run;
use polyconj::format::{parse_instance, serialize_instance, InstanceFile};
use polyconj::generate::{generate, GenSpec, Kind};
use polyconj::reductions::solve_ssp_brute;

struct Scratch(PathBuf);

impl Scratch {
    fn new(tag: &str) -> Self {
        let dir = std::env::temp_dir().join(format!("polyconj-cli-{tag}-{}", std::process::id()));
        fs::create_dir_all(&dir).unwrap();
        Scratch(dir)
    }

    fn write(&self, name: &str, text: &str) -> PathBuf {
        let p = self.0.join(name);
        fs::write(&p, text).unwrap();
        p
    }
}

impl Drop for Scratch {
    fn drop(&mut self) {
        let _ = fs::remove_dir_all(&self.0);
    }
}

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("polyconj").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn binary_reports_exit_codes() {
    let dir = Scratch::new("bin");
    let yes = dir.write("yes.tssp", "tssp\n2\n3 5\n-2\n");
    let no = dir.write("no.conj", "conj\n1\n0 0 5\n-4 0 5\n");
    let bin = env!("CARGO_BIN_EXE_polyconj");

    let o = Command::new(bin).args(["solve", "tssp", p(&yes), "--method", "dp"]).output().unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(String::from_utf8(o.stdout).unwrap(), "sol\n2\n1 1\n");

    let o = Command::new(bin).args(["conj", "decide", p(&no)]).output().unwrap();
    assert_eq!(o.status.code(), Some(1));

    let o = Command::new(bin).args(["solve", "tssp", "/nonexistent/file"]).output().unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(!o.stderr.is_empty());

    let o = Command::new(bin).arg("--help").output().unwrap();
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn solve_prints_a_witness_iff_it_succeeds() {
    let dir = Scratch::new("solve");
    let cases = [
        ("ssp", "ssp\n3\n3 5 7\n8\n", Some("sol\n3\n1 1 0\n")),
        ("ssp", "ssp\n3\n3 5 7\n6\n", None),
        ("sspp", "sspp\n2\n3 5\n2\n", Some("sol\n2\n-1 1\n")),
        ("tssp", "tssp\n1\n5\n0\n", Some("sol\n1\n0\n")),
        ("tssp", "tssp\n2\n3 5\n4\n", None),
    ];
    for (problem, text, expected) in cases {
        let f = dir.write("inst", text);
        for method in ["brute", "dp"] {
            let (code, out, _) = call(&["solve", problem, p(&f), "--method", method]);
            match expected {
                Some(sol) => {
                    assert_eq!(code, 0, "{text} {method}");
                    assert_eq!(out, sol, "{text} {method}");
                }
                None => {
                    assert_eq!(code, 1, "{text} {method}");
                    assert!(out.is_empty());
                }
            }
        }
    }
}

#[test]
fn search_flag_uses_the_decision_oracle() {
    let dir = Scratch::new("search");
    let f = dir.write("a.ssp", "ssp\n4\n3 5 7 2\n14\n");
    let (code, out, err) = call(&["solve", "ssp", p(&f), "--method", "brute", "--search"]);
    assert_eq!(code, 0);
    assert!(err.contains("oracle calls: "));
    let InstanceFile::Sol(w) = parse_instance(&out).unwrap() else { panic!("{out}") };
    let InstanceFile::Ssp(inst) = parse_instance(&fs::read_to_string(&f).unwrap()).unwrap() else { panic!() };
    assert!(inst.is_solved_by(&w.to_assignment().unwrap()));

    let (code, _, err) = call(&["solve", "tssp", p(&f), "--search"]);
    assert_eq!(code, 2);
    assert!(err.starts_with("error:"));
}

#[test]
fn parse_errors_carry_locations() {
    let dir = Scratch::new("parse");
    let f = dir.write("bad.ssp", "ssp\n2\n3 5\n");
    let (code, out, err) = call(&["solve", "ssp", p(&f)]);
    assert_eq!(code, 2);
    assert!(out.is_empty());
    assert!(err.contains("line 4, column 1"), "{err}");
}

#[test]
fn conj_commands_and_verify_contract() {
    let dir = Scratch::new("conj");
    let inst = dir.write("i.conj", "conj\n1\n0 0 5\n-5 0 5\n");
    let (code, out, _) = call(&["conj", "search", p(&inst)]);
    assert_eq!(code, 0);
    assert_eq!(out, "cert\n1\n0 1 0\n");
    let good = dir.write("good.cert", &out);
    let bad = dir.write("bad.cert", "cert\n1\n0 0 0\n");
    assert_eq!(call(&["conj", "verify", p(&inst), p(&good)]).0, 0);
    assert_eq!(call(&["conj", "verify", p(&inst), p(&bad)]).0, 1);
    let wrong_size = dir.write("w.cert", "cert\n2\n0 1 0 0 0\n");
    assert_eq!(call(&["conj", "verify", p(&inst), p(&wrong_size)]).0, 2);
    assert_eq!(call(&["conj", "decide", p(&inst)]), (0, "yes\n".into(), String::new()));
}

#[test]
fn limits_are_configurable() {
    let dir = Scratch::new("limits");
    let f = dir.write("t.tssp", "tssp\n3\n1000 2000 3000\n0\n");
    let (code, _, err) = call(&["solve", "tssp", p(&f), "--max-cells", "100"]);
    assert_eq!(code, 2);
    assert!(err.contains("table too large"), "{err}");
    let c = dir.write("c.conj", "conj\n3\n1 0 2 0 3 0 5\n9 0 2 0 3 0 5\n");
    let (code, _, err) = call(&["conj", "decide", p(&c), "--max-states", "3"]);
    assert_eq!(code, 2);
    assert!(err.contains("state limit"), "{err}");
}

#[test]
fn reduce_prints_instance_files() {
    let dir = Scratch::new("reduce");
    let f = dir.write("a.ssp", "ssp\n1\n7\n7\n");
    let (code, out, _) = call(&["reduce", "ssp-to-sspp", p(&f)]);
    assert_eq!((code, out.as_str()), (0, "sspp\n2\n29 1\n29\n"));
    let (code, out, _) = call(&["reduce", "ssp-to-conj", p(&f)]);
    assert_eq!(code, 0);
    assert!(matches!(parse_instance(&out).unwrap(), InstanceFile::Conj(_)));
    let t = dir.write("t.tssp", "tssp\n1\n5\n5\n");
    let (_, out, _) = call(&["reduce", "tssp-to-conj", p(&t)]);
    assert_eq!(out, "conj\n1\n0 0 5\n-5 0 5\n");
    let (code, _, err) = call(&["reduce", "tssp-to-conj", p(&f)]);
    assert_eq!(code, 2);
    assert!(err.contains("expected tssp"));
}

#[test]
fn generated_files_round_trip() {
    for kind in Kind::ALL {
        for seed in 0..1000u64 {
            let spec = GenSpec::new(kind, 1 + (seed % 7) as usize, 1 + seed * 37 % 10_000, seed, seed % 2 == 0).unwrap();
            let file = generate(&spec);
            let text = serialize_instance(&file);
            assert_eq!(parse_instance(&text).unwrap(), file, "{text}");
        }
    }
}

#[test]
fn gen_command_is_deterministic() {
    let args = ["gen", "tssp", "--n", "5", "--bound", "100", "--seed", "1", "--solvable"];
    let (code, a, _) = call(&args);
    assert_eq!(code, 0);
    assert_eq!(call(&args).1, a);
    let dir = Scratch::new("gen");
    let f = dir.write("g.tssp", &a);
    assert_eq!(call(&["solve", "tssp", p(&f), "--method", "brute"]).0, 0);
}

#[test]
fn pipeline_recovers_ssp_subsets() {
    let dir = Scratch::new("pipeline");
    let mut solvable = 0;
    for seed in 0..40u64 {
        let n = 1 + (seed % 4) as usize;
        let spec = GenSpec::new(Kind::Ssp, n, 12, seed, seed % 3 != 0).unwrap();
        let file = generate(&spec);
        let InstanceFile::Ssp(inst) = &file else { unreachable!() };
        let src = dir.write("src.ssp", &serialize_instance(&file));
        let (code, conj, _) = call(&["reduce", "ssp-to-conj", p(&src)]);
        assert_eq!(code, 0);
        let conj_path = dir.write("img.conj", &conj);
        let (code, cert, _) = call(&["conj", "search", p(&conj_path)]);
        let expected = solve_ssp_brute(inst).unwrap().is_some();
        assert_eq!(code == 0, expected, "seed {seed}");
        if code != 0 {
            continue;
        }
        solvable += 1;
        let cert_path = dir.write("w.cert", &cert);
        let (code, sol, err) = call(&["pullback", "ssp-to-conj", p(&src), p(&cert_path)]);
        assert_eq!(code, 0, "{err}");
        let InstanceFile::Sol(w) = parse_instance(&sol).unwrap() else { panic!("{sol}") };
        assert!(inst.is_solved_by(&w.to_assignment().unwrap()));

        // Hop by hop through the intermediate files.
        let (_, sspp, _) = call(&["reduce", "ssp-to-sspp", p(&src)]);
        let sspp_path = dir.write("mid.sspp", &sspp);
        let (_, tssp, _) = call(&["reduce", "sspp-to-tssp", p(&sspp_path)]);
        let tssp_path = dir.write("mid.tssp", &tssp);
        let (code, y, _) = call(&["pullback", "tssp-to-conj", p(&tssp_path), p(&cert_path)]);
        assert_eq!(code, 0);
        let y_path = dir.write("y.sol", &y);
        let (code, z, _) = call(&["pullback", "sspp-to-tssp", p(&sspp_path), p(&y_path)]);
        assert_eq!(code, 0);
        let z_path = dir.write("z.sol", &z);
        let (code, x, _) = call(&["pullback", "ssp-to-sspp", p(&src), p(&z_path)]);
        assert_eq!((code, x), (0, sol));
    }
    assert!(solvable >= 20);
}

#[test]
fn bad_pullback_witness_is_an_error() {
    let dir = Scratch::new("badpull");
    let src = dir.write("a.ssp", "ssp\n1\n7\n7\n");
    let w = dir.write("w.sol", "sol\n2\n0 1\n");
    let (code, out, err) = call(&["pullback", "ssp-to-sspp", p(&src), p(&w)]);
    assert_eq!(code, 2);
    assert!(out.is_empty());
    assert!(err.contains("soundness"), "{err}");
}

#[test]
fn bench_quick_runs() {
    let (code, out, _) = call(&["bench", "--quick"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("dense cells"));
    assert!(out.contains("bits"));
}
