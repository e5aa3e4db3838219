use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use hypersparse::gen::{pruning_example, path_fixture, random_instance, RandomParams};
use hypersparse::{write_instance, write_projection, Hypergraph, ProjectionMap, TerminalSet};
use tempfile::TempDir;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hypersparse"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

struct Dir(TempDir);

impl Dir {
    fn new() -> Self {
        Self(tempfile::tempdir().unwrap())
    }

    fn file(&self, name: &str, text: &str) -> String {
        let p = self.path(name);
        fs::write(&p, text).unwrap();
        p
    }

    fn instance(&self, name: &str, g: &Hypergraph, t: &TerminalSet) -> String {
        self.file(name, &write_instance(g, t))
    }

    fn path(&self, name: &str) -> String {
        let p: PathBuf = self.0.path().join(name);
        p.to_string_lossy().into_owned()
    }
}

fn read(p: &str) -> String {
    fs::read_to_string(Path::new(p)).unwrap()
}

#[test]
fn path_fixture_sparsifies_to_one_edge() {
    let d = Dir::new();
    let (g, t) = path_fixture(6);
    let input = d.instance("g.txt", &g, &t);
    let (h, p) = (d.path("h.txt"), d.path("p.txt"));
    let out = run(&["sparsify", &input, "--c", "1", "--method", "fast", "--out", &h, "--proj", &p]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let (hg, ht) = hypersparse::parse_instance(&read(&h)).unwrap();
    assert_eq!(hg.num_edges(), 1);
    assert_eq!(ht.len(), 2);
    let ends = ht.to_vec();
    assert_eq!(hg.edge(0), &ends[..]);
    let out = run(&["verify", &input, &h, &p, "--c", "1"]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    assert!(stdout(&out).contains("result:   PASS"));
}

#[test]
fn every_method_passes_verification() {
    let d = Dir::new();
    let p = RandomParams {
        n: 8,
        m: 12,
        max_rank: 3,
        terminals: 3,
        connected: true,
    };
    let (g, t) = random_instance(4, p);
    let input = d.instance("g.txt", &g, &t);
    for method in ["fast", "slow", "poly"] {
        let (h, pr) = (d.path(&format!("h-{method}")), d.path(&format!("p-{method}")));
        let out = run(&["sparsify", &input, "--c", "2", "--method", method, "--out", &h, "--proj", &pr]);
        assert_eq!(code(&out), 0, "{method}: {}", stderr(&out));
        let out = run(&["verify", &input, &h, &pr, "--c", "2", "--mode", "all-pairs"]);
        assert_eq!(code(&out), 0, "{method}: {}", stdout(&out));
    }
}

#[test]
fn slow_on_oversized_input_hits_the_limit() {
    let d = Dir::new();
    let (g, t) = path_fixture(30);
    let input = d.instance("g.txt", &g, &t);
    let out = run(&["sparsify", &input, "--c", "1", "--method", "slow"]);
    assert_eq!(code(&out), 3);
    assert!(stderr(&out).contains("limit"), "{}", stderr(&out));
}

#[test]
fn zero_threshold_is_rejected() {
    let d = Dir::new();
    let (g, t) = path_fixture(3);
    let input = d.instance("g.txt", &g, &t);
    assert_eq!(code(&run(&["sparsify", &input, "--c", "0"])), 2);
    assert_eq!(code(&run(&["enumerate-cuts", &input, "--c", "0"])), 2);
    let id = d.file("id.txt", &write_projection(&ProjectionMap::identity(3)));
    assert_eq!(code(&run(&["verify", &input, &input, &id, "--c", "0"])), 2);
}

#[test]
fn identity_verifies_and_sabotage_is_caught() {
    let d = Dir::new();
    let (g, t) = pruning_example();
    let input = d.instance("g.txt", &g, &t);
    let id = d.file("id.txt", &write_projection(&ProjectionMap::identity(g.num_vertices())));
    let out = run(&["verify", &input, &input, &id, "--c", "2"]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));

    // drop edge a, which every mincut separating terminal 0 must use
    let mut edges = g.edges().to_vec();
    edges.remove(hypersparse::gen::PRUNING_A);
    let broken = Hypergraph::new(g.num_vertices(), edges).unwrap();
    let h = d.instance("h.txt", &broken, &t);
    let out = run(&["verify", &input, &h, &id, "--c", "2"]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("T1={0}"), "{}", stdout(&out));
    let out = run(&["verify", &input, &h, &id, "--c", "2", "--lines"]);
    assert!(stdout(&out).lines().any(|l| l.starts_with("failure t1=0 ")), "{}", stdout(&out));
}

#[test]
fn mismatched_projection_is_bad_input() {
    let d = Dir::new();
    let (g, t) = path_fixture(4);
    let input = d.instance("g.txt", &g, &t);
    let p = d.file("p.txt", &write_projection(&ProjectionMap::identity(3)));
    let out = run(&["verify", &input, &input, &p, "--c", "1"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("projection"));
}

#[test]
fn sampled_verification_is_reproducible() {
    let d = Dir::new();
    let p = RandomParams {
        n: 14,
        m: 24,
        max_rank: 3,
        terminals: 14,
        connected: true,
    };
    let (g, t) = random_instance(2, p);
    let input = d.instance("g.txt", &g, &t);
    let id = d.file("id.txt", &write_projection(&ProjectionMap::identity(g.num_vertices())));
    let args = ["verify", &input, &input, &id, "--c", "2", "--mode", "sampled:1000", "--seed", "9", "--lines"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).starts_with("verify mode=sampled:1000:seed=9 checked="));
}

#[test]
fn path_has_two_unit_cuts() {
    let d = Dir::new();
    let (g, t) = path_fixture(3);
    let input = d.instance("g.txt", &g, &t);
    let dot = d.path("aux.dot");
    let out = run(&["enumerate-cuts", &input, "--c", "1", "--dot", &dot]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert_eq!(stdout(&out), "cuts 2\nvalue=1 side=0\nvalue=1 side=2\n");
    let dot = read(&dot);
    assert!(dot.starts_with("digraph aux {"));
    assert!(dot.contains("shape=box") && dot.contains("shape=ellipse") && dot.contains("shape=diamond"));
}

#[test]
fn bounded_enumeration_accepts_fractions() {
    let d = Dir::new();
    let (g, t) = path_fixture(5);
    let input = d.instance("g.txt", &g, &t);
    for phi_inv in ["2", "5/2", "2.5"] {
        let out = run(&["enumerate-cuts", &input, "--c", "1", "--phi-inv", phi_inv]);
        assert_eq!(code(&out), 0, "{}", stderr(&out));
    }
    assert_eq!(code(&run(&["enumerate-cuts", &input, "--c", "1", "--phi-inv", "1/2"])), 2);
}

#[test]
fn pruning_example_stats() {
    let d = Dir::new();
    let (g, t) = pruning_example();
    let input = d.instance("g.txt", &g, &t);
    let out = run(&["stats", &input]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "n=7 m=12 r=2 p=24 terminals=3\n");
}

#[test]
fn decomposing_a_disconnected_graph_yields_components() {
    let d = Dir::new();
    let input = d.file("g.txt", "6 4\n2 0 1\n2 1 2\n3 3 4 5\n2 3 5\n0\n");
    let out = run(&["decompose", &input, "--phi", "1"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.starts_with("parts=2 crossing=0 phi=1\n"), "{text}");
    assert!(text.contains("vertices=0 1 2\n") && text.contains("vertices=3 4 5\n"));
}

#[test]
fn parse_errors_report_positions() {
    let d = Dir::new();
    let input = d.file("g.txt", "3 1\n2 0 9\n0\n");
    let out = run(&["stats", &input]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("line 2, column 5"), "{}", stderr(&out));
    assert_eq!(code(&run(&["stats", &d.path("missing.txt")])), 2);
}

#[test]
fn malformed_files_exit_cleanly() {
    let d = Dir::new();
    let samples = [
        "",
        "x",
        "3",
        "3 1\n",
        "3 1\n2 0\n",
        "3 1\n2 0 1\n2\n0\n",
        "3 1\n2 0 1\n1\n5\n",
        "99999999999999999999999 1\n",
        "3 1\n-2 0 1\n0\n",
        "3 1\n2 0 1\n0\n0\n",
    ];
    for (i, text) in samples.iter().enumerate() {
        let input = d.file(&format!("bad{i}.txt"), text);
        for args in [vec!["stats", &input], vec!["sparsify", &input, "--c", "1"]] {
            let out = run(&args);
            assert_eq!(code(&out), 2, "{text:?}: {}", stderr(&out));
            assert!(stderr(&out).starts_with("error: "));
        }
    }
}

fn without_timings(text: &str) -> serde_json::Value {
    fn strip(v: &mut serde_json::Value) {
        match v {
            serde_json::Value::Object(map) => {
                map.remove("millis");
                map.values_mut().for_each(strip);
            }
            serde_json::Value::Array(items) => items.iter_mut().for_each(strip),
            _ => {}
        }
    }
    let mut v: serde_json::Value = serde_json::from_str(text).unwrap();
    strip(&mut v);
    v
}

#[test]
fn sparsify_is_deterministic() {
    let d = Dir::new();
    let p = RandomParams {
        n: 40,
        m: 80,
        max_rank: 4,
        terminals: 6,
        connected: true,
    };
    let (g, t) = random_instance(17, p);
    let input = d.instance("g.txt", &g, &t);
    let mut runs = Vec::new();
    for i in 0..2 {
        let (h, pr, st) = (d.path(&format!("h{i}")), d.path(&format!("p{i}")), d.path(&format!("s{i}")));
        let threads = if i == 0 { "1" } else { "4" };
        let out = run(&[
            "--threads", threads, "sparsify", &input, "--c", "2", "--seed", "3", "--out", &h, "--proj", &pr, "--stats",
            &st,
        ]);
        assert_eq!(code(&out), 0, "{}", stderr(&out));
        let stats = read(&st);
        assert_eq!(stats.lines().count(), 1);
        runs.push((read(&h), read(&pr), without_timings(&stats)));
    }
    assert_eq!(runs[0], runs[1]);
    let stats = &runs[0].2;
    assert_eq!(stats["method"], "fast");
    assert_eq!(stats["seed"], 3);
    assert_eq!(stats["n"], 40);
    assert_eq!(stats["iterations"], stats["rounds"].as_array().unwrap().len());
}
