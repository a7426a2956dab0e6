use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn cac(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cac")).args(args).output().expect("spawn cac")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut all = args.to_vec();
    all.push("--json");
    let out = cac(&all);
    (serde_json::from_slice(&out.stdout).expect("valid JSON"), code(&out))
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn discoordination_has_no_equilibrium() {
    let f = fixture("discoordination.json");
    let out = cac(&["solve", path_str(&f)]);
    assert_eq!(code(&out), 3);
    assert!(stdout(&out).contains("0 solutions"));
    let (doc, c) = json(&["count", path_str(&f)]);
    assert_eq!(c, 3);
    assert_eq!(doc["total"], "0");
}

#[test]
fn anti19_two_solutions() {
    let f = fixture("anti19.json");
    let (doc, c) = json(&["solve", path_str(&f)]);
    assert_eq!(c, 0);
    assert_eq!(doc["class"], "anti-coordination");
    let zs: Vec<&str> = doc["solutions"].as_array().unwrap().iter().map(|s| s["z"].as_str().unwrap()).collect();
    assert_eq!(zs, ["9/19", "10/19"]);
    for s in doc["solutions"].as_array().unwrap() {
        assert_eq!(s["equilibria"], "92378");
    }
    assert_eq!(doc["total"], "184756");
}

#[test]
fn staircase_has_n_plus_one_solutions() {
    let f = fixture("staircase10.json");
    let (doc, c) = json(&["solve", path_str(&f)]);
    assert_eq!(c, 0);
    let sols = doc["solutions"].as_array().unwrap();
    assert_eq!(sols.len(), 11);
    for (j, s) in sols.iter().enumerate() {
        let expected = match j {
            0 => "0".to_string(),
            10 => "1".to_string(),
            _ => {
                let g = gcd(j, 10);
                format!("{}/{}", j / g, 10 / g)
            }
        };
        assert_eq!(s["z"], expected.as_str());
        assert_eq!(s["equilibria"], "1");
    }
    assert_eq!(doc["total"], "11");
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[test]
fn solve_output_is_reproducible() {
    for name in ["anti19.json", "mixed.json", "staircase10.json"] {
        let f = fixture(name);
        let first = cac(&["solve", path_str(&f)]);
        let again = cac(&["solve", path_str(&f)]);
        let single = Command::new(env!("CARGO_BIN_EXE_cac"))
            .args(["solve", path_str(&f)])
            .env("RAYON_NUM_THREADS", "1")
            .output()
            .unwrap();
        assert_eq!(first.stdout, again.stdout);
        assert_eq!(first.stdout, single.stdout);
    }
}

#[test]
fn verify_profiles() {
    let f = fixture("coord8.json");
    let out = cac(&["verify", path_str(&f), "--profile", "++++++++"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("Nash: yes"));

    let out = cac(&["verify", path_str(&f), "--profile", "1,-1,-1,-1,-1,-1,-1,-1"]);
    assert!(stdout(&out).contains("Nash: no"));
    assert!(stdout(&out).contains("first deviating agent: 0"));

    let (doc, _) = json(&["verify", path_str(&f), "--profile", "---+----"]);
    assert_eq!(doc["nash"], false);
    assert_eq!(doc["deviator"]["agent"], 3);
    assert_eq!(doc["deviator"]["best_response"], "-");

    let out = cac(&["verify", path_str(&f), "--profile", "+-+"]);
    assert_eq!(code(&out), 2);
    let out = cac(&["verify", path_str(&f), "--profile", "+x+-----"]);
    assert_eq!(code(&out), 2);
}

/// Deterministic instance generator so the test needs no RNG crate.
fn random_instance(seed: u64) -> String {
    let mut state = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
    let mut next = |m: u64| {
        state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        (state >> 33) % m
    };
    let n = 2 + next(9) as usize;
    let agents: Vec<String> = (0..n)
        .map(|_| {
            let kind = if next(2) == 0 { "coord" } else { "anti" };
            let value = match next(3) {
                // Integer weights d = 2m − (n − 1) put the threshold exactly on a grid point.
                0 => format!("\"weight\": {}", 2 * next(n as u64) as i64 - (n as i64 - 1)),
                1 => format!("\"threshold\": \"{}/{}\"", next(9), 1 + next(7)),
                _ => format!("\"weight\": \"{}/{}\"", next(21) as i64 - 10, 1 + next(4)),
            };
            format!("{{\"kind\": \"{kind}\", {value}}}")
        })
        .collect();
    format!("{{\"version\": 1, \"agents\": [{}]}}", agents.join(", "))
}

#[test]
fn oracle_matches_on_random_instances() {
    let dir = TempDir::new().unwrap();
    for seed in 0..50 {
        let path = dir.path().join(format!("r{seed}.json"));
        std::fs::write(&path, random_instance(seed)).unwrap();
        let out = cac(&["verify", path_str(&path), "--oracle"]);
        assert_eq!(code(&out), 0, "seed {seed}: {}{}", stdout(&out), stderr(&out));
        assert!(stdout(&out).contains("oracle: match"), "seed {seed}");
    }
}

#[test]
fn oracle_refuses_large_instances() {
    let f = fixture("anti19.json");
    let out = cac(&["verify", path_str(&f), "--oracle", "--max-n", "10"]);
    assert_eq!(code(&out), 4);
    assert!(stderr(&out).contains("limit"));
}

#[test]
fn enumeration_is_capped() {
    let f = fixture("anti19.json");
    let (doc, c) = json(&["enumerate", path_str(&f), "--max-enumerate", "5"]);
    assert_eq!(c, 0);
    assert_eq!(doc["written"], 5);
    assert_eq!(doc["truncated"], true);
    assert_eq!(doc["solutions"][0]["profiles"][0], "+++++++++----------");

    let f = fixture("mixed.json");
    let (doc, _) = json(&["enumerate", path_str(&f)]);
    assert_eq!(doc["written"], 6);
    assert_eq!(doc["truncated"], false);
}

#[test]
fn continuum_uniform() {
    let (doc, c) = json(&["continuum", "--alpha", "0.3", "--dist-coord", "uniform:0,1", "--dist-anti", "uniform:0,1"]);
    assert_eq!(c, 0);
    let pts = doc["fixed_points"].as_array().unwrap();
    assert_eq!(pts.len(), 1);
    assert_eq!(pts[0]["z"], "0.500000000000000");

    let (doc, _) = json(&["continuum", "--alpha", "1", "--dist-coord", "pwl:0:0,0.5:0.8,1:1"]);
    let zs: Vec<f64> = doc["fixed_points"]
        .as_array()
        .unwrap()
        .iter()
        .map(|p| p["z"].as_str().unwrap().parse().unwrap())
        .collect();
    assert_eq!(zs, [0.0, 1.0]);
}

#[test]
fn continuum_normal_single_root() {
    let out = cac(&["continuum", "--alpha", "0.2", "--dist-coord", "normal:0.3,0.1"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("fixed points: 1"), "{text}");
    let line = text.lines().find(|l| l.starts_with("z* = ")).unwrap();
    let z: f64 = line.split_whitespace().nth(2).unwrap().parse().unwrap();
    assert!((z - 0.3615222792).abs() < 1e-9, "{z}");
}

#[test]
fn continuum_refuses_step_specs() {
    let out = cac(&["continuum", "--alpha", "0.5", "--dist-coord", "step:anti19.json"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("cac solve"));
    let out = cac(&["continuum", "--alpha", "1.5", "--dist-coord", "uniform:0,1"]);
    assert_eq!(code(&out), 2);
}

fn read_rows(path: &Path) -> (Vec<String>, Vec<(String, String)>) {
    let mut r = csv::Reader::from_path(path).unwrap();
    let header = r.headers().unwrap().iter().map(str::to_string).collect();
    let rows = r.records().map(|rec| {
        let rec = rec.unwrap();
        (rec[0].to_string(), rec[1].to_string())
    });
    (header, rows.collect())
}

#[test]
fn plot_staircase_has_both_sides_of_every_jump() {
    let dir = TempDir::new().unwrap();
    let f = fixture("staircase10.json");
    let out = cac(&["plot-data", path_str(&f), "--out", path_str(dir.path())]);
    assert_eq!(code(&out), 0);
    let (header, rows) = read_rows(&dir.path().join("F_c.csv"));
    assert_eq!(header, ["z", "F_c"]);
    assert_eq!(rows.len(), 20);
    for j in 0..10usize {
        let z = match j {
            0 => "0".to_string(),
            9 => "1".to_string(),
            _ => {
                let g = gcd(j, 9);
                format!("{}/{}", j / g, 9 / g)
            }
        };
        let at: Vec<&str> = rows.iter().filter(|(x, _)| *x == z).map(|(_, v)| v.as_str()).collect();
        assert_eq!(at.len(), 2, "z = {z}");
        assert_ne!(at[0], at[1]);
    }
    assert!(!dir.path().join("G_a.csv").exists());
    assert!(dir.path().join("H_alpha.csv").exists());
    let (_, bis) = read_rows(&dir.path().join("bisector.csv"));
    assert_eq!(bis, [("0".into(), "0".into()), ("1".into(), "1".into())]);
}

#[test]
fn plot_constant_threshold_is_a_single_step() {
    let dir = TempDir::new().unwrap();
    let f = fixture("anti19.json");
    cac(&["plot-data", path_str(&f), "--out", path_str(dir.path())]);
    let (header, rows) = read_rows(&dir.path().join("G_a.csv"));
    assert_eq!(header, ["z", "G_a"]);
    let values: Vec<&str> = rows.iter().map(|(_, v)| v.as_str()).collect();
    assert_eq!(values, ["1", "1", "0", "0"]);
}

#[test]
fn plot_continuum_crosses_bisector_at_half() {
    for alpha in ["0.3", "0.7"] {
        let dir = TempDir::new().unwrap();
        let out = cac(&[
            "plot-data",
            "--alpha",
            alpha,
            "--dist-coord",
            "uniform:0,1",
            "--points",
            "11",
            "--out",
            path_str(dir.path()),
        ]);
        assert_eq!(code(&out), 0, "{}", stderr(&out));
        let (header, rows) = read_rows(&dir.path().join("H_alpha.csv"));
        assert_eq!(header, ["z", "H_alpha"]);
        assert_eq!(rows.len(), 11);
        let mid = rows.iter().find(|(z, _)| z == "0.500000000000000").unwrap();
        assert_eq!(mid.1, "0.500000000000000");
    }
}

#[test]
fn dynamics_outcomes() {
    let dir = TempDir::new().unwrap();
    let traj = dir.path().join("t.csv");
    let f = fixture("coord8.json");
    let args = ["dynamics", path_str(&f), "--seed", "11", "--x0", "+-+-+-+-", "--trajectory", path_str(&traj)];
    let first = cac(&args);
    assert_eq!(code(&first), 0);
    assert!(stdout(&first).contains("converged to Nash"));
    let csv_first = std::fs::read(&traj).unwrap();
    let again = cac(&args);
    assert_eq!(first.stdout, again.stdout);
    assert_eq!(csv_first, std::fs::read(&traj).unwrap());
    let header = String::from_utf8(csv_first).unwrap();
    assert!(header.starts_with("step,plus,z,activated\n0,4,1/2,\n"));

    let (doc, _) = json(&["dynamics", path_str(&fixture("discoordination.json")), "--steps", "500"]);
    assert_eq!(doc["outcome"]["kind"], "step_limit");

    let (doc, _) = json(&["dynamics", path_str(&fixture("oscillator.json")), "--schedule", "sync", "--x0", "++++++"]);
    assert_eq!(doc["outcome"]["kind"], "cycle");
    assert_eq!(doc["outcome"]["period"], 2);

    let out = cac(&["dynamics", path_str(&fixture("oscillator.json")), "--x0", "+++"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn input_errors_name_the_field() {
    let dir = TempDir::new().unwrap();
    let cases = [
        (r#"{"version":1,"agents":[{"kind":"coord","weight":"0"},{"kind":"anti","weight":"1/0"}]}"#, "agents[1].weight"),
        (r#"{"version":1,"agents":[{"kind":"coord","weight":"0"},{"kind":"anti","bogus":1}]}"#, "agents[1].bogus"),
        (r#"{"version":1,"agents":[{"kind":"coord","weight":"0"}]}"#, "at least 2"),
        ("{\"version\":1,\n\"agents\": [,]}", "line 2"),
    ];
    for (i, (text, needle)) in cases.iter().enumerate() {
        let path = dir.path().join(format!("bad{i}.json"));
        std::fs::write(&path, text).unwrap();
        let out = cac(&["solve", path_str(&path)]);
        assert_eq!(code(&out), 2, "{text}");
        assert!(stderr(&out).contains(needle), "{}", stderr(&out));
    }
    let out = cac(&["solve", "/nonexistent/instance.json"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn decimal_thresholds_are_exact() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("half.json");
    std::fs::write(&path, r#"{"version":1,"agents":[{"kind":"anti","threshold":"0.5","count":19}]}"#).unwrap();
    let a = cac(&["count", path_str(&path)]);
    let b = cac(&["count", path_str(&fixture("anti19.json"))]);
    let strip = |o: &Output| stdout(o).lines().filter(|l| !l.starts_with("instance")).collect::<Vec<_>>().join("\n");
    assert_eq!(strip(&a), strip(&b));
}
