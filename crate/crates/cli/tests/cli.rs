//! End-to-end checks of the benchmark binary: determinism, file
//! round-trips, pair output against the oracle, and the exit-code
//! contract.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_incbench"))
}

fn run(args: &[&str], dir: &Path) -> Output {
    bin()
        .args(args)
        .current_dir(dir)
        .output()
        .expect("spawn incbench")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn tmpdir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("incbench-test-{tag}-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

/// Identical configs produce byte-identical CSV modulo the elapsed column.
#[test]
fn run_is_deterministic_modulo_elapsed() {
    let dir = tmpdir("det");
    let args = [
        "run",
        "--kind",
        "lines2d",
        "--algo",
        "efficient",
        "--m",
        "300,600",
        "--n",
        "300",
        "--eps",
        "0.005,0.01",
        "--seed",
        "42",
    ];
    let a = stdout(&run(&args, &dir));
    let b = stdout(&run(&args, &dir));
    let strip = |s: &str| -> Vec<String> {
        s.lines()
            .map(|l| {
                l.rsplit_once(',')
                    .map(|(head, _)| head.to_string())
                    .unwrap_or_default()
            })
            .collect()
    };
    assert_eq!(strip(&a), strip(&b));
    assert_eq!(a.lines().count(), 5); // header + 4 sweep rows
}

/// gen -> load round-trips values exactly, and the generated instance is
/// identical to the in-process one (bit-identical rows for equal seeds).
#[test]
fn gen_round_trip_matches_in_memory_generation() {
    let dir = tmpdir("roundtrip");
    let out = run(
        &[
            "gen", "--kind", "lines2d", "--m", "4", "--n", "2", "--seed", "7", "--out", "inst",
        ],
        &dir,
    );
    assert!(out.status.success());
    let again = run(
        &[
            "gen", "--kind", "lines2d", "--m", "4", "--n", "2", "--seed", "7", "--out", "inst2",
        ],
        &dir,
    );
    assert!(again.status.success());
    let p1 = std::fs::read_to_string(dir.join("inst.points.txt")).unwrap();
    let p2 = std::fs::read_to_string(dir.join("inst2.points.txt")).unwrap();
    assert_eq!(p1, p2, "generation is seed-deterministic");

    // Running from the files equals running from the generator.
    let from_gen = stdout(&run(
        &[
            "run", "--kind", "lines2d", "--m", "200", "--n", "150", "--eps", "0.01", "--seed", "9",
        ],
        &dir,
    ));
    let g = run(
        &[
            "gen", "--kind", "lines2d", "--m", "200", "--n", "150", "--seed", "9", "--out", "big",
        ],
        &dir,
    );
    assert!(g.status.success());
    let from_files = stdout(&run(
        &[
            "run",
            "--kind",
            "lines2d",
            "--in-points",
            "big.points.txt",
            "--in-objects",
            "big.objects.txt",
            "--eps",
            "0.01",
            "--seed",
            "9",
        ],
        &dir,
    ));
    let key = |s: &str| -> Vec<String> {
        s.lines()
            .skip(1)
            .map(|l| {
                let cols: Vec<&str> = l.split(',').collect();
                // kind..mode + counters, without elapsed.
                cols[..cols.len() - 1].join(",")
            })
            .collect()
    };
    assert_eq!(key(&from_gen), key(&from_files));
}

/// The pairs subcommand agrees with the oracle subcommand pair-for-pair.
#[test]
fn pairs_match_oracle() {
    let dir = tmpdir("pairs");
    let args_tail = [
        "--kind",
        "congruent2d",
        "--m",
        "250",
        "--n",
        "250",
        "--r",
        "0.3",
        "--eps",
        "0.008",
        "--seed",
        "11",
    ];
    let mut pa = vec!["pairs", "--algo", "sector"];
    pa.extend_from_slice(&args_tail);
    let mut oa = vec!["oracle"];
    oa.extend_from_slice(&args_tail);
    let pairs = stdout(&run(&pa, &dir));
    let oracle = stdout(&run(&oa, &dir));
    let key = |s: &str| -> Vec<(String, String)> {
        s.lines()
            .map(|l| {
                let mut it = l.split(',');
                (
                    it.next().unwrap().to_string(),
                    it.next().unwrap().to_string(),
                )
            })
            .collect()
    };
    assert_eq!(key(&pairs), key(&oracle));
}

/// Out-of-range input files are normalized (with a note on stderr) and
/// still reported in original-frame distances.
#[test]
fn out_of_range_points_are_normalized() {
    let dir = tmpdir("norm");
    // A 100x-scaled instance: one point on the line y = x, one far away.
    std::fs::write(dir.join("p.txt"), "100,100\n-50,80\n").unwrap();
    std::fs::write(dir.join("o.txt"), "line2d\n1,0\n").unwrap();
    let out = run(
        &[
            "pairs",
            "--kind",
            "lines2d",
            "--in-points",
            "p.txt",
            "--in-objects",
            "o.txt",
            "--eps",
            "1.0",
            "--algo",
            "naive",
        ],
        &dir,
    );
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(
        text.starts_with("0,0,0"),
        "incident pair survives normalization: {text:?}"
    );
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(
        err.contains("normalized"),
        "stderr notes the affine map: {err}"
    );
}

#[test]
fn exit_codes_follow_the_contract() {
    let dir = tmpdir("codes");
    // 2: parameter error.
    let out = run(
        &[
            "run", "--kind", "lines2d", "--m", "10", "--n", "10", "--eps", "0.9",
        ],
        &dir,
    );
    assert_eq!(out.status.code(), Some(2));
    // 3: missing file.
    let out = run(
        &[
            "run",
            "--kind",
            "lines2d",
            "--in-points",
            "nope.txt",
            "--in-objects",
            "nope2.txt",
            "--eps",
            "0.01",
        ],
        &dir,
    );
    assert_eq!(out.status.code(), Some(3));
    // 4: oracle budget refusal.
    let out = run(
        &[
            "oracle", "--kind", "lines2d", "--m", "5000", "--n", "5000", "--eps", "0.01", "--seed",
            "1",
        ],
        &dir,
    );
    assert_eq!(out.status.code(), Some(4));
    // run survives an over-budget oracle with a blank k_true column.
    let out = run(
        &[
            "run",
            "--kind",
            "lines2d",
            "--algo",
            "efficient",
            "--m",
            "5000",
            "--n",
            "5000",
            "--eps",
            "0.002",
            "--mode",
            "count",
            "--seed",
            "1",
        ],
        &dir,
    );
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let row = text.lines().nth(1).unwrap();
    let cols: Vec<&str> = row.split(',').collect();
    assert_eq!(
        cols[10], "",
        "k_true blank when the oracle is skipped: {row}"
    );
    // Malformed input line is rejected with its line number.
    std::fs::write(dir.join("bad.txt"), "0.1,0.2\noops\n").unwrap();
    let out = run(
        &[
            "run",
            "--kind",
            "lines2d",
            "--in-points",
            "bad.txt",
            "--in-objects",
            "bad.txt",
            "--eps",
            "0.01",
        ],
        &dir,
    );
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains(":2:"));
}

/// The doubling sweep emits one row per point and candidates grow
/// monotonically with the sizes, for both algorithms.
#[test]
fn sweep_rows_are_monotone_in_size() {
    let dir = tmpdir("sweep");
    for algo in ["naive", "efficient"] {
        let out = stdout(&run(
            &[
                "run",
                "--kind",
                "lines2d",
                "--algo",
                algo,
                "--m",
                "1000,2000",
                "--n",
                "1000,2000",
                "--eps",
                "0.002",
                "--mode",
                "count",
                "--seed",
                "2",
            ],
            &dir,
        ));
        let rows: Vec<Vec<String>> = out
            .lines()
            .skip(1)
            .map(|l| l.split(',').map(str::to_string).collect())
            .collect();
        assert_eq!(rows.len(), 4, "algo {algo}");
        // Sweep order m x n; candidates (column 9) grow with n at fixed m
        // and with m at fixed n.
        let cand = |r: &Vec<String>| r[9].parse::<u64>().unwrap();
        assert!(cand(&rows[1]) > cand(&rows[0]), "algo {algo}");
        assert!(cand(&rows[3]) > cand(&rows[2]), "algo {algo}");
        assert!(cand(&rows[2]) > cand(&rows[0]), "algo {algo}");
    }
}

/// Counting mode and reporting mode agree on k.
#[test]
fn count_and_report_agree() {
    let dir = tmpdir("count");
    for algo in ["efficient", "naive", "naive-duality"] {
        let base = [
            "run", "--kind", "planes3d", "--algo", algo, "--m", "200", "--n", "200", "--eps",
            "0.01", "--seed", "3",
        ];
        let count_row = stdout(&run(&[&base[..], &["--mode", "count"]].concat(), &dir));
        let report_row = stdout(&run(&[&base[..], &["--mode", "report"]].concat(), &dir));
        let k = |s: &str| {
            s.lines()
                .nth(1)
                .unwrap()
                .split(',')
                .nth(11)
                .unwrap()
                .to_string()
        };
        assert_eq!(k(&count_row), k(&report_row), "algo {algo}");
    }
}
