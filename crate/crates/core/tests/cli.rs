use std::path::Path;
use std::process::{Command, Output};

use partinv::harness::{parse_pgm, CSV_HEADER};
use partinv::sensing::{gaussian_matrix, random_sparse_signal, write_dmat, write_vector, RngStream};

fn partinv_cmd(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_partinv"))
        .args(args)
        .current_dir(dir)
        .env("PARTINV_THREADS", "2")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn unknown_flag_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let o = partinv_cmd(dir.path(), &["phase-diagram", "--no-such-flag", "1"]);
    assert_eq!(o.status.code(), Some(2));
    let o = partinv_cmd(dir.path(), &["frobnicate"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn bad_config_values_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let o = partinv_cmd(dir.path(), &["phase-diagram", "--trials", "0"]);
    assert_eq!(o.status.code(), Some(2));
    let o = partinv_cmd(dir.path(), &["phase-diagram", "--deltas", "0.5,abc"]);
    assert_eq!(o.status.code(), Some(2));
    std::fs::write(dir.path().join("run.cfg"), "trials = 2\ncolour = blue\n").unwrap();
    let o = partinv_cmd(dir.path(), &["phase-diagram", "--config", "run.cfg"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn missing_input_file_is_a_runtime_error() {
    let dir = tempfile::tempdir().unwrap();
    let o = partinv_cmd(dir.path(), &["recover", "--phi", "absent.dmat", "--y", "absent.vec", "--k", "2"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn config_file_is_read_and_flags_override_it() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(
        dir.path().join("small.cfg"),
        "# tiny sweep\nn = 32\ndeltas = 0.5\nrhos = 0.1,0.2\ntrials = 5\nout = from_config.csv\n",
    )
    .unwrap();
    let o = partinv_cmd(dir.path(), &["phase-diagram", "--config", "small.cfg", "--trials", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let csv = std::fs::read_to_string(dir.path().join("from_config.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some(CSV_HEADER));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 2);
    assert!(rows.iter().all(|r| r.split(',').nth(5) == Some("3")));
    let img = parse_pgm(&std::fs::read(dir.path().join("from_config.pgm")).unwrap()).unwrap();
    assert_eq!((img.width, img.height), (1, 2));
    assert!(dir.path().join("from_config.meta").exists());
}

#[test]
fn recover_round_trip_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let mut rng = RngStream::new(11, &[]);
    let phi = gaussian_matrix(40, 80, &mut rng).unwrap();
    let c = random_sparse_signal(80, 4, &mut rng).unwrap();
    write_dmat(dir.path().join("phi.dmat"), &phi).unwrap();
    write_vector(dir.path().join("y.dmat"), &phi.mul_vec(c.values()).unwrap()).unwrap();
    let o = partinv_cmd(
        dir.path(),
        &["recover", "--phi", "phi.dmat", "--y", "y.dmat", "--k", "4", "--out", "est.dmat"],
    );
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    let support: Vec<String> = c.support().iter().map(|i| i.to_string()).collect();
    assert!(text.contains(&format!("support={}", support.join(","))), "{text}");
    assert!(text.contains("termination=residual-converged"), "{text}");
    let est = partinv::sensing::read_vector(dir.path().join("est.dmat")).unwrap();
    for (a, b) in est.iter().zip(c.values()) {
        assert!((a - b).abs() < 1e-9);
    }

    let o = partinv_cmd(dir.path(), &["recover", "--phi", "phi.dmat", "--y", "y.dmat", "--k", "4", "--algo", "cosamp"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains(&format!("support={}", support.join(","))));
}

#[test]
fn check_theorem_prints_a_certified_report() {
    let dir = tempfile::tempdir().unwrap();
    let o = partinv_cmd(dir.path(), &["check-theorem", "--seed", "1", "--out", "report.txt"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    assert!(text.contains("mode=exhaustive"));
    assert!(text.contains("certifying=true"));
    assert!(text.contains("pass=true"));
    assert_eq!(std::fs::read_to_string(dir.path().join("report.txt")).unwrap(), text);

    let o = partinv_cmd(dir.path(), &["check-theorem", "--mode", "sampled", "--n", "64", "--m", "32", "--k", "2", "--l", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("certifying=false"));

    let o = partinv_cmd(dir.path(), &["check-theorem", "--n", "64"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn correlation_map_writes_square_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let o = partinv_cmd(dir.path(), &["correlation-map", "--n", "32", "--out", "g.csv", "--pgm", "g.pgm"]);
    assert_eq!(o.status.code(), Some(0));
    let csv = std::fs::read_to_string(dir.path().join("g.csv")).unwrap();
    assert_eq!(csv.lines().count(), 32);
    let img = parse_pgm(&std::fs::read(dir.path().join("g.pgm")).unwrap()).unwrap();
    assert_eq!((img.width, img.height), (32, 32));
}

#[test]
fn repeated_runs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["best-l", "--n", "48", "--deltas", "0.5", "--rhos", "0.2,0.3", "--trials", "4", "--seed", "5"];
    let mut outputs = Vec::new();
    for (threads, name) in [("1", "a.csv"), ("3", "b.csv")] {
        let o = Command::new(env!("CARGO_BIN_EXE_partinv"))
            .args(args)
            .args(["--out", name])
            .current_dir(dir.path())
            .env("PARTINV_THREADS", threads)
            .output()
            .unwrap();
        assert!(o.status.success());
        outputs.push(std::fs::read(dir.path().join(name)).unwrap());
    }
    assert_eq!(outputs[0], outputs[1]);
}
