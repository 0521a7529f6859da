use std::fs;
use std::path::{Path, PathBuf};

use longpath_cli::{run, Outcome, EXIT_OK, EXIT_USAGE, EXIT_VIOLATION};

fn data(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
        .display()
        .to_string()
}

fn golden_path(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name)
}

fn cli(args: &[&str]) -> Outcome {
    cli_stdin(args, "")
}

fn cli_stdin(args: &[&str], stdin: &str) -> Outcome {
    let argv = std::iter::once("longpath").chain(args.iter().copied());
    run(argv, &mut stdin.as_bytes())
}

/// Compares stdout with a golden file; `UPDATE_GOLDEN=1` rewrites it.
fn assert_golden(name: &str, out: &Outcome) {
    let path = golden_path(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        fs::write(&path, &out.stdout).unwrap();
    }
    let expected = fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert_eq!(out.stdout, expected, "golden mismatch for {name}");
}

#[test]
fn longest_by_every_method_on_diamond() {
    let d = data("diamond.txt");
    let dp = cli(&["longest", "--method", "dp", &d]);
    assert_eq!(
        (dp.code, dp.stdout.as_str()),
        (EXIT_OK, "longest=2 method=dp\n")
    );
    let red = cli(&["longest", "--method", "reduction", &d]);
    assert_eq!(red.stdout, "longest=2 method=reduction\n");
    let sim = cli(&["longest", "--method", "ulsim", &d]);
    assert_eq!(
        sim.stdout,
        "longest=2 method=ulsim multiplicity=1 accepted_m=3\n"
    );
    let listed = cli(&["longest", "--method", "ulsim", "--backend", "enumerate", &d]);
    assert_eq!(listed.stdout, sim.stdout);
}

#[test]
fn weighted_input_is_subdivided() {
    let w = data("weighted.txt");
    for method in ["dp", "reduction", "ulsim"] {
        let out = cli(&["longest", "--method", method, &w]);
        assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
        assert!(
            out.stdout.starts_with("longest=4 "),
            "{method}: {}",
            out.stdout
        );
    }
    let out = cli(&["longest", "--method", "ulsim", "--budget", "3", &w]);
    assert_eq!(out.code, EXIT_USAGE);
}

#[test]
fn reads_stdin_when_no_file_given() {
    let text = fs::read_to_string(data("diamond.txt")).unwrap();
    let out = cli_stdin(&["longest"], &text);
    assert_eq!(out.stdout, "longest=2 method=dp\n");
    let out = cli_stdin(&["longest", "-"], &text);
    assert_eq!(out.stdout, "longest=2 method=dp\n");
}

#[test]
fn cyclic_file_is_a_usage_error() {
    let out = cli(&["check", "--property", "identity", &data("cyclic.txt")]);
    assert_eq!(out.code, EXIT_USAGE);
    assert!(out.stderr.contains("cycle"), "{}", out.stderr);
}

#[test]
fn parse_errors_name_the_line() {
    let out = cli_stdin(&["prune"], "dag 2 0 1\ne 0 1 w=zero\n");
    assert_eq!(out.code, EXIT_USAGE);
    assert!(out.stderr.contains("line 2"), "{}", out.stderr);
}

#[test]
fn bad_flags_exit_with_usage() {
    assert_eq!(cli(&["longest", "--method", "magic"]).code, EXIT_USAGE);
    assert_eq!(cli(&["frobnicate"]).code, EXIT_USAGE);
    assert_eq!(cli(&["gen", "--kind", "torus"]).code, EXIT_USAGE);
    assert_eq!(cli(&["--help"]).code, EXIT_OK);
}

#[test]
fn unpruned_input_is_rejected_where_required() {
    let d = data("dangling.txt");
    assert_eq!(cli(&["longest", "--method", "dp", &d]).code, EXIT_OK);
    assert_eq!(
        cli(&["longest", "--method", "reduction", &d]).code,
        EXIT_USAGE
    );
    assert_eq!(cli(&["reduce", "--k", "1", &d]).code, EXIT_USAGE);
}

#[test]
fn prune_golden() {
    let out = cli(&["prune", &data("dangling.txt")]);
    assert_eq!(out.code, EXIT_OK);
    assert_golden("prune_dangling.txt", &out);
}

#[test]
fn reduce_golden_and_sidecar() {
    let out = cli(&["reduce", "--k", "2", &data("diamond.txt")]);
    assert_golden("reduce_diamond.txt", &out);

    let dir = std::env::temp_dir().join(format!("longpath-sidecar-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    let sidecar = dir.join("stretch.txt");
    let out = cli(&[
        "reduce",
        "--k",
        "2",
        "--stretch",
        sidecar.to_str().unwrap(),
        &data("diamond.txt"),
    ]);
    assert_eq!(out.code, EXIT_OK);
    assert!(!out.stdout.contains("stretch"));
    assert_eq!(
        fs::read_to_string(&sidecar).unwrap(),
        "stretch 0 1 3\nstretch 1 2 1\nstretch 0 2 5\n"
    );
    fs::remove_dir_all(dir).ok();
}

#[test]
fn reduced_file_parses_back() {
    let out = cli(&["reduce", "--k", "2", &data("diamond.txt")]);
    let short = cli_stdin(&["check", "--property", "min-unique"], &out.stdout);
    assert_eq!(short.code, EXIT_OK, "{}", short.stderr);
}

#[test]
fn degree3_golden() {
    assert_golden(
        "degree3_diamond.txt",
        &cli(&["degree3", &data("diamond.txt")]),
    );
}

#[test]
fn gen_golden_and_deterministic() {
    let args = [
        "gen",
        "--kind",
        "random-dag",
        "--nodes",
        "7",
        "--density",
        "0.4",
        "--seed",
        "42",
    ];
    let a = cli(&args);
    let b = cli(&args);
    assert_eq!(a, b);
    assert_golden("gen_random_7_42.txt", &a);
    let grid = cli(&[
        "gen",
        "--kind",
        "grid-dag",
        "--rows",
        "3",
        "--cols",
        "4",
        "--density",
        "0.8",
        "--seed",
        "7",
    ]);
    assert_golden("gen_grid_3x4_7.txt", &grid);
}

#[test]
fn weight_and_band_golden() {
    let grid = cli(&[
        "gen",
        "--kind",
        "grid-dag",
        "--rows",
        "3",
        "--cols",
        "4",
        "--density",
        "0.8",
        "--seed",
        "7",
    ]);
    let weighted = cli_stdin(&["weight"], &grid.stdout);
    assert_eq!(weighted.code, EXIT_OK, "{}", weighted.stderr);
    assert_golden("weight_grid_3x4_7.txt", &weighted);
    let band = cli_stdin(&["check", "--property", "band"], &grid.stdout);
    assert_eq!(band.code, EXIT_OK);
    assert_golden("band_grid_3x4_7.txt", &band);
    let too_small = cli_stdin(&["weight", "--n", "1"], &grid.stdout);
    assert_eq!(too_small.code, EXIT_USAGE);
}

#[test]
fn band_needs_a_grid() {
    let out = cli(&["check", "--property", "band", &data("diamond.txt")]);
    assert_eq!(out.code, EXIT_USAGE);
}

#[test]
fn checks_on_diamond_and_square() {
    let d = data("diamond.txt");
    let s = data("square.txt");
    for prop in ["identity", "crossing", "max-unique", "min-unique"] {
        assert_eq!(
            cli(&["check", "--property", prop, &d]).code,
            EXIT_OK,
            "{prop}"
        );
    }
    let out = cli(&["check", "--property", "max-unique", &s]);
    assert_eq!(out.code, EXIT_VIOLATION);
    assert!(out.stdout.contains("status=fail"));
    let out = cli(&["check", "--property", "identity", "--cap", "1", &s]);
    assert_eq!(out.code, EXIT_VIOLATION);
    assert!(out.stdout.contains("truncated=true"));
}

#[test]
fn verify_claims_golden() {
    let ok = cli(&["verify-claims", &data("diamond.txt")]);
    assert_eq!(ok.code, EXIT_OK);
    assert_golden("claims_diamond.txt", &ok);
    let bad = cli(&[
        "verify-claims",
        "--backend",
        "enumerate",
        &data("square.txt"),
    ]);
    assert_eq!(bad.code, EXIT_VIOLATION);
    assert_golden("claims_square.txt", &bad);
}

#[test]
fn longest_golden_outputs() {
    let d = data("diamond.txt");
    let mut all = String::new();
    for method in ["dp", "reduction", "ulsim"] {
        all.push_str(&cli(&["longest", "--method", method, &d]).stdout);
    }
    let out = Outcome {
        code: EXIT_OK,
        stdout: all,
        stderr: String::new(),
    };
    assert_golden("longest_diamond.txt", &out);
}
