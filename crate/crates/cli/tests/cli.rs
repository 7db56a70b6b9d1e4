//! End-to-end tests of the binary: argument validation, exit codes, output
//! format contracts, and determinism.

use std::path::PathBuf;
use std::process::{Command, Output};

fn sphens(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sphens")).args(args).output().expect("spawn sphens")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

/// Data rows of a CSV report (everything except '#' lines and headers).
fn data_rows(csv: &str) -> Vec<Vec<String>> {
    csv.lines()
        .filter(|l| !l.starts_with('#') && !l.is_empty())
        .skip(1)
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

fn metadata_of(csv: &str) -> String {
    csv.lines().next().unwrap_or_default().to_string()
}

#[test]
#[allow(clippy::approx_constant)] // the documented example radius literal
fn sample_rows_satisfy_sphere_constraint() {
    let out = sphens(&[
        "sample", "--beta", "2", "--dim", "2", "--radius", "1.4142135", "--count", "3", "--seed",
        "7",
    ]);
    assert!(out.status.success());
    let rows = data_rows(&stdout_of(&out));
    assert_eq!(rows.len(), 3);
    for row in rows {
        let l1: f64 = row[1].parse().unwrap();
        let l2: f64 = row[2].parse().unwrap();
        let r_sq = 1.4142135f64 * 1.4142135;
        assert!((l1 * l1 + l2 * l2 - r_sq).abs() < 1e-8, "{l1}, {l2}");
        assert!(l1 <= l2);
    }
}

#[test]
fn sample_is_deterministic() {
    let args =
        ["sample", "--beta", "4", "--dim", "3", "--count", "5", "--seed", "11", "--format", "csv"];
    let a = sphens(&args);
    let b = sphens(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout, "byte-identical output for identical config");
}

#[test]
fn zero_dim_is_usage_error() {
    let out = sphens(&["sample", "--dim", "0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn mismatched_scale_flags_are_usage_errors() {
    let out = sphens(&["sample", "--dim", "3", "--kind", "gaussian", "--radius", "2"]);
    assert_eq!(out.status.code(), Some(2));
    let out = sphens(&["sample", "--dim", "3", "--kind", "spherical", "--q", "2"]);
    assert_eq!(out.status.code(), Some(2));
    let out = sphens(&["spacings", "--dim", "24", "--count", "2", "--q", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bad_seed_is_usage_error() {
    let out = sphens(&["sample", "--dim", "2", "--seed", "banana"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("seed"));
}

#[test]
fn density_grid_integrates_to_one() {
    let out = sphens(&["density", "--dim", "4", "--radius", "2", "--grid", "-2:2:401"]);
    assert!(out.status.success());
    let text = stdout_of(&out);
    let rows = data_rows(&text);
    assert_eq!(rows.len(), 401);
    // Trapezoid rule on the emitted grid.
    let xs: Vec<f64> = rows.iter().map(|r| r[0].parse().unwrap()).collect();
    let fs: Vec<f64> = rows.iter().map(|r| r[1].parse().unwrap()).collect();
    let mut mass = 0.0;
    for i in 1..xs.len() {
        mass += 0.5 * (fs[i] + fs[i - 1]) * (xs[i] - xs[i - 1]);
    }
    assert!((mass - 1.0).abs() < 1e-4, "trapezoid mass {mass}");
    let meta = metadata_of(&text);
    assert!(meta.contains("p_coeffs="));
    assert!(meta.contains("exponent=7/2"));
    assert!(meta.contains("l1_semicircle_gap="));
}

#[test]
fn density_large_dim_overlays_semicircle() {
    // At N = 16, r = 4 the density is visually on top of the rescaled
    // semicircle; the metadata reports the L¹ gap.
    let out = sphens(&["density", "--dim", "16", "--radius", "4", "--grid", "-4:4:201"]);
    assert!(out.status.success());
    let meta = metadata_of(&stdout_of(&out));
    let gap: f64 = meta
        .split(';')
        .find_map(|kv| kv.strip_prefix("l1_semicircle_gap="))
        .expect("gap in metadata")
        .parse()
        .unwrap();
    assert!(gap < 0.06, "L1 gap {gap}");
}

#[test]
fn density_flags_divergent_endpoints() {
    let out = sphens(&["density", "--dim", "2", "--radius", "1", "--grid", "-1:1:3"]);
    assert!(out.status.success());
    let rows = data_rows(&stdout_of(&out));
    assert_eq!(rows[0][2], "divergent");
    assert_eq!(rows[2][2], "divergent");
    assert_eq!(rows[1][2], "");
}

#[test]
fn density_rejects_beta_one() {
    let out = sphens(&["density", "--beta", "1", "--dim", "4"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn density_rejects_dim_one() {
    let out = sphens(&["density", "--dim", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn exact_moments_match_known_rationals() {
    let out = sphens(&["moments", "--mode", "exact", "--beta", "2", "--dim", "8", "--radius-sq",
        "8", "--max-k", "2"]);
    assert!(out.status.success());
    let rows = data_rows(&stdout_of(&out));
    assert_eq!(rows[2][0], "2");
    assert_eq!(rows[2][1], "1", "m2(S_2(8, √8)) must be the exact rational 1");

    let out = sphens(&["moments", "--mode", "exact", "--beta", "2", "--dim", "2", "--radius-sq",
        "2", "--max-k", "4"]);
    let rows = data_rows(&stdout_of(&out));
    assert_eq!(rows[4][1], "3/2", "m4(S_2(2, √2))");
    assert_eq!(rows[4][3], "2", "Catalan limit column C_2");
}

#[test]
fn exact_moments_beta_four_requires_gaussian_file() {
    let out =
        sphens(&["moments", "--mode", "exact", "--beta", "4", "--dim", "4", "--radius-sq", "4"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("gaussian-moments"));
}

#[test]
fn exact_moments_beta_four_with_gaussian_file() {
    // m_2(G_4(4, 1)) = (N − 1 + 2/β)/q = 7/2; with n = 28 the transfer gives
    // m_2(S_4(4, 2)) = (β/4·q·r²)·Γ(14)/Γ(15)·(7/2) = 4·(1/14)·(7/2) = 1 —
    // r = 2 = √N, so this is the variance identity.
    let dir = std::env::temp_dir().join("sphens_cli_gm");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("g4.txt");
    std::fs::write(&path, "0 1\n2 7/2\n").unwrap();
    let out = sphens(&["moments", "--mode", "exact", "--beta", "4", "--dim", "4", "--radius-sq",
        "4", "--max-k", "2", "--gaussian-moments", path.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let rows = data_rows(&stdout_of(&out));
    assert_eq!(rows[2][1], "1");
}

#[test]
fn mc_moments_run_small() {
    let out = sphens(&["moments", "--mode", "mc", "--beta", "1", "--dim", "4", "--count", "200",
        "--seed", "9", "--max-k", "4"]);
    assert!(out.status.success());
    let rows = data_rows(&stdout_of(&out));
    assert_eq!(rows.len(), 5);
    let m0: f64 = rows[0][1].parse().unwrap();
    assert_eq!(m0, 1.0);
    let m2: f64 = rows[2][1].parse().unwrap();
    let se2: f64 = rows[2][2].parse().unwrap();
    assert!((m2 - 1.0).abs() < 5.0 * se2.max(1e-12), "m2 = {m2} ± {se2}");
}

#[test]
fn spacings_mean_is_one_and_ks_reported() {
    let out = sphens(&["spacings", "--dim", "24", "--count", "30", "--seed", "3", "--take", "21",
        "--compare", "gue"]);
    assert!(out.status.success());
    let text = stdout_of(&out);
    assert!(metadata_of(&text).contains("ks_vs_gue="));
    // Spacings table runs until the `# table=histogram` marker.
    let mut spacings = Vec::new();
    for line in text.lines().skip(2) {
        if line.starts_with('#') {
            break;
        }
        let s: f64 = line.split(',').nth(1).unwrap().parse().unwrap();
        spacings.push(s);
    }
    assert_eq!(spacings.len(), 30 * 20);
    let mean = spacings.iter().sum::<f64>() / spacings.len() as f64;
    assert!((mean - 1.0).abs() <= 1e-12, "mean {mean}");
    assert!(text.contains("# table=histogram"));
}

#[test]
fn spacings_reject_small_dim() {
    let out = sphens(&["spacings", "--dim", "20", "--count", "5"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn json_format_is_well_formed() {
    let out = sphens(&["spacings", "--dim", "21", "--count", "4", "--seed", "2", "--format",
        "json"]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout_of(&out)).expect("valid json");
    assert_eq!(doc["metadata"]["command"], "spacings");
    assert!(doc["tables"]["spacings"]["rows"].as_array().unwrap().len() == 80);
    assert!(doc["tables"]["histogram"]["rows"].is_array());
}

#[test]
fn output_file_is_written() {
    let dir = std::env::temp_dir().join("sphens_cli_out");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("sample.csv");
    let out = sphens(&["sample", "--dim", "2", "--count", "2", "--seed", "4", "--output",
        path.to_str().unwrap()]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(data_rows(&text).len(), 2);
}

#[test]
fn unwritable_output_is_io_error() {
    let out = sphens(&["sample", "--dim", "2", "--output", "/nonexistent-dir/x.csv"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn validate_quick_passes() {
    let out = sphens(&["validate", "--quick"]);
    assert!(out.status.success(), "{}", stdout_of(&out));
    let text = stdout_of(&out);
    assert!(text.contains("13/13 checks passed"));
    assert!(text.contains("[PASS] C01"));
}

#[test]
fn validate_fails_on_corrupted_golden() {
    let dir = std::env::temp_dir().join("sphens_cli_golden");
    std::fs::create_dir_all(&dir).unwrap();
    let source: PathBuf =
        [env!("CARGO_MANIFEST_DIR"), "..", "core", "data"].iter().collect();
    for n in [2, 3, 4] {
        let name = format!("density_n{n}.txt");
        std::fs::copy(source.join(&name), dir.join(&name)).unwrap();
    }
    // Corrupt the N = 4 record.
    let target = dir.join("density_n4.txt");
    let corrupted = std::fs::read_to_string(&target).unwrap().replace("256/143", "255/143");
    std::fs::write(&target, corrupted).unwrap();

    let out = sphens(&["validate", "--quick", "--golden-dir", dir.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout_of(&out);
    assert!(text.contains("[FAIL] C13"), "{text}");
    assert!(text.contains("p4-golden"), "failure must name the check: {text}");
}
