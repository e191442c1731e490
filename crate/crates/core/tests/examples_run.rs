// Runs each example binary that `cargo test` builds alongside this target.

use std::path::PathBuf;
use std::process::Command;

const EXAMPLES: [&str; 9] = [
    "signal_basics",
    "orlicz_norms",
    "moduli_of_smoothness",
    "best_approximation",
    "jackson_constants",
    "sharp_constant_lp",
    "inverse_bounds",
    "class_characterization",
    "verification_suite",
];

fn examples_dir() -> PathBuf {
    // target/<profile>/deps/examples_run-<hash> -> target/<profile>/examples
    let exe = std::env::current_exe().unwrap();
    exe.parent().and_then(|d| d.parent()).unwrap().join("examples")
}

#[test]
fn every_example_runs_cleanly() {
    let dir = examples_dir();
    for name in EXAMPLES {
        let path = dir.join(format!("{name}{}", std::env::consts::EXE_SUFFIX));
        assert!(path.is_file(), "missing example binary {}", path.display());
        let out = Command::new(&path).env("APJ_OUTPUT_DIR", std::env::temp_dir().join("apjackson-examples-test")).output().unwrap();
        assert!(out.status.success(), "{name} failed: {}", String::from_utf8_lossy(&out.stderr));
        assert!(!out.stdout.is_empty(), "{name} printed nothing");
    }
}

#[test]
fn extremal_example_reports_equality() {
    let out = Command::new(examples_dir().join("jackson_constants")).output().unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    let line = text.lines().find(|l| l.starts_with("corollary3")).unwrap();
    let nums: Vec<f64> = line.split_whitespace().filter_map(|w| w.parse().ok()).collect();
    assert!((nums[0] - nums[1]).abs() < 1e-6, "{line}");
}
