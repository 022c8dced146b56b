use std::path::PathBuf;
use std::process::Command;

// (golden name, arguments, expected exit code)
pub const CASES: &[(&str, &[&str], i32)] = &[
    ("close_x2", &["close", "x2.alg"], 0),
    ("close_log_x3", &["close", "x3.alg", "--variant", "log"], 0),
    ("close_bound_cusp", &["close", "cusp.alg", "--bound", "2", "--prune"], 0),
    ("sing_point_cusp", &["sing", "cusp.alg", "--point", "0,0"], 0),
    ("sing_grid_f5", &["sing", "cusp_f5.alg", "--grid"], 0),
    ("coeff_f1p_cusp", &["coeff", "cusp.alg", "--recipe", "f1p"], 0),
    ("coeff_f1_xy_json", &["--json", "coeff", "xy.alg", "--recipe", "f1"], 0),
    ("lambda_t3", &["lambda", "t3.alg"], 0),
    ("member_t3", &["member", "t3.alg", "--elem", "t^2", "--weight", "1"], 0),
    (
        "equal_closure_refuted",
        &["equal-closure", "x2w.alg", "xw.alg", "--trials", "5"],
        1,
    ),
    (
        "main_check_sat",
        &["main-check", "x2.alg", "x2_sat.alg", "--cert", "sat", "--trials", "20"],
        0,
    ),
    (
        "main_check_veronese_json",
        &[
            "--json",
            "main-check",
            "xy_ver2.alg",
            "xy.alg",
            "--cert",
            "veronese:2",
            "--trials",
            "20",
            "--seed",
            "3",
        ],
        0,
    ),
];

pub fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests")
}

pub fn run(args: &[&str]) -> (Vec<u8>, i32) {
    let data = root().join("data");
    let out = Command::new(env!("CARGO_BIN_EXE_reesalg"))
        .current_dir(&data)
        .args(args)
        .output()
        .expect("failed to spawn reesalg");
    assert!(
        out.stderr.is_empty(),
        "unexpected stderr for {args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    (out.stdout, out.status.code().expect("exit code"))
}
