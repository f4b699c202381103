//! Runs the binary and compares exit status, stdout and stderr against the
//! files in tests/golden. `UPDATE_GOLDEN=1 cargo test -p frieze-cli`
//! rewrites them.

use std::fs;
use std::path::PathBuf;
use std::process::Command;

const CASES: &[(&str, &[&str])] = &[
    ("verify_pentagon", &["verify", "2,1,3,1,2"]),
    ("verify_pentagon_json", &["verify", "2,1,3,1,2", "--format", "json"]),
    ("verify_hexagon_triangle", &["verify", "3,1,3,1,3,1"]),
    ("verify_rejects", &["verify", "1,2,3"]),
    ("verify_rejects_json", &["verify", "1,2,3", "--format", "json"]),
    ("verify_zero_entry", &["verify", "0,1,1"]),
    ("verify_too_short", &["verify", "1,1"]),
    ("verify_garbage", &["verify", "1,x,3"]),
    ("frieze_triangle", &["frieze", "1,1,1"]),
    ("frieze_hexagon", &["frieze", "1,3,1,3,1,3"]),
    ("frieze_pentagon_json", &["frieze", "1,2,2,1,3", "--format", "json"]),
    ("frieze_defect", &["frieze", "1,2,3"]),
    ("count_13", &["count", "--n", "13"]),
    ("count_9_detail", &["count", "--n", "9", "--detail"]),
    ("count_12_json", &["count", "--n", "12", "--format", "json", "--detail"]),
    ("count_40", &["count", "--n", "40"]),
    ("count_9_brute", &["count", "--n", "9", "--method", "brute"]),
    ("count_brute_over_cap", &["count", "--n", "16", "--method", "brute", "--cap", "10"]),
    ("count_too_small", &["count", "--n", "2"]),
    ("types_6", &["types", "--n", "6"]),
    ("types_7_json", &["types", "--n", "7", "--format", "json"]),
    ("types_5_dot", &["types", "--n", "5", "--format", "dot"]),
    ("supplement", &["supplement", "1,3,4,2"]),
    ("supplement_json", &["supplement", "1,2,5,2,3", "--format", "json"]),
    ("supplement_not_basic", &["supplement", "2,3"]),
    ("extend_two_blocks", &["extend", "1,3,3", "+", "1,3,4"]),
    ("extend_json", &["extend", "1,4,3", "+", "1,3,3", "+", "1,3,2,3", "--format", "json"]),
    ("extend_not_super_basic", &["extend", "1,2"]),
    ("embed_square", &["embed", "2,1,2"]),
    ("embed_obstructed", &["embed", "2,1,2,3"]),
    ("embed_search_json", &["embed", "3,1,3", "--format", "json"]),
    ("reduce_word", &["reduce", "U^2*T"]),
    ("reduce_identity", &["reduce", "S*T^2*U^-1"]),
    ("reduce_matrix_json", &["reduce", "[[2,1],[1,1]]", "--format", "json"]),
    ("reduce_not_unimodular", &["reduce", "[[2,1],[1,2]]"]),
    ("reduce_bad_word", &["reduce", "S*X"]),
    ("tiling_formula", &["tiling", "--formula", "--window", "-2:2,-3:3"]),
    (
        "tiling_seed",
        &[
            "tiling", "--seed", "[[2,3],[3,5]]", "--kfile", "tests/data/k.json", "--lfile",
            "tests/data/l.json", "--window", "-2:2,-2:2",
        ],
    ),
    (
        "tiling_seed_json",
        &[
            "tiling", "--seed", "[[2,3],[3,5]]", "--kfile", "tests/data/k.json", "--lfile",
            "tests/data/l.json", "--window", "0:1,-1:1", "--format", "json",
        ],
    ),
    (
        "tiling_missing_factor",
        &[
            "tiling", "--seed", "[[2,3],[3,5]]", "--kfile", "tests/data/k.json", "--lfile",
            "tests/data/l.json", "--window", "-6:0,0:1",
        ],
    ),
    ("tiling_extract", &["tiling", "--extract", "tests/data/window.json"]),
    ("tiling_extract_json", &["tiling", "--extract", "tests/data/window.json", "--format", "json"]),
    ("tiling_bad_window", &["tiling", "--formula", "--window", "1:0"]),
    ("tree_pentagon", &["tree", "1,2,2,1,3", "--root", "4"]),
    ("tree_pentagon_json", &["tree", "1,2,2,1,3", "--format", "json"]),
    ("tree_hexagon_dot", &["tree", "1,3,1,3,1,3", "--format", "dot"]),
    ("tree_polygon_dot", &["tree", "1,3,1,3,1,3", "--format", "dot", "--polygon"]),
    ("tree_bad_root", &["tree", "1,1,1", "--root", "5"]),
    ("tree_not_quiddity", &["tree", "1,2,3"]),
    ("no_subcommand", &[]),
];

fn render(args: &[&str]) -> String {
    let out = Command::new(env!("CARGO_BIN_EXE_frieze"))
        .args(args)
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .env_remove("FRIEZE_BRUTE_CAP")
        .output()
        .expect("binary runs");
    format!(
        "$ frieze {}\nexit: {}\n--- stdout\n{}--- stderr\n{}",
        args.join(" "),
        out.status.code().expect("exited normally"),
        String::from_utf8_lossy(&out.stdout),
        String::from_utf8_lossy(&out.stderr)
    )
}

#[test]
fn golden_outputs() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    let mut stale = Vec::new();
    for (name, args) in CASES {
        let got = render(args);
        let path = dir.join(format!("{name}.txt"));
        if update {
            fs::create_dir_all(&dir).unwrap();
            fs::write(&path, &got).unwrap();
            continue;
        }
        let want = fs::read_to_string(&path).unwrap_or_default();
        if got != want {
            eprintln!("{name}: expected\n{want}\ngot\n{got}");
            stale.push(*name);
        }
    }
    assert!(stale.is_empty(), "mismatched golden files: {stale:?}");
}

fn status(args: &[&str], envs: &[(&str, &str)]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_frieze"))
        .args(args)
        .envs(envs.iter().copied())
        .output()
        .unwrap();
    (out.status.code().unwrap(), String::from_utf8_lossy(&out.stdout).into_owned())
}

#[test]
fn brute_cap_comes_from_the_environment() {
    let args = ["count", "--n", "8", "--method", "brute"];
    assert_eq!(status(&args, &[("FRIEZE_BRUTE_CAP", "7")]).0, 2);
    assert_eq!(status(&args, &[("FRIEZE_BRUTE_CAP", "8")]), (0, "K=12\n".into()));
    assert_eq!(status(&args, &[("FRIEZE_BRUTE_CAP", "eight")]).0, 2);
}

#[test]
fn formula_and_brute_agree_through_the_binary() {
    for n in 3..=11 {
        let n = n.to_string();
        let f = status(&["count", "--n", &n], &[]);
        let b = status(&["count", "--n", &n, "--method", "brute"], &[]);
        assert_eq!(f, b, "n = {n}");
    }
}

#[test]
fn types_json_lists_k_canonical_sequences() {
    let (code, out) = status(&["types", "--n", "8", "--format", "json"], &[]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let types = v["types"].as_array().unwrap();
    assert_eq!(v["K"], 12);
    assert_eq!(types.len(), 12);
    for t in types {
        let seq: Vec<String> = t.as_array().unwrap().iter().map(|x| x.to_string()).collect();
        let (c, _) = status(&["verify", &seq.join(",")], &[]);
        assert_eq!(c, 0);
    }
}
