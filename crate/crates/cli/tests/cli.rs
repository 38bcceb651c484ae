//! End-to-end runs of the command line through `run`, compared byte for byte
//! against files in `tests/golden`. Set `BLESS=1` to rewrite them.

use std::path::PathBuf;

use divclass_cli::run;

struct Outcome {
    code: i32,
    stdout: String,
    stderr: String,
}

fn invoke(args: &[&str]) -> Outcome {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("divclass").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    Outcome {
        code,
        stdout: String::from_utf8(out).expect("utf-8 stdout"),
        stderr: String::from_utf8(err).expect("utf-8 stderr"),
    }
}

fn golden(name: &str, args: &[&str], expected_code: i32) {
    let got = invoke(args);
    assert_eq!(
        got.code, expected_code,
        "exit code for {args:?}; stderr: {}",
        got.stderr
    );
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name);
    if std::env::var_os("BLESS").is_some() {
        std::fs::write(&path, &got.stdout).unwrap();
        return;
    }
    let want = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing golden file {}", path.display()));
    assert_eq!(got.stdout, want, "output of {args:?} differs from {name}");
}

#[test]
fn golden_singularity_node() {
    golden("singularity_node.txt", &["singularity", "x*y"], 0);
}

#[test]
fn golden_singularity_cusp_explained() {
    golden(
        "singularity_cusp_explain.txt",
        &["--explain", "singularity", "y^2 - x^3"],
        0,
    );
}

#[test]
fn golden_singularity_json() {
    golden("singularity_triple.json", &["--json", "singularity", "x^3 - y^3"], 0);
}

#[test]
fn golden_cart() {
    golden("cart_3_3.txt", &["cart", "3", "3"], 0);
    golden("cart_double_line.txt", &["cart", "1", "0", "--nilpotent-w", "1"], 0);
}

#[test]
fn golden_curve_pic() {
    golden("curve_pic_triangle.txt", &["curve-pic", "triangle"], 0);
    golden(
        "curve_pic_conductor.json",
        &["--json", "curve-pic", "triple-line-conductor"],
        0,
    );
}

#[test]
fn golden_apic_local() {
    golden("apic_local_pinch.txt", &["apic-local", "pinch-point"], 0);
}

#[test]
fn golden_surface() {
    golden("surface_ruled_cubic.txt", &["surface", "ruled-cubic", "--explain"], 0);
    golden("surface_steiner.json", &["surface", "steiner", "--json"], 0);
}

#[test]
fn golden_stci() {
    golden("stci_screen_8.txt", &["stci", "screen", "--dmax", "8"], 0);
    golden("stci_screen_10.json", &["--json", "stci", "screen", "--dmax", "10"], 0);
    golden(
        "stci_bounds_10_6.txt",
        &["stci", "bounds", "--d", "10", "--g", "6", "--m", "4", "--n", "5"],
        0,
    );
    golden(
        "stci_mu_root5.json",
        &["--json", "stci", "mu", "--root-of-unity", "5"],
        0,
    );
    golden("stci_steiner.txt", &["stci", "steiner"], 0);
    golden("stci_ruled_cubic.txt", &["stci", "ruled-cubic"], 0);
}

#[test]
fn golden_errors() {
    golden("error_unknown_surface.json", &["--json", "surface", "klein-quartic"], 1);
    golden(
        "error_irrational.json",
        &["--json", "singularity", "(y^2 - 2*x^2)^2 + x^5"],
        2,
    );
}

#[test]
fn node_reports_expected_cart_group() {
    let o = invoke(&["singularity", "x*y"]);
    assert!(o.stdout.contains("Z^2 (+) k*"));
    assert!(o.stdout.contains("rho             2"));
}

#[test]
fn pinch_point_is_z2() {
    let o = invoke(&["apic-local", "pinch-point"]);
    assert_eq!(o.code, 0);
    assert!(o.stdout.lines().any(|l| l.starts_with("APic") && l.ends_with("Z/2")));
}

#[test]
fn screen_marks_open_pairs() {
    let o = invoke(&["stci", "screen", "--dmax", "10"]);
    let unresolved: Vec<&str> = o
        .stdout
        .lines()
        .filter(|l| l.split_whitespace().nth(2) == Some("unresolved"))
        .collect();
    assert_eq!(unresolved.len(), 2, "{unresolved:?}");
    assert!(o.stdout.ends_with("unresolved (8,3) (10,6)\n"));
}

#[test]
fn output_is_byte_identical_across_runs() {
    let cases: &[&[&str]] = &[
        &["--json", "stci", "screen", "--dmax", "9"],
        &["--json", "--explain", "surface", "quartic-double-line"],
        &["singularity", "x^5 - y^5"],
        &["curve-pic", "noncoplanar-concurrent-lines"],
    ];
    for args in cases {
        let first = invoke(args).stdout;
        for _ in 0..5 {
            assert_eq!(invoke(args).stdout, first, "{args:?}");
        }
    }
}

#[test]
fn explain_citations_come_from_catalog() {
    let runs: &[&[&str]] = &[
        &["--json", "--explain", "singularity", "x*y"],
        &["--json", "--explain", "cart", "1", "0", "--nilpotent-w", "2"],
        &["--json", "--explain", "curve-pic", "thick-line"],
        &["--json", "--explain", "apic-local", "three-planes-point"],
        &["--json", "--explain", "surface", "steiner"],
        &["--json", "--explain", "stci", "screen", "--dmax", "10"],
        &[
            "--json",
            "--explain",
            "stci",
            "bounds",
            "--d",
            "8",
            "--g",
            "5",
            "--m",
            "4",
            "--n",
            "4",
        ],
        &["--json", "--explain", "stci", "mu", "--lambda", "2"],
        &["--json", "--explain", "stci", "steiner"],
        &["--json", "--explain", "stci", "ruled-cubic"],
    ];
    let catalog = divclass::surface::Catalog::bundled();
    for args in runs {
        let o = invoke(args);
        assert_eq!(o.code, 0, "{args:?}");
        let doc: serde_json::Value = serde_json::from_str(&o.stdout).unwrap();
        assert_eq!(doc["schema"], 1);
        let prov = doc["provenance"].as_array().expect("provenance present");
        assert!(!prov.is_empty());
        for entry in prov {
            let rule = entry["rule"].as_str().unwrap();
            assert_eq!(catalog.citation(rule), entry["citation"].as_str(), "{rule}");
        }
    }
}

#[test]
fn exit_codes() {
    assert_eq!(invoke(&["--help"]).code, 0);
    assert_eq!(invoke(&[]).code, 1);
    assert_eq!(invoke(&["frobnicate"]).code, 1);
    assert_eq!(invoke(&["cart", "two", "1"]).code, 1);
    assert_eq!(invoke(&["stci", "mu", "--lambda", "1", "--root-of-unity", "3"]).code, 1);
    assert_eq!(invoke(&["stci", "mu", "--lambda", "one"]).code, 1);
    assert_eq!(invoke(&["curve-pic", "/nonexistent/config.json"]).code, 1);
    assert_eq!(invoke(&["cart", "0", "0"]).code, 2);
    assert_eq!(invoke(&["singularity", "x*(y"]).code, 2);
    assert_eq!(invoke(&["singularity", "x + 1"]).code, 2);
    assert_eq!(
        invoke(&["stci", "bounds", "--d", "8", "--g", "5", "--m", "3", "--n", "4"]).code,
        2
    );
    assert_eq!(invoke(&["stci", "screen", "--dmax", "2"]).code, 2);
    assert_eq!(invoke(&["stci", "mu", "--root-of-unity", "1"]).code, 2);
}

#[test]
fn usage_errors_list_commands_and_names() {
    let o = invoke(&["frobnicate"]);
    assert!(
        o.stderr.contains("valid commands: singularity, cart, curve-pic"),
        "{}",
        o.stderr
    );
    assert!(o.stderr.contains("stci ruled-cubic"), "{}", o.stderr);
    assert!(!o.stderr.contains("error: error:"), "{}", o.stderr);
    let o = invoke(&["surface", "nope"]);
    for name in divclass::surface::Catalog::bundled().entry_names() {
        assert!(o.stderr.contains(&name), "{name} missing from {}", o.stderr);
    }
    let o = invoke(&["--json", "apic-local", "nope"]);
    let doc: serde_json::Value = serde_json::from_str(&o.stdout).unwrap();
    assert_eq!(doc["error"]["kind"], "UnknownName");
    assert!(doc["error"]["message"].as_str().unwrap().contains("pinch-point"));
}

#[test]
fn curve_and_germ_files_are_accepted() {
    let dir = std::env::temp_dir().join(format!("divclass-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let curve = dir.join("tacnodal.json");
    std::fs::write(
        &curve,
        r#"{"name": "two conics tangent at two points",
            "components": [{"name": "C1"}, {"name": "C2"}],
            "points": [{"branches": [0, 1], "delta": 2}, {"branches": [0, 1], "delta": 2}]}"#,
    )
    .unwrap();
    let o = invoke(&["curve-pic", curve.to_str().unwrap()]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    assert!(o.stdout.contains("Z^2 (+) k* (+) (k+)^2"), "{}", o.stdout);
    assert!(o.stdout.contains("p_a                     3"), "{}", o.stdout);

    let germ = dir.join("germ.json");
    let preset = r#"{"name": "custom-pinch", "description": "pinch point again",
        "cart_L": {"free": 1}, "cart_Gamma": {"free": 1},
        "pullback": {"free": [[2]]}, "points_upstairs": 1}"#;
    std::fs::write(&germ, preset).unwrap();
    let o = invoke(&["apic-local", germ.to_str().unwrap()]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    assert!(o.stdout.contains("Z/2"), "{}", o.stdout);
    std::fs::remove_dir_all(&dir).ok();
}
