use std::process::{Command, Output};

use serde_json::Value;

fn scarf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_scarf")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json_of(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(o)))
}

fn schema() -> jsonschema::Validator {
    let text = include_str!("../schema/scarf-output.schema.json");
    jsonschema::validator_for(&serde_json::from_str(text).unwrap()).unwrap()
}

fn assert_valid(v: &Value) {
    let s = schema();
    let errors: Vec<String> = s.iter_errors(v).map(|e| format!("{e} at {}", e.instance_path())).collect();
    assert!(errors.is_empty(), "{errors:#?}");
}

fn csv_rows(o: &Output) -> (Vec<String>, Vec<Vec<String>>) {
    let mut r = csv::Reader::from_reader(o.stdout.as_slice());
    let header = r.headers().unwrap().iter().map(String::from).collect();
    let rows = r.records().map(|rec| rec.unwrap().iter().map(String::from).collect()).collect();
    (header, rows)
}

fn energies(levels: &Value) -> Vec<(u64, f64)> {
    levels.as_array().unwrap().iter().map(|l| (l["n"].as_u64().unwrap(), l["re"].as_f64().unwrap())).collect()
}

#[test]
fn spectrum_example() {
    let o = scarf(&[
        "spectrum", "--A", "2", "--B", "1", "--alpha", "1", "--C", "0", "--branch", "both", "--format", "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v = json_of(&o);
    assert_valid(&v);
    assert_eq!(v["command"], "spectrum");
    assert_eq!(v["version"], env!("CARGO_PKG_VERSION"));
    assert_eq!(v["params"]["A"], 2.0);
    let r = &v["result"];
    assert_eq!(r["domain"], "SusyUnbroken");
    assert_eq!(energies(&r["branches"]["One"]), vec![(0, -4.0), (1, -1.0)]);
    assert_eq!(energies(&r["branches"]["Two"]), vec![(0, -0.25)]);
}

#[test]
fn floats_carry_seventeen_significant_digits() {
    let o = scarf(&["spectrum", "--A", "2", "--B", "1", "--format", "json"]);
    let text = stdout(&o);
    assert!(text.contains("-4.0000000000000000e0"), "{text}");
    assert!(text.contains("-2.5000000000000000e-1"));
    let o = scarf(&["spectrum", "--A", "2", "--B", "1", "--format", "csv"]);
    let (header, rows) = csv_rows(&o);
    assert_eq!(header, ["branch", "n", "re", "im", "beyond_cutoff"]);
    assert_eq!(rows[0], ["One", "0", "-4.0000000000000000e0", "0.0000000000000000e0", "false"]);
}

#[test]
fn classify_example() {
    let o = scarf(&["classify", "--A", "-2", "--B", "1", "--alpha", "1", "--C", "0"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "SusyBrokenI\n");
    let o = scarf(&["classify", "--A", "-2", "--B", "1", "--format", "json"]);
    let v = json_of(&o);
    assert_valid(&v);
    assert_eq!(v["result"]["class"], "SusyBrokenI");
}

#[test]
fn wavefunction_example_peaks_at_the_origin() {
    let o = scarf(&[
        "wavefunction",
        "--A",
        "24",
        "--B",
        "25",
        "--C",
        "7",
        "--alpha",
        "2",
        "--n",
        "12",
        "--sign",
        "+",
        "--xmin",
        "-4",
        "--xmax",
        "4",
        "--points",
        "801",
        "--format",
        "csv",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let (header, rows) = csv_rows(&o);
    assert_eq!(header, ["x", "re", "im", "abs2"]);
    assert_eq!(rows.len(), 801);
    let parsed: Vec<Vec<f64>> = rows.iter().map(|r| r.iter().map(|c| c.parse().unwrap()).collect()).collect();
    let best = parsed.iter().max_by(|a, b| a[3].total_cmp(&b[3])).unwrap();
    assert_eq!(best[0], 0.0);
    for r in &parsed {
        assert!((r[1] * r[1] + r[2] * r[2] - r[3]).abs() <= 1e-12 * r[3].max(1e-300));
    }
}

#[test]
fn wavefunction_json_and_minus_sign() {
    let o = scarf(&[
        "wavefunction",
        "--A",
        "2",
        "--B",
        "2.5",
        "--C",
        "0.5",
        "--n",
        "1",
        "--sign",
        "-",
        "--points",
        "11",
        "--normalize",
        "sup",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v = json_of(&o);
    assert_valid(&v);
    assert_eq!(v["result"]["sign"], "-");
    let peak =
        v["result"]["points"].as_array().unwrap().iter().map(|p| p["abs2"].as_f64().unwrap()).fold(0.0, f64::max);
    assert!((peak - 1.0).abs() < 1e-12);
}

#[test]
fn verify_oracle_example() {
    let o = scarf(&["verify", "oracle", "--A", "2", "--B", "1", "--alpha", "1", "--C", "0"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v = json_of(&o);
    assert_valid(&v);
    let r = &v["result"];
    assert_eq!(r["passed"], true);
    let mut found: Vec<f64> =
        r["details"]["extrapolated"].as_array().unwrap().iter().map(|z| z["re"].as_f64().unwrap()).collect();
    found.sort_by(f64::total_cmp);
    for (got, want) in found.iter().zip([-4.0, -1.0, -0.25]) {
        assert!((got - want).abs() < 1e-6, "{found:?}");
    }
    assert_eq!(found.len(), 3);
}

#[test]
fn verify_bernoulli_example() {
    let o = scarf(&["verify", "bernoulli", "--A", "1", "--B", "-0.5", "--alpha", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json_of(&o);
    assert_valid(&v);
    assert_eq!(v["result"]["passed"], true);
}

#[test]
fn verify_ladder_example() {
    let o = scarf(&["verify", "ladder", "--A", "2", "--B", "1", "--alpha", "1", "--branch", "One"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v = json_of(&o);
    assert_valid(&v);
    let d = &v["result"]["details"];
    assert!((d["ground_state"]["re"].as_f64().unwrap() + 4.0).abs() < 1e-6);
    // V- holds {-4, -1, -0.25}; V+ keeps everything above the ground state
    let plus: Vec<f64> = d["plus"].as_array().unwrap().iter().map(|z| z["re"].as_f64().unwrap()).collect();
    assert_eq!(plus.len(), 2);
    assert!((plus[0] + 1.0).abs() < 1e-6 && (plus[1] + 0.25).abs() < 1e-6, "{plus:?}");
    assert!((d["plus_above_ground"][0]["re"].as_f64().unwrap() - 3.0).abs() < 1e-6);
}

#[test]
fn failed_mandatory_check_still_writes_the_report() {
    let o = scarf(&["verify", "bernoulli", "--A", "1", "--B", "1", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(2));
    let (header, rows) = csv_rows(&o);
    assert_eq!(header, ["name", "passed", "mandatory", "value", "threshold"]);
    assert_eq!(rows[0][0], "bernoulli_residual");
    assert_eq!(rows[0][1], "false");
    assert!(String::from_utf8_lossy(&o.stderr).contains("CheckFailed"));
}

#[test]
fn deformation_suites() {
    let miura = scarf(&["verify", "miura", "--A", "1", "--B", "-0.5"]);
    assert_eq!(miura.status.code(), Some(0));
    assert_valid(&json_of(&miura));
    let kdv = scarf(&["verify", "kdv", "--A", "-0.5", "--B", "1"]);
    assert_eq!(kdv.status.code(), Some(0));
    let v = json_of(&kdv);
    assert_valid(&v);
    let minus = &v["result"]["details"]["waves"][1];
    assert_eq!(minus["convention"], "-6");
    assert!((minus["c"]["re"].as_f64().unwrap() + 5.0).abs() < 1e-9);
    let off_line = scarf(&["verify", "miura", "--A", "1", "--B", "1"]);
    assert_eq!(off_line.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&off_line.stderr).contains("NotOnIsospectralLine"));
}

#[test]
fn usage_errors_exit_one() {
    for args in [
        vec!["classify", "--A", "1"],
        vec!["classify", "--A", "inf", "--B", "1"],
        vec!["classify", "--A", "1+1", "--B", "1"],
        vec!["spectrum", "--A", "1", "--B", "1", "--branch", "three"],
        vec!["scatter", "--A", "1", "--B", "1"],
        vec!["frobnicate"],
        vec![],
    ] {
        let o = scarf(&args);
        assert_eq!(o.status.code(), Some(1), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
        assert!(o.stdout.is_empty());
    }
    let o = scarf(&["classify", "--A", "nan", "--B", "1"]);
    assert!(String::from_utf8_lossy(&o.stderr).contains("--A"));
}

#[test]
fn help_and_version_exit_zero() {
    assert_eq!(scarf(&["--help"]).status.code(), Some(0));
    let v = scarf(&["--version"]);
    assert_eq!(v.status.code(), Some(0));
    assert!(stdout(&v).contains(env!("CARGO_PKG_VERSION")));
}

#[test]
fn numerical_errors_exit_two_with_the_module_error_name() {
    for (args, name) in [
        (vec!["spectrum", "--A", "1", "--B", "1", "--C", "0.3"], "NotRealPhase"),
        (vec!["classify", "--A", "1", "--B", "1", "--alpha", "0"], "InvalidParams"),
        (vec!["wavefunction", "--A", "1", "--B", "3", "--n", "0"], "NotOnPTLine"),
        (vec!["scatter", "--A", "2", "--B", "1", "--E", "1", "--L", "2"], "NonDecayedPotential"),
        (vec!["atlas", "--resolution", "2001"], "InvalidInput"),
    ] {
        let o = scarf(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        let err = String::from_utf8_lossy(&o.stderr);
        assert!(err.starts_with(&format!("error: {name}:")), "{args:?}: {err}");
    }
}

#[test]
fn output_is_deterministic() {
    let runs = [
        vec!["atlas", "--resolution", "41", "--format", "json"],
        vec![
            "scatter",
            "--A",
            "2",
            "--B",
            "2.5",
            "--C",
            "0.7",
            "--Emin",
            "0.1",
            "--Emax",
            "2",
            "--samples",
            "24",
            "--format",
            "csv",
        ],
        vec!["sweep", "--B", "1", "--param", "A", "--start", "-2", "--stop", "2", "--steps", "33"],
    ];
    for args in runs {
        let a = scarf(&args);
        let b = scarf(&args);
        assert_eq!(a.status.code(), Some(0), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn out_flag_writes_the_same_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("spec.json");
    let args = ["spectrum", "--A", "2", "--B", "1"];
    let direct = scarf(&args);
    let mut with_out = args.to_vec();
    let p = path.to_str().unwrap();
    with_out.extend(["--out", p]);
    let o = scarf(&with_out);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    assert_eq!(std::fs::read(&path).unwrap(), direct.stdout);
}

#[test]
fn atlas_layout() {
    let o = scarf(&[
        "atlas",
        "--alpha",
        "1",
        "--amin",
        "-3",
        "--amax",
        "3",
        "--bmin",
        "-3",
        "--bmax",
        "3",
        "--resolution",
        "121",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v = json_of(&o);
    assert_valid(&v);
    let r = &v["result"];
    let cells = r["cells"].as_array().unwrap();
    assert_eq!(cells.len(), 121 * 121);
    let markers: Vec<(f64, f64)> =
        r["markers"].as_array().unwrap().iter().map(|m| (m[0].as_f64().unwrap(), m[1].as_f64().unwrap())).collect();
    assert_eq!(markers, vec![(0.5, 0.0), (-0.5, 1.0)]);
    for line in r["asymptotes"].as_array().unwrap() {
        let s = if line["asymptote"] == "exceptional" { 1.0 } else { -1.0 };
        for pt in line["points"].as_array().unwrap() {
            let (a, b) = (pt[0].as_f64().unwrap(), pt[1].as_f64().unwrap());
            assert!((b - (s * a + 0.5)).abs() < 1e-12);
        }
    }
    // the four quadrants meet at (0, 0.5): check the neighbours of that corner
    let quadrant = |a: f64, b: f64| {
        cells
            .iter()
            .find(|c| (c["A"].as_f64().unwrap() - a).abs() < 1e-9 && (c["B"].as_f64().unwrap() - b).abs() < 1e-9)
            .map(|c| c["quadrant"].as_str().unwrap().to_string())
            .unwrap()
    };
    assert_eq!(quadrant(0.05, 0.55), "SusyUnbroken");
    assert_eq!(quadrant(-0.05, 0.55), "SusyBrokenI");
    assert_eq!(quadrant(0.05, 0.45), "SusyBrokenII");
    assert_eq!(quadrant(-0.05, 0.45), "SusyBrokenIII");

    let o = scarf(&["atlas", "--resolution", "5", "--format", "csv"]);
    let (header, rows) = csv_rows(&o);
    assert_eq!(header, ["kind", "A", "B", "class", "quadrant", "region", "K2"]);
    let kinds: Vec<&str> = rows.iter().map(|r| r[0].as_str()).collect();
    assert_eq!(kinds.iter().filter(|k| **k == "cell").count(), 25);
    assert_eq!(kinds.iter().filter(|k| **k == "marker").count(), 2);
    assert_eq!(kinds.iter().filter(|k| **k == "exceptional").count(), 5);
}

#[test]
fn scatter_scan_resumes_exactly() {
    let base = [
        "scatter",
        "--A",
        "2",
        "--B",
        "2.5",
        "--C",
        "0.7",
        "--Emin",
        "0.1",
        "--Emax",
        "2",
        "--samples",
        "20",
        "--format",
        "csv",
    ];
    let full = csv_rows(&scarf(&base)).1;
    let mut first = base.to_vec();
    first.extend(["--to", "7"]);
    let mut second = base.to_vec();
    second.extend(["--from", "7"]);
    let mut joined = csv_rows(&scarf(&first)).1;
    joined.extend(csv_rows(&scarf(&second)).1);
    assert_eq!(full, joined);
    assert_eq!(full.len(), 20);
}

#[test]
fn scatter_json_validates_and_flags_the_singularity() {
    let o = scarf(&["scatter", "--A", "2", "--B", "2.5", "--C", "0.7", "--E", "0.49", "--L", "15"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json_of(&o);
    assert_valid(&v);
    assert!(v["result"]["T"].as_f64().unwrap() > 1e4);
    let o =
        scarf(&["scatter", "--A", "0", "--B", "0", "--Emin", "0.5", "--Emax", "1", "--samples", "3", "--kind", "free"]);
    let v = json_of(&o);
    assert_valid(&v);
    for p in v["result"]["points"].as_array().unwrap() {
        assert!((p["T"].as_f64().unwrap() - 1.0).abs() < 1e-10);
    }
}

#[test]
fn remaining_commands_validate() {
    for args in [
        vec!["potential", "--A", "2", "--B", "1", "--points", "5"],
        vec!["potential", "--A", "2", "--B", "2.5", "--C", "0.7", "--kind", "general", "--sign", "-", "--points", "5"],
        vec!["index", "--A", "2", "--B", "1", "--k0", "2", "--epsb", "2.25", "--theta", "0.3", "--points", "5"],
        vec!["sweep", "--A", "1", "--param", "C", "--start", "0", "--stop", "1", "--steps", "5", "--pt-line"],
        vec!["spectrum", "--A", "2.5", "--B", "3", "--C", "0.5", "--branch", "pt"],
        vec!["verify", "mkdv", "--A", "-0.25", "--B", "0.75"],
    ] {
        let o = scarf(&args);
        assert_eq!(o.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
        assert_valid(&json_of(&o));
    }
}

#[test]
fn sweep_reports_ground_state_and_count() {
    let o = scarf(&["sweep", "--B", "1", "--param", "A", "--start", "2", "--stop", "2", "--steps", "1"]);
    let v = json_of(&o);
    let p = &v["result"]["points"][0];
    assert_eq!(p["class"], "SusyUnbroken");
    assert_eq!(p["bound_count"], 3);
    assert_eq!(p["ground_energy"]["re"], -4.0);
    assert_eq!(p["K2"], 3.75);
}

#[test]
fn pt_spectrum_auto_keeps_bound_pairs() {
    let o = scarf(&["spectrum", "--A", "2.5", "--B", "3", "--C", "0.5", "--branch", "pt", "--format", "csv"]);
    let (_, rows) = csv_rows(&o);
    // A - nα > 0 for n = 0, 1, 2, for both conjugate lists
    assert_eq!(rows.len(), 6);
    let plus: Vec<_> = rows.iter().filter(|r| r[0] == "PlusPT").collect();
    let minus: Vec<_> = rows.iter().filter(|r| r[0] == "MinusPT").collect();
    for (p, m) in plus.iter().zip(&minus) {
        assert_eq!(p[2], m[2]);
        assert_eq!(p[3].parse::<f64>().unwrap(), -m[3].parse::<f64>().unwrap());
    }
}
