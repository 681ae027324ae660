use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn steinsym(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_steinsym"))
        .args(args)
        .env("RUST_LOG", "error")
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn json(p: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap()
}

#[test]
fn symmetrize_writes_polygon_and_svg() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("sq.json");
    let o = steinsym(&["symmetrize", "rectangle", "--mode", "steiner", "-o", s(&out)]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let p = steinsym::Polygon::from_json(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert!((p.area() - 2.0).abs() < 1e-12);
    let svg = std::fs::read_to_string(out.with_extension("svg")).unwrap();
    assert!(svg.contains(r#"width="800" height="800""#));
    assert!(svg.contains("scale: 1 unit = "));
    assert!(stdout(&o).contains("area"));
}

#[test]
fn symmetrize_accepts_polygon_files() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("tri.json");
    std::fs::write(&input, "[[-1,-1],[2,-1],[-1,2]]").unwrap();
    let out = dir.path().join("c.json");
    let o = steinsym(&["symmetrize", s(&input), "--mode", "circular", "-o", s(&out)]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let p = steinsym::Polygon::from_json(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert!((p.area() / 4.5 - 1.0).abs() < 1e-2);
}

#[test]
fn exit_codes_for_bad_input_and_preconditions() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("x.json");
    assert_eq!(code(&steinsym(&["symmetrize", "no-such-fixture", "-o", s(&out)])), 2);

    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "[[0,0],[1,1],[1,0],[0,1]]").unwrap();
    assert_eq!(code(&steinsym(&["symmetrize", s(&bad), "-o", s(&out)])), 2);
    std::fs::write(&bad, "{").unwrap();
    assert_eq!(code(&steinsym(&["map", s(&bad)])), 2);

    // Vertical slices of the tall fixture exceed 2π.
    let o = steinsym(&["symmetrize", "tall-rectangle", "--mode", "exp", "-o", s(&out)]);
    assert_eq!(code(&o), 3);

    assert_eq!(code(&steinsym(&["--tol-map", "1", "map", "disk"])), 2);
    assert_eq!(code(&steinsym(&["map", "disk", "--w0", "5,5"])), 2);
    assert_eq!(code(&steinsym(&["deform", "square", "--strategy", "sideways", "-o", s(dir.path())])), 2);
}

#[test]
fn map_writes_grid_and_coefficients() {
    let dir = tempfile::tempdir().unwrap();
    let o = steinsym(&["map", "diamond", "--coefficients", "32", "-o", s(dir.path())]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("f'(0)"));
    for f in ["map.json", "map.svg", "coefficients.csv"] {
        assert!(dir.path().join(f).exists(), "{f}");
    }
    let mut rd = csv::Reader::from_path(dir.path().join("coefficients.csv")).unwrap();
    assert_eq!(rd.records().count(), 33);
}

#[test]
fn means_table() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("m.csv");
    let o = steinsym(&["means", "disk", "--r", "0.5", "--p", "2,inf", "--boundary", "-o", s(&out)]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let mut rd = csv::Reader::from_path(&out).unwrap();
    let rows: Vec<csv::StringRecord> = rd.records().map(Result::unwrap).collect();
    assert!(rows.len() >= 4);
    let m2 = rows.iter().find(|r| &r[1] == "0.5" && &r[2] == "2").unwrap();
    let v: f64 = m2[3].parse().unwrap();
    assert!((v - 0.5).abs() < 1e-3, "{v}");
    assert!(rows.iter().any(|r| &r[1] == "1"));
}

#[test]
fn deform_disk_converges_at_once() {
    let dir = tempfile::tempdir().unwrap();
    let o = steinsym(&["deform", "disk", "--mode", "unshrunk", "-o", s(dir.path()), "--filmstrip"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let sum = json(&dir.path().join("summary.json"));
    assert_eq!(sum["outcome"]["status"], "converged");
    assert_eq!(sum["steps"], 1);
    let tel = std::fs::read_to_string(dir.path().join("telemetry.jsonl")).unwrap();
    assert_eq!(tel.lines().count(), 1);
    assert!(dir.path().join("filmstrip.svg").exists());
    assert!(dir.path().join("final.json").exists());
}

#[test]
fn deform_class_check_and_normalization() {
    let dir = tempfile::tempdir().unwrap();
    let o = steinsym(&["deform", "square", "--alpha", "2", "--steps", "3", "-o", s(dir.path())]);
    assert_eq!(code(&o), 0);
    let v = std::fs::read_to_string(dir.path().join("verdicts.csv")).unwrap();
    assert!(v.lines().any(|l| l.starts_with("product-lower-bound") && l.contains("skipped")));

    let o = steinsym(&["deform", "square", "--alpha", "2", "--steps", "3", "--normalize", "-o", s(dir.path())]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let v = std::fs::read_to_string(dir.path().join("verdicts.csv")).unwrap();
    for name in ["product-lower-bound", "product-upper-bound", "blaschke-log-sum"] {
        assert!(v.lines().any(|l| l.starts_with(name) && l.contains(",pass,")), "{name}\n{v}");
    }
}

#[test]
fn verify_report_and_replay() {
    let dir = tempfile::tempdir().unwrap();
    let run = dir.path().join("run");
    let o = steinsym(&["verify", "--suite", "p2,perimeter", "--fixtures", "disk,square", "-o", s(&run)]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    for f in ["verdicts.csv", "summary.json", "run_record.json"] {
        assert!(run.join(f).exists(), "{f}");
    }
    let rep = steinsym(&["report", s(&run)]);
    assert_eq!(code(&rep), 0);
    assert!(stdout(&rep).contains("steiner-p2-mean"));

    let record = run.join("run_record.json");
    let again = dir.path().join("again");
    let o = steinsym(&["verify", "--replay", s(&record), "-o", s(&again)]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("byte for byte"));
    assert_eq!(
        std::fs::read(run.join("verdicts.csv")).unwrap(),
        std::fs::read(again.join("verdicts.csv")).unwrap()
    );

    // A record whose verdicts differ from the rerun is a mismatch.
    let mut rec = json(&record);
    rec["verdict_csv"] = Value::String("theorem\n".into());
    let tampered = dir.path().join("tampered.json");
    std::fs::write(&tampered, rec.to_string()).unwrap();
    assert_eq!(code(&steinsym(&["verify", "--replay", s(&tampered), "-o", s(&again)])), 1);

    // A fixture that does not match its hash is rejected as input.
    let mut rec = json(&record);
    rec["fixtures"][0]["hash"] = Value::String("00".into());
    std::fs::write(&tampered, rec.to_string()).unwrap();
    assert_eq!(code(&steinsym(&["verify", "--replay", s(&tampered), "-o", s(&again)])), 2);
}

#[test]
fn search_p0_on_disk_finds_nothing() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("p0");
    let o = steinsym(&["search-p0", "--fixture", "disk", "--pmax", "20", "-o", s(&out)]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let mut rd = csv::Reader::from_path(out.join("p0.csv")).unwrap();
    let row = rd.records().next().unwrap().unwrap();
    assert_eq!(&row[0], "disk");
    assert_eq!(&row[3], "");
}
