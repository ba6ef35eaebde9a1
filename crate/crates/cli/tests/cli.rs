use std::path::Path;
use std::process::{Command, Output};

fn ncfrft(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ncfrft"))
        .args(args)
        .output()
        .expect("spawn ncfrft")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

struct Csv {
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Csv {
    fn read(path: &Path) -> Csv {
        let text = std::fs::read_to_string(path).unwrap();
        let mut lines = text.lines();
        let header = lines.next().unwrap().split(',').map(String::from).collect();
        let rows = lines.map(|l| l.split(',').map(String::from).collect()).collect();
        Csv { header, rows }
    }

    fn column(&self, name: &str) -> Vec<f64> {
        let i = self
            .header
            .iter()
            .position(|h| h == name)
            .unwrap_or_else(|| panic!("no column {name} in {:?}", self.header));
        self.rows.iter().map(|r| r[i].parse().unwrap()).collect()
    }
}

fn max_abs(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |m, x| m.max(x.abs()))
}

#[test]
fn simpson_weights_and_composite_vector() {
    let o = ncfrft(&["weights", "--q", "2"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("1/3 4/3 1/3"));

    let o = ncfrft(&["weights", "--q", "1", "--n", "3"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains(": 1/2 1 1 1/2"));
}

#[test]
fn weights_csv_q8() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("w.csv");
    let o = ncfrft(&["weights", "--q", "8", "--csv", path.to_str().unwrap()]);
    assert!(o.status.success());
    let csv = Csv::read(&path);
    assert_eq!(csv.header, ["Q", "j", "numerator", "denominator", "float"]);
    assert_eq!(csv.rows.len(), 9);
    assert_eq!(csv.rows[0][2..4], ["3956", "14175"]);
    assert_eq!(csv.rows[4][2..4], ["-3632", "2835"]);
    let sum: f64 = csv.column("float").iter().sum();
    assert!((sum - 8.0).abs() < 1e-13);
    // the published row, as rounded fractions
    let paper = [
        (499, 1788),
        (1183, 712),
        (-182, 695),
        (388, 131),
        (-319, 249),
        (388, 131),
        (-182, 695),
        (1183, 712),
        (499, 1788),
    ];
    for (got, (p, q)) in csv.column("float").iter().zip(paper) {
        assert!((got - p as f64 / q as f64).abs() < 5e-3, "{got} vs {p}/{q}");
    }
}

#[test]
fn zero_order_is_a_validation_error() {
    let o = ncfrft(&["weights", "--q", "0"]);
    assert_eq!(o.status.code(), Some(1));
    let o = ncfrft(&["invert", "--q", "2", "--n", "0"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn selftest_passes_and_detects_fault() {
    let o = ncfrft(&["selftest"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(!stdout(&o).contains("FAIL"));

    let o = ncfrft(&["selftest", "--inject-fault"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("FAIL quadrature"));
}

#[test]
fn weighted_beats_nonweighted_on_vg_star() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("vg.csv");
    let o = ncfrft(&[
        "invert",
        "--model",
        "vg-star",
        "--schemes",
        "weighted_qn,nonweighted",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let csv = Csv::read(&path);
    assert_eq!(csv.rows.len(), 1024);
    let mean = |v: Vec<f64>| v.iter().sum::<f64>() / v.len() as f64;
    let w = mean(csv.column("abs_error_weighted_qn"));
    let n = mean(csv.column("abs_error_nonweighted"));
    assert!(w > 0.0 && n > 0.0);
    let w_max = max_abs(&csv.column("abs_error_weighted_qn"));
    let n_max = max_abs(&csv.column("abs_error_nonweighted"));
    assert!(w_max <= n_max, "weighted {w_max} nonweighted {n_max}");
    assert!(stdout(&o).contains("weighted_qn - nonweighted"));
}

#[test]
fn gts_star_composite_variants_agree() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("gts.csv");
    let o = ncfrft(&[
        "invert",
        "--model",
        "gts-star",
        "--a",
        "300",
        "--span",
        "8",
        "--schemes",
        "composite_qn,composite_nq",
        "--tol",
        "1e-12",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let csv = Csv::read(&path);
    let qn = csv.column("composite_qn");
    let nq = csv.column("composite_nq");
    let peak = max_abs(&qn);
    let diff: Vec<f64> = qn.iter().zip(&nq).map(|(a, b)| a - b).collect();
    assert!(max_abs(&diff) <= 1e-12 * peak);
    // no closed form and no oracle: reference cells stay empty
    let i = csv.header.iter().position(|h| h == "reference").unwrap();
    assert!(csv.rows.iter().all(|r| r[i].is_empty()));
}

#[test]
fn malformed_model_file_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, "{\"model\": \"vg\", \"mu\": ").unwrap();
    let o = ncfrft(&["invert", "--model", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("error"));

    let o = ncfrft(&["invert", "--model", "no-such-model"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn model_file_overrides_preset() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("m.json");
    std::fs::write(&path, r#"{"preset":"vg-star","mu":0.0}"#).unwrap();
    let out = dir.path().join("m.csv");
    let o = ncfrft(&[
        "invert",
        "--model",
        path.to_str().unwrap(),
        "--n",
        "128",
        "--span",
        "8",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(Csv::read(&out).rows.len(), 256);
}

#[test]
fn compare_stacks_orders() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cmp.csv");
    let o = ncfrft(&[
        "compare",
        "--model",
        "gts-star",
        "--q",
        "2,5,10",
        "--n",
        "500",
        "--a",
        "300",
        "--span",
        "8",
        "--schemes",
        "weighted_qn,composite_qn,composite_nq",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let csv = Csv::read(&path);
    let diffs: Vec<&String> = csv.header.iter().filter(|h| h.starts_with("diff_")).collect();
    assert_eq!(
        diffs,
        [
            "diff_weighted_qn_composite_qn",
            "diff_weighted_qn_composite_nq",
            "diff_composite_qn_composite_nq"
        ]
    );
    assert_eq!(csv.rows.len(), 500 * (2 + 5 + 10));
    let qs = csv.column("q");
    for q in [2.0, 5.0, 10.0] {
        assert_eq!(qs.iter().filter(|&&v| v == q).count(), 500 * q as usize);
    }
    let wq = csv.column("weighted_qn");
    let peak = max_abs(&wq);
    for d in diffs {
        assert!(max_abs(&csv.column(d)) <= 1e-12 * peak, "{d}");
    }
}

#[test]
fn vg_star_profile_per_order() {
    let o = ncfrft(&[
        "compare",
        "--model",
        "vg-star",
        "--q",
        "2,5,10",
        "--n",
        "500",
    ]);
    assert!(o.status.success());
    let text = stdout(&o);
    let mut lines = text.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(header[0], "q");
    assert!(header.contains(&"abs_error_weighted_qn"));
    let mut counts = std::collections::BTreeMap::new();
    for line in lines {
        let mut cells = line.split(',');
        *counts.entry(cells.next().unwrap().to_string()).or_insert(0) += 1;
        let i = header.iter().position(|h| *h == "reference").unwrap();
        assert!(!line.split(',').nth(i).unwrap().is_empty());
    }
    let expected: std::collections::BTreeMap<String, usize> =
        [("10", 5000), ("2", 1000), ("5", 2500)].map(|(q, m)| (q.to_string(), m)).into();
    assert_eq!(counts, expected);
    let summary = String::from_utf8_lossy(&o.stderr);
    assert_eq!(summary.matches("grid Q=").count(), 3);
}

#[test]
fn comparing_a_scheme_with_itself_gives_zero() {
    let o = ncfrft(&[
        "compare",
        "--n",
        "64",
        "--span",
        "8",
        "--schemes",
        "nonweighted,nonweighted",
    ]);
    assert!(o.status.success());
    let text = stdout(&o);
    let mut lines = text.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let i = header.iter().position(|h| *h == "diff_nonweighted_nonweighted").unwrap();
    for line in lines {
        assert_eq!(line.split(',').nth(i).unwrap().parse::<f64>().unwrap(), 0.0);
    }
}

#[test]
fn compare_needs_two_schemes() {
    let o = ncfrft(&["compare", "--schemes", "integral"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn tolerance_breach_exits_2() {
    let o = ncfrft(&[
        "compare",
        "--n",
        "64",
        "--span",
        "8",
        "--schemes",
        "weighted_qn,nonweighted",
        "--tol",
        "1e-15",
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    let args = ["compare", "--q", "3", "--n", "100", "--span", "8"];
    let a = ncfrft(&args);
    let b = ncfrft(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}
