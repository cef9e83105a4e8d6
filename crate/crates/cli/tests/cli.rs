use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_ckn-verify"));
    c.env_remove("CKN_VERIFY_THREADS");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write_config(dir: &Path, name: &str, body: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path.to_str().unwrap().to_owned()
}

const T1_SWEEP: &str = "dims = 5..9\na = 0\nb = -1, 0\nfamilies = T1_CASE1\n";

#[test]
fn constants_reports_both_inequalities() {
    let o = run(&["constants", "--N", "5", "--a", "0", "--b", "-1"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("curlfree: C = 3.50000000000e0, C^2 = 1.22500000000e1"), "{s}");
    assert!(s.contains("second_order: C^2 = 1.22500000000e1"), "{s}");
}

#[test]
fn constants_on_the_line() {
    let s = stdout(&run(&["constants", "--N", "3", "--a", "1", "--b", "0"]));
    assert!(s.contains("region: LINE"));
    assert!(s.contains("C = 5.00000000000e-1"));
    assert!(s.contains("not achieved"));
}

#[test]
fn constants_rejects_zero_dimension() {
    assert_eq!(run(&["constants", "--N", "0", "--a", "0", "--b", "0"]).status.code(), Some(2));
    assert_eq!(run(&["constants", "--N", "x", "--a", "0", "--b", "0"]).status.code(), Some(2));
}

#[test]
fn verify_kummer_row_passes() {
    let o = run(&["verify", "--family", "T2_KUMMER", "--N", "3", "--a", "0", "--k", "1", "--t", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    let mut lines = s.lines();
    assert_eq!(
        lines.next().unwrap(),
        "family,N,a,b,k,beta_or_t,quotient,sharp_sq,rel_error,quad_residual,pde_residual,decay_ok,passed"
    );
    let row = lines.next().unwrap();
    assert!(row.starts_with("T2_KUMMER,3,"));
    assert!(row.ends_with(",true,true"), "{row}");
}

#[test]
fn verify_inadmissible_point_fails_with_exit_1() {
    let o = run(&["verify", "--family", "T1_CASE1", "--N", "4", "--a", "0", "--b", "-1", "--beta", "1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("inadmissible"));
    assert!(stdout(&o).lines().nth(1).unwrap().ends_with(",false,false"));
}

#[test]
fn verify_rejects_unknown_family() {
    let o = run(&["verify", "--family", "T3", "--N", "3", "--a", "0", "--beta", "1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn t1_sweep_passes() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "t1.cfg", T1_SWEEP);
    let o = run(&["sweep", &cfg]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let s = stdout(&o);
    let rows: Vec<&str> = s.lines().skip(1).collect();
    assert_eq!(rows.len(), 10);
    assert!(rows.iter().all(|r| r.ends_with(",true,true")));
    // sorted by N, then b
    assert!(rows[0].starts_with("T1_CASE1,5,0.00000000000e0,-1.00000000000e0,"));
    assert!(rows[9].starts_with("T1_CASE1,9,0.00000000000e0,0.00000000000e0,"));
}

#[test]
fn sweep_input_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    for (i, body) in [
        "dims = \na = 0\nb = 0\nfamilies = T1_CASE1\n",
        "dims = 5\na = 0\nb = 0\nfamilies = T1_CASE1\nmystery = 1\n",
        "dims = 5\na = 0\nfamilies = CC_REGION_A\n",
        // every point inapplicable
        "dims = 5\na = 0\nb = 1\nfamilies = T1_CASE1\n",
    ]
    .iter()
    .enumerate()
    {
        let cfg = write_config(dir.path(), &format!("bad{i}.cfg"), body);
        assert_eq!(run(&["sweep", &cfg]).status.code(), Some(2), "{body}");
    }
    assert_eq!(run(&["sweep", "/nonexistent/ckn.cfg"]).status.code(), Some(2));
    let cfg = write_config(dir.path(), "ok.cfg", T1_SWEEP);
    let o = bin().args(["sweep", &cfg]).env("CKN_VERIFY_THREADS", "zero").output().unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn failing_rows_are_still_written() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.csv");
    let body = format!(
        "dims = 4, 5\na = 0\nb = -1\nfamilies = T1_CASE1\noutput = {}\n",
        out.display()
    );
    let cfg = write_config(dir.path(), "mixed.cfg", &body);
    let o = run(&["sweep", &cfg]);
    assert_eq!(o.status.code(), Some(1));
    let text = std::fs::read_to_string(&out).unwrap();
    let rows: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(rows.len(), 2);
    assert!(rows[0].starts_with("T1_CASE1,4,") && rows[0].ends_with(",false,false"));
    assert!(rows[1].ends_with(",true,true"));
}

fn sweep_bytes(cfg: &str, threads: &str, format: &str) -> Vec<u8> {
    let o = bin()
        .args(["sweep", cfg, "--format", format])
        .env("CKN_VERIFY_THREADS", threads)
        .output()
        .unwrap();
    assert!(o.status.code() == Some(0) || o.status.code() == Some(1));
    o.stdout
}

const MIXED_SWEEP: &str = "dims = 2..6\na = -0.25, 0, 0.5, 1\nb = -1, 0, 2\n\
families = T2_RADIAL, T2_KUMMER, T1_CASE1, T1_CASE2, CC_REGION_A, CC_REGION_B\nk = 1, 2\n";

#[test]
fn output_is_byte_stable_across_thread_counts() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "mixed.cfg", MIXED_SWEEP);
    let one = sweep_bytes(&cfg, "1", "csv");
    let many = sweep_bytes(&cfg, "4", "csv");
    assert_eq!(one, many);
    assert_eq!(sweep_bytes(&cfg, "3", "json"), sweep_bytes(&cfg, "1", "json"));
    assert!(!one.contains(&b'\r'));
}

#[test]
fn csv_and_json_carry_the_same_values() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "mixed.cfg", MIXED_SWEEP);
    let csv_bytes = sweep_bytes(&cfg, "2", "csv");
    let json: serde_json::Value = serde_json::from_slice(&sweep_bytes(&cfg, "2", "json")).unwrap();
    let json = json.as_array().unwrap();
    let mut reader = csv::Reader::from_reader(csv_bytes.as_slice());
    let headers = reader.headers().unwrap().clone();
    let records: Vec<csv::StringRecord> = reader.records().map(Result::unwrap).collect();
    assert_eq!(records.len(), json.len());
    assert!(!records.is_empty());
    for (rec, obj) in records.iter().zip(json) {
        for (name, cell) in headers.iter().zip(rec.iter()) {
            let v = &obj[name];
            match name {
                "family" => assert_eq!(v.as_str().unwrap(), cell),
                "decay_ok" | "passed" => assert_eq!(v.as_bool().unwrap().to_string(), cell),
                _ => match cell.parse::<f64>() {
                    Ok(x) if x.is_finite() => assert_eq!(v.as_f64().unwrap(), x, "{name}"),
                    _ => assert!(v.is_null(), "{name}: {cell} vs {v}"),
                },
            }
        }
    }
}
