use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn kit(args: &[&str], stdin: Option<&str>, threads: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_borcherds-kit"));
    cmd.args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped());
    if let Some(t) = threads {
        cmd.env("BORCHERDS_KIT_THREADS", t);
    }
    let mut child = cmd.spawn().expect("spawn");
    let mut pipe = child.stdin.take().unwrap();
    pipe.write_all(stdin.unwrap_or("").as_bytes()).unwrap();
    drop(pipe);
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn criterion_on_example_gram() {
    let o = kit(&["criterion", &fixture("gram_ex1.json")], None, None);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().any(|l| l == "8 | gcd: true"));
    let o = kit(&["criterion"], Some(r#"{"gram": [[2]]}"#), None);
    assert!(stdout(&o).lines().any(|l| l == "8 | gcd: false"));
}

#[test]
fn phi_pipes_into_congruence() {
    let phi = kit(&["phi", "--n", "1", "--prec", "6"], None, None);
    assert_eq!(phi.status.code(), Some(0));
    let o = kit(&["congruence"], Some(&stdout(&phi)), None);
    assert_eq!(o.status.code(), Some(0));
    assert!(
        stdout(&o).starts_with("N=8, sum=3, residue 0\n"),
        "{}",
        stdout(&o)
    );
}

#[test]
fn validate_pp_reports() {
    let o = kit(&["validate-pp", &fixture("example2.json")], None, None);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("weight: 7/2 (half-integral)"));
    let o = kit(
        &["validate-pp", "--format", "json", &fixture("example1.json")],
        None,
        None,
    );
    let report: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(report["passed"], true);
    assert_eq!(report["weight"], "9/2");
}

#[test]
fn exit_codes_partition_errors() {
    let domain = kit(
        &["lattice-info"],
        Some(r#"{"gram": [[2, 1], [1, 0]]}"#),
        None,
    );
    assert_eq!(domain.status.code(), Some(1));
    assert!(stderr(&domain).contains("NotPositiveDefinite"));
    let budget = kit(
        &["phi", "--n", "3", "--prec", "10", "--budget", "50"],
        None,
        None,
    );
    assert_eq!(budget.status.code(), Some(1));
    assert!(stderr(&budget).contains("ResourceLimit"));
    let missing = kit(&["criterion", "/nonexistent/gram.json"], None, None);
    assert_eq!(missing.status.code(), Some(2));
    let schema = kit(
        &["congruence"],
        Some(r#"{"gram": [[8]], "weight": "0"}"#),
        None,
    );
    assert_eq!(schema.status.code(), Some(2));
    assert!(stderr(&schema).contains("SchemaViolation"));
    let garbage = kit(&["criterion"], Some("not json"), None);
    assert_eq!(garbage.status.code(), Some(2));
    let usage = kit(&["phi", "--n", "1", "--prec", "-3"], None, None);
    assert_eq!(usage.status.code(), Some(2));
    let threads = kit(
        &["criterion", &fixture("gram_ex1.json")],
        None,
        Some("zero"),
    );
    assert_eq!(threads.status.code(), Some(2));
    for o in [
        &domain, &budget, &missing, &schema, &garbage, &usage, &threads,
    ] {
        assert!(!stderr(o).contains("panicked"));
    }
}

#[test]
fn weak_input_preconditions_are_domain_errors() {
    let theta_like = r#"{"gram": [[8]], "weight": "1/2", "q_den": 8, "prec": "2",
        "terms": [{"n": "1/8", "l": ["1/16"], "c": "1"}]}"#;
    let o = kit(&["decompose"], Some(theta_like), None);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("UnsupportedInput"), "{}", stderr(&o));
}

#[test]
fn output_is_identical_across_thread_counts() {
    let mut outputs = Vec::new();
    for threads in ["1", "4"] {
        let phi = kit(&["phi", "--n", "2", "--prec", "5"], None, Some(threads));
        let decomposed = kit(&["decompose"], Some(&stdout(&phi)), Some(threads));
        let pp = kit(
            &["principal-part"],
            Some(&stdout(&decomposed)),
            Some(threads),
        );
        let phi1 = kit(&["phi", "--n", "1", "--prec", "16"], None, Some(threads));
        let lift = kit(
            &["lift", "--prec", "8"],
            Some(&stdout(&phi1)),
            Some(threads),
        );
        for o in [&phi, &decomposed, &pp, &lift] {
            assert_eq!(o.status.code(), Some(0), "{}", stderr(o));
        }
        outputs.push([
            stdout(&phi),
            stdout(&decomposed),
            stdout(&pp),
            stdout(&lift),
        ]);
    }
    assert_eq!(outputs[0], outputs[1]);
}

#[test]
fn principal_part_from_series_and_form_agree() {
    let phi = stdout(&kit(&["phi", "--n", "2", "--prec", "3"], None, None));
    let form = stdout(&kit(&["decompose"], Some(&phi), None));
    let from_series = kit(&["principal-part"], Some(&phi), None);
    let from_form = kit(&["principal-part"], Some(&form), None);
    assert_eq!(stdout(&from_series), stdout(&from_form));
    assert!(stderr(&from_series).contains("lift weight 1/2 (half-integral)"));
}

#[test]
fn out_flag_writes_canonical_json() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("phi.json");
    let o = kit(
        &[
            "phi",
            "--n",
            "1",
            "--prec",
            "4",
            "--out",
            path.to_str().unwrap(),
        ],
        None,
        None,
    );
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    let again = stdout(&kit(&["phi", "--n", "1", "--prec", "4"], None, None));
    assert_eq!(written, again);
    let weyl = kit(&["weyl", path.to_str().unwrap()], None, None);
    assert!(
        stdout(&weyl).starts_with("A = 1/8\nB = (1/16)\nC = 1/8\n"),
        "{}",
        stdout(&weyl)
    );
    let flipped = kit(
        &["weyl", "--flip-chamber", path.to_str().unwrap()],
        None,
        None,
    );
    assert!(stdout(&flipped).contains("B = (-1/16)"));
    let bad = kit(&["weyl", "--w0", "0", path.to_str().unwrap()], None, None);
    assert_eq!(bad.status.code(), Some(1));
    assert!(stderr(&bad).contains("NonGenericChamber"));
}

#[test]
fn lattice_info_lists_classes() {
    let o = kit(
        &[
            "lattice-info",
            "--format",
            "json",
            &fixture("gram_ex2.json"),
        ],
        None,
        None,
    );
    let info: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(info["order"], 64);
    assert_eq!(info["elementary_divisors"], serde_json::json!([8, 8]));
    assert_eq!(info["classes"].as_array().unwrap().len(), 64);
    assert_eq!(info["singular_weight"], "1");
}
