use std::path::Path;
use std::process::{Command, Output};

use pingpong_cli::config::serialize_table;
use pingpong_cli::dto::{CertReportDto, DecompositionDto, RelatorCheckDto, RelatorFindDto};
use pingpong_cli::exit;
use pingpong_core::pingpong::{certify_bound, CertOptions, PingPongTable};

fn pingpong(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pingpong")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    assert!(o.status.success(), "stderr: {}", String::from_utf8_lossy(&o.stderr));
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

#[test]
fn certify_reports_match_the_library() {
    let o = pingpong(&["certify", "--lambda", "9/5", "--mu", "2", "--cap", "40"]);
    let dto: CertReportDto = serde_json::from_str(&stdout(&o)).unwrap();
    let lib = certify_bound(
        &PingPongTable::mu2(),
        &"9/5".parse().unwrap(),
        &"2".parse().unwrap(),
        &CertOptions { cap: Some(40), ..Default::default() },
    )
    .unwrap();
    assert_eq!(dto.to_report().unwrap(), lib);
    assert!(dto.certified_syllables >= 1);
    assert!(dto.prerequisites.iter().all(|c| c.pass));
    assert!(dto.implication.is_some());
}

#[test]
fn certify_json_round_trips() {
    let text = stdout(&pingpong(&["certify", "--lambda", "2", "--mu", "2", "--cap", "24"]));
    let dto: CertReportDto = serde_json::from_str(&text).unwrap();
    assert_eq!(dto.certified_syllables, 24);
    assert_eq!(dto.failure_witness, None);
    let again: CertReportDto = serde_json::from_str(&serde_json::to_string(&dto).unwrap()).unwrap();
    assert_eq!(again, dto);
    assert_eq!(CertReportDto::new(&dto.to_report().unwrap(), dto.implication.clone()), dto);
}

#[test]
fn exit_codes_are_distinct() {
    let gate = pingpong(&["certify", "--lambda", "1/2", "--mu", "2"]);
    assert_eq!(code(&gate), exit::DOMAIN_GATE);
    assert!(gate.stdout.is_empty());
    let wrong_mu = pingpong(&["certify", "--lambda", "2", "--mu", "3"]);
    assert_eq!(code(&wrong_mu), exit::DOMAIN_GATE);
    let bad = pingpong(&["certify", "--lambda", "nine", "--mu", "2"]);
    assert_eq!(code(&bad), exit::USAGE);
    let missing = pingpong(&["certify", "--lambda", "2", "--table", "/nonexistent/table.txt"]);
    assert_eq!(code(&missing), exit::IO);
    let refused = pingpong(&["relator", "check", "--lambda", "3/2", "--mu", "2", "--word", "(a b^-1)^3", "--mode", "numeric"]);
    assert_eq!(code(&refused), exit::REFUSED);
    let codes = [exit::OK, exit::USAGE, exit::DOMAIN_GATE, exit::UNDECIDABLE, exit::PREREQUISITE, exit::IO, exit::REFUSED, exit::CONFIG];
    let mut sorted = codes.to_vec();
    sorted.dedup();
    assert_eq!(sorted.len(), codes.len());
}

#[test]
fn exact_only_agrees_with_filtered() {
    let args = ["certify", "--lambda", "19/10", "--mu", "2", "--cap", "10"];
    let filtered = stdout(&pingpong(&args));
    let mut exact_args = args.to_vec();
    exact_args.push("--exact-only");
    assert_eq!(stdout(&pingpong(&exact_args)), filtered);
}

#[test]
fn relator_find_and_check() {
    let o = pingpong(&["relator", "find", "--lambda", "3/2", "--mu", "2", "--max-syl", "8", "--max-exp", "3"]);
    let found: RelatorFindDto = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(found.word.as_deref(), Some("a b^-1 a b^-1 a b^-1"));
    assert_eq!(found.sigma_upper, Some(6));

    let o = pingpong(&["relator", "check", "--lambda", "1", "--mu", "2", "--word", "(a b^-1)^4"]);
    let check: RelatorCheckDto = serde_json::from_str(&stdout(&o)).unwrap();
    let cert = check.certificate.unwrap();
    assert_eq!(cert.mode, "exact-identity");
    assert_eq!(cert.residual, "0");
    assert_eq!(cert.to_certificate().unwrap().word.syllable_count(), 8);

    let o = pingpong(&["relator", "check", "--lambda", "2", "--mu", "2", "--word", "a b"]);
    let check: RelatorCheckDto = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(!check.relator);
}

#[test]
fn relator_check_raises_alarm_against_a_stronger_certificate() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cert.json");
    let o = pingpong(&["certify", "--lambda", "2", "--mu", "2", "--cap", "12", "--out", path.to_str().unwrap()]);
    stdout(&o);
    let o = pingpong(&[
        "relator", "check", "--lambda", "1", "--mu", "2", "--word", "(a b^-1)^4",
        "--certificate", path.to_str().unwrap(),
    ]);
    let check: RelatorCheckDto = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(check.form.unwrap().alarm);
}

fn pieces(args: &[&str]) -> Vec<(String, String)> {
    let d: DecompositionDto = serde_json::from_str(&stdout(&pingpong(args))).unwrap();
    d.pieces.into_iter().map(|p| (p.word, p.tag)).collect()
}

#[test]
fn decompose_examples() {
    let p = |w: &str, t: &str| (w.to_string(), t.to_string());
    assert_eq!(
        pieces(&["decompose", "--word", "a b^2 a", "--forbid", "b^2"]),
        vec![p("a", "F"), p("b^2", "W"), p("a", "F")]
    );
    assert_eq!(pieces(&["decompose", "--word", "a"]), vec![p("a", "F")]);
    assert_eq!(
        pieces(&["decompose", "--word", "a^2 b^2", "--geom", "W_X_to_K"]),
        vec![p("a^2", "W"), p("b^2", "W")]
    );
}

#[test]
fn bound_report_is_tagged() {
    let v: serde_json::Value = serde_json::from_str(&stdout(&pingpong(&["bound", "--lambda", "9/5"]))).unwrap();
    assert_eq!(v["method"], "lemma32");
    assert_eq!(v["f_below_five_quarters"], true);
    assert_eq!(code(&pingpong(&["bound", "--lambda", "3/2"])), exit::USAGE);
}

fn svg(args: &[&str], dir: &Path, name: &str) -> String {
    let path = dir.join(name);
    let mut full = args.to_vec();
    let p = path.to_str().unwrap().to_string();
    full.extend(["--out", &p]);
    stdout(&pingpong(&full));
    std::fs::read_to_string(path).unwrap()
}

#[test]
fn plots_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = svg(&["plot", "table", "--flavor", "mu2"], dir.path(), "a.svg");
    let b = svg(&["plot", "table", "--flavor", "mu2"], dir.path(), "b.svg");
    assert_eq!(a, b);
    for label in ["X1", "X2", "K1", "K2"] {
        assert!(a.contains(&format!(">{label}</text>")));
    }
    let mui = svg(&["plot", "table", "--flavor", "mui"], dir.path(), "mui.svg");
    let x1 = mui.split("<g id=\"layer0\"").nth(1).unwrap().split("</g>").next().unwrap();
    assert_eq!(x1.matches("<polygon").count(), 3);
    let orbit = svg(
        &["plot", "orbit", "--lambda", "9/5", "--mu", "2", "--word", "(a b^-1)^3", "--seed-region", "K2"],
        dir.path(),
        "orbit.svg",
    );
    assert_eq!(orbit.matches("<g id=").count(), 7);
    assert!(orbit.contains(">a b^-1 a b^-1 a b^-1</text>"));
}

#[test]
fn sweep_is_independent_of_thread_count() {
    let args = ["sweep", "--from", "17/10", "--to", "2", "--step", "1/10", "--cap", "8"];
    let one = Command::new(env!("CARGO_BIN_EXE_pingpong")).args(args).env("PPCERT_THREADS", "1").output().unwrap();
    let many = Command::new(env!("CARGO_BIN_EXE_pingpong")).args(args).env("PPCERT_THREADS", "4").output().unwrap();
    let text = stdout(&one);
    assert_eq!(text, stdout(&many));
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows.len(), 5);
    assert!(rows[1].starts_with("17/10,2/1,ok,"));
    assert!(rows[4].starts_with("2/1,2/1,ok,8,4,"));
}

#[test]
fn custom_table_files_drive_certification() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("table.txt");
    let text = serialize_table(&PingPongTable::mu2()).replace("domain re>3/2", "domain re>=3/2");
    std::fs::write(&path, text).unwrap();
    let o = pingpong(&["certify", "--table", path.to_str().unwrap(), "--lambda", "3/2", "--mu", "2", "--cap", "6"]);
    let dto: CertReportDto = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(dto.flavor, "custom");
    assert_eq!(dto.certified_syllables, 0);

    std::fs::write(&path, "region X1 open\ndisk center=0 radius=1\n").unwrap();
    let o = pingpong(&["certify", "--table", path.to_str().unwrap(), "--lambda", "2", "--mu", "2"]);
    assert_eq!(code(&o), exit::CONFIG);
}
