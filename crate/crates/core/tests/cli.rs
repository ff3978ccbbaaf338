use std::path::PathBuf;
use std::process::{Command, Output};

use clap::Parser;
use ncmirror::cli::{run, Cli};
use ncmirror::dimer::{isomorphic, Dimer};
use ncmirror::report::{Report, Verdict};

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name).display().to_string()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("ncmirror-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ncmirror")).args(args).output().unwrap()
}

fn report(args: &[&str]) -> Report {
    let mut full = vec!["ncmirror"];
    full.extend_from_slice(args);
    let cli = Cli::try_parse_from(&full).unwrap();
    run(&cli, args.iter().map(|s| s.to_string()).collect()).unwrap()
}

fn verdict(r: &Report, name: &str) -> Verdict {
    r.checks.iter().find(|c| c.name == name).unwrap_or_else(|| panic!("no check {name}")).verdict
}

fn label(r: &Report, name: &str) -> String {
    let c = r.checks.iter().find(|c| c.name == name).unwrap();
    c.values["label"].as_str().unwrap().to_string()
}

#[test]
fn json_reports_are_byte_identical_across_runs() {
    let cases: Vec<Vec<String>> = vec![
        vec!["dimer".into(), "potential".into(), fixture("dp0.dm")],
        vec!["dimer".into(), "dual".into(), fixture("pentagon.dm")],
        vec!["family".into(), "333".into(), "hesse".into()],
        vec!["family".into(), "2222".into(), "abcd".into()],
        vec!["quotient".into(), fixture("conifold_z2.qp"), fixture("z2.grp")],
    ];
    for (i, case) in cases.iter().enumerate() {
        let mut outs = Vec::new();
        let path = scratch(&format!("det-{i}.json"));
        for _ in 0..2 {
            let mut args: Vec<&str> = case.iter().map(String::as_str).collect();
            let p = path.display().to_string();
            args.extend(["--json", &p]);
            let o = bin(&args);
            assert_eq!(o.status.code(), Some(0), "{case:?}: {}", String::from_utf8_lossy(&o.stderr));
            outs.push(std::fs::read(&path).unwrap());
        }
        assert_eq!(outs[0], outs[1], "{case:?}");
    }
}

#[test]
fn timing_is_opt_in() {
    let plain = report(&["family", "333", "detm0"]).to_json_string(false);
    let timed = report(&["family", "333", "detm0", "--timing"]).to_json_string(true);
    assert!(!plain.contains("wall_seconds"));
    assert!(timed.contains("wall_seconds"));
}

#[test]
fn exit_codes() {
    assert_eq!(bin(&["--help"]).status.code(), Some(0));
    assert_eq!(bin(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(bin(&["dimer", "validate", "/nonexistent/x.dm"]).status.code(), Some(2));
    let bad = scratch("bad.dm");
    std::fs::write(&bad, "vertices\nv\narrows\na v\n").unwrap();
    let o = bin(&["dimer", "validate", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 4"));
    assert_eq!(bin(&["dimer", "mf", &fixture("conifold.dm"), "--arrow", "nope"]).status.code(), Some(2));
    assert_eq!(bin(&["family", "333", "openmirror"]).status.code(), Some(2));
    assert_eq!(bin(&["family", "333", "hesse", "--imtau", "-1"]).status.code(), Some(2));
    // dp0 has six perfect matchings.
    assert_eq!(bin(&["dimer", "matchings", &fixture("dp0.dm"), "--cap", "2"]).status.code(), Some(3));
    assert_eq!(bin(&["dimer", "matchings", &fixture("dp0.dm")]).status.code(), Some(0));
    // A verdict of FAIL is still a successful run.
    assert_eq!(bin(&["dimer", "consistency", &fixture("inconsistent.dm")]).status.code(), Some(0));
}

#[test]
fn every_dimer_fixture_passes_its_suite() {
    for (name, consistency) in [
        ("conifold", Verdict::Fail),
        ("conifold_torus", Verdict::Pass),
        ("pentagon", Verdict::Info),
        ("c3", Verdict::Pass),
        ("dp0", Verdict::Pass),
        ("orbifold_a1", Verdict::Pass),
        ("inconsistent", Verdict::Fail),
    ] {
        let file = fixture(&format!("{name}.dm"));
        assert_eq!(verdict(&report(&["dimer", "validate", &file]), "validate"), Verdict::Pass, "{name}");
        let dual = report(&["dimer", "dual", &file]);
        assert_eq!(verdict(&dual, "involution"), Verdict::Pass, "{name}");
        assert_eq!(verdict(&dual, "dual-round-trip"), Verdict::Pass, "{name}");
        let pot = report(&["dimer", "potential", &file, "--degree", "8"]);
        assert_eq!(label(&pot, "w-central"), "CENTRAL-UP-TO-8", "{name}");
        let cons = report(&["dimer", "consistency", &file]);
        assert_eq!(verdict(&cons, "zigzag-consistency"), consistency, "{name}");
    }
}

#[test]
fn dual_out_writes_a_loadable_dimer() {
    let out = scratch("dual.dm");
    let o = bin(&["dimer", "dual", &fixture("dp0.dm"), "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let dual = Dimer::load_file(&out).unwrap();
    let orig = Dimer::load_file(std::path::Path::new(&fixture("dp0.dm"))).unwrap();
    assert!(isomorphic(&dual.dual().unwrap(), &orig).is_some());
}

#[test]
fn factorization_and_zeta_commands() {
    let file = fixture("conifold.dm");
    let mf = report(&["dimer", "mf", &file, "--arrow", "x"]);
    assert_eq!(verdict(&mf, "delta-squared"), Verdict::Pass);
    assert!(mf.outputs["factorization"].as_str().unwrap().starts_with("summands"));
    let z = report(&["dimer", "zeta", &file, "--from", "x", "--to", "y"]);
    assert_eq!(verdict(&z, "zeta-cocycle"), Verdict::Pass);
}

#[test]
fn quotient_fixtures() {
    let z2 = report(&["quotient", &fixture("conifold_z2.qp"), &fixture("z2.grp"), "--degree", "8"]);
    assert_eq!(verdict(&z2, "dual-action"), Verdict::Pass);
    assert_eq!(label(&z2, "w-hat-central"), "CENTRAL-UP-TO-8");

    let trivial = report(&["quotient", &fixture("conifold_trivial.qp"), &fixture("trivial.grp"), "--degree", "8"]);
    assert_eq!(label(&trivial, "w-hat-central"), "CENTRAL-UP-TO-8");

    let mixed = report(&["quotient", &fixture("conifold_s3_mixed.qp"), &fixture("s3.grp")]);
    let c = &mixed.checks[0];
    assert_eq!((c.name.as_str(), c.verdict), ("dual-action", Verdict::Fail));
    assert!(c.witness.as_deref().unwrap().starts_with("NOT-A-DUAL-ACTION"));
}

#[test]
fn graded_non_dimer_potential_is_central() {
    let r = report(&["quotient", &fixture("nondimer.qp"), &fixture("trivial.grp"), "--degree", "10"]);
    assert_eq!(label(&r, "w-hat-central"), "CENTRAL-UP-TO-10");
}

#[test]
fn family_checks_that_hold() {
    let det = report(&["family", "333", "detm0"]);
    assert_eq!(det.overall(), Verdict::Pass);
    let det = report(&["family", "2222", "detm0"]);
    assert_eq!(verdict(&det, "det-p"), Verdict::Pass);
    let central = report(&["family", "333", "central", "--degree", "7", "--tol", "1e-8", "--points", "1"]);
    assert_eq!(central.overall(), Verdict::Pass);
    let w0 = report(&["family", "2222", "central", "--degree", "8", "--qorder", "20"]);
    assert_eq!(w0.overall(), Verdict::Pass);
    let abcd = report(&["family", "333", "abcd", "--tol", "1e-8"]);
    assert_eq!(abcd.overall(), Verdict::Pass);
}
