use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/fixtures").join(name)
}

fn conway(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_conway"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn compute_text_and_json() {
    let trefoil = fixture("trefoil_right.diagram");
    let o = conway(&["compute", "--input", path(&trefoil)]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "c0=1 c2=1\n");

    let o = conway(&["compute", "--input", path(&fixture("knot_5_1.diagram")), "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v, serde_json::json!({"0": 1, "2": 3, "4": 1}));

    let o = conway(&["compute", "--input", path(&fixture("knot_5_1.diagram")), "--max-degree", "2"]);
    assert_eq!(stdout(&o), "c0=1 c2=3\n");

    let o = conway(&["compute", "--input", path(&fixture("unlink2.diagram"))]);
    assert_eq!(stdout(&o), "0\n");
}

#[test]
fn verify_random_skein_is_clean_and_deterministic() {
    let args = ["verify", "--property", "skein", "--random", "--trials", "50", "--seed", "7"];
    let a = conway(&args);
    assert_eq!(a.status.code(), Some(0), "{}", stderr(&a));
    let report: serde_json::Value = serde_json::from_str(&stdout(&a)).unwrap();
    assert_eq!(report["property"], "skein");
    assert_eq!(report["failures"], serde_json::json!([]));
    assert!(report["instances"].as_u64().unwrap() > 0);
    let b = conway(&args);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn verify_each_property_on_a_file() {
    let f = fixture("figure_eight.diagram");
    for property in ["skein", "ordering", "marking", "moves"] {
        let o = conway(&["verify", "--property", property, "--input", path(&f), "--max-degree", "4"]);
        assert_eq!(o.status.code(), Some(0), "{property}: {}", stderr(&o));
        let report: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
        assert_eq!(report["property"], property);
    }
}

#[test]
fn tables_pass() {
    let o = conway(&["tables"]);
    assert_eq!(o.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(report["instances"], 34);
}

#[test]
fn ingest_disjoint_triangles() {
    let o = conway(&["ingest", "--contours", path(&fixture("disjoint_triangles.contours"))]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "diagram disjoint_triangles\nloops 2\nend\n");
}

#[test]
fn ingest_writes_a_descending_diagram() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("trefoil.diagram");
    let o = conway(&[
        "ingest",
        "--contours",
        path(&fixture("trefoil_hexagon.contours")),
        "--out",
        path(&out),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).is_empty());
    let text = std::fs::read_to_string(&out).unwrap();
    assert_eq!(text.lines().filter(|l| l.starts_with("crossing")).count(), 3);
    let o = conway(&["compute", "--input", path(&out)]);
    assert_eq!(stdout(&o), "c0=1\n");

    // Switching one crossing of the descending trefoil shadow still gives an
    // unknot; switching to the alternating state gives the trefoil.
    let switched = dir.path().join("switched.diagram");
    let o = conway(&["switch", "--input", path(&out), "--crossing", "2"]);
    std::fs::write(&switched, &o.stdout).unwrap();
    let o = conway(&["compute", "--input", path(&switched)]);
    assert_eq!(stdout(&o), "c0=1 c2=1\n");
}

#[test]
fn switch_and_smooth() {
    let hopf = fixture("hopf_pos.diagram");
    let o = conway(&["switch", "--input", path(&hopf), "--crossing", "2"]);
    assert!(o.status.success());
    let dir = tempfile::tempdir().unwrap();
    let split = dir.path().join("split.diagram");
    std::fs::write(&split, &o.stdout).unwrap();
    assert_eq!(stdout(&conway(&["compute", "--input", path(&split)])), "0\n");

    let o = conway(&["smooth", "--input", path(&hopf), "--crossing", "1"]);
    assert!(o.status.success());
    let smoothed = dir.path().join("smoothed.diagram");
    std::fs::write(&smoothed, &o.stdout).unwrap();
    assert_eq!(stdout(&conway(&["compute", "--input", path(&smoothed)])), "c0=1\n");
}

#[test]
fn input_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.diagram");
    std::fs::write(&bad, "diagram bad\nloops 0\ncrossing 1 A=2:9 B=7:2 orient=+ over=A\nend\n").unwrap();
    let o = conway(&["compute", "--input", path(&bad)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("dangling edge e7 at line 3"), "{}", stderr(&o));
    assert!(o.stdout.is_empty());

    let missing = dir.path().join("nope.diagram");
    assert_eq!(conway(&["compute", "--input", path(&missing)]).status.code(), Some(2));
    assert_eq!(conway(&["compute", "--bogus"]).status.code(), Some(2));
    assert_eq!(conway(&["verify", "--property", "skein"]).status.code(), Some(2));
    let hopf = fixture("hopf_pos.diagram");
    let o = conway(&["switch", "--input", path(&hopf), "--crossing", "9"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("unknown crossing c9"));
}

#[test]
fn contour_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("flat.contours");
    std::fs::write(&bad, "contour flat\npoint 0 0\npoint 1 1\nend\n").unwrap();
    let o = conway(&["ingest", "--contours", path(&bad)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 4"));

    let triple = dir.path().join("triple.contours");
    std::fs::write(
        &triple,
        "contour a\npoint -3 -1\npoint 3 1\npoint 10 -20\nend\n\
         contour b\npoint -1 -3\npoint 1 3\npoint -20 10\nend\n\
         contour c\npoint -2 3\npoint 2 -3\npoint 30 31\nend\n",
    )
    .unwrap();
    let o = conway(&["ingest", "--contours", path(&triple)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("general position"));
}
