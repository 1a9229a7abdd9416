//! End-to-end tests of the command-line binary: exit codes, the text
//! format, renders, verification sweeps, and the tower round trip.

use std::io::Write;
use std::process::{Command, Output};

use tempfile::NamedTempFile;

fn epigraph(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_epigraph"))
        .args(args)
        .output()
        .expect("the binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf-8 output")
}

fn write_temp(content: &str) -> NamedTempFile {
    let mut f = NamedTempFile::new().expect("temp file");
    f.write_all(content.as_bytes()).expect("write temp file");
    f
}

const PAIR_ON_SIGNED_3: &str = "\
graph d signed 3
graph b signed 2
map phi1 d b
1 -> 1
2 -> 2
3 -> 1
-1 -> -1
-2 -> -2
-3 -> -1
map phi2 d b
1 -> 1
2 -> 2
3 -> 2
-1 -> -1
-2 -> -2
-3 -> -2
";

#[test]
fn example_reproduces_the_breakpoints() {
    let out = epigraph(&["example"]);
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("s_0=1 s'_1=3 s_1=4 s'_2=4 s_2=5 s'_3=8"));
    assert!(text.contains("t_0=1 t'_1=7 t_1=8 t'_2=9"));
    assert!(text.contains("product board:"));
    assert!(text.contains("vertical-tie grid graph:"));
    assert!(text.contains("map psi1 dprime b"));
    assert!(text.contains("cap-witness: 4 instances, 0 failures"));
    // The same pipeline hangs off the cap subcommand.
    let nested = epigraph(&["cap", "example"]);
    assert!(nested.status.success());
    assert_eq!(stdout(&nested), text);
}

#[test]
fn example_svg_renders_boards_and_graphs() {
    let out = epigraph(&["example", "--svg"]);
    assert!(out.status.success());
    let text = stdout(&out);
    // The worked product board is 16 x 18 cells: one unit square per cell
    // plus one background rectangle per SVG document (three documents:
    // board and both grid graphs).
    let rects = text.matches("<rect").count();
    assert_eq!(rects, 16 * 18 + 3);
    assert!(text.contains("fill=\"#111111\""), "black cells are filled");
    // Axis labels for both extremes of the board.
    assert!(text.contains(">-8</text>"));
    assert!(text.contains(">9</text>"));
}

#[test]
fn membership_check_prints_one_verdict_per_structure() {
    let file = write_temp(
        "graph a plain 2\nrel a 1 1\nrel a 1 2\nrel a 2 1\nrel a 2 2\n\
         graph b plain 3\nrel b 1 1\nrel b 3 3\n\
         graph c plain 2\nrel c 1 2\n",
    );
    let out = epigraph(&["membership", "check", file.path().to_str().unwrap()]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("a: surjective; connected; in F"));
    assert!(text.contains("b: not surjective; not connected; not in F"));
    assert!(text.contains("c: not surjective; connected; not in F"));
}

#[test]
fn membership_cover_emits_a_parsable_document() {
    let file = write_temp(
        "graph a plain 2\nrel a 1 1\nrel a 1 2\nrel a 2 1\nrel a 2 2\n",
    );
    let out = epigraph(&["membership", "cover", file.path().to_str().unwrap()]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("graph cover plain 16"));
    assert!(text.contains("rel cover antidiagonal"));
    assert!(text.contains("map phi cover a"));
    // The output is itself valid input.
    let doc = epigraph::Document::parse(&text).expect("round trip");
    assert_eq!(doc.graphs.len(), 2);
    assert_eq!(doc.maps.len(), 1);
}

#[test]
fn membership_cover_fails_on_a_non_symmetric_member() {
    let file = write_temp("graph a plain 2\nrel a 1 1\nrel a 1 2\nrel a 2 2\n");
    let out = epigraph(&["membership", "cover", file.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("without its reverse"));
}

#[test]
fn jpp_emits_joint_cover_with_both_projections() {
    let file = write_temp(
        "graph a plain 2\nrel a antidiagonal\ngraph b plain 3\nrel b antidiagonal\n",
    );
    let out = epigraph(&["jpp", file.path().to_str().unwrap()]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("graph joint plain 6"));
    assert!(text.contains("map to_first joint a"));
    assert!(text.contains("map to_second joint b"));
}

#[test]
fn cap_amalgamate_emits_witness_and_report() {
    let file = write_temp(PAIR_ON_SIGNED_3);
    let out = epigraph(&["cap", "amalgamate", file.path().to_str().unwrap()]);
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("graph dprime signed"));
    assert!(text.contains("rel dprime antidiagonal"));
    assert!(text.contains("map psi1 dprime d"));
    assert!(text.contains("map psi2 dprime d"));
    assert!(text.contains("cap-witness: 4 instances, 0 failures"));
}

#[test]
fn cap_graphs_prints_edge_lists_per_variant() {
    let file = write_temp(PAIR_ON_SIGNED_3);
    let path = file.path().to_str().unwrap().to_string();
    let g1 = stdout(&epigraph(&["cap", "graphs", &path, "--variant", "g1"]));
    let g2 = stdout(&epigraph(&["cap", "graphs", &path, "--variant", "g2"]));
    let g0 = stdout(&epigraph(&["cap", "graphs", &path, "--variant", "g0"]));
    assert!(g1.lines().all(|l| l.contains(" -- ")));
    assert_ne!(g1, g2, "tie-breaks differ somewhere on this instance");
    // Ties contribute to both graphs, so g0 holds every edge of g1 and g2.
    for line in g1.lines().chain(g2.lines()) {
        assert!(g0.contains(line), "g0 is missing {line}");
    }
}

#[test]
fn chessboard_render_supports_ascii_and_svg() {
    let file = write_temp(PAIR_ON_SIGNED_3);
    let path = file.path().to_str().unwrap().to_string();
    let ascii = epigraph(&["chessboard", "render", &path]);
    assert!(ascii.status.success());
    assert!(stdout(&ascii).contains("row 1 "));
    let svg = epigraph(&["chessboard", "render", &path, "--svg"]);
    assert!(svg.status.success());
    let text = stdout(&svg);
    // One unit square per cell of the 6 x 6 board plus the background.
    assert_eq!(text.matches("<rect").count(), 37);
    assert!(text.contains("fill=\"#111111\""));
    assert!(text.contains(">-3</text>"), "axis labels present");
}

#[test]
fn chessboard_steinhaus_sweeps_exhaustively_and_sampled() {
    let out = epigraph(&[
        "chessboard", "steinhaus", "--rows", "2", "--cols", "2", "--exhaustive",
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("steinhaus: 256 instances, 0 failures"));
    let sampled = epigraph(&[
        "chessboard", "steinhaus", "--rows", "4", "--cols", "4", "--instances", "10",
        "--seed", "3",
    ]);
    assert!(sampled.status.success());
    assert!(stdout(&sampled).contains("steinhaus-sampled:"));
    // Exhaustive sweeps refuse boards beyond 12 cells.
    let refused = epigraph(&[
        "chessboard", "steinhaus", "--rows", "4", "--cols", "4", "--exhaustive",
    ]);
    assert_eq!(refused.status.code(), Some(2));
}

#[test]
fn verify_steinhaus_three_by_three_passes() {
    let out = epigraph(&["verify", "steinhaus", "--rows", "3", "--cols", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("0 failures"));
}

#[test]
fn verify_covers_reports_failure_with_exit_one() {
    let out = epigraph(&["verify", "covers", "--max-size", "2"]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains("covers: 8 instances, 2 failures"));
    assert!(text.contains("counterexample:"));
}

#[test]
fn verify_emits_json_reports() {
    let out = epigraph(&["verify", "ap", "--max-size", "2", "--instances", "5", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value =
        serde_json::from_str(&stdout(&out)).expect("valid json");
    assert_eq!(report["property"], "ap");
    assert!(report["failures"].as_array().expect("array").is_empty());
}

#[test]
fn parse_errors_exit_two() {
    let file = write_temp("graph a plain 2\nrel a 1\n");
    let out = epigraph(&["membership", "check", file.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("line 2"));
    let missing = epigraph(&["membership", "check", "/nonexistent/file.txt"]);
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_two() {
    let out = epigraph(&["verify", "nonsense"]);
    assert_eq!(out.status.code(), Some(2));
    let bad_size = epigraph(&["verify", "covers", "--max-size", "9"]);
    assert_eq!(bad_size.status.code(), Some(2));
}

#[test]
fn tower_build_and_check_round_trip() {
    let targets = write_temp(
        "graph a plain 2\nrel a antidiagonal\n\
         graph b plain 2\nrel b 1 1\nrel b 1 2\nrel b 2 1\nrel b 2 2\n",
    );
    let out_file = NamedTempFile::new().expect("temp file");
    let out_path = out_file.path().to_str().unwrap().to_string();
    let build = epigraph(&[
        "tower", "build", "--targets", targets.path().to_str().unwrap(), "--out", &out_path,
    ]);
    assert!(build.status.success(), "stderr: {}", stderr(&build));
    assert!(stdout(&build).contains("tower with 3 levels"));
    assert!(stdout(&build).contains("0 failures"));

    let check = epigraph(&["tower", "check", &out_path]);
    assert_eq!(check.status.code(), Some(0));
    assert!(stdout(&check).contains("tower with 3 levels"));

    // Corrupt one level's relation (still parsable, no longer antidiagonal)
    // and the checker must object.
    let text = std::fs::read_to_string(&out_path).expect("tower file");
    let broken = text.replacen("rel L1 antidiagonal", "rel L1 1 -1", 1);
    assert_ne!(text, broken, "the tower file declares level 1's relation");
    std::fs::write(&out_path, broken).expect("rewrite tower file");
    let recheck = epigraph(&["tower", "check", &out_path]);
    assert_eq!(recheck.status.code(), Some(1));
}

#[test]
fn tower_build_rejects_relationless_targets() {
    let targets = write_temp("graph a plain 2\n");
    let out_file = NamedTempFile::new().expect("temp file");
    let out = epigraph(&[
        "tower", "build", "--targets", targets.path().to_str().unwrap(),
        "--out", out_file.path().to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
}
