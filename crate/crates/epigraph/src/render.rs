//! ASCII and SVG renderings of boards and grid graphs, plus the ASCII
//! board parser (rendered boards round-trip through it).

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use crate::amalgam::{AmalgGraph, GridVertex};
use crate::board::{Board, Cell};
use crate::graph::LinearGraph;
use crate::textfmt::TextError;

/// Renders a board as one `row` line per y value, top row first; `#` is a
/// black cell, `.` a white one.
pub fn board_to_ascii(board: &Board) -> String {
    let mut out = String::new();
    out.push_str(&axis_line("x-axis", board.x_axis()));
    out.push_str(&axis_line("y-axis", board.y_axis()));
    let xs = board.x_vertices();
    for y in board.y_vertices().into_iter().rev() {
        let cells: String = xs
            .iter()
            .map(|&x| if board.is_black((x, y)) { '#' } else { '.' })
            .collect();
        writeln!(out, "row {y} {cells}").expect("writing to a string");
    }
    out
}

fn axis_line(label: &str, g: LinearGraph) -> String {
    let kind = if g.is_signed() { "signed" } else { "plain" };
    format!("{label} {kind} {}\n", g.max_vertex())
}

/// Parses the `board_to_ascii` format back into a board. Lines starting
/// with `#` are comments (cell characters only count inside `row` lines);
/// both axes must be declared before the first row, and every row must
/// appear exactly once with one character per column.
pub fn board_from_ascii(text: &str) -> Result<Board, TextError> {
    let err = |line: usize, message: String| TextError { line, message };
    let mut x_axis: Option<LinearGraph> = None;
    let mut y_axis: Option<LinearGraph> = None;
    let mut seen_rows: BTreeMap<i32, usize> = BTreeMap::new();
    let mut black: BTreeSet<Cell> = BTreeSet::new();

    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match tokens.as_slice() {
            [axis @ ("x-axis" | "y-axis"), kind, size] => {
                let size: i64 = size
                    .parse()
                    .map_err(|_| err(lineno, format!("bad size {size:?}")))?;
                let graph = match *kind {
                    "plain" => LinearGraph::plain(size),
                    "signed" => LinearGraph::signed(size),
                    other => return Err(err(lineno, format!("unknown axis kind {other:?}"))),
                }
                .map_err(|e| err(lineno, e.to_string()))?;
                let slot = if *axis == "x-axis" {
                    &mut x_axis
                } else {
                    &mut y_axis
                };
                if slot.replace(graph).is_some() {
                    return Err(err(lineno, format!("{axis} is already declared")));
                }
            }
            ["row", y, cells] => {
                let (Some(xg), Some(yg)) = (x_axis, y_axis) else {
                    return Err(err(lineno, "rows must come after both axis lines".into()));
                };
                let y: i32 = y
                    .parse()
                    .map_err(|_| err(lineno, format!("bad row index {y:?}")))?;
                if !yg.contains(y) {
                    return Err(err(lineno, format!("row {y} is not on the y-axis ({yg})")));
                }
                if seen_rows.insert(y, lineno).is_some() {
                    return Err(err(lineno, format!("row {y} appears twice")));
                }
                let marks: Vec<char> = cells.chars().collect();
                if marks.len() != xg.len() {
                    return Err(err(
                        lineno,
                        format!("row {y} has {} cells, expected {}", marks.len(), xg.len()),
                    ));
                }
                for (x, mark) in xg.vertices().zip(marks) {
                    match mark {
                        '#' => {
                            black.insert((x, y));
                        }
                        '.' => {}
                        other => {
                            return Err(err(lineno, format!("bad cell character {other:?}")))
                        }
                    }
                }
            }
            _ => return Err(err(lineno, format!("unknown directive {:?}", tokens[0]))),
        }
    }

    let (Some(xg), Some(yg)) = (x_axis, y_axis) else {
        return Err(err(1, "both axis lines are required".into()));
    };
    let missing: Vec<i32> = yg.vertices().filter(|y| !seen_rows.contains_key(y)).collect();
    if !missing.is_empty() {
        return Err(err(1, format!("missing rows {missing:?}")));
    }
    Board::new(xg, yg, black).map_err(|e| err(1, e.to_string()))
}

/// Renders a board as an SVG drawing: one unit square per cell, black cells
/// filled, axes labeled with the vertex indices.
pub fn board_to_svg(board: &Board) -> String {
    const CELL: i32 = 24;
    const MARGIN: i32 = 34;
    const PAD: i32 = 6;
    let xs = board.x_vertices();
    let ys = board.y_vertices();
    let width = MARGIN + xs.len() as i32 * CELL + PAD;
    let height = PAD + ys.len() as i32 * CELL + MARGIN;
    let mut out = String::new();
    writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width}\" height=\"{height}\" \
         viewBox=\"0 0 {width} {height}\">"
    )
    .expect("writing to a string");
    writeln!(
        out,
        "  <rect x=\"0\" y=\"0\" width=\"{width}\" height=\"{height}\" fill=\"white\"/>"
    )
    .expect("writing to a string");
    for (col, &x) in xs.iter().enumerate() {
        for (row, &y) in ys.iter().rev().enumerate() {
            let px = MARGIN + col as i32 * CELL;
            let py = PAD + row as i32 * CELL;
            let fill = if board.is_black((x, y)) { "#111111" } else { "#ffffff" };
            writeln!(
                out,
                "  <rect x=\"{px}\" y=\"{py}\" width=\"{CELL}\" height=\"{CELL}\" \
                 fill=\"{fill}\" stroke=\"#999999\" stroke-width=\"1\"/>"
            )
            .expect("writing to a string");
        }
    }
    for (col, &x) in xs.iter().enumerate() {
        let px = MARGIN + col as i32 * CELL + CELL / 2;
        let py = PAD + ys.len() as i32 * CELL + 16;
        writeln!(
            out,
            "  <text x=\"{px}\" y=\"{py}\" font-family=\"monospace\" font-size=\"11\" \
             text-anchor=\"middle\" fill=\"#333333\">{x}</text>"
        )
        .expect("writing to a string");
    }
    for (row, &y) in ys.iter().rev().enumerate() {
        let px = MARGIN - 6;
        let py = PAD + row as i32 * CELL + CELL / 2 + 4;
        writeln!(
            out,
            "  <text x=\"{px}\" y=\"{py}\" font-family=\"monospace\" font-size=\"11\" \
             text-anchor=\"end\" fill=\"#333333\">{y}</text>"
        )
        .expect("writing to a string");
    }
    out.push_str("</svg>\n");
    out
}

/// Renders a grid graph as text: `o` for grid points, `---`/`|` for edges,
/// with coordinate labels on the left and bottom.
pub fn amalg_graph_to_ascii(g: &AmalgGraph) -> String {
    let p = g.x_radius();
    let q = g.y_radius();
    let has_edge = |a: GridVertex, b: GridVertex| -> bool {
        let key = if a <= b { (a, b) } else { (b, a) };
        g.edges().contains(&key)
    };
    let mut out = String::new();
    for j in (-q..=q).rev() {
        let mut line = format!("{j:>4} ");
        for i in -p..=p {
            line.push('o');
            if i < p {
                line.push_str(if has_edge((i, j), (i + 1, j)) { "---" } else { "   " });
            }
        }
        out.push_str(line.trim_end());
        out.push('\n');
        if j > -q {
            let mut bars = String::from("     ");
            for i in -p..=p {
                bars.push(if has_edge((i, j - 1), (i, j)) { '|' } else { ' ' });
                if i < p {
                    bars.push_str("   ");
                }
            }
            out.push_str(bars.trim_end());
            out.push('\n');
        }
    }
    let mut labels = String::from("     ");
    for i in -p..=p {
        labels.push_str(&format!("{i:<4}"));
    }
    out.push_str(labels.trim_end());
    out.push('\n');
    out
}

/// Renders a grid graph as an SVG drawing: dots for grid points, segments
/// for edges, indices along the axes.
pub fn amalg_graph_to_svg(g: &AmalgGraph) -> String {
    const STEP: i32 = 36;
    const MARGIN: i32 = 34;
    let p = g.x_radius();
    let q = g.y_radius();
    let width = 2 * MARGIN + 2 * p * STEP;
    let height = 2 * MARGIN + 2 * q * STEP;
    let place = |(i, j): GridVertex| -> (i32, i32) {
        (MARGIN + (i + p) * STEP, MARGIN + (q - j) * STEP)
    };
    let mut out = String::new();
    writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width}\" height=\"{height}\" \
         viewBox=\"0 0 {width} {height}\">"
    )
    .expect("writing to a string");
    writeln!(
        out,
        "  <rect x=\"0\" y=\"0\" width=\"{width}\" height=\"{height}\" fill=\"white\"/>"
    )
    .expect("writing to a string");
    for &(a, b) in g.edges() {
        let (x1, y1) = place(a);
        let (x2, y2) = place(b);
        writeln!(
            out,
            "  <line x1=\"{x1}\" y1=\"{y1}\" x2=\"{x2}\" y2=\"{y2}\" \
             stroke=\"#222222\" stroke-width=\"2\"/>"
        )
        .expect("writing to a string");
    }
    for v in g.vertices() {
        let (cx, cy) = place(v);
        writeln!(
            out,
            "  <circle cx=\"{cx}\" cy=\"{cy}\" r=\"3.5\" fill=\"#222222\"/>"
        )
        .expect("writing to a string");
    }
    for i in -p..=p {
        let (x, _) = place((i, -q));
        let y = height - 10;
        writeln!(
            out,
            "  <text x=\"{x}\" y=\"{y}\" font-family=\"monospace\" font-size=\"11\" \
             text-anchor=\"middle\" fill=\"#333333\">{i}</text>"
        )
        .expect("writing to a string");
    }
    for j in -q..=q {
        let (_, y) = place((-p, j));
        writeln!(
            out,
            "  <text x=\"10\" y=\"{}\" font-family=\"monospace\" font-size=\"11\" \
             text-anchor=\"start\" fill=\"#333333\">{j}</text>",
            y + 4
        )
        .expect("writing to a string");
    }
    out.push_str("</svg>\n");
    out
}

/// One `(a,b) -- (c,d)` line per edge, in sorted order.
pub fn edge_list(g: &AmalgGraph) -> String {
    let mut out = String::new();
    for &((a, b), (c, d)) in g.edges() {
        writeln!(out, "({a},{b}) -- ({c},{d})").expect("writing to a string");
    }
    out
}
