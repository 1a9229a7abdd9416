//! The chessboard path duality: on any two-colored rectangular board, for
//! any four boundary cells in cyclic order w, x, y, z, either a black
//! king-move path joins the wx-arc to the yz-arc, or a white rook-move path
//! joins the xy-arc to the zw-arc — never both, never neither.
//!
//! Run with: cargo run --example steinhaus_sweep

use epigraph::verify::{all_oriented_quadruples, verify_steinhaus};
use epigraph::{steinhaus_check, Board, LinearGraph, OrientedQuadruple};

fn main() -> anyhow::Result<()> {
    // A 4x4 board with a black diagonal barrier.
    let axis = LinearGraph::plain(4)?;
    let board = Board::new(
        axis,
        axis,
        [(1, 2), (2, 2), (2, 3), (3, 3), (3, 4), (4, 4)],
    )?;
    println!("{}", epigraph::render::board_to_ascii(&board));

    // Anchor the quadruple at the four corners, in boundary-cycle order
    // (up the left side first). The wx-arc is the left column and the
    // yz-arc the right column; the barrier joins them, so black wins.
    let q = OrientedQuadruple::new(&board, (1, 1), (1, 4), (4, 4), (4, 1))?;
    let outcome = steinhaus_check(&board, &q)?;
    println!("corners (1,1) (1,4) (4,4) (4,1):");
    match (&outcome.black_eight, &outcome.white_four) {
        (Some(p), None) => println!("  black king-move path: {:?}", p.cells()),
        (None, Some(p)) => println!("  white rook-move path: {:?}", p.cells()),
        _ => println!("  duality violated!"),
    }
    assert!(outcome.holds());

    // Rotate the anchors a quarter turn: now black would need to reach the
    // all-white bottom row, so the white side wins instead.
    let q = OrientedQuadruple::new(&board, (1, 4), (4, 4), (4, 1), (1, 1))?;
    let outcome = steinhaus_check(&board, &q)?;
    println!("corners (1,4) (4,4) (4,1) (1,1):");
    match (&outcome.black_eight, &outcome.white_four) {
        (Some(p), None) => println!("  black king-move path: {:?}", p.cells()),
        (None, Some(p)) => println!("  white rook-move path: {:?}", p.cells()),
        _ => println!("  duality violated!"),
    }
    assert!(outcome.holds());

    // The boundary of this board admits many quadruples; every one of them
    // resolves exactly one way.
    let quads = all_oriented_quadruples(&board)?;
    println!("\nquadruples on the 4x4 boundary: {}", quads.len());
    let black_wins = quads
        .iter()
        .filter(|q| {
            steinhaus_check(&board, q)
                .map(|o| o.black_eight.is_some())
                .unwrap_or(false)
        })
        .count();
    println!("black wins {black_wins}, white wins {}", quads.len() - black_wins);

    // Exhaustively: every coloring of a 3x3 board, every quadruple.
    let report = verify_steinhaus(3, 3);
    println!("\n{}", report.summary());
    assert!(report.passed());
    Ok(())
}
