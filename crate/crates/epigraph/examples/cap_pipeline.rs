//! The full amalgamation pipeline for signed antidiagonal structures, on
//! the built-in worked example: block decomposition, product coloring,
//! tie-break grid graphs, interior paths, lifted walks, and the final
//! amalgamating structure with its two epimorphisms.
//!
//! Run with: cargo run --example cap_pipeline

use epigraph::render::{amalg_graph_to_ascii, board_to_ascii};
use epigraph::{
    block_decomposition, build_amalg_graph, cap_witness, compose, find_interior_path,
    is_epimorphism, worked_example, RelStructure, Side, TieBreak,
};

fn main() -> anyhow::Result<()> {
    // Two antisymmetric epimorphisms onto the signed antidiagonal structure
    // of radius 3, one from radius 8 and one from radius 9.
    let (phi1, phi2) = worked_example();

    // Positive vertices split into sign-constant blocks; the breakpoints
    // determine everything below.
    let first = block_decomposition(&phi1)?;
    let second = block_decomposition(&phi2)?;
    println!("first map:  {}", first.breakpoint_line('s'));
    println!("second map: {}", second.breakpoint_line('t'));
    for d in [&first, &second] {
        let radius = d.radius();
        let blocks: Vec<i32> = d.blocks().collect();
        println!(
            "  radius {radius}, blocks {:?} with signs {:?}",
            blocks,
            blocks
                .iter()
                .map(|&i| d.block_sign(i).expect("listed block"))
                .collect::<Vec<_>>()
        );
    }

    // The witness carries every intermediate object.
    let w = cap_witness(&phi1, &phi2)?;
    println!("\nproduct board ((x, y) black iff phi1(x) = phi2(y)):");
    print!("{}", board_to_ascii(&w.board));

    // One vertex per block pair; ties between blocks of equal sign break
    // vertically in one graph and horizontally in the other.
    let g1 = build_amalg_graph(&first, &second, TieBreak::Vertical)?;
    let g2 = build_amalg_graph(&first, &second, TieBreak::Horizontal)?;
    println!("\nvertical-tie grid graph (interior degree is always 2):");
    print!("{}", amalg_graph_to_ascii(&g1));
    println!("\nhorizontal-tie grid graph:");
    print!("{}", amalg_graph_to_ascii(&g2));

    // From the center block, one graph walks out to the left and right
    // borders, the other to the bottom and top.
    for (g, side) in [
        (&g1, Side::Bottom),
        (&g1, Side::Top),
        (&g2, Side::Left),
        (&g2, Side::Right),
    ] {
        let path = find_interior_path(g, side)?;
        println!("path toward {side:?}: {path:?}");
    }

    // The four block-level paths lift to black cell walks on the board,
    // join at the anchor cell beside the center, and read off as one
    // listing; its coordinates are the two epimorphisms.
    println!("\nanchor cell {:?}, listing of {} cells", w.anchor, w.listing.len());
    let domain_size = w.domain.graph.len();
    println!("amalgamating structure on {} vertices", domain_size);

    let b = RelStructure::antidiagonal_on(phi1.domain());
    let c = RelStructure::antidiagonal_on(phi2.domain());
    assert!(is_epimorphism(&w.to_first, &w.domain, &b)?);
    assert!(is_epimorphism(&w.to_second, &w.domain, &c)?);
    let left = compose(&phi1, &w.to_first)?;
    let right = compose(&phi2, &w.to_second)?;
    assert!(left.same_map(&right));
    println!("both composites agree: the amalgamation square commutes");
    Ok(())
}
