//! Amalgamate two epimorphisms of bare linear graphs over a common target
//! by walking black cells of their product board.
//!
//! Run with: cargo run --example linear_amalgamation

use epigraph::render::board_to_ascii;
use epigraph::{
    compose, is_epimorphism, product_coloring, solecki_amalgamate, LinearGraph, RelStructure,
    StructureMap,
};

fn main() -> anyhow::Result<()> {
    // Two folds onto [3]: one from [5], one from [4].
    let five = LinearGraph::plain(5)?;
    let four = LinearGraph::plain(4)?;
    let three = LinearGraph::plain(3)?;
    let f = StructureMap::new(five, three, vec![1, 2, 3, 2, 1])?;
    let g = StructureMap::new(four, three, vec![3, 2, 1, 2])?;

    // Color the product: (x, y) is black exactly when f(x) = g(y). Black
    // cells always form a curve from one side of the board to another.
    let board = product_coloring(&f, &g)?;
    print!("{}", board_to_ascii(&board));

    // The amalgamation walks a single black king-move path that sweeps every
    // column and every row; its coordinates are the two mediating maps.
    let w = solecki_amalgamate(&f, &g)?;
    println!("\npath of {} cells:", w.path.cells().len());
    println!("  {:?}", w.path.cells());
    println!("common domain: {}", w.domain);

    let src = RelStructure::r_only(w.domain);
    assert!(is_epimorphism(&w.to_first, &src, &RelStructure::r_only(five))?);
    assert!(is_epimorphism(&w.to_second, &src, &RelStructure::r_only(four))?);

    // The square commutes: f after the first projection equals g after the
    // second, because every cell on the path is black.
    let through_f = compose(&f, &w.to_first)?;
    let through_g = compose(&g, &w.to_second)?;
    assert!(through_f.same_map(&through_g));
    println!("square commutes: both composites agree on all {} vertices", w.domain.len());
    Ok(())
}
