//! Enumerate every epimorphism between small structures and poke at the
//! three defining conditions by hand.
//!
//! Run with: cargo run --example enumerate_epimorphisms

use epigraph::{
    enumerate_epimorphisms, is_epimorphism, pushforward, LinearGraph, RelStructure, Relation,
    StructureMap,
};

fn main() -> anyhow::Result<()> {
    // Bare linear graphs first: maps only need to be surjective, send
    // neighbors to neighbors, and cover every edge of the target.
    let three = LinearGraph::plain(3)?;
    let two = LinearGraph::plain(2)?;
    let maps = enumerate_epimorphisms(
        &RelStructure::r_only(three),
        &RelStructure::r_only(two),
    )?;
    println!("epimorphisms {three} -> {two}: {}", maps.len());
    for m in &maps {
        let images: Vec<i32> = three.vertices().map(|v| m.apply(v)).collect();
        println!("  {images:?}");
    }

    // Add relations and the count drops: the pushforward of the source
    // relation must now equal the target relation exactly.
    let src = RelStructure::antidiagonal_on(LinearGraph::plain(6)?);
    let dst = RelStructure::antidiagonal_on(two);
    let maps = enumerate_epimorphisms(&src, &dst)?;
    println!(
        "\nepimorphisms antidiagonal[6] -> antidiagonal[2]: {}",
        maps.len()
    );

    // One hand-rolled candidate, checked condition by condition. Vertices
    // 1..=6 fold as 1 1 2 2 1 1: surjective and neighbor-preserving, but the
    // pushforward of the size-6 antidiagonal relation is too big.
    let fold = StructureMap::new(src.graph, dst.graph, vec![1, 1, 2, 2, 1, 1])?;
    let s6 = src.s.as_ref().expect("antidiagonal structures carry s");
    let s2 = dst.s.as_ref().expect("antidiagonal structures carry s");
    let image = pushforward(&fold, s6);
    println!("\nfold 1 1 2 2 1 1:");
    println!("  pushforward  = {image}");
    println!("  target       = {s2}");
    println!("  epimorphism? = {}", is_epimorphism(&fold, &src, &dst)?);

    // A correct cover reads the six positions as three sweeps across [2].
    let sweep = StructureMap::new(src.graph, dst.graph, vec![1, 2, 2, 1, 1, 2])?;
    println!("\nsweep 1 2 2 1 1 2:");
    println!("  epimorphism? = {}", is_epimorphism(&sweep, &src, &dst)?);

    // Arbitrary relations work the same way; here the full relation on [2]
    // receives the antidiagonal on [4].
    let full = RelStructure::with_relation(Relation::new(
        two,
        [(1, 1), (1, 2), (2, 1), (2, 2)],
    )?);
    let from_four = enumerate_epimorphisms(
        &RelStructure::antidiagonal_on(LinearGraph::plain(4)?),
        &full,
    )?;
    println!(
        "\nepimorphisms antidiagonal[4] -> full relation on [2]: {}",
        from_four.len()
    );
    Ok(())
}
