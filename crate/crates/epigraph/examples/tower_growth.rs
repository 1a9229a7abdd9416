//! Grow a tower of signed antidiagonal structures: each extension covers a
//! requested family member while bonding antisymmetrically onto the level
//! below, and the whole stack revalidates from scratch.
//!
//! Run with: cargo run --example tower_growth

use epigraph::{check_tower, extend_tower, new_tower, LinearGraph, RelStructure, Relation, Tower};

fn main() -> anyhow::Result<()> {
    // Towers start at the one-point signed antidiagonal structure.
    let tower = new_tower();
    println!("base tower: {} level", tower.height());

    // Extend by three targets: a small antidiagonal, the full relation on
    // [2], and a zig-zag member on [3]. Each new level is a signed
    // antidiagonal structure large enough to cover its target and to map
    // antisymmetrically onto the previous top.
    let zigzag = Relation::new(
        LinearGraph::plain(3)?,
        [(1, 1), (1, 2), (2, 1), (2, 2), (2, 3), (3, 2), (3, 3)],
    )?;
    let targets = [
        RelStructure::antidiagonal_on(LinearGraph::plain(2)?),
        RelStructure::with_relation(Relation::new(
            LinearGraph::plain(2)?,
            [(1, 1), (1, 2), (2, 1), (2, 2)],
        )?),
        RelStructure::with_relation(zigzag),
    ];
    let mut tower = tower;
    for target in &targets {
        tower = extend_tower(&tower, target)?;
        let top = tower.levels().last().expect("towers are never empty");
        println!(
            "extended to cover a member on {} vertices; new top has radius {}",
            target.graph.len(),
            top.graph.max_vertex()
        );
    }

    // Every level, bond, flip square, and recorded cover re-checks.
    let report = check_tower(&tower);
    println!("\n{}", report.summary());
    assert!(report.passed());

    // The text form round-trips levels and bonds (recorded targets are
    // working data and stay behind).
    let text = tower.to_text();
    println!("\n{text}");
    let reloaded = Tower::from_text(&text)?;
    assert_eq!(reloaded.height(), tower.height());
    let report = check_tower(&reloaded);
    println!("{}", report.summary());
    assert!(report.passed());
    Ok(())
}
