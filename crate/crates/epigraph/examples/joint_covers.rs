//! Joint covers: one antidiagonal structure mapping onto two arbitrary
//! family members at once, and the signed even refinement of a single
//! cover used by the tower machinery.
//!
//! Run with: cargo run --example joint_covers

use epigraph::{
    is_epimorphism, jpp_witness, signed_antidiagonal_cover, LinearGraph, RelStructure, Relation,
};

fn main() -> anyhow::Result<()> {
    // Two members of the family on different graphs.
    let full = RelStructure::with_relation(Relation::new(
        LinearGraph::plain(2)?,
        [(1, 1), (1, 2), (2, 1), (2, 2)],
    )?);
    let zigzag = RelStructure::with_relation(Relation::new(
        LinearGraph::plain(3)?,
        [(1, 1), (1, 2), (2, 1), (2, 2), (2, 3), (3, 2), (3, 3)],
    )?);

    // One antidiagonal structure covers both: each member is first covered
    // by an antidiagonal structure, and antidiagonals of sizes k and n are
    // both images of the one of size k*n (block-wise and cyclic reading).
    let w = jpp_witness(&full, &zigzag)?;
    println!(
        "joint cover of members on [2] and [3]: antidiagonal of size {}",
        w.domain.graph.len()
    );
    assert!(is_epimorphism(&w.to_first, &w.domain, &full)?);
    assert!(is_epimorphism(&w.to_second, &w.domain, &zigzag)?);
    println!("both projections pass the epimorphism oracle");

    // Antidiagonal pairs need no intermediate stage at all.
    let a4 = RelStructure::antidiagonal_on(LinearGraph::plain(4)?);
    let a6 = RelStructure::antidiagonal_on(LinearGraph::plain(6)?);
    let w = jpp_witness(&a4, &a6)?;
    println!(
        "\njoint cover of antidiagonal[4] and antidiagonal[6]: size {}",
        w.domain.graph.len()
    );

    // For towers the cover must be signed with even positive part: cover
    // first, then relabel (doubling odd sizes) onto a signed graph.
    for member in [&full, &zigzag] {
        let (signed, down) = signed_antidiagonal_cover(member)?;
        println!(
            "\nsigned even cover of the member on {}: radius {}",
            member.graph,
            signed.graph.max_vertex()
        );
        assert!(signed.graph.is_signed());
        assert_eq!(signed.graph.max_vertex() % 2, 0);
        assert!(is_epimorphism(&down, &signed, member)?);
        println!("covering map passes the epimorphism oracle");
    }
    Ok(())
}
