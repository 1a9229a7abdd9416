//! Finite reflexive linear graphs carrying a binary relation, and the
//! epimorphisms between them.
//!
//! The crate models a small combinatorial universe. A [`LinearGraph`] is a
//! finite path of integers — either `[1, n]` or the signed interval
//! `[-k, k]` without zero — whose reflexive adjacency is positional, so the
//! signed seam `-1, 1` counts as one step. A [`RelStructure`] pairs such a
//! graph with an optional binary relation; the central example is the
//! *antidiagonal*, relating positions that mirror each other across the
//! middle. Maps between structures are checked by [`is_epimorphism`]: they
//! must be surjective, carry adjacent vertices to adjacent vertices, cover
//! every adjacency of the target, and push the source relation exactly onto
//! the target relation.
//!
//! On top of that base the crate builds, and brute-force checks:
//!
//! - membership of a relation in the family of surjective connected
//!   relations, and the walk-based cover of a member by an antidiagonal
//!   structure ([`family`]);
//! - the chessboard path duality (a black king-move path or a white
//!   rook-move path, never both) and the product colorings it applies to
//!   ([`board`]);
//! - amalgamation of epimorphism pairs: over bare linear graphs
//!   ([`board::solecki_amalgamate`]), over signed antidiagonal structures
//!   via block decompositions, grid graphs, and lifted board walks
//!   ([`amalgam`]), and joint covers of member pairs
//!   ([`amalgam::jpp_witness`]);
//! - towers of signed antidiagonal structures connected by bonding
//!   epimorphisms, growing downward one target at a time ([`tower`]);
//! - a plain text format for graphs, relations, and maps ([`textfmt`]),
//!   with ASCII and SVG renderings of boards and grid graphs ([`render`]);
//! - independent verifiers that sweep every construction against
//!   first-principles oracles ([`verify`]).
//!
//! The `examples/` directory demonstrates each capability end to end, and
//! the `epigraph` binary exposes the same operations as subcommands.

pub mod amalgam;
pub mod board;
pub mod family;
pub mod graph;
pub mod morphism;
pub mod render;
pub mod structure;
pub mod textfmt;
pub mod tower;
pub mod verify;

pub use amalgam::{
    block_decomposition, build_amalg_graph, cap_witness, combine_paths, find_interior_path,
    jpp_witness, signed_antidiagonal_cover, worked_example, AmalgGraph, AmalgamError,
    BlockDecomposition, CapWitness, JppWitness, Side, TieBreak,
};
pub use board::{
    product_coloring, solecki_amalgamate, steinhaus_check, Board, BoardError, Cell, CellPath,
    DualityOutcome, LinearAmalgam, OrientedQuadruple,
};
pub use family::{
    cover_by_antidiagonal, is_connected_relation, is_in_family_f, is_surjective_relation,
    AntidiagonalCover, CoverError,
};
pub use graph::{GraphError, LinearGraph};
pub use morphism::{
    compose, enumerate_epimorphisms, flip, is_epimorphism, order_isomorphism, pushforward,
    MorphError, StructureMap,
};
pub use structure::{antidiagonal, identity_relation, RelStructure, Relation, StructureError};
pub use textfmt::{Document, DocumentBuilder, TextError};
pub use tower::{check_tower, extend_tower, new_tower, Tower, TowerError};
pub use verify::VerificationReport;
