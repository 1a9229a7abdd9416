use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::graph::LinearGraph;
use crate::morphism::{is_epimorphism, MorphError, StructureMap};
use crate::structure::{Relation, RelStructure};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CoverError {
    #[error("the structure carries no relation")]
    NoRelation,
    #[error("the relation is not both surjective and connected")]
    NotInFamily,
    #[error("no vertex with a pair on or next to the diagonal; cannot start the walk")]
    NoNearDiagonalStart,
    #[error(
        "constructed cover map fails the epimorphism check; the relation contains \
         {witness:?} without its reverse, and antidiagonal images are always symmetric"
    )]
    NotCoverable { witness: Option<(i32, i32)> },
    #[error(transparent)]
    Morph(#[from] MorphError),
}

/// The graph whose vertices are the pairs of a relation, with an edge between
/// two pairs whenever they are coordinatewise adjacent in the base graph
/// (equal coordinates count, being reflexively adjacent).
#[derive(Debug, Clone)]
pub struct RelationGraph {
    vertices: Vec<(i32, i32)>,
    adjacency: BTreeMap<(i32, i32), Vec<(i32, i32)>>,
}

impl RelationGraph {
    pub fn vertices(&self) -> &[(i32, i32)] {
        &self.vertices
    }

    pub fn neighbors(&self, v: (i32, i32)) -> &[(i32, i32)] {
        self.adjacency.get(&v).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn edges(&self) -> BTreeSet<((i32, i32), (i32, i32))> {
        let mut out = BTreeSet::new();
        for (&v, nbrs) in &self.adjacency {
            for &w in nbrs {
                out.insert(if v <= w { (v, w) } else { (w, v) });
            }
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        let Some(&start) = self.vertices.first() else {
            return true;
        };
        let mut seen = BTreeSet::from([start]);
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for &w in self.neighbors(v) {
                if seen.insert(w) {
                    stack.push(w);
                }
            }
        }
        seen.len() == self.vertices.len()
    }
}

pub fn relation_graph(s: &Relation) -> RelationGraph {
    let g = s.base();
    let vertices: Vec<(i32, i32)> = s.pairs().iter().copied().collect();
    let mut adjacency = BTreeMap::new();
    for &(a, b) in &vertices {
        let nbrs: Vec<(i32, i32)> = vertices
            .iter()
            .copied()
            .filter(|&(c, d)| (c, d) != (a, b) && g.adjacent(a, c) && g.adjacent(b, d))
            .collect();
        adjacency.insert((a, b), nbrs);
    }
    RelationGraph {
        vertices,
        adjacency,
    }
}

/// Every vertex of the base graph has an out-neighbor and an in-neighbor.
pub fn is_surjective_relation(s: &Relation) -> bool {
    let mut has_out = BTreeSet::new();
    let mut has_in = BTreeSet::new();
    for &(a, b) in s.pairs() {
        has_out.insert(a);
        has_in.insert(b);
    }
    s.base()
        .vertices()
        .all(|v| has_out.contains(&v) && has_in.contains(&v))
}

/// The pair graph of the relation is connected (vacuously so with at most one
/// pair).
pub fn is_connected_relation(s: &Relation) -> bool {
    relation_graph(s).is_connected()
}

/// Family membership: the relation is surjective and connected.
pub fn is_in_family_f(a: &RelStructure) -> Result<bool, CoverError> {
    let s = a.s.as_ref().ok_or(CoverError::NoRelation)?;
    Ok(is_surjective_relation(s) && is_connected_relation(s))
}

/// An antidiagonal structure covering a member of the family, together with
/// the epimorphism down onto it and the relation walk it was built from.
#[derive(Debug, Clone)]
pub struct AntidiagonalCover {
    pub cover: RelStructure,
    pub map: StructureMap,
    pub walk: Vec<(i32, i32)>,
}

/// Smallest vertex carrying a pair on or next to the diagonal, preferring the
/// loop shape, then the up-step, then the down-step.
fn near_diagonal_start(s: &Relation) -> Option<(i32, i32)> {
    let g = s.base();
    for v in g.vertices() {
        if s.contains(v, v) {
            return Some((v, v));
        }
        if let Some(w) = g.succ(v) {
            if s.contains(v, w) {
                return Some((v, w));
            }
            if s.contains(w, v) {
                return Some((w, v));
            }
        }
    }
    None
}

/// Depth-first walk of the relation graph from `start`, recording the vertex
/// on entry and again after each child returns, truncated at the step where
/// the last undiscovered vertex appears. Visits every pair; the length is at
/// most 2|s| - 1.
fn surjective_walk(rg: &RelationGraph, start: (i32, i32)) -> Vec<(i32, i32)> {
    let mut walk = Vec::new();
    let mut seen = BTreeSet::new();
    let mut last_first_visit = 0usize;

    fn go(
        rg: &RelationGraph,
        v: (i32, i32),
        walk: &mut Vec<(i32, i32)>,
        seen: &mut BTreeSet<(i32, i32)>,
        last_first_visit: &mut usize,
    ) {
        seen.insert(v);
        walk.push(v);
        *last_first_visit = walk.len();
        for &w in rg.neighbors(v) {
            if !seen.contains(&w) {
                go(rg, w, walk, seen, last_first_visit);
                walk.push(v);
            }
        }
    }

    go(rg, start, &mut walk, &mut seen, &mut last_first_visit);
    walk.truncate(last_first_visit);
    walk
}

/// Builds an antidiagonal structure of size 4m with an epimorphism onto the
/// given family member, where m is the length of a surjective walk through
/// the relation's pairs. The map reads the walk's first coordinates forward
/// then backward, then its second coordinates forward then backward. The
/// result is validated before being returned; relations containing a pair
/// without its reverse admit no such cover (images of the antidiagonal are
/// symmetric), and for those the typed failure reports a witness pair.
pub fn cover_by_antidiagonal(a: &RelStructure) -> Result<AntidiagonalCover, CoverError> {
    if !is_in_family_f(a)? {
        return Err(CoverError::NotInFamily);
    }
    let s = a.s.as_ref().expect("membership implies a relation");
    let start = near_diagonal_start(s).ok_or(CoverError::NoNearDiagonalStart)?;
    let rg = relation_graph(s);
    let walk = surjective_walk(&rg, start);
    let m = walk.len();

    let b_graph = LinearGraph::plain(4 * m as i64).expect("m >= 1");
    let mut images = Vec::with_capacity(4 * m);
    images.extend(walk.iter().map(|p| p.0));
    images.extend(walk.iter().rev().map(|p| p.0));
    images.extend(walk.iter().map(|p| p.1));
    images.extend(walk.iter().rev().map(|p| p.1));
    let map = StructureMap::new(b_graph, a.graph, images)?;
    let cover = RelStructure::antidiagonal_on(b_graph);

    if !is_epimorphism(&map, &cover, a)? {
        let witness = s
            .pairs()
            .iter()
            .copied()
            .find(|&(x, y)| !s.contains(y, x));
        return Err(CoverError::NotCoverable { witness });
    }
    Ok(AntidiagonalCover { cover, map, walk })
}
