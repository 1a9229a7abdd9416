use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::graph::LinearGraph;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum StructureError {
    #[error("pair ({0}, {1}) uses a vertex outside the base graph {2}")]
    ForeignVertex(i32, i32, LinearGraph),
    #[error("relation base {relation} does not match the structure graph {graph}")]
    BaseMismatch {
        relation: LinearGraph,
        graph: LinearGraph,
    },
}

/// A set of ordered vertex pairs over a linear graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    base: LinearGraph,
    pairs: BTreeSet<(i32, i32)>,
}

impl Relation {
    pub fn new<I>(base: LinearGraph, pairs: I) -> Result<Self, StructureError>
    where
        I: IntoIterator<Item = (i32, i32)>,
    {
        let pairs: BTreeSet<(i32, i32)> = pairs.into_iter().collect();
        for &(a, b) in &pairs {
            if !base.contains(a) || !base.contains(b) {
                return Err(StructureError::ForeignVertex(a, b, base));
            }
        }
        Ok(Relation { base, pairs })
    }

    pub fn empty(base: LinearGraph) -> Self {
        Relation {
            base,
            pairs: BTreeSet::new(),
        }
    }

    pub fn base(&self) -> LinearGraph {
        self.base
    }

    pub fn pairs(&self) -> &BTreeSet<(i32, i32)> {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn contains(&self, a: i32, b: i32) -> bool {
        self.pairs.contains(&(a, b))
    }

    pub fn is_symmetric(&self) -> bool {
        self.pairs.iter().all(|&(a, b)| self.contains(b, a))
    }

    /// True when this is exactly the antidiagonal of its base graph.
    pub fn is_antidiagonal(&self) -> bool {
        *self == antidiagonal(self.base)
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (a, b)) in self.pairs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "({a},{b})")?;
        }
        write!(f, "}}")
    }
}

/// The antidiagonal relation: `(v, n+1-v)` on a plain graph, `(v, -v)` on a
/// signed one. Pairs the vertex order with its reversal.
pub fn antidiagonal(g: LinearGraph) -> Relation {
    let n = g.len();
    let pairs = (0..n).map(|i| {
        (
            g.vertex_at(i).unwrap(),
            g.vertex_at(n - 1 - i).unwrap(),
        )
    });
    Relation::new(g, pairs).unwrap()
}

/// The diagonal relation `{(v, v)}`.
pub fn identity_relation(g: LinearGraph) -> Relation {
    Relation::new(g, g.vertices().map(|v| (v, v))).unwrap()
}

/// A linear graph optionally equipped with one binary relation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelStructure {
    pub graph: LinearGraph,
    pub s: Option<Relation>,
}

impl RelStructure {
    pub fn r_only(graph: LinearGraph) -> Self {
        RelStructure { graph, s: None }
    }

    pub fn with_relation(s: Relation) -> Self {
        RelStructure {
            graph: s.base(),
            s: Some(s),
        }
    }

    pub fn new(graph: LinearGraph, s: Option<Relation>) -> Result<Self, StructureError> {
        if let Some(rel) = &s {
            if rel.base() != graph {
                return Err(StructureError::BaseMismatch {
                    relation: rel.base(),
                    graph,
                });
            }
        }
        Ok(RelStructure { graph, s })
    }

    /// The structure `([n], antidiagonal)` or `(signed(k), antidiagonal)`.
    pub fn antidiagonal_on(g: LinearGraph) -> Self {
        RelStructure::with_relation(antidiagonal(g))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pairs(r: &Relation) -> Vec<(i32, i32)> {
        r.pairs().iter().copied().collect()
    }

    #[test]
    fn antidiagonal_plain_two() {
        let r = antidiagonal(LinearGraph::plain(2).unwrap());
        assert_eq!(pairs(&r), vec![(1, 2), (2, 1)]);
    }

    #[test]
    fn antidiagonal_plain_four() {
        let r = antidiagonal(LinearGraph::plain(4).unwrap());
        assert_eq!(pairs(&r), vec![(1, 4), (2, 3), (3, 2), (4, 1)]);
    }

    #[test]
    fn antidiagonal_signed_two() {
        let r = antidiagonal(LinearGraph::signed(2).unwrap());
        assert_eq!(pairs(&r), vec![(-2, 2), (-1, 1), (1, -1), (2, -2)]);
    }

    #[test]
    fn identity_examples() {
        assert_eq!(
            pairs(&identity_relation(LinearGraph::plain(1).unwrap())),
            vec![(1, 1)]
        );
        assert_eq!(
            pairs(&identity_relation(LinearGraph::plain(3).unwrap())),
            vec![(1, 1), (2, 2), (3, 3)]
        );
        assert_eq!(
            pairs(&identity_relation(LinearGraph::signed(1).unwrap())),
            vec![(-1, -1), (1, 1)]
        );
    }

    #[test]
    fn rejects_foreign_vertices() {
        let g = LinearGraph::plain(2).unwrap();
        assert!(Relation::new(g, [(1, 3)]).is_err());
        assert!(Relation::new(g, [(0, 1)]).is_err());
        let s = LinearGraph::signed(2).unwrap();
        assert!(Relation::new(s, [(0, 1)]).is_err());
        assert!(Relation::new(s, [(1, -2)]).is_ok());
    }

    #[test]
    fn antidiagonal_is_symmetric_and_detected() {
        for g in [
            LinearGraph::plain(1).unwrap(),
            LinearGraph::plain(5).unwrap(),
            LinearGraph::signed(3).unwrap(),
        ] {
            let r = antidiagonal(g);
            assert!(r.is_symmetric());
            assert!(r.is_antidiagonal());
        }
        let not_anti = Relation::new(LinearGraph::plain(2).unwrap(), [(1, 2)]).unwrap();
        assert!(!not_anti.is_antidiagonal());
    }

    #[test]
    fn structure_base_mismatch_rejected() {
        let r = antidiagonal(LinearGraph::plain(2).unwrap());
        assert!(RelStructure::new(LinearGraph::plain(3).unwrap(), Some(r)).is_err());
    }
}
