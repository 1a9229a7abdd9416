use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("a linear graph needs at least one vertex (got size {0})")]
    EmptyGraph(i64),
}

/// A finite reflexive linear graph: the path graph on its vertex set with all
/// loops. Vertices are either `1..=n` ("plain") or `-k..=-1, 1..=k` with zero
/// skipped ("signed"). In both cases the vertices carry a total order, and two
/// vertices are adjacent exactly when they are equal or consecutive in that
/// order — so in a signed graph, `-1` and `1` are adjacent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum LinearGraph {
    Plain { n: u32 },
    Signed { k: u32 },
}

impl LinearGraph {
    pub fn plain(n: i64) -> Result<Self, GraphError> {
        if n < 1 {
            return Err(GraphError::EmptyGraph(n));
        }
        Ok(LinearGraph::Plain { n: n as u32 })
    }

    pub fn signed(k: i64) -> Result<Self, GraphError> {
        if k < 1 {
            return Err(GraphError::EmptyGraph(k));
        }
        Ok(LinearGraph::Signed { k: k as u32 })
    }

    pub fn is_signed(&self) -> bool {
        matches!(self, LinearGraph::Signed { .. })
    }

    /// Number of vertices: n for plain, 2k for signed.
    pub fn len(&self) -> usize {
        match *self {
            LinearGraph::Plain { n } => n as usize,
            LinearGraph::Signed { k } => 2 * k as usize,
        }
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, v: i32) -> bool {
        match *self {
            LinearGraph::Plain { n } => v >= 1 && v <= n as i32,
            LinearGraph::Signed { k } => v != 0 && v.unsigned_abs() <= k,
        }
    }

    pub fn min_vertex(&self) -> i32 {
        match *self {
            LinearGraph::Plain { .. } => 1,
            LinearGraph::Signed { k } => -(k as i32),
        }
    }

    pub fn max_vertex(&self) -> i32 {
        match *self {
            LinearGraph::Plain { n } => n as i32,
            LinearGraph::Signed { k } => k as i32,
        }
    }

    /// Position of `v` in the vertex order, starting at 0.
    pub fn index_of(&self, v: i32) -> Option<usize> {
        if !self.contains(v) {
            return None;
        }
        Some(match *self {
            LinearGraph::Plain { .. } => (v - 1) as usize,
            LinearGraph::Signed { k } => {
                if v < 0 {
                    (v + k as i32) as usize
                } else {
                    (v + k as i32 - 1) as usize
                }
            }
        })
    }

    /// Vertex at position `idx` (inverse of `index_of`).
    pub fn vertex_at(&self, idx: usize) -> Option<i32> {
        if idx >= self.len() {
            return None;
        }
        let idx = idx as i32;
        Some(match *self {
            LinearGraph::Plain { .. } => idx + 1,
            LinearGraph::Signed { k } => {
                let v = idx - k as i32;
                if v >= 0 {
                    v + 1
                } else {
                    v
                }
            }
        })
    }

    /// Successor in the vertex order; in signed graphs `succ(-1) = 1`.
    pub fn succ(&self, v: i32) -> Option<i32> {
        self.index_of(v).and_then(|i| self.vertex_at(i + 1))
    }

    pub fn pred(&self, v: i32) -> Option<i32> {
        self.index_of(v)
            .and_then(|i| i.checked_sub(1))
            .and_then(|i| self.vertex_at(i))
    }

    /// Reflexive adjacency: equal or consecutive in the vertex order.
    pub fn adjacent(&self, u: i32, v: i32) -> bool {
        match (self.index_of(u), self.index_of(v)) {
            (Some(i), Some(j)) => i.abs_diff(j) <= 1,
            _ => false,
        }
    }

    pub fn vertices(self) -> impl Iterator<Item = i32> {
        (0..self.len()).map(move |i| self.vertex_at(i).unwrap())
    }
}

impl fmt::Display for LinearGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            LinearGraph::Plain { n } => write!(f, "plain [1,{n}]"),
            LinearGraph::Signed { k } => write!(f, "signed [-{k},{k}]"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plain_single_vertex_has_only_loop() {
        let g = LinearGraph::plain(1).unwrap();
        assert_eq!(g.vertices().collect::<Vec<_>>(), vec![1]);
        assert!(g.adjacent(1, 1));
        assert_eq!(g.succ(1), None);
        assert_eq!(g.pred(1), None);
    }

    #[test]
    fn signed_three_orders_negatives_before_positives() {
        let g = LinearGraph::signed(3).unwrap();
        assert_eq!(g.vertices().collect::<Vec<_>>(), vec![-3, -2, -1, 1, 2, 3]);
        assert!(g.adjacent(-1, 1), "-1 and 1 are consecutive");
        assert!(!g.adjacent(-1, 2));
        assert_eq!(g.succ(-1), Some(1));
        assert_eq!(g.pred(1), Some(-1));
        assert!(!g.contains(0));
    }

    #[test]
    fn plain_four_edges() {
        let g = LinearGraph::plain(4).unwrap();
        let mut edges = Vec::new();
        for u in g.vertices() {
            for v in g.vertices() {
                if u < v && g.adjacent(u, v) {
                    edges.push((u, v));
                }
            }
        }
        assert_eq!(edges, vec![(1, 2), (2, 3), (3, 4)]);
        for v in g.vertices() {
            assert!(g.adjacent(v, v), "loop at {v}");
        }
    }

    #[test]
    fn rejects_empty() {
        assert!(LinearGraph::plain(0).is_err());
        assert!(LinearGraph::signed(0).is_err());
        assert!(LinearGraph::plain(-2).is_err());
    }

    #[test]
    fn index_roundtrip() {
        for g in [LinearGraph::plain(5).unwrap(), LinearGraph::signed(4).unwrap()] {
            for (i, v) in g.vertices().enumerate() {
                assert_eq!(g.index_of(v), Some(i));
                assert_eq!(g.vertex_at(i), Some(v));
            }
            assert_eq!(g.vertex_at(g.len()), None);
        }
    }

    #[test]
    fn succ_pred_cover_the_order() {
        let g = LinearGraph::signed(2).unwrap();
        let vs: Vec<i32> = g.vertices().collect();
        for w in vs.windows(2) {
            assert_eq!(g.succ(w[0]), Some(w[1]));
            assert_eq!(g.pred(w[1]), Some(w[0]));
        }
        assert_eq!(g.succ(g.max_vertex()), None);
        assert_eq!(g.pred(g.min_vertex()), None);
    }
}
