use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::graph::LinearGraph;
use crate::structure::{Relation, RelStructure};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MorphError {
    #[error("assignment has {got} images but the domain {domain} has {expected} vertices")]
    NotTotal {
        domain: LinearGraph,
        expected: usize,
        got: usize,
    },
    #[error("image {0} is not a vertex of the codomain {1}")]
    ImageOutsideCodomain(i32, LinearGraph),
    #[error(
        "map endpoints {f_domain} -> {f_codomain} do not match structures {source_graph} -> {target_graph}"
    )]
    EndpointMismatch {
        f_domain: LinearGraph,
        f_codomain: LinearGraph,
        source_graph: LinearGraph,
        target_graph: LinearGraph,
    },
    #[error("relation present on only one side (source: {source_has_s}, target: {target_has_s})")]
    OneSidedRelation {
        source_has_s: bool,
        target_has_s: bool,
    },
    #[error("cannot compose: inner codomain {inner} differs from outer domain {outer}")]
    ComposeMismatch {
        inner: LinearGraph,
        outer: LinearGraph,
    },
    #[error("enumeration budget exceeded: |target|^|source| = {candidates} > {budget}")]
    BudgetExceeded { candidates: u128, budget: u128 },
    #[error("graphs have different sizes ({0} vs {1}), no order isomorphism")]
    SizeMismatch(usize, usize),
}

/// A total vertex map between two linear graphs. Images are stored in
/// domain-vertex order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureMap {
    domain: LinearGraph,
    codomain: LinearGraph,
    images: Vec<i32>,
}

impl StructureMap {
    pub fn new(
        domain: LinearGraph,
        codomain: LinearGraph,
        images: Vec<i32>,
    ) -> Result<Self, MorphError> {
        if images.len() != domain.len() {
            return Err(MorphError::NotTotal {
                domain,
                expected: domain.len(),
                got: images.len(),
            });
        }
        for &w in &images {
            if !codomain.contains(w) {
                return Err(MorphError::ImageOutsideCodomain(w, codomain));
            }
        }
        Ok(StructureMap {
            domain,
            codomain,
            images,
        })
    }

    pub fn from_fn(
        domain: LinearGraph,
        codomain: LinearGraph,
        f: impl Fn(i32) -> i32,
    ) -> Result<Self, MorphError> {
        let images = domain.vertices().map(f).collect();
        StructureMap::new(domain, codomain, images)
    }

    pub fn identity(g: LinearGraph) -> Self {
        StructureMap::from_fn(g, g, |v| v).unwrap()
    }

    pub fn domain(&self) -> LinearGraph {
        self.domain
    }

    pub fn codomain(&self) -> LinearGraph {
        self.codomain
    }

    /// Images in domain-vertex order.
    pub fn images(&self) -> &[i32] {
        &self.images
    }

    pub fn apply(&self, v: i32) -> i32 {
        let idx = self
            .domain
            .index_of(v)
            .unwrap_or_else(|| panic!("{v} is not a vertex of the domain {}", self.domain));
        self.images[idx]
    }

    pub fn is_surjective(&self) -> bool {
        let hit: BTreeSet<i32> = self.images.iter().copied().collect();
        hit.len() == self.codomain.len()
    }

    /// `f(-v) = -f(v)` for every vertex; meaningful on signed graphs.
    pub fn is_antisymmetric(&self) -> bool {
        self.domain
            .vertices()
            .all(|v| self.domain.contains(-v) && self.apply(-v) == -self.apply(v))
    }

    /// Pointwise equality of assignments (domains and codomains included).
    pub fn same_map(&self, other: &StructureMap) -> bool {
        self == other
    }
}

impl fmt::Display for StructureMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, v) in self.domain.vertices().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}->{}", self.images[i])?;
        }
        write!(f, "]")
    }
}

/// Pointwise composition `g ∘ f`.
pub fn compose(g: &StructureMap, f: &StructureMap) -> Result<StructureMap, MorphError> {
    if f.codomain != g.domain {
        return Err(MorphError::ComposeMismatch {
            inner: f.codomain,
            outer: g.domain,
        });
    }
    StructureMap::new(
        f.domain,
        g.codomain,
        f.images.iter().map(|&v| g.apply(v)).collect(),
    )
}

/// The order-reversing bijection of a linear graph: `v -> n+1-v` on plain,
/// `v -> -v` on signed. A single-vertex graph has no nontrivial automorphism;
/// in that case the identity is returned with `degenerate` set.
pub struct FlipMap {
    pub map: StructureMap,
    pub degenerate: bool,
}

pub fn flip(g: LinearGraph) -> FlipMap {
    let degenerate = g.len() < 2;
    let n = g.len();
    let map = StructureMap::from_fn(g, g, |v| {
        let i = g.index_of(v).unwrap();
        g.vertex_at(n - 1 - i).unwrap()
    })
    .unwrap();
    FlipMap { map, degenerate }
}

/// The unique order isomorphism between two linear graphs of equal size.
pub fn order_isomorphism(
    from: LinearGraph,
    to: LinearGraph,
) -> Result<StructureMap, MorphError> {
    if from.len() != to.len() {
        return Err(MorphError::SizeMismatch(from.len(), to.len()));
    }
    StructureMap::from_fn(from, to, |v| {
        to.vertex_at(from.index_of(v).unwrap()).unwrap()
    })
}

/// Pushforward of a relation along a map: the set of image pairs.
pub fn pushforward(f: &StructureMap, s: &Relation) -> Relation {
    Relation::new(
        f.codomain,
        s.pairs().iter().map(|&(a, b)| (f.apply(a), f.apply(b))),
    )
    .expect("images of domain vertices are codomain vertices")
}

fn check_sides(
    f: &StructureMap,
    source: &RelStructure,
    target: &RelStructure,
) -> Result<(), MorphError> {
    if f.domain != source.graph || f.codomain != target.graph {
        return Err(MorphError::EndpointMismatch {
            f_domain: f.domain,
            f_codomain: f.codomain,
            source_graph: source.graph,
            target_graph: target.graph,
        });
    }
    if source.s.is_some() != target.s.is_some() {
        return Err(MorphError::OneSidedRelation {
            source_has_s: source.s.is_some(),
            target_has_s: target.s.is_some(),
        });
    }
    Ok(())
}

/// The epimorphism test. `f` qualifies when it is surjective and, for the
/// edge relation and (when present) the extra relation, related pairs map to
/// related pairs AND every related pair of the target is the image of a
/// related pair of the source.
pub fn is_epimorphism(
    f: &StructureMap,
    source: &RelStructure,
    target: &RelStructure,
) -> Result<bool, MorphError> {
    check_sides(f, source, target)?;
    if !f.is_surjective() {
        return Ok(false);
    }

    let src = source.graph;
    let tgt = target.graph;

    // Forward direction for edges: consecutive vertices (and loops, which are
    // automatic for a total map) land on adjacent-or-equal vertices.
    for v in src.vertices() {
        if let Some(w) = src.succ(v) {
            if !tgt.adjacent(f.apply(v), f.apply(w)) {
                return Ok(false);
            }
        }
    }

    // Covering direction for edges: every target edge has an adjacent
    // preimage pair. Collect the image edges of the source walk structure.
    let mut covered: BTreeSet<(i32, i32)> = BTreeSet::new();
    for v in src.vertices() {
        covered.insert((f.apply(v), f.apply(v)));
        if let Some(w) = src.succ(v) {
            covered.insert((f.apply(v), f.apply(w)));
            covered.insert((f.apply(w), f.apply(v)));
        }
    }
    for v in tgt.vertices() {
        if !covered.contains(&(v, v)) {
            return Ok(false);
        }
        if let Some(w) = tgt.succ(v) {
            if !covered.contains(&(v, w)) || !covered.contains(&(w, v)) {
                return Ok(false);
            }
        }
    }

    // The extra relation, both directions at once: its pushforward must be
    // exactly the target relation.
    if let (Some(s_src), Some(s_tgt)) = (&source.s, &target.s) {
        if &pushforward(f, s_src) != s_tgt {
            return Ok(false);
        }
    }

    Ok(true)
}

const DEFAULT_ENUM_BUDGET: u128 = 100_000_000;

/// Candidate-map budget for `enumerate_epimorphisms`, overridable through the
/// `FF_MAX_ENUM` environment variable.
pub fn enumeration_budget() -> u128 {
    std::env::var("FF_MAX_ENUM")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_ENUM_BUDGET)
}

/// All epimorphisms from `source` onto `target`, in lexicographic order of
/// their assignment vectors. Backtracking prunes on adjacency of consecutive
/// images, relation pairs whose endpoints are both assigned, and remaining
/// surjectivity slack; every surviving candidate is confirmed with
/// `is_epimorphism`, so the pruning is only ever an optimization.
pub fn enumerate_epimorphisms(
    source: &RelStructure,
    target: &RelStructure,
) -> Result<Vec<StructureMap>, MorphError> {
    enumerate_epimorphisms_within(source, target, enumeration_budget())
}

pub fn enumerate_epimorphisms_within(
    source: &RelStructure,
    target: &RelStructure,
    budget: u128,
) -> Result<Vec<StructureMap>, MorphError> {
    if source.s.is_some() != target.s.is_some() {
        return Err(MorphError::OneSidedRelation {
            source_has_s: source.s.is_some(),
            target_has_s: target.s.is_some(),
        });
    }

    let n = source.graph.len();
    let m = target.graph.len() as u128;
    let candidates = m.checked_pow(n as u32).unwrap_or(u128::MAX);
    if candidates > budget {
        return Err(MorphError::BudgetExceeded { candidates, budget });
    }

    // Relation pairs keyed by the position of their later endpoint, so each
    // pair is checked as soon as both endpoints have images.
    let src = source.graph;
    let mut pairs_by_last: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    if let Some(s) = &source.s {
        for &(a, b) in s.pairs() {
            let ia = src.index_of(a).unwrap();
            let ib = src.index_of(b).unwrap();
            pairs_by_last[ia.max(ib)].push((ia, ib));
        }
    }

    let mut search = EpiSearch {
        source,
        target,
        tgt_vertices: target.graph.vertices().collect(),
        pairs_by_last,
        assignment: Vec::with_capacity(n),
        used: BTreeSet::new(),
        found: Vec::new(),
    };
    search.descend();
    Ok(search.found)
}

struct EpiSearch<'a> {
    source: &'a RelStructure,
    target: &'a RelStructure,
    tgt_vertices: Vec<i32>,
    pairs_by_last: Vec<Vec<(usize, usize)>>,
    assignment: Vec<i32>,
    used: BTreeSet<i32>,
    found: Vec<StructureMap>,
}

impl EpiSearch<'_> {
    fn descend(&mut self) {
        let depth = self.assignment.len();
        let n = self.source.graph.len();
        if depth == n {
            let map = StructureMap::new(
                self.source.graph,
                self.target.graph,
                self.assignment.clone(),
            )
            .unwrap();
            if is_epimorphism(&map, self.source, self.target).unwrap() {
                self.found.push(map);
            }
            return;
        }
        // Vertices still needing coverage cannot exceed the slots left.
        if self.target.graph.len() - self.used.len() > n - depth {
            return;
        }
        for i in 0..self.tgt_vertices.len() {
            let w = self.tgt_vertices[i];
            if depth > 0 && !self.target.graph.adjacent(self.assignment[depth - 1], w) {
                continue;
            }
            self.assignment.push(w);
            let pair_ok = match &self.target.s {
                Some(s_tgt) => self.pairs_by_last[depth]
                    .iter()
                    .all(|&(ia, ib)| s_tgt.contains(self.assignment[ia], self.assignment[ib])),
                None => true,
            };
            if pair_ok {
                let newly = self.used.insert(w);
                self.descend();
                if newly {
                    self.used.remove(&w);
                }
            }
            self.assignment.pop();
        }
    }
}
