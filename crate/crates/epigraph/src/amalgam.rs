//! Block decompositions of antisymmetric epimorphisms, the grid graphs they
//! induce, interior walks and their lifts to the product board, and the
//! amalgamation constructions assembled from those pieces.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::board::{
    exists_path_where, product_coloring, Adjacency, Board, BoardError, Cell, CellPath,
};
use crate::family::{cover_by_antidiagonal, CoverError};
use crate::graph::LinearGraph;
use crate::morphism::{compose, is_epimorphism, order_isomorphism, MorphError, StructureMap};
use crate::structure::RelStructure;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AmalgamError {
    #[error("map {0} must go between signed graphs")]
    NotSigned(usize),
    #[error("map {0} is not antisymmetric")]
    NotAntisymmetric(usize),
    #[error("map {0} is not an epimorphism of the required structures")]
    NotEpimorphism(usize),
    #[error("the maps target different graphs: {0} vs {1}")]
    CodomainMismatch(LinearGraph, LinearGraph),
    #[error("the relation is not an antidiagonal")]
    NotAntidiagonal,
    #[error("construction invariant failed: {0}")]
    InvariantViolation(String),
    #[error(transparent)]
    Morph(#[from] MorphError),
    #[error(transparent)]
    Cover(#[from] CoverError),
    #[error(transparent)]
    Board(#[from] BoardError),
}

fn invariant(msg: impl Into<String>) -> AmalgamError {
    AmalgamError::InvariantViolation(msg.into())
}

/// Builds a map on a signed graph from its values on the positive half,
/// extending by `f(-v) = -f(v)`.
pub fn antisymmetric_from_positive(
    domain: LinearGraph,
    codomain: LinearGraph,
    positive: &[i32],
) -> Result<StructureMap, AmalgamError> {
    if !domain.is_signed() {
        return Err(AmalgamError::NotSigned(1));
    }
    let half = domain.len() / 2;
    if positive.len() != half {
        return Err(invariant(format!(
            "expected {half} values for the positive half, got {}",
            positive.len()
        )));
    }
    let images = domain
        .vertices()
        .map(|v| {
            if v > 0 {
                positive[(v - 1) as usize]
            } else {
                -positive[(-v - 1) as usize]
            }
        })
        .collect();
    Ok(StructureMap::new(domain, codomain, images)?)
}

/// A pair of antisymmetric epimorphisms onto a common signed graph that
/// exercises every branch of the amalgamation pipeline; used across the
/// documentation, examples, and tests.
pub fn worked_example() -> (StructureMap, StructureMap) {
    let s8 = LinearGraph::signed(8).unwrap();
    let s9 = LinearGraph::signed(9).unwrap();
    let s3 = LinearGraph::signed(3).unwrap();
    let phi1 = antisymmetric_from_positive(s8, s3, &[1, 2, 1, -1, 1, 1, 2, 3])
        .expect("fixed values form a map");
    let phi2 = antisymmetric_from_positive(s9, s3, &[-1, -2, -1, -2, -3, -2, -1, 1, 2])
        .expect("fixed values form a map");
    (phi1, phi2)
}

/// The maximal sign-constant runs of an antisymmetric epimorphism between
/// signed graphs. With `2p` runs, run `i` for `i` in `[-p, p-1]` spans the
/// domain interval from `start(i)` to `end(i+1)`; the run containing vertex
/// 1 is run 0. Ends and starts interleave along the domain, and the image of
/// each run is an interval touching 1 or -1.
#[derive(Debug, Clone)]
pub struct BlockDecomposition {
    map: StructureMap,
    radius: i32,
    starts: BTreeMap<i32, i32>,
    ends: BTreeMap<i32, i32>,
    ranges: BTreeMap<i32, (i32, i32)>,
}

pub fn block_decomposition(map: &StructureMap) -> Result<BlockDecomposition, AmalgamError> {
    let dom = map.domain();
    let cod = map.codomain();
    if !dom.is_signed() || !cod.is_signed() {
        return Err(AmalgamError::NotSigned(1));
    }
    if !map.is_antisymmetric() {
        return Err(AmalgamError::NotAntisymmetric(1));
    }
    if !is_epimorphism(map, &RelStructure::r_only(dom), &RelStructure::r_only(cod))? {
        return Err(AmalgamError::NotEpimorphism(1));
    }

    let mut runs: Vec<(i32, i32)> = Vec::new();
    for v in dom.vertices() {
        let positive = map.apply(v) > 0;
        match runs.last_mut() {
            Some(run) if (map.apply(run.0) > 0) == positive => run.1 = v,
            _ => runs.push((v, v)),
        }
    }
    if runs.len() % 2 != 0 {
        return Err(invariant(format!("odd number of runs: {}", runs.len())));
    }
    let radius = (runs.len() / 2) as i32;
    let p = radius as usize;
    if runs[p].0 != 1 || runs[p - 1].1 != -1 {
        return Err(invariant(
        "the sign must flip between vertices -1 and 1".to_string(),
        ));
    }

    let mut starts = BTreeMap::new();
    let mut ends = BTreeMap::new();
    for (idx, run) in runs.iter().enumerate() {
        let i = idx as i32 - radius;
        starts.insert(i, run.0);
        ends.insert(i + 1, run.1);
    }
    for i in -radius..=radius - 1 {
        if starts[&i] != -ends[&-i] {
            return Err(invariant(format!(
                "breakpoints are not antisymmetric at index {i}"
            )));
        }
    }

    let mut ranges = BTreeMap::new();
    for i in -radius..=radius - 1 {
        let (lo, hi) = (starts[&i], ends[&(i + 1)]);
        let values: Vec<i32> = vertices_between(dom, lo, hi)
            .into_iter()
            .map(|v| map.apply(v))
            .collect();
        let min = *values.iter().min().expect("runs are nonempty");
        let max = *values.iter().max().expect("runs are nonempty");
        if min > 0 && min != 1 {
            return Err(invariant(format!("positive run {i} does not reach 1")));
        }
        if max < 0 && max != -1 {
            return Err(invariant(format!("negative run {i} does not reach -1")));
        }
        if min > 0 || max < 0 {
            ranges.insert(i, (min, max));
        } else {
            return Err(invariant(format!("run {i} mixes signs")));
        }
    }

    Ok(BlockDecomposition {
        map: map.clone(),
        radius,
        starts,
        ends,
        ranges,
    })
}

fn vertices_between(g: LinearGraph, lo: i32, hi: i32) -> Vec<i32> {
    let lo_idx = g
        .index_of(lo)
        .unwrap_or_else(|| panic!("{lo} is not a vertex of {g}"));
    let hi_idx = g
        .index_of(hi)
        .unwrap_or_else(|| panic!("{hi} is not a vertex of {g}"));
    (lo_idx..=hi_idx)
        .map(|idx| g.vertex_at(idx).expect("index in range"))
        .collect()
}

impl BlockDecomposition {
    pub fn map(&self) -> &StructureMap {
        &self.map
    }

    /// Half the number of runs; grid coordinates derived from this
    /// decomposition range over `[-radius, radius]`.
    pub fn radius(&self) -> i32 {
        self.radius
    }

    /// Valid run indices, `-radius ..= radius - 1`.
    pub fn blocks(&self) -> impl Iterator<Item = i32> {
        -self.radius..=self.radius - 1
    }

    /// First domain vertex of run `i`.
    pub fn start(&self, i: i32) -> Option<i32> {
        self.starts.get(&i).copied()
    }

    /// Last domain vertex of run `i - 1`.
    pub fn end(&self, i: i32) -> Option<i32> {
        self.ends.get(&i).copied()
    }

    /// Domain interval of run `i`, from `start(i)` to `end(i+1)`.
    pub fn block_interval(&self, i: i32) -> Option<(i32, i32)> {
        Some((self.start(i)?, self.end(i + 1)?))
    }

    /// Image interval of run `i`; one of `[1, c]` or `[-c, -1]`.
    pub fn image_interval(&self, i: i32) -> Option<(i32, i32)> {
        self.ranges.get(&i).copied()
    }

    /// +1 for positive runs, -1 for negative ones.
    pub fn block_sign(&self, i: i32) -> Option<i32> {
        self.ranges.get(&i).map(|&(lo, _)| if lo > 0 { 1 } else { -1 })
    }

    /// All breakpoints on one line, interleaving starts and ends:
    /// `s_-1=-1 s'_0=-1 s_0=1 s'_1=1` for the identity on the two-element
    /// signed graph, with the letter chosen by the caller.
    pub fn breakpoint_line(&self, letter: char) -> String {
        let mut parts = Vec::new();
        for i in -self.radius..=self.radius - 1 {
            parts.push(format!("{letter}_{i}={}", self.starts[&i]));
            parts.push(format!("{letter}'_{}={}", i + 1, self.ends[&(i + 1)]));
        }
        parts.join(" ")
    }
}

impl fmt::Display for BlockDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.breakpoint_line('s'))
    }
}

/// How quadrants whose image intervals coincide contribute edges.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum TieBreak {
    /// Equal intervals contribute both horizontal and vertical edges.
    Both,
    /// Equal intervals contribute only vertical edges.
    Vertical,
    /// Equal intervals contribute only horizontal edges.
    Horizontal,
}

pub type GridVertex = (i32, i32);

/// The grid graph of a pair of block decompositions: vertices are grid
/// points `[-p, p] x [-q, q]`; every quadrant whose two runs share a sign
/// contributes its pair of horizontal edges when the first image interval is
/// strictly inside the second, its pair of vertical edges when the second is
/// strictly inside the first, and the tie-break decides equal intervals.
#[derive(Debug, Clone)]
pub struct AmalgGraph {
    tie_break: TieBreak,
    x_radius: i32,
    y_radius: i32,
    edges: BTreeSet<(GridVertex, GridVertex)>,
    adjacency: BTreeMap<GridVertex, Vec<GridVertex>>,
}

/// Whether quadrant `(i, j)` contributes edges of the given orientation
/// (true for horizontal). Quadrants outside the grid, or whose runs have
/// opposite signs, contribute nothing.
fn quadrant_emits(
    first: &BlockDecomposition,
    second: &BlockDecomposition,
    tie_break: TieBreak,
    (i, j): GridVertex,
    horizontal: bool,
) -> bool {
    let (Some(sign1), Some(sign2)) = (first.block_sign(i), second.block_sign(j)) else {
        return false;
    };
    if sign1 != sign2 {
        return false;
    }
    let r1 = first.image_interval(i).expect("sign implies a range");
    let r2 = second.image_interval(j).expect("sign implies a range");
    let first_inside = r2.0 <= r1.0 && r1.1 <= r2.1;
    let second_inside = r1.0 <= r2.0 && r2.1 <= r1.1;
    match (first_inside, second_inside) {
        (true, true) => match tie_break {
            TieBreak::Both => true,
            TieBreak::Vertical => !horizontal,
            TieBreak::Horizontal => horizontal,
        },
        (true, false) => horizontal,
        (false, true) => !horizontal,
        (false, false) => false,
    }
}

pub fn build_amalg_graph(
    first: &BlockDecomposition,
    second: &BlockDecomposition,
    tie_break: TieBreak,
) -> Result<AmalgGraph, AmalgamError> {
    let p = first.radius();
    let q = second.radius();
    let mut edges: BTreeSet<(GridVertex, GridVertex)> = BTreeSet::new();
    let add = |a: GridVertex, b: GridVertex, edges: &mut BTreeSet<_>| {
        edges.insert(if a <= b { (a, b) } else { (b, a) });
    };
    for i in -p..=p - 1 {
        for j in -q..=q - 1 {
            let same_sign = first.block_sign(i) == second.block_sign(j);
            if same_sign {
                let r1 = first.image_interval(i).expect("valid block");
                let r2 = second.image_interval(j).expect("valid block");
                let nested = (r2.0 <= r1.0 && r1.1 <= r2.1) || (r1.0 <= r2.0 && r2.1 <= r1.1);
                if !nested {
                    return Err(invariant(format!(
                        "image intervals of quadrant ({i}, {j}) are not nested: \
                         {r1:?} vs {r2:?}"
                    )));
                }
            }
            if quadrant_emits(first, second, tie_break, (i, j), true) {
                add((i, j), (i + 1, j), &mut edges);
                add((i, j + 1), (i + 1, j + 1), &mut edges);
            }
            if quadrant_emits(first, second, tie_break, (i, j), false) {
                add((i, j), (i, j + 1), &mut edges);
                add((i + 1, j), (i + 1, j + 1), &mut edges);
            }
        }
    }
    let mut adjacency: BTreeMap<GridVertex, Vec<GridVertex>> = BTreeMap::new();
    for &(a, b) in &edges {
        adjacency.entry(a).or_default().push(b);
        adjacency.entry(b).or_default().push(a);
    }
    for nbrs in adjacency.values_mut() {
        nbrs.sort_unstable();
    }
    Ok(AmalgGraph {
        tie_break,
        x_radius: p,
        y_radius: q,
        edges,
        adjacency,
    })
}

impl AmalgGraph {
    pub fn tie_break(&self) -> TieBreak {
        self.tie_break
    }

    pub fn x_radius(&self) -> i32 {
        self.x_radius
    }

    pub fn y_radius(&self) -> i32 {
        self.y_radius
    }

    pub fn edges(&self) -> &BTreeSet<(GridVertex, GridVertex)> {
        &self.edges
    }

    pub fn neighbors(&self, v: GridVertex) -> &[GridVertex] {
        self.adjacency.get(&v).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn degree(&self, v: GridVertex) -> usize {
        self.neighbors(v).len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = GridVertex> + '_ {
        (-self.x_radius..=self.x_radius)
            .flat_map(move |i| (-self.y_radius..=self.y_radius).map(move |j| (i, j)))
    }

    /// Grid points on the outer frame.
    pub fn is_border(&self, (i, j): GridVertex) -> bool {
        i.abs() == self.x_radius || j.abs() == self.y_radius
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Side {
    Left,
    Right,
    Bottom,
    Top,
}

impl Side {
    fn reached_by(self, g: &AmalgGraph, (i, j): GridVertex) -> bool {
        match self {
            Side::Left => i == -g.x_radius(),
            Side::Right => i == g.x_radius(),
            Side::Bottom => j == -g.y_radius(),
            Side::Top => j == g.y_radius(),
        }
    }
}

/// Walks from the central grid point along degree-two vertices until the
/// frame is first reached, and returns the walk ending on the requested
/// side. The central point must have exactly two neighbors, giving two
/// mirror-image walks that end on opposite sides.
pub fn find_interior_path(g: &AmalgGraph, side: Side) -> Result<Vec<GridVertex>, AmalgamError> {
    let origin: GridVertex = (0, 0);
    let first_steps = g.neighbors(origin);
    if first_steps.len() != 2 {
        return Err(invariant(format!(
            "central grid point has degree {}, expected 2",
            first_steps.len()
        )));
    }
    let bound = ((2 * g.x_radius() + 1) * (2 * g.y_radius() + 1)) as usize + 1;
    let mut endings = Vec::new();
    for &first in first_steps {
        let mut walk = vec![origin, first];
        while !g.is_border(*walk.last().expect("nonempty")) {
            let cur = walk[walk.len() - 1];
            let prev = walk[walk.len() - 2];
            if cur == origin {
                return Err(invariant("interior walk returned to the center".to_string()));
            }
            let nbrs = g.neighbors(cur);
            if nbrs.len() != 2 {
                return Err(invariant(format!(
                    "interior grid point {cur:?} has degree {}, expected 2",
                    nbrs.len()
                )));
            }
            let next = if nbrs[0] == prev { nbrs[1] } else { nbrs[0] };
            walk.push(next);
            if walk.len() > bound {
                return Err(invariant("interior walk does not terminate".to_string()));
            }
        }
        let last = *walk.last().expect("nonempty");
        if side.reached_by(g, last) {
            return Ok(walk);
        }
        endings.push(last);
    }
    Err(invariant(format!(
        "no interior walk ends on the {side:?} side; walks end at {endings:?}"
    )))
}

/// The unique quadrant that contributed a given walk edge. A horizontal edge
/// can only come from the quadrant above or below it, a vertical edge from
/// the one to its left or right; exactly one of the two candidates emits it.
fn generating_quadrant(
    first: &BlockDecomposition,
    second: &BlockDecomposition,
    tie_break: TieBreak,
    a: GridVertex,
    b: GridVertex,
) -> Result<GridVertex, AmalgamError> {
    let (a, b) = if a <= b { (a, b) } else { (b, a) };
    let (candidates, horizontal) = if b == (a.0 + 1, a.1) {
        ([(a.0, a.1), (a.0, a.1 - 1)], true)
    } else if b == (a.0, a.1 + 1) {
        ([(a.0, a.1), (a.0 - 1, a.1)], false)
    } else {
        return Err(invariant(format!("{a:?}-{b:?} is not a grid edge")));
    };
    let emitting: Vec<GridVertex> = candidates
        .into_iter()
        .filter(|&qd| quadrant_emits(first, second, tie_break, qd, horizontal))
        .collect();
    match emitting.as_slice() {
        [qd] => Ok(*qd),
        _ => Err(invariant(format!(
            "edge {a:?}-{b:?} is generated by {} quadrants",
            emitting.len()
        ))),
    }
}

/// The board cell a grid vertex pins down inside one quadrant: the matching
/// breakpoint of each decomposition.
fn port(
    first: &BlockDecomposition,
    second: &BlockDecomposition,
    (i, j): GridVertex,
    (a, b): GridVertex,
) -> Result<Cell, AmalgamError> {
    let x = if a == i {
        first.start(i)
    } else if a == i + 1 {
        first.end(i + 1)
    } else {
        None
    };
    let y = if b == j {
        second.start(j)
    } else if b == j + 1 {
        second.end(j + 1)
    } else {
        None
    };
    match (x, y) {
        (Some(x), Some(y)) => Ok((x, y)),
        _ => Err(invariant(format!(
            "grid vertex ({a}, {b}) does not touch quadrant ({i}, {j})"
        ))),
    }
}

/// Lifts an interior grid walk to a black king-move path on the product
/// board. Each walk edge is replaced by a black path inside the rectangle of
/// its generating quadrant, between the breakpoint cells its endpoints pin
/// down; the last edge instead runs to the board side the walk reached.
/// Consecutive rectangles meet at equal or adjacent cells, so the segments
/// concatenate into one walk from a cell next to the center out to the side.
pub fn lift_interior_path(
    board: &Board,
    first: &BlockDecomposition,
    second: &BlockDecomposition,
    tie_break: TieBreak,
    walk: &[GridVertex],
    side: Side,
) -> Result<CellPath, AmalgamError> {
    if walk.len() < 2 {
        return Err(invariant("interior walk has no edges".to_string()));
    }
    let x_axis = board.x_axis();
    let y_axis = board.y_axis();
    let mut cells: Vec<Cell> = Vec::new();
    for k in 0..walk.len() - 1 {
        let quad = generating_quadrant(first, second, tie_break, walk[k], walk[k + 1])?;
        let (x_lo, x_hi) = first
            .block_interval(quad.0)
            .ok_or_else(|| invariant(format!("quadrant {quad:?} outside the grid")))?;
        let (y_lo, y_hi) = second
            .block_interval(quad.1)
            .ok_or_else(|| invariant(format!("quadrant {quad:?} outside the grid")))?;
        let (xi_lo, xi_hi) = (index_of(x_axis, x_lo), index_of(x_axis, x_hi));
        let (yi_lo, yi_hi) = (index_of(y_axis, y_lo), index_of(y_axis, y_hi));
        let in_rect = |c: Cell| {
            x_axis
                .index_of(c.0)
                .is_some_and(|i| (xi_lo..=xi_hi).contains(&i))
                && y_axis
                    .index_of(c.1)
                    .is_some_and(|j| (yi_lo..=yi_hi).contains(&j))
        };

        let entry = port(first, second, quad, walk[k])?;
        if !board.is_black(entry) {
            return Err(invariant(format!(
                "entry cell {entry:?} of quadrant {quad:?} is not black"
            )));
        }
        let final_edge = k == walk.len() - 2;
        let targets: Vec<Cell> = if final_edge {
            match side {
                Side::Bottom => {
                    expect_extreme(y_lo, y_axis.min_vertex(), "bottom")?;
                    vertices_between(x_axis, x_lo, x_hi)
                        .into_iter()
                        .map(|x| (x, y_lo))
                        .collect()
                }
                Side::Top => {
                    expect_extreme(y_hi, y_axis.max_vertex(), "top")?;
                    vertices_between(x_axis, x_lo, x_hi)
                        .into_iter()
                        .map(|x| (x, y_hi))
                        .collect()
                }
                Side::Left => {
                    expect_extreme(x_lo, x_axis.min_vertex(), "left")?;
                    vertices_between(y_axis, y_lo, y_hi)
                        .into_iter()
                        .map(|y| (x_lo, y))
                        .collect()
                }
                Side::Right => {
                    expect_extreme(x_hi, x_axis.max_vertex(), "right")?;
                    vertices_between(y_axis, y_lo, y_hi)
                        .into_iter()
                        .map(|y| (x_hi, y))
                        .collect()
                }
            }
        } else {
            vec![port(first, second, quad, walk[k + 1])?]
        };

        let segment = exists_path_where(board, true, Adjacency::Eight, &[entry], &targets, in_rect)
            .ok_or_else(|| {
                invariant(format!(
                    "no black path inside quadrant {quad:?} from {entry:?} toward the walk edge"
                ))
            })?;
        match (cells.last().copied(), segment.first()) {
            (None, _) => cells.extend(segment.cells()),
            (Some(prev), Some(head)) if prev == head => cells.extend(&segment.cells()[1..]),
            (Some(prev), Some(head)) => {
                if !board.cells_adjacent(prev, head, Adjacency::Eight) {
                    return Err(invariant(format!(
                        "segments do not meet: {prev:?} then {head:?}"
                    )));
                }
                cells.extend(segment.cells());
            }
            (Some(_), None) => unreachable!("search results are nonempty"),
        }
    }
    let path = CellPath(cells);
    if !path.is_walk(board, Adjacency::Eight) || !path.is_monochromatic(board, true) {
        return Err(invariant("lifted path is not a black king walk".to_string()));
    }
    let (x0, y0) = path.first().expect("nonempty");
    if x0.abs() != 1 || y0.abs() != 1 {
        return Err(invariant(format!(
            "lifted path starts at {:?}, not beside the center",
            (x0, y0)
        )));
    }
    Ok(path)
}

fn index_of(g: LinearGraph, v: i32) -> usize {
    g.index_of(v)
        .unwrap_or_else(|| panic!("{v} is not a vertex of {g}"))
}

fn expect_extreme(got: i32, want: i32, side: &str) -> Result<(), AmalgamError> {
    if got == want {
        Ok(())
    } else {
        Err(invariant(format!(
            "final quadrant does not border the {side} side: {got} vs {want}"
        )))
    }
}

/// The four lifted walks, named by the board side each one reaches.
#[derive(Debug, Clone)]
pub struct SideLifts {
    pub left: CellPath,
    pub right: CellPath,
    pub bottom: CellPath,
    pub top: CellPath,
}

/// Concatenates the four lifts into the center-out listing: each path is
/// anchored at the black corner cell next to the center, then written
/// forward and backward in the order left, right, bottom, top. Exactly one
/// of the two corner pairs is black; paths starting at the opposite corner
/// get the anchor prepended.
fn combined_listing(board: &Board, lifts: &SideLifts) -> Result<(Cell, Vec<Cell>), AmalgamError> {
    let pp = board.is_black((1, 1));
    let pm = board.is_black((1, -1));
    if pp == pm {
        return Err(invariant(format!(
            "corner dichotomy failed: (1,1) black={pp}, (1,-1) black={pm}"
        )));
    }
    let anchor: Cell = if pp { (1, 1) } else { (1, -1) };
    let opposite: Cell = (-anchor.0, -anchor.1);
    let mut listing: Vec<Cell> = Vec::new();
    for path in [&lifts.left, &lifts.right, &lifts.bottom, &lifts.top] {
        let mut anchored: Vec<Cell> = Vec::new();
        match path.first() {
            Some(head) if head == anchor => {}
            Some(head) if head == opposite => anchored.push(anchor),
            other => {
                return Err(invariant(format!(
                    "lift starts at {other:?}, not at a corner beside the center"
                )))
            }
        }
        anchored.extend(path.cells());
        listing.extend(anchored.iter().copied());
        listing.extend(anchored.iter().rev().copied());
    }
    Ok((anchor, listing))
}

/// Everything produced while amalgamating two antisymmetric epimorphisms of
/// signed antidiagonal structures: the product board, both block
/// decompositions, both grid graphs, the four lifted walks, and the
/// resulting antidiagonal structure with its two epimorphisms.
#[derive(Debug, Clone)]
pub struct CapWitness {
    pub board: Board,
    pub first_blocks: BlockDecomposition,
    pub second_blocks: BlockDecomposition,
    pub vertical_ties: AmalgGraph,
    pub horizontal_ties: AmalgGraph,
    pub lifts: SideLifts,
    pub anchor: Cell,
    pub listing: Vec<Cell>,
    pub domain: RelStructure,
    pub to_first: StructureMap,
    pub to_second: StructureMap,
}

/// Amalgamates two antisymmetric epimorphisms of signed antidiagonal
/// structures over their common target: produces a signed antidiagonal
/// structure with epimorphisms onto both domains making the square commute.
/// The walk through the vertical-tie grid is lifted toward the bottom and
/// top of the product board, the walk through the horizontal-tie grid toward
/// the left and right; the four lifts are joined at the black corner beside
/// the center and read off center-out, and the listing's coordinates,
/// extended antisymmetrically, are the two maps.
pub fn cap_witness(
    phi1: &StructureMap,
    phi2: &StructureMap,
) -> Result<CapWitness, AmalgamError> {
    if phi1.codomain() != phi2.codomain() {
        return Err(AmalgamError::CodomainMismatch(
            phi1.codomain(),
            phi2.codomain(),
        ));
    }
    for (idx, m) in [phi1, phi2].into_iter().enumerate() {
        if !m.domain().is_signed() || !m.codomain().is_signed() {
            return Err(AmalgamError::NotSigned(idx + 1));
        }
        if !m.is_antisymmetric() {
            return Err(AmalgamError::NotAntisymmetric(idx + 1));
        }
        let src = RelStructure::antidiagonal_on(m.domain());
        let dst = RelStructure::antidiagonal_on(m.codomain());
        if !is_epimorphism(m, &src, &dst)? {
            return Err(AmalgamError::NotEpimorphism(idx + 1));
        }
    }

    let first_blocks = block_decomposition(phi1)?;
    let second_blocks = block_decomposition(phi2)?;
    let board = product_coloring(phi1, phi2)?;
    let vertical_ties = build_amalg_graph(&first_blocks, &second_blocks, TieBreak::Vertical)?;
    let horizontal_ties = build_amalg_graph(&first_blocks, &second_blocks, TieBreak::Horizontal)?;

    let bottom_walk = find_interior_path(&vertical_ties, Side::Bottom)?;
    let top_walk = find_interior_path(&vertical_ties, Side::Top)?;
    let left_walk = find_interior_path(&horizontal_ties, Side::Left)?;
    let right_walk = find_interior_path(&horizontal_ties, Side::Right)?;

    let lifts = SideLifts {
        left: lift_interior_path(
            &board,
            &first_blocks,
            &second_blocks,
            TieBreak::Horizontal,
            &left_walk,
            Side::Left,
        )?,
        right: lift_interior_path(
            &board,
            &first_blocks,
            &second_blocks,
            TieBreak::Horizontal,
            &right_walk,
            Side::Right,
        )?,
        bottom: lift_interior_path(
            &board,
            &first_blocks,
            &second_blocks,
            TieBreak::Vertical,
            &bottom_walk,
            Side::Bottom,
        )?,
        top: lift_interior_path(
            &board,
            &first_blocks,
            &second_blocks,
            TieBreak::Vertical,
            &top_walk,
            Side::Top,
        )?,
    };

    let (anchor, listing) = combined_listing(&board, &lifts)?;
    let half = listing.len() as i64;
    let domain_graph = LinearGraph::signed(half).expect("listing is nonempty");
    let domain = RelStructure::antidiagonal_on(domain_graph);
    let xs: Vec<i32> = listing.iter().map(|c| c.0).collect();
    let ys: Vec<i32> = listing.iter().map(|c| c.1).collect();
    let to_first = antisymmetric_from_positive(domain_graph, phi1.domain(), &xs)?;
    let to_second = antisymmetric_from_positive(domain_graph, phi2.domain(), &ys)?;

    if to_first.apply(1).abs() != 1 {
        return Err(invariant(format!(
            "listing must open beside the center, maps 1 to {}",
            to_first.apply(1)
        )));
    }
    let src1 = RelStructure::antidiagonal_on(phi1.domain());
    let src2 = RelStructure::antidiagonal_on(phi2.domain());
    if !is_epimorphism(&to_first, &domain, &src1)? {
        return Err(invariant(
            "combined map onto the first domain is not an epimorphism".to_string(),
        ));
    }
    if !is_epimorphism(&to_second, &domain, &src2)? {
        return Err(invariant(
            "combined map onto the second domain is not an epimorphism".to_string(),
        ));
    }
    let via_first = compose(phi1, &to_first)?;
    let via_second = compose(phi2, &to_second)?;
    if !via_first.same_map(&via_second) {
        return Err(invariant("the amalgamation square does not commute".to_string()));
    }

    Ok(CapWitness {
        board,
        first_blocks,
        second_blocks,
        vertical_ties,
        horizontal_ties,
        lifts,
        anchor,
        listing,
        domain,
        to_first,
        to_second,
    })
}

/// A structure with two epimorphisms from a common antidiagonal structure;
/// the two targets need not be related.
#[derive(Debug, Clone)]
pub struct JppWitness {
    pub domain: RelStructure,
    pub to_first: StructureMap,
    pub to_second: StructureMap,
}

/// The antidiagonal structure covering the input, together with the covering
/// map: the input itself (under the identity) when its relation is already
/// an antidiagonal, otherwise the walk-based cover.
fn antidiagonal_stage(a: &RelStructure) -> Result<(RelStructure, StructureMap), AmalgamError> {
    match &a.s {
        None => Err(CoverError::NoRelation.into()),
        Some(s) if s.is_antidiagonal() => Ok((a.clone(), StructureMap::identity(a.graph))),
        Some(_) => {
            let c = cover_by_antidiagonal(a)?;
            Ok((c.cover, c.map))
        }
    }
}

/// Builds one antidiagonal structure mapping onto both inputs. Antidiagonal
/// structures of sizes k and n are both covered from size k*n by reading
/// positions block-wise (first map) and cyclically (second map); other
/// family members are first covered by an antidiagonal structure and the
/// covers composed.
pub fn jpp_witness(a1: &RelStructure, a2: &RelStructure) -> Result<JppWitness, AmalgamError> {
    let (b1, rho1) = antidiagonal_stage(a1)?;
    let (b2, rho2) = antidiagonal_stage(a2)?;
    let k = b1.graph.len();
    let n = b2.graph.len();
    let product = LinearGraph::plain((k * n) as i64).expect("sizes are positive");
    let domain = RelStructure::antidiagonal_on(product);
    let sigma1 = StructureMap::from_fn(product, b1.graph, |t| {
        let position = (t as usize).div_ceil(n);
        b1.graph.vertex_at(position - 1).expect("position in range")
    })?;
    let sigma2 = StructureMap::from_fn(product, b2.graph, |t| {
        let position = (t as usize).div_ceil(k);
        b2.graph.vertex_at(position - 1).expect("position in range")
    })?;
    let to_first = compose(&rho1, &sigma1)?;
    let to_second = compose(&rho2, &sigma2)?;
    for (m, target, idx) in [(&to_first, a1, 1usize), (&to_second, a2, 2)] {
        if !is_epimorphism(m, &domain, target)? {
            return Err(AmalgamError::NotEpimorphism(idx));
        }
    }
    Ok(JppWitness {
        domain,
        to_first,
        to_second,
    })
}

/// Joins four black corner-anchored walks, one reaching each board side,
/// into a single plain structure listing every walk forward then backward,
/// with the two cell coordinates as maps. This is the relation-free half of
/// the amalgamation step: both coordinate maps are checked to be
/// epimorphisms of bare linear graphs onto the board axes.
pub fn combine_paths(
    board: &Board,
    left: &CellPath,
    right: &CellPath,
    bottom: &CellPath,
    top: &CellPath,
) -> Result<(RelStructure, StructureMap, StructureMap), AmalgamError> {
    for (path, side) in [
        (left, Side::Left),
        (right, Side::Right),
        (bottom, Side::Bottom),
        (top, Side::Top),
    ] {
        if !path.is_walk(board, Adjacency::Eight) || !path.is_monochromatic(board, true) {
            return Err(invariant(format!(
                "the {side:?} path must be a nonempty black eight-neighbor walk"
            )));
        }
        let last = path.last().expect("walks are nonempty");
        let reached = match side {
            Side::Left => last.0 == board.x_axis().min_vertex(),
            Side::Right => last.0 == board.x_axis().max_vertex(),
            Side::Bottom => last.1 == board.y_axis().min_vertex(),
            Side::Top => last.1 == board.y_axis().max_vertex(),
        };
        if !reached {
            return Err(invariant(format!(
                "the {side:?} path ends at {last:?} instead of that side of the board"
            )));
        }
    }
    let lifts = SideLifts {
        left: left.clone(),
        right: right.clone(),
        bottom: bottom.clone(),
        top: top.clone(),
    };
    let (_, listing) = combined_listing(board, &lifts)?;
    let domain_graph = LinearGraph::plain(listing.len() as i64).expect("listing is nonempty");
    let domain = RelStructure::r_only(domain_graph);
    let psi1 = StructureMap::new(
        domain_graph,
        board.x_axis(),
        listing.iter().map(|c| c.0).collect(),
    )?;
    let psi2 = StructureMap::new(
        domain_graph,
        board.y_axis(),
        listing.iter().map(|c| c.1).collect(),
    )?;
    for (m, axis, idx) in [(&psi1, board.x_axis(), 1usize), (&psi2, board.y_axis(), 2)] {
        if !is_epimorphism(m, &domain, &RelStructure::r_only(axis))? {
            return Err(AmalgamError::NotEpimorphism(idx));
        }
    }
    Ok((domain, psi1, psi2))
}

/// An even antidiagonal cover relabeled onto a signed graph, together with
/// the epimorphism onto the input. Inputs that are already signed
/// antidiagonal structures are returned as they are; odd plain antidiagonal
/// structures are doubled first so the size is even.
pub fn signed_antidiagonal_cover(
    a: &RelStructure,
) -> Result<(RelStructure, StructureMap), AmalgamError> {
    let (stage, rho) = antidiagonal_stage(a)?;
    if stage.graph.is_signed() {
        return Ok((stage, rho));
    }
    let (even, down) = if stage.graph.len() % 2 == 0 {
        (stage, rho)
    } else {
        let (doubled, halve) = double_antidiagonal(&stage)?;
        (doubled, compose(&rho, &halve)?)
    };
    let half = (even.graph.len() / 2) as i64;
    let signed_graph = LinearGraph::signed(half).expect("half the even size is positive");
    let relabel = order_isomorphism(signed_graph, even.graph)?;
    let map = compose(&down, &relabel)?;
    let cover = RelStructure::antidiagonal_on(signed_graph);
    if !is_epimorphism(&map, &cover, a)? {
        return Err(AmalgamError::NotEpimorphism(1));
    }
    Ok((cover, map))
}

/// The antidiagonal structure of twice the size, mapping down by halving
/// positions.
pub fn double_antidiagonal(
    a: &RelStructure,
) -> Result<(RelStructure, StructureMap), AmalgamError> {
    let s = a.s.as_ref().ok_or(CoverError::NoRelation)?;
    if !s.is_antidiagonal() {
        return Err(AmalgamError::NotAntidiagonal);
    }
    let n = a.graph.len();
    let doubled_graph = LinearGraph::plain(2 * n as i64).expect("size is positive");
    let doubled = RelStructure::antidiagonal_on(doubled_graph);
    let map = StructureMap::from_fn(doubled_graph, a.graph, |t| {
        let position = (t as usize).div_ceil(2);
        a.graph.vertex_at(position - 1).expect("position in range")
    })?;
    if !is_epimorphism(&map, &doubled, a)? {
        return Err(AmalgamError::NotEpimorphism(1));
    }
    Ok((doubled, map))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::{antidiagonal, Relation};

    fn signed(k: i64) -> LinearGraph {
        LinearGraph::signed(k).unwrap()
    }

    fn plain(n: i64) -> LinearGraph {
        LinearGraph::plain(n).unwrap()
    }

    fn norm(a: GridVertex, b: GridVertex) -> (GridVertex, GridVertex) {
        if a <= b {
            (a, b)
        } else {
            (b, a)
        }
    }

    #[test]
    fn worked_example_maps_are_antidiagonal_epimorphisms() {
        let (phi1, phi2) = worked_example();
        assert!(phi1.is_antisymmetric());
        assert!(phi2.is_antisymmetric());
        for m in [&phi1, &phi2] {
            let src = RelStructure::antidiagonal_on(m.domain());
            let dst = RelStructure::antidiagonal_on(m.codomain());
            assert_eq!(is_epimorphism(m, &src, &dst), Ok(true));
        }
        assert_eq!(phi1.apply(-4), 1);
        assert_eq!(phi2.apply(-5), 3);
    }

    #[test]
    fn breakpoints_of_the_worked_example() {
        let (phi1, phi2) = worked_example();
        let d1 = block_decomposition(&phi1).unwrap();
        assert_eq!(d1.radius(), 3);
        assert_eq!(
            d1.breakpoint_line('s'),
            "s_-3=-8 s'_-2=-5 s_-2=-4 s'_-1=-4 s_-1=-3 s'_0=-1 \
             s_0=1 s'_1=3 s_1=4 s'_2=4 s_2=5 s'_3=8"
        );
        let d2 = block_decomposition(&phi2).unwrap();
        assert_eq!(d2.radius(), 2);
        assert_eq!(
            d2.breakpoint_line('t'),
            "t_-2=-9 t'_-1=-8 t_-1=-7 t'_0=-1 t_0=1 t'_1=7 t_1=8 t'_2=9"
        );
    }

    #[test]
    fn image_intervals_of_the_worked_example() {
        let (phi1, phi2) = worked_example();
        let d1 = block_decomposition(&phi1).unwrap();
        let expected1 = [
            (-3, (-3, -1)),
            (-2, (1, 1)),
            (-1, (-2, -1)),
            (0, (1, 2)),
            (1, (-1, -1)),
            (2, (1, 3)),
        ];
        for (i, range) in expected1 {
            assert_eq!(d1.image_interval(i), Some(range), "block {i}");
        }
        let d2 = block_decomposition(&phi2).unwrap();
        let expected2 = [(-2, (-2, -1)), (-1, (1, 3)), (0, (-3, -1)), (1, (1, 2))];
        for (j, range) in expected2 {
            assert_eq!(d2.image_interval(j), Some(range), "block {j}");
        }
        assert_eq!(d1.block_sign(1), Some(-1));
        assert_eq!(d1.block_interval(2), Some((5, 8)));
        assert_eq!(d1.image_interval(3), None);
    }

    #[test]
    fn decomposition_rejects_bad_inputs() {
        let id = StructureMap::identity(plain(4));
        assert_eq!(
            block_decomposition(&id).unwrap_err(),
            AmalgamError::NotSigned(1)
        );
        let constant = StructureMap::from_fn(signed(2), signed(2), |_| 1).unwrap();
        assert_eq!(
            block_decomposition(&constant).unwrap_err(),
            AmalgamError::NotAntisymmetric(1)
        );
        let folded = antisymmetric_from_positive(signed(2), signed(2), &[1, 1]).unwrap();
        assert_eq!(
            block_decomposition(&folded).unwrap_err(),
            AmalgamError::NotEpimorphism(1)
        );
    }

    #[test]
    fn identity_on_smallest_signed_graph_decomposes() {
        let id = StructureMap::identity(signed(1));
        let d = block_decomposition(&id).unwrap();
        assert_eq!(d.radius(), 1);
        assert_eq!(d.breakpoint_line('s'), "s_-1=-1 s'_0=-1 s_0=1 s'_1=1");
        assert_eq!(d.block_interval(-1), Some((-1, -1)));
        assert_eq!(d.block_interval(0), Some((1, 1)));
    }

    fn worked_graphs() -> (AmalgGraph, AmalgGraph) {
        let (phi1, phi2) = worked_example();
        let d1 = block_decomposition(&phi1).unwrap();
        let d2 = block_decomposition(&phi2).unwrap();
        (
            build_amalg_graph(&d1, &d2, TieBreak::Vertical).unwrap(),
            build_amalg_graph(&d1, &d2, TieBreak::Horizontal).unwrap(),
        )
    }

    #[test]
    fn grid_edges_of_the_worked_example() {
        let (g1, g2) = worked_graphs();
        let expect = |pairs: &[((i32, i32), (i32, i32))]| -> BTreeSet<(GridVertex, GridVertex)> {
            pairs.iter().map(|&(a, b)| norm(a, b)).collect()
        };
        let vertical_tie_edges = expect(&[
            ((-3, -2), (-3, -1)),
            ((-2, -2), (-2, -1)),
            ((-3, 0), (-3, 1)),
            ((-2, 0), (-2, 1)),
            ((-1, -2), (-1, -1)),
            ((0, -2), (0, -1)),
            ((0, 1), (0, 2)),
            ((1, 1), (1, 2)),
            ((2, -1), (2, 0)),
            ((3, -1), (3, 0)),
            ((2, 1), (2, 2)),
            ((3, 1), (3, 2)),
            ((-2, -1), (-1, -1)),
            ((-2, 0), (-1, 0)),
            ((-2, 1), (-1, 1)),
            ((-2, 2), (-1, 2)),
            ((-1, 0), (0, 0)),
            ((-1, 1), (0, 1)),
            ((0, -1), (1, -1)),
            ((0, 0), (1, 0)),
            ((1, -2), (2, -2)),
            ((1, -1), (2, -1)),
            ((1, 0), (2, 0)),
            ((1, 1), (2, 1)),
        ]);
        assert_eq!(*g1.edges(), vertical_tie_edges);
        let horizontal_tie_edges = expect(&[
            ((-3, -2), (-3, -1)),
            ((-2, -2), (-2, -1)),
            ((2, 1), (2, 2)),
            ((3, 1), (3, 2)),
            ((-3, 0), (-2, 0)),
            ((-3, 1), (-2, 1)),
            ((-2, -1), (-1, -1)),
            ((-2, 0), (-1, 0)),
            ((-2, 1), (-1, 1)),
            ((-2, 2), (-1, 2)),
            ((-1, -2), (0, -2)),
            ((-1, -1), (0, -1)),
            ((-1, 0), (0, 0)),
            ((-1, 1), (0, 1)),
            ((0, -1), (1, -1)),
            ((0, 0), (1, 0)),
            ((0, 1), (1, 1)),
            ((0, 2), (1, 2)),
            ((1, -2), (2, -2)),
            ((1, -1), (2, -1)),
            ((1, 0), (2, 0)),
            ((1, 1), (2, 1)),
            ((2, -1), (3, -1)),
            ((2, 0), (3, 0)),
        ]);
        assert_eq!(*g2.edges(), horizontal_tie_edges);
    }

    #[test]
    fn interior_walks_of_the_worked_example() {
        let (g1, g2) = worked_graphs();
        assert_eq!(
            find_interior_path(&g1, Side::Bottom).unwrap(),
            vec![(0, 0), (1, 0), (2, 0), (2, -1), (1, -1), (0, -1), (0, -2)]
        );
        assert_eq!(
            find_interior_path(&g1, Side::Top).unwrap(),
            vec![(0, 0), (-1, 0), (-2, 0), (-2, 1), (-1, 1), (0, 1), (0, 2)]
        );
        assert_eq!(
            find_interior_path(&g2, Side::Right).unwrap(),
            vec![(0, 0), (1, 0), (2, 0), (3, 0)]
        );
        assert_eq!(
            find_interior_path(&g2, Side::Left).unwrap(),
            vec![(0, 0), (-1, 0), (-2, 0), (-3, 0)]
        );
        assert!(matches!(
            find_interior_path(&g1, Side::Left),
            Err(AmalgamError::InvariantViolation(_))
        ));
    }

    #[test]
    fn amalgamation_of_the_worked_example() {
        let (phi1, phi2) = worked_example();
        let w = cap_witness(&phi1, &phi2).unwrap();
        assert_eq!(w.board.black_cells().len(), 58);
        assert_eq!(w.anchor, (1, -1));
        assert_eq!(w.lifts.bottom.first(), Some((1, -1)));
        assert_eq!(w.lifts.bottom.last().map(|c| c.1), Some(-9));
        assert_eq!(w.lifts.top.last().map(|c| c.1), Some(9));
        assert_eq!(w.lifts.left.last().map(|c| c.0), Some(-8));
        assert_eq!(w.lifts.right.last().map(|c| c.0), Some(8));
        assert_eq!(w.listing[0], (1, -1));
        assert_eq!(w.to_first.apply(1), 1);
        assert_eq!(w.domain.graph.len(), 2 * w.listing.len());
        let via_first = compose(&phi1, &w.to_first).unwrap();
        let via_second = compose(&phi2, &w.to_second).unwrap();
        assert!(via_first.same_map(&via_second));
    }

    #[test]
    fn amalgamation_of_the_smallest_identities() {
        let id = StructureMap::identity(signed(1));
        let w = cap_witness(&id, &id).unwrap();
        assert_eq!(w.anchor, (1, 1));
        assert_eq!(w.listing.len(), 12);
        let expected = [1, -1, -1, 1, 1, 1, 1, -1, -1, 1, 1, 1];
        let positive: Vec<i32> = (1..=12).map(|v| w.to_first.apply(v)).collect();
        assert_eq!(positive, expected);
        assert!(w.to_first.same_map(&w.to_second));
    }

    #[test]
    fn amalgamation_rejects_mismatched_or_plain_inputs() {
        let (phi1, _) = worked_example();
        let other = StructureMap::identity(signed(2));
        assert_eq!(
            cap_witness(&phi1, &other).unwrap_err(),
            AmalgamError::CodomainMismatch(signed(3), signed(2))
        );
        let flat = StructureMap::identity(plain(2));
        assert_eq!(
            cap_witness(&flat, &flat).unwrap_err(),
            AmalgamError::NotSigned(1)
        );
    }

    #[test]
    fn joint_cover_of_two_plain_antidiagonals() {
        let a = RelStructure::antidiagonal_on(plain(2));
        let b = RelStructure::antidiagonal_on(plain(3));
        let w = jpp_witness(&a, &b).unwrap();
        assert_eq!(w.domain.graph.len(), 6);
        assert_eq!(w.to_first.images(), &[1, 1, 1, 2, 2, 2]);
        assert_eq!(w.to_second.images(), &[1, 1, 2, 2, 3, 3]);
    }

    #[test]
    fn joint_cover_handles_general_members() {
        let full = Relation::new(
            plain(2),
            [(1, 1), (1, 2), (2, 1), (2, 2)],
        )
        .unwrap();
        let a = RelStructure::with_relation(full);
        let b = RelStructure::antidiagonal_on(plain(3));
        let w = jpp_witness(&a, &b).unwrap();
        assert_eq!(is_epimorphism(&w.to_first, &w.domain, &a), Ok(true));
        assert_eq!(is_epimorphism(&w.to_second, &w.domain, &b), Ok(true));
    }

    #[test]
    fn joint_cover_respects_signed_antidiagonal_targets() {
        let a = RelStructure::antidiagonal_on(signed(2));
        let b = RelStructure::antidiagonal_on(plain(3));
        let w = jpp_witness(&a, &b).unwrap();
        assert_eq!(w.domain.graph.len(), 12);
        assert_eq!(is_epimorphism(&w.to_first, &w.domain, &a), Ok(true));
        assert_eq!(w.to_first.apply(1), -2);
    }

    #[test]
    fn doubling_an_antidiagonal() {
        let a = RelStructure::antidiagonal_on(plain(3));
        let (b, m) = double_antidiagonal(&a).unwrap();
        assert_eq!(b.graph.len(), 6);
        assert_eq!(m.images(), &[1, 1, 2, 2, 3, 3]);
        let r_only = RelStructure::r_only(plain(3));
        assert_eq!(
            double_antidiagonal(&r_only),
            Err(AmalgamError::Cover(CoverError::NoRelation))
        );
        let diag = RelStructure::with_relation(crate::structure::identity_relation(plain(2)));
        assert_eq!(double_antidiagonal(&diag), Err(AmalgamError::NotAntidiagonal));
    }

    #[test]
    fn antidiagonal_relation_witnesses_itself() {
        // The antidiagonal stage passes antidiagonal structures through
        // untouched, so joint covers of two antidiagonals stay small.
        let a = RelStructure::antidiagonal_on(plain(4));
        let w = jpp_witness(&a, &a).unwrap();
        assert_eq!(w.domain.graph.len(), 16);
        assert!(antidiagonal(plain(4)).is_antidiagonal());
    }

    #[test]
    fn combining_single_cell_paths_on_a_one_cell_board() {
        let id = StructureMap::identity(plain(1));
        let board = product_coloring(&id, &id).unwrap();
        let cell = CellPath(vec![(1, 1)]);
        let (d, psi1, psi2) = combine_paths(&board, &cell, &cell, &cell, &cell).unwrap();
        assert_eq!(d.graph, plain(8));
        assert!(d.s.is_none());
        assert_eq!(psi1.images(), &[1; 8]);
        assert_eq!(psi2.images(), &[1; 8]);
    }

    #[test]
    fn combining_the_lifts_of_the_worked_example() {
        let (phi1, phi2) = worked_example();
        let w = cap_witness(&phi1, &phi2).unwrap();
        let (d, psi1, psi2) = combine_paths(
            &w.board,
            &w.lifts.left,
            &w.lifts.right,
            &w.lifts.bottom,
            &w.lifts.top,
        )
        .unwrap();
        assert_eq!(d.graph.len(), w.listing.len());
        assert!(!d.graph.is_signed());
        // The coordinate maps agree with the signed witness on the listing.
        for (idx, &(x, y)) in w.listing.iter().enumerate() {
            let t = d.graph.vertex_at(idx).unwrap();
            assert_eq!(psi1.apply(t), x);
            assert_eq!(psi2.apply(t), y);
        }
        assert!(psi1.apply(1) == 1 || psi1.apply(1) == -1);
    }

    #[test]
    fn combining_rejects_paths_away_from_the_corners() {
        let (phi1, phi2) = worked_example();
        let w = cap_witness(&phi1, &phi2).unwrap();
        let stray = CellPath(vec![*w.lifts.left.cells().last().unwrap()]);
        let err = combine_paths(&w.board, &stray, &w.lifts.right, &w.lifts.bottom, &w.lifts.top)
            .unwrap_err();
        assert!(matches!(err, AmalgamError::InvariantViolation(_)));
        let white = CellPath(vec![(-1, -1)]);
        assert!(!w.board.is_black((-1, -1)));
        let err = combine_paths(&w.board, &white, &w.lifts.right, &w.lifts.bottom, &w.lifts.top)
            .unwrap_err();
        assert!(matches!(err, AmalgamError::InvariantViolation(_)));
    }

    #[test]
    fn signed_cover_of_plain_antidiagonals() {
        let odd = RelStructure::antidiagonal_on(plain(3));
        let (cover, map) = signed_antidiagonal_cover(&odd).unwrap();
        assert_eq!(cover.graph, signed(3));
        assert_eq!(is_epimorphism(&map, &cover, &odd), Ok(true));

        let even = RelStructure::antidiagonal_on(plain(4));
        let (cover, map) = signed_antidiagonal_cover(&even).unwrap();
        assert_eq!(cover.graph, signed(2));
        assert_eq!(map.images(), &[1, 2, 3, 4]);

        let already = RelStructure::antidiagonal_on(signed(2));
        let (cover, map) = signed_antidiagonal_cover(&already).unwrap();
        assert_eq!(cover, already);
        assert!(map.same_map(&StructureMap::identity(signed(2))));
    }

    #[test]
    fn signed_cover_of_a_symmetric_member() {
        let full = Relation::new(plain(2), [(1, 1), (1, 2), (2, 1), (2, 2)]).unwrap();
        let a = RelStructure::with_relation(full);
        let (cover, map) = signed_antidiagonal_cover(&a).unwrap();
        assert!(cover.graph.is_signed());
        assert_eq!(cover.graph.len() % 2, 0);
        assert!(cover.s.as_ref().unwrap().is_antidiagonal());
        assert_eq!(is_epimorphism(&map, &cover, &a), Ok(true));
    }

    #[test]
    fn signed_cover_fails_on_an_asymmetric_member() {
        // In the family (surjective and connected) but not symmetric, so no
        // antidiagonal image can reproduce the relation.
        let lopsided = Relation::new(plain(2), [(1, 1), (1, 2), (2, 2)]).unwrap();
        let a = RelStructure::with_relation(lopsided);
        assert!(crate::family::is_in_family_f(&a).unwrap());
        let err = signed_antidiagonal_cover(&a).unwrap_err();
        assert!(matches!(
            err,
            AmalgamError::Cover(CoverError::NotCoverable { .. })
        ));
    }
}
