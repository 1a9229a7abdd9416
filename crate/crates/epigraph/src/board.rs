use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::LinearGraph;
use crate::morphism::{compose, is_epimorphism, StructureMap};
use crate::structure::RelStructure;

/// A board cell, addressed as (x, y) with y increasing upward. Coordinates
/// are vertices of the two axis graphs, so steps and adjacency are counted
/// along axis positions, not by coordinate arithmetic: on a signed axis the
/// vertices -1 and 1 sit next to each other.
pub type Cell = (i32, i32);

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BoardError {
    #[error("cell {0:?} lies outside the board axes")]
    CellOutOfRange(Cell),
    #[error("the two maps target different graphs: {0} vs {1}")]
    CodomainMismatch(LinearGraph, LinearGraph),
    #[error("cell {0:?} is not on the board boundary")]
    NotOnBoundary(Cell),
    #[error("boundary quadruples need both sides of length at least 2, got {0} x {1}")]
    DegenerateBoard(usize, usize),
    #[error("cell {cell:?} violates the clockwise ordering: {constraint}")]
    QuadrupleOrder { cell: Cell, constraint: &'static str },
    #[error("input map {0} is not an epimorphism of bare linear graphs")]
    NotEpimorphism(usize),
    #[error("no monochromatic path from {from} to {to}")]
    NoPath { from: &'static str, to: &'static str },
}

/// Neighborhood used by path searches: rook-and-bishop (eight) or rook-only
/// (four) steps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Adjacency {
    Four,
    Eight,
}

impl Adjacency {
    /// Position offsets in fixed search order, starting north and sweeping
    /// clockwise.
    pub fn offsets(self) -> &'static [(i32, i32)] {
        match self {
            Adjacency::Four => &[(0, 1), (1, 0), (0, -1), (-1, 0)],
            Adjacency::Eight => &[
                (0, 1),
                (1, 1),
                (1, 0),
                (1, -1),
                (0, -1),
                (-1, -1),
                (-1, 0),
                (-1, 1),
            ],
        }
    }
}

/// A two-colored rectangular board whose columns and rows are indexed by the
/// vertices of two linear graphs. Cells not listed as black are white.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Board {
    x_axis: LinearGraph,
    y_axis: LinearGraph,
    black: BTreeSet<Cell>,
}

impl Board {
    pub fn new(
        x_axis: LinearGraph,
        y_axis: LinearGraph,
        black: impl IntoIterator<Item = Cell>,
    ) -> Result<Self, BoardError> {
        let black: BTreeSet<Cell> = black.into_iter().collect();
        for &(x, y) in &black {
            if !x_axis.contains(x) || !y_axis.contains(y) {
                return Err(BoardError::CellOutOfRange((x, y)));
            }
        }
        Ok(Board {
            x_axis,
            y_axis,
            black,
        })
    }

    pub fn x_axis(&self) -> LinearGraph {
        self.x_axis
    }

    pub fn y_axis(&self) -> LinearGraph {
        self.y_axis
    }

    pub fn black_cells(&self) -> &BTreeSet<Cell> {
        &self.black
    }

    pub fn on_board(&self, (x, y): Cell) -> bool {
        self.x_axis.contains(x) && self.y_axis.contains(y)
    }

    pub fn is_black(&self, cell: Cell) -> bool {
        self.black.contains(&cell)
    }

    /// True for cells on the board that are not black.
    pub fn is_white(&self, cell: Cell) -> bool {
        self.on_board(cell) && !self.black.contains(&cell)
    }

    pub fn width(&self) -> usize {
        self.x_axis.len()
    }

    pub fn height(&self) -> usize {
        self.y_axis.len()
    }

    pub fn x_vertices(&self) -> Vec<i32> {
        self.x_axis.vertices().collect()
    }

    pub fn y_vertices(&self) -> Vec<i32> {
        self.y_axis.vertices().collect()
    }

    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        self.x_axis
            .vertices()
            .flat_map(move |x| self.y_axis.vertices().map(move |y| (x, y)))
    }

    /// The cell one position offset away, if it exists: the offset counts
    /// axis positions, so it crosses the -1 to 1 step of a signed axis.
    pub fn neighbor(&self, (x, y): Cell, (dx, dy): (i32, i32)) -> Option<Cell> {
        if !self.on_board((x, y)) {
            return None;
        }
        let nx = match dx {
            0 => Some(x),
            1 => self.x_axis.succ(x),
            -1 => self.x_axis.pred(x),
            _ => None,
        }?;
        let ny = match dy {
            0 => Some(y),
            1 => self.y_axis.succ(y),
            -1 => self.y_axis.pred(y),
            _ => None,
        }?;
        Some((nx, ny))
    }

    /// Distinct cells within one position of each other along both axes
    /// (eight) or exactly one position along exactly one axis (four).
    pub fn cells_adjacent(&self, a: Cell, b: Cell, adj: Adjacency) -> bool {
        let (Some(ax), Some(ay)) = (self.x_axis.index_of(a.0), self.y_axis.index_of(a.1)) else {
            return false;
        };
        let (Some(bx), Some(by)) = (self.x_axis.index_of(b.0), self.y_axis.index_of(b.1)) else {
            return false;
        };
        let (dx, dy) = (ax.abs_diff(bx), ay.abs_diff(by));
        match adj {
            Adjacency::Four => dx + dy == 1,
            Adjacency::Eight => a != b && dx <= 1 && dy <= 1,
        }
    }

    /// Cells on the outer rim: extreme in x or in y.
    pub fn is_boundary(&self, (x, y): Cell) -> bool {
        self.on_board((x, y))
            && (x == self.x_axis.min_vertex()
                || x == self.x_axis.max_vertex()
                || y == self.y_axis.min_vertex()
                || y == self.y_axis.max_vertex())
    }

    /// The boundary walked clockwise from the top-left corner: top row left
    /// to right, right column downward, bottom row right to left, left column
    /// upward, with each cell listed once (first visit kept).
    pub fn boundary_cycle(&self) -> Vec<Cell> {
        let xs = self.x_vertices();
        let ys = self.y_vertices();
        let (x_min, x_max) = (self.x_axis.min_vertex(), self.x_axis.max_vertex());
        let (y_min, y_max) = (self.y_axis.min_vertex(), self.y_axis.max_vertex());
        let mut cycle: Vec<Cell> = Vec::new();
        let mut seen = BTreeSet::new();
        let mut push = |c: Cell, cycle: &mut Vec<Cell>| {
            if seen.insert(c) {
                cycle.push(c);
            }
        };
        for &x in &xs {
            push((x, y_max), &mut cycle);
        }
        for &y in ys.iter().rev() {
            push((x_max, y), &mut cycle);
        }
        for &x in xs.iter().rev() {
            push((x, y_min), &mut cycle);
        }
        for &y in &ys {
            push((x_min, y), &mut cycle);
        }
        cycle
    }

    /// The clockwise boundary arc from `from` to `to`, inclusive; a single
    /// cell when the endpoints coincide.
    pub fn clockwise_arc(&self, from: Cell, to: Cell) -> Result<Vec<Cell>, BoardError> {
        let cycle = self.boundary_cycle();
        let start = cycle
            .iter()
            .position(|&c| c == from)
            .ok_or(BoardError::NotOnBoundary(from))?;
        let end = cycle
            .iter()
            .position(|&c| c == to)
            .ok_or(BoardError::NotOnBoundary(to))?;
        let n = cycle.len();
        let steps = (end + n - start) % n;
        Ok((0..=steps).map(|k| cycle[(start + k) % n]).collect())
    }
}

/// A sequence of cells in which consecutive cells are distinct and adjacent;
/// revisiting a cell later is allowed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellPath(pub Vec<Cell>);

impl CellPath {
    pub fn cells(&self) -> &[Cell] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn first(&self) -> Option<Cell> {
        self.0.first().copied()
    }

    pub fn last(&self) -> Option<Cell> {
        self.0.last().copied()
    }

    pub fn is_walk(&self, board: &Board, adj: Adjacency) -> bool {
        !self.0.is_empty()
            && self
                .0
                .windows(2)
                .all(|w| board.cells_adjacent(w[0], w[1], adj))
    }

    /// Every cell has the requested color on the given board.
    pub fn is_monochromatic(&self, board: &Board, black: bool) -> bool {
        self.0.iter().all(|&c| {
            if black {
                board.is_black(c)
            } else {
                board.is_white(c)
            }
        })
    }
}

/// Breadth-first search for a path through same-colored cells restricted to
/// an arbitrary region, exploring neighbors north-first and clockwise. Seeds
/// are the correctly colored and allowed `from` cells in sorted order; the
/// first `to` cell reached ends the path.
pub fn exists_path_where(
    board: &Board,
    black: bool,
    adj: Adjacency,
    from: &[Cell],
    to: &[Cell],
    allowed: impl Fn(Cell) -> bool,
) -> Option<CellPath> {
    let colored = |c: Cell| {
        if black {
            board.is_black(c)
        } else {
            board.is_white(c)
        }
    };
    let targets: BTreeSet<Cell> = to.iter().copied().collect();
    let seeds: BTreeSet<Cell> = from
        .iter()
        .copied()
        .filter(|&c| colored(c) && allowed(c))
        .collect();
    let mut parent: BTreeMap<Cell, Cell> = BTreeMap::new();
    let mut seen: BTreeSet<Cell> = seeds.clone();
    let mut queue: VecDeque<Cell> = seeds.iter().copied().collect();
    while let Some(c) = queue.pop_front() {
        if targets.contains(&c) {
            let mut path = vec![c];
            let mut cur = c;
            while let Some(&p) = parent.get(&cur) {
                path.push(p);
                cur = p;
            }
            path.reverse();
            return Some(CellPath(path));
        }
        for &step in adj.offsets() {
            let Some(n) = board.neighbor(c, step) else {
                continue;
            };
            if colored(n) && allowed(n) && !seen.contains(&n) {
                seen.insert(n);
                parent.insert(n, c);
                queue.push_back(n);
            }
        }
    }
    None
}

/// Breadth-first search over the whole board; see [`exists_path_where`].
pub fn exists_path(
    board: &Board,
    black: bool,
    adj: Adjacency,
    from: &[Cell],
    to: &[Cell],
) -> Option<CellPath> {
    exists_path_where(board, black, adj, from, to, |_| true)
}

/// Four boundary cells in weakly clockwise order. Construction checks that
/// the later cells do not fall inside the earlier arcs, and rejects boards
/// with a side of length one, whose boundary is not a simple cycle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrientedQuadruple {
    pub w: Cell,
    pub x: Cell,
    pub y: Cell,
    pub z: Cell,
}

impl OrientedQuadruple {
    pub fn new(board: &Board, w: Cell, x: Cell, y: Cell, z: Cell) -> Result<Self, BoardError> {
        if board.width() < 2 || board.height() < 2 {
            return Err(BoardError::DegenerateBoard(board.width(), board.height()));
        }
        for c in [w, x, y, z] {
            if !board.is_boundary(c) {
                return Err(BoardError::NotOnBoundary(c));
            }
        }
        let wx = board.clockwise_arc(w, x)?;
        if wx.contains(&y) {
            return Err(BoardError::QuadrupleOrder {
                cell: y,
                constraint: "third cell inside the arc from first to second",
            });
        }
        if wx.contains(&z) {
            return Err(BoardError::QuadrupleOrder {
                cell: z,
                constraint: "fourth cell inside the arc from first to second",
            });
        }
        let xy = board.clockwise_arc(x, y)?;
        if xy.contains(&z) {
            return Err(BoardError::QuadrupleOrder {
                cell: z,
                constraint: "fourth cell inside the arc from second to third",
            });
        }
        Ok(OrientedQuadruple { w, x, y, z })
    }
}

/// The two sides of the path duality for one coloring and one quadruple: a
/// black king-move path joining the two opposite arcs, and a white rook-move
/// path joining the other two. Exactly one should exist.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DualityOutcome {
    pub black_eight: Option<CellPath>,
    pub white_four: Option<CellPath>,
}

impl DualityOutcome {
    /// The duality statement itself: one path or the other, never both,
    /// never neither.
    pub fn holds(&self) -> bool {
        self.black_eight.is_some() != self.white_four.is_some()
    }
}

/// Searches both sides of the duality: a black eight-neighbor path from the
/// arc w..x to the arc y..z, and a white four-neighbor path from the arc
/// x..y to the arc z..w.
pub fn steinhaus_check(board: &Board, q: &OrientedQuadruple) -> Result<DualityOutcome, BoardError> {
    let wx = board.clockwise_arc(q.w, q.x)?;
    let yz = board.clockwise_arc(q.y, q.z)?;
    let xy = board.clockwise_arc(q.x, q.y)?;
    let zw = board.clockwise_arc(q.z, q.w)?;
    Ok(DualityOutcome {
        black_eight: exists_path(board, true, Adjacency::Eight, &wx, &yz),
        white_four: exists_path(board, false, Adjacency::Four, &xy, &zw),
    })
}

/// The board of a pair of maps into a common graph: columns indexed by the
/// first domain, rows by the second, a cell black exactly when the two maps
/// agree there.
pub fn product_coloring(f: &StructureMap, g: &StructureMap) -> Result<Board, BoardError> {
    if f.codomain() != g.codomain() {
        return Err(BoardError::CodomainMismatch(f.codomain(), g.codomain()));
    }
    let cells: Vec<Cell> = f
        .domain()
        .vertices()
        .flat_map(|i| {
            g.domain()
                .vertices()
                .filter(move |&j| f.apply(i) == g.apply(j))
                .map(move |j| (i, j))
        })
        .collect();
    Board::new(f.domain(), g.domain(), cells)
}

/// An amalgam of two bare-graph epimorphisms over their product board: a
/// linear graph mapping onto both domains so that the square commutes.
#[derive(Debug, Clone)]
pub struct LinearAmalgam {
    pub board: Board,
    pub domain: LinearGraph,
    pub to_first: StructureMap,
    pub to_second: StructureMap,
    pub path: CellPath,
}

/// Amalgamates two epimorphisms of bare linear graphs by walking black cells
/// of their product board: a bottom-to-top path, a left-to-right path, and a
/// connector between them are concatenated into one black king-move walk
/// touching every column and every row. Its x-coordinates map the walk onto
/// the first domain and its y-coordinates onto the second, and agreement on
/// black cells makes the square commute.
pub fn solecki_amalgamate(
    f: &StructureMap,
    g: &StructureMap,
) -> Result<LinearAmalgam, BoardError> {
    for (idx, m) in [f, g].into_iter().enumerate() {
        let src = RelStructure::r_only(m.domain());
        let dst = RelStructure::r_only(m.codomain());
        if !is_epimorphism(m, &src, &dst).unwrap_or(false) {
            return Err(BoardError::NotEpimorphism(idx + 1));
        }
    }
    let board = product_coloring(f, g)?;
    let (x_min, x_max) = (board.x_axis.min_vertex(), board.x_axis.max_vertex());
    let (y_min, y_max) = (board.y_axis.min_vertex(), board.y_axis.max_vertex());
    let bottom: Vec<Cell> = board.x_vertices().iter().map(|&x| (x, y_min)).collect();
    let top: Vec<Cell> = board.x_vertices().iter().map(|&x| (x, y_max)).collect();
    let left: Vec<Cell> = board.y_vertices().iter().map(|&y| (x_min, y)).collect();
    let right: Vec<Cell> = board.y_vertices().iter().map(|&y| (x_max, y)).collect();

    let rising =
        exists_path(&board, true, Adjacency::Eight, &bottom, &top).ok_or(BoardError::NoPath {
            from: "bottom row",
            to: "top row",
        })?;
    let crossing =
        exists_path(&board, true, Adjacency::Eight, &left, &right).ok_or(BoardError::NoPath {
            from: "left column",
            to: "right column",
        })?;
    let connector = exists_path(
        &board,
        true,
        Adjacency::Eight,
        &[rising.last().expect("nonempty path")],
        crossing.cells(),
    )
    .ok_or(BoardError::NoPath {
        from: "top of the rising path",
        to: "the crossing path",
    })?;
    let junction = connector.last().expect("nonempty path");
    let t = crossing
        .cells()
        .iter()
        .position(|&c| c == junction)
        .expect("connector ends on the crossing path");

    let mut cells: Vec<Cell> = rising.cells().to_vec();
    cells.extend(&connector.cells()[1..]);
    cells.extend(crossing.cells()[..t].iter().rev());
    cells.extend(&crossing.cells()[1..]);
    let path = CellPath(cells);
    debug_assert!(path.is_walk(&board, Adjacency::Eight));
    debug_assert!(path.is_monochromatic(&board, true));

    let domain = LinearGraph::plain(path.len() as i64).expect("walks are nonempty");
    let to_first = StructureMap::new(
        domain,
        f.domain(),
        path.cells().iter().map(|c| c.0).collect(),
    )
    .expect("x-coordinates live on the first domain");
    let to_second = StructureMap::new(
        domain,
        g.domain(),
        path.cells().iter().map(|c| c.1).collect(),
    )
    .expect("y-coordinates live on the second domain");

    let d = RelStructure::r_only(domain);
    for (m, tgt, idx) in [(&to_first, f.domain(), 1usize), (&to_second, g.domain(), 2)] {
        if !is_epimorphism(m, &d, &RelStructure::r_only(tgt)).unwrap_or(false) {
            return Err(BoardError::NotEpimorphism(idx));
        }
    }
    let via_first = compose(f, &to_first).expect("endpoints align");
    let via_second = compose(g, &to_second).expect("endpoints align");
    if !via_first.same_map(&via_second) {
        return Err(BoardError::NoPath {
            from: "commuting square",
            to: "commuting square",
        });
    }
    Ok(LinearAmalgam {
        board,
        domain,
        to_first,
        to_second,
        path,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn plain(n: i64) -> LinearGraph {
        LinearGraph::plain(n).unwrap()
    }

    fn signed(k: i64) -> LinearGraph {
        LinearGraph::signed(k).unwrap()
    }

    fn board3(black: &[Cell]) -> Board {
        Board::new(plain(3), plain(3), black.iter().copied()).unwrap()
    }

    #[test]
    fn boundary_cycle_of_three_by_three() {
        let b = board3(&[]);
        assert_eq!(
            b.boundary_cycle(),
            vec![
                (1, 3),
                (2, 3),
                (3, 3),
                (3, 2),
                (3, 1),
                (2, 1),
                (1, 1),
                (1, 2)
            ]
        );
    }

    #[test]
    fn clockwise_arcs_with_and_without_wrap() {
        let b = board3(&[]);
        assert_eq!(
            b.clockwise_arc((3, 3), (1, 1)).unwrap(),
            vec![(3, 3), (3, 2), (3, 1), (2, 1), (1, 1)]
        );
        assert_eq!(b.clockwise_arc((2, 3), (2, 3)).unwrap(), vec![(2, 3)]);
        assert_eq!(
            b.clockwise_arc((1, 2), (2, 3)).unwrap(),
            vec![(1, 2), (1, 3), (2, 3)]
        );
        assert!(matches!(
            b.clockwise_arc((2, 2), (1, 1)),
            Err(BoardError::NotOnBoundary((2, 2)))
        ));
    }

    #[test]
    fn signed_axes_step_across_the_center() {
        let b = Board::new(signed(2), plain(1), [(-1, 1), (1, 1)]).unwrap();
        assert!(b.cells_adjacent((-1, 1), (1, 1), Adjacency::Four));
        assert!(b.cells_adjacent((-1, 1), (1, 1), Adjacency::Eight));
        assert!(!b.cells_adjacent((-2, 1), (1, 1), Adjacency::Eight));
        assert_eq!(b.neighbor((-1, 1), (1, 0)), Some((1, 1)));
        assert_eq!(b.neighbor((-2, 1), (-1, 0)), None);
        let p = exists_path(&b, true, Adjacency::Four, &[(-1, 1)], &[(1, 1)]).unwrap();
        assert_eq!(p.cells(), &[(-1, 1), (1, 1)]);
    }

    #[test]
    fn breadth_first_search_is_deterministic() {
        let b = Board::new(plain(2), plain(2), [(1, 1), (1, 2), (2, 1), (2, 2)]).unwrap();
        let p8 = exists_path(&b, true, Adjacency::Eight, &[(1, 1)], &[(2, 2)]).unwrap();
        assert_eq!(p8.cells(), &[(1, 1), (2, 2)]);
        let p4 = exists_path(&b, true, Adjacency::Four, &[(1, 1)], &[(2, 2)]).unwrap();
        assert_eq!(p4.cells(), &[(1, 1), (1, 2), (2, 2)]);
        assert!(exists_path(&b, false, Adjacency::Four, &[(1, 1)], &[(2, 2)]).is_none());
    }

    #[test]
    fn restricted_search_respects_the_region() {
        let b = board3(&[(1, 1), (2, 1), (3, 1), (3, 2), (3, 3)]);
        assert!(exists_path(&b, true, Adjacency::Four, &[(1, 1)], &[(3, 3)]).is_some());
        // Forbid the corner the path must turn through.
        let blocked =
            exists_path_where(&b, true, Adjacency::Four, &[(1, 1)], &[(3, 3)], |c| {
                c != (3, 1)
            });
        assert!(blocked.is_none());
    }

    #[test]
    fn diagonal_blocks_rook_but_not_king() {
        // Black diagonal separates the white corners for rook moves.
        let b = board3(&[(1, 3), (2, 2), (3, 1)]);
        assert!(exists_path(&b, true, Adjacency::Eight, &[(1, 3)], &[(3, 1)]).is_some());
        assert!(exists_path(&b, false, Adjacency::Four, &[(1, 1)], &[(3, 3)]).is_none());
        assert!(exists_path(&b, false, Adjacency::Eight, &[(1, 1)], &[(3, 3)]).is_some());
    }

    #[test]
    fn quadruple_construction_enforces_order_and_shape() {
        let b = board3(&[]);
        let q = OrientedQuadruple::new(&b, (1, 3), (3, 3), (3, 1), (1, 1)).unwrap();
        assert_eq!((q.w, q.x, q.y, q.z), ((1, 3), (3, 3), (3, 1), (1, 1)));
        // Repeated cells are allowed as long as later cells stay outside
        // earlier arcs.
        assert!(OrientedQuadruple::new(&b, (1, 3), (1, 3), (3, 1), (1, 1)).is_ok());
        // A third cell inside the first arc is rejected.
        assert!(matches!(
            OrientedQuadruple::new(&b, (1, 3), (3, 1), (3, 3), (1, 1)),
            Err(BoardError::QuadrupleOrder { cell: (3, 3), .. })
        ));
        assert!(matches!(
            OrientedQuadruple::new(&b, (2, 2), (3, 3), (3, 1), (1, 1)),
            Err(BoardError::NotOnBoundary((2, 2)))
        ));
        let thin = Board::new(plain(3), plain(1), [(2, 1)]).unwrap();
        assert!(matches!(
            OrientedQuadruple::new(&thin, (1, 1), (1, 1), (2, 1), (3, 1)),
            Err(BoardError::DegenerateBoard(3, 1))
        ));
    }

    #[test]
    fn duality_on_an_explicit_coloring() {
        // Black diagonal: the black side connects the top-left arc to the
        // bottom-right arc, and no white rook path crosses it.
        let b = board3(&[(1, 3), (2, 2), (3, 1)]);
        let q = OrientedQuadruple::new(&b, (1, 2), (1, 3), (3, 2), (3, 1)).unwrap();
        let out = steinhaus_check(&b, &q).unwrap();
        assert!(out.holds());
        assert!(out.black_eight.is_some());
        // On the all-white board the same arcs are joined by a rook path.
        let all_white = board3(&[]);
        let q2 = OrientedQuadruple::new(&all_white, (1, 3), (2, 3), (2, 1), (1, 1)).unwrap();
        let out2 = steinhaus_check(&all_white, &q2).unwrap();
        assert!(out2.holds());
        assert!(out2.white_four.is_some());
    }

    #[test]
    fn duality_holds_for_every_two_by_two_coloring_and_quadruple() {
        let cells = [(1, 1), (1, 2), (2, 1), (2, 2)];
        let boundary = cells; // every cell of a 2x2 board is on the rim
        let mut quadruples = 0;
        for mask in 0u32..16 {
            let black: Vec<Cell> = cells
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &c)| c)
                .collect();
            let b = Board::new(plain(2), plain(2), black).unwrap();
            for w in boundary {
                for x in boundary {
                    for y in boundary {
                        for z in boundary {
                            if let Ok(q) = OrientedQuadruple::new(&b, w, x, y, z) {
                                assert!(
                                    steinhaus_check(&b, &q).unwrap().holds(),
                                    "coloring {mask:04b}, quadruple {q:?}"
                                );
                                quadruples += 1;
                            }
                        }
                    }
                }
            }
        }
        assert!(quadruples > 0);
    }

    #[test]
    fn product_coloring_marks_agreement_cells() {
        let f = StructureMap::new(plain(4), plain(2), vec![1, 1, 2, 2]).unwrap();
        let g = StructureMap::new(plain(3), plain(2), vec![1, 2, 2]).unwrap();
        let b = product_coloring(&f, &g).unwrap();
        assert_eq!(b.x_axis(), plain(4));
        assert_eq!(b.y_axis(), plain(3));
        let expected: BTreeSet<Cell> = [(1, 1), (2, 1), (3, 2), (3, 3), (4, 2), (4, 3)].into();
        assert_eq!(*b.black_cells(), expected);
        let h = StructureMap::new(plain(3), plain(3), vec![1, 2, 3]).unwrap();
        assert!(matches!(
            product_coloring(&f, &h),
            Err(BoardError::CodomainMismatch(_, _))
        ));
    }

    #[test]
    fn amalgamation_of_the_four_and_three_cover() {
        let f = StructureMap::new(plain(4), plain(2), vec![1, 1, 2, 2]).unwrap();
        let g = StructureMap::new(plain(3), plain(2), vec![1, 2, 2]).unwrap();
        let am = solecki_amalgamate(&f, &g).unwrap();
        assert_eq!(am.domain, plain(10));
        assert_eq!(am.to_first.images(), &[2, 3, 3, 4, 3, 2, 1, 2, 3, 4]);
        assert_eq!(am.to_second.images(), &[1, 2, 3, 3, 2, 1, 1, 1, 2, 3]);
        let via_first = compose(&f, &am.to_first).unwrap();
        let via_second = compose(&g, &am.to_second).unwrap();
        assert!(via_first.same_map(&via_second));
    }

    #[test]
    fn amalgamation_of_identities_is_a_single_cell() {
        let id = StructureMap::identity(plain(1));
        let am = solecki_amalgamate(&id, &id).unwrap();
        assert_eq!(am.path.cells(), &[(1, 1)]);
        assert_eq!(am.domain, plain(1));
    }

    #[test]
    fn amalgamation_rejects_non_epimorphisms() {
        let f = StructureMap::new(plain(2), plain(2), vec![1, 1]).unwrap();
        let g = StructureMap::identity(plain(2));
        assert!(matches!(
            solecki_amalgamate(&f, &g),
            Err(BoardError::NotEpimorphism(1))
        ));
    }

    #[test]
    fn walk_validity_spots_jumps_and_stutters() {
        let b = board3(&[]);
        let good = CellPath(vec![(1, 1), (2, 2), (2, 3)]);
        assert!(good.is_walk(&b, Adjacency::Eight));
        assert!(!good.is_walk(&b, Adjacency::Four));
        let stutter = CellPath(vec![(1, 1), (1, 1)]);
        assert!(!stutter.is_walk(&b, Adjacency::Eight));
        let jump = CellPath(vec![(1, 1), (3, 1)]);
        assert!(!jump.is_walk(&b, Adjacency::Eight));
        assert!(!CellPath(vec![]).is_walk(&b, Adjacency::Eight));
    }
}
