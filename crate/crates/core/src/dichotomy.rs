//! Induced grid minor or clique minor from a large grid, the `K_{2s}` model in
//! the strong grid, and planar induced subgraphs of large treewidth from an
//! induced grid minor.
//!
//! Coordinates are 1-based pairs `(x, y)`; on an `N x N` host the vertex of
//! `(x, y)` is `(x - 1) * N + (y - 1)`, as in [`make_grid`].

use crate::error::{check_cap, Error, Limits, Result};
use crate::graph::{make_grid, make_strong_grid, Graph};
use crate::minors::{compose_models, is_planar_wagner, validate_model, MinorModel, ModelKind};
use crate::treewidth::treewidth_at_least;

/// A host containing every edge of the `N x N` grid, `N = t(2k+1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DichotomyInput {
    pub host: Graph,
    pub k: usize,
    pub t: usize,
}

impl DichotomyInput {
    pub fn new(host: Graph, k: usize, t: usize) -> Result<DichotomyInput> {
        let input = DichotomyInput { host, k, t };
        input.validate()?;
        Ok(input)
    }

    pub fn side(&self) -> usize {
        self.t * (2 * self.k + 1)
    }

    pub fn vertex(&self, x: usize, y: usize) -> usize {
        (x - 1) * self.side() + (y - 1)
    }

    pub fn coord(&self, v: usize) -> (usize, usize) {
        (v / self.side() + 1, v % self.side() + 1)
    }

    pub fn validate(&self) -> Result<()> {
        if self.k == 0 || self.t == 0 {
            return Err(Error::invalid("k and t must be positive"));
        }
        let n = self.side();
        if self.host.n() != n * n {
            return Err(Error::invalid(format!("host has {} vertices, expected {}", self.host.n(), n * n)));
        }
        for x in 1..=n {
            for y in 1..=n {
                let v = self.vertex(x, y);
                if (x < n && !self.host.has_edge(v, self.vertex(x + 1, y)))
                    || (y < n && !self.host.has_edge(v, self.vertex(x, y + 1)))
                {
                    return Err(Error::invalid(format!("grid edge at ({x}, {y}) missing")));
                }
            }
        }
        Ok(())
    }

    /// True if `(u, v)` spans at least 2 in some coordinate.
    pub fn is_jump(&self, u: usize, v: usize) -> bool {
        let (a, b) = (self.coord(u), self.coord(v));
        a.0.abs_diff(b.0) >= 2 || a.1.abs_diff(b.1) >= 2
    }

    /// First jump edge with both ends inside the interior `H_{a,b}` of block
    /// `(a, b)`, lexicographically.
    pub fn block_jump(&self, a: usize, b: usize) -> Option<(usize, usize)> {
        let w = 2 * self.k + 1;
        let inside = |v: usize| {
            let (x, y) = self.coord(v);
            x >= (a - 1) * w + 2 && x < a * w && y >= (b - 1) * w + 2 && y < b * w
        };
        self.host.edges().find(|&(u, v)| inside(u) && inside(v) && self.is_jump(u, v))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DichotomyResult {
    /// Induced `k x k` grid model inside the jump-free interior of `block`.
    InducedGrid { block: (usize, usize), model: MinorModel },
    /// `K_t` minor model built from one jump per block.
    CliqueMinor { model: MinorModel },
}

impl DichotomyResult {
    pub fn model(&self) -> &MinorModel {
        match self {
            DichotomyResult::InducedGrid { model, .. } | DichotomyResult::CliqueMinor { model } => model,
        }
    }

    pub fn kind(&self) -> ModelKind {
        match self {
            DichotomyResult::InducedGrid { .. } => ModelKind::Induced,
            DichotomyResult::CliqueMinor { .. } => ModelKind::Minor,
        }
    }
}

/// Scans blocks in row-major order. A jump-free interior yields the parity
/// pattern of vertical and horizontal triples as an induced `k x k` grid;
/// otherwise every block is contracted to `K_4` on its corners, the blocks
/// glue into `P_{t+1} ⊠ P_{t+1}`, and `K_t` comes from the strong-grid clique.
pub fn grid_dichotomy(input: &DichotomyInput) -> Result<DichotomyResult> {
    input.validate()?;
    let t = input.t;
    let mut jumps = Vec::with_capacity(t * t);
    for a in 1..=t {
        for b in 1..=t {
            match input.block_jump(a, b) {
                None => {
                    let model = induced_grid_in_block(input, a, b);
                    validate_model(&input.host, &model, ModelKind::Induced)?;
                    return Ok(DichotomyResult::InducedGrid { block: (a, b), model });
                }
                Some(e) => jumps.push(e),
            }
        }
    }
    let strong = strong_grid_from_blocks(input, &jumps);
    validate_model(&input.host, &strong, ModelKind::Minor)?;
    // 2s is whichever of t, t + 1 is even
    let s = t.div_ceil(2);
    let (_, kmodel) = k2s_in_strong_grid(s)?;
    // P_{2s} ⊠ P_{2s} sits in the corner of P_{t+1} ⊠ P_{t+1}
    let side = t + 1;
    let sets = kmodel.branch_sets[..t]
        .iter()
        .map(|set| set.iter().map(|&v| (v / (2 * s)) * side + v % (2 * s)).collect())
        .collect();
    let inner = MinorModel::new(Graph::complete(t), sets);
    let model = compose_models(&strong, &inner)?;
    validate_model(&input.host, &model, ModelKind::Minor)?;
    Ok(DichotomyResult::CliqueMinor { model })
}

fn induced_grid_in_block(input: &DichotomyInput, a: usize, b: usize) -> MinorModel {
    let k = input.k;
    let w = 2 * k + 1;
    let (ox, oy) = ((a - 1) * w, (b - 1) * w);
    let inside = |c: usize| (2..w).contains(&c);
    let mut sets = Vec::with_capacity(k * k);
    for i in 1..=k {
        for j in 1..=k {
            let cells: Vec<(usize, usize)> = if (i + j) % 2 == 0 {
                (2 * j - 1..=2 * j + 1).map(|y| (2 * i, y)).collect()
            } else {
                (2 * i - 1..=2 * i + 1).map(|x| (x, 2 * j)).collect()
            };
            sets.push(
                cells
                    .into_iter()
                    .filter(|&(x, y)| inside(x) && inside(y))
                    .map(|(x, y)| input.vertex(ox + x, oy + y))
                    .collect(),
            );
        }
    }
    let (grid, _) = make_grid(k, k).expect("k is positive");
    MinorModel::new(grid, sets)
}

/// Splits block `(a, b)` into four connected corner pieces that are pairwise
/// adjacent, using the jump edge `e`. Returned in the order bottom-left
/// `(1,1)`, top-left `(1,w)`, bottom-right `(w,1)`, top-right `(w,w)`, in
/// block-local coordinates.
fn corner_pieces(k: usize, jump: ((usize, usize), (usize, usize))) -> [Vec<(usize, usize)>; 4] {
    let w = 2 * k + 1;
    let ((mut x1, mut y1), (mut x2, mut y2)) = jump;
    let transpose = x1.abs_diff(x2) < 2;
    if transpose {
        std::mem::swap(&mut x1, &mut y1);
        std::mem::swap(&mut x2, &mut y2);
    }
    if x1 > x2 {
        std::mem::swap(&mut x1, &mut x2);
        std::mem::swap(&mut y1, &mut y2);
    }
    let x = x1 + 1;
    let mut bl: Vec<(usize, usize)> = (1..=y1).map(|y| (1, y)).collect();
    bl.extend((2..=x1).map(|xx| (xx, y1)));
    let mut tl: Vec<(usize, usize)> = (y1 + 1..=w).map(|y| (1, y)).collect();
    tl.extend((2..=x).map(|xx| (xx, w)));
    let mut br: Vec<(usize, usize)> = (1..w).map(|y| (x, y)).collect();
    br.extend((x + 1..=w).map(|xx| (xx, 1)));
    br.extend((x + 1..x2).map(|xx| (xx, y2)));
    let mut tr: Vec<(usize, usize)> = (x2..=w).map(|xx| (xx, y2)).collect();
    tr.extend((y2 + 1..=w).map(|y| (w, y)));
    tr.extend((x + 1..w).map(|xx| (xx, w)));
    let mut out = [bl, tl, br, tr];
    if transpose {
        for piece in &mut out {
            for c in piece.iter_mut() {
                *c = (c.1, c.0);
            }
        }
        // transposing swaps the top-left and bottom-right corners
        out.swap(1, 2);
    }
    out
}

/// Model of `P_{t+1} ⊠ P_{t+1}` whose point `(A, B)`, `0 <= A, B <= t`,
/// collects the block corners meeting there. Vertex `A * (t+1) + B`.
fn strong_grid_from_blocks(input: &DichotomyInput, jumps: &[(usize, usize)]) -> MinorModel {
    let (k, t) = (input.k, input.t);
    let w = 2 * k + 1;
    let side = t + 1;
    let mut sets = vec![Vec::new(); side * side];
    for a in 1..=t {
        for b in 1..=t {
            let (u, v) = jumps[(a - 1) * t + (b - 1)];
            let local = |z: usize| {
                let (x, y) = input.coord(z);
                (x - (a - 1) * w, y - (b - 1) * w)
            };
            let pieces = corner_pieces(k, (local(u), local(v)));
            // bl -> point (a-1, b-1), tl -> (a-1, b), br -> (a, b-1), tr -> (a, b)
            let points = [(a - 1, b - 1), (a - 1, b), (a, b - 1), (a, b)];
            for (piece, (pa, pb)) in pieces.iter().zip(points) {
                sets[pa * side + pb].extend(
                    piece
                        .iter()
                        .map(|&(x, y)| input.vertex((a - 1) * w + x, (b - 1) * w + y)),
                );
            }
        }
    }
    let (strong, _) = make_strong_grid(side, side).expect("t is positive");
    MinorModel::new(strong, sets)
}

/// The sets `Q_1..Q_s, R_1..R_s` in `P_{2s} ⊠ P_{2s}`, pairwise disjoint,
/// pairwise adjacent, each inducing a path.
pub fn k2s_in_strong_grid(s: usize) -> Result<(Graph, MinorModel)> {
    if s == 0 {
        return Err(Error::invalid("s must be positive"));
    }
    let n = 2 * s;
    let (g, _) = make_strong_grid(n, n)?;
    let at = |x: usize, y: usize| (x - 1) * n + (y - 1);
    let mut sets = Vec::with_capacity(n);
    for i in 1..=s {
        let mut q: Vec<usize> = (1..2 * i).map(|x| at(x, 2 * i - x)).collect();
        q.extend((2 * i..=n).map(|x| at(x, x + 1 - 2 * i)));
        sets.push(q);
    }
    for i in 1..=s {
        let mut r: Vec<usize> = (1..2 * i).map(|x| at(x, x + n + 1 - 2 * i)).collect();
        r.extend((2 * i..=n).map(|x| at(x, n + 2 * i - x)));
        sets.push(r);
    }
    let m = MinorModel::new(Graph::complete(n), sets);
    validate_model(&g, &m, ModelKind::Minor)?;
    Ok((g, m))
}

/// Cells of the `2t x (4t-1)` grid kept by the extraction, 1-based.
pub fn extraction_pattern(t: usize) -> Vec<(usize, usize)> {
    let (rows, cols) = (2 * t, 4 * t - 1);
    let mut cells = Vec::new();
    for i in 1..=rows {
        for j in 1..=cols {
            let keep = j == 1
                || j == cols
                || i % 2 == 1
                || (i % 4 == 2 && j % 4 == 3)
                || (i % 4 == 0 && j % 4 == 1);
            if keep {
                cells.push((i, j));
            }
        }
    }
    cells
}

/// Output of [`extract_planar_high_tw`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlanarExtraction {
    /// Sorted vertex set inducing the planar subgraph.
    pub vertices: Vec<usize>,
    /// Induced model of the pattern graph on [`extraction_pattern`] cells,
    /// shrunk to inclusion-minimal branch sets.
    pub model: MinorModel,
}

/// From an induced model of the `2t x (4t-1)` grid (grid vertex
/// `(i-1)(4t-1) + (j-1)` for cell `(i, j)`), keeps the branch sets of the
/// extraction pattern, shrinks them lowest vertex first while the model
/// survives, and checks that the result is planar with treewidth at least `t`.
pub fn extract_planar_high_tw(g: &Graph, m: &MinorModel, t: usize, limits: &Limits) -> Result<PlanarExtraction> {
    if t == 0 {
        return Err(Error::invalid("t must be positive"));
    }
    check_cap("planar extraction t", t, limits.planar_extraction_t)?;
    let cols = 4 * t - 1;
    let (grid, _) = make_grid(2 * t, cols)?;
    if m.pattern != grid {
        return Err(Error::invalid(format!("model pattern is not the {}x{} grid", 2 * t, cols)));
    }
    validate_model(g, m, ModelKind::Induced)?;
    let cells: Vec<usize> = extraction_pattern(t)
        .into_iter()
        .map(|(i, j)| (i - 1) * cols + (j - 1))
        .collect();
    let pattern = grid.induced_subgraph(&cells);
    let mut sets: Vec<Vec<usize>> = cells.iter().map(|&c| m.branch_sets[c].clone()).collect();

    let mut changed = true;
    while changed {
        changed = false;
        for p in 0..sets.len() {
            let mut i = 0;
            while i < sets[p].len() {
                if sets[p].len() == 1 {
                    break;
                }
                let removed = sets[p].remove(i);
                let ok = g.is_connected_set(&sets[p])
                    && pattern
                        .neighbors(p)
                        .iter()
                        .all(|&q| sets[p].iter().any(|&u| sets[q].iter().any(|&v| g.has_edge(u, v))));
                if ok {
                    changed = true;
                } else {
                    sets[p].insert(i, removed);
                    i += 1;
                }
            }
        }
    }
    let model = MinorModel::new(pattern, sets);
    validate_model(g, &model, ModelKind::Induced)?;
    let vertices = model.covered();
    let sub = g.induced_subgraph(&vertices);
    if !is_planar_wagner(&sub, limits)? {
        return Err(Error::Structural(format!("extracted subgraph on {vertices:?} is not planar")));
    }
    if !treewidth_at_least(&sub, t, limits)? {
        return Err(Error::Structural(format!("extracted subgraph on {vertices:?} has treewidth below {t}")));
    }
    Ok(PlanarExtraction { vertices, model })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::treewidth::treewidth_exact;

    fn grid_input(k: usize, t: usize, extra: &[((usize, usize), (usize, usize))]) -> DichotomyInput {
        let n = t * (2 * k + 1);
        let (g, map) = make_grid(n, n).unwrap();
        let edges = extra.iter().map(|&((a, b), (c, d))| (map.vertex(a - 1, b - 1), map.vertex(c - 1, d - 1)));
        DichotomyInput::new(g.with_edges(edges), k, t).unwrap()
    }

    #[test]
    fn pure_grid_gives_induced_grid() {
        let input = grid_input(2, 2, &[]);
        let out = grid_dichotomy(&input).unwrap();
        match &out {
            DichotomyResult::InducedGrid { block, model } => {
                assert_eq!(*block, (1, 1));
                assert_eq!(model.pattern.n(), 4);
            }
            _ => panic!("expected the induced grid branch"),
        }
    }

    #[test]
    fn jumps_everywhere_give_clique() {
        // interiors of the four 5x5 blocks are [2,4] and [7,9] per axis
        let mut jumps = Vec::new();
        for a in 0..2 {
            for b in 0..2 {
                let (ox, oy) = (5 * a, 5 * b);
                jumps.push(((ox + 2, oy + 3), (ox + 4, oy + 2)));
            }
        }
        // one transposed jump
        jumps[3] = ((7, 7), (8, 9));
        let input = grid_input(2, 2, &jumps);
        let out = grid_dichotomy(&input).unwrap();
        assert!(matches!(out, DichotomyResult::CliqueMinor { .. }));
        assert_eq!(out.model().pattern, Graph::complete(2));
        validate_model(&input.host, out.model(), ModelKind::Minor).unwrap();
    }

    #[test]
    fn every_jump_position_gives_valid_corner_pieces() {
        for k in 2..=3usize {
            let w = 2 * k + 1;
            for x1 in 2..w {
                for y1 in 2..w {
                    for x2 in 2..w {
                        for y2 in 2..w {
                            if x1.abs_diff(x2) < 2 && y1.abs_diff(y2) < 2 {
                                continue;
                            }
                            let (g, map) = make_grid(w, w).unwrap();
                            let (u, v) = (map.vertex(x1 - 1, y1 - 1), map.vertex(x2 - 1, y2 - 1));
                            let g = g.with_edges([(u, v)]);
                            let pieces = corner_pieces(k, ((x1, y1), (x2, y2)));
                            let sets = pieces
                                .iter()
                                .map(|p| p.iter().map(|&(x, y)| map.vertex(x - 1, y - 1)).collect())
                                .collect();
                            let m = MinorModel::new(Graph::complete(4), sets);
                            validate_model(&g, &m, ModelKind::Minor).unwrap();
                            let corners = [(1, 1), (1, w), (w, 1), (w, w)];
                            for (p, c) in pieces.iter().zip(corners) {
                                assert!(p.contains(&c));
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn odd_t_uses_t_plus_one() {
        let mut jumps = Vec::new();
        for a in 0..3 {
            for b in 0..3 {
                jumps.push(((5 * a + 2, 5 * b + 2), (5 * a + 4, 5 * b + 4)));
            }
        }
        let input = grid_input(2, 3, &jumps);
        let out = grid_dichotomy(&input).unwrap();
        assert_eq!(out.model().pattern, Graph::complete(3));
    }

    #[test]
    fn k2s_examples() {
        let (_, m) = k2s_in_strong_grid(1).unwrap();
        // Q1 = {(1,1),(2,1)}, R1 = {(1,2),(2,2)} with vertex (x-1)*2 + (y-1)
        assert_eq!(m.branch_sets, vec![vec![0, 2], vec![1, 3]]);
        for s in 1..=5 {
            let (g, m) = k2s_in_strong_grid(s).unwrap();
            for set in &m.branch_sets {
                let h = g.induced_subgraph(set);
                assert_eq!(h.m(), set.len() - 1);
                assert!(h.max_degree() <= 2 && h.is_connected());
            }
        }
    }

    #[test]
    fn extraction_on_plain_grid() {
        let (g, _) = make_grid(2, 3).unwrap();
        let out = extract_planar_high_tw(&g, &MinorModel::identity(&g), 1, &Limits::default()).unwrap();
        assert!(treewidth_exact(&g.induced_subgraph(&out.vertices)).unwrap() >= 1);

        let (g, _) = make_grid(4, 7).unwrap();
        let out = extract_planar_high_tw(&g, &MinorModel::identity(&g), 2, &Limits::default()).unwrap();
        assert_eq!(out.vertices.len(), 20);
        let sub = g.induced_subgraph(&out.vertices);
        assert_eq!(sub.m(), 21);
        assert!(sub.max_degree() <= 3);
        assert!(treewidth_exact(&sub).unwrap() >= 2);
    }

    #[test]
    fn extraction_shrinks_doubled_branch_sets() {
        // 4x14 grid: pattern cell (i, j) owns columns 2j-2, 2j-1
        let (g, map) = make_grid(4, 14).unwrap();
        let (pattern, _) = make_grid(4, 7).unwrap();
        let sets = (0..4)
            .flat_map(|i| (0..7).map(move |j| (i, j)))
            .map(|(i, j)| vec![map.vertex(i, 2 * j), map.vertex(i, 2 * j + 1)])
            .collect();
        let m = MinorModel::new(pattern, sets);
        let out = extract_planar_high_tw(&g, &m, 2, &Limits::default()).unwrap();
        let before: usize = extraction_pattern(2).len() * 2;
        assert!(out.vertices.len() < before);
        assert!(out.model.branch_sets.iter().all(|s| s.len() <= 2));
    }

    #[test]
    fn caps() {
        let (g, _) = make_grid(6, 11).unwrap();
        let err = extract_planar_high_tw(&g, &MinorModel::identity(&g), 3, &Limits::default()).unwrap_err();
        assert!(matches!(err, Error::ResourceLimit { .. }));
    }
}
