//! Simple undirected graphs on dense vertex indices, cyclic orders, and the
//! generators used throughout the crate (grids, strong products, path powers,
//! subdivisions).

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

/// A finite simple graph on vertices `0..n`.
///
/// Neighbour lists are kept sorted; a packed bit matrix answers pair queries in
/// constant time. Graphs are values: every edit produces a new graph.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<Vec<usize>>,
    words: usize,
    bits: Vec<u64>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges().collect::<Vec<_>>())
    }
}

impl Graph {
    /// Builds a graph, rejecting loops, out-of-range endpoints and repeated edges.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Graph> {
        let mut b = Builder::new(n);
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::invalid(format!("edge {u}-{v} out of range for n={n}")));
            }
            if u == v {
                return Err(Error::invalid(format!("self-loop at {u}")));
            }
            if b.has(u, v) {
                return Err(Error::invalid(format!("parallel edge {u}-{v}")));
            }
            b.set(u, v);
        }
        Ok(b.build())
    }

    /// Builds a graph from edges, ignoring repeats. Panics on loops or
    /// out-of-range endpoints; meant for internal constructions.
    pub(crate) fn from_edges_dedup(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Graph {
        let mut b = Builder::new(n);
        for (u, v) in edges {
            assert!(u < n && v < n && u != v, "bad edge {u}-{v} for n={n}");
            b.set(u, v);
        }
        b.build()
    }

    pub fn from_fn(n: usize, mut adjacent: impl FnMut(usize, usize) -> bool) -> Graph {
        let mut b = Builder::new(n);
        for u in 0..n {
            for v in u + 1..n {
                if adjacent(u, v) {
                    b.set(u, v);
                }
            }
        }
        b.build()
    }

    pub fn empty(n: usize) -> Graph {
        Builder::new(n).build()
    }

    pub fn complete(n: usize) -> Graph {
        Graph::from_fn(n, |_, _| true)
    }

    pub fn path(n: usize) -> Graph {
        Graph::from_fn(n, |u, v| v == u + 1)
    }

    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3, "cycle needs at least 3 vertices");
        Graph::from_fn(n, |u, v| v == u + 1 || (u == 0 && v == n - 1))
    }

    /// `K_{a,b}` with parts `0..a` and `a..a+b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Graph {
        Graph::from_fn(a + b, |u, v| (u < a) != (v < a))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && (self.bits[u * self.words + v / 64] >> (v % 64)) & 1 == 1
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// Subgraph induced by `vertices`; vertex `i` of the result is `vertices[i]`.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Graph {
        let mut pos = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            pos[v] = i;
        }
        let mut b = Builder::new(vertices.len());
        for (i, &v) in vertices.iter().enumerate() {
            for &w in &self.adj[v] {
                let j = pos[w];
                if j != usize::MAX && i < j {
                    b.set(i, j);
                }
            }
        }
        b.build()
    }

    pub fn complement(&self) -> Graph {
        Graph::from_fn(self.n, |u, v| !self.has_edge(u, v))
    }

    /// Returns a copy with the listed vertex pairs toggled.
    pub fn toggle_pairs(&self, pairs: impl IntoIterator<Item = (usize, usize)>) -> Graph {
        let mut b = Builder::from_graph(self);
        for (u, v) in pairs {
            b.toggle(u, v);
        }
        b.build()
    }

    pub fn with_edges(&self, extra: impl IntoIterator<Item = (usize, usize)>) -> Graph {
        let mut b = Builder::from_graph(self);
        for (u, v) in extra {
            assert!(u != v);
            b.set(u, v);
        }
        b.build()
    }

    /// Vertex sets of the connected components of the subgraph induced by
    /// `within` (all vertices when `None`), each sorted, ordered by minimum.
    pub fn components(&self, within: Option<&[usize]>) -> Vec<Vec<usize>> {
        let mut allowed = vec![within.is_none(); self.n];
        if let Some(w) = within {
            for &v in w {
                allowed[v] = true;
            }
        }
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if !allowed[s] || seen[s] {
                continue;
            }
            let mut comp = vec![s];
            seen[s] = true;
            let mut i = 0;
            while i < comp.len() {
                let v = comp[i];
                i += 1;
                for &w in &self.adj[v] {
                    if allowed[w] && !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected_set(&self, set: &[usize]) -> bool {
        !set.is_empty() && self.components(Some(set)).len() == 1
    }

    pub fn is_connected(&self) -> bool {
        self.n == 0 || self.components(None).len() == 1
    }

    /// Neighbour masks for graphs with at most 128 vertices.
    pub fn masks(&self) -> Vec<u128> {
        assert!(self.n <= 128, "mask view needs n <= 128");
        self.adj
            .iter()
            .map(|ns| ns.iter().fold(0u128, |m, &v| m | (1u128 << v)))
            .collect()
    }

    /// True if `map` (pattern vertex -> host vertex) is an isomorphism from
    /// `self` onto `other`.
    pub fn is_isomorphism(&self, other: &Graph, map: &[usize]) -> bool {
        if self.n != other.n || map.len() != self.n || self.m() != other.m() {
            return false;
        }
        let mut hit = vec![false; other.n];
        for &v in map {
            if v >= other.n || hit[v] {
                return false;
            }
            hit[v] = true;
        }
        self.edges().all(|(u, v)| other.has_edge(map[u], map[v]))
    }

    pub fn is_bipartite(&self) -> bool {
        let mut side = vec![u8::MAX; self.n];
        for s in 0..self.n {
            if side[s] != u8::MAX {
                continue;
            }
            side[s] = 0;
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                for &w in &self.adj[v] {
                    if side[w] == u8::MAX {
                        side[w] = 1 - side[v];
                        stack.push(w);
                    } else if side[w] == side[v] {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn is_triangle_free(&self) -> bool {
        self.edges()
            .all(|(u, v)| self.adj[u].iter().all(|&w| w == v || !self.has_edge(v, w)))
    }
}

/// Mutable adjacency used while constructing a [`Graph`].
pub(crate) struct Builder {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl Builder {
    pub(crate) fn new(n: usize) -> Builder {
        let words = n.div_ceil(64).max(1);
        Builder {
            n,
            words,
            bits: vec![0; n * words],
        }
    }

    pub(crate) fn from_graph(g: &Graph) -> Builder {
        Builder {
            n: g.n,
            words: g.words,
            bits: g.bits.clone(),
        }
    }

    pub(crate) fn has(&self, u: usize, v: usize) -> bool {
        (self.bits[u * self.words + v / 64] >> (v % 64)) & 1 == 1
    }

    pub(crate) fn set(&mut self, u: usize, v: usize) {
        self.bits[u * self.words + v / 64] |= 1 << (v % 64);
        self.bits[v * self.words + u / 64] |= 1 << (u % 64);
    }

    pub(crate) fn toggle(&mut self, u: usize, v: usize) {
        assert!(u != v && u < self.n && v < self.n);
        self.bits[u * self.words + v / 64] ^= 1 << (v % 64);
        self.bits[v * self.words + u / 64] ^= 1 << (u % 64);
    }

    pub(crate) fn build(self) -> Graph {
        let mut adj = vec![Vec::new(); self.n];
        for (u, ns) in adj.iter_mut().enumerate() {
            for w in 0..self.words {
                let mut word = self.bits[u * self.words + w];
                while word != 0 {
                    let b = word.trailing_zeros() as usize;
                    ns.push(w * 64 + b);
                    word &= word - 1;
                }
            }
        }
        Graph {
            n: self.n,
            adj,
            words: self.words,
            bits: self.bits,
        }
    }
}

/// Row-major coordinates of an `rows x cols` grid; vertex `r * cols + c` sits
/// at `(r, c)` with both coordinates 0-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GridCoordMap {
    pub rows: usize,
    pub cols: usize,
}

impl GridCoordMap {
    pub fn vertex(&self, r: usize, c: usize) -> usize {
        debug_assert!(r < self.rows && c < self.cols);
        r * self.cols + c
    }

    pub fn coord(&self, v: usize) -> (usize, usize) {
        (v / self.cols, v % self.cols)
    }

    pub fn len(&self) -> usize {
        self.rows * self.cols
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

fn check_dims(m: usize, n: usize) -> Result<GridCoordMap> {
    if m == 0 || n == 0 {
        return Err(Error::invalid(format!("grid dimensions must be positive, got {m}x{n}")));
    }
    Ok(GridCoordMap { rows: m, cols: n })
}

/// The `(m x n)`-grid.
pub fn make_grid(m: usize, n: usize) -> Result<(Graph, GridCoordMap)> {
    let map = check_dims(m, n)?;
    let g = Graph::from_fn(map.len(), |u, v| {
        let (a, b) = (map.coord(u), map.coord(v));
        a.0.abs_diff(b.0) + a.1.abs_diff(b.1) == 1
    });
    Ok((g, map))
}

/// The strong product `P_m ⊠ P_n` (king-move adjacency).
pub fn make_strong_grid(m: usize, n: usize) -> Result<(Graph, GridCoordMap)> {
    let map = check_dims(m, n)?;
    let g = Graph::from_fn(map.len(), |u, v| {
        let (a, b) = (map.coord(u), map.coord(v));
        a.0.abs_diff(b.0) <= 1 && a.1.abs_diff(b.1) <= 1
    });
    Ok((g, map))
}

/// The `t`-th power of the path on `n` vertices.
pub fn make_path_power(n: usize, t: usize) -> Result<Graph> {
    if n == 0 || t == 0 {
        return Err(Error::invalid("path power needs n >= 1 and t >= 1"));
    }
    Ok(Graph::from_fn(n, |u, v| v - u <= t))
}

/// A subdivision together with its correspondence to the base graph.
///
/// Base vertices keep their indices; subdivision vertices are appended in edge
/// order. `paths[i]` lists the internal vertices of the path replacing
/// `edges[i] = (u, v)`, ordered from `u` to `v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subdivision {
    pub base: Graph,
    pub graph: Graph,
    pub edges: Vec<(usize, usize)>,
    pub paths: Vec<Vec<usize>>,
}

impl Subdivision {
    /// Every edge replaced by a path of at least two edges.
    pub fn is_proper(&self) -> bool {
        self.paths.iter().all(|p| !p.is_empty())
    }

    pub fn path_of(&self, u: usize, v: usize) -> Option<&[usize]> {
        let (a, b) = (u.min(v), u.max(v));
        self.edges
            .binary_search(&(a, b))
            .ok()
            .map(|i| self.paths[i].as_slice())
    }

    /// Checks that `graph` really is the subdivision described by `paths`.
    pub fn validate(&self) -> Result<()> {
        let n0 = self.base.n();
        if self.edges != self.base.edges().collect::<Vec<_>>() || self.paths.len() != self.edges.len() {
            return Err(Error::invalid("subdivision correspondence does not cover the base edges"));
        }
        let internal: usize = self.paths.iter().map(Vec::len).sum();
        if self.graph.n() != n0 + internal {
            return Err(Error::invalid("subdivision vertex count mismatch"));
        }
        let mut owner = vec![false; self.graph.n()];
        let mut m = 0;
        for (&(u, v), p) in self.edges.iter().zip(&self.paths) {
            let mut chain = vec![u];
            chain.extend_from_slice(p);
            chain.push(v);
            for &x in p {
                if x < n0 || owner[x] {
                    return Err(Error::invalid(format!("subdivision vertex {x} reused or original")));
                }
                owner[x] = true;
                if self.graph.degree(x) != 2 {
                    return Err(Error::invalid(format!("subdivision vertex {x} has degree != 2")));
                }
            }
            for w in chain.windows(2) {
                if !self.graph.has_edge(w[0], w[1]) {
                    return Err(Error::invalid(format!("path for {u}-{v} broken at {}-{}", w[0], w[1])));
                }
            }
            m += chain.len() - 1;
        }
        if m != self.graph.m() {
            return Err(Error::invalid("subdivision has edges outside the declared paths"));
        }
        Ok(())
    }
}

/// Replaces each edge `uv` of `g` by a path with `lengths(u, v)` edges.
pub fn subdivide(g: &Graph, mut lengths: impl FnMut(usize, usize) -> usize) -> Result<Subdivision> {
    let edges: Vec<_> = g.edges().collect();
    let mut next = g.n();
    let mut paths = Vec::with_capacity(edges.len());
    let mut out_edges = Vec::new();
    for &(u, v) in &edges {
        let len = lengths(u, v);
        if len == 0 {
            return Err(Error::invalid(format!("edge {u}-{v} given length 0")));
        }
        let internal: Vec<usize> = (next..next + len - 1).collect();
        next += len - 1;
        let mut prev = u;
        for &x in &internal {
            out_edges.push((prev, x));
            prev = x;
        }
        out_edges.push((prev, v));
        paths.push(internal);
    }
    let graph = Graph::from_edges_dedup(next, out_edges);
    Ok(Subdivision {
        base: g.clone(),
        graph,
        edges,
        paths,
    })
}

/// Every edge replaced by a path of exactly `len` edges.
pub fn subdivide_uniform(g: &Graph, len: usize) -> Result<Subdivision> {
    subdivide(g, |_, _| len)
}

/// A circular arrangement of distinct labels, stored starting at its minimum.
#[derive(Debug, Clone)]
pub struct CyclicOrder {
    elements: Vec<usize>,
    position: HashMap<usize, usize>,
}

impl PartialEq for CyclicOrder {
    fn eq(&self, other: &Self) -> bool {
        self.elements == other.elements
    }
}

impl Eq for CyclicOrder {}

impl CyclicOrder {
    pub fn new(elements: Vec<usize>) -> Result<CyclicOrder> {
        let mut position = HashMap::with_capacity(elements.len());
        for (i, &e) in elements.iter().enumerate() {
            if position.insert(e, i).is_some() {
                return Err(Error::invalid(format!("label {e} repeated in cyclic order")));
            }
        }
        let mut elements = elements;
        if let Some(start) = elements.iter().enumerate().min_by_key(|&(_, &e)| e).map(|(i, _)| i) {
            elements.rotate_left(start);
        }
        let position = elements.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        Ok(CyclicOrder { elements, position })
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn position(&self, label: usize) -> Option<usize> {
        self.position.get(&label).copied()
    }

    fn pos(&self, label: usize) -> Result<usize> {
        self.position(label)
            .ok_or_else(|| Error::invalid(format!("label {label} not in cyclic order")))
    }

    /// Whether `(a, b, x)` lies in the ternary relation: walking forward from
    /// `a`, `b` comes before `x`.
    pub fn between(&self, a: usize, b: usize, x: usize) -> Result<bool> {
        if a == b || b == x || a == x {
            return Err(Error::invalid(format!("labels {a},{b},{x} must be distinct")));
        }
        let (pa, pb, px) = (self.pos(a)?, self.pos(b)?, self.pos(x)?);
        Ok(self.forward(pa, pb) < self.forward(pa, px))
    }

    /// Unchecked positional variant of [`CyclicOrder::between`].
    pub(crate) fn between_pos(&self, pa: usize, pb: usize, px: usize) -> bool {
        self.forward(pa, pb) < self.forward(pa, px)
    }

    fn forward(&self, from: usize, to: usize) -> usize {
        (to + self.elements.len() - from) % self.elements.len()
    }

    /// Whether the tuple appears in this cyclic order, i.e. every increasing
    /// index triple is in the relation.
    pub fn contains_tuple(&self, tuple: &[usize]) -> Result<bool> {
        if tuple.len() < 3 {
            return Err(Error::invalid("tuples need at least three labels"));
        }
        let pos: Vec<usize> = tuple.iter().map(|&l| self.pos(l)).collect::<Result<_>>()?;
        let mut seen = std::collections::HashSet::new();
        if !pos.iter().all(|p| seen.insert(*p)) {
            return Err(Error::invalid("tuple labels must be distinct"));
        }
        let d: Vec<usize> = pos.iter().map(|&p| self.forward(pos[0], p)).collect();
        Ok(d.windows(2).all(|w| w[0] < w[1]))
    }

    /// Two chords `{a, b}` and `{c, d}` with distinct endpoints cross when
    /// exactly one of `c`, `d` lies on the forward arc from `a` to `b`.
    pub fn chords_cross(&self, a: usize, b: usize, c: usize, d: usize) -> Result<bool> {
        let (pa, pb, pc, pd) = (self.pos(a)?, self.pos(b)?, self.pos(c)?, self.pos(d)?);
        let mut all = [pa, pb, pc, pd];
        all.sort_unstable();
        if all.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::invalid("chords must be independent"));
        }
        Ok(self.between_pos(pa, pc, pb) != self.between_pos(pa, pd, pb))
    }
}

/// Free-function form of [`CyclicOrder::between`].
pub fn cyclic_between(c: &CyclicOrder, a: usize, b: usize, x: usize) -> Result<bool> {
    c.between(a, b, x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_examples() {
        let (g, _) = make_grid(1, 1).unwrap();
        assert_eq!((g.n(), g.m()), (1, 0));
        let (g, _) = make_grid(2, 2).unwrap();
        assert_eq!(g, Graph::cycle(4).induced_subgraph(&[0, 1, 3, 2]));
        let (g, _) = make_grid(3, 3).unwrap();
        assert_eq!((g.n(), g.m()), (9, 12));
        assert!(make_grid(0, 3).is_err());
    }

    #[test]
    fn grid_counts_closed_form() {
        for m in 1..=12 {
            for n in 1..=12 {
                let (g, _) = make_grid(m, n).unwrap();
                assert_eq!(g.n(), m * n);
                assert_eq!(g.m(), m * (n - 1) + n * (m - 1));
            }
        }
    }

    #[test]
    fn strong_grid_examples() {
        assert_eq!(make_strong_grid(2, 2).unwrap().0, Graph::complete(4));
        // pairs within king distance, counted directly
        let mut count = 0;
        for a in 0..9usize {
            for b in a + 1..9usize {
                if (a / 3).abs_diff(b / 3) <= 1 && (a % 3).abs_diff(b % 3) <= 1 {
                    count += 1;
                }
            }
        }
        assert_eq!(count, 20);
        assert_eq!(make_strong_grid(3, 3).unwrap().0.m(), 20);
        assert_eq!(make_strong_grid(1, 6).unwrap().0, Graph::path(6));
        assert!(make_strong_grid(2, 0).is_err());
    }

    #[test]
    fn path_power_examples() {
        assert_eq!(make_path_power(5, 1).unwrap(), Graph::path(5));
        assert_eq!(make_path_power(4, 3).unwrap(), Graph::complete(4));
        assert!(make_path_power(0, 2).is_err());
    }

    #[test]
    fn subdivision_examples() {
        let s = subdivide_uniform(&Graph::complete(3), 2).unwrap();
        assert_eq!(s.graph.n(), 6);
        assert!(s.graph.components(None).len() == 1 && s.graph.max_degree() == 2);
        assert!(s.is_proper());
        s.validate().unwrap();

        let g = Graph::cycle(5);
        let s = subdivide_uniform(&g, 1).unwrap();
        assert_eq!(s.graph, g);
        assert!(!s.is_proper());

        let star = Graph::complete_bipartite(1, 3);
        let s = subdivide_uniform(&star, 3).unwrap();
        assert_eq!(s.graph.n(), 10);
        s.validate().unwrap();

        assert!(subdivide(&star, |_, _| 0).is_err());
    }

    #[test]
    fn proper_subdivision_keeps_branch_degrees() {
        let g = Graph::new(6, [(0, 1), (0, 2), (0, 3), (1, 2), (3, 4), (4, 5), (1, 5)]).unwrap();
        let s = subdivide(&g, |u, v| 2 + (u + v) % 3).unwrap();
        let high: Vec<usize> = (0..s.graph.n()).filter(|&v| s.graph.degree(v) >= 3).collect();
        let expected: Vec<usize> = (0..g.n()).filter(|&v| g.degree(v) >= 3).collect();
        assert_eq!(high, expected);
    }

    #[test]
    fn cyclic_examples() {
        let c = CyclicOrder::new(vec![1, 2, 3, 4]).unwrap();
        assert!(c.between(1, 2, 3).unwrap());
        assert!(!c.between(1, 3, 2).unwrap());
        assert!(c.between(3, 4, 1).unwrap());
        assert!(c.between(1, 1, 2).is_err());
        assert!(c.between(1, 2, 9).is_err());
        assert!(CyclicOrder::new(vec![1, 2, 1]).is_err());
    }

    #[test]
    fn cyclic_order_canonical_start() {
        let a = CyclicOrder::new(vec![3, 4, 1, 2]).unwrap();
        let b = CyclicOrder::new(vec![1, 2, 3, 4]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.elements(), &[1, 2, 3, 4]);
    }
}
