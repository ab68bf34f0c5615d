//! Tree-decompositions, separations and balance, the brute-force balanced
//! separator, and the recursion that turns a separator oracle into a
//! tree-decomposition of bounded width.

use num::rational::Ratio;
use thiserror::Error;

use crate::error::{check_cap, Error, Limits, Result};
use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TdViolation {
    #[error("tree has {nodes} nodes but {bags} bags were given")]
    BagCountMismatch { nodes: usize, bags: usize },
    #[error("decomposition tree is not a tree")]
    NotATree,
    #[error("bag {bag} contains vertex {vertex} outside the host")]
    VertexOutOfRange { bag: usize, vertex: usize },
    #[error("edge {0}-{1} is not covered by any bag")]
    UncoveredEdge(usize, usize),
    #[error("vertex {0} appears in no bag")]
    EmptyTrace(usize),
    #[error("bags containing vertex {0} are not connected in the tree")]
    DisconnectedTrace(usize),
}

/// A tree with one bag per node. Bags are sorted host-vertex lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeDecomposition {
    pub tree: Graph,
    pub bags: Vec<Vec<usize>>,
}

impl TreeDecomposition {
    pub fn new(tree: Graph, mut bags: Vec<Vec<usize>>) -> TreeDecomposition {
        for b in &mut bags {
            b.sort_unstable();
            b.dedup();
        }
        TreeDecomposition { tree, bags }
    }

    /// Single bag holding every vertex of `g`.
    pub fn trivial(g: &Graph) -> TreeDecomposition {
        TreeDecomposition::new(Graph::empty(1), vec![(0..g.n()).collect()])
    }

    /// Max bag size minus one; 0 for a decomposition whose bags are all empty.
    pub fn width(&self) -> usize {
        self.bags.iter().map(Vec::len).max().unwrap_or(0).saturating_sub(1)
    }
}

/// Checks the three decomposition axioms and returns the width.
pub fn td_validate(g: &Graph, td: &TreeDecomposition) -> Result<usize> {
    let nodes = td.tree.n();
    if nodes != td.bags.len() {
        return Err(TdViolation::BagCountMismatch {
            nodes,
            bags: td.bags.len(),
        }
        .into());
    }
    if nodes == 0 {
        if g.n() == 0 {
            return Ok(0);
        }
        return Err(TdViolation::EmptyTrace(0).into());
    }
    if td.tree.m() + 1 != nodes || !td.tree.is_connected() {
        return Err(TdViolation::NotATree.into());
    }
    let mut trace: Vec<Vec<usize>> = vec![Vec::new(); g.n()];
    for (i, bag) in td.bags.iter().enumerate() {
        for &v in bag {
            if v >= g.n() {
                return Err(TdViolation::VertexOutOfRange { bag: i, vertex: v }.into());
            }
            trace[v].push(i);
        }
    }
    for (v, nodes_of_v) in trace.iter().enumerate() {
        if nodes_of_v.is_empty() {
            return Err(TdViolation::EmptyTrace(v).into());
        }
        if !td.tree.is_connected_set(nodes_of_v) {
            return Err(TdViolation::DisconnectedTrace(v).into());
        }
    }
    for (u, v) in g.edges() {
        let covered = trace[u].iter().any(|&i| td.bags[i].binary_search(&v).is_ok());
        if !covered {
            return Err(TdViolation::UncoveredEdge(u, v).into());
        }
    }
    Ok(td.width())
}

/// A pair of vertex sets `(A, B)`, both sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Separation {
    pub a: Vec<usize>,
    pub b: Vec<usize>,
}

impl Separation {
    pub fn new(mut a: Vec<usize>, mut b: Vec<usize>) -> Separation {
        a.sort_unstable();
        a.dedup();
        b.sort_unstable();
        b.dedup();
        Separation { a, b }
    }

    pub fn separator(&self) -> Vec<usize> {
        self.a
            .iter()
            .copied()
            .filter(|v| self.b.binary_search(v).is_ok())
            .collect()
    }

    pub fn order(&self) -> usize {
        self.separator().len()
    }

    /// `A \ B`.
    pub fn a_only(&self) -> Vec<usize> {
        self.a.iter().copied().filter(|v| self.b.binary_search(v).is_err()).collect()
    }

    /// `B \ A`.
    pub fn b_only(&self) -> Vec<usize> {
        self.b.iter().copied().filter(|v| self.a.binary_search(v).is_err()).collect()
    }

    /// Checks `A ∪ B = V` and that no edge joins `A \ B` to `B \ A`.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        let mut side = vec![0u8; g.n()];
        for (bit, set) in [(1u8, &self.a), (2u8, &self.b)] {
            for &v in set {
                if v >= g.n() {
                    return Err(Error::Separation(format!("vertex {v} outside the graph")));
                }
                side[v] |= bit;
            }
        }
        if let Some(v) = side.iter().position(|&s| s == 0) {
            return Err(Error::Separation(format!("vertex {v} in neither side")));
        }
        for (u, v) in g.edges() {
            if side[u] | side[v] == 3 && side[u] != 3 && side[v] != 3 {
                return Err(Error::Separation(format!("edge {u}-{v} crosses the separation")));
            }
        }
        Ok(())
    }
}

/// Parameters of the separator recursion. `alpha = (c-1)/c` and `q >= c*k + 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BalanceSpec {
    pub alpha: Ratio<u64>,
    pub x: Vec<usize>,
    pub k: usize,
    pub q: usize,
    pub c: usize,
}

impl BalanceSpec {
    pub fn new(c: usize, k: usize, q: usize, x: Vec<usize>) -> Result<BalanceSpec> {
        if c < 2 || k < 1 {
            return Err(Error::invalid(format!("need c >= 2 and k >= 1, got c={c}, k={k}")));
        }
        if q < c * k + 1 {
            return Err(Error::invalid(format!("need q >= c*k + 1 = {}, got q={q}", c * k + 1)));
        }
        if x.len() > q {
            return Err(Error::invalid(format!("|X| = {} exceeds q = {q}", x.len())));
        }
        Ok(BalanceSpec {
            alpha: Ratio::new(c as u64 - 1, c as u64),
            x,
            k,
            q,
            c,
        })
    }
}

fn at_most_alpha(count: usize, total: usize, alpha: Ratio<u64>) -> bool {
    (count as u64) * alpha.denom() <= alpha.numer() * total as u64
}

/// Whether each strict side of `s` holds at most `alpha * |X|` of `X`.
pub fn is_alpha_balanced(g: &Graph, s: &Separation, x: &[usize], alpha: Ratio<u64>) -> Result<bool> {
    s.validate(g)?;
    if let Some(&v) = x.iter().find(|&&v| v >= g.n()) {
        return Err(Error::invalid(format!("X contains {v}, outside the graph")));
    }
    let mut xs = x.to_vec();
    xs.sort_unstable();
    xs.dedup();
    let in_a_only = xs
        .iter()
        .filter(|v| s.a.binary_search(v).is_ok() && s.b.binary_search(v).is_err())
        .count();
    let in_b_only = xs
        .iter()
        .filter(|v| s.b.binary_search(v).is_ok() && s.a.binary_search(v).is_err())
        .count();
    Ok(at_most_alpha(in_a_only, xs.len(), alpha) && at_most_alpha(in_b_only, xs.len(), alpha))
}

/// Brute-force search for an `alpha`-balanced separation for `x` of order at
/// most `k`.
///
/// Separators are tried by size, then lexicographically. For a fixed separator
/// the components of the rest are split between the sides; components without
/// `x`-vertices go to `B`, and among feasible splits the one whose `A` has the
/// lexicographically least characteristic vector is returned.
pub fn exhaustive_balanced_separator(
    g: &Graph,
    x: &[usize],
    alpha: Ratio<u64>,
    k: usize,
    limits: &Limits,
) -> Result<Option<Separation>> {
    check_cap("balanced separator", g.n(), limits.separator.min(63))?;
    let n = g.n();
    let masks: Vec<u64> = g.masks().into_iter().map(|m| m as u64).collect();
    let mut xmask = 0u64;
    for &v in x {
        if v >= n {
            return Err(Error::invalid(format!("X contains {v}, outside the graph")));
        }
        xmask |= 1 << v;
    }
    let xtotal = xmask.count_ones() as u64;
    let cap = (alpha.numer() * xtotal / alpha.denom()) as usize;
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };

    for size in 0..=k.min(n) {
        let mut comb: Vec<usize> = (0..size).collect();
        loop {
            let cmask = comb.iter().fold(0u64, |m, &v| m | (1 << v));
            if let Some(a_extra) = split_components(&masks, full & !cmask, xmask, cap) {
                let a = bits(cmask | a_extra);
                let b = bits(full & !a_extra);
                return Ok(Some(Separation::new(a, b)));
            }
            if !next_combination(&mut comb, n) {
                break;
            }
        }
    }
    Ok(None)
}

fn bits(mut m: u64) -> Vec<usize> {
    let mut out = Vec::with_capacity(m.count_ones() as usize);
    while m != 0 {
        out.push(m.trailing_zeros() as usize);
        m &= m - 1;
    }
    out
}

/// Advances `comb` to the next size-`|comb|` subset of `0..n` in lex order.
pub(crate) fn next_combination(comb: &mut [usize], n: usize) -> bool {
    let k = comb.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if comb[i] < n - k + i {
            comb[i] += 1;
            for j in i + 1..k {
                comb[j] = comb[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Chooses the components of `rest` that go to the `A` side, or `None` when
/// no split keeps both sides within `cap` vertices of `xmask`.
fn split_components(masks: &[u64], rest: u64, xmask: u64, cap: usize) -> Option<u64> {
    let mut comps = Vec::new();
    let mut left = rest;
    while left != 0 {
        let s = left.trailing_zeros() as usize;
        let mut comp = 1u64 << s;
        let mut frontier = comp;
        while frontier != 0 {
            let v = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let new = masks[v] & rest & !comp;
            comp |= new;
            frontier |= new;
        }
        left &= !comp;
        comps.push((comp, (comp & xmask).count_ones() as usize));
    }
    let total: usize = comps.iter().map(|c| c.1).sum();
    if total > 2 * cap {
        return None;
    }
    // reach[i][w]: some subset of comps[i..] has weight exactly w
    let m = comps.len();
    let mut reach = vec![vec![false; total + 1]; m + 1];
    reach[m][0] = true;
    for i in (0..m).rev() {
        let w = comps[i].1;
        for s in 0..=total {
            reach[i][s] = reach[i + 1][s] || (s >= w && reach[i + 1][s - w]);
        }
    }
    let lo = total.saturating_sub(cap);
    let hi = cap.min(total);
    if lo > hi || !(lo..=hi).any(|s| reach[0][s]) {
        return None;
    }
    // comps are ordered by minimum vertex, so preferring B at each step
    // yields the least characteristic vector for A
    let mut taken = 0usize;
    let mut a = 0u64;
    for (i, &(comp, w)) in comps.iter().enumerate() {
        let feasible = |base: usize| (lo..=hi).any(|s| s >= base && reach[i + 1][s - base]);
        if !feasible(taken) {
            a |= comp;
            taken += w;
        }
    }
    Some(a)
}

/// Oracle signature for [`td_from_separator_oracle`]: given an induced
/// subgraph (relabelled `0..n'`) and a set of size `q`, return a balanced
/// separation of small order or `None`.
pub type SeparatorOracle<'a> = dyn Fn(&Graph, &[usize]) -> Result<Option<Separation>> + Sync + 'a;

/// Builds a tree-decomposition of width at most `q + k - 1` from a separator
/// oracle. The root bag contains `spec.x`.
pub fn td_from_separator_oracle(
    g: &Graph,
    spec: &BalanceSpec,
    oracle: &SeparatorOracle<'_>,
) -> Result<TreeDecomposition> {
    if let Some(&v) = spec.x.iter().find(|&&v| v >= g.n()) {
        return Err(Error::invalid(format!("X contains {v}, outside the graph")));
    }
    let mut x = spec.x.clone();
    x.sort_unstable();
    x.dedup();
    let vertices: Vec<usize> = (0..g.n()).collect();
    let piece = recurse(g, spec, oracle, vertices, x)?;
    let mut bags = Vec::new();
    let mut edges = Vec::new();
    piece.flatten(&mut bags, &mut edges, None);
    let tree = Graph::from_edges_dedup(bags.len(), edges);
    Ok(TreeDecomposition::new(tree, bags))
}

struct Piece {
    bag: Vec<usize>,
    children: Vec<Piece>,
}

impl Piece {
    fn flatten(self, bags: &mut Vec<Vec<usize>>, edges: &mut Vec<(usize, usize)>, parent: Option<usize>) {
        let id = bags.len();
        bags.push(self.bag);
        if let Some(p) = parent {
            edges.push((p, id));
        }
        for c in self.children {
            c.flatten(bags, edges, Some(id));
        }
    }
}

fn recurse(
    g: &Graph,
    spec: &BalanceSpec,
    oracle: &SeparatorOracle<'_>,
    vertices: Vec<usize>,
    mut x: Vec<usize>,
) -> Result<Piece> {
    if vertices.len() <= spec.q + spec.k {
        return Ok(Piece {
            bag: vertices,
            children: Vec::new(),
        });
    }
    // pad with the lowest-index vertices not already in X
    for &v in &vertices {
        if x.len() >= spec.q {
            break;
        }
        if x.binary_search(&v).is_err() {
            let at = x.binary_search(&v).unwrap_err();
            x.insert(at, v);
        }
    }
    let h = g.induced_subgraph(&vertices);
    let local_x: Vec<usize> = x.iter().map(|v| vertices.binary_search(v).unwrap()).collect();
    let sep = oracle(&h, &local_x)?.ok_or_else(|| Error::NoSeparator {
        vertices: vertices.clone(),
        set: x.clone(),
    })?;
    sep.validate(&h)
        .map_err(|e| Error::OracleContract(format!("returned an invalid separation: {e}")))?;
    if sep.order() > spec.k {
        return Err(Error::OracleContract(format!(
            "separation of order {} exceeds k = {}",
            sep.order(),
            spec.k
        )));
    }
    if !is_alpha_balanced(&h, &sep, &local_x, spec.alpha)? {
        return Err(Error::OracleContract(format!(
            "separation is not {}-balanced for the given set",
            spec.alpha
        )));
    }
    let to_host = |s: &[usize]| -> Vec<usize> { s.iter().map(|&i| vertices[i]).collect() };
    let a1 = to_host(&sep.a);
    let a2 = to_host(&sep.b);
    let cut = to_host(&sep.separator());
    let child_x = |side: &[usize]| -> Vec<usize> {
        let mut xi: Vec<usize> = x.iter().copied().filter(|v| side.binary_search(v).is_ok()).collect();
        xi.extend_from_slice(&cut);
        xi.sort_unstable();
        xi.dedup();
        xi
    };
    let (x1, x2) = (child_x(&a1), child_x(&a2));
    let (left, right) = rayon::join(
        || recurse(g, spec, oracle, a1, x1),
        || recurse(g, spec, oracle, a2, x2),
    );
    let mut bag = x;
    bag.extend_from_slice(&cut);
    bag.sort_unstable();
    bag.dedup();
    Ok(Piece {
        bag,
        children: vec![left?, right?],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::make_grid;

    fn r(n: u64, d: u64) -> Ratio<u64> {
        Ratio::new(n, d)
    }

    #[test]
    fn validate_examples() {
        let k3 = Graph::complete(3);
        assert_eq!(td_validate(&k3, &TreeDecomposition::trivial(&k3)).unwrap(), 2);

        let p3 = Graph::path(3);
        let td = TreeDecomposition::new(Graph::path(2), vec![vec![0, 1], vec![1, 2]]);
        assert_eq!(td_validate(&p3, &td).unwrap(), 1);

        let c4 = Graph::cycle(4);
        let td = TreeDecomposition::new(Graph::path(2), vec![vec![0, 1], vec![2, 3]]);
        // both 1-2 and 0-3 are uncovered; the first in edge order is named
        assert_eq!(
            td_validate(&c4, &td).unwrap_err(),
            Error::Decomposition(TdViolation::UncoveredEdge(0, 3))
        );
    }

    #[test]
    fn validate_rejects_broken_traces() {
        let p3 = Graph::path(3);
        let td = TreeDecomposition::new(Graph::path(3), vec![vec![0, 1], vec![2], vec![1, 2]]);
        assert_eq!(
            td_validate(&p3, &td).unwrap_err(),
            Error::Decomposition(TdViolation::DisconnectedTrace(1))
        );
        let td = TreeDecomposition::new(Graph::path(2), vec![vec![0, 1], vec![1]]);
        assert_eq!(
            td_validate(&p3, &td).unwrap_err(),
            Error::Decomposition(TdViolation::EmptyTrace(2))
        );
        let td = TreeDecomposition::new(Graph::cycle(3), vec![vec![0, 1, 2]; 3]);
        assert_eq!(td_validate(&p3, &td).unwrap_err(), Error::Decomposition(TdViolation::NotATree));
    }

    #[test]
    fn balance_examples() {
        let g = Graph::path(4);
        let all: Vec<usize> = (0..4).collect();
        let s = Separation::new(all.clone(), all.clone());
        assert!(is_alpha_balanced(&g, &s, &all, r(1, 2)).unwrap());

        let g = Graph::empty(12);
        let x: Vec<usize> = (0..12).collect();
        let s = Separation::new((0..6).collect(), (6..12).collect());
        assert!(is_alpha_balanced(&g, &s, &x, r(1, 2)).unwrap());
        let s = Separation::new((0..10).collect(), (10..12).collect());
        assert!(!is_alpha_balanced(&g, &s, &x, r(3, 4)).unwrap());

        let bad = Separation::new(vec![0, 1], vec![2, 3]);
        assert!(is_alpha_balanced(&Graph::path(4), &bad, &[0], r(1, 2)).is_err());
    }

    #[test]
    fn exhaustive_examples() {
        let lim = Limits::default();
        let g = Graph::empty(6);
        let x: Vec<usize> = (0..6).collect();
        let s = exhaustive_balanced_separator(&g, &x, r(1, 2), 0, &lim).unwrap().unwrap();
        assert_eq!(s.order(), 0);
        assert_eq!(s.a_only().len(), 3);

        let p4 = Graph::path(4);
        let all: Vec<usize> = (0..4).collect();
        let s = exhaustive_balanced_separator(&p4, &all, r(1, 2), 1, &lim).unwrap().unwrap();
        assert_eq!(s.order(), 1);
        assert!(s.separator() == vec![1] || s.separator() == vec![2]);
        assert!(is_alpha_balanced(&p4, &s, &all, r(1, 2)).unwrap());

        let (q, k) = (5, 1);
        let g = Graph::complete(q + k + 1);
        let x: Vec<usize> = (0..q).collect();
        assert!(exhaustive_balanced_separator(&g, &x, r(3, 4), k, &lim).unwrap().is_none());

        assert!(matches!(
            exhaustive_balanced_separator(&Graph::empty(17), &[], r(1, 2), 0, &lim),
            Err(Error::ResourceLimit { .. })
        ));
    }

    fn exhaustive_oracle(alpha: Ratio<u64>, k: usize) -> impl Fn(&Graph, &[usize]) -> Result<Option<Separation>> + Sync {
        move |h: &Graph, x: &[usize]| exhaustive_balanced_separator(h, x, alpha, k, &Limits::default())
    }

    #[test]
    fn recursion_examples() {
        let (g, _) = make_grid(3, 3).unwrap();
        let spec = BalanceSpec::new(4, 3, 13, vec![]).unwrap();
        let td = td_from_separator_oracle(&g, &spec, &exhaustive_oracle(spec.alpha, 3)).unwrap();
        assert_eq!(td.bags.len(), 1);

        let (g, _) = make_grid(4, 4).unwrap();
        let spec = BalanceSpec::new(4, 4, 17, vec![0, 5]).unwrap();
        let td = td_from_separator_oracle(&g, &spec, &exhaustive_oracle(spec.alpha, 4)).unwrap();
        assert!(td_validate(&g, &td).unwrap() <= 20);

        // small parameters force real recursion
        let (g, _) = make_grid(4, 4).unwrap();
        let spec = BalanceSpec::new(2, 4, 9, vec![]).unwrap();
        let td = td_from_separator_oracle(&g, &spec, &exhaustive_oracle(spec.alpha, 4)).unwrap();
        assert!(td.bags.len() > 1);
        assert!(td_validate(&g, &td).unwrap() <= spec.q + spec.k - 1);
    }

    #[test]
    fn recursion_on_clique_reports_missing_separator() {
        let (q, k) = (5, 1);
        let g = Graph::complete(q + k + 1);
        let spec = BalanceSpec::new(4, k, q, vec![]).unwrap();
        let err = td_from_separator_oracle(&g, &spec, &exhaustive_oracle(spec.alpha, k)).unwrap_err();
        match err {
            Error::NoSeparator { vertices, set } => {
                assert_eq!(vertices.len(), q + k + 1);
                assert_eq!(set, (0..q).collect::<Vec<_>>());
            }
            e => panic!("unexpected {e:?}"),
        }
    }

    #[test]
    fn recursion_rejects_lying_oracle() {
        let g = Graph::empty(12);
        let spec = BalanceSpec::new(2, 1, 3, vec![]).unwrap();
        let liar = |h: &Graph, _: &[usize]| -> Result<Option<Separation>> {
            let all: Vec<usize> = (0..h.n()).collect();
            Ok(Some(Separation::new(all.clone(), vec![])))
        };
        assert!(matches!(
            td_from_separator_oracle(&g, &spec, &liar),
            Err(Error::OracleContract(_))
        ));
    }

    #[test]
    fn balance_spec_checks_q() {
        assert!(BalanceSpec::new(2, 2, 4, vec![]).is_err());
        assert!(BalanceSpec::new(1, 2, 10, vec![]).is_err());
        assert_eq!(BalanceSpec::new(4, 1, 5, vec![]).unwrap().alpha, r(3, 4));
    }
}
