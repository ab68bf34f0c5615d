//! Ordered graphs, the ×-free condition, and the balanced separator or clique
//! minor for ×-free ordered graphs.

use num::rational::Ratio;

use crate::decomposition::{is_alpha_balanced, Separation};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::minors::{menger_linkage, validate_model, MinorModel, ModelKind};

/// A graph with a total order on its vertices; `order[i]` is the vertex of
/// rank `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderedGraph {
    pub graph: Graph,
    order: Vec<usize>,
    rank: Vec<usize>,
}

impl OrderedGraph {
    pub fn new(graph: Graph, order: Vec<usize>) -> Result<OrderedGraph> {
        let n = graph.n();
        let mut rank = vec![usize::MAX; n];
        if order.len() != n {
            return Err(Error::invalid(format!("order lists {} vertices, graph has {n}", order.len())));
        }
        for (i, &v) in order.iter().enumerate() {
            if v >= n || rank[v] != usize::MAX {
                return Err(Error::invalid(format!("order is not a permutation (vertex {v})")));
            }
            rank[v] = i;
        }
        Ok(OrderedGraph { graph, order, rank })
    }

    /// Ordered by vertex index.
    pub fn natural(graph: Graph) -> OrderedGraph {
        let order = (0..graph.n()).collect();
        OrderedGraph::new(graph, order).expect("identity is a permutation")
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn rank(&self, v: usize) -> usize {
        self.rank[v]
    }

    /// Edges as `(u, v)` with `u` before `v`, sorted by rank of `u` then `v`.
    fn ranked_edges(&self) -> Vec<(usize, usize)> {
        let mut e: Vec<(usize, usize)> = self
            .graph
            .edges()
            .map(|(u, v)| {
                let (a, b) = (self.rank[u], self.rank[v]);
                (a.min(b), a.max(b))
            })
            .collect();
        e.sort_unstable();
        e
    }

    fn crossing_pairs(&self) -> impl Iterator<Item = ((usize, usize), (usize, usize))> + '_ {
        let edges = self.ranked_edges();
        (0..edges.len()).flat_map(move |i| {
            let edges = edges.clone();
            (i + 1..edges.len()).filter_map(move |j| {
                let ((u, v), (x, y)) = (edges[i], edges[j]);
                let cross = (u < x && x < v && v < y) || (x < u && u < y && y < v);
                cross.then_some(((u, v), (x, y)))
            })
        })
    }

    fn unrank(&self, e: (usize, usize)) -> (usize, usize) {
        (self.order[e.0], self.order[e.1])
    }
}

/// Some pair of crossing edges, each given as `(earlier, later)` vertices.
pub fn crossing_pair_witness(og: &OrderedGraph) -> Option<((usize, usize), (usize, usize))> {
    og.crossing_pairs().next().map(|(e, f)| (og.unrank(e), og.unrank(f)))
}

/// A crossing pair `uv`, `xy` with none of `ux, uy, vx, vy` an edge.
pub fn x_free_violation(og: &OrderedGraph) -> Option<((usize, usize), (usize, usize))> {
    og.crossing_pairs()
        .map(|(e, f)| (og.unrank(e), og.unrank(f)))
        .find(|&((u, v), (x, y))| {
            let g = &og.graph;
            !(g.has_edge(u, x) || g.has_edge(u, y) || g.has_edge(v, x) || g.has_edge(v, y))
        })
}

pub fn is_x_free(og: &OrderedGraph) -> bool {
    x_free_violation(og).is_none()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SeparatorOrClique {
    /// A balanced separation for `X` below the order threshold.
    Separation(Separation),
    /// A `K_{t+1}` minor model.
    Clique(MinorModel),
}

/// For a ×-free ordered graph and `|X| = 12t`: cut the order into four
/// intervals holding `3t` members of `X` each and compute Menger linkages
/// between the first and third and between the second and fourth. A small
/// cut is a balanced separation. Otherwise `t` single-edge paths in both
/// directions pairwise cross and give `K_{t,t}`, or more than `t` paths
/// leave their start interval the same way and are pairwise adjacent.
pub fn xfree_separator_or_clique(og: &OrderedGraph, x: &[usize], t: usize) -> Result<SeparatorOrClique> {
    let g = &og.graph;
    if t == 0 {
        return Err(Error::invalid("t must be positive"));
    }
    let mut xs = x.to_vec();
    xs.sort_unstable();
    xs.dedup();
    if xs.len() != x.len() || x.len() != 12 * t {
        return Err(Error::invalid(format!("X must hold exactly {} distinct vertices", 12 * t)));
    }
    if let Some(&v) = xs.iter().find(|&&v| v >= g.n()) {
        return Err(Error::invalid(format!("X contains {v}, outside the graph")));
    }
    if let Some((e, f)) = x_free_violation(og) {
        return Err(Error::NotXFree(e, f));
    }

    let mut ranks: Vec<usize> = xs.iter().map(|&v| og.rank(v)).collect();
    ranks.sort_unstable();
    // interval j ends right after the (3t(j+1))-th member of X
    let ends = [ranks[3 * t - 1], ranks[6 * t - 1], ranks[9 * t - 1], g.n() - 1];
    let interval_of = |v: usize| ends.iter().position(|&e| og.rank(v) <= e).unwrap();
    let intervals: Vec<Vec<usize>> = (0..4).map(|j| (0..g.n()).filter(|&v| interval_of(v) == j).collect()).collect();
    let alpha = Ratio::new(3u64, 4);

    let mut families = Vec::with_capacity(2);
    for (s, tt) in [(0, 2), (1, 3)] {
        let (link, sep) = menger_linkage(g, &intervals[s], &intervals[tt])?;
        if link.len() < 3 * t {
            if is_alpha_balanced(g, &sep, &xs, alpha)? {
                return Ok(SeparatorOrClique::Separation(sep));
            }
            return Err(Error::Structural(format!(
                "Menger cut {:?} is not 3/4-balanced",
                sep.separator()
            )));
        }
        let mut paths = link.paths;
        paths.sort_by_key(|p| og.rank(p[0]).min(og.rank(*p.last().unwrap())));
        families.push(paths);
    }

    let single = |paths: &[Vec<usize>]| -> Vec<Vec<usize>> { paths.iter().filter(|p| p.len() == 2).take(t).cloned().collect() };
    let (p1, q1) = (single(&families[0]), single(&families[1]));
    if p1.len() == t && q1.len() == t {
        let model = clique_from_biclique(&p1, &q1);
        validate_model(g, &model, ModelKind::Minor)?;
        return Ok(SeparatorOrClique::Clique(model));
    }
    for paths in &families {
        for j in 0..4 {
            let group: Vec<&Vec<usize>> = paths.iter().filter(|p| p.len() > 2 && interval_of(p[1]) == j).collect();
            if group.len() > t {
                let sets = group[..t + 1].iter().map(|p| p.to_vec()).collect();
                let model = MinorModel::new(Graph::complete(t + 1), sets);
                if validate_model(g, &model, ModelKind::Minor).is_ok() {
                    return Ok(SeparatorOrClique::Clique(model));
                }
            }
        }
    }
    Err(Error::Structural(
        "large linkages in both directions but neither single-edge families nor adjacent groups".into(),
    ))
}

/// `K_{t+1}` from `t` vertex-disjoint sets on each side of a `K_{t,t}`: pair
/// up all but the last on each side, keep the last two apart.
pub(crate) fn clique_from_biclique(left: &[Vec<usize>], right: &[Vec<usize>]) -> MinorModel {
    let t = left.len();
    let mut sets: Vec<Vec<usize>> = (0..t - 1).map(|i| [left[i].clone(), right[i].clone()].concat()).collect();
    sets.push(left[t - 1].clone());
    sets.push(right[t - 1].clone());
    MinorModel::new(Graph::complete(t + 1), sets)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn og(n: usize, edges: &[(usize, usize)]) -> OrderedGraph {
        OrderedGraph::natural(Graph::new(n, edges.iter().copied()).unwrap())
    }

    #[test]
    fn crossing_examples() {
        assert_eq!(crossing_pair_witness(&og(4, &[(0, 2), (1, 3)])), Some(((0, 2), (1, 3))));
        assert_eq!(crossing_pair_witness(&og(4, &[(0, 3), (1, 2)])), None);
        assert_eq!(crossing_pair_witness(&og(4, &[(0, 1), (1, 2), (2, 3)])), None);
    }

    #[test]
    fn x_free_examples() {
        let bad = og(4, &[(0, 2), (1, 3)]);
        assert!(!is_x_free(&bad));
        assert_eq!(x_free_violation(&bad), Some(((0, 2), (1, 3))));
        assert!(is_x_free(&og(4, &[(0, 2), (1, 3), (0, 1)])));
        assert!(is_x_free(&og(5, &[])));
    }

    #[test]
    fn order_is_respected() {
        // reversing 1 and 2 untangles the crossing
        let g = Graph::new(4, [(0, 2), (1, 3)]).unwrap();
        let o = OrderedGraph::new(g, vec![0, 2, 1, 3]).unwrap();
        assert!(is_x_free(&o));
        assert!(OrderedGraph::new(Graph::empty(2), vec![0, 0]).is_err());
    }

    #[test]
    fn edgeless_gives_empty_separator() {
        let o = og(15, &[]);
        let x: Vec<usize> = (0..12).collect();
        match xfree_separator_or_clique(&o, &x, 1).unwrap() {
            SeparatorOrClique::Separation(s) => assert_eq!(s.order(), 0),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn monotone_path() {
        let o = OrderedGraph::natural(Graph::path(24));
        let x: Vec<usize> = (0..12).map(|i| 2 * i).collect();
        match xfree_separator_or_clique(&o, &x, 1).unwrap() {
            SeparatorOrClique::Separation(s) => {
                assert!(s.order() <= 2);
                s.validate(&o.graph).unwrap();
                assert!(is_alpha_balanced(&o.graph, &s, &x, Ratio::new(3, 4)).unwrap());
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn complete_graph_gives_clique() {
        let o = OrderedGraph::natural(Graph::complete(12));
        let x: Vec<usize> = (0..12).collect();
        match xfree_separator_or_clique(&o, &x, 1).unwrap() {
            SeparatorOrClique::Clique(m) => {
                assert_eq!(m.pattern, Graph::complete(2));
                m.validate(&o.graph, ModelKind::Minor).unwrap();
            }
            other => panic!("{other:?}"),
        }
        let o = OrderedGraph::natural(Graph::complete(24));
        let x: Vec<usize> = (0..24).collect();
        assert!(matches!(xfree_separator_or_clique(&o, &x, 2).unwrap(), SeparatorOrClique::Clique(_)));
    }

    #[test]
    fn small_interleaved_biclique_is_separated() {
        // K_{2,2} on 0..4 in interleaved order with its four extra edges,
        // padded by isolated vertices: linkages between quarters stay below 3
        let o = og(12, &[(0, 1), (1, 2), (2, 3), (0, 3), (0, 2), (1, 3)]);
        let x: Vec<usize> = (0..12).collect();
        assert!(matches!(xfree_separator_or_clique(&o, &x, 1).unwrap(), SeparatorOrClique::Separation(_)));
    }

    #[test]
    fn preconditions() {
        let bad = og(12, &[(0, 2), (1, 3)]);
        let x: Vec<usize> = (0..12).collect();
        assert_eq!(
            xfree_separator_or_clique(&bad, &x, 1).unwrap_err(),
            Error::NotXFree((0, 2), (1, 3))
        );
        assert!(matches!(
            xfree_separator_or_clique(&og(12, &[]), &x[..11], 1).unwrap_err(),
            Error::InvalidArgument(_)
        ));
    }
}
