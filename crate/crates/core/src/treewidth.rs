//! Exact treewidth by dynamic programming over vertex subsets.
//!
//! `TW(S) = min_{v in S} max(TW(S - v), |Q(S - v, v)|)` where `Q(S, v)` is the
//! set of vertices outside `S + v` reachable from `v` through `S`. The optimal
//! elimination ordering is read back from the table and turned into a
//! decomposition.

use crate::decomposition::TreeDecomposition;
use crate::error::{check_cap, Limits, Result};
use crate::graph::Graph;

/// Exact treewidth with the default cap.
pub fn treewidth_exact(g: &Graph) -> Result<usize> {
    treewidth_with_decomposition(g, &Limits::default()).map(|(w, _)| w)
}

/// Exact treewidth and a decomposition attaining it. The empty graph has
/// width 0 here (one empty bag).
pub fn treewidth_with_decomposition(g: &Graph, limits: &Limits) -> Result<(usize, TreeDecomposition)> {
    check_cap("treewidth", g.n(), limits.treewidth.min(30))?;
    if g.n() == 0 {
        return Ok((0, TreeDecomposition::new(Graph::empty(1), vec![vec![]])));
    }
    let mut order = Vec::with_capacity(g.n());
    for comp in g.components(None) {
        let h = g.induced_subgraph(&comp);
        order.extend(component_ordering(&h).into_iter().map(|v| comp[v]));
    }
    let td = decomposition_from_ordering(g, &order);
    Ok((td.width(), td))
}

fn component_ordering(h: &Graph) -> Vec<usize> {
    let n = h.n();
    if n <= 2 {
        return (0..n).collect();
    }
    let masks: Vec<u32> = h.masks().into_iter().map(|m| m as u32).collect();
    let size = 1usize << n;
    let mut tw = vec![0u8; size];
    for s in 1..size as u32 {
        let mut best = u8::MAX;
        let mut rest = s;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let t = s & !(1 << v);
            let prev = tw[t as usize];
            if prev >= best {
                continue;
            }
            let q = q_size(&masks, t, v);
            best = best.min(prev.max(q));
        }
        tw[s as usize] = best;
    }
    // read the ordering back from the full set, last eliminated first
    let mut rev = Vec::with_capacity(n);
    let mut s = (size - 1) as u32;
    while s != 0 {
        let target = tw[s as usize];
        let mut rest = s;
        let mut chosen = None;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let t = s & !(1 << v);
            if tw[t as usize].max(q_size(&masks, t, v)) == target {
                chosen = Some(v);
                break;
            }
        }
        let v = chosen.expect("table is consistent");
        rev.push(v);
        s &= !(1 << v);
    }
    rev.reverse();
    rev
}

/// `|Q(t, v)|`: vertices outside `t + v` adjacent to the component of `v` in
/// `G[t + v]`.
fn q_size(masks: &[u32], t: u32, v: usize) -> u8 {
    let mut comp = 1u32 << v;
    let mut frontier = comp;
    let mut border = 0u32;
    while frontier != 0 {
        let u = frontier.trailing_zeros() as usize;
        frontier &= frontier - 1;
        let nb = masks[u];
        let inside = nb & t & !comp;
        comp |= inside;
        frontier |= inside;
        border |= nb;
    }
    (border & !comp & !t).count_ones() as u8
}

/// Decides `tw(g) >= t` after safe reductions: simplicial vertices are
/// removed (a simplicial vertex of degree `d` certifies width `d`) and
/// degree-2 vertices with non-adjacent neighbours are suppressed. The exact
/// solver only sees what is left.
pub fn treewidth_at_least(g: &Graph, t: usize, limits: &Limits) -> Result<bool> {
    match t {
        0 => return Ok(true),
        1 => return Ok(g.m() > 0),
        2 => return Ok(g.m() + g.components(None).len() > g.n()),
        _ => {}
    }
    let n = g.n();
    let mut adj: Vec<std::collections::BTreeSet<usize>> =
        (0..n).map(|v| g.neighbors(v).iter().copied().collect()).collect();
    let mut alive = vec![true; n];
    let mut changed = true;
    while changed {
        changed = false;
        for v in 0..n {
            if !alive[v] {
                continue;
            }
            let nb: Vec<usize> = adj[v].iter().copied().collect();
            let simplicial = nb
                .iter()
                .enumerate()
                .all(|(i, &a)| nb[i + 1..].iter().all(|b| adj[a].contains(b)));
            if simplicial && nb.len() >= t {
                return Ok(true);
            }
            if simplicial || nb.len() == 2 {
                if !simplicial {
                    adj[nb[0]].insert(nb[1]);
                    adj[nb[1]].insert(nb[0]);
                }
                for w in nb {
                    adj[w].remove(&v);
                }
                adj[v].clear();
                alive[v] = false;
                changed = true;
            }
        }
    }
    let keep: Vec<usize> = (0..n).filter(|&v| alive[v]).collect();
    let rest = Graph::from_edges_dedup(
        keep.len(),
        keep.iter().enumerate().flat_map(|(i, &v)| {
            let keep = &keep;
            adj[v]
                .iter()
                .map(move |w| (i, keep.binary_search(w).unwrap()))
                .filter(|&(i, j)| i < j)
        }),
    );
    Ok(treewidth_with_decomposition(&rest, limits)?.0 >= t)
}

/// Builds the decomposition induced by eliminating vertices in `order`.
pub fn decomposition_from_ordering(g: &Graph, order: &[usize]) -> TreeDecomposition {
    let n = g.n();
    assert_eq!(order.len(), n);
    let mut pos = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let mut higher: Vec<std::collections::BTreeSet<usize>> = (0..n)
        .map(|v| g.neighbors(v).iter().copied().filter(|&w| pos[w] > pos[v]).collect())
        .collect();
    let mut bags = Vec::with_capacity(n);
    let mut edges = Vec::new();
    for (i, &v) in order.iter().enumerate() {
        let hs: Vec<usize> = higher[v].iter().copied().collect();
        for (a, &x) in hs.iter().enumerate() {
            for &y in &hs[a + 1..] {
                let (lo, hi) = if pos[x] < pos[y] { (x, y) } else { (y, x) };
                higher[lo].insert(hi);
            }
        }
        let mut bag = hs.clone();
        bag.push(v);
        bags.push(bag);
        let parent = hs.iter().map(|&w| pos[w]).min().unwrap_or(i + 1);
        if parent < n {
            edges.push((i, parent));
        }
    }
    TreeDecomposition::new(Graph::from_edges_dedup(n, edges), bags)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomposition::td_validate;
    use crate::graph::{make_grid, make_path_power};

    #[test]
    fn examples() {
        let star = Graph::complete_bipartite(1, 5);
        assert_eq!(treewidth_exact(&star).unwrap(), 1);
        assert_eq!(treewidth_exact(&Graph::path(7)).unwrap(), 1);
        for n in 1..=7 {
            assert_eq!(treewidth_exact(&Graph::complete(n)).unwrap(), n - 1);
        }
        let (g, _) = make_grid(3, 3).unwrap();
        assert_eq!(treewidth_exact(&g).unwrap(), 3);
        assert_eq!(treewidth_exact(&make_path_power(9, 3).unwrap()).unwrap(), 3);
        assert_eq!(treewidth_exact(&Graph::cycle(8)).unwrap(), 2);
    }

    #[test]
    fn decomposition_validates() {
        let (g, _) = make_grid(4, 4).unwrap();
        let (w, td) = treewidth_with_decomposition(&g, &Limits::default()).unwrap();
        assert_eq!(w, 4);
        assert_eq!(td_validate(&g, &td).unwrap(), 4);

        let g = Graph::new(7, [(0, 1), (1, 2), (3, 4), (4, 5), (5, 3)]).unwrap();
        let (w, td) = treewidth_with_decomposition(&g, &Limits::default()).unwrap();
        assert_eq!(w, 2);
        assert_eq!(td_validate(&g, &td).unwrap(), 2);
    }

    #[test]
    fn cap_is_enforced() {
        let lim = Limits {
            treewidth: 5,
            ..Limits::default()
        };
        assert!(treewidth_with_decomposition(&Graph::path(6), &lim).is_err());
        assert!(treewidth_exact(&Graph::empty(21)).is_err());
    }

    #[test]
    fn empty_and_edgeless() {
        assert_eq!(treewidth_exact(&Graph::empty(0)).unwrap(), 0);
        let (w, td) = treewidth_with_decomposition(&Graph::empty(4), &Limits::default()).unwrap();
        assert_eq!(w, 0);
        td_validate(&Graph::empty(4), &td).unwrap();
    }

    #[test]
    fn lower_bound_matches_exact_value() {
        let (g44, _) = make_grid(4, 4).unwrap();
        let cases = [
            (Graph::cycle(9), 2),
            (Graph::complete(6), 5),
            (make_path_power(10, 3).unwrap(), 3),
            (g44, 4),
            (Graph::complete_bipartite(1, 4), 1),
        ];
        let limits = Limits::default();
        for (g, tw) in cases {
            assert_eq!(treewidth_exact(&g).unwrap(), tw);
            for t in 0..=tw + 1 {
                assert_eq!(treewidth_at_least(&g, t, &limits).unwrap(), t <= tw, "t = {t}");
            }
        }
        // a long subdivided grid is beyond the exact solver but reduces
        let (g, _) = make_grid(4, 4).unwrap();
        let sub = crate::graph::subdivide_uniform(&g, 3).unwrap();
        assert!(treewidth_at_least(&sub.graph, 4, &limits).unwrap());
        assert!(!treewidth_at_least(&sub.graph, 5, &limits).unwrap());
    }
}
