//! Brute-force oracles sharing no code with the library's solvers.
#![allow(dead_code)]

use std::collections::{HashMap, HashSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use twhad::Graph;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn gnp(n: usize, p: f64, seed: u64) -> Graph {
    let mut r = rng(seed);
    Graph::from_fn(n, |_, _| r.gen_bool(p))
}

fn adjacency(g: &Graph) -> Vec<u32> {
    (0..g.n()).map(|v| g.neighbors(v).iter().fold(0, |m, &w| m | 1 << w)).collect()
}

fn clique_number(adj: &[u32]) -> usize {
    let n = adj.len();
    (0u32..1 << n)
        .filter(|&s| (0..n).all(|v| s >> v & 1 == 0 || adj[v] & s == s & !(1 << v)))
        .map(|s| s.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

/// Largest clique over all graphs reachable by edge contractions; deletions
/// never help a clique, so this is the Hadwiger number.
pub fn hadwiger_by_contraction(g: &Graph) -> usize {
    fn canon(adj: &[u32]) -> Vec<u32> {
        adj.to_vec()
    }
    fn go(adj: Vec<u32>, seen: &mut HashSet<Vec<u32>>, best: &mut usize) {
        if !seen.insert(canon(&adj)) {
            return;
        }
        *best = (*best).max(clique_number(&adj));
        if adj.len() <= *best {
            return;
        }
        let n = adj.len();
        for u in 0..n {
            for v in u + 1..n {
                if adj[u] >> v & 1 == 1 {
                    // merge v into u, then move the last vertex into slot v
                    let mut a = adj.clone();
                    let merged = (a[u] | a[v]) & !(1 << u) & !(1 << v);
                    a[u] = merged;
                    for w in 0..n {
                        if w != u && w != v {
                            a[w] &= !(1 << v);
                            if merged >> w & 1 == 1 {
                                a[w] |= 1 << u;
                            }
                        }
                    }
                    let last = n - 1;
                    if v != last {
                        a[v] = a[last];
                        for w in 0..n {
                            if a[w] >> last & 1 == 1 {
                                a[w] = (a[w] & !(1 << last)) | 1 << v;
                            }
                        }
                    }
                    a.pop();
                    go(a, seen, best);
                }
            }
        }
    }
    let mut best = 0;
    go(adjacency(g), &mut HashSet::new(), &mut best);
    best
}

/// Minimum over elimination orderings of the largest degree at elimination,
/// by depth-first search over eliminated sets with pruning.
pub fn treewidth_by_elimination(g: &Graph) -> usize {
    let n = g.n();
    if n == 0 {
        return 0;
    }
    fn go(adj: &[u32], gone: u32, cur: usize, best: &mut usize, memo: &mut HashMap<u32, usize>) {
        let n = adj.len();
        if gone.count_ones() as usize == n {
            *best = (*best).min(cur);
            return;
        }
        if cur >= *best {
            return;
        }
        if let Some(&c) = memo.get(&gone) {
            if c <= cur {
                return;
            }
        }
        memo.insert(gone, cur);
        for v in 0..n {
            if gone >> v & 1 == 1 {
                continue;
            }
            let nb = adj[v] & !gone;
            let mut a = adj.to_vec();
            for w in 0..n {
                if nb >> w & 1 == 1 {
                    a[w] |= nb & !(1 << w);
                }
            }
            go(&a, gone | 1 << v, cur.max(nb.count_ones() as usize), best, memo);
        }
    }
    let mut best = n - 1;
    go(&adjacency(g), 0, 0, &mut best, &mut HashMap::new());
    best
}

pub fn independence_number(g: &Graph) -> usize {
    let adj = adjacency(g);
    let n = g.n();
    (0u32..1 << n)
        .filter(|&s| (0..n).all(|v| s >> v & 1 == 0 || adj[v] & s == 0))
        .map(|s| s.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

/// Brute-force isomorphism test for small graphs.
pub fn isomorphic(a: &Graph, b: &Graph) -> bool {
    if a.n() != b.n() || a.m() != b.m() {
        return false;
    }
    fn go(a: &Graph, b: &Graph, map: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
        let i = map.len();
        if i == a.n() {
            return true;
        }
        for j in 0..b.n() {
            if used[j] || a.degree(i) != b.degree(j) {
                continue;
            }
            if (0..i).all(|k| a.has_edge(i, k) == b.has_edge(j, map[k])) {
                map.push(j);
                used[j] = true;
                if go(a, b, map, used) {
                    return true;
                }
                map.pop();
                used[j] = false;
            }
        }
        false
    }
    go(a, b, &mut Vec::new(), &mut vec![false; b.n()])
}

/// Replays local complementations and deletions on an adjacency matrix.
/// Returns the final graph on the surviving labels, in increasing order.
pub fn replay(g: &Graph, steps: &[twhad::vertex_minor::VmStep]) -> (Graph, Vec<usize>) {
    use twhad::vertex_minor::VmStep;
    let n = g.n();
    let mut adj = vec![vec![false; n]; n];
    for (u, v) in g.edges() {
        adj[u][v] = true;
        adj[v][u] = true;
    }
    let mut alive = vec![true; n];
    for s in steps {
        match *s {
            VmStep::LocalComplement(v) => {
                assert!(alive[v], "step on deleted vertex {v}");
                let nb: Vec<usize> = (0..n).filter(|&w| alive[w] && adj[v][w]).collect();
                for (i, &a) in nb.iter().enumerate() {
                    for &b in &nb[i + 1..] {
                        adj[a][b] = !adj[a][b];
                        adj[b][a] = adj[a][b];
                    }
                }
            }
            VmStep::Delete(v) => {
                assert!(alive[v], "vertex {v} deleted twice");
                alive[v] = false;
            }
        }
    }
    let labels: Vec<usize> = (0..n).filter(|&v| alive[v]).collect();
    let out = Graph::from_fn(labels.len(), |i, j| adj[labels[i]][labels[j]]);
    (out, labels)
}

/// Whether `g` is a proper subdivision of `h` in which `branch[i]` plays
/// vertex `i` of `h`.
pub fn is_proper_subdivision(g: &Graph, branch: &[usize], h: &Graph) -> bool {
    if branch.len() != h.n() {
        return false;
    }
    let mut role = vec![usize::MAX; g.n()];
    for (i, &b) in branch.iter().enumerate() {
        role[b] = i;
    }
    if (0..g.n()).any(|v| role[v] == usize::MAX && g.degree(v) != 2) {
        return false;
    }
    let mut found = std::collections::BTreeSet::new();
    let mut internal = 0;
    for (i, &b) in branch.iter().enumerate() {
        for &first in g.neighbors(b) {
            let (mut prev, mut cur, mut len) = (b, first, 1);
            while role[cur] == usize::MAX {
                let next = *g.neighbors(cur).iter().find(|&&w| w != prev).unwrap();
                prev = cur;
                cur = next;
                len += 1;
                if len > g.n() {
                    return false;
                }
            }
            let j = role[cur];
            if len < 2 || j == i {
                return false;
            }
            if i < j {
                if !found.insert((i, j)) {
                    return false;
                }
                internal += len - 1;
            }
        }
    }
    let wanted: std::collections::BTreeSet<(usize, usize)> = h.edges().collect();
    // every non-branch vertex lies on exactly one of the paths
    found == wanted && internal + branch.len() == g.n()
}
