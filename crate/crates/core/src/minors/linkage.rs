//! Vertex-disjoint path systems via unit vertex capacities, and the induced
//! sub-linkage obtained from an independent set of the contracted paths.

use std::collections::VecDeque;

use crate::decomposition::Separation;
use crate::error::{Error, Limits, Result};
use crate::graph::Graph;

use super::independent::max_independent_set_with;

/// Pairwise vertex-disjoint `(S, T)`-paths, each internally disjoint from
/// `S ∪ T`. A vertex of `S ∩ T` forms a one-vertex path.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Linkage {
    pub paths: Vec<Vec<usize>>,
    pub s: Vec<usize>,
    pub t: Vec<usize>,
}

impl Linkage {
    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    pub fn validate(&self, g: &Graph) -> Result<()> {
        let mut in_s = vec![false; g.n()];
        let mut in_t = vec![false; g.n()];
        for &v in &self.s {
            in_s[v] = true;
        }
        for &v in &self.t {
            in_t[v] = true;
        }
        let mut used = vec![false; g.n()];
        for (i, p) in self.paths.iter().enumerate() {
            let bad = |msg: &str| Err(Error::Structural(format!("linkage path {i}: {msg}")));
            if p.is_empty() {
                return bad("empty");
            }
            if !in_s[p[0]] || !in_t[*p.last().unwrap()] {
                return bad("does not run from S to T");
            }
            for (j, &v) in p.iter().enumerate() {
                if v >= g.n() || used[v] {
                    return bad("shares a vertex with another path");
                }
                used[v] = true;
                let internal = j > 0 && j + 1 < p.len();
                if internal && (in_s[v] || in_t[v]) {
                    return bad("meets S or T internally");
                }
            }
            if p.len() > 1 && (in_t[p[0]] || in_s[p[p.len() - 1]]) {
                return bad("meets S or T internally");
            }
            if p.windows(2).any(|w| !g.has_edge(w[0], w[1])) {
                return bad("is not a path in the graph");
            }
        }
        Ok(())
    }

    /// True if no edge joins two distinct paths.
    pub fn is_induced(&self, g: &Graph) -> bool {
        let mut owner = vec![usize::MAX; g.n()];
        for (i, p) in self.paths.iter().enumerate() {
            for &v in p {
                owner[v] = i;
            }
        }
        g.edges().all(|(u, v)| {
            let (a, b) = (owner[u], owner[v]);
            a == usize::MAX || b == usize::MAX || a == b
        })
    }
}

const INF: u32 = u32::MAX / 2;

struct Flow {
    head: Vec<usize>,
    cap: Vec<u32>,
    next: Vec<usize>,
    first: Vec<usize>,
}

impl Flow {
    fn new(nodes: usize) -> Flow {
        Flow {
            head: Vec::new(),
            cap: Vec::new(),
            next: Vec::new(),
            first: vec![usize::MAX; nodes],
        }
    }

    fn add(&mut self, u: usize, v: usize, c: u32) {
        for (a, b, cc) in [(u, v, c), (v, u, 0)] {
            self.head.push(b);
            self.cap.push(cc);
            self.next.push(self.first[a]);
            self.first[a] = self.head.len() - 1;
        }
    }

    fn arcs(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        let mut e = self.first[u];
        std::iter::from_fn(move || {
            if e == usize::MAX {
                return None;
            }
            let cur = e;
            e = self.next[e];
            Some(cur)
        })
    }

    fn reachable(&self, src: usize) -> (Vec<bool>, Vec<usize>) {
        let mut seen = vec![false; self.first.len()];
        let mut via = vec![usize::MAX; self.first.len()];
        seen[src] = true;
        let mut q = VecDeque::from([src]);
        while let Some(u) = q.pop_front() {
            for e in self.arcs(u) {
                let v = self.head[e];
                if self.cap[e] > 0 && !seen[v] {
                    seen[v] = true;
                    via[v] = e;
                    q.push_back(v);
                }
            }
        }
        (seen, via)
    }

    fn augment(&mut self, src: usize, sink: usize) -> bool {
        let (seen, via) = self.reachable(src);
        if !seen[sink] {
            return false;
        }
        let mut v = sink;
        while v != src {
            let e = via[v];
            self.cap[e] -= 1;
            self.cap[e ^ 1] += 1;
            v = self.head[e ^ 1];
        }
        true
    }
}

/// A maximum `(S, T)`-linkage and a separation `(A, B)` with `S ⊆ A`,
/// `T ⊆ B` whose order equals the number of paths.
pub fn menger_linkage(g: &Graph, s: &[usize], t: &[usize]) -> Result<(Linkage, Separation)> {
    let n = g.n();
    if let Some(&v) = s.iter().chain(t).find(|&&v| v >= n) {
        return Err(Error::invalid(format!("vertex {v} outside the graph")));
    }
    let (src, sink) = (2 * n, 2 * n + 1);
    let mut f = Flow::new(2 * n + 2);
    let vin = |v: usize| 2 * v;
    let vout = |v: usize| 2 * v + 1;
    for v in 0..n {
        f.add(vin(v), vout(v), 1);
    }
    for (u, v) in g.edges() {
        f.add(vout(u), vin(v), INF);
        f.add(vout(v), vin(u), INF);
    }
    let mut in_s = vec![false; n];
    let mut in_t = vec![false; n];
    for &v in s {
        if !in_s[v] {
            in_s[v] = true;
            f.add(src, vin(v), INF);
        }
    }
    for &v in t {
        if !in_t[v] {
            in_t[v] = true;
            f.add(vout(v), sink, INF);
        }
    }
    while f.augment(src, sink) {}

    // walk the flow out of the source
    let mut paths = Vec::new();
    let mut flow_left: Vec<u32> = (0..f.cap.len()).map(|e| if e % 2 == 1 { f.cap[e] } else { 0 }).collect();
    let starts: Vec<usize> = f
        .arcs(src)
        .filter(|&e| e % 2 == 0 && f.cap[e ^ 1] > 0)
        .map(|e| f.head[e] / 2)
        .collect();
    for v0 in starts {
        let mut path = vec![v0];
        let mut node = vout(v0);
        loop {
            let e = f
                .arcs(node)
                .find(|&e| e % 2 == 0 && flow_left[e ^ 1] > 0)
                .expect("flow is conserved");
            flow_left[e ^ 1] -= 1;
            let next = f.head[e];
            if next == sink {
                break;
            }
            let v = next / 2;
            path.push(v);
            node = vout(v);
        }
        let first_t = path.iter().position(|&v| in_t[v]).unwrap();
        let last_s = path[..=first_t].iter().rposition(|&v| in_s[v]).unwrap();
        paths.push(path[last_s..=first_t].to_vec());
    }
    paths.sort();

    let (seen, _) = f.reachable(src);
    let a: Vec<usize> = (0..n).filter(|&v| seen[vin(v)]).collect();
    let b: Vec<usize> = (0..n).filter(|&v| !seen[vin(v)] || !seen[vout(v)]).collect();
    let sep = Separation::new(a, b);
    let linkage = Linkage {
        paths,
        s: sorted(s),
        t: sorted(t),
    };
    Ok((linkage, sep))
}

fn sorted(v: &[usize]) -> Vec<usize> {
    let mut v = v.to_vec();
    v.sort_unstable();
    v.dedup();
    v
}

/// Picks `k` pairwise non-adjacent paths of `l`: contract each path to a
/// vertex and take the first `k` members of a maximum independent set.
///
/// With `|l| >= 2kt` and Hadwiger number at most `t` such a set always exists;
/// the bound is not enforced here so smaller linkages can be tried.
pub fn induced_sublinkage(g: &Graph, l: &Linkage, k: usize, t: usize, limits: &Limits) -> Result<Linkage> {
    let mut owner = vec![usize::MAX; g.n()];
    for (i, p) in l.paths.iter().enumerate() {
        for &v in p {
            if v >= g.n() {
                return Err(Error::invalid(format!("path vertex {v} outside the graph")));
            }
            owner[v] = i;
        }
    }
    let contracted = Graph::from_edges_dedup(
        l.paths.len(),
        g.edges().filter_map(|(u, v)| {
            let (a, b) = (owner[u], owner[v]);
            (a != usize::MAX && b != usize::MAX && a != b).then_some((a, b))
        }),
    );
    let indep = max_independent_set_with(&contracted, limits)?;
    if indep.len() < k {
        return Err(Error::Structural(format!(
            "contracted linkage has independence number {} < {k}, so either had > {t} or |L| < 2kt = {}; contracted graph edges {:?}",
            indep.len(),
            2 * k * t,
            contracted.edges().collect::<Vec<_>>()
        )));
    }
    Ok(Linkage {
        paths: indep.into_iter().take(k).map(|i| l.paths[i].clone()).collect(),
        s: l.s.clone(),
        t: l.t.clone(),
    })
}
