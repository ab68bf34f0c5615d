//! Backtracking search for minor and induced-minor models.
//!
//! Pattern vertices are placed in order of decreasing degree. Each branch set
//! is a connected set of unused host vertices, enumerated once per set with
//! its minimum vertex as root. Partial assignments are pruned when some
//! unplaced pattern vertex can no longer reach all of its placed neighbours
//! inside one component of the free vertices.

use super::{MinorModel, ModelKind};
use crate::error::{check_cap, Limits, Result};
use crate::graph::{make_grid, Graph};

/// A model of `h` as a minor of `g`, or `None`.
pub fn contains_minor(g: &Graph, h: &Graph, limits: &Limits) -> Result<Option<MinorModel>> {
    find_model(g, h, ModelKind::Minor, limits)
}

/// A model of `h` as an induced minor of `g`, or `None`.
pub fn contains_induced_minor(g: &Graph, h: &Graph, limits: &Limits) -> Result<Option<MinorModel>> {
    find_model(g, h, ModelKind::Induced, limits)
}

pub fn find_model(g: &Graph, h: &Graph, kind: ModelKind, limits: &Limits) -> Result<Option<MinorModel>> {
    check_cap("minor search", g.n(), limits.minor.min(64))?;
    if h.n() > g.n() || (kind == ModelKind::Minor && h.m() > g.m()) {
        return Ok(None);
    }
    let mut order: Vec<usize> = (0..h.n()).collect();
    order.sort_by_key(|&p| (std::cmp::Reverse(h.degree(p)), p));
    let mut s = Search {
        g: g.masks().into_iter().map(|m| m as u64).collect(),
        h: h.masks().into_iter().map(|m| m as u64).collect(),
        order,
        kind,
        sets: vec![0; h.n()],
        placed: 0,
        all: if g.n() == 64 { u64::MAX } else { (1u64 << g.n()) - 1 },
    };
    if s.place(0, 0) {
        let sets = s.sets.iter().map(|&m| bits(m)).collect();
        return Ok(Some(MinorModel::new(h.clone(), sets)));
    }
    Ok(None)
}

fn bits(mut m: u64) -> Vec<usize> {
    let mut out = Vec::new();
    while m != 0 {
        out.push(m.trailing_zeros() as usize);
        m &= m - 1;
    }
    out
}

struct Search {
    g: Vec<u64>,
    h: Vec<u64>,
    order: Vec<usize>,
    kind: ModelKind,
    sets: Vec<u64>,
    /// pattern vertices already placed
    placed: u64,
    all: u64,
}

impl Search {
    fn nbr(&self, set: u64) -> u64 {
        let mut out = 0;
        let mut s = set;
        while s != 0 {
            out |= self.g[s.trailing_zeros() as usize];
            s &= s - 1;
        }
        out & !set
    }

    /// Host vertices that pattern vertex `p` may not use given the placed
    /// sets: used vertices, plus neighbours of placed non-neighbours when the
    /// model is induced.
    fn blocked(&self, p: usize, used: u64) -> u64 {
        let mut blocked = used;
        if self.kind == ModelKind::Induced {
            let mut non = self.placed & !self.h[p] & !(1 << p);
            while non != 0 {
                let q = non.trailing_zeros() as usize;
                non &= non - 1;
                blocked |= self.nbr(self.sets[q]);
            }
        }
        blocked
    }

    fn requirements(&self, p: usize) -> Vec<u64> {
        let mut req = Vec::new();
        let mut adj = self.placed & self.h[p];
        while adj != 0 {
            let q = adj.trailing_zeros() as usize;
            adj &= adj - 1;
            req.push(self.nbr(self.sets[q]));
        }
        req
    }

    fn place(&mut self, depth: usize, used: u64) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let p = self.order[depth];
        let avail = self.all & !self.blocked(p, used);
        let req = self.requirements(p);
        let remaining = (self.order.len() - depth - 1) as u32;
        let mut found = false;
        let mut roots = avail;
        while roots != 0 && !found {
            let r = roots.trailing_zeros() as usize;
            roots &= roots - 1;
            let allowed = avail & !((1u64 << r) | ((1u64 << r) - 1));
            found = self.grow(depth, p, used, 1 << r, allowed, 0, &req, remaining);
        }
        found
    }

    #[allow(clippy::too_many_arguments)]
    fn grow(
        &mut self,
        depth: usize,
        p: usize,
        used: u64,
        set: u64,
        allowed: u64,
        excluded: u64,
        req: &[u64],
        remaining: u32,
    ) -> bool {
        if (self.all & !used & !set).count_ones() < remaining {
            return false;
        }
        if req.iter().all(|&r| r & set != 0) {
            self.sets[p] = set;
            self.placed |= 1 << p;
            if self.feasible(depth, used | set) && self.place(depth + 1, used | set) {
                return true;
            }
            self.placed &= !(1 << p);
            self.sets[p] = 0;
        }
        let mut cand = self.nbr(set) & allowed & !excluded;
        let mut excl = excluded;
        while cand != 0 {
            let v = cand.trailing_zeros() as usize;
            cand &= cand - 1;
            if self.grow(depth, p, used, set | (1 << v), allowed, excl, req, remaining) {
                return true;
            }
            excl |= 1 << v;
        }
        false
    }

    /// Every unplaced pattern vertex needs a component of its free vertices
    /// touching the neighbourhoods of all its placed neighbours.
    fn feasible(&self, depth: usize, used: u64) -> bool {
        for &r in &self.order[depth + 1..] {
            let free = self.all & !self.blocked(r, used);
            if free == 0 {
                return false;
            }
            let req = self.requirements(r);
            if req.is_empty() {
                continue;
            }
            let mut left = free;
            let mut ok = false;
            while left != 0 && !ok {
                let s = left.trailing_zeros() as usize;
                let mut comp = 1u64 << s;
                let mut frontier = comp;
                while frontier != 0 {
                    let v = frontier.trailing_zeros() as usize;
                    frontier &= frontier - 1;
                    let new = self.g[v] & free & !comp;
                    comp |= new;
                    frontier |= new;
                }
                left &= !comp;
                ok = req.iter().all(|&q| q & comp != 0);
            }
            if !ok {
                return false;
            }
        }
        true
    }
}

/// Largest `k` such that the `k x k` grid is an induced minor of `g`.
pub fn induced_grid_number(g: &Graph, limits: &Limits) -> Result<usize> {
    check_cap("induced grid number", g.n(), limits.induced_grid)?;
    let mut k = 0;
    while (k + 1) * (k + 1) <= g.n() {
        let (grid, _) = make_grid(k + 1, k + 1)?;
        let lim = Limits {
            minor: g.n().max(limits.minor),
            ..limits.clone()
        };
        if contains_induced_minor(g, &grid, &lim)?.is_none() {
            break;
        }
        k += 1;
    }
    Ok(k)
}

/// Strips vertices of degree at most one and suppresses degree-two vertices
/// until neither applies. Planarity and the presence of `K_5` or `K_{3,3}`
/// minors are unchanged. Returns the reduced graph and, for each of its
/// vertices, the original vertex.
pub fn smooth_reduce(g: &Graph) -> (Graph, Vec<usize>) {
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
            match adj[v].len() {
                0 | 1 => {
                    for w in std::mem::take(&mut adj[v]) {
                        adj[w].remove(&v);
                    }
                    alive[v] = false;
                    changed = true;
                }
                2 => {
                    let mut it = adj[v].iter().copied();
                    let (a, b) = (it.next().unwrap(), it.next().unwrap());
                    adj[a].remove(&v);
                    adj[b].remove(&v);
                    adj[a].insert(b);
                    adj[b].insert(a);
                    adj[v].clear();
                    alive[v] = false;
                    changed = true;
                }
                _ => {}
            }
        }
    }
    let keep: Vec<usize> = (0..n).filter(|&v| alive[v]).collect();
    let mut pos = vec![usize::MAX; n];
    for (i, &v) in keep.iter().enumerate() {
        pos[v] = i;
    }
    let mut edges = Vec::new();
    for &v in &keep {
        for &w in adj[v].iter().filter(|&&w| w > v) {
            edges.push((pos[v], pos[w]));
        }
    }
    (Graph::from_edges_dedup(keep.len(), edges), keep)
}

/// Planarity by Wagner's criterion: no `K_5` and no `K_{3,3}` minor. The
/// graph is reduced first and each component checked on its own; the minor
/// cap applies to the reduced components.
pub fn is_planar_wagner(g: &Graph, limits: &Limits) -> Result<bool> {
    let (r, _) = smooth_reduce(g);
    let k5 = Graph::complete(5);
    let k33 = Graph::complete_bipartite(3, 3);
    for comp in r.components(None) {
        let c = r.induced_subgraph(&comp);
        if c.n() < 5 {
            continue;
        }
        if c.m() > 3 * c.n() - 6 {
            return Ok(false);
        }
        if contains_minor(&c, &k5, limits)?.is_some() || contains_minor(&c, &k33, limits)?.is_some() {
            return Ok(false);
        }
    }
    Ok(true)
}
