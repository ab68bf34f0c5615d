//! Clique minors and the Hadwiger number.
//!
//! The decision search works on a contracted graph whose vertices are groups
//! of host vertices. It branches on an unfixed group of minimum degree: fix it
//! as a final branch set, contract it into an unfixed neighbour, or delete it.
//! Failed states are memoised.

use std::collections::HashSet;

use super::MinorModel;
use crate::error::{check_cap, Limits, Result};
use crate::graph::Graph;
use crate::treewidth::treewidth_with_decomposition;

const MEMO_CAP: usize = 2_000_000;

/// Hadwiger number with the default caps.
pub fn hadwiger(g: &Graph) -> Result<usize> {
    hadwiger_with_model(g, &Limits::default()).map(|(t, _)| t)
}

/// Hadwiger number and a `K_t` model attaining it.
pub fn hadwiger_with_model(g: &Graph, limits: &Limits) -> Result<(usize, MinorModel)> {
    check_cap("hadwiger", g.n(), limits.hadwiger.min(128))?;
    if g.n() == 0 {
        return Ok((0, MinorModel::new(Graph::empty(0), vec![])));
    }
    let masks = g.masks();
    let mut best = greedy_clique_minor(&masks, g.n());
    let upper = if g.n() <= limits.treewidth {
        treewidth_with_decomposition(g, limits)?.0 + 1
    } else {
        g.n()
    };
    let mut t = best.len();
    while t < upper && (t + 1) * t / 2 <= g.m() {
        match clique_minor_masks(&masks, g.n(), t + 1) {
            Some(sets) => {
                best = sets;
                t += 1;
            }
            None => break,
        }
    }
    let sets = best.into_iter().map(bits).collect();
    Ok((t, MinorModel::new(Graph::complete(t), sets)))
}

/// A model of `K_t` in `g`, or `None`. Hosts up to `limits.clique_minor`
/// vertices.
pub fn clique_minor(g: &Graph, t: usize, limits: &Limits) -> Result<Option<MinorModel>> {
    check_cap("clique minor", g.n(), limits.clique_minor.min(128))?;
    if t == 0 {
        return Ok(Some(MinorModel::new(Graph::empty(0), vec![])));
    }
    Ok(clique_minor_masks(&g.masks(), g.n(), t)
        .map(|sets| MinorModel::new(Graph::complete(t), sets.into_iter().map(bits).collect())))
}

fn bits(mut m: u128) -> Vec<usize> {
    let mut out = Vec::new();
    while m != 0 {
        out.push(m.trailing_zeros() as usize);
        m &= m - 1;
    }
    out
}

/// Contract a minimum-degree vertex into the neighbour it shares fewest
/// neighbours with until the graph is complete; keep the largest clique seen
/// over all components.
fn greedy_clique_minor(masks: &[u128], n: usize) -> Vec<u128> {
    let mut groups: Vec<(u128, u128)> = (0..n).map(|v| (1u128 << v, masks[v])).collect();
    let mut best: Vec<u128> = vec![1];
    loop {
        let k = groups.len();
        let adj = |a: &(u128, u128), b: &(u128, u128)| a.1 & b.0 != 0;
        let deg: Vec<usize> = (0..k)
            .map(|i| (0..k).filter(|&j| j != i && adj(&groups[i], &groups[j])).count())
            .collect();
        if deg.iter().all(|&d| d == k - 1) {
            if k > best.len() {
                best = groups.iter().map(|g| g.0).collect();
            }
            break;
        }
        let v = (0..k).filter(|&i| deg[i] < k - 1).min_by_key(|&i| deg[i]).unwrap();
        if deg[v] == 0 {
            groups.remove(v);
            continue;
        }
        let w = (0..k)
            .filter(|&j| j != v && adj(&groups[v], &groups[j]))
            .min_by_key(|&j| {
                (0..k)
                    .filter(|&x| x != v && x != j && adj(&groups[v], &groups[x]) && adj(&groups[j], &groups[x]))
                    .count()
            })
            .unwrap();
        let (mv, nv) = groups[v];
        groups[w].0 |= mv;
        groups[w].1 = (groups[w].1 | nv) & !groups[w].0;
        groups.remove(v);
        if groups.is_empty() {
            break;
        }
    }
    best
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
struct Group {
    members: u128,
    nbr: u128,
    fixed: bool,
}

fn clique_minor_masks(masks: &[u128], n: usize, t: usize) -> Option<Vec<u128>> {
    if t == 0 {
        return Some(vec![]);
    }
    if n == 0 {
        return None;
    }
    if t == 1 {
        return Some(vec![1]);
    }
    // simplicial vertices either carry the clique or can be dropped
    let mut alive: u128 = if n == 128 { u128::MAX } else { (1u128 << n) - 1 };
    loop {
        let mut changed = false;
        let mut rest = alive;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let nb = masks[v] & alive;
            let simplicial = bits(nb).iter().all(|&u| (masks[u] | (1 << u)) & nb == nb);
            if simplicial {
                if nb.count_ones() as usize + 1 >= t {
                    let mut sets = vec![1u128 << v];
                    sets.extend(bits(nb).into_iter().take(t - 1).map(|u| 1u128 << u));
                    return Some(sets);
                }
                alive &= !(1 << v);
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    // a clique minor lives in one component
    let mut left = alive;
    while left != 0 {
        let s = left.trailing_zeros() as usize;
        let mut comp = 1u128 << s;
        let mut frontier = comp;
        while frontier != 0 {
            let v = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let new = masks[v] & alive & !comp;
            comp |= new;
            frontier |= new;
        }
        left &= !comp;
        if (comp.count_ones() as usize) < t {
            continue;
        }
        let groups: Vec<Group> = bits(comp)
            .into_iter()
            .map(|v| Group {
                members: 1 << v,
                nbr: masks[v] & comp,
                fixed: false,
            })
            .collect();
        let mut search = CliqueSearch {
            t,
            memo: HashSet::new(),
        };
        if let Some(sets) = search.run(groups) {
            return Some(sets);
        }
    }
    None
}

struct CliqueSearch {
    t: usize,
    memo: HashSet<Vec<Group>>,
}

impl CliqueSearch {
    fn run(&mut self, mut groups: Vec<Group>) -> Option<Vec<u128>> {
        let t = self.t;
        let fixed: Vec<usize> = (0..groups.len()).filter(|&i| groups[i].fixed).collect();
        if fixed.len() == t {
            return Some(fixed.iter().map(|&i| groups[i].members).collect());
        }
        // drop isolated unfixed groups
        let adj = |a: &Group, b: &Group| a.nbr & b.members != 0;
        let mut i = 0;
        while i < groups.len() {
            let isolated = !groups[i].fixed && groups.iter().all(|h| !adj(&groups[i], h));
            if isolated {
                groups.remove(i);
            } else {
                i += 1;
            }
        }
        let k = groups.len();
        if k < t {
            return None;
        }
        let deg: Vec<usize> = (0..k)
            .map(|i| (0..k).filter(|&j| j != i && adj(&groups[i], &groups[j])).count())
            .collect();
        let edges: usize = deg.iter().sum::<usize>() / 2;
        if edges < t * (t - 1) / 2 {
            return None;
        }
        if (0..k).any(|i| groups[i].fixed && deg[i] < t - 1) {
            return None;
        }
        let all_fixed: Vec<&Group> = groups.iter().filter(|g| g.fixed).collect();
        let mut key = groups.clone();
        key.sort_unstable_by_key(|g| g.members);
        if self.memo.contains(&key) {
            return None;
        }
        let v = (0..k).filter(|&i| !groups[i].fixed).min_by_key(|&i| (deg[i], i));
        let Some(v) = v else {
            self.remember(key);
            return None;
        };
        let gv = groups[v];
        // fix
        if deg[v] + 1 >= t && all_fixed.iter().all(|f| adj(&gv, f)) {
            let mut next = groups.clone();
            next[v].fixed = true;
            if let Some(r) = self.run(next) {
                return Some(r);
            }
        }
        // contract into an unfixed neighbour
        for w in 0..k {
            if w == v || groups[w].fixed || !adj(&gv, &groups[w]) {
                continue;
            }
            let mut next = groups.clone();
            let members = next[w].members | gv.members;
            next[w].nbr = (next[w].nbr | gv.nbr) & !members;
            next[w].members = members;
            next.remove(v);
            if let Some(r) = self.run(next) {
                return Some(r);
            }
        }
        // delete
        let mut next = groups.clone();
        next.remove(v);
        for g in &mut next {
            g.nbr &= !gv.members;
        }
        if let Some(r) = self.run(next) {
            return Some(r);
        }
        self.remember(key);
        None
    }

    fn remember(&mut self, key: Vec<Group>) {
        if self.memo.len() < MEMO_CAP {
            self.memo.insert(key);
        }
    }
}
