//! Local complementation, vertex-minor sequences, and the constructions that
//! turn minors, drawings and induced subdivisions into explicit sequences.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::error::{Error, Result};
use crate::graph::{subdivide_uniform, Builder, Graph, Subdivision};
use crate::minors::{validate_model, MinorModel, ModelKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VmStep {
    LocalComplement(usize),
    Delete(usize),
}

impl VmStep {
    pub fn vertex(self) -> usize {
        match self {
            VmStep::LocalComplement(v) | VmStep::Delete(v) => v,
        }
    }
}

/// `g * v`: the subgraph induced on `N(v)` is complemented.
pub fn local_complement(g: &Graph, v: usize) -> Result<Graph> {
    if v >= g.n() {
        return Err(Error::invalid(format!("vertex {v} outside the graph")));
    }
    let nb = g.neighbors(v);
    let mut b = Builder::from_graph(g);
    for (i, &x) in nb.iter().enumerate() {
        for &y in &nb[i + 1..] {
            b.toggle(x, y);
        }
    }
    Ok(b.build())
}

/// Working copy used while replaying a sequence.
struct Replay {
    adj: Vec<BTreeSet<usize>>,
    alive: Vec<bool>,
}

impl Replay {
    fn new(g: &Graph) -> Replay {
        Replay {
            adj: (0..g.n()).map(|v| g.neighbors(v).iter().copied().collect()).collect(),
            alive: vec![true; g.n()],
        }
    }

    fn step(&mut self, index: usize, s: VmStep) -> Result<()> {
        let v = s.vertex();
        if v >= self.alive.len() {
            return Err(Error::InvalidStep {
                index,
                msg: format!("unknown vertex {v}"),
            });
        }
        if !self.alive[v] {
            return Err(Error::InvalidStep {
                index,
                msg: format!("vertex {v} was already deleted"),
            });
        }
        match s {
            VmStep::LocalComplement(_) => {
                let nb: Vec<usize> = self.adj[v].iter().copied().collect();
                for (i, &x) in nb.iter().enumerate() {
                    for &y in &nb[i + 1..] {
                        if !self.adj[x].remove(&y) {
                            self.adj[x].insert(y);
                            self.adj[y].insert(x);
                        } else {
                            self.adj[y].remove(&x);
                        }
                    }
                }
            }
            VmStep::Delete(_) => {
                for x in std::mem::take(&mut self.adj[v]) {
                    self.adj[x].remove(&v);
                }
                self.alive[v] = false;
            }
        }
        Ok(())
    }

    fn finish(self) -> (Graph, Vec<usize>) {
        let labels: Vec<usize> = (0..self.alive.len()).filter(|&v| self.alive[v]).collect();
        let mut pos = vec![usize::MAX; self.alive.len()];
        for (i, &v) in labels.iter().enumerate() {
            pos[v] = i;
        }
        let edges = labels
            .iter()
            .flat_map(|&v| self.adj[v].iter().filter(move |&&w| w > v).map(move |&w| (v, w)))
            .map(|(v, w)| (pos[v], pos[w]));
        (Graph::from_edges_dedup(labels.len(), edges), labels)
    }
}

/// Replays `steps` on `g`. Vertex `i` of the result is `labels[i]` of `g`.
pub fn apply_vm_sequence(g: &Graph, steps: &[VmStep]) -> Result<(Graph, Vec<usize>)> {
    let mut r = Replay::new(g);
    for (i, &s) in steps.iter().enumerate() {
        r.step(i, s)?;
    }
    Ok(r.finish())
}

/// Suppresses the degree-2 vertices outside `branch`. Vertex `i` of the
/// returned graph is `branch[i]`; the flag tells whether every edge came from
/// a path with at least one internal vertex.
pub fn recognize_subdivision(g: &Graph, branch: &[usize]) -> Result<(Graph, bool)> {
    let mut pos = vec![usize::MAX; g.n()];
    for (i, &b) in branch.iter().enumerate() {
        if b >= g.n() || pos[b] != usize::MAX {
            return Err(Error::invalid(format!("branch vertex {b} repeated or outside the graph")));
        }
        pos[b] = i;
    }
    for v in 0..g.n() {
        if pos[v] == usize::MAX && g.degree(v) != 2 {
            return Err(Error::Structural(format!(
                "vertex {v} is not a branch vertex but has degree {}",
                g.degree(v)
            )));
        }
    }
    let mut seen = vec![false; g.n()];
    let mut edges = BTreeMap::new();
    for &b in branch {
        for &first in g.neighbors(b) {
            let (mut prev, mut cur, mut internal) = (b, first, 0usize);
            while pos[cur] == usize::MAX {
                seen[cur] = true;
                internal += 1;
                let nb = g.neighbors(cur);
                let next = if nb[0] == prev { nb[1] } else { nb[0] };
                prev = cur;
                cur = next;
            }
            if cur == b {
                return Err(Error::Structural(format!("branch vertex {b} lies on a closed path")));
            }
            let key = (pos[b].min(pos[cur]), pos[b].max(pos[cur]));
            if b < cur {
                if edges.insert(key, internal).is_some() {
                    return Err(Error::Structural(format!("two paths join {b} and {cur}")));
                }
            }
        }
    }
    if let Some(v) = (0..g.n()).find(|&v| pos[v] == usize::MAX && !seen[v]) {
        return Err(Error::Structural(format!("vertex {v} lies on a cycle avoiding all branch vertices")));
    }
    let proper = edges.values().all(|&k| k > 0);
    Ok((Graph::from_edges_dedup(branch.len(), edges.into_keys()), proper))
}

fn spanning_tree_edges(g: &Graph, set: &[usize]) -> Vec<(usize, usize)> {
    let inside: BTreeSet<usize> = set.iter().copied().collect();
    let mut seen = BTreeSet::from([set[0]]);
    let mut q = VecDeque::from([set[0]]);
    let mut out = Vec::new();
    while let Some(v) = q.pop_front() {
        for &w in g.neighbors(v) {
            if inside.contains(&w) && seen.insert(w) {
                out.push((v.min(w), v.max(w)));
                q.push_back(w);
            }
        }
    }
    out
}

/// An induced-minor model of `h` in `subdivide_uniform(g, 2)`.
///
/// Each branch set keeps its host vertices, the subdivision vertices of a BFS
/// spanning tree, and for every pattern edge `pq` with `p < q` the subdivision
/// vertex of the least host edge from `B_p` to `B_q`, placed on the `p` side.
pub fn minor_to_induced_in_1subdivision(g: &Graph, h: &Graph, m: &MinorModel) -> Result<MinorModel> {
    if &m.pattern != h {
        return Err(Error::invalid("model pattern differs from h"));
    }
    validate_model(g, m, ModelKind::Minor)?;
    let sub = subdivide_uniform(g, 2)?;
    let x = |u: usize, v: usize| sub.path_of(u, v).expect("edge of g")[0];
    let mut owner = vec![usize::MAX; g.n()];
    for (p, set) in m.branch_sets.iter().enumerate() {
        for &v in set {
            owner[v] = p;
        }
    }
    let mut sets: Vec<Vec<usize>> = m.branch_sets.clone();
    for (p, set) in m.branch_sets.iter().enumerate() {
        for (u, v) in spanning_tree_edges(g, set) {
            sets[p].push(x(u, v));
        }
    }
    for (p, q) in h.edges() {
        let (u, v) = m.branch_sets[p]
            .iter()
            .flat_map(|&u| g.neighbors(u).iter().map(move |&v| (u, v)))
            .find(|&(_, v)| owner[v] == q)
            .expect("validated model realises every pattern edge");
        sets[p].push(x(u, v));
    }
    let out = MinorModel::new(h.clone(), sets);
    validate_model(&sub.graph, &out, ModelKind::Induced)?;
    Ok(out)
}

/// A vertex-minor sequence together with, for each pattern vertex, the host
/// label that survives to represent it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VmCertificate {
    pub steps: Vec<VmStep>,
    pub image: Vec<usize>,
}

impl VmCertificate {
    /// Replays the steps on `host` and checks that `image` is an isomorphism
    /// from `h` onto the result.
    pub fn verify(&self, host: &Graph, h: &Graph) -> Result<()> {
        let (out, labels) = apply_vm_sequence(host, &self.steps)?;
        let map = image_positions(&self.image, &labels)?;
        if out.n() != h.n() || !h.is_isomorphism(&out, &map) {
            return Err(Error::Structural("replayed sequence is not isomorphic to the pattern".into()));
        }
        Ok(())
    }
}

fn image_positions(image: &[usize], labels: &[usize]) -> Result<Vec<usize>> {
    image
        .iter()
        .map(|v| {
            labels
                .binary_search(v)
                .map_err(|_| Error::Structural(format!("image vertex {v} was deleted")))
        })
        .collect()
}

/// A sequence turning the proper subdivision `gstar` of `g` into `h`, given a
/// minor model `m` of `h` in `g`.
///
/// Long paths are first shortened to one internal vertex. Then, while the
/// current graph is larger than `h`, a vertex outside every branch set is
/// deleted (with its subdivision vertices) if one exists; otherwise the least
/// edge `ab` inside a branch set is contracted by locally complementing at `b`
/// and `x_ab`, deleting both, and dropping the doubled subdivision vertices.
/// Finally each pattern edge is realised by locally complementing at its
/// subdivision vertex and all subdivision vertices are deleted.
pub fn minor_to_vm_sequence(gstar: &Subdivision, h: &Graph, m: &MinorModel) -> Result<VmCertificate> {
    gstar.validate()?;
    if !gstar.is_proper() {
        return Err(Error::invalid("subdivision is not proper: some edge has no internal vertex"));
    }
    if &m.pattern != h {
        return Err(Error::invalid("model pattern differs from h"));
    }
    let g = &gstar.base;
    validate_model(g, m, ModelKind::Minor)?;

    let mut steps = Vec::new();
    let mut xs: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for (&(u, v), p) in gstar.edges.iter().zip(&gstar.paths) {
        for &x in p[1..].iter().rev() {
            steps.push(VmStep::LocalComplement(x));
            steps.push(VmStep::Delete(x));
        }
        xs.insert((u, v), p[0]);
    }

    let mut adj: Vec<BTreeSet<usize>> = (0..g.n()).map(|v| g.neighbors(v).iter().copied().collect()).collect();
    let mut alive: BTreeSet<usize> = (0..g.n()).collect();
    let mut owner = vec![usize::MAX; g.n()];
    let mut sets: Vec<BTreeSet<usize>> = Vec::new();
    for (p, set) in m.branch_sets.iter().enumerate() {
        for &v in set {
            owner[v] = p;
        }
        sets.push(set.iter().copied().collect());
    }
    let key = |a: usize, b: usize| (a.min(b), a.max(b));

    while alive.len() > h.n() {
        if let Some(&v) = alive.iter().find(|&&v| owner[v] == usize::MAX) {
            steps.push(VmStep::Delete(v));
            for w in std::mem::take(&mut adj[v]) {
                adj[w].remove(&v);
                steps.push(VmStep::Delete(xs.remove(&key(v, w)).unwrap()));
            }
            alive.remove(&v);
            continue;
        }
        let mut inner = None;
        for s in sets.iter().filter(|s| s.len() > 1) {
            for &a in s {
                if let Some(&b) = adj[a].iter().find(|&&b| b > a && s.contains(&b)) {
                    if inner.is_none_or(|e| (a, b) < e) {
                        inner = Some((a, b));
                    }
                }
            }
        }
        let (a, b) = inner.expect("a branch set with two vertices has an inner edge");
        let xab = xs.remove(&(a, b)).unwrap();
        steps.extend([
            VmStep::LocalComplement(b),
            VmStep::LocalComplement(xab),
            VmStep::Delete(b),
            VmStep::Delete(xab),
        ]);
        adj[a].remove(&b);
        for w in std::mem::take(&mut adj[b]) {
            if w == a {
                continue;
            }
            adj[w].remove(&b);
            let xbw = xs.remove(&key(b, w)).unwrap();
            if adj[a].contains(&w) {
                steps.push(VmStep::Delete(xbw));
            } else {
                adj[a].insert(w);
                adj[w].insert(a);
                xs.insert(key(a, w), xbw);
            }
        }
        sets[owner[b]].remove(&b);
        owner[b] = usize::MAX;
        alive.remove(&b);
    }

    let image: Vec<usize> = sets.iter().map(|s| *s.iter().next().unwrap()).collect();
    for (p, q) in h.edges() {
        steps.push(VmStep::LocalComplement(xs[&key(image[p], image[q])]));
    }
    steps.extend(xs.values().map(|&x| VmStep::Delete(x)));
    let cert = VmCertificate { steps, image };
    cert.verify(&gstar.graph, h)?;
    Ok(cert)
}

/// A degree-4 crossing vertex of a drawing with its neighbours in clockwise
/// order; `rotation[0]`-`rotation[2]` and `rotation[1]`-`rotation[3]` are the
/// two crossing curves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Crossing {
    pub vertex: usize,
    pub rotation: [usize; 4],
}

/// A drawing with every crossing replaced by a marked degree-4 vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MarkedDrawing {
    pub graph: Graph,
    pub crossings: Vec<Crossing>,
}

impl MarkedDrawing {
    pub fn validate(&self) -> Result<()> {
        let mut seen = BTreeSet::new();
        for c in &self.crossings {
            let v = c.vertex;
            if v >= self.graph.n() || !seen.insert(v) {
                return Err(Error::invalid(format!("crossing vertex {v} repeated or outside the graph")));
            }
            if self.graph.degree(v) != 4 {
                return Err(Error::invalid(format!("crossing vertex {v} has degree {}", self.graph.degree(v))));
            }
            let mut rot = c.rotation;
            rot.sort_unstable();
            if rot != self.graph.neighbors(v) {
                return Err(Error::invalid(format!("rotation at {v} does not list its neighbourhood")));
            }
        }
        Ok(())
    }

    /// The vertices that are not crossings, in increasing order.
    pub fn branch_vertices(&self) -> Vec<usize> {
        let cross: BTreeSet<usize> = self.crossings.iter().map(|c| c.vertex).collect();
        (0..self.graph.n()).filter(|v| !cross.contains(v)).collect()
    }

    /// The drawn graph: each curve followed straight through its crossings.
    /// Vertex `i` is `branch_vertices()[i]`.
    pub fn underlying_graph(&self) -> Result<Graph> {
        self.validate()?;
        let rot: BTreeMap<usize, [usize; 4]> = self.crossings.iter().map(|c| (c.vertex, c.rotation)).collect();
        let branch = self.branch_vertices();
        let mut edges = BTreeSet::new();
        for (i, &b) in branch.iter().enumerate() {
            for &first in self.graph.neighbors(b) {
                let (mut prev, mut cur) = (b, first);
                let mut hops = 0;
                while let Some(r) = rot.get(&cur) {
                    let k = r.iter().position(|&x| x == prev).unwrap();
                    prev = cur;
                    cur = r[(k + 2) % 4];
                    hops += 1;
                    if hops > 4 * self.crossings.len() + 4 {
                        return Err(Error::invalid("curve through crossings never ends"));
                    }
                }
                let j = branch.binary_search(&cur).unwrap();
                if j == i {
                    return Err(Error::invalid(format!("curve from {b} returns to itself")));
                }
                if i < j && !edges.insert((i, j)) {
                    return Err(Error::invalid(format!("two curves join {b} and {cur}")));
                }
            }
        }
        Ok(Graph::from_edges_dedup(branch.len(), edges))
    }
}

/// The cycle-augmented subdivided drawing and the sequence that resolves it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossingElimination {
    /// `subdivide_uniform(d.graph, 2)` plus the 4-cycle on the subdivision
    /// neighbours of each crossing vertex.
    pub d3: Graph,
    pub steps: Vec<VmStep>,
    /// Non-crossing vertices of the drawing; labels agree in `d.graph` and `d3`.
    pub branch: Vec<usize>,
}

/// Subdivides every edge once, joins the four subdivision neighbours of each
/// crossing in rotation order, then locally complements at each crossing and
/// deletes it. The result is a proper subdivision of the drawn graph.
pub fn eliminate_crossings_vm(d: &MarkedDrawing) -> Result<CrossingElimination> {
    let expected = d.underlying_graph()?;
    let sub = subdivide_uniform(&d.graph, 2)?;
    let mut extra = Vec::new();
    let mut steps = Vec::new();
    for c in &d.crossings {
        let mid: Vec<usize> = c.rotation.iter().map(|&w| sub.path_of(c.vertex, w).unwrap()[0]).collect();
        for i in 0..4 {
            extra.push((mid[i], mid[(i + 1) % 4]));
        }
        steps.push(VmStep::LocalComplement(c.vertex));
        steps.push(VmStep::Delete(c.vertex));
    }
    let d3 = sub.graph.with_edges(extra);
    let out = CrossingElimination {
        d3,
        steps,
        branch: d.branch_vertices(),
    };
    let (g, labels) = apply_vm_sequence(&out.d3, &out.steps)?;
    let branch = image_positions(&out.branch, &labels)?;
    let (base, proper) = recognize_subdivision(&g, &branch)?;
    if base != expected || !proper {
        return Err(Error::Structural("resolved drawing is not a proper subdivision of the drawn graph".into()));
    }
    Ok(out)
}

/// Sequence plus the surviving host vertex for each vertex of `h`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubdivisionCertificate {
    pub steps: Vec<VmStep>,
    pub branch: Vec<usize>,
}

impl SubdivisionCertificate {
    /// Replays the steps and recognises a proper subdivision of `h` with the
    /// recorded branch vertices.
    pub fn verify(&self, host: &Graph, h: &Graph) -> Result<()> {
        let (g, labels) = apply_vm_sequence(host, &self.steps)?;
        let branch = image_positions(&self.branch, &labels)?;
        let (base, proper) = recognize_subdivision(&g, &branch)?;
        if &base != h || !proper {
            return Err(Error::Structural("replayed graph is not a proper subdivision of the pattern".into()));
        }
        Ok(())
    }
}

/// Given an induced-minor model of `subdivide_uniform(h, 4)` in `g` with
/// `Δ(h) <= 3`, a sequence leaving a proper subdivision of `h`.
///
/// For every edge `uv` a shortest path through the three subdivision branch
/// sets is kept and its middle vertex `a_uv` marked. Around each `u`, the
/// component `X_u` of the rest containing `B_u` is pruned lowest index first
/// while the marked vertices (and, for leaves, the least vertex of `B_u`)
/// stay connected. A degree-3 piece that ends up as a triangle with three
/// tails is turned into a claw by one local complementation.
pub fn maxdeg3_vm_from_3subdivision(g: &Graph, h: &Graph, m: &MinorModel) -> Result<SubdivisionCertificate> {
    if h.max_degree() > 3 {
        return Err(Error::invalid(format!("pattern has maximum degree {} > 3", h.max_degree())));
    }
    let s3 = subdivide_uniform(h, 4)?;
    if m.pattern != s3.graph {
        return Err(Error::invalid("model pattern is not the 3-subdivision of h"));
    }
    validate_model(g, m, ModelKind::Induced)?;

    let mut alive = vec![false; g.n()];
    for v in m.covered() {
        alive[v] = true;
    }
    let touches = |v: usize, set: &[usize]| g.neighbors(v).iter().any(|w| set.binary_search(w).is_ok());

    let mut marked = Vec::with_capacity(s3.edges.len());
    for (&(u, v), p) in s3.edges.iter().zip(&s3.paths) {
        let mut zone: Vec<usize> = p.iter().flat_map(|&y| m.branch_sets[y].iter().copied()).collect();
        zone.sort_unstable();
        let (bu, bv) = (&m.branch_sets[u], &m.branch_sets[v]);
        let path = shortest_path(
            g,
            &zone,
            |x| touches(x, bu),
            |x| touches(x, bv),
        )
        .ok_or_else(|| Error::Structural(format!("no path through the subdivision of {u}-{v}")))?;
        for &z in &zone {
            if !path.contains(&z) {
                alive[z] = false;
            }
        }
        marked.push(path[path.len() / 2]);
    }

    let is_marked: BTreeSet<usize> = marked.iter().copied().collect();
    let mut branch = Vec::with_capacity(h.n());
    let mut repairs = Vec::new();
    for u in 0..h.n() {
        let bu = &m.branch_sets[u];
        let terms: Vec<usize> = s3
            .edges
            .iter()
            .zip(&marked)
            .filter(|((a, b), _)| *a == u || *b == u)
            .map(|(_, &a)| a)
            .collect();
        let rest: Vec<usize> = (0..g.n()).filter(|&x| alive[x] && !is_marked.contains(&x)).collect();
        let comp = g
            .components(Some(&rest))
            .into_iter()
            .find(|c| c.binary_search(&bu[0]).is_ok())
            .unwrap();
        if terms.is_empty() {
            for &x in &comp[1..] {
                alive[x] = false;
            }
            branch.push(comp[0]);
            continue;
        }
        let mut required = terms.clone();
        if terms.len() == 1 {
            required.push(bu[0]);
        }
        let mut keep: BTreeSet<usize> = comp.iter().chain(&terms).copied().collect();
        for &x in &comp {
            if !keep.contains(&x) || required.contains(&x) {
                continue;
            }
            let trial: Vec<usize> = keep.iter().copied().filter(|&y| y != x).collect();
            if let Some(c) = g
                .components(Some(&trial))
                .into_iter()
                .find(|c| required.iter().all(|r| c.binary_search(r).is_ok()))
            {
                keep = c.into_iter().collect();
            }
        }
        for &x in &comp {
            if !keep.contains(&x) {
                alive[x] = false;
            }
        }
        let piece: Vec<usize> = keep.iter().copied().collect();
        let inner: Vec<usize> = piece.iter().copied().filter(|x| !terms.contains(x)).collect();
        let sub = g.induced_subgraph(&piece);
        let deg = |x: usize| sub.degree(piece.binary_search(&x).unwrap());
        let centre = match terms.len() {
            1 => bu[0],
            2 => inner.iter().copied().find(|x| bu.binary_search(x).is_ok()).unwrap_or(inner[0]),
            _ => {
                let big: Vec<usize> = piece.iter().copied().filter(|&x| deg(x) >= 3).collect();
                let tree = sub.m() + 1 == piece.len();
                if tree && big.len() == 1 && deg(big[0]) == 3 {
                    big[0]
                } else if sub.m() == piece.len() && big.len() == 3 && big.iter().all(|&x| deg(x) == 3) {
                    let tri = |x: usize| big.contains(&x);
                    let fix = big.iter().find_map(|&t| {
                        let out = g.neighbors(t).iter().copied().find(|y| keep.contains(y) && !tri(*y))?;
                        (!is_marked.contains(&out)).then_some((t, out))
                    });
                    let Some((t, out)) = fix else {
                        return Err(Error::Structural(format!(
                            "triangle piece around {u} has no vertex with an unmarked outside neighbour: {piece:?}"
                        )));
                    };
                    repairs.push(t);
                    out
                } else {
                    return Err(Error::Structural(format!(
                        "piece around {u} is neither a claw nor a triangle with tails: {piece:?}"
                    )));
                }
            }
        };
        branch.push(centre);
    }

    let mut steps: Vec<VmStep> = (0..g.n()).filter(|&x| !alive[x]).map(VmStep::Delete).collect();
    for t in repairs {
        steps.push(VmStep::LocalComplement(t));
        steps.push(VmStep::Delete(t));
    }
    let cert = SubdivisionCertificate { steps, branch };
    cert.verify(g, h)?;
    Ok(cert)
}

/// A shortest path inside `zone` from a vertex satisfying `start` to one
/// satisfying `end`; ties go to lower indices.
fn shortest_path(
    g: &Graph,
    zone: &[usize],
    start: impl Fn(usize) -> bool,
    end: impl Fn(usize) -> bool,
) -> Option<Vec<usize>> {
    let inside = |x: usize| zone.binary_search(&x).is_ok();
    let mut parent: BTreeMap<usize, usize> = BTreeMap::new();
    let mut layer: Vec<usize> = zone.iter().copied().filter(|&x| start(x)).collect();
    for &x in &layer {
        parent.insert(x, x);
    }
    while !layer.is_empty() {
        if let Some(&t) = layer.iter().filter(|&&x| end(x)).min() {
            let mut path = vec![t];
            let mut x = t;
            while parent[&x] != x {
                x = parent[&x];
                path.push(x);
            }
            path.reverse();
            return Some(path);
        }
        let mut next = Vec::new();
        for &x in &layer {
            for &y in g.neighbors(x) {
                if inside(y) && !parent.contains_key(&y) {
                    parent.insert(y, x);
                    next.push(y);
                }
            }
        }
        next.sort_unstable();
        layer = next;
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::subdivide;

    #[test]
    fn local_complement_examples() {
        let g = Graph::new(3, [(0, 1)]).unwrap();
        assert_eq!(local_complement(&g, 2).unwrap(), g);
        assert_eq!(local_complement(&Graph::path(3), 1).unwrap(), Graph::complete(3));
        assert!(local_complement(&g, 3).is_err());
    }

    #[test]
    fn local_complement_is_an_involution_on_small_graphs() {
        for n in 1..=5usize {
            let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
            for mask in 0u32..(1 << pairs.len()) {
                let g = Graph::new(n, pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e)).unwrap();
                for v in 0..n {
                    let once = local_complement(&g, v).unwrap();
                    assert_eq!(local_complement(&once, v).unwrap(), g);
                }
            }
        }
    }

    #[test]
    fn apply_examples() {
        let g = Graph::cycle(5);
        assert_eq!(apply_vm_sequence(&g, &[]).unwrap(), (g.clone(), (0..5).collect()));
        let (out, labels) = apply_vm_sequence(&g, &[VmStep::Delete(2)]).unwrap();
        assert_eq!(labels, vec![0, 1, 3, 4]);
        assert_eq!(out, g.induced_subgraph(&labels));

        let (out, labels) =
            apply_vm_sequence(&Graph::path(3), &[VmStep::LocalComplement(1), VmStep::Delete(1)]).unwrap();
        assert_eq!(labels, vec![0, 2]);
        assert_eq!(out, Graph::complete(2));

        let err = apply_vm_sequence(&g, &[VmStep::Delete(1), VmStep::LocalComplement(1)]).unwrap_err();
        assert!(matches!(err, Error::InvalidStep { index: 1, .. }));
        let err = apply_vm_sequence(&g, &[VmStep::Delete(9)]).unwrap_err();
        assert!(matches!(err, Error::InvalidStep { index: 0, .. }));
    }

    #[test]
    fn induced_model_in_1_subdivision() {
        let k4 = Graph::complete(4);
        let id = MinorModel::identity(&k4);
        let out = minor_to_induced_in_1subdivision(&k4, &k4, &id).unwrap();
        let sub = subdivide_uniform(&k4, 2).unwrap();
        assert_eq!(out.covered().len(), sub.graph.n());
        // each subdivision vertex joins the lower endpoint of its edge
        for (&(u, _), p) in sub.edges.iter().zip(&sub.paths) {
            assert!(out.branch_sets[u].contains(&p[0]));
        }

        let k3 = MinorModel::new(Graph::complete(3), vec![vec![0, 1], vec![2], vec![3]]);
        let out = minor_to_induced_in_1subdivision(&k4, &k3.pattern, &k3).unwrap();
        out.validate(&sub.graph, ModelKind::Induced).unwrap();

        let one = MinorModel::new(Graph::empty(1), vec![vec![2]]);
        let out = minor_to_induced_in_1subdivision(&k4, &one.pattern, &one).unwrap();
        assert_eq!(out.branch_sets, vec![vec![2]]);
    }

    #[test]
    fn triangle_from_hexagon() {
        let k3 = Graph::complete(3);
        let sub = subdivide_uniform(&k3, 2).unwrap();
        let cert = minor_to_vm_sequence(&sub, &k3, &MinorModel::identity(&k3)).unwrap();
        use VmStep::*;
        assert_eq!(
            cert.steps,
            vec![LocalComplement(3), LocalComplement(4), LocalComplement(5), Delete(3), Delete(4), Delete(5)]
        );
        assert_eq!(cert.image, vec![0, 1, 2]);
    }

    #[test]
    fn contracted_k4_gives_triangle() {
        let k4 = Graph::complete(4);
        let sub = subdivide(&k4, |u, v| 2 + (u + v) % 3).unwrap();
        let m = MinorModel::new(Graph::complete(3), vec![vec![0, 1], vec![2], vec![3]]);
        let cert = minor_to_vm_sequence(&sub, &m.pattern, &m).unwrap();
        cert.verify(&sub.graph, &m.pattern).unwrap();

        let h = Graph::path(2);
        let m = MinorModel::new(h.clone(), vec![vec![0], vec![3]]);
        minor_to_vm_sequence(&sub, &h, &m).unwrap();
    }

    #[test]
    fn improper_subdivision_is_rejected() {
        let g = Graph::cycle(4);
        let sub = subdivide(&g, |u, _| if u == 0 { 2 } else { 1 }).unwrap();
        let err = minor_to_vm_sequence(&sub, &g, &MinorModel::identity(&g)).unwrap_err();
        assert!(matches!(err, Error::InvalidArgument(_)));
    }

    fn single_crossing() -> MarkedDrawing {
        // curves 0-4-2 and 1-4-3 through crossing 4
        let graph = Graph::new(5, [(0, 4), (1, 4), (2, 4), (3, 4)]).unwrap();
        MarkedDrawing {
            graph,
            crossings: vec![Crossing {
                vertex: 4,
                rotation: [0, 1, 2, 3],
            }],
        }
    }

    #[test]
    fn crossing_free_drawing_is_untouched() {
        let d = MarkedDrawing {
            graph: Graph::cycle(4),
            crossings: vec![],
        };
        let out = eliminate_crossings_vm(&d).unwrap();
        assert!(out.steps.is_empty());
        assert_eq!(out.d3, subdivide_uniform(&d.graph, 2).unwrap().graph);
    }

    #[test]
    fn single_crossing_is_straightened() {
        let d = single_crossing();
        assert_eq!(d.underlying_graph().unwrap(), Graph::new(4, [(0, 2), (1, 3)]).unwrap());
        let out = eliminate_crossings_vm(&d).unwrap();
        let sub = subdivide_uniform(&d.graph, 2).unwrap();
        let c: Vec<usize> = (0..4).map(|w| sub.path_of(4, w).unwrap()[0]).collect();
        let (g, labels) = apply_vm_sequence(&out.d3, &out.steps).unwrap();
        let at = |v: usize| labels.binary_search(&v).unwrap();
        assert!(g.has_edge(at(c[0]), at(c[2])));
        assert!(g.has_edge(at(c[1]), at(c[3])));
        for i in 0..4 {
            assert!(!g.has_edge(at(c[i]), at(c[(i + 1) % 4])));
        }
    }

    #[test]
    fn two_crossings() {
        let mut edges = vec![(0, 4), (1, 4), (2, 4), (3, 4)];
        edges.extend([(5, 9), (6, 9), (7, 9), (8, 9)]);
        let d = MarkedDrawing {
            graph: Graph::new(10, edges).unwrap(),
            crossings: vec![
                Crossing { vertex: 4, rotation: [0, 1, 2, 3] },
                Crossing { vertex: 9, rotation: [5, 6, 7, 8] },
            ],
        };
        let out = eliminate_crossings_vm(&d).unwrap();
        assert_eq!(out.steps.len(), 4);
    }

    #[test]
    fn bad_rotation_is_rejected() {
        let mut d = single_crossing();
        d.crossings[0].rotation = [0, 1, 2, 2];
        assert!(eliminate_crossings_vm(&d).is_err());
    }

    fn claw() -> Graph {
        Graph::complete_bipartite(1, 3)
    }

    #[test]
    fn identity_3_subdivision_needs_no_steps() {
        let h = claw();
        let s3 = subdivide_uniform(&h, 4).unwrap();
        let m = MinorModel::identity(&s3.graph);
        let cert = maxdeg3_vm_from_3subdivision(&s3.graph, &h, &m).unwrap();
        assert!(cert.steps.is_empty());
        assert_eq!(cert.branch, vec![0, 1, 2, 3]);
    }

    #[test]
    fn chord_vertex_is_pruned() {
        let h = claw();
        let s3 = subdivide_uniform(&h, 4).unwrap();
        let leg = &s3.paths[0];
        let z = s3.graph.n();
        let g = Graph::new(
            z + 1,
            s3.graph.edges().chain([(leg[0], z), (leg[1], z)]),
        )
        .unwrap();
        let mut sets: Vec<Vec<usize>> = (0..s3.graph.n()).map(|v| vec![v]).collect();
        sets[leg[1]].push(z);
        let m = MinorModel::new(s3.graph.clone(), sets);
        let cert = maxdeg3_vm_from_3subdivision(&g, &h, &m).unwrap();
        assert!(cert.steps.contains(&VmStep::Delete(z)));
        cert.verify(&g, &h).unwrap();
    }

    #[test]
    fn triangle_piece_is_repaired() {
        // centre replaced by triangle 0,1,2; leg i is 0+i - p - q - r - leaf
        let mut edges = vec![(0, 1), (1, 2), (0, 2)];
        let mut next = 3;
        let mut legs = Vec::new();
        for t in 0..3 {
            let leg: Vec<usize> = (next..next + 4).collect();
            next += 4;
            edges.push((t, leg[0]));
            edges.extend(leg.windows(2).map(|w| (w[0], w[1])));
            legs.push(leg);
        }
        let g = Graph::new(next, edges).unwrap();
        let h = claw();
        let s3 = subdivide_uniform(&h, 4).unwrap();
        let mut sets = vec![vec![0, 1, 2]];
        sets.extend(legs.iter().map(|l| vec![l[3]]));
        for (i, p) in s3.paths.iter().enumerate() {
            assert_eq!(s3.edges[i], (0, i + 1));
            for (j, _) in p.iter().enumerate() {
                sets.push(vec![legs[i][j]]);
            }
        }
        let m = MinorModel::new(s3.graph.clone(), sets);
        let cert = maxdeg3_vm_from_3subdivision(&g, &h, &m).unwrap();
        assert_eq!(cert.steps, vec![VmStep::LocalComplement(0), VmStep::Delete(0)]);
        assert_eq!(cert.branch[0], legs[0][0]);
    }

    #[test]
    fn recognition() {
        let k4 = Graph::complete(4);
        let sub = subdivide(&k4, |u, v| 1 + (u + v) % 3).unwrap();
        let (base, proper) = recognize_subdivision(&sub.graph, &[0, 1, 2, 3]).unwrap();
        assert_eq!(base, k4);
        assert!(!proper);
        assert!(recognize_subdivision(&Graph::cycle(4), &[0]).is_err());
        assert!(recognize_subdivision(&Graph::cycle(4), &[0, 2]).is_err());
    }
}
