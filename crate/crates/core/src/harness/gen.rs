//! Seeded random instances for every family the experiments and the
//! acceptance suite use. Every generator takes the RNG explicitly.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::circle::ChordDiagram;
use crate::dichotomy::DichotomyInput;
use crate::error::{Error, Result};
use crate::graph::{make_grid, subdivide, subdivide_uniform, Graph, Subdivision};
use crate::minors::{contract_model, MinorModel};
use crate::ordered::{x_free_violation, OrderedGraph};
use crate::perturbation::Gf2Matrix;
use crate::vertex_minor::{Crossing, MarkedDrawing};

/// The RNG for instance `index` of a run seeded with `seed`: one ChaCha
/// stream per instance, so instances do not depend on evaluation order.
pub fn instance_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

pub fn random_graph<R: Rng>(n: usize, p: f64, rng: &mut R) -> Graph {
    Graph::from_fn(n, |_, _| rng.gen_bool(p))
}

/// A random connected graph: a random spanning tree plus `G(n, p)` edges.
pub fn random_connected_graph<R: Rng>(n: usize, p: f64, rng: &mut R) -> Graph {
    let mut edges = Vec::new();
    for v in 1..n {
        edges.push((rng.gen_range(0..v), v));
    }
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges_dedup(n, edges)
}

/// Intersection graph of `n` random integer intervals in `[0, 2n)`; chordal.
pub fn random_interval_graph<R: Rng>(n: usize, rng: &mut R) -> Graph {
    let span = 2 * n.max(1) as u32;
    let iv: Vec<(u32, u32)> = (0..n)
        .map(|_| {
            let a = rng.gen_range(0..span);
            let len = rng.gen_range(0..=span / 3);
            (a, (a + len).min(span))
        })
        .collect();
    Graph::from_fn(n, |i, j| iv[i].0 <= iv[j].1 && iv[j].0 <= iv[i].1)
}

/// Chords that start as `n` nested-free neighbours `1 1 2 2 ...` and are
/// shuffled by `swaps` random adjacent transpositions, giving sparse circle
/// graphs.
pub fn random_local_chord_diagram<R: Rng>(n: usize, swaps: usize, rng: &mut R) -> ChordDiagram {
    let mut seq: Vec<usize> = (0..2 * n).map(|p| p / 2 + 1).collect();
    if n > 0 {
        for _ in 0..swaps {
            let i = rng.gen_range(0..2 * n - 1);
            seq.swap(i, i + 1);
        }
    }
    ChordDiagram::from_sequence(&seq).expect("every id twice")
}

/// A random ordered graph made ×-free: start from `G(n, p)` in a random
/// order and, while some crossing pair has no connecting edge, add one of
/// the four cross pairs at random.
pub fn random_x_free<R: Rng>(n: usize, p: f64, rng: &mut R) -> OrderedGraph {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut og = OrderedGraph::new(random_graph(n, p, rng), order.clone()).expect("shuffled permutation");
    while let Some(((u, v), (x, y))) = x_free_violation(&og) {
        let (a, b) = *[(u, x), (u, y), (v, x), (v, y)].choose(rng).unwrap();
        let g = og.graph.with_edges([(a, b)]);
        og = OrderedGraph::new(g, order.clone()).expect("same order");
    }
    og
}

/// Symmetric `n x n` matrix of rank exactly `r`, as a sum of `r` random
/// symmetric rank-one matrices `v v^T`, resampled on rank deficiency.
pub fn random_symmetric_rank<R: Rng>(n: usize, r: usize, rng: &mut R) -> Result<Gf2Matrix> {
    if r > n {
        return Err(Error::invalid(format!("rank {r} impossible for {n} x {n}")));
    }
    loop {
        let mut p = Gf2Matrix::zeros(n);
        for _ in 0..r {
            let v: Vec<bool> = (0..n).map(|_| rng.gen()).collect();
            p = p.add(&Gf2Matrix::from_fn(n, |i, j| v[i] && v[j]))?;
        }
        if p.rank() == r {
            return Ok(p);
        }
    }
}

/// The `t(2k+1)` square grid with, for each block, probability `p` of one
/// random jump edge inside its interior, and `extra` further random jumps
/// anywhere.
pub fn random_jump_host<R: Rng>(k: usize, t: usize, p: f64, extra: usize, rng: &mut R) -> Result<DichotomyInput> {
    let w = 2 * k + 1;
    let side = t * w;
    let (g, map) = make_grid(side, side)?;
    let mut jumps = Vec::new();
    let far = |a: (usize, usize), b: (usize, usize)| a.0.abs_diff(b.0) >= 2 || a.1.abs_diff(b.1) >= 2;
    if k >= 2 {
        for a in 0..t {
            for b in 0..t {
                if !rng.gen_bool(p) {
                    continue;
                }
                // interior coordinates, 0-based: a*w + 1 ..= a*w + w - 2
                let pick = |rng: &mut R| (a * w + rng.gen_range(1..w - 1), b * w + rng.gen_range(1..w - 1));
                loop {
                    let (x, y) = (pick(rng), pick(rng));
                    if far(x, y) {
                        jumps.push((map.vertex(x.0, x.1), map.vertex(y.0, y.1)));
                        break;
                    }
                }
            }
        }
    }
    for _ in 0..extra {
        let x = (rng.gen_range(0..side), rng.gen_range(0..side));
        let y = (rng.gen_range(0..side), rng.gen_range(0..side));
        if far(x, y) {
            jumps.push((map.vertex(x.0, x.1), map.vertex(y.0, y.1)));
        }
    }
    DichotomyInput::new(g.with_edges(jumps), k, t)
}

/// Replace every pattern vertex by a random tree of 1 to `max_blob`
/// vertices and every pattern edge by 1 or 2 edges between the two trees.
/// The blobs form an induced-minor model of `pattern`; `extra` pendant
/// vertices hang off random blob vertices outside every branch set.
pub fn random_expansion<R: Rng>(pattern: &Graph, max_blob: usize, extra: usize, rng: &mut R) -> (Graph, MinorModel) {
    let mut sets: Vec<Vec<usize>> = Vec::with_capacity(pattern.n());
    let mut edges = Vec::new();
    let mut next = 0;
    for _ in 0..pattern.n() {
        let size = rng.gen_range(1..=max_blob.max(1));
        let set: Vec<usize> = (next..next + size).collect();
        for i in 1..size {
            edges.push((set[rng.gen_range(0..i)], set[i]));
        }
        next += size;
        sets.push(set);
    }
    for (p, q) in pattern.edges() {
        for _ in 0..rng.gen_range(1..=2) {
            edges.push((*sets[p].choose(rng).unwrap(), *sets[q].choose(rng).unwrap()));
        }
    }
    let inner = next;
    for _ in 0..extra {
        if inner == 0 {
            break;
        }
        edges.push((rng.gen_range(0..inner), next));
        next += 1;
    }
    let g = Graph::from_edges_dedup(next, edges);
    (g, MinorModel::new(pattern.clone(), sets))
}

/// A random connected graph on `n` vertices, a random minor model inside it
/// (random contractions, some sets dropped) and the pattern it models with
/// some edges removed.
pub fn random_minor_triple<R: Rng>(n: usize, p: f64, rng: &mut R) -> (Graph, Graph, MinorModel) {
    let g = random_connected_graph(n, p, rng);
    let mut owner: Vec<usize> = (0..n).collect();
    for _ in 0..rng.gen_range(0..n.max(1)) {
        let edges: Vec<(usize, usize)> = g.edges().filter(|&(u, v)| owner[u] != owner[v]).collect();
        if let Some(&(u, v)) = edges.choose(rng) {
            let (keep, gone) = (owner[u], owner[v]);
            owner.iter_mut().filter(|o| **o == gone).for_each(|o| *o = keep);
        }
    }
    let mut labels: Vec<usize> = owner.clone();
    labels.sort_unstable();
    labels.dedup();
    let mut sets: Vec<Vec<usize>> = labels
        .iter()
        .map(|&l| (0..n).filter(|&v| owner[v] == l).collect())
        .filter(|_| rng.gen_bool(0.8))
        .collect();
    if sets.is_empty() {
        sets.push(vec![0]);
    }
    let full = MinorModel::new(Graph::empty(sets.len()), sets);
    let quotient = contract_model(&g, &full).expect("sets are disjoint and connected");
    let h = Graph::from_edges_dedup(quotient.n(), quotient.edges().filter(|_| rng.gen_bool(0.8)));
    let model = MinorModel::new(h.clone(), full.branch_sets);
    (g, h, model)
}

/// A proper subdivision of `g` with each edge replaced by a path of 2 to
/// `max_len` edges.
pub fn random_proper_subdivision<R: Rng>(g: &Graph, max_len: usize, rng: &mut R) -> Subdivision {
    subdivide(g, |_, _| rng.gen_range(2..=max_len.max(2))).expect("lengths at least 2")
}

/// A random graph of maximum degree at most 3 on `n` vertices.
pub fn random_subcubic<R: Rng>(n: usize, tries: usize, rng: &mut R) -> Graph {
    let mut deg = vec![0; n];
    let mut edges = Vec::new();
    for _ in 0..tries {
        if n < 2 {
            break;
        }
        let (u, v) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if u != v && deg[u] < 3 && deg[v] < 3 && !edges.contains(&(u.min(v), u.max(v))) {
            deg[u] += 1;
            deg[v] += 1;
            edges.push((u.min(v), u.max(v)));
        }
    }
    Graph::from_edges_dedup(n, edges)
}

/// The host and model for the max-degree-3 construction: a subcubic pattern
/// `h`, and a random expansion of its 3-subdivision as induced-minor host.
pub fn random_3subdivision_host<R: Rng>(n: usize, rng: &mut R) -> (Graph, Graph, MinorModel) {
    let h = random_subcubic(n, 3 * n, rng);
    let p = subdivide_uniform(&h, 4).expect("length 4").graph;
    let (g, m) = random_expansion(&p, 2, rng.gen_range(0..3), rng);
    (g, h, m)
}

/// A drawing of a random graph on `nb` vertices with up to `crossings`
/// crossings, each inserted where two curves share no endpoint.
pub fn random_marked_drawing<R: Rng>(nb: usize, p: f64, crossings: usize, rng: &mut R) -> MarkedDrawing {
    let base = random_graph(nb, p, rng);
    let mut curves: Vec<Vec<usize>> = base.edges().map(|(u, v)| vec![u, v]).collect();
    let mut rotations: Vec<Crossing> = Vec::new();
    let mut next = nb;
    for _ in 0..crossings * 4 {
        if rotations.len() == crossings || curves.len() < 2 {
            break;
        }
        let (i, j) = (rng.gen_range(0..curves.len()), rng.gen_range(0..curves.len()));
        if i == j {
            continue;
        }
        let (si, sj) = (rng.gen_range(0..curves[i].len() - 1), rng.gen_range(0..curves[j].len() - 1));
        let (a, b) = (curves[i][si], curves[i][si + 1]);
        let (c, d) = (curves[j][sj], curves[j][sj + 1]);
        if a == c || a == d || b == c || b == d {
            continue;
        }
        curves[i].insert(si + 1, next);
        curves[j].insert(sj + 1, next);
        rotations.push(Crossing { vertex: next, rotation: [a, c, b, d] });
        next += 1;
    }
    // a later crossing may split a segment next to an earlier one
    let mut edges = Vec::new();
    for c in &curves {
        edges.extend(c.windows(2).map(|w| (w[0], w[1])));
    }
    let graph = Graph::from_edges_dedup(next, edges);
    for r in rotations.iter_mut() {
        let v = r.vertex;
        let mut rot = [0; 4];
        for (k, c) in curves.iter().filter(|c| c.contains(&v)).enumerate() {
            let at = c.iter().position(|&x| x == v).unwrap();
            rot[k] = c[at - 1];
            rot[k + 2] = c[at + 1];
        }
        r.rotation = rot;
    }
    MarkedDrawing { graph, crossings: rotations }
}
