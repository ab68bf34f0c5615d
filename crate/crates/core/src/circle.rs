//! Chord diagrams, their crossing graphs, and balanced separators or clique
//! minors in perturbed circle graphs.

use std::collections::BTreeMap;

use num::rational::Ratio;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::decomposition::is_alpha_balanced;
use crate::error::{Error, Limits, Result};
use crate::graph::{CyclicOrder, Graph};
use crate::minors::{clique_minor, menger_linkage, validate_model, ModelKind};
use crate::ordered::{clique_from_biclique, OrderedGraph, SeparatorOrClique};
use crate::perturbation::{apply_perturbation, PerturbationModel};

/// Chords on the endpoint positions `0..2n` of a circle. Chord `i` is the
/// `i`-th smallest id of the sequence it was read from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChordDiagram {
    order: CyclicOrder,
    chords: Vec<(usize, usize)>,
    ids: Vec<usize>,
}

impl ChordDiagram {
    /// From the ids met walking around the circle; each id appears twice.
    pub fn from_sequence(seq: &[usize]) -> Result<ChordDiagram> {
        let mut ends: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (p, &id) in seq.iter().enumerate() {
            ends.entry(id).or_default().push(p);
        }
        if let Some((id, e)) = ends.iter().find(|(_, e)| e.len() != 2) {
            return Err(Error::invalid(format!("chord id {id} appears {} times, expected 2", e.len())));
        }
        let ids = ends.keys().copied().collect();
        let chords = ends.values().map(|e| (e[0], e[1])).collect();
        let order = CyclicOrder::new((0..seq.len()).collect())?;
        Ok(ChordDiagram { order, chords, ids })
    }

    /// A uniformly random perfect matching of `2n` positions, ids `1..=n`
    /// by first appearance.
    pub fn random<R: Rng>(n: usize, rng: &mut R) -> ChordDiagram {
        let mut seq: Vec<usize> = (0..2 * n).map(|p| p / 2).collect();
        seq.shuffle(rng);
        let mut relabel = vec![0; n];
        let mut next = 0;
        for x in seq.iter_mut() {
            if relabel[*x] == 0 {
                next += 1;
                relabel[*x] = next;
            }
            *x = relabel[*x];
        }
        ChordDiagram::from_sequence(&seq).expect("every id twice")
    }

    pub fn n(&self) -> usize {
        self.chords.len()
    }

    pub fn order(&self) -> &CyclicOrder {
        &self.order
    }

    /// Endpoint positions of each chord, smaller first.
    pub fn chords(&self) -> &[(usize, usize)] {
        &self.chords
    }

    pub fn ids(&self) -> &[usize] {
        &self.ids
    }

    /// The id at each position.
    pub fn sequence(&self) -> Vec<usize> {
        let mut seq = vec![0; 2 * self.n()];
        for (i, &(a, b)) in self.chords.iter().enumerate() {
            seq[a] = self.ids[i];
            seq[b] = self.ids[i];
        }
        seq
    }

    /// Chord index at each position.
    fn chord_at(&self) -> Vec<usize> {
        let mut at = vec![0; 2 * self.n()];
        for (i, &(a, b)) in self.chords.iter().enumerate() {
            at[a] = i;
            at[b] = i;
        }
        at
    }
}

pub fn crossing_graph(cd: &ChordDiagram) -> Graph {
    let c = cd.chords();
    Graph::from_fn(cd.n(), |i, j| {
        let ((a, b), (x, y)) = (c[i], c[j]);
        cd.order.chords_cross(a, b, x, y).expect("chords are independent")
    })
}

/// The crossing graph ordered by first endpoint, i.e. the circle cut just
/// before position 0.
pub fn circle_ordered_graph(cd: &ChordDiagram) -> OrderedGraph {
    let mut order: Vec<usize> = (0..cd.n()).collect();
    order.sort_by_key(|&i| cd.chords[i].0);
    OrderedGraph::new(crossing_graph(cd), order).expect("chords sorted by first endpoint")
}

type Edge = (usize, usize);

/// A colour whose class holds two crossing non-incident edges and two
/// non-crossing non-incident edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoodColour {
    pub colour: usize,
    pub crossing: (Edge, Edge),
    pub non_crossing: (Edge, Edge),
}

/// Scan each colour class of the edge-coloured complete graph on the labels
/// of `c` for both kinds of pairs. `colours` is keyed by `(min, max)`.
pub fn good_colour(c: &CyclicOrder, colours: &BTreeMap<Edge, usize>) -> Result<GoodColour> {
    let labels = c.elements();
    let mut classes: BTreeMap<usize, Vec<Edge>> = BTreeMap::new();
    for (i, &a) in labels.iter().enumerate() {
        for &b in &labels[i + 1..] {
            let e = (a.min(b), a.max(b));
            let colour = colours
                .get(&e)
                .ok_or_else(|| Error::invalid(format!("edge {e:?} has no colour")))?;
            classes.entry(*colour).or_default().push(e);
        }
    }
    for (&colour, edges) in &classes {
        let mut crossing = None;
        let mut non_crossing = None;
        for (i, &e) in edges.iter().enumerate() {
            for &f in &edges[i + 1..] {
                if e.0 == f.0 || e.0 == f.1 || e.1 == f.0 || e.1 == f.1 {
                    continue;
                }
                let slot = if c.chords_cross(e.0, e.1, f.0, f.1)? { &mut crossing } else { &mut non_crossing };
                slot.get_or_insert((e, f));
            }
        }
        if let (Some(crossing), Some(non_crossing)) = (crossing, non_crossing) {
            return Ok(GoodColour { colour, crossing, non_crossing });
        }
    }
    Err(Error::Structural("no colour class holds both a crossing and a non-crossing pair".into()))
}

/// How a certificate was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Route {
    /// Following the separator argument step by step.
    Constructive,
    /// Exhaustive clique-minor search after the argument stalled.
    Fallback,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PerturbedResult {
    pub graph: Graph,
    pub outcome: SeparatorOrClique,
    pub route: Route,
}

/// Required `|X|` for `k` colours and target `t`.
pub fn perturbed_x_size(k: usize, t: usize) -> usize {
    4 * k * k * (4 * k + 9) * t
}

/// On the perturbed crossing graph `G` and `|X| = 4k^2(4k+9)t`: cut the circle
/// into `4k` segments each holding `2k(4k+9)t` endpoints of `X`, and run
/// Menger between the chord sets of every two segments. A cut below
/// `k(4k+9)t` is a `(4k-1)/4k`-balanced separation. Otherwise take a
/// monochromatic `t`-set of chords joining each two segments, find a good
/// colour on the auxiliary complete graph of segments and read off `K_{t,t}`
/// from the crossing or the non-crossing pair depending on whether the
/// colour has a loop. Falls back to exhaustive search for `K_{t+1}`.
pub fn perturbed_separator_or_clique(
    cd: &ChordDiagram,
    m: &PerturbationModel,
    x: &[usize],
    t: usize,
    limits: &Limits,
) -> Result<PerturbedResult> {
    m.validate()?;
    let n = cd.n();
    if m.zeta.len() != n {
        return Err(Error::invalid(format!("colouring covers {} chords, diagram has {n}", m.zeta.len())));
    }
    if t == 0 {
        return Err(Error::invalid("t must be positive"));
    }
    let k = m.k;
    let mut xs = x.to_vec();
    xs.sort_unstable();
    xs.dedup();
    let want = perturbed_x_size(k, t);
    if xs.len() != x.len() || x.len() != want {
        return Err(Error::invalid(format!("X must hold exactly {want} distinct chords, got {}", x.len())));
    }
    if let Some(&v) = xs.iter().find(|&&v| v >= n) {
        return Err(Error::invalid(format!("X contains {v}, outside the diagram")));
    }
    let g = apply_perturbation(&crossing_graph(cd), m)?;
    let s = 4 * k;
    let per = 2 * k * (4 * k + 9) * t;
    let threshold = k * (4 * k + 9) * t;
    let alpha = Ratio::new(4 * k as u64 - 1, 4 * k as u64);

    let chord_at = cd.chord_at();
    let mut in_x = vec![false; n];
    xs.iter().for_each(|&v| in_x[v] = true);
    let mut segment = vec![0; 2 * n];
    let mut seen = 0;
    for p in 0..2 * n {
        segment[p] = (seen / per).min(s - 1);
        if in_x[chord_at[p]] {
            seen += 1;
        }
    }
    let d: Vec<Vec<usize>> = (0..s)
        .map(|j| {
            let mut dj: Vec<usize> = (0..2 * n).filter(|&p| segment[p] == j).map(|p| chord_at[p]).collect();
            dj.sort_unstable();
            dj.dedup();
            dj
        })
        .collect();

    let mut f: BTreeMap<Edge, (usize, Vec<usize>)> = BTreeMap::new();
    let mut complete = true;
    for a in 0..s {
        for b in a + 1..s {
            let (link, sep) = menger_linkage(&g, &d[a], &d[b])?;
            if link.len() < threshold {
                if !is_alpha_balanced(&g, &sep, &xs, alpha)? {
                    return Err(Error::Structural(format!(
                        "Menger cut between segments {a} and {b} is not balanced"
                    )));
                }
                return Ok(PerturbedResult { graph: g, outcome: SeparatorOrClique::Separation(sep), route: Route::Constructive });
            }
            let common: Vec<usize> = d[a].iter().copied().filter(|v| d[b].binary_search(v).is_ok()).collect();
            let mut by_colour: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
            for v in common {
                by_colour.entry(m.zeta[v]).or_default().push(v);
            }
            match by_colour.into_iter().max_by_key(|(c, vs)| (vs.len(), std::cmp::Reverse(*c))) {
                Some((c, vs)) if vs.len() >= t => {
                    f.insert((a, b), (c, vs[..t].to_vec()));
                }
                _ => complete = false,
            }
        }
    }

    if complete {
        let colours = f.iter().map(|(&e, (c, _))| (e, *c)).collect();
        let segments = CyclicOrder::new((0..s).collect())?;
        if let Ok(good) = good_colour(&segments, &colours) {
            let (e, e2) = if m.has_loop(good.colour) { good.non_crossing } else { good.crossing };
            let (left, right) = (&f[&e].1, &f[&e2].1);
            if left.iter().all(|&u| right.iter().all(|&v| g.has_edge(u, v))) {
                let sides = |vs: &[usize]| vs.iter().map(|&v| vec![v]).collect::<Vec<_>>();
                let model = clique_from_biclique(&sides(left), &sides(right));
                validate_model(&g, &model, ModelKind::Minor)?;
                return Ok(PerturbedResult { graph: g, outcome: SeparatorOrClique::Clique(model), route: Route::Constructive });
            }
        }
    }
    match clique_minor(&g, t + 1, limits)? {
        Some(model) => Ok(PerturbedResult { graph: g, outcome: SeparatorOrClique::Clique(model), route: Route::Fallback }),
        None => Err(Error::Structural(format!("no small cut and no K_{} minor", t + 1))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ordered::is_x_free;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn cd(seq: &[usize]) -> ChordDiagram {
        ChordDiagram::from_sequence(seq).unwrap()
    }

    #[test]
    fn crossing_graph_examples() {
        assert_eq!(crossing_graph(&cd(&[1, 2, 1, 2])), Graph::complete(2));
        assert_eq!(crossing_graph(&cd(&[1, 1, 2, 2])), Graph::empty(2));
        assert_eq!(crossing_graph(&cd(&[1, 2, 3, 1, 2, 3])), Graph::complete(3));
        assert!(ChordDiagram::from_sequence(&[1, 2, 1]).is_err());
    }

    #[test]
    fn chords_follow_sorted_ids() {
        let d = cd(&[7, 3, 7, 5, 3, 5]);
        assert_eq!(d.ids(), &[3, 5, 7]);
        assert_eq!(d.chords(), &[(1, 4), (3, 5), (0, 2)]);
        assert_eq!(d.sequence(), vec![7, 3, 7, 5, 3, 5]);
    }

    #[test]
    fn random_diagrams() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        assert_eq!(ChordDiagram::random(1, &mut rng).sequence(), vec![1, 1]);
        for _ in 0..100 {
            let n = rng.gen_range(0..12);
            let d = ChordDiagram::random(n, &mut rng);
            assert_eq!(d.n(), n);
            // pairs interleave exactly when their positions alternate
            let g = crossing_graph(&d);
            for i in 0..n {
                for j in i + 1..n {
                    let ((a, b), (x, y)) = (d.chords()[i], d.chords()[j]);
                    assert_eq!(g.has_edge(i, j), (a < x && x < b) != (a < y && y < b));
                }
            }
            assert!(is_x_free(&circle_ordered_graph(&d)));
        }
    }

    fn edges_of(n: usize) -> Vec<Edge> {
        (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect()
    }

    #[test]
    fn good_colour_single_class() {
        let c = CyclicOrder::new(vec![1, 2, 3, 4]).unwrap();
        let colours = edges_of(5).into_iter().filter(|e| e.0 > 0).map(|e| (e, 0)).collect();
        let gc = good_colour(&c, &colours).unwrap();
        assert_eq!(gc.colour, 0);
        assert_eq!(gc.crossing, ((1, 3), (2, 4)));
        assert_eq!(gc.non_crossing, ((1, 2), (3, 4)));
    }

    #[test]
    fn good_colour_full_class() {
        let c = CyclicOrder::new((0..8).collect()).unwrap();
        let colours = edges_of(8).into_iter().map(|e| (e, 1)).collect();
        assert_eq!(good_colour(&c, &colours).unwrap().colour, 1);
    }

    fn check_good(c: &CyclicOrder, colours: &BTreeMap<Edge, usize>, gc: &GoodColour) {
        for (pair, want) in [(gc.crossing, true), (gc.non_crossing, false)] {
            let ((a, b), (x, y)) = pair;
            assert_eq!(colours[&(a, b)], gc.colour);
            assert_eq!(colours[&(x, y)], gc.colour);
            let mut ends = [a, b, x, y];
            ends.sort_unstable();
            assert!(ends.windows(2).all(|w| w[0] != w[1]));
            let inside = |v| crate::graph::cyclic_between(c, a, v, b).unwrap();
            assert_eq!(inside(x) != inside(y), want);
        }
    }

    #[test]
    fn good_colour_random_partitions() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for k in 1..=3 {
            for _ in 0..50 {
                let mut labels: Vec<usize> = (0..4 * k).collect();
                labels.shuffle(&mut rng);
                let c = CyclicOrder::new(labels).unwrap();
                let colours = edges_of(4 * k).into_iter().map(|e| (e, rng.gen_range(0..k))).collect();
                let gc = good_colour(&c, &colours).unwrap();
                check_good(&c, &colours, &gc);
            }
        }
    }

    #[test]
    fn nested_chords_separate() {
        let mut seq: Vec<usize> = (1..=52).collect();
        seq.extend((1..=52).rev());
        let d = cd(&seq);
        let x: Vec<usize> = (0..52).collect();
        let r = perturbed_separator_or_clique(&d, &PerturbationModel::trivial(52), &x, 1, &Limits::default()).unwrap();
        assert_eq!(r.route, Route::Constructive);
        match r.outcome {
            SeparatorOrClique::Separation(s) => {
                assert!(s.order() < 13);
                s.validate(&r.graph).unwrap();
                assert!(is_alpha_balanced(&r.graph, &s, &x, Ratio::new(3, 4)).unwrap());
            }
            other => panic!("{other:?}"),
        }
    }

    /// Chords joining every two of four arcs, 9 for neighbouring arcs and 8
    /// for opposite ones; within an arc the chords to the later arcs come
    /// first, in reverse so that they fan out.
    fn four_arc_diagram() -> ChordDiagram {
        let count = |a: usize, b: usize| if (a + 2) % 4 == b || (b + 2) % 4 == a { 8 } else { 9 };
        let mut id = 0;
        let mut arcs: Vec<Vec<usize>> = vec![Vec::new(); 4];
        let mut ids: BTreeMap<Edge, Vec<usize>> = BTreeMap::new();
        for a in 0..4 {
            for b in a + 1..4 {
                ids.insert((a, b), (0..count(a, b)).map(|_| { id += 1; id }).collect());
            }
        }
        for a in 0..4 {
            for o in 1..4 {
                let b = (a + o) % 4;
                let mut v = ids[&(a.min(b), a.max(b))].clone();
                if a > b {
                    v.reverse();
                }
                arcs[a].extend(v);
            }
        }
        cd(&arcs.concat())
    }

    #[test]
    fn crossing_families_give_an_edge_model() {
        let d = four_arc_diagram();
        assert_eq!(d.n(), 52);
        let x: Vec<usize> = (0..52).collect();
        let r = perturbed_separator_or_clique(&d, &PerturbationModel::trivial(52), &x, 1, &Limits::default()).unwrap();
        match &r.outcome {
            SeparatorOrClique::Clique(model) => {
                assert_eq!(model.pattern, Graph::complete(2));
                model.validate(&r.graph, ModelKind::Minor).unwrap();
                assert_eq!(r.route, Route::Constructive);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn wrong_x_size() {
        let d = cd(&[1, 1, 2, 2]);
        let e = perturbed_separator_or_clique(&d, &PerturbationModel::trivial(2), &[0, 1], 1, &Limits::default());
        assert!(matches!(e.unwrap_err(), Error::InvalidArgument(_)));
    }
}
