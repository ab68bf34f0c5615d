//! Symmetric GF(2) perturbations and their colour-perturbation models.

use std::collections::HashMap;

use crate::error::{check_cap, Error, Result};
use crate::graph::{Builder, Graph};

/// Square 0/1 matrix with rows stored as bit words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gf2Matrix {
    n: usize,
    rows: Vec<Vec<u64>>,
}

impl Gf2Matrix {
    pub fn zeros(n: usize) -> Gf2Matrix {
        Gf2Matrix { n, rows: vec![vec![0; n.div_ceil(64)]; n] }
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> bool) -> Gf2Matrix {
        let mut m = Gf2Matrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    pub fn from_rows(rows: &[Vec<bool>]) -> Result<Gf2Matrix> {
        let n = rows.len();
        if let Some(i) = rows.iter().position(|r| r.len() != n) {
            return Err(Error::invalid(format!("row {i} has {} entries, expected {n}", rows[i].len())));
        }
        Ok(Gf2Matrix::from_fn(n, |i, j| rows[i][j]))
    }

    /// The adjacency matrix of `g`.
    pub fn adjacency(g: &Graph) -> Gf2Matrix {
        Gf2Matrix::from_fn(g.n(), |i, j| g.has_edge(i, j))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i][j / 64] >> (j % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        let bit = 1u64 << (j % 64);
        if value {
            self.rows[i][j / 64] |= bit;
        } else {
            self.rows[i][j / 64] &= !bit;
        }
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (i + 1..self.n).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn add(&self, other: &Gf2Matrix) -> Result<Gf2Matrix> {
        if self.n != other.n {
            return Err(Error::invalid(format!("matrix sizes {} and {} differ", self.n, other.n)));
        }
        let rows = self
            .rows
            .iter()
            .zip(&other.rows)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x ^ y).collect())
            .collect();
        Ok(Gf2Matrix { n: self.n, rows })
    }

    pub fn column(&self, j: usize) -> Vec<u64> {
        let mut c = vec![0u64; self.n.div_ceil(64)];
        for i in (0..self.n).filter(|&i| self.get(i, j)) {
            c[i / 64] |= 1 << (i % 64);
        }
        c
    }

    pub fn rank(&self) -> usize {
        self.independent_columns().len()
    }

    /// Indices of the first maximal set of independent columns, scanning
    /// left to right.
    fn independent_columns(&self) -> Vec<usize> {
        // reduced basis keyed by pivot bit
        let mut basis: Vec<(usize, Vec<u64>)> = Vec::new();
        let mut chosen = Vec::new();
        for j in 0..self.n {
            let mut c = self.column(j);
            for (pivot, b) in &basis {
                if c[pivot / 64] >> (pivot % 64) & 1 == 1 {
                    c.iter_mut().zip(b).for_each(|(x, y)| *x ^= y);
                }
            }
            if let Some(w) = c.iter().position(|&x| x != 0) {
                let pivot = w * 64 + c[w].trailing_zeros() as usize;
                for (_, b) in basis.iter_mut() {
                    if b[pivot / 64] >> (pivot % 64) & 1 == 1 {
                        b.iter_mut().zip(&c).for_each(|(x, y)| *x ^= y);
                    }
                }
                basis.push((pivot, c));
                chosen.push(j);
            }
        }
        chosen
    }

    /// The graph whose adjacency matrix is this one with the diagonal cleared.
    pub fn to_graph(&self) -> Result<Graph> {
        if !self.is_symmetric() {
            return Err(Error::invalid("adjacency matrix must be symmetric"));
        }
        Ok(Graph::from_fn(self.n, |i, j| self.get(i, j)))
    }
}

/// Colouring `zeta` of the vertices by `0..k` and a graph `h` on the colours
/// that may have loops.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PerturbationModel {
    pub k: usize,
    pub h: Vec<Vec<bool>>,
    pub zeta: Vec<usize>,
}

impl PerturbationModel {
    /// One colour, no edges: perturbing changes nothing.
    pub fn trivial(n: usize) -> PerturbationModel {
        PerturbationModel { k: 1, h: vec![vec![false]], zeta: vec![0; n] }
    }

    pub fn validate(&self) -> Result<()> {
        if self.k == 0 || self.h.len() != self.k || self.h.iter().any(|r| r.len() != self.k) {
            return Err(Error::invalid(format!("H must be a {0}x{0} matrix with k > 0", self.k)));
        }
        if (0..self.k).any(|i| (0..i).any(|j| self.h[i][j] != self.h[j][i])) {
            return Err(Error::invalid("H must be symmetric"));
        }
        if let Some(v) = self.zeta.iter().position(|&c| c >= self.k) {
            return Err(Error::invalid(format!("colour {} of vertex {v} out of range", self.zeta[v])));
        }
        Ok(())
    }

    pub fn has_loop(&self, c: usize) -> bool {
        self.h[c][c]
    }

    /// Colours that some vertex uses.
    pub fn used_colours(&self) -> Vec<usize> {
        let mut c = self.zeta.clone();
        c.sort_unstable();
        c.dedup();
        c
    }
}

/// Flip `vw` whenever the colours of `v` and `w` are adjacent in `H`.
pub fn apply_perturbation(g0: &Graph, m: &PerturbationModel) -> Result<Graph> {
    m.validate()?;
    if m.zeta.len() != g0.n() {
        return Err(Error::invalid(format!("colouring covers {} vertices, graph has {}", m.zeta.len(), g0.n())));
    }
    let mut b = Builder::from_graph(g0);
    for v in 0..g0.n() {
        for w in v + 1..g0.n() {
            if m.h[m.zeta[v]][m.zeta[w]] {
                b.toggle(v, w);
            }
        }
    }
    Ok(b.build())
}

/// Largest rank accepted; the column space is enumerated in full.
pub const MAX_PERTURBATION_RANK: usize = 16;

/// Colour every vertex by the index of its column in the column space of
/// `p`. The space is listed as XORs of the first independent columns,
/// counting in binary, so colour 0 is the zero vector and `k = 2^rank`.
pub fn perturbation_model_from_matrix(p: &Gf2Matrix) -> Result<PerturbationModel> {
    if !p.is_symmetric() {
        return Err(Error::invalid("perturbation matrix must be symmetric"));
    }
    let basis: Vec<Vec<u64>> = p.independent_columns().into_iter().map(|j| p.column(j)).collect();
    let r = basis.len();
    check_cap("perturbation rank", r, MAX_PERTURBATION_RANK)?;
    let k = 1usize << r;
    let words = p.n().div_ceil(64);
    let mut index: HashMap<Vec<u64>, usize> = HashMap::with_capacity(k);
    let mut v = vec![0u64; words];
    index.insert(v.clone(), 0);
    // Gray-code walk visits every combination; store under its binary index
    for g in 1..k {
        let flip = g.trailing_zeros() as usize;
        v.iter_mut().zip(&basis[flip]).for_each(|(x, y)| *x ^= y);
        let gray = g ^ (g >> 1);
        index.insert(v.clone(), gray);
    }
    let zeta: Vec<usize> = (0..p.n()).map(|j| index[&p.column(j)]).collect();
    let mut rep = vec![None; k];
    for (i, &c) in zeta.iter().enumerate() {
        rep[c].get_or_insert(i);
    }
    let h = (0..k)
        .map(|j| {
            (0..k)
                .map(|jj| match (rep[j], rep[jj]) {
                    (Some(i), Some(ii)) => p.get(ii, i),
                    _ => false,
                })
                .collect()
        })
        .collect();
    Ok(PerturbationModel { k, h, zeta })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_symmetric_rank(n: usize, r: usize, rng: &mut ChaCha8Rng) -> Gf2Matrix {
        loop {
            let mut p = Gf2Matrix::zeros(n);
            for _ in 0..r {
                let v: Vec<bool> = (0..n).map(|_| rng.gen()).collect();
                p = p.add(&Gf2Matrix::from_fn(n, |i, j| v[i] && v[j])).unwrap();
            }
            if p.rank() == r {
                return p;
            }
        }
    }

    // rank by plain row reduction over bools
    fn oracle_rank(p: &Gf2Matrix) -> usize {
        let n = p.n();
        let mut rows: Vec<Vec<bool>> = (0..n).map(|i| (0..n).map(|j| p.get(i, j)).collect()).collect();
        let mut rank = 0;
        for col in 0..n {
            if let Some(piv) = (rank..n).find(|&r| rows[r][col]) {
                rows.swap(rank, piv);
                for r in 0..n {
                    if r != rank && rows[r][col] {
                        let pr = rows[rank].clone();
                        rows[r].iter_mut().zip(pr).for_each(|(x, y)| *x ^= y);
                    }
                }
                rank += 1;
            }
        }
        rank
    }

    #[test]
    fn rank_matches_row_reduction() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..200 {
            let n = rng.gen_range(1..=70);
            let p = Gf2Matrix::from_fn(n, |_, _| rng.gen_bool(0.3));
            assert_eq!(p.rank(), oracle_rank(&p));
        }
    }

    #[test]
    fn zero_matrix_gives_one_colour() {
        let m = perturbation_model_from_matrix(&Gf2Matrix::zeros(5)).unwrap();
        assert_eq!(m.k, 1);
        assert_eq!(m.zeta, vec![0; 5]);
        assert!(!m.h[0][0]);
    }

    #[test]
    fn all_ones_complements() {
        let p = Gf2Matrix::from_fn(5, |_, _| true);
        let m = perturbation_model_from_matrix(&p).unwrap();
        assert_eq!(m.k, 2);
        assert_eq!(m.used_colours(), vec![1]);
        assert!(m.has_loop(1));
        let g0 = Graph::path(5);
        assert_eq!(apply_perturbation(&g0, &m).unwrap(), g0.complement());
    }

    #[test]
    fn apply_examples() {
        let g0 = Graph::cycle(6);
        let m = PerturbationModel { k: 2, h: vec![vec![false; 2]; 2], zeta: vec![0, 1, 0, 1, 0, 1] };
        assert_eq!(apply_perturbation(&g0, &m).unwrap(), g0);
        let m = PerturbationModel { k: 1, h: vec![vec![true]], zeta: vec![0; 6] };
        assert_eq!(apply_perturbation(&g0, &m).unwrap(), g0.complement());
        // bipartite complement between the two classes
        let m = PerturbationModel { k: 2, h: vec![vec![false, true], vec![true, false]], zeta: vec![0, 0, 0, 1, 1, 1] };
        let g = apply_perturbation(&g0, &m).unwrap();
        for v in 0..6 {
            for w in v + 1..6 {
                let across = (v < 3) != (w < 3);
                assert_eq!(g.has_edge(v, w), g0.has_edge(v, w) ^ across);
            }
        }
        let bad = PerturbationModel { k: 1, h: vec![vec![false]], zeta: vec![0, 1, 0, 0, 0, 0] };
        assert!(apply_perturbation(&g0, &bad).is_err());
    }

    #[test]
    fn asymmetric_rejected() {
        let p = Gf2Matrix::from_fn(3, |i, j| i == 0 && j == 1);
        assert!(perturbation_model_from_matrix(&p).is_err());
    }

    #[test]
    fn round_trip_rank_two() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..50 {
            let p = random_symmetric_rank(10, 2, &mut rng);
            let g0 = Graph::from_fn(10, |_, _| rng.gen_bool(0.4));
            let m = perturbation_model_from_matrix(&p).unwrap();
            assert!(m.k <= 4);
            let expected = Gf2Matrix::adjacency(&g0).add(&p).unwrap().to_graph().unwrap();
            assert_eq!(apply_perturbation(&g0, &m).unwrap(), expected);
        }
    }
}
