//! Minor and induced-minor models, plus the searches and oracles built on
//! them.

mod clique;
mod independent;
mod linkage;
mod search;

pub use clique::{clique_minor, hadwiger, hadwiger_with_model};
pub use independent::{max_independent_set, max_independent_set_with};
pub use linkage::{induced_sublinkage, menger_linkage, Linkage};
pub use search::{
    contains_induced_minor, contains_minor, find_model, induced_grid_number, is_planar_wagner, smooth_reduce,
};

use thiserror::Error;

use crate::error::Result;
use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelViolation {
    #[error("expected {expected} branch sets, got {got}")]
    WrongCount { expected: usize, got: usize },
    #[error("branch set of pattern vertex {0} is empty")]
    EmptyBranchSet(usize),
    #[error("branch set of pattern vertex {pattern} contains {vertex}, outside the host")]
    OutOfRange { pattern: usize, vertex: usize },
    #[error("host vertex {vertex} lies in the branch sets of both {first} and {second}")]
    Overlap { vertex: usize, first: usize, second: usize },
    #[error("branch set of pattern vertex {0} is not connected")]
    Disconnected(usize),
    #[error("no host edge between the branch sets of pattern edge {0}-{1}")]
    MissingEdge(usize, usize),
    #[error("host edge between branch sets of non-adjacent pattern vertices {0} and {1}")]
    ExtraAdjacency(usize, usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelKind {
    Minor,
    Induced,
}

/// Branch sets for each pattern vertex, each sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinorModel {
    pub pattern: Graph,
    pub branch_sets: Vec<Vec<usize>>,
}

impl MinorModel {
    pub fn new(pattern: Graph, mut branch_sets: Vec<Vec<usize>>) -> MinorModel {
        for b in &mut branch_sets {
            b.sort_unstable();
            b.dedup();
        }
        MinorModel { pattern, branch_sets }
    }

    /// Singleton branch sets: `g` as a model of itself.
    pub fn identity(g: &Graph) -> MinorModel {
        MinorModel::new(g.clone(), (0..g.n()).map(|v| vec![v]).collect())
    }

    pub fn covered(&self) -> Vec<usize> {
        let mut all: Vec<usize> = self.branch_sets.iter().flatten().copied().collect();
        all.sort_unstable();
        all
    }

    pub fn validate(&self, g: &Graph, kind: ModelKind) -> Result<()> {
        validate_model(g, self, kind)
    }
}

/// Checks disjointness, connectivity, edge realisation and (for induced
/// models) absence of extra adjacencies.
pub fn validate_model(g: &Graph, m: &MinorModel, kind: ModelKind) -> Result<()> {
    let p = m.pattern.n();
    if m.branch_sets.len() != p {
        return Err(ModelViolation::WrongCount {
            expected: p,
            got: m.branch_sets.len(),
        }
        .into());
    }
    let mut owner = vec![usize::MAX; g.n()];
    for (i, set) in m.branch_sets.iter().enumerate() {
        if set.is_empty() {
            return Err(ModelViolation::EmptyBranchSet(i).into());
        }
        for &v in set {
            if v >= g.n() {
                return Err(ModelViolation::OutOfRange { pattern: i, vertex: v }.into());
            }
            if owner[v] != usize::MAX {
                return Err(ModelViolation::Overlap {
                    vertex: v,
                    first: owner[v],
                    second: i,
                }
                .into());
            }
            owner[v] = i;
        }
    }
    for (i, set) in m.branch_sets.iter().enumerate() {
        if !g.is_connected_set(set) {
            return Err(ModelViolation::Disconnected(i).into());
        }
    }
    let touching = adjacency_between_sets(g, &owner, p);
    for (a, b) in m.pattern.edges() {
        if !touching[a][b] {
            return Err(ModelViolation::MissingEdge(a, b).into());
        }
    }
    if kind == ModelKind::Induced {
        for a in 0..p {
            for b in a + 1..p {
                if touching[a][b] && !m.pattern.has_edge(a, b) {
                    return Err(ModelViolation::ExtraAdjacency(a, b).into());
                }
            }
        }
    }
    Ok(())
}

fn adjacency_between_sets(g: &Graph, owner: &[usize], p: usize) -> Vec<Vec<bool>> {
    let mut touching = vec![vec![false; p]; p];
    for (u, v) in g.edges() {
        let (a, b) = (owner[u], owner[v]);
        if a != usize::MAX && b != usize::MAX && a != b {
            touching[a][b] = true;
            touching[b][a] = true;
        }
    }
    touching
}

/// The graph on the branch sets of `m`, two adjacent when some host edge joins
/// them. For a valid induced model this is the pattern itself.
pub fn contract_model(g: &Graph, m: &MinorModel) -> Result<Graph> {
    validate_model(g, m, ModelKind::Minor)?;
    let mut owner = vec![usize::MAX; g.n()];
    for (i, set) in m.branch_sets.iter().enumerate() {
        for &v in set {
            owner[v] = i;
        }
    }
    let touching = adjacency_between_sets(g, &owner, m.pattern.n());
    Ok(Graph::from_fn(m.pattern.n(), |a, b| touching[a][b]))
}

/// Lifts `inner` (a model of some pattern in `outer.pattern`) to a model in the
/// host of `outer`.
pub fn compose_models(outer: &MinorModel, inner: &MinorModel) -> Result<MinorModel> {
    let mid = outer.pattern.n();
    let mut sets = Vec::with_capacity(inner.branch_sets.len());
    for (i, set) in inner.branch_sets.iter().enumerate() {
        let mut lifted = Vec::new();
        for &p in set {
            if p >= mid {
                return Err(ModelViolation::OutOfRange { pattern: i, vertex: p }.into());
            }
            lifted.extend_from_slice(&outer.branch_sets[p]);
        }
        sets.push(lifted);
    }
    Ok(MinorModel::new(inner.pattern.clone(), sets))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    fn c6_pairs() -> Vec<Vec<usize>> {
        vec![vec![0, 1], vec![2, 3], vec![4, 5]]
    }

    #[test]
    fn validation_examples() {
        let g = Graph::cycle(6);
        MinorModel::identity(&g).validate(&g, ModelKind::Induced).unwrap();

        let m = MinorModel::new(Graph::complete(3), c6_pairs());
        m.validate(&g, ModelKind::Minor).unwrap();

        let m = MinorModel::new(Graph::empty(3), c6_pairs());
        assert_eq!(
            m.validate(&g, ModelKind::Induced).unwrap_err(),
            Error::Model(ModelViolation::ExtraAdjacency(0, 1))
        );
    }

    #[test]
    fn validation_names_each_violation() {
        let g = Graph::cycle(6);
        let k3 = Graph::complete(3);
        let bad = |sets: Vec<Vec<usize>>| MinorModel::new(k3.clone(), sets).validate(&g, ModelKind::Minor).unwrap_err();
        assert_eq!(
            bad(vec![vec![0, 1], vec![1, 2], vec![4, 5]]),
            Error::Model(ModelViolation::Overlap { vertex: 1, first: 0, second: 1 })
        );
        assert_eq!(
            bad(vec![vec![0, 2], vec![3], vec![4, 5]]),
            Error::Model(ModelViolation::Disconnected(0))
        );
        assert_eq!(
            bad(vec![vec![0], vec![2], vec![4]]),
            Error::Model(ModelViolation::MissingEdge(0, 1))
        );
        assert_eq!(bad(vec![vec![0], vec![]]), Error::Model(ModelViolation::WrongCount { expected: 3, got: 2 }));
        assert_eq!(
            bad(vec![vec![0], vec![], vec![1]]),
            Error::Model(ModelViolation::EmptyBranchSet(1))
        );
        assert_eq!(
            bad(vec![vec![0], vec![9], vec![1]]),
            Error::Model(ModelViolation::OutOfRange { pattern: 1, vertex: 9 })
        );
    }

    #[test]
    fn contraction_and_composition() {
        let g = Graph::cycle(6);
        let id = MinorModel::identity(&g);
        assert_eq!(contract_model(&g, &id).unwrap(), g);

        let m = MinorModel::new(Graph::complete(3), c6_pairs());
        assert_eq!(contract_model(&g, &m).unwrap(), Graph::complete(3));

        assert_eq!(compose_models(&id, &m).unwrap(), m);
        let inner = MinorModel::identity(&m.pattern);
        assert_eq!(compose_models(&m, &inner).unwrap(), m);

        // P3 inside K3 inside C6
        let p2 = MinorModel::new(Graph::path(2), vec![vec![0, 1], vec![2]]);
        let lifted = compose_models(&m, &p2).unwrap();
        assert_eq!(lifted.branch_sets, vec![vec![0, 1, 2, 3], vec![4, 5]]);
        lifted.validate(&g, ModelKind::Induced).unwrap();
    }
}
