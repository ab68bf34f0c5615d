//! A symmetric GF(2) matrix of rank r turns into a colouring with 2^r
//! colours; applying it to a circle graph and running the separator
//! routine on a chord diagram.
//!
//!     cargo run --example perturbed_circle

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use twhad::circle::{crossing_graph, perturbed_separator_or_clique, perturbed_x_size, ChordDiagram};
use twhad::format::write_matrix;
use twhad::harness::gen::random_symmetric_rank;
use twhad::ordered::SeparatorOrClique;
use twhad::perturbation::{apply_perturbation, perturbation_model_from_matrix, Gf2Matrix};
use twhad::Limits;

fn main() -> twhad::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let p = random_symmetric_rank(6, 2, &mut rng)?;
    print!("P (rank {}):\n{}", p.rank(), write_matrix(&p));
    let model = perturbation_model_from_matrix(&p)?;
    println!("k = {}, colours {:?}", model.k, model.zeta);

    let cd = ChordDiagram::random(6, &mut rng);
    let g0 = crossing_graph(&cd);
    let g = apply_perturbation(&g0, &model)?;
    let expected = Gf2Matrix::adjacency(&g0).add(&p)?;
    assert_eq!(g, zero_diagonal(expected).to_graph()?);
    println!("circle graph m={}, perturbed m={}", g0.m(), g.m());

    // 52 nested chords and X = all of them: the routine cuts the circle
    let t = 1;
    let n = perturbed_x_size(1, t);
    let seq: Vec<usize> = (1..=n).chain((1..=n).rev()).collect();
    let nested = ChordDiagram::from_sequence(&seq)?;
    let x: Vec<usize> = (0..n).collect();
    let trivial = twhad::perturbation::PerturbationModel::trivial(n);
    let r = perturbed_separator_or_clique(&nested, &trivial, &x, t, &Limits::default())?;
    match r.outcome {
        SeparatorOrClique::Separation(s) => println!("nested chords: separation of order {} ({:?})", s.order(), r.route),
        SeparatorOrClique::Clique(m) => println!("nested chords: K_{} ({:?})", m.pattern.n(), r.route),
    }
    Ok(())
}

fn zero_diagonal(mut m: Gf2Matrix) -> Gf2Matrix {
    for i in 0..m.n() {
        m.set(i, i, false);
    }
    m
}
