//! Random outer-string diagrams give ×-free ordered graphs; the separator
//! routine returns a balanced separation or a clique minor for a set X.
//!
//!     cargo run --example outer_string_separator

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use twhad::decomposition::is_alpha_balanced;
use twhad::geometry::{outer_string_graph, random_string_diagram};
use twhad::minors::ModelKind;
use twhad::num::rational::Ratio;
use twhad::ordered::{is_x_free, xfree_separator_or_clique, SeparatorOrClique};

fn main() -> twhad::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let t = 2;
    for round in 0..5 {
        let d = random_string_diagram(24, 1, &mut rng);
        let og = outer_string_graph(&d);
        assert!(is_x_free(&og));
        let x = og.order().to_vec();
        match xfree_separator_or_clique(&og, &x, t)? {
            SeparatorOrClique::Separation(s) => {
                let balanced = is_alpha_balanced(&og.graph, &s, &x, Ratio::new(3, 4))?;
                println!("{round}: m={} separator {:?}, balanced {balanced}", og.graph.m(), s.separator());
            }
            SeparatorOrClique::Clique(m) => {
                m.validate(&og.graph, ModelKind::Minor)?;
                println!("{round}: m={} K_{} model {:?}", og.graph.m(), m.pattern.n(), m.branch_sets);
            }
        }
    }
    Ok(())
}
