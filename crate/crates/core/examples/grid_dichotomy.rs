//! A grid with jump edges either keeps a jump-free block, giving an induced
//! grid minor, or has a jump in every block, giving a clique minor.
//!
//!     cargo run --example grid_dichotomy

use twhad::dichotomy::{grid_dichotomy, k2s_in_strong_grid, DichotomyInput, DichotomyResult};
use twhad::graph::make_grid;
use twhad::minors::validate_model;

fn main() -> twhad::Result<()> {
    let (k, t) = (2, 3);
    let side = t * (2 * k + 1);
    let (grid, _) = make_grid(side, side)?;

    let pure = DichotomyInput::new(grid.clone(), k, t)?;
    report("pure grid", &pure)?;

    // one jump inside the interior of each block
    let mut jumps = Vec::new();
    for a in 1..=t {
        for b in 1..=t {
            let (ox, oy) = ((a - 1) * (2 * k + 1), (b - 1) * (2 * k + 1));
            jumps.push((pure.vertex(ox + 2, oy + 2), pure.vertex(ox + 4, oy + 3)));
        }
    }
    let jumpy = DichotomyInput::new(grid.with_edges(jumps), k, t)?;
    report("every block jumps", &jumpy)?;

    for s in 1..=4 {
        let (g, m) = k2s_in_strong_grid(s)?;
        validate_model(&g, &m, twhad::minors::ModelKind::Minor)?;
        println!("K_{} in the {}x{} strong grid: sets {:?}", 2 * s, 2 * s, 2 * s, m.branch_sets);
    }
    Ok(())
}

fn report(name: &str, input: &DichotomyInput) -> twhad::Result<()> {
    let r = grid_dichotomy(input)?;
    validate_model(&input.host, r.model(), r.kind())?;
    match &r {
        DichotomyResult::InducedGrid { block, model } => {
            println!("{name}: induced {0}x{0} grid in block {block:?}", input.k);
            println!("  branch sets {:?}", model.branch_sets);
        }
        DichotomyResult::CliqueMinor { model } => {
            println!("{name}: K_{} minor", model.pattern.n());
            println!("  branch set sizes {:?}", model.branch_sets.iter().map(Vec::len).collect::<Vec<_>>());
        }
    }
    Ok(())
}
