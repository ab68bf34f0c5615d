//! Exact treewidth and Hadwiger number on a few small graphs, with both
//! certificates checked and printed.
//!
//!     cargo run --example treewidth_and_hadwiger

use twhad::decomposition::td_validate;
use twhad::format::{write_model, write_td};
use twhad::graph::{make_grid, make_path_power};
use twhad::minors::{hadwiger_with_model, ModelKind};
use twhad::treewidth::treewidth_with_decomposition;
use twhad::{Graph, Limits};

fn main() -> twhad::Result<()> {
    let limits = Limits::default();
    let graphs = [
        ("petersen", petersen()),
        ("grid 4x4", make_grid(4, 4)?.0),
        ("path power P_10^3", make_path_power(10, 3)?),
        ("cycle C_9", Graph::cycle(9)),
    ];
    for (name, g) in graphs {
        let (tw, td) = treewidth_with_decomposition(&g, &limits)?;
        td_validate(&g, &td)?;
        let (had, model) = hadwiger_with_model(&g, &limits)?;
        model.validate(&g, ModelKind::Minor)?;
        println!("{name}: n={} m={} tw={tw} had={had}", g.n(), g.m());
        if name == "petersen" {
            print!("{}", write_td(&td, g.n()));
            print!("{}", write_model(&model));
        }
    }
    Ok(())
}

fn petersen() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((i + 5, (i + 2) % 5 + 5));
    }
    Graph::new(10, edges).unwrap()
}
