//! Build a tree-decomposition from a brute-force balanced-separator oracle
//! and compare its width with the exact treewidth.
//!
//!     cargo run --example separator_decomposition

use twhad::decomposition::{exhaustive_balanced_separator, td_from_separator_oracle, td_validate, BalanceSpec};
use twhad::graph::make_grid;
use twhad::treewidth::treewidth_exact;
use twhad::{Graph, Limits};

fn main() -> twhad::Result<()> {
    let (g, _) = make_grid(3, 4)?;
    // the 3x4 grid has treewidth 3; ask for separators of order k = 3
    let (c, k) = (2, 3);
    let q = c * k + 1;
    let spec = BalanceSpec::new(c, k, q, vec![0, 1, 2])?;
    let alpha = spec.alpha;
    let oracle = move |h: &Graph, x: &[usize]| exhaustive_balanced_separator(h, x, alpha, k, &Limits::default());
    let td = td_from_separator_oracle(&g, &spec, &oracle)?;
    let width = td_validate(&g, &td)?;
    println!("exact treewidth {}", treewidth_exact(&g)?);
    println!("oracle decomposition: {} bags, width {width} (guarantee {})", td.bags.len(), q + k - 1);
    Ok(())
}
