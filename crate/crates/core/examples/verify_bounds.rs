//! Run the three bound experiments with exact oracles and print the CSV
//! summaries.
//!
//!     cargo run --release --example verify_bounds -- 50

use twhad::harness::{verify_bound, Family};
use twhad::Limits;

fn main() -> twhad::Result<()> {
    let trials = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(30);
    for family in [Family::Chordal, Family::OuterString, Family::CirclePerturb] {
        let rep = verify_bound(family, trials, 1, family.default_max_n(), &Limits::default())?;
        rep.write_summary_csv(std::io::stdout())?;
        if let Some(worst) = rep.records.iter().filter(|r| r.pass.is_some()).max_by_key(|r| r.treewidth) {
            println!("  largest treewidth {:?} with had {:?}, bound {:?}", worst.treewidth, worst.hadwiger, worst.bound);
        }
    }
    Ok(())
}
