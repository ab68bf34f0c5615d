//! Write instances and certificates in the plain-text formats the CLI reads,
//! then read them back.
//!
//!     cargo run --example file_formats

use twhad::circle::ChordDiagram;
use twhad::format::*;
use twhad::graph::make_grid;
use twhad::minors::{hadwiger_with_model, ModelKind};
use twhad::treewidth::treewidth_with_decomposition;
use twhad::Limits;

fn main() -> twhad::Result<()> {
    let (g, _) = make_grid(2, 3)?;
    let text = write_graph(&g);
    print!("# graph\n{text}");
    assert_eq!(parse_graph(&text)?, g);

    let (_, td) = treewidth_with_decomposition(&g, &Limits::default())?;
    let text = write_td(&td, g.n());
    print!("# tree-decomposition\n{text}");
    assert_eq!(parse_td(&text)?.0, td);

    let (_, m) = hadwiger_with_model(&g, &Limits::default())?;
    let text = write_model(&m);
    print!("# clique-minor model\n{text}");
    parse_model(&text, m.pattern.clone())?.validate(&g, ModelKind::Minor)?;

    let cd = ChordDiagram::from_sequence(&[1, 2, 1, 3, 2, 3])?;
    print!("# chord diagram\n{}", write_chord_diagram(&cd));

    match parse_graph("3 1\n0 7\n") {
        Err(e) => println!("# malformed input\n{} ({})", e, e.kind()),
        Ok(_) => unreachable!(),
    }
    Ok(())
}
