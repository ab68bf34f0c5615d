//! The three local-complementation constructions: a minor becomes a
//! vertex-minor of a proper subdivision, an induced 3-subdivision of a
//! subcubic graph yields one of its subdivisions, and crossings of a drawing
//! are resolved.
//!
//!     cargo run --example vertex_minors

use twhad::format::write_vm_steps;
use twhad::graph::{subdivide_uniform, Graph};
use twhad::minors::MinorModel;
use twhad::vertex_minor::{
    eliminate_crossings_vm, maxdeg3_vm_from_3subdivision, minor_to_vm_sequence, Crossing, MarkedDrawing,
};

fn main() -> twhad::Result<()> {
    // K_4 as a minor of the triangular prism: contract one rung
    let prism = Graph::new(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)])?;
    let k4 = Graph::complete(4);
    let model = MinorModel::new(k4.clone(), vec![vec![0, 3], vec![1], vec![2], vec![4, 5]]);
    let gstar = subdivide_uniform(&prism, 3)?;
    let cert = minor_to_vm_sequence(&gstar, &k4, &model)?;
    cert.verify(&gstar.graph, &k4)?;
    println!("K_4 from a subdivided prism on {} vertices in {} steps", gstar.graph.n(), cert.steps.len());

    // the 3-subdivision of K_4 itself, read as an induced model
    let s3 = subdivide_uniform(&k4, 4)?;
    let identity = MinorModel::identity(&s3.graph);
    let cert = maxdeg3_vm_from_3subdivision(&s3.graph, &k4, &identity)?;
    cert.verify(&s3.graph, &k4)?;
    println!("subdivision of K_4 with branch vertices {:?}", cert.branch);

    // K_4 drawn as a square with both diagonals meeting at vertex 4
    let graph = Graph::new(5, [(0, 1), (1, 2), (2, 3), (0, 3), (0, 4), (1, 4), (2, 4), (3, 4)])?;
    let d = MarkedDrawing { graph, crossings: vec![Crossing { vertex: 4, rotation: [0, 1, 2, 3] }] };
    let ce = eliminate_crossings_vm(&d)?;
    println!("drawn graph has {} edges; resolving the crossing:", d.underlying_graph()?.m());
    print!("{}", write_vm_steps(&ce.steps));
    Ok(())
}
