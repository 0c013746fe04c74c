//! Node/member graph of a stacked plate and its truss checks.

use citytower::assembly::Assembly;
use citytower::frame::{FrameGraph, NodeTag};
use citytower::lattice::PlanRegion;
use citytower::pipeline::plate_stack;

fn main() {
    let stack = plate_stack(0, 3, &PlanRegion::hexagon([0, 0, 0], 3));
    let graph = FrameGraph::extract(&Assembly::from(&stack));
    let interior = graph.node_tags().iter().filter(|t| **t == NodeTag::Interior).count();
    println!("{} cells, {} nodes ({interior} interior), {} members", stack.len(), graph.nodes().len(), graph.members().len());
    print!("{}", graph.validate());

    // Dropping a member shows up in the valence of its ends.
    let m = &graph.members()[0];
    let broken = graph.without_member(0);
    let (before, after) = (graph.valences(), broken.valences());
    println!("without member {}-{}: valences {}/{} become {}/{}", m.a, m.b, before[m.a], before[m.b], after[m.a], after[m.b]);
}
