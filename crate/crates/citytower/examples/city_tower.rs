//! Builds a tower from a JSON config and reports its bays, floors and height.
//!
//!     cargo run --example city_tower -- data/city_tower.json

use citytower::assembly::Assembly;
use citytower::frame::FrameGraph;
use citytower::pipeline::{build_tower, TowerParams};

fn main() {
    let params = match std::env::args().nth(1) {
        Some(path) => TowerParams::from_json(&std::fs::read_to_string(path).unwrap()).unwrap(),
        None => TowerParams::default(),
    };
    let tower = build_tower(&params).unwrap();
    println!("{} bays of {} layers, {} cells", params.bays, tower.layers_per_bay, tower.assembly.len());
    for f in &tower.floors {
        println!("  floor in bay {} at layer {}, plate offset {}", f.bay, f.layer, f.offset);
    }

    let graph = FrameGraph::extract(&Assembly::from(&tower.assembly));
    let zs: Vec<f64> = graph.nodes().iter().map(|n| tower.transform.apply(&n.world()).z).collect();
    let top = zs.iter().cloned().fold(f64::MIN, f64::max);
    let bottom = zs.iter().cloned().fold(f64::MAX, f64::min);
    println!("height {:.3} ft, layer height {:.3} ft", top - bottom, tower.transform.layer_height());
    println!("frame connected: {}", graph.is_connected());
}
