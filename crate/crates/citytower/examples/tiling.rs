//! The fundamental unit and its period translates filling a layer.

use citytower::assembly::Assembly;
use citytower::pipeline::{fundamental_unit, tile_plane};

fn main() {
    let unit = fundamental_unit();
    for p in unit.iter() {
        println!("{:?} at {}", p.species(), p.anchor());
    }
    println!("unit volume {}", unit.volume());

    for n in [1, 2, 3, 5] {
        let t = tile_plane(n, n);
        let overlaps = Assembly::from(&t).overlapping_pairs().len();
        println!("{n}x{n}: {} cells, volume {}, {overlaps} overlapping pairs", t.len(), t.volume());
    }
}
