//! Half-module, its turned and reflected copy, and the hexagon they make in plan.

use citytower::lattice::plan_xy;
use citytower::pipeline::{half_module, hexagonal_module, module_plate, turn_and_reflect};

fn main() {
    let half = half_module();
    println!("half-module: {} cells, volume {}", half.len(), half.volume());
    println!("turn and reflect is proper: {}", turn_and_reflect().is_proper());

    let module = hexagonal_module();
    println!("module: {} cells, volume {}", module.len(), module.volume());
    let merged = module.to_lattice_merged().unwrap();
    for p in merged.iter() {
        println!("  {:?} at {}", p.species(), p.anchor());
    }

    // Plan outline: convex hull of the projected vertices.
    let mut pts: Vec<(f64, f64)> = module.geometry().iter().flat_map(|c| c.vertices().iter().map(plan_xy).collect::<Vec<_>>()).collect();
    pts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let turn = |o: (f64, f64), a: (f64, f64), b: (f64, f64)| (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0);
    let mut hull: Vec<(f64, f64)> = Vec::new();
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &(f64, f64)>> = if pass == 0 { Box::new(pts.iter()) } else { Box::new(pts.iter().rev()) };
        for &p in iter {
            while hull.len() >= start + 2 && turn(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 1e-12 {
                hull.pop();
            }
            hull.push(p);
        }
        hull.pop();
    }
    for (i, (x, y)) in hull.iter().enumerate() {
        let (nx, ny) = hull[(i + 1) % hull.len()];
        println!("  plan ({x:.6}, {y:.6}), side {:.6}", ((nx - x).powi(2) + (ny - y).powi(2)).sqrt());
    }

    let plate = module_plate();
    println!("three modules: {} cells, {} overlapping pairs", plate.len(), plate.overlapping_pairs().len());
}
