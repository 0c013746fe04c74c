//! Writes a floor plate as scene JSON plus frame and cell OBJ files.
//!
//!     cargo run --example export_obj -- /tmp/plate

use std::path::PathBuf;

use citytower::assembly::Assembly;
use citytower::formats::{emit_scene, parse_scene, scene_from_assembly, write_obj};
use citytower::pipeline::floor_plate;
use citytower::WorldTransform;

fn main() {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "plate".into()));
    std::fs::create_dir_all(&dir).unwrap();
    let plate = Assembly::from(floor_plate(2).unwrap());
    let doc = scene_from_assembly(&plate, Some(&WorldTransform::feet()));

    let text = emit_scene(&doc);
    std::fs::write(dir.join("plate.json"), &text).unwrap();
    assert_eq!(parse_scene(&text).unwrap(), doc);

    write_obj(&dir.join("plate_frame.obj"), &doc.to_obj_frame()).unwrap();
    write_obj(&dir.join("plate_cells.obj"), &doc.to_obj_cells().unwrap()).unwrap();
    println!("{} cells, {} nodes, {} members written to {}", doc.cells.len(), doc.frame.nodes.len(), doc.frame.members.len(), dir.display());
}
