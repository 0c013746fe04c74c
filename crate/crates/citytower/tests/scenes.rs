use std::path::PathBuf;

use citytower::assembly::{Assembly, Placement};
use citytower::formats::{emit_scene, parse_scene, scene_from_assembly, validate_scene, FormatError};
use citytower::frame::FrameGraph;
use citytower::geom::LatticePoint;
use citytower::grammar::{replay, DerivationScript};
use citytower::lattice::LatticePlacement;
use citytower::pipeline::{build_tower, floor_plate, fundamental_unit, half_module, hexagonal_module, TowerParams};

fn golden(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

fn data(name: &str) -> String {
    std::fs::read_to_string(PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name)).unwrap()
}

fn read(name: &str) -> String {
    std::fs::read_to_string(golden(name)).unwrap()
}

#[test]
fn golden_files_round_trip() {
    let mut n = 0;
    for entry in std::fs::read_dir(golden("")).unwrap() {
        let path = entry.unwrap().path();
        let text = std::fs::read_to_string(&path).unwrap();
        let doc = parse_scene(&text).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        assert_eq!(emit_scene(&doc), text, "{}", path.display());
        assert!(validate_scene(&doc).unwrap().passed(), "{}", path.display());
        n += 1;
    }
    assert!(n >= 6);
}

#[test]
fn golden_files_are_current() {
    let tower = build_tower(&TowerParams::default()).unwrap();
    let script = DerivationScript::from_json(&data("fundamental_unit_script.json")).unwrap();
    let cases = [
        ("unit.json", scene_from_assembly(&Assembly::from(fundamental_unit()), None)),
        ("half_module.json", scene_from_assembly(&half_module(), None)),
        ("hex_module.json", scene_from_assembly(&hexagonal_module(), None)),
        ("plate_r2.json", scene_from_assembly(&Assembly::from(floor_plate(2).unwrap()), None)),
        ("tower_default.json", scene_from_assembly(&Assembly::from(&tower.assembly), Some(&tower.transform))),
        ("fundamental_unit_derived.json", scene_from_assembly(&replay(&script).unwrap(), None)),
    ];
    for (name, doc) in cases {
        assert_eq!(emit_scene(&doc), read(name), "{name}");
    }
}

#[test]
fn tower_scene_keeps_its_cells() {
    let tower = build_tower(&TowerParams::default()).unwrap();
    let doc = parse_scene(&read("tower_default.json")).unwrap();
    assert_eq!(doc.cells.len(), tower.assembly.len());
    let capitals = doc.cells.iter().filter(|c| c.tags.contains(&citytower::CellTag::Capital)).count();
    assert_eq!(capitals, tower.layer_cells(5).len());
}

#[test]
fn derived_unit_is_the_pipeline_unit() {
    let script = DerivationScript::from_json(&data("fundamental_unit_script.json")).unwrap();
    let a = replay(&script).unwrap();
    assert_eq!(a.to_lattice().unwrap().placement_set(), fundamental_unit().placement_set());
}

#[test]
fn missing_cells_is_reported_at_cells() {
    let mut v: serde_json::Value = serde_json::from_str(&read("unit.json")).unwrap();
    v.as_object_mut().unwrap().remove("cells");
    match parse_scene(&v.to_string()) {
        Err(FormatError::SchemaViolation { pointer, .. }) => assert_eq!(pointer, "/cells"),
        other => panic!("{other:?}"),
    }
}

#[test]
fn unknown_keys_are_rejected() {
    let mut v: serde_json::Value = serde_json::from_str(&read("unit.json")).unwrap();
    v["extra"] = serde_json::json!(1);
    assert!(matches!(parse_scene(&v.to_string()), Err(FormatError::SchemaViolation { .. })));
}

#[test]
fn obj_counts() {
    let tetra = Assembly::single(Placement::Lattice(LatticePlacement::up(LatticePoint::ORIGIN)));
    let obj = scene_from_assembly(&tetra, None).to_obj_cells().unwrap();
    assert_eq!(obj.lines().filter(|l| l.starts_with("v ")).count(), 4);
    assert_eq!(obj.lines().filter(|l| l.starts_with("f ")).count(), 4);

    let fu = Assembly::from(fundamental_unit());
    let g = FrameGraph::extract(&fu);
    let doc = scene_from_assembly(&fu, None);
    let obj = doc.to_obj_frame();
    assert_eq!(obj.lines().filter(|l| l.starts_with("v ")).count(), g.nodes().len());
    assert_eq!(obj.lines().filter(|l| l.starts_with("l ")).count(), g.members().len());

    let again = parse_scene(&emit_scene(&doc)).unwrap().to_obj_frame();
    assert_eq!(again, obj);
}

#[test]
fn feet_obj_has_nine_digits() {
    let doc = parse_scene(&read("tower_default.json")).unwrap();
    let obj = doc.to_obj_frame();
    for line in obj.lines().filter(|l| l.starts_with("v ")) {
        for x in line.split(' ').skip(1) {
            let digits: String = x.split('e').next().unwrap().chars().filter(|c| c.is_ascii_digit()).collect();
            assert!(digits.trim_start_matches('0').len() <= 9, "{line}");
        }
    }
}

#[test]
fn broken_frame_fails_validation() {
    let mut doc = parse_scene(&read("unit.json")).unwrap();
    doc.frame.members.remove(0);
    let report = validate_scene(&doc).unwrap();
    assert!(!report.passed());
    assert!(!report.check("frame matches cells").unwrap().passed);
}
