//! Records a rule-by-rule derivation of one tower bay and prints the script.
//!
//!     cargo run --example record_derivation > data/city_tower_script.json
//!
//! Starting from a single octa, face rules are applied greedily, keeping only
//! placements that belong to the bay. Replaying the printed script rebuilds
//! the same cells in the same order.

use citytower::assembly::Placement;
use citytower::grammar::{apply, find_matches, replay, GrammarRule, Initial};
use citytower::pipeline::{build_tower, TowerParams};

fn main() {
    let params = TowerParams { bays: 1, floors_per_bay: vec![], ..Default::default() };
    let target = build_tower(&params).expect("default tower").assembly.placement_set();
    let rules: Vec<GrammarRule> = ["T-on-O/face", "O-on-T/face"].iter().map(|r| r.parse().unwrap()).collect();

    let mut a = Initial::Octa.build();
    loop {
        let next = rules.iter().flat_map(|r| find_matches(&a, r)).find(|m| {
            let p = Placement::Free { species: m.rule.parse::<GrammarRule>().unwrap().incoming.canonical_species(), isometry: m.isometry.clone() }
                .snapped();
            matches!(p, Placement::Lattice(l) if target.contains(&l))
        });
        match next {
            Some(m) => a = apply(&a, &m).expect("fresh match"),
            None => break,
        }
    }

    let script = a.provenance().unwrap().clone();
    let got = a.to_lattice().unwrap().placement_set();
    eprintln!("{} of {} bay cells derived in {} steps", got.len(), target.len(), script.steps.len());
    assert_eq!(replay(&script).unwrap().state_digest(), a.state_digest());
    print!("{}", script.to_json());
}
