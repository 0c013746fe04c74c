//! Replays a derivation script and prints what it built.
//!
//!     cargo run --example replay_script -- data/city_tower_script.json

use citytower::grammar::{replay, DerivationScript};

fn main() {
    let path = std::env::args().nth(1).unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/data/fundamental_unit_script.json").into());
    let script = DerivationScript::from_json(&std::fs::read_to_string(&path).unwrap()).unwrap();
    match replay(&script) {
        Ok(a) => {
            println!("{} steps from {} gave {} cells, volume {}", script.steps.len(), script.initial, a.len(), a.volume());
            println!("state {}", a.state_digest());
            println!("design {}", a.fingerprint().unwrap().short());
        }
        Err(e) => eprintln!("{e}"),
    }
}
