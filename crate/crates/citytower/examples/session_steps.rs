//! Steering a derivation by hand through the session store the HTTP service uses.

use citytower::grammar::replay;
use citytower::session::{ApplyRequest, SessionStore};

fn main() {
    let store = SessionStore::new();
    let s = store.create("octa").unwrap();
    println!("session {} starts with {} cell", s.id, s.cell_count);

    let list = store.matches(&s.id, "T-on-O/face").unwrap();
    println!("{} places for a tetra on the octa's faces", list.matches.len());
    let state = store.apply(&s.id, &ApplyRequest { rule: list.rule.clone(), index: 0, state: list.state.clone() }).unwrap();
    println!("applied match 0: {} cells", state.cell_count);

    // The old list no longer describes the session.
    let stale = store.apply(&s.id, &ApplyRequest { rule: list.rule, index: 1, state: list.state });
    println!("reusing the old list: {}", stale.unwrap_err());

    let list = store.matches(&s.id, "O-on-T/face").unwrap();
    let state = store.apply(&s.id, &ApplyRequest { rule: list.rule, index: 2, state: list.state }).unwrap();
    println!("script: {}", serde_json::to_string(&state.script).unwrap());
    println!("replays to the same state: {}", replay(&state.script).unwrap().state_digest() == state.fingerprint);

    let back = store.undo(&s.id).unwrap();
    println!("after undo: {} cells", back.cell_count);
}
