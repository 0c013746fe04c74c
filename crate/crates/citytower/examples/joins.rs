//! Motions that put a tetra against an octa face, edge or vertex.

use citytower::geom::{interiors_overlap, Solid};
use citytower::grammar::{alignments, Relation};

fn main() {
    let octa = Solid::Octa.canonical_cell();
    let tetra = Solid::Tetra.canonical_cell();
    for r in Relation::ALL {
        let motions = alignments(r, &octa, 0, &tetra, 0).unwrap();
        let clear = motions.iter().filter(|m| !interiors_overlap(&octa, &tetra.transformed(m))).count();
        println!("{r}: {} alignments on feature 0, {clear} without overlap", motions.len());
    }

    // Across each edge of a glued face the tetra continues the neighbouring octa face.
    let dihedral = (1.0f64 / 3.0).acos() + (-1.0f64 / 3.0).acos();
    println!("tetra + octa dihedral = {dihedral:.15} (pi = {:.15})", std::f64::consts::PI);
}
