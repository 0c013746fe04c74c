//! Distinct ways to join two solids, per relation and catalog.

use citytower::geom::Solid;
use citytower::grammar::{enumerate_unique, Catalog, Relation};

fn main() {
    let pairs = [(Solid::Tetra, Solid::Octa), (Solid::Tetra, Solid::Tetra), (Solid::Octa, Solid::Octa)];
    for catalog in [Catalog::Opposed, Catalog::Honeycomb] {
        println!("{catalog:?}");
        for (a, b) in pairs {
            let counts: Vec<String> = Relation::ALL
                .iter()
                .map(|r| format!("{} {}", r, enumerate_unique(a, b, *r, catalog).unwrap().len()))
                .collect();
            println!("  {}-{}: {}", a.code(), b.code(), counts.join(", "));
        }
    }

    // Fingerprints identify designs up to congruence.
    for d in enumerate_unique(Solid::Tetra, Solid::Octa, Relation::VertexToVertex, Catalog::Opposed).unwrap() {
        println!("{}", d.fingerprint().unwrap());
    }
}
