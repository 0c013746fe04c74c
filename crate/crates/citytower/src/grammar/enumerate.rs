use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::{alignments, GrammarError, Relation};
use crate::assembly::{Assembly, Cell, Placement};
use crate::geom::{interiors_overlap, Fingerprint, Isometry, LatticePoint, Solid, Species};
use crate::lattice::LatticePlacement;

/// Which two-cell placements count for a relation.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Catalog {
    /// Features brought together with opposed outward directions: faces with
    /// opposed normals, edges with opposed dihedral bisectors, vertices with
    /// opposed vertex axes and one edge pair in a common half-plane.
    #[default]
    Opposed,
    /// Pairs of honeycomb cells sharing exactly a face, an edge or a vertex.
    Honeycomb,
}

impl Catalog {
    pub fn parse(s: &str) -> Option<Catalog> {
        match s {
            "opposed" => Some(Catalog::Opposed),
            "honeycomb" => Some(Catalog::Honeycomb),
            _ => None,
        }
    }
}

fn seed(solid: Solid) -> Placement {
    match solid {
        Solid::Tetra => Placement::Lattice(LatticePlacement::up(LatticePoint::ORIGIN)),
        Solid::Octa => Placement::Lattice(LatticePlacement::octa(LatticePoint::ORIGIN)),
        Solid::HalfOcta => Placement::Free { species: Species::HalfOcta, isometry: Isometry::identity() },
    }
}

/// Distinct two-cell designs of `a` joined by `b`, in order of discovery.
pub fn enumerate_unique(a: Solid, b: Solid, relation: Relation, catalog: Catalog) -> Result<Vec<Assembly>, GrammarError> {
    enumerate_on(seed(a), b, relation, catalog)
}

/// Same as `enumerate_unique` with an explicit first cell.
pub fn enumerate_on(host: Placement, b: Solid, relation: Relation, catalog: Catalog) -> Result<Vec<Assembly>, GrammarError> {
    let candidates = match catalog {
        Catalog::Opposed => opposed(&host, b, relation),
        Catalog::Honeycomb => honeycomb(&host, b, relation)?,
    };
    let mut seen: BTreeSet<Fingerprint> = BTreeSet::new();
    let mut out = Vec::new();
    for p in candidates {
        let a = Assembly::from_cells(vec![Cell::new(host.clone()), Cell::new(p)]);
        let f = a.fingerprint().expect("two cells");
        if seen.insert(f) {
            out.push(a);
        }
    }
    Ok(out)
}

fn opposed(host: &Placement, b: Solid, relation: Relation) -> Vec<Placement> {
    let hc = host.cell();
    let ic = b.canonical_cell();
    let mut out = Vec::new();
    for f in 0..relation.feature_count(&hc) {
        for g in 0..relation.feature_count(&ic) {
            let Ok(isos) = alignments(relation, &hc, f, &ic, g) else {
                continue;
            };
            for iso in isos {
                let p = Placement::Free { species: b.canonical_species(), isometry: iso }.snapped();
                if !interiors_overlap(&hc, &p.cell()) {
                    out.push(p);
                }
            }
        }
    }
    out
}

fn honeycomb(host: &Placement, b: Solid, relation: Relation) -> Result<Vec<Placement>, GrammarError> {
    let unsupported = || GrammarError::UnsupportedRelation { a: host.species().solid(), b, relation };
    let Placement::Lattice(h) = host else {
        return Err(unsupported());
    };
    if b == Solid::HalfOcta {
        return Err(unsupported());
    }
    let shared = match relation {
        Relation::FaceToFace => 3,
        Relation::EdgeToEdge => 2,
        Relation::VertexToVertex => 1,
    };
    let hv: BTreeSet<LatticePoint> = h.vertices().into_iter().collect();
    let mut cands: BTreeSet<LatticePlacement> = BTreeSet::new();
    for v in &hv {
        for c in LatticePlacement::incident_to(*v) {
            if c != *h && c.species().solid() == b && c.vertices().iter().filter(|p| hv.contains(p)).count() == shared {
                cands.insert(c);
            }
        }
    }
    Ok(cands.into_iter().map(Placement::Lattice).collect())
}
