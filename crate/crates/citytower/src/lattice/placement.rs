use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use super::LatticeError;
use crate::geom::{ConvexCell, LatticePoint, Species, WorldPoint};

const UP: [[i64; 3]; 4] = [[0, 0, 0], [1, 1, 0], [1, 0, 1], [0, 1, 1]];
const DOWN: [[i64; 3]; 4] = [[0, 0, 0], [-1, -1, 0], [-1, 0, -1], [0, -1, -1]];
const OCTA: [[i64; 3]; 6] = [[0, 0, 0], [2, 0, 0], [1, 1, 0], [1, -1, 0], [1, 0, 1], [1, 0, -1]];

/// Vertex offsets of the canonical honeycomb cell of a species, in the same
/// order as the floating canonical cells.
pub fn canonical_offsets(species: Species) -> &'static [[i64; 3]] {
    match species {
        Species::TetraUp => &UP,
        Species::TetraDown => &DOWN,
        Species::Octa => &OCTA,
        Species::HalfOcta => &[],
    }
}

fn lp(c: [i64; 3]) -> LatticePoint {
    LatticePoint::new(c[0], c[1], c[2]).expect("canonical offsets are lattice points")
}

/// A honeycomb cell: a canonical cell translated by a lattice point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LatticePlacement {
    species: Species,
    anchor: LatticePoint,
}

impl LatticePlacement {
    pub fn new(species: Species, anchor: LatticePoint) -> Result<Self, LatticeError> {
        if species == Species::HalfOcta {
            return Err(LatticeError::NotHoneycombSpecies(species));
        }
        Ok(LatticePlacement { species, anchor })
    }

    pub fn octa(anchor: LatticePoint) -> Self {
        LatticePlacement { species: Species::Octa, anchor }
    }

    pub fn up(anchor: LatticePoint) -> Self {
        LatticePlacement { species: Species::TetraUp, anchor }
    }

    pub fn down(anchor: LatticePoint) -> Self {
        LatticePlacement { species: Species::TetraDown, anchor }
    }

    pub fn species(&self) -> Species {
        self.species
    }

    pub fn anchor(&self) -> LatticePoint {
        self.anchor
    }

    pub fn vertices(&self) -> Vec<LatticePoint> {
        canonical_offsets(self.species).iter().map(|&o| self.anchor + lp(o)).collect()
    }

    pub fn translated(&self, t: LatticePoint) -> Self {
        LatticePlacement { species: self.species, anchor: self.anchor + t }
    }

    /// Sum of the vertex coordinates; the centroid is this over the vertex count.
    pub fn vertex_sum(&self) -> [i64; 3] {
        let mut s = [0i64; 3];
        for v in self.vertices() {
            for (acc, c) in s.iter_mut().zip(v.coords()) {
                *acc += c;
            }
        }
        s
    }

    pub fn vertex_count(&self) -> i64 {
        canonical_offsets(self.species).len() as i64
    }

    /// The (111) layer holding the cell: vertices lie on node planes `layer`
    /// and `layer + 1`.
    pub fn layer(&self) -> i64 {
        self.vertices().iter().map(|v| v.coord_sum() / 2).min().unwrap()
    }

    pub fn volume(&self) -> Ratio<i64> {
        self.species.volume()
    }

    pub fn cell(&self) -> ConvexCell {
        let canon = crate::geom::canonical_cell(self.species);
        let verts: Vec<WorldPoint> = self.vertices().iter().map(|v| v.to_world()).collect();
        ConvexCell::from_parts(self.species, verts, canon.faces().to_vec())
    }

    /// Recognises a honeycomb cell from its vertex set, in any order.
    pub fn from_vertices(vs: &[LatticePoint]) -> Option<Self> {
        let mut sorted = vs.to_vec();
        sorted.sort();
        sorted.dedup();
        let candidates: &[(Species, LatticePoint)] = match sorted.len() {
            6 => &[(Species::Octa, sorted[0])],
            4 => &[(Species::TetraUp, sorted[0]), (Species::TetraDown, sorted[3])],
            _ => &[],
        };
        for &(species, anchor) in candidates {
            let p = LatticePlacement { species, anchor };
            let mut v = p.vertices();
            v.sort();
            if v == sorted {
                return Some(p);
            }
        }
        None
    }

    /// Recognises a honeycomb cell from floating vertices within tolerance.
    pub fn from_world(vs: &[WorldPoint]) -> Option<Self> {
        let pts: Option<Vec<LatticePoint>> = vs.iter().map(LatticePoint::from_world).collect();
        Self::from_vertices(&pts?)
    }

    /// Every honeycomb cell having `p` as a vertex: 8 tetras and 6 octas.
    pub fn incident_to(p: LatticePoint) -> Vec<LatticePlacement> {
        let mut out = Vec::with_capacity(14);
        for species in [Species::TetraUp, Species::TetraDown, Species::Octa] {
            for &o in canonical_offsets(species) {
                out.push(LatticePlacement { species, anchor: p - lp(o) });
            }
        }
        out.sort();
        out
    }
}
