use serde::{Deserialize, Serialize};

use super::{LatticeAssembly, LatticePlacement};
use crate::geom::{LatticePoint, Species};

/// In-layer period vectors. Both are perpendicular to (1,1,1) and span a
/// rhombus of area √3 holding one octa and two tetras per layer.
pub const PERIOD_A: [i64; 3] = [1, -1, 0];
pub const PERIOD_B: [i64; 3] = [0, 1, -1];

pub fn period_a() -> LatticePoint {
    LatticePoint::try_from(PERIOD_A).unwrap()
}

pub fn period_b() -> LatticePoint {
    LatticePoint::try_from(PERIOD_B).unwrap()
}

// Inward normals of the hexagon's edge pairs, perpendicular to (1,1,1).
const APOTHEMS: [[i64; 3]; 3] = [[2, -1, -1], [-1, 2, -1], [-1, -1, 2]];

/// A region of the plan (projection along (1,1,1)). Only cell centroids are tested.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PlanRegion {
    /// Closed regular hexagon with corners along the projected edge directions.
    /// `centre` is any integer point; the radius counts honeycomb edges.
    Hexagon { centre: [i64; 3], circumradius: u32 },
    /// Half-open rhombic patch `origin + [0,n_a)·PERIOD_A + [0,n_b)·PERIOD_B`.
    Periods { origin: LatticePoint, n_a: u32, n_b: u32 },
}

impl PlanRegion {
    pub fn hexagon(centre: [i64; 3], circumradius: u32) -> Self {
        PlanRegion::Hexagon { centre, circumradius }
    }

    pub fn is_empty(&self) -> bool {
        match *self {
            PlanRegion::Hexagon { circumradius, .. } => circumradius == 0,
            PlanRegion::Periods { n_a, n_b, .. } => n_a == 0 || n_b == 0,
        }
    }

    fn anchor_point(&self) -> [i64; 3] {
        match self {
            PlanRegion::Hexagon { centre, .. } => *centre,
            PlanRegion::Periods { origin, .. } => origin.coords(),
        }
    }

    fn reach(&self) -> i64 {
        match *self {
            PlanRegion::Hexagon { circumradius, .. } => 2 * circumradius as i64 + 3,
            PlanRegion::Periods { n_a, n_b, .. } => (n_a + n_b) as i64 + 3,
        }
    }

    /// Exact test of the plan-projected centroid of a cell.
    pub fn contains_centroid(&self, cell: &LatticePlacement) -> bool {
        let n = cell.vertex_count();
        let s = cell.vertex_sum();
        let a = self.anchor_point();
        // n * (centroid - anchor), exact.
        let d = [s[0] - n * a[0], s[1] - n * a[1], s[2] - n * a[2]];
        match *self {
            PlanRegion::Hexagon { circumradius, .. } => {
                if circumradius == 0 {
                    return false;
                }
                let bound = 3 * circumradius as i64 * n;
                APOTHEMS.iter().all(|m| (d[0] * m[0] + d[1] * m[1] + d[2] * m[2]).abs() <= bound)
            }
            PlanRegion::Periods { n_a, n_b, .. } => {
                let (al, be) = period_coords3(d);
                let lim = 3 * n;
                (0..lim * n_a as i64).contains(&al) && (0..lim * n_b as i64).contains(&be)
            }
        }
    }
}

/// Coordinates of `d` along the two periods, times three. The (1,1,1) part is dropped.
pub fn period_coords3(d: [i64; 3]) -> (i64, i64) {
    let s = d[0] + d[1] + d[2];
    (3 * d[0] - s, s - 3 * d[2])
}

/// Every honeycomb cell of layer `layer` whose plan centroid lies in `region`,
/// sorted. An empty region gives an empty assembly.
pub fn cells_in_slab(layer: i64, region: &PlanRegion) -> LatticeAssembly {
    let mut out = Vec::new();
    if !region.is_empty() {
        let reach = region.reach();
        let a = region.anchor_point();
        for (species, sum) in [(Species::Octa, 2 * layer), (Species::TetraUp, 2 * layer), (Species::TetraDown, 2 * layer + 2)] {
            let base = LatticePoint::new(sum, 0, 0).unwrap();
            let d = [a[0] - base.x(), a[1] - base.y(), a[2] - base.z()];
            let (al, be) = period_coords3(d);
            let (ci, cj) = (al.div_euclid(3), be.div_euclid(3));
            for i in ci - reach..=ci + reach {
                for j in cj - reach..=cj + reach {
                    let anchor = base + period_a().scale(i) + period_b().scale(j);
                    let p = LatticePlacement::new(species, anchor).unwrap();
                    debug_assert_eq!(p.layer(), layer);
                    if region.contains_centroid(&p) {
                        out.push(p);
                    }
                }
            }
        }
    }
    out.sort();
    LatticeAssembly::from_placements(out).expect("distinct anchors per species")
}
