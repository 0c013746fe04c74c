//! From the fundamental unit to the tower: units, modules, tilings, plates.

mod tower;

pub use tower::{build_tower, OffsetPolicy, Tower, TowerFloor, TowerParams};

use std::f64::consts::PI;

use crate::assembly::{Assembly, Cell, Placement};
use crate::geom::{Isometry, LatticePoint, Species, Vec3, WorldPoint};
use crate::lattice::{cells_in_slab, period_a, period_b, LatticeAssembly, LatticeError, LatticeMap, LatticePlacement, LatticeSymmetry, PlanRegion};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum PipelineError {
    #[error("empty region: the plan contains no cells")]
    EmptyRegion,
    #[error("invalid tower parameters: {0}")]
    InvalidParams(String),
}

impl From<LatticeError> for PipelineError {
    fn from(e: LatticeError) -> Self {
        match e {
            LatticeError::EmptyRegion => PipelineError::EmptyRegion,
            other => PipelineError::InvalidParams(other.to_string()),
        }
    }
}

fn lp(x: i64, y: i64, z: i64) -> LatticePoint {
    LatticePoint::new(x, y, z).unwrap()
}

/// Centre of the canonical octa.
pub fn octa_centre() -> WorldPoint {
    WorldPoint::new(1.0, 0.0, 0.0)
}

/// One octa with a tetra on each of two opposite side faces. Its translates
/// by the two in-layer periods fill the layer.
pub fn fundamental_unit() -> LatticeAssembly {
    LatticeAssembly::from_placements([
        LatticePlacement::octa(LatticePoint::ORIGIN),
        LatticePlacement::up(LatticePoint::ORIGIN),
        LatticePlacement::down(lp(2, 0, 0)),
    ])
    .unwrap()
}

/// The upper half-octa with a tetra on its horizontal triangle, the face it
/// shares with the layer above.
pub fn half_module() -> Assembly {
    Assembly::from_cells(vec![
        Cell::new(Placement::Free { species: Species::HalfOcta, isometry: Isometry::identity() }),
        Cell::new(Placement::Lattice(LatticePlacement::down(lp(2, 1, 1)))),
    ])
}

/// Half turn about the plan-vertical axis through the octa centre followed by
/// the reflection in the horizontal plane through it.
pub fn turn_and_reflect() -> Isometry {
    let c = octa_centre();
    let axis = Vec3::new(1.0, 1.0, 1.0);
    Isometry::reflection(&c, &axis).compose(&Isometry::rotation_about(&c, &axis, PI))
}

/// Image of an assembly under an exact lattice map.
pub fn map_assembly(a: &Assembly, m: &LatticeMap) -> Assembly {
    let iso = Isometry::new(m.sym.matrix(), m.shift.to_world().coords).unwrap();
    let cells = a
        .cells()
        .iter()
        .map(|c| {
            let placement = match &c.placement {
                Placement::Lattice(p) => Placement::Lattice(m.apply_placement(p)),
                Placement::Free { species, isometry } => Placement::Free { species: *species, isometry: iso.compose(isometry) },
            };
            Cell { placement, tags: c.tags.clone() }
        })
        .collect();
    Assembly::from_cells(cells)
}

/// A half-module joined on its square to its turned and reflected copy: an
/// octa with one tetra above and one below. Its plan outline is the octa's
/// regular hexagon.
pub fn hexagonal_module() -> Assembly {
    let half = half_module();
    let t = turn_and_reflect();
    let mut cells = half.cells().to_vec();
    for c in half.cells() {
        let placement = match &c.placement {
            Placement::Free { species, isometry } => Placement::Free { species: *species, isometry: t.compose(isometry) },
            Placement::Lattice(p) => {
                Placement::Lattice(LatticeMap::about_doubled(LatticeSymmetry::inversion(), [2, 0, 0]).unwrap().apply_placement(p))
            }
        };
        cells.push(Cell::new(placement));
    }
    Assembly::from_cells(cells)
}

/// `pairs` hexagonal modules stacked along the plan-vertical axis, three layers apart.
pub fn hexagonal_module_stacked(pairs: usize) -> Assembly {
    let base = hexagonal_module();
    let mut out = Assembly::new();
    for k in 0..pairs as i64 {
        for c in map_assembly(&base, &LatticeMap::translation(lp(2, 2, 2).scale(k))).cells() {
            out.push(c.clone());
        }
    }
    out
}

/// Three hexagonal modules turned by thirds about the vertical line through
/// the origin node, where their plan hexagons meet.
pub fn module_plate() -> Assembly {
    let base = hexagonal_module();
    let mut out = Assembly::new();
    let mut g = LatticeSymmetry::identity();
    for _ in 0..3 {
        for c in map_assembly(&base, &LatticeMap { sym: g, shift: LatticePoint::ORIGIN }).cells() {
            out.push(c.clone());
        }
        g = g.compose(&LatticeSymmetry::cycle());
    }
    out
}

/// `nx` by `ny` period translates of the fundamental unit in layer 0.
pub fn tile_plane(nx: u32, ny: u32) -> LatticeAssembly {
    let fu = fundamental_unit();
    let mut out = LatticeAssembly::new();
    for i in 0..nx as i64 {
        for j in 0..ny as i64 {
            let t = period_a().scale(i) + period_b().scale(j);
            for p in fu.iter() {
                out.insert(p.translated(t)).expect("translates are disjoint");
            }
        }
    }
    out
}

/// Hexagonal patch of layer 0 centred on the canonical octa.
pub fn floor_plate(circumradius: u32) -> Result<LatticeAssembly, PipelineError> {
    if circumradius == 0 {
        return Err(PipelineError::EmptyRegion);
    }
    Ok(cells_in_slab(0, &PlanRegion::hexagon([1, 0, 0], circumradius)))
}

/// Layers `first..first + count` of the same hexagonal plan, stacked.
pub fn plate_stack(first: i64, count: u32, region: &PlanRegion) -> LatticeAssembly {
    let mut out = LatticeAssembly::new();
    for k in first..first + count as i64 {
        for p in cells_in_slab(k, region).iter() {
            out.insert(*p).expect("layers are disjoint");
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Ratio;

    #[test]
    fn unit_volumes() {
        assert_eq!(fundamental_unit().volume(), Ratio::from_integer(2));
        assert_eq!(half_module().volume(), Ratio::from_integer(1));
        assert_eq!(hexagonal_module().volume(), Ratio::from_integer(2));
        assert_eq!(hexagonal_module_stacked(3).volume(), Ratio::from_integer(6));
    }

    #[test]
    fn turn_and_reflect_is_inversion_through_the_centre() {
        let t = turn_and_reflect();
        assert!(!t.is_proper());
        assert!(t.approx_eq(&Isometry::point_inversion(&octa_centre()), 1e-12));
    }

    #[test]
    fn module_halves_rebuild_an_octa() {
        let m = hexagonal_module().to_lattice_merged().unwrap();
        assert!(m.contains(&LatticePlacement::octa(LatticePoint::ORIGIN)));
        assert_eq!(m.len(), 3);
    }

    #[test]
    fn products_do_not_overlap() {
        assert!(hexagonal_module().overlapping_pairs().is_empty());
        assert!(half_module().overlapping_pairs().is_empty());
        assert!(module_plate().overlapping_pairs().is_empty());
        assert!(Assembly::from(fundamental_unit()).overlapping_pairs().is_empty());
    }

    #[test]
    fn plate_radius_zero_is_an_error() {
        assert_eq!(floor_plate(0).unwrap_err(), PipelineError::EmptyRegion);
    }

    #[test]
    fn tile_one_by_one_is_the_unit() {
        assert_eq!(tile_plane(1, 1).placement_set(), fundamental_unit().placement_set());
        assert_eq!(tile_plane(3, 4).volume(), Ratio::from_integer(24));
    }
}
