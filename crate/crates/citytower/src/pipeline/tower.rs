use std::collections::{BTreeSet, HashSet};

use serde::{Deserialize, Serialize};

use super::PipelineError;
use crate::assembly::CellTag;
use crate::geom::LatticePoint;
use crate::lattice::{cells_in_slab, period_a, LatticeAssembly, LatticeSymmetry, PlanRegion, WorldTransform};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OffsetPolicy {
    /// Shift floor plates so no two coincide in plan.
    Alternate,
    /// Every floor plate centred on the tower axis.
    Fixed,
}

/// Tower configuration. Lengths are in feet.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct TowerParams {
    pub bay_height: f64,
    pub capital_depth: f64,
    pub bays: u32,
    /// Layer indices within each bay, counted from 0 at the bottom.
    pub floors_per_bay: Vec<u32>,
    /// Circumradius of the plan hexagon in honeycomb edges.
    pub plan: u32,
    /// Degrees, a multiple of 60.
    pub twist_per_bay: i64,
    pub floor_offset_policy: OffsetPolicy,
}

impl Default for TowerParams {
    fn default() -> Self {
        TowerParams {
            bay_height: 66.0,
            capital_depth: 11.0,
            bays: 1,
            floors_per_bay: vec![0, 2, 4],
            plan: 1,
            twist_per_bay: 0,
            floor_offset_policy: OffsetPolicy::Alternate,
        }
    }
}

impl TowerParams {
    /// Layers per bay, or the first violated constraint.
    pub fn validate(&self) -> Result<u32, PipelineError> {
        let bad = |s: String| Err(PipelineError::InvalidParams(s));
        if !self.capital_depth.is_finite() || self.capital_depth <= 0.0 {
            return bad("capital_depth must be positive".into());
        }
        if !self.bay_height.is_finite() || self.bay_height <= 0.0 {
            return bad("bay_height must be positive".into());
        }
        let ratio = self.bay_height / self.capital_depth;
        if (ratio - ratio.round()).abs() > 1e-9 || ratio.round() < 1.0 {
            return bad(format!("capital_depth {} does not divide bay_height {}", self.capital_depth, self.bay_height));
        }
        let layers = ratio.round() as u32;
        if self.floors_per_bay.len() > layers as usize {
            return bad(format!("{} floors per bay exceed the {} layers of a bay", self.floors_per_bay.len(), layers));
        }
        let mut seen = BTreeSet::new();
        for &f in &self.floors_per_bay {
            if f >= layers {
                return bad(format!("floor layer {f} outside a bay of {layers} layers"));
            }
            if !seen.insert(f) {
                return bad(format!("floor layer {f} listed twice"));
            }
        }
        if self.twist_per_bay % 60 != 0 {
            return bad(format!("twist_per_bay {} is not a multiple of 60", self.twist_per_bay));
        }
        if self.bays == 0 {
            return bad("bays must be at least 1".into());
        }
        if self.plan == 0 {
            return bad("plan radius must be at least 1".into());
        }
        Ok(layers)
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TowerFloor {
    pub bay: u32,
    /// Global layer index.
    pub layer: i64,
    /// In-plane shift of the plate centre from the tower axis.
    pub offset: LatticePoint,
}

#[derive(Clone, Debug)]
pub struct Tower {
    pub assembly: LatticeAssembly,
    pub layers_per_bay: u32,
    pub floors: Vec<TowerFloor>,
    pub transform: WorldTransform,
}

impl Tower {
    /// Cells of a layer.
    pub fn layer_cells(&self, layer: i64) -> Vec<usize> {
        (0..self.assembly.len()).filter(|&i| self.assembly.placements()[i].layer() == layer).collect()
    }

    /// Exact plan projection of the nodes of one layer.
    pub fn layer_plan(&self, layer: i64) -> BTreeSet<(i64, i64)> {
        self.layer_cells(layer)
            .into_iter()
            .flat_map(|i| self.assembly.placements()[i].vertices())
            .map(|v| v.plan_key())
            .collect()
    }
}

fn turned(v: LatticePoint, sixths: i64) -> LatticePoint {
    let g = LatticeSymmetry::plan_sixth_turn();
    (0..sixths.rem_euclid(6)).fold(v, |p, _| g.apply(p))
}

fn offset_candidates(sixths: i64) -> Vec<LatticePoint> {
    let dirs: Vec<LatticePoint> = (0..6).map(|k| turned(period_a(), k)).collect();
    let mut c = vec![LatticePoint::ORIGIN];
    c.extend(dirs.iter().copied());
    c.extend(dirs.iter().map(|d| d.scale(2)));
    c.extend((0..6).map(|k| dirs[k] + dirs[(k + 1) % 6]));
    c.into_iter().map(|v| turned(v, sixths)).collect()
}

/// Stacks bays of hexagonal layers around the vertical line through the
/// origin node. The top layer of each bay is tagged capital and the listed
/// layers are tagged floor.
pub fn build_tower(params: &TowerParams) -> Result<Tower, PipelineError> {
    let layers = params.validate()?;
    let mut assembly = LatticeAssembly::new();
    let mut floors = Vec::new();
    let mut used: HashSet<(i64, LatticePoint)> = HashSet::new();
    let mut prev: Option<LatticePoint> = None;
    for b in 0..params.bays {
        let sixths = b as i64 * params.twist_per_bay / 60;
        for j in 0..layers {
            let k = (b * layers + j) as i64;
            let is_floor = params.floors_per_bay.contains(&j);
            let mut centre = LatticePoint::ORIGIN;
            if is_floor {
                if params.floor_offset_policy == OffsetPolicy::Alternate {
                    let phase = k.rem_euclid(3);
                    centre = offset_candidates(sixths)
                        .into_iter()
                        .find(|c| Some(*c) != prev && !used.contains(&(phase, *c)))
                        .ok_or_else(|| PipelineError::InvalidParams("too many floors to keep every plate distinct".into()))?;
                    used.insert((phase, centre));
                    prev = Some(centre);
                }
                floors.push(TowerFloor { bay: b, layer: k, offset: centre });
            }
            let mut tags = BTreeSet::new();
            if j == layers - 1 {
                tags.insert(CellTag::Capital);
            }
            if is_floor {
                tags.insert(CellTag::Floor);
            }
            for p in cells_in_slab(k, &PlanRegion::hexagon(centre.coords(), params.plan)).iter() {
                assembly.insert_tagged(*p, tags.clone()).expect("layers are disjoint");
            }
        }
    }
    let transform = WorldTransform::with_layer_height(params.capital_depth);
    Ok(Tower { assembly, layers_per_bay: layers, floors, transform })
}
