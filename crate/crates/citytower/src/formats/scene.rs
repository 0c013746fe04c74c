use std::collections::BTreeSet;

use nalgebra::Matrix3;
use serde::{Deserialize, Serialize};

use super::obj::{obj_faces, obj_lines};
use super::FormatError;
use crate::assembly::{Assembly, CellTag};
use crate::frame::{Check, FrameGraph, Node, ValidationReport};
use crate::geom::{canonical_cell, interiors_overlap, ConvexCell, Isometry, LatticePoint, Species, Vec3, WorldPoint};
use crate::grammar::DerivationScript;
use crate::lattice::WorldTransform;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Units {
    Lattice,
    Feet,
}

impl Units {
    pub fn parse(s: &str) -> Option<Units> {
        match s {
            "lattice" => Some(Units::Lattice),
            "feet" => Some(Units::Feet),
            _ => None,
        }
    }
}

/// Lattice-to-world map: `origin + scale * rotation * p`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SceneTransform {
    pub rotation: [[f64; 3]; 3],
    pub scale: f64,
    pub origin: [f64; 3],
}

impl From<&WorldTransform> for SceneTransform {
    fn from(t: &WorldTransform) -> Self {
        let m = t.rotation().linear();
        SceneTransform {
            rotation: std::array::from_fn(|i| std::array::from_fn(|j| m[(i, j)])),
            scale: t.scale(),
            origin: [t.origin().x, t.origin().y, t.origin().z],
        }
    }
}

impl SceneTransform {
    pub fn to_world_transform(&self) -> Option<WorldTransform> {
        let m = Matrix3::from_fn(|i, j| self.rotation[i][j]);
        let rotation = Isometry::new(m, Vec3::zeros()).ok()?;
        WorldTransform::new(rotation, self.scale, WorldPoint::from(self.origin))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SceneCell {
    pub species: Species,
    pub vertices: Vec<[f64; 3]>,
    #[serde(default)]
    pub tags: Vec<CellTag>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SceneFrame {
    pub nodes: Vec<[f64; 3]>,
    pub members: Vec<[usize; 2]>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SceneDocument {
    pub units: Units,
    pub transform: Option<SceneTransform>,
    pub cells: Vec<SceneCell>,
    pub frame: SceneFrame,
    pub provenance: Option<DerivationScript>,
}

fn arr(p: &WorldPoint) -> [f64; 3] {
    [p.x, p.y, p.z]
}

/// Scene of an assembly and its frame, in lattice units or mapped by `transform`.
pub fn scene_from_assembly(assembly: &Assembly, transform: Option<&WorldTransform>) -> SceneDocument {
    let map = |p: &WorldPoint| arr(&transform.map_or(*p, |t| t.apply(p)));
    let cells = assembly
        .cells()
        .iter()
        .map(|c| SceneCell {
            species: c.placement.species(),
            vertices: c.placement.cell().vertices().iter().map(map).collect(),
            tags: c.tags.iter().copied().collect(),
        })
        .collect();
    let graph = FrameGraph::extract(assembly);
    let frame = SceneFrame {
        nodes: graph.nodes().iter().map(|n| map(&n.world())).collect(),
        members: graph.members().iter().map(|m| [m.a, m.b]).collect(),
    };
    SceneDocument {
        units: if transform.is_some() { Units::Feet } else { Units::Lattice },
        transform: transform.map(SceneTransform::from),
        cells,
        frame,
        provenance: assembly.provenance().cloned(),
    }
}

impl SceneDocument {
    fn world_transform(&self) -> Result<Option<WorldTransform>, FormatError> {
        match &self.transform {
            None => Ok(None),
            Some(t) => t
                .to_world_transform()
                .map(Some)
                .ok_or_else(|| FormatError::SchemaViolation { pointer: "/transform".into(), message: "not a scaled rotation".into() }),
        }
    }

    fn world_cells(&self) -> Result<Vec<ConvexCell>, FormatError> {
        self.cells
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let canon = canonical_cell(c.species);
                if c.vertices.len() != canon.vertices().len() {
                    return Err(FormatError::SchemaViolation {
                        pointer: format!("/cells/{i}/vertices"),
                        message: format!("a {} has {} vertices, got {}", c.species.name(), canon.vertices().len(), c.vertices.len()),
                    });
                }
                let vs = c.vertices.iter().map(|v| WorldPoint::from(*v)).collect();
                Ok(ConvexCell::from_parts(c.species, vs, canon.faces().to_vec()))
            })
            .collect()
    }

    /// Cells in scene coordinates with outward faces.
    pub fn cell_geometry(&self) -> Result<Vec<ConvexCell>, FormatError> {
        self.world_cells()
    }

    /// Cells mapped back to the lattice frame.
    pub fn lattice_cells(&self) -> Result<Vec<ConvexCell>, FormatError> {
        let cells = self.world_cells()?;
        match self.world_transform()? {
            None => Ok(cells),
            Some(t) => Ok(cells
                .into_iter()
                .map(|c| {
                    let vs = c.vertices().iter().map(|p| t.unapply(p)).collect();
                    ConvexCell::from_parts(c.species(), vs, c.faces().to_vec())
                })
                .collect()),
        }
    }

    /// The stored frame. Nodes at lattice points stay exact.
    pub fn frame_graph(&self) -> Result<FrameGraph, FormatError> {
        let t = self.world_transform()?;
        let nodes: Vec<WorldPoint> = self.frame.nodes.iter().map(|n| WorldPoint::from(*n)).collect();
        let local: Vec<WorldPoint> = nodes.iter().map(|p| t.as_ref().map_or(*p, |t| t.unapply(p))).collect();
        let exact: Option<Vec<LatticePoint>> = if t.is_none() { local.iter().map(LatticePoint::from_world).collect() } else { None };
        Ok(match exact {
            Some(ps) if ps.iter().zip(&nodes).all(|(l, w)| l.to_world() == *w) => {
                FrameGraph::from_nodes(ps.into_iter().map(Node::Lattice).collect(), self.frame.members.clone())
            }
            _ => FrameGraph::from_nodes(nodes.into_iter().map(Node::World).collect(), self.frame.members.clone()),
        })
    }

    pub fn to_obj_frame(&self) -> String {
        let nodes: Vec<WorldPoint> = self.frame.nodes.iter().map(|n| WorldPoint::from(*n)).collect();
        obj_lines(&nodes, &self.frame.members)
    }

    pub fn to_obj_cells(&self) -> Result<String, FormatError> {
        Ok(obj_faces(&self.world_cells()?))
    }
}

/// Frame checks plus cell-level audits: no two cells overlap and the stored
/// frame is the one the cells induce.
pub fn validate_scene(doc: &SceneDocument) -> Result<ValidationReport, FormatError> {
    let mut report = doc.frame_graph()?.validate();
    let cells = doc.lattice_cells()?;
    let mut overlaps = 0;
    for i in 0..cells.len() {
        for j in i + 1..cells.len() {
            if interiors_overlap(&cells[i], &cells[j]) {
                overlaps += 1;
            }
        }
    }
    report.checks.push(Check { name: "cells disjoint", passed: overlaps == 0, detail: format!("{overlaps} overlapping cell pairs") });

    let key = |p: &[f64; 3]| p.map(|c| (c * 1e6).round() as i64);
    let mut edges = BTreeSet::new();
    for c in doc.world_cells()? {
        for (a, b) in c.edges() {
            let (a, b) = (key(&arr(&c.vertices()[a])), key(&arr(&c.vertices()[b])));
            edges.insert((a.min(b), a.max(b)));
        }
    }
    let stored: BTreeSet<_> = doc
        .frame
        .members
        .iter()
        .filter(|[a, b]| *a < doc.frame.nodes.len() && *b < doc.frame.nodes.len())
        .map(|[a, b]| {
            let (a, b) = (key(&doc.frame.nodes[*a]), key(&doc.frame.nodes[*b]));
            (a.min(b), a.max(b))
        })
        .collect();
    let same = stored == edges;
    report.checks.push(Check {
        name: "frame matches cells",
        passed: same,
        detail: format!("{} cell edges, {} stored members", edges.len(), stored.len()),
    });
    Ok(report)
}
