//! Cell collections that may mix honeycomb placements and free solids.

use std::collections::BTreeSet;
use std::fmt;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::geom::{canonical_cell, free_fingerprint, interiors_overlap, ConvexCell, Fingerprint, GeomError, Isometry, LatticePoint, Species};
use crate::grammar::DerivationScript;
use crate::lattice::{lattice_fingerprint, LatticeAssembly, LatticePlacement};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CellTag {
    Capital,
    Floor,
}

impl CellTag {
    pub fn name(self) -> &'static str {
        match self {
            CellTag::Capital => "capital",
            CellTag::Floor => "floor",
        }
    }

    pub fn parse(s: &str) -> Option<CellTag> {
        match s {
            "capital" => Some(CellTag::Capital),
            "floor" => Some(CellTag::Floor),
            _ => None,
        }
    }
}

impl fmt::Display for CellTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Placement {
    Lattice(LatticePlacement),
    /// Canonical cell of `species` moved by `isometry`.
    Free { species: Species, isometry: Isometry },
}

impl Placement {
    pub fn species(&self) -> Species {
        match self {
            Placement::Lattice(p) => p.species(),
            Placement::Free { species, .. } => *species,
        }
    }

    pub fn cell(&self) -> ConvexCell {
        match self {
            Placement::Lattice(p) => p.cell(),
            Placement::Free { species, isometry } => canonical_cell(*species).transformed(isometry),
        }
    }

    /// A free placement whose vertices land on a honeycomb cell becomes a lattice placement.
    pub fn snapped(self) -> Placement {
        if let Placement::Free { species, .. } = &self {
            if *species != Species::HalfOcta {
                if let Some(p) = LatticePlacement::from_world(self.cell().vertices()) {
                    return Placement::Lattice(p);
                }
            }
        }
        self
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Cell {
    pub placement: Placement,
    pub tags: BTreeSet<CellTag>,
}

impl Cell {
    pub fn new(placement: Placement) -> Self {
        Cell { placement, tags: BTreeSet::new() }
    }
}

/// Ordered cells plus the derivation that produced them, when known.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Assembly {
    cells: Vec<Cell>,
    provenance: Option<DerivationScript>,
}

impl Assembly {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_cells(cells: Vec<Cell>) -> Self {
        Assembly { cells, provenance: None }
    }

    pub fn single(p: Placement) -> Self {
        Self::from_cells(vec![Cell::new(p)])
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn push(&mut self, cell: Cell) {
        self.cells.push(cell);
    }

    pub fn provenance(&self) -> Option<&DerivationScript> {
        self.provenance.as_ref()
    }

    pub fn set_provenance(&mut self, script: Option<DerivationScript>) {
        self.provenance = script;
    }

    pub(crate) fn provenance_mut(&mut self) -> Option<&mut DerivationScript> {
        self.provenance.as_mut()
    }

    pub fn geometry(&self) -> Vec<ConvexCell> {
        self.cells.iter().map(|c| c.placement.cell()).collect()
    }

    pub fn volume(&self) -> Ratio<i64> {
        self.cells.iter().map(|c| c.placement.species().volume()).sum()
    }

    pub fn is_lattice(&self) -> bool {
        self.cells.iter().all(|c| matches!(c.placement, Placement::Lattice(_)))
    }

    /// Exact lattice form when every cell is a honeycomb placement.
    pub fn to_lattice(&self) -> Option<LatticeAssembly> {
        let mut out = LatticeAssembly::new();
        for c in &self.cells {
            match c.placement {
                Placement::Lattice(p) => {
                    out.insert_tagged(p, c.tags.clone()).ok()?;
                }
                Placement::Free { .. } => return None,
            }
        }
        out.set_provenance(self.provenance.clone());
        Some(out)
    }

    /// Like `to_lattice`, but pairs of half-octas making up a honeycomb octa
    /// are merged into that octa first.
    pub fn to_lattice_merged(&self) -> Option<LatticeAssembly> {
        let mut out = LatticeAssembly::new();
        let mut halves: Vec<Vec<LatticePoint>> = Vec::new();
        for c in &self.cells {
            match &c.placement {
                Placement::Lattice(p) => {
                    out.insert_tagged(*p, c.tags.clone()).ok()?;
                }
                Placement::Free { species: Species::HalfOcta, .. } => {
                    let v: Option<Vec<LatticePoint>> = c.placement.cell().vertices().iter().map(LatticePoint::from_world).collect();
                    halves.push(v?);
                }
                Placement::Free { .. } => return None,
            }
        }
        let mut used = vec![false; halves.len()];
        for i in 0..halves.len() {
            if used[i] {
                continue;
            }
            let j = (i + 1..halves.len()).find(|&j| {
                !used[j] && {
                    let mut u = halves[i].clone();
                    u.extend_from_slice(&halves[j]);
                    LatticePlacement::from_vertices(&u).is_some_and(|p| p.species() == Species::Octa)
                }
            })?;
            used[i] = true;
            used[j] = true;
            let mut u = halves[i].clone();
            u.extend_from_slice(&halves[j]);
            out.insert(LatticePlacement::from_vertices(&u)?).ok()?;
        }
        Some(out)
    }

    /// Exact lattice canonical form when possible, the free invariant otherwise.
    pub fn fingerprint(&self) -> Result<Fingerprint, GeomError> {
        if self.cells.is_empty() {
            return Err(GeomError::EmptyAssembly);
        }
        match self.to_lattice() {
            Some(l) => lattice_fingerprint(l.placements()),
            None => free_fingerprint(&self.geometry()),
        }
    }

    /// Hash of the exact ordered cell list. Changes whenever any cell changes,
    /// so it identifies one concrete state rather than a congruence class.
    pub fn state_digest(&self) -> String {
        let mut h = Sha256::new();
        for c in &self.cells {
            match &c.placement {
                Placement::Lattice(p) => {
                    let a = p.anchor();
                    h.update(format!("L{}:{},{},{};", p.species().name(), a.x(), a.y(), a.z()));
                }
                Placement::Free { species, isometry } => {
                    h.update(format!("F{}:", species.name()));
                    for v in isometry.linear().iter().chain(isometry.translation_part().iter()) {
                        h.update(v.to_bits().to_le_bytes());
                    }
                    h.update(b";");
                }
            }
        }
        h.finalize().iter().map(|b| format!("{b:02x}")).collect()
    }

    /// Pairs of cells whose interiors intersect.
    pub fn overlapping_pairs(&self) -> Vec<(usize, usize)> {
        let g = self.geometry();
        let mut out = Vec::new();
        for i in 0..g.len() {
            for j in i + 1..g.len() {
                if interiors_overlap(&g[i], &g[j]) {
                    out.push((i, j));
                }
            }
        }
        out
    }
}

impl From<&LatticeAssembly> for Assembly {
    fn from(l: &LatticeAssembly) -> Self {
        let cells = l
            .placements()
            .iter()
            .enumerate()
            .map(|(i, p)| Cell { placement: Placement::Lattice(*p), tags: l.tags(i).clone() })
            .collect();
        Assembly { cells, provenance: l.provenance().cloned() }
    }
}

impl From<LatticeAssembly> for Assembly {
    fn from(l: LatticeAssembly) -> Self {
        Assembly::from(&l)
    }
}
