//! The tetrahedral-octahedral honeycomb on the FCC lattice, with (111) layers
//! as the horizontal direction.

mod placement;
mod region;
mod symmetry;
mod world;

use std::collections::{BTreeSet, HashMap};

use num_rational::Ratio;

pub use placement::{canonical_offsets, LatticePlacement};
pub use region::{cells_in_slab, period_a, period_b, period_coords3, PlanRegion, PERIOD_A, PERIOD_B};
pub use symmetry::{LatticeMap, LatticeSymmetry};
pub use world::{plan_xy, vertical_rotation, WorldTransform};

use crate::assembly::CellTag;
use crate::geom::{ConvexCell, Fingerprint, GeomError, LatticePoint, Species};
use crate::grammar::DerivationScript;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum LatticeError {
    #[error("coordinate sum {0} is odd; not an FCC lattice point")]
    ParityViolation(i64),
    #[error("{0:?} is not a honeycomb cell species")]
    NotHoneycombSpecies(Species),
    #[error("placement {0:?} is already occupied")]
    DuplicatePlacement(LatticePlacement),
    #[error("plan region is empty")]
    EmptyRegion,
}

/// Index of the (111) node plane through `(x, y, z)`.
pub fn layer_index(x: i64, y: i64, z: i64) -> Result<i64, LatticeError> {
    let s = x + y + z;
    if s.rem_euclid(2) != 0 {
        return Err(LatticeError::ParityViolation(s));
    }
    Ok(s / 2)
}

/// Honeycomb cells without duplicates, in insertion order, with per-cell tags.
#[derive(Clone, Debug, Default)]
pub struct LatticeAssembly {
    cells: Vec<LatticePlacement>,
    tags: Vec<BTreeSet<CellTag>>,
    occupancy: HashMap<LatticePlacement, usize>,
    provenance: Option<DerivationScript>,
}

impl PartialEq for LatticeAssembly {
    fn eq(&self, other: &Self) -> bool {
        self.cells == other.cells && self.tags == other.tags && self.provenance == other.provenance
    }
}

impl LatticeAssembly {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_placements(cells: impl IntoIterator<Item = LatticePlacement>) -> Result<Self, LatticeError> {
        let mut a = Self::new();
        for c in cells {
            a.insert(c)?;
        }
        Ok(a)
    }

    pub fn insert(&mut self, p: LatticePlacement) -> Result<usize, LatticeError> {
        self.insert_tagged(p, BTreeSet::new())
    }

    pub fn insert_tagged(&mut self, p: LatticePlacement, tags: BTreeSet<CellTag>) -> Result<usize, LatticeError> {
        if self.occupancy.contains_key(&p) {
            return Err(LatticeError::DuplicatePlacement(p));
        }
        let i = self.cells.len();
        self.occupancy.insert(p, i);
        self.cells.push(p);
        self.tags.push(tags);
        Ok(i)
    }

    pub fn contains(&self, p: &LatticePlacement) -> bool {
        self.occupancy.contains_key(p)
    }

    pub fn index_of(&self, p: &LatticePlacement) -> Option<usize> {
        self.occupancy.get(p).copied()
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &LatticePlacement> {
        self.cells.iter()
    }

    pub fn placements(&self) -> &[LatticePlacement] {
        &self.cells
    }

    pub fn tags(&self, i: usize) -> &BTreeSet<CellTag> {
        &self.tags[i]
    }

    pub fn add_tag(&mut self, i: usize, tag: CellTag) {
        self.tags[i].insert(tag);
    }

    pub fn provenance(&self) -> Option<&DerivationScript> {
        self.provenance.as_ref()
    }

    pub fn set_provenance(&mut self, script: Option<DerivationScript>) {
        self.provenance = script;
    }

    pub fn volume(&self) -> Ratio<i64> {
        self.cells.iter().map(|c| c.volume()).sum()
    }

    pub fn cells(&self) -> Vec<ConvexCell> {
        self.cells.iter().map(|c| c.cell()).collect()
    }

    /// Every distinct vertex, sorted.
    pub fn nodes(&self) -> Vec<LatticePoint> {
        let set: BTreeSet<LatticePoint> = self.cells.iter().flat_map(|c| c.vertices()).collect();
        set.into_iter().collect()
    }

    /// Image under an affine lattice map; tags follow their cells.
    pub fn mapped(&self, m: &LatticeMap) -> LatticeAssembly {
        let mut out = LatticeAssembly::new();
        for (c, t) in self.cells.iter().zip(&self.tags) {
            out.insert_tagged(m.apply_placement(c), t.clone()).expect("maps are injective");
        }
        out
    }

    pub fn translated(&self, t: LatticePoint) -> LatticeAssembly {
        self.mapped(&LatticeMap::translation(t))
    }

    /// Placements as a sorted set, for order-free comparison.
    pub fn placement_set(&self) -> BTreeSet<LatticePlacement> {
        self.cells.iter().copied().collect()
    }

    pub fn fingerprint(&self) -> Result<Fingerprint, GeomError> {
        lattice_fingerprint(&self.cells)
    }
}

fn species_code(s: Species) -> char {
    match s {
        Species::TetraUp => 'U',
        Species::TetraDown => 'D',
        Species::Octa => 'O',
        Species::HalfOcta => 'H',
    }
}

/// Exact canonical form: the lexicographically least translation-normalised
/// sorted cell list over all 48 lattice orientations.
pub fn lattice_fingerprint(cells: &[LatticePlacement]) -> Result<Fingerprint, GeomError> {
    if cells.is_empty() {
        return Err(GeomError::EmptyAssembly);
    }
    let mut best: Option<Vec<(Species, LatticePoint)>> = None;
    let mut img: Vec<(Species, LatticePoint)> = Vec::with_capacity(cells.len());
    for (idx, g) in LatticeSymmetry::all().iter().enumerate() {
        img.clear();
        img.extend(cells.iter().map(|c| {
            let p = g.apply_placement_indexed(idx, c);
            (p.species(), p.anchor())
        }));
        let min = img.iter().map(|c| c.1).min().unwrap();
        for c in img.iter_mut() {
            c.1 = c.1 - min;
        }
        img.sort_by_key(|a| (a.1, a.0));
        if best.as_ref().is_none_or(|b| cmp_forms(&img, b).is_lt()) {
            best = Some(img.clone());
        }
    }
    let mut s = String::from("L");
    for (sp, a) in best.unwrap() {
        s.push_str(&format!("|{}{},{},{}", species_code(sp), a.x(), a.y(), a.z()));
    }
    Ok(Fingerprint::from_bytes(s.into_bytes()))
}

fn cmp_forms(a: &[(Species, LatticePoint)], b: &[(Species, LatticePoint)]) -> std::cmp::Ordering {
    for (x, y) in a.iter().zip(b) {
        let o = (x.1, x.0).cmp(&(y.1, y.0));
        if o.is_ne() {
            return o;
        }
    }
    a.len().cmp(&b.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: i64, y: i64, z: i64) -> LatticePoint {
        LatticePoint::new(x, y, z).unwrap()
    }

    #[test]
    fn layer_index_examples() {
        assert_eq!(layer_index(0, 0, 0), Ok(0));
        assert_eq!(layer_index(1, 0, 1), Ok(1));
        assert_eq!(layer_index(1, 0, 0), Err(LatticeError::ParityViolation(1)));
        let layers: Vec<i64> = LatticePlacement::up(LatticePoint::ORIGIN)
            .vertices()
            .iter()
            .map(|v| layer_index(v.x(), v.y(), v.z()).unwrap())
            .collect();
        assert_eq!(layers, vec![0, 1, 1, 1]);
    }

    #[test]
    fn duplicates_rejected() {
        let mut a = LatticeAssembly::new();
        a.insert(LatticePlacement::octa(LatticePoint::ORIGIN)).unwrap();
        assert!(matches!(a.insert(LatticePlacement::octa(LatticePoint::ORIGIN)), Err(LatticeError::DuplicatePlacement(_))));
    }

    #[test]
    fn fingerprint_ignores_translation_and_orientation() {
        let a = LatticeAssembly::from_placements([
            LatticePlacement::octa(LatticePoint::ORIGIN),
            LatticePlacement::up(LatticePoint::ORIGIN),
        ])
        .unwrap();
        let b = a.translated(p(2, 0, 0));
        assert_eq!(a.fingerprint(), b.fingerprint());
        let quarter = LatticeSymmetry::new([1, 0, 2], [-1, 1, 1]).unwrap();
        let c = a.mapped(&LatticeMap { sym: quarter, shift: p(4, 2, 0) });
        assert_eq!(a.fingerprint(), c.fingerprint());
    }

    #[test]
    fn tetra_orientations_share_a_fingerprint() {
        let up = lattice_fingerprint(&[LatticePlacement::up(LatticePoint::ORIGIN)]).unwrap();
        let down = lattice_fingerprint(&[LatticePlacement::down(p(5, 1, 0))]).unwrap();
        assert_eq!(up, down);
    }

    #[test]
    fn different_shapes_differ() {
        let bip = lattice_fingerprint(&[LatticePlacement::up(LatticePoint::ORIGIN), LatticePlacement::up(p(1, 1, 0))]);
        let fu = lattice_fingerprint(&[LatticePlacement::up(LatticePoint::ORIGIN), LatticePlacement::octa(LatticePoint::ORIGIN)]);
        assert_ne!(bip, fu);
    }

    #[test]
    fn empty_fingerprint_is_an_error() {
        assert_eq!(lattice_fingerprint(&[]), Err(GeomError::EmptyAssembly));
    }
}
