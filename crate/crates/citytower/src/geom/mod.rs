//! Points, isometries, convex cells, overlap tests and congruence fingerprints.

mod cell;
mod fingerprint;
mod gluing;
mod isometry;
mod overlap;

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

pub use cell::{canonical_cell, canonical_half_octa, canonical_octa, canonical_tetra, ConvexCell, Orientation};
pub use fingerprint::{free_fingerprint, Fingerprint};
pub use gluing::{edge_gluings, face_gluings, vertex_gluings};
pub use isometry::Isometry;
pub use overlap::interiors_overlap;

pub type Vec3 = nalgebra::Vector3<f64>;
pub type WorldPoint = nalgebra::Point3<f64>;

/// Absolute tolerance for unit-scale coordinates.
pub const TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GeomError {
    #[error("coordinate sum {0} is odd; not an FCC lattice point")]
    ParityViolation(i64),
    #[error("face {0} is not a triangle")]
    NotTriangle(usize),
    #[error("features differ in shape or size")]
    FaceMismatch,
    #[error("feature index {index} out of range ({count} available)")]
    NoSuchFeature { index: usize, count: usize },
    #[error("matrix is not orthogonal")]
    NotOrthogonal,
    #[error("assembly is empty")]
    EmptyAssembly,
}

/// Point of the FCC lattice: integer coordinates with an even sum.
///
/// Differences and sums of lattice points are again lattice points, so the
/// type doubles as the lattice translation group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "[i64; 3]", into = "[i64; 3]")]
pub struct LatticePoint([i64; 3]);

impl LatticePoint {
    pub const ORIGIN: LatticePoint = LatticePoint([0, 0, 0]);

    pub fn new(x: i64, y: i64, z: i64) -> Result<Self, GeomError> {
        let s = x + y + z;
        if s.rem_euclid(2) != 0 {
            return Err(GeomError::ParityViolation(s));
        }
        Ok(LatticePoint([x, y, z]))
    }

    pub fn coords(self) -> [i64; 3] {
        self.0
    }

    pub fn x(self) -> i64 {
        self.0[0]
    }

    pub fn y(self) -> i64 {
        self.0[1]
    }

    pub fn z(self) -> i64 {
        self.0[2]
    }

    pub fn coord_sum(self) -> i64 {
        self.0[0] + self.0[1] + self.0[2]
    }

    pub fn scale(self, k: i64) -> Self {
        LatticePoint([self.0[0] * k, self.0[1] * k, self.0[2] * k])
    }

    pub fn dist2(self, other: Self) -> i64 {
        let d = self - other;
        d.0.iter().map(|c| c * c).sum()
    }

    pub fn to_world(self) -> WorldPoint {
        WorldPoint::new(self.0[0] as f64, self.0[1] as f64, self.0[2] as f64)
    }

    /// Exact recovery from floating coordinates; `None` if any coordinate is
    /// off-integer by more than `TOL` or the parity is wrong.
    pub fn from_world(p: &WorldPoint) -> Option<Self> {
        let mut c = [0i64; 3];
        for i in 0..3 {
            let r = p[i].round();
            if (p[i] - r).abs() > TOL || r.abs() > 1e15 {
                return None;
            }
            c[i] = r as i64;
        }
        LatticePoint::new(c[0], c[1], c[2]).ok()
    }

    /// Exact plan key: two points share a key iff they differ by a multiple of (1,1,1).
    pub fn plan_key(self) -> (i64, i64) {
        (self.0[0] - self.0[2], self.0[1] - self.0[2])
    }
}

impl TryFrom<[i64; 3]> for LatticePoint {
    type Error = GeomError;
    fn try_from(c: [i64; 3]) -> Result<Self, GeomError> {
        LatticePoint::new(c[0], c[1], c[2])
    }
}

impl From<LatticePoint> for [i64; 3] {
    fn from(p: LatticePoint) -> [i64; 3] {
        p.0
    }
}

impl Add for LatticePoint {
    type Output = LatticePoint;
    fn add(self, o: Self) -> Self {
        LatticePoint([self.0[0] + o.0[0], self.0[1] + o.0[1], self.0[2] + o.0[2]])
    }
}

impl Sub for LatticePoint {
    type Output = LatticePoint;
    fn sub(self, o: Self) -> Self {
        LatticePoint([self.0[0] - o.0[0], self.0[1] - o.0[1], self.0[2] - o.0[2]])
    }
}

impl Neg for LatticePoint {
    type Output = LatticePoint;
    fn neg(self) -> Self {
        LatticePoint([-self.0[0], -self.0[1], -self.0[2]])
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.0[0], self.0[1], self.0[2])
    }
}

/// Cell species. The two tetra orientations of the honeycomb are kept apart
/// because they are different translation classes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Species {
    TetraUp,
    TetraDown,
    Octa,
    HalfOcta,
}

impl Species {
    pub fn solid(self) -> Solid {
        match self {
            Species::TetraUp | Species::TetraDown => Solid::Tetra,
            Species::Octa => Solid::Octa,
            Species::HalfOcta => Solid::HalfOcta,
        }
    }

    /// Exact volume in cubic lattice units.
    pub fn volume(self) -> Ratio<i64> {
        match self {
            Species::TetraUp | Species::TetraDown => Ratio::new(1, 3),
            Species::Octa => Ratio::new(4, 3),
            Species::HalfOcta => Ratio::new(2, 3),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Species::TetraUp => "tetra_up",
            Species::TetraDown => "tetra_down",
            Species::Octa => "octa",
            Species::HalfOcta => "half_octa",
        }
    }
}

/// Shape kind as the grammar sees it: tetra orientation is not a separate shape.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Solid {
    Tetra,
    Octa,
    HalfOcta,
}

impl Solid {
    pub const ALL: [Solid; 3] = [Solid::Tetra, Solid::Octa, Solid::HalfOcta];

    pub fn code(self) -> char {
        match self {
            Solid::Tetra => 'T',
            Solid::Octa => 'O',
            Solid::HalfOcta => 'H',
        }
    }

    pub fn from_code(c: char) -> Option<Solid> {
        match c {
            'T' => Some(Solid::Tetra),
            'O' => Some(Solid::Octa),
            'H' => Some(Solid::HalfOcta),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Solid::Tetra => "tetra",
            Solid::Octa => "octa",
            Solid::HalfOcta => "half_octa",
        }
    }

    pub fn parse(s: &str) -> Option<Solid> {
        match s {
            "tetra" | "tetrahedron" | "T" => Some(Solid::Tetra),
            "octa" | "octahedron" | "O" => Some(Solid::Octa),
            "half_octa" | "half-octa" | "H" => Some(Solid::HalfOcta),
            _ => None,
        }
    }

    /// Species used as the canonical representative when a cell of this kind is created.
    pub fn canonical_species(self) -> Species {
        match self {
            Solid::Tetra => Species::TetraUp,
            Solid::Octa => Species::Octa,
            Solid::HalfOcta => Species::HalfOcta,
        }
    }

    pub fn canonical_cell(self) -> ConvexCell {
        match self {
            Solid::Tetra => canonical_tetra(Orientation::Up),
            Solid::Octa => canonical_octa(),
            Solid::HalfOcta => canonical_half_octa(),
        }
    }
}

impl fmt::Display for Solid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parity_is_enforced() {
        assert!(LatticePoint::new(1, 1, 0).is_ok());
        assert_eq!(LatticePoint::new(1, 0, 0), Err(GeomError::ParityViolation(1)));
        assert_eq!(LatticePoint::new(-1, 0, 0), Err(GeomError::ParityViolation(-1)));
    }

    #[test]
    fn lattice_points_form_a_group() {
        let a = LatticePoint::new(1, -1, 2).unwrap();
        let b = LatticePoint::new(3, 0, 1).unwrap();
        assert_eq!((a + b).coord_sum() % 2, 0);
        assert_eq!(a - a, LatticePoint::ORIGIN);
        assert_eq!(-(-a), a);
    }

    #[test]
    fn octa_is_four_tetra_exactly() {
        assert_eq!(Species::Octa.volume(), Species::TetraUp.volume() * 4);
        assert_eq!(Species::HalfOcta.volume() * 2, Species::Octa.volume());
    }

    #[test]
    fn from_world_rejects_off_lattice() {
        assert!(LatticePoint::from_world(&WorldPoint::new(1.0, 1.0, 0.0)).is_some());
        assert!(LatticePoint::from_world(&WorldPoint::new(1.0, 0.0, 0.0)).is_none());
        assert!(LatticePoint::from_world(&WorldPoint::new(0.5, 0.5, 1.0)).is_none());
    }
}
