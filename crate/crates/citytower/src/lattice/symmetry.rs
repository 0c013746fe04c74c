use std::sync::LazyLock;

use nalgebra::Matrix3;

use super::LatticePlacement;
use crate::geom::{Isometry, LatticePoint, Species, Vec3};

/// Signed coordinate permutation: `out[i] = signs[i] * v[perm[i]]`. These 48
/// maps are the point group of the cubic lattice and all preserve the honeycomb.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct LatticeSymmetry {
    perm: [usize; 3],
    signs: [i64; 3],
}

static ALL: LazyLock<Vec<LatticeSymmetry>> = LazyLock::new(|| {
    let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let mut out = Vec::with_capacity(48);
    for perm in perms {
        for bits in 0..8 {
            let s = |k: usize| if bits >> k & 1 == 1 { -1 } else { 1 };
            out.push(LatticeSymmetry { perm, signs: [s(0), s(1), s(2)] });
        }
    }
    out
});

// Image of each canonical cell under each symmetry, as (species, anchor offset).
static IMAGES: LazyLock<Vec<[(Species, LatticePoint); 3]>> = LazyLock::new(|| {
    ALL.iter()
        .map(|g| {
            let img = |s: Species| {
                let v: Vec<LatticePoint> = LatticePlacement::new(s, LatticePoint::ORIGIN)
                    .unwrap()
                    .vertices()
                    .into_iter()
                    .map(|p| g.apply(p))
                    .collect();
                let p = LatticePlacement::from_vertices(&v).expect("symmetries preserve the honeycomb");
                (p.species(), p.anchor())
            };
            [img(Species::TetraUp), img(Species::TetraDown), img(Species::Octa)]
        })
        .collect()
});

impl LatticeSymmetry {
    pub fn all() -> &'static [LatticeSymmetry] {
        &ALL
    }

    pub fn identity() -> Self {
        LatticeSymmetry { perm: [0, 1, 2], signs: [1, 1, 1] }
    }

    pub fn inversion() -> Self {
        LatticeSymmetry { perm: [0, 1, 2], signs: [-1, -1, -1] }
    }

    /// Cyclic shift (x,y,z) -> (z,x,y): a third of a turn about (1,1,1).
    pub fn cycle() -> Self {
        LatticeSymmetry { perm: [2, 0, 1], signs: [1, 1, 1] }
    }

    /// Rotoreflection about (1,1,1) that turns the plan by +60 degrees
    /// (counter-clockwise seen from above) and swaps the two sides of a
    /// horizontal plane: (x,y,z) -> (-y,-z,-x).
    pub fn plan_sixth_turn() -> Self {
        LatticeSymmetry { perm: [1, 2, 0], signs: [-1, -1, -1] }
    }

    pub fn new(perm: [usize; 3], signs: [i64; 3]) -> Option<Self> {
        let mut seen = [false; 3];
        for &p in &perm {
            if p > 2 || seen[p] {
                return None;
            }
            seen[p] = true;
        }
        if signs.iter().any(|s| s.abs() != 1) {
            return None;
        }
        Some(LatticeSymmetry { perm, signs })
    }

    fn index(&self) -> usize {
        ALL.iter().position(|g| g == self).unwrap()
    }

    pub fn apply(&self, p: LatticePoint) -> LatticePoint {
        let c = p.coords();
        LatticePoint::new(
            self.signs[0] * c[self.perm[0]],
            self.signs[1] * c[self.perm[1]],
            self.signs[2] * c[self.perm[2]],
        )
        .expect("signed permutations keep parity")
    }

    pub fn apply_placement(&self, p: &LatticePlacement) -> LatticePlacement {
        self.apply_placement_indexed(self.index(), p)
    }

    pub(crate) fn apply_placement_indexed(&self, idx: usize, p: &LatticePlacement) -> LatticePlacement {
        let k = match p.species() {
            Species::TetraUp => 0,
            Species::TetraDown => 1,
            _ => 2,
        };
        let (species, off) = IMAGES[idx][k];
        LatticePlacement::new(species, off + self.apply(p.anchor())).unwrap()
    }

    pub fn compose(&self, other: &LatticeSymmetry) -> LatticeSymmetry {
        // (self ∘ other)(v)[i] = s_i * (other v)[p_i] = s_i * t_{p_i} * v[q_{p_i}]
        let mut perm = [0; 3];
        let mut signs = [1; 3];
        for i in 0..3 {
            perm[i] = other.perm[self.perm[i]];
            signs[i] = self.signs[i] * other.signs[self.perm[i]];
        }
        LatticeSymmetry { perm, signs }
    }

    pub fn matrix(&self) -> Matrix3<f64> {
        Matrix3::from_fn(|r, c| if self.perm[r] == c { self.signs[r] as f64 } else { 0.0 })
    }

    pub fn is_proper(&self) -> bool {
        self.matrix().determinant() > 0.0
    }

    pub fn to_isometry(&self) -> Isometry {
        Isometry::new(self.matrix(), Vec3::zeros()).unwrap()
    }
}

/// Affine lattice map `p -> sym(p) + shift`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LatticeMap {
    pub sym: LatticeSymmetry,
    pub shift: LatticePoint,
}

impl LatticeMap {
    pub fn translation(shift: LatticePoint) -> Self {
        LatticeMap { sym: LatticeSymmetry::identity(), shift }
    }

    /// `sym` applied about a fixed centre given in doubled coordinates, so
    /// that octa centres and other half-integer points can be used.
    /// Returns `None` when the map does not send lattice points to lattice points.
    pub fn about_doubled(sym: LatticeSymmetry, centre2: [i64; 3]) -> Option<Self> {
        // p -> sym(p - c) + c = sym(p) + (c - sym(c))
        let c = centre2;
        let sc = [
            sym.signs[0] * c[sym.perm[0]],
            sym.signs[1] * c[sym.perm[1]],
            sym.signs[2] * c[sym.perm[2]],
        ];
        let d = [c[0] - sc[0], c[1] - sc[1], c[2] - sc[2]];
        if d.iter().any(|x| x % 2 != 0) {
            return None;
        }
        let shift = LatticePoint::new(d[0] / 2, d[1] / 2, d[2] / 2).ok()?;
        Some(LatticeMap { sym, shift })
    }

    pub fn apply(&self, p: LatticePoint) -> LatticePoint {
        self.sym.apply(p) + self.shift
    }

    pub fn apply_placement(&self, p: &LatticePlacement) -> LatticePlacement {
        self.sym.apply_placement(p).translated(self.shift)
    }
}
