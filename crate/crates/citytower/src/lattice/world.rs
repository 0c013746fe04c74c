use nalgebra::Matrix3;

use crate::geom::{ConvexCell, Isometry, Vec3, WorldPoint};

/// Maps lattice coordinates to world coordinates: `origin + scale * rotation(p)`.
#[derive(Clone, Debug, PartialEq)]
pub struct WorldTransform {
    rotation: Isometry,
    scale: f64,
    origin: WorldPoint,
}

/// Rotation taking (1,1,1) to +Z and the period direction (1,-1,0) to +X.
pub fn vertical_rotation() -> Matrix3<f64> {
    let ex = Vec3::new(1.0, -1.0, 0.0).normalize();
    let ez = Vec3::new(1.0, 1.0, 1.0).normalize();
    let ey = ez.cross(&ex);
    Matrix3::from_rows(&[ex.transpose(), ey.transpose(), ez.transpose()])
}

impl WorldTransform {
    /// Raw lattice coordinates.
    pub fn identity() -> Self {
        WorldTransform { rotation: Isometry::identity(), scale: 1.0, origin: WorldPoint::origin() }
    }

    /// (1,1,1) vertical, scaled so one layer is `layer_height` world units tall.
    pub fn with_layer_height(layer_height: f64) -> Self {
        let rotation = Isometry::new(vertical_rotation(), Vec3::zeros()).unwrap();
        WorldTransform { rotation, scale: layer_height * 3f64.sqrt() / 2.0, origin: WorldPoint::origin() }
    }

    /// Eleven-foot layers.
    pub fn feet() -> Self {
        Self::with_layer_height(11.0)
    }

    pub fn new(rotation: Isometry, scale: f64, origin: WorldPoint) -> Option<Self> {
        if !rotation.is_proper() || !scale.is_finite() || scale <= 0.0 || rotation.translation_part().norm() > 0.0 {
            return None;
        }
        Some(WorldTransform { rotation, scale, origin })
    }

    pub fn rotation(&self) -> &Isometry {
        &self.rotation
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn origin(&self) -> WorldPoint {
        self.origin
    }

    /// World height of one (111) layer.
    pub fn layer_height(&self) -> f64 {
        self.scale * 2.0 / 3f64.sqrt()
    }

    pub fn apply(&self, p: &WorldPoint) -> WorldPoint {
        self.origin + self.rotation.apply_point(p).coords * self.scale
    }

    pub fn unapply(&self, p: &WorldPoint) -> WorldPoint {
        let local = (p - self.origin) / self.scale;
        WorldPoint::from(self.rotation.linear().transpose() * local)
    }

    pub fn apply_cell(&self, c: &ConvexCell) -> ConvexCell {
        let vs = c.vertices().iter().map(|p| self.apply(p)).collect();
        ConvexCell::from_parts(c.species(), vs, c.faces().to_vec())
    }
}

/// Plan coordinates of a lattice-frame point: the world X/Y of the vertical rotation.
pub fn plan_xy(p: &WorldPoint) -> (f64, f64) {
    let q = vertical_rotation() * p.coords;
    (q.x, q.y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::canonical_octa;

    #[test]
    fn diagonal_goes_up() {
        let t = WorldTransform::with_layer_height(1.0);
        let up = t.apply(&WorldPoint::new(1.0, 1.0, 1.0)) - t.apply(&WorldPoint::origin());
        assert!(up.x.abs() < 1e-12 && up.y.abs() < 1e-12 && up.z > 0.0);
    }

    #[test]
    fn eleven_foot_layers() {
        let t = WorldTransform::feet();
        assert!((t.scale() - 11.0 * 3f64.sqrt() / 2.0).abs() < 1e-12);
        // Node planes (x+y+z)/2 = 0 and 1 sit one layer apart.
        let a = t.apply(&WorldPoint::origin());
        let b = t.apply(&WorldPoint::new(1.0, 1.0, 0.0));
        assert!(((b.z - a.z) - 11.0).abs() < 1e-12);
    }

    #[test]
    fn identity_keeps_edge_length() {
        let o = WorldTransform::identity().apply_cell(&canonical_octa());
        assert!(((o.vertices()[0] - o.vertices()[2]).norm() - 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn lengths_scale_uniformly() {
        let t = WorldTransform::feet();
        let o = t.apply_cell(&canonical_octa());
        for (a, b) in o.edges() {
            let l = (o.vertices()[a] - o.vertices()[b]).norm();
            assert!((l - t.scale() * 2f64.sqrt()).abs() < 1e-9);
        }
    }
}
