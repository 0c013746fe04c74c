use nalgebra::{Matrix3, Rotation3, Unit};
use serde::{Deserialize, Serialize};

use super::{GeomError, Vec3, WorldPoint, TOL};

/// Rigid motion `x -> linear * x + translation`, possibly orientation reversing.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "IsometryDoc", into = "IsometryDoc")]
pub struct Isometry {
    linear: Matrix3<f64>,
    translation: Vec3,
    proper: bool,
}

impl Isometry {
    pub fn new(linear: Matrix3<f64>, translation: Vec3) -> Result<Self, GeomError> {
        let err = (linear.transpose() * linear - Matrix3::identity()).abs().max();
        if err.is_nan() || err > TOL || !translation.iter().all(|c| c.is_finite()) {
            return Err(GeomError::NotOrthogonal);
        }
        let proper = linear.determinant() > 0.0;
        Ok(Isometry { linear, translation, proper })
    }

    pub fn identity() -> Self {
        Isometry { linear: Matrix3::identity(), translation: Vec3::zeros(), proper: true }
    }

    pub fn translation(t: Vec3) -> Self {
        Isometry { linear: Matrix3::identity(), translation: t, proper: true }
    }

    /// Rotation by `angle` radians about the line through `point` along `axis`.
    pub fn rotation_about(point: &WorldPoint, axis: &Vec3, angle: f64) -> Self {
        let r = Rotation3::from_axis_angle(&Unit::new_normalize(*axis), angle).into_inner();
        Self::fixing(point, r, true)
    }

    /// Reflection in the plane through `point` with normal `normal`.
    pub fn reflection(point: &WorldPoint, normal: &Vec3) -> Self {
        let n = normal.normalize();
        let r = Matrix3::identity() - 2.0 * n * n.transpose();
        Self::fixing(point, r, false)
    }

    pub fn point_inversion(center: &WorldPoint) -> Self {
        Self::fixing(center, -Matrix3::identity(), false)
    }

    fn fixing(point: &WorldPoint, linear: Matrix3<f64>, proper: bool) -> Self {
        let p = point.coords;
        Isometry { linear, translation: p - linear * p, proper }
    }

    pub fn linear(&self) -> &Matrix3<f64> {
        &self.linear
    }

    pub fn translation_part(&self) -> &Vec3 {
        &self.translation
    }

    pub fn is_proper(&self) -> bool {
        self.proper
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Isometry) -> Isometry {
        Isometry {
            linear: self.linear * other.linear,
            translation: self.linear * other.translation + self.translation,
            proper: self.proper == other.proper,
        }
    }

    pub fn inverse(&self) -> Isometry {
        let lt = self.linear.transpose();
        Isometry { linear: lt, translation: -(lt * self.translation), proper: self.proper }
    }

    pub fn apply_point(&self, p: &WorldPoint) -> WorldPoint {
        WorldPoint::from(self.linear * p.coords + self.translation)
    }

    pub fn apply_vector(&self, v: &Vec3) -> Vec3 {
        self.linear * v
    }

    pub fn approx_eq(&self, other: &Isometry, tol: f64) -> bool {
        self.proper == other.proper
            && (self.linear - other.linear).abs().max() <= tol
            && (self.translation - other.translation).abs().max() <= tol
    }
}

#[derive(Serialize, Deserialize)]
struct IsometryDoc {
    linear: [[f64; 3]; 3],
    translation: [f64; 3],
    proper: bool,
}

impl From<Isometry> for IsometryDoc {
    fn from(i: Isometry) -> Self {
        let mut linear = [[0.0; 3]; 3];
        for (r, row) in linear.iter_mut().enumerate() {
            for (c, v) in row.iter_mut().enumerate() {
                *v = i.linear[(r, c)];
            }
        }
        IsometryDoc { linear, translation: [i.translation.x, i.translation.y, i.translation.z], proper: i.proper }
    }
}

impl TryFrom<IsometryDoc> for Isometry {
    type Error = GeomError;
    fn try_from(d: IsometryDoc) -> Result<Self, GeomError> {
        let m = Matrix3::from_fn(|r, c| d.linear[r][c]);
        let iso = Isometry::new(m, Vec3::from(d.translation))?;
        if iso.proper != d.proper {
            return Err(GeomError::NotOrthogonal);
        }
        Ok(iso)
    }
}
