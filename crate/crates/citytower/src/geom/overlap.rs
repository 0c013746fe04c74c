use super::{ConvexCell, Vec3, TOL};

/// True iff the open interiors intersect. Contact along a face, edge or
/// vertex (within `TOL`) is not overlap.
pub fn interiors_overlap(a: &ConvexCell, b: &ConvexCell) -> bool {
    let (ca, cb) = (a.centroid(), b.centroid());
    if (ca - cb).norm() > a.radius() + b.radius() + TOL {
        return false;
    }
    let mut axes: Vec<Vec3> = Vec::new();
    for c in [a, b] {
        for i in 0..c.faces().len() {
            axes.push(c.face_normal(i));
        }
    }
    let ea = edge_dirs(a);
    let eb = edge_dirs(b);
    for u in &ea {
        for v in &eb {
            let n = u.cross(v);
            let len = n.norm();
            if len > 1e-7 {
                axes.push(n / len);
            }
        }
    }
    !axes.iter().any(|ax| separates(a, b, ax))
}

fn edge_dirs(c: &ConvexCell) -> Vec<Vec3> {
    c.edges().iter().map(|&(i, j)| (c.vertices()[j] - c.vertices()[i]).normalize()).collect()
}

fn separates(a: &ConvexCell, b: &ConvexCell, axis: &Vec3) -> bool {
    let (amin, amax) = project(a, axis);
    let (bmin, bmax) = project(b, axis);
    amax <= bmin + TOL || bmax <= amin + TOL
}

fn project(c: &ConvexCell, axis: &Vec3) -> (f64, f64) {
    c.vertices().iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), p| {
        let d = axis.dot(&p.coords);
        (lo.min(d), hi.max(d))
    })
}
