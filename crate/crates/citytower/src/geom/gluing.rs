use nalgebra::Matrix3;

use super::{ConvexCell, GeomError, Isometry, Vec3, WorldPoint, TOL};

fn check_index(index: usize, count: usize) -> Result<(), GeomError> {
    if index >= count {
        return Err(GeomError::NoSuchFeature { index, count });
    }
    Ok(())
}

/// Rigid motion sending the orthonormal-ish frame `from` at `p` to `to` at `q`.
fn frame_map(from: [Vec3; 3], p: &WorldPoint, to: [Vec3; 3], q: &WorldPoint) -> Result<Isometry, GeomError> {
    let s = Matrix3::from_columns(&from);
    let t = Matrix3::from_columns(&to);
    let inv = s.try_inverse().ok_or(GeomError::FaceMismatch)?;
    let r = t * inv;
    Isometry::new(r, q.coords - r * p.coords).map_err(|_| GeomError::FaceMismatch)
}

fn sorted_sides(pts: &[WorldPoint]) -> Vec<f64> {
    let mut s: Vec<f64> = (0..pts.len()).map(|k| (pts[(k + 1) % pts.len()] - pts[k]).norm()).collect();
    s.sort_by(f64::total_cmp);
    s
}

/// The three proper motions placing `cell_b` so that its face `face_b` lies on
/// `face_a` of `cell_a` with opposed normals, one per rotation of the triangle.
pub fn face_gluings(cell_a: &ConvexCell, face_a: usize, cell_b: &ConvexCell, face_b: usize) -> Result<Vec<Isometry>, GeomError> {
    check_index(face_a, cell_a.faces().len())?;
    check_index(face_b, cell_b.faces().len())?;
    let fa = cell_a.face_points(face_a);
    let fb = cell_b.face_points(face_b);
    if fa.len() != fb.len() {
        return Err(GeomError::FaceMismatch);
    }
    if fa.len() != 3 {
        return Err(GeomError::NotTriangle(face_a));
    }
    let (sa, sb) = (sorted_sides(&fa), sorted_sides(&fb));
    if sa.iter().zip(&sb).any(|(x, y)| (x - y).abs() > TOL * x.max(1.0)) {
        return Err(GeomError::FaceMismatch);
    }
    let na = cell_a.face_normal(face_a);
    let nb = cell_b.face_normal(face_b);
    let mut out = Vec::with_capacity(3);
    for k in 0..3 {
        let (a0, a1, a2) = (fa[k], fa[(k + 1) % 3], fa[(k + 2) % 3]);
        // Reversed correspondence b0->a0, b1->a2, b2->a1 turns the normal around.
        let from = [fb[1] - fb[0], fb[2] - fb[0], nb];
        let to = [a2 - a0, a1 - a0, -na];
        let iso = frame_map(from, &fb[0], to, &a0)?;
        for (p, q) in fb.iter().zip([a0, a2, a1]) {
            if (iso.apply_point(p) - q).norm() > 1e-8 {
                return Err(GeomError::FaceMismatch);
            }
        }
        out.push(iso);
    }
    Ok(out)
}

fn dihedral_bisector(cell: &ConvexCell, edge: (usize, usize)) -> Vec3 {
    let n: Vec3 = cell.edge_faces(edge).iter().map(|&f| cell.face_normal(f)).sum();
    n.normalize()
}

/// The two proper motions putting edge `edge_b` of `cell_b` on edge `edge_a`
/// of `cell_a` with outward dihedral bisectors pointing against each other.
pub fn edge_gluings(cell_a: &ConvexCell, edge_a: usize, cell_b: &ConvexCell, edge_b: usize) -> Result<Vec<Isometry>, GeomError> {
    let ea = cell_a.edges();
    let eb = cell_b.edges();
    check_index(edge_a, ea.len())?;
    check_index(edge_b, eb.len())?;
    let (p, q) = (cell_a.vertices()[ea[edge_a].0], cell_a.vertices()[ea[edge_a].1]);
    let (r, s) = (cell_b.vertices()[eb[edge_b].0], cell_b.vertices()[eb[edge_b].1]);
    if ((q - p).norm() - (s - r).norm()).abs() > TOL {
        return Err(GeomError::FaceMismatch);
    }
    let ba = dihedral_bisector(cell_a, ea[edge_a]);
    let bb = dihedral_bisector(cell_b, eb[edge_b]);
    let u = (s - r).normalize();
    let from = [u, bb, u.cross(&bb)];
    let mut out = Vec::with_capacity(2);
    for (start, end) in [(p, q), (q, p)] {
        let w = (end - start).normalize();
        let to = [w, -ba, w.cross(&-ba)];
        out.push(frame_map(from, &r, to, &start)?);
    }
    Ok(out)
}

fn vertex_axis(cell: &ConvexCell, v: usize) -> Vec3 {
    (cell.vertices()[v] - cell.centroid()).normalize()
}

fn perp(d: Vec3, axis: &Vec3) -> Vec3 {
    (d - axis * axis.dot(&d)).normalize()
}

/// Proper motions putting vertex `vertex_b` of `cell_b` on `vertex_a` of
/// `cell_a` with outward vertex axes opposed. The first incident edge of the
/// incoming vertex is turned into the half-plane of each incident edge of the
/// host vertex in turn, so there is one motion per host edge.
pub fn vertex_gluings(cell_a: &ConvexCell, vertex_a: usize, cell_b: &ConvexCell, vertex_b: usize) -> Result<Vec<Isometry>, GeomError> {
    check_index(vertex_a, cell_a.vertices().len())?;
    check_index(vertex_b, cell_b.vertices().len())?;
    let pa = cell_a.vertices()[vertex_a];
    let pb = cell_b.vertices()[vertex_b];
    let xa = vertex_axis(cell_a, vertex_a);
    let xb = vertex_axis(cell_b, vertex_b);
    let nb = cell_b.vertex_neighbors(vertex_b);
    let ub = perp(cell_b.vertices()[nb[0]] - pb, &xb);
    let from = [xb, ub, xb.cross(&ub)];
    cell_a
        .vertex_neighbors(vertex_a)
        .into_iter()
        .map(|n| {
            let ua = perp(cell_a.vertices()[n] - pa, &xa);
            let to = [-xa, ua, (-xa).cross(&ua)];
            frame_map(from, &pb, to, &pa)
        })
        .collect()
}
