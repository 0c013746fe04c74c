use super::{Isometry, Species, Vec3, WorldPoint, TOL};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Orientation {
    Up,
    Down,
}

/// Convex polyhedron with outward, counter-clockwise faces.
#[derive(Clone, Debug, PartialEq)]
pub struct ConvexCell {
    species: Species,
    vertices: Vec<WorldPoint>,
    faces: Vec<Vec<usize>>,
}

const UP: [[f64; 3]; 4] = [[0., 0., 0.], [1., 1., 0.], [1., 0., 1.], [0., 1., 1.]];
const OCTA: [[f64; 3]; 6] = [[0., 0., 0.], [2., 0., 0.], [1., 1., 0.], [1., -1., 0.], [1., 0., 1.], [1., 0., -1.]];
// Square pyramid: base ring first, apex last.
const HALF: [[f64; 3]; 5] = [[0., 0., 0.], [1., 1., 0.], [2., 0., 0.], [1., -1., 0.], [1., 0., 1.]];

fn pts(raw: &[[f64; 3]]) -> Vec<WorldPoint> {
    raw.iter().map(|p| WorldPoint::new(p[0], p[1], p[2])).collect()
}

/// Up-tetra at the origin, or its point reflection for the down orientation.
pub fn canonical_tetra(orientation: Orientation) -> ConvexCell {
    let (species, sign) = match orientation {
        Orientation::Up => (Species::TetraUp, 1.0),
        Orientation::Down => (Species::TetraDown, -1.0),
    };
    let vertices: Vec<WorldPoint> = UP.iter().map(|p| WorldPoint::new(sign * p[0], sign * p[1], sign * p[2])).collect();
    ConvexCell::from_parts(species, vertices, vec![vec![1, 2, 3], vec![0, 2, 3], vec![0, 1, 3], vec![0, 1, 2]])
}

pub fn canonical_octa() -> ConvexCell {
    let mut faces = Vec::with_capacity(8);
    for a in [0, 1] {
        for b in [2, 3] {
            for c in [4, 5] {
                faces.push(vec![a, b, c]);
            }
        }
    }
    ConvexCell::from_parts(Species::Octa, pts(&OCTA), faces)
}

/// Upper half of the canonical octa (apex above the z = 0 square).
/// Triangles come first, the square base is the last face.
pub fn canonical_half_octa() -> ConvexCell {
    let faces = vec![vec![0, 1, 4], vec![1, 2, 4], vec![2, 3, 4], vec![3, 0, 4], vec![0, 1, 2, 3]];
    ConvexCell::from_parts(Species::HalfOcta, pts(&HALF), faces)
}

pub fn canonical_cell(species: Species) -> ConvexCell {
    match species {
        Species::TetraUp => canonical_tetra(Orientation::Up),
        Species::TetraDown => canonical_tetra(Orientation::Down),
        Species::Octa => canonical_octa(),
        Species::HalfOcta => canonical_half_octa(),
    }
}

impl ConvexCell {
    /// Builds a cell and orients every face outward.
    pub fn from_parts(species: Species, vertices: Vec<WorldPoint>, mut faces: Vec<Vec<usize>>) -> Self {
        let c = centroid_of(&vertices);
        for f in faces.iter_mut() {
            let n = newell(&vertices, f);
            if n.dot(&(vertices[f[0]] - c)) < 0.0 {
                f.reverse();
            }
        }
        ConvexCell { species, vertices, faces }
    }

    pub fn species(&self) -> Species {
        self.species
    }

    pub fn vertices(&self) -> &[WorldPoint] {
        &self.vertices
    }

    pub fn faces(&self) -> &[Vec<usize>] {
        &self.faces
    }

    pub fn face_points(&self, i: usize) -> Vec<WorldPoint> {
        self.faces[i].iter().map(|&v| self.vertices[v]).collect()
    }

    /// Unit outward normal of face `i`.
    pub fn face_normal(&self, i: usize) -> Vec3 {
        newell(&self.vertices, &self.faces[i]).normalize()
    }

    /// Edges as sorted index pairs in ascending order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut e: Vec<(usize, usize)> = Vec::new();
        for f in &self.faces {
            for k in 0..f.len() {
                let (a, b) = (f[k], f[(k + 1) % f.len()]);
                e.push((a.min(b), a.max(b)));
            }
        }
        e.sort_unstable();
        e.dedup();
        e
    }

    /// Indices of the faces containing both endpoints of an edge.
    pub fn edge_faces(&self, edge: (usize, usize)) -> Vec<usize> {
        (0..self.faces.len())
            .filter(|&i| self.faces[i].contains(&edge.0) && self.faces[i].contains(&edge.1))
            .collect()
    }

    /// Neighbours of vertex `v` along edges, ascending.
    pub fn vertex_neighbors(&self, v: usize) -> Vec<usize> {
        self.edges()
            .into_iter()
            .filter_map(|(a, b)| if a == v { Some(b) } else if b == v { Some(a) } else { None })
            .collect()
    }

    pub fn centroid(&self) -> WorldPoint {
        centroid_of(&self.vertices)
    }

    /// Volume by the divergence theorem.
    pub fn volume(&self) -> f64 {
        let o = self.vertices[0].coords;
        let mut v = 0.0;
        for f in &self.faces {
            for k in 1..f.len() - 1 {
                let a = self.vertices[f[0]].coords - o;
                let b = self.vertices[f[k]].coords - o;
                let c = self.vertices[f[k + 1]].coords - o;
                v += a.dot(&b.cross(&c));
            }
        }
        v / 6.0
    }

    /// Radius of the smallest sphere about the centroid holding every vertex.
    pub fn radius(&self) -> f64 {
        let c = self.centroid();
        self.vertices.iter().map(|v| (v - c).norm()).fold(0.0, f64::max)
    }

    /// Image under an isometry; faces stay outward for improper maps too.
    pub fn transformed(&self, iso: &Isometry) -> ConvexCell {
        let vertices = self.vertices.iter().map(|p| iso.apply_point(p)).collect();
        let mut faces = self.faces.clone();
        if !iso.is_proper() {
            for f in faces.iter_mut() {
                f.reverse();
            }
        }
        ConvexCell { species: self.species, vertices, faces }
    }

    /// Largest deviation of any face vertex from its face plane.
    pub fn planarity_error(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for (i, f) in self.faces.iter().enumerate() {
            let n = self.face_normal(i);
            let d = n.dot(&self.vertices[f[0]].coords);
            for &v in f {
                worst = worst.max((n.dot(&self.vertices[v].coords) - d).abs());
            }
        }
        worst
    }

    pub fn is_outward(&self) -> bool {
        let c = self.centroid();
        (0..self.faces.len()).all(|i| self.face_normal(i).dot(&(self.vertices[self.faces[i][0]] - c)) > TOL)
    }
}

fn centroid_of(v: &[WorldPoint]) -> WorldPoint {
    let s = v.iter().fold(Vec3::zeros(), |acc, p| acc + p.coords);
    WorldPoint::from(s / v.len() as f64)
}

fn newell(v: &[WorldPoint], f: &[usize]) -> Vec3 {
    let mut n = Vec3::zeros();
    for k in 0..f.len() {
        let a = v[f[k]];
        let b = v[f[(k + 1) % f.len()]];
        n.x += (a.y - b.y) * (a.z + b.z);
        n.y += (a.z - b.z) * (a.x + b.x);
        n.z += (a.x - b.x) * (a.y + b.y);
    }
    n
}
