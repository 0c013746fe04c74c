//! Brute-force reference computations shared by the integration tests. They
//! work from raw coordinates and share no geometry code with the library.
#![allow(dead_code)]

use std::collections::BTreeSet;

pub type P = [f64; 3];

pub fn sub(a: P, b: P) -> P {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}
pub fn add(a: P, b: P) -> P {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}
pub fn mul(a: P, k: f64) -> P {
    [a[0] * k, a[1] * k, a[2] * k]
}
pub fn dot(a: P, b: P) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}
pub fn cross(a: P, b: P) -> P {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}
pub fn norm(a: P) -> f64 {
    dot(a, a).sqrt()
}
pub fn unit(a: P) -> P {
    mul(a, 1.0 / norm(a))
}
pub fn centroid(vs: &[P]) -> P {
    mul(vs.iter().fold([0.0; 3], |s, v| add(s, *v)), 1.0 / vs.len() as f64)
}

pub fn tetra() -> Vec<P> {
    vec![[0.0, 0.0, 0.0], [1.0, 1.0, 0.0], [1.0, 0.0, 1.0], [0.0, 1.0, 1.0]]
}

pub fn octa() -> Vec<P> {
    vec![[0.0, 0.0, 0.0], [2.0, 0.0, 0.0], [1.0, 1.0, 0.0], [1.0, -1.0, 0.0], [1.0, 0.0, 1.0], [1.0, 0.0, -1.0]]
}

pub fn solid(name: &str) -> Vec<P> {
    match name {
        "tetra" => tetra(),
        "octa" => octa(),
        _ => panic!("{name}"),
    }
}

/// Outward supporting planes `(normal, offset)` with `normal . x <= offset` inside.
pub fn planes(vs: &[P]) -> Vec<(P, f64)> {
    let mut out: Vec<(P, f64)> = Vec::new();
    for i in 0..vs.len() {
        for j in i + 1..vs.len() {
            for k in j + 1..vs.len() {
                let n = cross(sub(vs[j], vs[i]), sub(vs[k], vs[i]));
                if norm(n) < 1e-9 {
                    continue;
                }
                let n = unit(n);
                let d = dot(n, vs[i]);
                let side: Vec<f64> = vs.iter().map(|v| dot(n, *v) - d).collect();
                let (n, d) = if side.iter().all(|s| *s <= 1e-9) {
                    (n, d)
                } else if side.iter().all(|s| *s >= -1e-9) {
                    (mul(n, -1.0), -d)
                } else {
                    continue;
                };
                if !out.iter().any(|(m, e)| norm(sub(*m, n)) < 1e-9 && (e - d).abs() < 1e-9) {
                    out.push((n, d));
                }
            }
        }
    }
    out
}

pub fn strictly_inside(p: P, planes: &[(P, f64)], margin: f64) -> bool {
    planes.iter().all(|(n, d)| dot(*n, p) < d - margin)
}

pub fn edges(vs: &[P]) -> Vec<(usize, usize)> {
    let min = (0..vs.len())
        .flat_map(|i| (i + 1..vs.len()).map(move |j| (i, j)))
        .map(|(i, j)| norm(sub(vs[i], vs[j])))
        .fold(f64::INFINITY, f64::min);
    let mut out = Vec::new();
    for i in 0..vs.len() {
        for j in i + 1..vs.len() {
            if (norm(sub(vs[i], vs[j])) - min).abs() < 1e-9 {
                out.push((i, j));
            }
        }
    }
    out
}

fn project(vs: &[P], axis: P) -> (f64, f64) {
    let d: Vec<f64> = vs.iter().map(|v| dot(*v, axis)).collect();
    (d.iter().cloned().fold(f64::INFINITY, f64::min), d.iter().cloned().fold(f64::NEG_INFINITY, f64::max))
}

/// Separating-axis test over face normals and edge cross products; touching
/// does not count.
pub fn overlap(a: &[P], b: &[P]) -> bool {
    let mut axes: Vec<P> = planes(a).into_iter().chain(planes(b)).map(|(n, _)| n).collect();
    for (i, j) in edges(a) {
        for (k, l) in edges(b) {
            let c = cross(sub(a[j], a[i]), sub(b[l], b[k]));
            if norm(c) > 1e-9 {
                axes.push(unit(c));
            }
        }
    }
    axes.iter().all(|ax| {
        let (a0, a1) = project(a, *ax);
        let (b0, b1) = project(b, *ax);
        a1 > b0 + 1e-9 && b1 > a0 + 1e-9
    })
}

/// Proper orthogonal map sending frame `from` (columns) onto frame `to`.
fn frame_map(from: [P; 3], to: [P; 3]) -> Option<[[f64; 3]; 3]> {
    // M = T F^-1; both frames are orthonormal after normalisation.
    let f = [unit(from[0]), unit(from[1]), unit(from[2])];
    let t = [unit(to[0]), unit(to[1]), unit(to[2])];
    let mut m = [[0.0; 3]; 3];
    for r in 0..3 {
        for c in 0..3 {
            m[r][c] = (0..3).map(|k| t[k][r] * f[k][c]).sum();
        }
    }
    let det = dot(m[0], cross(m[1], m[2]));
    (det > 0.5).then_some(m)
}

fn apply(m: &[[f64; 3]; 3], p: P) -> P {
    [dot(m[0], p), dot(m[1], p), dot(m[2], p)]
}

fn place(vs: &[P], m: &[[f64; 3]; 3], from: P, to: P) -> Vec<P> {
    vs.iter().map(|v| add(apply(m, sub(*v, from)), to)).collect()
}

fn orthonormal(a: P, b: P) -> [P; 3] {
    let a = unit(a);
    let b = unit(sub(b, mul(a, dot(a, b))));
    [a, b, cross(a, b)]
}

fn faces(vs: &[P]) -> Vec<Vec<usize>> {
    planes(vs)
        .into_iter()
        .map(|(n, d)| (0..vs.len()).filter(|&i| (dot(n, vs[i]) - d).abs() < 1e-9).collect())
        .collect()
}

/// All placements of `b` joined to the fixed `a` under a relation, with
/// features brought together with opposed outward directions.
pub fn gluings(a: &[P], b: &[P], relation: &str) -> Vec<Vec<P>> {
    let mut out = Vec::new();
    let ca = centroid(a);
    let cb = centroid(b);
    match relation {
        "face" => {
            for fa in faces(a) {
                let na = unit(sub(centroid(&fa.iter().map(|&i| a[i]).collect::<Vec<_>>()), ca));
                for fb in faces(b) {
                    let nb = unit(sub(centroid(&fb.iter().map(|&i| b[i]).collect::<Vec<_>>()), cb));
                    for s in 0..fb.len() {
                        let (p0, p1) = (a[fa[0]], a[fa[1]]);
                        let (q0, q1) = (b[fb[s]], b[fb[(s + 1) % fb.len()]]);
                        for q1 in [q1, b[fb[(s + fb.len() - 1) % fb.len()]]] {
                            let from = orthonormal(sub(q1, q0), mul(nb, -1.0));
                            let to = orthonormal(sub(p1, p0), na);
                            if let Some(m) = frame_map(from, to) {
                                let placed = place(b, &m, q0, p0);
                                if fa.iter().all(|&i| placed.iter().any(|v| norm(sub(*v, a[i])) < 1e-9)) {
                                    out.push(placed);
                                }
                            }
                        }
                    }
                }
            }
        }
        "edge" => {
            for (i, j) in edges(a) {
                let mid = mul(add(a[i], a[j]), 0.5);
                let ba = sub(mid, ca);
                for (k, l) in edges(b) {
                    let midb = mul(add(b[k], b[l]), 0.5);
                    let bb = sub(midb, cb);
                    for (k, l) in [(k, l), (l, k)] {
                        let from = orthonormal(sub(b[l], b[k]), mul(bb, -1.0));
                        let to = orthonormal(sub(a[j], a[i]), ba);
                        if let Some(m) = frame_map(from, to) {
                            out.push(place(b, &m, b[k], a[i]));
                        }
                    }
                }
            }
        }
        "vertex" => {
            for i in 0..a.len() {
                let axa = unit(sub(a[i], ca));
                let na: Vec<P> = edges(a).into_iter().filter_map(|(x, y)| (x == i).then_some(y).or((y == i).then_some(x))).map(|k| a[k]).collect();
                for k in 0..b.len() {
                    let axb = unit(sub(b[k], cb));
                    let nb: Vec<P> = edges(b).into_iter().filter_map(|(x, y)| (x == k).then_some(y).or((y == k).then_some(x))).map(|m| b[m]).collect();
                    for ea in &na {
                        for eb in &nb {
                            // Incoming axis reversed, the two edges in one half-plane about it.
                            let from = orthonormal(mul(axb, -1.0), sub(*eb, b[k]));
                            let to = orthonormal(axa, sub(*ea, a[i]));
                            if let Some(m) = frame_map(from, to) {
                                out.push(place(b, &m, b[k], a[i]));
                            }
                        }
                    }
                }
            }
        }
        _ => panic!("{relation}"),
    }
    out.into_iter().filter(|p| !overlap(a, p)).collect()
}

/// Sorted pair distances labelled same-cell or cross-cell, rounded. Equal
/// for congruent two-cell designs.
pub fn design_invariant(a: &[P], b: &[P]) -> Vec<(u8, i64)> {
    let r = |d: f64| (d * 1e6).round() as i64;
    let mut out = Vec::new();
    for cell in [a, b] {
        for i in 0..cell.len() {
            for j in i + 1..cell.len() {
                out.push((0, r(dot(sub(cell[i], cell[j]), sub(cell[i], cell[j])))));
            }
        }
    }
    for p in a {
        for q in b {
            out.push((1, r(dot(sub(*p, *q), sub(*p, *q)))));
        }
    }
    out.sort();
    out
}

pub fn unique_designs(a: &str, b: &str, relation: &str) -> usize {
    let (va, vb) = (solid(a), solid(b));
    gluings(&va, &vb, relation).iter().map(|p| design_invariant(&va, p)).collect::<BTreeSet<_>>().len()
}

/// Distinct vertices and distinct edges of a collection of integer cells.
pub fn dedup_counts(cells: &[Vec<[i64; 3]>]) -> (usize, usize) {
    let mut nodes = BTreeSet::new();
    let mut members = BTreeSet::new();
    for c in cells {
        for (i, p) in c.iter().enumerate() {
            nodes.insert(*p);
            for q in &c[i + 1..] {
                let d2: i64 = (0..3).map(|k| (p[k] - q[k]).pow(2)).sum();
                if d2 == 2 {
                    members.insert((*p.min(q), *p.max(q)));
                }
            }
        }
    }
    (nodes.len(), members.len())
}

/// Deterministic points in a box.
pub fn samples(n: usize, lo: P, hi: P, seed: u64) -> Vec<P> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
    (0..n).map(|_| std::array::from_fn(|k| rng.gen_range(lo[k]..hi[k]))).collect()
}

pub fn to_f(p: [i64; 3]) -> P {
    [p[0] as f64, p[1] as f64, p[2] as f64]
}

/// Convex hull of plan points, counterclockwise.
pub fn hull(mut pts: Vec<(f64, f64)>) -> Vec<(f64, f64)> {
    pts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    pts.dedup_by(|a, b| (a.0 - b.0).abs() < 1e-9 && (a.1 - b.1).abs() < 1e-9);
    let turn = |o: (f64, f64), a: (f64, f64), b: (f64, f64)| (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0);
    let mut lower: Vec<(f64, f64)> = Vec::new();
    for p in &pts {
        while lower.len() >= 2 && turn(lower[lower.len() - 2], lower[lower.len() - 1], *p) <= 1e-12 {
            lower.pop();
        }
        lower.push(*p);
    }
    let mut upper: Vec<(f64, f64)> = Vec::new();
    for p in pts.iter().rev() {
        while upper.len() >= 2 && turn(upper[upper.len() - 2], upper[upper.len() - 1], *p) <= 1e-12 {
            upper.pop();
        }
        upper.push(*p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// Plan coordinates looking down (1,1,1).
pub fn plan(p: P) -> (f64, f64) {
    let u = unit([1.0, -1.0, 0.0]);
    let v = unit([1.0, 1.0, -2.0]);
    (dot(p, u), dot(p, v))
}
