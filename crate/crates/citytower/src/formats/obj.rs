//! Wavefront OBJ output.

use std::fmt::Write as _;
use std::io;
use std::path::Path;

use crate::geom::{ConvexCell, WorldPoint};

/// `x` with 9 significant digits, trailing zeros dropped.
pub fn format_sig9(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return if x.is_nan() { "nan".into() } else if x.is_infinite() { x.to_string() } else { "0".into() };
    }
    let sci = format!("{x:.8e}");
    let (mantissa, exp) = sci.split_once('e').expect("scientific notation");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-5..9).contains(&exp) {
        let m = mantissa.trim_end_matches('0').trim_end_matches('.');
        return format!("{m}e{exp}");
    }
    let decimals = (8 - exp).max(0) as usize;
    let s = format!("{x:.decimals$}");
    let s = if s.contains('.') { s.trim_end_matches('0').trim_end_matches('.').to_string() } else { s };
    if s == "-0" {
        "0".into()
    } else {
        s
    }
}

fn vertex_line(out: &mut String, p: &WorldPoint) {
    // Rounding noise from world transforms prints as 0.
    let c = |x: f64| format_sig9(if x.abs() < 1e-12 { 0.0 } else { x });
    writeln!(out, "v {} {} {}", c(p.x), c(p.y), c(p.z)).unwrap();
}

/// Nodes as `v` lines, then one `l` line per member.
pub fn obj_lines(nodes: &[WorldPoint], members: &[[usize; 2]]) -> String {
    let mut out = String::new();
    for p in nodes {
        vertex_line(&mut out, p);
    }
    for [a, b] in members {
        writeln!(out, "l {} {}", a + 1, b + 1).unwrap();
    }
    out
}

/// Each cell's vertices as `v` lines, then one `f` line per face with
/// counterclockwise outward winding.
pub fn obj_faces(cells: &[ConvexCell]) -> String {
    let mut out = String::new();
    for c in cells {
        for p in c.vertices() {
            vertex_line(&mut out, p);
        }
    }
    let mut base = 1;
    for c in cells {
        for f in c.faces() {
            out.push('f');
            for i in f {
                write!(out, " {}", base + i).unwrap();
            }
            out.push('\n');
        }
        base += c.vertices().len();
    }
    out
}

pub fn write_obj(path: &Path, text: &str) -> io::Result<()> {
    std::fs::write(path, text)
}
