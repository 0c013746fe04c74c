use std::fmt;

use num_rational::Ratio;
use sha2::{Digest, Sha256};

use super::{ConvexCell, GeomError, Solid};

/// Canonical byte string of an assembly. Equal fingerprints mean congruent
/// assemblies under the scheme that produced them.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fingerprint(Vec<u8>);

impl Fingerprint {
    pub fn from_bytes(bytes: Vec<u8>) -> Self {
        Fingerprint(bytes)
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    /// Lowercase hex SHA-256 of the canonical bytes.
    pub fn digest(&self) -> String {
        hex(&Sha256::digest(&self.0))
    }

    /// First 16 hex digits of the digest, for listings.
    pub fn short(&self) -> String {
        self.digest()[..16].to_string()
    }
}

impl fmt::Display for Fingerprint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.digest())
    }
}

pub(crate) fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

/// Congruence invariant for cells in arbitrary position: species counts with
/// tetra orientation merged, sorted squared vertex distances rounded to 1e-6,
/// and the exact total volume. Not complete in general; collisions need
/// symmetric configurations well beyond a handful of cells.
pub fn free_fingerprint(cells: &[ConvexCell]) -> Result<Fingerprint, GeomError> {
    if cells.is_empty() {
        return Err(GeomError::EmptyAssembly);
    }
    let mut counts = [0usize; 3];
    let mut volume = Ratio::from_integer(0i64);
    let mut pts = Vec::new();
    for c in cells {
        let s = c.species();
        counts[Solid::ALL.iter().position(|&k| k == s.solid()).unwrap()] += 1;
        volume += s.volume();
        pts.extend_from_slice(c.vertices());
    }
    let mut d: Vec<i64> = Vec::with_capacity(pts.len() * pts.len() / 2);
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            d.push(((pts[i] - pts[j]).norm_squared() * 1e6).round() as i64);
        }
    }
    d.sort_unstable();
    let mut s = format!("F|T{}O{}H{}|V{}|D", counts[0], counts[1], counts[2], volume);
    for x in d {
        s.push(',');
        s.push_str(&x.to_string());
    }
    Ok(Fingerprint(s.into_bytes()))
}
