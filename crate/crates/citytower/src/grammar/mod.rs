//! Rules, matching, application, replay and deduplicated enumeration.

mod enumerate;
mod script;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use enumerate::{enumerate_on, enumerate_unique, Catalog};
pub use script::{replay, DerivationScript, DerivationStep, Initial, StepCause};

use crate::assembly::{Assembly, Cell, Placement};
use crate::geom::{edge_gluings, face_gluings, interiors_overlap, vertex_gluings, ConvexCell, GeomError, Isometry, Solid};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GrammarError {
    #[error("unknown rule `{0}`")]
    UnknownRule(String),
    #[error("match was computed for a different assembly state")]
    StaleMatch,
    #[error("placement collides with cell {0}")]
    CollisionDetected(usize),
    #[error("relation {relation} is not supported for {a}/{b} in this catalog")]
    UnsupportedRelation { a: Solid, b: Solid, relation: Relation },
    #[error("step {0} failed: {1}")]
    StepFailed(usize, StepCause),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    FaceToFace,
    EdgeToEdge,
    VertexToVertex,
}

impl Relation {
    pub const ALL: [Relation; 3] = [Relation::FaceToFace, Relation::EdgeToEdge, Relation::VertexToVertex];

    pub fn short(self) -> &'static str {
        match self {
            Relation::FaceToFace => "face",
            Relation::EdgeToEdge => "edge",
            Relation::VertexToVertex => "vertex",
        }
    }

    pub fn parse(s: &str) -> Option<Relation> {
        Relation::ALL.into_iter().find(|r| r.short() == s)
    }

    /// Number of features of this kind on a cell.
    pub fn feature_count(self, cell: &ConvexCell) -> usize {
        match self {
            Relation::FaceToFace => cell.faces().len(),
            Relation::EdgeToEdge => cell.edges().len(),
            Relation::VertexToVertex => cell.vertices().len(),
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.short())
    }
}

/// Motions placing `incoming` against feature `host_feature` of `host`, using
/// feature `incoming_feature` of the incoming cell.
pub fn alignments(
    relation: Relation,
    host: &ConvexCell,
    host_feature: usize,
    incoming: &ConvexCell,
    incoming_feature: usize,
) -> Result<Vec<Isometry>, GeomError> {
    match relation {
        Relation::FaceToFace => face_gluings(host, host_feature, incoming, incoming_feature),
        Relation::EdgeToEdge => edge_gluings(host, host_feature, incoming, incoming_feature),
        Relation::VertexToVertex => vertex_gluings(host, host_feature, incoming, incoming_feature),
    }
}

/// "Add an `incoming` cell to a `host` cell along `relation`". Ids read like
/// `T-on-O/face`; a `#k` suffix pins the alignment variant.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GrammarRule {
    pub host: Solid,
    pub incoming: Solid,
    pub relation: Relation,
    pub variant: Option<usize>,
}

impl GrammarRule {
    pub fn new(incoming: Solid, host: Solid, relation: Relation) -> Self {
        GrammarRule { host, incoming, relation, variant: None }
    }

    pub fn with_variant(mut self, v: usize) -> Self {
        self.variant = Some(v);
        self
    }

    pub fn id(&self) -> String {
        let mut s = format!("{}-on-{}/{}", self.incoming.code(), self.host.code(), self.relation);
        if let Some(v) = self.variant {
            s.push_str(&format!("#{v}"));
        }
        s
    }
}

impl fmt::Display for GrammarRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.id())
    }
}

impl FromStr for GrammarRule {
    type Err = GrammarError;
    fn from_str(id: &str) -> Result<Self, GrammarError> {
        let bad = || GrammarError::UnknownRule(id.to_string());
        let (body, variant) = match id.split_once('#') {
            Some((b, v)) => (b, Some(v.parse::<usize>().map_err(|_| bad())?)),
            None => (id, None),
        };
        let (pair, rel) = body.split_once('/').ok_or_else(bad)?;
        let relation = Relation::parse(rel).ok_or_else(bad)?;
        let (inc, host) = pair.split_once("-on-").ok_or_else(bad)?;
        let one = |s: &str| {
            let mut c = s.chars();
            match (c.next(), c.next()) {
                (Some(ch), None) => Solid::from_code(ch),
                _ => None,
            }
        };
        Ok(GrammarRule { host: one(host).ok_or_else(bad)?, incoming: one(inc).ok_or_else(bad)?, relation, variant })
    }
}

/// A concrete site where a rule applies.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Match {
    pub rule: String,
    pub host: usize,
    pub feature: usize,
    pub variant: usize,
    pub isometry: Isometry,
    /// State digest of the assembly the match was computed for.
    pub state: String,
}

/// The set of rules a derivation may use.
#[derive(Clone, Debug)]
pub struct Grammar {
    rules: Vec<GrammarRule>,
}

impl Default for Grammar {
    fn default() -> Self {
        Self::standard()
    }
}

impl Grammar {
    /// Every ordered pair of solids under every relation, variants free.
    pub fn standard() -> Self {
        let mut rules = Vec::new();
        for host in Solid::ALL {
            for incoming in Solid::ALL {
                for relation in Relation::ALL {
                    rules.push(GrammarRule::new(incoming, host, relation));
                }
            }
        }
        Grammar { rules }
    }

    pub fn rules(&self) -> &[GrammarRule] {
        &self.rules
    }

    /// Looks a rule up by id. A pinned variant of a listed rule is accepted too.
    pub fn rule(&self, id: &str) -> Result<GrammarRule, GrammarError> {
        let r: GrammarRule = id.parse()?;
        let base = GrammarRule { variant: None, ..r.clone() };
        if self.rules.contains(&r) || self.rules.contains(&base) {
            Ok(r)
        } else {
            Err(GrammarError::UnknownRule(id.to_string()))
        }
    }

    pub fn find_matches(&self, assembly: &Assembly, rule_id: &str) -> Result<Vec<Match>, GrammarError> {
        Ok(find_matches(assembly, &self.rule(rule_id)?))
    }
}

fn collides(existing: &[ConvexCell], placed: &ConvexCell) -> Option<usize> {
    existing.iter().position(|c| interiors_overlap(c, placed))
}

/// Collision-free placements of the rule's incoming cell, ordered by host
/// cell, host feature and alignment variant.
pub fn find_matches(assembly: &Assembly, rule: &GrammarRule) -> Vec<Match> {
    let geometry = assembly.geometry();
    let incoming = rule.incoming.canonical_cell();
    let state = assembly.state_digest();
    let id = rule.id();
    let mut out = Vec::new();
    for (h, cell) in assembly.cells().iter().enumerate() {
        if cell.placement.species().solid() != rule.host {
            continue;
        }
        let host = &geometry[h];
        for f in 0..rule.relation.feature_count(host) {
            let Ok(isos) = alignments(rule.relation, host, f, &incoming, 0) else {
                continue;
            };
            for (v, iso) in isos.into_iter().enumerate() {
                if rule.variant.is_some_and(|k| k != v) {
                    continue;
                }
                if collides(&geometry, &incoming.transformed(&iso)).is_none() {
                    out.push(Match { rule: id.clone(), host: h, feature: f, variant: v, isometry: iso, state: state.clone() });
                }
            }
        }
    }
    out
}

/// Adds the match's cell. Fails if the assembly is not the one the match was
/// computed for, or if the placement now collides.
pub fn apply(assembly: &Assembly, m: &Match) -> Result<Assembly, GrammarError> {
    if m.state != assembly.state_digest() {
        return Err(GrammarError::StaleMatch);
    }
    let rule: GrammarRule = m.rule.parse()?;
    place(assembly, &rule, m.host, m.feature, m.variant, m.isometry.clone())
}

fn place(assembly: &Assembly, rule: &GrammarRule, host: usize, feature: usize, variant: usize, iso: Isometry) -> Result<Assembly, GrammarError> {
    let placement = Placement::Free { species: rule.incoming.canonical_species(), isometry: iso }.snapped();
    if let Some(i) = collides(&assembly.geometry(), &placement.cell()) {
        return Err(GrammarError::CollisionDetected(i));
    }
    let mut out = assembly.clone();
    out.push(Cell::new(placement));
    if let Some(p) = out.provenance_mut() {
        p.steps.push(DerivationStep { rule: rule.id(), host, feature, variant });
    }
    Ok(out)
}
