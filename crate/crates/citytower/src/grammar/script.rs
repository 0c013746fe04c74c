use std::fmt;

use serde::{Deserialize, Serialize};

use super::{alignments, place, GrammarError, GrammarRule};
use crate::assembly::{Assembly, Placement};
use crate::geom::{GeomError, Isometry, LatticePoint, Species};
use crate::lattice::LatticePlacement;
use crate::pipeline;

/// Starting shape of a derivation: a single solid or a pipeline product.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Initial {
    Tetra,
    Octa,
    HalfOcta,
    FundamentalUnit,
    HalfModule,
    HexModule,
}

impl Initial {
    pub const ALL: [Initial; 6] =
        [Initial::Tetra, Initial::Octa, Initial::HalfOcta, Initial::FundamentalUnit, Initial::HalfModule, Initial::HexModule];

    pub fn name(self) -> &'static str {
        match self {
            Initial::Tetra => "tetra",
            Initial::Octa => "octa",
            Initial::HalfOcta => "half_octa",
            Initial::FundamentalUnit => "fundamental_unit",
            Initial::HalfModule => "half_module",
            Initial::HexModule => "hex_module",
        }
    }

    pub fn parse(s: &str) -> Option<Initial> {
        Initial::ALL.into_iter().find(|i| i.name() == s)
    }

    /// The starting assembly, with an empty derivation attached.
    pub fn build(self) -> Assembly {
        let mut a = match self {
            Initial::Tetra => Assembly::single(Placement::Lattice(LatticePlacement::up(LatticePoint::ORIGIN))),
            Initial::Octa => Assembly::single(Placement::Lattice(LatticePlacement::octa(LatticePoint::ORIGIN))),
            Initial::HalfOcta => Assembly::single(Placement::Free { species: Species::HalfOcta, isometry: Isometry::identity() }),
            Initial::FundamentalUnit => Assembly::from(pipeline::fundamental_unit()),
            Initial::HalfModule => pipeline::half_module(),
            Initial::HexModule => pipeline::hexagonal_module(),
        };
        a.set_provenance(Some(DerivationScript::new(self)));
        a
    }
}

impl fmt::Display for Initial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DerivationStep {
    pub rule: String,
    pub host: usize,
    pub feature: usize,
    pub variant: usize,
}

/// Replayable record of a derivation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DerivationScript {
    pub initial: Initial,
    #[serde(default)]
    pub steps: Vec<DerivationStep>,
}

impl DerivationScript {
    pub fn new(initial: Initial) -> Self {
        DerivationScript { initial, steps: Vec::new() }
    }

    pub fn step(mut self, rule: &str, host: usize, feature: usize, variant: usize) -> Self {
        self.steps.push(DerivationStep { rule: rule.to_string(), host, feature, variant });
        self
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("scripts serialise");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}

/// Why a replay step failed.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum StepCause {
    #[error("unknown rule `{0}`")]
    UnknownRule(String),
    #[error("no cell {0}")]
    UnknownHost(usize),
    #[error("host cell is a {found}, rule needs a {expected}")]
    WrongHost { expected: crate::geom::Solid, found: crate::geom::Solid },
    #[error("no feature {0} on the host")]
    UnknownFeature(usize),
    #[error("no alignment variant {0}")]
    UnknownVariant(usize),
    #[error("feature cannot be joined: {0}")]
    Geometry(GeomError),
    #[error("placement collides with cell {0}")]
    Collision(usize),
}

/// Rebuilds an assembly from its script; errors name the failing step.
pub fn replay(script: &DerivationScript) -> Result<Assembly, GrammarError> {
    let mut a = script.initial.build();
    for (i, step) in script.steps.iter().enumerate() {
        let fail = |c| GrammarError::StepFailed(i, c);
        let rule: GrammarRule = step.rule.parse().map_err(|_| fail(StepCause::UnknownRule(step.rule.clone())))?;
        let host = a.cells().get(step.host).ok_or_else(|| fail(StepCause::UnknownHost(step.host)))?;
        let found = host.placement.species().solid();
        if found != rule.host {
            return Err(fail(StepCause::WrongHost { expected: rule.host, found }));
        }
        let cell = host.placement.cell();
        if step.feature >= rule.relation.feature_count(&cell) {
            return Err(fail(StepCause::UnknownFeature(step.feature)));
        }
        if rule.variant.is_some_and(|v| v != step.variant) {
            return Err(fail(StepCause::UnknownVariant(step.variant)));
        }
        let isos = alignments(rule.relation, &cell, step.feature, &rule.incoming.canonical_cell(), 0)
            .map_err(|e| fail(StepCause::Geometry(e)))?;
        let iso = isos.get(step.variant).cloned().ok_or_else(|| fail(StepCause::UnknownVariant(step.variant)))?;
        a = place(&a, &rule, step.host, step.feature, step.variant, iso).map_err(|e| match e {
            GrammarError::CollisionDetected(c) => fail(StepCause::Collision(c)),
            other => other,
        })?;
    }
    Ok(a)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_script_is_the_initial_shape() {
        let a = replay(&DerivationScript::new(Initial::Octa)).unwrap();
        assert_eq!(a.len(), 1);
        assert_eq!(a.cells()[0].placement.species(), Species::Octa);
    }

    #[test]
    fn bad_feature_names_step_zero() {
        let s = DerivationScript::new(Initial::Octa).step("T-on-O/face", 0, 8, 0);
        assert_eq!(replay(&s).unwrap_err(), GrammarError::StepFailed(0, StepCause::UnknownFeature(8)));
    }

    #[test]
    fn errors_carry_the_step_index() {
        let s = DerivationScript::new(Initial::Octa).step("T-on-O/face", 0, 0, 0).step("T-on-O/face", 0, 0, 1);
        assert!(matches!(replay(&s).unwrap_err(), GrammarError::StepFailed(1, StepCause::Collision(1))));
        let s = DerivationScript::new(Initial::Octa).step("T-on-O/face", 3, 0, 0);
        assert_eq!(replay(&s).unwrap_err(), GrammarError::StepFailed(0, StepCause::UnknownHost(3)));
        let s = DerivationScript::new(Initial::Octa).step("T-on-T/face", 0, 0, 0);
        assert!(matches!(replay(&s).unwrap_err(), GrammarError::StepFailed(0, StepCause::WrongHost { .. })));
        let s = DerivationScript::new(Initial::Octa).step("T-on-O/face", 0, 0, 3);
        assert_eq!(replay(&s).unwrap_err(), GrammarError::StepFailed(0, StepCause::UnknownVariant(3)));
    }

    #[test]
    fn script_json_shape() {
        let s = DerivationScript::new(Initial::Octa).step("T-on-O/face", 0, 1, 2);
        let v: serde_json::Value = serde_json::from_str(&s.to_json()).unwrap();
        assert_eq!(v["initial"], "octa");
        assert_eq!(v["steps"][0]["rule"], "T-on-O/face");
        assert_eq!(DerivationScript::from_json(&s.to_json()).unwrap(), s);
        assert!(DerivationScript::from_json(r#"{"initial":"octa","steps":[],"x":1}"#).is_err());
    }

    #[test]
    fn replay_records_its_steps() {
        let s = DerivationScript::new(Initial::Octa).step("T-on-O/face", 0, 0, 0).step("T-on-O/face", 0, 7, 1);
        let a = replay(&s).unwrap();
        assert_eq!(a.provenance(), Some(&s));
    }
}
