use std::fmt;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use citytower::formats::{emit_scene, read_scene, scene_from_assembly, validate_scene, SceneDocument};
use citytower::geom::Solid;
use citytower::grammar::{enumerate_unique, replay, Catalog, DerivationScript, Relation};
use citytower::pipeline::{build_tower, floor_plate, fundamental_unit, half_module, hexagonal_module, TowerParams};
use citytower::{Assembly, WorldTransform};

#[derive(Parser, Debug)]
#[command(name = "citytower", version, about = "Tetra/octa shape grammar and tower generator")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum UnitsArg {
    Lattice,
    Feet,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum RelationArg {
    Face,
    Edge,
    Vertex,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CatalogArg {
    Opposed,
    Honeycomb,
}

#[derive(Args, Debug)]
pub struct Output {
    /// Scene file to write; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub units: Option<UnitsArg>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Count distinct two-cell designs.
    Enumerate {
        /// Two solids, e.g. `tetra,octa`.
        #[arg(long)]
        pair: String,
        #[arg(long, value_enum, default_value = "all")]
        relation: RelationArg,
        #[arg(long, value_enum, default_value = "opposed")]
        catalog: CatalogArg,
    },
    /// Replay a derivation script.
    Derive {
        #[arg(long)]
        script: PathBuf,
        #[command(flatten)]
        output: Output,
    },
    /// Octa with two tetras: one period cell of a layer.
    Unit(Output),
    HalfModule(Output),
    HexModule(Output),
    /// Hexagonal patch of one layer.
    Plate {
        #[arg(long)]
        radius: u32,
        #[command(flatten)]
        output: Output,
    },
    Tower {
        #[arg(long)]
        config: Option<PathBuf>,
        #[command(flatten)]
        output: Output,
    },
    /// Write a scene's frame or cells as OBJ.
    Export {
        #[arg(long)]
        scene: PathBuf,
        #[arg(long)]
        obj: PathBuf,
        #[arg(long, conflicts_with = "cells")]
        frame: bool,
        #[arg(long)]
        cells: bool,
    },
    /// Check a scene's frame and cells; exit status 1 on any failure.
    Validate {
        #[arg(long)]
        scene: PathBuf,
    },
    /// Serve derivation sessions over HTTP.
    Serve {
        #[arg(long, default_value_t = 8080)]
        port: u16,
        /// Write each session's script here after every change.
        #[arg(long)]
        snapshots: Option<PathBuf>,
    },
}

/// Failure of a well-formed command.
#[derive(Debug)]
pub struct CommandError(pub String);

impl fmt::Display for CommandError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for CommandError {}

fn fail(e: impl fmt::Display) -> CommandError {
    CommandError(e.to_string())
}

fn read(path: &Path) -> Result<String, CommandError> {
    std::fs::read_to_string(path).map_err(|e| CommandError(format!("{}: {e}", path.display())))
}

fn write_text(path: Option<&Path>, text: &str) -> Result<(), CommandError> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| CommandError(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn transform(units: Option<UnitsArg>, feet: WorldTransform, default: UnitsArg) -> Option<WorldTransform> {
    (units.unwrap_or(default) == UnitsArg::Feet).then_some(feet)
}

fn emit(a: &Assembly, output: &Output, feet: WorldTransform, default: UnitsArg) -> Result<SceneDocument, CommandError> {
    let doc = scene_from_assembly(a, transform(output.units, feet, default).as_ref());
    write_text(output.out.as_deref(), &emit_scene(&doc))?;
    Ok(doc)
}

fn lattice_scene(a: &Assembly, output: &Output) -> Result<(), CommandError> {
    emit(a, output, WorldTransform::feet(), UnitsArg::Lattice).map(|_| ())
}

pub fn enumerate_report(pair: &str, relation: RelationArg, catalog: CatalogArg) -> Result<String, CommandError> {
    let (a, b) = pair.split_once(',').ok_or_else(|| CommandError(format!("--pair needs two solids, got `{pair}`")))?;
    let solid = |s: &str| Solid::parse(s.trim()).ok_or_else(|| CommandError(format!("unknown solid `{s}`")));
    let (a, b) = (solid(a)?, solid(b)?);
    let relations = match relation {
        RelationArg::Face => vec![Relation::FaceToFace],
        RelationArg::Edge => vec![Relation::EdgeToEdge],
        RelationArg::Vertex => vec![Relation::VertexToVertex],
        RelationArg::All => Relation::ALL.to_vec(),
    };
    let catalog = match catalog {
        CatalogArg::Opposed => Catalog::Opposed,
        CatalogArg::Honeycomb => Catalog::Honeycomb,
    };
    let mut out = String::new();
    let mut total = 0;
    for r in relations {
        let designs = enumerate_unique(a, b, r, catalog).map_err(fail)?;
        out.push_str(&format!("{}: {}\n", r.short(), designs.len()));
        for d in &designs {
            out.push_str(&format!("  {}\n", d.fingerprint().map_err(fail)?.short()));
        }
        total += designs.len();
    }
    out.push_str(&format!("unique designs: {total}\n"));
    Ok(out)
}

pub fn run(command: Command) -> Result<(), CommandError> {
    match command {
        Command::Enumerate { pair, relation, catalog } => {
            print!("{}", enumerate_report(&pair, relation, catalog)?);
            Ok(())
        }
        Command::Derive { script, output } => {
            let script = DerivationScript::from_json(&read(&script)?).map_err(|e| CommandError(format!("bad script: {e}")))?;
            lattice_scene(&replay(&script).map_err(fail)?, &output)
        }
        Command::Unit(output) => lattice_scene(&Assembly::from(fundamental_unit()), &output),
        Command::HalfModule(output) => lattice_scene(&half_module(), &output),
        Command::HexModule(output) => lattice_scene(&hexagonal_module(), &output),
        Command::Plate { radius, output } => lattice_scene(&Assembly::from(floor_plate(radius).map_err(fail)?), &output),
        Command::Tower { config, output } => {
            let params = match config {
                Some(p) => TowerParams::from_json(&read(&p)?).map_err(|e| CommandError(format!("bad tower config: {e}")))?,
                None => TowerParams::default(),
            };
            let tower = build_tower(&params).map_err(fail)?;
            emit(&Assembly::from(&tower.assembly), &output, tower.transform.clone(), UnitsArg::Feet).map(|_| ())
        }
        Command::Export { scene, obj, frame: _, cells } => {
            let doc = read_scene(&scene).map_err(fail)?;
            let text = if cells { doc.to_obj_cells().map_err(fail)? } else { doc.to_obj_frame() };
            write_text(Some(&obj), &text)
        }
        Command::Validate { scene } => {
            let doc = read_scene(&scene).map_err(fail)?;
            let report = validate_scene(&doc).map_err(fail)?;
            print!("{report}");
            if report.passed() {
                Ok(())
            } else {
                Err(CommandError("validation failed".into()))
            }
        }
        Command::Serve { port, snapshots } => crate::server::serve(port, snapshots).map_err(fail),
    }
}
