//! Scene JSON and OBJ files.

mod obj;
mod scene;

pub use obj::{format_sig9, obj_faces, obj_lines, write_obj};
pub use scene::{scene_from_assembly, validate_scene, SceneCell, SceneDocument, SceneFrame, SceneTransform, Units};

use serde_path_to_error::Segment;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum FormatError {
    #[error("schema violation at {pointer}: {message}")]
    SchemaViolation { pointer: String, message: String },
    #[error("i/o failure: {0}")]
    IoFailure(String),
}

impl From<std::io::Error> for FormatError {
    fn from(e: std::io::Error) -> Self {
        FormatError::IoFailure(e.to_string())
    }
}

fn field_named(message: &str, prefix: &str) -> Option<String> {
    let rest = message.strip_prefix(prefix)?.strip_prefix('`')?;
    Some(rest[..rest.find('`')?].to_string())
}

/// Turns a serde error into a JSON pointer plus message. Missing and unknown
/// fields point at the field itself.
fn schema_error(e: serde_path_to_error::Error<serde_json::Error>) -> FormatError {
    let mut pointer = String::new();
    for seg in e.path().iter() {
        match seg {
            Segment::Seq { index } => pointer.push_str(&format!("/{index}")),
            Segment::Map { key } => pointer.push_str(&format!("/{}", key.replace('~', "~0").replace('/', "~1"))),
            Segment::Enum { variant } => pointer.push_str(&format!("/{variant}")),
            Segment::Unknown => pointer.push_str("/?"),
        }
    }
    let message = e.inner().to_string();
    let head = message.split(" at line ").next().unwrap_or(&message).to_string();
    if let Some(f) = field_named(&head, "missing field ").or_else(|| field_named(&head, "unknown field ")) {
        if !pointer.ends_with(&format!("/{f}")) {
            pointer.push('/');
            pointer.push_str(&f);
        }
    }
    if pointer.is_empty() {
        pointer.push('/');
    }
    FormatError::SchemaViolation { pointer, message: head }
}

pub fn parse_scene(text: &str) -> Result<SceneDocument, FormatError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let doc = serde_path_to_error::deserialize(de).map_err(schema_error)?;
    Ok(doc)
}

/// Pretty JSON with a trailing newline.
pub fn emit_scene(doc: &SceneDocument) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("scenes serialise");
    s.push('\n');
    s
}

pub fn read_scene(path: &std::path::Path) -> Result<SceneDocument, FormatError> {
    parse_scene(&std::fs::read_to_string(path)?)
}
