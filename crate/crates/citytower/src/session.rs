//! In-memory derivation sessions stepped one rule application at a time.

use std::collections::HashMap;
use std::path::PathBuf;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, Mutex, RwLock};

use serde::{Deserialize, Serialize};

use crate::assembly::{Assembly, CellTag};
use crate::formats::{scene_from_assembly, SceneDocument};
use crate::geom::{Isometry, Species};
use crate::grammar::{self, DerivationScript, Grammar, GrammarError, Initial};
use crate::lattice::WorldTransform;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SessionError {
    #[error("no session `{0}`")]
    UnknownSession(String),
    #[error("unknown initial shape `{0}`")]
    BadInitial(String),
    #[error("unknown rule `{0}`")]
    UnknownRule(String),
    #[error("session changed since the match list was computed")]
    StaleMatch,
    #[error("match {index} out of range, {count} matches")]
    MatchOutOfRange { index: usize, count: usize },
    #[error("nothing to undo")]
    NothingToUndo,
    #[error("snapshot failed: {0}")]
    Snapshot(String),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StateCell {
    pub species: Species,
    pub vertices: Vec<[f64; 3]>,
    pub tags: Vec<CellTag>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SessionState {
    pub id: String,
    pub cell_count: usize,
    pub cells: Vec<StateCell>,
    /// Digest of the exact cell list; match lists quote it back.
    pub fingerprint: String,
    pub script: DerivationScript,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatchView {
    pub index: usize,
    pub host: usize,
    pub feature: usize,
    pub variant: usize,
    /// Moves the canonical incoming cell into place.
    pub preview: Isometry,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatchList {
    pub rule: String,
    pub state: String,
    pub matches: Vec<MatchView>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ApplyRequest {
    pub rule: String,
    pub index: usize,
    pub state: String,
}

#[derive(Debug)]
struct Session {
    id: String,
    assembly: Assembly,
    history: Vec<Assembly>,
}

impl Session {
    fn state(&self) -> SessionState {
        let cells: Vec<StateCell> = self
            .assembly
            .cells()
            .iter()
            .map(|c| StateCell {
                species: c.placement.species(),
                vertices: c.placement.cell().vertices().iter().map(|p| [p.x, p.y, p.z]).collect(),
                tags: c.tags.iter().copied().collect(),
            })
            .collect();
        SessionState {
            id: self.id.clone(),
            cell_count: cells.len(),
            cells,
            fingerprint: self.assembly.state_digest(),
            script: self.assembly.provenance().cloned().expect("sessions record their script"),
        }
    }
}

/// Sessions by id. Each session has its own lock, so work on different
/// sessions proceeds in parallel while steps on one session are serialised.
#[derive(Debug, Default)]
pub struct SessionStore {
    sessions: RwLock<HashMap<String, Arc<Mutex<Session>>>>,
    next: AtomicU64,
    snapshots: Option<PathBuf>,
    grammar: Grammar,
}

impl SessionStore {
    pub fn new() -> Self {
        Self::default()
    }

    /// Also writes each session's script to `dir/<id>.json` after every change.
    pub fn with_snapshots(dir: PathBuf) -> Self {
        SessionStore { snapshots: Some(dir), ..Self::default() }
    }

    fn get(&self, id: &str) -> Result<Arc<Mutex<Session>>, SessionError> {
        self.sessions.read().unwrap().get(id).cloned().ok_or_else(|| SessionError::UnknownSession(id.to_string()))
    }

    fn snapshot(&self, s: &Session) -> Result<(), SessionError> {
        if let Some(dir) = &self.snapshots {
            let script = s.assembly.provenance().expect("sessions record their script");
            std::fs::create_dir_all(dir)
                .and_then(|_| std::fs::write(dir.join(format!("{}.json", s.id)), script.to_json()))
                .map_err(|e| SessionError::Snapshot(e.to_string()))?;
        }
        Ok(())
    }

    pub fn create(&self, initial: &str) -> Result<SessionState, SessionError> {
        let initial = Initial::parse(initial).ok_or_else(|| SessionError::BadInitial(initial.to_string()))?;
        let id = format!("s{}", self.next.fetch_add(1, Ordering::Relaxed) + 1);
        let session = Session { id: id.clone(), assembly: initial.build(), history: Vec::new() };
        self.snapshot(&session)?;
        let state = session.state();
        self.sessions.write().unwrap().insert(id, Arc::new(Mutex::new(session)));
        Ok(state)
    }

    pub fn state(&self, id: &str) -> Result<SessionState, SessionError> {
        Ok(self.get(id)?.lock().unwrap().state())
    }

    pub fn matches(&self, id: &str, rule: &str) -> Result<MatchList, SessionError> {
        let s = self.get(id)?;
        let s = s.lock().unwrap();
        let ms = self.grammar.find_matches(&s.assembly, rule).map_err(|_| SessionError::UnknownRule(rule.to_string()))?;
        Ok(MatchList {
            rule: rule.to_string(),
            state: s.assembly.state_digest(),
            matches: ms
                .into_iter()
                .enumerate()
                .map(|(index, m)| MatchView { index, host: m.host, feature: m.feature, variant: m.variant, preview: m.isometry })
                .collect(),
        })
    }

    pub fn apply(&self, id: &str, req: &ApplyRequest) -> Result<SessionState, SessionError> {
        let s = self.get(id)?;
        let mut s = s.lock().unwrap();
        let rule = self.grammar.rule(&req.rule).map_err(|_| SessionError::UnknownRule(req.rule.clone()))?;
        if req.state != s.assembly.state_digest() {
            return Err(SessionError::StaleMatch);
        }
        let ms = grammar::find_matches(&s.assembly, &rule);
        let m = ms.get(req.index).ok_or(SessionError::MatchOutOfRange { index: req.index, count: ms.len() })?;
        let next = grammar::apply(&s.assembly, m).map_err(|e| match e {
            GrammarError::StaleMatch => SessionError::StaleMatch,
            other => SessionError::UnknownRule(other.to_string()),
        })?;
        let prev = std::mem::replace(&mut s.assembly, next);
        s.history.push(prev);
        self.snapshot(&s)?;
        Ok(s.state())
    }

    pub fn undo(&self, id: &str) -> Result<SessionState, SessionError> {
        let s = self.get(id)?;
        let mut s = s.lock().unwrap();
        let prev = s.history.pop().ok_or(SessionError::NothingToUndo)?;
        s.assembly = prev;
        self.snapshot(&s)?;
        Ok(s.state())
    }

    pub fn scene(&self, id: &str, transform: Option<&WorldTransform>) -> Result<SceneDocument, SessionError> {
        let s = self.get(id)?;
        let s = s.lock().unwrap();
        Ok(scene_from_assembly(&s.assembly, transform))
    }

    pub fn script(&self, id: &str) -> Result<DerivationScript, SessionError> {
        Ok(self.state(id)?.script)
    }
}
