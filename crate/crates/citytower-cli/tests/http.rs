use std::sync::Arc;

use axum::body::Body;
use axum::http::{Request, StatusCode};
use http_body_util::BodyExt;
use serde_json::{json, Value};
use tower::ServiceExt;

use citytower::formats::{emit_scene, parse_scene};
use citytower::grammar::{find_matches, replay, GrammarRule, Initial};
use citytower::session::{MatchList, SessionState, SessionStore};
use citytower_cli::server::{router, Created};

struct Client {
    app: axum::Router,
}

impl Client {
    fn new() -> Self {
        Client { app: router(Arc::new(SessionStore::new())) }
    }

    async fn send(&self, method: &str, uri: &str, body: Option<Value>) -> (StatusCode, Vec<u8>) {
        let req = Request::builder().method(method).uri(uri);
        let req = match body {
            Some(b) => req.header("content-type", "application/json").body(Body::from(b.to_string())),
            None => req.body(Body::empty()),
        }
        .unwrap();
        let resp = self.app.clone().oneshot(req).await.unwrap();
        let status = resp.status();
        let bytes = resp.into_body().collect().await.unwrap().to_bytes().to_vec();
        (status, bytes)
    }

    async fn json<T: serde::de::DeserializeOwned>(&self, method: &str, uri: &str, body: Option<Value>) -> T {
        let (status, bytes) = self.send(method, uri, body).await;
        assert_eq!(status, StatusCode::OK, "{}", String::from_utf8_lossy(&bytes));
        serde_json::from_slice(&bytes).unwrap()
    }

    async fn create(&self, initial: &str) -> Created {
        self.json("POST", "/sessions", Some(json!({ "initial": initial }))).await
    }

    async fn matches(&self, id: &str, rule: &str) -> MatchList {
        self.json("GET", &format!("/sessions/{id}/matches?rule={rule}"), None).await
    }

    async fn apply(&self, id: &str, m: &MatchList, index: usize) -> SessionState {
        self.json("POST", &format!("/sessions/{id}/apply"), Some(json!({ "rule": m.rule, "index": index, "state": m.state }))).await
    }
}

#[tokio::test]
async fn create_sessions() {
    let c = Client::new();
    let octa = c.create("octa").await;
    assert_eq!(octa.state.cell_count, 1);
    assert_eq!(octa.id, octa.state.id);
    let fu = c.create("fundamental_unit").await;
    assert_eq!(fu.state.cell_count, Initial::FundamentalUnit.build().len());
    assert_eq!(fu.state.cell_count, 3);
    let (status, _) = c.send("POST", "/sessions", Some(json!({ "initial": "pyramid" }))).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
}

#[tokio::test]
async fn matches_agree_with_the_grammar() {
    let c = Client::new();
    let s = c.create("octa").await;
    let list = c.matches(&s.id, "T-on-O/face").await;
    assert_eq!(list.matches.len(), 24);
    let oracle = find_matches(&Initial::Octa.build(), &"T-on-O/face".parse::<GrammarRule>().unwrap());
    assert_eq!(oracle.len(), list.matches.len());
    for (m, o) in list.matches.iter().zip(&oracle) {
        assert_eq!((m.host, m.feature, m.variant), (o.host, o.feature, o.variant));
        assert_eq!(m.preview, o.isometry);
    }
    let uri = format!("/sessions/{}/matches?rule=T-on-O/face", s.id);
    assert_eq!(c.send("GET", &uri, None).await, c.send("GET", &uri, None).await);
}

#[tokio::test]
async fn error_statuses() {
    let c = Client::new();
    let s = c.create("octa").await;
    let (status, _) = c.send("GET", &format!("/sessions/{}/matches?rule=Q-on-O/face", s.id), None).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    let (status, _) = c.send("GET", &format!("/sessions/{}/matches", s.id), None).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    let (status, _) = c.send("GET", "/sessions/nope/matches?rule=T-on-O/face", None).await;
    assert_eq!(status, StatusCode::NOT_FOUND);
    let (status, _) = c.send("GET", "/sessions/nope/scene", None).await;
    assert_eq!(status, StatusCode::NOT_FOUND);
    let (status, body) = c.send("POST", &format!("/sessions/{}/undo", s.id), None).await;
    assert_eq!(status, StatusCode::CONFLICT);
    let v: Value = serde_json::from_slice(&body).unwrap();
    assert_eq!(v["error"], "nothing_to_undo");
    let m = c.matches(&s.id, "T-on-O/face").await;
    let (status, _) =
        c.send("POST", &format!("/sessions/{}/apply", s.id), Some(json!({ "rule": m.rule, "index": 24, "state": m.state }))).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
}

#[tokio::test]
async fn apply_undo_and_stale_matches() {
    let c = Client::new();
    let s = c.create("octa").await;
    let m = c.matches(&s.id, "T-on-O/face").await;
    let after = c.apply(&s.id, &m, 5).await;
    assert_eq!(after.cell_count, 2);
    assert_ne!(after.fingerprint, s.state.fingerprint);

    let (status, body) =
        c.send("POST", &format!("/sessions/{}/apply", s.id), Some(json!({ "rule": m.rule, "index": 0, "state": m.state }))).await;
    assert_eq!(status, StatusCode::CONFLICT);
    let v: Value = serde_json::from_slice(&body).unwrap();
    assert_eq!(v["error"], "stale_match");

    let undone: SessionState = c.json("POST", &format!("/sessions/{}/undo", s.id), None).await;
    assert_eq!(undone.fingerprint, s.state.fingerprint);
    assert_eq!(undone.cell_count, 1);
}

#[tokio::test]
async fn five_applies_replay_offline() {
    let c = Client::new();
    let s = c.create("octa").await;
    let rules = ["T-on-O/face", "T-on-O/face", "O-on-T/face", "T-on-O/vertex", "O-on-O/edge"];
    let mut last = s.state;
    for (k, rule) in rules.iter().enumerate() {
        let m = c.matches(&s.id, rule).await;
        assert!(!m.matches.is_empty(), "{rule}");
        last = c.apply(&s.id, &m, (3 * k) % m.matches.len()).await;
    }
    assert_eq!(last.cell_count, 6);
    let script: citytower::DerivationScript = c.json("GET", &format!("/sessions/{}/script", s.id), None).await;
    assert_eq!(script, last.script);
    assert_eq!(replay(&script).unwrap().state_digest(), last.fingerprint);
}

#[tokio::test]
async fn scene_and_obj() {
    let c = Client::new();
    let s = c.create("fundamental_unit").await;
    let (status, body) = c.send("GET", &format!("/sessions/{}/scene", s.id), None).await;
    assert_eq!(status, StatusCode::OK);
    let text = String::from_utf8(body).unwrap();
    let doc = parse_scene(&text).unwrap();
    assert_eq!(doc.cells.len(), s.state.cell_count);
    assert_eq!(parse_scene(&emit_scene(&doc)).unwrap(), doc);

    let (_, obj) = c.send("GET", &format!("/sessions/{}/obj", s.id), None).await;
    let obj = String::from_utf8(obj).unwrap();
    assert_eq!(obj.lines().filter(|l| l.starts_with("v ")).count(), doc.frame.nodes.len());
    assert_eq!(obj.lines().filter(|l| l.starts_with("l ")).count(), doc.frame.members.len());
    let (_, obj) = c.send("GET", &format!("/sessions/{}/obj?mode=cells", s.id), None).await;
    let faces = String::from_utf8(obj).unwrap().lines().filter(|l| l.starts_with("f ")).count();
    assert_eq!(faces, 8 + 4 + 4);

    let feet: Value = c.json("GET", &format!("/sessions/{}/scene?units=feet", s.id), None).await;
    assert_eq!(feet["units"], "feet");
}

#[tokio::test]
async fn cors_preflight_is_answered() {
    let c = Client::new();
    let req = Request::builder()
        .method("OPTIONS")
        .uri("/sessions")
        .header("origin", "http://localhost:5173")
        .header("access-control-request-method", "POST")
        .body(Body::empty())
        .unwrap();
    let resp = c.app.clone().oneshot(req).await.unwrap();
    assert!(resp.headers().contains_key("access-control-allow-origin"));
}

#[test]
fn sessions_do_not_interfere_across_threads() {
    let store = Arc::new(SessionStore::new());
    let handles: Vec<_> = (0..4)
        .map(|_| {
            let store = store.clone();
            std::thread::spawn(move || {
                let s = store.create("octa").unwrap();
                for _ in 0..3 {
                    let m = store.matches(&s.id, "T-on-O/face").unwrap();
                    let req = citytower::session::ApplyRequest { rule: m.rule, index: 0, state: m.state };
                    store.apply(&s.id, &req).unwrap();
                }
                store.state(&s.id).unwrap()
            })
        })
        .collect();
    let states: Vec<SessionState> = handles.into_iter().map(|h| h.join().unwrap()).collect();
    assert!(states.iter().all(|s| s.cell_count == 4 && s.fingerprint == states[0].fingerprint));
}

#[test]
fn concurrent_applies_to_one_session_serialise() {
    let store = Arc::new(SessionStore::new());
    let s = store.create("octa").unwrap();
    let m = store.matches(&s.id, "T-on-O/face").unwrap();
    let handles: Vec<_> = (0..8)
        .map(|i| {
            let (store, id, m) = (store.clone(), s.id.clone(), m.clone());
            std::thread::spawn(move || {
                store.apply(&id, &citytower::session::ApplyRequest { rule: m.rule, index: i, state: m.state })
            })
        })
        .collect();
    let ok = handles.into_iter().map(|h| h.join().unwrap()).filter(|r| r.is_ok()).count();
    assert_eq!(ok, 1);
    assert_eq!(store.state(&s.id).unwrap().cell_count, 2);
}
