//! HTTP/JSON front end for [`SessionStore`].

use std::path::PathBuf;
use std::sync::Arc;

use axum::extract::{Path, Query, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::{Deserialize, Serialize};
use tower_http::cors::CorsLayer;

use citytower::formats::Units;
use citytower::session::{ApplyRequest, SessionError, SessionState, SessionStore};
use citytower::WorldTransform;

pub struct ApiError(SessionError);

impl From<SessionError> for ApiError {
    fn from(e: SessionError) -> Self {
        ApiError(e)
    }
}

fn kind(e: &SessionError) -> (&'static str, StatusCode) {
    match e {
        SessionError::UnknownSession(_) => ("unknown_session", StatusCode::NOT_FOUND),
        SessionError::BadInitial(_) => ("bad_initial", StatusCode::BAD_REQUEST),
        SessionError::UnknownRule(_) => ("unknown_rule", StatusCode::BAD_REQUEST),
        SessionError::MatchOutOfRange { .. } => ("match_out_of_range", StatusCode::BAD_REQUEST),
        SessionError::StaleMatch => ("stale_match", StatusCode::CONFLICT),
        SessionError::NothingToUndo => ("nothing_to_undo", StatusCode::CONFLICT),
        SessionError::Snapshot(_) => ("snapshot_failed", StatusCode::INTERNAL_SERVER_ERROR),
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let (error, status) = kind(&self.0);
        (status, Json(serde_json::json!({ "error": error, "message": self.0.to_string() }))).into_response()
    }
}

type Store = Arc<SessionStore>;
type ApiResult<T> = Result<Json<T>, ApiError>;

#[derive(Deserialize)]
struct CreateRequest {
    initial: String,
}

#[derive(Serialize, Deserialize, Debug)]
pub struct Created {
    pub id: String,
    pub state: SessionState,
}

async fn create(State(store): State<Store>, Json(req): Json<CreateRequest>) -> ApiResult<Created> {
    let state = store.create(&req.initial)?;
    Ok(Json(Created { id: state.id.clone(), state }))
}

async fn state(State(store): State<Store>, Path(id): Path<String>) -> ApiResult<SessionState> {
    Ok(Json(store.state(&id)?))
}

#[derive(Deserialize)]
struct RuleQuery {
    rule: Option<String>,
}

async fn matches(State(store): State<Store>, Path(id): Path<String>, Query(q): Query<RuleQuery>) -> Response {
    let Some(rule) = q.rule else {
        // Unknown session still wins over a missing rule.
        if let Err(e) = store.state(&id) {
            return ApiError(e).into_response();
        }
        return ApiError(SessionError::UnknownRule(String::new())).into_response();
    };
    match store.matches(&id, &rule) {
        Ok(m) => Json(m).into_response(),
        Err(e) => ApiError(e).into_response(),
    }
}

async fn apply(State(store): State<Store>, Path(id): Path<String>, Json(req): Json<ApplyRequest>) -> ApiResult<SessionState> {
    Ok(Json(store.apply(&id, &req)?))
}

async fn undo(State(store): State<Store>, Path(id): Path<String>) -> ApiResult<SessionState> {
    Ok(Json(store.undo(&id)?))
}

#[derive(Deserialize)]
struct SceneQuery {
    units: Option<Units>,
    mode: Option<String>,
}

fn scene_transform(units: Option<Units>) -> Option<WorldTransform> {
    (units == Some(Units::Feet)).then(WorldTransform::feet)
}

async fn scene(State(store): State<Store>, Path(id): Path<String>, Query(q): Query<SceneQuery>) -> Result<Response, ApiError> {
    Ok(Json(store.scene(&id, scene_transform(q.units).as_ref())?).into_response())
}

/// Frame members as `l` lines, or cell faces with `?mode=cells`.
async fn obj(State(store): State<Store>, Path(id): Path<String>, Query(q): Query<SceneQuery>) -> Result<Response, ApiError> {
    let doc = store.scene(&id, scene_transform(q.units).as_ref())?;
    let text = if q.mode.as_deref() == Some("cells") { doc.to_obj_cells().expect("scenes from sessions are well formed") } else { doc.to_obj_frame() };
    Ok(([("content-type", "text/plain; charset=utf-8")], text).into_response())
}

async fn script(State(store): State<Store>, Path(id): Path<String>) -> Result<Response, ApiError> {
    Ok(Json(store.script(&id)?).into_response())
}

pub fn router(store: Arc<SessionStore>) -> Router {
    Router::new()
        .route("/sessions", post(create))
        .route("/sessions/:id", get(state))
        .route("/sessions/:id/matches", get(matches))
        .route("/sessions/:id/apply", post(apply))
        .route("/sessions/:id/undo", post(undo))
        .route("/sessions/:id/scene", get(scene))
        .route("/sessions/:id/obj", get(obj))
        .route("/sessions/:id/script", get(script))
        .layer(CorsLayer::permissive())
        .with_state(store)
}

pub fn serve(port: u16, snapshots: Option<PathBuf>) -> std::io::Result<()> {
    let store = Arc::new(match snapshots {
        Some(dir) => SessionStore::with_snapshots(dir),
        None => SessionStore::new(),
    });
    let rt = tokio::runtime::Runtime::new()?;
    rt.block_on(async move {
        let listener = tokio::net::TcpListener::bind(("127.0.0.1", port)).await?;
        eprintln!("listening on http://{}", listener.local_addr()?);
        axum::serve(listener, router(store))
            .with_graceful_shutdown(async {
                let _ = tokio::signal::ctrl_c().await;
            })
            .await
    })
}
