//! Session service. Each session holds a code, the accumulated operator and
//! its move history. Writes to one session are serialized behind a write
//! lock; a write carrying `expected_version` fails with 409 if another
//! write got there first.

use std::collections::HashMap;
use std::path::PathBuf;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use axum::body::Bytes;
use axum::extract::{Path, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use tokio::sync::RwLock;

use super::{ops, schema};
use crate::error::Error;
use crate::gf2::in_stabilizer_group;
use crate::lattice3::LatticeSpec;
use crate::mobility::{reachable, MobilityQuery, MoveAlphabet};
use crate::paulis::{Pauli, PauliString};
use crate::ycode::StabilizerCode;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CreateSession {
    pub p: usize,
    pub q: usize,
    pub generations: Option<usize>,
    pub periodic_l: Option<usize>,
    pub layers: usize,
    #[serde(default)]
    pub hexagon: bool,
}

impl CreateSession {
    pub fn spec(&self) -> crate::Result<LatticeSpec> {
        match (self.generations, self.periodic_l) {
            (Some(g), None) => LatticeSpec::disk(self.p, self.q, g, self.layers),
            (None, Some(l)) => LatticeSpec::torus(self.p, self.q, l, self.layers),
            _ => Err(Error::Parse("give exactly one of `generations` or `periodic_l`".into())),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Move {
    Apply { edge_id: usize, pauli: String },
    Operator { kind: String, params: Value },
}

impl Move {
    fn operator(&self, code: &StabilizerCode) -> crate::Result<PauliString> {
        match self {
            Move::Apply { edge_id, pauli } => {
                let p: Pauli = pauli.parse()?;
                if *edge_id >= code.num_qubits() {
                    return Err(Error::UnknownId { kind: "edge3", id: *edge_id });
                }
                Ok(PauliString::single(code.num_qubits(), *edge_id, p))
            }
            Move::Operator { kind, params } => ops::build_operator(code, kind, params),
        }
    }
}

struct Session {
    id: String,
    request: CreateSession,
    code: Arc<StabilizerCode>,
    applied: PauliString,
    history: Vec<(Move, PauliString)>,
    version: u64,
}

/// What goes to disk: enough to rebuild the session by replay.
#[derive(Serialize, Deserialize)]
struct Saved {
    id: String,
    request: CreateSession,
    history: Vec<Move>,
    version: u64,
}

impl Session {
    fn new(id: String, request: CreateSession) -> crate::Result<Self> {
        let code = schema::generate(&request.spec()?, request.hexagon)?;
        let applied = PauliString::identity(code.num_qubits());
        Ok(Session { id, request, code: Arc::new(code), applied, history: Vec::new(), version: 0 })
    }

    fn push(&mut self, m: Move) -> crate::Result<()> {
        let op = m.operator(&self.code)?;
        self.applied.mul_assign(&op);
        self.history.push((m, op));
        self.version += 1;
        Ok(())
    }

    fn restore(saved: Saved) -> crate::Result<Self> {
        let mut s = Session::new(saved.id, saved.request)?;
        for m in saved.history {
            s.push(m)?;
        }
        s.version = saved.version;
        Ok(s)
    }

    fn saved(&self) -> Saved {
        Saved {
            id: self.id.clone(),
            request: self.request.clone(),
            history: self.history.iter().map(|(m, _)| m.clone()).collect(),
            version: self.version,
        }
    }

    fn state(&self) -> crate::Result<Value> {
        let code = &self.code;
        let s = code.syndrome(&self.applied)?;
        let logical = s.is_empty() && !self.applied.is_identity() && !in_stabilizer_group(code, &self.applied);
        Ok(json!({
            "session_id": self.id,
            "version": self.version,
            "applied": self.applied.to_sparse(),
            "syndrome": s.excited,
            "excited_terms": s.excited.iter().map(|&i| schema::term_json(&code.terms[i])).collect::<Vec<_>>(),
            "particles": code.classify_excitations(&s),
            "logical": logical,
            "history_len": self.history.len(),
        }))
    }
}

type Shared = Arc<RwLock<Session>>;

#[derive(Clone)]
pub struct AppState {
    sessions: Arc<RwLock<HashMap<String, Shared>>>,
    next_id: Arc<AtomicU64>,
    state_dir: Option<PathBuf>,
}

impl AppState {
    /// Fresh state; with a directory, sessions saved there are replayed.
    pub fn new(state_dir: Option<PathBuf>) -> std::io::Result<Self> {
        let mut sessions = HashMap::new();
        let mut next = 1;
        if let Some(dir) = &state_dir {
            std::fs::create_dir_all(dir)?;
            for entry in std::fs::read_dir(dir)? {
                let path = entry?.path();
                if path.extension().and_then(|e| e.to_str()) != Some("json") {
                    continue;
                }
                let text = std::fs::read_to_string(&path)?;
                let saved: Saved = serde_json::from_str(&text)
                    .map_err(|e| std::io::Error::new(std::io::ErrorKind::InvalidData, format!("{}: {e}", path.display())))?;
                let s = Session::restore(saved)
                    .map_err(|e| std::io::Error::new(std::io::ErrorKind::InvalidData, format!("{}: {e}", path.display())))?;
                if let Some(n) = s.id.strip_prefix('s').and_then(|n| n.parse::<u64>().ok()) {
                    next = next.max(n + 1);
                }
                sessions.insert(s.id.clone(), Arc::new(RwLock::new(s)));
            }
        }
        Ok(AppState {
            sessions: Arc::new(RwLock::new(sessions)),
            next_id: Arc::new(AtomicU64::new(next)),
            state_dir,
        })
    }

    async fn get(&self, id: &str) -> Result<Shared, ApiError> {
        self.sessions.read().await.get(id).cloned().ok_or_else(|| ApiError::not_found(id))
    }

    fn persist(&self, s: &Session) -> Result<(), ApiError> {
        let Some(dir) = &self.state_dir else { return Ok(()) };
        let tmp = dir.join(format!("{}.json.tmp", s.id));
        let text = serde_json::to_string(&s.saved()).expect("session serializes");
        std::fs::write(&tmp, text)
            .and_then(|_| std::fs::rename(&tmp, dir.join(format!("{}.json", s.id))))
            .map_err(|e| ApiError::internal(e.to_string()))
    }
}

pub struct ApiError {
    status: StatusCode,
    body: Value,
}

impl ApiError {
    fn not_found(id: &str) -> Self {
        ApiError {
            status: StatusCode::NOT_FOUND,
            body: json!({"error": {"code": "unknown_session", "message": format!("no session `{id}`")}}),
        }
    }

    fn conflict(expected: u64, actual: u64) -> Self {
        ApiError {
            status: StatusCode::CONFLICT,
            body: json!({"error": {
                "code": "version_conflict",
                "message": format!("expected version {expected}, session is at {actual}"),
            }}),
        }
    }

    fn internal(msg: String) -> Self {
        ApiError { status: StatusCode::INTERNAL_SERVER_ERROR, body: json!({"error": {"code": "internal", "message": msg}}) }
    }
}

impl From<Error> for ApiError {
    fn from(e: Error) -> Self {
        ApiError { status: StatusCode::UNPROCESSABLE_ENTITY, body: e.to_json() }
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.status, Json(self.body)).into_response()
    }
}

type ApiResult = Result<Json<Value>, ApiError>;

fn body<T: serde::de::DeserializeOwned>(bytes: &Bytes) -> Result<T, ApiError> {
    let text: &[u8] = if bytes.iter().all(u8::is_ascii_whitespace) { b"{}" } else { bytes };
    serde_json::from_slice(text).map_err(|e| Error::Parse(e.to_string()).into())
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ApplyReq {
    edge_id: usize,
    pauli: String,
    expected_version: Option<u64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct OperatorReq {
    kind: String,
    #[serde(default)]
    params: Value,
    expected_version: Option<u64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PlainReq {
    expected_version: Option<u64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MobilityReq {
    moves: String,
    budget: Option<usize>,
    max_states: Option<usize>,
}

async fn create(State(st): State<AppState>, bytes: Bytes) -> Result<(StatusCode, Json<Value>), ApiError> {
    let req: CreateSession = body(&bytes)?;
    let id = format!("s{}", st.next_id.fetch_add(1, Ordering::SeqCst));
    let s = tokio::task::spawn_blocking(move || Session::new(id, req))
        .await
        .map_err(|e| ApiError::internal(e.to_string()))??;
    st.persist(&s)?;
    let out = json!({"session_id": s.id, "version": s.version, "lattice": schema::to_json(&s.code)});
    st.sessions.write().await.insert(s.id.clone(), Arc::new(RwLock::new(s)));
    Ok((StatusCode::CREATED, Json(out)))
}

async fn show(State(st): State<AppState>, Path(id): Path<String>) -> ApiResult {
    let shared = st.get(&id).await?;
    let s = shared.read().await;
    let mut out = s.state()?;
    out["lattice"] = schema::to_json(&s.code);
    out["history"] = json!(s.history.iter().map(|(m, _)| m).collect::<Vec<_>>());
    Ok(Json(out))
}

/// Runs `f` under the session's write lock after the version check, then
/// persists and returns the new state.
async fn write(
    st: &AppState,
    id: &str,
    expected: Option<u64>,
    f: impl FnOnce(&mut Session) -> crate::Result<()>,
) -> ApiResult {
    let shared = st.get(id).await?;
    let mut s = shared.write().await;
    if let Some(v) = expected {
        if v != s.version {
            return Err(ApiError::conflict(v, s.version));
        }
    }
    f(&mut s)?;
    st.persist(&s)?;
    Ok(Json(s.state()?))
}

async fn apply(State(st): State<AppState>, Path(id): Path<String>, bytes: Bytes) -> ApiResult {
    let r: ApplyReq = body(&bytes)?;
    write(&st, &id, r.expected_version, |s| s.push(Move::Apply { edge_id: r.edge_id, pauli: r.pauli })).await
}

async fn operator(State(st): State<AppState>, Path(id): Path<String>, bytes: Bytes) -> ApiResult {
    let r: OperatorReq = body(&bytes)?;
    write(&st, &id, r.expected_version, |s| s.push(Move::Operator { kind: r.kind, params: r.params })).await
}

async fn undo(State(st): State<AppState>, Path(id): Path<String>, bytes: Bytes) -> ApiResult {
    let r: PlainReq = body(&bytes)?;
    write(&st, &id, r.expected_version, |s| {
        let (_, op) = s.history.pop().ok_or_else(|| Error::InvalidArgument("nothing to undo".into()))?;
        s.applied.mul_assign(&op);
        s.version += 1;
        Ok(())
    })
    .await
}

async fn reset(State(st): State<AppState>, Path(id): Path<String>, bytes: Bytes) -> ApiResult {
    let r: PlainReq = body(&bytes)?;
    write(&st, &id, r.expected_version, |s| {
        s.history.clear();
        s.applied = PauliString::identity(s.code.num_qubits());
        s.version += 1;
        Ok(())
    })
    .await
}

async fn mobility(State(st): State<AppState>, Path(id): Path<String>, bytes: Bytes) -> ApiResult {
    let r: MobilityReq = body(&bytes)?;
    let moves: MoveAlphabet = r.moves.parse()?;
    let (code, applied) = {
        let shared = st.get(&id).await?;
        let s = shared.read().await;
        (s.code.clone(), s.applied.clone())
    };
    let report = tokio::task::spawn_blocking(move || {
        let mut q = MobilityQuery::new(&code, applied, moves);
        if let Some(b) = r.budget {
            q = q.with_budget(b);
        }
        if let Some(m) = r.max_states {
            q = q.with_max_states(m);
        }
        reachable(&q)
    })
    .await
    .map_err(|e| ApiError::internal(e.to_string()))??;
    Ok(Json(json!(report)))
}

pub fn router(state: AppState) -> Router {
    Router::new()
        .route("/sessions", post(create))
        .route("/sessions/{id}", get(show))
        .route("/sessions/{id}/apply", post(apply))
        .route("/sessions/{id}/operator", post(operator))
        .route("/sessions/{id}/undo", post(undo))
        .route("/sessions/{id}/reset", post(reset))
        .route("/sessions/{id}/mobility", post(mobility))
        .with_state(state)
}

pub async fn serve(port: u16, state_dir: Option<PathBuf>) -> std::io::Result<()> {
    let app = router(AppState::new(state_dir)?);
    let listener = tokio::net::TcpListener::bind(("127.0.0.1", port)).await?;
    eprintln!("listening on http://{}", listener.local_addr()?);
    axum::serve(listener, app).await
}
