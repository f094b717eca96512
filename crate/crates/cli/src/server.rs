//! HTTP session API.
//!
//! | method | path                   | body                                          |
//! |--------|------------------------|-----------------------------------------------|
//! | POST   | `/sessions`            | `{config, humanSide, engineStrategy, seed?}`  |
//! | GET    | `/sessions/{id}`       |                                               |
//! | POST   | `/sessions/{id}/moves` | `{element, color}`                            |
//! | GET    | `/sessions/{id}/legal` |                                               |
//! | GET    | `/sessions/{id}/debug` |                                               |
//!
//! The engine moves inside the request that hands it the turn, including
//! session creation when it opens. Rejected moves answer 422 with a
//! `reason` of `list`, `repeat`, `capacity`, `dependence`, `range` or
//! `finished` and leave the session untouched. The debug view reports the
//! engine invariants as checked right after its latest move.

use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, Mutex};

use axum::extract::{Path, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use mgame_core::game::{EndReason, Forfeit, Outcome, Ply};
use mgame_core::strategy::by_name;
use mgame_core::{GameConfig, GameSpec, GameState, Move, Player, Status, Strategy, Transcript};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

pub struct SessionRecord {
    pub id: String,
    pub spec: GameSpec,
    pub config: GameConfig,
    pub state: GameState,
    pub human: Player,
    pub engine_name: String,
    engine: Box<dyn Strategy>,
    rng: ChaCha8Rng,
    pub seed: u64,
    pub moves: Vec<Ply>,
    pub outcome: Option<Outcome>,
    pub violations: Vec<String>,
    /// Invariant check after the engine's latest move.
    last_check: Option<Result<(), String>>,
}

impl SessionRecord {
    pub fn new(id: String, spec: GameSpec, human: Player, engine_name: &str, seed: u64) -> Result<Self, ApiError> {
        let config = spec.build().map_err(|e| ApiError::bad_request(e.to_string()))?;
        let engine = by_name(engine_name, &config).map_err(|e| ApiError::bad_request(e.to_string()))?;
        let mut s = Self {
            id,
            spec,
            state: GameState::new(&config),
            config,
            human,
            engine_name: engine_name.to_string(),
            engine,
            rng: ChaCha8Rng::seed_from_u64(seed),
            seed,
            moves: Vec::new(),
            outcome: None,
            violations: Vec::new(),
            last_check: None,
        };
        s.settle();
        Ok(s)
    }

    /// Applies a human move and lets the engine answer. On rejection
    /// nothing changes.
    pub fn submit(&mut self, mv: Move) -> Result<(), ApiError> {
        if self.outcome.is_some() {
            return Err(ApiError::illegal("finished", "the game is over".into()));
        }
        if self.state.mover() != self.human {
            return Err(ApiError::illegal("turn", "it is not the human side's turn".into()));
        }
        self.state
            .apply(&self.config, mv)
            .map_err(|e| ApiError::illegal(e.reason(), e.to_string()))?;
        self.moves.push(Ply::new(self.human, mv));
        self.settle();
        Ok(())
    }

    /// Records the outcome if the game is over, otherwise plays engine
    /// moves until the human is to move.
    fn settle(&mut self) {
        loop {
            if let Some(o) = Outcome::from_status(self.state.status(&self.config)) {
                self.outcome = Some(o);
                return;
            }
            if self.state.mover() == self.human {
                return;
            }
            let side = self.human.other();
            let choice = self
                .engine
                .select(&self.config, &self.state, &self.moves, &mut self.rng);
            let applied = match choice {
                Some(mv) => self.state.apply(&self.config, mv).map_err(|e| e.reason().to_string()),
                None => Err("no_move".into()),
            };
            if let Err(reason) = applied {
                self.outcome = Some(Outcome {
                    winner: self.human,
                    reason: EndReason::Forfeit,
                    forfeit: Some(Forfeit {
                        player: side,
                        attempted: choice,
                        reason,
                    }),
                });
                return;
            }
            self.moves.push(Ply::new(side, choice.expect("applied")));
            let check = self.engine.check_invariants(&self.config, &self.state);
            if let Err(v) = &check {
                self.violations.push(v.clone());
            }
            self.last_check = Some(check);
        }
    }

    pub fn transcript(&self) -> Option<Transcript> {
        let outcome = self.outcome.clone()?;
        let (alice, bob) = match self.human {
            Player::Alice => ("human".to_string(), self.engine_name.clone()),
            Player::Bob => (self.engine_name.clone(), "human".to_string()),
        };
        Some(Transcript {
            config: Some(self.spec.clone()),
            alice,
            bob,
            seed: self.seed,
            moves: self.moves.clone(),
            outcome,
            snapshots: Vec::new(),
            violations: Vec::new(),
            flags: self.engine.flags(),
        })
    }

    pub fn view(&self) -> Value {
        let labels = self.spec.matroid.as_ref().and_then(|f| f.labels.clone());
        json!({
            "id": self.id,
            "config": self.spec,
            "labels": labels,
            "humanSide": self.human,
            "engineStrategy": self.engine_name,
            "state": {
                "classes": self.state.classes(),
                "acquired": (0..self.config.ground_size()).map(|e| self.state.acquired(e).to_vec()).collect::<Vec<_>>(),
                "mover": self.state.mover(),
                "status": self.state.status(&self.config),
                "plies": self.state.plies(),
            },
            "moves": self.moves,
            "outcome": self.outcome,
            "transcript": self.transcript(),
        })
    }

    pub fn debug(&self) -> Value {
        json!({
            "id": self.id,
            "engineStrategy": self.engine_name,
            "engineSide": self.human.other(),
            "snapshot": self.engine.snapshot(),
            "invariants": match &self.last_check {
                None => json!({ "ok": null }),
                Some(Ok(())) => json!({ "ok": true }),
                Some(Err(message)) => json!({ "ok": false, "message": message }),
            },
            "violations": self.violations,
            "flags": self.engine.flags(),
        })
    }
}

#[derive(Debug)]
pub struct ApiError {
    status: StatusCode,
    body: Value,
}

impl ApiError {
    fn bad_request(message: String) -> Self {
        Self {
            status: StatusCode::BAD_REQUEST,
            body: json!({ "error": "bad_request", "message": message }),
        }
    }

    fn illegal(reason: &str, message: String) -> Self {
        Self {
            status: StatusCode::UNPROCESSABLE_ENTITY,
            body: json!({ "error": "illegal_move", "reason": reason, "message": message }),
        }
    }

    fn not_found(id: &str) -> Self {
        Self {
            status: StatusCode::NOT_FOUND,
            body: json!({ "error": "not_found", "message": format!("unknown session {id}") }),
        }
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.status, Json(self.body)).into_response()
    }
}

#[derive(Default)]
pub struct AppState {
    sessions: Mutex<HashMap<String, Arc<Mutex<SessionRecord>>>>,
    next: AtomicU64,
}

impl AppState {
    fn get(&self, id: &str) -> Result<Arc<Mutex<SessionRecord>>, ApiError> {
        self.sessions
            .lock()
            .expect("session map lock")
            .get(id)
            .cloned()
            .ok_or_else(|| ApiError::not_found(id))
    }
}

#[derive(Debug, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CreateSession {
    pub config: GameSpec,
    pub human_side: Player,
    pub engine_strategy: String,
    #[serde(default)]
    pub seed: u64,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct MoveBody {
    pub element: usize,
    pub color: usize,
}

pub fn router() -> Router {
    router_with(Arc::new(AppState::default()))
}

pub fn router_with(state: Arc<AppState>) -> Router {
    Router::new()
        .route("/sessions", post(create))
        .route("/sessions/{id}", get(fetch))
        .route("/sessions/{id}/moves", post(submit))
        .route("/sessions/{id}/legal", get(legal))
        .route("/sessions/{id}/debug", get(debug))
        .with_state(state)
}

async fn create(
    State(app): State<Arc<AppState>>,
    Json(req): Json<CreateSession>,
) -> Result<(StatusCode, Json<Value>), ApiError> {
    let id = format!("s{}", app.next.fetch_add(1, Ordering::Relaxed) + 1);
    let record = SessionRecord::new(id.clone(), req.config, req.human_side, &req.engine_strategy, req.seed)?;
    let view = record.view();
    app.sessions
        .lock()
        .expect("session map lock")
        .insert(id, Arc::new(Mutex::new(record)));
    Ok((StatusCode::CREATED, Json(view)))
}

async fn fetch(State(app): State<Arc<AppState>>, Path(id): Path<String>) -> Result<Json<Value>, ApiError> {
    let s = app.get(&id)?;
    let view = s.lock().expect("session lock").view();
    Ok(Json(view))
}

async fn submit(
    State(app): State<Arc<AppState>>,
    Path(id): Path<String>,
    Json(body): Json<MoveBody>,
) -> Result<Json<Value>, ApiError> {
    let s = app.get(&id)?;
    let mut record = s.lock().expect("session lock");
    record.submit(Move::new(body.element, body.color))?;
    Ok(Json(record.view()))
}

async fn legal(State(app): State<Arc<AppState>>, Path(id): Path<String>) -> Result<Json<Value>, ApiError> {
    let s = app.get(&id)?;
    let record = s.lock().expect("session lock");
    let moves = match record.state.status(&record.config) {
        Status::Ongoing if record.outcome.is_none() => record.state.legal_moves(&record.config),
        _ => Vec::new(),
    };
    Ok(Json(json!({ "mover": record.state.mover(), "moves": moves })))
}

async fn debug(State(app): State<Arc<AppState>>, Path(id): Path<String>) -> Result<Json<Value>, ApiError> {
    let s = app.get(&id)?;
    let view = s.lock().expect("session lock").debug();
    Ok(Json(view))
}

pub async fn serve(port: u16) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(("127.0.0.1", port)).await?;
    eprintln!("listening on http://{}", listener.local_addr()?);
    axum::serve(listener, router()).await
}
