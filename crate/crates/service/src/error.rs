use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::Json;
use serde::Serialize;
use serde_json::{json, Value};

use axolotl::engine::EngineError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ErrorCode {
    NoMatch,
    UnresolvedVars,
    IllFormed,
    BadIndex,
    NotFound,
    InvalidPayload,
}

/// Error body: `{code, message, details}`.
#[derive(Clone, Debug)]
pub struct ApiError {
    pub status: StatusCode,
    pub code: ErrorCode,
    pub message: String,
    pub details: Value,
}

impl ApiError {
    pub fn new(status: StatusCode, code: ErrorCode, message: impl Into<String>) -> ApiError {
        ApiError {
            status,
            code,
            message: message.into(),
            details: Value::Null,
        }
    }

    pub fn with_details(mut self, details: Value) -> ApiError {
        self.details = details;
        self
    }

    pub fn not_found(what: &str, id: &str) -> ApiError {
        ApiError::new(StatusCode::NOT_FOUND, ErrorCode::NotFound, format!("no {what} `{id}`"))
    }

    pub fn invalid(message: impl Into<String>) -> ApiError {
        ApiError::new(StatusCode::UNPROCESSABLE_ENTITY, ErrorCode::InvalidPayload, message)
    }
}

impl From<EngineError> for ApiError {
    fn from(e: EngineError) -> ApiError {
        let status = StatusCode::UNPROCESSABLE_ENTITY;
        let message = e.to_string();
        match e {
            EngineError::InvalidGoalPosition { position, count } => ApiError::new(status, ErrorCode::BadIndex, message)
                .with_details(json!({ "goal_position": position, "goals": count })),
            EngineError::InvalidRuleIndex { index, count } => ApiError::new(status, ErrorCode::BadIndex, message)
                .with_details(json!({ "rule_index": index, "rules": count })),
            EngineError::NoMatch { rule } => {
                ApiError::new(status, ErrorCode::NoMatch, message).with_details(json!({ "rule": rule }))
            }
            EngineError::UnresolvedVariables(vars) => ApiError::new(status, ErrorCode::UnresolvedVars, message)
                .with_details(json!({ "variables": vars })),
            EngineError::IllFormedPremise { index, violation } => ApiError::new(status, ErrorCode::IllFormed, message)
                .with_details(json!({ "premise": index, "violation": violation.to_string() })),
            EngineError::UnexpectedBinding(var) | EngineError::NonGroundBinding(var) => {
                ApiError::new(status, ErrorCode::InvalidPayload, message).with_details(json!({ "variable": var }))
            }
            EngineError::NothingToUndo => ApiError::new(StatusCode::CONFLICT, ErrorCode::BadIndex, message),
        }
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let body = json!({
            "code": self.code,
            "message": self.message,
            "details": self.details,
        });
        (self.status, Json(body)).into_response()
    }
}
