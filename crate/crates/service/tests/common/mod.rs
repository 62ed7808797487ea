#![allow(dead_code)]

use std::path::PathBuf;
use std::sync::Arc;

use axolotl_service::{serve, Store};
use serde_json::{json, Value};
use tokio::net::TcpListener;

/// Starts a server on an ephemeral port; it stops when the test runtime ends.
pub async fn spawn(store: Store) -> String {
    let listener = TcpListener::bind("127.0.0.1:0").await.unwrap();
    let addr = listener.local_addr().unwrap();
    tokio::spawn(serve(listener, Arc::new(store), std::future::pending()));
    format!("http://{addr}")
}

pub fn library_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/library")
}

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/tests/fixtures").join(name)
}

pub struct Api {
    pub base: String,
    pub client: reqwest::Client,
}

impl Api {
    pub async fn new(store: Store) -> Api {
        Api {
            base: spawn(store).await,
            client: reqwest::Client::new(),
        }
    }

    pub async fn get(&self, path: &str) -> (u16, Value) {
        let r = self.client.get(format!("{}{path}", self.base)).send().await.unwrap();
        let status = r.status().as_u16();
        (status, r.json().await.unwrap_or(Value::Null))
    }

    pub async fn get_text(&self, path: &str) -> (u16, String, String) {
        let r = self.client.get(format!("{}{path}", self.base)).send().await.unwrap();
        let status = r.status().as_u16();
        let ct = r
            .headers()
            .get("content-type")
            .map(|v| v.to_str().unwrap().to_string())
            .unwrap_or_default();
        (status, ct, r.text().await.unwrap())
    }

    pub async fn post(&self, path: &str, body: Value) -> (u16, Value) {
        let r = self.client.post(format!("{}{path}", self.base)).json(&body).send().await.unwrap();
        let status = r.status().as_u16();
        (status, r.json().await.unwrap_or(Value::Null))
    }

    pub async fn patch(&self, path: &str, body: Value) -> (u16, Value) {
        let r = self.client.patch(format!("{}{path}", self.base)).json(&body).send().await.unwrap();
        let status = r.status().as_u16();
        (status, r.json().await.unwrap_or(Value::Null))
    }

    pub async fn upload(&self, name: &str, text: &str) -> (u16, Value) {
        let r = self
            .client
            .post(format!("{}/problems?name={name}", self.base))
            .header("content-type", "text/plain")
            .body(text.to_string())
            .send()
            .await
            .unwrap();
        let status = r.status().as_u16();
        (status, r.json().await.unwrap_or(Value::Null))
    }

    pub async fn new_session(&self, problem_id: &str) -> String {
        let (status, v) = self.post("/sessions", json!({ "problem_id": problem_id })).await;
        assert_eq!(status, 201, "{v}");
        v["session_id"].as_str().unwrap().to_string()
    }
}

/// Request body for one script step.
pub fn step_body(app: &axolotl::engine::Application, sig: &axolotl::term::Signature) -> Value {
    let bindings: serde_json::Map<String, Value> = app
        .bindings
        .iter()
        .map(|(v, t)| (v.to_string(), Value::String(axolotl::term::print_term(t, sig, axolotl::term::PrintMode::File))))
        .collect();
    json!({
        "goal_position": app.goal_position,
        "rule_index": app.rule_index,
        "bindings": bindings,
    })
}
