//! Starts the service on an ephemeral port and proves the bundled sequent
//! transitivity problem over HTTP, then fetches the LaTeX export.

use std::sync::Arc;

use axolotl::library::builtin;
use axolotl::term::{print_term, PrintMode};
use axolotl_service::{serve, Store};
use serde_json::{json, Value};

#[tokio::main]
async fn main() -> Result<(), Box<dyn std::error::Error>> {
    let listener = tokio::net::TcpListener::bind("127.0.0.1:0").await?;
    let base = format!("http://{}", listener.local_addr()?);
    tokio::spawn(serve(listener, Arc::new(Store::in_memory()), std::future::pending()));
    let http = reqwest::Client::new();

    let library: Value = http.get(format!("{base}/library")).send().await?.json().await?;
    for p in library.as_array().unwrap() {
        println!("{:<36} {}", p["id"].as_str().unwrap(), p["goal_preview"][0].as_str().unwrap());
    }

    let created: Value = http
        .post(format!("{base}/sessions"))
        .json(&json!({ "problem_id": "sequent/transitivity" }))
        .send()
        .await?
        .json()
        .await?;
    let id = created["session_id"].as_str().unwrap().to_string();

    let entry = builtin("sequent/transitivity").unwrap();
    for app in entry.applications()? {
        let body = json!({ "goal_position": app.goal_position, "rule_index": app.rule_index });
        let reply: Value = http.post(format!("{base}/sessions/{id}/apply")).json(&body).send().await?.json().await?;
        let goals: Vec<&str> = reply["state"]["goals"].as_array().unwrap().iter().map(|g| g["display"].as_str().unwrap()).collect();
        println!(
            "{:<11} {}",
            entry.spec.rules[app.rule_index].label(app.rule_index),
            goals.join(" | ")
        );
    }

    // a rule that does not fit is reported, not applied
    let reopened: Value = http
        .post(format!("{base}/sessions/{id}/undo"))
        .send()
        .await?
        .json()
        .await?;
    let goal = &reopened["goals"][0]["file"];
    let bad = http
        .post(format!("{base}/sessions/{id}/apply"))
        .json(&json!({ "goal_position": 0, "rule_index": 0 }))
        .send()
        .await?;
    println!("undo reopened {goal}; applying →:r there gives {}", bad.status());
    let goal_term = axolotl::term::parse_term(goal.as_str().unwrap(), &entry.spec.signature)?;
    println!("goal in display syntax: {}", print_term(&goal_term, &entry.spec.signature, PrintMode::Display));
    let last = entry.applications()?.pop().unwrap();
    http.post(format!("{base}/sessions/{id}/apply"))
        .json(&json!({ "goal_position": last.goal_position, "rule_index": last.rule_index }))
        .send()
        .await?;

    let latex = http.get(format!("{base}/sessions/{id}/export?format=latex")).send().await?.text().await?;
    print!("{latex}");
    Ok(())
}
