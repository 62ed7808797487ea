//! Problems and sessions held by a running service.
//!
//! The library is an immutable snapshot replaced wholesale when a problem is
//! uploaded, so readers never wait on writers. Each session sits behind its
//! own mutex. With a data directory, uploads and every session mutation are
//! written through to disk:
//!
//! ```text
//! DATA/problems/ID.json   {"id", "name", "text"}
//! DATA/sessions/ID.json   {"id", "problem_id", "observation_mode",
//!                          "created_ms", "updated_ms", "proof"}
//! ```
//!
//! `proof` holds the structured export of the session.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};
use std::sync::{Arc, RwLock};
use std::time::{SystemTime, UNIX_EPOCH};

use dashmap::DashMap;
use log::{info, warn};
use serde::{Deserialize, Serialize};
use tokio::sync::Mutex;

use axolotl::engine::ProofSession;
use axolotl::export::{from_structured, to_structured};
use axolotl::library::{builtin_library, LibraryEntry};
use axolotl::problem::{parse_problem_named, ParseDiagnostic, ProblemSpec};

pub const UPLOADED: &str = "uploaded";

#[derive(Clone, Debug)]
pub struct ProblemEntry {
    pub id: String,
    pub category: String,
    pub name: String,
    pub text: String,
    pub spec: ProblemSpec,
}

impl From<&LibraryEntry> for ProblemEntry {
    fn from(e: &LibraryEntry) -> ProblemEntry {
        ProblemEntry {
            id: e.id.clone(),
            category: e.category.clone(),
            name: e.name.clone(),
            text: e.text.to_string(),
            spec: e.spec.clone(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SessionRecord {
    pub id: String,
    pub problem_id: String,
    pub session: ProofSession,
    pub created_ms: u64,
    pub updated_ms: u64,
    pub observation_mode: bool,
}

impl SessionRecord {
    pub fn touch(&mut self) {
        self.updated_ms = now_ms();
    }
}

#[derive(Serialize, Deserialize)]
struct StoredProblem {
    id: String,
    name: String,
    text: String,
}

#[derive(Serialize, Deserialize)]
struct StoredSession {
    id: String,
    problem_id: String,
    observation_mode: bool,
    created_ms: u64,
    updated_ms: u64,
    proof: String,
}

pub fn now_ms() -> u64 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_millis() as u64)
        .unwrap_or(0)
}

pub type Library = Arc<Vec<Arc<ProblemEntry>>>;

pub struct Store {
    library: RwLock<Library>,
    sessions: DashMap<String, Arc<Mutex<SessionRecord>>>,
    data_dir: Option<PathBuf>,
}

/// Bundled problems.
pub fn bundled_entries() -> Vec<ProblemEntry> {
    builtin_library().iter().map(ProblemEntry::from).collect()
}

/// Reads every `.axolotl` file below `dir`. The category is the name of the
/// containing directory relative to `dir` (`local` for files directly in
/// it). Invalid files are skipped with a warning.
pub fn load_library_dir(dir: &Path) -> io::Result<Vec<ProblemEntry>> {
    let mut files = Vec::new();
    collect_files(dir, &mut files)?;
    files.sort();
    let mut out = Vec::new();
    for path in files {
        let text = match fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) => {
                warn!("skipping {}: {e}", path.display());
                continue;
            }
        };
        let name = path.file_stem().and_then(|s| s.to_str()).unwrap_or("problem").to_string();
        let category = path
            .parent()
            .filter(|p| *p != dir)
            .and_then(|p| p.strip_prefix(dir).ok())
            .map(|p| p.to_string_lossy().replace('\\', "/"))
            .unwrap_or_else(|| "local".to_string());
        match parse_problem_named(&name, &text) {
            Ok(spec) => out.push(ProblemEntry {
                id: format!("{category}/{name}"),
                category,
                name,
                text,
                spec,
            }),
            Err(diags) => {
                let first = diags.first().map(|d| d.to_string()).unwrap_or_default();
                warn!("skipping {}: {} problem(s), first at {first}", path.display(), diags.len());
            }
        }
    }
    Ok(out)
}

fn collect_files(dir: &Path, out: &mut Vec<PathBuf>) -> io::Result<()> {
    for entry in fs::read_dir(dir)? {
        let path = entry?.path();
        if path.is_dir() {
            collect_files(&path, out)?;
        } else if path.extension().is_some_and(|e| e == "axolotl") {
            out.push(path);
        }
    }
    Ok(())
}

fn category_rank(c: &str) -> usize {
    axolotl::library::CATEGORIES
        .iter()
        .position(|k| *k == c)
        .unwrap_or(axolotl::library::CATEGORIES.len())
}

impl Store {
    /// A store over the given problems. Entries with an id seen earlier are
    /// skipped. With a data directory, previously uploaded problems and
    /// sessions are loaded from it.
    pub fn open(entries: Vec<ProblemEntry>, data_dir: Option<PathBuf>) -> io::Result<Store> {
        let mut library: Vec<Arc<ProblemEntry>> = Vec::new();
        for e in entries {
            if library.iter().any(|x| x.id == e.id) {
                warn!("duplicate problem id {}; keeping the first", e.id);
                continue;
            }
            library.push(Arc::new(e));
        }
        let store = Store {
            library: RwLock::new(Arc::new(Vec::new())),
            sessions: DashMap::new(),
            data_dir,
        };
        if let Some(dir) = &store.data_dir {
            fs::create_dir_all(dir.join("problems"))?;
            fs::create_dir_all(dir.join("sessions"))?;
            for path in json_files(&dir.join("problems"))? {
                let stored: StoredProblem = match read_json(&path) {
                    Ok(p) => p,
                    Err(e) => {
                        warn!("skipping {}: {e}", path.display());
                        continue;
                    }
                };
                match parse_problem_named(&stored.name, &stored.text) {
                    Ok(spec) => library.push(Arc::new(ProblemEntry {
                        id: stored.id,
                        category: UPLOADED.to_string(),
                        name: stored.name,
                        text: stored.text,
                        spec,
                    })),
                    Err(_) => warn!("skipping {}: no longer valid", path.display()),
                }
            }
        }
        store.set_library(library);
        if let Some(dir) = &store.data_dir {
            for path in json_files(&dir.join("sessions"))? {
                match read_json::<StoredSession>(&path) {
                    Ok(s) => match from_structured(&s.proof) {
                        Ok(session) => {
                            store.sessions.insert(
                                s.id.clone(),
                                Arc::new(Mutex::new(SessionRecord {
                                    id: s.id,
                                    problem_id: s.problem_id,
                                    session,
                                    created_ms: s.created_ms,
                                    updated_ms: s.updated_ms,
                                    observation_mode: s.observation_mode,
                                })),
                            );
                        }
                        Err(e) => warn!("skipping {}: {e}", path.display()),
                    },
                    Err(e) => warn!("skipping {}: {e}", path.display()),
                }
            }
            info!(
                "loaded {} problems and {} sessions",
                store.library().len(),
                store.sessions.len()
            );
        }
        Ok(store)
    }

    /// Bundled problems only, kept in memory.
    pub fn in_memory() -> Store {
        Store::open(bundled_entries(), None).expect("no disk access without a data directory")
    }

    fn set_library(&self, mut entries: Vec<Arc<ProblemEntry>>) {
        entries.sort_by_key(|e| category_rank(&e.category));
        *self.library.write().expect("library lock") = Arc::new(entries);
    }

    /// Current library snapshot, grouped by category.
    pub fn library(&self) -> Library {
        self.library.read().expect("library lock").clone()
    }

    pub fn problem(&self, id: &str) -> Option<Arc<ProblemEntry>> {
        self.library().iter().find(|e| e.id == id).cloned()
    }

    /// Validates and adds an uploaded problem under a fresh id.
    pub fn add_problem(&self, name: &str, text: &str) -> Result<Arc<ProblemEntry>, Vec<ParseDiagnostic>> {
        let spec = parse_problem_named(name, text)?;
        let id = uuid::Uuid::new_v4().simple().to_string();
        let entry = Arc::new(ProblemEntry {
            id: id.clone(),
            category: UPLOADED.to_string(),
            name: name.to_string(),
            text: text.to_string(),
            spec,
        });
        if let Some(dir) = &self.data_dir {
            let stored = StoredProblem {
                id: id.clone(),
                name: name.to_string(),
                text: text.to_string(),
            };
            if let Err(e) = write_json(&dir.join("problems").join(format!("{id}.json")), &stored) {
                warn!("could not persist problem {id}: {e}");
            }
        }
        let mut lib = self.library.write().expect("library lock");
        let mut next: Vec<Arc<ProblemEntry>> = lib.iter().cloned().collect();
        next.push(entry.clone());
        next.sort_by_key(|e| category_rank(&e.category));
        *lib = Arc::new(next);
        Ok(entry)
    }

    pub fn create_session(&self, problem_id: &str) -> Option<Arc<Mutex<SessionRecord>>> {
        let problem = self.problem(problem_id)?;
        let now = now_ms();
        let record = SessionRecord {
            id: uuid::Uuid::new_v4().simple().to_string(),
            problem_id: problem.id.clone(),
            session: ProofSession::new(problem.spec.clone()),
            created_ms: now,
            updated_ms: now,
            observation_mode: true,
        };
        self.persist(&record);
        let handle = Arc::new(Mutex::new(record));
        let id = handle.try_lock().expect("fresh lock").id.clone();
        self.sessions.insert(id, handle.clone());
        Some(handle)
    }

    pub fn session(&self, id: &str) -> Option<Arc<Mutex<SessionRecord>>> {
        self.sessions.get(id).map(|h| h.clone())
    }

    pub fn session_count(&self) -> usize {
        self.sessions.len()
    }

    /// Writes the record to the data directory, if any. Failures are logged;
    /// the in-memory state stays authoritative.
    pub fn persist(&self, record: &SessionRecord) {
        let Some(dir) = &self.data_dir else { return };
        let stored = StoredSession {
            id: record.id.clone(),
            problem_id: record.problem_id.clone(),
            observation_mode: record.observation_mode,
            created_ms: record.created_ms,
            updated_ms: record.updated_ms,
            proof: to_structured(&record.session),
        };
        let path = dir.join("sessions").join(format!("{}.json", record.id));
        if let Err(e) = write_json(&path, &stored) {
            warn!("could not persist session {}: {e}", record.id);
        }
    }
}

fn json_files(dir: &Path) -> io::Result<Vec<PathBuf>> {
    let mut out: Vec<PathBuf> = fs::read_dir(dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|e| e == "json"))
        .collect();
    out.sort();
    Ok(out)
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> io::Result<T> {
    let text = fs::read_to_string(path)?;
    serde_json::from_str(&text).map_err(|e| io::Error::new(io::ErrorKind::InvalidData, e))
}

/// Write to a temporary file, then rename over the target.
fn write_json<T: Serialize>(path: &Path, value: &T) -> io::Result<()> {
    let tmp = path.with_extension("json.tmp");
    fs::write(&tmp, serde_json::to_vec_pretty(value)?)?;
    fs::rename(&tmp, path)
}
