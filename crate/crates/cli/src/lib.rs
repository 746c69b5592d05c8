//! Library surface behind the qig binary: report derivation, caching,
//! and the wreath verification suite, shared with the acceptance tests.

pub mod schema;

use qig_core::engine::{run_pipeline, EngineError};
use qig_core::presentation::GroupPresentation;
use qig_core::recognize::{recognize_structure, zero_pattern, AutomorphismCandidate};
use qig_core::report::{build_report, RunConfig, RunReport};
use qig_core::word::{oracle, Backend, WordError};
use qig_core::wreath;
use std::path::PathBuf;

#[derive(Debug)]
pub enum CliError {
    Parse(String),
    Backend(String),
    Budget(String),
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse(_) => 1,
            CliError::Backend(_) => 2,
            CliError::Budget(_) => 3,
            CliError::Io(_) => 4,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Parse(m) => write!(f, "parse: {m}"),
            CliError::Backend(m) => write!(f, "backend: {m}"),
            CliError::Budget(m) => write!(f, "budget: {m}"),
            CliError::Io(m) => write!(f, "io: {m}"),
        }
    }
}

impl From<WordError> for CliError {
    fn from(e: WordError) -> Self {
        match e {
            WordError::BackendMismatch(m) => CliError::Backend(m),
            WordError::BudgetExceeded(m) => CliError::Budget(m),
        }
    }
}

impl From<EngineError> for CliError {
    fn from(e: EngineError) -> Self {
        match e {
            EngineError::Word(w) => w.into(),
            EngineError::Budget(m) => CliError::Budget(m),
            EngineError::Assumption(m) => CliError::Parse(m),
        }
    }
}

pub fn cache_dir(cfg: &RunConfig) -> PathBuf {
    if let Ok(dir) = std::env::var("QIG_CACHE") {
        return PathBuf::from(dir);
    }
    cfg.cache_dir.clone().unwrap_or_else(|| PathBuf::from(".qig-cache"))
}

pub fn write_atomic(path: &PathBuf, bytes: &[u8]) -> Result<(), CliError> {
    let dir = path.parent().map(PathBuf::from).filter(|d| !d.as_os_str().is_empty());
    let dir = dir.unwrap_or_else(|| PathBuf::from("."));
    std::fs::create_dir_all(&dir).map_err(|e| CliError::Io(e.to_string()))?;
    let tmp = dir.join(format!(
        ".tmp-{}-{}",
        std::process::id(),
        path.file_name().and_then(|s| s.to_str()).unwrap_or("report")
    ));
    std::fs::write(&tmp, bytes).map_err(|e| CliError::Io(e.to_string()))?;
    std::fs::rename(&tmp, path).map_err(|e| CliError::Io(e.to_string()))?;
    Ok(())
}

pub fn derive_report(
    p: &GroupPresentation,
    cfg: &RunConfig,
    oracle_check: bool,
    pinned: Option<&AutomorphismCandidate>,
) -> Result<RunReport, CliError> {
    let b = Backend::new(p)?;
    let res = run_pipeline(p, &b, &cfg.pipeline())?;
    for d in &res.diagnostics {
        eprintln!("{}", serde_json::json!({"event": "diagnostic", "detail": d}));
    }
    let oracle_note = if oracle_check { Some(run_oracle_check(p, &b)?) } else { None };
    let structure = recognize_structure(&res.full, &res.matrix, p, &b, &cfg.saturate(), pinned);
    let pattern = zero_pattern(&res.full, &res.matrix);
    Ok(build_report(p, cfg, &res, &pattern, Some(structure), oracle_note))
}

pub fn run_oracle_check(p: &GroupPresentation, b: &Backend) -> Result<String, CliError> {
    for r in 0..=3 {
        let oracle = oracle::bfs_oracle(p, r, oracle::OracleBudget::default())?;
        let ball = b.ball(r, 6)?;
        let mut from_oracle = std::collections::BTreeMap::new();
        for (w, len) in &oracle.elements {
            if from_oracle.insert(b.normal_form(w), *len).is_some() {
                return Ok(format!("mismatch at r={r}: oracle duplicated an element"));
            }
        }
        let from_backend: std::collections::BTreeMap<_, _> = ball.into_iter().collect();
        if from_oracle != from_backend {
            return Ok(format!(
                "mismatch at r={r}: oracle {} elements, backend {}",
                from_oracle.len(),
                from_backend.len()
            ));
        }
    }
    Ok("balls agree with the presentation oracle for r <= 3".into())
}


#[derive(serde::Serialize)]
pub struct NamedCheck {
    pub name: String,
    pub outcome: wreath::CheckOutcome,
}

#[derive(serde::Serialize)]
pub struct WreathReport {
    pub s: u32,
    pub n: usize,
    pub caveat: bool,
    pub relations: Vec<String>,
    pub checks: Vec<NamedCheck>,
}

pub fn wreath_check(s: u32, n: usize, cfg: &qig_core::algebra::SaturateConfig) -> WreathReport {
    let target = wreath::target_relations(s, n);
    let relations: Vec<String> =
        target.relations.iter().map(|q| q.render(&target.alphabet)).collect();
    if target.caveat {
        eprintln!(
            "note: s = {s} emits the generic relation family only; the isomorphism suite is verified for s = 4"
        );
        return WreathReport { s, n, caveat: true, relations, checks: Vec::new() };
    }
    let w = wreath::wreath_relations(n);
    let e = wreath::eta(n);
    let ep = wreath::eta_prime(n);
    let dd = |l| wreath::matrix_coproduct(&e.domain, l);
    let dc = |l| wreath::wreath_coproduct(n, &e.codomain, l);
    let checks = vec![
        NamedCheck {
            name: "eta is a *-homomorphism".into(),
            outcome: wreath::check_homomorphism(&e, &target.relations, &w, cfg),
        },
        NamedCheck {
            name: "eta' is a *-homomorphism".into(),
            outcome: wreath::check_homomorphism(&ep, &w, &target.relations, cfg),
        },
        NamedCheck {
            name: "eta' o eta = id".into(),
            outcome: wreath::check_inverse(&e, &ep, &target.relations, cfg),
        },
        NamedCheck {
            name: "eta o eta' = id".into(),
            outcome: wreath::check_inverse(&ep, &e, &w, cfg),
        },
        NamedCheck {
            name: "eta coproduct square".into(),
            outcome: wreath::check_cqg_morphism_on_generators(&e, &dd, &dc, &w, cfg),
        },
        NamedCheck {
            name: "eta' coproduct square".into(),
            outcome: wreath::check_cqg_morphism_on_generators(&ep, &dc, &dd, &target.relations, cfg),
        },
    ];
    WreathReport { s, n, caveat: false, relations, checks }
}
