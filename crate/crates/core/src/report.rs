//! Run configuration and reproducible reports.
//!
//! A report is keyed by the SHA-256 digest of the canonical presentation
//! text plus the configuration line; for a fixed digest the JSON is
//! byte-identical across runs and worker counts. Wall-clock timing never
//! enters the report; work counters do.

use crate::algebra::{NcPoly, RelationStore, SaturateConfig};
use crate::engine::{FundamentalMatrix, PipelineConfig, PipelineResult};
use crate::presentation::GroupPresentation;
use crate::recognize::{StructureReport, ZeroPattern};
use crate::scalar::Scalar;
use crate::Rat;
use serde::Serialize;
use sha2::{Digest, Sha256};

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub degree_bound: usize,
    pub round_cap: usize,
    pub relation_cap: usize,
    pub expansion_cap: usize,
    pub derive_cap: usize,
    pub oracle_check: bool,
    pub workers: usize,
    pub cache_dir: Option<std::path::PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            degree_bound: 6,
            round_cap: 8,
            relation_cap: 200_000,
            expansion_cap: 6,
            derive_cap: 4,
            oracle_check: false,
            workers: 1,
            cache_dir: None,
        }
    }
}

impl RunConfig {
    pub fn saturate(&self) -> SaturateConfig {
        SaturateConfig {
            degree_bound: self.degree_bound,
            round_cap: self.round_cap,
            relation_cap: self.relation_cap,
            pmul_degree: 2,
            cstar_rule: true,
            workers: self.workers,
        }
    }

    pub fn pipeline(&self) -> PipelineConfig {
        PipelineConfig {
            sat: self.saturate(),
            caps: crate::engine::ExpansionCaps {
                expansion_cap: self.expansion_cap,
                term_budget: 2_000_000,
            },
            derive_cap: self.derive_cap,
        }
    }

    /// Digest-relevant rendering. Worker count and cache location do not
    /// change results, so they stay out.
    pub fn canonical_line(&self) -> String {
        format!(
            "degree_bound={} round_cap={} relation_cap={} expansion_cap={} derive_cap={}",
            self.degree_bound, self.round_cap, self.relation_cap, self.expansion_cap, self.derive_cap
        )
    }
}

pub fn digest(p: &GroupPresentation, cfg: &RunConfig) -> String {
    let mut h = Sha256::new();
    h.update(p.render().as_bytes());
    h.update(b"\n");
    h.update(cfg.canonical_line().as_bytes());
    let out = h.finalize();
    out.iter().map(|b| format!("{b:02x}")).collect()
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct SymbolJson {
    pub name: String,
    /// 1-based matrix position.
    pub row: usize,
    pub col: usize,
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct TermJson {
    pub coef: String,
    /// Letters as [row, col, star] with 1-based indices.
    pub mono: Vec<(usize, usize, bool)>,
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct AssumptionJson {
    pub relation: String,
    pub provenance: String,
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct AssumptionDelta {
    pub zero_symbols: Vec<String>,
    pub normal_symbols: Vec<String>,
    pub basis_added: usize,
}

#[derive(Debug, Clone, Serialize, PartialEq, Default)]
pub struct Counters {
    pub saturation_rounds: usize,
    pub reductions: u64,
    pub s_polynomials: u64,
    pub relations_added: u64,
    pub degree_skips: u64,
    pub basis_size: usize,
    pub parked: usize,
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct RunReport {
    pub schema: String,
    pub digest: String,
    pub group: String,
    pub presentation: String,
    pub config: String,
    pub symbols: Vec<SymbolJson>,
    pub zero_symbols: Vec<String>,
    pub normal_symbols: Vec<String>,
    pub zero_pattern: Vec<Vec<bool>>,
    pub basis: Vec<Vec<TermJson>>,
    pub assumptions: Vec<AssumptionJson>,
    /// What the assumption stage added beyond the derived stage.
    pub assumption_dependent: AssumptionDelta,
    pub structure: Option<StructureReport>,
    pub saturation_complete: bool,
    pub oracle_check: Option<String>,
    pub counters: Counters,
}

pub fn relation_to_json(p: &NcPoly<Rat>, f: &FundamentalMatrix) -> Vec<TermJson> {
    p.terms()
        .iter()
        .map(|(m, c)| TermJson {
            coef: c.render(),
            mono: m
                .iter()
                .map(|&l| {
                    let (r, c) = f.alphabet.gens[l.gen()].pos.expect("matrix letter");
                    (r + 1, c + 1, l.starred())
                })
                .collect(),
        })
        .collect()
}

fn names(store: &RelationStore<Rat>, set: &std::collections::BTreeSet<usize>) -> Vec<String> {
    set.iter().map(|&g| store.alphabet.gens[g].name.clone()).collect()
}

pub fn build_report(
    p: &GroupPresentation,
    cfg: &RunConfig,
    result: &PipelineResult,
    pattern: &ZeroPattern,
    structure: Option<StructureReport>,
    oracle_check: Option<String>,
) -> RunReport {
    let f = &result.matrix;
    let store = &result.full;
    let derived = &result.derived;
    let dep_zero: Vec<String> = store
        .zero_symbols
        .difference(&derived.zero_symbols)
        .map(|&g| store.alphabet.gens[g].name.clone())
        .collect();
    let dep_normal: Vec<String> = store
        .normal_flags
        .difference(&derived.normal_flags)
        .map(|&g| store.alphabet.gens[g].name.clone())
        .collect();
    RunReport {
        schema: "report.v1".into(),
        digest: digest(p, cfg),
        group: p.name.clone(),
        presentation: p.render(),
        config: cfg.canonical_line(),
        symbols: f
            .alphabet
            .gens
            .iter()
            .map(|g| {
                let (r, c) = g.pos.expect("matrix letter");
                SymbolJson { name: g.name.clone(), row: r + 1, col: c + 1 }
            })
            .collect(),
        zero_symbols: names(store, &store.zero_symbols),
        normal_symbols: names(store, &store.normal_flags),
        zero_pattern: pattern.zero.clone(),
        basis: store.basis().iter().map(|q| relation_to_json(q, f)).collect(),
        assumptions: store
            .assumptions
            .iter()
            .map(|(q, prov)| AssumptionJson {
                relation: q.render(&store.alphabet),
                provenance: prov.clone(),
            })
            .collect(),
        assumption_dependent: AssumptionDelta {
            zero_symbols: dep_zero,
            normal_symbols: dep_normal,
            basis_added: store.basis_len().saturating_sub(derived.basis_len()),
        },
        structure,
        saturation_complete: store.complete,
        oracle_check,
        counters: Counters {
            saturation_rounds: store.counters.rounds,
            reductions: store.counters.reductions,
            s_polynomials: store.counters.spolys,
            relations_added: store.counters.added,
            degree_skips: store.counters.degree_skips,
            basis_size: store.basis_len(),
            parked: store.parked.len(),
        },
    }
}

/// Reduced fundamental matrix in the block layout the examples print.
pub fn render_matrix(store: &RelationStore<Rat>, f: &FundamentalMatrix) -> String {
    let mut rows = Vec::new();
    let mut width = 1;
    let mut cells = vec![vec![String::new(); f.size]; f.size];
    for i in 0..f.size {
        for j in 0..f.size {
            let l = f.entry(i, j);
            let cell = if store.reduces_to_zero(&NcPoly::letter(l)) {
                "0".to_string()
            } else {
                f.alphabet.letter_name(l)
            };
            width = width.max(cell.len());
            cells[i][j] = cell;
        }
    }
    for row in cells {
        let padded: Vec<String> = row.into_iter().map(|c| format!("{c:>width$}")).collect();
        rows.push(format!("[ {} ]", padded.join(" ")));
    }
    rows.join("\n")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::parse_presentation;

    #[test]
    fn digest_is_stable_and_sensitive() {
        let p = parse_presentation(
            "group z9z3\ngenerators g h\nrelations g^9 = 1, h^3 = 1, h^-1 g h = g^4\nbackend semidirect(9,3,4)\n",
        )
        .unwrap();
        let cfg = RunConfig::default();
        let d1 = digest(&p, &cfg);
        assert_eq!(d1, digest(&p, &cfg));
        assert_eq!(d1.len(), 64);
        let mut cfg2 = cfg.clone();
        cfg2.degree_bound = 5;
        assert_ne!(d1, digest(&p, &cfg2));
        // worker count does not change the digest
        let mut cfg3 = cfg.clone();
        cfg3.workers = 8;
        assert_eq!(d1, digest(&p, &cfg3));
    }
}
