//! qig: derive and recognize quantum isometry group structure for duals of
//! finitely presented groups.

use clap::{Parser, Subcommand};
use qig_cli::{cache_dir, derive_report, run_oracle_check, wreath_check, CliError};
use qig_cli::write_atomic;
use qig_core::engine::run_pipeline;
use qig_core::presentation::parse_presentation;
use qig_core::recognize::{candidate_from_generator_map, recognize_structure, zero_pattern};
use qig_core::report::{build_report, render_matrix, RunConfig};
use qig_core::wreath;
use qig_core::word::Backend;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "qig", version, about = "quantum isometry groups of group duals")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(clap::Args, Clone)]
struct CommonOpts {
    /// Saturation degree bound.
    #[arg(long, default_value_t = 6)]
    degree_bound: usize,
    /// Saturation and expansion round cap.
    #[arg(long, default_value_t = 8)]
    rounds: usize,
    /// Relation count cap.
    #[arg(long, default_value_t = 200_000)]
    relation_cap: usize,
    /// Word-length cap for action expansions.
    #[arg(long, default_value_t = 6)]
    expansion_cap: usize,
    /// Length cap for enumerated relator consequences.
    #[arg(long, default_value_t = 4)]
    derive_cap: usize,
    /// Worker threads for batch reduction steps.
    #[arg(long, default_value_t = 1)]
    workers: usize,
    /// Cache directory (QIG_CACHE env overrides the default .qig-cache).
    #[arg(long)]
    cache_dir: Option<PathBuf>,
}

impl CommonOpts {
    fn config(&self) -> RunConfig {
        RunConfig {
            degree_bound: self.degree_bound,
            round_cap: self.rounds,
            relation_cap: self.relation_cap,
            expansion_cap: self.expansion_cap,
            derive_cap: self.derive_cap,
            oracle_check: false,
            workers: self.workers,
            cache_dir: self.cache_dir.clone(),
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Run the full derivation pipeline on a presentation file.
    Derive {
        file: PathBuf,
        /// Cross-check backend balls against the presentation-only oracle.
        #[arg(long)]
        oracle_check: bool,
        /// Write the JSON report here as well as to the cache.
        #[arg(long)]
        json: Option<PathBuf>,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Re-run structure recognition from a cached derive report.
    Recognize {
        digest: String,
        /// Pin an automorphism, e.g. "g->g^-1,h->h".
        #[arg(long)]
        pin: Option<String>,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Verify the free wreath product description of Q(Z_s * ... * Z_s).
    WreathCheck {
        #[arg(long)]
        s: u32,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        json: Option<PathBuf>,
        #[command(flatten)]
        common: CommonOpts,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    match cli.cmd {
        Cmd::Derive { file, oracle_check, json, common } => {
            let mut cfg = common.config();
            cfg.oracle_check = oracle_check;
            let text = std::fs::read_to_string(&file).map_err(|e| CliError::Io(e.to_string()))?;
            let p = parse_presentation(&text)
                .map_err(|e| CliError::Parse(format!("{}: {e}", file.display())))?;
            let b = Backend::new(&p)?;
            let t0 = std::time::Instant::now();
            let res = run_pipeline(&p, &b, &cfg.pipeline())?;
            for d in &res.diagnostics {
                eprintln!("{}", serde_json::json!({"event": "diagnostic", "detail": d}));
            }
            let oracle_note = if oracle_check { Some(run_oracle_check(&p, &b)?) } else { None };
            let structure =
                recognize_structure(&res.full, &res.matrix, &p, &b, &cfg.saturate(), None);
            let pattern = zero_pattern(&res.full, &res.matrix);
            let report = build_report(&p, &cfg, &res, &pattern, Some(structure), oracle_note);
            eprintln!("derive completed in {:?}", t0.elapsed());

            let bytes =
                serde_json::to_vec_pretty(&report).map_err(|e| CliError::Io(e.to_string()))?;
            let cache = cache_dir(&cfg).join(format!("{}.json", report.digest));
            write_atomic(&cache, &bytes)?;
            let src = cache_dir(&cfg).join(format!("{}.grp", report.digest));
            write_atomic(&src, p.render().as_bytes())?;
            if let Some(path) = json {
                write_atomic(&path, &bytes)?;
            }

            println!("group {}  digest {}", report.group, report.digest);
            println!("reduced fundamental matrix:");
            println!("{}", render_matrix(&res.full, &res.matrix));
            println!("zero symbols: {}", report.zero_symbols.join(" "));
            println!("normal symbols: {}", report.normal_symbols.join(" "));
            if let Some(s) = &report.structure {
                println!("structure: {:?} ({:?})", s.kind, s.certainty);
                for w in &s.witnesses {
                    println!("  witness: {w}");
                }
            }
            if !report.assumptions.is_empty() {
                println!("assumptions (imported, not derived):");
                for a in &report.assumptions {
                    println!("  {}   [{}]", a.relation, a.provenance);
                }
                println!(
                    "  assumption-dependent zeros {:?} normals {:?} extra relations {}",
                    report.assumption_dependent.zero_symbols,
                    report.assumption_dependent.normal_symbols,
                    report.assumption_dependent.basis_added
                );
            }
            println!(
                "saturation complete: {}  basis: {}  parked: {}",
                report.saturation_complete, report.counters.basis_size, report.counters.parked
            );
            if let Some(o) = &report.oracle_check {
                println!("oracle check: {o}");
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Recognize { digest: dg, pin, common } => {
            let cfg = common.config();
            let src_path = cache_dir(&cfg).join(format!("{dg}.grp"));
            let text = std::fs::read_to_string(&src_path)
                .map_err(|e| CliError::Io(format!("cache miss for digest {dg}: {e}")))?;
            let p = parse_presentation(&text).map_err(|e| CliError::Parse(e.to_string()))?;
            let b = Backend::new(&p)?;
            let pinned = match pin {
                None => None,
                Some(spec) => {
                    let map: Vec<(String, String)> = spec
                        .split(',')
                        .map(|part| {
                            let mut it = part.splitn(2, "->");
                            let from = it.next().unwrap_or("").trim().to_string();
                            let to = it.next().unwrap_or("").trim().to_string();
                            (from, to)
                        })
                        .collect();
                    Some(candidate_from_generator_map(&p, &b, &map).map_err(CliError::Parse)?)
                }
            };
            let report = derive_report(&p, &cfg, false, pinned.as_ref())?;
            println!(
                "{}",
                serde_json::to_string_pretty(&report.structure)
                    .map_err(|e| CliError::Io(e.to_string()))?
            );
            Ok(ExitCode::SUCCESS)
        }
        Cmd::WreathCheck { s, n, json, common } => {
            let cfg = common.config().saturate();
            let out = wreath_check(s, n, &cfg);
            let bytes =
                serde_json::to_vec_pretty(&out).map_err(|e| CliError::Io(e.to_string()))?;
            if let Some(path) = json {
                write_atomic(&path, &bytes)?;
            }
            println!("{}", String::from_utf8_lossy(&bytes));
            let all_true =
                out.checks.iter().all(|c| c.outcome.verdict == wreath::Verdict::True);
            if out.caveat || all_true {
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::from(3))
            }
        }
    }
}

