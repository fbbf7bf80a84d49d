//! Command line front end: build and cache category data, list structures,
//! compute invariants and refined tables, query TQFT dimensions, and run the
//! identity checks.

use clap::{Parser, Subcommand};
use redskein::category::{self, cache, CategoryData, Mode};
use redskein::dims::{count_colorings, verlinde_dim, SpineSpec};
use redskein::invariants::{refined_table, tau};
use redskein::manifolds::{structures, PlumbingForest, StructureKind};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "redskein", version, about = "Reduced SU(N,K) categories and refined invariants of plumbed 3-manifolds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build (or load from cache) the category tables and dump them
    Category {
        #[arg(long)]
        rank: usize,
        #[arg(long)]
        level: usize,
        #[arg(long)]
        mode: Mode,
        /// Required when several (alpha, beta) factorizations are valid
        #[arg(long)]
        alpha: Option<u64>,
        #[arg(long)]
        json: bool,
        /// Cache directory (default: $SKEIN_CACHE_DIR when set)
        #[arg(long)]
        cache_dir: Option<PathBuf>,
    },
    /// List spin^d or cohomology structures of a manifold presentation
    Structures {
        #[arg(long)]
        manifold: PathBuf,
        #[arg(long)]
        rank: usize,
        #[arg(long)]
        level: usize,
        #[arg(long)]
        mode: Mode,
        #[arg(long)]
        json: bool,
    },
    /// Compute tau(M) and optionally the full refined table
    Invariant {
        #[arg(long)]
        manifold: PathBuf,
        #[arg(long)]
        rank: usize,
        #[arg(long)]
        level: usize,
        #[arg(long)]
        mode: Mode,
        #[arg(long)]
        alpha: Option<u64>,
        #[arg(long)]
        refined: bool,
        #[arg(long)]
        json: bool,
    },
    /// TQFT vector-space dimension for a genus-g surface
    Dims {
        #[arg(long)]
        rank: usize,
        #[arg(long)]
        level: usize,
        #[arg(long, default_value = "spin")]
        mode: Mode,
        #[arg(long)]
        alpha: Option<u64>,
        #[arg(long)]
        genus: usize,
        /// Comma-separated per-loop gradings, e.g. 0,1
        #[arg(long)]
        grading: Option<String>,
    },
    /// Run the identity suite and the Verlinde consistency check
    Check {
        #[arg(long)]
        rank: usize,
        #[arg(long)]
        level: usize,
        #[arg(long)]
        mode: Mode,
        #[arg(long)]
        alpha: Option<u64>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json_mode = match &cli.command {
        Command::Category { json, .. }
        | Command::Structures { json, .. }
        | Command::Invariant { json, .. } => *json,
        _ => false,
    };
    match run(cli.command) {
        Ok(code) => code,
        Err(msg) => {
            if json_mode {
                eprintln!("{}", serde_json::json!({ "error": msg }));
            } else {
                eprintln!("error: {msg}");
            }
            ExitCode::from(1)
        }
    }
}

fn build(
    rank: usize,
    level: usize,
    mode: Mode,
    alpha: Option<u64>,
) -> Result<CategoryData, String> {
    let params = category::build_params(rank, level, mode, alpha).map_err(|e| e.to_string())?;
    category::build_category(&params).map_err(|e| e.to_string())
}

fn build_cached(
    rank: usize,
    level: usize,
    mode: Mode,
    alpha: Option<u64>,
    cache_dir: Option<PathBuf>,
) -> Result<(CategoryData, serde_json::Value), String> {
    let cache_dir = cache_dir.or_else(|| std::env::var_os("SKEIN_CACHE_DIR").map(PathBuf::from));
    let file = cache_dir.as_ref().map(|d| {
        d.join(format!(
            "category_N{rank}_K{level}_{mode}{}.json",
            alpha.map(|a| format!("_a{a}")).unwrap_or_default()
        ))
    });
    if let Some(path) = &file {
        if let Ok(text) = std::fs::read_to_string(path) {
            let value: serde_json::Value =
                serde_json::from_str(&text).map_err(|e| format!("corrupt cache {path:?}: {e}"))?;
            let data = cache::from_json(&value).map_err(|e| e.to_string())?;
            let p = data.params();
            let alpha_ok = alpha.map(|a| a == p.alpha).unwrap_or(true);
            if p.n != rank || p.k != level || p.mode != mode || !alpha_ok {
                return Err(format!("cache {path:?} does not match the requested theory"));
            }
            let dumped = cache::to_json(&data);
            return Ok((data, dumped));
        }
    }
    let data = build(rank, level, mode, alpha)?;
    let dumped = cache::to_json(&data);
    if let Some(path) = &file {
        if let Some(dir) = path.parent() {
            std::fs::create_dir_all(dir).map_err(|e| e.to_string())?;
        }
        let text = serde_json::to_string_pretty(&dumped).map_err(|e| e.to_string())?;
        std::fs::write(path, text).map_err(|e| e.to_string())?;
    }
    Ok((data, dumped))
}

fn load_manifold(path: &PathBuf) -> Result<PlumbingForest, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read {path:?}: {e}"))?;
    PlumbingForest::from_json(&text).map_err(|e| e.to_string())
}

fn run(cmd: Command) -> Result<ExitCode, String> {
    match cmd {
        Command::Category { rank, level, mode, alpha, json, cache_dir } => {
            let (data, dumped) = build_cached(rank, level, mode, alpha, cache_dir)?;
            if json {
                println!("{}", serde_json::to_string_pretty(&dumped).map_err(|e| e.to_string())?);
            } else {
                let p = data.params();
                println!(
                    "reduced SU({},{}) {} theory: d = {}, alpha = {}, beta = {}, M = {}, s = zeta^{}, a = zeta^{}",
                    p.n, p.k, p.mode, p.d, p.alpha, p.beta, p.m, p.s_exp, p.a_exp
                );
                println!("{} simple objects; eta^-2 = {}", data.colors().len(), data.eta_squared_inverse());
                println!("delta = {}", data.delta());
                for x in 0..data.colors().len() {
                    println!(
                        "  {:>14}  grading {}  qdim {}  twist zeta^{}  dual {}",
                        format!("{}", data.colors()[x]),
                        data.grading(x),
                        data.qdim(x),
                        data.twist_exponent(x),
                        data.colors()[data.dual(x)]
                    );
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Structures { manifold, rank, level, mode, json } => {
            let forest = load_manifold(&manifold)?;
            let params = category::build_params(rank, level, mode, None).map_err(|e| e.to_string())?;
            let kind = match mode {
                Mode::Spin => StructureKind::SpinD,
                Mode::Coh => StructureKind::Cohomology,
            };
            let (list, sols) = structures(&forest, params.d, kind).map_err(|e| e.to_string())?;
            if json {
                let out = serde_json::json!({
                    "d": params.d,
                    "kind": match kind { StructureKind::SpinD => "spin_d", StructureKind::Cohomology => "cohomology" },
                    "count": list.len(),
                    "base": sols.base,
                    "kernel": sols.kernel,
                    "structures": list.iter().map(|s| serde_json::to_value(&s.values).unwrap()).collect::<Vec<_>>(),
                });
                println!("{}", serde_json::to_string_pretty(&out).map_err(|e| e.to_string())?);
            } else {
                println!("{} structures mod {}", list.len(), params.d);
                for s in &list {
                    let vals: Vec<String> =
                        s.values.iter().map(|(k, v)| format!("{k}={v}")).collect();
                    println!("  {}", vals.join(" "));
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Invariant { manifold, rank, level, mode, alpha, refined, json } => {
            let forest = load_manifold(&manifold)?;
            let data = build(rank, level, mode, alpha)?;
            if refined {
                let table = refined_table(&data, &forest).map_err(|e| e.to_string())?;
                if json {
                    let out = serde_json::json!({
                        "tau": table.tau.to_json(),
                        "refined": table.entries.iter().map(|e| serde_json::json!({
                            "s": e.s.values,
                            "h": e.h.values,
                            "value": e.value.to_json(),
                        })).collect::<Vec<_>>(),
                        "checks": {
                            "transfer": if table.transfer_ok { "pass" } else { "fail" },
                            "decomposition": if table.decomposition_ok { "pass" } else { "fail" },
                        },
                    });
                    println!("{}", serde_json::to_string_pretty(&out).map_err(|e| e.to_string())?);
                } else {
                    println!("tau = {}", table.tau);
                    for (s, v) in &table.refined_tau {
                        println!("  tau(M, s={:?}) = {v}", s.values.values().collect::<Vec<_>>());
                    }
                    println!("tv = {}", table.tv);
                    println!(
                        "checks: transfer {}, decomposition {}",
                        if table.transfer_ok { "pass" } else { "fail" },
                        if table.decomposition_ok { "pass" } else { "fail" }
                    );
                }
                if !(table.transfer_ok && table.decomposition_ok) {
                    return Err("refined table consistency checks failed".to_string());
                }
            } else {
                let v = tau(&data, &forest);
                if json {
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&serde_json::json!({ "tau": v.to_json() }))
                            .map_err(|e| e.to_string())?
                    );
                } else {
                    println!("tau = {v}");
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Dims { rank, level, mode, alpha, genus, grading } => {
            let data = build(rank, level, mode, alpha)?;
            let spec = match grading {
                None => SpineSpec::ungraded(genus),
                Some(text) => {
                    let z: Result<Vec<u64>, _> =
                        text.split(',').map(|t| t.trim().parse::<u64>()).collect();
                    SpineSpec::graded(genus, z.map_err(|e| format!("bad grading vector: {e}"))?)
                }
            };
            let n = if spec.grading.is_some() {
                count_colorings(&data, &spec).map_err(|e| e.to_string())?
            } else {
                verlinde_dim(&data, genus).map_err(|e| e.to_string())?
            };
            println!("{n}");
            Ok(ExitCode::SUCCESS)
        }
        Command::Check { rank, level, mode, alpha } => {
            let data = build(rank, level, mode, alpha)?;
            let report = data.identity_suite();
            let mut ok = true;
            for c in &report.checks {
                println!("{}: {} ({})", c.name, if c.passed { "pass" } else { "FAIL" }, c.detail);
                ok &= c.passed;
            }
            let verlinde = data.verlinde_fusion_check();
            println!("verlinde-fusion: {}", if verlinde { "pass" } else { "FAIL" });
            ok &= verlinde;
            for genus in 0..=4 {
                match verlinde_dim(&data, genus) {
                    Ok(n) => println!("verlinde-dim g={genus}: pass (= {n})"),
                    Err(e) => {
                        println!("verlinde-dim g={genus}: FAIL ({e})");
                        ok = false;
                    }
                }
            }
            println!(
                "calibration: a = zeta^{}, mu = zeta^{}, {} surviving convention(s)",
                data.params().a_exp,
                data.mu_exponent(),
                data.calibration_survivors().len()
            );
            if ok {
                Ok(ExitCode::SUCCESS)
            } else {
                Err("identity checks failed".to_string())
            }
        }
    }
}
