//! The `optimize` and `replay` commands: seeded searches with reproducible
//! file outputs and a run manifest.

use crate::records::{emit, Record};
use crate::{CliError, GlobalOpts};
use clap::{Args, Subcommand};
use serde::{Deserialize, Serialize};
use sphaerica::contacts;
use sphaerica::io;
use sphaerica::optimize::{
    antipodal_solve, hemisphere_code_search, max_contacts, tammes_solve, OptimizerConfig,
    TammesResult,
};
use std::path::{Path, PathBuf};
use std::time::Instant;

#[derive(Debug, Clone, Args)]
pub struct RunOpts {
    /// Restart count override.
    #[arg(long)]
    restarts: Option<u32>,
    /// Iterations per restart override.
    #[arg(long)]
    iterations: Option<u32>,
    /// Output directory (created if missing).
    #[arg(long)]
    out: Option<PathBuf>,
    /// TOML file overriding optimizer defaults.
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum OptimizeCmd {
    /// Tammes search: maximize the minimum distance of N points.
    Tammes {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        opts: RunOpts,
    },
    /// Antipodal code search over M representative pairs.
    Antipodal {
        #[arg(long)]
        m: usize,
        #[command(flatten)]
        opts: RunOpts,
    },
    /// Closed-hemisphere code search toward a target distance.
    Hemisphere {
        #[arg(long)]
        count: usize,
        #[arg(long, value_parser = crate::angle_arg)]
        target: f64,
        #[command(flatten)]
        opts: RunOpts,
    },
    /// Maximize the number of touching pairs of N caps.
    MaxContacts {
        #[arg(long)]
        n: usize,
        /// Fixed contact diameter (otherwise co-optimized over a grid).
        #[arg(long, value_parser = crate::angle_arg)]
        d: Option<f64>,
        #[command(flatten)]
        opts: RunOpts,
    },
}

/// Partial optimizer configuration from a TOML file.
#[derive(Debug, Default, Deserialize)]
struct ConfigFile {
    restarts: Option<u32>,
    iterations_per_restart: Option<u32>,
    softmin_beta_schedule: Option<Vec<f64>>,
    step_schedule: Option<Vec<f64>>,
    convergence_tol: Option<f64>,
    contact_epsilon_schedule: Option<Vec<f64>>,
    contact_grid: Option<u32>,
}

fn build_config(seed: u64, opts: &RunOpts) -> Result<OptimizerConfig, CliError> {
    let mut cfg = OptimizerConfig {
        master_seed: seed,
        ..Default::default()
    };
    if let Some(path) = &opts.config {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Failure(format!("cannot read {}: {e}", path.display())))?;
        let file: ConfigFile = toml::from_str(&text)
            .map_err(|e| CliError::Usage(format!("bad config {}: {e}", path.display())))?;
        if let Some(v) = file.restarts {
            cfg.restarts = v;
        }
        if let Some(v) = file.iterations_per_restart {
            cfg.iterations_per_restart = v;
        }
        if let Some(v) = file.softmin_beta_schedule {
            cfg.softmin_beta_schedule = v;
        }
        if let Some(v) = file.step_schedule {
            cfg.step_schedule = v;
        }
        if let Some(v) = file.convergence_tol {
            cfg.convergence_tol = v;
        }
        if let Some(v) = file.contact_epsilon_schedule {
            cfg.contact_epsilon_schedule = v;
        }
        if let Some(v) = file.contact_grid {
            cfg.contact_grid = v;
        }
    }
    if let Some(v) = opts.restarts {
        cfg.restarts = v;
    }
    if let Some(v) = opts.iterations {
        cfg.iterations_per_restart = v;
    }
    Ok(cfg)
}

/// Everything needed to reproduce a run byte-for-byte.
#[derive(Debug, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: String,
    pub params: serde_json::Value,
    pub config: OptimizerConfig,
    pub master_seed: u64,
    pub outputs: Vec<String>,
    pub wall_time_s: f64,
    pub tool_version: String,
}

struct RunOutcome {
    result: TammesResult,
    records: Vec<Record>,
    command: String,
    params: serde_json::Value,
}

fn execute(cmd: &OptimizeCmd, cfg: &OptimizerConfig, tol: f64) -> Result<RunOutcome, CliError> {
    match cmd {
        OptimizeCmd::Tammes { n, .. } => {
            let r = tammes_solve(*n, cfg)?;
            let rec = Record::new("tammes")
                .u("n", *n as u64)
                .f("psi", r.psi)
                .u("best_restart", r.best_restart as u64)
                .opt_f("certificate", r.certificate);
            Ok(RunOutcome {
                records: vec![rec],
                command: "optimize tammes".into(),
                params: serde_json::json!({ "n": n }),
                result: r,
            })
        }
        OptimizeCmd::Antipodal { m, .. } => {
            let r = antipodal_solve(*m, cfg)?;
            let rec = Record::new("antipodal")
                .u("m", *m as u64)
                .u("points", r.code.len() as u64)
                .f("psi", r.psi)
                .u("best_restart", r.best_restart as u64)
                .opt_f("certificate", r.certificate);
            Ok(RunOutcome {
                records: vec![rec],
                command: "optimize antipodal".into(),
                params: serde_json::json!({ "m": m }),
                result: r,
            })
        }
        OptimizeCmd::Hemisphere { count, target, .. } => {
            let out = hemisphere_code_search(*count, *target, cfg)?;
            let rec = Record::new("hemisphere")
                .u("count", *count as u64)
                .f("target", *target)
                .f("psi", out.result.psi)
                .b("feasible", out.feasible)
                .u("best_restart", out.result.best_restart as u64);
            Ok(RunOutcome {
                records: vec![rec],
                command: "optimize hemisphere".into(),
                params: serde_json::json!({ "count": count, "target": target }),
                result: out.result,
            })
        }
        OptimizeCmd::MaxContacts { n, d, .. } => {
            let out = max_contacts(*n, *d, cfg)?;
            let rec = Record::new("max_contacts")
                .u("n", *n as u64)
                .opt_f("d_requested", *d)
                .f("contact_distance", out.contact_distance)
                .u("contacts", out.contact_count as u64)
                .f("psi", out.result.psi)
                .u("best_restart", out.result.best_restart as u64);
            let _ = tol;
            Ok(RunOutcome {
                records: vec![rec],
                command: "optimize max-contacts".into(),
                params: serde_json::json!({ "n": n, "d": d }),
                result: out.result,
            })
        }
    }
}

fn default_out_dir(command: &str, params: &serde_json::Value, seed: u64) -> PathBuf {
    let mut slug = command.replace(' ', "-");
    if let Some(obj) = params.as_object() {
        for (k, v) in obj {
            if !v.is_null() {
                slug.push_str(&format!("-{k}{v}"));
            }
        }
    }
    PathBuf::from(format!("{slug}-seed{seed}"))
}

fn write_outputs(
    dir: &Path,
    outcome: &RunOutcome,
    cfg: &OptimizerConfig,
    tol: f64,
    elapsed_s: f64,
) -> Result<Vec<String>, CliError> {
    std::fs::create_dir_all(dir)
        .map_err(|e| CliError::Failure(format!("cannot create {}: {e}", dir.display())))?;
    let mut outputs = Vec::new();

    io::save_point_set(&dir.join("points.json"), &outcome.result.code)?;
    outputs.push("points.json".to_string());

    match contacts::build_contact_graph(&outcome.result.code, tol) {
        Ok(graph) => {
            io::save_graph(&dir.join("graph.json"), &graph)?;
            outputs.push("graph.json".to_string());
        }
        Err(e) => {
            // A failed graph export is not fatal to the run itself.
            eprintln!("note: contact graph export skipped: {e}");
        }
    }

    let manifest = RunManifest {
        command: outcome.command.clone(),
        params: outcome.params.clone(),
        config: cfg.clone(),
        master_seed: cfg.master_seed,
        outputs: outputs.clone(),
        wall_time_s: elapsed_s,
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
    };
    let text = serde_json::to_string_pretty(&manifest).expect("manifest serializes");
    std::fs::write(dir.join("manifest.json"), text + "\n")
        .map_err(|e| CliError::Failure(format!("cannot write manifest: {e}")))?;
    outputs.push("manifest.json".to_string());
    Ok(outputs)
}

pub fn run(global: &GlobalOpts, cmd: OptimizeCmd) -> Result<(), CliError> {
    let seed = global.require_seed()?;
    let opts = match &cmd {
        OptimizeCmd::Tammes { opts, .. }
        | OptimizeCmd::Antipodal { opts, .. }
        | OptimizeCmd::Hemisphere { opts, .. }
        | OptimizeCmd::MaxContacts { opts, .. } => opts.clone(),
    };
    let cfg = build_config(seed, &opts)?;
    let tol = global.tol.unwrap_or(1e-6);
    let started = Instant::now();
    let outcome = execute(&cmd, &cfg, tol)?;
    let elapsed = started.elapsed().as_secs_f64();

    let dir = opts
        .out
        .clone()
        .unwrap_or_else(|| default_out_dir(&outcome.command, &outcome.params, seed));
    let outputs = write_outputs(&dir, &outcome, &cfg, tol, elapsed)?;

    let mut records = outcome.records;
    records.push(
        Record::new("run")
            .s("command", outcome.command.clone())
            .u("seed", seed)
            .s("out_dir", dir.display().to_string())
            .s("outputs", outputs.join(",")),
    );
    emit(&records, global.format());
    Ok(())
}

#[derive(Debug, Args)]
pub struct ReplayArgs {
    /// Manifest of a previous run.
    manifest: PathBuf,
    /// Directory for the replayed outputs.
    #[arg(long)]
    out: PathBuf,
}

/// Re-run the command recorded in a manifest; outputs are bit-identical to
/// the original run.
pub fn run_replay(global: &GlobalOpts, args: ReplayArgs) -> Result<(), CliError> {
    let text = std::fs::read_to_string(&args.manifest)
        .map_err(|e| CliError::Failure(format!("cannot read {}: {e}", args.manifest.display())))?;
    let manifest: RunManifest = serde_json::from_str(&text)
        .map_err(|e| CliError::Usage(format!("bad manifest: {e}")))?;
    let params = &manifest.params;
    let opts = RunOpts {
        restarts: None,
        iterations: None,
        out: Some(args.out.clone()),
        config: None,
    };
    let cmd = match manifest.command.as_str() {
        "optimize tammes" => OptimizeCmd::Tammes {
            n: params["n"].as_u64().unwrap_or(0) as usize,
            opts,
        },
        "optimize antipodal" => OptimizeCmd::Antipodal {
            m: params["m"].as_u64().unwrap_or(0) as usize,
            opts,
        },
        "optimize hemisphere" => OptimizeCmd::Hemisphere {
            count: params["count"].as_u64().unwrap_or(0) as usize,
            target: params["target"].as_f64().unwrap_or(0.0),
            opts,
        },
        "optimize max-contacts" => OptimizeCmd::MaxContacts {
            n: params["n"].as_u64().unwrap_or(0) as usize,
            d: params["d"].as_f64(),
            opts,
        },
        other => {
            return Err(CliError::Usage(format!(
                "manifest records unknown command {other:?}"
            )))
        }
    };
    let tol = global.tol.unwrap_or(1e-6);
    let started = Instant::now();
    let outcome = execute(&cmd, &manifest.config, tol)?;
    let elapsed = started.elapsed().as_secs_f64();
    write_outputs(&args.out, &outcome, &manifest.config, tol, elapsed)?;
    let mut records = outcome.records;
    records.push(
        Record::new("replay")
            .s("command", outcome.command.clone())
            .s("out_dir", args.out.display().to_string()),
    );
    emit(&records, global.format());
    Ok(())
}
