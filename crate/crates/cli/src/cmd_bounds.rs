//! The `bounds` and `table` commands.

use crate::records::{emit, Record};
use crate::{CliError, GlobalOpts};
use clap::{Args, Subcommand};
use sphaerica::bounds::{self, BoundName, Method};
use std::path::PathBuf;

#[derive(Debug, Subcommand)]
pub enum BoundsCmd {
    /// Packing-density upper bound for N congruent caps.
    FtPacking {
        #[arg(long)]
        n: u32,
    },
    /// Covering-density lower bound for N congruent caps.
    FtCovering {
        #[arg(long)]
        n: u32,
    },
    /// Code-size upper bound 2π/Δ(φ) + 2 on the 2-sphere.
    FtCode {
        #[arg(long, value_parser = crate::angle_arg)]
        phi: f64,
    },
    /// Coxeter–Böröczky bound on A(n, φ) by recursive quadrature.
    Coxeter {
        #[arg(long)]
        n: u32,
        #[arg(long, value_parser = crate::angle_arg)]
        phi: f64,
    },
    /// Goldberg–Fejes Tóth IQ bound for f faces.
    Goldberg {
        #[arg(long)]
        f: u32,
    },
    /// Fejes Tóth's vertex conjecture evaluator (open problem).
    ConjectureVertex {
        #[arg(long)]
        v: u32,
    },
    /// Fejes Tóth's edge conjecture evaluator (open problem).
    ConjectureEdge {
        #[arg(long)]
        f: u32,
        #[arg(long)]
        v: u32,
        #[arg(long)]
        e: u32,
    },
    /// Kissing function κ(d) of a spherical cap of diameter d.
    Kappa {
        #[arg(long, value_parser = crate::angle_arg)]
        d: f64,
    },
    /// One-sided kissing average (k(n−1) + k(n))/2.
    Kbar {
        #[arg(long)]
        n: u32,
        /// Extra kissing-table records (JSON lines {n, k, provenance}).
        #[arg(long)]
        table: Option<PathBuf>,
    },
    /// Value of the Schläfli-type recursion F_n(α).
    Schlafli {
        #[arg(long)]
        n: u32,
        #[arg(long, value_parser = crate::angle_arg)]
        alpha: f64,
    },
}

pub fn run(global: &GlobalOpts, cmd: BoundsCmd) -> Result<(), CliError> {
    let record = match cmd {
        BoundsCmd::FtPacking { n } => {
            let v = bounds::ft_packing_bound(n)?;
            Record::new("bound")
                .s("name", BoundName::FtPacking.as_str())
                .u("n", n as u64)
                .f("value", v)
                .s("method", Method::ClosedForm.as_str())
                .f("error_estimate", 0.0)
        }
        BoundsCmd::FtCovering { n } => {
            let v = bounds::ft_covering_bound(n)?;
            Record::new("bound")
                .s("name", BoundName::FtCovering.as_str())
                .u("n", n as u64)
                .f("value", v)
                .s("method", Method::ClosedForm.as_str())
                .f("error_estimate", 0.0)
        }
        BoundsCmd::FtCode { phi } => {
            let v = bounds::ft_code_bound(phi)?;
            Record::new("bound")
                .s("name", BoundName::FtCode.as_str())
                .f("phi", phi)
                .f("value", v)
                .i("floor", bounds::integer_bound(v))
                .s("method", Method::ClosedForm.as_str())
                .f("error_estimate", 0.0)
        }
        BoundsCmd::Coxeter { n, phi } => {
            let b = bounds::coxeter_bound(n, phi)?;
            Record::new("bound")
                .s("name", BoundName::Coxeter.as_str())
                .u("n", n as u64)
                .f("phi", phi)
                .f("alpha", b.alpha)
                .f("value", b.value)
                .i("floor", b.integer())
                .s("method", Method::Quadrature.as_str())
                .f("error_estimate", b.error_estimate)
        }
        BoundsCmd::Goldberg { f } => {
            let v = bounds::goldberg_ft_rhs(f)?;
            Record::new("bound")
                .s("name", BoundName::GoldbergFt.as_str())
                .u("f", f as u64)
                .f("value", v)
                .s("method", Method::ClosedForm.as_str())
                .f("error_estimate", 0.0)
        }
        BoundsCmd::ConjectureVertex { v } => {
            let c = bounds::ft_vertex_conjecture_rhs(v)?;
            Record::new("bound")
                .s("name", BoundName::FtVertexConj.as_str())
                .u("v", v as u64)
                .f("value", c.f3_over_v2)
                .f("iq_ceiling", c.iq_ceiling)
                .s("method", Method::ClosedForm.as_str())
                .f("error_estimate", 0.0)
                .s("status", "conjectured bound")
        }
        BoundsCmd::ConjectureEdge { f, v, e } => {
            let c = bounds::ft_edge_conjecture_rhs(f, v, e)?;
            Record::new("bound")
                .s("name", BoundName::FtEdgeConj.as_str())
                .u("f", f as u64)
                .u("v", v as u64)
                .u("e", e as u64)
                .f("value", c.f3_over_v2)
                .f("iq_ceiling", c.iq_ceiling)
                .s("method", Method::ClosedForm.as_str())
                .f("error_estimate", 0.0)
                .s("status", "conjectured bound")
        }
        BoundsCmd::Kappa { d } => {
            let k = bounds::kappa(d)?;
            Record::new("bound")
                .s("name", "kappa")
                .f("d", d)
                .u("value", k as u64)
                .s("method", Method::ClosedForm.as_str())
                .f("error_estimate", 0.0)
        }
        BoundsCmd::Kbar { n, table } => {
            let mut t = bounds::KissingTable::default();
            if let Some(path) = table {
                let file = std::fs::File::open(&path).map_err(|e| {
                    CliError::Failure(format!("cannot open {}: {e}", path.display()))
                })?;
                t.load_records(std::io::BufReader::new(file))?;
            }
            let v = bounds::kbar(&t, n)?;
            Record::new("bound")
                .s("name", "kbar")
                .u("n", n as u64)
                .f("value", v)
                .s("method", Method::ClosedForm.as_str())
                .f("error_estimate", 0.0)
        }
        BoundsCmd::Schlafli { n, alpha } => {
            let v = bounds::schlafli_f(n, alpha)?;
            Record::new("bound")
                .s("name", "schlafli_f")
                .u("n", n as u64)
                .f("alpha", alpha)
                .f("value", v.value)
                .b("below_domain", v.below_domain)
                .s("method", Method::Quadrature.as_str())
                .f("error_estimate", v.error_estimate)
        }
    };
    emit(&[record], global.format());
    Ok(())
}

#[derive(Debug, Args)]
pub struct TableArgs {
    /// Extra kissing-table records to merge (JSON lines {n, k, provenance}).
    #[arg(long)]
    file: Option<PathBuf>,
}

pub fn run_table(global: &GlobalOpts, args: TableArgs) -> Result<(), CliError> {
    let mut t = bounds::KissingTable::default();
    if let Some(path) = args.file {
        let file = std::fs::File::open(&path)
            .map_err(|e| CliError::Failure(format!("cannot open {}: {e}", path.display())))?;
        t.load_records(std::io::BufReader::new(file))?;
    }
    let records: Vec<Record> = t
        .entries()
        .map(|e| {
            Record::new("kissing")
                .u("n", e.n as u64)
                .u("k", e.k)
                .s(
                    "provenance",
                    match e.provenance {
                        bounds::Provenance::Exact => "exact",
                        bounds::Provenance::Bound => "bound",
                    },
                )
        })
        .collect();
    emit(&records, global.format());
    Ok(())
}
