//! Command-line front end. `main` only calls [`run`].

use std::path::PathBuf;
use std::str::FromStr;

use anyhow::{anyhow, Context, Result};
use clap::{Args, Parser, Subcommand};
use groverian_core::Execution;

use crate::config::Config;
use crate::experiments::{self as ex, RunSettings};
use crate::specs::{parse_f64_list, parse_marked, parse_state, parse_usize_list};
use crate::table::write_output;

#[derive(Debug, Parser)]
#[command(
    name = "groverian",
    version,
    about = "Groverian entanglement experiments"
)]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Optimizer restarts per state [default: max(32, 8n)]
    #[arg(long, global = true)]
    pub restarts: Option<usize>,
    /// Optimizer seed (and base seed for random-sweep states)
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Gradient-norm stopping tolerance
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Output CSV path [default: stdout]
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// key=value file; its entries replace the matching flags
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Run restarts and sweeps on one thread
    #[arg(long, global = true)]
    pub sequential: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Groverian measure of one state
    Measure {
        #[arg(long)]
        state: Option<String>,
        /// Also write the optimal product-state angles here
        #[arg(long)]
        angles_out: Option<PathBuf>,
    },
    /// Grover trajectory from a given state
    Grover {
        #[arg(long)]
        state: Option<String>,
        #[arg(long)]
        marked: Option<String>,
        #[arg(long)]
        steps: Option<usize>,
        /// Measure G at every step
        #[arg(long)]
        record_groverian: bool,
    },
    /// P_s and P_max along the eta + GHZ line
    Fig1 {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        grid: Option<usize>,
    },
    /// Numeric vs closed-form G for generalized GHZ states
    Fig2 {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        grid: Option<usize>,
    },
    /// G(t) from even/odd mixtures with one marked state
    Fig3 {
        #[arg(long)]
        n: Option<usize>,
        /// Single marked index
        #[arg(long)]
        marked: Option<usize>,
        /// Comma-separated a_even values
        #[arg(long)]
        a_even: Option<String>,
        #[arg(long)]
        steps: Option<usize>,
    },
    /// G(t) for the marked pairs {0, N-1} and {0, 1}
    Fig4 {
        #[arg(long)]
        n: Option<usize>,
        /// [default: floor(pi/4 sqrt(N/2))]
        #[arg(long)]
        steps: Option<usize>,
    },
    /// G(t) for n marked states: the W support and the prefix {0..n-1}
    Fig5 {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, alias = "steps")]
        horizon: Option<usize>,
    },
    /// P_max and G for Gaussian random states
    RandomSweep {
        /// Comma-separated qubit counts
        #[arg(long)]
        ns: Option<String>,
        /// States per qubit count
        #[arg(long)]
        seeds: Option<usize>,
    },
}

pub const DEFAULT_N: usize = 12;
pub const DEFAULT_GRID: usize = 41;
pub const DEFAULT_FIG3_STEPS: usize = 50;
pub const DEFAULT_SWEEP_NS: &str = "4,6,8,10,12";
pub const DEFAULT_SWEEP_SEEDS: usize = 50;

const COMMON_KEYS: &[&str] = &["restarts", "seed", "tol", "out", "sequential"];

/// Config entries take precedence over flags.
struct Resolver {
    cfg: Config,
}

impl Resolver {
    fn pick<T>(&self, key: &str, flag: Option<T>) -> Result<Option<T>>
    where
        T: FromStr,
        T::Err: std::fmt::Display,
    {
        Ok(self.cfg.parsed(key)?.or(flag))
    }

    fn require<T>(&self, key: &str, flag: Option<T>) -> Result<T>
    where
        T: FromStr,
        T::Err: std::fmt::Display,
    {
        self.pick(key, flag)?
            .ok_or_else(|| anyhow!("missing required --{key}"))
    }

    fn flag(&self, key: &str, flag: bool) -> Result<bool> {
        Ok(self.cfg.parsed(key)?.unwrap_or(flag))
    }
}

pub fn run(cli: Cli) -> Result<()> {
    let cfg = match &cli.common.config {
        Some(path) => Config::load(path)?,
        None => Config::default(),
    };
    let r = Resolver { cfg };
    let sequential = r.flag("sequential", cli.common.sequential)?;
    let settings = RunSettings {
        restarts: r.pick("restarts", cli.common.restarts)?,
        seed: r.pick("seed", cli.common.seed)?.unwrap_or(0),
        grad_tol: r.pick("tol", cli.common.tol)?,
        execution: if sequential {
            Execution::Sequential
        } else {
            Execution::Parallel
        },
    };
    let out: Option<PathBuf> = r.pick("out", cli.common.out.clone())?;
    let out = out.as_deref();

    let allow = |extra: &[&str]| -> Result<()> {
        let keys: Vec<&str> = COMMON_KEYS.iter().chain(extra).copied().collect();
        r.cfg.check_keys(&keys)
    };

    let csv = match cli.command {
        Command::Measure { state, angles_out } => {
            allow(&["state", "angles-out"])?;
            let spec: String = r.require("state", state)?;
            let psi = parse_state(&spec)?;
            let report = ex::measure(&spec, &psi, &settings)?;
            if let Some(path) = r.pick::<PathBuf>("angles-out", angles_out)? {
                std::fs::write(&path, report.angles().to_text())
                    .with_context(|| format!("writing {}", path.display()))?;
            }
            report.to_table().render()
        }
        Command::Grover {
            state,
            marked,
            steps,
            record_groverian,
        } => {
            allow(&["state", "marked", "steps", "record-groverian"])?;
            let spec: String = r.require("state", state)?;
            let marked_spec: String = r.require("marked", marked)?;
            let steps: usize = r.require("steps", steps)?;
            let record = r.flag("record-groverian", record_groverian)?;
            let psi = parse_state(&spec)?;
            let m = parse_marked(&marked_spec, psi.n())?;
            if m.fraction() > 0.25 {
                eprintln!(
                    "warning: r/N = {} exceeds 1/4; the mean-inversion schedule is degenerate",
                    m.fraction()
                );
            }
            ex::grover_run(&spec, &psi, &marked_spec, &m, steps, record, &settings)?
                .to_table()
                .render()
        }
        Command::Fig1 { n, grid } => {
            allow(&["n", "grid"])?;
            let n = r.pick("n", n)?.unwrap_or(DEFAULT_N);
            let grid = r.pick("grid", grid)?.unwrap_or(DEFAULT_GRID);
            ex::fig1(n, grid, &settings)?.to_table().render()
        }
        Command::Fig2 { n, grid } => {
            allow(&["n", "grid"])?;
            let n = r.pick("n", n)?.unwrap_or(DEFAULT_N);
            let grid = r.pick("grid", grid)?.unwrap_or(DEFAULT_GRID);
            ex::fig2(n, grid, &settings)?.to_table().render()
        }
        Command::Fig3 {
            n,
            marked,
            a_even,
            steps,
        } => {
            allow(&["n", "marked", "a-even", "steps"])?;
            let n = r.pick("n", n)?.unwrap_or(DEFAULT_N);
            let marked = r.pick("marked", marked)?.unwrap_or(0);
            let a_even = match r.pick::<String>("a-even", a_even)? {
                Some(s) => parse_f64_list(&s)?,
                None => ex::fig3_default_a_even(),
            };
            let steps = r.pick("steps", steps)?.unwrap_or(DEFAULT_FIG3_STEPS);
            ex::fig3(n, marked, &a_even, steps, &settings)?
                .to_table()
                .render()
        }
        Command::Fig4 { n, steps } => {
            allow(&["n", "steps"])?;
            let n = r.pick("n", n)?.unwrap_or(DEFAULT_N);
            ex::fig4(n, r.pick("steps", steps)?, &settings)?
                .to_table()
                .render()
        }
        Command::Fig5 { n, horizon } => {
            allow(&["n", "horizon"])?;
            let n = r.pick("n", n)?.unwrap_or(DEFAULT_N);
            let horizon = r
                .pick("horizon", horizon)?
                .unwrap_or(ex::FIG5_DEFAULT_HORIZON);
            ex::fig5(n, horizon, &settings)?.to_table().render()
        }
        Command::RandomSweep { ns, seeds } => {
            allow(&["ns", "seeds"])?;
            let ns: String = r.pick("ns", ns)?.unwrap_or_else(|| DEFAULT_SWEEP_NS.into());
            let seeds = r.pick("seeds", seeds)?.unwrap_or(DEFAULT_SWEEP_SEEDS);
            ex::random_sweep(&parse_usize_list(&ns)?, seeds, &settings)?
                .to_table()
                .render()
        }
    };
    write_output(&csv, out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn clap_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn global_flags_after_verb() {
        let cli = Cli::try_parse_from([
            "groverian",
            "measure",
            "--state",
            "ghz:3",
            "--restarts",
            "4",
            "--seed",
            "9",
        ])
        .unwrap();
        assert_eq!(cli.common.restarts, Some(4));
        assert_eq!(cli.common.seed, Some(9));
    }
}
