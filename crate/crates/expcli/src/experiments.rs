//! The figure reproductions, the random-state sweep and the two direct
//! capabilities (`measure`, `grover`).
//!
//! Each experiment is a pure function of its parameters and [`RunSettings`];
//! rendering it yields byte-identical CSV on every run and in both
//! execution modes.

use anyhow::{bail, Result};
use groverian_core::entanglement::{default_restarts, groverian_from_pmax, p_max_generalized_ghz};
use groverian_core::exec::{map_indices, map_ordered};
use groverian_core::grover::{self, optimal_iterations, TrajectoryPoint};
use groverian_core::qstate::{inner_product, overlap_probability};
use groverian_core::zoo::{self, RandomStateSpec};
use groverian_core::{
    groverian_measure, Complex64, Execution, MarkedSet, MeasureResult, OptimizerOptions,
    ProductAngles, RegisterState,
};

use crate::table::{num, opt_num, Table};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Residual above which the fig2 run is rejected.
pub const FIG2_MAX_RESIDUAL: f64 = 1e-4;

/// Optimizer settings shared by every experiment.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct RunSettings {
    /// `None` means `max(32, 8n)`.
    pub restarts: Option<usize>,
    pub seed: u64,
    /// `None` keeps the optimizer default.
    pub grad_tol: Option<f64>,
    pub execution: Execution,
}

impl RunSettings {
    pub fn optimizer(&self, n: usize) -> OptimizerOptions {
        let mut opts = OptimizerOptions::for_qubits(n)
            .with_seed(self.seed)
            .with_execution(self.execution);
        if let Some(r) = self.restarts {
            opts.restarts = r;
        }
        if let Some(tol) = self.grad_tol {
            opts.grad_tol = tol;
        }
        opts
    }

    fn describe(&self, n: usize) -> String {
        let opts = self.optimizer(n);
        format!(
            "restarts={} seed={} grad_tol={:e} value_tol={:e} max_iterations={} step_init={}",
            opts.restarts,
            opts.seed,
            opts.grad_tol,
            opts.value_tol,
            opts.max_iterations,
            opts.step_init
        )
    }
}

fn comment(experiment: &str, params: &str, settings: &RunSettings, n: usize) -> String {
    format!(
        "groverian-expcli {VERSION} experiment={experiment} {params} {}",
        settings.describe(n)
    )
}

/// `j / (points - 1)` for `j = 0..points`.
pub fn unit_grid(points: usize) -> Result<Vec<f64>> {
    match points {
        0 => bail!("grid needs at least one point"),
        1 => Ok(vec![0.0]),
        _ => Ok((0..points)
            .map(|j| j as f64 / (points - 1) as f64)
            .collect()),
    }
}

fn measure_all(states: &[RegisterState], settings: &RunSettings) -> Result<Vec<MeasureResult>> {
    map_ordered(settings.execution, states, |s| {
        groverian_measure(s, &settings.optimizer(s.n()))
    })
    .into_iter()
    .map(|r| r.map_err(Into::into))
    .collect()
}

// ---------------------------------------------------------------- fig1

#[derive(Debug, Clone, PartialEq)]
pub struct Fig1Row {
    pub a2_ghz: f64,
    /// `|⟨η|ψ⟩|²`.
    pub p_s: f64,
    pub p_max: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Fig1 {
    pub n: usize,
    pub rows: Vec<Fig1Row>,
    comment: String,
}

impl Fig1 {
    /// First `a²_GHZ` where `p_max - p_s` exceeds `threshold`.
    pub fn gap_onset(&self, threshold: f64) -> Option<f64> {
        self.rows
            .iter()
            .find(|r| r.p_max - r.p_s > threshold)
            .map(|r| r.a2_ghz)
    }

    pub fn to_table(&self) -> Table {
        let mut t = Table::new(self.comment.clone(), &["a2_ghz", "p_s", "p_max"]);
        for r in &self.rows {
            t.push(vec![num(r.a2_ghz), num(r.p_s), num(r.p_max)]);
        }
        t
    }
}

/// `P_s` and `P_max` along `a_η|η⟩ + a_GHZ|GHZ⟩` for `a²_GHZ` on a unit grid.
pub fn fig1(n: usize, grid_points: usize, settings: &RunSettings) -> Result<Fig1> {
    let grid = unit_grid(grid_points)?;
    let eta = zoo::eta(n)?;
    let states = grid
        .iter()
        .map(|&x| zoo::eta_ghz_mix(n, x.sqrt()))
        .collect::<Result<Vec<_>, _>>()?;
    let measured = measure_all(&states, settings)?;
    let rows = grid
        .iter()
        .zip(&states)
        .zip(&measured)
        .map(|((&a2_ghz, s), m)| {
            Ok(Fig1Row {
                a2_ghz,
                p_s: inner_product(s, &eta)?.norm_sqr(),
                p_max: m.p_max,
            })
        })
        .collect::<Result<_>>()?;
    Ok(Fig1 {
        n,
        rows,
        comment: comment("fig1", &format!("n={n} grid={grid_points}"), settings, n),
    })
}

// ---------------------------------------------------------------- fig2

#[derive(Debug, Clone, PartialEq)]
pub struct Fig2Row {
    pub a0_sq: f64,
    pub g_numeric: f64,
    pub g_analytic: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Fig2 {
    pub n: usize,
    pub rows: Vec<Fig2Row>,
    comment: String,
}

impl Fig2 {
    pub fn max_residual(&self) -> f64 {
        self.rows
            .iter()
            .map(|r| (r.g_numeric - r.g_analytic).abs())
            .fold(0.0, f64::max)
    }

    pub fn to_table(&self) -> Table {
        let mut t = Table::new(self.comment.clone(), &["a0_sq", "g_numeric", "g_analytic"]);
        for r in &self.rows {
            t.push(vec![num(r.a0_sq), num(r.g_numeric), num(r.g_analytic)]);
        }
        t
    }
}

/// Numeric vs closed-form `G` for generalized GHZ states. Fails when any
/// residual exceeds [`FIG2_MAX_RESIDUAL`].
pub fn fig2(n: usize, grid_points: usize, settings: &RunSettings) -> Result<Fig2> {
    let grid = unit_grid(grid_points)?;
    let states = grid
        .iter()
        .map(|&x| {
            zoo::generalized_ghz(
                n,
                Complex64::new(x.sqrt(), 0.0),
                Complex64::new((1.0 - x).sqrt(), 0.0),
            )
        })
        .collect::<Result<Vec<_>, _>>()?;
    let measured = measure_all(&states, settings)?;
    let rows = grid
        .iter()
        .zip(&measured)
        .map(|(&a0_sq, m)| {
            Ok(Fig2Row {
                a0_sq,
                g_numeric: m.groverian,
                g_analytic: groverian_from_pmax(p_max_generalized_ghz(a0_sq)?),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let fig = Fig2 {
        n,
        rows,
        comment: comment("fig2", &format!("n={n} grid={grid_points}"), settings, n),
    };
    let residual = fig.max_residual();
    if residual > FIG2_MAX_RESIDUAL {
        bail!("fig2 residual {residual:e} exceeds {FIG2_MAX_RESIDUAL:e}");
    }
    Ok(fig)
}

// ---------------------------------------------------------------- fig3

#[derive(Debug, Clone, PartialEq)]
pub struct Fig3Curve {
    pub a_even: f64,
    pub trajectory: Vec<TrajectoryPoint>,
}

impl Fig3Curve {
    pub fn groverian(&self, t: usize) -> f64 {
        self.trajectory[t].groverian.unwrap_or(f64::NAN)
    }

    /// `(t, G)` at the largest `G`; earliest `t` on ties.
    pub fn peak(&self) -> (usize, f64) {
        peak(
            self.trajectory
                .iter()
                .map(|p| p.groverian.unwrap_or(f64::NAN)),
        )
    }
}

fn peak(values: impl Iterator<Item = f64>) -> (usize, f64) {
    values
        .enumerate()
        .fold((0, f64::NEG_INFINITY), |best, (t, g)| {
            if g > best.1 {
                (t, g)
            } else {
                best
            }
        })
}

#[derive(Debug, Clone, PartialEq)]
pub struct Fig3 {
    pub n: usize,
    pub marked: usize,
    pub curves: Vec<Fig3Curve>,
    comment: String,
}

impl Fig3 {
    /// Long format, one row per `(a_even, t)`.
    pub fn to_table(&self) -> Table {
        let mut t = Table::new(
            self.comment.clone(),
            &["a_even", "t", "p_success", "groverian"],
        );
        for c in &self.curves {
            for p in &c.trajectory {
                t.push(vec![
                    num(c.a_even),
                    p.t.to_string(),
                    num(p.success_prob),
                    opt_num(p.groverian),
                ]);
            }
        }
        t
    }
}

/// Default `a_even` values: `1/√2` (the state `|η⟩`), 0.984, 0.994 and 1.
pub fn fig3_default_a_even() -> Vec<f64> {
    vec![std::f64::consts::FRAC_1_SQRT_2, 0.984, 0.994, 1.0]
}

/// `G(ψ(t))` for Grover runs from even/odd mixtures with one marked state.
pub fn fig3(
    n: usize,
    marked: usize,
    a_even: &[f64],
    steps: usize,
    settings: &RunSettings,
) -> Result<Fig3> {
    if a_even.is_empty() {
        bail!("fig3 needs at least one a_even value");
    }
    let marked_set = MarkedSet::single(n, marked)?;
    let curves = a_even
        .iter()
        .map(|&a| {
            let s0 = zoo::even_odd_mix(n, a)?;
            let points = trajectory_with_measure(&s0, &marked_set, steps, settings)?;
            Ok(Fig3Curve {
                a_even: a,
                trajectory: points,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let list: Vec<String> = a_even.iter().map(|a| format!("{a}")).collect();
    Ok(Fig3 {
        n,
        marked,
        curves,
        comment: comment(
            "fig3",
            &format!(
                "n={n} marked={marked} steps={steps} a_even={}",
                list.join(";")
            ),
            settings,
            n,
        ),
    })
}

fn trajectory_with_measure(
    s0: &RegisterState,
    marked: &MarkedSet,
    steps: usize,
    settings: &RunSettings,
) -> Result<Vec<TrajectoryPoint>> {
    Ok(grover::run(
        s0,
        marked,
        steps,
        true,
        &settings.optimizer(s0.n()),
    )?)
}

// ---------------------------------------------------------------- fig4 / fig5

/// Several marked sets run from `|η⟩` over the same horizon.
#[derive(Debug, Clone, PartialEq)]
pub struct MarkedVariants {
    pub n: usize,
    pub labels: Vec<String>,
    pub marked: Vec<MarkedSet>,
    pub steps: usize,
    /// `states[v][t]`.
    pub states: Vec<Vec<RegisterState>>,
    /// `groverian[v][t]`.
    pub groverian: Vec<Vec<f64>>,
    comment: String,
}

impl MarkedVariants {
    pub fn peak(&self, variant: usize) -> (usize, f64) {
        peak(self.groverian[variant].iter().copied())
    }

    pub fn to_table(&self) -> Table {
        let mut cols = vec!["t".to_string()];
        cols.extend(self.labels.iter().map(|l| format!("g_{l}")));
        let col_refs: Vec<&str> = cols.iter().map(String::as_str).collect();
        let mut t = Table::new(self.comment.clone(), &col_refs);
        for step in 0..=self.steps {
            let mut row = vec![step.to_string()];
            row.extend(self.groverian.iter().map(|g| num(g[step])));
            t.push(row);
        }
        t
    }
}

fn run_variants(
    experiment: &str,
    n: usize,
    variants: Vec<(String, MarkedSet)>,
    steps: usize,
    settings: &RunSettings,
) -> Result<MarkedVariants> {
    let eta = zoo::eta(n)?;
    let (labels, marked): (Vec<_>, Vec<_>) = variants.into_iter().unzip();
    let states = marked
        .iter()
        .map(|m| grover::evolve(&eta, m, steps))
        .collect::<Result<Vec<_>, _>>()?;
    let flat: Vec<RegisterState> = states.iter().flatten().cloned().collect();
    let measured = measure_all(&flat, settings)?;
    let groverian = measured
        .chunks(steps + 1)
        .map(|c| c.iter().map(|m| m.groverian).collect())
        .collect();
    let sets: Vec<String> = labels
        .iter()
        .zip(&marked)
        .map(|(l, m)| format!("{l}={:?}", m.indices()).replace(' ', ""))
        .collect();
    Ok(MarkedVariants {
        n,
        comment: comment(
            experiment,
            &format!("n={n} steps={steps} {}", sets.join(" ")),
            settings,
            n,
        ),
        labels,
        marked,
        steps,
        states,
        groverian,
    })
}

/// `τ` used as the fig4 horizon: `⌊(π/4) sqrt(N/2)⌋`.
pub fn fig4_horizon(n: usize) -> Result<usize> {
    Ok(optimal_iterations(n, 2)?.tau_approx as usize)
}

/// Two marked states from `|η⟩`: `{0, N-1}` (variant 1) and `{0, 1}` (variant 2).
pub fn fig4(n: usize, steps: Option<usize>, settings: &RunSettings) -> Result<MarkedVariants> {
    let dim = 1usize << n;
    let steps = match steps {
        Some(s) => s,
        None => fig4_horizon(n)?,
    };
    run_variants(
        "fig4",
        n,
        vec![
            ("variant1".into(), MarkedSet::new(n, vec![0, dim - 1])?),
            ("variant2".into(), MarkedSet::new(n, vec![0, 1])?),
        ],
        steps,
        settings,
    )
}

pub const FIG5_DEFAULT_HORIZON: usize = 30;

/// `n` marked states from `|η⟩`: the W support `{2^k}` and the prefix `{0..n-1}`.
pub fn fig5(n: usize, steps: usize, settings: &RunSettings) -> Result<MarkedVariants> {
    run_variants(
        "fig5",
        n,
        vec![
            (
                "w_support".into(),
                MarkedSet::new(n, (0..n).map(|k| 1usize << k).collect())?,
            ),
            ("prefix".into(), MarkedSet::new(n, (0..n).collect())?),
        ],
        steps,
        settings,
    )
}

// ---------------------------------------------------------------- random sweep

#[derive(Debug, Clone, PartialEq)]
pub struct RandomRow {
    pub n: usize,
    pub seed: u64,
    pub p_max: f64,
    pub groverian: f64,
    /// `2^n · p_max`.
    pub n_times_pmax: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RandomSweep {
    pub rows: Vec<RandomRow>,
    comment: String,
}

impl RandomSweep {
    pub fn median_p_max(&self, n: usize) -> Option<f64> {
        median(self.rows.iter().filter(|r| r.n == n).map(|r| r.p_max))
    }

    pub fn median_groverian(&self, n: usize) -> Option<f64> {
        median(self.rows.iter().filter(|r| r.n == n).map(|r| r.groverian))
    }

    pub fn to_table(&self) -> Table {
        let mut t = Table::new(
            self.comment.clone(),
            &["n", "seed", "p_max", "groverian", "n_times_pmax"],
        );
        for r in &self.rows {
            t.push(vec![
                r.n.to_string(),
                r.seed.to_string(),
                num(r.p_max),
                num(r.groverian),
                num(r.n_times_pmax),
            ]);
        }
        t
    }
}

pub fn median(values: impl Iterator<Item = f64>) -> Option<f64> {
    let mut v: Vec<f64> = values.collect();
    if v.is_empty() {
        return None;
    }
    v.sort_by(f64::total_cmp);
    let mid = v.len() / 2;
    Some(if v.len().is_multiple_of(2) {
        0.5 * (v[mid - 1] + v[mid])
    } else {
        v[mid]
    })
}

/// Measures `seeds_per_n` random states for each `n`. State `k` of size `n`
/// uses seed `settings.seed + k`; the optimizer uses `settings.seed`.
pub fn random_sweep(
    ns: &[usize],
    seeds_per_n: usize,
    settings: &RunSettings,
) -> Result<RandomSweep> {
    if ns.is_empty() || seeds_per_n == 0 {
        bail!("random sweep needs at least one n and one seed");
    }
    let jobs: Vec<(usize, u64)> = ns
        .iter()
        .flat_map(|&n| (0..seeds_per_n as u64).map(move |k| (n, k)))
        .collect();
    let rows = map_indices(settings.execution, jobs.len(), |j| -> Result<RandomRow> {
        let (n, k) = jobs[j];
        let seed = settings.seed.wrapping_add(k);
        let psi = zoo::random_state(&RandomStateSpec::new(n, seed))?;
        let m = groverian_measure(&psi, &settings.optimizer(n))?;
        Ok(RandomRow {
            n,
            seed,
            p_max: m.p_max,
            groverian: m.groverian,
            n_times_pmax: (1usize << n) as f64 * m.p_max,
        })
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    let n_list: Vec<String> = ns.iter().map(usize::to_string).collect();
    let max_n = ns.iter().copied().max().unwrap_or(1);
    let restarts = match settings.restarts {
        Some(r) => r.to_string(),
        None => "max(32,8n)".into(),
    };
    Ok(RandomSweep {
        rows,
        comment: format!(
            "groverian-expcli {VERSION} experiment=random_sweep ns={} seeds_per_n={seeds_per_n} restarts={restarts} seed={} grad_tol={:e}",
            n_list.join(";"),
            settings.seed,
            settings.optimizer(max_n).grad_tol,
        ),
    })
}

// ---------------------------------------------------------------- measure / grover

#[derive(Debug, Clone, PartialEq)]
pub struct MeasureReport {
    pub result: MeasureResult,
    pub restarts: usize,
    pub seed: u64,
    comment: String,
}

impl MeasureReport {
    pub fn to_table(&self) -> Table {
        let mut t = Table::new(
            self.comment.clone(),
            &[
                "p_max",
                "groverian",
                "restarts",
                "converged_fraction",
                "seed",
            ],
        );
        t.push(vec![
            num(self.result.p_max),
            num(self.result.groverian),
            self.restarts.to_string(),
            num(self.result.converged_fraction),
            self.seed.to_string(),
        ]);
        t
    }

    pub fn angles(&self) -> &ProductAngles {
        &self.result.best_angles
    }
}

pub fn measure(
    state_spec: &str,
    psi: &RegisterState,
    settings: &RunSettings,
) -> Result<MeasureReport> {
    let opts = settings.optimizer(psi.n());
    let result = groverian_measure(psi, &opts)?;
    Ok(MeasureReport {
        result,
        restarts: opts.restarts,
        seed: opts.seed,
        comment: comment("measure", &format!("state={state_spec}"), settings, psi.n()),
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct GroverReport {
    pub trajectory: Vec<TrajectoryPoint>,
    comment: String,
}

impl GroverReport {
    pub fn to_table(&self) -> Table {
        let mut t = Table::new(
            self.comment.clone(),
            &["t", "mean_re", "mean_im", "p_success", "groverian"],
        );
        for p in &self.trajectory {
            t.push(vec![
                p.t.to_string(),
                num(p.mean_amplitude.re),
                num(p.mean_amplitude.im),
                num(p.success_prob),
                opt_num(p.groverian),
            ]);
        }
        t
    }
}

pub fn grover_run(
    state_spec: &str,
    psi: &RegisterState,
    marked_spec: &str,
    marked: &MarkedSet,
    steps: usize,
    record_groverian: bool,
    settings: &RunSettings,
) -> Result<GroverReport> {
    let trajectory = grover::run(
        psi,
        marked,
        steps,
        record_groverian,
        &settings.optimizer(psi.n()),
    )?;
    Ok(GroverReport {
        trajectory,
        comment: comment(
            "grover",
            &format!(
                "state={state_spec} marked={marked_spec} steps={steps} record_groverian={record_groverian}"
            ),
            settings,
            psi.n(),
        ),
    })
}

/// `|⟨η|ψ⟩|²` through the product-state overlap at `θ_k = π/4`.
pub fn eta_overlap(psi: &RegisterState) -> Result<f64> {
    Ok(overlap_probability(&ProductAngles::uniform(psi.n()), psi)?)
}

/// Effective restart count for `n` under `settings`.
pub fn restarts_for(settings: &RunSettings, n: usize) -> usize {
    settings.restarts.unwrap_or_else(|| default_restarts(n))
}
