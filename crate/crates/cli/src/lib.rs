//! Batch driver behind the `macsic` binary: reads a JSON experiment
//! description, runs it and renders CSV tables.

pub mod config;
pub mod table;

use std::path::{Path, PathBuf};

use macsic::asymptotic::{ebno_for_single_user_pe, pe_lower_bound, single_user_pe};
use macsic::evolution::{evolve, final_pe, Group, PowerProfile, DEFAULT_MAX_ITER, DEFAULT_TOL};
use macsic::numerics::{gauss_hermite, gaussian_q, marcum_q, QuadratureRule};
use macsic::poweropt::{
    default_power_grid, fading_outer_bound, geometric_power_grid, FadingModel, GridSpacing,
    OptimizeOptions, PowerOptimizer, DEFAULT_POWER_COUNT, DEFAULT_POWER_SPAN_DB,
};
use macsic::simulator::{self, CodebookKind, ErrorEstimate, Renormalization, SimConfig};
use macsic::units::{db_to_linear, linear_to_db};
use macsic::{BoundKind, CodeSpec, Error};
use rayon::prelude::*;
use thiserror::Error;

use config::*;
use table::{Cell, Table};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),
    #[error("numerical error: {0}")]
    Numerical(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl CliError {
    pub fn config(msg: impl Into<String>) -> Self {
        CliError::Config(msg.into())
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Numerical(_) => 3,
            CliError::Io(_) => 1,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Domain(_) | Error::Contract(_) => CliError::Config(e.to_string()),
            Error::UnsupportedRange(_) | Error::Infeasible { .. } => {
                CliError::Numerical(e.to_string())
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Command {
    PeCurve,
    Evolve,
    Optimize,
    Tradeoff,
    Simulate,
    ValidateMarcum,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::PeCurve => "pe-curve",
            Command::Evolve => "evolve",
            Command::Optimize => "optimize",
            Command::Tradeoff => "tradeoff",
            Command::Simulate => "simulate",
            Command::ValidateMarcum => "validate-marcum",
        }
    }
}

/// Runs `command` on the JSON document `config_text`. `seed` overrides the
/// seed given in the document.
pub fn run(command: Command, config_text: &str, seed: Option<u64>) -> Result<Vec<Table>, CliError> {
    let (mut tables, config_seed) = match command {
        Command::PeCurve => {
            let c: PeCurveConfig = parse(config_text)?;
            check_command(&c.command, command)?;
            (pe_curve(&c)?, c.seed)
        }
        Command::Evolve => {
            let c: EvolveConfig = parse(config_text)?;
            check_command(&c.command, command)?;
            (run_evolve(&c)?, c.seed)
        }
        Command::Optimize => {
            let c: OptimizeConfig = parse(config_text)?;
            check_command(&c.command, command)?;
            (run_optimize(&c)?, c.seed)
        }
        Command::Tradeoff => {
            let c: TradeoffConfig = parse(config_text)?;
            check_command(&c.command, command)?;
            (run_tradeoff(&c)?, c.seed)
        }
        Command::Simulate => {
            let c: SimulateConfig = parse(config_text)?;
            check_command(&c.command, command)?;
            let s = seed.or(c.seed).unwrap_or(0);
            (run_simulate(&c, s)?, c.seed)
        }
        Command::ValidateMarcum => {
            let c: MarcumConfig = parse(config_text)?;
            check_command(&c.command, command)?;
            (validate_marcum(&c)?, c.seed)
        }
    };
    let seed = seed.or(config_seed).unwrap_or(0);
    for t in &mut tables {
        let mut meta = vec![
            ("command".to_string(), command.name().to_string()),
            ("seed".to_string(), seed.to_string()),
            ("version".to_string(), format!("macsic {VERSION}")),
        ];
        meta.append(&mut t.metadata);
        t.metadata = meta;
    }
    Ok(tables)
}

/// Reads the config, runs the command and writes its tables into `out`.
pub fn run_to_dir(
    command: Command,
    config: &Path,
    out: &Path,
    seed: Option<u64>,
) -> Result<Vec<PathBuf>, CliError> {
    let text = std::fs::read_to_string(config)
        .map_err(|e| CliError::config(format!("cannot read {}: {e}", config.display())))?;
    let tables = run(command, &text, seed)?;
    table::write_tables(out, &tables)
}

fn check_command(given: &Option<String>, command: Command) -> Result<(), CliError> {
    match given {
        Some(name) if name != command.name() => Err(CliError::config(format!(
            "command: config is for `{name}` but `{}` was requested",
            command.name()
        ))),
        _ => Ok(()),
    }
}

fn rule(nodes: Option<usize>) -> Result<QuadratureRule, CliError> {
    gauss_hermite(nodes.unwrap_or(DEFAULT_QUADRATURE_NODES))
        .map_err(|e| CliError::config(format!("quadrature_nodes: {e}")))
}

fn field<T, E: std::fmt::Display>(name: &str, r: Result<T, E>) -> Result<T, CliError> {
    r.map_err(|e| CliError::config(format!("{name}: {e}")))
}

fn bound_kind(b: Bound) -> BoundKind {
    match b {
        Bound::Upper => BoundKind::UpperResidual,
        Bound::Lower => BoundKind::LowerResidual,
    }
}

fn profile(groups: &[GroupSpec]) -> Result<PowerProfile, CliError> {
    field(
        "profile",
        PowerProfile::new(
            groups
                .iter()
                .map(|g| Group {
                    fraction: g.fraction,
                    power: g.power,
                })
                .collect(),
        ),
    )
}

fn fading(spec: &Option<FadingSpec>) -> Result<Option<FadingModel>, CliError> {
    let Some(f) = spec else { return Ok(None) };
    let model = match (f.path_loss_levels, &f.weights, &f.probabilities) {
        (Some(l), None, None) => FadingModel::path_loss(l),
        (None, Some(w), Some(p)) => FadingModel::new(w.clone(), p.clone()),
        _ => {
            return Err(CliError::config(
                "fading: give either path_loss_levels, or weights and probabilities",
            ))
        }
    };
    field("fading", model).map(Some)
}

fn options(lp: &Option<LpSettings>) -> OptimizeOptions {
    let mut o = OptimizeOptions::default();
    if let Some(s) = lp {
        if let Some(e) = s.epsilon {
            o.epsilon = e;
        }
        if let Some(g) = s.grid_points {
            o.grid_points = g;
        }
        if let Some(sp) = s.grid_spacing {
            o.grid_spacing = match sp {
                Spacing::Uniform => GridSpacing::Uniform,
                Spacing::Logit => GridSpacing::Logit,
            };
        }
        if let Some(b) = s.bisection_steps {
            o.bisection_steps = b;
        }
    }
    o
}

fn pe_curve(c: &PeCurveConfig) -> Result<Vec<Table>, CliError> {
    let rule = rule(c.quadrature_nodes)?;
    let grid = c.ebno_db.points("ebno_db")?;
    if c.bits.is_empty() {
        return Err(CliError::config("bits: list is empty"));
    }
    let mut t = Table::new(
        "pe_curve",
        &["K", "ebno_db", "pe_single_user", "pe_lower_bound"],
    );
    for &k in &c.bits {
        let rows: Vec<Result<Vec<Cell>, CliError>> = grid
            .par_iter()
            .map(|&db| {
                let ebno = db_to_linear(db);
                let upper = field("bits", single_user_pe(k, ebno, &rule))?;
                let lower = field("bits", pe_lower_bound(k, ebno))?;
                Ok(vec![k.into(), db.into(), upper.into(), lower.into()])
            })
            .collect();
        for r in rows {
            t.push(r?);
        }
    }
    Ok(vec![t])
}

fn run_evolve(c: &EvolveConfig) -> Result<Vec<Table>, CliError> {
    let rule = rule(c.quadrature_nodes)?;
    let code = field("n", CodeSpec::new(c.bits, c.n))?;
    let profile = profile(&c.profile)?;
    let bound = bound_kind(c.bound);
    let max_iter = c.max_iter.unwrap_or(DEFAULT_MAX_ITER);
    let tol = c.tol.unwrap_or(DEFAULT_TOL);
    let trajectory = evolve(&code, &profile, bound, &rule, max_iter, tol)?;
    let pe = final_pe(&code, &profile, bound, &rule, max_iter, tol)?;

    let mut header = vec!["iteration".to_string(), "eta".to_string()];
    header.extend((1..=profile.len()).map(|j| format!("v_{j}")));
    let header_refs: Vec<&str> = header.iter().map(String::as_str).collect();
    let mut t = Table::new("evolve", &header_refs);
    t.meta("bound", bound.name());
    t.meta("converged", trajectory.converged);
    t.meta("eta_star", table::format_float(trajectory.eta_star()));
    let avg = macsic::evolution::average_pe(&profile, &pe);
    t.meta("final_pe", table::format_float(avg));
    for s in &trajectory.states {
        let mut row = vec![Cell::from(s.iteration), Cell::from(s.eta)];
        row.extend(s.v.iter().map(|&v| Cell::from(v)));
        t.push(row);
    }
    Ok(vec![t])
}

fn power_grid(
    spec: &Option<PowerGridSpec>,
    code: &CodeSpec,
    target: f64,
    fading: Option<&FadingModel>,
    rule: &QuadratureRule,
) -> Result<Vec<f64>, CliError> {
    let default = || field("power_grid", default_power_grid(code, target, fading, rule));
    match spec {
        None => default(),
        Some(s) => {
            let p_min = match s.p_min {
                Some(p) => p,
                None => default()?[0],
            };
            field(
                "power_grid",
                geometric_power_grid(
                    p_min,
                    s.count.unwrap_or(DEFAULT_POWER_COUNT),
                    s.span_db.unwrap_or(DEFAULT_POWER_SPAN_DB),
                ),
            )
        }
    }
}

fn run_optimize(c: &OptimizeConfig) -> Result<Vec<Table>, CliError> {
    let rule = rule(c.quadrature_nodes)?;
    let code = field("n", CodeSpec::new(c.bits, c.n))?;
    if !(c.target_pe > 0.0 && c.target_pe < 0.5) {
        return Err(CliError::config("target_pe: must lie in (0, 0.5)"));
    }
    let fading = fading(&c.fading)?;
    let grid = power_grid(&c.power_grid, &code, c.target_pe, fading.as_ref(), &rule)?;
    let bound = bound_kind(c.bound);
    let optimizer = field(
        "lp",
        PowerOptimizer::new(c.bits, bound, &rule, options(&c.lp)),
    )?;
    let unit = fading.as_ref().map(|f| vec![1.0; f.levels()]);
    let weights = match c.objective.unwrap_or(Objective::Weighted) {
        Objective::Weighted => None,
        Objective::Unit => unit.as_deref().or(Some(&[1.0][..])),
    };
    let p = optimizer.optimize(&code, c.target_pe, &grid, fading.as_ref(), weights)?;

    let mut groups = Table::new(
        "optimize",
        &["level", "power", "fraction", "received_power", "pe"],
    );
    let gains = fading.as_ref().map_or(vec![1.0], |f| f.weights().to_vec());
    for (a, pe) in p.allocations.iter().zip(&p.group_pe) {
        groups.push(vec![
            a.level.into(),
            a.power.into(),
            a.fraction.into(),
            (gains[a.level] * a.power).into(),
            (*pe).into(),
        ]);
    }
    groups.meta("bound", bound.name());

    let mut summary = Table::new(
        "optimize_summary",
        &[
            "K",
            "n",
            "groups",
            "total_power",
            "transmit_power",
            "received_power",
            "ebno_db",
            "achieved_pe",
            "eta_hi",
            "eta_star",
        ],
    );
    summary.meta("bound", bound.name());
    summary.push(vec![
        c.bits.into(),
        c.n.into(),
        p.group_count().into(),
        p.total_power.into(),
        p.transmit_power.into(),
        p.received_power.into(),
        linear_to_db(p.total_power * c.n / (2.0 * f64::from(c.bits))).into(),
        p.achieved_pe.into(),
        p.eta_hi.into(),
        p.eta_star.into(),
    ]);
    Ok(vec![groups, summary])
}

fn run_tradeoff(c: &TradeoffConfig) -> Result<Vec<Table>, CliError> {
    let rule = rule(c.quadrature_nodes)?;
    let rates = c.rates.points("rates")?;
    if rates.iter().any(|&r| !(r > 0.0)) {
        return Err(CliError::config("rates: must be positive"));
    }
    if !(c.target_pe > 0.0 && c.target_pe < 0.5) {
        return Err(CliError::config("target_pe: must lie in (0, 0.5)"));
    }
    // Fails early on a bad K or target.
    field("bits", ebno_for_single_user_pe(c.bits, c.target_pe, &rule))?;
    let fading = fading(&c.fading)?;
    let opts = options(&c.lp);
    let inner = field(
        "lp",
        PowerOptimizer::new(c.bits, BoundKind::UpperResidual, &rule, opts.clone()),
    )?;
    let outer = field(
        "lp",
        PowerOptimizer::new(c.bits, BoundKind::LowerResidual, &rule, opts),
    )?;

    let ebno_db = |opt: &PowerOptimizer, rate: f64| -> Result<f64, CliError> {
        match opt.min_ebno_at_rate(rate, c.target_pe, fading.as_ref(), None) {
            Ok((e, _)) => Ok(linear_to_db(e)),
            Err(Error::Infeasible { .. }) => Ok(f64::NAN),
            Err(e) => Err(e.into()),
        }
    };
    let mut header = vec!["K", "R", "ebno_db_inner", "ebno_db_outer"];
    if fading.is_some() {
        header.push("ebno_db_fading_outer");
    }
    let rows: Vec<Result<Vec<Cell>, CliError>> = rates
        .par_iter()
        .map(|&r| {
            let mut row = vec![
                c.bits.into(),
                r.into(),
                ebno_db(&inner, r)?.into(),
                ebno_db(&outer, r)?.into(),
            ];
            if let Some(f) = &fading {
                let bound = fading_outer_bound(r, c.bits, c.target_pe, f)?;
                row.push(linear_to_db(bound).into());
            }
            Ok(row)
        })
        .collect();
    let mut t = Table::new("tradeoff", &header);
    t.meta("target_pe", table::format_float(c.target_pe));
    for r in rows {
        t.push(r?);
    }
    Ok(vec![t])
}

fn run_simulate(c: &SimulateConfig, seed: u64) -> Result<Vec<Table>, CliError> {
    let code = field("n", CodeSpec::new(c.bits, c.n))?;
    let profile = profile(&c.profile)?;
    let mut cfg = SimConfig::new(c.users, code, profile, c.trials, seed);
    if let Some(m) = c.max_iterations {
        cfg.max_iterations = m;
    }
    if let Some(t) = c.eta_tol {
        cfg.eta_tol = t;
    }
    if let Some(b) = c.memory_budget {
        cfg.memory_budget = b;
    }
    cfg.noiseless = c.noiseless.unwrap_or(false);
    cfg.codebook = match c.codebook.unwrap_or(Codebook::Gaussian) {
        Codebook::Gaussian => CodebookKind::Gaussian,
        Codebook::Orthogonal => CodebookKind::Orthogonal,
    };
    cfg.estimate = match c.estimate.unwrap_or(Estimate::Posterior) {
        Estimate::Posterior => ErrorEstimate::Posterior,
        Estimate::Genie => ErrorEstimate::Genie,
    };
    cfg.renormalization = match c.renormalization.unwrap_or(Renorm::Double) {
        Renorm::None => Renormalization::None,
        Renorm::Group => Renormalization::Group,
        Renorm::Double => Renormalization::Double,
    };
    field("simulate", cfg.validate())?;
    let report = simulator::run_simulation(&cfg)?;

    let mut header = vec!["iteration".to_string(), "eta".to_string()];
    header.extend((1..=cfg.profile.len()).map(|j| format!("v_{j}")));
    let header_refs: Vec<&str> = header.iter().map(String::as_str).collect();
    let mut trajectory = Table::new("simulate", &header_refs);
    for (i, (eta, v)) in report.eta.iter().zip(&report.v).enumerate() {
        let mut row = vec![Cell::from(i + 1), Cell::from(*eta)];
        row.extend(v.iter().map(|&x| Cell::from(x)));
        trajectory.push(row);
    }

    let mut summary = Table::new(
        "simulate_summary",
        &[
            "users",
            "K",
            "n",
            "trials",
            "errors",
            "decisions",
            "block_error_rate",
            "standard_error",
            "mean_iterations",
            "unconverged_trials",
        ],
    );
    summary.push(vec![
        c.users.into(),
        c.bits.into(),
        c.n.into(),
        c.trials.into(),
        report.errors.into(),
        report.decisions.into(),
        report.block_error_rate.into(),
        report.standard_error.into(),
        report.mean_iterations.into(),
        report.unconverged_trials.into(),
    ]);
    Ok(vec![trajectory, summary])
}

fn validate_marcum(c: &MarcumConfig) -> Result<Vec<Table>, CliError> {
    if c.users.is_empty() {
        return Err(CliError::config("users: list is empty"));
    }
    let a = c.order_scale.unwrap_or(1.0);
    let e = c.offset.unwrap_or(0.5);
    if !(a > 0.0) || !e.is_finite() {
        return Err(CliError::config(
            "order_scale must be positive and offset finite",
        ));
    }
    let limit = gaussian_q(e - a)?;
    let mut t = Table::new(
        "validate_marcum",
        &["M", "marcum", "gaussian_limit", "abs_error"],
    );
    t.meta("order_scale", table::format_float(a));
    t.meta("offset", table::format_float(e));
    for &m in &c.users {
        if !(m > e) {
            return Err(CliError::config(format!(
                "users: M = {m} must exceed the offset"
            )));
        }
        let q = marcum_q(a * m, m - e, m)?;
        t.push(vec![
            m.into(),
            q.into(),
            limit.into(),
            (q - limit).abs().into(),
        ]);
    }
    Ok(vec![t])
}
