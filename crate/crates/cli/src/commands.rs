//! One function per subcommand, each producing a CSV table plus notes for
//! the error stream.

use yitang_core::arith::{
    d_g_check, error_envelope, fundamental_discriminants, genus_scan, siegel_term,
    EnvelopeConstants, LValueReport, VonMangoldtTable,
};
use yitang_core::{
    bifurcation_scan, calibrate_c, detect_cycle, find_fixed_points, grid_sweep, iterate_orbit,
    lyapunov_curve, lyapunov_exponent, with_workers, CycleKind, Error, GridAxis, OrbitStatus,
    Regime, Result, SweepOptions,
};

use crate::args::*;
use crate::output::{fmt_f64, fmt_from_ln, Table};

pub struct Outcome {
    pub table: Table,
    pub notes: Vec<String>,
}

impl From<Table> for Outcome {
    fn from(table: Table) -> Self {
        Outcome {
            table,
            notes: Vec::new(),
        }
    }
}

pub fn run(command: &Command) -> Result<Outcome> {
    match command {
        Command::Lyap(a) => lyap(a),
        Command::Curve(a) => curve(a),
        Command::Sweep(a) => sweep(a),
        Command::Bifurcate(a) => bifurcate(a),
        Command::Cycles(a) => cycles(a),
        Command::Fixedpoints(a) => fixedpoints(a),
        Command::Orbit(a) => orbit(a),
        Command::Lfunc(a) => lfunc(a),
        Command::Psi(a) => psi(a),
        Command::Envelope(a) => envelope(a),
        Command::Genus(a) => genus(a),
        Command::Dg(a) => dg(a),
        Command::Calibrate(a) => calibrate(a),
    }
}

/// `period` column: the period, or `aperiodic` / `escaped`.
pub fn period_field(kind: CycleKind) -> String {
    match kind {
        CycleKind::FixedPoint => "1".into(),
        CycleKind::Cycle(p) => p.to_string(),
        CycleKind::Aperiodic => "aperiodic".into(),
        CycleKind::Escaped => "escaped".into(),
    }
}

pub fn parse_period_field(s: &str) -> Option<CycleKind> {
    match s {
        "aperiodic" => Some(CycleKind::Aperiodic),
        "escaped" => Some(CycleKind::Escaped),
        "1" => Some(CycleKind::FixedPoint),
        _ => s.parse().ok().filter(|&p| p > 1).map(CycleKind::Cycle),
    }
}

fn lyap(a: &MapArgs) -> Result<Outcome> {
    let est = lyapunov_exponent(&a.params(), a.x0, a.iters, a.transient)?;
    let mut t = Table::new(vec!["lambda", "n_used", "transient", "status"]);
    t.push(vec![
        fmt_f64(est.lambda),
        est.n_used.to_string(),
        est.transient.to_string(),
        est.status.label().into(),
    ]);
    Ok(t.into())
}

fn curve(a: &CurveArgs) -> Result<Outcome> {
    let m = &a.map;
    let points = with_workers(a.threads, || {
        lyapunov_curve(
            &m.params(),
            a.axis,
            a.lo,
            a.hi,
            a.step,
            m.x0,
            m.iters,
            m.transient,
        )
    })??;
    let mut t = Table::new(vec!["param", "lambda", "status"]);
    for (p, est) in &points {
        t.push(vec![
            fmt_f64(*p),
            fmt_f64(est.lambda),
            est.status.label().into(),
        ]);
    }
    Ok(t.into())
}

fn sweep(a: &SweepArgs) -> Result<Outcome> {
    let m = &a.map;
    let grid = grid_sweep(
        &m.params(),
        GridAxis::new(a.c_lo, a.c_hi, a.n_c),
        GridAxis::new(a.alpha_lo, a.alpha_hi, a.n_alpha),
        m.x0,
        m.iters,
        m.transient,
        a.band,
        SweepOptions { threads: a.threads },
    )?;
    let mut t = Table::new(vec!["c", "alpha", "lambda", "regime"]);
    for (c, alpha, cell) in grid.iter() {
        t.push(vec![
            fmt_f64(c),
            fmt_f64(alpha),
            cell.lambda.map(fmt_f64).unwrap_or_default(),
            cell.regime.name().into(),
        ]);
    }
    let counts: Vec<String> = [
        Regime::Chaotic,
        Regime::Periodic,
        Regime::Marginal,
        Regime::Escaped,
    ]
    .iter()
    .map(|&r| format!("{}={}", r.name(), grid.count(r)))
    .collect();
    let deciles: Vec<String> = grid.deciles().iter().map(|v| format!("{v:.4}")).collect();
    Ok(Outcome {
        table: t,
        notes: vec![
            format!("regimes: {} missing={}", counts.join(" "), grid.missing()),
            format!("lambda deciles: {}", deciles.join(" ")),
        ],
    })
}

fn bifurcate(a: &BifurcateArgs) -> Result<Outcome> {
    let m = &a.map;
    let data = bifurcation_scan(
        &m.params(),
        a.axis,
        a.lo,
        a.hi,
        a.n_params,
        a.n_samples,
        m.transient,
        m.x0,
    )?;
    let mut t = Table::new(vec!["param", "x"]);
    for (p, x) in &data.rows {
        t.push(vec![fmt_f64(*p), fmt_f64(*x)]);
    }
    Ok(t.into())
}

fn cycles(a: &CyclesArgs) -> Result<Outcome> {
    let m = &a.map;
    if a.n_params < 2 {
        return Err(Error::InvalidInput(format!(
            "n-params must be >= 2, got {}",
            a.n_params
        )));
    }
    if !(a.lo.is_finite() && a.hi.is_finite()) || a.lo > a.hi {
        return Err(Error::InvalidInput(format!(
            "bad range [{}, {}]",
            a.lo, a.hi
        )));
    }
    if a.n_params > yitang_core::MAX_GRID_POINTS {
        return Err(Error::CapExceeded {
            what: "grid points",
            value: a.n_params as f64,
            cap: yitang_core::MAX_GRID_POINTS as f64,
        });
    }
    let template = m.params();
    let mut t = Table::new(vec!["param", "period", "points"]);
    for p in yitang_core::bifurcation::linspace(a.lo, a.hi, a.n_params) {
        let orbit = iterate_orbit(&template.with(a.axis, p), m.x0, m.iters, m.transient)?;
        let info = detect_cycle(&orbit, a.tol, a.max_period)?;
        let points: Vec<String> = info.points.iter().map(|&x| fmt_f64(x)).collect();
        t.push(vec![fmt_f64(p), period_field(info.kind), points.join(";")]);
    }
    Ok(t.into())
}

fn fixedpoints(a: &FixedPointArgs) -> Result<Outcome> {
    let points = find_fixed_points(&a.map.params(), a.lo, a.hi, a.brackets)?;
    let mut t = Table::new(vec!["x_star", "stability", "derivative_magnitude"]);
    for fp in &points {
        t.push(vec![
            fmt_f64(fp.x_star),
            fp.stability.name().into(),
            fmt_f64(fp.derivative_magnitude),
        ]);
    }
    Ok(t.into())
}

fn orbit(a: &MapArgs) -> Result<Outcome> {
    let orbit = iterate_orbit(&a.params(), a.x0, a.iters, a.transient)?;
    let mut t = Table::new(vec!["n", "x"]);
    let first = orbit.transient_discarded;
    for (i, x) in orbit.samples.iter().enumerate() {
        t.push(vec![(first + i).to_string(), fmt_f64(*x)]);
    }
    let mut notes = Vec::new();
    if let OrbitStatus::Escaped { step, reason } = orbit.status {
        notes.push(format!("orbit left the domain at iterate {step}: {reason}"));
    }
    Ok(Outcome { table: t, notes })
}

fn lfunc(a: &LfuncArgs) -> Result<Outcome> {
    let (lo, hi) = a.d.map_or((a.d_min, a.d_max), |d| (d, d));
    if lo > hi {
        return Err(Error::InvalidInput(format!(
            "d-min {lo} exceeds d-max {hi}"
        )));
    }
    let largest = lo.unsigned_abs().max(hi.unsigned_abs());
    if largest > LFUNC_D_CAP {
        return Err(Error::CapExceeded {
            what: "|d|",
            value: largest as f64,
            cap: LFUNC_D_CAP as f64,
        });
    }
    let ds = match a.d {
        Some(d) => vec![d],
        None => fundamental_discriminants(lo, hi),
    };
    let mut t = Table::new(vec![
        "d",
        "h",
        "w",
        "L_formula",
        "L_sum",
        "margin",
        "empirical_constant",
    ]);
    let mut worst = 0.0f64;
    for d in ds {
        let r = LValueReport::new(d, a.c1, a.zhang_a, None)?;
        worst = worst.max(r.relative_disagreement());
        t.push(vec![
            d.to_string(),
            r.field.h.to_string(),
            r.field.w.to_string(),
            fmt_f64(r.l_class_number),
            fmt_f64(r.l_finite_sum),
            fmt_f64(r.zhang.margin),
            fmt_from_ln(r.zhang.ln_empirical_constant),
        ]);
    }
    Ok(Outcome {
        notes: vec![format!(
            "{} discriminants, largest relative disagreement {worst:.3e}",
            t.rows.len()
        )],
        table: t,
    })
}

/// Largest `|d|` the `lfunc` subcommand accepts.
pub const LFUNC_D_CAP: u64 = 10_000_000;

fn psi(a: &PsiArgs) -> Result<Outcome> {
    if !(a.x >= 1.0) {
        return Err(Error::InvalidInput(format!(
            "psi needs x >= 1, got {}",
            a.x
        )));
    }
    if a.x > yitang_core::arith::PSI_SIEVE_CAP as f64 {
        return Err(Error::CapExceeded {
            what: "x",
            value: a.x,
            cap: yitang_core::arith::PSI_SIEVE_CAP as f64,
        });
    }
    let table = VonMangoldtTable::new(a.x.floor() as u64)?;
    let results = match a.a {
        Some(res) => vec![table.psi(a.x, a.q, res)?],
        None => table.psi_residues(a.x, a.q)?,
    };
    let mut t = Table::new(vec!["a", "psi", "main_term", "error"]);
    for r in &results {
        t.push(vec![
            r.a.to_string(),
            fmt_f64(r.psi),
            fmt_f64(r.main_term),
            fmt_f64(r.error),
        ]);
    }
    Ok(t.into())
}

fn envelope(a: &EnvelopeArgs) -> Result<Outcome> {
    let k = EnvelopeConstants {
        c0: a.c0,
        a: a.zhang_a,
        epsilon: a.epsilon,
        a_eps: a.a_eps,
    };
    let mut t = Table::new(vec!["x", "q", "regime", "envelope", "siegel_term"]);
    for &x in &a.x {
        t.push(vec![
            fmt_f64(x),
            a.q.to_string(),
            a.regime.name().into(),
            fmt_f64(error_envelope(x, a.regime, &k)?),
            fmt_f64(siegel_term(x, a.q, &k)?),
        ]);
    }
    Ok(t.into())
}

fn genus(a: &GenusArgs) -> Result<Outcome> {
    let rows = genus_scan(a.limit)?;
    let flagged: Vec<_> = rows.iter().filter(|r| r.one_class_per_genus).collect();
    let mismatches = rows
        .iter()
        .filter(|r| r.one_class_per_genus != r.all_ambiguous)
        .count();
    let mut t = Table::new(vec!["d", "h", "g", "one_class_per_genus"]);
    for r in &rows {
        if a.flagged && !r.one_class_per_genus {
            continue;
        }
        t.push(vec![
            r.d.to_string(),
            r.h.to_string(),
            r.g.to_string(),
            r.one_class_per_genus.to_string(),
        ]);
    }
    let mut notes = vec![format!(
        "{} of {} discriminants have one class per genus",
        flagged.len(),
        rows.len()
    )];
    if let Some(last) = flagged.last() {
        notes.push(format!(
            "largest: d = {}, h = {}, g = {}",
            last.d, last.h, last.g
        ));
    }
    if mismatches > 0 {
        notes.push(format!(
            "warning: {mismatches} rows disagree with the ambiguous-form count"
        ));
    }
    Ok(Outcome { table: t, notes })
}

fn dg(a: &DgArgs) -> Result<Outcome> {
    let mut t = Table::new(vec!["g", "log_dg", "g_log_g", "holds"]);
    for r in d_g_check(a.g_max)? {
        t.push(vec![
            r.g.to_string(),
            fmt_f64(r.log_dg),
            fmt_f64(r.g_log_g),
            r.holds.to_string(),
        ]);
    }
    Ok(t.into())
}

fn calibrate(a: &CalibrateArgs) -> Result<Outcome> {
    let m = &a.map;
    let cal = calibrate_c(
        &a.targets,
        &a.candidates,
        &m.params(),
        m.x0,
        m.iters,
        m.transient,
    )?;
    let mut t = Table::new(vec!["c", "rms_error", "best"]);
    for &(c, rms) in &cal.candidates {
        t.push(vec![
            fmt_f64(c),
            fmt_f64(rms),
            (c == cal.best_c).to_string(),
        ]);
    }
    Ok(Outcome {
        table: t,
        notes: vec![format!(
            "best c = {} with rms {:.6e}",
            cal.best_c, cal.rms_error
        )],
    })
}
