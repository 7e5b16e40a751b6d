//! The five subcommands. Each returns a [`Report`]; nothing here writes output.

use std::cmp::Ordering;

use rayon::prelude::*;
use succoef_core::bounds::{attainment, extremal_series, BoundInterval, ExtremalDescriptor};
use succoef_core::classes::CoeffTriple;
use succoef_core::verify::{case_boundary_check, finish_report, sample_no_violation, scan_grid, Extrema};
use succoef_core::{bound, ClassParams, Family, Functional, FunctionalSpec, GridSize, VerifyReport};

use crate::config::{params_for, Command, RunConfig};
use crate::report::{Cell, Report, Table};

/// `c`-indices per parallel task.
const C_CHUNK: usize = 4;

fn param_cells(p: &ClassParams) -> Vec<Cell> {
    let (a, g, l) = match p.family {
        Family::OzakiG => (None, None, Some(p.lambda)),
        _ => (Some(p.alpha), Some(p.gamma), None),
    };
    vec![p.family.name().into(), a.into(), g.into(), l.into()]
}

const PARAM_COLUMNS: [&str; 4] = ["family", "alpha", "gamma", "lambda"];

fn columns(rest: &[&'static str]) -> Vec<&'static str> {
    PARAM_COLUMNS.iter().chain(rest).copied().collect()
}

/// Grid scan split over `c`-slices with rayon, then refinement. The merge is
/// order-independent, so the result matches the sequential scan.
pub fn optimize(spec: &FunctionalSpec, grid: GridSize, tol: f64) -> anyhow::Result<VerifyReport> {
    let starts: Vec<usize> = (0..grid.n_c).step_by(C_CHUNK).collect();
    let ext = starts
        .par_iter()
        .map(|&s| scan_grid(spec, grid, s..(s + C_CHUNK).min(grid.n_c)))
        .collect::<Result<Vec<Extrema>, _>>()?
        .into_iter()
        .reduce(Extrema::merge)
        .expect("grid has at least two c values");
    Ok(finish_report(spec, grid, ext, tol)?)
}

fn both(p: &ClassParams) -> anyhow::Result<[(Functional, BoundInterval); 2]> {
    Ok([(Functional::D1, bound(p, Functional::D1)?), (Functional::D2, bound(p, Functional::D2)?)])
}

/// Closed-form intervals and extremal names for D1 and D2.
pub fn cmd_bounds(cfg: &RunConfig) -> anyhow::Result<Report> {
    let p = cfg.params()?;
    let mut t = Table::new(&columns(&["functional", "lower", "upper", "lower_extremal", "upper_extremal"]));
    for (which, b) in both(&p)? {
        let mut row = param_cells(&p);
        row.extend([
            which.name().into(),
            b.lower.into(),
            b.upper.into(),
            b.lower_extremal.name.name().into(),
            b.upper_extremal.name.name().into(),
        ]);
        t.push(row);
    }
    Ok(Report { command: Command::Bounds.name(), passed: true, table: t })
}

const VERIFY_COLUMNS: &[&str] = &[
    "functional",
    "analytic_lower",
    "analytic_upper",
    "numeric_min",
    "numeric_max",
    "residual_min",
    "residual_max",
    "argmin_c",
    "argmin_r",
    "argmin_theta",
    "argmax_c",
    "argmax_r",
    "argmax_theta",
    "lower_extremal",
    "upper_extremal",
    "attained_lower",
    "attained_upper",
    "c_star",
    "case_check",
    "n_c",
    "n_r",
    "n_theta",
    "tol",
    "passed",
];

/// Numeric optimum, attainment and case analysis for one functional.
pub struct VerifyRow {
    /// Optimizer output.
    pub report: VerifyReport,
    /// Functional at the lower and upper extremal.
    pub attained: (f64, f64),
    /// Analytic argmin and whether the case analysis held (D2 only).
    pub case: Option<(f64, bool)>,
    /// Every check within tolerance.
    pub passed: bool,
}

/// Runs every check for one functional.
pub fn verify_one(p: &ClassParams, which: Functional, grid: GridSize, tol: f64) -> anyhow::Result<VerifyRow> {
    let spec = FunctionalSpec::new(*p, which)?;
    let report = optimize(&spec, grid, tol)?;
    let b = &report.analytic;
    let attained = (attainment(&b.lower_extremal, which)?, attainment(&b.upper_extremal, which)?);
    let case = match which {
        Functional::D2 => {
            let c = case_boundary_check(&spec, &report)?;
            Some((c.c_star, c.passed()))
        }
        Functional::D1 => None,
    };
    let passed = report.passed
        && (attained.0 - b.lower).abs() <= tol
        && (attained.1 - b.upper).abs() <= tol
        && case.is_none_or(|c| c.1);
    Ok(VerifyRow { report, attained, case, passed })
}

fn verify_cells(v: &VerifyRow) -> Vec<Cell> {
    let r = &v.report;
    let g = r.grid;
    vec![
        r.spec.which.name().into(),
        r.analytic.lower.into(),
        r.analytic.upper.into(),
        r.numeric_min.into(),
        r.numeric_max.into(),
        r.residual_min.into(),
        r.residual_max.into(),
        r.argmin.c.into(),
        r.argmin.r.into(),
        r.argmin.theta.into(),
        r.argmax.c.into(),
        r.argmax.r.into(),
        r.argmax.theta.into(),
        r.analytic.lower_extremal.name.name().into(),
        r.analytic.upper_extremal.name.name().into(),
        v.attained.0.into(),
        v.attained.1.into(),
        v.case.map(|c| c.0).into(),
        match v.case {
            Some((_, ok)) => Cell::Bool(ok),
            None => Cell::Text(String::new()),
        },
        g.n_c.into(),
        g.n_r.into(),
        g.n_theta.into(),
        r.tol.into(),
        v.passed.into(),
    ]
}

/// Grid optimization of D1 and D2 against the closed form.
pub fn cmd_verify(cfg: &RunConfig) -> anyhow::Result<Report> {
    let p = cfg.params()?;
    let mut t = Table::new(&columns(VERIFY_COLUMNS));
    let mut passed = true;
    for which in [Functional::D1, Functional::D2] {
        let v = verify_one(&p, which, cfg.grid, cfg.tol)?;
        passed &= v.passed;
        let mut row = param_cells(&p);
        row.extend(verify_cells(&v));
        t.push(row);
    }
    Ok(Report { command: Command::Verify.name(), passed, table: t })
}

const SWEEP_COLUMNS: &[&str] = &[
    "d1_lower",
    "d1_upper",
    "d1_min",
    "d1_max",
    "d1_residual_min",
    "d1_residual_max",
    "d2_lower",
    "d2_upper",
    "d2_min",
    "d2_max",
    "d2_residual_min",
    "d2_residual_max",
    "passed",
    "error",
];

/// Lattice points `(α, γ, λ)` in lexicographic order.
pub fn lattice(cfg: &RunConfig) -> Vec<(f64, f64, f64)> {
    let mut pts: Vec<(f64, f64, f64)> = match cfg.family {
        Family::OzakiG => cfg.lambdas.iter().map(|&l| (0.0, 0.0, l)).collect(),
        _ => cfg
            .alphas
            .iter()
            .flat_map(|&a| cfg.gammas.iter().map(move |&g| (a, g, 1.0)))
            .collect(),
    };
    let key = |p: &(f64, f64, f64), q: &(f64, f64, f64)| -> Ordering {
        p.0.total_cmp(&q.0).then(p.1.total_cmp(&q.1)).then(p.2.total_cmp(&q.2))
    };
    pts.sort_by(key);
    pts.dedup_by(|a, b| key(a, b) == Ordering::Equal);
    pts
}

fn sweep_row(cfg: &RunConfig, (a, g, l): (f64, f64, f64)) -> (Vec<Cell>, bool) {
    let shown = match cfg.family {
        Family::OzakiG => vec![cfg.family.name().into(), None.into(), None.into(), Some(l).into()],
        _ => vec![cfg.family.name().into(), Some(a).into(), Some(g).into(), None.into()],
    };
    let result = params_for(cfg.family, a, g, l).map_err(anyhow::Error::from).and_then(|p| {
        let d1 = verify_one(&p, Functional::D1, cfg.grid, cfg.tol)?;
        let d2 = verify_one(&p, Functional::D2, cfg.grid, cfg.tol)?;
        Ok((d1, d2))
    });
    let mut row = shown;
    match result {
        Ok((d1, d2)) => {
            for v in [&d1, &d2] {
                let r = &v.report;
                row.extend([
                    r.analytic.lower.into(),
                    r.analytic.upper.into(),
                    r.numeric_min.into(),
                    r.numeric_max.into(),
                    r.residual_min.into(),
                    r.residual_max.into(),
                ]);
            }
            let ok = d1.passed && d2.passed;
            row.extend([ok.into(), "".into()]);
            (row, ok)
        }
        Err(e) => {
            row.extend((0..12).map(|_| Cell::Opt(None)));
            row.extend([false.into(), e.to_string().into()]);
            (row, false)
        }
    }
}

/// D1 and D2 verification over the `alphas × gammas` (or `lambdas`) lattice.
/// Bad lattice points become failed rows; the sweep continues.
pub fn cmd_sweep(cfg: &RunConfig) -> anyhow::Result<Report> {
    let pts = lattice(cfg);
    let rows: Vec<(Vec<Cell>, bool)> = pts.par_iter().map(|&pt| sweep_row(cfg, pt)).collect();
    let mut t = Table::new(&columns(SWEEP_COLUMNS));
    let mut passed = true;
    for (row, ok) in rows {
        passed &= ok;
        t.push(row);
    }
    Ok(Report { command: Command::Sweep.name(), passed, table: t })
}

const EXTREMAL_COLUMNS: &[&str] = &[
    "extremal",
    "functional",
    "end",
    "a2_re",
    "a2_im",
    "a3_re",
    "a3_im",
    "d1",
    "d2",
    "target",
    "residual",
    "passed",
    "error",
];

fn extremal_row(desc: &ExtremalDescriptor, which: Functional, end: &str, target: f64, order: usize, tol: f64) -> (Vec<Cell>, bool) {
    let mut row = vec![desc.name.name().into(), which.name().into(), end.into()];
    let coeffs = extremal_series(desc, order).and_then(|f| CoeffTriple::from_series(&f));
    match coeffs {
        Ok(c) => {
            let v = which.of(&c);
            let ok = (v - target).abs() <= tol;
            row.extend([
                c.a2.re.into(),
                c.a2.im.into(),
                c.a3.re.into(),
                c.a3.im.into(),
                c.d1().into(),
                c.d2().into(),
                target.into(),
                (v - target).abs().into(),
                ok.into(),
                "".into(),
            ]);
            (row, ok)
        }
        Err(e) => {
            row.extend((0..6).map(|_| Cell::Opt(None)));
            row.extend([target.into(), None.into(), false.into(), e.to_string().into()]);
            (row, false)
        }
    }
}

/// Coefficients of each extremal function and how closely it attains its end.
pub fn cmd_extremal(cfg: &RunConfig) -> anyhow::Result<Report> {
    let p = cfg.params()?;
    let mut t = Table::new(&columns(EXTREMAL_COLUMNS));
    let mut passed = true;
    for (which, b) in both(&p)? {
        for (desc, end, target) in [(&b.lower_extremal, "lower", b.lower), (&b.upper_extremal, "upper", b.upper)] {
            let (cells, ok) = extremal_row(desc, which, end, target, cfg.order, cfg.tol);
            passed &= ok;
            let mut row = param_cells(&p);
            row.extend(cells);
            t.push(row);
        }
    }
    Ok(Report { command: Command::Extremal.name(), passed, table: t })
}

const SAMPLE_COLUMNS: &[&str] = &[
    "functional",
    "lower",
    "upper",
    "observed_min",
    "min_sample",
    "observed_max",
    "max_sample",
    "lower_margin",
    "upper_margin",
    "samples",
    "failures",
    "violations",
    "seed",
    "passed",
];

/// Random members checked against both intervals.
pub fn cmd_sample(cfg: &RunConfig) -> anyhow::Result<Report> {
    let p = cfg.params()?;
    let r = sample_no_violation(&p, cfg.samples, cfg.atoms, cfg.seed)?;
    let mut t = Table::new(&columns(SAMPLE_COLUMNS));
    for (which, range) in [(Functional::D1, r.d1), (Functional::D2, r.d2)] {
        let violations = r.violations.iter().filter(|v| v.which == which).count();
        let b = bound(&p, which)?;
        let mut row = param_cells(&p);
        row.extend([which.name().into(), b.lower.into(), b.upper.into()]);
        match range {
            Some(s) => row.extend([
                s.min.value.into(),
                s.min.sample.into(),
                s.max.value.into(),
                s.max.sample.into(),
                s.lower_margin().into(),
                s.upper_margin().into(),
            ]),
            None => row.extend((0..6).map(|_| Cell::Opt(None))),
        }
        row.extend([
            r.n_samples.into(),
            r.failures.into(),
            violations.into(),
            r.seed.into(),
            (violations == 0 && range.is_some()).into(),
        ]);
        t.push(row);
    }
    Ok(Report { command: Command::Sample.name(), passed: r.passed(), table: t })
}

/// Dispatches on `cfg.command`.
pub fn run(cfg: &RunConfig) -> anyhow::Result<Report> {
    match cfg.command {
        Command::Bounds => cmd_bounds(cfg),
        Command::Verify => cmd_verify(cfg),
        Command::Sweep => cmd_sweep(cfg),
        Command::Extremal => cmd_extremal(cfg),
        Command::Sample => cmd_sample(cfg),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeMap;
    use succoef_core::verify::grid_optimize_tol;

    fn cfg(command: Command, kv: &[(&str, &str)]) -> RunConfig {
        let cli: BTreeMap<String, String> = kv.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect();
        RunConfig::resolve(command, &BTreeMap::new(), &cli).unwrap()
    }

    #[test]
    fn parallel_scan_matches_sequential() {
        let spec = FunctionalSpec::new(ClassParams::convex(0.25, 0.4).unwrap(), Functional::D2).unwrap();
        let grid = GridSize::new(41, 21, 32).unwrap();
        let seq = grid_optimize_tol(&spec, grid, 1e-3).unwrap();
        assert_eq!(optimize(&spec, grid, 1e-3).unwrap(), seq);
    }

    #[test]
    fn bounds_rows() {
        let r = cmd_bounds(&cfg(Command::Bounds, &[("family", "convex"), ("alpha", "0.5")])).unwrap();
        assert_eq!(r.table.rows.len(), 2);
        let Cell::Real(lower) = r.table.rows[1][5] else { panic!() };
        assert!((lower + 0.5 / 3f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn extremal_rows() {
        let r = cmd_extremal(&cfg(Command::Extremal, &[])).unwrap();
        assert!(r.passed);
        let k = r.table.rows.iter().find(|row| row[4] == Cell::Text("K".into())).unwrap();
        assert_eq!((k[7].clone(), k[9].clone(), k[11].clone()), (Cell::Real(2.0), Cell::Real(3.0), Cell::Real(1.0)));
    }

    #[test]
    fn lattice_is_sorted_and_deduplicated() {
        let c = cfg(Command::Sweep, &[("alphas", "0.5,0,0.5"), ("gammas", "pi/6,-pi/6")]);
        let pts = lattice(&c);
        assert_eq!(pts.len(), 4);
        assert!(pts.windows(2).all(|w| (w[0].0, w[0].1) < (w[1].0, w[1].1)));
    }

    #[test]
    fn sweep_records_bad_points() {
        let c = cfg(Command::Sweep, &[("alphas", "0,1"), ("grid", "11,6,8")]);
        let r = cmd_sweep(&c).unwrap();
        assert!(!r.passed);
        assert_eq!(r.table.rows.len(), 2);
        assert_eq!(r.table.rows[0][16], Cell::Bool(true));
        assert_eq!(r.table.rows[1][16], Cell::Bool(false));
    }
}
