use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use radial_plap::pohozaev::{scan_family, scan_profile, PohozaevSample};
use radial_plap::{
    bratu2d_count, bratu_pn_count, count_solutions_at, estimate_asymptote, first_root,
    first_root_via_cov, integrate_coulomb, integrate_ivp, log_grid, make_cov, make_family,
    solve_via_cov, Config, CurveError, Family, FamilyId, IvpError, PohozaevError, PositivityCheck,
    Problem, RootOutcome, Route, Solution, TraceOptions, TransformError,
};
use serde_json::{json, Value};

use crate::emit::{Sink, Tolerance};
use crate::{
    BratuArgs, BratuVariant, CliError, FamilyArgs, IntegratorArgs, Positivity, RouteArg, ScanArgs,
    ShootArgs, TraceArgs, TransformArgs,
};

/// Golden-file tolerance for integrated quantities.
const INTEGRATED: Tolerance = Tolerance {
    rel: 1e-8,
    abs: 1e-10,
};
/// Golden-file tolerance for closed-form evaluations.
const CLOSED_FORM: Tolerance = Tolerance {
    rel: 1e-12,
    abs: 1e-14,
};

fn invalid(e: impl std::fmt::Display) -> CliError {
    CliError::Validation(e.to_string())
}

fn ivp_error(e: IvpError) -> CliError {
    match e {
        IvpError::Config(_) | IvpError::Precondition(_) | IvpError::Model(_) => invalid(e),
        _ => CliError::Numerical(e.to_string()),
    }
}

fn transform_error(e: TransformError) -> CliError {
    match e {
        TransformError::Ivp(e) => ivp_error(e),
        e => invalid(e),
    }
}

fn load_problem(path: &Path) -> Result<(Problem, Vec<u8>), CliError> {
    let bytes = fs::read(path).map_err(|e| invalid(format!("{}: {e}", path.display())))?;
    let text =
        std::str::from_utf8(&bytes).map_err(|e| invalid(format!("{}: {e}", path.display())))?;
    let problem =
        Problem::from_json(text).map_err(|e| invalid(format!("{}: {e}", path.display())))?;
    Ok((problem, bytes))
}

fn config(args: &IntegratorArgs) -> Result<Config, CliError> {
    let mut cfg = Config::default()
        .with_tolerances(args.rel_tol, args.abs_tol)
        .with_r_max(args.rmax);
    cfg.positivity = match args.positivity {
        Positivity::Sampled => PositivityCheck::Sampled,
        Positivity::AtStart => PositivityCheck::AtStart,
        Positivity::Off => PositivityCheck::Off,
    };
    cfg.validate().map_err(ivp_error)?;
    Ok(cfg)
}

fn family(id: &str, params: &[String]) -> Result<Family, CliError> {
    let id: FamilyId = id.parse().map_err(invalid)?;
    let mut map = BTreeMap::new();
    for kv in params {
        let (k, v) = kv
            .split_once('=')
            .ok_or_else(|| invalid(format!("--param expects NAME=VALUE, got {kv:?}")))?;
        let v: f64 = v
            .trim()
            .parse()
            .map_err(|e| invalid(format!("--param {k}: {e}")))?;
        map.insert(k.trim().to_string(), v);
    }
    make_family(id, &map).map_err(invalid)
}

fn grid(r_min: f64, r_max: f64, points: usize) -> Result<Vec<f64>, CliError> {
    if !(r_min > 0.0 && r_max > r_min && r_max.is_finite()) || points < 2 {
        return Err(invalid(format!(
            "grid needs 0 < min < max and at least 2 points, got [{r_min}, {r_max}] with {points}"
        )));
    }
    Ok(log_grid(r_min, r_max, points))
}

fn family_config(fam: &Family) -> Value {
    let params: serde_json::Map<String, Value> = fam
        .params()
        .iter()
        .map(|(k, v)| (k.to_string(), json!(v)))
        .collect();
    json!({ "family": fam.id().to_string(), "params": params })
}

pub fn eval_family(args: &FamilyArgs, out: Option<&Path>) -> Result<(), CliError> {
    let fam = family(&args.family, &args.params)?;
    let rs = grid(args.r_min, args.r_max, args.points)?;
    let mut rows = Vec::with_capacity(rs.len());
    for r in rs {
        let j = fam.jet(r).map_err(invalid)?;
        let res = fam.residual(r).map_err(invalid)?;
        rows.push(vec![r, j.u, j.du, res]);
    }
    let mut sink = Sink::new("eval-family", out)?;
    sink.problem_bytes(fam.problem().to_json().as_bytes());
    let mut cfg = family_config(&fam);
    cfg["grid"] = json!({ "r_min": args.r_min, "r_max": args.r_max, "points": args.points });
    sink.config(cfg);
    sink.csv(
        "family.csv",
        &["r", "u", "uprime", "residual"],
        rows,
        CLOSED_FORM,
    )?;
    sink.finish()
}

fn profile_rows(profile: &Solution) -> Vec<Vec<f64>> {
    profile
        .samples()
        .iter()
        .map(|s| vec![s.r, s.u, s.uprime])
        .collect()
}

pub fn shoot(args: &ShootArgs, out: Option<&Path>, via_cov: bool) -> Result<(), CliError> {
    let (problem, bytes) = load_problem(&args.problem)?;
    let mut cfg = config(&args.integrator)?;
    if args.through_root {
        cfg = cfg.through_root();
    }
    let (outcome, profile) = if problem.is_coulomb() {
        if via_cov {
            return Err(transform_error(TransformError::Coulomb));
        }
        let p = integrate_coulomb(&problem, args.a, &cfg).map_err(ivp_error)?;
        ("profile", p)
    } else if args.through_root {
        let p = if via_cov {
            solve_via_cov(&problem, args.a, &cfg).map_err(transform_error)?
        } else {
            integrate_ivp(&problem, args.a, &cfg).map_err(ivp_error)?
        };
        ("profile", p)
    } else {
        let shot = if via_cov {
            first_root_via_cov(&problem, args.a, &cfg)
        } else {
            first_root(&problem, args.a, &cfg)
        };
        match shot {
            RootOutcome::Root { profile, .. } => ("root", profile),
            RootOutcome::NoRootUpTo { profile, .. } => ("no_root", profile),
            RootOutcome::Failed { reason } => return Err(ivp_error(reason)),
        }
    };
    let rho = profile.first_root();
    let summary = json!({
        "outcome": outcome,
        "a": args.a,
        "rho": rho,
        "u_at_rho": rho.and_then(|r| profile.eval_u(r)),
        "r_end": profile.r_end(),
        "samples": profile.samples().len(),
        "events": profile.events(),
    });
    let name = if via_cov { "solve-via-cov" } else { "shoot" };
    let mut sink = Sink::new(name, out)?;
    sink.problem_bytes(&bytes);
    sink.config(json!({ "a": args.a, "through_root": args.through_root, "ivp": cfg }));
    sink.csv(
        "profile.csv",
        &["r", "u", "uprime"],
        profile_rows(&profile),
        INTEGRATED,
    )?;
    sink.json("summary.json", &summary, false)?;
    sink.finish()
}

pub fn trace_curve(args: &TraceArgs, out: Option<&Path>) -> Result<(), CliError> {
    let (problem, bytes) = load_problem(&args.problem)?;
    let cfg = config(&args.integrator)?;
    let a_grid = grid(args.a_min, args.a_max, args.points)?;
    let options = TraceOptions {
        route: match args.route {
            RouteArg::Direct => Route::Direct,
            RouteArg::Cov => Route::ChangeOfVariables,
        },
        refine_rounds: args.refine_rounds,
        reshoot: !args.no_reshoot,
        ..TraceOptions::default()
    };
    let curve =
        radial_plap::trace_curve_with(&problem, &a_grid, &cfg, &options).map_err(|e| match e {
            CurveError::Ivp(e) => ivp_error(e),
            CurveError::InvalidGrid(_) => invalid(e),
            e => CliError::Numerical(e.to_string()),
        })?;
    let counts: Vec<Value> = args
        .lambdas
        .iter()
        .map(|&l| json!(count_solutions_at(&curve, l)))
        .collect();
    let asymptote = match estimate_asymptote(&curve) {
        Ok(a) => json!(a),
        Err(e) => json!({ "error": e.to_string() }),
    };
    let summary = json!({
        "points": curve.points.len(),
        "skipped": curve.skipped,
        "truncated_at": curve.truncated_at,
        "folds": curve.folds,
        "asymptote": asymptote,
        "counts": counts,
        "max_reshoot_residual": if curve.points.is_empty() { None } else { Some(curve.max_reshoot_residual()) },
    });
    let rows = curve
        .points
        .iter()
        .map(|p| vec![p.a, p.rho, p.lambda, p.reshoot_residual]);
    let mut sink = Sink::new("trace-curve", out)?;
    sink.problem_bytes(&bytes);
    sink.config(json!({
        "a_min": args.a_min,
        "a_max": args.a_max,
        "points": args.points,
        "options": options,
        "ivp": cfg,
    }));
    sink.csv(
        "curve.csv",
        &["a", "rho", "lambda", "reshoot_residual"],
        rows,
        Tolerance {
            rel: 1e-7,
            abs: 1e-9,
        },
    )?;
    sink.json("summary.json", &summary, false)?;
    sink.finish()
}

fn scan_rows(samples: Vec<PohozaevSample<f64>>) -> Vec<Vec<f64>> {
    samples
        .into_iter()
        .map(|s| vec![s.r, s.value, s.pprime_formula, s.pprime_numeric])
        .collect()
}

fn pohozaev_error(e: PohozaevError) -> CliError {
    invalid(e)
}

pub fn pohozaev_scan(args: &ScanArgs, out: Option<&Path>) -> Result<(), CliError> {
    let mut sink = Sink::new("pohozaev-scan", out)?;
    let (rows, tol) = match (&args.problem, &args.family) {
        (Some(path), None) => {
            let a = args
                .a
                .ok_or_else(|| invalid("--problem needs --a for the shot"))?;
            let (problem, bytes) = load_problem(path)?;
            let cfg = config(&args.integrator)?;
            let profile = integrate_ivp(&problem, a, &cfg).map_err(ivp_error)?;
            let top = args.r_max.unwrap_or_else(|| match profile.first_root() {
                Some(rho) => 0.999 * rho,
                None => profile.r_end().min(10.0),
            });
            let samples = scan_profile(&problem, &profile, &grid(args.r_min, top, args.points)?)
                .map_err(pohozaev_error)?;
            sink.problem_bytes(&bytes);
            sink.config(json!({ "a": a, "r_min": args.r_min, "r_max": top, "points": args.points, "ivp": cfg }));
            (scan_rows(samples), INTEGRATED)
        }
        (None, Some(id)) => {
            let fam = family(id, &args.params)?;
            let top = args.r_max.unwrap_or(10.0);
            let samples =
                scan_family(&fam, &grid(args.r_min, top, args.points)?).map_err(pohozaev_error)?;
            sink.problem_bytes(fam.problem().to_json().as_bytes());
            let mut cfg = family_config(&fam);
            cfg["grid"] = json!({ "r_min": args.r_min, "r_max": top, "points": args.points });
            sink.config(cfg);
            (scan_rows(samples), CLOSED_FORM)
        }
        _ => return Err(invalid("give either --problem with --a, or --family")),
    };
    sink.csv(
        "pohozaev.csv",
        &["r", "P", "Pprime_formula", "Pprime_numeric"],
        rows,
        tol,
    )?;
    sink.finish()
}

pub fn bratu_count(args: &BratuArgs, out: Option<&Path>) -> Result<(), CliError> {
    if !(args.b > 0.0) || !args.b.is_finite() {
        return Err(invalid(format!("--B must be positive, got {}", args.b)));
    }
    let (count, n) = match args.variant {
        BratuVariant::Planar => (bratu2d_count(args.b), 2.0),
        BratuVariant::Pn => {
            let n = args.n.ok_or_else(|| invalid("--variant pn needs --n"))?;
            if !(n > 1.0) || !n.is_finite() {
                return Err(invalid(format!("--n must exceed 1, got {n}")));
            }
            (bratu_pn_count(n, args.b), n)
        }
    };
    let value = json!({
        "count": count.count,
        "a": count.a_roots,
        "B_critical": count.b_critical,
    });
    let mut sink = Sink::new("bratu-count", out)?;
    sink.config(json!({ "B": args.b, "n": n }));
    sink.json("count.json", &value, true)?;
    sink.finish()
}

pub fn transform(args: &TransformArgs, out: Option<&Path>) -> Result<(), CliError> {
    let cov = make_cov(args.n, args.p, args.alpha).map_err(transform_error)?;
    let mut sink = Sink::new("transform", out)?;
    sink.config(json!({ "n": args.n, "p": args.p, "alpha": args.alpha }));
    sink.json("cov.json", &json!(cov), true)?;
    sink.finish()
}
