//! The `qdl` command-line front end.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex;
use serde_json::{json, Value};

use crate::algebra::{format_rational, rat, GaussRational, MPoly, Rational, Var};
use crate::asymfit::{
    exponent_scan, fit_exponents, fit_log_slope, geometric_radii, in_predicted_set, sample_circles, FiberIntegrator, Integrand, SlopeModel,
};
use crate::elliptic::FamilyEvaluator;
use crate::error::{Error, Result};
use crate::family::{delta_f, total_space_milnor, weierstrass_degeneration, FamilyModel};
use crate::io::report::{error_record, float17, to_value, RunReport};
use crate::io::{parse_constant, parse_poly, FamilyFile, WeierstrassFile};
use crate::local_algebra::{milnor_number, Colength};
use crate::monodromy::{format_char_poly, monodromy_eigenvalues};
use crate::newton_polygon::{branch_count_and_delta, is_nondegenerate, newton_number, newton_polygon};
use crate::weierstrass::{delta_f_check, invariants, kodaira_type, minimalize, ord0, WeierstrassModel};

#[derive(Parser, Debug)]
#[command(name = "qdl", version, about = "Singularity invariants and degeneration experiments for families of curves")]
struct Cli {
    /// Emit a versioned JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Write the report to this file instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Numeric tolerance (meaning depends on the command; see its help).
    #[arg(long, global = true)]
    tolerance: Option<f64>,
    /// Seed for bootstrap resampling.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Milnor and Tjurina numbers of a plane germ at the origin.
    Milnor { expr: String },
    /// Newton polygon, nondegeneracy, Kouchnirenko number, branches and δ.
    Newton { expr: String },
    /// Spectrum and monodromy of a quasi-homogeneous germ.
    Monodromy { expr: String },
    /// Discriminant, Kodaira type and the ord Δ = μ + χ-jump identity.
    Weierstrass(WeierstrassArgs),
    /// Discriminant order Δ_f of a family f(x, y, t) = 0.
    Family(FamilyArgs),
    /// Quillen log-norm samples around t = 0 and the fitted log|t| slope.
    /// --tolerance: allowed gap between |slope| and the prediction (default 1e-3).
    QuillenFit(QuillenArgs),
    /// Fiber area integrals of f = t and their small-|t| exponents.
    /// --tolerance: absolute accuracy of each fiber integral (default 1e-10).
    BarletFit(BarletArgs),
}

#[derive(Args, Debug, Clone)]
struct WeierstrassArgs {
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    a1: String,
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    a2: String,
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    a3: String,
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    a4: String,
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    a6: String,
    /// JSON document {"a": [a1, a2, a3, a4, a6]}; overrides the coefficient flags.
    #[arg(long)]
    file: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct FamilyArgs {
    /// f(x, y, t); omit when --file is given.
    expr: Option<String>,
    /// JSON document {"f": ..., "points": [[x0, y0], ...], "rank": r}.
    #[arg(long)]
    file: Option<PathBuf>,
    /// Singular point "x0,y0" of the special fiber (repeatable).
    #[arg(long = "point")]
    points: Vec<String>,
    #[arg(long)]
    rank: Option<u32>,
    /// μ of the total space; computed at the singular points when omitted.
    #[arg(long)]
    mu_x: Option<u32>,
    /// χ(X₀) − χ(X_t); the total Milnor number of the special fiber when omitted.
    #[arg(long, allow_hyphen_values = true)]
    chi_difference: Option<i64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum FitModel {
    SlopeConst,
    SlopeConstLoglog,
}

#[derive(Args, Debug)]
struct QuillenArgs {
    #[command(flatten)]
    model: WeierstrassArgs,
    /// Geometric radii start:end:count.
    #[arg(long, default_value = "0.1:0.005:8", value_parser = parse_radii)]
    radii: Radii,
    #[arg(long, default_value_t = 4)]
    angles: usize,
    /// Defaults to slope-const-loglog for multiplicative fibers and slope-const otherwise.
    #[arg(long, value_enum)]
    fit: Option<FitModel>,
}

#[derive(Args, Debug)]
struct BarletArgs {
    /// Germ f(x, y), monic in y.
    expr: String,
    /// Radius of the x-disc.
    #[arg(long, default_value_t = 1.0)]
    radius: f64,
    #[arg(long, default_value = "0.1:0.003125:12", value_parser = parse_radii)]
    radii: Radii,
    #[arg(long, default_value_t = 2)]
    angles: usize,
    /// Comma-separated candidate exponents; defaults to the Barlet exponents
    /// shifted by m + m' ≤ 2, together with 1 and 2.
    #[arg(long)]
    candidates: Option<String>,
    #[arg(long, default_value_t = 0)]
    max_h: u32,
}

#[derive(Clone, Debug)]
struct Radii(Vec<f64>);

fn parse_radii(s: &str) -> std::result::Result<Radii, String> {
    let parts: Vec<&str> = s.split(':').collect();
    let [a, b, n] = parts.as_slice() else {
        return Err("expected start:end:count".into());
    };
    let a: f64 = a.parse().map_err(|e| format!("start: {e}"))?;
    let b: f64 = b.parse().map_err(|e| format!("end: {e}"))?;
    let n: usize = n.parse().map_err(|e| format!("count: {e}"))?;
    geometric_radii(a, b, n).map(Radii).map_err(|e| e.to_string())
}

/// Text rendering plus the JSON payload of a command.
struct Outcome {
    inputs: Value,
    results: Value,
    text: String,
    warnings: Vec<String>,
}

fn mu_text(c: Colength) -> String {
    match c {
        Colength::Finite(n) => n.to_string(),
        Colength::Infinite => "∞".into(),
    }
}

fn germ(expr: &str) -> Result<MPoly<GaussRational>> {
    let f = parse_poly(expr)?;
    f.require_vars(&[Var::X, Var::Y])?;
    Ok(f)
}

fn cmd_milnor(expr: &str) -> Result<Outcome> {
    let f = germ(expr)?;
    let d = milnor_number(&f)?;
    let basis: Vec<String> = d.algebra_basis.iter().map(|m| m.to_string()).collect();
    let text = format!("μ = {}\nbasis: {{{}}}\nτ = {}\n", mu_text(d.mu), basis.join(", "), mu_text(d.tjurina));
    Ok(Outcome {
        inputs: json!({ "f": f.to_string() }),
        results: json!({ "mu": d.mu, "algebra_basis": basis, "tjurina": d.tjurina }),
        text,
        warnings: vec![],
    })
}

fn cmd_newton(expr: &str) -> Result<Outcome> {
    let f = germ(expr)?;
    let p = newton_polygon(&f)?;
    let mut warnings = vec![];
    let nu = if p.convenient {
        Some(newton_number(&p)?)
    } else {
        warnings.push("germ is not convenient; Newton number omitted".to_string());
        None
    };
    let nondeg = is_nondegenerate(&f)?;
    let branches = if nondeg { Some(branch_count_and_delta(&f)?) } else { None };
    let mut text = format!("vertices: {:?}\nconvenient: {}\nnondegenerate: {nondeg}\n", p.vertices, p.convenient);
    for e in &p.compact_edges {
        text += &format!("edge {:?} -> {:?} (lattice length {})\n", e.start, e.end, e.lattice_length);
    }
    if let Some(n) = nu {
        text += &format!("Newton number = {n}\n");
    }
    if let Some(b) = branches {
        text += &format!("branches r = {}, δ = {}\n", b.branch_count, b.delta);
    }
    Ok(Outcome {
        inputs: json!({ "f": f.to_string() }),
        results: json!({ "polygon": to_value(&p)?, "nondegenerate": nondeg, "newton_number": nu, "branches": to_value(&branches)? }),
        text,
        warnings,
    })
}

fn cmd_monodromy(expr: &str) -> Result<Outcome> {
    let f = germ(expr)?;
    let d = monodromy_eigenvalues(&f)?;
    let join = |v: &[Rational]| v.iter().map(format_rational).collect::<Vec<_>>().join(", ");
    let eig: Vec<String> = d.eigenvalue_args.iter().map(|a| format!("exp(2πi·{})", format_rational(a))).collect();
    let factors: Vec<String> = d.cyclotomic_factors.iter().map(|(n, e)| if *e == 1 { format!("Φ_{n}") } else { format!("Φ_{n}^{e}") }).collect();
    let text = format!(
        "weights: ({}, {})\nspectrum: {{{}}}\ncharacteristic polynomial: {} = {}\neigenvalues: {}\nBarlet exponents: {{{}}}\n",
        format_rational(&d.spectrum.weights.w1),
        format_rational(&d.spectrum.weights.w2),
        join(&d.spectrum.values),
        format_char_poly(&d.char_poly),
        factors.join("·"),
        eig.join(", "),
        join(&d.barlet_exponents),
    );
    let mut results = to_value(&d)?;
    results["char_poly_text"] = json!(format_char_poly(&d.char_poly));
    Ok(Outcome { inputs: json!({ "f": f.to_string() }), results, text, warnings: vec![] })
}

fn weierstrass_model(a: &WeierstrassArgs) -> Result<WeierstrassModel<GaussRational>> {
    let m = match &a.file {
        Some(path) => WeierstrassFile::load(path)?.to_model()?,
        None => WeierstrassModel::new([parse_poly(&a.a1)?, parse_poly(&a.a2)?, parse_poly(&a.a3)?, parse_poly(&a.a4)?, parse_poly(&a.a6)?])?,
    };
    Ok(m)
}

fn model_inputs(m: &WeierstrassModel<GaussRational>) -> Value {
    let a: Vec<String> = m.coefficients().iter().map(|c| c.to_string()).collect();
    json!({ "a": a })
}

fn cmd_weierstrass(a: &WeierstrassArgs) -> Result<Outcome> {
    let m = weierstrass_model(a)?;
    let inv = invariants(&m);
    let ord_delta = ord0(&inv.discriminant)?;
    let (min, u) = minimalize(&m)?;
    let k = kodaira_type(&min)?;
    let check = delta_f_check(&min)?;
    let deg = weierstrass_degeneration(&m)?;
    let du_val = k.du_val.map_or("smooth".to_string(), |d| d.to_string());
    let verdict = if check.consistent && deg.consistent { "pass" } else { "FAIL" };
    let mut text = format!("c4 = {}\nc6 = {}\nΔ = {}\nord Δ = {ord_delta}\n", inv.c4, inv.c6, inv.discriminant);
    if u > 0 {
        text += &format!("minimal model after t^{u} rescaling: ord Δ = {}\n", check.ord_delta);
    }
    text += &format!(
        "Kodaira type {} (Euler number {})\ndu Val {du_val}, μ = {} (local standard basis: {})\nidentity ord Δ = μ + χ-jump: {} = {} + {} ({verdict})\n",
        k.kind, k.euler_number, check.mu_duval, deg.mu_total_space, check.ord_delta, check.mu_duval, check.chi_fiber_diff
    );
    let results = json!({
        "c4": inv.c4.to_string(),
        "c6": inv.c6.to_string(),
        "discriminant": inv.discriminant.to_string(),
        "ord_delta": ord_delta,
        "u_order": u,
        "minimal_model": model_inputs(&min)["a"].clone(),
        "kodaira": k.kind.to_string(),
        "euler_number": k.euler_number,
        "du_val": du_val,
        "identity": to_value(&check)?,
        "degeneration": to_value(&deg)?,
    });
    let mut warnings = vec![];
    if !(check.consistent && deg.consistent) {
        warnings.push("ord Δ = μ + χ-jump identity failed".into());
    }
    Ok(Outcome { inputs: model_inputs(&m), results, text, warnings })
}

fn parse_point(s: &str) -> Result<(GaussRational, GaussRational)> {
    let (x, y) = s
        .split_once(',')
        .ok_or_else(|| Error::Syntax { line: 1, column: 1, found: s.to_string(), expected: vec!["x0,y0".into()] })?;
    Ok((parse_constant(x)?, parse_constant(y)?))
}

fn cmd_family(a: &FamilyArgs) -> Result<Outcome> {
    let fam: FamilyModel = match (&a.file, &a.expr) {
        (Some(path), _) => {
            let mut doc = FamilyFile::load(path)?;
            if let Some(r) = a.rank {
                doc.rank = r;
            }
            doc.to_model()?
        }
        (None, Some(expr)) => {
            let pts = if a.points.is_empty() { None } else { Some(a.points.iter().map(|p| parse_point(p)).collect::<Result<Vec<_>>>()?) };
            FamilyModel::new(parse_poly(expr)?, pts, a.rank.unwrap_or(1))?
        }
        (None, None) => return Err(Error::Precondition("family needs an expression or --file".into())),
    };
    let mu_x = match a.mu_x {
        Some(m) => m,
        None => {
            let pts = fam
                .singular_points
                .as_ref()
                .ok_or_else(|| Error::InsufficientData("singular points unknown; pass --point or --mu-x".into()))?;
            pts.iter().map(|(x0, y0)| total_space_milnor(&fam.f, x0, y0)).sum::<Result<u32>>()?
        }
    };
    let report = delta_f(&fam, mu_x, a.chi_difference)?;
    let pts: Vec<[String; 2]> = fam.singular_points.iter().flatten().map(|(x, y)| [x.to_string(), y.to_string()]).collect();
    let text = format!(
        "singular points of X₀: {}\nμ(X₀) = {}\nμ_X = {}\nχ(X₀) − χ(X_t) = {}\nΔ_f = {}\npredicted slope rk E·Δ_f/12 = {}\n",
        pts.iter().map(|[x, y]| format!("({x}, {y})")).collect::<Vec<_>>().join(", "),
        report.mu_total.map_or("?".into(), |m| m.to_string()),
        report.mu_x,
        report.chi_difference,
        report.delta_f,
        format_rational(&report.predicted_slope),
    );
    Ok(Outcome {
        inputs: json!({ "f": fam.f.to_string(), "points": pts, "rank": fam.rank_e, "mu_x": a.mu_x, "chi_difference": a.chi_difference }),
        results: to_value(&report)?,
        text,
        warnings: vec![],
    })
}

fn cmd_quillen(a: &QuillenArgs, tolerance: Option<f64>) -> Result<Outcome> {
    let tol = tolerance.unwrap_or(1e-3);
    let m = weierstrass_model(&a.model)?;
    let deg = weierstrass_degeneration(&m)?;
    let fit_model = match a.fit {
        Some(FitModel::SlopeConst) => SlopeModel::SlopeConst,
        Some(FitModel::SlopeConstLoglog) => SlopeModel::SlopeConstLogLog,
        None if deg.kodaira.kind.is_multiplicative() => SlopeModel::SlopeConstLogLog,
        None => SlopeModel::SlopeConst,
    };
    let ev = FamilyEvaluator::new(&m);
    let samples = sample_circles(&a.radii.0, a.angles, 0.0, |t| ev.sample(t).map(|s| s.log_quillen))?;
    let fit = fit_log_slope(&samples, fit_model)?;
    let slope = fit.coefficients[0];
    let predicted = rat(deg.report.delta_f, 12);
    let predicted_f = crate::algebra::rational_to_f64(&predicted);
    let agrees = (slope.abs() - predicted_f).abs() <= tol;
    let text = format!(
        "fit {:?} over {} circles × {} angles\nslope c₁ = {:.10} (sign {}), |c₁| = {:.10}\npredicted Δ_f/12 = {} ≈ {:.10}\nagreement within {tol:e}: {}\nheld-out residual {:.3e}, condition {:.3e}\n",
        fit_model,
        a.radii.0.len(),
        a.angles,
        slope,
        if slope < 0.0 { "−" } else { "+" },
        slope.abs(),
        format_rational(&predicted),
        predicted_f,
        if agrees { "yes" } else { "no" },
        fit.residual_rms,
        fit.condition_estimate,
    );
    let mut warnings = vec![];
    if !agrees {
        warnings.push(format!("|slope| differs from Δ_f/12 by more than {tol:e}"));
    }
    let radii: Vec<Value> = a.radii.0.iter().map(|&r| float17(r)).collect();
    let mut inputs = model_inputs(&m);
    inputs["radii"] = json!(radii);
    inputs["angles"] = json!(a.angles);
    inputs["tolerance"] = float17(tol);
    Ok(Outcome {
        inputs,
        results: json!({
            "fit": to_value(&fit)?,
            "slope": float17(slope),
            "abs_slope": float17(slope.abs()),
            "predicted_abs_slope": format_rational(&predicted),
            "delta_f": deg.report.delta_f,
            "kodaira": deg.kodaira.kind.to_string(),
            "agrees": agrees,
            "samples": to_value(&samples)?,
        }),
        text,
        warnings,
    })
}

fn candidate_exponents(barlet: &[Rational]) -> Vec<Rational> {
    let mut out: Vec<Rational> = barlet.iter().flat_map(|r| (0..=2).map(move |k| r + rat(k, 1))).collect();
    out.extend([rat(1, 1), rat(2, 1)]);
    out.sort();
    out.dedup();
    out
}

fn cmd_barlet(a: &BarletArgs, tolerance: Option<f64>, seed: u64) -> Result<Outcome> {
    let tol = tolerance.unwrap_or(1e-10);
    let f = germ(&a.expr)?;
    let barlet = monodromy_eigenvalues(&f).map(|d| d.barlet_exponents).ok();
    let candidates = match (&a.candidates, &barlet) {
        (Some(list), _) => list.split(',').map(|s| parse_constant(s.trim()).and_then(|c| {
            if c.is_real() { Ok(c.re) } else { Err(Error::Domain(format!("candidate exponent {c} is not real"))) }
        })).collect::<Result<Vec<_>>>()?,
        (None, Some(b)) => candidate_exponents(b),
        (None, None) => return Err(Error::Precondition("germ is not quasi-homogeneous; pass --candidates".into())),
    };
    let integrator = FiberIntegrator::new(&f)?;
    let perturbed = std::sync::Mutex::new(Vec::new());
    let samples = sample_circles(&a.radii.0, a.angles, 0.0, |t: Complex<f64>| {
        let v = integrator.integrate(t, a.radius, Integrand::EuclideanArea, tol)?;
        if v.perturbed {
            perturbed.lock().expect("lock").push(format!("|t| = {}: radius moved to {}", t.norm(), v.radius));
        }
        Ok(v.value)
    })?;
    let mut notes = perturbed.into_inner().expect("lock");
    notes.sort();
    let fit = fit_exponents(&samples, &candidates, a.max_h)?;
    let scan = exponent_scan(&samples, seed)?;
    let barlet_set = barlet.clone().unwrap_or_default();
    let terms: Vec<Value> = fit
        .basis
        .iter()
        .zip(&fit.coefficients)
        .zip(&fit.significant)
        .map(|((b, c), s)| {
            let e = b.exponent();
            json!({
                "term": to_value(b).unwrap_or(Value::Null),
                "coefficient": float17(if *s { *c } else { 0.0 }),
                "raw_coefficient": float17(*c),
                "significant": s,
                "in_predicted_set": e.map(|e| in_predicted_set(&e, &barlet_set)),
            })
        })
        .collect();
    let leading = fit.leading_exponent();
    let mut text = format!(
        "{} circles × {} angles, disc radius {}\nBarlet exponents: {}\ncandidates: {}\n",
        a.radii.0.len(),
        a.angles,
        a.radius,
        barlet.as_ref().map_or("unknown".into(), |b| b.iter().map(format_rational).collect::<Vec<_>>().join(", ")),
        candidates.iter().map(format_rational).collect::<Vec<_>>().join(", "),
    );
    for ((b, c), s) in fit.basis.iter().zip(&fit.coefficients).zip(&fit.significant) {
        let label = match b.exponent() {
            Some(e) => format!("|t|^{}", format_rational(&e)),
            None => "1".into(),
        };
        let member = b.exponent().map_or(String::new(), |e| format!(" [in r + N ∪ N: {}]", in_predicted_set(&e, &barlet_set)));
        text += &format!("  {label}: {c:.6e}{}{member}\n", if *s { "" } else { " (below noise)" });
    }
    text += &format!(
        "leading significant exponent: {}\nscan exponent: {:.6} ± {:.6} (log correction: {})\nheld-out residual {:.3e}\n",
        leading.as_ref().map_or("none".into(), format_rational),
        scan.exponent,
        scan.std_error,
        scan.log_correction,
        fit.residual_rms
    );
    let radii: Vec<Value> = a.radii.0.iter().map(|&r| float17(r)).collect();
    Ok(Outcome {
        inputs: json!({
            "f": f.to_string(), "radius": float17(a.radius), "radii": radii, "angles": a.angles,
            "max_h": a.max_h, "tolerance": float17(tol), "seed": seed,
        }),
        results: json!({
            "barlet_exponents": barlet.map(|b| b.iter().map(format_rational).collect::<Vec<_>>()),
            "candidates": candidates.iter().map(format_rational).collect::<Vec<_>>(),
            "terms": terms,
            "leading_exponent": leading.map(|e| format_rational(&e)),
            "residual_rms": float17(fit.residual_rms),
            "condition_estimate": float17(fit.condition_estimate),
            "scan": to_value(&scan)?,
            "samples": to_value(&samples)?,
        }),
        text,
        warnings: notes,
    })
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Milnor { .. } => "milnor",
        Command::Newton { .. } => "newton",
        Command::Monodromy { .. } => "monodromy",
        Command::Weierstrass(_) => "weierstrass",
        Command::Family(_) => "family",
        Command::QuillenFit(_) => "quillen-fit",
        Command::BarletFit(_) => "barlet-fit",
    }
}

fn dispatch(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Milnor { expr } => cmd_milnor(expr),
        Command::Newton { expr } => cmd_newton(expr),
        Command::Monodromy { expr } => cmd_monodromy(expr),
        Command::Weierstrass(a) => cmd_weierstrass(a),
        Command::Family(a) => cmd_family(a),
        Command::QuillenFit(a) => cmd_quillen(a, cli.tolerance),
        Command::BarletFit(a) => cmd_barlet(a, cli.tolerance, cli.seed),
    }
}

/// Runs the CLI on `args` (program name first) and returns the exit code.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if code == 0 { write!(out, "{rendered}") } else { write!(err, "{rendered}") };
            return code;
        }
    };
    let name = command_name(&cli.command);
    let result = dispatch(&cli).and_then(|o| {
        let body = if cli.json { RunReport::new(name, o.inputs, o.results, o.warnings.clone()).to_json() } else { o.text };
        for w in &o.warnings {
            let _ = writeln!(err, "warning: {w}");
        }
        match &cli.output {
            Some(path) => std::fs::write(path, body).map_err(|e| Error::Io(format!("{}: {e}", path.display()))),
            None => out.write_all(body.as_bytes()).map_err(|e| Error::Io(e.to_string())),
        }
    });
    match result {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if cli.json {
                let _ = write!(out, "{}", error_record(name, &e));
            }
            e.exit_code()
        }
    }
}
