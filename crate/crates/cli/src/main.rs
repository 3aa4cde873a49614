mod report;

use clap::{Args, Parser, Subcommand};
use holonomy_lab_core::curvature::{ricci_components, RICCI_Q_SIGN};
use holonomy_lab_core::holonomy::{
    build_omega, check_closed, holonomy_dimension, omega_top_power_coefficient,
};
use holonomy_lab_core::liealg::build_algebra;
use holonomy_lab_core::metrics::{
    boundary_slope, integrate_ode, MetricAnsatz, ProfileDocument, RadialProfile,
};
use num::rational::BigRational;
use num::{BigInt, Signed, Zero};
use report::{record, Report};
use std::str::FromStr;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

#[derive(Parser)]
#[command(name = "holonomy-lab", version, about = "Verification toolkit for a family of cohomogeneity-one Ricci-flat Kähler metrics")]
struct Cli {
    /// Output format: text, json, or csv
    #[arg(long, global = true, default_value = "text")]
    format: String,
    /// Write the report to a file instead of stdout
    #[arg(long, global = true)]
    out: Option<std::path::PathBuf>,
    /// Seed for randomized negative controls
    #[arg(long, global = true, default_value_t = 7)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check Ricci-flatness of the metric family (or a supplied radial profile) on an r-grid
    VerifyRicci(VerifyRicciArgs),
    /// Check closedness and nondegeneracy of the Kähler form in exact arithmetic
    VerifyKahler(VerifyKahlerArgs),
    /// Estimate the holonomy algebra dimension from curvature spans
    Holonomy(HolonomyArgs),
    /// Integrate the radial ODE and compare against the closed form
    Ode(OdeArgs),
    /// Collapse slope of the principal circle at the r = 1 boundary
    Boundary(BoundaryArgs),
}

#[derive(Args)]
struct VerifyRicciArgs {
    #[arg(long, default_value_t = 1)]
    n: usize,
    #[arg(long, default_value_t = 0.5)]
    alpha: f64,
    /// Comma-separated radii
    #[arg(long, default_value = "1.5,2,3")]
    r: String,
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    /// Radial profile JSON (overrides --n/--alpha/--r); samples need du and d2u
    #[arg(long)]
    profile: Option<std::path::PathBuf>,
}

#[derive(Args)]
struct VerifyKahlerArgs {
    #[arg(long, default_value_t = 1)]
    n: usize,
    /// Rational α, e.g. 1/3, 0, or 0.5 (parsed exactly)
    #[arg(long, default_value = "1/2")]
    alpha: String,
    /// Exact arithmetic (the only supported mode; kept for interface clarity)
    #[arg(long, default_value_t = true)]
    exact: bool,
    /// Negative control: corrupt one coefficient and report the residual
    #[arg(long, default_value_t = false)]
    corrupt: bool,
}

#[derive(Args)]
struct HolonomyArgs {
    #[arg(long, default_value_t = 1)]
    n: usize,
    #[arg(long, default_value_t = 0.5)]
    alpha: f64,
    /// Comma-separated sample radii
    #[arg(long, default_value = "1.3,2.1,3.7")]
    points: String,
    #[arg(long, default_value_t = 1e-8)]
    rank_tol: f64,
}

#[derive(Args)]
struct OdeArgs {
    #[arg(long, default_value_t = 1)]
    n: usize,
    #[arg(long, default_value_t = 0.5)]
    alpha: f64,
    #[arg(long, default_value_t = 1.001)]
    r0: f64,
    #[arg(long, default_value_t = 4.0)]
    r1: f64,
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    /// Initial value; defaults to the canonical closed form at r0. A custom
    /// value selects another member of the family (another integration
    /// constant), which is refitted and reported.
    #[arg(long)]
    u0: Option<f64>,
}

#[derive(Args)]
struct BoundaryArgs {
    #[arg(long, default_value_t = 1)]
    n: usize,
    #[arg(long, default_value_t = 0.5)]
    alpha: f64,
}

fn parse_grid(s: &str) -> Result<Vec<f64>, String> {
    // either a comma list or start:stop:count
    if let Some((a, rest)) = s.split_once(':') {
        let (b, c) = rest
            .split_once(':')
            .ok_or_else(|| format!("grid '{}' must be list or start:stop:count", s))?;
        let (start, stop): (f64, f64) = (
            a.parse().map_err(|e| format!("{}", e))?,
            b.parse().map_err(|e| format!("{}", e))?,
        );
        let count: usize = c.parse().map_err(|e| format!("{}", e))?;
        if count < 2 || stop <= start {
            return Err("grid needs count >= 2 and stop > start".into());
        }
        let step = (stop - start) / (count - 1) as f64;
        return Ok((0..count).map(|i| start + step * i as f64).collect());
    }
    let vals: Result<Vec<f64>, _> = s.split(',').map(|x| x.trim().parse::<f64>()).collect();
    let vals = vals.map_err(|e| format!("bad grid entry: {}", e))?;
    if vals.is_empty() {
        return Err("grid must be nonempty".into());
    }
    Ok(vals)
}

fn parse_rational(s: &str) -> Result<BigRational, String> {
    let s = s.trim();
    if let Ok(r) = BigRational::from_str(s) {
        return Ok(r);
    }
    // decimal like 0.5 → exact 1/2
    if let Some((int, frac)) = s.split_once('.') {
        let digits = frac.len() as u32;
        let whole: BigInt = if int.is_empty() {
            BigInt::zero()
        } else {
            BigInt::from_str(int).map_err(|e| format!("bad rational '{}': {}", s, e))?
        };
        let frac_num =
            BigInt::from_str(frac).map_err(|e| format!("bad rational '{}': {}", s, e))?;
        let den = BigInt::from(10u32).pow(digits);
        let neg = s.starts_with('-');
        let num = whole.abs() * &den + frac_num;
        let num = if neg { -num } else { num };
        return Ok(BigRational::new(num, den));
    }
    Err(format!("cannot parse '{}' as a rational", s))
}

/// Map over items with a small worker pool; result order matches input order.
/// Pool size comes from HOLONOMY_LAB_THREADS, defaulting to the number of CPUs.
fn par_map<T: Sync, U: Send>(items: &[T], f: impl Fn(&T) -> U + Sync) -> Vec<U> {
    let threads = std::env::var("HOLONOMY_LAB_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|&t| t > 0)
        .unwrap_or_else(|| {
            std::thread::available_parallelism()
                .map(|p| p.get())
                .unwrap_or(1)
        })
        .min(items.len().max(1));
    let next = AtomicUsize::new(0);
    let slots: Vec<Mutex<Option<U>>> = items.iter().map(|_| Mutex::new(None)).collect();
    std::thread::scope(|scope| {
        for _ in 0..threads {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::SeqCst);
                if i >= items.len() {
                    break;
                }
                *slots[i].lock().unwrap() = Some(f(&items[i]));
            });
        }
    });
    slots
        .into_iter()
        .map(|s| s.into_inner().unwrap().expect("worker filled slot"))
        .collect()
}

fn cmd_verify_ricci(args: &VerifyRicciArgs, rep: &mut Report) -> Result<(), String> {
    if let Some(path) = &args.profile {
        let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {}", path.display(), e))?;
        let doc = ProfileDocument::from_json(&text).map_err(|e| e.to_string())?;
        let alg = build_algebra(doc.n).map_err(|e| e.to_string())?;
        for s in &doc.samples {
            let (du, d2u) = match (s.du, s.d2u) {
                (Some(a), Some(b)) => (a, b),
                _ => return Err(format!("sample at r = {} lacks du/d2u", s.r)),
            };
            let (r, u) = (s.r, s.u);
            let profile = RadialProfile::custom(
                doc.n,
                doc.alpha,
                std::sync::Arc::new(move |x: holonomy_lab_core::exterior::Jet| {
                    assert!((x.v - r).abs() < 1e-12, "profile sample only valid at its own r");
                    holonomy_lab_core::exterior::Jet { v: u, d1: du, d2: d2u }
                }),
            )
            .map_err(|e| e.to_string())?;
            let q = profile.ode_residual(r).map_err(|e| e.to_string())?;
            let metric = MetricAnsatz::from_profile(profile);
            let (comps, curv) = ricci_components(&metric, &alg, r, 1e-6).map_err(|e| e.to_string())?;
            let scale = 1.0 + curv.max_riem;
            rep.push(
                record("ricci-flat")
                    .param("n", doc.n)
                    .param("alpha", doc.alpha)
                    .param("r", r)
                    .param("source", "profile")
                    .value(curv.max_ric() / scale)
                    .threshold(args.tol)
                    .pass(curv.max_ric() / scale <= args.tol),
            );
            let p = comps.proportionality_products(doc.alpha, r);
            let pscale = p.iter().fold(1.0f64, |m, x| m.max(x.abs()));
            let pairwise = ((p[0] - p[1]).abs().max((p[0] - p[2]).abs())) / pscale;
            let expected = RICCI_Q_SIGN * 2.0 * q;
            let vs_q = (p[0] - expected).abs() / pscale;
            rep.push(
                record("ricci-proportionality")
                    .param("n", doc.n)
                    .param("alpha", doc.alpha)
                    .param("r", r)
                    .value(pairwise.max(vs_q))
                    .threshold(1e-9)
                    .note(format!(
                        "R_a={:.6e} R_b={:.6e} R_c={:.6e} Q~={:.6e}",
                        comps.ra, comps.rb, comps.rc, q
                    ))
                    .pass(pairwise.max(vs_q) <= 1e-9),
            );
        }
        return Ok(());
    }

    let grid = parse_grid(&args.r)?;
    if grid.iter().any(|&r| r <= 1.0) {
        return Err("all radii must be > 1".into());
    }
    let alg = build_algebra(args.n).map_err(|e| e.to_string())?;
    let metric = MetricAnsatz::family(args.n, args.alpha).map_err(|e| e.to_string())?;
    let results = par_map(&grid, |&r| {
        ricci_components(&metric, &alg, r, args.tol.max(1e-9))
            .map(|(comps, curv)| (r, comps, curv))
            .map_err(|e| (r, e.to_string()))
    });
    for res in results {
        match res {
            Ok((r, comps, curv)) => {
                let scale = 1.0 + curv.max_riem;
                let resid = curv.max_ric() / scale;
                rep.push(
                    record("ricci-flat")
                        .param("n", args.n)
                        .param("alpha", args.alpha)
                        .param("r", r)
                        .value(resid)
                        .threshold(args.tol)
                        .note(format!(
                            "R_0={:.2e} R_f={:.2e} R_c={:.2e} R_a={:.2e} R_b={:.2e}",
                            comps.r0, comps.rf, comps.rc, comps.ra, comps.rb
                        ))
                        .pass(resid <= args.tol),
                );
            }
            Err((r, msg)) => {
                rep.push(
                    record("ricci-flat")
                        .param("n", args.n)
                        .param("alpha", args.alpha)
                        .param("r", r)
                        .note(msg)
                        .pass(false),
                );
            }
        }
    }
    Ok(())
}

fn cmd_verify_kahler(args: &VerifyKahlerArgs, rep: &mut Report) -> Result<(), String> {
    if !args.exact {
        return Err("only exact mode is supported; pass a rational --alpha".into());
    }
    let alpha = parse_rational(&args.alpha)?;
    let alg = build_algebra(args.n).map_err(|e| e.to_string())?;
    let mut omega = build_omega(args.n, &alpha).map_err(|e| e.to_string())?;
    if args.corrupt {
        // flip the sign of the ν₁∧ν₂ coefficient
        use holonomy_lab_core::exterior::Scalar;
        use holonomy_lab_core::liealg::{NU1, NU2};
        let key = vec![NU1, NU2];
        if let Some(c) = omega.terms.remove(&key) {
            omega.add_term(key, c.neg());
        }
    }
    let (closed, residual) = check_closed(&omega, &alg);
    let mut rec = record("kahler-closed")
        .param("n", args.n)
        .param("alpha", &args.alpha)
        .value(residual.terms.len() as f64)
        .threshold(0.0)
        .pass(closed);
    if !closed {
        rec = rec.note(format!("dΩ = {}", residual.render(&alg)));
    }
    rep.push(rec);

    match omega_top_power_coefficient(args.n, &alpha) {
        Ok(coeff) => {
            use holonomy_lab_core::exterior::Scalar;
            let mut sign = 0i8;
            let mut constant = !coeff.is_zero();
            for r in [(11i64, 10i64), (2, 1), (5, 1), (50, 1)] {
                let v = coeff
                    .eval(&BigRational::new(BigInt::from(r.0), BigInt::from(r.1)))
                    .ok_or("top-power coefficient has a pole at a sample radius")?;
                let s = if v.is_zero() {
                    0
                } else if v > BigRational::zero() {
                    1
                } else {
                    -1
                };
                if s == 0 || (sign != 0 && s != sign) {
                    constant = false;
                }
                sign = s;
            }
            rep.push(
                record("kahler-nondegenerate")
                    .param("n", args.n)
                    .param("alpha", &args.alpha)
                    .note(format!("top-power sign {}", if sign >= 0 { "+" } else { "-" }))
                    .pass(constant),
            );
        }
        Err(e) => {
            rep.push(
                record("kahler-nondegenerate")
                    .param("n", args.n)
                    .param("alpha", &args.alpha)
                    .note(e.to_string())
                    .pass(false),
            );
        }
    }
    Ok(())
}

fn cmd_holonomy(args: &HolonomyArgs, rep: &mut Report) -> Result<(), String> {
    let points = parse_grid(&args.points)?;
    let alg = build_algebra(args.n).map_err(|e| e.to_string())?;
    let metric = MetricAnsatz::family(args.n, args.alpha).map_err(|e| e.to_string())?;
    let est = holonomy_dimension(&metric, &alg, &points, args.rank_tol).map_err(|e| e.to_string())?;
    let target = if (args.alpha - 1.0).abs() < 1e-12 {
        est.target_sp
    } else {
        est.target_su
    };
    let conclusive = est.stabilized && est.spectral_gap >= 1e3;
    rep.push(
        record("holonomy-dim")
            .param("n", args.n)
            .param("alpha", args.alpha)
            .param("points", &args.points)
            .value(est.dim as f64)
            .note(format!(
                "target={} gap={:.3e} J-commute={:.3} ricci-form-trace={:.3e} rounds={}",
                target,
                est.spectral_gap,
                est.j_commute_fraction,
                est.max_ricci_form_trace,
                est.closure_rounds
            ))
            .pass(conclusive && est.dim == target),
    );
    rep.push(
        record("holonomy-su-reduction")
            .param("n", args.n)
            .param("alpha", args.alpha)
            .value(est.max_ricci_form_trace)
            .threshold(1e-9)
            .pass(est.j_commute_fraction == 1.0 && est.max_ricci_form_trace <= 1e-9),
    );
    if !conclusive {
        return Err(format!(
            "inconclusive rank: gap {:.3e}, stabilized {}",
            est.spectral_gap, est.stabilized
        ));
    }
    Ok(())
}

fn cmd_ode(args: &OdeArgs, rep: &mut Report) -> Result<(), String> {
    let canonical = RadialProfile::closed_form(args.n, args.alpha).map_err(|e| e.to_string())?;
    let u0 = match args.u0 {
        Some(u) => u,
        None => canonical.u(args.r0).map_err(|e| e.to_string())?.v,
    };
    let c = RadialProfile::refit_c(args.n, args.alpha, args.r0, u0);
    let truth_profile =
        RadialProfile::with_constant(args.n, args.alpha, c).map_err(|e| e.to_string())?;
    let samples = integrate_ode(args.n, args.alpha, args.r0, u0, args.r1, args.tol)
        .map_err(|e| e.to_string())?;
    let last = samples.last().ok_or("no ODE samples")?;
    let truth = truth_profile.u(last.r).map_err(|e| e.to_string())?.v;
    let err = ((last.u - truth) / (1.0 + truth.abs())).abs();
    rep.push(
        record("ode-vs-closed-form")
            .param("n", args.n)
            .param("alpha", args.alpha)
            .param("r0", args.r0)
            .param("r1", args.r1)
            .param("steps", samples.len())
            .value(err)
            .threshold(1e-8)
            .note(format!("C={:.12}", c))
            .pass(err <= 1e-8),
    );
    Ok(())
}

fn cmd_boundary(args: &BoundaryArgs, rep: &mut Report) -> Result<(), String> {
    let s = boundary_slope(args.n, args.alpha).map_err(|e| e.to_string())?;
    let expect = if s.hyperkahler_bolt {
        2.0
    } else {
        2.0 * (args.n as f64 + 1.0)
    };
    let err = (s.slope - expect).abs();
    let mut rec = record("boundary-slope")
        .param("n", args.n)
        .param("alpha", args.alpha)
        .value(s.slope)
        .threshold(1e-6)
        .pass(err <= 1e-6);
    if s.hyperkahler_bolt {
        rec = rec.note("hyperkähler bolt");
    }
    rep.push(rec);
    Ok(())
}

fn main() {
    let cli = Cli::parse();
    let (name, mode) = match &cli.command {
        Command::VerifyRicci(_) => ("verify-ricci", "numeric"),
        Command::VerifyKahler(_) => ("verify-kahler", "exact"),
        Command::Holonomy(_) => ("holonomy", "numeric"),
        Command::Ode(_) => ("ode", "numeric"),
        Command::Boundary(_) => ("boundary", "numeric"),
    };
    let mut rep = Report::new(name, mode);
    let result = match &cli.command {
        Command::VerifyRicci(a) => cmd_verify_ricci(a, &mut rep),
        Command::VerifyKahler(a) => cmd_verify_kahler(a, &mut rep),
        Command::Holonomy(a) => cmd_holonomy(a, &mut rep),
        Command::Ode(a) => cmd_ode(a, &mut rep),
        Command::Boundary(a) => cmd_boundary(a, &mut rep),
    };
    let text = rep.render(&cli.format);
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                eprintln!("error: cannot write {}: {}", path.display(), e);
                std::process::exit(2);
            }
        }
        None => print!("{}", text),
    }
    match result {
        Err(msg) => {
            eprintln!("error: {}", msg);
            std::process::exit(if rep.summary.total == 0 { 2 } else { 1 });
        }
        Ok(()) => std::process::exit(if rep.all_pass() { 0 } else { 1 }),
    }
}
