//! Command-line front end for `suffridge-core`.

pub mod output;
pub mod svg;

use std::f64::consts::{PI, TAU};
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use suffridge_core::{
    gfamily, kernels, robertson, suffridge, univalence, Complex64, Error, GFamilyParams,
    KernelSpec, RealPolynomial, RobustFamilyParams, SuffridgeParams,
};

use output::{Format, Table};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    Coeffs,
    Eval,
    BoundaryAudit,
    Extremal,
    BrandtCheck,
    Approx,
    Subordination,
    Robertson,
    PhiCheck,
    Univalence,
    Gfamily,
    Zeta,
    Render,
    DkObjective,
}

/// Which polynomial family `--n`, `--j` and `--mu` select.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    /// `S_{N,j}`
    Suffridge,
    /// `S_N(z, mu)`, `0 < mu < pi`
    Robust,
    /// `G_{N,mu}`
    G,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KernelKind {
    Koebe,
    TwoSymmetric,
    Generalized,
}

#[derive(Debug, Parser)]
#[command(
    name = "suffridge",
    version,
    about = "Suffridge polynomials and univalency checks"
)]
pub struct Cli {
    #[arg(value_enum)]
    pub command: Command,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub j: Option<usize>,
    #[arg(long, allow_negative_numbers = true)]
    pub mu: Option<f64>,
    #[arg(long)]
    pub q: Option<f64>,
    #[arg(long)]
    pub radius: Option<f64>,
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long)]
    pub step: Option<f64>,
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(short = 'o', long = "output")]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Family::Suffridge)]
    pub family: Family,
    #[arg(long, value_enum)]
    pub kernel: Option<KernelKind>,
}

/// Result of a command before it is written out.
pub enum Output {
    Data { json: Value, csv: Table },
    Svg(String),
}

#[derive(Debug)]
pub enum CliError {
    Core(Error),
    Io(std::io::Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

impl CliError {
    /// 2 for rejected input, 1 for everything that failed while computing.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(Error::InvalidParameter(_)) => 2,
            _ => 1,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}

impl Cli {
    fn n(&self) -> usize {
        self.n.unwrap_or(5)
    }

    fn suffridge_params(&self) -> Result<SuffridgeParams, Error> {
        SuffridgeParams::new(self.n(), self.j.unwrap_or(1))
    }

    fn mu_required(&self) -> Result<f64, Error> {
        self.mu
            .ok_or_else(|| invalid("--mu is required for this family"))
    }

    fn polynomial(&self) -> Result<RealPolynomial, Error> {
        match self.family {
            Family::Suffridge => Ok(suffridge::coeffs(self.suffridge_params()?)),
            Family::Robust => Ok(univalence::sn_mu_coeffs(RobustFamilyParams::new(
                self.n(),
                self.mu_required()?,
            )?)),
            Family::G => gfamily::g_coeffs(GFamilyParams::new(self.n(), self.mu.unwrap_or(1.0))?),
        }
    }

    fn family_json(&self) -> Value {
        match self.family {
            Family::Suffridge => {
                json!({"family": "suffridge", "n": self.n(), "j": self.j.unwrap_or(1)})
            }
            Family::Robust => json!({"family": "robust", "n": self.n(), "mu": self.mu}),
            Family::G => json!({"family": "g", "n": self.n(), "mu": self.mu.unwrap_or(1.0)}),
        }
    }

    fn samples_or(&self, default: usize) -> Result<usize, Error> {
        match self.samples.unwrap_or(default) {
            0 => Err(invalid("--samples must be positive")),
            s => Ok(s),
        }
    }
}

fn to_json<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

fn merge(mut base: Value, extra: Value) -> Value {
    if let (Value::Object(a), Value::Object(b)) = (&mut base, extra) {
        a.extend(b);
    }
    base
}

fn curve_table(points: &[(f64, Complex64)]) -> (Value, Table) {
    let mut t = Table::new(&["t", "re", "im"]);
    let mut js = Vec::with_capacity(points.len());
    for &(tt, w) in points {
        t.push(vec![tt.into(), w.re.into(), w.im.into()]);
        js.push(json!({"t": tt, "re": w.re, "im": w.im}));
    }
    (Value::Array(js), t)
}

/// `count` coefficient vectors near `base` with the same coefficient sum.
/// Perturbation sizes are spread log-uniformly over `[1e-4, 1]`.
pub fn feasible_perturbations(base: &RealPolynomial, count: usize, seed: u64) -> Vec<Vec<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let a = base.coeffs();
    (0..count)
        .map(|_| {
            let scale = 10f64.powf(-4.0 + 4.0 * rng.random::<f64>());
            let mut d: Vec<f64> = a.iter().map(|_| rng.random_range(-1.0..1.0)).collect();
            let mean = d.iter().sum::<f64>() / d.len() as f64;
            d.iter_mut().for_each(|x| *x -= mean);
            a.iter().zip(d).map(|(x, dx)| x + scale * dx).collect()
        })
        .collect()
}

pub fn execute(cli: &Cli) -> Result<Output, CliError> {
    let data = |json: Value, csv: Table| Ok(Output::Data { json, csv });
    match cli.command {
        Command::Coeffs => {
            let p = cli.polynomial()?;
            let mut t = Table::new(&["k", "a"]);
            for (i, &a) in p.coeffs().iter().enumerate() {
                t.push(vec![(i + 1).into(), a.into()]);
            }
            data(json!(p.coeffs()), t)
        }
        Command::Eval => {
            let p = cli.polynomial()?;
            let r = cli.radius.unwrap_or(1.0);
            if !(r >= 0.0 && r.is_finite()) {
                return Err(invalid("--radius must be finite and nonnegative").into());
            }
            let m = cli.samples_or(512)?;
            let pts: Vec<(f64, Complex64)> = (0..m)
                .map(|k| {
                    let t = TAU * k as f64 / m as f64;
                    (t, p.eval(Complex64::from_polar(r, t)))
                })
                .collect();
            let (js, t) = curve_table(&pts);
            data(js, t)
        }
        Command::BoundaryAudit => {
            let params = cli.suffridge_params()?;
            let m = cli.samples_or(64)?;
            let mut t = Table::new(&[
                "t",
                "printed_re",
                "printed_im",
                "direct_re",
                "direct_im",
                "closed_re",
                "closed_im",
                "delta",
            ]);
            let mut rows = Vec::new();
            let mut max_delta = 0.0_f64;
            for k in 0..m {
                let tt = TAU * (k as f64 + 0.5) / m as f64;
                let a = match suffridge::boundary_formula_eval(params, tt) {
                    Ok(a) => a,
                    Err(Error::SingularDenominator { .. }) => continue,
                    Err(e) => return Err(e.into()),
                };
                let c = suffridge::closed_form_eval(params, Complex64::from_polar(1.0, tt));
                max_delta = max_delta.max(a.delta);
                t.push(vec![
                    tt.into(),
                    a.printed.re.into(),
                    a.printed.im.into(),
                    a.direct.re.into(),
                    a.direct.im.into(),
                    c.re.into(),
                    c.im.into(),
                    a.delta.into(),
                ]);
                rows.push(json!({
                    "t": tt,
                    "printed": [a.printed.re, a.printed.im],
                    "direct": [a.direct.re, a.direct.im],
                    "closed": [c.re, c.im],
                    "delta": a.delta,
                }));
            }
            data(
                json!({"n": params.n(), "j": params.j(), "max_delta": max_delta, "rows": rows}),
                t,
            )
        }
        Command::Extremal => {
            let n = cli.n();
            let p = suffridge::coeffs(SuffridgeParams::new(n, 1)?);
            let m = cli.samples_or(4096)?;
            let min_boundary = (0..m)
                .map(|k| {
                    p.eval(Complex64::from_polar(1.0, TAU * k as f64 / m as f64))
                        .norm()
                })
                .fold(f64::INFINITY, f64::min);
            let js = json!({
                "n": n,
                "value_at_minus_one": suffridge::value_at_minus_one(n),
                "direct_at_minus_one": p.eval_real(-1.0),
                "value_at_plus_one": suffridge::value_at_plus_one(n),
                "direct_at_plus_one": p.eval_real(1.0),
                "min_boundary_modulus": min_boundary,
            });
            let t = Table::from_json(&js);
            data(js, t)
        }
        Command::BrandtCheck => {
            let params = cli.suffridge_params()?;
            let m = cli.samples_or(32)?;
            let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
            let mut t = Table::new(&[
                "re",
                "im",
                "closed_re",
                "closed_im",
                "brandt_re",
                "brandt_im",
                "rel_diff",
                "printed_rel_diff",
            ]);
            let (mut worst, mut worst_printed) = (0.0_f64, 0.0_f64);
            for _ in 0..m {
                let z = Complex64::from_polar(
                    0.95 * rng.random::<f64>().sqrt(),
                    TAU * rng.random::<f64>(),
                );
                let c = suffridge::closed_form_eval(params, z);
                let b = suffridge::brandt_eval(params, z)?;
                let pr = suffridge::brandt_eval_with(params, z, suffridge::BrandtReading::Printed)
                    .map(|v| (v - c).norm() / c.norm().max(1e-300))
                    .unwrap_or(f64::NAN);
                let rel = (b - c).norm() / c.norm().max(1e-300);
                worst = worst.max(rel);
                worst_printed = worst_printed.max(pr);
                t.push(vec![
                    z.re.into(),
                    z.im.into(),
                    c.re.into(),
                    c.im.into(),
                    b.re.into(),
                    b.im.into(),
                    rel.into(),
                    pr.into(),
                ]);
            }
            data(
                json!({
                    "n": params.n(),
                    "j": params.j(),
                    "samples": m,
                    "seed": cli.seed,
                    "max_rel_diff": worst,
                    "max_rel_diff_printed": worst_printed,
                }),
                t,
            )
        }
        Command::Approx => {
            let params = cli.suffridge_params()?;
            let r = cli.radius.unwrap_or(0.5);
            let kernel = match (cli.kernel, cli.q) {
                (Some(KernelKind::Generalized), Some(q)) | (None, Some(q)) => {
                    KernelSpec::generalized(q)?
                }
                (Some(KernelKind::Generalized), None) => {
                    return Err(invalid("--kernel generalized needs --q").into())
                }
                (Some(KernelKind::TwoSymmetric), _) => KernelSpec::TwoSymmetric,
                (Some(KernelKind::Koebe), _) | (None, None) => KernelSpec::Koebe,
            };
            let m = cli.samples_or(4096)?;
            let err = kernels::approx_error(params, r, kernel, m)?;
            let js = json!({
                "n": params.n(),
                "j": params.j(),
                "radius": r,
                "kernel": to_json(&kernel),
                "samples": m,
                "error": err,
                "n_times_error": params.n() as f64 * err,
            });
            let t = Table::from_json(&js);
            data(js, t)
        }
        Command::Subordination => {
            let n = cli.n();
            let m = cli.samples_or(1024)?;
            let sub = kernels::subordination_check(n, m)?;
            let dim = if n >= 2 {
                to_json(&kernels::dimitrov_interval_check(n)?)
            } else {
                Value::Null
            };
            let js = json!({"subordination": to_json(&sub), "dimitrov": dim});
            let t = Table::from_json(&js);
            data(js, t)
        }
        Command::Robertson => {
            let params = cli.suffridge_params()?;
            let p = suffridge::coeffs(params);
            let m = cli.samples_or(201)?;
            let table = robertson::measure_table(&p, m)?;
            let q = cli.q.unwrap_or(params.j() as f64 / (params.n() + 1) as f64);
            let step = robertson::step_distance(params, q, m.max(2001))?;
            let mut t = Table::new(&["t", "mu", "density"]);
            for i in 0..table.grid.len() {
                t.push(vec![
                    table.grid[i].into(),
                    table.mu[i].into(),
                    table.density[i].into(),
                ]);
            }
            let js = json!({
                "n": params.n(),
                "j": params.j(),
                "total_mass": robertson::total_mass(&p)?,
                "min_density": table.min_density(),
                "nondecreasing": table.is_nondecreasing(1e-12),
                "step": to_json(&step),
                "table": to_json(&table),
            });
            data(js, t)
        }
        Command::PhiCheck => {
            let n = cli.n();
            let mus: Vec<f64> = match cli.mu {
                Some(mu) => vec![mu],
                None => {
                    let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
                    (0..cli.samples_or(50)?)
                        .map(|_| rng.random_range(1e-3..PI - 1e-3))
                        .collect()
                }
            };
            let grid = cli.samples.unwrap_or(0).max(4096).max(8 * n);
            let mut t = Table::new(&[
                "mu",
                "residual",
                "typically_real",
                "min_im",
                "witness_t",
                "witness_im",
            ]);
            let mut cases = Vec::new();
            let mut max_res = 0.0_f64;
            for mu in mus {
                let p = univalence::sn_mu_coeffs(RobustFamilyParams::new(n, mu)?);
                let res = univalence::phi_identity_residual(n, mu);
                let (tr, min_im) = univalence::typically_real_check(&p, grid)?;
                let h = 2.0 * PI / (n + 1) as f64;
                let wt = if mu + h < PI { mu + h } else { mu - h };
                let wim = p.im_on_circle(wt);
                max_res = max_res.max(res);
                t.push(vec![
                    mu.into(),
                    res.into(),
                    tr.into(),
                    min_im.into(),
                    wt.into(),
                    wim.into(),
                ]);
                cases.push(json!({
                    "mu": mu, "residual": res, "typically_real": tr, "min_im": min_im,
                    "witness_t": wt, "witness_im": wim,
                }));
            }
            data(json!({"n": n, "max_residual": max_res, "cases": cases}), t)
        }
        Command::Univalence => {
            let p = cli.polynomial()?;
            let report = univalence::univalence_report(&p)?;
            let qe = if p.degree() >= 2 {
                to_json(&univalence::quasi_extremal_check(&p)?)
            } else {
                Value::Null
            };
            let js = merge(
                cli.family_json(),
                json!({"report": to_json(&report), "quasi_extremal": qe}),
            );
            let t = Table::from_json(&js);
            data(js, t)
        }
        Command::Gfamily => {
            let params = GFamilyParams::new(cli.n(), cli.mu.unwrap_or(1.0))?;
            let g = gfamily::g_coeffs(params)?;
            let r = cli.radius.unwrap_or(0.5);
            let limit = gfamily::g_limit_check(params, r, cli.samples_or(1024)?)?;
            let report = univalence::univalence_report(&g)?;
            let js = json!({
                "n": params.n(),
                "mu": params.mu(),
                "coeffs": g.coeffs(),
                "report": to_json(&report),
                "radius": r,
                "limit_error": limit,
            });
            let t = Table::from_json(&js);
            data(js, t)
        }
        Command::Zeta => {
            let est = gfamily::zeta_estimate(
                cli.n.unwrap_or(11),
                cli.step.unwrap_or(0.05),
                cli.tol.unwrap_or(1e-3),
            )?;
            let js = to_json(&est);
            let t = Table::from_json(&js);
            data(js, t)
        }
        Command::Render => {
            let p = cli.polynomial()?;
            let spec = svg::RenderSpec::new(512, 512, cli.samples_or(4096)?, "black")?;
            let curve: Vec<Complex64> = (0..spec.samples)
                .map(|k| {
                    p.eval(Complex64::from_polar(
                        1.0,
                        TAU * k as f64 / spec.samples as f64,
                    ))
                })
                .collect();
            let mut marks = Vec::new();
            if p.degree() >= 2 {
                let mut rs = suffridge_core::roots::roots(&p.derivative())?;
                rs.retain(|r| (r.norm() - 1.0).abs() <= univalence::TOL_QE);
                marks = rs.iter().map(|r| p.eval(r / r.norm())).collect();
            }
            Ok(Output::Svg(svg::render(&spec, &curve, &marks)))
        }
        Command::DkObjective => {
            let p = cli.polynomial()?;
            let report = univalence::dk_objective_report(&p)?;
            let count = cli.samples.unwrap_or(100);
            let base = p.normalized_at_one()?;
            let mut best = f64::NEG_INFINITY;
            let mut t = Table::new(&["index", "objective"]);
            for (i, a) in feasible_perturbations(&base, count, cli.seed)
                .into_iter()
                .enumerate()
            {
                let v = univalence::dk_objective(&RealPolynomial::new(a)?)?;
                best = best.max(v);
                t.push(vec![i.into(), v.into()]);
            }
            let js = merge(
                cli.family_json(),
                json!({
                    "objective": report.objective,
                    "argmin_t": report.argmin_t,
                    "crossings": to_json(&report.crossings),
                    "tangencies": to_json(&report.tangencies),
                    "perturbations": count,
                    "seed": cli.seed,
                    "best_perturbed": if count > 0 { json!(best) } else { Value::Null },
                    "margin": if count > 0 { json!(report.objective - best) } else { Value::Null },
                }),
            );
            if count == 0 {
                t = Table::from_json(&js);
            }
            data(js, t)
        }
    }
}

/// Runs the command and writes its output; returns the process exit code.
pub fn run(cli: &Cli) -> i32 {
    let result = execute(cli).and_then(|out| {
        let bytes = match out {
            Output::Svg(s) => s.into_bytes(),
            Output::Data { json, csv } => match cli.format {
                Format::Json => output::render_json(&json).into_bytes(),
                Format::Csv => csv.render().into_bytes(),
            },
        };
        match &cli.output {
            Some(path) => output::write_atomic(path, &bytes)?,
            None => std::io::stdout().lock().write_all(&bytes)?,
        }
        Ok(())
    });
    match result {
        Ok(()) => 0,
        // reader went away (e.g. `| head`)
        Err(CliError::Io(e)) if e.kind() == std::io::ErrorKind::BrokenPipe => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
