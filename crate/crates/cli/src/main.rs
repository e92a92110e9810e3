mod args;
mod literal;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::Parser;
use serde_json::{json, Value};

use args::*;
use iet_core::experiments::{
    geodesic_compactness_trace, line_scan, mahler_scan, recurrence_diagnostic, to_csv, DiagnosticConfig,
    MeasureSampler, SamplerKind, ScanConfig,
};
use iet_core::pairing::{cone_contains, is_positive_pair, null_space, q_matrix, PositivityConfig, PositivityStatus};
use iet_core::{Direction, Iet, Matrix2, Permutation, QSqrt5, Rational, SaddleConnection, Scalar, TranslationSurface};
use literal::{backend_for, convert, parse_lit, parse_list, parse_usize_list, parse_window, Backend, FromLit, Lit, ParseError};

#[derive(Debug)]
enum CliError {
    Parse(String),
    Io(String),
    Core(iet_core::Error),
}

impl CliError {
    fn code(&self) -> &'static str {
        match self {
            CliError::Parse(_) => "ParseError",
            CliError::Io(_) => "IoError",
            CliError::Core(e) => e.code(),
        }
    }

    fn message(&self) -> String {
        match self {
            CliError::Parse(m) | CliError::Io(m) => m.clone(),
            CliError::Core(e) => e.to_string(),
        }
    }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError::Parse(e.0)
    }
}

impl From<iet_core::Error> for CliError {
    fn from(e: iet_core::Error) -> Self {
        CliError::Core(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

/// What a command produced: text for stdout and whether to exit with status 2.
struct Outcome {
    stdout: String,
    rejected: bool,
}

impl Outcome {
    fn json(v: Value) -> Self {
        Self {
            stdout: v.to_string(),
            rejected: false,
        }
    }
}

fn main() -> ExitCode {
    let cfg = RunConfig::parse();
    match execute(cfg) {
        Ok(out) => {
            if !out.stdout.is_empty() {
                print!("{}", out.stdout);
                if !out.stdout.ends_with('\n') {
                    println!();
                }
            }
            if out.rejected {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("{}", json!({"error": e.code(), "message": e.message()}));
            ExitCode::from(1)
        }
    }
}

fn execute(cfg: RunConfig) -> CliResult<Outcome> {
    let print = cfg.print_config;
    let cfg = match &cfg.command {
        Command::Run { config } => load_config(config)?,
        _ => cfg,
    };
    if print {
        return Ok(Outcome {
            stdout: config_json(&cfg)?,
            rejected: false,
        });
    }
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(n) = cfg.threads {
        pool = pool.num_threads(n);
    }
    let pool = pool.build().map_err(|e| CliError::Io(e.to_string()))?;
    pool.install(|| dispatch(&cfg))
}

fn config_json(cfg: &RunConfig) -> CliResult<String> {
    serde_json::to_string_pretty(cfg).map_err(|e| CliError::Io(e.to_string()))
}

fn load_config(path: &str) -> CliResult<RunConfig> {
    let text = fs::read_to_string(path)?;
    let loaded: RunConfig = serde_json::from_str(&text).map_err(|e| CliError::Parse(format!("{path}: {e}")))?;
    if let Command::Run { .. } = loaded.command {
        return Err(CliError::Parse("a saved configuration cannot itself be a `run`".into()));
    }
    Ok(loaded)
}

/// Runs `$body` with `$S` bound to the scalar type of `$backend`.
macro_rules! with_backend {
    ($backend:expr, $S:ident, $body:expr) => {
        match $backend {
            Backend::Exact => {
                type $S = Rational;
                $body
            }
            Backend::Golden => {
                type $S = QSqrt5;
                $body
            }
            Backend::Float => {
                type $S = f64;
                $body
            }
        }
    };
}

fn choose(lits: &[&[Lit]], exact: bool) -> CliResult<Backend> {
    let backend = backend_for(lits.iter().flat_map(|l| l.iter()), exact)?;
    if backend == Backend::Float {
        eprintln!("{}", json!({"warning": "float literal given; computing in binary64"}));
    }
    Ok(backend)
}

fn perm_of(s: &str) -> CliResult<Permutation> {
    Ok(Permutation::new(parse_usize_list(s)?)?)
}

fn num<S: Scalar>(v: &S) -> Value {
    if S::EXACT {
        json!(v.to_string())
    } else {
        json!(v.to_f64())
    }
}

fn nums<S: Scalar>(v: &[S]) -> Value {
    Value::Array(v.iter().map(num).collect())
}

fn dispatch(cfg: &RunConfig) -> CliResult<Outcome> {
    match &cfg.command {
        Command::Perm(PermCmd::Info { sigma }) => perm_info(sigma),
        Command::Iet(cmd) => iet_cmd(cmd, cfg.exact),
        Command::Pair(cmd) => pair_cmd(cmd, cfg.exact),
        Command::Surface(cmd) => surface_cmd(cmd, cfg.exact),
        Command::Exp(cmd) => exp_cmd(cmd, cfg.exact),
        Command::Run { .. } => Err(CliError::Parse("nested `run`".into())),
    }
}

fn perm_info(sigma: &str) -> CliResult<Outcome> {
    let p = perm_of(sigma)?;
    let mut v = json!({
        "sigma": p.images(),
        "d": p.d(),
        "irreducible": p.is_irreducible(),
    });
    if p.is_irreducible() {
        let st = p.singularity_data()?;
        v["admissible"] = json!(p.is_admissible()?);
        v["k"] = json!(st.k);
        v["orders"] = json!(st.orders);
        v["cone_angles_over_two_pi"] = json!(st.cone_angles_over_two_pi());
        v["genus"] = json!(st.genus);
        v["rank_q"] = json!(q_matrix(&p).rank());
    }
    Ok(Outcome::json(v))
}

fn iet_cmd(cmd: &IetCmd, exact: bool) -> CliResult<Outcome> {
    match cmd {
        IetCmd::Eval { iet, x, inverse } => {
            let (p, a) = (perm_of(&iet.sigma)?, parse_list(&iet.a)?);
            let x = vec![parse_lit(x)?];
            with_backend!(choose(&[&a, &x], exact)?, S, {
                let t = Iet::new(p, convert::<S>(&a))?;
                let x = S::from_lit(&x[0]);
                let y = if *inverse { t.evaluate_inverse(&x)? } else { t.evaluate(&x)? };
                Ok(Outcome::json(json!({"x": num(&x), "y": num(&y), "interval": t.interval_of(&x)})))
            })
        }
        IetCmd::Orbit { iet, x, n, backward } => {
            let (p, a) = (perm_of(&iet.sigma)?, parse_list(&iet.a)?);
            let x = vec![parse_lit(x)?];
            with_backend!(choose(&[&a, &x], exact)?, S, {
                let t = Iet::new(p, convert::<S>(&a))?;
                let dir = if *backward { Direction::Backward } else { Direction::Forward };
                let orbit = t.orbit(&S::from_lit(&x[0]), *n, dir)?;
                Ok(Outcome::json(json!({"orbit": nums(&orbit)})))
            })
        }
        IetCmd::Eps { iet, n } => {
            let (p, a) = (perm_of(&iet.sigma)?, parse_list(&iet.a)?);
            let ns = parse_usize_list(n)?;
            if ns.windows(2).any(|w| w[0] > w[1]) {
                return Err(CliError::Parse("--n must be nondecreasing".into()));
            }
            with_backend!(choose(&[&a], exact)?, S, {
                let t = Iet::new(p, convert::<S>(&a))?;
                let eps = t.epsilon_trace(&ns);
                let rows: Vec<Value> = ns
                    .iter()
                    .zip(&eps)
                    .map(|(&n, e)| json!({"n": n, "eps_n": num(e), "n_eps_n": n as f64 * e.to_f64()}))
                    .collect();
                Ok(Outcome::json(Value::Array(rows)))
            })
        }
        IetCmd::Connections { iet, m_max } => {
            let (p, a) = (perm_of(&iet.sigma)?, parse_list(&iet.a)?);
            with_backend!(choose(&[&a], exact)?, S, {
                let t = Iet::new(p, convert::<S>(&a))?;
                Ok(Outcome::json(json!(t.detect_connections(*m_max))))
            })
        }
    }
}

fn positivity_config(a: &PositivityArgs) -> PositivityConfig {
    PositivityConfig {
        seeds: a.seeds,
        orbit_len: a.orbit_len,
        m_max: a.m_max,
        margin: a.margin,
        rng_seed: a.rng_seed,
    }
}

fn pair_cmd(cmd: &PairCmd, exact: bool) -> CliResult<Outcome> {
    match cmd {
        PairCmd::Q { sigma } => {
            let q = q_matrix(&perm_of(sigma)?);
            Ok(Outcome::json(json!({
                "matrix": q.matrix,
                "rank": q.rank(),
                "nullity": q.nullity(),
            })))
        }
        PairCmd::Cone { sigma, b } => {
            let p = perm_of(sigma)?;
            let b = parse_list(b)?;
            with_backend!(choose(&[&b], exact)?, S, {
                let b = convert::<S>(&b);
                if b.len() != p.d() {
                    return Err(iet_core::Error::DimensionMismatch {
                        expected: p.d(),
                        got: b.len(),
                    }
                    .into());
                }
                Ok(Outcome::json(json!({"in_cone": cone_contains(&p, &b)})))
            })
        }
        PairCmd::Null { sigma } => Ok(Outcome::json(json!({"basis": null_space(&perm_of(sigma)?)?}))),
        PairCmd::Positive {
            iet,
            b,
            require_positive,
            positivity,
        } => {
            let (p, a, b) = (perm_of(&iet.sigma)?, parse_list(&iet.a)?, parse_list(b)?);
            with_backend!(choose(&[&a, &b], exact)?, S, {
                let v = is_positive_pair(&p, &convert::<S>(&a), &convert::<S>(&b), &positivity_config(positivity))?;
                Ok(Outcome {
                    stdout: json!(v).to_string(),
                    rejected: *require_positive && v.status == PositivityStatus::NotPositive,
                })
            })
        }
    }
}

fn write_svg<S: Scalar>(q: &TranslationSurface<S>, path: &Option<String>) -> CliResult<()> {
    if let Some(path) = path {
        fs::write(path, q.to_svg())?;
    }
    Ok(())
}

/// The suspension with `h_s`, then `g_t`, then the rotation applied.
fn build_surface<S: FromLit>(p: &Permutation, a: &[Lit], b: &[Lit], m: &Transforms) -> CliResult<TranslationSurface<S>> {
    let mut q = TranslationSurface::suspend(p, &convert::<S>(a), &convert::<S>(b))?;
    if let Some(s) = &m.h {
        q = q.apply_matrix(&Matrix2::horocycle(S::from_lit(s)))?;
    }
    let lift = |m: Matrix2<f64>| Matrix2::new(S::from_f64(m.a), S::from_f64(m.b), S::from_f64(m.c), S::from_f64(m.d));
    if let Some(t) = m.g {
        q = q.apply_matrix(&lift(Matrix2::geodesic(t)))?;
    }
    if let Some(th) = m.r {
        q = q.apply_matrix(&lift(Matrix2::rotation(th)))?;
    }
    Ok(q)
}

struct Transforms {
    h: Option<Lit>,
    g: Option<f64>,
    r: Option<f64>,
}

fn float_arg(s: &Option<String>) -> CliResult<Option<f64>> {
    s.as_deref()
        .map(|v| match parse_lit(v)? {
            Lit::Rational(r) => Ok(Scalar::to_f64(&r)),
            Lit::Float(f) => Ok(f),
            Lit::Phi(_) => Err(CliError::Parse("expected a number".into())),
        })
        .transpose()
}

struct SurfaceInput {
    p: Permutation,
    a: Vec<Lit>,
    b: Vec<Lit>,
    m: Transforms,
    backend: Backend,
}

fn surface_input(s: &SurfaceArgs, extra: &[&[Lit]], exact: bool) -> CliResult<SurfaceInput> {
    let p = perm_of(&s.iet.sigma)?;
    let a = parse_list(&s.iet.a)?;
    let b = parse_list(&s.b)?;
    let h = s.h.as_deref().map(parse_lit).transpose()?;
    let m = Transforms {
        h,
        g: float_arg(&s.g)?,
        r: float_arg(&s.r)?,
    };
    let hs: Vec<Lit> = m.h.iter().cloned().collect();
    let mut lits: Vec<&[Lit]> = vec![&a, &b, &hs];
    lits.extend_from_slice(extra);
    let mut backend = backend_for(lits.iter().flat_map(|l| l.iter()), exact)?;
    if m.g.is_some() || m.r.is_some() {
        if exact {
            return Err(CliError::Parse("--g and --r need the float backend, rejected by --exact".into()));
        }
        backend = Backend::Float;
    }
    if backend == Backend::Float {
        eprintln!("{}", json!({"warning": "computing in binary64"}));
    }
    Ok(SurfaceInput { p, a, b, m, backend })
}

fn sc_json<S: Scalar>(sc: &SaddleConnection<S>) -> Value {
    json!({
        "holonomy": [num(&sc.holonomy.0), num(&sc.holonomy.1)],
        "length": num(&sc.length()),
        "endpoints": [sc.endpoints.0, sc.endpoints.1],
        "class": sc.class,
    })
}

fn surface_cmd(cmd: &SurfaceCmd, exact: bool) -> CliResult<Outcome> {
    match cmd {
        SurfaceCmd::Suspend { surface } => {
            let inp = surface_input(surface, &[], exact)?;
            with_backend!(inp.backend, S, {
                let q = build_surface::<S>(&inp.p, &inp.a, &inp.b, &inp.m)?;
                write_svg(&q, &surface.svg)?;
                Ok(Outcome::json(q.to_json()))
            })
        }
        SurfaceCmd::Flow { surface } => {
            let inp = surface_input(surface, &[], exact)?;
            with_backend!(inp.backend, S, {
                let q = build_surface::<S>(&inp.p, &inp.a, &inp.b, &inp.m)?;
                write_svg(&q, &surface.svg)?;
                let t = q.vertical_return_map()?;
                Ok(Outcome::json(json!({"sigma": t.perm().images(), "a": nums(t.lengths())})))
            })
        }
        SurfaceCmd::Phi { surface, rho } => {
            let rho = rho.as_deref().map(parse_lit).transpose()?;
            let rs: Vec<Lit> = rho.iter().cloned().collect();
            let inp = surface_input(surface, &[&rs], exact)?;
            with_backend!(inp.backend, S, {
                let q = build_surface::<S>(&inp.p, &inp.a, &inp.b, &inp.m)?;
                write_svg(&q, &surface.svg)?;
                match &rho {
                    Some(r) => {
                        let all = q.saddle_connections_up_to(&S::from_lit(r));
                        Ok(Outcome::json(json!({
                            "rho": num(&S::from_lit(r)),
                            "connections": all.iter().map(sc_json).collect::<Vec<_>>(),
                        })))
                    }
                    None => {
                        let (phi, sc) = q.shortest_sc();
                        Ok(Outcome::json(json!({"phi": num(&phi), "connection": sc_json(&sc)})))
                    }
                }
            })
        }
        SurfaceCmd::Horiz { surface } => {
            let inp = surface_input(surface, &[], exact)?;
            with_backend!(inp.backend, S, {
                let q = build_surface::<S>(&inp.p, &inp.a, &inp.b, &inp.m)?;
                write_svg(&q, &surface.svg)?;
                let hs = q.horizontal_saddle_connections();
                Ok(Outcome::json(json!(hs.iter().map(sc_json).collect::<Vec<_>>())))
            })
        }
        SurfaceCmd::Rel { surface, rel_dir, t } => {
            let r = parse_list(rel_dir)?;
            let t = vec![parse_lit(t)?];
            let inp = surface_input(surface, &[&r, &t], exact)?;
            with_backend!(inp.backend, S, {
                let q = build_surface::<S>(&inp.p, &inp.a, &inp.b, &inp.m)?;
                let moved = q.rel_deform(&convert::<S>(&r), &S::from_lit(&t[0]))?;
                write_svg(&moved, &surface.svg)?;
                Ok(Outcome::json(moved.to_json()))
            })
        }
    }
}

fn diagnostic_config(s: &ScheduleArgs) -> CliResult<DiagnosticConfig> {
    if s.cap < 4 || s.cap > 40 {
        return Err(CliError::Parse(format!("--cap {} outside 4..=40", s.cap)));
    }
    let mut cfg = DiagnosticConfig::with_cap(s.cap);
    cfg.zeta_lo = s.zeta;
    Ok(cfg)
}

fn sampler(s: &ScanArgs) -> MeasureSampler {
    let kind = match s.sampler {
        SamplerName::Lebesgue => SamplerKind::Lebesgue,
        SamplerName::Cantor => SamplerKind::CantorCoinToss { depth: s.depth },
        SamplerName::Grid => SamplerKind::Grid,
    };
    MeasureSampler::new(kind, s.seed)
}

/// `out.csv` → `out.summary.json`
fn summary_path(csv: &Path) -> PathBuf {
    let stem = csv.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    csv.with_file_name(format!("{stem}.summary.json"))
}

/// Writes the CSV and its summary next to it, or returns the CSV for stdout.
fn emit(csv: String, summary: Value, out: &Option<String>) -> CliResult<Outcome> {
    match out {
        Some(path) => {
            let path = Path::new(path);
            fs::write(path, csv)?;
            let text = serde_json::to_string_pretty(&summary).map_err(|e| CliError::Io(e.to_string()))?;
            fs::write(summary_path(path), text + "\n")?;
            Ok(Outcome::json(summary))
        }
        None => Ok(Outcome {
            stdout: csv,
            rejected: false,
        }),
    }
}

fn exp_cmd(cmd: &ExpCmd, exact: bool) -> CliResult<Outcome> {
    match cmd {
        ExpCmd::LineScan {
            iet,
            b,
            scan,
            positivity,
        } => {
            let (p, a, b) = (perm_of(&iet.sigma)?, parse_list(&iet.a)?, parse_list(b)?);
            let cfg = ScanConfig {
                samples: scan.samples,
                window: parse_window(&scan.window)?,
                diagnostic: diagnostic_config(&scan.schedule)?,
                positivity: positivity_config(positivity),
            };
            with_backend!(choose(&[&a, &b], exact)?, S, {
                let res = line_scan(&p, &convert::<S>(&a), &convert::<S>(&b), &sampler(scan), &cfg)?;
                emit(to_csv(&res.records, &res.verdicts), json!(res.summary), &scan.out)
            })
        }
        ExpCmd::Mahler { d, scan } => {
            let cfg = diagnostic_config(&scan.schedule)?;
            let res = mahler_scan(*d, &sampler(scan), scan.samples, parse_window(&scan.window)?, &cfg)?;
            emit(to_csv(&res.records, &res.verdicts), json!(res.summary), &scan.out)
        }
        ExpCmd::Trace {
            iet,
            b,
            t_max,
            t_step,
            out,
        } => {
            if !(*t_step > 0.0) || !(*t_max >= 0.0) {
                return Err(CliError::Parse("--t-step must be positive and --t-max nonnegative".into()));
            }
            let steps = (t_max / t_step + 1e-9).floor() as usize;
            let grid: Vec<f64> = (0..=steps).map(|k| k as f64 * t_step).collect();
            let (p, a, b) = (perm_of(&iet.sigma)?, parse_list(&iet.a)?, parse_list(b)?);
            with_backend!(choose(&[&a, &b], exact)?, S, {
                let tr = geodesic_compactness_trace(&p, &convert::<S>(&a), &convert::<S>(&b), &grid)?;
                let holds = tr.record.phi_trace.iter().all(|p| p.holds);
                let verdict = if holds { "holds" } else { "fails" }.to_string();
                let summary = json!({
                    "c1": tr.c1,
                    "c2": tr.c2,
                    "kappa1": tr.kappa1,
                    "kappa2": tr.kappa2,
                    "holds": holds,
                    "classification": tr.record.classification.as_str(),
                    "first": tr.first,
                });
                emit(to_csv(std::slice::from_ref(&tr.record), &[verdict]), summary, out)
            })
        }
        ExpCmd::Diagnose { iet, schedule, out } => {
            let (p, a) = (perm_of(&iet.sigma)?, parse_list(&iet.a)?);
            let cfg = diagnostic_config(schedule)?;
            with_backend!(choose(&[&a], exact)?, S, {
                let r = recurrence_diagnostic(&p, &convert::<S>(&a), &cfg)?;
                let summary = json!({
                    "classification": r.classification.as_str(),
                    "zeta_lo": r.zeta_lo,
                    "eps_trace": r.eps_trace,
                });
                emit(to_csv(std::slice::from_ref(&r), &[String::new()]), summary, out)
            })
        }
    }
}
