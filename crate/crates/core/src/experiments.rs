//! Recurrence diagnostics and parameter scans.
//!
//! Recurrence and bounded type are statements about `lim sup` / `lim inf` of
//! `n·ε_n`; here they are read off a finite geometric schedule against a
//! threshold `ζ_lo`, so every classification is a proxy.

use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::iet::Iet;
use crate::pairing::{cone_contains, heights, is_positive_pair, PositivityConfig, PositivityStatus};
use crate::perm::Permutation;
use crate::scalar::Scalar;
use crate::surface::{Matrix2, TranslationSurface};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Classification {
    RecurrentProxy,
    BoundedProxy,
    NonRecurrentProxy,
    Degenerate,
}

impl Classification {
    /// Bounded type implies recurrence type.
    pub fn is_recurrent(self) -> bool {
        matches!(self, Self::RecurrentProxy | Self::BoundedProxy)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Self::RecurrentProxy => "RecurrentProxy",
            Self::BoundedProxy => "BoundedProxy",
            Self::NonRecurrentProxy => "NonRecurrentProxy",
            Self::Degenerate => "Degenerate",
        }
    }
}

/// `2^lo, 2^{lo+1}, …, 2^hi`
pub fn geometric_schedule(lo: u32, hi: u32) -> Vec<usize> {
    (lo..=hi).map(|k| 1usize << k).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiagnosticConfig {
    pub schedule: Vec<usize>,
    /// Absolute threshold; when unset, `zeta_rel·Σa_i`.
    pub zeta_lo: Option<f64>,
    pub zeta_rel: f64,
}

impl Default for DiagnosticConfig {
    fn default() -> Self {
        Self {
            schedule: geometric_schedule(4, 20),
            zeta_lo: None,
            zeta_rel: 0.05,
        }
    }
}

impl DiagnosticConfig {
    pub fn with_cap(cap_exp: u32) -> Self {
        Self {
            schedule: geometric_schedule(4, cap_exp),
            ..Self::default()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EpsPoint {
    pub n: usize,
    pub eps_n: f64,
    pub n_eps_n: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PhiPoint {
    pub t: f64,
    pub phi: f64,
    /// `n(t) = ⌊κ₂ e^{t/2}⌋`
    pub n: usize,
    pub eps_n: f64,
    pub n_eps_n: f64,
    /// `κ₂·φ(g_t q)`
    pub bound: f64,
    /// `n(t)·ε_{n(t)} ≤ κ₂·φ(g_t q)`
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiagnosticsRecord {
    pub s: f64,
    pub a: Vec<f64>,
    /// Exact lengths, when the input was exact.
    pub a_exact: Option<Vec<String>>,
    pub positivity: Option<PositivityStatus>,
    pub connections_found: Option<usize>,
    pub eps_trace: Vec<EpsPoint>,
    pub phi_trace: Vec<PhiPoint>,
    pub classification: Classification,
    pub zeta_lo: f64,
    pub schedule: Vec<usize>,
}

/// Tolerance under which `ε_n` counts as zero.
fn eps_zero<S: Scalar>(eps: &S, total: f64) -> bool {
    if S::EXACT {
        eps.is_zero()
    } else {
        eps.to_f64() <= crate::iet::FLOAT_REL_TOL * total
    }
}

/// `n·ε_n` over the schedule and the resulting classification.
pub fn recurrence_diagnostic<S: Scalar>(p: &Permutation, a: &[S], cfg: &DiagnosticConfig) -> Result<DiagnosticsRecord> {
    if cfg.schedule.is_empty() || cfg.schedule.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidLengths("schedule must be nonempty and increasing".into()));
    }
    let t = Iet::new(p.clone(), a.to_vec())?;
    let total = t.total().to_f64();
    let zeta = cfg.zeta_lo.unwrap_or(cfg.zeta_rel * total);
    let eps = t.epsilon_trace(&cfg.schedule);
    let degenerate = eps.iter().any(|e| eps_zero(e, total));
    let eps_trace: Vec<EpsPoint> = cfg
        .schedule
        .iter()
        .zip(&eps)
        .map(|(&n, e)| {
            let e = e.to_f64();
            EpsPoint {
                n,
                eps_n: e,
                n_eps_n: n as f64 * e,
            }
        })
        .collect();
    let classification = if degenerate {
        Classification::Degenerate
    } else if eps_trace.iter().all(|p| p.n_eps_n >= zeta) {
        Classification::BoundedProxy
    } else if eps_trace[cfg.schedule.len() / 2..].iter().any(|p| p.n_eps_n >= zeta) {
        Classification::RecurrentProxy
    } else {
        Classification::NonRecurrentProxy
    };
    Ok(DiagnosticsRecord {
        s: 0.0,
        a: a.iter().map(Scalar::to_f64).collect(),
        a_exact: S::EXACT.then(|| a.iter().map(ToString::to_string).collect()),
        positivity: None,
        connections_found: None,
        eps_trace,
        phi_trace: Vec::new(),
        classification,
        zeta_lo: zeta,
        schedule: cfg.schedule.clone(),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SamplerKind {
    /// Uniform on the window.
    Lebesgue,
    /// Coin tossing on the middle-thirds Cantor set, mapped onto the window.
    CantorCoinToss { depth: u32 },
    /// Evenly spaced, endpoints included.
    Grid,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MeasureSampler {
    pub kind: SamplerKind,
    pub seed: u64,
}

fn stream(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// `Σ_{k≤depth} d_k 3^{−k}` with `d_k ∈ {0, 2}`.
pub fn cantor_point(bits: &[bool]) -> f64 {
    let mut scale = 1.0;
    let mut x = 0.0;
    for &b in bits {
        scale /= 3.0;
        if b {
            x += 2.0 * scale;
        }
    }
    x
}

fn cantor_sample(seed: u64, index: u64, depth: u32) -> f64 {
    let mut rng = stream(seed, index);
    let bits: Vec<bool> = (0..depth).map(|_| rng.gen::<bool>()).collect();
    cantor_point(&bits)
}

/// `count` independent coin-tossing samples in `[0, 1]`.
pub fn cantor_sampler(depth: u32, count: usize, rng_seed: u64) -> Result<Vec<f64>> {
    if depth == 0 {
        return Err(Error::NonpositiveParameter(0.0));
    }
    Ok((0..count as u64)
        .map(|i| cantor_sample(rng_seed, i, depth))
        .collect())
}

impl MeasureSampler {
    pub fn new(kind: SamplerKind, seed: u64) -> Self {
        Self { kind, seed }
    }

    /// Sample number `i` depends only on the seed and `i`.
    pub fn points(&self, count: usize, window: (f64, f64)) -> Vec<f64> {
        let (lo, hi) = window;
        let unit: Vec<f64> = match self.kind {
            SamplerKind::Lebesgue => (0..count as u64)
                .map(|i| stream(self.seed, i).gen::<f64>())
                .collect(),
            SamplerKind::CantorCoinToss { depth } => (0..count as u64)
                .map(|i| cantor_sample(self.seed, i, depth))
                .collect(),
            SamplerKind::Grid => match count {
                0 => Vec::new(),
                1 => vec![0.5],
                _ => (0..count).map(|i| i as f64 / (count - 1) as f64).collect(),
            },
        };
        unit.into_iter().map(|u| lo + (hi - lo) * u).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanSummary {
    pub samples: usize,
    pub recurrent: usize,
    pub bounded: usize,
    pub non_recurrent: usize,
    pub degenerate: usize,
    /// Share of `RecurrentProxy` or `BoundedProxy` records.
    pub recurrent_fraction: f64,
    /// Parameters classified neither recurrent nor bounded.
    pub exceptional: Vec<f64>,
    /// Mahler scans: share of samples passing the cone check.
    pub cone_fraction: Option<f64>,
}

impl ScanSummary {
    pub fn of(records: &[DiagnosticsRecord]) -> Self {
        let count = |c| records.iter().filter(|r| r.classification == c).count();
        let recurrent_total = records.iter().filter(|r| r.classification.is_recurrent()).count();
        Self {
            samples: records.len(),
            recurrent: count(Classification::RecurrentProxy),
            bounded: count(Classification::BoundedProxy),
            non_recurrent: count(Classification::NonRecurrentProxy),
            degenerate: count(Classification::Degenerate),
            recurrent_fraction: if records.is_empty() {
                0.0
            } else {
                recurrent_total as f64 / records.len() as f64
            },
            exceptional: records
                .iter()
                .filter(|r| !r.classification.is_recurrent())
                .map(|r| r.s)
                .collect(),
            cone_fraction: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Scan {
    pub records: Vec<DiagnosticsRecord>,
    pub summary: ScanSummary,
    /// Per-record verdict column: the positivity of the base pair, or the
    /// cone check of a Mahler sample.
    pub verdicts: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanConfig {
    pub samples: usize,
    pub window: (f64, f64),
    pub diagnostic: DiagnosticConfig,
    pub positivity: PositivityConfig,
}

/// Diagnostics of `a + s·b` for sampled `s`, after certifying that `(a, b)`
/// is a positive pair.
pub fn line_scan<S: Scalar>(p: &Permutation, a: &[S], b: &[S], sampler: &MeasureSampler, cfg: &ScanConfig) -> Result<Scan> {
    let verdict = is_positive_pair(p, a, b, &cfg.positivity)?;
    if verdict.status != PositivityStatus::Positive {
        return Err(Error::NotPositivePair(format!(
            "{:?}: {}",
            verdict.status, verdict.reason
        )));
    }
    TranslationSurface::suspend(p, a, b)?;
    let af: Vec<f64> = a.iter().map(Scalar::to_f64).collect();
    let bf: Vec<f64> = b.iter().map(Scalar::to_f64).collect();
    for s in [cfg.window.0, cfg.window.1] {
        if let Some(i) = af.iter().zip(&bf).position(|(x, y)| x + s * y <= 0.0) {
            return Err(Error::InvalidLengths(format!(
                "a_{} + s·b_{} is not positive at s = {s}",
                i + 1,
                i + 1
            )));
        }
    }
    let ss = sampler.points(cfg.samples, cfg.window);
    let records = ss
        .par_iter()
        .map(|&s| {
            let at: Vec<f64> = af.iter().zip(&bf).map(|(x, y)| x + s * y).collect();
            let mut r = recurrence_diagnostic(p, &at, &cfg.diagnostic)?;
            r.s = s;
            r.positivity = Some(verdict.status);
            r.connections_found = Some(verdict.connections_found);
            Ok(r)
        })
        .collect::<Result<Vec<_>>>()?;
    let summary = ScanSummary::of(&records);
    let verdicts = vec![format!("{:?}", verdict.status); records.len()];
    Ok(Scan {
        records,
        summary,
        verdicts,
    })
}

/// `β(s) = (s, …, s^d)/R` and `β′(s) = γ(s)/R²` with `R = Σ s^j` and
/// `γ_i(s) = Σ_{ℓ=i}^{i+d−1} (2i − ℓ − 1) s^ℓ`.
pub fn mahler_curve<S: Scalar>(d: usize, s: &S) -> Result<(Vec<S>, Vec<S>)> {
    if !s.is_positive() {
        return Err(Error::NonpositiveParameter(s.to_f64()));
    }
    if d < 2 {
        return Err(Error::DimensionMismatch { expected: 2, got: d });
    }
    let mut pw = vec![S::one()];
    for _ in 1..2 * d {
        let next = pw[pw.len() - 1].clone() * s.clone();
        pw.push(next);
    }
    let r = (1..=d).fold(S::zero(), |acc, j| acc + pw[j].clone());
    let beta = (1..=d).map(|j| pw[j].clone() / r.clone()).collect();
    let r2 = r.clone() * r;
    let gamma: Vec<S> = (1..=d)
        .map(|i| {
            (i..i + d).fold(S::zero(), |acc, l| {
                acc + S::from_i64(2 * i as i64 - l as i64 - 1) * pw[l].clone()
            })
        })
        .collect();
    let beta_prime = gamma.into_iter().map(|g| g / r2.clone()).collect();
    Ok((beta, beta_prime))
}

/// Cone check and diagnostics along the Mahler curve for the reversal on
/// `d` letters.
pub fn mahler_scan(d: usize, sampler: &MeasureSampler, samples: usize, window: (f64, f64), cfg: &DiagnosticConfig) -> Result<Scan> {
    if !(window.0 > 0.0) || window.1 < window.0 {
        return Err(Error::NonpositiveParameter(window.0));
    }
    let p = Permutation::reversal(d)?;
    let ss = sampler.points(samples, window);
    let out = ss
        .par_iter()
        .map(|&s| {
            let (beta, beta_prime) = mahler_curve(d, &s)?;
            let minus: Vec<f64> = beta_prime.iter().map(|v| -v).collect();
            let cone = cone_contains(&p, &minus);
            let mut r = recurrence_diagnostic(&p, &beta, cfg)?;
            r.s = s;
            Ok((r, cone))
        })
        .collect::<Result<Vec<_>>>()?;
    let cones = out.iter().filter(|(_, c)| *c).count();
    let verdicts = out
        .iter()
        .map(|(_, c)| if *c { "cone" } else { "not_cone" }.to_string())
        .collect();
    let records: Vec<DiagnosticsRecord> = out.into_iter().map(|(r, _)| r).collect();
    let mut summary = ScanSummary::of(&records);
    summary.cone_fraction = Some(if records.is_empty() {
        0.0
    } else {
        cones as f64 / records.len() as f64
    });
    Ok(Scan {
        records,
        summary,
        verdicts,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FirstBound {
    pub n: usize,
    pub zeta: f64,
    pub t: f64,
    pub phi: f64,
    /// `κ₁·√ζ`
    pub bound: f64,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CompactnessTrace {
    pub c1: f64,
    pub c2: f64,
    pub kappa1: f64,
    pub kappa2: f64,
    pub record: DiagnosticsRecord,
    /// The other direction, at the time fixed by `e^{t/2} = n·√(2c₂/ζ)` with
    /// `ζ = n·ε_n`; absent when `ε_n = 0`.
    pub first: Vec<Option<FirstBound>>,
}

/// The constants for the horizontal diameter: the return time over `I_i` is
/// `L_i`, so `c₁ = min L_i`, `c₂ = max L_i`, `κ₁ = √(2c₂)` and
/// `κ₂ = 1 + (1 + 2c₂)/c₁`.
pub fn trace_constants<S: Scalar>(p: &Permutation, b: &[S]) -> Result<(f64, f64, f64, f64)> {
    let l: Vec<f64> = heights(p, b)?.l.iter().map(Scalar::to_f64).collect();
    let c1 = l.iter().cloned().fold(f64::INFINITY, f64::min);
    let c2 = l.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    if !(c1 > 0.0) {
        return Err(Error::SuspensionInvalid(format!(
            "return times are not bounded below (c1 = {c1})"
        )));
    }
    Ok((c1, c2, (2.0 * c2).sqrt(), 1.0 + (1.0 + 2.0 * c2) / c1))
}

/// `φ(g_t q)` against `n(t)·ε_{n(t)}` along a grid of times.
pub fn geodesic_compactness_trace<S: Scalar>(p: &Permutation, a: &[S], b: &[S], t_grid: &[f64]) -> Result<CompactnessTrace> {
    let q = TranslationSurface::suspend(p, a, b)?;
    let (c1, c2, kappa1, kappa2) = trace_constants(p, b)?;
    let qf = q.to_f64();
    let iet = Iet::new(p.clone(), a.to_vec())?;
    let total = iet.total().to_f64();

    let ns: Vec<usize> = t_grid
        .iter()
        .map(|t| (kappa2 * (t / 2.0).exp()).floor() as usize)
        .collect();
    let mut distinct = ns.clone();
    distinct.sort_unstable();
    distinct.dedup();
    let eps = iet.epsilon_trace(&distinct);
    let eps_of = |n: usize| eps[distinct.binary_search(&n).expect("scheduled")].clone();

    let phi_at = |t: f64| -> Result<f64> { Ok(qf.apply_matrix(&Matrix2::geodesic(t))?.phi()) };
    let phis = t_grid.par_iter().map(|&t| phi_at(t)).collect::<Result<Vec<_>>>()?;

    let mut phi_trace = Vec::with_capacity(t_grid.len());
    let mut first = Vec::with_capacity(t_grid.len());
    for ((&t, &n), &phi) in t_grid.iter().zip(&ns).zip(&phis) {
        let e = eps_of(n);
        let ef = e.to_f64();
        let n_eps = n as f64 * ef;
        let bound = kappa2 * phi;
        phi_trace.push(PhiPoint {
            t,
            phi,
            n,
            eps_n: ef,
            n_eps_n: n_eps,
            bound,
            holds: n_eps <= bound,
        });
        first.push(if n >= 3 && !eps_zero(&e, total) {
            let zeta = n_eps;
            let t1 = 2.0 * (n as f64 * (2.0 * c2 / zeta).sqrt()).ln();
            let phi1 = phi_at(t1)?;
            let bound1 = kappa1 * zeta.sqrt();
            Some(FirstBound {
                n,
                zeta,
                t: t1,
                phi: phi1,
                bound: bound1,
                holds: phi1 <= bound1,
            })
        } else {
            None
        });
    }
    let eps_trace = distinct
        .iter()
        .zip(&eps)
        .map(|(&n, e)| EpsPoint {
            n,
            eps_n: e.to_f64(),
            n_eps_n: n as f64 * e.to_f64(),
        })
        .collect::<Vec<_>>();
    let schedule = distinct.clone();
    let degenerate = eps.iter().any(|e| eps_zero(e, total));
    let record = DiagnosticsRecord {
        s: 0.0,
        a: a.iter().map(Scalar::to_f64).collect(),
        a_exact: S::EXACT.then(|| a.iter().map(ToString::to_string).collect()),
        positivity: None,
        connections_found: None,
        eps_trace,
        phi_trace,
        classification: if degenerate {
            Classification::Degenerate
        } else {
            Classification::RecurrentProxy
        },
        zeta_lo: 0.05 * total,
        schedule,
    };
    Ok(CompactnessTrace {
        c1,
        c2,
        kappa1,
        kappa2,
        record,
        first,
    })
}

/// Column names of the long-format CSV for `d` lengths.
pub fn csv_header(d: usize) -> String {
    let mut h = String::from("s");
    for i in 1..=d {
        let _ = write!(h, ",a_{i}");
    }
    h.push_str(",verdict,n,eps_n,n_eps_n,t,phi,classification");
    h
}

/// One row per schedule point and one per trace point of every record.
pub fn to_csv(records: &[DiagnosticsRecord], verdicts: &[String]) -> String {
    let d = records.first().map_or(0, |r| r.a.len());
    let mut out = csv_header(d);
    out.push('\n');
    for (k, r) in records.iter().enumerate() {
        let mut prefix = format!("{}", r.s);
        match &r.a_exact {
            Some(ex) => ex.iter().for_each(|v| {
                let _ = write!(prefix, ",{v}");
            }),
            None => r.a.iter().for_each(|v| {
                let _ = write!(prefix, ",{v}");
            }),
        }
        let verdict = verdicts.get(k).map_or("", String::as_str);
        let class = r.classification.as_str();
        for e in &r.eps_trace {
            let _ = writeln!(out, "{prefix},{verdict},{},{},{},,,{class}", e.n, e.eps_n, e.n_eps_n);
        }
        for p in &r.phi_trace {
            let _ = writeln!(out, "{prefix},{verdict},{},{},{},{},{},{class}", p.n, p.eps_n, p.n_eps_n, p.t, p.phi);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, rat_vec, QSqrt5};

    #[test]
    fn golden_rotation_is_bounded() {
        let p = Permutation::new(vec![2, 1]).unwrap();
        let a = vec![QSqrt5::one(), QSqrt5::phi()];
        let cfg = DiagnosticConfig::with_cap(14);
        let r = recurrence_diagnostic(&p, &a, &cfg).unwrap();
        assert_eq!(r.classification, Classification::BoundedProxy);
        assert!(r.eps_trace.iter().all(|e| e.n_eps_n >= 0.5));
    }

    #[test]
    fn periodic_rotation_is_degenerate() {
        let p = Permutation::new(vec![2, 1]).unwrap();
        let r = recurrence_diagnostic(&p, &rat_vec(&[1, 1]), &DiagnosticConfig::with_cap(8)).unwrap();
        assert_eq!(r.classification, Classification::Degenerate);
    }

    #[test]
    fn mahler_examples() {
        let (b, bp) = mahler_curve(2, &rat(1, 1)).unwrap();
        assert_eq!(b, vec![rat(1, 2), rat(1, 2)]);
        assert_eq!(bp, vec![rat(-1, 4), rat(1, 4)]);
        let (b, bp) = mahler_curve(3, &rat(1, 1)).unwrap();
        assert_eq!(b, vec![rat(1, 3); 3]);
        assert_eq!(bp, vec![rat(-1, 3), rat(0, 1), rat(1, 3)]);
        assert!(matches!(mahler_curve(3, &0.0), Err(Error::NonpositiveParameter(_))));
    }

    #[test]
    fn mahler_derivative_sums_to_zero() {
        for d in 2..=6 {
            for s in [rat(1, 5), rat(3, 7), rat(2, 1), rat(11, 10)] {
                let (b, bp) = mahler_curve(d, &s).unwrap();
                assert_eq!(b.iter().sum::<crate::Rational>(), rat(1, 1));
                assert_eq!(bp.iter().sum::<crate::Rational>(), rat(0, 1));
            }
        }
    }

    #[test]
    fn cantor_examples() {
        assert_eq!(cantor_point(&[false; 10]), 0.0);
        assert!((cantor_point(&[true, true, true]) - 26.0 / 27.0).abs() < 1e-15);
        let xs = cantor_sampler(20, 100_000, 3).unwrap();
        let mean = xs.iter().sum::<f64>() / xs.len() as f64;
        assert!((mean - 0.5).abs() < 0.01);
        assert_eq!(xs[..10], cantor_sampler(20, 10, 3).unwrap()[..]);
        assert!(cantor_sampler(0, 1, 0).is_err());
    }

    #[test]
    fn grid_contains_the_center() {
        let g = MeasureSampler::new(SamplerKind::Grid, 0).points(5, (-0.2, 0.2));
        assert_eq!(g[2], 0.0);
    }

    #[test]
    fn reversal_constants() {
        let p = Permutation::reversal(4).unwrap();
        let (c1, c2, k1, k2) = trace_constants(&p, &[3i64, 1, -1, -3].map(|v| v as f64)).unwrap();
        assert_eq!((c1, c2), (3.0, 7.0));
        assert!((k1 - 14f64.sqrt()).abs() < 1e-15);
        assert_eq!(k2, 6.0);
    }

    #[test]
    fn csv_layout() {
        let p = Permutation::new(vec![2, 1]).unwrap();
        let r = recurrence_diagnostic(&p, &rat_vec(&[1, 2]), &DiagnosticConfig::with_cap(5)).unwrap();
        let csv = to_csv(&[r], &["Positive".to_string()]);
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("s,a_1,a_2,verdict,n,eps_n,n_eps_n,t,phi,classification"));
        assert_eq!(lines.count(), 2);
    }
}
