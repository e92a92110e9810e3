//! The antisymmetric form `Q`, heights and the step function `L`, the cone of
//! universally good directions, the null space of `Q`, and the positive-pair
//! semi-decision.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::iet::{Connection, Iet};
use crate::linalg;
use crate::perm::Permutation;
use crate::scalar::Scalar;

/// `Q(e_i, e_j)` for a permutation, as a `d×d` integer matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QForm {
    pub d: usize,
    pub matrix: Vec<Vec<i64>>,
}

pub fn q_matrix(p: &Permutation) -> QForm {
    let d = p.d();
    let mut matrix = vec![vec![0i64; d]; d];
    for i in 1..=d {
        for j in 1..=d {
            matrix[i - 1][j - 1] = if i > j && p.sigma(i) < p.sigma(j) {
                1
            } else if i < j && p.sigma(i) > p.sigma(j) {
                -1
            } else {
                0
            };
        }
    }
    for i in 0..d {
        for j in 0..d {
            assert_eq!(matrix[i][j], -matrix[j][i], "Q must be antisymmetric");
        }
    }
    QForm { d, matrix }
}

impl QForm {
    /// `uᵀ M v`
    pub fn eval<S: Scalar>(&self, u: &[S], v: &[S]) -> Result<S> {
        self.check_len(u.len())?;
        self.check_len(v.len())?;
        let mv = self.apply(v);
        Ok(u.iter()
            .zip(mv)
            .fold(S::zero(), |acc, (a, b)| acc + a.clone() * b))
    }

    /// `(Q(e_1, v), …, Q(e_d, v))`
    pub fn apply<S: Scalar>(&self, v: &[S]) -> Vec<S> {
        self.matrix
            .iter()
            .map(|row| {
                row.iter().zip(v).fold(S::zero(), |acc, (&m, x)| match m {
                    1 => acc + x.clone(),
                    -1 => acc - x.clone(),
                    _ => acc,
                })
            })
            .collect()
    }

    pub fn rank(&self) -> usize {
        linalg::rank(&self.matrix)
    }

    pub fn nullity(&self) -> usize {
        self.d - self.rank()
    }

    fn check_len(&self, got: usize) -> Result<()> {
        if got == self.d {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.d,
                got,
            })
        }
    }
}

/// Partial sums of a height vector and the values of `L` on each `I_i`.
#[derive(Clone, Debug, PartialEq)]
pub struct HeightData<S> {
    pub b: Vec<S>,
    /// `y_0..y_d`
    pub y: Vec<S>,
    /// `y'_0..y'_d`
    pub y_prime: Vec<S>,
    /// `L_i = y_i − y'_{σ(i)}`, `i = 1..d`
    pub l: Vec<S>,
}

pub fn heights<S: Scalar>(p: &Permutation, b: &[S]) -> Result<HeightData<S>> {
    let d = p.d();
    if b.len() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            got: b.len(),
        });
    }
    let mut y = vec![S::zero()];
    for v in b {
        let next = y[y.len() - 1].clone() + v.clone();
        y.push(next);
    }
    let mut y_prime = vec![S::zero()];
    for j in 1..=d {
        let next = y_prime[j - 1].clone() + b[p.sigma_inv(j) - 1].clone();
        y_prime.push(next);
    }
    let l: Vec<S> = (1..=d)
        .map(|i| y[i].clone() - y_prime[p.sigma(i)].clone())
        .collect();
    debug_assert!(y[d] == y_prime[d] || !S::EXACT);
    debug_assert_eq!(l, q_matrix(p).apply(b));
    Ok(HeightData { b: b.to_vec(), y, y_prime, l })
}

/// `b_i = σ(i) − i`, which lies in the cone for every irreducible `σ`.
pub fn universal_direction(p: &Permutation) -> Result<Vec<i64>> {
    p.require_irreducible()?;
    Ok(p.canonical_heights())
}

/// `Q(e_i, b) > 0` for every `i`.
pub fn cone_contains<S: Scalar>(p: &Permutation, b: &[S]) -> bool {
    b.len() == p.d() && q_matrix(p).apply(b).iter().all(Scalar::is_positive)
}

/// Primitive integer basis of the null space of `Q` (the real REL directions).
pub fn null_space(p: &Permutation) -> Result<Vec<Vec<i64>>> {
    p.require_irreducible()?;
    let q = q_matrix(p);
    let basis = linalg::kernel(&q.matrix, q.d);
    debug_assert_eq!(basis.len(), q.nullity());
    Ok(basis)
}

/// Fraction of `n` iterates `T^k x`, `0 ≤ k < n`, landing in each `I_i`.
pub fn visit_frequencies(t: &Iet<f64>, x: f64, n: usize) -> Vec<f64> {
    let d = t.d();
    let mut counts = vec![0u64; d];
    let mut z = x;
    for _ in 0..n {
        let i = t.interval_of(&z);
        counts[i - 1] += 1;
        z = t.apply(&z);
    }
    counts.iter().map(|&c| c as f64 / n as f64).collect()
}

/// ℓ¹ radius under which two frequency vectors count as the same measure.
pub const MEASURE_DEDUP_L1: f64 = 1e-3;

/// Seed point number `index` of a reproducible family: independent of how
/// seeds are scheduled across threads.
pub fn seed_point(rng_seed: u64, index: u64) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    rng.set_stream(index);
    rng.gen::<f64>()
}

/// Birkhoff frequency vectors from `seeds` random starting points, with
/// near-duplicates (ℓ¹ ≤ 1e−3) removed in seed order.
pub fn empirical_invariant_measures(
    t: &Iet<f64>,
    seeds: usize,
    orbit_len: usize,
    rng_seed: u64,
) -> Vec<Vec<f64>> {
    let total = *t.total();
    let all: Vec<Vec<f64>> = (0..seeds as u64)
        .into_par_iter()
        .map(|k| {
            let x = seed_point(rng_seed, k) * total;
            visit_frequencies(t, x, orbit_len)
        })
        .collect();
    let mut out: Vec<Vec<f64>> = Vec::new();
    for v in all {
        let dup = out.iter().any(|w| {
            w.iter().zip(&v).map(|(a, b)| (a - b).abs()).sum::<f64>() <= MEASURE_DEDUP_L1
        });
        if !dup {
            out.push(v);
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PositivityConfig {
    pub seeds: usize,
    pub orbit_len: usize,
    pub m_max: usize,
    /// Defaults to `1e−6·‖b‖∞·Σa` when unset.
    pub margin: Option<f64>,
    pub rng_seed: u64,
}

impl Default for PositivityConfig {
    fn default() -> Self {
        Self {
            seeds: 32,
            orbit_len: 1_000_000,
            m_max: 10_000,
            margin: None,
            rng_seed: 0,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PositivityStatus {
    Positive,
    NotPositive,
    Undetermined,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// Visit frequencies `a'` with `Q(a', b) ≤ −margin`.
    Measure { frequencies: Vec<f64>, q_value: f64 },
    /// A connection with `Σ_{n<m} L(T^n x_i) ≤ y_i − y_j`.
    Connection {
        connection: Connection,
        sum: String,
        bound: String,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PositivityVerdict {
    pub status: PositivityStatus,
    pub witness: Option<Witness>,
    /// Which branch of the decision produced the status.
    pub reason: String,
    pub config: PositivityConfig,
    pub margin: f64,
    pub connections_found: usize,
    pub measures_sampled: usize,
}

/// Semi-decision of whether `(a, b)` is a positive pair.
///
/// A `Positive` answer reached through cone membership with no connections,
/// and a `NotPositive` answer from a connection witness, are exact on exact
/// backends. Invariant measures are only sampled through Birkhoff
/// frequencies, so the measure branch is heuristic.
pub fn is_positive_pair<S: Scalar>(
    p: &Permutation,
    a: &[S],
    b: &[S],
    cfg: &PositivityConfig,
) -> Result<PositivityVerdict> {
    let t = Iet::new(p.clone(), a.to_vec())?;
    let h = heights(p, b)?;
    let total = t.total().to_f64();
    let b_inf = b.iter().map(|v| v.to_f64().abs()).fold(0.0, f64::max);
    let margin = cfg.margin.unwrap_or(1e-6 * b_inf * total);
    let connections: Vec<Connection> = t
        .detect_connections(cfg.m_max)
        .into_iter()
        .filter(Connection::is_genuine)
        .collect();

    let verdict = |status, witness, reason: &str, measures| PositivityVerdict {
        status,
        witness,
        reason: reason.to_string(),
        config: cfg.clone(),
        margin,
        connections_found: connections.len(),
        measures_sampled: measures,
    };

    if connections.is_empty() && cone_contains(p, b) {
        return Ok(verdict(
            PositivityStatus::Positive,
            None,
            "b lies in the cone and T has no connections up to m_max",
            0,
        ));
    }

    let tf = t.to_f64();
    let l_f64: Vec<f64> = h.l.iter().map(Scalar::to_f64).collect();
    let measures = empirical_invariant_measures(&tf, cfg.seeds, cfg.orbit_len, cfg.rng_seed);
    let q_values: Vec<f64> = measures
        .iter()
        .map(|f| f.iter().zip(&l_f64).map(|(a, l)| a * l).sum())
        .collect();
    if let Some(k) = q_values.iter().position(|&q| q <= -margin) {
        return Ok(verdict(
            PositivityStatus::NotPositive,
            Some(Witness::Measure {
                frequencies: measures[k].clone(),
                q_value: q_values[k],
            }),
            "an invariant measure has nonpositive integral of L",
            measures.len(),
        ));
    }

    // running sums of L along each orbit, one pass per start point
    let longest = connections.iter().map(|c| c.m).max().unwrap_or(0);
    let mut sums: Vec<Option<Vec<S>>> = vec![None; t.d()];
    for c in &connections {
        if sums[c.i].is_none() {
            let mut z = t.x()[c.i].clone();
            let mut acc = vec![S::zero()];
            for _ in 0..longest {
                let next = acc[acc.len() - 1].clone() + h.l[t.interval_of(&z) - 1].clone();
                acc.push(next);
                z = t.apply(&z);
            }
            sums[c.i] = Some(acc);
        }
    }
    for c in &connections {
        let sum = sums[c.i].as_ref().expect("filled above")[c.m].clone();
        let bound = h.y[c.i].clone() - h.y[c.j].clone();
        if sum <= bound {
            return Ok(verdict(
                PositivityStatus::NotPositive,
                Some(Witness::Connection {
                    connection: c.clone(),
                    sum: sum.to_string(),
                    bound: bound.to_string(),
                }),
                "a connection violates the strict connection inequality",
                measures.len(),
            ));
        }
    }

    if q_values.iter().all(|&q| q >= margin) {
        Ok(verdict(
            PositivityStatus::Positive,
            None,
            "all sampled measures integrate L above the margin and all connection sums pass",
            measures.len(),
        ))
    } else {
        Ok(verdict(
            PositivityStatus::Undetermined,
            None,
            "some sampled measure integrates L within the margin of zero",
            measures.len(),
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat_vec, QSqrt5, Rational};

    fn perm(v: &[usize]) -> Permutation {
        Permutation::new(v.to_vec()).unwrap()
    }

    fn quick() -> PositivityConfig {
        PositivityConfig {
            seeds: 8,
            orbit_len: 20_000,
            m_max: 1_000,
            margin: None,
            rng_seed: 3,
        }
    }

    #[test]
    fn q_matrix_examples() {
        assert_eq!(q_matrix(&perm(&[2, 1])).matrix, vec![vec![0, -1], vec![1, 0]]);
        assert_eq!(
            q_matrix(&perm(&[3, 1, 2])).matrix,
            vec![vec![0, -1, -1], vec![1, 0, 0], vec![1, 0, 0]]
        );
        let q = q_matrix(&perm(&[4, 3, 2, 1]));
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(q.matrix[i][j], (i as i64 - j as i64).signum());
            }
        }
    }

    #[test]
    fn q_eval_examples() {
        let q = q_matrix(&perm(&[2, 1]));
        assert_eq!(q.eval(&rat_vec(&[1, 1]), &rat_vec(&[1, -1])).unwrap(), Rational::from_i64(2));
        let q = q_matrix(&perm(&[4, 3, 2, 1]));
        assert_eq!(
            q.eval(&rat_vec(&[1, 1, 1, 1]), &rat_vec(&[3, 1, -1, -3])).unwrap(),
            Rational::from_i64(20)
        );
        let u = rat_vec(&[2, -7, 5, 1]);
        assert!(q.eval(&u, &u).unwrap().is_zero());
        assert!(matches!(
            q.eval(&rat_vec(&[1]), &u),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn heights_examples() {
        let h = heights(&perm(&[4, 3, 2, 1]), &rat_vec(&[3, 1, -1, -3])).unwrap();
        assert_eq!(h.y[1..], rat_vec(&[3, 4, 3, 0])[..]);
        assert_eq!(h.y_prime[1..], rat_vec(&[-3, -4, -3, 0])[..]);
        assert_eq!(h.l, rat_vec(&[3, 7, 7, 3]));
        let h = heights(&perm(&[2, 1]), &rat_vec(&[1, -1])).unwrap();
        assert_eq!(h.y[1..], rat_vec(&[1, 0])[..]);
        assert_eq!(h.y_prime[1..], rat_vec(&[-1, 0])[..]);
        assert_eq!(h.l, rat_vec(&[1, 1]));
        let h = heights(&perm(&[3, 1, 2]), &rat_vec(&[0, 0, 0])).unwrap();
        assert!(h.y.iter().chain(&h.y_prime).chain(&h.l).all(Scalar::is_zero));
    }

    #[test]
    fn universal_direction_examples() {
        assert_eq!(universal_direction(&perm(&[4, 3, 2, 1])).unwrap(), vec![3, 1, -1, -3]);
        assert_eq!(universal_direction(&perm(&[2, 1])).unwrap(), vec![1, -1]);
        assert_eq!(universal_direction(&perm(&[3, 1, 2])).unwrap(), vec![2, -1, -1]);
        assert!(universal_direction(&perm(&[1, 2])).is_err());
    }

    #[test]
    fn cone_examples() {
        assert!(cone_contains(&perm(&[4, 3, 2, 1]), &rat_vec(&[3, 1, -1, -3])));
        assert!(!cone_contains(&perm(&[2, 1]), &rat_vec(&[1, 1])));
        assert!(cone_contains(&perm(&[2, 1]), &rat_vec(&[1, -1])));
    }

    #[test]
    fn null_space_examples() {
        assert_eq!(null_space(&perm(&[3, 1, 2])).unwrap(), vec![vec![0, 1, -1]]);
        assert!(null_space(&perm(&[4, 3, 2, 1])).unwrap().is_empty());
        assert_eq!(null_space(&perm(&[5, 4, 3, 2, 1])).unwrap().len(), 1);
        assert!(null_space(&perm(&[2, 1, 3])).is_err());
    }

    #[test]
    fn rotation_frequencies() {
        let t = Iet::new(perm(&[2, 1]), vec![1.0, 1.0]).unwrap();
        assert_eq!(visit_frequencies(&t, 0.25, 1000), vec![0.5, 0.5]);
    }

    #[test]
    fn golden_frequencies() {
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        let t = Iet::new(perm(&[2, 1]), vec![1.0, phi]).unwrap();
        let m = empirical_invariant_measures(&t, 4, 1_000_000, 11);
        assert_eq!(m.len(), 1);
        let expect = [1.0 / (1.0 + phi), phi / (1.0 + phi)];
        let err: f64 = m[0].iter().zip(expect).map(|(a, b)| (a - b).abs()).sum();
        assert!(err <= 1e-3, "l1 error {err}");
    }

    #[test]
    fn positivity_examples() {
        let p = perm(&[2, 1]);
        let a = vec![QSqrt5::one(), QSqrt5::phi()];
        let b = vec![QSqrt5::one(), -QSqrt5::one()];
        let v = is_positive_pair(&p, &a, &b, &quick()).unwrap();
        assert_eq!(v.status, PositivityStatus::Positive);
        assert!(v.witness.is_none());

        // periodic rotation: every genuine connection passes, the measure is Lebesgue
        let v = is_positive_pair(&p, &rat_vec(&[1, 1]), &rat_vec(&[1, -1]), &quick()).unwrap();
        assert_eq!(v.status, PositivityStatus::Positive);
        assert!(v.connections_found > 0);

        // b outside the cone with a connection violating the inequality
        let v = is_positive_pair(&p, &rat_vec(&[1, 1]), &rat_vec(&[1, 1]), &quick()).unwrap();
        assert_eq!(v.status, PositivityStatus::NotPositive);

        let v = is_positive_pair(&p, &rat_vec(&[2, 3]), &rat_vec(&[0, 0]), &quick()).unwrap();
        assert_eq!(v.status, PositivityStatus::NotPositive);
        assert!(v.witness.is_some());
    }

    #[test]
    fn positivity_rejects_bad_lengths() {
        let p = perm(&[2, 1]);
        assert!(matches!(
            is_positive_pair(&p, &rat_vec(&[1, -1]), &rat_vec(&[1, -1]), &quick()),
            Err(Error::InvalidLengths(_))
        ));
    }

    #[test]
    fn seed_points_are_schedule_independent() {
        let a: Vec<f64> = (0..5).map(|k| seed_point(9, k)).collect();
        let b: Vec<f64> = (0..5).rev().map(|k| seed_point(9, k)).collect();
        let mut b = b;
        b.reverse();
        assert_eq!(a, b);
    }
}
