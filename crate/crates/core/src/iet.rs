//! Interval exchange transformations.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::scalar::Scalar;

/// Relative tolerance used by the binary64 backend: `τ = 1e−12·|I|`.
pub const FLOAT_REL_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Forward,
    Backward,
}

/// `T^m(x_i) = x_j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Connection {
    pub i: usize,
    pub j: usize,
    pub m: usize,
    /// Set on inexact backends, where equality means `|T^m x_i − x_j| ≤ τ`.
    pub tolerance_match: bool,
    /// `T(x_k) = x_0` for `k = σ^{-1}(1) − 1` holds for every length vector:
    /// the two corners meet at the same cone point and the path has zero
    /// length, so it is not a saddle connection.
    pub degenerate: bool,
}

impl Connection {
    pub fn is_genuine(&self) -> bool {
        !self.degenerate
    }
}

#[derive(Clone, Debug)]
pub struct Iet<S> {
    perm: Permutation,
    lengths: Vec<S>,
    /// `x_0..x_d`
    x: Vec<S>,
    /// `x'_0..x'_d`
    xp: Vec<S>,
    tol: S,
}

impl<S: Scalar> Iet<S> {
    pub fn new(perm: Permutation, lengths: Vec<S>) -> Result<Self> {
        let d = perm.d();
        if lengths.len() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: lengths.len(),
            });
        }
        if let Some(i) = lengths.iter().position(|a| !a.is_positive()) {
            return Err(Error::InvalidLengths(format!(
                "a_{} = {} is not positive",
                i + 1,
                lengths[i]
            )));
        }
        let mut x = Vec::with_capacity(d + 1);
        x.push(S::zero());
        for a in &lengths {
            let next = x[x.len() - 1].clone() + a.clone();
            x.push(next);
        }
        let mut xp = Vec::with_capacity(d + 1);
        xp.push(S::zero());
        for j in 1..=d {
            let next = xp[j - 1].clone() + lengths[perm.sigma_inv(j) - 1].clone();
            xp.push(next);
        }
        let tol = if S::EXACT {
            S::zero()
        } else {
            x[d].clone() * S::from_f64(FLOAT_REL_TOL)
        };
        Ok(Self {
            perm,
            lengths,
            x,
            xp,
            tol,
        })
    }

    pub fn perm(&self) -> &Permutation {
        &self.perm
    }

    pub fn d(&self) -> usize {
        self.perm.d()
    }

    pub fn lengths(&self) -> &[S] {
        &self.lengths
    }

    /// `|I| = Σ a_i`
    pub fn total(&self) -> &S {
        &self.x[self.d()]
    }

    /// `x_0..x_d`
    pub fn x(&self) -> &[S] {
        &self.x
    }

    /// `x'_0..x'_d`
    pub fn x_prime(&self) -> &[S] {
        &self.xp
    }

    pub fn tolerance(&self) -> &S {
        &self.tol
    }

    /// Backend equality: exact, or within `τ` on binary64.
    pub fn same(&self, a: &S, b: &S) -> bool {
        if S::EXACT {
            a == b
        } else {
            (a.clone() - b.clone()).abs() <= self.tol
        }
    }

    fn check_domain(&self, x: &S) -> Result<()> {
        if x.is_negative() || x >= self.total() {
            Err(Error::OutOfDomain(x.to_f64(), self.total().to_f64()))
        } else {
            Ok(())
        }
    }

    /// Index `i` (1-based) with `x ∈ I_i = [x_{i−1}, x_i)`, clamped to `1..=d`.
    pub fn interval_of(&self, x: &S) -> usize {
        let d = self.d();
        let below = self.x[1..d].partition_point(|xi| xi <= x);
        below + 1
    }

    fn image_interval_of(&self, x: &S) -> usize {
        let d = self.d();
        let below = self.xp[1..d].partition_point(|xi| xi <= x);
        below + 1
    }

    pub fn evaluate(&self, x: &S) -> Result<S> {
        self.check_domain(x)?;
        Ok(self.apply(x))
    }

    pub fn evaluate_inverse(&self, x: &S) -> Result<S> {
        self.check_domain(x)?;
        Ok(self.apply_inverse(x))
    }

    /// `T(x) = x − x_{i−1} + x'_{σ(i)−1}` without the domain check.
    pub(crate) fn apply(&self, x: &S) -> S {
        let i = self.interval_of(x);
        x.clone() - self.x[i - 1].clone() + self.xp[self.perm.sigma(i) - 1].clone()
    }

    pub(crate) fn apply_inverse(&self, x: &S) -> S {
        let k = self.image_interval_of(x);
        let i = self.perm.sigma_inv(k);
        x.clone() - self.xp[k - 1].clone() + self.x[i - 1].clone()
    }

    fn step(&self, x: &S, direction: Direction) -> S {
        match direction {
            Direction::Forward => self.apply(x),
            Direction::Backward => self.apply_inverse(x),
        }
    }

    /// `(x, T x, …, T^n x)`, or inverse iterates.
    pub fn orbit(&self, x: &S, n: usize, direction: Direction) -> Result<Vec<S>> {
        self.check_domain(x)?;
        let mut out = Vec::with_capacity(n + 1);
        out.push(x.clone());
        for _ in 0..n {
            let next = self.step(&out[out.len() - 1], direction);
            out.push(next);
        }
        Ok(out)
    }

    /// Distance from `z` to the nearest interior discontinuity `x_1..x_{d−1}`.
    fn distance_to_discontinuities(&self, z: &S) -> S {
        let d = self.d();
        let inner = &self.x[1..d];
        let pos = inner.partition_point(|xi| xi < z);
        let mut best: Option<S> = None;
        for idx in [pos.wrapping_sub(1), pos] {
            if let Some(xi) = inner.get(idx) {
                let dist = (xi.clone() - z.clone()).abs();
                best = Some(match best {
                    Some(b) => b.min_of(dist),
                    None => dist,
                });
            }
        }
        best.expect("d >= 2 gives at least one interior discontinuity")
    }

    /// `ε_n = min |x_i − T^r x_j|` over `1 ≤ i, j ≤ d−1`, `|r| ≤ n`,
    /// `(j, r) ≠ (i, 0)`.
    ///
    /// The empty minimum (`d = 2`, `n = 0`) is reported as `|I|`.
    pub fn epsilon_n(&self, n: usize) -> S {
        self.epsilon_trace(&[n]).pop().expect("one schedule entry")
    }

    /// `ε_n` for every `n` of a nondecreasing schedule, in one orbit pass.
    pub fn epsilon_trace(&self, schedule: &[usize]) -> Vec<S> {
        let d = self.d();
        let mut best = self.total().clone();
        for w in self.x[1..d].windows(2) {
            best = best.min_of(w[1].clone() - w[0].clone());
        }
        let mut forward: Vec<S> = self.x[1..d].to_vec();
        let mut backward: Vec<S> = self.x[1..d].to_vec();
        let mut out = Vec::with_capacity(schedule.len());
        let mut r = 0usize;
        for &n in schedule {
            assert!(n >= r, "schedule must be nondecreasing");
            while r < n {
                r += 1;
                for z in forward.iter_mut() {
                    *z = self.apply(z);
                }
                for z in backward.iter_mut() {
                    *z = self.apply_inverse(z);
                }
                for z in forward.iter().chain(backward.iter()) {
                    best = best.min_of(self.distance_to_discontinuities(z));
                }
            }
            out.push(best.clone());
        }
        out
    }

    /// `ε_n` straight from its definition: the minimal gap between distinct
    /// indexed points of the forward orbits `T^k x_i`, `0 ≤ k ≤ n`,
    /// `1 ≤ i ≤ d−1`, computed by sorting.
    pub fn epsilon_n_direct(&self, n: usize) -> S {
        let d = self.d();
        let mut pts = Vec::with_capacity((d - 1) * (n + 1));
        for i in 1..d {
            let mut z = self.x[i].clone();
            pts.push(z.clone());
            for _ in 0..n {
                z = self.apply(&z);
                pts.push(z.clone());
            }
        }
        pts.sort_by(|a, b| a.cmp_total(b));
        pts.windows(2)
            .map(|w| w[1].clone() - w[0].clone())
            .fold(self.total().clone(), S::min_of)
    }

    /// All `(i, j, m)` with `0 ≤ i, j ≤ d−1`, `1 ≤ m ≤ m_max` and
    /// `T^m(x_i) = x_j`, sorted by `m`, then `i`, then `j`.
    pub fn detect_connections(&self, m_max: usize) -> Vec<Connection> {
        let d = self.d();
        let starts = &self.x[0..d];
        let trivial_source = self.perm.sigma_inv(1) - 1;
        let mut out = Vec::new();
        for i in 0..d {
            let mut z = self.x[i].clone();
            for m in 1..=m_max {
                z = self.apply(&z);
                let pos = starts.partition_point(|xj| xj < &z);
                for j in [pos.wrapping_sub(1), pos] {
                    if let Some(xj) = starts.get(j) {
                        if self.same(&z, xj) {
                            out.push(Connection {
                                i,
                                j,
                                m,
                                tolerance_match: !S::EXACT,
                                degenerate: m == 1 && j == 0 && i == trivial_source,
                            });
                        }
                    }
                }
            }
        }
        out.sort_by_key(|c| (c.m, c.i, c.j));
        out.dedup();
        out
    }

    pub fn to_f64(&self) -> Iet<f64> {
        Iet::new(
            self.perm.clone(),
            self.lengths.iter().map(Scalar::to_f64).collect(),
        )
        .expect("positive lengths stay positive")
    }
}
