//! Boundary map to the singularities and real REL deformations.

use std::cmp::Ordering;

use super::geometry::fuzzy_sign;
use super::TranslationSurface;
use crate::error::{Error, Result};
use crate::linalg;
use crate::pairing::q_matrix;
use crate::scalar::Scalar;

impl<S: Scalar> TranslationSurface<S> {
    /// `k × d` matrix whose column `i` is `[end] − [start]` of top edge `i`.
    pub fn boundary_matrix(&self) -> Vec<Vec<i64>> {
        let d = self.d();
        let k = self.stratum().k;
        let mut m = vec![vec![0i64; d]; k];
        for i in 1..=d {
            let start = self.labels()[self.upper_vertex(i - 1)];
            let end = self.labels()[self.upper_vertex(i)];
            m[end][i - 1] += 1;
            m[start][i - 1] -= 1;
        }
        m
    }

    /// Integer basis of `ker ∂`: the absolute cycles, of dimension `2g`.
    pub fn cycle_basis(&self) -> Vec<Vec<i64>> {
        let basis = linalg::kernel(&self.boundary_matrix(), self.d());
        debug_assert_eq!(basis.len(), 2 * self.stratum().genus);
        basis
    }

    /// Moves the x-holonomies along `a + t·r` for `r` in the null space of `Q`.
    ///
    /// The y-holonomies and the absolute x-periods stay fixed while the
    /// singularities slide horizontally relative to each other.
    pub fn rel_deform(&self, r: &[S], t: &S) -> Result<Self> {
        let d = self.d();
        if r.len() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: r.len(),
            });
        }
        let scale: f64 = r.iter().map(|v| v.to_f64().abs()).sum();
        let q = q_matrix(self.perm());
        if q.apply(r)
            .iter()
            .any(|v| fuzzy_sign(v, scale) != Ordering::Equal)
        {
            return Err(Error::NotInNullSpace);
        }
        let a = self.a();
        let moved: Vec<S> = a
            .iter()
            .zip(r)
            .map(|(x, v)| x.clone() + t.clone() * v.clone())
            .collect();
        if let Some(i) = moved.iter().position(|x| !x.is_positive()) {
            return Err(Error::LengthCollapse(i + 1));
        }
        if t.is_zero() {
            return Ok(self.clone());
        }
        // x-holonomy of a horizontal connection is linear in t, so a zero on
        // [0, t] shows up as a sign change between the endpoints
        for sc in self.horizontal_saddle_connections() {
            if !sc.joins_distinct() {
                continue;
            }
            let x0 = linalg_dot(&sc.class, &a);
            let x1 = linalg_dot(&sc.class, &moved);
            if x0.is_zero() || x1.is_zero() || x0.is_positive() != x1.is_positive() {
                return Err(Error::CollisionObstruction(format!(
                    "horizontal connection of class {:?} between singularities {} and {} shrinks to a point",
                    sc.class, sc.endpoints.0, sc.endpoints.1
                )));
            }
        }
        Self::suspend(self.perm(), &moved, &self.b())
    }
}

fn linalg_dot<S: Scalar>(c: &[i64], v: &[S]) -> S {
    c.iter()
        .zip(v)
        .fold(S::zero(), |acc, (&k, x)| acc + S::from_i64(k) * x.clone())
}

/// `Σ c_i v_i` for an integer vector `c`.
pub fn period<S: Scalar>(c: &[i64], v: &[S]) -> S {
    linalg_dot(c, v)
}
