//! Masur's one-polygon suspension of an interval exchange.
//!
//! The polygon is stored through the holonomy vectors `hol_1..hol_d` of its
//! top edges; every vertex is an integer combination of them. The transversal
//! is the diameter `P_0 P_d`, which is horizontal whenever `Σ b_i = 0`.

mod geometry;
mod rel;
mod saddle;

use std::cmp::Ordering;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::iet::Iet;
use crate::perm::{Permutation, PolygonLayout, StratumData};
use crate::scalar::Scalar;

pub use geometry::Point;
pub use rel::period;
pub use saddle::SaddleConnection;

use geometry::{cross, fuzzy_sign, sector_contains, sub};

/// Relative tolerance of the binary64 backend for geometric predicates.
pub const FLOAT_GEOM_TOL: f64 = 1e-12;

/// On binary64, a connection is horizontal when `|y| ≤ 1e−10·Σ|b_i|`.
pub const FLOAT_HORIZONTAL_TOL: f64 = 1e-10;

/// `[[a, b], [c, d]]`
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix2<S> {
    pub a: S,
    pub b: S,
    pub c: S,
    pub d: S,
}

impl<S: Scalar> Matrix2<S> {
    pub fn new(a: S, b: S, c: S, d: S) -> Self {
        Self { a, b, c, d }
    }

    pub fn identity() -> Self {
        Self::new(S::one(), S::zero(), S::zero(), S::one())
    }

    /// `h_s = [[1, s], [0, 1]]`
    pub fn horocycle(s: S) -> Self {
        Self::new(S::one(), s, S::zero(), S::one())
    }

    pub fn det(&self) -> S {
        self.a.clone() * self.d.clone() - self.b.clone() * self.c.clone()
    }

    pub fn apply(&self, v: &Point<S>) -> Point<S> {
        (
            self.a.clone() * v.0.clone() + self.b.clone() * v.1.clone(),
            self.c.clone() * v.0.clone() + self.d.clone() * v.1.clone(),
        )
    }

    pub fn mul(&self, o: &Self) -> Self {
        let m = |p: &S, q: &S, r: &S, s: &S| p.clone() * q.clone() + r.clone() * s.clone();
        Self::new(
            m(&self.a, &o.a, &self.b, &o.c),
            m(&self.a, &o.b, &self.b, &o.d),
            m(&self.c, &o.a, &self.d, &o.c),
            m(&self.c, &o.b, &self.d, &o.d),
        )
    }
}

impl Matrix2<f64> {
    /// `g_t = diag(e^{t/2}, e^{−t/2})`
    pub fn geodesic(t: f64) -> Self {
        Self::new((t / 2.0).exp(), 0.0, 0.0, (-t / 2.0).exp())
    }

    /// Counterclockwise rotation by `θ`.
    pub fn rotation(theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        Self::new(c, -s, s, c)
    }
}

/// A translation surface given by a single polygon with `2d` sides.
#[derive(Clone, Debug)]
pub struct TranslationSurface<S> {
    perm: Permutation,
    hol: Vec<Point<S>>,
    vertices: Vec<Point<S>>,
    labels: Vec<usize>,
    stratum: StratumData,
    layout: PolygonLayout,
}

impl<S: Scalar> PartialEq for TranslationSurface<S> {
    fn eq(&self, other: &Self) -> bool {
        self.perm == other.perm && self.hol == other.hol
    }
}

impl<S: Scalar> TranslationSurface<S> {
    /// Masur's polygon over `T_σ(a)` with heights `b`.
    pub fn suspend(perm: &Permutation, a: &[S], b: &[S]) -> Result<Self> {
        perm.require_irreducible()?;
        let d = perm.d();
        for v in [a, b] {
            if v.len() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    got: v.len(),
                });
            }
        }
        if let Some(i) = a.iter().position(|x| !x.is_positive()) {
            return Err(Error::SuspensionInvalid(format!(
                "a_{} = {} is not positive",
                i + 1,
                a[i]
            )));
        }
        let hol: Vec<Point<S>> = a.iter().cloned().zip(b.iter().cloned()).collect();
        let s = Self::build(perm, hol);
        for i in 1..d {
            let y = &s.vertices[s.upper_vertex(i)].1;
            if !y.is_positive() {
                return Err(Error::SuspensionInvalid(format!("y_{i} = {y} is not positive")));
            }
            let y = &s.vertices[i].1;
            if !y.is_negative() {
                return Err(Error::SuspensionInvalid(format!("y'_{i} = {y} is not negative")));
            }
        }
        Ok(s)
    }

    fn build(perm: &Permutation, hol: Vec<Point<S>>) -> Self {
        let layout = PolygonLayout::new(perm);
        let vertices = (0..layout.n_vertices())
            .map(|v| combine(&hol, &layout.vertex_coeffs(v)))
            .collect();
        let stratum = perm
            .singularity_data()
            .expect("irreducible permutation has stratum data");
        let slot_labels = stratum.slot_labels();
        let labels = (0..layout.n_vertices())
            .map(|v| slot_labels[layout.slots_of_vertex(v)[0]])
            .collect();
        Self {
            perm: perm.clone(),
            hol,
            vertices,
            labels,
            stratum,
            layout,
        }
    }

    pub fn perm(&self) -> &Permutation {
        &self.perm
    }

    pub fn d(&self) -> usize {
        self.perm.d()
    }

    /// Holonomy `(x, y)` of top edge `i` (index `i − 1`).
    pub fn holonomies(&self) -> &[Point<S>] {
        &self.hol
    }

    /// x-components of the edge holonomies; the lengths `a` for a suspension.
    pub fn a(&self) -> Vec<S> {
        self.hol.iter().map(|h| h.0.clone()).collect()
    }

    /// y-components of the edge holonomies; the heights `b` for a suspension.
    pub fn b(&self) -> Vec<S> {
        self.hol.iter().map(|h| h.1.clone()).collect()
    }

    /// Polygon vertices in counterclockwise order
    /// `P_0, P'_1, …, P'_{d−1}, P_d, P_{d−1}, …, P_1`.
    pub fn vertices(&self) -> &[Point<S>] {
        &self.vertices
    }

    /// Singularity label of each polygon vertex.
    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn stratum(&self) -> &StratumData {
        &self.stratum
    }

    /// Polygon edge glued to each edge.
    pub fn pairing(&self) -> Vec<usize> {
        (0..self.layout.n_vertices())
            .map(|e| self.layout.partner(e))
            .collect()
    }

    /// `P_i`
    pub fn upper(&self, i: usize) -> &Point<S> {
        &self.vertices[self.upper_vertex(i)]
    }

    /// `P'_i`
    pub fn lower(&self, i: usize) -> &Point<S> {
        &self.vertices[i]
    }

    fn upper_vertex(&self, i: usize) -> usize {
        let d = self.d();
        if i == 0 || i == d {
            i
        } else {
            2 * d - i
        }
    }

    pub(crate) fn vertex_coeffs(&self, v: usize) -> Vec<i64> {
        self.layout.vertex_coeffs(v)
    }

    pub(crate) fn layout(&self) -> &PolygonLayout {
        &self.layout
    }

    /// Shoelace area.
    pub fn area(&self) -> S {
        let n = self.vertices.len();
        let twice = (0..n).fold(S::zero(), |acc, i| {
            acc + cross(&self.vertices[i], &self.vertices[(i + 1) % n])
        });
        twice / S::from_i64(2)
    }

    /// `g·q`, acting on every holonomy vector.
    pub fn apply_matrix(&self, g: &Matrix2<S>) -> Result<Self> {
        let det = g.det().to_f64();
        if (det - 1.0).abs() > 1e-12 {
            return Err(Error::NotUnimodular(det));
        }
        let hol = self.hol.iter().map(|h| g.apply(h)).collect();
        Ok(Self::build(&self.perm, hol))
    }

    pub fn to_f64(&self) -> TranslationSurface<f64> {
        let hol = self
            .hol
            .iter()
            .map(|(x, y)| (x.to_f64(), y.to_f64()))
            .collect();
        TranslationSurface::build(&self.perm, hol)
    }

    /// Rescaled by `area^{−1/2}` so that the area is one.
    pub fn normalize_area(&self) -> TranslationSurface<f64> {
        let q = self.to_f64();
        let k = q.area().sqrt().recip();
        let hol = q.hol.iter().map(|(x, y)| (x * k, y * k)).collect();
        TranslationSurface::build(&self.perm, hol)
    }

    /// Scale for the fuzzy predicates of the binary64 backend.
    pub(crate) fn scale(&self) -> f64 {
        self.hol
            .iter()
            .map(|(x, y)| x.to_f64().abs() + y.to_f64().abs())
            .sum()
    }

    /// First-return map of the upward vertical flow to the diameter
    /// `P_0 P_d`, parametrized by the x-coordinate.
    pub fn vertical_return_map(&self) -> Result<Iet<S>> {
        let d = self.d();
        let n = self.vertices.len();
        let end = self.vertices[d].clone();
        if !end.0.is_positive() {
            return Err(Error::DegenerateTransversal(
                "the diameter does not point to the right".into(),
            ));
        }
        let mag = self.scale() * self.scale();
        for v in 1..n {
            if v == d {
                continue;
            }
            let side = fuzzy_sign(&cross(&end, &self.vertices[v]), mag);
            let want = if v < d { Ordering::Less } else { Ordering::Greater };
            if side != want {
                return Err(Error::DegenerateTransversal(format!(
                    "vertex {v} is not strictly on its side of the diameter"
                )));
            }
        }
        let tracer = geometry::Tracer::new(self);

        let down = (S::zero(), -S::one());
        let mut cuts: Vec<S> = Vec::new();
        for v in 0..n {
            let here = &self.vertices[v];
            let u = sub(&self.vertices[(v + 1) % n], here);
            let w = sub(&self.vertices[(v + n - 1) % n], here);
            for e in [&u, &w] {
                if fuzzy_sign(&e.0, self.scale()) == Ordering::Equal && e.1.is_negative() {
                    return Err(Error::DegenerateTransversal(format!(
                        "vertical edge below vertex {v}"
                    )));
                }
            }
            if !sector_contains(&u, &w, &down, mag) {
                continue;
            }
            if let Some(x) = tracer.from_vertex_down(v)? {
                if tracer.strictly_inside(&x) {
                    cuts.push(x);
                }
            }
        }
        cuts.sort_by(S::cmp_total);
        cuts.dedup_by(|p, q| tracer.same(p, q));
        if cuts.len() != d - 1 {
            return Err(Error::DegenerateTransversal(format!(
                "found {} discontinuities, expected {}",
                cuts.len(),
                d - 1
            )));
        }

        let mut bounds = vec![S::zero()];
        bounds.extend(cuts);
        bounds.push(end.0.clone());
        let two = S::from_i64(2);
        let mut images = Vec::with_capacity(d);
        for j in 0..d {
            let mid = (bounds[j].clone() + bounds[j + 1].clone()) / two.clone();
            let image = tracer.up_from_diameter(&mid)?.ok_or_else(|| {
                Error::DegenerateTransversal(format!("midpoint of interval {} is singular", j + 1))
            })?;
            images.push(bounds[j].clone() + image - mid);
        }
        let mut order: Vec<usize> = (0..d).collect();
        order.sort_by(|&p, &q| images[p].cmp_total(&images[q]));
        let mut sigma = vec![0; d];
        for (rank, &j) in order.iter().enumerate() {
            sigma[j] = rank + 1;
        }
        let lengths: Vec<S> = (0..d)
            .map(|j| bounds[j + 1].clone() - bounds[j].clone())
            .collect();
        // the images must tile the diameter
        let mut at = S::zero();
        for &j in &order {
            if !tracer.same(&images[j], &at) {
                return Err(Error::DegenerateTransversal(
                    "return map images overlap".into(),
                ));
            }
            at = at + lengths[j].clone();
        }
        Iet::new(Permutation::new(sigma)?, lengths)
    }

    /// JSON description: vertices, pairing, labels and stratum.
    pub fn to_json(&self) -> Value {
        let pt = |p: &Point<S>| json!([p.0.to_f64(), p.1.to_f64()]);
        let mut v = json!({
            "sigma": self.perm.images(),
            "holonomy": self.hol.iter().map(pt).collect::<Vec<_>>(),
            "vertices": self.vertices.iter().map(pt).collect::<Vec<_>>(),
            "pairing": self.pairing(),
            "labels": self.labels,
            "stratum": self.stratum,
            "area": self.area().to_f64(),
        });
        if S::EXACT {
            let ex = |p: &Point<S>| json!([p.0.to_string(), p.1.to_string()]);
            v["holonomy_exact"] = json!(self.hol.iter().map(ex).collect::<Vec<_>>());
            v["vertices_exact"] = json!(self.vertices.iter().map(ex).collect::<Vec<_>>());
            v["area_exact"] = json!(self.area().to_string());
        }
        v
    }

    /// The polygon as an SVG picture, y axis pointing up.
    pub fn to_svg(&self) -> String {
        let pts: Vec<(f64, f64)> = self
            .vertices
            .iter()
            .map(|(x, y)| (x.to_f64(), y.to_f64()))
            .collect();
        let (mut x0, mut x1, mut y0, mut y1) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
        for &(x, y) in &pts {
            x0 = x0.min(x);
            x1 = x1.max(x);
            y0 = y0.min(y);
            y1 = y1.max(y);
        }
        let pad = 0.05 * (x1 - x0).max(y1 - y0);
        let path: Vec<String> = pts.iter().map(|(x, y)| format!("{x:.9},{:.9}", -y)).collect();
        let stroke = 0.005 * (x1 - x0).max(y1 - y0);
        let mut out = format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{:.9} {:.9} {:.9} {:.9}\">\n",
            x0 - pad,
            -y1 - pad,
            x1 - x0 + 2.0 * pad,
            y1 - y0 + 2.0 * pad
        );
        out += &format!(
            "  <polygon points=\"{}\" fill=\"#e8eef7\" stroke=\"#234\" stroke-width=\"{stroke:.9}\"/>\n",
            path.join(" ")
        );
        let d = self.d();
        out += &format!(
            "  <line x1=\"{:.9}\" y1=\"{:.9}\" x2=\"{:.9}\" y2=\"{:.9}\" stroke=\"#b33\" stroke-width=\"{stroke:.9}\"/>\n",
            pts[0].0, -pts[0].1, pts[d].0, -pts[d].1
        );
        out += "</svg>\n";
        out
    }
}

pub(crate) fn combine<S: Scalar>(hol: &[Point<S>], coeffs: &[i64]) -> Point<S> {
    let mut x = S::zero();
    let mut y = S::zero();
    for (h, &c) in hol.iter().zip(coeffs) {
        match c {
            0 => {}
            1 => {
                x = x + h.0.clone();
                y = y + h.1.clone();
            }
            -1 => {
                x = x - h.0.clone();
                y = y - h.1.clone();
            }
            _ => {
                let k = S::from_i64(c);
                x = x + k.clone() * h.0.clone();
                y = y + k * h.1.clone();
            }
        }
    }
    (x, y)
}
