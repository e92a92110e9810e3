//! Planar predicates and vertical ray casting inside the polygon.

use std::cmp::Ordering;

use super::{TranslationSurface, FLOAT_GEOM_TOL};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub type Point<S> = (S, S);

pub(crate) fn sub<S: Scalar>(p: &Point<S>, q: &Point<S>) -> Point<S> {
    (p.0.clone() - q.0.clone(), p.1.clone() - q.1.clone())
}

pub(crate) fn add<S: Scalar>(p: &Point<S>, q: &Point<S>) -> Point<S> {
    (p.0.clone() + q.0.clone(), p.1.clone() + q.1.clone())
}

pub(crate) fn cross<S: Scalar>(p: &Point<S>, q: &Point<S>) -> S {
    p.0.clone() * q.1.clone() - p.1.clone() * q.0.clone()
}

/// Sign of `v`; on binary64, values within `1e−12·mag` count as zero.
pub(crate) fn fuzzy_sign<S: Scalar>(v: &S, mag: f64) -> Ordering {
    if S::EXACT {
        v.cmp_total(&S::zero())
    } else {
        let f = v.to_f64();
        if f.abs() <= FLOAT_GEOM_TOL * mag {
            Ordering::Equal
        } else if f > 0.0 {
            Ordering::Greater
        } else {
            Ordering::Less
        }
    }
}

/// Is direction `z` strictly inside the counterclockwise sector from `u` to `w`?
pub(crate) fn sector_contains<S: Scalar>(u: &Point<S>, w: &Point<S>, z: &Point<S>, mag: f64) -> bool {
    use Ordering::*;
    let s = |p: &Point<S>, q: &Point<S>| fuzzy_sign(&cross(p, q), mag);
    match s(u, w) {
        Greater => s(u, z) == Greater && s(z, w) == Greater,
        Less => !(s(w, z) != Less && s(z, u) != Less),
        Equal => s(u, z) == Greater,
    }
}

/// First boundary feature met by a vertical ray.
enum Hit<S> {
    Diameter(S),
    Edge { edge: usize, y: S },
    Vertex,
}

const MAX_CROSSINGS_PER_EDGE: usize = 8;

pub(crate) struct Tracer<'a, S> {
    q: &'a TranslationSurface<S>,
    end: Point<S>,
    /// Tolerance for lengths.
    len_mag: f64,
}

impl<'a, S: Scalar> Tracer<'a, S> {
    pub(crate) fn new(q: &'a TranslationSurface<S>) -> Self {
        let d = q.d();
        Self {
            q,
            end: q.vertices()[d].clone(),
            len_mag: q.scale(),
        }
    }

    pub(crate) fn same(&self, a: &S, b: &S) -> bool {
        fuzzy_sign(&(a.clone() - b.clone()), self.len_mag) == Ordering::Equal
    }

    /// `0 < x < X` with margin.
    pub(crate) fn strictly_inside(&self, x: &S) -> bool {
        fuzzy_sign(x, self.len_mag) == Ordering::Greater
            && fuzzy_sign(&(self.end.0.clone() - x.clone()), self.len_mag) == Ordering::Greater
    }

    fn diameter_y(&self, x: &S) -> S {
        self.end.1.clone() * x.clone() / self.end.0.clone()
    }

    /// Nearest boundary hit of the vertical ray from `(x, y0)`.
    fn cast(&self, x: &S, y0: &S, up: bool, skip_edge: Option<usize>, skip_diameter: bool) -> Result<Option<Hit<S>>> {
        let verts = self.q.vertices();
        let n = verts.len();
        let ahead = |y: &S| {
            let s = fuzzy_sign(&(y.clone() - y0.clone()), self.len_mag);
            if up {
                s == Ordering::Greater
            } else {
                s == Ordering::Less
            }
        };
        let mut best: Option<(S, Hit<S>)> = None;
        let consider = |y: S, hit: Hit<S>, best: &mut Option<(S, Hit<S>)>| {
            let closer = match best {
                None => true,
                Some((by, _)) => {
                    if up {
                        y.cmp_total(by) == Ordering::Less
                    } else {
                        y.cmp_total(by) == Ordering::Greater
                    }
                }
            };
            if closer {
                *best = Some((y, hit));
            }
        };
        for e in 0..n {
            if skip_edge == Some(e) {
                continue;
            }
            let p = &verts[e];
            let r = &verts[(e + 1) % n];
            let (lo, hi) = if p.0.cmp_total(&r.0) == Ordering::Less { (p, r) } else { (r, p) };
            let at_lo = self.same(x, &lo.0);
            let at_hi = self.same(x, &hi.0);
            if self.same(&lo.0, &hi.0) {
                if at_lo {
                    return Err(Error::DegenerateTransversal(format!(
                        "vertical ray runs along edge {e}"
                    )));
                }
                continue;
            }
            if at_lo || at_hi {
                let v = if at_lo { lo } else { hi };
                if ahead(&v.1) {
                    consider(v.1.clone(), Hit::Vertex, &mut best);
                }
                continue;
            }
            if x.cmp_total(&lo.0) != Ordering::Greater || x.cmp_total(&hi.0) != Ordering::Less {
                continue;
            }
            let y = p.1.clone() + (x.clone() - p.0.clone()) * (r.1.clone() - p.1.clone()) / (r.0.clone() - p.0.clone());
            if ahead(&y) {
                consider(y.clone(), Hit::Edge { edge: e, y }, &mut best);
            }
        }
        if !skip_diameter && self.strictly_inside(x) {
            let y = self.diameter_y(x);
            if ahead(&y) {
                consider(y, Hit::Diameter(x.clone()), &mut best);
            }
        }
        Ok(best.map(|(_, h)| h))
    }

    /// Follows the vertical flow from `(x, y)` until it meets the diameter.
    /// `None` when it runs into a vertex first.
    fn follow(&self, mut x: S, mut y: S, up: bool, mut skip_edge: Option<usize>, mut skip_diameter: bool) -> Result<Option<S>> {
        let verts = self.q.vertices();
        let n = verts.len();
        let layout = self.q.layout();
        for _ in 0..MAX_CROSSINGS_PER_EDGE * n {
            match self.cast(&x, &y, up, skip_edge, skip_diameter)? {
                Some(Hit::Diameter(at)) => return Ok(Some(at)),
                Some(Hit::Vertex) => return Ok(None),
                Some(Hit::Edge { edge, y: ye }) => {
                    let partner = layout.partner(edge);
                    let shift = sub(&verts[(partner + 1) % n], &verts[edge]);
                    x = x + shift.0;
                    y = ye + shift.1;
                    skip_edge = Some(partner);
                    skip_diameter = false;
                }
                None => {
                    return Err(Error::DegenerateTransversal(
                        "vertical ray left the polygon".into(),
                    ))
                }
            }
        }
        Err(Error::DegenerateTransversal(
            "vertical flow does not return to the diameter".into(),
        ))
    }

    pub(crate) fn up_from_diameter(&self, x: &S) -> Result<Option<S>> {
        let y = self.diameter_y(x);
        self.follow(x.clone(), y, true, None, true)
    }

    /// Downward trajectory out of polygon vertex `v`, to its first diameter hit.
    pub(crate) fn from_vertex_down(&self, v: usize) -> Result<Option<S>> {
        let verts = self.q.vertices();
        let p = verts[v].clone();
        let on_diameter = v == 0 || v == self.q.d();
        self.follow(p.0, p.1, false, None, on_diameter)
    }
}

/// Ear-clipping triangulation of a simple counterclockwise polygon; triangles
/// are counterclockwise vertex triples.
pub(crate) fn triangulate<S: Scalar>(pts: &[Point<S>], mag: f64) -> Result<Vec<[usize; 3]>> {
    let mut idx: Vec<usize> = (0..pts.len()).collect();
    let mut out = Vec::with_capacity(pts.len().saturating_sub(2));
    while idx.len() > 3 {
        let m = idx.len();
        let ear = (0..m).find(|&i| {
            let (a, b, c) = (idx[(i + m - 1) % m], idx[i], idx[(i + 1) % m]);
            let (pa, pb, pc) = (&pts[a], &pts[b], &pts[c]);
            if fuzzy_sign(&cross(&sub(pb, pa), &sub(pc, pb)), mag) != Ordering::Greater {
                return false;
            }
            idx.iter().all(|&o| {
                if o == a || o == b || o == c {
                    return true;
                }
                let po = &pts[o];
                let inside = [(pa, pb), (pb, pc), (pc, pa)]
                    .iter()
                    .all(|(s, t)| fuzzy_sign(&cross(&sub(t, s), &sub(po, s)), mag) != Ordering::Less);
                !inside
            })
        });
        let Some(i) = ear else {
            return Err(Error::SuspensionInvalid(
                "polygon is not simple and cannot be triangulated".into(),
            ));
        };
        out.push([idx[(i + m - 1) % m], idx[i], idx[(i + 1) % m]]);
        idx.remove(i);
    }
    out.push([idx[0], idx[1], idx[2]]);
    Ok(out)
}
