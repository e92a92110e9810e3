//! Saddle connections by unfolding triangles along straight-line wedges.
//!
//! From every corner of every triangle, the open wedge of directions at that
//! corner is pushed across the opposite side into the neighbouring triangle
//! (through a gluing when the side is a polygon edge). A vertex of the new
//! triangle strictly inside the wedge is a saddle connection and splits the
//! wedge in two. Positions are tracked both as points and as integer
//! combinations of the edge holonomies, which gives the relative homology
//! class of each connection.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;

use super::geometry::{add, cross, fuzzy_sign, sub, triangulate, Point};
use super::{combine, TranslationSurface};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub struct SaddleConnection<S> {
    /// `(x, y)`, normalized so that the first nonzero entry of `class` is positive.
    pub holonomy: Point<S>,
    /// Singularity labels of the start and end point.
    pub endpoints: (usize, usize),
    /// Holonomy as an integer combination of the edge holonomies `hol_1..hol_d`.
    pub class: Vec<i64>,
}

impl<S: Scalar> SaddleConnection<S> {
    /// `ℓ = max(|x|, |y|)`
    pub fn length(&self) -> S {
        self.holonomy.0.abs().max_of(self.holonomy.1.abs())
    }

    pub fn joins_distinct(&self) -> bool {
        self.endpoints.0 != self.endpoints.1
    }

    /// Holonomy of the same class on a surface with other edge holonomies.
    pub fn holonomy_on(&self, hol: &[Point<S>]) -> Point<S> {
        combine(hol, &self.class)
    }
}

/// A point of the unfolding, relative to the wedge apex.
#[derive(Clone)]
struct Rel<S> {
    class: Vec<i64>,
    p: Point<S>,
}

/// The wedge between `dr` and `dl` (counterclockwise), entering the side of
/// triangle `t` numbered `k`, whose endpoints are `r` (right) and `l` (left).
struct Node<S> {
    t: usize,
    k: usize,
    r: Rel<S>,
    l: Rel<S>,
    dr: Point<S>,
    dl: Point<S>,
}

pub(crate) struct Unfolding {
    tris: Vec<[usize; 3]>,
    /// Triangle and side entered when crossing side `k` of triangle `t`.
    across: Vec<[(usize, usize); 3]>,
    coeffs: Vec<Vec<i64>>,
}

impl Unfolding {
    pub(crate) fn new<S: Scalar>(q: &TranslationSurface<S>) -> crate::Result<Self> {
        let verts = q.vertices();
        let n = verts.len();
        let mag = q.scale() * q.scale();
        let tris = triangulate(verts, mag)?;
        let mut side_of: HashMap<(usize, usize), (usize, usize)> = HashMap::new();
        for (t, tri) in tris.iter().enumerate() {
            for k in 0..3 {
                side_of.insert((tri[k], tri[(k + 1) % 3]), (t, k));
            }
        }
        let layout = q.layout();
        let across = tris
            .iter()
            .map(|tri| {
                let mut out = [(0, 0); 3];
                for k in 0..3 {
                    let (u, v) = (tri[k], tri[(k + 1) % 3]);
                    let key = if v == (u + 1) % n {
                        let p = layout.partner(u);
                        (p, (p + 1) % n)
                    } else {
                        (v, u)
                    };
                    out[k] = side_of[&key];
                }
                out
            })
            .collect();
        let coeffs = (0..n).map(|v| q.vertex_coeffs(v)).collect();
        Ok(Self {
            tris,
            across,
            coeffs,
        })
    }

    pub(crate) fn triangles(&self) -> &[[usize; 3]] {
        &self.tris
    }
}

/// What to collect.
#[derive(Clone, Copy, PartialEq)]
pub(crate) enum Filter {
    All,
    /// Only wedges that contain a horizontal direction are explored.
    Horizontal,
}

fn ell<S: Scalar>(p: &Point<S>) -> S {
    p.0.abs().max_of(p.1.abs())
}

fn diff(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn plus(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// Does the part of segment `[r, l]` seen inside the wedge meet `[−ρ, ρ]²`?
/// Evaluated in binary64 with a slightly inflated box, so it never prunes a
/// connection that is inside the box.
fn wedge_side_meets_box<S: Scalar>(r: &Point<S>, l: &Point<S>, dr: &Point<S>, dl: &Point<S>, rho: f64) -> bool {
    let f = |p: &Point<S>| (p.0.to_f64(), p.1.to_f64());
    let (r, l, dr, dl) = (f(r), f(l), f(dr), f(dl));
    let e = (l.0 - r.0, l.1 - r.1);
    let cr = |a: (f64, f64), b: (f64, f64)| a.0 * b.1 - a.1 * b.0;
    let param = |d: (f64, f64), fallback: f64| {
        let den = cr(d, e);
        if den.abs() < 1e-300 {
            fallback
        } else {
            (-cr(d, r) / den).clamp(0.0, 1.0)
        }
    };
    let slack = 1e-9;
    let lo = (param(dr, 0.0) - slack).max(0.0);
    let hi = (param(dl, 1.0) + slack).min(1.0);
    if lo > hi {
        return true;
    }
    let a = (r.0 + lo * e.0, r.1 + lo * e.1);
    let b = (r.0 + hi * e.0, r.1 + hi * e.1);
    let bound = rho * (1.0 + 1e-9) + 1e-12;
    segment_meets_box(a, b, bound)
}

/// Liang–Barsky clipping of a segment against `[−h, h]²`.
fn segment_meets_box(a: (f64, f64), b: (f64, f64), h: f64) -> bool {
    let (dx, dy) = (b.0 - a.0, b.1 - a.1);
    let mut t0: f64 = 0.0;
    let mut t1: f64 = 1.0;
    for (p, q) in [(-dx, a.0 + h), (dx, h - a.0), (-dy, a.1 + h), (dy, h - a.1)] {
        if p == 0.0 {
            if q < 0.0 {
                return false;
            }
        } else {
            let t = q / p;
            if p < 0.0 {
                t0 = t0.max(t);
            } else {
                t1 = t1.min(t);
            }
            if t0 > t1 {
                return false;
            }
        }
    }
    true
}

/// Does the closed wedge contain `(1, 0)` or `(−1, 0)`?
fn wedge_has_horizontal<S: Scalar>(dr: &Point<S>, dl: &Point<S>, mag: f64) -> bool {
    let h = (S::one(), S::zero());
    let g = (-S::one(), S::zero());
    [h, g].iter().any(|z| {
        fuzzy_sign(&cross(dr, z), mag) != Ordering::Less && fuzzy_sign(&cross(z, dl), mag) != Ordering::Less
    })
}

type Key = (Vec<i64>, (usize, usize));

impl<S: Scalar> TranslationSurface<S> {
    /// Every saddle connection with `max(|x|, |y|) ≤ rho`, sorted by holonomy.
    pub fn saddle_connections_up_to(&self, rho: &S) -> Vec<SaddleConnection<S>> {
        self.enumerate(rho, Filter::All)
    }

    pub(crate) fn enumerate(&self, rho: &S, filter: Filter) -> Vec<SaddleConnection<S>> {
        if !rho.is_positive() {
            return Vec::new();
        }
        let unf = Unfolding::new(self).expect("a suspension polygon is simple");
        let corners: Vec<(usize, usize)> = (0..unf.tris.len())
            .flat_map(|t| (0..3).map(move |c| (t, c)))
            .collect();
        let found: Vec<Vec<(Key, SaddleConnection<S>)>> = corners
            .par_iter()
            .map(|&(t, c)| self.explore_corner(&unf, t, c, rho, filter))
            .collect();
        let mut merged: BTreeMap<Key, SaddleConnection<S>> = BTreeMap::new();
        for list in found {
            for (k, sc) in list {
                merged.entry(k).or_insert(sc);
            }
        }
        let mut out: Vec<SaddleConnection<S>> = merged.into_values().collect();
        out.sort_by(|p, q| {
            p.holonomy
                .0
                .cmp_total(&q.holonomy.0)
                .then(p.holonomy.1.cmp_total(&q.holonomy.1))
                .then(p.endpoints.cmp(&q.endpoints))
                .then(p.class.cmp(&q.class))
        });
        out
    }

    fn record(&self, unf_apex: usize, target: usize, rel: &Rel<S>, rho: &S, filter: Filter, out: &mut Vec<(Key, SaddleConnection<S>)>) {
        if ell(&rel.p).cmp_total(rho) == Ordering::Greater {
            return;
        }
        if filter == Filter::Horizontal && !self.is_horizontal(&rel.p.1) {
            return;
        }
        let flip = rel.class.iter().find(|&&c| c != 0).is_some_and(|&c| c < 0);
        let (class, endpoints) = if flip {
            (
                rel.class.iter().map(|c| -c).collect::<Vec<_>>(),
                (self.labels()[target], self.labels()[unf_apex]),
            )
        } else {
            (rel.class.clone(), (self.labels()[unf_apex], self.labels()[target]))
        };
        let holonomy = combine(self.holonomies(), &class);
        out.push((
            (class.clone(), endpoints),
            SaddleConnection {
                holonomy,
                endpoints,
                class,
            },
        ));
    }

    fn explore_corner(&self, unf: &Unfolding, t: usize, c: usize, rho: &S, filter: Filter) -> Vec<(Key, SaddleConnection<S>)> {
        let verts = self.vertices();
        let tri = unf.tris[t];
        let apex = tri[c];
        let b = tri[(c + 1) % 3];
        let cc = tri[(c + 2) % 3];
        let rel = |v: usize| Rel {
            class: diff(&unf.coeffs[v], &unf.coeffs[apex]),
            p: sub(&verts[v], &verts[apex]),
        };
        let rho_f = rho.to_f64();
        let mag = self.scale() * (self.scale() + rho_f);
        let mut out = Vec::new();
        let (rb, rc) = (rel(b), rel(cc));
        self.record(apex, b, &rb, rho, filter, &mut out);
        self.record(apex, cc, &rc, rho, filter, &mut out);

        let mut stack = vec![Node {
            t,
            k: (c + 1) % 3,
            dr: rb.p.clone(),
            dl: rc.p.clone(),
            r: rb,
            l: rc,
        }];
        let admissible = |node: &Node<S>| {
            (filter == Filter::All || wedge_has_horizontal(&node.dr, &node.dl, mag))
                && wedge_side_meets_box(&node.r.p, &node.l.p, &node.dr, &node.dl, rho_f)
        };
        if !admissible(&stack[0]) {
            return out;
        }
        while let Some(node) = stack.pop() {
            let (t2, k2) = unf.across[node.t][node.k];
            let tri2 = unf.tris[t2];
            let w_vertex = tri2[(k2 + 2) % 3];
            let m_vertex = tri2[(k2 + 1) % 3];
            let w = Rel {
                class: plus(&node.r.class, &diff(&unf.coeffs[w_vertex], &unf.coeffs[m_vertex])),
                p: add(&node.r.p, &sub(&verts[w_vertex], &verts[m_vertex])),
            };
            let right = fuzzy_sign(&cross(&node.dr, &w.p), mag);
            let left = fuzzy_sign(&cross(&w.p, &node.dl), mag);
            let mut children = Vec::with_capacity(2);
            if right == Ordering::Greater && left == Ordering::Greater {
                self.record(apex, w_vertex, &w, rho, filter, &mut out);
                children.push(Node {
                    t: t2,
                    k: (k2 + 2) % 3,
                    r: w.clone(),
                    l: node.l,
                    dr: w.p.clone(),
                    dl: node.dl,
                });
                children.push(Node {
                    t: t2,
                    k: (k2 + 1) % 3,
                    r: node.r,
                    l: w.clone(),
                    dr: node.dr,
                    dl: w.p,
                });
            } else if right != Ordering::Greater {
                children.push(Node {
                    t: t2,
                    k: (k2 + 2) % 3,
                    r: w,
                    l: node.l,
                    dr: node.dr,
                    dl: node.dl,
                });
            } else {
                children.push(Node {
                    t: t2,
                    k: (k2 + 1) % 3,
                    r: node.r,
                    l: w,
                    dr: node.dr,
                    dl: node.dl,
                });
            }
            for child in children {
                if admissible(&child) {
                    stack.push(child);
                }
            }
        }
        out
    }

    pub(crate) fn is_horizontal(&self, y: &S) -> bool {
        if S::EXACT {
            y.is_zero()
        } else {
            let sb: f64 = self.holonomies().iter().map(|h| h.1.to_f64().abs()).sum();
            y.to_f64().abs() <= super::FLOAT_HORIZONTAL_TOL * sb
        }
    }

    /// `φ(q)` and a shortest saddle connection.
    pub fn shortest_sc(&self) -> (S, SaddleConnection<S>) {
        // polygon sides and diagonals are saddle connections, so the shortest
        // triangle side bounds φ from above
        let unf = Unfolding::new(self).expect("a suspension polygon is simple");
        let verts = self.vertices();
        let bound = unf
            .triangles()
            .iter()
            .flat_map(|tri| (0..3).map(move |k| (tri[k], tri[(k + 1) % 3])))
            .map(|(u, v)| ell(&sub(&verts[v], &verts[u])))
            .reduce(|a, b| a.min_of(b))
            .expect("polygon has triangles");
        // doubling from a small radius keeps the search cheap when φ is far
        // below the bound
        let mut rho = bound.clone() / S::from_i64(64);
        let all = loop {
            let found = self.enumerate(&rho, Filter::All);
            if !found.is_empty() || rho.cmp_total(&bound) != Ordering::Less {
                break found;
            }
            rho = (rho * S::from_i64(2)).min_of(bound.clone());
        };
        let best = all
            .into_iter()
            .min_by(|p, q| p.length().cmp_total(&q.length()))
            .expect("the bound is attained by a triangle side");
        (best.length(), best)
    }

    pub fn phi(&self) -> S {
        self.shortest_sc().0
    }

    /// Horizontal saddle connections, searched up to `ρ = 2·Σ|x_i|`.
    pub fn horizontal_saddle_connections(&self) -> Vec<SaddleConnection<S>> {
        let rho = self
            .holonomies()
            .iter()
            .fold(S::zero(), |acc, h| acc + h.0.abs())
            * S::from_i64(2);
        self.enumerate(&rho, Filter::Horizontal)
    }
}

impl<S: Scalar> TranslationSurface<S> {
    /// `φ(q/√area) ≥ ε`
    pub fn in_k_eps(&self, eps: f64) -> bool {
        self.normalize_area().phi() >= eps
    }
}
