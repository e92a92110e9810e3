//! Permutation combinatorics and the stratum data of the suspension polygon.
//!
//! Permutations are 1-indexed: `sigma(i)` for `i` in `1..=d` returns the
//! position, after the exchange, of the interval that started at position `i`.

use std::fmt;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation {
    images: Vec<usize>,
    inverse: Vec<usize>,
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;
    fn try_from(images: Vec<usize>) -> Result<Self> {
        Permutation::new(images)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Self {
        p.images
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.images.iter().map(|v| v.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl Permutation {
    /// Builds a permutation from its image list `(sigma(1), …, sigma(d))`.
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let d = images.len();
        if d < 2 {
            return Err(Error::InvalidPermutation(format!(
                "need at least 2 symbols, got {d}"
            )));
        }
        let mut inverse = vec![0usize; d];
        for (i, &v) in images.iter().enumerate() {
            if v == 0 || v > d || inverse[v - 1] != 0 {
                return Err(Error::InvalidPermutation(format!(
                    "{images:?} is not a bijection on 1..={d}"
                )));
            }
            inverse[v - 1] = i + 1;
        }
        Ok(Self { images, inverse })
    }

    /// The reversal `i ↦ d + 1 − i`.
    pub fn reversal(d: usize) -> Result<Self> {
        Self::new((1..=d).rev().collect())
    }

    pub fn d(&self) -> usize {
        self.images.len()
    }

    /// `sigma(i)`, 1-indexed.
    pub fn sigma(&self, i: usize) -> usize {
        self.images[i - 1]
    }

    /// `sigma^{-1}(j)`, 1-indexed.
    pub fn sigma_inv(&self, j: usize) -> usize {
        self.inverse[j - 1]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// No proper prefix `{1..k}` is mapped onto itself.
    pub fn is_irreducible(&self) -> bool {
        let d = self.d();
        let mut max_image = 0;
        for k in 1..d {
            max_image = max_image.max(self.sigma(k));
            if max_image == k {
                return false;
            }
        }
        true
    }

    pub(crate) fn require_irreducible(&self) -> Result<()> {
        if self.is_irreducible() {
            Ok(())
        } else {
            Err(Error::NotIrreducible(self.to_string()))
        }
    }

    /// The canonical heights `b_i = sigma(i) − i`.
    pub fn canonical_heights(&self) -> Vec<i64> {
        (1..=self.d())
            .map(|i| self.sigma(i) as i64 - i as i64)
            .collect()
    }

    /// Singularity data of the suspension, computed on the polygon with unit
    /// lengths and the canonical heights.
    pub fn singularity_data(&self) -> Result<StratumData> {
        self.require_irreducible()?;
        let d = self.d();
        self.singularity_data_with(&vec![1; d], &self.canonical_heights())
    }

    /// Same as [`Permutation::singularity_data`] but on a caller-chosen
    /// polygon. Lengths must be positive and heights must give a valid
    /// suspension.
    pub fn singularity_data_with(&self, lengths: &[i64], heights: &[i64]) -> Result<StratumData> {
        self.require_irreducible()?;
        let d = self.d();
        if lengths.len() != d || heights.len() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: lengths.len().min(heights.len()),
            });
        }
        if lengths.iter().any(|&a| a <= 0) {
            return Err(Error::InvalidLengths("lengths must be positive".into()));
        }
        let layout = PolygonLayout::new(self);
        let pts: Vec<(i64, i64)> = (0..layout.n_vertices())
            .map(|v| {
                let c = layout.vertex_coeffs(v);
                let x: i64 = c.iter().zip(lengths).map(|(k, a)| k * a).sum();
                let y: i64 = c.iter().zip(heights).map(|(k, b)| k * b).sum();
                (x, y)
            })
            .collect();
        for v in 0..layout.n_vertices() {
            let (_, y) = pts[v];
            let bad = match layout.vertex_kind(v) {
                VertexKind::Upper(i) if i > 0 && i < d => y <= 0,
                VertexKind::Lower(i) if i > 0 && i < d => y >= 0,
                VertexKind::Upper(_) | VertexKind::Lower(_) => false,
            };
            if bad {
                return Err(Error::SuspensionInvalid(format!(
                    "heights {heights:?} give a degenerate polygon at vertex {v}"
                )));
            }
        }

        let n = layout.n_vertices();
        let mut seen = vec![false; n];
        let mut corner_cycles = Vec::new();
        let mut orders = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut up_crossings = 0usize;
            let mut k = start;
            while !seen[k] {
                seen[k] = true;
                cycle.push(k);
                let here = pts[k];
                let next = pts[(k + 1) % n];
                let prev = pts[(k + n - 1) % n];
                let u = (next.0 - here.0, next.1 - here.1);
                let w = (prev.0 - here.0, prev.1 - here.1);
                if sector_contains(u, w, (0, 1)) {
                    up_crossings += 1;
                }
                k = layout.next_corner(k);
            }
            // each full turn around the vertex sweeps the upward direction once
            assert!(up_crossings >= 1, "corner cycle without a full turn");
            orders.push(up_crossings as u32 - 1);
            corner_cycles.push(cycle);
        }

        // translate polygon corners into the 2(d+1) vertex slots
        let mut slot_class = vec![usize::MAX; 2 * (d + 1)];
        for (c, cycle) in corner_cycles.iter().enumerate() {
            for &v in cycle {
                for s in layout.slots_of_vertex(v) {
                    slot_class[s] = c;
                }
            }
        }
        let mut classes: Vec<(Vec<usize>, u32)> = corner_cycles
            .iter()
            .enumerate()
            .map(|(c, _)| {
                let slots: Vec<usize> = (0..slot_class.len())
                    .filter(|&s| slot_class[s] == c)
                    .collect();
                (slots, orders[c])
            })
            .collect();
        classes.sort();
        let k = classes.len();
        let orders: Vec<u32> = classes.iter().map(|c| c.1).collect();
        let vertex_cycles: Vec<Vec<usize>> = classes.into_iter().map(|c| c.0).collect();
        let total: u32 = orders.iter().sum();
        let genus = (total + 2) / 2;
        let data = StratumData {
            k,
            orders,
            genus: genus as usize,
            vertex_cycles,
        };
        assert_eq!(total as i64, 2 * data.genus as i64 - 2, "Gauss-Bonnet");
        assert_eq!(d, 2 * data.genus + data.k - 1, "dimension count");
        Ok(data)
    }

    /// Every singularity has cone angle strictly larger than 2π.
    pub fn is_admissible(&self) -> Result<bool> {
        Ok(self.singularity_data()?.orders.iter().all(|&r| r >= 1))
    }

    /// All permutations of `1..=d` in lexicographic order.
    pub fn all(d: usize) -> impl Iterator<Item = Permutation> {
        let mut current: Option<Vec<usize>> = Some((1..=d).collect());
        std::iter::from_fn(move || {
            let out = current.take()?;
            let mut next = out.clone();
            if next_permutation(&mut next) {
                current = Some(next);
            }
            Permutation::new(out).ok()
        })
    }

    pub fn all_irreducible(d: usize) -> impl Iterator<Item = Permutation> {
        Self::all(d).filter(Permutation::is_irreducible)
    }

    /// Uniformly random irreducible permutation (rejection sampling).
    pub fn random_irreducible<R: Rng + ?Sized>(d: usize, rng: &mut R) -> Permutation {
        let mut images: Vec<usize> = (1..=d).collect();
        loop {
            images.shuffle(rng);
            let p = Permutation::new(images.clone()).expect("shuffle is a bijection");
            if p.is_irreducible() {
                return p;
            }
        }
    }
}

fn next_permutation(v: &mut [usize]) -> bool {
    let n = v.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Is direction `z` strictly inside the counterclockwise sector from `u` to `w`?
fn sector_contains(u: (i64, i64), w: (i64, i64), z: (i64, i64)) -> bool {
    let cross = |p: (i64, i64), q: (i64, i64)| p.0 * q.1 - p.1 * q.0;
    let uw = cross(u, w);
    if uw > 0 {
        cross(u, z) > 0 && cross(z, w) > 0
    } else if uw < 0 {
        !(cross(w, z) >= 0 && cross(z, u) >= 0)
    } else {
        // straight angle
        cross(u, z) > 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StratumData {
    /// Number of singularities (marked points included).
    pub k: usize,
    /// Order `r_j` of each singularity; the cone angle is `2π(r_j + 1)`.
    pub orders: Vec<u32>,
    pub genus: usize,
    /// Partition of the vertex slots `P_0..P_d` (slots `0..=d`) and
    /// `P'_0..P'_d` (slots `d+1..=2d+1`) into singularities.
    pub vertex_cycles: Vec<Vec<usize>>,
}

impl StratumData {
    /// Singularity label of every slot.
    pub fn slot_labels(&self) -> Vec<usize> {
        let n: usize = self.vertex_cycles.iter().map(Vec::len).sum();
        let mut out = vec![0; n];
        for (c, slots) in self.vertex_cycles.iter().enumerate() {
            for &s in slots {
                out[s] = c;
            }
        }
        out
    }

    pub fn cone_angles_over_two_pi(&self) -> Vec<u32> {
        self.orders.iter().map(|r| r + 1).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum VertexKind {
    /// `P_i`
    Upper(usize),
    /// `P'_i`
    Lower(usize),
}

/// Combinatorics of the suspension polygon.
///
/// The polygon has `2d` vertices in counterclockwise order:
/// `P_0 = P'_0, P'_1, …, P'_{d−1}, P_d = P'_d, P_{d−1}, …, P_1`.
/// Edge `k` joins vertex `k` to vertex `k + 1`; edges `0..d` are the bottom
/// edges `B_1..B_d` and edges `d..2d` are the top edges `T_d..T_1`. Top edge
/// `T_i` is glued to bottom edge `B_{sigma(i)}`.
#[derive(Clone, Debug)]
pub(crate) struct PolygonLayout {
    d: usize,
    perm: Permutation,
}

impl PolygonLayout {
    pub(crate) fn new(perm: &Permutation) -> Self {
        Self {
            d: perm.d(),
            perm: perm.clone(),
        }
    }

    pub(crate) fn n_vertices(&self) -> usize {
        2 * self.d
    }

    pub(crate) fn vertex_kind(&self, v: usize) -> VertexKind {
        let d = self.d;
        if v <= d {
            if v == 0 || v == d {
                VertexKind::Upper(v)
            } else {
                VertexKind::Lower(v)
            }
        } else {
            VertexKind::Upper(2 * d - v)
        }
    }

    pub(crate) fn slots_of_vertex(&self, v: usize) -> Vec<usize> {
        let d = self.d;
        match self.vertex_kind(v) {
            VertexKind::Upper(0) => vec![0, d + 1],
            VertexKind::Upper(i) if i == d => vec![d, 2 * d + 1],
            VertexKind::Upper(i) => vec![i],
            VertexKind::Lower(i) => vec![d + 1 + i],
        }
    }

    /// Integer combination of the edge holonomies giving the vertex position.
    pub(crate) fn vertex_coeffs(&self, v: usize) -> Vec<i64> {
        let d = self.d;
        match self.vertex_kind(v) {
            VertexKind::Upper(i) => (1..=d).map(|j| i64::from(j <= i)).collect(),
            VertexKind::Lower(i) => (1..=d).map(|j| i64::from(self.perm.sigma(j) <= i)).collect(),
        }
    }

    pub(crate) fn partner(&self, e: usize) -> usize {
        let d = self.d;
        if e < d {
            2 * d - self.perm.sigma_inv(e + 1)
        } else {
            self.perm.sigma(2 * d - e) - 1
        }
    }

    /// Next corner counterclockwise around the same cone point.
    pub(crate) fn next_corner(&self, v: usize) -> usize {
        let n = self.n_vertices();
        self.partner((v + n - 1) % n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[usize]) -> Permutation {
        Permutation::new(v.to_vec()).unwrap()
    }

    #[test]
    fn irreducibility_examples() {
        assert!(p(&[2, 1]).is_irreducible());
        assert!(!p(&[1, 2]).is_irreducible());
        assert!(p(&[3, 1, 2]).is_irreducible());
        assert!(!p(&[2, 1, 3]).is_irreducible());
        assert!(p(&[4, 3, 2, 1]).is_irreducible());
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Permutation::new(vec![1, 1]).is_err());
        assert!(Permutation::new(vec![1]).is_err());
        assert!(Permutation::new(vec![0, 1]).is_err());
        assert!(Permutation::new(vec![1, 3]).is_err());
    }

    #[test]
    fn stratum_examples() {
        let s = p(&[4, 3, 2, 1]).singularity_data().unwrap();
        assert_eq!((s.k, s.orders.clone(), s.genus), (1, vec![2], 2));
        let s = p(&[5, 4, 3, 2, 1]).singularity_data().unwrap();
        assert_eq!((s.k, s.orders.clone(), s.genus), (2, vec![1, 1], 2));
        let s = p(&[2, 1]).singularity_data().unwrap();
        assert_eq!((s.k, s.orders.clone(), s.genus), (1, vec![0], 1));
        let s = p(&[3, 1, 2]).singularity_data().unwrap();
        assert_eq!((s.k, s.orders.clone(), s.genus), (2, vec![0, 0], 1));
    }

    #[test]
    fn reducible_has_no_stratum() {
        assert!(matches!(
            p(&[1, 2]).singularity_data(),
            Err(Error::NotIrreducible(_))
        ));
        assert!(p(&[2, 1, 3]).is_admissible().is_err());
    }

    #[test]
    fn admissibility_examples() {
        assert!(p(&[4, 3, 2, 1]).is_admissible().unwrap());
        assert!(!p(&[2, 1]).is_admissible().unwrap());
        assert!(!p(&[3, 1, 2]).is_admissible().unwrap());
    }

    #[test]
    fn slots_cover_all_vertices() {
        let s = p(&[5, 4, 3, 2, 1]).singularity_data().unwrap();
        let mut all: Vec<usize> = s.vertex_cycles.concat();
        all.sort();
        assert_eq!(all, (0..12).collect::<Vec<_>>());
        // P_0 and P'_0 are the same point
        let labels = s.slot_labels();
        assert_eq!(labels[0], labels[6]);
        assert_eq!(labels[5], labels[11]);
    }

    #[test]
    fn partition_does_not_depend_on_heights() {
        for q in Permutation::all_irreducible(5) {
            let b0 = q.canonical_heights();
            let a = vec![3, 1, 4, 1, 5];
            let b1: Vec<i64> = b0.iter().map(|b| 7 * b).collect();
            let first = q.singularity_data().unwrap();
            let second = q.singularity_data_with(&a, &b1).unwrap();
            assert_eq!(first, second, "sigma = {q}");
        }
    }

    #[test]
    fn enumerates_all_permutations() {
        assert_eq!(Permutation::all(4).count(), 24);
        // irreducible permutations: 1, 3, 13, 71, 461 for d = 2..6
        let counts: Vec<usize> = (2..=6)
            .map(|d| Permutation::all_irreducible(d).count())
            .collect();
        assert_eq!(counts, vec![1, 3, 13, 71, 461]);
    }

    #[test]
    fn gluing_is_an_involution() {
        let q = p(&[4, 1, 3, 2]);
        let layout = PolygonLayout::new(&q);
        for e in 0..layout.n_vertices() {
            assert_eq!(layout.partner(layout.partner(e)), e);
            assert_ne!(layout.partner(e), e);
        }
    }
}
