//! Exact integer linear algebra: rank and primitive kernel bases.
//!
//! Elimination is fraction-free: rows are combined with integer multipliers
//! and divided by their content after every step, so entries stay small.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

fn to_big(m: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
    m.iter()
        .map(|row| row.iter().map(|&v| BigInt::from(v)).collect())
        .collect()
}

fn make_primitive(row: &mut [BigInt]) {
    let g = row
        .iter()
        .fold(BigInt::zero(), |acc, v| acc.gcd(v));
    if !g.is_zero() && !g.is_one() {
        for v in row.iter_mut() {
            *v = &*v / &g;
        }
    }
}

/// Row echelon form; returns the reduced rows and the pivot column of each.
fn echelon(m: &[Vec<i64>], cols: usize) -> (Vec<Vec<BigInt>>, Vec<usize>) {
    let mut rows = to_big(m);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        for i in 0..rows.len() {
            if i == r || rows[i][c].is_zero() {
                continue;
            }
            let pivot = rows[r][c].clone();
            let factor = rows[i][c].clone();
            for k in 0..cols {
                let v = &rows[i][k] * &pivot - &rows[r][k] * &factor;
                rows[i][k] = v;
            }
            make_primitive(&mut rows[i]);
        }
        make_primitive(&mut rows[r]);
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    (rows, pivots)
}

pub fn rank(m: &[Vec<i64>]) -> usize {
    let cols = m.first().map_or(0, Vec::len);
    echelon(m, cols).1.len()
}

/// Basis of `{v : M v = 0}` made of primitive integer vectors, one per free
/// column, each with a positive first nonzero entry.
pub fn kernel(m: &[Vec<i64>], cols: usize) -> Vec<Vec<i64>> {
    let (rows, pivots) = echelon(m, cols);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    let mut out = Vec::with_capacity(free.len());
    for &f in &free {
        // rows are fully reduced: row r has a nonzero only at pivot r among pivot columns
        let lcm = rows
            .iter()
            .zip(&pivots)
            .fold(BigInt::one(), |acc, (row, &pc)| acc.lcm(&row[pc]));
        let mut v = vec![BigInt::zero(); cols];
        v[f] = lcm.clone();
        for (row, &pc) in rows.iter().zip(&pivots) {
            // row[pc]·v[pc] + row[f]·v[f] = 0
            v[pc] = -(&row[f] * &lcm) / &row[pc];
        }
        make_primitive(&mut v);
        if v.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
            for x in v.iter_mut() {
                *x = -&*x;
            }
        }
        out.push(
            v.iter()
                .map(|x| x.to_i64().expect("kernel entry fits in i64"))
                .collect(),
        );
    }
    out
}

pub fn mat_vec(m: &[Vec<i64>], v: &[i64]) -> Vec<i64> {
    m.iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}

pub fn dot(u: &[i64], v: &[i64]) -> i64 {
    u.iter().zip(v).map(|(a, b)| a * b).sum()
}
