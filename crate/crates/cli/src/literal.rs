//! Numeric literals and backend selection.

use iet_core::scalar::parse_rational;
use iet_core::{QSqrt5, Rational, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub enum Lit {
    Rational(Rational),
    /// `±φ`
    Phi(bool),
    Float(f64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Backend {
    Exact,
    Golden,
    Float,
}

#[derive(Debug)]
pub struct ParseError(pub String);

pub fn parse_lit(s: &str) -> Result<Lit, ParseError> {
    let t = s.trim();
    match t {
        "phi" => return Ok(Lit::Phi(false)),
        "-phi" => return Ok(Lit::Phi(true)),
        _ => {}
    }
    if let Some(r) = parse_rational(t) {
        return Ok(Lit::Rational(r));
    }
    match t.parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(Lit::Float(v)),
        _ => Err(ParseError(format!("cannot parse number `{s}`"))),
    }
}

pub fn parse_list(s: &str) -> Result<Vec<Lit>, ParseError> {
    s.split(',').map(parse_lit).collect()
}

pub fn parse_usize_list(s: &str) -> Result<Vec<usize>, ParseError> {
    s.split(',')
        .map(|v| {
            v.trim()
                .parse::<usize>()
                .map_err(|_| ParseError(format!("cannot parse index `{v}`")))
        })
        .collect()
}

pub fn parse_window(s: &str) -> Result<(f64, f64), ParseError> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 2 {
        return Err(ParseError(format!("window `{s}` must be LO,HI")));
    }
    let num = |v: &str| match parse_lit(v)? {
        Lit::Rational(r) => Ok(Scalar::to_f64(&r)),
        Lit::Float(f) => Ok(f),
        Lit::Phi(_) => Err(ParseError("window bounds must be numbers".into())),
    };
    Ok((num(parts[0])?, num(parts[1])?))
}

/// The backend required by a set of literals: any float selects binary64,
/// otherwise any `phi` selects `ℚ(√5)`, otherwise exact rationals.
pub fn backend_for<'a>(lits: impl IntoIterator<Item = &'a Lit>, exact_only: bool) -> Result<Backend, ParseError> {
    let mut backend = Backend::Exact;
    for l in lits {
        match l {
            Lit::Float(v) => {
                if exact_only {
                    return Err(ParseError(format!(
                        "float literal {v} rejected by --exact"
                    )));
                }
                backend = Backend::Float;
            }
            Lit::Phi(_) if backend == Backend::Exact => backend = Backend::Golden,
            _ => {}
        }
    }
    Ok(backend)
}

pub trait FromLit: Scalar {
    fn from_lit(l: &Lit) -> Self;
}

impl FromLit for Rational {
    fn from_lit(l: &Lit) -> Self {
        match l {
            Lit::Rational(r) => r.clone(),
            _ => unreachable!("backend selection keeps exact input exact"),
        }
    }
}

impl FromLit for QSqrt5 {
    fn from_lit(l: &Lit) -> Self {
        match l {
            Lit::Rational(r) => QSqrt5::from_rational(r.clone()),
            Lit::Phi(false) => QSqrt5::phi(),
            Lit::Phi(true) => -QSqrt5::phi(),
            Lit::Float(_) => unreachable!("backend selection keeps exact input exact"),
        }
    }
}

impl FromLit for f64 {
    fn from_lit(l: &Lit) -> Self {
        match l {
            Lit::Rational(r) => Scalar::to_f64(r),
            Lit::Phi(neg) => {
                let p = (1.0 + 5f64.sqrt()) / 2.0;
                if *neg {
                    -p
                } else {
                    p
                }
            }
            Lit::Float(v) => *v,
        }
    }
}

pub fn convert<S: FromLit>(v: &[Lit]) -> Vec<S> {
    v.iter().map(S::from_lit).collect()
}
