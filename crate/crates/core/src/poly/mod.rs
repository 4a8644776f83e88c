//! Sparse multivariate Laurent polynomials over the rationals.

mod parse;
mod univariate;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub use parse::{parse_polynomial, parse_rational};
pub use univariate::{TPencilPolynomial, UnivariatePolynomial};

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Formats a rational as `num/den`, the wire format used by the CLI.
pub fn rational_to_string(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Integer exponent vector; ordered by total degree, then lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExponentVector(pub Vec<i64>);

impl ExponentVector {
    pub fn zero(k: usize) -> Self {
        ExponentVector(vec![0; k])
    }

    pub fn unit(k: usize, i: usize) -> Self {
        let mut e = vec![0; k];
        e[i] = 1;
        ExponentVector(e)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn dot(&self, w: &[i64]) -> i64 {
        self.0.iter().zip(w).map(|(a, b)| a * b).sum()
    }

    pub fn add(&self, other: &ExponentVector) -> ExponentVector {
        ExponentVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &ExponentVector) -> ExponentVector {
        ExponentVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }
}

impl From<Vec<i64>> for ExponentVector {
    fn from(v: Vec<i64>) -> Self {
        ExponentVector(v)
    }
}

impl From<&[i64]> for ExponentVector {
    fn from(v: &[i64]) -> Self {
        ExponentVector(v.to_vec())
    }
}

impl Ord for ExponentVector {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for ExponentVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A finite set of exponent vectors, kept sorted and deduplicated.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Support {
    dim: usize,
    points: Vec<Vec<i64>>,
}

impl Support {
    pub fn new(dim: usize, mut points: Vec<Vec<i64>>) -> Self {
        debug_assert!(points.iter().all(|p| p.len() == dim));
        points.sort();
        points.dedup();
        Support { dim, points }
    }

    pub fn empty(dim: usize) -> Self {
        Support { dim, points: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn points(&self) -> &[Vec<i64>] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, p: &[i64]) -> bool {
        self.points.binary_search_by(|q| q.as_slice().cmp(p)).is_ok()
    }

    pub fn union(&self, other: &Support) -> Support {
        let mut pts = self.points.clone();
        pts.extend(other.points.iter().cloned());
        Support::new(self.dim, pts)
    }

    pub fn translate(&self, by: &[i64]) -> Support {
        Support::new(
            self.dim,
            self.points
                .iter()
                .map(|p| p.iter().zip(by).map(|(a, b)| a + b).collect())
                .collect(),
        )
    }

    pub fn is_subset(&self, other: &Support) -> bool {
        self.points.iter().all(|p| other.contains(p))
    }
}

/// Sparse Laurent polynomial with exact rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    arity: usize,
    terms: BTreeMap<ExponentVector, Rational>,
}

impl Polynomial {
    pub fn zero(arity: usize) -> Self {
        Polynomial { arity, terms: BTreeMap::new() }
    }

    pub fn constant(arity: usize, c: Rational) -> Self {
        Self::monomial(arity, ExponentVector::zero(arity), c)
    }

    pub fn one(arity: usize) -> Self {
        Self::constant(arity, Rational::one())
    }

    pub fn monomial(arity: usize, exp: ExponentVector, c: Rational) -> Self {
        assert_eq!(exp.len(), arity, "exponent length must match arity");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        Polynomial { arity, terms }
    }

    /// The variable `t_i` as a polynomial.
    pub fn variable(arity: usize, i: usize) -> Self {
        Self::monomial(arity, ExponentVector::unit(arity, i), Rational::one())
    }

    pub fn from_terms<I>(arity: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (ExponentVector, Rational)>,
    {
        let mut p = Polynomial::zero(arity);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, exp: ExponentVector, c: Rational) {
        assert_eq!(exp.len(), self.arity, "exponent length must match arity");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&ExponentVector, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exp: &[i64]) -> Rational {
        self.terms
            .get(&ExponentVector(exp.to_vec()))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn support(&self) -> Support {
        Support::new(self.arity, self.terms.keys().map(|e| e.0.clone()).collect())
    }

    /// Total degree (maximum of the exponent sums); `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<i64> {
        self.terms.keys().map(|e| e.degree()).max()
    }

    pub fn is_laurent(&self) -> bool {
        self.terms.keys().any(|e| e.0.iter().any(|&a| a < 0))
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.arity);
        }
        Polynomial {
            arity: self.arity,
            terms: self.terms.iter().map(|(e, a)| (e.clone(), a * c)).collect(),
        }
    }

    /// Multiplies by the monomial `t^shift`.
    pub fn shift(&self, by: &[i64]) -> Polynomial {
        Polynomial {
            arity: self.arity,
            terms: self
                .terms
                .iter()
                .map(|(e, a)| (ExponentVector(e.0.iter().zip(by).map(|(x, y)| x + y).collect()), a.clone()))
                .collect(),
        }
    }

    pub fn partial_derivative(&self, i: usize) -> Polynomial {
        let mut out = Polynomial::zero(self.arity);
        for (e, c) in &self.terms {
            let a = e.0[i];
            if a == 0 {
                continue;
            }
            let mut d = e.clone();
            d.0[i] -= 1;
            out.add_term(d, c * rat(a));
        }
        out
    }

    pub fn evaluate(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.arity {
            return Err(Error::DimensionMismatch(format!(
                "point has length {} but polynomial has arity {}",
                point.len(),
                self.arity
            )));
        }
        let mut total = Rational::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (x, &a) in point.iter().zip(&e.0) {
                if a < 0 && x.is_zero() {
                    return Err(Error::DivisionByZero(
                        "negative power of a zero coordinate".into(),
                    ));
                }
                term *= pow_rational(x, a);
            }
            total += term;
        }
        Ok(total)
    }

    /// Keeps only the terms whose exponents lie in `keep`.
    pub fn restrict(&self, keep: &Support) -> Polynomial {
        Polynomial {
            arity: self.arity,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| keep.contains(&e.0))
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// The face polynomial: terms minimizing `<w, a>`.
    pub fn initial_form(&self, w: &[i64]) -> Polynomial {
        let min = match self.terms.keys().map(|e| e.dot(w)).min() {
            Some(m) => m,
            None => return self.clone(),
        };
        Polynomial {
            arity: self.arity,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.dot(w) == min)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// Homogeneous part of total degree `d`.
    pub fn homogeneous_part(&self, d: i64) -> Polynomial {
        Polynomial {
            arity: self.arity,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.degree() == d)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// Rewrites exponents through `f`, summing colliding terms.
    pub fn map_exponents<F>(&self, arity: usize, mut f: F) -> Polynomial
    where
        F: FnMut(&[i64]) -> Vec<i64>,
    {
        Polynomial::from_terms(
            arity,
            self.terms.iter().map(|(e, c)| (ExponentVector(f(&e.0)), c.clone())),
        )
    }

    pub fn pow(&self, n: u32) -> Polynomial {
        let mut acc = Polynomial::one(self.arity);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    pub fn to_string_with(&self, vars: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (e, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            if idx == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let mono: Vec<String> = e
                .0
                .iter()
                .enumerate()
                .filter(|(_, &a)| a != 0)
                .map(|(i, &a)| {
                    let name = vars.get(i).cloned().unwrap_or_else(|| format!("t{}", i + 1));
                    if a == 1 {
                        name
                    } else {
                        format!("{name}^{a}")
                    }
                })
                .collect();
            if mono.is_empty() {
                out.push_str(&abs.to_string());
            } else if abs.is_one() {
                out.push_str(&mono.join("*"));
            } else {
                out.push_str(&format!("{}*{}", abs, mono.join("*")));
            }
        }
        out
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vars: Vec<String> = (1..=self.arity).map(|i| format!("t{i}")).collect();
        f.write_str(&self.to_string_with(&vars))
    }
}

pub fn pow_rational(x: &Rational, a: i64) -> Rational {
    if a >= 0 {
        num_traits::pow::pow(x.clone(), a as usize)
    } else {
        num_traits::pow::pow(x.recip(), (-a) as usize)
    }
}

impl<'a> Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &'a Polynomial) -> Polynomial {
        assert_eq!(self.arity, rhs.arity, "arity mismatch");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &'a Polynomial) -> Polynomial {
        assert_eq!(self.arity, rhs.arity, "arity mismatch");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }
}

impl<'a> Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &'a Polynomial) -> Polynomial {
        assert_eq!(self.arity, rhs.arity, "arity mismatch");
        let mut out = Polynomial::zero(self.arity);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(e1.add(e2), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-Rational::one())
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: Polynomial) -> Polynomial {
        &self + &rhs
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Polynomial) -> Polynomial {
        &self - &rhs
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

/// The linear family `q + T p`, evaluable at rational `T`.
#[derive(Clone, Debug)]
pub struct Pencil {
    pub base: Polynomial,
    pub direction: Polynomial,
}

impl Pencil {
    pub fn at(&self, t: &Rational) -> Polynomial {
        &self.base + &self.direction.scale(t)
    }
}

pub fn pencil(q: &Polynomial, p: &Polynomial) -> Result<Pencil> {
    if q.arity() != p.arity() {
        return Err(Error::DimensionMismatch("pencil members differ in arity".into()));
    }
    Ok(Pencil { base: q.clone(), direction: p.clone() })
}

fn polynomial_det(m: &[Vec<Polynomial>], arity: usize) -> Polynomial {
    let n = m.len();
    match n {
        0 => Polynomial::one(arity),
        1 => m[0][0].clone(),
        2 => &(&m[0][0] * &m[1][1]) - &(&m[0][1] * &m[1][0]),
        _ => {
            let mut acc = Polynomial::zero(arity);
            for j in 0..n {
                if m[0][j].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<Polynomial>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|(c, _)| *c != j)
                            .map(|(_, x)| x.clone())
                            .collect()
                    })
                    .collect();
                let term = &m[0][j] * &polynomial_det(&minor, arity);
                acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
            }
            acc
        }
    }
}

fn check_square(f: &[Polynomial]) -> Result<usize> {
    let n = f.len();
    if n == 0 || f.iter().any(|p| p.arity() != n) {
        return Err(Error::DimensionMismatch(format!(
            "expected a square system, got {} polynomials",
            n
        )));
    }
    Ok(n)
}

/// Jacobian determinant `det(d f_i / d x_j)`.
pub fn jacobian(f: &[Polynomial]) -> Result<Polynomial> {
    let n = check_square(f)?;
    let m: Vec<Vec<Polynomial>> = f
        .iter()
        .map(|fi| (0..n).map(|j| fi.partial_derivative(j)).collect())
        .collect();
    Ok(polynomial_det(&m, n))
}

/// Toric Jacobian `det(t_j d f_i / d t_j)`.
pub fn toric_jacobian(f: &[Polynomial]) -> Result<Polynomial> {
    let n = check_square(f)?;
    let m: Vec<Vec<Polynomial>> = f
        .iter()
        .map(|fi| {
            (0..n)
                .map(|j| fi.partial_derivative(j).shift(&ExponentVector::unit(n, j).0))
                .collect()
        })
        .collect();
    Ok(polynomial_det(&m, n))
}
