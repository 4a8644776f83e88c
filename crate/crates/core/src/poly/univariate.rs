use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{rat, Rational};
use crate::error::{Error, Result};

/// Dense univariate polynomial with rational coefficients, index = power.
///
/// Used for resultant pencils `X(T) = Res(q + T p, f_1, ..., f_k)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnivariatePolynomial {
    coeffs: Vec<Rational>,
}

pub type TPencilPolynomial = UnivariatePolynomial;

impl UnivariatePolynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        UnivariatePolynomial { coeffs }
    }

    pub fn zero() -> Self {
        UnivariatePolynomial { coeffs: Vec::new() }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, t: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * t + c;
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        UnivariatePolynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * rat(i as i64))
                .collect(),
        )
    }

    pub fn scale(&self, c: &Rational) -> Self {
        UnivariatePolynomial::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UnivariatePolynomial::new(out)
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = UnivariatePolynomial::new(vec![Rational::one()]);
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Newton interpolation through `(nodes[i], values[i])`.
    pub fn interpolate(nodes: &[Rational], values: &[Rational]) -> Result<Self> {
        if nodes.len() != values.len() {
            return Err(Error::DimensionMismatch("nodes and values differ in length".into()));
        }
        let n = nodes.len();
        let mut dd: Vec<Rational> = values.to_vec();
        for level in 1..n {
            for i in (level..n).rev() {
                let den = &nodes[i] - &nodes[i - level];
                if den.is_zero() {
                    return Err(Error::Invalid("repeated interpolation node".into()));
                }
                dd[i] = (&dd[i] - &dd[i - 1]) / den;
            }
        }
        let mut acc = UnivariatePolynomial::zero();
        for i in (0..n).rev() {
            // acc = acc * (T - nodes[i]) + dd[i]
            let shifted = acc.mul(&UnivariatePolynomial::new(vec![-nodes[i].clone(), Rational::one()]));
            let mut c = shifted.coeffs;
            if c.is_empty() {
                c.push(Rational::zero());
            }
            c[0] += &dd[i];
            acc = UnivariatePolynomial::new(c);
        }
        Ok(acc)
    }

    /// `X'(0) / X(0)`; invariant under scaling by nonzero constants.
    pub fn log_derivative_at_zero(&self) -> Result<Rational> {
        let c0 = self.coeff(0);
        if c0.is_zero() {
            return Err(Error::Degenerate("pencil vanishes at T = 0".into()));
        }
        Ok(self.coeff(1) / c0)
    }

    /// The polynomial `Y` with `Y(0) = 1` and `Y^n = self / self(0)`, when it exists.
    pub fn normalized_root(&self, n: u32) -> Option<Self> {
        let c0 = self.coeff(0);
        if c0.is_zero() || n == 0 {
            return None;
        }
        let deg = self.degree()?;
        if deg % n as usize != 0 {
            return None;
        }
        let m = deg / n as usize;
        let a: Vec<Rational> = self.coeffs.iter().map(|c| c / &c0).collect();
        // power-series root: n * Y' * A = Y * A'
        let nn = rat(n as i64);
        let mut y = vec![Rational::zero(); m + 1];
        y[0] = Rational::one();
        for j in 1..=m {
            // coefficient of T^{j-1} in n Y' A - Y A' = 0
            let mut s = Rational::zero();
            for i in 1..j {
                let ai = a.get(j - i).cloned().unwrap_or_else(Rational::zero);
                s += &y[i] * rat(i as i64) * &nn * &ai;
                s -= &y[i] * ai * rat((j - i) as i64);
            }
            let aj = a.get(j).cloned().unwrap_or_else(Rational::zero);
            s -= aj * rat(j as i64);
            y[j] = -s / (&nn * rat(j as i64));
        }
        let root = UnivariatePolynomial::new(y);
        let monic_self = UnivariatePolynomial::new(a);
        if root.pow(n) == monic_self {
            Some(root)
        } else {
            None
        }
    }
}

impl fmt::Display for UnivariatePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("{c}"),
                1 => format!("({c})*T"),
                _ => format!("({c})*T^{i}"),
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

impl From<Vec<BigRational>> for UnivariatePolynomial {
    fn from(v: Vec<BigRational>) -> Self {
        UnivariatePolynomial::new(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::ratio;

    fn up(v: &[i64]) -> UnivariatePolynomial {
        UnivariatePolynomial::new(v.iter().map(|&x| rat(x)).collect())
    }

    #[test]
    fn log_derivative_examples() {
        assert_eq!(up(&[3, 6, 1]).log_derivative_at_zero().unwrap(), rat(2));
        assert_eq!(up(&[5]).log_derivative_at_zero().unwrap(), rat(0));
        assert_eq!(up(&[-7, -14]).log_derivative_at_zero().unwrap(), rat(2));
        assert!(up(&[0, 1]).log_derivative_at_zero().is_err());
    }

    #[test]
    fn interpolation_recovers_polynomial() {
        let p = up(&[3, -1, 0, 2]);
        let nodes: Vec<Rational> = [0, 1, -1, 2].iter().map(|&x| rat(x)).collect();
        let vals: Vec<Rational> = nodes.iter().map(|t| p.eval(t)).collect();
        assert_eq!(UnivariatePolynomial::interpolate(&nodes, &vals).unwrap(), p);
    }

    #[test]
    fn normalized_root() {
        let base = UnivariatePolynomial::new(vec![rat(1), ratio(3, 2), rat(-2)]);
        let p = base.pow(4).scale(&rat(-9));
        assert_eq!(p.normalized_root(4).unwrap(), base);
        assert!(up(&[1, 1, 1]).normalized_root(2).is_none());
    }
}
