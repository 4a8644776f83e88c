//! Global residues in affine space through dense resultants.

use num_traits::Zero;

use super::chowform::monomials_up_to;
use super::{TraceMethod, TraceResult};
use crate::error::{Error, Result};
use crate::oracle::{affine_algebra, trace_oracle};
use crate::poly::{jacobian, ExponentVector, Polynomial, Rational};
use crate::resultants::{degrees_of, leading_form_resultant, macaulay_pencil, rho};

fn check_dense(f: &[Polynomial]) -> Result<usize> {
    let n = f.first().map(|g| g.arity()).ok_or_else(|| Error::Invalid("empty system".into()))?;
    if f.len() != n || f.iter().any(|g| g.arity() != n) {
        return Err(Error::DimensionMismatch("a square system is required".into()));
    }
    if f.iter().any(|g| g.is_laurent()) {
        return Err(Error::Invalid("dense systems must be polynomial".into()));
    }
    if leading_form_resultant(f)?.is_zero() {
        return Err(Error::Degenerate("leading forms have a common root at infinity".into()));
    }
    Ok(n)
}

/// `Residue_f(x^beta) = X'(0) / X(0)` with `X(T) = Res_{D, d}(J_f + T x^beta, f)`, `D = max(|beta|, rho)`.
pub fn dense_residue(beta: &[i64], f: &[Polynomial]) -> Result<TraceResult> {
    let n = check_dense(f)?;
    if beta.len() != n || beta.iter().any(|&b| b < 0) {
        return Err(Error::Invalid("beta must be a nonnegative exponent vector of the right length".into()));
    }
    let degrees = degrees_of(f)?;
    let big_d = rho(f)?.max(beta.iter().sum());
    let j = jacobian(f)?;
    let xb = Polynomial::monomial(n, ExponentVector(beta.to_vec()), Rational::from_integer(1.into()));
    let x = macaulay_pencil(big_d, &j, &xb, f, &degrees)?;
    let denominator = x.coeff(0);
    if denominator.is_zero() {
        return Err(Error::ZeroDivisor("the Jacobian vanishes at a root".into()));
    }
    let numerator = x.coeff(1);
    Ok(TraceResult {
        value: &numerator / &denominator,
        numerator,
        denominator,
        method: TraceMethod::DenseResultant,
        lattice: None,
        matrix_size: None,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidueCheck {
    pub beta: Vec<i64>,
    pub oracle: Rational,
    pub formula: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EulerJacobiReport {
    pub rho: i64,
    pub dimension: usize,
    /// Monomials of degree below `rho`.
    pub below: Vec<ResidueCheck>,
    /// Monomials of degree exactly `rho` (informational).
    pub at_rho: Vec<ResidueCheck>,
    pub all_below_rho_zero: bool,
    pub formula_agrees: bool,
}

/// Residues of all monomials of degree at most `rho`, by the oracle and by `dense_residue`.
pub fn euler_jacobi_check(f: &[Polynomial]) -> Result<EulerJacobiReport> {
    let n = check_dense(f)?;
    let r = rho(f)?;
    let alg = affine_algebra(f)?;
    let j = jacobian(f)?;
    let mut below = Vec::new();
    let mut at_rho = Vec::new();
    for beta in monomials_up_to(n, r) {
        let xb = Polynomial::monomial(n, beta.clone(), Rational::from_integer(1.into()));
        let oracle = trace_oracle(&xb, &j, &alg)?;
        let formula = dense_residue(&beta.0, f)?.value;
        let check = ResidueCheck { beta: beta.0.clone(), oracle, formula };
        if beta.degree() < r {
            below.push(check);
        } else {
            at_rho.push(check);
        }
    }
    let all_below_rho_zero = below.iter().all(|c| c.oracle.is_zero());
    let formula_agrees = below.iter().chain(&at_rho).all(|c| c.oracle == c.formula);
    Ok(EulerJacobiReport { rho: r, dimension: alg.dimension(), below, at_rho, all_below_rho_zero, formula_agrees })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_polynomial, rat};

    fn parse(s: &str, v: &[&str]) -> Polynomial {
        parse_polynomial(s, &v.iter().map(|x| x.to_string()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn univariate_residues() {
        let f = [parse("x^2 - 1", &["x"])];
        assert_eq!(dense_residue(&[0], &f).unwrap().value, rat(0));
        // 1/2 + 1/2
        assert_eq!(dense_residue(&[1], &f).unwrap().value, rat(1));
        assert_eq!(dense_residue(&[3], &f).unwrap().value, rat(1));
        let rep = euler_jacobi_check(&f).unwrap();
        assert_eq!(rep.rho, 1);
        assert!(rep.all_below_rho_zero);
        assert!(rep.formula_agrees);
    }

    #[test]
    fn plane_conics() {
        let v = ["x", "y"];
        let f = [parse("x^2 + 3*x*y - y^2 + x - 2", &v), parse("2*x^2 - x*y + y^2 - 3*y + 1", &v)];
        let rep = euler_jacobi_check(&f).unwrap();
        assert_eq!(rep.rho, 2);
        assert_eq!(rep.dimension, 4);
        assert_eq!(rep.below.len(), 3);
        assert!(rep.all_below_rho_zero);
        assert!(rep.formula_agrees);
        assert!(rep.at_rho.iter().any(|c| !c.oracle.is_zero()));
    }

    #[test]
    fn roots_at_infinity_are_rejected() {
        let v = ["x", "y"];
        let f = [parse("x^2 - 1", &v), parse("x + 3", &v)];
        assert!(matches!(dense_residue(&[0, 0], &f), Err(Error::Degenerate(_))));
    }
}
