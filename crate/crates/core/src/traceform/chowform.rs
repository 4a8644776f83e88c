//! Generalized Chow forms of zero-dimensional ideals with known zeros.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::{TraceMethod, TraceResult};
use crate::error::{Error, Result};
use crate::poly::{ExponentVector, Polynomial, Rational};

/// `prod_xi U(xi)^{m(xi)}` with `U = sum_{|alpha| <= d} U_alpha x^alpha`.
///
/// Stored as an ordinary polynomial whose `j`-th variable is `U_{alpha_j}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChowForm {
    pub degree_bound: i64,
    pub arity: usize,
    /// `alpha_j` for each `U`-variable, in graded order.
    pub indices: Vec<ExponentVector>,
    pub form: Polynomial,
}

/// Exponents of total degree at most `d` in `n` variables, by degree then lexicographically.
pub fn monomials_up_to(n: usize, d: i64) -> Vec<ExponentVector> {
    let mut out = Vec::new();
    for deg in 0..=d {
        let mut cur = vec![0i64; n];
        fill(&mut cur, 0, deg, &mut out);
    }
    out
}

fn fill(cur: &mut Vec<i64>, i: usize, left: i64, out: &mut Vec<ExponentVector>) {
    let n = cur.len();
    if n == 0 {
        if left == 0 {
            out.push(ExponentVector(Vec::new()));
        }
        return;
    }
    if i == n - 1 {
        cur[i] = left;
        out.push(ExponentVector(cur.clone()));
        return;
    }
    for a in (0..=left).rev() {
        cur[i] = a;
        fill(cur, i + 1, left - a, out);
    }
    cur[i] = 0;
}

impl ChowForm {
    pub fn num_u_variables(&self) -> usize {
        self.indices.len()
    }

    fn position(&self) -> BTreeMap<&ExponentVector, usize> {
        self.indices.iter().enumerate().map(|(j, a)| (a, j)).collect()
    }

    /// Coefficient vector of `g` in the `U`-variables; `g` must have degree at most `d`.
    pub fn coefficients_of(&self, g: &Polynomial) -> Result<Vec<Rational>> {
        if g.arity() != self.arity {
            return Err(Error::DimensionMismatch("polynomial arity differs from the Chow form".into()));
        }
        let pos = self.position();
        let mut out = vec![Rational::zero(); self.indices.len()];
        for (e, c) in g.terms() {
            let j = pos
                .get(e)
                .ok_or_else(|| Error::Invalid(format!("monomial {:?} exceeds the degree bound {}", e.0, self.degree_bound)))?;
            out[*j] = c.clone();
        }
        Ok(out)
    }

    /// `Ch` evaluated at the coefficients of `g`.
    pub fn evaluate_at(&self, g: &Polynomial) -> Result<Rational> {
        self.form.evaluate(&self.coefficients_of(g)?)
    }
}

pub fn chowform_from_roots(roots: &[(Vec<Rational>, u32)], d: i64) -> Result<ChowForm> {
    if d < 1 {
        return Err(Error::Invalid("degree bound must be at least 1".into()));
    }
    let n = roots.first().map(|r| r.0.len()).ok_or_else(|| Error::Invalid("no roots".into()))?;
    if roots.iter().any(|r| r.0.len() != n) {
        return Err(Error::DimensionMismatch("roots of different lengths".into()));
    }
    if roots.iter().any(|r| r.1 == 0) {
        return Err(Error::Invalid("multiplicities must be positive".into()));
    }
    let indices = monomials_up_to(n, d);
    let nu = indices.len();
    let mut form = Polynomial::one(nu);
    for (xi, m) in roots {
        let mut lin = Polynomial::zero(nu);
        for (j, alpha) in indices.iter().enumerate() {
            let mut v = Rational::one();
            for (x, &a) in xi.iter().zip(&alpha.0) {
                v *= crate::poly::pow_rational(x, a);
            }
            lin.add_term(ExponentVector::unit(nu, j), v);
        }
        form = &form * &lin.pow(*m);
    }
    Ok(ChowForm { degree_bound: d, arity: n, indices, form })
}

/// `sum_alpha p_alpha dCh/dU_alpha (q) / Ch(q)`.
pub fn trace_from_chowform(ch: &ChowForm, p: &Polynomial, q: &Polynomial) -> Result<TraceResult> {
    let uq = ch.coefficients_of(q)?;
    let up = ch.coefficients_of(p)?;
    let denominator = ch.form.evaluate(&uq)?;
    if denominator.is_zero() {
        return Err(Error::ZeroDivisor("Ch(q) = 0: q vanishes at a zero of the ideal".into()));
    }
    let mut numerator = Rational::zero();
    for (j, pa) in up.iter().enumerate() {
        if pa.is_zero() {
            continue;
        }
        numerator += pa * ch.form.partial_derivative(j).evaluate(&uq)?;
    }
    Ok(TraceResult {
        value: &numerator / &denominator,
        numerator,
        denominator,
        method: TraceMethod::ChowForm,
        lattice: None,
        matrix_size: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_polynomial, rat};

    fn parse(s: &str, v: &[&str]) -> Polynomial {
        parse_polynomial(s, &v.iter().map(|x| x.to_string()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn u_variables() {
        assert_eq!(monomials_up_to(1, 2).len(), 3);
        assert_eq!(monomials_up_to(2, 2).len(), 6);
        assert_eq!(monomials_up_to(3, 1)[0], ExponentVector(vec![0, 0, 0]));
    }

    #[test]
    fn single_root() {
        let ch = chowform_from_roots(&[(vec![rat(2)], 1)], 1).unwrap();
        // U_0 + 2 U_1
        assert_eq!(ch.form, parse("a + 2*b", &["a", "b"]));
        let t = trace_from_chowform(&ch, &parse("x", &["x"]), &parse("1", &["x"])).unwrap();
        assert_eq!(t.value, rat(2));
    }

    #[test]
    fn two_roots() {
        let ch = chowform_from_roots(&[(vec![rat(1)], 1), (vec![rat(-1)], 1)], 1).unwrap();
        assert_eq!(ch.form, parse("a^2 - b^2", &["a", "b"]));
        let t = trace_from_chowform(&ch, &parse("x", &["x"]), &parse("1", &["x"])).unwrap();
        assert_eq!(t.value, rat(0));
    }

    #[test]
    fn double_root() {
        let ch = chowform_from_roots(&[(vec![rat(0)], 2)], 1).unwrap();
        assert_eq!(ch.form, parse("a^2", &["a", "b"]));
        let one = parse("1", &["x"]);
        assert_eq!(trace_from_chowform(&ch, &one, &one).unwrap().value, rat(2));
        assert!(trace_from_chowform(&ch, &one, &parse("x", &["x"])).is_err());
    }

    #[test]
    fn degree_bound_is_enforced() {
        let ch = chowform_from_roots(&[(vec![rat(3)], 1)], 1).unwrap();
        let v = ["x"];
        assert!(trace_from_chowform(&ch, &parse("x^2", &v), &parse("1", &v)).is_err());
        assert!(chowform_from_roots(&[(vec![rat(3)], 1)], 0).is_err());
    }
}
