//! Dense resultants through Macaulay's quotient `det M / det M'`.

use itertools::Itertools;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{det_rational, pencil_det};
use crate::poly::{Polynomial, Rational, UnivariatePolynomial};

/// Largest number of degree-`D` monomials we are willing to build a matrix over.
pub const MAX_MACAULAY_SIZE: usize = 4000;

/// `x_n^d f(x_0/x_n, ..)`: the homogenizing variable is appended last.
pub fn homogenize(f: &Polynomial, d: i64) -> Result<Polynomial> {
    let n = f.arity();
    if f.is_laurent() {
        return Err(Error::Invalid("cannot homogenize a Laurent polynomial".into()));
    }
    if f.total_degree().map_or(false, |t| t > d) {
        return Err(Error::Invalid(format!("polynomial of degree above {d}")));
    }
    Ok(f.map_exponents(n + 1, |e| {
        let mut v = e.to_vec();
        v.push(d - e.iter().sum::<i64>());
        v
    }))
}

fn monomials(nvars: usize, degree: i64) -> Vec<Vec<i64>> {
    fn rec(prefix: &mut Vec<i64>, left: usize, rest: i64, out: &mut Vec<Vec<i64>>) {
        if left == 1 {
            prefix.push(rest);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for a in (0..=rest).rev() {
            prefix.push(a);
            rec(prefix, left - 1, rest - a, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), nvars, degree, &mut out);
    out
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1usize, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

/// One Macaulay layout: row owners and the non-reduced monomials.
struct Layout {
    monos: Vec<Vec<i64>>,
    owner: Vec<usize>,
    nonreduced: Vec<usize>,
}

fn layout(degrees: &[i64], pairing: &[usize]) -> Layout {
    let n1 = degrees.len();
    let big_d: i64 = degrees.iter().map(|d| d - 1).sum::<i64>() + 1;
    let monos = monomials(n1, big_d);
    let mut owner = Vec::with_capacity(monos.len());
    let mut nonreduced = Vec::new();
    for (j, m) in monos.iter().enumerate() {
        let divisible: Vec<usize> = (0..n1).filter(|&i| m[pairing[i]] >= degrees[i]).collect();
        owner.push(divisible[0]);
        if divisible.len() > 1 {
            nonreduced.push(j);
        }
    }
    Layout { monos, owner, nonreduced }
}

fn rows(layout: &Layout, degrees: &[i64], pairing: &[usize], form: usize, f: &Polynomial) -> Vec<(usize, Vec<Rational>)> {
    let index: std::collections::HashMap<&[i64], usize> =
        layout.monos.iter().enumerate().map(|(j, m)| (m.as_slice(), j)).collect();
    let mut out = Vec::new();
    for (j, m) in layout.monos.iter().enumerate() {
        if layout.owner[j] != form {
            continue;
        }
        let mut shift = m.clone();
        shift[pairing[form]] -= degrees[form];
        let mut row = vec![Rational::zero(); layout.monos.len()];
        for (e, c) in f.terms() {
            let col: Vec<i64> = e.0.iter().zip(&shift).map(|(a, b)| a + b).collect();
            row[index[col.as_slice()]] = c.clone();
        }
        out.push((j, row));
    }
    out
}

fn check_forms(degrees: &[i64], forms: &[&Polynomial]) -> Result<()> {
    let n1 = degrees.len();
    if forms.len() != n1 {
        return Err(Error::DimensionMismatch(format!("{} forms for {} degrees", forms.len(), n1)));
    }
    for (f, &d) in forms.iter().zip(degrees) {
        if f.arity() != n1 {
            return Err(Error::DimensionMismatch("need n + 1 forms in n + 1 variables".into()));
        }
        if d < 1 {
            return Err(Error::Invalid("degrees must be positive".into()));
        }
        if f.terms().any(|(e, _)| e.degree() != d || e.0.iter().any(|&x| x < 0)) {
            return Err(Error::Invalid(format!("form is not homogeneous of degree {d}")));
        }
    }
    let big_d = degrees.iter().map(|d| d - 1).sum::<i64>() + 1;
    if binomial(big_d as usize + n1 - 1, n1 - 1) > MAX_MACAULAY_SIZE {
        return Err(Error::ResourceLimit(format!("Macaulay matrix in degree {big_d} is too large")));
    }
    Ok(())
}

/// `(M0, M1, M')` for forms `F_0, .., F_{n-1}, q + T p`; `M'` never meets the last form.
type PencilMatrices = (Vec<Vec<Rational>>, Vec<Vec<Rational>>, Vec<Vec<Rational>>);

fn pencil_matrices(degrees: &[i64], others: &[&Polynomial], q: &Polynomial, p: &Polynomial, pairing: &[usize]) -> PencilMatrices {
    let last = degrees.len() - 1;
    let lay = layout(degrees, pairing);
    let size = lay.monos.len();
    let mut m0 = vec![Vec::new(); size];
    let mut m1 = vec![Vec::new(); size];
    for (i, f) in others.iter().enumerate() {
        for (j, row) in rows(&lay, degrees, pairing, i, f) {
            m0[j] = row;
            m1[j] = vec![Rational::zero(); size];
        }
    }
    for (j, row) in rows(&lay, degrees, pairing, last, q) {
        m0[j] = row;
    }
    for (j, row) in rows(&lay, degrees, pairing, last, p) {
        m1[j] = row;
    }
    let minor = lay.nonreduced.iter().map(|&r| lay.nonreduced.iter().map(|&c| m0[r][c].clone()).collect()).collect();
    (m0, m1, minor)
}

/// `Res(F_0, .., F_{n-1}, q + T p)` as a polynomial in `T`, exactly (no stray constant).
pub fn macaulay_pencil_forms(degrees: &[i64], others: &[Polynomial], q: &Polynomial, p: &Polynomial) -> Result<UnivariatePolynomial> {
    let mut all: Vec<&Polynomial> = others.iter().collect();
    all.push(q);
    check_forms(degrees, &all)?;
    let last = degrees.len() - 1;
    if !p.is_zero() {
        all[last] = p;
        check_forms(degrees, &all)?;
    }
    let refs: Vec<&Polynomial> = others.iter().collect();
    for pairing in (0..degrees.len()).permutations(degrees.len()).take(MAX_PAIRINGS) {
        let (m0, m1, minor) = pencil_matrices(degrees, &refs, q, p, &pairing);
        let den = det_rational(&minor);
        if den.is_zero() {
            continue;
        }
        let x = pencil_det(&m0, &m1);
        return Ok(x.scale(&(Rational::one() / den)));
    }
    Err(Error::Degenerate("Macaulay minor vanishes for every variable pairing".into()))
}

const MAX_PAIRINGS: usize = 24;

/// Classical resultant of `n + 1` homogeneous forms in `n + 1` variables.
pub fn macaulay_resultant_forms(degrees: &[i64], forms: &[Polynomial]) -> Result<Rational> {
    let (last, others) = forms.split_last().ok_or_else(|| Error::Invalid("no forms".into()))?;
    let x = macaulay_pencil_forms(degrees, others, last, &Polynomial::zero(last.arity()))?;
    Ok(x.coeff(0))
}

/// Resultant of `n + 1` affine polynomials in `n` variables, read with the given degrees.
pub fn macaulay_resultant(degrees: &[i64], polys: &[Polynomial]) -> Result<Rational> {
    let forms = polys.iter().zip(degrees).map(|(f, &d)| homogenize(f, d)).collect::<Result<Vec<_>>>()?;
    macaulay_resultant_forms(degrees, &forms)
}

/// `X(T) = Res_{D, d_1, .., d_n}(q + T p, f_1, .., f_n)` for affine inputs.
pub fn macaulay_pencil(d0: i64, q: &Polynomial, p: &Polynomial, others: &[Polynomial], degrees: &[i64]) -> Result<UnivariatePolynomial> {
    if d0 == 0 {
        // a constant form: Res = c^{d_1 .. d_n}
        let e: i64 = degrees.iter().product();
        let base = UnivariatePolynomial::new(vec![q.coefficient(&vec![0; q.arity()]), p.coefficient(&vec![0; p.arity()])]);
        return Ok(base.pow(e as u32));
    }
    let forms = others.iter().zip(degrees).map(|(f, &d)| homogenize(f, d)).collect::<Result<Vec<_>>>()?;
    let mut degs = degrees.to_vec();
    degs.push(d0);
    macaulay_pencil_forms(&degs, &forms, &homogenize(q, d0)?, &homogenize(p, d0)?)
}

/// Total degrees of a dense system (`f_i` of degree `d_i`).
pub fn degrees_of(polys: &[Polynomial]) -> Result<Vec<i64>> {
    polys
        .iter()
        .map(|f| f.total_degree().ok_or_else(|| Error::Invalid("zero polynomial in a dense system".into())))
        .collect()
}

/// `Res_{d_1..d_n}(f_1^0, .., f_n^0)` of the top-degree forms of `n` polynomials in `n` variables.
pub fn leading_form_resultant(polys: &[Polynomial]) -> Result<Rational> {
    let n = polys.len();
    if polys.iter().any(|f| f.arity() != n) {
        return Err(Error::DimensionMismatch("need n polynomials in n variables".into()));
    }
    let degrees = degrees_of(polys)?;
    if degrees.iter().any(|&d| d == 0) {
        return Err(Error::Invalid("constant polynomial in the system".into()));
    }
    let forms: Vec<Polynomial> = polys.iter().zip(&degrees).map(|(f, &d)| f.homogeneous_part(d)).collect();
    macaulay_resultant_forms(&degrees, &forms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_polynomial, rat};

    fn parse(s: &str, v: &[&str]) -> Polynomial {
        parse_polynomial(s, &v.iter().map(|x| x.to_string()).collect::<Vec<_>>()).unwrap()
    }

    fn pm(a: &Rational, b: i64) -> bool {
        *a == rat(b) || *a == rat(-b)
    }

    #[test]
    fn univariate_examples() {
        let v = ["x"];
        let r = macaulay_resultant(&[1, 1], &[parse("2*x + 3", &v), parse("5*x + 7", &v)]).unwrap();
        assert!(pm(&r, 2 * 7 - 3 * 5));
        let r = macaulay_resultant(&[2, 1], &[parse("x^2 - 1", &v), parse("x - 2", &v)]).unwrap();
        assert!(pm(&r, 3));
    }

    #[test]
    fn trivial_system_is_one() {
        let v = ["x", "y", "z"];
        let forms = [parse("x^2", &v), parse("y^3", &v), parse("z^2", &v)];
        assert!(pm(&macaulay_resultant_forms(&[2, 3, 2], &forms).unwrap(), 1));
        // reversed pairing of forms and variables
        let forms = [parse("z^2", &v), parse("y^3", &v), parse("x^2", &v)];
        assert!(pm(&macaulay_resultant_forms(&[2, 3, 2], &forms).unwrap(), 1));
    }

    #[test]
    fn linear_forms_give_determinant() {
        let v = ["x", "y"];
        let polys = [parse("1 + 2*x + 3*y", &v), parse("4 - x + 5*y", &v), parse("-2 + 7*x + y", &v)];
        let r = macaulay_resultant(&[1, 1, 1], &polys).unwrap();
        let det = crate::linalg::det_rational(&[
            vec![rat(1), rat(2), rat(3)],
            vec![rat(4), rat(-1), rat(5)],
            vec![rat(-2), rat(7), rat(1)],
        ]);
        assert!(r == det || r == -det);
    }

    #[test]
    fn quadrics_against_poisson() {
        // f_1 = x^2 - 1, f_2 = y^2 - 4: roots (+-1, +-2) and no roots at infinity
        let v = ["x", "y"];
        let f1 = parse("x^2 - 1", &v);
        let f2 = parse("y^2 - 4", &v);
        let f0 = parse("x + y + 3", &v);
        let r = macaulay_resultant(&[1, 2, 2], &[f0, f1.clone(), f2.clone()]).unwrap();
        // Res = Res(f^0) prod f_0(roots), Res(x^2, y^2) = 1
        let expected = [(1, 2), (1, -2), (-1, 2), (-1, -2)].iter().map(|&(a, b)| rat(a + b + 3)).product::<Rational>();
        assert!(r == expected || r == -expected.clone());
        assert!(pm(&leading_form_resultant(&[f1, f2]).unwrap(), 1));
    }

    #[test]
    fn pencil_is_exact() {
        let v = ["x"];
        let f1 = parse("x^2 - 3*x + 2", &v);
        let x = macaulay_pencil(1, &parse("1", &v), &parse("x", &v), &[f1], &[2]).unwrap();
        // Res(1 + T x, f_1) = (1 + T)(1 + 2T) up to sign
        let c = x.coeffs();
        assert!(c == [rat(1), rat(3), rat(2)] || c == [rat(-1), rat(-3), rat(-2)]);
        assert_eq!(x.log_derivative_at_zero().unwrap(), rat(3));
        let k = macaulay_pencil(0, &parse("3", &v), &parse("1", &v), &[parse("x^2 - 1", &v)], &[2]).unwrap();
        assert_eq!(k.coeffs(), [rat(9), rat(6), rat(1)]);
    }

    #[test]
    fn leading_form_univariate() {
        assert_eq!(leading_form_resultant(&[parse("-3*x^2 + x", &["x"])]).unwrap(), rat(-3));
    }
}
