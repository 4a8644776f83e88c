//! Finite-dimensional quotient algebras, multiplication matrices and traces.

use std::collections::{BTreeSet, HashMap};

use num_traits::{One, Zero};

use super::groebner::{groebner_raw, reduce, GPoly, GroebnerLimits, Mono};
use crate::error::{Error, Result};
use crate::linalg::{solve_rational, trace};
use crate::poly::{jacobian, toric_jacobian, ExponentVector, Polynomial, Rational};

/// Upper bound on the number of standard monomials.
pub const MAX_ALGEBRA_DIM: usize = 512;

/// How polynomials in the user's variables enter the algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Embedding {
    /// Ordinary polynomials in `n` variables.
    Affine,
    /// Laurent polynomials in `k` variables; an extra `u = 1/(t_1 .. t_k)` is appended.
    Torus,
}

/// `S / I` with its degrevlex Gröbner basis and standard monomials.
#[derive(Clone, Debug)]
pub struct QuotientAlgebra {
    pub generators: Vec<Polynomial>,
    pub embedding: Embedding,
    /// Number of user variables (without the auxiliary `u`).
    pub arity: usize,
    gb: Vec<GPoly>,
    pub monomial_basis: Vec<ExponentVector>,
    index: HashMap<Vec<i64>, usize>,
}

pub type RationalMatrix = Vec<Vec<Rational>>;

impl QuotientAlgebra {
    pub fn dimension(&self) -> usize {
        self.monomial_basis.len()
    }

    pub fn groebner_basis(&self) -> Vec<Polynomial> {
        self.gb.iter().map(|g| g.to_polynomial()).collect()
    }

    /// Rewrites a user polynomial in the ring the basis lives in.
    pub fn embed(&self, g: &Polynomial) -> Result<Polynomial> {
        if g.arity() != self.arity {
            return Err(Error::DimensionMismatch(format!("expected {} variables", self.arity)));
        }
        match self.embedding {
            Embedding::Affine => {
                if g.is_laurent() {
                    return Err(Error::Invalid("negative exponent in an affine algebra".into()));
                }
                Ok(g.clone())
            }
            Embedding::Torus => Ok(g.map_exponents(self.arity + 1, |e| {
                // t^a = t^{a + m 1} u^m
                let m = e.iter().map(|&x| -x).max().unwrap_or(0).max(0);
                let mut v: Vec<i64> = e.iter().map(|x| x + m).collect();
                v.push(m);
                v
            })),
        }
    }

    fn coordinates(&self, nf: &GPoly) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.dimension()];
        for (m, c) in &nf.terms {
            let j = self.index[&m.0];
            v[j] = c.clone();
        }
        v
    }

    /// Normal form of `g` in the standard-monomial coordinates.
    pub fn normal_form(&self, g: &Polynomial) -> Result<Vec<Rational>> {
        let e = GPoly::from_polynomial(&self.embed(g)?)?;
        Ok(self.coordinates(&reduce(&e, &self.gb)))
    }

    /// Matrix of `a -> g a`; column `j` is the image of basis monomial `j`.
    pub fn mult_matrix(&self, g: &Polynomial) -> Result<RationalMatrix> {
        let e = GPoly::from_polynomial(&self.embed(g)?)?;
        let n = self.dimension();
        let mut m = vec![vec![Rational::zero(); n]; n];
        for (j, b) in self.monomial_basis.iter().enumerate() {
            let shift = Mono(b.0.clone());
            let mut prod = GPoly { nvars: e.nvars, terms: Default::default() };
            for (em, c) in &e.terms {
                let key = Mono(em.0.iter().zip(&shift.0).map(|(x, y)| x + y).collect());
                prod.terms.insert(key, c.clone());
            }
            let col = self.coordinates(&reduce(&prod, &self.gb));
            for (i, v) in col.into_iter().enumerate() {
                m[i][j] = v;
            }
        }
        Ok(m)
    }
}

fn standard_monomials(gb: &[GPoly], nvars: usize) -> Result<Vec<Vec<i64>>> {
    let leads: Vec<&Mono> = gb.iter().map(|g| g.leading().expect("nonzero").0).collect();
    if leads.iter().any(|m| m.0.iter().all(|&e| e == 0)) {
        // unit ideal: no zeros at all
        return Ok(Vec::new());
    }
    for i in 0..nvars {
        let pure = leads.iter().any(|m| m.0.iter().enumerate().all(|(j, &e)| (j == i) == (e > 0)));
        if !pure {
            return Err(Error::PositiveDimensional);
        }
    }
    let mut seen: BTreeSet<Mono> = BTreeSet::new();
    let mut stack = vec![vec![0i64; nvars]];
    while let Some(m) = stack.pop() {
        let mono = Mono(m.clone());
        if seen.contains(&mono) || leads.iter().any(|l| l.divides(&mono)) {
            continue;
        }
        seen.insert(mono);
        if seen.len() > MAX_ALGEBRA_DIM {
            return Err(Error::ResourceLimit("quotient algebra too large".into()));
        }
        for i in 0..nvars {
            let mut next = m.clone();
            next[i] += 1;
            stack.push(next);
        }
    }
    Ok(seen.into_iter().map(|m| m.0).collect())
}

fn build(generators: Vec<Polynomial>, ring_gens: &[Polynomial], embedding: Embedding, arity: usize) -> Result<QuotientAlgebra> {
    let gb = groebner_raw(ring_gens, GroebnerLimits::default())?;
    let nvars = ring_gens[0].arity();
    let basis = if gb.is_empty() {
        return Err(Error::PositiveDimensional);
    } else {
        standard_monomials(&gb, nvars)?
    };
    let index = basis.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
    Ok(QuotientAlgebra {
        generators,
        embedding,
        arity,
        gb,
        monomial_basis: basis.into_iter().map(ExponentVector).collect(),
        index,
    })
}

/// `Q[x_1..x_n] / <f>`.
pub fn affine_algebra(f: &[Polynomial]) -> Result<QuotientAlgebra> {
    let n = f.first().map(|g| g.arity()).ok_or_else(|| Error::Invalid("empty system".into()))?;
    if f.iter().any(|g| g.arity() != n) {
        return Err(Error::DimensionMismatch("polynomials of different arity".into()));
    }
    build(f.to_vec(), f, Embedding::Affine, n)
}

/// Coordinate ring of the zeros of `f` in the torus, as `Q[t, u] / <f t^m, u t_1 .. t_k - 1>`.
pub fn torus_algebra(f: &[Polynomial]) -> Result<QuotientAlgebra> {
    let k = f.first().map(|g| g.arity()).ok_or_else(|| Error::Invalid("empty system".into()))?;
    if f.iter().any(|g| g.arity() != k) {
        return Err(Error::DimensionMismatch("polynomials of different arity".into()));
    }
    let mut ring = Vec::with_capacity(f.len() + 1);
    for g in f {
        if g.is_zero() {
            continue;
        }
        // clear negative exponents, then append u with exponent 0
        let mins: Vec<i64> =
            (0..k).map(|i| g.terms().map(|(e, _)| e.0[i]).min().expect("nonzero").min(0)).collect();
        ring.push(g.map_exponents(k + 1, |e| {
            let mut v: Vec<i64> = e.iter().zip(&mins).map(|(a, m)| a - m).collect();
            v.push(0);
            v
        }));
    }
    let mut rel = vec![1i64; k + 1];
    let mut aux = Polynomial::monomial(k + 1, ExponentVector(std::mem::take(&mut rel)), Rational::one());
    aux = &aux - &Polynomial::one(k + 1);
    ring.push(aux);
    build(f.to_vec(), &ring, Embedding::Torus, k)
}

/// `trace(M_q^{-1} M_p)`.
pub fn trace_oracle(p: &Polynomial, q: &Polynomial, a: &QuotientAlgebra) -> Result<Rational> {
    let mq = a.mult_matrix(q)?;
    let mp = a.mult_matrix(p)?;
    if a.dimension() == 0 {
        return Ok(Rational::zero());
    }
    let x = solve_rational(&mq, &mp).ok_or_else(|| Error::ZeroDivisor("q is a zero divisor in the algebra".into()))?;
    Ok(trace(&x))
}

/// `sum_xi h(xi) / J_f(xi)` over the affine zeros of a square system.
pub fn global_residue_oracle(h: &Polynomial, f: &[Polynomial]) -> Result<Rational> {
    let a = affine_algebra(f)?;
    trace_oracle(h, &jacobian(f)?, &a)
}

/// `sum_xi p(xi) / J^T_f(xi)` over the torus zeros.
pub fn torus_residue_oracle(p: &Polynomial, f: &[Polynomial]) -> Result<Rational> {
    let a = torus_algebra(f)?;
    trace_oracle(p, &toric_jacobian(f)?, &a)
}

/// Ideal with zeros `roots` of multiplicities `mult`, through a shape basis.
///
/// One variable: `prod (x - a_i)^{m_i}`. Two variables: `<prod (x - a_i)^{m_i}, y - h(x)>` with `h`
/// interpolating the second coordinates; the first coordinates must be distinct.
pub fn shape_ideal(roots: &[(Vec<Rational>, u32)]) -> Result<Vec<Polynomial>> {
    let n = roots.first().map(|r| r.0.len()).ok_or_else(|| Error::Invalid("no roots".into()))?;
    if !(1..=2).contains(&n) || roots.iter().any(|r| r.0.len() != n) {
        return Err(Error::Invalid("shape ideals are built in one or two variables".into()));
    }
    let xs: Vec<Rational> = roots.iter().map(|r| r.0[0].clone()).collect();
    for i in 0..xs.len() {
        if xs[..i].contains(&xs[i]) {
            return Err(Error::Invalid("first coordinates must be distinct".into()));
        }
    }
    let x = Polynomial::variable(n, 0);
    let mut g = Polynomial::one(n);
    for (pt, m) in roots {
        let lin = &x - &Polynomial::constant(n, pt[0].clone());
        g = &g * &lin.pow(*m);
    }
    if n == 1 {
        return Ok(vec![g]);
    }
    let ys: Vec<Rational> = roots.iter().map(|r| r.0[1].clone()).collect();
    let h = crate::poly::UnivariatePolynomial::interpolate(&xs, &ys)?;
    let mut hx = Polynomial::zero(2);
    for (i, c) in h.coeffs().iter().enumerate() {
        hx = &hx + &Polynomial::monomial(2, ExponentVector(vec![i as i64, 0]), c.clone());
    }
    Ok(vec![g, &Polynomial::variable(2, 1) - &hx])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_polynomial, rat, ratio};

    fn parse(s: &str, v: &[&str]) -> Polynomial {
        parse_polynomial(s, &v.iter().map(|x| x.to_string()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn univariate_algebra() {
        let v = ["x"];
        let a = affine_algebra(&[parse("x^2 - 1", &v)]).unwrap();
        assert_eq!(a.dimension(), 2);
        let mx = a.mult_matrix(&parse("x", &v)).unwrap();
        assert_eq!(mx, vec![vec![rat(0), rat(1)], vec![rat(1), rat(0)]]);
        assert_eq!(a.mult_matrix(&parse("x^2 - 1", &v)).unwrap(), vec![vec![rat(0); 2]; 2]);
        assert_eq!(trace_oracle(&parse("x", &v), &parse("1", &v), &a).unwrap(), rat(0));
        assert_eq!(trace_oracle(&parse("1", &v), &parse("x", &v), &a).unwrap(), rat(0));
        assert!(matches!(
            trace_oracle(&parse("1", &v), &parse("x - 1", &v), &a),
            Err(Error::ZeroDivisor(_))
        ));
    }

    #[test]
    fn torus_dimensions() {
        let v = ["t"];
        assert_eq!(torus_algebra(&[parse("t^2 - 3*t + 2", &v)]).unwrap().dimension(), 2);
        assert_eq!(torus_algebra(&[parse("t^2 - t", &v)]).unwrap().dimension(), 1);
        let a = torus_algebra(&[parse("t^-1 - 2", &v)]).unwrap();
        assert_eq!(trace_oracle(&parse("t^-3", &v), &parse("1", &v), &a).unwrap(), rat(8));
    }

    #[test]
    fn residues() {
        let v = ["x"];
        let f = [parse("x^2 - 1", &v)];
        assert_eq!(global_residue_oracle(&parse("1", &v), &f).unwrap(), rat(0));
        assert_eq!(global_residue_oracle(&parse("x", &v), &f).unwrap(), rat(1));
        assert_eq!(global_residue_oracle(&parse("x^2", &v), &f).unwrap(), rat(0));
        let t = ["t"];
        let g = [parse("t^2 - 1", &t)];
        assert_eq!(torus_residue_oracle(&parse("2*t^2", &t), &g).unwrap(), rat(2));
        assert_eq!(torus_residue_oracle(&parse("1", &t), &g).unwrap(), rat(1));
        assert_eq!(torus_residue_oracle(&parse("t", &t), &g).unwrap(), rat(0));
    }

    #[test]
    fn example_one_oracle() {
        let v = ["t1", "t2", "t3"];
        let f = [
            parse("-1 + t1^2 + t2^2", &v),
            parse("-1 + t2^2 + t3^2", &v),
            parse("-1 + t1^2 + t2^2 + t3^2", &v),
        ];
        // f_3 - f_1 = t3^2: every zero has t1 = t3 = 0, so none lies in the torus
        assert_eq!(torus_algebra(&f).unwrap().dimension(), 0);
        let a = affine_algebra(&f).unwrap();
        assert_eq!(a.dimension(), 8);
        assert_eq!(trace_oracle(&parse("t2^2", &v), &parse("1", &v), &a).unwrap(), rat(8));
    }

    #[test]
    fn shape_ideal_multiplicities() {
        let roots = vec![(vec![rat(1), rat(2)], 2), (vec![rat(-1), ratio(1, 2)], 1), (vec![rat(3), rat(0)], 1)];
        let a = affine_algebra(&shape_ideal(&roots).unwrap()).unwrap();
        assert_eq!(a.dimension(), 4);
        let v = ["x", "y"];
        let p = parse("x*y + 1", &v);
        let q = parse("y + 2", &v);
        let expected: Rational = roots
            .iter()
            .map(|(pt, m)| rat(*m as i64) * p.evaluate(pt).unwrap() / q.evaluate(pt).unwrap())
            .sum();
        assert_eq!(trace_oracle(&p, &q, &a).unwrap(), expected);
    }
}
