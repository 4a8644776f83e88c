//! Buchberger's algorithm in degree reverse lexicographic order.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::{ExponentVector, Polynomial, Rational};

/// Exponent vector ordered by degrevlex.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mono(pub Vec<i64>);

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        let da: i64 = self.0.iter().sum();
        let db: i64 = other.0.iter().sum();
        da.cmp(&db).then_with(|| {
            for (a, b) in self.0.iter().zip(&other.0).rev() {
                if a != b {
                    // smaller last exponent wins
                    return b.cmp(a);
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Mono {
    pub fn divides(&self, other: &Mono) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    fn lcm(&self, other: &Mono) -> Mono {
        Mono(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    fn div(&self, other: &Mono) -> Mono {
        Mono(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    fn mul(&self, other: &Mono) -> Mono {
        Mono(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

/// Polynomial keyed by degrevlex monomials; the leading term is the last entry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GPoly {
    pub nvars: usize,
    pub terms: BTreeMap<Mono, Rational>,
}

impl GPoly {
    pub fn from_polynomial(f: &Polynomial) -> Result<GPoly> {
        if f.is_laurent() {
            return Err(Error::Invalid("Gröbner bases need ordinary polynomials".into()));
        }
        Ok(GPoly { nvars: f.arity(), terms: f.terms().map(|(e, c)| (Mono(e.0.clone()), c.clone())).collect() })
    }

    pub fn to_polynomial(&self) -> Polynomial {
        Polynomial::from_terms(self.nvars, self.terms.iter().map(|(m, c)| (ExponentVector(m.0.clone()), c.clone())))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading(&self) -> Option<(&Mono, &Rational)> {
        self.terms.last_key_value()
    }

    fn make_monic(&mut self) {
        if let Some((_, lc)) = self.leading() {
            let inv = Rational::one() / lc;
            for c in self.terms.values_mut() {
                *c *= &inv;
            }
        }
    }

    /// `self -= c x^m g`.
    fn sub_scaled(&mut self, c: &Rational, m: &Mono, g: &GPoly) {
        for (gm, gc) in &g.terms {
            let key = gm.mul(m);
            let v = self.terms.entry(key.clone()).or_insert_with(Rational::zero);
            *v -= c * gc;
            if v.is_zero() {
                self.terms.remove(&key);
            }
        }
    }
}

/// Full reduction of `f` by `basis`.
pub fn reduce(f: &GPoly, basis: &[GPoly]) -> GPoly {
    let mut p = f.clone();
    let mut rem = GPoly { nvars: f.nvars, terms: BTreeMap::new() };
    while let Some((m, c)) = p.terms.pop_last() {
        let divisor = basis.iter().find(|g| g.leading().map_or(false, |(lm, _)| lm.divides(&m)));
        match divisor {
            Some(g) => {
                let (lm, lc) = g.leading().expect("nonzero");
                let q = &c / lc;
                let shift = m.div(lm);
                // the leading term cancels exactly; it is already removed
                for (gm, gc) in g.terms.iter().rev().skip(1) {
                    let key = gm.mul(&shift);
                    let v = p.terms.entry(key.clone()).or_insert_with(Rational::zero);
                    *v -= &q * gc;
                    if v.is_zero() {
                        p.terms.remove(&key);
                    }
                }
            }
            None => {
                rem.terms.insert(m, c);
            }
        }
    }
    rem
}

fn s_polynomial(f: &GPoly, g: &GPoly) -> GPoly {
    let (fm, fc) = f.leading().expect("nonzero");
    let (gm, gc) = g.leading().expect("nonzero");
    let l = fm.lcm(gm);
    let mut s = GPoly { nvars: f.nvars, terms: BTreeMap::new() };
    s.sub_scaled(&(-Rational::one() / fc), &l.div(fm), f);
    s.sub_scaled(&(Rational::one() / gc), &l.div(gm), g);
    s
}

/// Limits on the Buchberger loop.
#[derive(Clone, Copy, Debug)]
pub struct GroebnerLimits {
    pub max_basis: usize,
    pub max_pairs: usize,
}

impl Default for GroebnerLimits {
    fn default() -> Self {
        GroebnerLimits { max_basis: 400, max_pairs: 40_000 }
    }
}

/// Reduced Gröbner basis (monic, sorted by leading monomial) in degrevlex.
pub fn groebner_basis(gens: &[Polynomial]) -> Result<Vec<Polynomial>> {
    if gens.is_empty() {
        return Err(Error::Invalid("no generators".into()));
    }
    let gb = groebner_raw(gens, GroebnerLimits::default())?;
    Ok(gb.iter().map(|g| g.to_polynomial()).collect())
}

pub(crate) fn groebner_raw(gens: &[Polynomial], limits: GroebnerLimits) -> Result<Vec<GPoly>> {
    let mut basis: Vec<GPoly> = Vec::new();
    for f in gens {
        let mut g = GPoly::from_polynomial(f)?;
        if g.is_zero() {
            continue;
        }
        g.make_monic();
        basis.push(g);
    }
    if basis.is_empty() {
        return Ok(basis);
    }
    let mut pairs: BTreeSet<(Mono, usize, usize)> = BTreeSet::new();
    let mut done: BTreeSet<(usize, usize)> = BTreeSet::new();
    for j in 0..basis.len() {
        for i in 0..j {
            pairs.insert((lcm_of(&basis, i, j), i, j));
        }
    }
    let mut processed = 0usize;
    while let Some((l, i, j)) = pairs.pop_first() {
        processed += 1;
        if processed > limits.max_pairs {
            return Err(Error::ResourceLimit("too many S-pairs".into()));
        }
        done.insert((i, j));
        let (mi, _) = basis[i].leading().expect("nonzero");
        let (mj, _) = basis[j].leading().expect("nonzero");
        // coprime leading monomials reduce to zero
        if mi.mul(mj) == l {
            continue;
        }
        // chain criterion
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && basis[k].leading().expect("nonzero").0.divides(&l)
                && done.contains(&(i.min(k), i.max(k)))
                && done.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }
        let mut r = reduce(&s_polynomial(&basis[i], &basis[j]), &basis);
        if r.is_zero() {
            continue;
        }
        r.make_monic();
        if r.leading().expect("nonzero").0 .0.iter().all(|&e| e == 0) {
            // unit ideal
            return Ok(vec![r]);
        }
        basis.push(r);
        if basis.len() > limits.max_basis {
            return Err(Error::ResourceLimit("Gröbner basis grew too large".into()));
        }
        let n = basis.len() - 1;
        for k in 0..n {
            pairs.insert((lcm_of(&basis, k, n), k, n));
        }
    }
    Ok(interreduce(basis))
}

fn lcm_of(basis: &[GPoly], i: usize, j: usize) -> Mono {
    basis[i].leading().expect("nonzero").0.lcm(basis[j].leading().expect("nonzero").0)
}

fn interreduce(mut basis: Vec<GPoly>) -> Vec<GPoly> {
    // drop elements whose leading monomial is divisible by another's
    basis.sort_by(|a, b| a.leading().expect("nonzero").0.cmp(b.leading().expect("nonzero").0));
    let mut minimal: Vec<GPoly> = Vec::new();
    for g in basis {
        let lm = g.leading().expect("nonzero").0.clone();
        if !minimal.iter().any(|h| h.leading().expect("nonzero").0.divides(&lm)) {
            minimal.push(g);
        }
    }
    let mut out = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<GPoly> = minimal.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, g)| g.clone()).collect();
        let (lm, lc) = minimal[i].leading().expect("nonzero");
        let mut tail = minimal[i].clone();
        tail.terms.pop_last();
        let mut r = reduce(&tail, &others);
        r.terms.insert(lm.clone(), lc.clone());
        r.make_monic();
        out.push(r);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_polynomial;

    fn parse(s: &str, v: &[&str]) -> Polynomial {
        parse_polynomial(s, &v.iter().map(|x| x.to_string()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn degrevlex_order() {
        // x^2 > xy > y^2 > xz > yz > z^2 in degree 2
        let order = [[2, 0, 0], [1, 1, 0], [0, 2, 0], [1, 0, 1], [0, 1, 1], [0, 0, 2]];
        for w in order.windows(2) {
            assert!(Mono(w[0].to_vec()) > Mono(w[1].to_vec()));
        }
        assert!(Mono(vec![0, 0, 3]) > Mono(vec![2, 0, 0]));
    }

    #[test]
    fn small_bases() {
        let v = ["x", "y"];
        assert_eq!(groebner_basis(&[parse("x^2 - 1", &v)]).unwrap(), vec![parse("x^2 - 1", &v)]);
        let gb = groebner_basis(&[parse("x + y", &v), parse("x - y", &v)]).unwrap();
        assert_eq!(gb, vec![parse("y", &v), parse("x", &v)]);
        assert_eq!(groebner_basis(&[parse("1", &v)]).unwrap(), vec![parse("1", &v)]);
        let gb = groebner_basis(&[parse("x*y - 1", &v), parse("x^2 - y", &v), parse("x - y^2", &v)]).unwrap();
        // x^3 = 1 after elimination
        for g in &gb {
            assert!(!g.is_zero());
        }
    }

    #[test]
    fn s_pairs_reduce_to_zero() {
        let v = ["x", "y", "z"];
        let gens = [parse("x^2 + y*z - 2", &v), parse("y^2 - x*z + 1", &v), parse("z^2 - x - y", &v)];
        let gb: Vec<GPoly> = groebner_raw(&gens, GroebnerLimits::default()).unwrap();
        for i in 0..gb.len() {
            for j in 0..i {
                assert!(reduce(&s_polynomial(&gb[i], &gb[j]), &gb).is_zero());
            }
        }
        for f in &gens {
            assert!(reduce(&GPoly::from_polynomial(f).unwrap(), &gb).is_zero());
        }
    }
}
