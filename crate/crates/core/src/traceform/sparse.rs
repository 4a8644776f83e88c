//! The sparse-resultant trace formula and the factorization of its denominator.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{LatticeData, TraceMethod, TraceResult};
use crate::error::{Error, Result};
use crate::latgeom::{
    delta_exponents, essential_subfamily, exponent_d, exponent_e_with, family_lattice, mixed_volume, IntegerLattice,
    LatticeIndex,
};
use crate::poly::{pow_rational, Polynomial, Rational, Support};
use crate::resultants::{facet_resultant, reduce, resultant_pencil, sparse_resultant, Reduction, ResultantProblem};

fn check_system(q: &Polynomial, f: &[Polynomial]) -> Result<usize> {
    let k = q.arity();
    if f.len() != k {
        return Err(Error::DimensionMismatch(format!("{} equations in {} variables", f.len(), k)));
    }
    if f.iter().any(|g| g.arity() != k) {
        return Err(Error::DimensionMismatch("polynomials of different arity".into()));
    }
    if f.iter().any(|g| g.is_zero()) {
        return Err(Error::Invalid("zero polynomial in the system".into()));
    }
    if q.is_zero() {
        return Err(Error::ZeroDivisor("q = 0".into()));
    }
    Ok(k)
}

/// `Trace(Times_{p/q})` on the torus zeros of `f`, as `d X'(0) / X(0)` with `X(T) = Res(q + T p, f)`.
pub fn trace_sparse(p: &Polynomial, q: &Polynomial, f: &[Polynomial], seed: u64) -> Result<TraceResult> {
    let k = check_system(q, f)?;
    if p.arity() != k {
        return Err(Error::DimensionMismatch("p has the wrong arity".into()));
    }
    let a0 = q.support().union(&p.support());
    let mut supports = vec![a0];
    supports.extend(f.iter().map(|g| g.support()));
    let mv = mixed_volume(&supports[1..], &IntegerLattice::full(k))?;
    if mv.is_zero() {
        return Err(Error::Degenerate("mixed volume of the system is zero".into()));
    }
    let all: Vec<usize> = (0..supports.len()).collect();
    let index = match IntegerLattice::full(k).index_of(&family_lattice(&supports, &all)?)? {
        LatticeIndex::Finite(x) => x,
        LatticeIndex::Infinite => return Err(Error::Degenerate("L(A_0, ..., A_k) is not of full rank".into())),
    };
    let ess = essential_subfamily(&supports, None)?;
    let e = exponent_e_with(&supports, &ess)?;
    let d = exponent_d(&supports)?;
    let mut polys = vec![q.clone()];
    polys.extend(f.iter().cloned());
    let problem = ResultantProblem::new(supports, polys)?;
    let pencil = resultant_pencil(&problem, q, p, seed)?;
    let numerator = Rational::from_integer(d.clone()) * pencil.x.coeff(1);
    let denominator = pencil.x.coeff(0);
    Ok(TraceResult {
        value: &numerator / &denominator,
        numerator,
        denominator,
        method: TraceMethod::SparseResultant,
        lattice: Some(LatticeData { e, d, index, mixed_volume: mv, essential: ess }),
        matrix_size: Some(pencil.matrix_size),
    })
}

/// One factor `value^exponent` of a denominator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorTerm {
    /// Inward facet normal in the coordinates of `L(A_0, .., A_k)`; `None` for the base factor.
    pub normal: Option<Vec<i64>>,
    /// The same normal in `Z^k` when that lattice has full rank.
    pub ambient_normal: Option<Vec<i64>>,
    pub mu: i64,
    pub face_index: BigInt,
    pub exponent: BigInt,
    pub value: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenominatorFactorization {
    pub a: Vec<i64>,
    pub essential: Vec<usize>,
    /// `Res_{A', A_1, .., A_k}(q, f)` with exponent `delta_{A'}`.
    pub base: FactorTerm,
    /// Facet resultants with positive exponent.
    pub facets: Vec<FactorTerm>,
    pub product: Rational,
    /// `Res_{A_0, A_1, .., A_k}(q, f)` evaluated directly.
    pub resultant: Rational,
}

impl DenominatorFactorization {
    pub fn agrees_up_to_sign(&self) -> bool {
        self.product == self.resultant || self.product == -self.resultant.clone()
    }
}

fn power(x: &Rational, e: &BigInt) -> Result<Rational> {
    let e = e.to_i64().ok_or_else(|| Error::ResourceLimit(format!("exponent {e} too large")))?;
    Ok(pow_rational(x, e))
}

/// Factors `Res_{A_0, A_1, .., A_k}(q, f)` with `A_0 = support(q) U {a}`.
pub fn denominator_factorization(a: &[i64], q: &Polynomial, f: &[Polynomial], seed: u64) -> Result<DenominatorFactorization> {
    let k = check_system(q, f)?;
    if a.len() != k {
        return Err(Error::DimensionMismatch("exponent a has the wrong length".into()));
    }
    let a_prime = q.support();
    let a0 = a_prime.union(&Support::new(k, vec![a.to_vec()]));
    let others: Vec<Support> = f.iter().map(|g| g.support()).collect();
    let de = delta_exponents(&a_prime, a, &others)?;

    let mut polys = vec![q.clone()];
    polys.extend(f.iter().cloned());
    let mut prime_supports = vec![a_prime];
    prime_supports.extend(others.iter().cloned());
    let base_value = sparse_resultant(&ResultantProblem::new(prime_supports, polys.clone())?, seed)?;
    let base = FactorTerm {
        normal: None,
        ambient_normal: None,
        mu: 0,
        face_index: BigInt::one(),
        exponent: de.delta_prime.clone(),
        value: base_value,
    };

    let mut supports = vec![a0];
    supports.extend(others);
    let problem = ResultantProblem::new(supports, polys)?;
    let mut facets = Vec::new();
    if de.facets.iter().any(|fe| fe.delta.is_positive()) {
        let red = match reduce(&problem, Some(0))? {
            Reduction::Reduced(r) => r,
            Reduction::Trivial => unreachable!("anchored reduction is never trivial"),
        };
        if red.essential != de.essential {
            return Err(Error::Invalid("essential subfamilies disagree".into()));
        }
        for fe in de.facets.iter().filter(|fe| fe.delta.is_positive()) {
            let value = facet_resultant(&red.supports[1..], &red.polys[1..], &fe.normal, seed)?;
            facets.push(FactorTerm {
                normal: Some(fe.normal.clone()),
                ambient_normal: fe.ambient_normal.clone(),
                mu: fe.mu,
                face_index: fe.face_index.clone(),
                exponent: fe.delta.clone(),
                value,
            });
        }
    }
    let mut product = power(&base.value, &base.exponent)?;
    for t in &facets {
        product *= power(&t.value, &t.exponent)?;
    }
    let resultant = sparse_resultant(&problem, seed)?;
    Ok(DenominatorFactorization { a: a.to_vec(), essential: de.essential, base, facets, product, resultant })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_polynomial, rat};

    fn parse(s: &str, v: &[&str]) -> Polynomial {
        parse_polynomial(s, &v.iter().map(|x| x.to_string()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn univariate_traces() {
        let v = ["x"];
        let f = [parse("x^2 - 3*x + 2", &v)];
        // roots 1, 2
        let t = trace_sparse(&parse("x", &v), &parse("1", &v), &f, 1).unwrap();
        assert_eq!(t.value, rat(3));
        let t = trace_sparse(&parse("1", &v), &parse("x", &v), &f, 1).unwrap();
        assert_eq!(t.value, crate::poly::ratio(3, 2));
        let t = trace_sparse(&parse("x^-1", &v), &parse("1", &v), &f, 1).unwrap();
        assert_eq!(t.value, crate::poly::ratio(3, 2));
    }

    #[test]
    fn sublattice_trace() {
        // x^4 = 4 has two real and two imaginary roots; squares sum to 2 + 2 - 2 - 2 = 0
        let v = ["x"];
        let f = [parse("x^4 - 4", &v)];
        let t = trace_sparse(&parse("x^2", &v), &parse("1", &v), &f, 3).unwrap();
        assert_eq!(t.value, rat(0));
        let lat = t.lattice.unwrap();
        assert_eq!(lat.d, BigInt::from(2));
        let t = trace_sparse(&parse("x^4", &v), &parse("1", &v), &f, 3).unwrap();
        assert_eq!(t.value, rat(16));
    }

    #[test]
    fn example_one_specialized() {
        let v = ["t1", "t2", "t3"];
        let f = [
            parse("-1 + t1^2 + t2^2", &v),
            parse("-1 + t2^2 + t3^2", &v),
            parse("-1 + t1^2 + t2^2 + t3^2", &v),
        ];
        let t = trace_sparse(&parse("t2^2", &v), &parse("1", &v), &f, 7).unwrap();
        assert_eq!(t.value, rat(8));
        let lat = t.lattice.unwrap();
        assert_eq!(lat.e, BigInt::one());
        assert_eq!(lat.index, BigInt::from(8));
    }

    #[test]
    fn q_vanishing_at_a_root_is_reported() {
        let v = ["x"];
        let f = [parse("x^2 - 3*x + 2", &v)];
        assert!(matches!(
            trace_sparse(&parse("1", &v), &parse("x - 1", &v), &f, 1),
            Err(Error::ZeroDivisor(_))
        ));
    }

    #[test]
    fn trivial_factorization() {
        let v = ["x", "y"];
        let f = [parse("x + 2*y - 3", &v), parse("x*y - 5 + y", &v)];
        let q = parse("2 + x - 3*y", &v);
        let fac = denominator_factorization(&[1, 0], &q, &f, 4).unwrap();
        assert!(fac.facets.is_empty());
        assert_eq!(fac.base.exponent, BigInt::one());
        assert!(fac.agrees_up_to_sign());
    }
}
