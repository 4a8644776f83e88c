//! Two denominators for `Trace(Times_{t^a})` on the torus: one from residue bounds, one from
//! the factorization of the sparse-resultant denominator with `A' = {0}`.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::latgeom::{
    convex_hull, delta_exponents, essential_subfamily, exponent_e, exponent_e_with, face_data, family_lattice,
    lattice_points, minkowski_sum_all, IntegerLattice, LatticeIndex,
};
use crate::poly::{pow_rational, Polynomial, Rational, Support};
use crate::resultants::facet_resultant;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DenominatorKind {
    ResidueBound,
    Factorization,
}

impl DenominatorKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            DenominatorKind::ResidueBound => "cds",
            DenominatorKind::Factorization => "ours",
        }
    }
}

/// A facet `w` of `Delta = Delta_1 + .. + Delta_k` and its exponent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FacetDenominator {
    pub normal: Vec<i64>,
    /// `<a, w>`.
    pub a_dot: i64,
    /// `a_w = -min_Delta <., w>` after the shift.
    pub offset: i64,
    /// `[w^perp : L(A_1^w, .., A_k^w)]`.
    pub index: BigInt,
    pub exponent: BigInt,
    /// `e` of the face family; `None` when it has no unique essential subfamily (factor 1).
    pub face_e: Option<BigInt>,
    /// The full facet resultant `R_w^{face_e}`, evaluated when the exponent is positive.
    pub value: Option<Rational>,
    /// The same exponent read off the general factorization (`A' = {0}`), when available.
    pub factorization_exponent: Option<BigInt>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidueDenominator {
    pub kind: DenominatorKind,
    pub a: Vec<i64>,
    /// Monomial shift applied to each `f_i` to move its support into the positive orthant.
    pub shifts: Vec<Vec<i64>>,
    pub facets: Vec<FacetDenominator>,
    pub total_exponent: BigInt,
    pub product: Rational,
}

struct Setup {
    shifts: Vec<Vec<i64>>,
    supports: Vec<Support>,
    polys: Vec<Polynomial>,
    /// `(normal, offset, index, face e)` per facet of `Delta`.
    facets: Vec<(Vec<i64>, i64, BigInt, Option<BigInt>)>,
}

fn setup(a: &[i64], f: &[Polynomial]) -> Result<Setup> {
    let k = f.first().map(|g| g.arity()).ok_or_else(|| Error::Invalid("empty system".into()))?;
    if f.len() != k || f.iter().any(|g| g.arity() != k) {
        return Err(Error::DimensionMismatch("a square system is required".into()));
    }
    if a.len() != k {
        return Err(Error::DimensionMismatch("exponent a has the wrong length".into()));
    }
    let mut shifts = Vec::with_capacity(k);
    let mut supports = Vec::with_capacity(k);
    let mut polys = Vec::with_capacity(k);
    for (i, g) in f.iter().enumerate() {
        if g.is_zero() {
            return Err(Error::Invalid("zero polynomial in the system".into()));
        }
        let s = g.support();
        if lattice_points(&s)? != s.points() {
            return Err(Error::Assumption(format!(
                "support of f{} is not the set of lattice points of its Newton polytope",
                i + 1
            )));
        }
        let b: Vec<i64> = (0..k).map(|j| (1 - s.points().iter().map(|p| p[j]).min().expect("nonempty")).max(0)).collect();
        supports.push(s.translate(&b));
        polys.push(g.shift(&b));
        shifts.push(b);
    }
    let refs: Vec<&Support> = supports.iter().collect();
    let hull = convex_hull(&minkowski_sum_all(&refs, k)?)?;
    if !hull.is_full_dimensional() {
        return Err(Error::Degenerate("Delta_1 + ... + Delta_k is not full dimensional".into()));
    }
    let mut facets = Vec::with_capacity(hull.facets.len());
    for fc in &hull.facets {
        let faces: Vec<Support> = supports.iter().map(|s| face_data(s, &fc.normal).map(|x| x.0)).collect::<Result<_>>()?;
        let lf = family_lattice(&faces, &(0..k).collect::<Vec<_>>())?;
        let perp = IntegerLattice::full(k).orthogonal_sublattice(&fc.normal);
        let index = match perp.index_of(&lf)? {
            LatticeIndex::Finite(x) => x,
            LatticeIndex::Infinite => return Err(Error::Degenerate(format!("face lattice at {:?} has low rank", fc.normal))),
        };
        let face_e = essential_subfamily(&faces, None).ok().map(|ess| exponent_e_with(&faces, &ess)).transpose()?;
        facets.push((fc.normal.clone(), fc.offset, index, face_e));
    }
    Ok(Setup { shifts, supports, polys, facets })
}

fn small(x: &BigInt) -> Result<i64> {
    x.try_into().map_err(|_| Error::ResourceLimit(format!("exponent {x} too large")))
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn finish(kind: DenominatorKind, a: &[i64], s: &Setup, exps: Vec<(BigInt, Option<BigInt>)>, seed: u64) -> Result<ResidueDenominator> {
    let mut facets = Vec::with_capacity(s.facets.len());
    let mut total = BigInt::zero();
    let mut product = Rational::from_integer(1.into());
    for ((normal, offset, index, face_e), (exponent, fexp)) in s.facets.iter().zip(exps) {
        let value = if exponent.is_positive() {
            let r = facet_resultant(&s.supports, &s.polys, normal, seed)?;
            let v = match face_e {
                Some(fe) => pow_rational(&r, small(fe)?),
                None => Rational::from_integer(1.into()),
            };
            product *= pow_rational(&v, small(&exponent)?);
            Some(v)
        } else {
            None
        };
        total += &exponent;
        facets.push(FacetDenominator {
            normal: normal.clone(),
            a_dot: dot(a, normal),
            offset: *offset,
            index: index.clone(),
            face_e: face_e.clone(),
            exponent,
            value,
            factorization_exponent: fexp,
        });
    }
    Ok(ResidueDenominator { kind, a: a.to_vec(), shifts: s.shifts.clone(), facets, total_exponent: total, product })
}

/// Exponents `max_{m in (Delta cap Z^k) + a} mu^-_w(m) [w^perp : L(A^w)]`.
///
/// `mu^-_w` is linear-then-clamped, so the maximum over lattice points is attained at a vertex.
pub fn residue_denominator_cds(a: &[i64], f: &[Polynomial], seed: u64) -> Result<ResidueDenominator> {
    let s = setup(a, f)?;
    let refs: Vec<&Support> = s.supports.iter().collect();
    let vertices = convex_hull(&minkowski_sum_all(&refs, a.len())?)?.vertices;
    let exps = s
        .facets
        .iter()
        .map(|(w, off, idx, _)| {
            let best = vertices
                .iter()
                .map(|v| {
                    let m: Vec<i64> = v.iter().zip(a).map(|(x, y)| x + y).collect();
                    -(dot(&m, w) + off - 1).min(0)
                })
                .max()
                .expect("nonempty");
            (BigInt::from(best) * idx, None)
        })
        .collect();
    finish(DenominatorKind::ResidueBound, a, &s, exps, seed)
}

/// Exponents `-<a, w> [w^perp : L(A^w)]` for `<a, w> <= 0`.
///
/// Cross-checked against the general factorization with `A' = {0}`, `A_0 = {0, a}`, which
/// raises the irreducible facet resultant `R_w` to `delta_w`; here the factor is the full
/// facet resultant `R_w^{e_w}`, so the two must satisfy `delta_w e_0 = exponent e_w`.
pub fn residue_denominator_ours(a: &[i64], f: &[Polynomial], seed: u64) -> Result<ResidueDenominator> {
    let s = setup(a, f)?;
    let k = a.len();
    let origin = Support::new(k, vec![vec![0; k]]);
    let prop = delta_exponents(&origin, a, &s.supports).ok();
    let mut family = vec![origin.union(&Support::new(k, vec![a.to_vec()]))];
    family.extend(s.supports.iter().cloned());
    let e0 = exponent_e(&family).ok();
    let exps = s
        .facets
        .iter()
        .map(|(w, _, idx, face_e)| {
            let closed = BigInt::from(-dot(a, w).min(0)) * idx;
            let from_prop = match (&prop, face_e, &e0) {
                (Some(de), Some(fe), Some(e0)) => {
                    let delta = de
                        .facets
                        .iter()
                        .find(|fx| fx.ambient_normal.as_deref() == Some(w.as_slice()))
                        .map(|fx| fx.delta.clone())
                        .unwrap_or_else(BigInt::zero);
                    // back to an exponent of R_w^{e_w}; not integral means disagreement
                    let num = delta * e0;
                    Some(if (&num % fe).is_zero() { num / fe } else { BigInt::from(-1) })
                }
                _ => None,
            };
            (closed, from_prop)
        })
        .collect();
    finish(DenominatorKind::Factorization, a, &s, exps, seed)
}

/// Per-facet `(ours, cds)` exponents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenominatorComparison {
    pub shifts: Vec<Vec<i64>>,
    pub facets: Vec<(Vec<i64>, i64, BigInt, BigInt)>,
    pub ours_le_cds: bool,
    /// Strictly smaller on every facet with `<a, w> <= 0`.
    pub strict_where_nonpositive: bool,
    /// The closed form agrees with the general factorization wherever the latter applies.
    pub factorization_consistent: bool,
    pub ours: ResidueDenominator,
    pub cds: ResidueDenominator,
}

pub fn compare_denominators(a: &[i64], f: &[Polynomial], seed: u64) -> Result<DenominatorComparison> {
    let ours = residue_denominator_ours(a, f, seed)?;
    let cds = residue_denominator_cds(a, f, seed)?;
    let mut facets = Vec::new();
    let mut le = true;
    let mut strict = true;
    for (o, c) in ours.facets.iter().zip(&cds.facets) {
        debug_assert_eq!(o.normal, c.normal);
        le &= o.exponent <= c.exponent;
        if o.a_dot <= 0 {
            strict &= o.exponent < c.exponent;
        }
        facets.push((o.normal.clone(), o.a_dot, o.exponent.clone(), c.exponent.clone()));
    }
    let factorization_consistent =
        ours.facets.iter().all(|fd| fd.factorization_exponent.as_ref().map_or(true, |x| *x == fd.exponent));
    Ok(DenominatorComparison {
        shifts: ours.shifts.clone(),
        facets,
        ours_le_cds: le,
        strict_where_nonpositive: strict,
        factorization_consistent,
        ours,
        cds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_polynomial;

    fn parse(s: &str, v: &[&str]) -> Polynomial {
        parse_polynomial(s, &v.iter().map(|x| x.to_string()).collect::<Vec<_>>()).unwrap()
    }

    fn cds_system() -> Vec<Polynomial> {
        let v = ["s", "t"];
        vec![parse("2*s + 3*s*t - 5*t^2", &v), parse("7*t - s*t + 4*s^2", &v)]
    }

    #[test]
    fn assumption_violation_is_reported() {
        // (1, 0) lies between 0 and (2, 0)
        let v = ["s", "t"];
        let f = [parse("1 + s^2", &v), parse("1 + t", &v)];
        assert!(matches!(residue_denominator_cds(&[0, 0], &f, 1), Err(Error::Assumption(_))));
    }

    #[test]
    fn zero_exponent_gives_plain_indices() {
        let v = ["s", "t"];
        let f = [parse("1 + 2*s + 3*t", &v), parse("5 - s + 7*t + s*t", &v)];
        let cds = residue_denominator_cds(&[0, 0], &f, 1).unwrap();
        assert!(cds.facets.iter().all(|fd| fd.exponent == fd.index));
        let ours = residue_denominator_ours(&[0, 0], &f, 1).unwrap();
        assert!(ours.facets.iter().all(|fd| fd.exponent.is_zero()));
        assert_eq!(ours.product, Rational::from_integer(1.into()));
        assert_eq!(cds.shifts, vec![vec![1, 1], vec![1, 1]]);
    }

    #[test]
    fn cds_supports_compare() {
        // the cds supports contain every lattice point of their triangles
        let f = cds_system();
        let cmp = compare_denominators(&[2, 0], &f, 3).unwrap();
        assert!(cmp.ours_le_cds);
        assert!(cmp.strict_where_nonpositive);
        assert!(cmp.factorization_consistent);
        assert!(cmp.ours.total_exponent < cmp.cds.total_exponent);
        for (w, adot, o, c) in &cmp.facets {
            let closed = if *adot <= 0 { BigInt::from(1 - adot) } else { BigInt::zero() };
            let idx = &cmp.cds.facets.iter().find(|fd| &fd.normal == w).unwrap().index;
            assert_eq!(*c, closed * idx);
            assert!(o <= c);
        }
    }
}
