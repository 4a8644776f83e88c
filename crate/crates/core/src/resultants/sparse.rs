//! Sparse resultants at rational specializations, exact up to sign.
//!
//! The Canny–Emiris determinant `D(f_0)` equals `E(f_1..f_r) * Res(f_0, ..)` with `E` free of
//! the `f_0` coefficients. Dividing by `D(t^b)` for a vertex `b` of `A_0` cancels `E`, and
//! `Res(t^b, f_1, .., f_r)` is a product of facet resultants (Poisson formula for a monomial).

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use super::ce::CeContext;
use crate::error::{Error, Result};
use crate::latgeom::family::{essential_subfamily, exponent_e_with, family_lattice, saturation_index};
use crate::latgeom::hull::{convex_hull, face_data, minkowski_sum_all};
use crate::latgeom::lattice::IntegerLattice;
use crate::linalg::{det_rational, pencil_det};
use crate::poly::{pow_rational, ExponentVector, Polynomial, Rational, Support, UnivariatePolynomial};
use crate::random::{seeded, SeededRng};

/// Supports `A_0, .., A_m` in `Z^k` with polynomials `support(f_i) ⊆ A_i`.
#[derive(Clone, Debug)]
pub struct ResultantProblem {
    pub supports: Vec<Support>,
    pub polys: Vec<Polynomial>,
}

impl ResultantProblem {
    pub fn new(supports: Vec<Support>, polys: Vec<Polynomial>) -> Result<Self> {
        if supports.len() != polys.len() || supports.is_empty() {
            return Err(Error::DimensionMismatch("one support per polynomial is required".into()));
        }
        let k = supports[0].dim();
        for (s, f) in supports.iter().zip(&polys) {
            if s.dim() != k || f.arity() != k {
                return Err(Error::DimensionMismatch("supports and polynomials differ in arity".into()));
            }
            if s.is_empty() {
                return Err(Error::Invalid("empty support".into()));
            }
            if !f.support().is_subset(s) {
                return Err(Error::Invalid("polynomial not supported in its slot".into()));
            }
        }
        Ok(ResultantProblem { supports, polys })
    }

    /// Uses the actual supports of the polynomials.
    pub fn from_polys(polys: Vec<Polynomial>) -> Result<Self> {
        let supports = polys.iter().map(|f| f.support()).collect();
        Self::new(supports, polys)
    }

    pub fn dim(&self) -> usize {
        self.supports[0].dim()
    }
}

/// The essential subfamily rewritten in coordinates of its own lattice.
#[derive(Clone, Debug)]
pub struct ReducedFamily {
    /// Indices of the essential members in the original problem.
    pub essential: Vec<usize>,
    pub lattice: IntegerLattice,
    /// Per member, the point of `A_i` sent to the origin.
    pub anchors: Vec<Vec<i64>>,
    pub supports: Vec<Support>,
    pub polys: Vec<Polynomial>,
}

impl ReducedFamily {
    pub fn rank(&self) -> usize {
        self.lattice.rank()
    }

    /// Rewrites a polynomial living in slot `member` (after multiplying by `t^-anchor`).
    pub fn map_polynomial(&self, member: usize, f: &Polynomial) -> Result<Polynomial> {
        let anchor = &self.anchors[member];
        let mut out = Polynomial::zero(self.rank());
        for (e, c) in f.terms() {
            let d: Vec<i64> = e.0.iter().zip(anchor).map(|(a, b)| a - b).collect();
            let coords = self.lattice.coordinates_i64(&d).ok_or(Error::NotContained)?;
            out.add_term(ExponentVector(coords), c.clone());
        }
        Ok(out)
    }
}

/// Outcome of reducing to the essential subfamily.
#[derive(Clone, Debug)]
pub enum Reduction {
    /// No unique essential subfamily: the resultant is the constant 1.
    Trivial,
    Reduced(ReducedFamily),
}

/// Reduces to the unique essential subfamily (containing `anchor` when given).
///
/// The distinguished member (`anchor`, or the first essential index) comes first.
pub fn reduce(problem: &ResultantProblem, anchor: Option<usize>) -> Result<Reduction> {
    let mut ess = match essential_subfamily(&problem.supports, anchor) {
        Ok(e) => e,
        Err(Error::NoEssentialSubfamily(_)) if anchor.is_none() => return Ok(Reduction::Trivial),
        Err(e) => return Err(e),
    };
    if let Some(a) = anchor {
        ess.retain(|&i| i != a);
        ess.insert(0, a);
    }
    let lattice = family_lattice(&problem.supports, &ess)?;
    let mut red = ReducedFamily {
        essential: ess.clone(),
        lattice,
        anchors: ess.iter().map(|&i| problem.supports[i].points()[0].clone()).collect(),
        supports: Vec::new(),
        polys: Vec::new(),
    };
    for (m, &i) in ess.iter().enumerate() {
        let anchor = &red.anchors[m];
        let pts = problem.supports[i]
            .points()
            .iter()
            .map(|p| {
                let d: Vec<i64> = p.iter().zip(anchor).map(|(a, b)| a - b).collect();
                red.lattice.coordinates_i64(&d).ok_or(Error::NotContained)
            })
            .collect::<Result<Vec<_>>>()?;
        red.supports.push(Support::new(red.lattice.rank(), pts));
        let f = red.map_polynomial(m, &problem.polys[i])?;
        red.polys.push(f);
    }
    Ok(Reduction::Reduced(red))
}

/// Facet data of `P_1 + .. + P_r` for a reduced family.
struct FacetTerm {
    normal: Vec<i64>,
    faces: Vec<Support>,
    face_polys: Vec<Polynomial>,
}

fn facets_of_others(supports: &[Support], polys: &[Polynomial]) -> Result<Vec<FacetTerm>> {
    let r = supports[0].dim();
    let refs: Vec<&Support> = supports[1..].iter().collect();
    let hull = convex_hull(&minkowski_sum_all(&refs, r)?)?;
    let mut out = Vec::new();
    for f in &hull.facets {
        let mut faces = Vec::new();
        let mut face_polys = Vec::new();
        for (s, p) in supports[1..].iter().zip(&polys[1..]) {
            let (face, _) = face_data(s, &f.normal)?;
            face_polys.push(p.restrict(&face));
            faces.push(face);
        }
        out.push(FacetTerm { normal: f.normal.clone(), faces, face_polys });
    }
    Ok(out)
}

fn min_dot(s: &Support, w: &[i64]) -> i64 {
    s.points().iter().map(|p| p.iter().zip(w).map(|(a, b)| a * b).sum::<i64>()).min().expect("nonempty")
}

/// Exponent of the face resultant inside `Res(t^b, ..)` per unit of `mu`: the `d` of the face
/// family taken relative to `H^w`.
fn face_weight(faces: &[Support], normal: &[i64]) -> Result<Option<BigInt>> {
    let idx: Vec<usize> = (0..faces.len()).collect();
    let ess = match essential_subfamily(faces, None) {
        Ok(e) => e,
        Err(Error::NoEssentialSubfamily(_)) => return Ok(None),
        Err(e) => return Err(e),
    };
    let e = exponent_e_with(faces, &ess)?;
    let h = IntegerLattice::full(normal.len()).orthogonal_sublattice(normal);
    let lw = family_lattice(faces, &idx)?;
    // a face lattice of lower rank has zero mixed volume in H^w: no factor
    let index = match h.index_of(&lw)?.finite() {
        Some(i) => i.clone(),
        None => return Ok(None),
    };
    Ok(Some(e * index * saturation_index(faces, &ess)?))
}

/// `Res(t^b, f_1, .., f_r)` for a reduced family (index one, essential).
fn monomial_resultant(red: &ReducedFamily, b: &[i64], rng: &mut SeededRng, depth: usize) -> Result<Rational> {
    let mut acc = Rational::one();
    for ft in facets_of_others(&red.supports, &red.polys)? {
        let mu = b.iter().zip(&ft.normal).map(|(x, y)| x * y).sum::<i64>() - min_dot(&red.supports[0], &ft.normal);
        if mu == 0 {
            continue;
        }
        let weight = match face_weight(&ft.faces, &ft.normal)? {
            Some(w) => w,
            None => continue,
        };
        let problem = ResultantProblem::new(ft.faces.clone(), ft.face_polys.clone())?;
        let value = resultant_rec(&problem, None, rng, depth + 1)?;
        let exp = (weight * BigInt::from(mu)).to_i64().ok_or_else(|| Error::ResourceLimit("exponent overflow".into()))?;
        acc *= pow_rational(&value, exp);
    }
    Ok(acc)
}

fn resultant_rec(problem: &ResultantProblem, anchor: Option<usize>, rng: &mut SeededRng, depth: usize) -> Result<Rational> {
    if depth > 8 {
        return Err(Error::ResourceLimit("facet recursion too deep".into()));
    }
    let red = match reduce(problem, anchor)? {
        Reduction::Trivial => return Ok(Rational::one()),
        Reduction::Reduced(r) => r,
    };
    reduced_resultant(&red, rng, depth)
}

fn reduced_resultant(red: &ReducedFamily, rng: &mut SeededRng, depth: usize) -> Result<Rational> {
    let r = red.rank();
    if r == 0 {
        return Ok(red.polys[0].coefficient(&[]));
    }
    let b = convex_hull(&red.supports[0])?.vertices[0].clone();
    let monomial = Polynomial::monomial(r, ExponentVector(b.clone()), Rational::one());
    for _ in 0..super::ce::MAX_LIFTING_RETRIES {
        let ctx = CeContext::build(&red.supports, rng)?;
        let d_f = det_rational(&ctx.matrix(&red.polys).entries);
        let mut with_monomial = red.polys.clone();
        with_monomial[0] = monomial.clone();
        let d_b = det_rational(&ctx.matrix(&with_monomial).entries);
        if d_b.is_zero() {
            // the extraneous factor vanished for this lifting
            continue;
        }
        let res_b = monomial_resultant(red, &b, rng, depth)?;
        return Ok(d_f / d_b * res_b);
    }
    Err(Error::Degenerate("extraneous factor vanishes for every lifting".into()))
}

/// `Res_{A_0..A_m}(f_0, .., f_m)` up to sign, for the irreducible resultant of the essential
/// subfamily (1 when there is none or it is not unique).
pub fn sparse_resultant(problem: &ResultantProblem, seed: u64) -> Result<Rational> {
    resultant_rec(problem, None, &mut seeded(seed), 0)
}

/// Canny–Emiris route; errors when the value is zero.
pub fn ce_resultant(problem: &ResultantProblem, seed: u64) -> Result<Rational> {
    let v = sparse_resultant(problem, seed)?;
    if v.is_zero() {
        return Err(Error::Degenerate("resultant vanishes at this specialization".into()));
    }
    Ok(v)
}

/// `X(T) = Res(q + T p, f_1, .., f_k)` up to a `T`-independent constant.
#[derive(Clone, Debug)]
pub struct PencilResult {
    pub x: UnivariatePolynomial,
    pub essential: Vec<usize>,
    pub matrix_size: usize,
    pub f0_rows: usize,
}

/// The resultant pencil for slot 0 of `problem` (its polynomial is ignored).
pub fn resultant_pencil(problem: &ResultantProblem, q: &Polynomial, p: &Polynomial, seed: u64) -> Result<PencilResult> {
    let a0 = &problem.supports[0];
    if !q.support().is_subset(a0) || !p.support().is_subset(a0) {
        return Err(Error::Invalid("q and p must be supported in A_0".into()));
    }
    let red = match reduce(problem, Some(0))? {
        Reduction::Reduced(r) => r,
        Reduction::Trivial => unreachable!("anchored reduction is never trivial"),
    };
    let qm = red.map_polynomial(0, q)?;
    let pm = red.map_polynomial(0, p)?;
    let r = red.rank();
    if r == 0 {
        let x = UnivariatePolynomial::new(vec![qm.coefficient(&[]), pm.coefficient(&[])]);
        if x.coeff(0).is_zero() {
            return Err(Error::ZeroDivisor("X(0) = 0".into()));
        }
        return Ok(PencilResult { x, essential: red.essential, matrix_size: 1, f0_rows: 1 });
    }
    let mut rng = seeded(seed);
    let b = convex_hull(&red.supports[0])?.vertices[0].clone();
    let monomial = Polynomial::monomial(r, ExponentVector(b), Rational::one());
    for _ in 0..super::ce::MAX_LIFTING_RETRIES {
        let ctx = CeContext::build(&red.supports, &mut rng)?;
        let (m0, m1) = ctx.pencil_matrices(&qm, &pm, &red.polys[1..]);
        let x = pencil_det(&m0, &m1);
        if x.coeff(0).is_zero() {
            let mut with_monomial = red.polys.clone();
            with_monomial[0] = monomial.clone();
            if det_rational(&ctx.matrix(&with_monomial).entries).is_zero() {
                continue;
            }
            return Err(Error::ZeroDivisor("Res(q, f) = 0: q vanishes at a common root".into()));
        }
        return Ok(PencilResult { x, essential: red.essential, matrix_size: ctx.size(), f0_rows: ctx.rows_of(0) });
    }
    Err(Error::Degenerate("extraneous factor vanishes for every lifting".into()))
}

/// `sum_a p_a dRes/dc_{0a}(q, f)`: the linear coefficient of the pencil.
pub fn directional_derivative(problem: &ResultantProblem, q: &Polynomial, p: &Polynomial, seed: u64) -> Result<(Rational, Rational)> {
    let x = resultant_pencil(problem, q, p, seed)?.x;
    Ok((x.coeff(1), x.coeff(0)))
}

/// Resultant of the face system `(f_1^w, .., f_k^w)` with `A_i^w` the faces of the given supports.
pub fn facet_resultant(supports: &[Support], polys: &[Polynomial], w: &[i64], seed: u64) -> Result<Rational> {
    let mut faces = Vec::new();
    let mut fpolys = Vec::new();
    for (s, f) in supports.iter().zip(polys) {
        let (face, _) = face_data(s, w)?;
        fpolys.push(f.restrict(&face));
        faces.push(face);
    }
    sparse_resultant(&ResultantProblem::new(faces, fpolys)?, seed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_polynomial, rat};

    fn vars(n: &[&str]) -> Vec<String> {
        n.iter().map(|s| s.to_string()).collect()
    }

    fn up_to_sign(a: &Rational, b: &Rational) -> bool {
        a == b || *a == -b.clone()
    }

    #[test]
    fn sylvester_values() {
        let v = vars(&["x"]);
        let f0 = parse_polynomial("x^2 - 1", &v).unwrap();
        let f1 = parse_polynomial("x - 2", &v).unwrap();
        let r = sparse_resultant(&ResultantProblem::from_polys(vec![f0, f1]).unwrap(), 1).unwrap();
        assert!(up_to_sign(&r, &rat(3)));
        let f0 = parse_polynomial("2 + 3*x", &v).unwrap();
        let f1 = parse_polynomial("5 + 7*x", &v).unwrap();
        let r = sparse_resultant(&ResultantProblem::from_polys(vec![f0, f1]).unwrap(), 1).unwrap();
        assert!(up_to_sign(&r, &rat(-1)));
    }

    #[test]
    fn common_root_gives_zero() {
        let v = vars(&["x", "y"]);
        let f = parse_polynomial("x + y - 2", &v).unwrap();
        let g = parse_polynomial("x - y", &v).unwrap();
        let h = parse_polynomial("x*y - 1", &v).unwrap();
        let r = sparse_resultant(&ResultantProblem::from_polys(vec![h, f, g]).unwrap(), 2).unwrap();
        assert!(r.is_zero());
    }

    #[test]
    fn pencil_with_linear_root() {
        let v = vars(&["t"]);
        let f1 = parse_polynomial("t - 2", &v).unwrap();
        let q = parse_polynomial("1", &v).unwrap();
        let p = parse_polynomial("t", &v).unwrap();
        let a0 = Support::new(1, vec![vec![0], vec![1]]);
        let prob = ResultantProblem::new(vec![a0, f1.support()], vec![q.clone(), f1]).unwrap();
        let x = resultant_pencil(&prob, &q, &p, 3).unwrap().x;
        assert_eq!(x.log_derivative_at_zero().unwrap(), rat(2));
        assert_eq!(x.degree(), Some(1));
        let (c1, c0) = directional_derivative(&prob, &q, &q, 3).unwrap();
        assert_eq!(c1, c0);
    }

    #[test]
    fn degree_two_sylvester_is_normalized() {
        let v = vars(&["x"]);
        // Res(a x^2 + b x + c, x - r) = a r^2 + b r + c
        let f0 = parse_polynomial("3*x^2 - 5*x + 7", &v).unwrap();
        let f1 = parse_polynomial("x - 4", &v).unwrap();
        let r = sparse_resultant(&ResultantProblem::from_polys(vec![f0, f1]).unwrap(), 9).unwrap();
        assert!(up_to_sign(&r, &rat(3 * 16 - 20 + 7)));
        // and with both quadratic: Res = a^2 (r1 - s1)(r1 - s2)(r2 - s1)(r2 - s2)
        let f0 = parse_polynomial("x^2 - 3*x + 2", &v).unwrap();
        let f1 = parse_polynomial("2*x^2 - 14*x + 24", &v).unwrap();
        let r = sparse_resultant(&ResultantProblem::from_polys(vec![f0, f1]).unwrap(), 9).unwrap();
        // roots {1, 2} and {3, 4}; Res = 1^2 * 2^2 * (1-3)(1-4)(2-3)(2-4) = 4 * 12
        assert!(up_to_sign(&r, &rat(48)));
    }
}
