//! Essential subfamilies and the exponents `e`, `d`, `mu_w`, `delta_w`, `delta_A'`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::hull::{convex_hull, face_data, minkowski_sum_all, Facet};
use super::lattice::{difference_lattice, primitive, IntegerLattice, LatticeIndex};
use super::mixed::{InclusionExclusion, MixedVolumeStrategy};
use super::mixed::to_lattice_coordinates;
use crate::error::{Error, Result};
use crate::poly::{Rational, Support};

fn dim_of(supports: &[Support]) -> Result<usize> {
    supports.first().map(|s| s.dim()).ok_or_else(|| Error::Invalid("empty support family".into()))
}

/// `L(B_i : i in idx)`, the lattice spanned by within-support differences.
pub fn family_lattice(supports: &[Support], idx: &[usize]) -> Result<IntegerLattice> {
    let k = dim_of(supports)?;
    let chosen: Vec<Support> = idx.iter().map(|&i| supports[i].clone()).filter(|s| !s.is_empty()).collect();
    if chosen.is_empty() {
        return Ok(IntegerLattice::zero(k));
    }
    Ok(difference_lattice(&chosen)?.0)
}

/// Every subset `I` with `rank L(I) = #I - 1` and `rank L(J) >= #J` for proper `J`.
pub fn essential_subsets(supports: &[Support]) -> Result<Vec<Vec<usize>>> {
    let n = supports.len();
    if n > 16 {
        return Err(Error::ResourceLimit("too many supports for subset enumeration".into()));
    }
    let mut rank = vec![0usize; 1 << n];
    for mask in 1usize..(1 << n) {
        let idx: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
        rank[mask] = family_lattice(supports, &idx)?.rank();
    }
    let mut out = Vec::new();
    for mask in 1usize..(1 << n) {
        let size = mask.count_ones() as usize;
        if rank[mask] + 1 != size {
            continue;
        }
        // proper nonempty submasks
        let mut sub = (mask - 1) & mask;
        let mut ok = true;
        while sub > 0 {
            if rank[sub] < sub.count_ones() as usize {
                ok = false;
                break;
            }
            sub = (sub - 1) & mask;
        }
        if ok {
            out.push((0..n).filter(|i| mask & (1 << i) != 0).collect());
        }
    }
    Ok(out)
}

/// The unique essential subfamily (containing `anchor` when given).
pub fn essential_subfamily(supports: &[Support], anchor: Option<usize>) -> Result<Vec<usize>> {
    let all = essential_subsets(supports)?;
    let cands: Vec<Vec<usize>> = match anchor {
        Some(a) => all.into_iter().filter(|s| s.contains(&a)).collect(),
        None => all,
    };
    match cands.len() {
        0 => Err(Error::NoEssentialSubfamily("none".into())),
        1 => Ok(cands.into_iter().next().expect("one candidate")),
        _ => Err(Error::NoEssentialSubfamily("not unique".into())),
    }
}

/// `e` for a family whose essential subfamily is `essential`.
pub fn exponent_e_with(supports: &[Support], essential: &[usize]) -> Result<BigInt> {
    let all: Vec<usize> = (0..supports.len()).collect();
    let l = family_lattice(supports, &all)?;
    let li = family_lattice(supports, essential)?;
    let (sat, proj) = l.adapted_split(&li)?;
    let c = l.rank() - sat.len();
    if c == 0 {
        return Ok(BigInt::one());
    }
    let rest: Vec<usize> = all.iter().copied().filter(|i| !essential.contains(i)).collect();
    if rest.len() != c {
        return Err(Error::Invalid(format!(
            "{} non-essential supports in a complement of rank {}",
            rest.len(),
            c
        )));
    }
    let coords = to_lattice_coordinates(&rest.iter().map(|&i| supports[i].clone()).collect::<Vec<_>>(), &l)?;
    let projected: Vec<Support> = coords
        .iter()
        .map(|s| {
            let pts = s
                .points()
                .iter()
                .map(|p| {
                    (0..c)
                        .map(|j| {
                            let v = p.iter().enumerate().fold(BigInt::zero(), |acc, (i, &x)| acc + proj.get(i, j) * x);
                            v.to_i64().expect("projection fits i64")
                        })
                        .collect()
                })
                .collect();
            Support::new(c, pts)
        })
        .collect();
    InclusionExclusion.compute(&projected)
}

pub fn exponent_e(supports: &[Support]) -> Result<BigInt> {
    let ess = essential_subfamily(supports, None)?;
    exponent_e_with(supports, &ess)
}

/// `[sat(L_I) : L_I]`, the saturation taken inside `L(B_0, ..., B_s)`.
pub fn saturation_index(supports: &[Support], essential: &[usize]) -> Result<BigInt> {
    let all: Vec<usize> = (0..supports.len()).collect();
    let l = family_lattice(supports, &all)?;
    let li = family_lattice(supports, essential)?;
    finite(li.saturate_in(&l)?.index_of(&li)?)
}

/// `d = [Z^k : L(A_0,...,A_k)] [sat(L_I) : L_I] e`.
///
/// The middle factor is 1 unless the essential lattice is not saturated in `L`; without it the
/// count of roots `d deg_{f_0} Res` comes out short.
pub fn exponent_d(supports: &[Support]) -> Result<BigInt> {
    let k = dim_of(supports)?;
    let all: Vec<usize> = (0..supports.len()).collect();
    let l = family_lattice(supports, &all)?;
    let index = match IntegerLattice::full(k).index_of(&l)? {
        LatticeIndex::Finite(x) => x,
        LatticeIndex::Infinite => {
            return Err(Error::Degenerate("L(A_0, ..., A_k) is not of full rank".into()));
        }
    };
    let ess = essential_subfamily(supports, None)?;
    Ok(index * saturation_index(supports, &ess)? * exponent_e_with(supports, &ess)?)
}

/// Facet of `P_1 + ... + P_j` with its exponent data.
#[derive(Clone, Debug)]
pub struct FacetExponent {
    /// Primitive inward normal in the coordinates of `L(A_0, ..., A_j)`.
    pub normal: Vec<i64>,
    /// Primitive inward normal in `Z^k`, when `L(A_0, ..., A_j)` has full rank.
    pub ambient_normal: Option<Vec<i64>>,
    pub mu: i64,
    /// Face supports `A_i^w` (ambient coordinates) for the essential members.
    pub faces: Vec<Support>,
    /// `[w^perp : L(A_1^w, ..., A_j^w)]` inside `L(A_0, ..., A_j)`.
    pub face_index: BigInt,
    /// `e` of the face family; `None` when it has no unique essential subfamily (resultant 1).
    pub face_e: Option<BigInt>,
    pub delta: BigInt,
    /// The same exponent with `H^w` and the index taken in `Z^k`.
    pub ambient_delta: Option<Rational>,
}

impl FacetExponent {
    pub fn agrees_with_ambient_form(&self) -> Option<bool> {
        self.ambient_delta.as_ref().map(|d| *d == Rational::from_integer(self.delta.clone()))
    }
}

#[derive(Clone, Debug)]
pub struct DeltaExponents {
    /// Indices (into `A_0, A_1, ..., A_k`) of the essential subfamily; starts with 0.
    pub essential: Vec<usize>,
    pub delta_prime: BigInt,
    pub facets: Vec<FacetExponent>,
}

fn exact_integer(num: BigInt, den: &BigInt, what: &str) -> Result<BigInt> {
    let (q, r) = num.div_rem(den);
    if !r.is_zero() {
        return Err(Error::NonIntegralExponent(format!("{what} = {num}/{den}")));
    }
    Ok(q)
}

fn finite(i: LatticeIndex) -> Result<BigInt> {
    i.finite().cloned().ok_or_else(|| Error::Degenerate("infinite lattice index".into()))
}

fn min_dot(s: &Support, w: &[i64]) -> i64 {
    s.points().iter().map(|p| p.iter().zip(w).map(|(a, b)| a * b).sum::<i64>()).min().expect("nonempty support")
}

/// Maps a functional on lattice coordinates back to a primitive ambient functional.
fn ambient_functional(l: &IntegerLattice, w: &[i64]) -> Option<Vec<i64>> {
    if l.rank() != l.ambient_dim() {
        return None;
    }
    // solve B x = w for the column vector x
    let b: Vec<Vec<Rational>> =
        l.basis().iter().map(|r| r.iter().map(|x| Rational::from_integer(x.clone())).collect()).collect();
    let rhs: Vec<Vec<Rational>> = w.iter().map(|&x| vec![crate::poly::rat(x)]).collect();
    let x = crate::linalg::solve_rational(&b, &rhs)?;
    let den = x.iter().fold(BigInt::one(), |acc, r| acc.lcm(r[0].denom()));
    let ints: Vec<i64> = x.iter().map(|r| (r[0].numer() * (&den / r[0].denom())).to_i64().expect("fits")).collect();
    Some(primitive(&ints))
}

/// Prop.-style exponents for `A_0 = A' U {a}` against `A_1, ..., A_k`.
pub fn delta_exponents(a_prime: &Support, a: &[i64], others: &[Support]) -> Result<DeltaExponents> {
    let k = a_prime.dim();
    let a0 = a_prime.union(&Support::new(k, vec![a.to_vec()]));
    let mut family = vec![a0.clone()];
    family.extend(others.iter().cloned());
    let ess = essential_subfamily(&family, Some(0))?;
    let members: Vec<usize> = ess.iter().copied().filter(|&i| i != 0).collect();

    let l0 = family_lattice(&family, &ess)?;
    let mut prime_family = family.clone();
    prime_family[0] = a_prime.clone();
    let l_prime = family_lattice(&prime_family, &ess)?;
    let ess_family: Vec<Support> = ess.iter().map(|&i| family[i].clone()).collect();
    let ess_prime: Vec<Support> = ess.iter().map(|&i| prime_family[i].clone()).collect();
    let e0 = exponent_e(&ess_family)?;
    let e_prime = exponent_e(&ess_prime)?;
    let delta_prime = exact_integer(e_prime * finite(l0.index_of(&l_prime)?)?, &e0, "delta_A'")?;

    let mut facets = Vec::new();
    if !members.is_empty() {
        // everything in coordinates of L(A_0, ..., A_j), relative to a point of A_0
        let origin = a0.points()[0].clone();
        let to_coords = |s: &Support| -> Result<Support> {
            let pts = s
                .points()
                .iter()
                .map(|p| {
                    let d: Vec<i64> = p.iter().zip(&origin).map(|(x, y)| x - y).collect();
                    l0.coordinates_i64(&d).ok_or(Error::NotContained)
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(Support::new(l0.rank(), pts))
        };
        let j = l0.rank();
        let local: Vec<Support> = members
            .iter()
            .map(|&i| {
                let s = &family[i];
                let b = s.points()[0].clone();
                to_coords(&s.translate(&b.iter().map(|x| -x).collect::<Vec<_>>()).translate(&origin))
            })
            .collect::<Result<_>>()?;
        let a0_local = to_coords(&a0)?;
        let ap_local = to_coords(a_prime)?;
        let refs: Vec<&Support> = local.iter().collect();
        let sum = minkowski_sum_all(&refs, j)?;
        let hull = convex_hull(&sum)?;
        if !hull.is_full_dimensional() {
            return Err(Error::Degenerate("P_1 + ... + P_j is not full dimensional".into()));
        }
        let ambient_index = finite(IntegerLattice::full(k).index_of(&family_lattice(&family, &(0..family.len()).collect::<Vec<_>>())?)?).ok();
        let e_all = exponent_e(&family).ok();
        for Facet { normal, .. } in &hull.facets {
            let mu = min_dot(&ap_local, normal) - min_dot(&a0_local, normal);
            let faces_local: Vec<Support> =
                local.iter().map(|s| face_data(s, normal).map(|f| f.0)).collect::<Result<_>>()?;
            let perp = IntegerLattice::full(j).orthogonal_sublattice(normal);
            let lf = family_lattice(&faces_local, &(0..faces_local.len()).collect::<Vec<_>>())?;
            let face_index = finite(perp.index_of(&lf)?)?;
            let face_e = essential_subfamily(&faces_local, None).ok().map(|ess| exponent_e_with(&faces_local, &ess)).transpose()?;
            let delta = match &face_e {
                Some(e) => exact_integer(BigInt::from(mu) * e * &face_index, &e0, "delta_w")?,
                None => BigInt::zero(),
            };
            let ambient_normal = ambient_functional(&l0, normal);
            let faces: Vec<Support> = match &ambient_normal {
                Some(w) => members.iter().map(|&i| face_data(&family[i], w).map(|f| f.0)).collect::<Result<_>>()?,
                None => Vec::new(),
            };
            let ambient_delta = match (&ambient_normal, &face_e, &ambient_index, &e_all) {
                (Some(w), Some(fe), Some(idx), Some(ea)) if !idx.is_zero() && !ea.is_zero() => {
                    let mu_amb = min_dot(a_prime, w) - min_dot(&a0, w);
                    let h = IntegerLattice::full(k).orthogonal_sublattice(w);
                    let lfa = family_lattice(&faces, &(0..faces.len()).collect::<Vec<_>>())?;
                    let hi = h.index_of(&lfa).ok().and_then(|x| x.finite().cloned());
                    hi.map(|hi| Rational::new(fe * BigInt::from(mu_amb) * hi, idx * ea))
                }
                _ => None,
            };
            if mu < 0 || delta.is_negative() {
                return Err(Error::NonIntegralExponent(format!("negative exponent at normal {normal:?}")));
            }
            facets.push(FacetExponent {
                normal: normal.clone(),
                ambient_normal,
                mu,
                faces,
                face_index,
                face_e,
                delta,
                ambient_delta,
            });
        }
    }
    Ok(DeltaExponents { essential: ess, delta_prime, facets })
}
