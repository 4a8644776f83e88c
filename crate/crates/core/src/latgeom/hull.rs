use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::lattice::{difference_lattice, IntegerLattice};
use crate::error::{Error, Result};
use crate::poly::Support;

pub const MAX_HULL_DIM: usize = 4;

/// A facet `{x : <normal, x> = -offset}` with primitive inward normal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Facet {
    pub normal: Vec<i64>,
    pub offset: i64,
}

impl Facet {
    /// `<normal, x> + offset`, nonnegative on the polytope.
    pub fn slack(&self, x: &[i64]) -> i64 {
        self.normal.iter().zip(x).map(|(a, b)| a * b).sum::<i64>() + self.offset
    }
}

/// Convex hull of a lattice point set.
///
/// When the points do not span the ambient space, facets are reported in the coordinates of
/// `span_basis` (a basis of the saturated lattice parallel to the affine span) for points
/// written relative to `base_point`.
#[derive(Clone, Debug)]
pub struct Polytope {
    pub ambient_dim: usize,
    pub dim: usize,
    pub vertices: Vec<Vec<i64>>,
    pub facets: Vec<Facet>,
    pub base_point: Vec<i64>,
    pub span_basis: Vec<Vec<i64>>,
    /// `dim!` times the volume in the span lattice.
    pub normalized_volume: BigInt,
}

impl Polytope {
    pub fn is_full_dimensional(&self) -> bool {
        self.dim == self.ambient_dim
    }
}

struct SimplexFacet {
    verts: Vec<usize>,
    normal: Vec<i128>,
    offset: i128,
}

fn dot(a: &[i128], b: &[i128]) -> i128 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn det_i128(m: &[Vec<i128>]) -> i128 {
    let n = m.len();
    match n {
        0 => 1,
        1 => m[0][0],
        2 => m[0][0] * m[1][1] - m[0][1] * m[1][0],
        _ => {
            let mut acc = 0i128;
            for j in 0..n {
                if m[0][j] == 0 {
                    continue;
                }
                let minor: Vec<Vec<i128>> =
                    m[1..].iter().map(|r| r.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, x)| *x).collect()).collect();
                let t = m[0][j] * det_i128(&minor);
                acc += if j % 2 == 0 { t } else { -t };
            }
            acc
        }
    }
}

/// Normal of the hyperplane through `pts` (m points in Z^m) via cofactors.
fn hyperplane_normal(pts: &[&[i128]]) -> Vec<i128> {
    let m = pts[0].len();
    let diffs: Vec<Vec<i128>> = pts[1..].iter().map(|p| p.iter().zip(pts[0]).map(|(a, b)| a - b).collect()).collect();
    (0..m)
        .map(|j| {
            let minor: Vec<Vec<i128>> =
                diffs.iter().map(|r| r.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, x)| *x).collect()).collect();
            let d = det_i128(&minor);
            if j % 2 == 0 {
                d
            } else {
                -d
            }
        })
        .collect()
}

fn gcd_i128(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn rank_i128(rows: &[Vec<i128>]) -> usize {
    let q: Vec<Vec<crate::poly::Rational>> =
        rows.iter().map(|r| r.iter().map(|&x| crate::poly::Rational::from_integer(BigInt::from(x))).collect()).collect();
    crate::linalg::rank_rational(&q)
}

/// Hull of points that span `Z^m` affinely; returns simplicial boundary facets.
fn full_hull(pts: &[Vec<i128>]) -> (Vec<SimplexFacet>, Vec<usize>) {
    let m = pts[0].len();
    // initial simplex
    let mut simplex = vec![0usize];
    for (i, p) in pts.iter().enumerate().skip(1) {
        if simplex.len() == m + 1 {
            break;
        }
        let mut rows: Vec<Vec<i128>> = simplex[1..]
            .iter()
            .map(|&s| pts[s].iter().zip(&pts[simplex[0]]).map(|(a, b)| a - b).collect())
            .collect();
        rows.push(p.iter().zip(&pts[simplex[0]]).map(|(a, b)| a - b).collect());
        if rank_i128(&rows) == rows.len() {
            simplex.push(i);
        }
    }
    assert_eq!(simplex.len(), m + 1, "points must span the space");
    // scaled interior point: sum of simplex vertices, compare against (m+1) * x
    let interior: Vec<i128> = (0..m).map(|j| simplex.iter().map(|&s| pts[s][j]).sum()).collect();
    let scale = (m + 1) as i128;
    let make = |verts: Vec<usize>| -> SimplexFacet {
        let refs: Vec<&[i128]> = verts.iter().map(|&v| pts[v].as_slice()).collect();
        let mut normal = hyperplane_normal(&refs);
        let mut offset = dot(&normal, &pts[verts[0]]);
        if dot(&normal, &interior) > scale * offset {
            normal.iter_mut().for_each(|x| *x = -*x);
            offset = -offset;
        }
        SimplexFacet { verts, normal, offset }
    };
    let mut facets: Vec<SimplexFacet> = (0..=m)
        .map(|skip| {
            let mut v: Vec<usize> = simplex.iter().enumerate().filter(|(i, _)| *i != skip).map(|(_, &x)| x).collect();
            v.sort_unstable();
            make(v)
        })
        .collect();
    for (i, p) in pts.iter().enumerate() {
        if simplex.contains(&i) {
            continue;
        }
        let visible: Vec<bool> = facets.iter().map(|f| dot(&f.normal, p) > f.offset).collect();
        if !visible.iter().any(|&v| v) {
            continue;
        }
        let mut ridges: HashMap<Vec<usize>, usize> = HashMap::new();
        for (f, _) in facets.iter().zip(&visible).filter(|(_, v)| **v) {
            for skip in 0..f.verts.len() {
                let r: Vec<usize> = f.verts.iter().enumerate().filter(|(j, _)| *j != skip).map(|(_, &x)| x).collect();
                *ridges.entry(r).or_insert(0) += 1;
            }
        }
        let mut kept: Vec<SimplexFacet> =
            facets.into_iter().zip(&visible).filter(|(_, v)| !**v).map(|(f, _)| f).collect();
        let mut horizon: Vec<Vec<usize>> = ridges.into_iter().filter(|(_, c)| *c == 1).map(|(r, _)| r).collect();
        horizon.sort();
        for mut r in horizon {
            r.push(i);
            r.sort_unstable();
            kept.push(make(r));
        }
        facets = kept;
    }
    (facets, simplex)
}

fn to_i64(x: i128) -> i64 {
    i64::try_from(x).expect("hull coordinate overflow")
}

/// Exact convex hull; ambient dimension at most four.
pub fn convex_hull(s: &Support) -> Result<Polytope> {
    let k = s.dim();
    if k > MAX_HULL_DIM {
        return Err(Error::UnsupportedDimension { dim: k, max: MAX_HULL_DIM });
    }
    if s.is_empty() {
        return Err(Error::Invalid("convex hull of an empty set".into()));
    }
    let (diff, base) = difference_lattice(std::slice::from_ref(s))?;
    let span = diff.saturate_in(&IntegerLattice::full(k))?;
    let m = span.rank();
    let span_basis = span.basis_i64();
    let coords: Vec<Vec<i128>> = s
        .points()
        .iter()
        .map(|p| {
            let d: Vec<i64> = p.iter().zip(&base).map(|(a, b)| a - b).collect();
            span.coordinates_i64(&d).expect("point in its span").into_iter().map(i128::from).collect()
        })
        .collect();
    if m == 0 {
        return Ok(Polytope {
            ambient_dim: k,
            dim: 0,
            vertices: vec![s.points()[0].clone()],
            facets: Vec::new(),
            base_point: base,
            span_basis,
            normalized_volume: BigInt::from(1),
        });
    }
    let (simplices, simplex) = full_hull(&coords);
    // merge coplanar simplices by primitive normal
    let mut merged: BTreeMap<Vec<i64>, i64> = BTreeMap::new();
    for f in &simplices {
        let g = f.normal.iter().fold(0, |acc, &x| gcd_i128(acc, x));
        let omega: Vec<i64> = f.normal.iter().map(|&x| to_i64(-x / g)).collect();
        merged.insert(omega, to_i64(f.offset / g));
    }
    let facets: Vec<Facet> = merged.into_iter().map(|(normal, offset)| Facet { normal, offset }).collect();
    let ambient_facets: Vec<Facet> = if m == k {
        facets
            .iter()
            .map(|f| {
                // span coordinates are offsets from the base point in the standard basis
                let shift: i64 = f.normal.iter().zip(&base).map(|(a, b)| a * b).sum();
                Facet { normal: f.normal.clone(), offset: f.offset - shift }
            })
            .collect()
    } else {
        facets.clone()
    };
    let mut vertices: Vec<Vec<i64>> = Vec::new();
    for (i, c) in coords.iter().enumerate() {
        let tight: Vec<Vec<i128>> = facets
            .iter()
            .filter(|f| f.normal.iter().zip(c).map(|(a, b)| i128::from(*a) * b).sum::<i128>() + i128::from(f.offset) == 0)
            .map(|f| f.normal.iter().map(|&x| i128::from(x)).collect())
            .collect();
        if tight.len() >= m && rank_i128(&tight) == m {
            vertices.push(s.points()[i].clone());
        }
    }
    vertices.sort();
    let p0 = &coords[simplex[0]];
    let mut vol = BigInt::zero();
    for f in &simplices {
        let rows: Vec<Vec<i128>> =
            f.verts.iter().map(|&v| coords[v].iter().zip(p0).map(|(a, b)| a - b).collect()).collect();
        vol += BigInt::from(det_i128(&rows)).abs();
    }
    Ok(Polytope { ambient_dim: k, dim: m, vertices, facets: ambient_facets, base_point: base, span_basis, normalized_volume: vol })
}

/// Normalized volume (`k!` times Euclidean volume) in `Z^k`; zero for lower-dimensional sets.
pub fn normalized_volume(s: &Support) -> Result<BigInt> {
    let p = convex_hull(s)?;
    Ok(if p.is_full_dimensional() { p.normalized_volume } else { BigInt::zero() })
}

pub fn minkowski_sum(p: &Support, q: &Support) -> Result<Support> {
    if p.dim() != q.dim() {
        return Err(Error::DimensionMismatch("Minkowski summands differ in dimension".into()));
    }
    let mut pts = Vec::with_capacity(p.len() * q.len());
    for a in p.points() {
        for b in q.points() {
            pts.push(a.iter().zip(b).map(|(x, y)| x + y).collect());
        }
    }
    Ok(Support::new(p.dim(), pts))
}

/// Minkowski sum of a family, pruned to hull vertices after each step.
pub fn minkowski_sum_all(family: &[&Support], dim: usize) -> Result<Support> {
    let mut acc = Support::new(dim, vec![vec![0; dim]]);
    for s in family {
        acc = minkowski_sum(&acc, s)?;
        acc = Support::new(dim, convex_hull(&acc)?.vertices);
    }
    Ok(acc)
}

/// `(A^w, a_A(w))`: the minimizers of `<w, .>` on `A` and minus the minimum.
pub fn face_data(a: &Support, w: &[i64]) -> Result<(Support, i64)> {
    if w.iter().all(|&x| x == 0) {
        return Err(Error::Invalid("face direction must be nonzero".into()));
    }
    if a.is_empty() {
        return Err(Error::Invalid("face of an empty support".into()));
    }
    let vals: Vec<i64> = a.points().iter().map(|p| p.iter().zip(w).map(|(x, y)| x * y).sum()).collect();
    let min = *vals.iter().min().expect("nonempty");
    let pts = a.points().iter().zip(&vals).filter(|(_, v)| **v == min).map(|(p, _)| p.clone()).collect();
    Ok((Support::new(a.dim(), pts), -min))
}

/// All lattice points of `conv(s)`, sorted.
pub fn lattice_points(s: &Support) -> Result<Vec<Vec<i64>>> {
    let hull = convex_hull(s)?;
    let k = s.dim();
    let lo: Vec<i64> = (0..k).map(|i| s.points().iter().map(|p| p[i]).min().expect("nonempty")).collect();
    let hi: Vec<i64> = (0..k).map(|i| s.points().iter().map(|p| p[i]).max().expect("nonempty")).collect();
    let span = IntegerLattice::from_i64_generators(k, &hull.span_basis);
    let mut out = Vec::new();
    let mut x = lo.clone();
    loop {
        let inside = if hull.is_full_dimensional() {
            hull.facets.iter().all(|f| f.slack(&x) >= 0)
        } else {
            let d: Vec<i64> = x.iter().zip(&hull.base_point).map(|(a, b)| a - b).collect();
            match span.coordinates_i64(&d) {
                Some(c) => hull.facets.iter().all(|f| f.slack(&c) >= 0),
                None => false,
            }
        };
        if inside {
            out.push(x.clone());
        }
        // odometer over the bounding box
        let mut i = 0;
        while i < k {
            if x[i] < hi[i] {
                x[i] += 1;
                break;
            }
            x[i] = lo[i];
            i += 1;
        }
        if i == k {
            break;
        }
    }
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sup(pts: &[&[i64]]) -> Support {
        Support::new(pts[0].len(), pts.iter().map(|p| p.to_vec()).collect())
    }

    #[test]
    fn lattice_points_of_polytopes() {
        let tri = sup(&[&[0, 0], &[2, 0], &[0, 2]]);
        assert_eq!(lattice_points(&tri).unwrap().len(), 6);
        let seg = sup(&[&[0, 0, 0], &[2, 2, 0]]);
        assert_eq!(lattice_points(&seg).unwrap(), vec![vec![0, 0, 0], vec![1, 1, 0], vec![2, 2, 0]]);
        let skew = sup(&[&[0, 0], &[1, 2]]);
        assert_eq!(lattice_points(&skew).unwrap().len(), 2);
        assert_eq!(lattice_points(&sup(&[&[3, -1]])).unwrap(), vec![vec![3, -1]]);
    }

    #[test]
    fn cds_pentagon() {
        let a1 = sup(&[&[1, 0], &[1, 1], &[0, 2]]);
        let a2 = sup(&[&[0, 1], &[1, 1], &[2, 0]]);
        let p = convex_hull(&minkowski_sum(&a1, &a2).unwrap()).unwrap();
        let mut expected = vec![vec![0, 3], vec![1, 3], vec![3, 1], vec![3, 0], vec![1, 1]];
        expected.sort();
        assert_eq!(p.vertices, expected);
        assert_eq!(p.facets.len(), 5);
        let normals: Vec<Vec<i64>> = p.facets.iter().map(|f| f.normal.clone()).collect();
        assert!(normals.contains(&vec![-1, -1]));
        assert!(normals.contains(&vec![-1, 0]));
        for f in &p.facets {
            for v in minkowski_sum(&a1, &a2).unwrap().points() {
                assert!(f.slack(v) >= 0);
            }
        }
    }

    #[test]
    fn degenerate_hulls() {
        let p = convex_hull(&sup(&[&[3, 4]])).unwrap();
        assert_eq!(p.vertices, vec![vec![3, 4]]);
        assert!(p.facets.is_empty());
        let seg = convex_hull(&sup(&[&[0, 0], &[2, 0], &[1, 0]])).unwrap();
        assert_eq!(seg.vertices, vec![vec![0, 0], vec![2, 0]]);
        assert_eq!(seg.dim, 1);
        let mut n: Vec<Vec<i64>> = seg.facets.iter().map(|f| f.normal.clone()).collect();
        n.sort();
        assert_eq!(n, vec![vec![-1], vec![1]]);
        assert_eq!(seg.normalized_volume, BigInt::from(2));
    }

    #[test]
    fn cube_and_simplex_volumes() {
        let mut cube = Vec::new();
        for x in 0..2 {
            for y in 0..2 {
                for z in 0..2 {
                    cube.push(vec![x, y, z]);
                }
            }
        }
        cube.push(vec![0, 1, 1]);
        let p = convex_hull(&Support::new(3, cube)).unwrap();
        assert_eq!(p.vertices.len(), 8);
        assert_eq!(p.facets.len(), 6);
        assert_eq!(p.normalized_volume, BigInt::from(6));
        let s = sup(&[&[0, 0, 0, 0], &[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]]);
        let p = convex_hull(&s).unwrap();
        assert_eq!(p.normalized_volume, BigInt::from(1));
        assert_eq!(p.facets.len(), 5);
        assert!(convex_hull(&Support::new(5, vec![vec![0; 5]])).is_err());
    }

    #[test]
    fn collinear_points_on_boundary() {
        let s = sup(&[&[0, 0], &[1, 0], &[2, 0], &[0, 2], &[1, 1], &[0, 1]]);
        let p = convex_hull(&s).unwrap();
        assert_eq!(p.vertices, vec![vec![0, 0], vec![0, 2], vec![2, 0]]);
        assert_eq!(p.facets.len(), 3);
        assert_eq!(p.normalized_volume, BigInt::from(4));
    }

    #[test]
    fn face_data_examples() {
        let a2 = sup(&[&[0, 1], &[1, 1], &[2, 0]]);
        assert_eq!(face_data(&a2, &[-1, 0]).unwrap(), (sup(&[&[2, 0]]), 2));
        let a1 = sup(&[&[1, 0], &[1, 1], &[0, 2]]);
        assert_eq!(face_data(&a1, &[-1, -1]).unwrap(), (sup(&[&[1, 1], &[0, 2]]), 2));
    }
}
