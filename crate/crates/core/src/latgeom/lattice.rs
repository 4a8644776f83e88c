use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use super::smith::{hermite_basis, smith_normal_form, IntegerMatrix};
use crate::error::{Error, Result};
use crate::poly::Support;

/// Sublattice of `Z^k` stored by its row-style Hermite basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntegerLattice {
    ambient_dim: usize,
    basis: Vec<Vec<BigInt>>,
}

/// Index of a sublattice: finite, or infinite when the ranks differ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LatticeIndex {
    Finite(BigInt),
    Infinite,
}

impl LatticeIndex {
    pub fn finite(&self) -> Option<&BigInt> {
        match self {
            LatticeIndex::Finite(x) => Some(x),
            LatticeIndex::Infinite => None,
        }
    }

    pub fn as_u64(&self) -> Option<u64> {
        self.finite().and_then(|x| x.to_u64())
    }
}

fn big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

impl IntegerLattice {
    pub fn from_generators(ambient_dim: usize, gens: &[Vec<BigInt>]) -> Self {
        IntegerLattice { ambient_dim, basis: hermite_basis(gens, ambient_dim) }
    }

    pub fn from_i64_generators(ambient_dim: usize, gens: &[Vec<i64>]) -> Self {
        let g: Vec<Vec<BigInt>> = gens.iter().map(|v| big(v)).collect();
        Self::from_generators(ambient_dim, &g)
    }

    pub fn full(k: usize) -> Self {
        IntegerLattice { ambient_dim: k, basis: IntegerMatrix::identity(k).data().to_vec() }
    }

    pub fn zero(k: usize) -> Self {
        IntegerLattice { ambient_dim: k, basis: Vec::new() }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<BigInt>] {
        &self.basis
    }

    pub fn basis_i64(&self) -> Vec<Vec<i64>> {
        self.basis
            .iter()
            .map(|r| r.iter().map(|x| x.to_i64().expect("lattice basis fits i64")).collect())
            .collect()
    }

    /// Integer coordinates of `v` in the basis, if `v` lies in the lattice.
    pub fn coordinates(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        let mut rest = v.to_vec();
        let mut out = Vec::with_capacity(self.basis.len());
        for b in &self.basis {
            let c = b.iter().position(|x| !x.is_zero()).expect("nonzero basis row");
            if (&rest[c] % &b[c]).is_zero() {
                let q = &rest[c] / &b[c];
                for (x, y) in rest.iter_mut().zip(b) {
                    *x -= &q * y;
                }
                out.push(q);
            } else {
                return None;
            }
        }
        if rest.iter().all(|x| x.is_zero()) {
            Some(out)
        } else {
            None
        }
    }

    pub fn coordinates_i64(&self, v: &[i64]) -> Option<Vec<i64>> {
        self.coordinates(&big(v))
            .map(|c| c.iter().map(|x| x.to_i64().expect("coordinate fits i64")).collect())
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn contains_lattice(&self, other: &IntegerLattice) -> bool {
        other.basis.iter().all(|b| self.contains(b))
    }

    /// `[self : sub]`; errors unless `sub` is contained in `self`.
    pub fn index_of(&self, sub: &IntegerLattice) -> Result<LatticeIndex> {
        if self.ambient_dim != sub.ambient_dim {
            return Err(Error::DimensionMismatch("lattices in different ambient spaces".into()));
        }
        let coords: Option<Vec<Vec<BigInt>>> = sub.basis.iter().map(|b| self.coordinates(b)).collect();
        let coords = coords.ok_or(Error::NotContained)?;
        if sub.rank() < self.rank() {
            return Ok(LatticeIndex::Infinite);
        }
        if self.rank() == 0 {
            return Ok(LatticeIndex::Finite(BigInt::one()));
        }
        let snf = smith_normal_form(&IntegerMatrix::new(coords, self.rank()));
        Ok(LatticeIndex::Finite(snf.diagonal().iter().fold(BigInt::one(), |a, b| a * b)))
    }

    /// `(Q (x) self) ∩ ambient`.
    pub fn saturate_in(&self, ambient: &IntegerLattice) -> Result<IntegerLattice> {
        if !ambient.contains_lattice(self) {
            return Err(Error::NotContained);
        }
        if self.rank() == 0 {
            return Ok(IntegerLattice::zero(self.ambient_dim));
        }
        let (sat_coords, _) = ambient.adapted_split(self)?;
        Ok(ambient.lift(&sat_coords))
    }

    /// Splits the coordinate space of `self` along `sub`: returns a basis of the saturation of
    /// `sub` (in `self` coordinates) and a matrix `P` whose columns project `self` coordinates
    /// onto a complement (`pi(x) = x P`).
    pub fn adapted_split(&self, sub: &IntegerLattice) -> Result<(Vec<Vec<BigInt>>, IntegerMatrix)> {
        let r = self.rank();
        let coords: Option<Vec<Vec<BigInt>>> = sub.basis.iter().map(|b| self.coordinates(b)).collect();
        let coords = coords.ok_or(Error::NotContained)?;
        if coords.is_empty() {
            return Ok((Vec::new(), IntegerMatrix::identity(r)));
        }
        let snf = smith_normal_form(&IntegerMatrix::new(coords, r));
        let s = snf.rank();
        let vinv = snf.v.unimodular_inverse().expect("V is unimodular");
        let sat: Vec<Vec<BigInt>> = (0..s).map(|i| vinv.row(i).to_vec()).collect();
        let proj: Vec<Vec<BigInt>> = (0..r).map(|i| snf.v.row(i)[s..].to_vec()).collect();
        Ok((sat, IntegerMatrix::new(proj, r - s)))
    }

    /// Maps coordinate rows back to ambient vectors.
    pub fn lift(&self, coords: &[Vec<BigInt>]) -> IntegerLattice {
        let gens: Vec<Vec<BigInt>> = coords
            .iter()
            .map(|c| {
                let mut v = vec![BigInt::zero(); self.ambient_dim];
                for (ci, b) in c.iter().zip(&self.basis) {
                    for (x, y) in v.iter_mut().zip(b) {
                        *x += ci * y;
                    }
                }
                v
            })
            .collect();
        IntegerLattice::from_generators(self.ambient_dim, &gens)
    }

    /// Integer points of `self` orthogonal to `w`.
    pub fn orthogonal_sublattice(&self, w: &[i64]) -> IntegerLattice {
        // kernel of the functional b -> <b, w> restricted to the basis
        let vals: Vec<Vec<BigInt>> = self
            .basis
            .iter()
            .map(|b| vec![b.iter().zip(w).fold(BigInt::zero(), |acc, (x, &y)| acc + x * y)])
            .collect();
        if vals.is_empty() {
            return self.clone();
        }
        let snf = smith_normal_form(&IntegerMatrix::new(vals, 1));
        let s = snf.rank();
        // rows s.. of U span the left kernel
        let kernel: Vec<Vec<BigInt>> = (s..self.rank()).map(|i| snf.u.row(i).to_vec()).collect();
        self.lift(&kernel)
    }
}

/// Lattice spanned by the differences of points within each support.
///
/// Returns the lattice and the base point (first point of the first nonempty support).
pub fn difference_lattice(supports: &[Support]) -> Result<(IntegerLattice, Vec<i64>)> {
    let first = supports
        .iter()
        .find(|s| !s.is_empty())
        .ok_or_else(|| Error::Invalid("empty support list".into()))?;
    let k = first.dim();
    let mut gens = Vec::new();
    for s in supports {
        if let Some(b0) = s.points().first() {
            for p in &s.points()[1..] {
                gens.push(p.iter().zip(b0).map(|(a, b)| BigInt::from(a - b)).collect());
            }
        }
    }
    Ok((IntegerLattice::from_generators(k, &gens), first.points()[0].clone()))
}

pub fn lattice_index(ambient: &IntegerLattice, sub: &IntegerLattice) -> Result<LatticeIndex> {
    ambient.index_of(sub)
}

pub fn saturate(sub: &IntegerLattice, ambient: &IntegerLattice) -> Result<IntegerLattice> {
    sub.saturate_in(ambient)
}

pub fn primitive(v: &[i64]) -> Vec<i64> {
    let g = v.iter().fold(0i64, |acc, &x| num_integer::gcd(acc, x));
    if g == 0 {
        v.to_vec()
    } else {
        v.iter().map(|x| x / g).collect()
    }
}

pub fn is_primitive(v: &[i64]) -> bool {
    v.iter().fold(0i64, |acc, &x| num_integer::gcd(acc, x)) == 1
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sup(pts: &[&[i64]]) -> Support {
        let dim = pts[0].len();
        Support::new(dim, pts.iter().map(|p| p.to_vec()).collect())
    }

    #[test]
    fn example_one_lattice_has_index_eight() {
        let a0 = sup(&[&[0, 0, 0], &[0, 2, 0]]);
        let a1 = sup(&[&[0, 0, 0], &[2, 0, 0], &[0, 2, 0]]);
        let a2 = sup(&[&[0, 0, 0], &[0, 2, 0], &[0, 0, 2]]);
        let a3 = sup(&[&[0, 0, 0], &[2, 0, 0], &[0, 2, 0], &[0, 0, 2]]);
        let (l, _) = difference_lattice(&[a0.clone(), a1.clone(), a2.clone(), a3.clone()]).unwrap();
        assert_eq!(IntegerLattice::full(3).index_of(&l).unwrap(), LatticeIndex::Finite(BigInt::from(8)));
        // translation invariance
        let shift = [1, 1, 1];
        let (ls, _) = difference_lattice(&[a0.translate(&shift), a1.translate(&shift), a2, a3]).unwrap();
        assert_eq!(ls, l);
    }

    #[test]
    fn trivial_lattices() {
        let (l, _) = difference_lattice(&[sup(&[&[0]])]).unwrap();
        assert_eq!(l.rank(), 0);
        let (l, _) = difference_lattice(&[sup(&[&[0, 0], &[1, 0]]), sup(&[&[0, 0], &[0, 1]])]).unwrap();
        assert_eq!(l, IntegerLattice::full(2));
        assert!(difference_lattice(&[]).is_err());
    }

    #[test]
    fn index_examples() {
        let z2 = IntegerLattice::full(2);
        let even = IntegerLattice::from_i64_generators(2, &[vec![1, 1], vec![0, 2]]);
        assert_eq!(z2.index_of(&even).unwrap(), LatticeIndex::Finite(BigInt::from(2)));
        assert_eq!(even.index_of(&even).unwrap(), LatticeIndex::Finite(BigInt::one()));
        let line = IntegerLattice::from_i64_generators(2, &[vec![2, 2]]);
        assert_eq!(z2.index_of(&line).unwrap(), LatticeIndex::Infinite);
        assert_eq!(line.index_of(&z2), Err(Error::NotContained));
    }

    #[test]
    fn saturation_examples() {
        let z1 = IntegerLattice::full(1);
        let two = IntegerLattice::from_i64_generators(1, &[vec![2]]);
        assert_eq!(two.saturate_in(&z1).unwrap(), z1);
        let z2 = IntegerLattice::full(2);
        let l = IntegerLattice::from_i64_generators(2, &[vec![2, 0]]);
        let s = l.saturate_in(&z2).unwrap();
        assert_eq!(s, IntegerLattice::from_i64_generators(2, &[vec![1, 0]]));
        assert_eq!(s.saturate_in(&z2).unwrap(), s);
        assert_eq!(z2.saturate_in(&z2).unwrap(), z2);
        // saturation relative to a non-standard ambient lattice
        let amb = IntegerLattice::from_i64_generators(2, &[vec![2, 0], vec![0, 2]]);
        let sub = IntegerLattice::from_i64_generators(2, &[vec![4, 4]]);
        assert_eq!(sub.saturate_in(&amb).unwrap(), IntegerLattice::from_i64_generators(2, &[vec![2, 2]]));
    }

    #[test]
    fn orthogonal_sublattice() {
        let z3 = IntegerLattice::full(3);
        let h = z3.orthogonal_sublattice(&[1, 1, 0]);
        assert_eq!(h.rank(), 2);
        assert!(h.contains(&big(&[1, -1, 0])));
        assert!(h.contains(&big(&[0, 0, 1])));
        let even = IntegerLattice::from_i64_generators(3, &[vec![2, 0, 0], vec![0, 2, 0], vec![0, 0, 2]]);
        let he = even.orthogonal_sublattice(&[1, 0, 0]);
        assert_eq!(he, IntegerLattice::from_i64_generators(3, &[vec![0, 2, 0], vec![0, 0, 2]]));
    }
}
