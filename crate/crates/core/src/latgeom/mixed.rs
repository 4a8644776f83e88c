//! Mixed volumes, behind a small strategy interface.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::hull::{convex_hull, minkowski_sum, normalized_volume};
use super::lattice::IntegerLattice;
use super::subdivision::{factorial, lifted_subdivision, random_lifting};
use crate::error::{Error, Result};
use crate::poly::Support;

/// A way of computing the normalized mixed volume of `k` supports in `Z^k`.
pub trait MixedVolumeStrategy: Send + Sync {
    fn name(&self) -> &'static str;
    fn compute(&self, supports: &[Support]) -> Result<BigInt>;
}

/// `MV = sum_J (-1)^{k-|J|} nvol(sum_{j in J} P_j) / k!`.
#[derive(Clone, Copy, Debug, Default)]
pub struct InclusionExclusion;

/// Sum of mixed-cell volumes of a random regular mixed subdivision.
#[derive(Clone, Copy, Debug)]
pub struct MixedCells {
    pub seed: u64,
}

impl Default for MixedCells {
    fn default() -> Self {
        MixedCells { seed: 0x5eed }
    }
}

fn check_family(supports: &[Support]) -> Result<usize> {
    let k = supports.len();
    if supports.iter().any(|s| s.dim() != k) {
        return Err(Error::DimensionMismatch(format!("mixed volume needs {k} supports in dimension {k}")));
    }
    if supports.iter().any(|s| s.is_empty()) {
        return Err(Error::Invalid("empty support".into()));
    }
    Ok(k)
}

impl MixedVolumeStrategy for InclusionExclusion {
    fn name(&self) -> &'static str {
        "inclusion-exclusion"
    }

    fn compute(&self, supports: &[Support]) -> Result<BigInt> {
        let k = check_family(supports)?;
        if k == 0 {
            return Ok(BigInt::one());
        }
        let hulls: Vec<Support> =
            supports.iter().map(|s| convex_hull(s).map(|p| Support::new(k, p.vertices))).collect::<Result<_>>()?;
        let mut total = BigInt::zero();
        for mask in 1u32..(1 << k) {
            let mut acc = Support::new(k, vec![vec![0; k]]);
            for (i, h) in hulls.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    acc = Support::new(k, convex_hull(&minkowski_sum(&acc, h)?)?.vertices);
                }
            }
            let v = normalized_volume(&acc)?;
            if (k - mask.count_ones() as usize) % 2 == 0 {
                total += v;
            } else {
                total -= v;
            }
        }
        let (q, r) = total.div_rem(&factorial(k));
        assert!(r.is_zero(), "mixed volume must be an integer");
        Ok(q)
    }
}

impl MixedVolumeStrategy for MixedCells {
    fn name(&self) -> &'static str {
        "mixed-cells"
    }

    fn compute(&self, supports: &[Support]) -> Result<BigInt> {
        let k = check_family(supports)?;
        if k == 0 {
            return Ok(BigInt::one());
        }
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        for _ in 0..10 {
            let lift = random_lifting(supports, &mut rng);
            if let Some(sd) = lifted_subdivision(supports, &lift)? {
                return Ok(sd.mixed_volume());
            }
        }
        Err(Error::Degenerate("no generic lifting found".into()))
    }
}

/// Rewrites supports in the coordinates of `lattice`, each translated by its first point.
pub fn to_lattice_coordinates(supports: &[Support], lattice: &IntegerLattice) -> Result<Vec<Support>> {
    supports
        .iter()
        .map(|s| {
            let b0 = s.points().first().ok_or_else(|| Error::Invalid("empty support".into()))?;
            let pts = s
                .points()
                .iter()
                .map(|p| {
                    let d: Vec<i64> = p.iter().zip(b0).map(|(a, b)| a - b).collect();
                    lattice.coordinates_i64(&d).ok_or(Error::NotContained)
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(Support::new(lattice.rank(), pts))
        })
        .collect()
}

/// Normalized mixed volume relative to `lattice` (rank must equal the number of supports).
pub fn mixed_volume(supports: &[Support], lattice: &IntegerLattice) -> Result<BigInt> {
    mixed_volume_with(&InclusionExclusion, supports, lattice)
}

pub fn mixed_volume_with(
    strategy: &dyn MixedVolumeStrategy,
    supports: &[Support],
    lattice: &IntegerLattice,
) -> Result<BigInt> {
    if lattice.rank() != supports.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} polytopes in a lattice of rank {}",
            supports.len(),
            lattice.rank()
        )));
    }
    strategy.compute(&to_lattice_coordinates(supports, lattice)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sup(pts: &[&[i64]]) -> Support {
        Support::new(pts[0].len(), pts.iter().map(|p| p.to_vec()).collect())
    }

    fn both(f: &[Support]) -> BigInt {
        let a = InclusionExclusion.compute(f).unwrap();
        let b = MixedCells::default().compute(f).unwrap();
        assert_eq!(a, b);
        a
    }

    #[test]
    fn examples() {
        let sq = sup(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]);
        assert_eq!(both(&[sq.clone(), sq.clone()]), BigInt::from(2));
        assert_eq!(both(&[sq, sup(&[&[3, 3]])]), BigInt::zero());
        let a1 = sup(&[&[1, 0], &[1, 1], &[0, 2]]);
        let a2 = sup(&[&[0, 1], &[1, 1], &[2, 0]]);
        // f1 = 0 gives t1 as a function of t2; substituting leaves a cubic in t2
        assert_eq!(both(&[a1, a2]), BigInt::from(3));
    }

    #[test]
    fn lattice_relative() {
        let seg = sup(&[&[0], &[2]]);
        let two = IntegerLattice::from_i64_generators(1, &[vec![2]]);
        assert_eq!(mixed_volume(&[seg.clone()], &two).unwrap(), BigInt::one());
        assert_eq!(mixed_volume(&[seg.clone()], &IntegerLattice::full(1)).unwrap(), BigInt::from(2));
        assert!(mixed_volume(&[seg.clone(), seg], &IntegerLattice::full(1)).is_err());
    }
}
