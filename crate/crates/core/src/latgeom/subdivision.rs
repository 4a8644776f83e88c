//! Regular mixed subdivisions induced by integer liftings.

use std::collections::BTreeSet;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::linalg::solve_rational;
use crate::poly::{rat, Rational, Support};

/// A cell `F_0 + ... + F_m` of the subdivision; `faces[i]` indexes points of support `i`.
#[derive(Clone, Debug)]
pub struct Cell {
    pub normal: Vec<Rational>,
    /// `sum_i min_{a in A_i} <normal, a> + h_i(a)`.
    pub height: Rational,
    pub faces: Vec<Vec<usize>>,
}

impl Cell {
    pub fn is_mixed(&self) -> bool {
        self.faces.iter().all(|f| f.len() == 2)
    }
}

#[derive(Clone, Debug)]
pub struct MixedSubdivision {
    pub dim: usize,
    pub supports: Vec<Support>,
    pub lifting: Vec<Vec<i64>>,
    pub cells: Vec<Cell>,
}

pub fn random_lifting<R: Rng>(supports: &[Support], rng: &mut R) -> Vec<Vec<i64>> {
    supports.iter().map(|s| (0..s.len()).map(|_| rng.gen_range(1..=(1i64 << 16))).collect()).collect()
}

fn value(n: &[Rational], a: &[i64], h: i64) -> Rational {
    n.iter().zip(a).fold(rat(h), |acc, (x, &y)| acc + x * rat(y))
}

/// Lower facets of the lifted Minkowski sum, or `None` when the lifting is not generic.
pub fn lifted_subdivision(supports: &[Support], lifting: &[Vec<i64>]) -> Result<Option<MixedSubdivision>> {
    let r = supports.first().map(|s| s.dim()).ok_or_else(|| Error::Invalid("no supports".into()))?;
    if supports.iter().any(|s| s.is_empty() || s.dim() != r) {
        return Err(Error::DimensionMismatch("supports must be nonempty and of equal dimension".into()));
    }
    let mut pairs = Vec::new();
    for (i, s) in supports.iter().enumerate() {
        for a in 0..s.len() {
            for b in a + 1..s.len() {
                pairs.push((i, a, b));
            }
        }
    }
    let mut seen: BTreeSet<Vec<Rational>> = BTreeSet::new();
    let mut cells = Vec::new();
    if r == 0 {
        return Ok(Some(MixedSubdivision {
            dim: 0,
            supports: supports.to_vec(),
            lifting: lifting.to_vec(),
            cells: vec![Cell {
                normal: Vec::new(),
                height: supports.iter().zip(lifting).map(|(_, h)| rat(h[0])).sum(),
                faces: supports.iter().map(|_| vec![0]).collect(),
            }],
        }));
    }
    for combo in pairs.iter().combinations(r) {
        let mut m = Vec::with_capacity(r);
        let mut rhs = Vec::with_capacity(r);
        for &&(i, a, b) in &combo {
            let pa = &supports[i].points()[a];
            let pb = &supports[i].points()[b];
            m.push(pa.iter().zip(pb).map(|(x, y)| rat(x - y)).collect::<Vec<_>>());
            rhs.push(vec![rat(lifting[i][b] - lifting[i][a])]);
        }
        let sol = match solve_rational(&m, &rhs) {
            Some(s) => s,
            None => continue,
        };
        let n: Vec<Rational> = sol.into_iter().map(|row| row[0].clone()).collect();
        if seen.contains(&n) {
            continue;
        }
        seen.insert(n.clone());
        let mut faces = Vec::with_capacity(supports.len());
        let mut height = Rational::zero();
        for (s, h) in supports.iter().zip(lifting) {
            let vals: Vec<Rational> = s.points().iter().zip(h).map(|(p, &hh)| value(&n, p, hh)).collect();
            let min = vals.iter().min().expect("nonempty").clone();
            faces.push(vals.iter().enumerate().filter(|(_, v)| **v == min).map(|(j, _)| j).collect::<Vec<_>>());
            height += min;
        }
        let excess: usize = faces.iter().map(|f: &Vec<usize>| f.len() - 1).sum();
        if excess < r {
            continue;
        }
        if excess > r {
            return Ok(None);
        }
        let edges = cell_edges(supports, &faces);
        if crate::linalg::rank_rational(&edges) < r {
            return Ok(None);
        }
        cells.push(Cell { normal: n, height, faces });
    }
    Ok(Some(MixedSubdivision { dim: r, supports: supports.to_vec(), lifting: lifting.to_vec(), cells }))
}

fn cell_edges(supports: &[Support], faces: &[Vec<usize>]) -> Vec<Vec<Rational>> {
    let mut edges = Vec::new();
    for (s, f) in supports.iter().zip(faces) {
        let p0 = &s.points()[f[0]];
        for &j in &f[1..] {
            edges.push(s.points()[j].iter().zip(p0).map(|(x, y)| rat(x - y)).collect());
        }
    }
    edges
}

impl MixedSubdivision {
    /// Normalized volume of a cell in `Z^dim`.
    pub fn cell_volume(&self, cell: &Cell) -> BigInt {
        let edges = cell_edges(&self.supports, &cell.faces);
        let det = crate::linalg::det_rational(&edges).to_integer().abs();
        let mut num = factorial(self.dim);
        for f in &cell.faces {
            num /= factorial(f.len() - 1);
        }
        det * num
    }

    pub fn total_volume(&self) -> BigInt {
        self.cells.iter().map(|c| self.cell_volume(c)).sum()
    }

    /// Sum of `|det|` over mixed cells; equals the mixed volume when there are `dim` supports.
    pub fn mixed_volume(&self) -> BigInt {
        self.cells
            .iter()
            .filter(|c| c.is_mixed())
            .map(|c| crate::linalg::det_rational(&cell_edges(&self.supports, &c.faces)).to_integer().abs())
            .sum()
    }

    /// Cell whose relative interior contains `x`, with the barycentric weights per face.
    pub fn locate(&self, x: &[Rational]) -> Option<(usize, Vec<Vec<Rational>>)> {
        // the lower envelope is the maximum of the cell planes
        let best = self
            .cells
            .iter()
            .enumerate()
            .map(|(i, c)| (i, &c.height - c.normal.iter().zip(x).fold(Rational::zero(), |acc, (a, b)| acc + a * b)))
            .max_by(|a, b| a.1.cmp(&b.1))?
            .0;
        let cell = &self.cells[best];
        // x = sum_i sum_{a in F_i} lambda_{i,a} a,  sum_a lambda_{i,a} = 1
        let nvars: usize = cell.faces.iter().map(|f| f.len()).sum();
        let neq = self.dim + cell.faces.len();
        if nvars != neq {
            return None;
        }
        let mut m = vec![vec![Rational::zero(); nvars]; neq];
        let mut rhs = vec![vec![Rational::zero()]; neq];
        let mut col = 0;
        for (i, f) in cell.faces.iter().enumerate() {
            for &j in f {
                let p = &self.supports[i].points()[j];
                for d in 0..self.dim {
                    m[d][col] = rat(p[d]);
                }
                m[self.dim + i][col] = rat(1);
                col += 1;
            }
            rhs[self.dim + i][0] = rat(1);
        }
        for d in 0..self.dim {
            rhs[d][0] = x[d].clone();
        }
        let sol = solve_rational(&m, &rhs)?;
        let mut out = Vec::with_capacity(cell.faces.len());
        let mut col = 0;
        for f in &cell.faces {
            let mut w = Vec::with_capacity(f.len());
            for _ in f {
                let v = sol[col][0].clone();
                if !v.is_positive() {
                    return None;
                }
                w.push(v);
                col += 1;
            }
            out.push(w);
        }
        Some((best, out))
    }
}

pub(crate) fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::from(1), |acc, i| acc * BigInt::from(i))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn sup(pts: &[&[i64]]) -> Support {
        Support::new(pts[0].len(), pts.iter().map(|p| p.to_vec()).collect())
    }

    #[test]
    fn square_subdivision() {
        let sq = sup(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let lift = random_lifting(&[sq.clone(), sq.clone()], &mut rng);
        let sd = lifted_subdivision(&[sq.clone(), sq.clone()], &lift).unwrap().unwrap();
        assert_eq!(sd.total_volume(), BigInt::from(8));
        assert_eq!(sd.mixed_volume(), BigInt::from(2));
        assert_eq!(sd.cells.iter().filter(|c| c.is_mixed()).count(), 2);
    }

    #[test]
    fn simplices_have_mixed_volume_one() {
        let t = sup(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        let fam = vec![t.clone(), t.clone(), t];
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let lift = random_lifting(&fam, &mut rng);
        let sd = lifted_subdivision(&fam, &lift).unwrap().unwrap();
        assert_eq!(sd.mixed_volume(), BigInt::from(1));
        assert_eq!(sd.total_volume(), BigInt::from(27));
    }

    #[test]
    fn locate_point() {
        let seg = sup(&[&[0], &[2]]);
        let sd = lifted_subdivision(&[seg.clone(), seg], &[vec![1, 5], vec![2, 3]]).unwrap().unwrap();
        let (_, w) = sd.locate(&[Rational::new(3.into(), 2.into())]).unwrap();
        assert_eq!(w.len(), 2);
        assert_eq!(sd.total_volume(), BigInt::from(4));
    }
}
