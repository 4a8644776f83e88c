//! Canny–Emiris matrices from a random regular mixed subdivision.

use std::collections::HashMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::Zero;
use rand::Rng;

use crate::error::{Error, Result};
use crate::latgeom::hull::{convex_hull, minkowski_sum_all};
use crate::latgeom::subdivision::{lifted_subdivision, random_lifting, MixedSubdivision};
use crate::poly::{Polynomial, Rational, Support};
use crate::random::SeededRng;

pub const MAX_LIFTING_RETRIES: usize = 10;

/// Row `t^shift * f_poly` of the matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowLabel {
    pub point: Vec<i64>,
    pub poly: usize,
    pub shift: Vec<i64>,
}

/// Combinatorial part of a Canny–Emiris matrix for `r + 1` supports in `Z^r`.
#[derive(Clone, Debug)]
pub struct CeContext {
    pub supports: Vec<Support>,
    pub lifting: Vec<Vec<i64>>,
    pub delta: Vec<Rational>,
    pub rows: Vec<RowLabel>,
    pub columns: Vec<Vec<i64>>,
    column_index: HashMap<Vec<i64>, usize>,
}

/// A numeric resultant matrix with its labels.
#[derive(Clone, Debug)]
pub struct ResultantMatrix {
    pub rows: Vec<RowLabel>,
    pub columns: Vec<Vec<i64>>,
    pub entries: Vec<Vec<Rational>>,
}

impl ResultantMatrix {
    /// Plain-text dump: row labels, column monomials, entries.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        let cols: Vec<String> = self.columns.iter().map(|c| format!("{c:?}")).collect();
        let _ = writeln!(out, "columns: {}", cols.join(" "));
        for (label, row) in self.rows.iter().zip(&self.entries) {
            let vals: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            let _ = writeln!(out, "f{} * t^{:?}: {}", label.poly, label.shift, vals.join(" "));
        }
        out
    }
}

fn small_perturbation<R: Rng>(rng: &mut R, r: usize) -> Vec<Rational> {
    // tiny, generic offsets keep p - delta off every cell boundary
    (0..r)
        .map(|_| Rational::new(BigInt::from(rng.gen_range(1..1_000_000i64)), BigInt::from(1_000_003i64 * 1000)))
        .collect()
}

impl CeContext {
    /// Builds the matrix layout, retrying on non-generic liftings or perturbations.
    pub fn build(supports: &[Support], rng: &mut SeededRng) -> Result<CeContext> {
        let r = supports.first().map(|s| s.dim()).ok_or_else(|| Error::Invalid("no supports".into()))?;
        if supports.len() != r + 1 {
            return Err(Error::DimensionMismatch(format!("{} supports in dimension {r}", supports.len())));
        }
        let refs: Vec<&Support> = supports.iter().collect();
        let q = minkowski_sum_all(&refs, r)?;
        let hull = convex_hull(&q)?;
        if !hull.is_full_dimensional() {
            return Err(Error::Degenerate("Minkowski sum of the supports is not full dimensional".into()));
        }
        for _ in 0..MAX_LIFTING_RETRIES {
            let lifting = random_lifting(supports, rng);
            let sd = match lifted_subdivision(supports, &lifting)? {
                Some(sd) => sd,
                None => continue,
            };
            if sd.total_volume() != hull.normalized_volume {
                continue;
            }
            let delta = small_perturbation(rng, r);
            if let Some(ctx) = Self::layout(supports, &sd, &q, lifting, delta) {
                return Ok(ctx);
            }
        }
        Err(Error::Degenerate("lifting retries exhausted".into()))
    }

    fn layout(
        supports: &[Support],
        sd: &MixedSubdivision,
        q: &Support,
        lifting: Vec<Vec<i64>>,
        delta: Vec<Rational>,
    ) -> Option<CeContext> {
        let r = delta.len();
        let lo: Vec<i64> = (0..r).map(|j| q.points().iter().map(|p| p[j]).min().expect("nonempty")).collect();
        let hi: Vec<i64> = (0..r).map(|j| q.points().iter().map(|p| p[j]).max().expect("nonempty")).collect();
        let mut rows = Vec::new();
        let mut point = lo.clone();
        'outer: loop {
            let x: Vec<Rational> = point.iter().zip(&delta).map(|(&p, d)| Rational::from_integer(p.into()) - d).collect();
            if let Some((cell, _)) = sd.locate(&x) {
                let faces = &sd.cells[cell].faces;
                let i = (0..faces.len()).rev().find(|&i| faces[i].len() == 1)?;
                let a = &supports[i].points()[faces[i][0]];
                let shift: Vec<i64> = point.iter().zip(a).map(|(p, a)| p - a).collect();
                rows.push(RowLabel { point: point.clone(), poly: i, shift });
            }
            // odometer over the bounding box
            for j in 0..r {
                if point[j] < hi[j] {
                    point[j] += 1;
                    continue 'outer;
                }
                point[j] = lo[j];
            }
            break;
        }
        let columns: Vec<Vec<i64>> = rows.iter().map(|l| l.point.clone()).collect();
        let column_index: HashMap<Vec<i64>, usize> = columns.iter().enumerate().map(|(i, c)| (c.clone(), i)).collect();
        // every shifted support must land inside E
        for l in &rows {
            for a in supports[l.poly].points() {
                let c: Vec<i64> = a.iter().zip(&l.shift).map(|(x, y)| x + y).collect();
                if !column_index.contains_key(&c) {
                    return None;
                }
            }
        }
        Some(CeContext { supports: supports.to_vec(), lifting, delta, rows, columns, column_index })
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn rows_of(&self, poly: usize) -> usize {
        self.rows.iter().filter(|l| l.poly == poly).count()
    }

    fn row(&self, label: &RowLabel, f: &Polynomial) -> Vec<Rational> {
        let mut row = vec![Rational::zero(); self.columns.len()];
        for (e, c) in f.terms() {
            let col: Vec<i64> = e.0.iter().zip(&label.shift).map(|(x, y)| x + y).collect();
            let j = *self.column_index.get(&col).expect("support contained in its slot");
            row[j] = c.clone();
        }
        row
    }

    /// Entries for the polynomials `polys[i]` supported in `supports[i]`.
    pub fn matrix(&self, polys: &[Polynomial]) -> ResultantMatrix {
        let entries = self.rows.iter().map(|l| self.row(l, &polys[l.poly])).collect();
        ResultantMatrix { rows: self.rows.clone(), columns: self.columns.clone(), entries }
    }

    /// The pair `(M0, M1)` with `M0 + T M1` the matrix for `f_0 = q + T p`.
    pub fn pencil_matrices(
        &self,
        q: &Polynomial,
        p: &Polynomial,
        others: &[Polynomial],
    ) -> (Vec<Vec<Rational>>, Vec<Vec<Rational>>) {
        let zero = vec![Rational::zero(); self.columns.len()];
        let mut m0 = Vec::with_capacity(self.size());
        let mut m1 = Vec::with_capacity(self.size());
        for l in &self.rows {
            if l.poly == 0 {
                m0.push(self.row(l, q));
                m1.push(self.row(l, p));
            } else {
                m0.push(self.row(l, &others[l.poly - 1]));
                m1.push(zero.clone());
            }
        }
        (m0, m1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::det_rational;
    use crate::poly::rat;
    use crate::random::seeded;

    fn sup(pts: &[&[i64]]) -> Support {
        Support::new(pts[0].len(), pts.iter().map(|p| p.to_vec()).collect())
    }

    #[test]
    fn sylvester_case() {
        // two linear forms in one variable: det is a0 b1 - a1 b0 up to sign
        let s = sup(&[&[0], &[1]]);
        let ctx = CeContext::build(&[s.clone(), s], &mut seeded(1)).unwrap();
        assert_eq!(ctx.size(), 2);
        let f0 = Polynomial::from_terms(1, vec![(vec![0].into(), rat(2)), (vec![1].into(), rat(3))]);
        let f1 = Polynomial::from_terms(1, vec![(vec![0].into(), rat(5)), (vec![1].into(), rat(7))]);
        let d = det_rational(&ctx.matrix(&[f0, f1]).entries);
        assert!(d == rat(2 * 7 - 3 * 5) || d == rat(3 * 5 - 2 * 7));
    }

    #[test]
    fn f0_rows_count_mixed_volume() {
        let tri = sup(&[&[0, 0], &[1, 0], &[0, 1]]);
        let sq = sup(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]);
        let ctx = CeContext::build(&[tri, sq.clone(), sq], &mut seeded(7)).unwrap();
        assert_eq!(ctx.rows_of(0), 2);
        assert!(ctx.matrix(&[
            Polynomial::one(2),
            Polynomial::one(2),
            Polynomial::one(2)
        ])
        .dump()
        .starts_with("columns:"));
    }
}
