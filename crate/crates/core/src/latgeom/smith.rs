use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Dense integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<BigInt>>,
}

impl IntegerMatrix {
    pub fn new(data: Vec<Vec<BigInt>>, cols: usize) -> Self {
        assert!(data.iter().all(|r| r.len() == cols), "ragged integer matrix");
        IntegerMatrix { rows: data.len(), cols, data }
    }

    pub fn from_i64(rows: &[Vec<i64>], cols: usize) -> Self {
        Self::new(
            rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect(),
            cols,
        )
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix { rows, cols, data: vec![vec![BigInt::zero(); cols]; rows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i][i] = BigInt::one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i][j]
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i]
    }

    pub fn data(&self) -> &[Vec<BigInt>] {
        &self.data
    }

    pub fn mul(&self, other: &IntegerMatrix) -> IntegerMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self.data[i][k].is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i][j] += &self.data[i][k] * &other.data[k][j];
                }
            }
        }
        out
    }

    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols);
        crate::linalg::bareiss_det(self.data.clone())
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.data[i][j].is_zero()))
    }

    /// Inverse of a unimodular matrix.
    pub fn unimodular_inverse(&self) -> Option<IntegerMatrix> {
        let n = self.rows;
        let a: Vec<Vec<crate::poly::Rational>> = self
            .data
            .iter()
            .map(|r| r.iter().map(|x| crate::poly::Rational::from_integer(x.clone())).collect())
            .collect();
        let inv = crate::linalg::solve_rational(&a, &crate::linalg::identity(n))?;
        let mut out = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                if !inv[i][j].is_integer() {
                    return None;
                }
                out.data[i][j] = inv[i][j].to_integer();
            }
        }
        Some(out)
    }
}

impl fmt::Display for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.data {
            let parts: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", parts.join(" "))?;
        }
        Ok(())
    }
}

/// Smith normal form `U M V = D`, with `U`, `V` unimodular and `d_1 | d_2 | ...`.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub u: IntegerMatrix,
    pub d: IntegerMatrix,
    pub v: IntegerMatrix,
}

impl SmithForm {
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows.min(self.d.cols)).map(|i| self.d.data[i][i].clone()).collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|x| !x.is_zero()).count()
    }
}

fn row_op(m: &mut [Vec<BigInt>], target: usize, src: usize, q: &BigInt) {
    // row[target] -= q * row[src]
    let (a, b) = if target < src {
        let (lo, hi) = m.split_at_mut(src);
        (&mut lo[target], &hi[0])
    } else {
        let (lo, hi) = m.split_at_mut(target);
        (&mut hi[0], &lo[src])
    };
    for (x, y) in a.iter_mut().zip(b.iter()) {
        if !y.is_zero() {
            *x -= q * y;
        }
    }
}

fn col_op(m: &mut [Vec<BigInt>], target: usize, src: usize, q: &BigInt) {
    for row in m.iter_mut() {
        if !row[src].is_zero() {
            let v = q * &row[src];
            row[target] -= v;
        }
    }
}

fn swap_cols(m: &mut [Vec<BigInt>], a: usize, b: usize) {
    for row in m.iter_mut() {
        row.swap(a, b);
    }
}

pub fn smith_normal_form(m: &IntegerMatrix) -> SmithForm {
    let (rows, cols) = (m.rows, m.cols);
    let mut d = m.data.clone();
    let mut u = IntegerMatrix::identity(rows).data;
    let mut v = IntegerMatrix::identity(cols).data;
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry of the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if d[i][j].is_zero() {
                    continue;
                }
                if best.map_or(true, |(bi, bj)| d[i][j].abs() < d[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let (pi, pj) = match best {
            Some(x) => x,
            None => break,
        };
        d.swap(t, pi);
        u.swap(t, pi);
        swap_cols(&mut d, t, pj);
        swap_cols(&mut v, t, pj);
        let mut clean = true;
        for i in t + 1..rows {
            if d[i][t].is_zero() {
                continue;
            }
            let q = d[i][t].div_floor(&d[t][t]);
            row_op(&mut d, i, t, &q);
            row_op(&mut u, i, t, &q);
            if !d[i][t].is_zero() {
                clean = false;
            }
        }
        for j in t + 1..cols {
            if d[t][j].is_zero() {
                continue;
            }
            let q = d[t][j].div_floor(&d[t][t]);
            col_op(&mut d, j, t, &q);
            col_op(&mut v, j, t, &q);
            if !d[t][j].is_zero() {
                clean = false;
            }
        }
        if !clean {
            continue;
        }
        // divisibility of the remaining block
        let mut fixed = true;
        'outer: for i in t + 1..rows {
            for j in t + 1..cols {
                if !d[i][j].is_zero() && !(&d[i][j] % &d[t][t]).is_zero() {
                    // add row i to row t and retry
                    let one = -BigInt::one();
                    row_op(&mut d, t, i, &one);
                    row_op(&mut u, t, i, &one);
                    fixed = false;
                    break 'outer;
                }
            }
        }
        if !fixed {
            continue;
        }
        if d[t][t].is_negative() {
            for x in d[t].iter_mut() {
                *x = -x.clone();
            }
            for x in u[t].iter_mut() {
                *x = -x.clone();
            }
        }
        t += 1;
    }
    SmithForm {
        u: IntegerMatrix::new(u, rows),
        d: IntegerMatrix::new(d, cols),
        v: IntegerMatrix::new(v, cols),
    }
}

/// Row-style Hermite normal form of the lattice generated by `gens`; zero rows dropped.
pub fn hermite_basis(gens: &[Vec<BigInt>], dim: usize) -> Vec<Vec<BigInt>> {
    let mut rows: Vec<Vec<BigInt>> = gens.iter().filter(|r| r.iter().any(|x| !x.is_zero())).cloned().collect();
    let mut basis: Vec<Vec<BigInt>> = Vec::new();
    let mut pivots: Vec<usize> = Vec::new();
    for c in 0..dim {
        // gcd-combine all rows with nonzero entry in column c
        loop {
            let nz: Vec<usize> = (0..rows.len()).filter(|&i| !rows[i][c].is_zero()).collect();
            if nz.len() <= 1 {
                break;
            }
            let p = *nz.iter().min_by_key(|&&i| rows[i][c].abs()).expect("nonempty");
            for &i in &nz {
                if i == p {
                    continue;
                }
                let q = rows[i][c].div_floor(&rows[p][c]);
                row_op(&mut rows, i, p, &q);
            }
        }
        if let Some(p) = (0..rows.len()).find(|&i| !rows[i][c].is_zero()) {
            let mut r = rows.swap_remove(p);
            if r[c].is_negative() {
                for x in r.iter_mut() {
                    *x = -x.clone();
                }
            }
            basis.push(r);
            pivots.push(c);
        }
        rows.retain(|r| r.iter().any(|x| !x.is_zero()));
    }
    // reduce entries above pivots
    for k in 0..basis.len() {
        let c = pivots[k];
        for i in 0..k {
            let q = basis[i][c].div_floor(&basis[k][c]);
            if !q.is_zero() {
                row_op(&mut basis, i, k, &q);
            }
        }
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> IntegerMatrix {
        let cols = rows.first().map_or(0, |r| r.len());
        IntegerMatrix::from_i64(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>(), cols)
    }

    fn check(mat: &IntegerMatrix) -> SmithForm {
        let s = smith_normal_form(mat);
        assert_eq!(s.u.mul(mat).mul(&s.v), s.d);
        assert!(s.d.is_diagonal());
        assert_eq!(s.u.det().abs(), BigInt::one());
        assert_eq!(s.v.det().abs(), BigInt::one());
        let diag = s.diagonal();
        for w in diag.windows(2) {
            if !w[0].is_zero() {
                assert!((&w[1] % &w[0]).is_zero());
            } else {
                assert!(w[1].is_zero());
            }
        }
        assert!(diag.iter().all(|x| !x.is_negative()));
        s
    }

    #[test]
    fn snf_examples() {
        let s = check(&m(&[&[2, 0], &[0, 2]]));
        assert_eq!(s.diagonal(), vec![BigInt::from(2), BigInt::from(2)]);
        let s = check(&m(&[&[2, 4], &[6, 8]]));
        assert_eq!(s.diagonal(), vec![BigInt::from(2), BigInt::from(4)]);
        let s = check(&IntegerMatrix::identity(3));
        assert_eq!(s.diagonal(), vec![BigInt::one(); 3]);
    }

    #[test]
    fn snf_rectangular_and_rank_deficient() {
        check(&m(&[&[2, 4, 6], &[1, 3, 5]]));
        let s = check(&m(&[&[1, 2], &[2, 4], &[3, 6]]));
        assert_eq!(s.rank(), 1);
        check(&m(&[&[6, 10, 15], &[4, -2, 8], &[0, 0, 0]]));
    }

    #[test]
    fn hermite_examples() {
        let g: Vec<Vec<BigInt>> = [[1i64, 1], [2, 0], [0, 2]]
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        let b = hermite_basis(&g, 2);
        assert_eq!(b, vec![vec![BigInt::from(1), BigInt::from(1)], vec![BigInt::from(0), BigInt::from(2)]]);
    }
}
