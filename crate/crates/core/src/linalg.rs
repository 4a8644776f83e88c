//! Exact dense linear algebra over the integers and the rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::poly::{rat, Rational, UnivariatePolynomial};

/// Fraction-free Gaussian elimination; returns the exact determinant.
pub fn bareiss_det(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(i, k);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        let pivot = m[k][k].clone();
        for i in k + 1..n {
            let factor = m[i][k].clone();
            for j in k + 1..n {
                let v = &pivot * &m[i][j] - &factor * &m[k][j];
                m[i][j] = v / &prev;
            }
            m[i][k] = BigInt::zero();
        }
        prev = pivot;
    }
    sign * m[n - 1][n - 1].clone()
}

/// Scales every row to integers, returning the integer rows and the product of the scale factors.
fn integer_rows(m: &[Vec<Rational>]) -> (Vec<Vec<BigInt>>, BigInt) {
    let mut total = BigInt::one();
    let rows = m
        .iter()
        .map(|row| {
            let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            total *= &l;
            row.iter().map(|x| x.numer() * (&l / x.denom())).collect()
        })
        .collect();
    (rows, total)
}

/// Determinant of a rational matrix: clear row denominators, then Bareiss.
pub fn det_rational(m: &[Vec<Rational>]) -> Rational {
    let (rows, scale) = integer_rows(m);
    Rational::new(bareiss_det(rows), scale)
}

/// `det(M0 + T M1)` as an exact polynomial in `T`.
///
/// Rows with an all-zero `M1` part are eliminated once (fraction free); the remaining
/// `T`-dependent block is evaluated at small integer nodes and interpolated.
pub fn pencil_det(m0: &[Vec<Rational>], m1: &[Vec<Rational>]) -> UnivariatePolynomial {
    let n = m0.len();
    assert_eq!(m1.len(), n);
    if n == 0 {
        return UnivariatePolynomial::new(vec![Rational::one()]);
    }
    let mut scale = BigInt::one();
    let mut const_rows: Vec<Vec<BigInt>> = Vec::new();
    let mut t_rows: Vec<(Vec<BigInt>, Vec<BigInt>)> = Vec::new();
    let mut row_order_sign = 1i32;
    let mut seen_t = 0usize;
    for (r0, r1) in m0.iter().zip(m1) {
        let l = r0
            .iter()
            .chain(r1.iter())
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        scale *= &l;
        let a: Vec<BigInt> = r0.iter().map(|x| x.numer() * (&l / x.denom())).collect();
        if r1.iter().all(|x| x.is_zero()) {
            // moving a constant row above `seen_t` T-rows permutes rows
            if seen_t % 2 == 1 {
                row_order_sign = -row_order_sign;
            }
            const_rows.push(a);
        } else {
            let b: Vec<BigInt> = r1.iter().map(|x| x.numer() * (&l / x.denom())).collect();
            t_rows.push((a, b));
            seen_t += 1;
        }
    }
    let s = const_rows.len();
    let m = t_rows.len();
    let mut cols: Vec<usize> = (0..n).collect();
    let mut sign = row_order_sign;
    let mut prev = BigInt::one();
    for k in 0..s {
        // pivot search among remaining constant rows and columns
        let mut found = None;
        'search: for r in k..s {
            for c in k..n {
                if !const_rows[r][cols[c]].is_zero() {
                    found = Some((r, c));
                    break 'search;
                }
            }
        }
        let (r, c) = match found {
            Some(x) => x,
            None => return UnivariatePolynomial::zero(),
        };
        if r != k {
            const_rows.swap(r, k);
            sign = -sign;
        }
        if c != k {
            cols.swap(c, k);
            sign = -sign;
        }
        let pc = cols[k];
        let pivot = const_rows[k][pc].clone();
        let pivot_row = const_rows[k].clone();
        for row in const_rows.iter_mut().skip(k + 1) {
            let factor = row[pc].clone();
            for &j in &cols[k + 1..] {
                let v = &pivot * &row[j] - &factor * &pivot_row[j];
                row[j] = v / &prev;
            }
            row[pc] = BigInt::zero();
        }
        for (a, b) in t_rows.iter_mut() {
            let fa = a[pc].clone();
            let fb = b[pc].clone();
            for &j in &cols[k + 1..] {
                let va = &pivot * &a[j] - &fa * &pivot_row[j];
                a[j] = va / &prev;
                let vb = &pivot * &b[j] - &fb * &pivot_row[j];
                b[j] = vb / &prev;
            }
            a[pc] = BigInt::zero();
            b[pc] = BigInt::zero();
        }
        prev = pivot;
    }
    if m == 0 {
        // the last Bareiss pivot is the determinant itself
        return UnivariatePolynomial::new(vec![Rational::new(BigInt::from(sign) * prev, scale)]);
    }
    let rest: Vec<usize> = cols[s..].to_vec();
    debug_assert_eq!(rest.len(), m);
    let nodes: Vec<Rational> = (0..=m as i64)
        .map(|i| if i % 2 == 1 { rat((i + 1) / 2) } else { rat(-i / 2) })
        .collect();
    let values: Vec<Rational> = nodes
        .iter()
        .map(|t| {
            let t = t.to_integer();
            let block: Vec<Vec<BigInt>> = t_rows
                .iter()
                .map(|(a, b)| rest.iter().map(|&j| &a[j] + &t * &b[j]).collect())
                .collect();
            Rational::from_integer(bareiss_det(block))
        })
        .collect();
    let poly = UnivariatePolynomial::interpolate(&nodes, &values).expect("distinct nodes");
    let denom = num_traits::pow::pow(prev, m - 1) * scale;
    let factor = Rational::new(BigInt::from(sign), denom);
    poly.scale(&factor)
}

/// Solves `A X = B` exactly; `None` if `A` is singular.
pub fn solve_rational(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = a.len();
    let w = b.first().map_or(0, |r| r.len());
    let mut m: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(ra, rb)| ra.iter().chain(rb.iter()).cloned().collect())
        .collect();
    for k in 0..n {
        let p = (k..n).find(|&i| !m[i][k].is_zero())?;
        m.swap(p, k);
        let inv = m[k][k].recip();
        for x in m[k].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = m[k].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == k || row[k].is_zero() {
                continue;
            }
            let f = row[k].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
    }
    Some(m.into_iter().map(|row| row[n..n + w].to_vec()).collect())
}

/// Rank of a rational matrix.
pub fn rank_rational(m: &[Vec<Rational>]) -> usize {
    let mut m: Vec<Vec<Rational>> = m.to_vec();
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let p = match (rank..rows).find(|&i| !m[i][c].is_zero()) {
            Some(p) => p,
            None => continue,
        };
        m.swap(p, rank);
        let pivot_row = m[rank].clone();
        for row in m.iter_mut().skip(rank + 1) {
            if row[c].is_zero() {
                continue;
            }
            let f = &row[c] / &pivot_row[c];
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                *x -= &f * y;
            }
        }
        rank += 1;
    }
    rank
}

pub fn identity(n: usize) -> Vec<Vec<Rational>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect())
        .collect()
}

pub fn mat_mul(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let inner = b.len();
    let w = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..w)
                .map(|j| {
                    let mut s = Rational::zero();
                    for k in 0..inner {
                        if !row[k].is_zero() && !b[k][j].is_zero() {
                            s += &row[k] * &b[k][j];
                        }
                    }
                    s
                })
                .collect()
        })
        .collect()
}

pub fn trace(m: &[Vec<Rational>]) -> Rational {
    m.iter().enumerate().fold(Rational::zero(), |acc, (i, r)| acc + &r[i])
}

/// Exact determinant of a small `i64` matrix.
pub fn det_i64(m: &[Vec<i64>]) -> BigInt {
    bareiss_det(m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect())
}

pub fn abs_big(x: &BigInt) -> BigInt {
    x.abs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::ratio;

    fn ri(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect()
    }

    fn cofactor_det(m: &[Vec<Rational>]) -> Rational {
        let n = m.len();
        if n == 0 {
            return Rational::one();
        }
        let mut acc = Rational::zero();
        for j in 0..n {
            let minor: Vec<Vec<Rational>> = m[1..]
                .iter()
                .map(|r| r.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, x)| x.clone()).collect())
                .collect();
            let t = &m[0][j] * cofactor_det(&minor);
            if j % 2 == 0 {
                acc += t
            } else {
                acc -= t
            }
        }
        acc
    }

    #[test]
    fn det_matches_cofactor_expansion() {
        let m = vec![
            vec![ratio(1, 2), rat(3), rat(0), rat(-1)],
            vec![rat(2), ratio(-5, 3), rat(1), rat(0)],
            vec![rat(0), rat(4), ratio(7, 2), rat(1)],
            vec![rat(1), rat(1), rat(1), ratio(1, 9)],
        ];
        assert_eq!(det_rational(&m), cofactor_det(&m));
        assert_eq!(det_rational(&ri(&[&[2, 4], &[6, 8]])), rat(-8));
        assert_eq!(det_rational(&ri(&[&[1, 2], &[2, 4]])), rat(0));
    }

    #[test]
    fn pencil_det_matches_pointwise() {
        let m0 = vec![
            vec![rat(1), rat(2), rat(0)],
            vec![ratio(1, 3), rat(0), rat(5)],
            vec![rat(2), rat(-1), rat(1)],
        ];
        let m1 = vec![
            vec![rat(0), rat(0), rat(0)],
            vec![rat(1), rat(1), rat(0)],
            vec![rat(0), ratio(2, 7), rat(-1)],
        ];
        let p = pencil_det(&m0, &m1);
        for t in [-3i64, 0, 1, 4, 11] {
            let mt: Vec<Vec<Rational>> = m0
                .iter()
                .zip(&m1)
                .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y * rat(t)).collect())
                .collect();
            assert_eq!(p.eval(&rat(t)), det_rational(&mt), "T = {t}");
        }
    }

    #[test]
    fn pencil_det_interleaved_rows() {
        let m0 = ri(&[&[0, 1, 2, 0], &[1, 0, 0, 3], &[2, 2, 1, 1], &[0, 0, 1, 1]]);
        let m1 = ri(&[&[1, 0, 0, 0], &[0, 0, 0, 0], &[0, 0, 0, 0], &[0, 2, 0, 1]]);
        let p = pencil_det(&m0, &m1);
        for t in [-2i64, 0, 3] {
            let mt: Vec<Vec<Rational>> = m0
                .iter()
                .zip(&m1)
                .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y * rat(t)).collect())
                .collect();
            assert_eq!(p.eval(&rat(t)), det_rational(&mt));
        }
    }

    #[test]
    fn pencil_det_without_t_rows() {
        let m0 = vec![vec![ratio(1, 2), rat(3)], vec![rat(-1), rat(4)]];
        let zero = vec![vec![rat(0), rat(0)], vec![rat(0), rat(0)]];
        assert_eq!(pencil_det(&m0, &zero).coeffs(), [det_rational(&m0)]);
        let single = vec![vec![rat(-3)]];
        assert_eq!(pencil_det(&single, &[vec![rat(0)]]).coeffs(), [rat(-3)]);
    }

    #[test]
    fn solve_and_rank() {
        let a = ri(&[&[2, 1], &[1, 3]]);
        let b = ri(&[&[3], &[5]]);
        let x = solve_rational(&a, &b).unwrap();
        assert_eq!(x, vec![vec![ratio(4, 5)], vec![ratio(7, 5)]]);
        assert!(solve_rational(&ri(&[&[1, 2], &[2, 4]]), &b).is_none());
        assert_eq!(rank_rational(&ri(&[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1]])), 2);
    }
}
