//! Discriminants of dense square systems through `Res_{rho,d}(J_f, f) = Res(f^0) Disc(f)`.

use num_traits::Zero;

use super::macaulay::{degrees_of, leading_form_resultant, macaulay_resultant};
use crate::error::{Error, Result};
use crate::poly::{jacobian, Polynomial, Rational};

/// `rho = sum d_i - n`.
pub fn rho(polys: &[Polynomial]) -> Result<i64> {
    Ok(degrees_of(polys)?.iter().sum::<i64>() - polys.len() as i64)
}

/// `Res_{rho, d_1..d_n}(J_f, f_1, .., f_n)`, up to sign.
pub fn jacobian_resultant(polys: &[Polynomial]) -> Result<Rational> {
    let r = rho(polys)?;
    let j = jacobian(polys)?;
    let mut degrees = vec![r];
    degrees.extend(degrees_of(polys)?);
    if r == 0 {
        // J_f is a constant; the resultant is J^{d_1 .. d_n}
        let c = j.coefficient(&vec![0; j.arity()]);
        let e: i64 = degrees[1..].iter().product();
        return Ok(crate::poly::pow_rational(&c, e));
    }
    let mut all = vec![j];
    all.extend(polys.iter().cloned());
    macaulay_resultant(&degrees, &all)
}

/// `Disc(f)` up to sign; requires no roots at infinity.
pub fn discriminant_dense(polys: &[Polynomial]) -> Result<Rational> {
    let lead = leading_form_resultant(polys)?;
    if lead.is_zero() {
        return Err(Error::Degenerate("leading forms have a common root at infinity".into()));
    }
    Ok(jacobian_resultant(polys)? / lead)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_polynomial, rat};

    fn parse(s: &str, v: &[&str]) -> Polynomial {
        parse_polynomial(s, &v.iter().map(|x| x.to_string()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn quadratics() {
        let d = discriminant_dense(&[parse("x^2 - 1", &["x"])]).unwrap();
        assert!(d == rat(4) || d == rat(-4));
        assert!(discriminant_dense(&[parse("x^2 - 2*x + 1", &["x"])]).unwrap().is_zero());
        // a x^2 + b x + c: Res(2ax + b, f) = a (4ac - b^2) up to sign, Res(f^0) = a
        let d = discriminant_dense(&[parse("3*x^2 + 5*x - 7", &["x"])]).unwrap();
        assert!(d == rat(25 + 84) || d == rat(-25 - 84));
    }

    #[test]
    fn tangency() {
        let v = ["x", "y"];
        let d = discriminant_dense(&[parse("x^2 + y^2 - 1", &v), parse("x - y", &v)]).unwrap();
        assert!(!d.is_zero());
        let d = discriminant_dense(&[parse("x^2 + y^2 - 1", &v), parse("x - 1", &v)]).unwrap();
        assert!(d.is_zero());
    }

    #[test]
    fn root_at_infinity_is_reported() {
        let v = ["x", "y"];
        let e = discriminant_dense(&[parse("x*y - 1", &v), parse("x - y + 3", &v)]).unwrap();
        assert!(!e.is_zero());
        assert!(discriminant_dense(&[parse("x^2 - 1", &v), parse("x + 3", &v)]).is_err());
    }
}
