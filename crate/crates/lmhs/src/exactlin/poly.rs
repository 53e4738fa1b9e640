//! Polynomials in the real variable `t` with Gaussian-rational coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::scalar::{Scalar, Sign};
use crate::error::{Error, Result};

/// Coefficients are stored lowest degree first with no trailing zeros,
/// so the zero polynomial has an empty coefficient list.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(from = "Vec<Scalar>", into = "Vec<Scalar>")]
pub struct Poly {
    coeffs: Vec<Scalar>,
}

impl From<Vec<Scalar>> for Poly {
    fn from(v: Vec<Scalar>) -> Self {
        Poly::new(v)
    }
}

impl From<Poly> for Vec<Scalar> {
    fn from(p: Poly) -> Self {
        p.coeffs
    }
}

impl From<Scalar> for Poly {
    fn from(c: Scalar) -> Self {
        Poly::constant(c)
    }
}

impl Poly {
    pub fn new(mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Scalar::one())
    }

    pub fn constant(c: Scalar) -> Self {
        Poly::new(vec![c])
    }

    /// The variable `t`.
    pub fn t() -> Self {
        Poly::monomial(Scalar::one(), 1)
    }

    pub fn monomial(c: Scalar, deg: usize) -> Self {
        let mut v = vec![Scalar::zero(); deg];
        v.push(c);
        Poly::new(v)
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Scalar {
        self.coeffs.get(k).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Leading coefficient; `None` for the zero polynomial.
    pub fn lc(&self) -> Option<&Scalar> {
        self.coeffs.last()
    }

    pub fn conj(&self) -> Self {
        Poly { coeffs: self.coeffs.iter().map(Scalar::conj).collect() }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    pub fn eval(&self, t: &Scalar) -> Scalar {
        let mut acc = Scalar::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * t) + c;
        }
        acc
    }

    /// Exact quotient `self / d`; errors when `d` does not divide `self`.
    pub fn exact_div(&self, d: &Poly) -> Result<Poly> {
        let dd = d.degree().ok_or_else(|| Error::Contract("polynomial division by zero".into()))?;
        if self.is_zero() {
            return Ok(Poly::zero());
        }
        let inv_lc = d.lc().unwrap().inv()?;
        let mut rem = self.coeffs.clone();
        let Some(qlen) = (rem.len()).checked_sub(dd) else {
            return Err(Error::Internal("inexact polynomial division".into()));
        };
        let mut q = vec![Scalar::zero(); qlen];
        for k in (0..qlen).rev() {
            let c = &rem[k + dd] * &inv_lc;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[k + j] -= &(&c * dc);
            }
            q[k] = c;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(Error::Internal("inexact polynomial division".into()));
        }
        Ok(Poly::new(q))
    }

    /// Degree and sign of the leading coefficient, i.e. the behavior as `t → +∞`.
    pub fn leading_sign(&self) -> Result<(usize, Sign)> {
        let lc = self.lc().ok_or_else(|| Error::Contract("leading sign of the zero polynomial".into()))?;
        let sign = lc
            .real_sign()
            .ok_or_else(|| Error::Contract(format!("leading coefficient {lc} is not real")))?;
        Ok((self.degree().unwrap(), sign))
    }

    /// `self^n` by repeated multiplication.
    pub fn pow(&self, n: usize) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }
}

impl<'a, 'b> Add<&'b Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &'b Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| &self.coeff(k) + &rhs.coeff(k)).collect())
    }
}

impl<'a, 'b> Sub<&'b Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &'b Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| &self.coeff(k) - &rhs.coeff(k)).collect())
    }
}

impl<'a, 'b> Mul<&'b Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &'b Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Scalar::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += &(a * b);
                }
            }
        }
        Poly::new(out)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let needs_parens = !c.is_real() && !num_traits::Zero::is_zero(&c.re);
            match (k, needs_parens) {
                (0, _) => write!(f, "{c}")?,
                (_, true) => write!(f, "({c})")?,
                _ => write!(f, "{c}")?,
            }
            match k {
                0 => {}
                1 => f.write_str("*t")?,
                _ => write!(f, "*t^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Poly {
        Poly::new(c.iter().map(|&x| Scalar::from_int(x)).collect())
    }

    #[test]
    fn normalization_strips_trailing_zeros() {
        assert_eq!(p(&[1, 2, 0, 0]).coeffs().len(), 2);
        assert!(p(&[0, 0]).is_zero());
        assert_eq!(p(&[0]).degree(), None);
    }

    #[test]
    fn exact_division_inverts_multiplication() {
        let a = p(&[1, -3, 2]);
        let b = p(&[5, 0, 1, 7]);
        assert_eq!((&a * &b).exact_div(&b).unwrap(), a);
        assert!(p(&[1, 0, 1]).exact_div(&p(&[1, 1])).is_err());
        assert!(a.exact_div(&Poly::zero()).is_err());
    }

    #[test]
    fn leading_sign_examples() {
        assert_eq!(p(&[0, -5, 3]).leading_sign().unwrap(), (2, Sign::Plus));
        assert_eq!(p(&[0, 0, -2]).leading_sign().unwrap(), (2, Sign::Minus));
        let quartic = Poly::monomial(Scalar::from_frac(1, 12), 4);
        assert_eq!(quartic.leading_sign().unwrap(), (4, Sign::Plus));
        assert!(Poly::zero().leading_sign().is_err());
        assert!(Poly::monomial(Scalar::i(), 1).leading_sign().is_err());
    }

    #[test]
    fn conj_fixes_t() {
        let q = Poly::new(vec![Scalar::gaussian(1, 1), Scalar::i()]);
        assert_eq!(q.conj(), Poly::new(vec![Scalar::gaussian(1, -1), -Scalar::i()]));
        let t = Scalar::from_int(3);
        assert_eq!(q.conj().eval(&t), q.eval(&t).conj());
    }

    #[test]
    fn serde_lowest_degree_first() {
        let q = p(&[1, 0, -2]);
        assert_eq!(serde_json::to_string(&q).unwrap(), r#"["1","0","-2"]"#);
        let back: Poly = serde_json::from_str(r#"["1","0","-2","0"]"#).unwrap();
        assert_eq!(back, q);
    }
}
