//! Exact arithmetic in the coefficient field `Q(q)`.
//!
//! A [`QScalar`] is stored as `N(q) / D(q)` where `N` is a Laurent polynomial
//! over the rationals and `D` is an ordinary polynomial with nonzero constant
//! term, monic, and coprime to `N`. Every power of `q` is therefore carried by
//! the numerator, and the Laurent polynomials are exactly the values with
//! `D = 1`. The representation is unique, so derived equality is exact.

mod poly;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use poly::Coeffs;

/// Laurent polynomial `q^low * (c_0 + c_1 q + ...)` with `c_0 != 0`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
struct Laurent {
    low: i64,
    coeffs: Coeffs,
}

impl Laurent {
    fn new(low: i64, mut coeffs: Coeffs) -> Self {
        poly::trim(&mut coeffs);
        let lead_zeros = coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead_zeros == coeffs.len() {
            return Laurent::default();
        }
        coeffs.drain(..lead_zeros);
        Laurent { low: low + lead_zeros as i64, coeffs }
    }

    fn constant(c: BigRational) -> Self {
        Laurent::new(0, vec![c])
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn is_one(&self) -> bool {
        self.low == 0 && self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    fn add(&self, other: &Laurent) -> Laurent {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let low = self.low.min(other.low);
        let pad = |l: &Laurent| -> Coeffs {
            let mut v = vec![BigRational::zero(); (l.low - low) as usize];
            v.extend(l.coeffs.iter().cloned());
            v
        };
        Laurent::new(low, poly::add(&pad(self), &pad(other)))
    }

    fn mul(&self, other: &Laurent) -> Laurent {
        if self.is_zero() || other.is_zero() {
            return Laurent::default();
        }
        Laurent::new(self.low + other.low, poly::mul(&self.coeffs, &other.coeffs))
    }

    fn scale(&self, c: &BigRational) -> Laurent {
        Laurent::new(self.low, poly::scale(&self.coeffs, c))
    }

    fn neg(&self) -> Laurent {
        Laurent { low: self.low, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    fn terms_desc(&self) -> impl Iterator<Item = (i64, &BigRational)> {
        self.coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.low + i as i64, c))
    }
}

/// An element of the rational function field `Q(q)` in canonical form.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct QScalar {
    num: Laurent,
    // monic, nonzero constant term
    den: Coeffs,
}

impl Default for QScalar {
    fn default() -> Self {
        QScalar::zero()
    }
}

fn one_poly() -> Coeffs {
    vec![BigRational::one()]
}

impl QScalar {
    pub fn zero() -> Self {
        QScalar { num: Laurent::default(), den: one_poly() }
    }

    pub fn one() -> Self {
        QScalar::from_int(1)
    }

    pub fn from_int(c: i64) -> Self {
        QScalar::from_rational(BigRational::from_integer(BigInt::from(c)))
    }

    pub fn from_bigint(c: BigInt) -> Self {
        QScalar::from_rational(BigRational::from_integer(c))
    }

    pub fn from_rational(c: BigRational) -> Self {
        QScalar { num: Laurent::constant(c), den: one_poly() }
    }

    /// `q^k`.
    pub fn qpow(k: i64) -> Self {
        QScalar { num: Laurent::new(k, vec![BigRational::one()]), den: one_poly() }
    }

    /// `c * q^k`.
    pub fn monomial(c: BigRational, k: i64) -> Self {
        QScalar { num: Laurent::new(k, vec![c]), den: one_poly() }
    }

    /// Laurent polynomial from `(exponent, coefficient)` pairs.
    pub fn laurent<I: IntoIterator<Item = (i64, BigRational)>>(terms: I) -> Self {
        let mut acc = Laurent::default();
        for (k, c) in terms {
            acc = acc.add(&Laurent::new(k, vec![c]));
        }
        QScalar { num: acc, den: one_poly() }
    }

    fn from_parts(num: Laurent, den: Laurent) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(QScalar::zero());
        }
        let shift = num.low - den.low;
        let mut n = num.coeffs;
        let mut d = den.coeffs;
        if d.len() > 1 {
            let g = poly::gcd(&n, &d);
            if g.len() > 1 {
                n = poly::divrem(&n, &g).0;
                d = poly::divrem(&d, &g).0;
            }
        }
        let lc = d.last().unwrap().clone();
        if !lc.is_one() {
            let inv = lc.recip();
            n = poly::scale(&n, &inv);
            d = poly::scale(&d, &inv);
        }
        Ok(QScalar { num: Laurent::new(shift, n), den: d })
    }

    fn den_laurent(&self) -> Laurent {
        Laurent { low: 0, coeffs: self.den.clone() }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.len() == 1 && self.num.is_one()
    }

    /// True when the value is a Laurent polynomial.
    pub fn is_laurent(&self) -> bool {
        self.den.len() == 1
    }

    /// Laurent coefficients keyed by exponent, when the value is a Laurent polynomial.
    pub fn laurent_terms(&self) -> Option<BTreeMap<i64, BigRational>> {
        if !self.is_laurent() {
            return None;
        }
        Some(self.num.terms_desc().map(|(k, c)| (k, c.clone())).collect())
    }

    /// `Some((c, k))` when the value is `c * q^k` with `c != 0`.
    pub fn as_monomial(&self) -> Option<(BigRational, i64)> {
        if self.is_laurent() && self.num.coeffs.len() == 1 {
            Some((self.num.coeffs[0].clone(), self.num.low))
        } else {
            None
        }
    }

    /// Rational constant, if the value does not depend on `q`.
    pub fn as_constant(&self) -> Option<BigRational> {
        if self.is_zero() {
            return Some(BigRational::zero());
        }
        match self.as_monomial() {
            Some((c, 0)) => Some(c),
            _ => None,
        }
    }

    /// Numerator and denominator as ordinary polynomials (nonnegative exponents),
    /// with every negative power of `q` moved into the denominator.
    pub fn numerator_denominator(&self) -> (BTreeMap<i64, BigRational>, BTreeMap<i64, BigRational>) {
        let shift = self.num.low.min(0);
        let num = self
            .num
            .terms_desc()
            .map(|(k, c)| (k - shift, c.clone()))
            .collect();
        let den = self
            .den
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i as i64 - shift, c.clone()))
            .collect();
        (num, den)
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        QScalar::from_parts(self.den_laurent(), self.num.clone())
    }

    pub fn checked_div(&self, other: &QScalar) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, k: i64) -> Result<Self> {
        if k < 0 {
            return self.inv()?.pow(-k);
        }
        if let Some((c, e)) = self.as_monomial() {
            let c = num_traits::pow::pow(c, k as usize);
            return Ok(QScalar::monomial(c, e * k));
        }
        let mut acc = QScalar::one();
        let mut base = self.clone();
        let mut k = k as u64;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            k >>= 1;
        }
        Ok(acc)
    }

    /// Exact value at `q = q0`. A rational `q0` outside `{0, 1, -1}` is never a
    /// root of unity.
    pub fn eval(&self, q0: &BigRational) -> Result<BigRational> {
        check_parameter(q0)?;
        let d = poly::eval(&self.den, q0);
        if d.is_zero() {
            return Err(Error::EvaluationPole(q0.to_string()));
        }
        let n = poly::eval(&self.num.coeffs, q0) * rational_pow(q0, self.num.low);
        Ok(n / d)
    }

    /// Canonical re-normalization. Values are always canonical, so this is the identity.
    pub fn normalize(&self) -> Self {
        QScalar::from_parts(self.num.clone(), self.den_laurent()).expect("denominator is nonzero")
    }

    fn add_impl(&self, other: &QScalar) -> QScalar {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            let num = self.num.add(&other.num);
            if self.den.len() == 1 {
                return QScalar { num, den: one_poly() };
            }
            return QScalar::from_parts(num, self.den_laurent()).expect("nonzero denominator");
        }
        let num = self.num.mul(&other.den_laurent()).add(&other.num.mul(&self.den_laurent()));
        let den = self.den_laurent().mul(&other.den_laurent());
        QScalar::from_parts(num, den).expect("nonzero denominator")
    }

    fn mul_impl(&self, other: &QScalar) -> QScalar {
        if self.is_zero() || other.is_zero() {
            return QScalar::zero();
        }
        if self.den.len() == 1 && other.den.len() == 1 {
            return QScalar { num: self.num.mul(&other.num), den: one_poly() };
        }
        if other.den.len() == 1 && other.num.coeffs.len() == 1 {
            // multiplying by c*q^k keeps the pair coprime
            let num = Laurent::new(self.num.low + other.num.low, poly::scale(&self.num.coeffs, &other.num.coeffs[0]));
            return QScalar { num, den: self.den.clone() };
        }
        if self.den.len() == 1 && self.num.coeffs.len() == 1 {
            return other.mul_impl(self);
        }
        let num = self.num.mul(&other.num);
        let den = self.den_laurent().mul(&other.den_laurent());
        QScalar::from_parts(num, den).expect("nonzero denominator")
    }

    pub fn scale_rational(&self, c: &BigRational) -> QScalar {
        if c.is_zero() {
            return QScalar::zero();
        }
        QScalar { num: self.num.scale(c), den: self.den.clone() }
    }
}

pub(crate) fn check_parameter(q0: &BigRational) -> Result<()> {
    if q0.is_zero() || q0.abs().is_one() {
        return Err(Error::InvalidParameter(format!("q = {q0} is 0 or a root of unity")));
    }
    Ok(())
}

fn rational_pow(x: &BigRational, k: i64) -> BigRational {
    let p = num_traits::pow::pow(x.clone(), k.unsigned_abs() as usize);
    if k < 0 {
        p.recip()
    } else {
        p
    }
}

fn fmt_laurent(l: &Laurent, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if l.is_zero() {
        return write!(f, "0");
    }
    for (idx, (k, c)) in l.terms_desc().enumerate() {
        let neg = c.is_negative();
        let mag = c.abs();
        match (idx, neg) {
            (0, true) => write!(f, "-")?,
            (0, false) => {}
            (_, true) => write!(f, " - ")?,
            (_, false) => write!(f, " + ")?,
        }
        let mono = match k {
            0 => None,
            1 => Some("q".to_string()),
            _ => Some(format!("q^{k}")),
        };
        match mono {
            None => write!(f, "{mag}")?,
            Some(m) if mag.is_one() => write!(f, "{m}")?,
            Some(m) => write!(f, "{mag}*{m}")?,
        }
    }
    Ok(())
}

impl fmt::Display for QScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_laurent() {
            return fmt_laurent(&self.num, f);
        }
        write!(f, "(")?;
        fmt_laurent(&self.num, f)?;
        write!(f, ")/(")?;
        fmt_laurent(&self.den_laurent(), f)?;
        write!(f, ")")
    }
}

impl QScalar {
    /// True when the rendering needs parentheses as a factor in a product.
    pub fn is_compound(&self) -> bool {
        !self.is_laurent() || self.num.coeffs.iter().filter(|c| !c.is_zero()).count() > 1
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $imp:ident) => {
        impl $tr<&QScalar> for &QScalar {
            type Output = QScalar;
            fn $method(self, rhs: &QScalar) -> QScalar {
                self.$imp(rhs)
            }
        }
        impl $tr<QScalar> for QScalar {
            type Output = QScalar;
            fn $method(self, rhs: QScalar) -> QScalar {
                (&self).$imp(&rhs)
            }
        }
        impl $tr<&QScalar> for QScalar {
            type Output = QScalar;
            fn $method(self, rhs: &QScalar) -> QScalar {
                (&self).$imp(rhs)
            }
        }
        impl $tr<QScalar> for &QScalar {
            type Output = QScalar;
            fn $method(self, rhs: QScalar) -> QScalar {
                self.$imp(&rhs)
            }
        }
    };
}

impl QScalar {
    fn sub_impl(&self, rhs: &QScalar) -> QScalar {
        self.add_impl(&-rhs)
    }
}

forward_binop!(Add, add, add_impl);
forward_binop!(Sub, sub, sub_impl);
forward_binop!(Mul, mul, mul_impl);

impl Neg for &QScalar {
    type Output = QScalar;
    fn neg(self) -> QScalar {
        QScalar { num: self.num.neg(), den: self.den.clone() }
    }
}

impl Neg for QScalar {
    type Output = QScalar;
    fn neg(self) -> QScalar {
        -&self
    }
}

impl From<i64> for QScalar {
    fn from(c: i64) -> Self {
        QScalar::from_int(c)
    }
}

impl From<BigRational> for QScalar {
    fn from(c: BigRational) -> Self {
        QScalar::from_rational(c)
    }
}

/// Shorthand for `q^k`.
pub fn qpow(k: i64) -> QScalar {
    QScalar::qpow(k)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn one_minus_q(k: i64) -> QScalar {
        QScalar::one() - qpow(k)
    }

    #[test]
    fn qpow_basics() {
        assert_eq!(qpow(0), QScalar::one());
        assert!((qpow(2) * qpow(-2)).is_one());
        let (num, den) = qpow(-3).numerator_denominator();
        assert_eq!(num, BTreeMap::from([(0, r(1, 1))]));
        assert_eq!(den, BTreeMap::from([(3, r(1, 1))]));
    }

    #[test]
    fn addition_examples() {
        assert!((QScalar::one() + QScalar::from_int(-1)).is_zero());
        assert_eq!(qpow(1) + qpow(1), QScalar::monomial(r(2, 1), 1));
        // 1/(1-q) + 1/(1+q) = 2/(1-q^2), cross-multiplied by hand
        let lhs = one_minus_q(1).inv().unwrap() + (QScalar::one() + qpow(1)).inv().unwrap();
        let rhs = QScalar::from_int(2).checked_div(&one_minus_q(2)).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn multiplication_examples() {
        assert!((qpow(2) * qpow(-2)).is_one());
        assert!((one_minus_q(2) * one_minus_q(2).inv().unwrap()).is_one());
        let prod = one_minus_q(1) * (QScalar::one() + qpow(1));
        assert_eq!(prod, one_minus_q(2));
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(QScalar::one().inv().unwrap(), QScalar::one());
        assert_eq!(qpow(5).inv().unwrap(), qpow(-5));
        let x = one_minus_q(2);
        assert!((x.inv().unwrap() * &x).is_one());
        assert_eq!(QScalar::zero().inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn evaluation_examples() {
        let two = r(2, 1);
        assert_eq!(qpow(3).eval(&two).unwrap(), r(8, 1));
        let x = one_minus_q(2).inv().unwrap();
        assert_eq!(x.eval(&two).unwrap(), r(-1, 3));
        assert!(matches!(x.eval(&r(1, 1)), Err(Error::InvalidParameter(_))));
        assert!(matches!(x.eval(&r(0, 1)), Err(Error::InvalidParameter(_))));
        let pole = (qpow(1) - QScalar::from_int(2)).inv().unwrap();
        assert!(matches!(pole.eval(&two), Err(Error::EvaluationPole(_))));
    }

    #[test]
    fn canonical_denominator_is_monic() {
        // 3 / (2 - 4q) = (-3/4) / (q - 1/2)
        let x = QScalar::from_int(3)
            .checked_div(&(QScalar::from_int(2) - QScalar::monomial(r(4, 1), 1)))
            .unwrap();
        let (num, den) = x.numerator_denominator();
        assert_eq!(num, BTreeMap::from([(0, r(-3, 4))]));
        assert_eq!(den, BTreeMap::from([(0, r(-1, 2)), (1, r(1, 1))]));
        assert_eq!(x.normalize(), x);
    }

    #[test]
    fn display_forms() {
        assert_eq!(qpow(-1).to_string(), "q^-1");
        let x = qpow(2) - QScalar::from_int(1) + QScalar::monomial(r(-2, 3), -1);
        assert_eq!(x.to_string(), "q^2 - 1 - 2/3*q^-1");
        assert_eq!(one_minus_q(2).inv().unwrap().to_string(), "(-1)/(q^2 - 1)");
    }
}
