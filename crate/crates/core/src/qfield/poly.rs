//! Dense univariate polynomials over the rationals, coefficient `i` at index `i`.
//!
//! Every vector handed out by these helpers is trimmed: no trailing zeros,
//! and the zero polynomial is the empty vector.

use num_rational::BigRational;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub(crate) type Coeffs = Vec<BigRational>;

pub(crate) fn trim(v: &mut Coeffs) {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
}

pub(crate) fn add(a: &[BigRational], b: &[BigRational]) -> Coeffs {
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let mut out: Coeffs = long.to_vec();
    for (o, s) in out.iter_mut().zip(short) {
        *o += s;
    }
    trim(&mut out);
    out
}

pub(crate) fn mul(a: &[BigRational], b: &[BigRational]) -> Coeffs {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if y.is_zero() {
                continue;
            }
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

pub(crate) fn scale(a: &[BigRational], c: &BigRational) -> Coeffs {
    if c.is_zero() {
        return Vec::new();
    }
    a.iter().map(|x| x * c).collect()
}

/// Quotient and remainder; `b` must be nonzero.
pub(crate) fn divrem(a: &[BigRational], b: &[BigRational]) -> (Coeffs, Coeffs) {
    let db = b.len() - 1;
    let lead_inv = b[db].recip();
    let mut rem: Coeffs = a.to_vec();
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let mut quot = vec![BigRational::zero(); rem.len() - db];
    while rem.len() >= b.len() {
        let shift = rem.len() - b.len();
        let c = rem.last().unwrap() * &lead_inv;
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                rem[shift + j] -= &c * y;
            }
        }
        quot[shift] = c;
        rem.pop();
        trim(&mut rem);
    }
    trim(&mut quot);
    (quot, rem)
}

pub(crate) fn make_monic(a: &mut Coeffs) {
    if let Some(lc) = a.last().cloned() {
        if !lc.is_one() {
            let inv = lc.recip();
            for x in a.iter_mut() {
                *x *= &inv;
            }
        }
    }
}

/// Monic greatest common divisor, via a primitive remainder sequence over the integers.
pub(crate) fn gcd(a: &[BigRational], b: &[BigRational]) -> Coeffs {
    if a.is_empty() || b.is_empty() {
        let mut out = if a.is_empty() { b.to_vec() } else { a.to_vec() };
        make_monic(&mut out);
        return out;
    }
    let (mut x, mut y) = (primitive(a), primitive(b));
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while y.len() > 1 {
        let r = pseudo_rem(&x, &y);
        if r.is_empty() {
            break;
        }
        x = y;
        y = primitive_int(r);
    }
    let mut out: Coeffs = if y.len() == 1 {
        vec![BigRational::one()]
    } else {
        y.into_iter().map(BigRational::from_integer).collect()
    };
    make_monic(&mut out);
    out
}

fn primitive(a: &[BigRational]) -> Vec<BigInt> {
    let den = a.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    primitive_int(a.iter().map(|c| c.numer() * (&den / c.denom())).collect())
}

fn primitive_int(mut a: Vec<BigInt>) -> Vec<BigInt> {
    while a.last().is_some_and(Zero::is_zero) {
        a.pop();
    }
    let mut content = a.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if a.last().is_some_and(|c| c.is_negative()) {
        content = -content;
    }
    if !content.is_one() && !content.is_zero() {
        for c in a.iter_mut() {
            *c = &*c / &content;
        }
    }
    a
}

/// `lc(b)^k * a mod b` carried out without leaving the integers.
fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut rem = a.to_vec();
    let lb = b.last().unwrap();
    while rem.len() >= b.len() {
        let shift = rem.len() - b.len();
        let lr = rem.last().unwrap().clone();
        for c in rem.iter_mut() {
            *c *= lb;
        }
        for (j, y) in b.iter().enumerate() {
            rem[shift + j] -= &lr * y;
        }
        rem.pop();
        while rem.last().is_some_and(Zero::is_zero) {
            rem.pop();
        }
        let g = rem.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if g > BigInt::one() {
            for c in rem.iter_mut() {
                *c = &*c / &g;
            }
        }
    }
    rem
}

pub(crate) fn eval(a: &[BigRational], x: &BigRational) -> BigRational {
    let mut acc = BigRational::zero();
    for c in a.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn p(v: &[i64]) -> Coeffs {
        let mut out: Coeffs = v.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect();
        trim(&mut out);
        out
    }

    #[test]
    fn divrem_reconstructs() {
        let a = p(&[1, 0, 0, -1, 2]);
        let b = p(&[-1, 1]);
        let (qt, r) = divrem(&a, &b);
        assert_eq!(add(&mul(&qt, &b), &r), a);
        assert!(r.len() < b.len());
    }

    #[test]
    fn gcd_of_cyclotomic_products() {
        // (1 - q^2) and (1 - q^3) share the factor (q - 1)
        let g = gcd(&p(&[1, 0, -1]), &p(&[1, 0, 0, -1]));
        assert_eq!(g, p(&[-1, 1]));
        assert_eq!(gcd(&p(&[1, 1]), &p(&[1, -1])), p(&[1]));
    }
}
