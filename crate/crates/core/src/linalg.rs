//! Sparse exact row reduction over a field, keyed by any ordered column type.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::qfield::QScalar;

pub trait Field: Clone + PartialEq + fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Inverse of a nonzero value.
    fn inv(&self) -> Self;
}

impl Field for QScalar {
    fn zero() -> Self {
        QScalar::zero()
    }
    fn one() -> Self {
        QScalar::one()
    }
    fn is_zero(&self) -> bool {
        QScalar::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Self {
        QScalar::inv(self).expect("pivot is nonzero")
    }
}

impl Field for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Self {
        self.recip()
    }
}

pub type SparseVec<K, F> = BTreeMap<K, F>;

/// `v += c * w`, dropping cancelled entries.
pub fn axpy<K: Ord + Clone, F: Field>(v: &mut SparseVec<K, F>, c: &F, w: &SparseVec<K, F>) {
    for (k, x) in w {
        let delta = c.mul(x);
        match v.get_mut(k) {
            Some(y) => {
                *y = y.add(&delta);
                if y.is_zero() {
                    v.remove(k);
                }
            }
            None => {
                if !delta.is_zero() {
                    v.insert(k.clone(), delta);
                }
            }
        }
    }
}

#[derive(Clone, Debug)]
struct Row<K, F> {
    vec: SparseVec<K, F>,
    combo: SparseVec<usize, F>,
}

/// Row echelon form with distinct leading (largest) keys and unit leading coefficients.
///
/// With tracking enabled every stored row remembers how it was formed from the
/// inserted vectors, which turns membership into an explicit certificate.
#[derive(Clone, Debug)]
pub struct Echelon<K: Ord + Clone, F: Field> {
    rows: BTreeMap<K, Row<K, F>>,
    track: bool,
    inserted: usize,
}

impl<K: Ord + Clone, F: Field> Echelon<K, F> {
    pub fn new(track: bool) -> Self {
        Echelon { rows: BTreeMap::new(), track, inserted: 0 }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn inserted(&self) -> usize {
        self.inserted
    }

    pub fn pivots(&self) -> impl Iterator<Item = &K> {
        self.rows.keys()
    }

    pub fn rows(&self) -> impl Iterator<Item = &SparseVec<K, F>> {
        self.rows.values().map(|r| &r.vec)
    }

    fn reduce_leading(&self, v: &mut SparseVec<K, F>, combo: &mut SparseVec<usize, F>) {
        while let Some((k, c)) = v.iter().next_back() {
            let Some(row) = self.rows.get(k) else { break };
            let c = c.neg();
            axpy(v, &c, &row.vec);
            if self.track {
                axpy(combo, &c, &row.combo);
            }
        }
    }

    /// Adds `v` to the span; returns whether it was independent.
    pub fn insert(&mut self, mut v: SparseVec<K, F>) -> bool {
        let idx = self.inserted;
        self.inserted += 1;
        let mut combo = SparseVec::new();
        if self.track {
            combo.insert(idx, F::one());
        }
        self.reduce_leading(&mut v, &mut combo);
        let Some((k, lead)) = v.iter().next_back() else { return false };
        let (k, inv) = (k.clone(), lead.inv());
        if inv != F::one() {
            for x in v.values_mut() {
                *x = x.mul(&inv);
            }
            for x in combo.values_mut() {
                *x = x.mul(&inv);
            }
        }
        self.rows.insert(k, Row { vec: v, combo });
        true
    }

    /// Remainder of `v` after cancelling leading terms against pivots; zero iff `v` is in the span.
    pub fn remainder(&self, mut v: SparseVec<K, F>) -> SparseVec<K, F> {
        let mut unused = SparseVec::new();
        self.reduce_leading(&mut v, &mut unused);
        v
    }

    pub fn contains(&self, v: &SparseVec<K, F>) -> bool {
        self.remainder(v.clone()).is_empty()
    }

    /// Coefficients `c_i` with `v = sum c_i * inserted_i`, if `v` lies in the span.
    pub fn certificate(&self, v: &SparseVec<K, F>) -> Option<SparseVec<usize, F>> {
        assert!(self.track, "certificates need a tracking echelon");
        let mut v = v.clone();
        let mut cert = SparseVec::new();
        while let Some((k, c)) = v.iter().next_back() {
            let row = self.rows.get(k)?;
            let c = c.clone();
            axpy(&mut v, &c.neg(), &row.vec);
            axpy(&mut cert, &c, &row.combo);
        }
        Some(cert)
    }
}

/// Rank of a dense matrix given as rows.
pub fn rank<F: Field>(rows: &[Vec<F>]) -> usize {
    let mut ech: Echelon<usize, F> = Echelon::new(false);
    for r in rows {
        let v: SparseVec<usize, F> = r
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(i, x)| (i, x.clone()))
            .collect();
        ech.insert(v);
    }
    ech.rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qfield::qpow;
    use num_bigint::BigInt;

    fn r(x: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(x))
    }

    #[test]
    fn rank_of_small_matrices() {
        let m = vec![vec![r(1), r(2), r(3)], vec![r(2), r(4), r(6)], vec![r(0), r(1), r(1)]];
        assert_eq!(rank(&m), 2);
        let vander: Vec<Vec<QScalar>> = (0..3).map(|i| (0..3).map(|j| qpow(i * j)).collect()).collect();
        assert_eq!(rank(&vander), 3);
    }

    #[test]
    fn certificate_replays() {
        let mut e: Echelon<u32, BigRational> = Echelon::new(true);
        let a: SparseVec<u32, _> = [(0, r(1)), (2, r(1))].into_iter().collect();
        let b: SparseVec<u32, _> = [(1, r(3)), (2, r(2))].into_iter().collect();
        assert!(e.insert(a.clone()));
        assert!(e.insert(b.clone()));
        let mut target = SparseVec::new();
        axpy(&mut target, &r(5), &a);
        axpy(&mut target, &r(-2), &b);
        let cert = e.certificate(&target).unwrap();
        let mut replay = SparseVec::new();
        axpy(&mut replay, &cert[&0], &a);
        axpy(&mut replay, &cert[&1], &b);
        assert_eq!(replay, target);
        let outside: SparseVec<u32, _> = [(1, r(1))].into_iter().collect();
        assert!(e.certificate(&outside).is_none());
        assert!(!e.contains(&outside));
    }
}
