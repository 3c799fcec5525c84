use std::collections::btree_map::{self, BTreeMap, Entry};
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};

use crate::qfield::QScalar;

use super::Monomial;

/// Finite sum of normal-ordered monomials with nonzero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Element {
    terms: BTreeMap<Monomial, QScalar>,
}

impl Element {
    pub fn zero() -> Self {
        Element::default()
    }

    pub fn one() -> Self {
        Element::from_monomial(Monomial::ONE)
    }

    pub fn scalar(c: QScalar) -> Self {
        Element::term(c, Monomial::ONE)
    }

    pub fn from_monomial(m: Monomial) -> Self {
        Element::term(QScalar::one(), m)
    }

    pub fn term(c: QScalar, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Element { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, QScalar)>>(it: I) -> Self {
        let mut out = Element::zero();
        for (m, c) in it {
            out.add_term(m, c);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> btree_map::Iter<'_, Monomial, QScalar> {
        self.terms.iter()
    }

    pub fn monomials(&self) -> impl Iterator<Item = &Monomial> {
        self.terms.keys()
    }

    pub fn coefficient(&self, m: &Monomial) -> QScalar {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// The scalar value if the element is a multiple of 1.
    pub fn as_scalar(&self) -> Option<QScalar> {
        match self.terms.len() {
            0 => Some(QScalar::zero()),
            1 => self.terms.get(&Monomial::ONE).cloned(),
            _ => None,
        }
    }

    pub fn single_term(&self) -> Option<(&Monomial, &QScalar)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    pub fn add_term(&mut self, m: Monomial, c: QScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, other: &Element, c: &QScalar) {
        if c.is_zero() {
            return;
        }
        let unit = c.is_one();
        for (m, d) in other.iter() {
            let v = if unit { d.clone() } else { d * c };
            self.add_term(*m, v);
        }
    }

    pub fn scale(&self, c: &QScalar) -> Element {
        if c.is_zero() {
            return Element::zero();
        }
        Element { terms: self.terms.iter().map(|(m, d)| (*m, d * c)).collect() }
    }

    /// Applies `f` to every coefficient, dropping terms that become zero.
    pub fn map_coefficients<E, F: FnMut(&QScalar) -> Result<QScalar, E>>(&self, mut f: F) -> Result<Element, E> {
        let mut out = Element::zero();
        for (m, c) in self.iter() {
            out.add_term(*m, f(c)?);
        }
        Ok(out)
    }

    /// Relabels monomials through `f`, merging terms that collide.
    pub fn map_monomials<F: FnMut(&Monomial) -> Monomial>(&self, mut f: F) -> Element {
        Element::from_terms(self.iter().map(|(m, c)| (f(m), c.clone())))
    }
}

impl IntoIterator for Element {
    type Item = (Monomial, QScalar);
    type IntoIter = btree_map::IntoIter<Monomial, QScalar>;
    fn into_iter(self) -> Self::IntoIter {
        self.terms.into_iter()
    }
}

impl<'a> IntoIterator for &'a Element {
    type Item = (&'a Monomial, &'a QScalar);
    type IntoIter = btree_map::Iter<'a, Monomial, QScalar>;
    fn into_iter(self) -> Self::IntoIter {
        self.terms.iter()
    }
}

impl AddAssign<&Element> for Element {
    fn add_assign(&mut self, rhs: &Element) {
        for (m, c) in rhs.iter() {
            self.add_term(*m, c.clone());
        }
    }
}

impl SubAssign<&Element> for Element {
    fn sub_assign(&mut self, rhs: &Element) {
        for (m, c) in rhs.iter() {
            self.add_term(*m, -c);
        }
    }
}

impl Add<&Element> for &Element {
    type Output = Element;
    fn add(self, rhs: &Element) -> Element {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub<&Element> for &Element {
    type Output = Element;
    fn sub(self, rhs: &Element) -> Element {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Add for Element {
    type Output = Element;
    fn add(mut self, rhs: Element) -> Element {
        self += &rhs;
        self
    }
}

impl Sub for Element {
    type Output = Element;
    fn sub(mut self, rhs: Element) -> Element {
        self -= &rhs;
        self
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        Element { terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect() }
    }
}

impl Neg for Element {
    type Output = Element;
    fn neg(self) -> Element {
        -&self
    }
}
