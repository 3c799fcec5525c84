//! Coproduct, counit and antipode of O_q and U_q, tensor powers, and the axiom checks.

mod pairing;

use std::collections::btree_map::{self, BTreeMap};
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::presets::{make_oq, make_uq, AlgebraParams};
use crate::qfield::{qpow, QScalar};
use crate::random;
use crate::report::Report;
use crate::rewrite::{Element, Monomial, Presentation};

pub use pairing::{PeelOrder, Pairing};

/// Finite sum of `N`-fold tensors of monomials over one presentation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tensor<const N: usize> {
    terms: BTreeMap<[Monomial; N], QScalar>,
}

pub type TensorElement = Tensor<2>;

impl<const N: usize> Default for Tensor<N> {
    fn default() -> Self {
        Tensor { terms: BTreeMap::new() }
    }
}

impl<const N: usize> Tensor<N> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn unit() -> Self {
        Self::pure(QScalar::one(), [Monomial::ONE; N])
    }

    pub fn pure(c: QScalar, legs: [Monomial; N]) -> Self {
        let mut t = Self::zero();
        t.add_term(legs, c);
        t
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

    pub fn iter(&self) -> btree_map::Iter<'_, [Monomial; N], QScalar> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, legs: [Monomial; N], c: QScalar) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(legs).or_default();
        *e = &*e + &c;
        if e.is_zero() {
            self.terms.remove(&legs);
        }
    }

    pub fn add_scaled(&mut self, other: &Self, c: &QScalar) {
        for (legs, d) in other.iter() {
            self.add_term(*legs, d * c);
        }
    }

    pub fn scale(&self, c: &QScalar) -> Self {
        let mut out = Self::zero();
        out.add_scaled(self, c);
        out
    }

    /// Adds `c * x_1 (x) ... (x) x_N`.
    pub fn add_outer(&mut self, c: &QScalar, legs: [&Element; N]) {
        let mut partial: Vec<(Vec<Monomial>, QScalar)> = vec![(Vec::with_capacity(N), c.clone())];
        for leg in legs {
            let mut next = Vec::with_capacity(partial.len() * leg.len());
            for (prefix, pc) in &partial {
                for (m, d) in leg.iter() {
                    let mut key = prefix.clone();
                    key.push(*m);
                    next.push((key, pc * d));
                }
            }
            partial = next;
        }
        for (key, v) in partial {
            let arr: [Monomial; N] = key.try_into().expect("arity");
            self.add_term(arr, v);
        }
    }

    /// Legwise product in the `N`-th tensor power of `p`.
    pub fn mul(&self, other: &Self, p: &Presentation) -> Self {
        let mut out = Self::zero();
        for (a, ca) in self.iter() {
            for (b, cb) in other.iter() {
                let prods: Vec<Arc<Element>> = (0..N).map(|i| p.mul_monomials(&a[i], &b[i])).collect();
                let legs: [&Element; N] = std::array::from_fn(|i| prods[i].as_ref());
                out.add_outer(&(ca * cb), legs);
            }
        }
        out
    }

    pub fn render(&self, p: &Presentation) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.iter()
            .map(|(legs, c)| {
                let body = legs.iter().map(|m| format!("({})", p.render_monomial(m))).collect::<Vec<_>>().join(" (*) ");
                if c.is_one() {
                    body
                } else if c.is_compound() {
                    format!("({c})*{body}")
                } else {
                    format!("{c}*{body}")
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl<const N: usize> std::ops::Sub for &Tensor<N> {
    type Output = Tensor<N>;
    fn sub(self, rhs: &Tensor<N>) -> Tensor<N> {
        let mut out = self.clone();
        out.add_scaled(rhs, &-QScalar::one());
        out
    }
}

/// Coproduct, counit and antipode given on generators and extended (anti)multiplicatively.
#[derive(Clone, Debug)]
pub struct HopfStructure {
    base: Arc<Presentation>,
    params: Option<AlgebraParams>,
    delta: Vec<TensorElement>,
    counit: Vec<QScalar>,
    antipode: Vec<Element>,
    delta_inv: Vec<Option<TensorElement>>,
    counit_inv: Vec<Option<QScalar>>,
    antipode_inv: Vec<Option<Element>>,
}

impl HopfStructure {
    pub fn new(
        base: Arc<Presentation>,
        params: Option<AlgebraParams>,
        delta: Vec<TensorElement>,
        counit: Vec<QScalar>,
        antipode: Vec<Element>,
    ) -> Result<Self> {
        let n = base.ngens();
        if delta.len() != n || counit.len() != n || antipode.len() != n {
            return Err(Error::InvalidPresentation("Hopf data must cover every generator".into()));
        }
        let mut delta_inv = vec![None; n];
        let mut counit_inv = vec![None; n];
        let mut antipode_inv = vec![None; n];
        for g in (0..n).filter(|&g| base.is_invertible(g)) {
            let (legs, c) = delta[g]
                .iter()
                .next()
                .filter(|_| delta[g].len() == 1)
                .ok_or_else(|| Error::NotInvertible(format!("coproduct of {}", base.gen_name(g))))?;
            let l0 = base.inverse(&Element::from_monomial(legs[0]))?;
            let l1 = base.inverse(&Element::from_monomial(legs[1]))?;
            let mut t = TensorElement::zero();
            t.add_outer(&c.inv()?, [&l0, &l1]);
            delta_inv[g] = Some(t);
            counit_inv[g] = Some(counit[g].inv()?);
            antipode_inv[g] = Some(base.inverse(&antipode[g])?);
        }
        Ok(HopfStructure { base, params, delta, counit, antipode, delta_inv, counit_inv, antipode_inv })
    }

    pub fn base(&self) -> &Arc<Presentation> {
        &self.base
    }

    pub fn params(&self) -> Option<AlgebraParams> {
        self.params
    }

    fn letter_delta(&self, g: usize, e: i32) -> TensorElement {
        let unit = if e > 0 { &self.delta[g] } else { self.delta_inv[g].as_ref().expect("invertible") };
        let mut acc = TensorElement::unit();
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(unit, &self.base);
        }
        acc
    }

    pub fn coproduct_monomial(&self, m: &Monomial) -> TensorElement {
        let mut acc = TensorElement::unit();
        for l in m.letters() {
            acc = acc.mul(&self.letter_delta(l.gen, l.exp), &self.base);
        }
        acc
    }

    pub fn coproduct(&self, x: &Element) -> Result<TensorElement> {
        self.base.validate_element(x)?;
        let mut out = TensorElement::zero();
        for (m, c) in x.iter() {
            out.add_scaled(&self.coproduct_monomial(m), c);
        }
        Ok(out)
    }

    pub fn counit_monomial(&self, m: &Monomial) -> QScalar {
        let mut acc = QScalar::one();
        for l in m.letters() {
            let v = if l.exp > 0 { &self.counit[l.gen] } else { self.counit_inv[l.gen].as_ref().expect("invertible") };
            acc = acc * v.pow(i64::from(l.exp.abs())).unwrap_or_default();
        }
        acc
    }

    pub fn counit(&self, x: &Element) -> Result<QScalar> {
        self.base.validate_element(x)?;
        Ok(x.iter().fold(QScalar::zero(), |acc, (m, c)| acc + c * self.counit_monomial(m)))
    }

    pub fn antipode_monomial(&self, m: &Monomial) -> Element {
        let mut acc = Element::one();
        let letters: Vec<_> = m.letters().collect();
        for l in letters.into_iter().rev() {
            let s = if l.exp > 0 { &self.antipode[l.gen] } else { self.antipode_inv[l.gen].as_ref().expect("invertible") };
            for _ in 0..l.exp.unsigned_abs() {
                acc = self.base.multiply(&acc, s);
            }
        }
        acc
    }

    pub fn antipode(&self, x: &Element) -> Result<Element> {
        self.base.validate_element(x)?;
        let mut out = Element::zero();
        for (m, c) in x.iter() {
            out.add_scaled(&self.antipode_monomial(m), c);
        }
        Ok(out)
    }

    /// `(Delta (x) id)` applied to a tensor.
    pub fn delta_left(&self, t: &TensorElement) -> Tensor<3> {
        let mut out = Tensor::<3>::zero();
        for (legs, c) in t.iter() {
            for (d, e) in self.coproduct_monomial(&legs[0]).iter() {
                out.add_term([d[0], d[1], legs[1]], c * e);
            }
        }
        out
    }

    /// `(id (x) Delta)` applied to a tensor.
    pub fn delta_right(&self, t: &TensorElement) -> Tensor<3> {
        let mut out = Tensor::<3>::zero();
        for (legs, c) in t.iter() {
            for (d, e) in self.coproduct_monomial(&legs[1]).iter() {
                out.add_term([legs[0], d[0], d[1]], c * e);
            }
        }
        out
    }

    fn counit_leg(&self, t: &TensorElement, leg: usize) -> Element {
        let mut out = Element::zero();
        for (legs, c) in t.iter() {
            out.add_term(legs[1 - leg], c * self.counit_monomial(&legs[leg]));
        }
        out
    }

    fn antipode_leg(&self, t: &TensorElement, leg: usize) -> Element {
        let mut out = Element::zero();
        for (legs, c) in t.iter() {
            let (l, r) = if leg == 0 {
                (self.antipode_monomial(&legs[0]), Element::from_monomial(legs[1]))
            } else {
                (Element::from_monomial(legs[0]), self.antipode_monomial(&legs[1]))
            };
            out.add_scaled(&self.base.multiply(&l, &r), c);
        }
        out
    }

    /// Coassociativity, counit and antipode laws on seeded random elements.
    pub fn check_axioms(&self, degree_bound: u32, samples: usize, seed: u64) -> Report {
        let mut report = Report::new(format!("hopf-axioms {}", self.base.name()));
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for i in 0..samples {
            let x = random::element(&self.base, &mut rng, degree_bound, 3);
            let dx = self.coproduct(&x).expect("sampled over base");
            let shown = || self.base.render(&x);
            let coassoc = self.delta_left(&dx) == self.delta_right(&dx);
            report.record(coassoc, format!("coassociativity #{i}"), shown);
            let counit = self.counit_leg(&dx, 0) == x && self.counit_leg(&dx, 1) == x;
            report.record(counit, format!("counit #{i}"), shown);
            let eps = Element::scalar(self.counit(&x).expect("sampled over base"));
            let anti = self.antipode_leg(&dx, 0) == eps && self.antipode_leg(&dx, 1) == eps;
            report.record(anti, format!("antipode #{i}"), shown);
        }
        report
    }

    /// Residuals of every defining relation under Delta (in the tensor square) and S.
    pub fn check_relations(&self) -> Report {
        let p = &self.base;
        let mut report = Report::new(format!("hopf-relations {}", p.name()));
        let gen_delta = |g: usize, e: i32| self.letter_delta(g, e);
        for rule in p.rules() {
            let (l, e) = (rule.later, rule.earlier);
            let name = format!("{}*{}", p.gen_name(l), p.gen_name(e));
            let lhs = gen_delta(l, 1).mul(&gen_delta(e, 1), p);
            let mut rhs = gen_delta(e, 1).mul(&gen_delta(l, 1), p).scale(&rule.swap);
            rhs.add_scaled(&self.coproduct(&rule.tail).expect("tail over base"), &QScalar::one());
            let res = &lhs - &rhs;
            report.record(res.is_zero(), format!("Delta({name})"), || res.render(p));
            // S reverses products: S(e) S(l) = swap S(l) S(e) + S(tail)
            let sl = &self.antipode[l];
            let se = &self.antipode[e];
            let lhs = p.multiply(se, sl);
            let rhs = &p.multiply(sl, se).scale(&rule.swap) + &self.antipode(&rule.tail).expect("tail over base");
            let res = &lhs - &rhs;
            report.record(res.is_zero(), format!("S({name})"), || p.render(&res));
        }
        for g in (0..p.ngens()).filter(|&g| p.is_invertible(g)) {
            let name = p.gen_name(g);
            for (a, b) in [(1, -1), (-1, 1)] {
                let d = gen_delta(g, a).mul(&gen_delta(g, b), p);
                let res = &d - &TensorElement::unit();
                report.record(res.is_zero(), format!("Delta({name}^{a}*{name}^{b})"), || res.render(p));
                let m = Monomial::generator(g, a);
                let n = Monomial::generator(g, b);
                let s = p.multiply(&self.antipode_monomial(&n), &self.antipode_monomial(&m));
                let res = &s - &Element::one();
                report.record(res.is_zero(), format!("S({name}^{a}*{name}^{b})"), || p.render(&res));
            }
        }
        report
    }
}

fn gen(p: &Presentation, name: &str) -> Monomial {
    Monomial::generator(p.gen_index(name).expect("preset generator"), 1)
}

fn mono(p: &Presentation, letters: &[(&str, i64)]) -> Monomial {
    let mut m = Monomial::ONE;
    for (g, e) in letters {
        m.set(p.gen_index(g).expect("preset generator"), *e as i32);
    }
    m
}

pub fn oq_hopf(params: AlgebraParams) -> Result<HopfStructure> {
    let p = Arc::new(make_oq(params)?);
    hopf_over_oq(params, p)
}

pub(crate) fn hopf_over_oq(params: AlgebraParams, p: Arc<Presentation>) -> Result<HopfStructure> {
    let (m, n) = (params.m, params.n);
    let one = QScalar::one;
    let mut delta = vec![TensorElement::zero(); 3];
    let mut counit = vec![QScalar::zero(); 3];
    let mut antipode = vec![Element::zero(); 3];
    let (a, b, c) = (p.gen_index("a")?, p.gen_index("b")?, p.gen_index("c")?);
    delta[a] = TensorElement::pure(one(), [gen(&p, "a"), gen(&p, "a")]);
    delta[b] = TensorElement::pure(one(), [gen(&p, "b"), mono(&p, &[("a", -n)])]);
    delta[b].add_term([mono(&p, &[("a", n)]), gen(&p, "b")], one());
    delta[c] = TensorElement::pure(one(), [gen(&p, "c"), mono(&p, &[("a", m)])]);
    delta[c].add_term([mono(&p, &[("a", -m)]), gen(&p, "c")], one());
    counit[a] = one();
    antipode[a] = Element::from_monomial(mono(&p, &[("a", -1)]));
    antipode[b] = Element::term(-qpow(-n * n), gen(&p, "b"));
    antipode[c] = Element::term(-qpow(m * m), gen(&p, "c"));
    HopfStructure::new(p, Some(params), delta, counit, antipode)
}

pub fn uq_hopf(params: AlgebraParams) -> Result<HopfStructure> {
    let (m, n) = (params.m, params.n);
    let p = Arc::new(make_uq(params)?);
    let one = QScalar::one;
    let mut delta = vec![TensorElement::zero(); 3];
    let mut counit = vec![QScalar::zero(); 3];
    let mut antipode = vec![Element::zero(); 3];
    let (k, e, f) = (p.gen_index("K")?, p.gen_index("E")?, p.gen_index("F")?);
    delta[k] = TensorElement::pure(one(), [gen(&p, "K"), gen(&p, "K")]);
    delta[e] = TensorElement::pure(one(), [gen(&p, "E"), mono(&p, &[("K", m)])]);
    delta[e].add_term([Monomial::ONE, gen(&p, "E")], one());
    delta[f] = TensorElement::pure(one(), [gen(&p, "F"), Monomial::ONE]);
    delta[f].add_term([mono(&p, &[("K", -n)]), gen(&p, "F")], one());
    counit[k] = one();
    antipode[k] = Element::from_monomial(mono(&p, &[("K", -1)]));
    let ek = p.normal_form_word(&[
        crate::rewrite::Letter::new(e, 1),
        crate::rewrite::Letter::new(k, -m as i32),
    ])?;
    antipode[e] = -ek;
    let kf = p.normal_form_word(&[
        crate::rewrite::Letter::new(k, n as i32),
        crate::rewrite::Letter::new(f, 1),
    ])?;
    antipode[f] = -kf;
    HopfStructure::new(p, Some(params), delta, counit, antipode)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(m: i64, n: i64) -> AlgebraParams {
        AlgebraParams::new(m, n).unwrap()
    }

    #[test]
    fn oq_generator_data() {
        let h = oq_hopf(params(2, 3)).unwrap();
        let p = h.base().clone();
        let db = h.coproduct(&p.gen("b").unwrap()).unwrap();
        assert_eq!(db.render(&p), "(b) (*) (a^-3) + (a^3) (*) (b)");
        let a5 = Element::from_monomial(mono(&p, &[("a", 5)]));
        assert!(h.counit(&a5).unwrap().is_one());
        assert!(h.counit(&p.gen("b").unwrap()).unwrap().is_zero());
        let mut x = Element::term(QScalar::from_int(3) * qpow(1), gen(&p, "a"));
        x += &p.gen("c").unwrap();
        assert_eq!(h.counit(&x).unwrap(), QScalar::from_int(3) * qpow(1));
        let ai = Element::from_monomial(mono(&p, &[("a", -1)]));
        assert_eq!(h.antipode(&ai).unwrap(), p.gen("a").unwrap());
        assert_eq!(h.antipode(&p.gen("c").unwrap()).unwrap(), Element::term(-qpow(4), gen(&p, "c")));
    }

    #[test]
    fn antipode_of_ab_is_reversed() {
        let pr = params(1, 2);
        let h = oq_hopf(pr).unwrap();
        let p = h.base().clone();
        let ab = p.multiply(&p.gen("a").unwrap(), &p.gen("b").unwrap());
        // S(ab) = S(b) S(a) = -q^{-n^2} b a^{-1}
        let ba_inv = p.normal_form_word(&[
            crate::rewrite::Letter::new(p.gen_index("b").unwrap(), 1),
            crate::rewrite::Letter::new(p.gen_index("a").unwrap(), -1),
        ]).unwrap();
        assert_eq!(h.antipode(&ab).unwrap(), ba_inv.scale(&-qpow(-4)));
    }

    #[test]
    fn coproduct_of_bc_has_four_terms() {
        let h = oq_hopf(params(1, 1)).unwrap();
        let p = h.base().clone();
        let bc = p.multiply(&p.gen("b").unwrap(), &p.gen("c").unwrap());
        let d = h.coproduct(&bc).unwrap();
        // (b (x) a^-1 + a (x) b)(c (x) a + a^-1 (x) c), legs normal-ordered
        let mut expected = TensorElement::zero();
        expected.add_term([mono(&p, &[("c", 1), ("b", 1)]), Monomial::ONE], QScalar::one());
        // b a^-1 = q a^-1 b and a^-1 c = q^-1 c a^-1; a c = q c a and b a = q^-1 a b
        expected.add_term([mono(&p, &[("a", -1), ("b", 1)]), mono(&p, &[("c", 1), ("a", -1)])], QScalar::one());
        expected.add_term([mono(&p, &[("c", 1), ("a", 1)]), mono(&p, &[("a", 1), ("b", 1)])], QScalar::one());
        expected.add_term([Monomial::ONE, mono(&p, &[("c", 1), ("b", 1)])], QScalar::one());
        assert_eq!(d, expected);
    }

    #[test]
    fn axioms_and_relations_small() {
        for (m, n) in [(1, 1), (2, -3)] {
            for h in [oq_hopf(params(m, n)).unwrap(), uq_hopf(params(m, n)).unwrap()] {
                let rel = h.check_relations();
                assert!(rel.passed(), "{:?}", rel.failures);
                assert_eq!(rel.checked, 10);
                let ax = h.check_axioms(3, 10, 1);
                assert!(ax.passed(), "{:?}", ax.failures);
            }
        }
    }
}
