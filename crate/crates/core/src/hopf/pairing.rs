//! The dual pairing U_q x O_q -> k(q), the induced action on O_q, and the smash-product check.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_rational::BigRational;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{oq_hopf, uq_hopf, HopfStructure, TensorElement};
use crate::error::{Error, Result};
use crate::linalg;
use crate::presets::AlgebraParams;
use crate::qfield::{qpow, QScalar};
use crate::random;
use crate::report::Report;
use crate::rewrite::{Element, Letter, Monomial, Presentation};

/// Which side is decomposed first when evaluating a pairing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PeelOrder {
    UFirst,
    XFirst,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum ULetter {
    K(i32),
    E,
    F,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum OLetter {
    A(i32),
    B,
    C,
}

type Memo = HashMap<(PeelOrder, Monomial, Monomial), QScalar>;

pub struct Pairing {
    params: AlgebraParams,
    uq: HopfStructure,
    oq: HopfStructure,
    memo: Mutex<Memo>,
    delta_u: Mutex<HashMap<Monomial, Arc<TensorElement>>>,
    delta_o: Mutex<HashMap<Monomial, Arc<TensorElement>>>,
}

fn split_first(m: &Monomial) -> Option<(Letter, Monomial)> {
    let g = m.first_index()?;
    let e = m.exponent(g);
    let step = e.signum();
    Some((Letter::new(g, step), m.with(g, e - step)))
}

fn is_letter(m: &Monomial) -> bool {
    m.letters().count() == 1 && m.letters().all(|l| l.exp.abs() == 1)
}

impl Pairing {
    pub fn new(params: AlgebraParams) -> Result<Self> {
        Self::with_structures(uq_hopf(params)?, oq_hopf(params)?)
    }

    pub fn with_structures(uq: HopfStructure, oq: HopfStructure) -> Result<Self> {
        let (pu, po) = (uq.params(), oq.params());
        let params = match (pu, po) {
            (Some(a), Some(b)) if a == b => a,
            _ => return Err(Error::MismatchedParams(format!("{} vs {}", uq.base().name(), oq.base().name()))),
        };
        Ok(Pairing {
            params,
            uq,
            oq,
            memo: Mutex::new(HashMap::new()),
            delta_u: Mutex::new(HashMap::new()),
            delta_o: Mutex::new(HashMap::new()),
        })
    }

    pub fn params(&self) -> AlgebraParams {
        self.params
    }

    pub fn uq(&self) -> &HopfStructure {
        &self.uq
    }

    pub fn oq(&self) -> &HopfStructure {
        &self.oq
    }

    fn check_operands(&self, u: &Element, x: &Element) -> Result<()> {
        self.uq.base().validate_element(u)?;
        self.oq.base().validate_element(x)
    }

    fn delta_cached(h: &HopfStructure, cache: &Mutex<HashMap<Monomial, Arc<TensorElement>>>, m: &Monomial) -> Arc<TensorElement> {
        if let Some(t) = cache.lock().unwrap().get(m) {
            return Arc::clone(t);
        }
        let t = Arc::new(h.coproduct_monomial(m));
        cache.lock().unwrap().insert(*m, Arc::clone(&t));
        t
    }

    fn u_letter(&self, l: Letter) -> ULetter {
        match self.uq.base().gen_name(l.gen) {
            "K" => ULetter::K(l.exp),
            "E" => ULetter::E,
            "F" => ULetter::F,
            other => unreachable!("unexpected generator {other}"),
        }
    }

    fn o_letter(&self, l: Letter) -> OLetter {
        match self.oq.base().gen_name(l.gen) {
            "a" => OLetter::A(l.exp),
            "b" => OLetter::B,
            "c" => OLetter::C,
            other => unreachable!("unexpected generator {other}"),
        }
    }

    /// The generator table: nonzero only on K^{+-1} x a^{+-1}, E x c and F x b.
    fn base_value(&self, u: Letter, x: Letter) -> QScalar {
        match (self.u_letter(u), self.o_letter(x)) {
            (ULetter::K(e), OLetter::A(d)) => qpow(-i64::from(e * d)),
            (ULetter::E, OLetter::C) | (ULetter::F, OLetter::B) => QScalar::one(),
            _ => QScalar::zero(),
        }
    }

    // <L u', x> = sum <L, x_(1)> <u', x_(2)>
    fn peel_u(&self, order: PeelOrder, u: &Monomial, x: &Monomial) -> QScalar {
        let (l, rest) = split_first(u).expect("nontrivial");
        let lm = Monomial::generator(l.gen, l.exp);
        let dx = Self::delta_cached(&self.oq, &self.delta_o, x);
        let mut acc = QScalar::zero();
        for (legs, c) in dx.iter() {
            let left = self.pair_monomials(order, &lm, &legs[0]);
            if left.is_zero() {
                continue;
            }
            acc = acc + c * left * self.pair_monomials(order, &rest, &legs[1]);
        }
        acc
    }

    // <u, M x'> = sum <u_(1), M> <u_(2), x'>
    fn peel_x(&self, order: PeelOrder, u: &Monomial, x: &Monomial) -> QScalar {
        let (l, rest) = split_first(x).expect("nontrivial");
        let lm = Monomial::generator(l.gen, l.exp);
        let du = Self::delta_cached(&self.uq, &self.delta_u, u);
        let mut acc = QScalar::zero();
        for (legs, c) in du.iter() {
            let left = self.pair_monomials(order, &legs[0], &lm);
            if left.is_zero() {
                continue;
            }
            acc = acc + c * left * self.pair_monomials(order, &legs[1], &rest);
        }
        acc
    }

    pub fn pair_monomials(&self, order: PeelOrder, u: &Monomial, x: &Monomial) -> QScalar {
        if u.is_one() {
            return self.oq.counit_monomial(x);
        }
        if x.is_one() {
            return self.uq.counit_monomial(u);
        }
        let key = (order, *u, *x);
        if let Some(v) = self.memo.lock().unwrap().get(&key) {
            return v.clone();
        }
        let (u_single, x_single) = (is_letter(u), is_letter(x));
        let v = if u_single && x_single {
            let ul = u.letters().next().unwrap();
            let xl = x.letters().next().unwrap();
            self.base_value(ul, xl)
        } else {
            match order {
                PeelOrder::UFirst if !u_single => self.peel_u(order, u, x),
                PeelOrder::UFirst => self.peel_x(order, u, x),
                PeelOrder::XFirst if !x_single => self.peel_x(order, u, x),
                PeelOrder::XFirst => self.peel_u(order, u, x),
            }
        };
        self.memo.lock().unwrap().insert(key, v.clone());
        v
    }

    pub fn pair_with(&self, order: PeelOrder, u: &Element, x: &Element) -> Result<QScalar> {
        self.check_operands(u, x)?;
        let mut acc = QScalar::zero();
        for (mu, cu) in u.iter() {
            for (mx, cx) in x.iter() {
                let v = self.pair_monomials(order, mu, mx);
                if !v.is_zero() {
                    acc = acc + cu * cx * v;
                }
            }
        }
        Ok(acc)
    }

    pub fn pair(&self, u: &Element, x: &Element) -> Result<QScalar> {
        self.pair_with(PeelOrder::UFirst, u, x)
    }

    /// `u . x = sum x_(1) <u, x_(2)>`.
    pub fn act(&self, u: &Element, x: &Element) -> Result<Element> {
        self.check_operands(u, x)?;
        let mut out = Element::zero();
        for (mx, cx) in x.iter() {
            let dx = Self::delta_cached(&self.oq, &self.delta_o, mx);
            for (legs, c) in dx.iter() {
                let mut v = QScalar::zero();
                for (mu, cu) in u.iter() {
                    v = v + cu * self.pair_monomials(PeelOrder::UFirst, mu, &legs[1]);
                }
                if !v.is_zero() {
                    out.add_term(legs[0], v * c * cx);
                }
            }
        }
        Ok(out)
    }

    fn u_elem(&self, w: &[(&str, i32)]) -> Element {
        word_in(self.uq.base(), w)
    }

    fn o_elem(&self, w: &[(&str, i32)]) -> Element {
        word_in(self.oq.base(), w)
    }

    /// The four generator pairings plus the derived value at K^{-1} x a.
    pub fn pairing_table(&self) -> Report {
        let mut report = Report::new("pairing-table");
        type Word<'a> = &'a [(&'a str, i32)];
        let cases: [(&str, Word, Word, QScalar); 5] = [
            ("<K,a>", &[("K", 1)], &[("a", 1)], qpow(-1)),
            ("<K,ai>", &[("K", 1)], &[("a", -1)], qpow(1)),
            ("<E,c>", &[("E", 1)], &[("c", 1)], QScalar::one()),
            ("<F,b>", &[("F", 1)], &[("b", 1)], QScalar::one()),
            ("<Ki,a>", &[("K", -1)], &[("a", 1)], qpow(1)),
        ];
        for (name, u, x, expected) in cases {
            let got = self.pair(&self.u_elem(u), &self.o_elem(x)).expect("preset generators");
            report.record(got == expected, name, || format!("got {got}, expected {expected}"));
        }
        let zeros: [(&str, &str); 6] = [("E", "a"), ("E", "b"), ("F", "a"), ("F", "c"), ("K", "b"), ("K", "c")];
        for (u, x) in zeros {
            let got = self.pair(&self.u_elem(&[(u, 1)]), &self.o_elem(&[(x, 1)])).expect("preset generators");
            report.record(got.is_zero(), format!("<{u},{x}>"), || format!("got {got}, expected 0"));
        }
        report
    }

    /// The nine listed action values together with the implied zero cases.
    pub fn action_table(&self) -> Report {
        let (m, n) = (self.params.m as i32, self.params.n as i32);
        let mut report = Report::new("action-table");
        let cases: Vec<(&str, &str, Element)> = vec![
            ("K", "a", self.o_elem(&[("a", 1)]).scale(&qpow(-1))),
            ("K", "b", self.o_elem(&[("b", 1)]).scale(&qpow(i64::from(n)))),
            ("K", "c", self.o_elem(&[("c", 1)]).scale(&qpow(-i64::from(m)))),
            ("E", "a", Element::zero()),
            ("E", "b", Element::zero()),
            ("E", "c", self.o_elem(&[("a", -m)])),
            ("F", "a", Element::zero()),
            ("F", "b", self.o_elem(&[("a", n)])),
            ("F", "c", Element::zero()),
        ];
        let po = self.oq.base();
        for (u, x, expected) in cases {
            let got = self.act(&self.u_elem(&[(u, 1)]), &self.o_elem(&[(x, 1)])).expect("preset generators");
            report.record(got == expected, format!("{u}.{x}"), || {
                format!("got {}, expected {}", po.render(&got), po.render(&expected))
            });
        }
        report
    }

    /// `u.(xy) = sum (u_(1).x)(u_(2).y)` and `(uv).x = u.(v.x)` on seeded samples.
    pub fn check_module_algebra(&self, degree_bound: u32, samples: usize, seed: u64) -> Report {
        let mut report = Report::new(format!("module-algebra Dq({})", self.params));
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (pu, po) = (self.uq.base().clone(), self.oq.base().clone());
        for i in 0..samples {
            let u = random::element(&pu, &mut rng, degree_bound, 2);
            let v = random::element(&pu, &mut rng, degree_bound, 2);
            let x = random::element(&po, &mut rng, degree_bound, 2);
            let y = random::element(&po, &mut rng, degree_bound, 2);
            let lhs = self.act(&u, &po.multiply(&x, &y)).expect("sampled");
            let mut rhs = Element::zero();
            for (legs, c) in self.uq.coproduct(&u).expect("sampled").iter() {
                let l = self.act(&Element::from_monomial(legs[0]), &x).expect("sampled");
                let r = self.act(&Element::from_monomial(legs[1]), &y).expect("sampled");
                rhs.add_scaled(&po.multiply(&l, &r), c);
            }
            report.record(lhs == rhs, format!("u.(xy) #{i}"), || {
                format!("u={} x={} y={}", pu.render(&u), po.render(&x), po.render(&y))
            });
            let lhs = self.act(&pu.multiply(&u, &v), &x).expect("sampled");
            let rhs = self.act(&u, &self.act(&v, &x).expect("sampled")).expect("sampled");
            report.record(lhs == rhs, format!("(uv).x #{i}"), || {
                format!("u={} v={} x={}", pu.render(&u), pu.render(&v), po.render(&x))
            });
        }
        report
    }

    /// Both peeling orders agree on `<uv, xy>` for seeded samples.
    pub fn check_peeling(&self, degree_bound: u32, samples: usize, seed: u64) -> Report {
        let mut report = Report::new(format!("pairing-peeling Dq({})", self.params));
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (pu, po) = (self.uq.base().clone(), self.oq.base().clone());
        for i in 0..samples {
            let u = pu.multiply(
                &random::element(&pu, &mut rng, degree_bound, 2),
                &random::element(&pu, &mut rng, degree_bound, 2),
            );
            let x = po.multiply(
                &random::element(&po, &mut rng, degree_bound, 2),
                &random::element(&po, &mut rng, degree_bound, 2),
            );
            let a = self.pair_with(PeelOrder::UFirst, &u, &x).expect("sampled");
            let b = self.pair_with(PeelOrder::XFirst, &u, &x).expect("sampled");
            report.record(a == b, format!("<uv,xy> #{i}"), || format!("u-first {a}, x-first {b}"));
        }
        report
    }

    /// Compares `sum (u_(1).x) u_(2)` with the normal form of `u*x` in D_q for
    /// `u` in {K, Ki, E, F} and `x` in {a, ai, b, c}.
    pub fn check_smash(&self, dq: &Presentation) -> Result<Report> {
        let mut report = Report::new(format!("smash {}", dq.name()));
        let (pu, po) = (self.uq.base().clone(), self.oq.base().clone());
        let u_images = identity_images(&pu, dq)?;
        let o_images = identity_images(&po, dq)?;
        let us: [(&str, i32); 4] = [("K", 1), ("K", -1), ("E", 1), ("F", 1)];
        let xs: [(&str, i32); 4] = [("a", 1), ("a", -1), ("b", 1), ("c", 1)];
        for (ug, ue) in us {
            for (xg, xe) in xs {
                let u = self.u_elem(&[(ug, ue)]);
                let x = self.o_elem(&[(xg, xe)]);
                let mut lhs = Element::zero();
                for (legs, c) in self.uq.coproduct(&u)?.iter() {
                    let acted = self.act(&Element::from_monomial(legs[0]), &x)?;
                    let acted = po.substitute(&acted, dq, &o_images)?;
                    let right = pu.substitute(&Element::from_monomial(legs[1]), dq, &u_images)?;
                    lhs.add_scaled(&dq.multiply(&acted, &right), c);
                }
                let rhs = dq.normal_form_word(&[
                    Letter::new(dq.gen_index(ug)?, ue),
                    Letter::new(dq.gen_index(xg)?, xe),
                ])?;
                let name = format!("{}*{}", letter_name(ug, ue), letter_name(xg, xe));
                report.record(lhs == rhs, name, || format!("smash {} vs relation {}", dq.render(&lhs), dq.render(&rhs)));
            }
        }
        Ok(report)
    }

    /// Rank of the Gram matrix between `F^i K^k E^j` and `c^j a^l b^i` with
    /// `i + j <= degree`, `|k|, |l| <= window`, evaluated at `q = q0`.
    /// Full rank at one admissible `q0` implies full rank for generic `q`.
    pub fn gram_rank(&self, degree: u32, window: i32, q0: &BigRational) -> Result<(usize, usize)> {
        let (pu, po) = (self.uq.base().clone(), self.oq.base().clone());
        let (fi, ki, ei) = (pu.gen_index("F")?, pu.gen_index("K")?, pu.gen_index("E")?);
        let (ci, ai, bi) = (po.gen_index("c")?, po.gen_index("a")?, po.gen_index("b")?);
        let mut us = Vec::new();
        let mut xs = Vec::new();
        for i in 0..=degree as i32 {
            for j in 0..=(degree as i32 - i) {
                for k in -window..=window {
                    us.push(Monomial::generator(fi, i).with(ki, k).with(ei, j));
                    xs.push(Monomial::generator(ci, j).with(ai, k).with(bi, i));
                }
            }
        }
        let mut rows = Vec::with_capacity(us.len());
        for u in &us {
            let mut row = Vec::with_capacity(xs.len());
            for x in &xs {
                row.push(self.pair_monomials(PeelOrder::UFirst, u, x).eval(q0)?);
            }
            rows.push(row);
        }
        Ok((linalg::rank(&rows), us.len()))
    }
}

fn letter_name(g: &str, e: i32) -> String {
    if e == -1 {
        format!("{g}i")
    } else {
        g.to_string()
    }
}

fn word_in(p: &Presentation, w: &[(&str, i32)]) -> Element {
    let letters: Vec<Letter> = w.iter().map(|(g, e)| Letter::new(p.gen_index(g).expect("preset generator"), *e)).collect();
    p.normal_form_word(&letters).expect("preset word")
}

/// Images of the generators of `from` under the inclusion into `to` by name.
pub(crate) fn identity_images(from: &Presentation, to: &Presentation) -> Result<Vec<Element>> {
    from.table().names.iter().map(|g| to.gen(g)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets::make_dq;

    fn pairing(m: i64, n: i64) -> Pairing {
        Pairing::new(AlgebraParams::new(m, n).unwrap()).unwrap()
    }

    #[test]
    fn tables() {
        for (m, n) in [(1, 1), (2, -3)] {
            let p = pairing(m, n);
            let t = p.pairing_table();
            assert!(t.passed(), "{:?}", t.failures);
            let a = p.action_table();
            assert!(a.passed(), "{:?}", a.failures);
        }
    }

    #[test]
    fn f_acts_on_b_squared() {
        let (m, n) = (1, 2);
        let p = pairing(m, n);
        let po = p.oq().base().clone();
        let b2 = p.o_elem(&[("b", 2)]);
        let got = p.act(&p.u_elem(&[("F", 1)]), &b2).unwrap();
        // only b a^n (x) a^{-n} b and a^n b (x) b a^{-n} pair with F, with values q^{-n^2} and 1,
        // and b a^n = q^{-n^2} a^n b
        let expected = p.o_elem(&[("a", n as i32), ("b", 1)]).scale(&(QScalar::one() + qpow(-2 * n * n)));
        assert_eq!(got, expected, "{}", po.render(&got));
    }

    #[test]
    fn mismatched_params() {
        let uq = uq_hopf(AlgebraParams::new(1, 1).unwrap()).unwrap();
        let oq = oq_hopf(AlgebraParams::new(1, 2).unwrap()).unwrap();
        assert!(matches!(Pairing::with_structures(uq, oq), Err(Error::MismatchedParams(_))));
    }

    #[test]
    fn smash_and_laws_small() {
        let pr = AlgebraParams::new(2, -3).unwrap();
        let p = Pairing::new(pr).unwrap();
        let dq = make_dq(pr).unwrap();
        let s = p.check_smash(&dq).unwrap();
        assert!(s.passed(), "{:?}", s.failures);
        assert_eq!(s.checked, 16);
        let ma = p.check_module_algebra(2, 10, 5);
        assert!(ma.passed(), "{:?}", ma.failures);
        let pe = p.check_peeling(1, 10, 6);
        assert!(pe.passed(), "{:?}", pe.failures);
    }

    #[test]
    fn gram_full_rank() {
        let p = pairing(1, 1);
        let q0 = BigRational::from_integer(2.into());
        let (rank, size) = p.gram_rank(2, 1, &q0).unwrap();
        assert_eq!(rank, size);
    }
}
