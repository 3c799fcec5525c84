//! The algebras O_q(b_{m,n}), U_q(b_{m,n}), D_q(b_{m,n}), the subalgebra S on the
//! primed generators, quantum tori, and the change of generators inside D_q.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::qfield::{qpow, QScalar};
use crate::rewrite::{Element, Letter, Monomial, Presentation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct AlgebraParams {
    pub m: i64,
    pub n: i64,
    pub d: i64,
}

impl AlgebraParams {
    pub fn new(m: i64, n: i64) -> Result<Self> {
        if m == 0 || n == 0 {
            return Err(Error::ZeroParameter);
        }
        Ok(AlgebraParams { m, n, d: m.abs().gcd(&n.abs()) })
    }

    fn mi(&self) -> i32 {
        self.m as i32
    }

    fn ni(&self) -> i32 {
        self.n as i32
    }
}

impl fmt::Display for AlgebraParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.m, self.n)
    }
}

/// Quantum parameter grid used throughout the test suites.
pub const PARAM_GRID: [(i64, i64); 6] = [(1, 1), (1, -1), (2, 3), (2, -3), (6, 4), (-2, 5)];

pub fn make_oq(p: AlgebraParams) -> Result<Presentation> {
    // order (c, a, b)
    Presentation::builder(&format!("Oq({p})"))
        .generator("c", false, 1)
        .generator("a", true, 0)
        .generator("b", false, 1)
        .relation("a", "b", qpow(p.n), &[])
        .relation("a", "c", qpow(p.m), &[])
        .relation("b", "c", QScalar::one(), &[])
        .build()
}

pub fn make_uq(p: AlgebraParams) -> Result<Presentation> {
    // order (F, K, E)
    Presentation::builder(&format!("Uq({p})"))
        .generator("F", false, 1)
        .generator("K", true, 0)
        .generator("E", false, 1)
        .relation("K", "E", qpow(2 * p.m), &[])
        .relation("K", "F", qpow(-2 * p.n), &[])
        .relation("E", "F", QScalar::one(), &[])
        .build()
}

pub fn make_dq(p: AlgebraParams) -> Result<Presentation> {
    let (m, n) = (p.m, p.n);
    let one = QScalar::one;
    Presentation::builder(&format!("Dq({p})"))
        .generator("F", false, 1)
        .generator("c", false, 1)
        .generator("K", true, 0)
        .generator("a", true, 0)
        .generator("E", false, 1)
        .generator("b", false, 1)
        .relation("a", "b", qpow(n), &[])
        .relation("a", "c", qpow(m), &[])
        .relation("b", "c", one(), &[])
        .relation("K", "E", qpow(2 * m), &[])
        .relation("K", "F", qpow(-2 * n), &[])
        .relation("E", "F", one(), &[])
        .relation("K", "a", qpow(-1), &[])
        .relation("K", "b", qpow(n), &[])
        .relation("K", "c", qpow(-m), &[])
        .relation("E", "a", one(), &[])
        .relation("E", "b", one(), &[])
        .relation("E", "c", one(), &[(one(), &[("a", -p.mi()), ("K", p.mi())])])
        .relation("F", "a", qpow(n), &[])
        .relation("F", "b", qpow(-n * n), &[(one(), &[("a", p.ni())])])
        .relation("F", "c", qpow(m * n), &[])
        .build()
}

/// Admissible generator orders for the standalone presentation of S.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SOrder {
    /// (Ep, Fp, bp, cp)
    EFbc,
    /// (cp, Fp, bp, Ep)
    CFbE,
    /// (Ep, bp, Fp, cp)
    EbFc,
    /// (bp, cp, Ep, Fp)
    BcEF,
}

impl SOrder {
    pub const ALL: [SOrder; 4] = [SOrder::EFbc, SOrder::CFbE, SOrder::EbFc, SOrder::BcEF];

    pub fn names(self) -> [&'static str; 4] {
        match self {
            SOrder::EFbc => ["Ep", "Fp", "bp", "cp"],
            SOrder::CFbE => ["cp", "Fp", "bp", "Ep"],
            SOrder::EbFc => ["Ep", "bp", "Fp", "cp"],
            SOrder::BcEF => ["bp", "cp", "Ep", "Fp"],
        }
    }

    pub fn from_names(names: &[&str]) -> Result<SOrder> {
        SOrder::ALL
            .into_iter()
            .find(|o| o.names().as_slice() == names)
            .ok_or_else(|| Error::InadmissibleOrder(names.join(",")))
    }
}

impl std::str::FromStr for SOrder {
    type Err = Error;
    fn from_str(s: &str) -> Result<SOrder> {
        let names: Vec<&str> = s.split(',').map(str::trim).collect();
        SOrder::from_names(&names)
    }
}

pub fn make_s(p: AlgebraParams, order: SOrder) -> Result<Presentation> {
    let (m, n) = (p.m, p.n);
    let one = QScalar::one;
    let names = order.names();
    let mut b = Presentation::builder(&format!("S({p})[{}]", names.join(",")));
    for g in names {
        b = b.generator(g, false, 1);
    }
    b.relation("bp", "cp", qpow(2 * m * n), &[])
        .relation("Ep", "bp", qpow(2 * m * n), &[])
        .relation("Fp", "bp", qpow(-2 * n * n), &[(one(), &[])])
        .relation("Ep", "cp", qpow(2 * m * m), &[(one(), &[])])
        .relation("Fp", "cp", qpow(-2 * m * n), &[])
        .relation("Ep", "Fp", qpow(-2 * m * n), &[])
        .build()
}

pub fn make_s_with_names(p: AlgebraParams, names: &[&str]) -> Result<Presentation> {
    make_s(p, SOrder::from_names(names)?)
}

/// Quantum torus with `x_i x_j = q^{e_ij} x_j x_i`; `exps` must be antisymmetric.
pub fn make_quantum_torus(name: &str, gens: &[&str], exps: &[Vec<i64>]) -> Result<Presentation> {
    let k = gens.len();
    if exps.len() != k || exps.iter().any(|r| r.len() != k) {
        return Err(Error::InvalidStructuralMatrix("shape does not match generator count".into()));
    }
    for (i, row) in exps.iter().enumerate() {
        if row[i] != 0 {
            return Err(Error::InvalidStructuralMatrix(format!("diagonal entry {i} is not 1")));
        }
        for (j, e) in row.iter().enumerate() {
            if *e != -exps[j][i] {
                return Err(Error::InvalidStructuralMatrix(format!("entries ({i},{j}) and ({j},{i}) are not inverse")));
            }
        }
    }
    let mut b = Presentation::builder(name);
    for g in gens {
        b = b.generator(g, true, 0);
    }
    for i in 0..k {
        for j in i + 1..k {
            b = b.relation(gens[i], gens[j], qpow(exps[i][j]), &[]);
        }
    }
    b.build()
}

/// Same as [`make_quantum_torus`] with the structural matrix given by scalars `Q_ij`.
pub fn make_quantum_torus_from_matrix(name: &str, gens: &[&str], q: &[Vec<QScalar>]) -> Result<Presentation> {
    let mut exps = Vec::with_capacity(q.len());
    for row in q {
        let mut r = Vec::with_capacity(row.len());
        for entry in row {
            match entry.as_monomial() {
                Some((c, k)) if num_traits::One::is_one(&c) => r.push(k),
                _ => return Err(Error::InvalidStructuralMatrix(format!("{entry} is not a power of q"))),
            }
        }
        exps.push(r);
    }
    make_quantum_torus(name, gens, &exps)
}

/// The torus on (Ep, Fp) that S/I_3 is identified with.
pub fn make_s_quotient_torus(p: AlgebraParams) -> Result<Presentation> {
    let e = -2 * p.m * p.n;
    make_quantum_torus(&format!("T({p})[Ep,Fp]"), &["Ep", "Fp"], &[vec![0, e], vec![-e, 0]])
}

/// The torus on (phi1, cp, bp, phi2) obtained by inverting b', c', phi1, phi2.
pub fn make_phi_torus(p: AlgebraParams) -> Result<Presentation> {
    let (m, n) = (p.m, p.n);
    let exps = vec![
        vec![0, 2 * m * m, 0, 0],
        vec![-2 * m * m, 0, -2 * m * n, 0],
        vec![0, 2 * m * n, 0, 2 * n * n],
        vec![0, 0, -2 * n * n, 0],
    ];
    make_quantum_torus(&format!("T({p})[phi1,cp,bp,phi2]"), &["phi1", "cp", "bp", "phi2"], &exps)
}

/// The primed generators and phi elements written in D_q.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimedSet {
    pub b_p: Element,
    pub c_p: Element,
    pub e_p: Element,
    pub f_p: Element,
    pub phi1: Element,
    pub phi2: Element,
}

impl PrimedSet {
    /// Image of the named S generator.
    pub fn get(&self, name: &str) -> Option<&Element> {
        match name {
            "bp" => Some(&self.b_p),
            "cp" => Some(&self.c_p),
            "Ep" => Some(&self.e_p),
            "Fp" => Some(&self.f_p),
            "phi1" => Some(&self.phi1),
            "phi2" => Some(&self.phi2),
            _ => None,
        }
    }

    /// Images of the generators of `s`, in its generator order.
    pub fn images_for(&self, s: &Presentation) -> Vec<Element> {
        s.table().names.iter().map(|g| self.get(g).expect("S generator").clone()).collect()
    }
}

fn word(dq: &Presentation, letters: &[(&str, i64)]) -> Result<Element> {
    let w = letters
        .iter()
        .map(|(g, e)| Ok(Letter::new(dq.gen_index(g)?, *e as i32)))
        .collect::<Result<Vec<_>>>()?;
    dq.normal_form_word(&w)
}

pub fn primed_in_d(p: AlgebraParams, dq: &Presentation) -> Result<PrimedSet> {
    let (m, n) = (p.m, p.n);
    let b_p = word(dq, &[("a", n), ("b", 1), ("K", -n)])?;
    let c_p = word(dq, &[("a", -m), ("c", 1), ("K", -m)])?;
    let e_p = word(dq, &[("a", 2 * m), ("E", 1)])?;
    let f_p = word(dq, &[("a", -2 * n), ("F", 1), ("K", n)])?.scale(&qpow(-n * n));
    let phi1 = dq.commutator(&e_p, &c_p);
    let phi2 = dq.commutator(&f_p, &b_p);
    Ok(PrimedSet { b_p, c_p, e_p, f_p, phi1, phi2 })
}

/// One summand `K^k a^l * s` of a factorized D_q element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusPart {
    pub k: i32,
    pub a: i32,
    pub s: Element,
}

/// Splits elements of D_q along D_q = D^0 * S, with S in a chosen order.
pub struct Factorizer<'a> {
    params: AlgebraParams,
    dq: &'a Presentation,
    s: &'a Presentation,
    primed: PrimedSet,
}

impl<'a> Factorizer<'a> {
    pub fn new(params: AlgebraParams, dq: &'a Presentation, s: &'a Presentation) -> Result<Self> {
        let primed = primed_in_d(params, dq)?;
        Ok(Factorizer { params, dq, s, primed })
    }

    pub fn primed(&self) -> &PrimedSet {
        &self.primed
    }

    /// `x = sum K^k a^l * s_{k,l}`, grouped by torus monomial.
    pub fn factorize(&self, x: &Element) -> Result<Vec<TorusPart>> {
        factorize_d(self.params, self.dq, self.s, x)
    }

    /// Reassembles `sum K^k a^l * s` in D_q.
    pub fn reassemble(&self, parts: &[TorusPart]) -> Result<Element> {
        let images = self.primed.images_for(self.s);
        let (ki, ai) = (self.dq.gen_index("K")?, self.dq.gen_index("a")?);
        let mut out = Element::zero();
        for part in parts {
            let torus = Element::from_monomial(Monomial::generator(ki, part.k).with(ai, part.a));
            let s_img = self.s.substitute(&part.s, self.dq, &images)?;
            out += &self.dq.multiply(&torus, &s_img);
        }
        Ok(out)
    }
}

/// Writes an element of D_q as `sum K^k a^l * s_{k,l}` with `s_{k,l}` in the given S presentation.
pub fn factorize_d(params: AlgebraParams, dq: &Presentation, s: &Presentation, x: &Element) -> Result<Vec<TorusPart>> {
    dq.validate_element(x)?;
    let (m, n) = (params.m, params.n);
    let g = |name: &str| dq.gen_index(name).expect("D_q generator");
    let (fi, ci, ki, ai, ei, bi) = (g("F"), g("c"), g("K"), g("a"), g("E"), g("b"));
    let sg = |name: &str| s.gen_index(name).expect("S generator");
    let (fs, cs, es, bs) = (sg("Fp"), sg("cp"), sg("Ep"), sg("bp"));
    let mut parts: BTreeMap<(i32, i32), Element> = BTreeMap::new();
    for (mono, coeff) in x.iter() {
        let (f, c, k, a, e, b) = (
            mono.exponent(fi) as i64,
            mono.exponent(ci) as i64,
            mono.exponent(ki) as i64,
            mono.exponent(ai) as i64,
            mono.exponent(ei) as i64,
            mono.exponent(bi) as i64,
        );
        // F = q^{n^2} a^{2n} K^{-n} F', c = a^m K^m c', E = a^{-2m} E', b = a^{-n} K^n b'
        let mut torus = Vec::new();
        for _ in 0..f {
            torus.push(Letter::new(ai, (2 * n) as i32));
            torus.push(Letter::new(ki, (-n) as i32));
        }
        for _ in 0..c {
            torus.push(Letter::new(ai, m as i32));
            torus.push(Letter::new(ki, m as i32));
        }
        torus.push(Letter::new(ki, k as i32));
        torus.push(Letter::new(ai, a as i32));
        for _ in 0..e {
            torus.push(Letter::new(ai, (-2 * m) as i32));
        }
        for _ in 0..b {
            torus.push(Letter::new(ai, (-n) as i32));
            torus.push(Letter::new(ki, n as i32));
        }
        let t = dq.normal_form_word(&torus)?;
        let (tm, tc) = t.single_term().expect("torus words are monomials");
        let scalar = tc * coeff * qpow(n * n * f);
        let s_word = [
            Letter::new(fs, f as i32),
            Letter::new(cs, c as i32),
            Letter::new(es, e as i32),
            Letter::new(bs, b as i32),
        ];
        let s_elem = s.normal_form_word(&s_word)?;
        parts
            .entry((tm.exponent(ki), tm.exponent(ai)))
            .or_default()
            .add_scaled(&s_elem, &scalar);
    }
    Ok(parts
        .into_iter()
        .filter(|(_, s)| !s.is_zero())
        .map(|((k, a), s)| TorusPart { k, a, s })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(m: i64, n: i64) -> AlgebraParams {
        AlgebraParams::new(m, n).unwrap()
    }

    fn nf(p: &Presentation, w: &[(&str, i32)]) -> Element {
        let letters: Vec<Letter> = w.iter().map(|(g, e)| Letter::new(p.gen_index(g).unwrap(), *e)).collect();
        p.normal_form_word(&letters).unwrap()
    }

    fn mono(p: &Presentation, w: &[(&str, i32)]) -> Monomial {
        let mut m = Monomial::ONE;
        for (g, e) in w {
            m.set(p.gen_index(g).unwrap(), *e);
        }
        m
    }

    #[test]
    fn zero_parameter_rejected() {
        assert_eq!(AlgebraParams::new(0, 1).unwrap_err(), Error::ZeroParameter);
        assert_eq!(params(6, 4).d, 2);
    }

    #[test]
    fn oq_relations() {
        let p = make_oq(params(1, 1)).unwrap();
        assert_eq!(nf(&p, &[("b", 1), ("a", 1)]), Element::term(qpow(-1), mono(&p, &[("a", 1), ("b", 1)])));
        assert_eq!(nf(&p, &[("a", 1), ("c", 1)]), Element::term(qpow(1), mono(&p, &[("c", 1), ("a", 1)])));
        assert_eq!(nf(&p, &[("b", 1), ("c", 1)]), Element::from_monomial(mono(&p, &[("c", 1), ("b", 1)])));
        let p = make_oq(params(2, -3)).unwrap();
        assert_eq!(nf(&p, &[("b", 1), ("a", 1)]), Element::term(qpow(3), mono(&p, &[("a", 1), ("b", 1)])));
    }

    #[test]
    fn uq_relations() {
        let p = make_uq(params(2, 3)).unwrap();
        assert_eq!(nf(&p, &[("E", 1), ("K", 1)]), Element::term(qpow(-4), mono(&p, &[("K", 1), ("E", 1)])));
        assert_eq!(nf(&p, &[("E", 1), ("F", 1)]), Element::from_monomial(mono(&p, &[("F", 1), ("E", 1)])));
        assert_eq!(nf(&p, &[("K", 1), ("K", -1)]), Element::one());
    }

    #[test]
    fn dq_cross_relations() {
        let (m, n) = (2, -3);
        let p = make_dq(params(m, n)).unwrap();
        let mut ec = Element::from_monomial(mono(&p, &[("c", 1), ("E", 1)]));
        ec.add_term(mono(&p, &[("K", m as i32), ("a", -m as i32)]), qpow(-m * m));
        assert_eq!(nf(&p, &[("E", 1), ("c", 1)]), ec);
        let mut fb = Element::term(qpow(-n * n), mono(&p, &[("F", 1), ("b", 1)]));
        fb.add_term(mono(&p, &[("a", n as i32)]), QScalar::one());
        // F b is already ordered; b F is solved through the relation
        let bf = nf(&p, &[("b", 1), ("F", 1)]);
        let mut expected = Element::term(qpow(n * n), mono(&p, &[("F", 1), ("b", 1)]));
        expected.add_term(mono(&p, &[("a", n as i32)]), -qpow(n * n));
        assert_eq!(bf, expected);
        assert_eq!(nf(&p, &[("K", 1), ("a", 1)]), Element::from_monomial(mono(&p, &[("K", 1), ("a", 1)])));
        assert_eq!(nf(&p, &[("a", 1), ("K", 1)]), Element::term(qpow(1), mono(&p, &[("K", 1), ("a", 1)])));
        let _ = fb;
    }

    #[test]
    fn s_orders() {
        let pr = params(1, 2);
        for o in SOrder::ALL {
            let s = make_s(pr, o).unwrap();
            assert!(s.check_confluence().passed());
        }
        assert!(matches!(make_s_with_names(pr, &["bp", "Ep", "cp", "Fp"]), Err(Error::InadmissibleOrder(_))));
        let s = make_s(pr, SOrder::EFbc).unwrap();
        let mut expected = Element::term(qpow(8), mono(&s, &[("Fp", 1), ("bp", 1)]));
        expected.add_term(Monomial::ONE, -qpow(8));
        assert_eq!(nf(&s, &[("bp", 1), ("Fp", 1)]), expected);
    }

    #[test]
    fn torus_validation() {
        assert!(matches!(
            make_quantum_torus("t", &["x", "y"], &[vec![0, 1], vec![1, 0]]),
            Err(Error::InvalidStructuralMatrix(_))
        ));
        let t = make_s_quotient_torus(params(1, 1)).unwrap();
        // Ep Fp^-1 = q^{2mn} Fp^-1 Ep, read from right to left
        let got = nf(&t, &[("Fp", -1), ("Ep", 1)]);
        assert_eq!(got, Element::term(qpow(-2), mono(&t, &[("Ep", 1), ("Fp", -1)])));
        let phi = make_phi_torus(params(1, 2)).unwrap();
        // phi1 cp = q^{2m^2} cp phi1, so cp phi1 -> q^{-2m^2} phi1 cp
        let got = nf(&phi, &[("cp", 1), ("phi1", 1)]);
        assert_eq!(got, Element::term(qpow(-2), mono(&phi, &[("phi1", 1), ("cp", 1)])));
    }

    #[test]
    fn factorize_generators() {
        let pr = params(2, 3);
        let dq = make_dq(pr).unwrap();
        let s = make_s(pr, SOrder::EFbc).unwrap();
        let fz = Factorizer::new(pr, &dq, &s).unwrap();
        let e = fz.factorize(&dq.gen("E").unwrap()).unwrap();
        assert_eq!(e, vec![TorusPart { k: 0, a: -4, s: s.gen("Ep").unwrap() }]);
        let k = fz.factorize(&dq.gen("K").unwrap()).unwrap();
        assert_eq!(k, vec![TorusPart { k: 1, a: 0, s: Element::one() }]);
        for g in ["F", "c", "K", "a", "E", "b"] {
            let x = dq.gen(g).unwrap();
            assert_eq!(fz.reassemble(&fz.factorize(&x).unwrap()).unwrap(), x, "generator {g}");
        }
    }
}
