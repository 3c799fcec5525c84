//! Degree-truncated ideals of S: spans, membership certificates, containment and
//! monomial-avoidance probes, the catalog of prime ideals and the map onto the torus S/I_3.

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{Echelon, SparseVec};
use crate::morphisms::Morphism;
use crate::presets::{make_s, make_s_quotient_torus, AlgebraParams, SOrder};
use crate::qfield::{qpow, QScalar};
use crate::report::Report;
use crate::rewrite::{Element, Monomial, Presentation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    TwoSided,
}

/// How an inserted vector was produced: `left * generators[gen] * right`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Product {
    pub left: Vec<usize>,
    pub gen: usize,
    pub right: Vec<usize>,
}

/// Explicit combination `x = sum c_i * left_i * g_i * right_i`.
pub type Certificate = Vec<(QScalar, Product)>;

#[derive(Clone, Debug)]
pub enum Membership {
    Verified(Certificate),
    NotDetected,
}

impl Membership {
    pub fn is_verified(&self) -> bool {
        matches!(self, Membership::Verified(_))
    }

    pub fn label(&self) -> &'static str {
        match self {
            Membership::Verified(_) => "Verified",
            Membership::NotDetected => "NotDetected",
        }
    }
}

fn to_vec(x: &Element) -> SparseVec<Monomial, QScalar> {
    x.iter().map(|(m, c)| (*m, c.clone())).collect()
}

fn to_element(v: &SparseVec<Monomial, QScalar>) -> Element {
    Element::from_terms(v.iter().map(|(m, c)| (*m, c.clone())))
}

/// Span of all `m1 * g * m2` (or `m1 * g`) with total degree at most the bound.
#[derive(Clone, Debug)]
pub struct TruncatedIdeal {
    name: String,
    algebra: Arc<Presentation>,
    generators: Vec<Element>,
    side: Side,
    bound: u32,
    span: Echelon<Monomial, QScalar>,
    products: Vec<Product>,
}

impl TruncatedIdeal {
    pub fn span(
        name: impl Into<String>,
        algebra: Arc<Presentation>,
        generators: Vec<Element>,
        side: Side,
        bound: u32,
    ) -> Result<Self> {
        for g in &generators {
            algebra.validate_element(g)?;
            let required = algebra.element_degree(g);
            if required > bound {
                return Err(Error::DegreeTooSmall { bound, required });
            }
        }
        let mut ideal = TruncatedIdeal {
            name: name.into(),
            algebra,
            generators,
            side,
            bound,
            span: Echelon::new(true),
            products: Vec::new(),
        };
        ideal.build();
        Ok(ideal)
    }

    // Candidates are processed in order of word degree; only the independent ones of
    // degree d are extended to degree d + 1, which still reaches the whole span.
    fn build(&mut self) {
        let p = self.algebra.clone();
        let mut buckets: Vec<Vec<(Element, Product)>> = vec![Vec::new(); self.bound as usize + 1];
        for (i, g) in self.generators.iter().enumerate() {
            buckets[p.element_degree(g) as usize].push((g.clone(), Product { left: vec![], gen: i, right: vec![] }));
        }
        for d in 0..=self.bound as usize {
            let current = std::mem::take(&mut buckets[d]);
            for (x, prod) in current {
                if !self.insert(&x, prod.clone()) {
                    continue;
                }
                for h in 0..p.ngens() {
                    let e = d + p.degree_of(h) as usize;
                    if e > self.bound as usize {
                        continue;
                    }
                    let hx = Element::from_monomial(Monomial::generator(h, 1));
                    let mut pr = prod.clone();
                    pr.left.insert(0, h);
                    buckets[e].push((p.multiply(&hx, &x), pr));
                    if self.side == Side::TwoSided {
                        let mut pr = prod.clone();
                        pr.right.push(h);
                        buckets[e].push((p.multiply(&x, &hx), pr));
                    }
                }
            }
        }
    }

    fn insert(&mut self, x: &Element, prod: Product) -> bool {
        let ok = self.span.insert(to_vec(x));
        self.products.push(prod);
        ok
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn algebra(&self) -> &Arc<Presentation> {
        &self.algebra
    }

    pub fn generators(&self) -> &[Element] {
        &self.generators
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn bound(&self) -> u32 {
        self.bound
    }

    pub fn dimension(&self) -> usize {
        self.span.rank()
    }

    /// Row-reduced basis, ordered by leading monomial.
    pub fn basis(&self) -> Vec<Element> {
        self.span.rows().map(to_element).collect()
    }

    pub fn member(&self, x: &Element) -> Result<Membership> {
        self.algebra.validate_element(x)?;
        let required = self.algebra.element_degree(x);
        if required > self.bound {
            return Err(Error::DegreeTooSmall { bound: self.bound, required });
        }
        Ok(match self.span.certificate(&to_vec(x)) {
            Some(cert) => Membership::Verified(
                cert.into_iter().map(|(i, c)| (c, self.products[i].clone())).collect(),
            ),
            None => Membership::NotDetected,
        })
    }

    pub fn contains(&self, x: &Element) -> bool {
        self.span.contains(&to_vec(x))
    }

    /// Recomputes a certificate from scratch.
    pub fn replay(&self, cert: &Certificate) -> Element {
        let p = &self.algebra;
        let mut out = Element::zero();
        for (c, prod) in cert {
            let letters = |w: &[usize]| {
                w.iter().map(|g| Element::from_monomial(Monomial::generator(*g, 1))).collect::<Vec<_>>()
            };
            let mut factors = letters(&prod.left);
            factors.push(self.generators[prod.gen].clone());
            factors.extend(letters(&prod.right));
            out.add_scaled(&p.multiply_all(&factors), c);
        }
        out
    }

    /// `g*x` and `x*g` stay in the span for basis rows `x` with room left under the bound.
    pub fn check_closure(&self) -> Report {
        let p = &self.algebra;
        let mut report = Report::new(format!("closure {}", self.name));
        for x in self.basis() {
            if p.element_degree(&x) >= self.bound {
                continue;
            }
            for h in 0..p.ngens() {
                let hx = Element::from_monomial(Monomial::generator(h, 1));
                let mut prods = vec![("left", p.multiply(&hx, &x))];
                if self.side == Side::TwoSided {
                    prods.push(("right", p.multiply(&x, &hx)));
                }
                for (side, y) in prods {
                    report.record(self.contains(&y), format!("{side} {} on {}", p.gen_name(h), p.render(&x)), || {
                        p.render(&y)
                    });
                }
            }
        }
        report
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum ContainmentStatus {
    Contained,
    NotDetectedAtBound,
}

#[derive(Clone, Debug, Serialize)]
pub struct ContainmentReport {
    pub from: String,
    pub to: String,
    pub status: ContainmentStatus,
    pub checked: usize,
    pub witness: Option<String>,
}

/// Whether every basis vector of `i` lies in the span of `j`.
pub fn containment_probe(i: &TruncatedIdeal, j: &TruncatedIdeal) -> Result<ContainmentReport> {
    if i.bound != j.bound {
        return Err(Error::BoundMismatch(i.bound, j.bound));
    }
    if !i.algebra.same_algebra(&j.algebra) {
        return Err(Error::TypeMismatch(format!("{} vs {}", i.algebra.name(), j.algebra.name())));
    }
    let mut checked = 0;
    for x in i.basis() {
        checked += 1;
        if !j.contains(&x) {
            return Ok(ContainmentReport {
                from: i.name.clone(),
                to: j.name.clone(),
                status: ContainmentStatus::NotDetectedAtBound,
                checked,
                witness: Some(i.algebra.render(&x)),
            });
        }
    }
    Ok(ContainmentReport {
        from: i.name.clone(),
        to: j.name.clone(),
        status: ContainmentStatus::Contained,
        checked,
        witness: None,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct AvoidanceReport {
    pub ideal: String,
    pub checked: Vec<(u32, u32)>,
    pub detected: Vec<(u32, u32)>,
}

impl AvoidanceReport {
    pub fn clean(&self) -> bool {
        self.detected.is_empty()
    }
}

/// Looks for pure monomials `b'^i c'^j`, `i + j <= bound`, inside the span.
pub fn monomial_avoidance_probe(ideal: &TruncatedIdeal) -> Result<AvoidanceReport> {
    let p = &ideal.algebra;
    let (b, c) = (p.gen_index("bp")?, p.gen_index("cp")?);
    let mut checked = Vec::new();
    let mut detected = Vec::new();
    for total in 0..=ideal.bound {
        for i in 0..=total {
            let j = total - i;
            let x = p.multiply(&p.gen_pow(b, i as i32)?, &p.gen_pow(c, j as i32)?);
            checked.push((i, j));
            if ideal.contains(&x) {
                detected.push((i, j));
            }
        }
    }
    Ok(AvoidanceReport { ideal: ideal.name.clone(), checked, detected })
}

/// E'c' - c'E'.
pub fn phi1(s: &Presentation) -> Result<Element> {
    Ok(s.commutator(&s.gen("Ep")?, &s.gen("cp")?))
}

/// F'b' - b'F'.
pub fn phi2(s: &Presentation) -> Result<Element> {
    Ok(s.commutator(&s.gen("Fp")?, &s.gen("bp")?))
}

/// The nine q-commutation identities of phi1 and phi2, as residuals that must vanish.
pub fn check_phi_identities(s: &Presentation, params: AlgebraParams) -> Result<Report> {
    let gens = [s.gen("Ep")?, s.gen("Fp")?, s.gen("bp")?, s.gen("cp")?];
    Ok(check_phi_identities_in(s, &gens, params))
}

/// Same identities for given images of `(E', F', b', c')` in any algebra.
pub fn check_phi_identities_in(p: &Presentation, gens: &[Element; 4], params: AlgebraParams) -> Report {
    let (m, n) = (params.m, params.n);
    let [e, f, b, c] = gens;
    let (f1, f2) = (p.commutator(e, c), p.commutator(f, b));
    let cases: [(&str, &Element, &Element, QScalar); 9] = [
        ("phi1 phi2", &f1, &f2, QScalar::one()),
        ("phi1 F'", &f1, f, QScalar::one()),
        ("phi1 b'", &f1, b, QScalar::one()),
        ("E' phi2", e, &f2, QScalar::one()),
        ("c' phi2", c, &f2, QScalar::one()),
        ("phi1 E'", &f1, e, qpow(-2 * m * m)),
        ("phi1 c'", &f1, c, qpow(2 * m * m)),
        ("F' phi2", f, &f2, qpow(-2 * n * n)),
        ("b' phi2", b, &f2, qpow(2 * n * n)),
    ];
    let mut report = Report::new(format!("phi identities in {}", p.name()));
    for (case, x, y, k) in cases {
        let residual = &p.multiply(x, y) - &p.multiply(y, x).scale(&k);
        report.record(residual.is_zero(), case, || p.render(&residual));
    }
    report
}

/// I_1, I_2, I_3 and the J families for a list of sample values of z.
#[derive(Clone, Debug)]
pub struct SpecCatalog {
    pub params: AlgebraParams,
    pub z_samples: Vec<QScalar>,
    pub zero: TruncatedIdeal,
    pub i1: TruncatedIdeal,
    pub i2: TruncatedIdeal,
    pub i3: TruncatedIdeal,
    pub j1: Vec<TruncatedIdeal>,
    pub j2: Vec<TruncatedIdeal>,
}

pub fn default_z_samples() -> Vec<QScalar> {
    vec![QScalar::one(), qpow(1), QScalar::from_int(-2)]
}

/// The generators of J_1(z) and J_2(z); the pure power switches to F', E' when mn < 0.
pub fn j_generators(s: &Presentation, params: AlgebraParams, z: &QScalar) -> Result<(Vec<Element>, Vec<Element>)> {
    let (m, n, d) = (params.m, params.n, params.d);
    let (em, en) = (m.abs() / d, n.abs() / d);
    let (f1, f2) = (phi1(s)?, phi2(s)?);
    let (x1, x2) = if m * n > 0 { ("bp", "cp") } else { ("Fp", "Ep") };
    let pow = |x: &Element, e: i64| s.pow(x, e);
    let j1 = vec![&pow(&f1, en)? - &pow(&s.gen(x1)?, em)?.scale(z), f2.clone()];
    let j2 = vec![f1, &pow(&f2, em)? - &pow(&s.gen(x2)?, en)?.scale(z)];
    Ok((j1, j2))
}

impl SpecCatalog {
    pub fn new(params: AlgebraParams, bound: u32, z_samples: Vec<QScalar>) -> Result<Self> {
        if z_samples.iter().any(QScalar::is_zero) {
            return Err(Error::ConstraintViolation("z samples must be nonzero".into()));
        }
        let s = Arc::new(make_s(params, SOrder::EFbc)?);
        let (f1, f2) = (phi1(&s)?, phi2(&s)?);
        let mk = |name: String, gens: Vec<Element>| TruncatedIdeal::span(name, s.clone(), gens, Side::TwoSided, bound);
        let zero = mk("(0)".into(), vec![])?;
        let i1 = mk("I1".into(), vec![f1.clone()])?;
        let i2 = mk("I2".into(), vec![f2.clone()])?;
        let i3 = mk("I3".into(), vec![f1, f2])?;
        let mut j1 = Vec::new();
        let mut j2 = Vec::new();
        for z in &z_samples {
            let (g1, g2) = j_generators(&s, params, z)?;
            j1.push(mk(format!("J1({z})"), g1)?);
            j2.push(mk(format!("J2({z})"), g2)?);
        }
        Ok(SpecCatalog { params, z_samples, zero, i1, i2, i3, j1, j2 })
    }

    pub fn algebra(&self) -> &Arc<Presentation> {
        self.i1.algebra()
    }

    pub fn ideals(&self) -> Vec<&TruncatedIdeal> {
        let mut v = vec![&self.zero, &self.i1, &self.i2, &self.i3];
        v.extend(self.j1.iter());
        v.extend(self.j2.iter());
        v
    }

    /// Containment status of the diagram edges, one entry per (lower, upper) pair.
    pub fn diagram(&self) -> Result<Vec<DiagramEdge>> {
        let mut edges = Vec::new();
        let mut push = |from: &TruncatedIdeal, to: &TruncatedIdeal, drawn: bool| -> Result<()> {
            let r = containment_probe(from, to)?;
            edges.push(DiagramEdge { from: r.from, to: r.to, status: r.status, drawn });
            Ok(())
        };
        push(&self.zero, &self.i1, true)?;
        push(&self.zero, &self.i2, true)?;
        push(&self.i1, &self.i3, true)?;
        push(&self.i2, &self.i3, true)?;
        for (a, b) in self.j1.iter().zip(&self.j2) {
            push(&self.i1, a, true)?;
            push(&self.i2, b, true)?;
            push(&self.i2, a, false)?;
            push(&self.i1, b, false)?;
        }
        Ok(edges)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DiagramEdge {
    pub from: String,
    pub to: String,
    pub status: ContainmentStatus,
    /// Whether the published containment diagram draws this edge.
    pub drawn: bool,
}

/// S -> k[E'^{±1}, F'^{±1}] killing phi1 and phi2.
pub fn torus_quotient_map(params: AlgebraParams) -> Result<Morphism> {
    let (m, n) = (params.m, params.n);
    let s = Arc::new(make_s(params, SOrder::EFbc)?);
    let t = Arc::new(make_s_quotient_torus(params)?);
    let alpha = (QScalar::one() - qpow(2 * m * m)).inv()?;
    let beta = (QScalar::one() - qpow(-2 * n * n)).inv()?;
    let (e, f) = (t.gen_index("Ep")?, t.gen_index("Fp")?);
    let images = [
        ("Ep", t.gen("Ep")?),
        ("Fp", t.gen("Fp")?),
        ("cp", Element::term(alpha, Monomial::generator(e, -1))),
        ("bp", Element::term(beta, Monomial::generator(f, -1))),
    ];
    Morphism::from_named("S->S/I3", s, t, &images)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(m: i64, n: i64) -> (AlgebraParams, Arc<Presentation>) {
        let p = AlgebraParams::new(m, n).unwrap();
        (p, Arc::new(make_s(p, SOrder::EFbc).unwrap()))
    }

    #[test]
    fn spans_basic() {
        let (_, sa) = s(1, 1);
        let zero = TruncatedIdeal::span("0", sa.clone(), vec![], Side::TwoSided, 4).unwrap();
        assert_eq!(zero.dimension(), 0);
        let f1 = phi1(&sa).unwrap();
        let f2 = phi2(&sa).unwrap();
        let i = TruncatedIdeal::span("I", sa.clone(), vec![f1.clone(), f2.clone()], Side::TwoSided, 4).unwrap();
        assert!(i.member(&f1).unwrap().is_verified());
        assert!(i.member(&f2).unwrap().is_verified());
        let big = sa.pow(&f1, 3).unwrap();
        assert!(matches!(i.member(&big), Err(Error::DegreeTooSmall { .. })));
        assert!(matches!(
            TruncatedIdeal::span("x", sa.clone(), vec![big], Side::Left, 4),
            Err(Error::DegreeTooSmall { .. })
        ));
    }

    #[test]
    fn left_span_dimension_by_hand() {
        // phi1 is normal and S is a domain, so S_{<=2} * phi1 has dim C(6,4) = 15
        let (_, sa) = s(1, 2);
        let i = TruncatedIdeal::span("I1", sa.clone(), vec![phi1(&sa).unwrap()], Side::Left, 4).unwrap();
        assert_eq!(i.dimension(), 15);
        let two = TruncatedIdeal::span("I1", sa.clone(), vec![phi1(&sa).unwrap()], Side::TwoSided, 4).unwrap();
        assert_eq!(two.dimension(), 15);
    }

    #[test]
    fn certificates_replay() {
        let (p, sa) = s(1, 1);
        let f1 = phi1(&sa).unwrap();
        let i1 = TruncatedIdeal::span("I1", sa.clone(), vec![f1.clone()], Side::TwoSided, 5).unwrap();
        // -phi1 as (1 - q^{2m^2}) c'E' - 1
        let ce = sa.multiply(&sa.gen("cp").unwrap(), &sa.gen("Ep").unwrap());
        let x = &ce.scale(&(QScalar::one() - qpow(2 * p.m * p.m))) - &Element::one();
        assert_eq!(x, -&f1);
        let Membership::Verified(cert) = i1.member(&x).unwrap() else { panic!() };
        assert_eq!(i1.replay(&cert), x);
        let y = sa.multiply_all(&[sa.gen("bp").unwrap(), f1.clone(), sa.gen("Fp").unwrap()]);
        let Membership::Verified(cert) = i1.member(&y).unwrap() else { panic!() };
        assert_eq!(i1.replay(&cert), y);
        assert!(!i1.member(&Element::one()).unwrap().is_verified());
        assert!(i1.check_closure().passed());
    }

    #[test]
    fn phi_identities() {
        for (m, n) in [(1, 1), (2, -3)] {
            let (p, sa) = s(m, n);
            let r = check_phi_identities(&sa, p).unwrap();
            assert_eq!(r.checked, 9);
            assert!(r.passed(), "{r:?}");
        }
    }

    #[test]
    fn catalog_small() {
        let p = AlgebraParams::new(1, 1).unwrap();
        let cat = SpecCatalog::new(p, 4, default_z_samples()).unwrap();
        assert_eq!(containment_probe(&cat.i1, &cat.i3).unwrap().status, ContainmentStatus::Contained);
        assert_eq!(containment_probe(&cat.i2, &cat.j1[1]).unwrap().status, ContainmentStatus::Contained);
        assert_eq!(containment_probe(&cat.i3, &cat.i1).unwrap().status, ContainmentStatus::NotDetectedAtBound);
        for ideal in cat.ideals() {
            assert!(monomial_avoidance_probe(ideal).unwrap().clean(), "{}", ideal.name());
        }
        let other = SpecCatalog::new(p, 3, vec![QScalar::one()]).unwrap();
        assert!(matches!(containment_probe(&cat.i1, &other.i1), Err(Error::BoundMismatch(4, 3))));
        let edges = cat.diagram().unwrap();
        assert_eq!(edges.len(), 4 + 4 * 3);
    }

    #[test]
    fn avoidance_detects_generator() {
        let (_, sa) = s(1, 1);
        let i = TruncatedIdeal::span("(b')", sa.clone(), vec![sa.gen("bp").unwrap()], Side::TwoSided, 3).unwrap();
        let r = monomial_avoidance_probe(&i).unwrap();
        assert!(r.detected.contains(&(1, 0)));
        assert_eq!(r.checked.len(), 10);
    }

    #[test]
    fn torus_map() {
        for (m, n) in [(1, 1), (2, -3), (6, 4)] {
            let p = AlgebraParams::new(m, n).unwrap();
            let f = torus_quotient_map(p).unwrap();
            let r = f.check();
            assert_eq!(r.checked, 6);
            assert!(r.passed(), "{r:?}");
            let sa = f.source().clone();
            assert!(f.apply(&phi1(&sa).unwrap()).unwrap().is_zero());
            assert!(f.apply(&phi2(&sa).unwrap()).unwrap().is_zero());
        }
    }
}
