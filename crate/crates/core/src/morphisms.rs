//! Algebra maps between presentations: relation checking, composition, inverses and
//! the automorphism and embedding families of O_q, U_q and D_q.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::hopf::{oq_hopf, uq_hopf, TensorElement};
use crate::presets::{make_dq, make_oq, make_uq, primed_in_d, AlgebraParams, PrimedSet};
use crate::qfield::{qpow, QScalar};
use crate::report::Report;
use crate::rewrite::{Element, Monomial, Presentation};

/// A map of algebras given by the images of the source generators.
#[derive(Clone, Debug)]
pub struct Morphism {
    name: String,
    source: Arc<Presentation>,
    target: Arc<Presentation>,
    images: Vec<Element>,
}

impl Morphism {
    pub fn new(name: impl Into<String>, source: Arc<Presentation>, target: Arc<Presentation>, images: Vec<Element>) -> Result<Self> {
        if images.len() != source.ngens() {
            return Err(Error::InvalidParameter(format!(
                "{} images given for {} generators",
                images.len(),
                source.ngens()
            )));
        }
        for img in &images {
            target.validate_element(img)?;
        }
        Ok(Morphism { name: name.into(), source, target, images })
    }

    /// Builds from `(generator name, image)` pairs covering every source generator.
    pub fn from_named(
        name: impl Into<String>,
        source: Arc<Presentation>,
        target: Arc<Presentation>,
        named: &[(&str, Element)],
    ) -> Result<Self> {
        let mut images: Vec<Option<Element>> = vec![None; source.ngens()];
        for (g, img) in named {
            images[source.gen_index(g)?] = Some(img.clone());
        }
        let images = images
            .into_iter()
            .enumerate()
            .map(|(i, x)| x.ok_or_else(|| Error::InvalidParameter(format!("no image for {}", source.gen_name(i)))))
            .collect::<Result<Vec<_>>>()?;
        Morphism::new(name, source, target, images)
    }

    pub fn identity(p: Arc<Presentation>) -> Morphism {
        let images = (0..p.ngens()).map(|g| Element::from_monomial(Monomial::generator(g, 1))).collect();
        Morphism { name: "id".into(), source: p.clone(), target: p, images }
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn source(&self) -> &Arc<Presentation> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Presentation> {
        &self.target
    }

    pub fn images(&self) -> &[Element] {
        &self.images
    }

    pub fn image(&self, gen: &str) -> Result<&Element> {
        Ok(&self.images[self.source.gen_index(gen)?])
    }

    pub fn apply(&self, x: &Element) -> Result<Element> {
        self.source.validate_element(x)?;
        self.source.substitute(x, &self.target, &self.images)
    }

    /// Residual of every defining relation, plus invertibility of the images of
    /// invertible generators.
    pub fn check(&self) -> Report {
        let mut report = Report::new(format!("morphism {}", self.name));
        let (s, t) = (&self.source, &self.target);
        for rule in s.rules() {
            let case = format!("{}*{}", s.gen_name(rule.later), s.gen_name(rule.earlier));
            let (x, y) = (&self.images[rule.later], &self.images[rule.earlier]);
            let lhs = t.multiply(x, y);
            let mut rhs = t.multiply(y, x).scale(&rule.swap);
            let tail = s.substitute(&rule.tail, t, &self.images);
            match tail {
                Ok(tail) => {
                    rhs += &tail;
                    let residual = &lhs - &rhs;
                    report.record(residual.is_zero(), case, || format!("residual {}", t.render(&residual)));
                }
                Err(e) => report.record(false, case, || e.to_string()),
            }
        }
        for g in 0..s.ngens() {
            if s.is_invertible(g) {
                let img = &self.images[g];
                let ok = t.inverse(img).is_ok_and(|inv| t.multiply(img, &inv) == Element::one());
                report.record(ok, format!("{} invertible", s.gen_name(g)), || {
                    format!("image {} has no inverse", t.render(img))
                });
            }
        }
        report
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &Morphism) -> Result<Morphism> {
        if !inner.target.same_algebra(&self.source) {
            return Err(Error::TypeMismatch(format!(
                "cannot compose {} -> {} after {} -> {}",
                self.source.name(),
                self.target.name(),
                inner.source.name(),
                inner.target.name()
            )));
        }
        let images = inner
            .images
            .iter()
            .map(|x| self.source.substitute(x, &self.target, &self.images))
            .collect::<Result<Vec<_>>>()?;
        Ok(Morphism {
            name: format!("{}.{}", self.name, inner.name),
            source: inner.source.clone(),
            target: self.target.clone(),
            images,
        })
    }

    /// Equality of generator images after normal form.
    pub fn same_map(&self, other: &Morphism) -> bool {
        self.source.same_algebra(&other.source) && self.target.same_algebra(&other.target) && self.images == other.images
    }

    pub fn is_identity(&self) -> bool {
        self.source.same_algebra(&self.target) && self.same_map(&Morphism::identity(self.source.clone()))
    }

    pub fn render(&self) -> Vec<(String, String)> {
        (0..self.source.ngens())
            .map(|g| (self.source.gen_name(g).to_string(), self.target.render(&self.images[g])))
            .collect()
    }
}

/// Checks that `f ∘ g` and `g ∘ f` are both identities.
pub fn check_inverse(f: &Morphism, g: &Morphism) -> Result<Report> {
    let mut report = Report::new(format!("inverse {} / {}", f.name, g.name));
    for (label, comp) in [("f.g", f.compose(g)?), ("g.f", g.compose(f)?)] {
        let id = Morphism::identity(comp.source.clone());
        for gen in 0..comp.source.ngens() {
            let ok = comp.images[gen] == id.images[gen];
            report.record(ok, format!("{label} on {}", comp.source.gen_name(gen)), || {
                format!("got {}", comp.target.render(&comp.images[gen]))
            });
        }
    }
    Ok(report)
}

fn nonzero(z: &QScalar, what: &str) -> Result<()> {
    if z.is_zero() {
        Err(Error::ConstraintViolation(format!("{what} must be nonzero")))
    } else {
        Ok(())
    }
}

fn mono(p: &Presentation, c: QScalar, letters: &[(&str, i64)]) -> Result<Element> {
    let mut m = Monomial::ONE;
    for (g, e) in letters {
        let i = p.gen_index(g)?;
        m = m.with(i, m.exponent(i) + *e as i32);
    }
    let x = Element::term(c, m);
    p.validate_element(&x)?;
    Ok(x)
}

/// Word product in `p`.
fn word(p: &Presentation, c: QScalar, letters: &[(&str, i64)]) -> Result<Element> {
    let factors = letters
        .iter()
        .map(|(g, e)| p.gen_pow(p.gen_index(g)?, *e as i32))
        .collect::<Result<Vec<_>>>()?;
    Ok(p.multiply_all(&factors).scale(&c))
}

/// a ↦ a^{±1}, b ↦ c, c ↦ b on O_q, without checking m = ±n.
pub fn swap_bc(params: AlgebraParams, invert_a: bool) -> Result<Morphism> {
    let oq = Arc::new(make_oq(params)?);
    let e = if invert_a { -1 } else { 1 };
    let images = [
        ("a", mono(&oq, QScalar::one(), &[("a", e)])?),
        ("b", oq.gen("c")?),
        ("c", oq.gen("b")?),
    ];
    Morphism::from_named(if invert_a { "swap_bc[a^-1]" } else { "swap_bc" }, oq.clone(), oq, &images)
}

/// The involution τ of O_q, defined for m = ±n.
pub fn tau(params: AlgebraParams) -> Result<Morphism> {
    if params.m == params.n {
        Ok(swap_bc(params, false)?.renamed("tau"))
    } else if params.m == -params.n {
        Ok(swap_bc(params, true)?.renamed("tau"))
    } else {
        Err(Error::ConstraintViolation("tau needs m = n or m = -n".into()))
    }
}

/// ξ_i: a ↦ a, b ↦ a^{in/d} b, c ↦ a^{im/d} c.
pub fn xi(params: AlgebraParams, i: i64) -> Result<Morphism> {
    let oq = Arc::new(make_oq(params)?);
    let (eb, ec) = (i * params.n / params.d, i * params.m / params.d);
    let images = [
        ("a", oq.gen("a")?),
        ("b", word(&oq, QScalar::one(), &[("a", eb), ("b", 1)])?),
        ("c", word(&oq, QScalar::one(), &[("a", ec), ("c", 1)])?),
    ];
    Morphism::from_named(format!("xi[{i}]"), oq.clone(), oq, &images)
}

/// ζ_{z,z1,z2}: a ↦ za, b ↦ z1 b, c ↦ z2 c.
pub fn zeta_oq(params: AlgebraParams, z: &QScalar, z1: &QScalar, z2: &QScalar) -> Result<Morphism> {
    for (x, w) in [(z, "z"), (z1, "z1"), (z2, "z2")] {
        nonzero(x, w)?;
    }
    let oq = Arc::new(make_oq(params)?);
    let images = [
        ("a", oq.gen("a")?.scale(z)),
        ("b", oq.gen("b")?.scale(z1)),
        ("c", oq.gen("c")?.scale(z2)),
    ];
    Morphism::from_named(format!("zeta[{z},{z1},{z2}]"), oq.clone(), oq, &images)
}

/// Endomorphism of D_q from images of K, a and the primed generators, using
/// F = q^{n^2} a^{2n} K^{-n} F', c = a^m K^m c', E = a^{-2m} E', b = a^{-n} K^n b'.
pub fn dq_from_parts(
    name: impl Into<String>,
    params: AlgebraParams,
    dq: Arc<Presentation>,
    k_img: &Element,
    a_img: &Element,
    primed_img: impl Fn(&PrimedSet, &str) -> Element,
) -> Result<Morphism> {
    let (m, n) = (params.m, params.n);
    let primed = primed_in_d(params, &dq)?;
    let pw = |x: &Element, e: i64| dq.pow(x, e);
    let f = dq.multiply_all(&[pw(a_img, 2 * n)?, pw(k_img, -n)?, primed_img(&primed, "Fp")]).scale(&qpow(n * n));
    let c = dq.multiply_all(&[pw(a_img, m)?, pw(k_img, m)?, primed_img(&primed, "cp")]);
    let e = dq.multiply(&pw(a_img, -2 * m)?, &primed_img(&primed, "Ep"));
    let b = dq.multiply_all(&[pw(a_img, -n)?, pw(k_img, n)?, primed_img(&primed, "bp")]);
    let images = [("F", f), ("c", c), ("K", k_img.clone()), ("a", a_img.clone()), ("E", e), ("b", b)];
    Morphism::from_named(name, dq.clone(), dq, &images)
}

fn dq_arc(params: AlgebraParams) -> Result<Arc<Presentation>> {
    Ok(Arc::new(make_dq(params)?))
}

fn primed_identity(p: &PrimedSet, g: &str) -> Element {
    p.get(g).expect("primed generator").clone()
}

/// ζ_{z1,z2} of D_q: K ↦ z1 K, a ↦ z2 a, identity on S.
pub fn zeta_dq(params: AlgebraParams, z1: &QScalar, z2: &QScalar) -> Result<Morphism> {
    nonzero(z1, "z1")?;
    nonzero(z2, "z2")?;
    let dq = dq_arc(params)?;
    let (k, a) = (dq.gen("K")?.scale(z1), dq.gen("a")?.scale(z2));
    dq_from_parts(format!("zeta[{z1},{z2}]"), params, dq, &k, &a, primed_identity)
}

/// 2x2 integer matrix, rows first.
pub type IntMatrix = [[i64; 2]; 2];

pub fn det(a: &IntMatrix) -> i64 {
    a[0][0] * a[1][1] - a[0][1] * a[1][0]
}

pub fn mat_mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let mut c = [[0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            c[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    c
}

pub fn mat_inv(a: &IntMatrix) -> Result<IntMatrix> {
    if det(a) != 1 {
        return Err(Error::ConstraintViolation("matrix is not in SL_2(Z)".into()));
    }
    Ok([[a[1][1], -a[0][1]], [-a[1][0], a[0][0]]])
}

/// K ↦ K^{A11} a^{A21}, a ↦ K^{A12} a^{A22}, identity on S, for any integer matrix.
pub fn rho_unchecked(params: AlgebraParams, a: &IntMatrix) -> Result<Morphism> {
    let dq = dq_arc(params)?;
    let k_img = mono(&dq, QScalar::one(), &[("K", a[0][0]), ("a", a[1][0])])?;
    let a_img = mono(&dq, QScalar::one(), &[("K", a[0][1]), ("a", a[1][1])])?;
    dq_from_parts(format!("rho{a:?}"), params, dq, &k_img, &a_img, primed_identity)
}

/// ρ_A for A in SL_2(Z).
pub fn rho(params: AlgebraParams, a: &IntMatrix) -> Result<Morphism> {
    if det(a) != 1 {
        return Err(Error::ConstraintViolation(format!("det {a:?} = {} is not 1", det(a))));
    }
    rho_unchecked(params, a)
}

/// ξ_{z3,z4}: E' ↦ z3 E', F' ↦ z4 F', c' ↦ z3^{-1} c', b' ↦ z4^{-1} b'.
pub fn xi_primed(params: AlgebraParams, z3: &QScalar, z4: &QScalar) -> Result<Morphism> {
    nonzero(z3, "z3")?;
    nonzero(z4, "z4")?;
    let (i3, i4) = (z3.inv()?, z4.inv()?);
    let dq = dq_arc(params)?;
    let (k, a) = (dq.gen("K")?, dq.gen("a")?);
    dq_from_parts(format!("xi_primed[{z3},{z4}]"), params, dq, &k, &a, |p, g| {
        let x = primed_identity(p, g);
        match g {
            "Ep" => x.scale(z3),
            "Fp" => x.scale(z4),
            "cp" => x.scale(&i3),
            _ => x.scale(&i4),
        }
    })
}

/// The literal reading with the unprimed generator b sent to z4^{-1} b'.
pub fn xi_primed_literal(params: AlgebraParams, z3: &QScalar, z4: &QScalar) -> Result<Morphism> {
    let good = xi_primed(params, z3, z4)?;
    let dq = good.source.clone();
    let primed = primed_in_d(params, &dq)?;
    let mut images = good.images.clone();
    images[dq.gen_index("b")?] = primed.b_p.scale(&z4.inv()?);
    Morphism::new(format!("xi_primed_literal[{z3},{z4}]"), dq.clone(), dq, images)
}

/// Scalars `(z1, z2)` with `rho_A ∘ rho_B = rho_{AB} ∘ zeta_{z1,z2}`, read off the images of K and a.
pub fn solve_rho_zeta(params: AlgebraParams, a: &IntMatrix, b: &IntMatrix) -> Result<(QScalar, QScalar)> {
    let lhs = rho(params, a)?.compose(&rho(params, b)?)?;
    let rhs = rho(params, &mat_mul(a, b))?;
    let ratio = |g: &str| -> Result<QScalar> {
        let (ml, cl) = lhs.image(g)?.single_term().ok_or_else(|| Error::ConstraintViolation("not a monomial".into()))?;
        let (mr, cr) = rhs.image(g)?.single_term().ok_or_else(|| Error::ConstraintViolation("not a monomial".into()))?;
        if ml != mr {
            return Err(Error::ConstraintViolation(format!("images of {g} differ beyond a scalar")));
        }
        cl.checked_div(cr)
    };
    Ok((ratio("K")?, ratio("a")?))
}

/// Checks `rho_A ∘ rho_B = rho_{AB} ∘ zeta` with the solved scalars on every generator.
pub fn check_rho_law(params: AlgebraParams, a: &IntMatrix, b: &IntMatrix) -> Result<Report> {
    let (z1, z2) = solve_rho_zeta(params, a, b)?;
    let lhs = rho(params, a)?.compose(&rho(params, b)?)?;
    let rhs = rho(params, &mat_mul(a, b))?.compose(&zeta_dq(params, &z1, &z2)?)?;
    let mut report = Report::new(format!("rho{a:?} rho{b:?}"));
    for g in 0..lhs.source.ngens() {
        report.record(lhs.images[g] == rhs.images[g], lhs.source.gen_name(g), || {
            format!("{} vs {}", lhs.target.render(&lhs.images[g]), rhs.target.render(&rhs.images[g]))
        });
    }
    Ok(report)
}

/// K ↦ a, E ↦ c, F ↦ b from U_q(m, n) to O_q(2m, -2n).
pub fn iso_uq_to_oq(params: AlgebraParams) -> Result<Morphism> {
    let uq = Arc::new(make_uq(params)?);
    let oq = Arc::new(make_oq(AlgebraParams::new(2 * params.m, -2 * params.n)?)?);
    let images = [("K", oq.gen("a")?), ("E", oq.gen("c")?), ("F", oq.gen("b")?)];
    Morphism::from_named("Uq->Oq", uq, oq, &images)
}

pub fn iso_oq_to_uq(params: AlgebraParams) -> Result<Morphism> {
    let uq = Arc::new(make_uq(params)?);
    let oq = Arc::new(make_oq(AlgebraParams::new(2 * params.m, -2 * params.n)?)?);
    let images = [("a", uq.gen("K")?), ("c", uq.gen("E")?), ("b", uq.gen("F")?)];
    Morphism::from_named("Oq->Uq", oq, uq, &images)
}

/// K ↦ a^2, E ↦ a^m c, F ↦ b a^n from U_q(m, -n) into O_q(m, n).
pub fn hopf_embedding(params: AlgebraParams) -> Result<Morphism> {
    let uq = Arc::new(make_uq(AlgebraParams::new(params.m, -params.n)?)?);
    let oq = Arc::new(make_oq(params)?);
    let one = QScalar::one;
    let images = [
        ("K", mono(&oq, one(), &[("a", 2)])?),
        ("E", word(&oq, one(), &[("a", params.m), ("c", 1)])?),
        ("F", word(&oq, one(), &[("b", 1), ("a", params.n)])?),
    ];
    Morphism::from_named("Uq(m,-n)->Oq(m,n)", uq, oq, &images)
}

/// `Δ(f(g)) = (f ⊗ f)(Δ(g))` and `ε(f(g)) = ε(g)` for each generator of the embedding.
pub fn check_embedding_coproduct(params: AlgebraParams) -> Result<Report> {
    let f = hopf_embedding(params)?;
    let hu = uq_hopf(AlgebraParams::new(params.m, -params.n)?)?;
    let ho = oq_hopf(params)?;
    let oq = f.target.clone();
    let mut report = Report::new("embedding coproduct");
    for g in 0..f.source.ngens() {
        let x = f.source.gen_pow(g, 1)?;
        let lhs = ho.coproduct(&f.images[g])?;
        let mut rhs = TensorElement::zero();
        for ([l, r], c) in hu.coproduct(&x)?.iter() {
            let fl = f.apply(&Element::from_monomial(*l))?;
            let fr = f.apply(&Element::from_monomial(*r))?;
            rhs.add_outer(c, [&fl, &fr]);
        }
        let name = f.source.gen_name(g).to_string();
        report.record(lhs == rhs, format!("Delta {name}"), || {
            format!("{} vs {}", lhs.render(&oq), rhs.render(&oq))
        });
        let (eu, eo) = (hu.counit(&x)?, ho.counit(&f.images[g])?);
        report.record(eu == eo, format!("counit {name}"), || format!("{eu} vs {eo}"));
    }
    Ok(report)
}

/// All family checks for one parameter pair with fixed sample scalars.
pub fn check_families(params: AlgebraParams, z: &[QScalar; 3]) -> Result<Report> {
    let mut report = Report::new("families");
    let mut add = |f: Morphism| report.merge(f.check());
    if params.m.abs() == params.n.abs() {
        add(tau(params)?);
    }
    for i in [-2, 1, 3] {
        add(xi(params, i)?);
    }
    add(zeta_oq(params, &z[0], &z[1], &z[2])?);
    add(zeta_dq(params, &z[0], &z[1])?);
    add(rho(params, &[[2, 1], [1, 1]])?);
    add(xi_primed(params, &z[1], &z[2])?);
    add(iso_uq_to_oq(params)?);
    add(hopf_embedding(params)?);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(m: i64, n: i64) -> AlgebraParams {
        AlgebraParams::new(m, n).unwrap()
    }

    #[test]
    fn embedding_and_iso() {
        for (m, n) in [(1, 1), (2, -3)] {
            assert!(hopf_embedding(p(m, n)).unwrap().check().passed());
            assert!(check_embedding_coproduct(p(m, n)).unwrap().passed());
            let f = iso_uq_to_oq(p(m, n)).unwrap();
            let r = f.check();
            assert!(r.passed(), "{r:?}");
            assert_eq!(r.checked, 3 + 1);
            assert!(check_inverse(&f, &iso_oq_to_uq(p(m, n)).unwrap()).unwrap().passed());
        }
    }

    #[test]
    fn tau_cases() {
        let t = tau(p(2, 2)).unwrap();
        assert!(t.check().passed());
        assert!(t.compose(&t).unwrap().is_identity());
        assert!(tau(p(2, -2)).unwrap().check().passed());
        assert!(matches!(tau(p(1, 2)), Err(Error::ConstraintViolation(_))));
        let bad = swap_bc(p(1, 2), false).unwrap().check();
        assert!(!bad.passed());
        assert!(bad.failures.iter().any(|f| f.case == "b*a" || f.case == "a*b"));
    }

    #[test]
    fn xi_law_and_example() {
        let pr = p(2, 4);
        let x2 = xi(pr, 2).unwrap();
        let oq = x2.target().clone();
        assert_eq!(oq.render(x2.image("b").unwrap()), oq.render(&word(&oq, QScalar::one(), &[("a", 4), ("b", 1)]).unwrap()));
        assert_eq!(x2.image("c").unwrap(), &word(&oq, QScalar::one(), &[("a", 2), ("c", 1)]).unwrap());
        let comp = xi(pr, 2).unwrap().compose(&xi(pr, -5).unwrap()).unwrap();
        assert!(comp.same_map(&xi(pr, -3).unwrap()));
        let f = xi(pr, 1).unwrap();
        assert!(f.compose(&Morphism::identity(f.source().clone())).unwrap().same_map(&f));
    }

    #[test]
    fn zeta_inverse() {
        let pr = p(1, 1);
        let (z, z1, z2) = (qpow(1), QScalar::from_int(-2), qpow(-3));
        let f = zeta_oq(pr, &z, &z1, &z2).unwrap();
        let g = zeta_oq(pr, &z.inv().unwrap(), &z1.inv().unwrap(), &z2.inv().unwrap()).unwrap();
        assert!(check_inverse(&f, &g).unwrap().passed());
        assert!(zeta_oq(pr, &QScalar::zero(), &z1, &z2).is_err());
    }

    #[test]
    fn rho_family() {
        let pr = p(2, -3);
        assert!(rho(pr, &[[1, 0], [0, 1]]).unwrap().is_identity());
        let a = [[2, 1], [1, 1]];
        let r = rho(pr, &a).unwrap();
        assert!(r.check().passed());
        let bad = rho_unchecked(pr, &[[2, 0], [0, 1]]).unwrap().check();
        assert!(bad.failures.iter().any(|f| f.case == "a*K" || f.case == "K*a"), "{bad:?}");
        assert!(matches!(rho(pr, &[[2, 0], [0, 1]]), Err(Error::ConstraintViolation(_))));
        assert!(check_rho_law(pr, &a, &[[1, -2], [0, 1]]).unwrap().passed());
        let ainv = mat_inv(&a).unwrap();
        let (z1, z2) = solve_rho_zeta(pr, &a, &ainv).unwrap();
        let id = r
            .compose(&rho(pr, &ainv).unwrap())
            .unwrap()
            .compose(&zeta_dq(pr, &z1.inv().unwrap(), &z2.inv().unwrap()).unwrap())
            .unwrap();
        assert!(id.is_identity());
        // identity on the primed generators
        let primed = primed_in_d(pr, r.source()).unwrap();
        for g in ["bp", "cp", "Ep", "Fp"] {
            assert_eq!(&r.apply(primed.get(g).unwrap()).unwrap(), primed.get(g).unwrap());
        }
    }

    #[test]
    fn xi_primed_readings() {
        let pr = p(1, 2);
        let (z3, z4) = (QScalar::from_int(3), qpow(2));
        let f = xi_primed(pr, &z3, &z4).unwrap();
        assert!(f.check().passed());
        let primed = primed_in_d(pr, f.source()).unwrap();
        assert_eq!(f.apply(&primed.c_p).unwrap(), primed.c_p.scale(&z3.inv().unwrap()));
        assert_eq!(f.apply(&primed.b_p).unwrap(), primed.b_p.scale(&z4.inv().unwrap()));
        assert!(!xi_primed_literal(pr, &z3, &z4).unwrap().check().passed());
    }

    #[test]
    fn all_families() {
        let z = [QScalar::from_int(2), qpow(1), QScalar::from_int(-1)];
        for (m, n) in [(1, 1), (1, -1), (2, 3)] {
            let r = check_families(p(m, n), &z).unwrap();
            assert!(r.passed(), "{r:?}");
        }
    }

    #[test]
    fn compose_mismatch() {
        let f = xi(p(1, 1), 1).unwrap();
        let g = zeta_dq(p(1, 1), &QScalar::one(), &QScalar::one()).unwrap();
        assert!(matches!(f.compose(&g), Err(Error::TypeMismatch(_))));
    }
}
