//! The simple S-modules S/J_k(sigma, tau), the induced K- and a-weight D_q-modules,
//! cyclicity probes and growth estimates.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::Zero;
use rand::Rng;

use crate::error::{Error, Result};
use crate::linalg::{axpy, Echelon, SparseVec};
use crate::presets::{factorize_d, make_dq, make_s, AlgebraParams, SOrder};
use crate::qfield::{qpow, QScalar};
use crate::random;
use crate::rewrite::{Element, Monomial, Presentation};

/// Basis key `(i, j)`: the vector `g1^i g2^j v`.
pub type Key = (u32, u32);
pub type ModuleVector = SparseVec<Key, QScalar>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    J1,
    J2,
    J3,
    J4,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::J1, Family::J2, Family::J3, Family::J4];

    /// S order whose first two generators span the module and whose last two act by
    /// `sigma` and `tau` on the cyclic vector.
    pub fn order(self) -> SOrder {
        match self {
            Family::J1 => SOrder::EFbc,
            Family::J2 => SOrder::CFbE,
            Family::J3 => SOrder::EbFc,
            Family::J4 => SOrder::BcEF,
        }
    }

    /// Generators acting by `(sigma, tau)`.
    pub fn scalar_generators(self) -> (&'static str, &'static str) {
        match self {
            Family::J1 => ("bp", "cp"),
            Family::J2 => ("bp", "Ep"),
            Family::J3 => ("Fp", "cp"),
            Family::J4 => ("Fp", "Ep"),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl std::str::FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Family> {
        match s {
            "J1" | "1" => Ok(Family::J1),
            "J2" | "2" => Ok(Family::J2),
            "J3" | "3" => Ok(Family::J3),
            "J4" | "4" => Ok(Family::J4),
            other => Err(Error::InvalidParameter(format!("unknown module family {other}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Cyclic,
    Undetermined,
}

/// Outcome of [`QuotientModule::cyclicity_probe`].
#[derive(Clone, Debug)]
pub struct ProbeReport {
    pub verdict: Verdict,
    pub span_dimension: usize,
    pub vectors: usize,
}

/// S/J_k(sigma, tau) realized on the monomials `g1^i g2^j v`.
#[derive(Clone, Debug)]
pub struct QuotientModule {
    family: Family,
    sigma: QScalar,
    tau: QScalar,
    params: AlgebraParams,
    s: Arc<Presentation>,
    // positions of g1, g2, the sigma generator and the tau generator
    idx: [usize; 4],
}

impl QuotientModule {
    pub fn new(params: AlgebraParams, family: Family, sigma: QScalar, tau: QScalar) -> Result<Self> {
        if !(&sigma * &tau).is_zero() {
            return Err(Error::ConstraintViolation("sigma * tau must vanish".into()));
        }
        let s = Arc::new(make_s(params, family.order())?);
        let names = family.order().names();
        let (gs, gt) = family.scalar_generators();
        let idx = [s.gen_index(names[0])?, s.gen_index(names[1])?, s.gen_index(gs)?, s.gen_index(gt)?];
        Ok(QuotientModule { family, sigma, tau, params, s, idx })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn sigma(&self) -> &QScalar {
        &self.sigma
    }

    pub fn tau(&self) -> &QScalar {
        &self.tau
    }

    pub fn params(&self) -> AlgebraParams {
        self.params
    }

    pub fn algebra(&self) -> &Arc<Presentation> {
        &self.s
    }

    pub fn cyclic_vector() -> ModuleVector {
        std::iter::once(((0, 0), QScalar::one())).collect()
    }

    pub fn basis_vector(key: Key) -> ModuleVector {
        std::iter::once((key, QScalar::one())).collect()
    }

    fn key_monomial(&self, key: Key) -> Monomial {
        Monomial::generator(self.idx[0], key.0 as i32).with(self.idx[1], key.1 as i32)
    }

    /// Pushes a normal-form element of S onto `v`.
    fn project(&self, x: &Element) -> ModuleVector {
        let mut out = ModuleVector::new();
        for (m, c) in x.iter() {
            let (ks, kt) = (m.exponent(self.idx[2]), m.exponent(self.idx[3]));
            let scalar = if ks == 0 && kt == 0 {
                c.clone()
            } else {
                c * self.sigma.pow(ks.into()).unwrap_or_default() * self.tau.pow(kt.into()).unwrap_or_default()
            };
            if scalar.is_zero() {
                continue;
            }
            let key = (m.exponent(self.idx[0]) as u32, m.exponent(self.idx[1]) as u32);
            let mut one = ModuleVector::new();
            one.insert(key, QScalar::one());
            axpy(&mut out, &scalar, &one);
        }
        out
    }

    /// `s . v` for `s` over this module's S presentation.
    pub fn act(&self, s: &Element, v: &ModuleVector) -> ModuleVector {
        let mut out = ModuleVector::new();
        for (key, c) in v {
            let prod = self.s.multiply(s, &Element::from_monomial(self.key_monomial(*key)));
            axpy(&mut out, c, &self.project(&prod));
        }
        out
    }

    /// Like [`QuotientModule::act`], rejecting elements of a different S presentation.
    pub fn act_checked(&self, algebra: &Presentation, s: &Element, v: &ModuleVector) -> Result<ModuleVector> {
        if !algebra.same_algebra(&self.s) {
            return Err(Error::WrongOrder { expected: self.s.name().into(), found: algebra.name().into() });
        }
        algebra.validate_element(s)?;
        Ok(self.act(s, v))
    }

    /// Grows the span of `s . w` over normal monomials `s` degree by degree, up to
    /// `mult_degree`, stopping once it contains `v`.
    pub fn cyclicity_probe(&self, w: &ModuleVector, mult_degree: u32) -> Result<ProbeReport> {
        self.probe(w, mult_degree, true)
    }

    fn probe(&self, w: &ModuleVector, mult_degree: u32, stop_early: bool) -> Result<ProbeReport> {
        let target = Self::cyclic_vector();
        if w.is_empty() {
            return Err(Error::ZeroVector);
        }
        let mut cache: HashMap<(usize, Key), ModuleVector> = HashMap::new();
        let mut apply_gen = |g: usize, v: &ModuleVector| -> ModuleVector {
            let mut out = ModuleVector::new();
            for (key, c) in v {
                let img = cache.entry((g, *key)).or_insert_with(|| {
                    let prod = self.s.multiply(
                        &Element::from_monomial(Monomial::generator(g, 1)),
                        &Element::from_monomial(self.key_monomial(*key)),
                    );
                    self.project(&prod)
                });
                axpy(&mut out, c, img);
            }
            out
        };
        // s . w for normal monomials s, built by prepending generators not after the current first letter.
        // With early exit the monomials in the two scalar generators go first: they keep the degree low.
        let mut ech: Echelon<Key, QScalar> = Echelon::new(false);
        ech.insert(w.clone());
        let mut vectors = 1;
        let last = self.s.ngens() - 1;
        let lowest = if stop_early { vec![last - 1, 0] } else { vec![0] };
        for low in lowest {
            let mut level: Vec<(usize, ModuleVector)> = vec![(last, w.clone())];
            for _ in 0..mult_degree {
                let mut next = Vec::new();
                for (first, v) in &level {
                    for g in low..=*first {
                        let img = apply_gen(g, v);
                        vectors += 1;
                        if !img.is_empty() {
                            ech.insert(img.clone());
                            next.push((g, img));
                        }
                    }
                }
                level = next;
                if stop_early && ech.contains(&target) {
                    let span_dimension = ech.rank();
                    return Ok(ProbeReport { verdict: Verdict::Cyclic, span_dimension, vectors });
                }
            }
        }
        let verdict = if ech.contains(&target) { Verdict::Cyclic } else { Verdict::Undetermined };
        Ok(ProbeReport { verdict, span_dimension: ech.rank(), vectors })
    }

    /// Dimension of `S_{<=d} v`, counted on basis keys of degree at most `d`.
    pub fn filtration_dims(&self, d_max: u32) -> Vec<(u32, usize)> {
        (1..=d_max).map(|d| (d, ((d + 1) * (d + 2) / 2) as usize)).collect()
    }

    /// Same dimensions obtained by row reduction of `S_{<=d} v`; used to validate the count.
    pub fn filtration_dims_by_span(&self, d_max: u32) -> Result<Vec<(u32, usize)>> {
        (1..=d_max)
            .map(|d| Ok((d, self.probe(&Self::cyclic_vector(), d, false)?.span_dimension)))
            .collect()
    }

    pub fn random_vector<R: Rng>(&self, rng: &mut R, max_degree: u32) -> ModuleVector {
        loop {
            let mut v = ModuleVector::new();
            let terms = rng.gen_range(1..=3);
            for _ in 0..terms {
                let i = rng.gen_range(0..=max_degree);
                let j = rng.gen_range(0..=max_degree - i);
                let one = Self::basis_vector((i, j));
                axpy(&mut v, &random::scalar(rng), &one);
            }
            if !v.is_empty() {
                return v;
            }
        }
    }

    pub fn render(&self, v: &ModuleVector) -> String {
        if v.is_empty() {
            return "0".into();
        }
        let names = self.family.order().names();
        let mut out = String::new();
        for (idx, ((i, j), c)) in v.iter().rev().enumerate() {
            let neg = matches!(c.as_monomial(), Some((r, _)) if r < BigRational::zero());
            let mag = if neg { -c } else { c.clone() };
            if idx > 0 {
                out.push_str(if neg { " - " } else { " + " });
            } else if neg {
                out.push('-');
            }
            let mut parts = Vec::new();
            if !mag.is_one() {
                parts.push(if mag.is_compound() { format!("({mag})") } else { mag.to_string() });
            }
            for (name, e) in [(names[0], *i), (names[1], *j)] {
                match e {
                    0 => {}
                    1 => parts.push(name.to_string()),
                    e => parts.push(format!("{name}^{e}")),
                }
            }
            if parts.is_empty() {
                out.push('v');
            } else {
                out.push_str(&parts.join("*"));
                out.push_str(".v");
            }
        }
        out
    }
}

/// Least-squares slope of `log dim` against `log d` over the top half of the range.
pub fn growth_exponent(dims: &[(u32, usize)]) -> f64 {
    let d_max = dims.iter().map(|(d, _)| *d).max().unwrap_or(0);
    let pts: Vec<(f64, f64)> = dims
        .iter()
        .filter(|(d, n)| 2 * d >= d_max && *d > 0 && *n > 0)
        .map(|(d, n)| ((*d as f64).ln(), (*n as f64).ln()))
        .collect();
    let k = pts.len() as f64;
    let (sx, sy) = pts.iter().fold((0.0, 0.0), |(a, b), (x, y)| (a + x, b + y));
    let (mx, my) = (sx / k, sy / k);
    let (num, den) = pts
        .iter()
        .fold((0.0, 0.0), |(n, d), (x, y)| (n + (x - mx) * (y - my), d + (x - mx) * (x - mx)));
    num / den
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum WeightKind {
    K,
    A,
}

/// Layered vector: `(t, key) -> coefficient`.
pub type WeightVector = SparseVec<(i64, Key), QScalar>;

/// `sum_t a^t S/J` (K-weight) or `sum_t K^t S/J` (a-weight), truncated to `|t| <= window`.
#[derive(Clone, Debug)]
pub struct WeightModule {
    kind: WeightKind,
    lambda: QScalar,
    base: QuotientModule,
    window: i64,
    dq: Arc<Presentation>,
}

impl WeightModule {
    pub fn new(kind: WeightKind, lambda: QScalar, base: QuotientModule, window: i64) -> Result<Self> {
        if lambda.is_zero() {
            return Err(Error::InvalidParameter("base eigenvalue must be nonzero".into()));
        }
        if window < 0 {
            return Err(Error::InvalidParameter("window must be non-negative".into()));
        }
        let dq = Arc::new(make_dq(base.params())?);
        Ok(WeightModule { kind, lambda, base, window, dq })
    }

    pub fn base(&self) -> &QuotientModule {
        &self.base
    }

    pub fn algebra(&self) -> &Arc<Presentation> {
        &self.dq
    }

    pub fn kind(&self) -> WeightKind {
        self.kind
    }

    pub fn window(&self) -> i64 {
        self.window
    }

    /// Eigenvalue of the diagonal torus generator on layer `t`.
    pub fn eigenvalue(&self, t: i64) -> QScalar {
        match self.kind {
            WeightKind::K => &self.lambda * qpow(-t),
            WeightKind::A => &self.lambda * qpow(t),
        }
    }

    pub fn support(&self) -> BTreeSet<QScalarKey> {
        (-self.window..=self.window).map(|t| QScalarKey(self.eigenvalue(t))).collect()
    }

    pub fn support_list(&self) -> Vec<QScalar> {
        (-self.window..=self.window).map(|t| self.eigenvalue(t)).collect()
    }

    pub fn layer_vector(t: i64, v: &ModuleVector) -> WeightVector {
        v.iter().map(|(k, c)| ((t, *k), c.clone())).collect()
    }

    /// `K^k a^l` applied to a vector on layer `t`: returns the new layer and the scalar.
    fn torus_on_layer(&self, k: i64, l: i64, t: i64) -> Result<(i64, QScalar)> {
        let (target, scalar) = match self.kind {
            // a^l shifts first, then K^k reads the eigenvalue of the new layer
            WeightKind::K => (t + l, self.eigenvalue(t + l).pow(k)?),
            WeightKind::A => (t + k, self.eigenvalue(t).pow(l)?),
        };
        if target.abs() > self.window {
            return Err(Error::TruncationOverflow { layer: target, window: self.window });
        }
        Ok((target, scalar))
    }

    /// `x . w` for `x` in D_q, through D_q = D^0 * S.
    pub fn act(&self, x: &Element, w: &WeightVector) -> Result<WeightVector> {
        let parts = factorize_d(self.base.params(), &self.dq, self.base.algebra(), x)?;
        let mut layers: BTreeMap<i64, ModuleVector> = BTreeMap::new();
        for ((t, key), c) in w {
            layers.entry(*t).or_default().insert(*key, c.clone());
        }
        let mut out = WeightVector::new();
        for part in &parts {
            for (t, v) in &layers {
                let sv = self.base.act(&part.s, v);
                if sv.is_empty() {
                    continue;
                }
                let (target, scalar) = self.torus_on_layer(part.k.into(), part.a.into(), *t)?;
                let shifted = Self::layer_vector(target, &sv);
                axpy(&mut out, &scalar, &shifted);
            }
        }
        Ok(out)
    }

    /// Degree-`<= d` dimensions of the truncated module, with layers `|t| <= d`.
    pub fn filtration_dims(&self, d_max: u32) -> Vec<(u32, usize)> {
        self.base
            .filtration_dims(d_max)
            .into_iter()
            .map(|(d, n)| (d, (2 * d as usize + 1) * n))
            .collect()
    }

    /// Dimension of `S_{<=d}` applied to the cyclic vector of layer `t`, using the
    /// primed generators as elements of D_q.
    pub fn layer_dimension(&self, t: i64, d: u32, primed: &[Element]) -> Result<usize> {
        let start = Self::layer_vector(t, &QuotientModule::cyclic_vector());
        let mut ech: Echelon<(i64, Key), QScalar> = Echelon::new(false);
        ech.insert(start.clone());
        let mut level: Vec<(usize, WeightVector)> = vec![(primed.len() - 1, start)];
        for _ in 0..d {
            let mut next = Vec::new();
            for (first, v) in &level {
                for (g, x) in primed.iter().enumerate().take(*first + 1) {
                    let img = self.act(x, v)?;
                    if img.keys().any(|(tt, _)| *tt != t) {
                        return Err(Error::ConstraintViolation("S moved a vector off its layer".into()));
                    }
                    if !img.is_empty() {
                        ech.insert(img.clone());
                        next.push((g, img));
                    }
                }
            }
            level = next;
        }
        Ok(ech.rank())
    }

    pub fn render(&self, w: &WeightVector) -> String {
        if w.is_empty() {
            return "0".into();
        }
        let mut layers: BTreeMap<i64, ModuleVector> = BTreeMap::new();
        for ((t, key), c) in w {
            layers.entry(*t).or_default().insert(*key, c.clone());
        }
        layers
            .iter()
            .map(|(t, v)| format!("[t={t}] {}", self.base.render(v)))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// Ordered wrapper so scalars can be collected into sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QScalarKey(pub QScalar);

impl PartialOrd for QScalarKey {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QScalarKey {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0.to_string().cmp(&other.0.to_string())
    }
}
