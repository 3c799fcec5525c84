//! PBW normal forms for algebras given by q-commutation rules with lower-degree tails.
//!
//! Generators are totally ordered; a rule for a pair `later > earlier` reads
//! `later * earlier -> swap * earlier * later + tail`. A [`Monomial`] is an
//! exponent vector read in generator order, so every [`Element`] is already a
//! normal-ordered sum. Products are computed by [`Presentation::multiply`], which
//! memoizes monomial products behind a lock; the presentation itself never
//! changes after construction.

mod element;
mod word;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use crate::error::{Error, Result};
use crate::qfield::QScalar;

pub use element::Element;
pub use word::{ConfluenceReport, Divergence, Strategy};

pub const MAX_GENERATORS: usize = 8;

/// One generator raised to a nonzero power.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Letter {
    pub gen: usize,
    pub exp: i32,
}

impl Letter {
    pub fn new(gen: usize, exp: i32) -> Self {
        Letter { gen, exp }
    }
}

/// A product of letters in arbitrary order.
pub type Word = Vec<Letter>;

/// Exponent vector indexed by generator order.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial([i32; MAX_GENERATORS]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0; MAX_GENERATORS]);

    pub fn from_exponents(exps: &[i32]) -> Self {
        assert!(exps.len() <= MAX_GENERATORS, "too many generators");
        let mut m = Monomial::ONE;
        m.0[..exps.len()].copy_from_slice(exps);
        m
    }

    pub fn generator(gen: usize, exp: i32) -> Self {
        let mut m = Monomial::ONE;
        m.0[gen] = exp;
        m
    }

    pub fn exponent(&self, gen: usize) -> i32 {
        self.0[gen]
    }

    pub fn set(&mut self, gen: usize, exp: i32) {
        self.0[gen] = exp;
    }

    pub fn with(mut self, gen: usize, exp: i32) -> Self {
        self.0[gen] = exp;
        self
    }

    pub fn exponents(&self) -> &[i32; MAX_GENERATORS] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn first_index(&self) -> Option<usize> {
        self.0.iter().position(|&e| e != 0)
    }

    pub fn last_index(&self) -> Option<usize> {
        self.0.iter().rposition(|&e| e != 0)
    }

    /// Letters in generator order.
    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e != 0)
            .map(|(g, &e)| Letter::new(g, e))
    }

    pub fn to_word(&self) -> Word {
        self.letters().collect()
    }

    /// Componentwise sum; meaningful as a product only for commuting factors.
    pub fn add_exponents(&self, other: &Monomial) -> Monomial {
        let mut out = *self;
        for (o, e) in out.0.iter_mut().zip(other.0.iter()) {
            *o += e;
        }
        out
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.last_index().map_or(0, |i| i + 1);
        write!(f, "{:?}", &self.0[..n])
    }
}

/// Ordered generator names with invertibility flags and filtration weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorTable {
    pub names: Vec<String>,
    pub invertible: Vec<bool>,
    pub degree: Vec<u32>,
}

impl GeneratorTable {
    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }
}

/// `later * earlier -> swap * earlier * later + tail`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RewriteRule {
    pub later: usize,
    pub earlier: usize,
    pub swap: QScalar,
    pub tail: Element,
}

type TailWords = Vec<(QScalar, Word)>;

pub struct Presentation {
    name: String,
    table: GeneratorTable,
    rules: Vec<Option<RewriteRule>>,
    cache: RwLock<HashMap<(Monomial, Monomial), Arc<Element>>>,
}

impl Clone for Presentation {
    fn clone(&self) -> Self {
        Presentation {
            name: self.name.clone(),
            table: self.table.clone(),
            rules: self.rules.clone(),
            cache: RwLock::new(HashMap::new()),
        }
    }
}

impl fmt::Debug for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Presentation")
            .field("name", &self.name)
            .field("generators", &self.table.names)
            .finish()
    }
}

/// Incremental construction of a [`Presentation`].
pub struct PresentationBuilder {
    name: String,
    table: GeneratorTable,
    pending: Vec<(usize, usize, QScalar, TailWords)>,
    error: Option<Error>,
}

impl PresentationBuilder {
    pub fn generator(mut self, name: &str, invertible: bool, degree: u32) -> Self {
        if self.table.names.iter().any(|n| n == name) {
            self.error.get_or_insert(Error::InvalidPresentation(format!("duplicate generator {name}")));
        } else if self.table.len() == MAX_GENERATORS {
            self.error.get_or_insert(Error::InvalidPresentation("too many generators".into()));
        }
        self.table.names.push(name.to_string());
        self.table.invertible.push(invertible);
        self.table.degree.push(degree);
        self
    }

    fn index(&self, name: &str) -> Result<usize> {
        self.table
            .names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    /// Records the relation `x * y = swap * y * x + tail`, solving it for whichever
    /// side is out of order. Tail words are lists of `(generator, exponent)`.
    pub fn relation(mut self, x: &str, y: &str, swap: QScalar, tail: &[(QScalar, &[(&str, i32)])]) -> Self {
        let parsed = (|| -> Result<_> {
            let xi = self.index(x)?;
            let yi = self.index(y)?;
            let mut words = Vec::new();
            for (c, w) in tail {
                let word = w
                    .iter()
                    .map(|(g, e)| Ok(Letter::new(self.index(g)?, *e)))
                    .collect::<Result<Word>>()?;
                words.push((c.clone(), word));
            }
            Ok((xi, yi, words))
        })();
        match parsed {
            Err(e) => {
                self.error.get_or_insert(e);
            }
            Ok((xi, yi, words)) => self.relation_indexed(xi, yi, swap, words),
        }
        self
    }

    fn relation_indexed(&mut self, x: usize, y: usize, swap: QScalar, tail: TailWords) {
        if x == y {
            self.error.get_or_insert(Error::InvalidPresentation("relation of a generator with itself".into()));
            return;
        }
        if x > y {
            self.pending.push((x, y, swap, tail));
        } else {
            // y x = swap^{-1} x y - swap^{-1} tail
            let inv = match swap.inv() {
                Ok(v) => v,
                Err(e) => {
                    self.error.get_or_insert(e);
                    return;
                }
            };
            let tail = tail.into_iter().map(|(c, w)| (-(&inv * &c), w)).collect();
            self.pending.push((y, x, inv, tail));
        }
    }

    pub fn build(self) -> Result<Presentation> {
        if let Some(e) = self.error {
            return Err(e);
        }
        let n = self.table.len();
        let mut rules: Vec<Option<RewriteRule>> = vec![None; n * n];
        let mut tails: Vec<(usize, TailWords)> = Vec::new();
        for (later, earlier, swap, tail) in self.pending {
            let slot = later * n + earlier;
            if rules[slot].is_some() {
                return Err(Error::InvalidPresentation(format!(
                    "duplicate rule for ({}, {})",
                    self.table.names[later], self.table.names[earlier]
                )));
            }
            let pair_degree = self.table.degree[later] + self.table.degree[earlier];
            for (_, w) in &tail {
                for l in w {
                    if l.gen >= n {
                        return Err(Error::InvalidPresentation("tail letter out of range".into()));
                    }
                }
                let d = word_degree(&self.table, w);
                if d >= pair_degree {
                    return Err(Error::InvalidPresentation(format!(
                        "tail of ({}, {}) does not have lower degree",
                        self.table.names[later], self.table.names[earlier]
                    )));
                }
            }
            if !tail.is_empty() && (self.table.invertible[later] || self.table.invertible[earlier]) {
                return Err(Error::InvalidPresentation(
                    "tails are only supported between non-invertible generators".into(),
                ));
            }
            if swap.is_zero() {
                return Err(Error::InvalidPresentation("zero swap scalar".into()));
            }
            rules[slot] = Some(RewriteRule { later, earlier, swap, tail: Element::zero() });
            tails.push((slot, tail));
        }
        for later in 0..n {
            for earlier in 0..later {
                if rules[later * n + earlier].is_none() {
                    return Err(Error::InvalidPresentation(format!(
                        "missing rule for ({}, {})",
                        self.table.names[later], self.table.names[earlier]
                    )));
                }
            }
        }
        let mut pres = Presentation {
            name: self.name,
            table: self.table,
            rules,
            cache: RwLock::new(HashMap::new()),
        };
        // tails have strictly lower degree, so this settles after a few rounds
        let max_rounds = 2 + pres.table.degree.iter().sum::<u32>() as usize;
        for _ in 0..max_rounds {
            let mut changed = false;
            for (slot, words) in &tails {
                let nf = pres.normal_form_words(words.clone(), Strategy::Leftmost)?;
                let rule = pres.rules[*slot].as_mut().unwrap();
                if rule.tail != nf {
                    rule.tail = nf;
                    changed = true;
                }
            }
            pres.cache.write().unwrap().clear();
            if !changed {
                break;
            }
        }
        Ok(pres)
    }
}

pub(crate) fn word_degree(table: &GeneratorTable, w: &[Letter]) -> u32 {
    w.iter().map(|l| table.degree[l.gen] * l.exp.max(0) as u32).sum()
}

impl Presentation {
    pub fn builder(name: &str) -> PresentationBuilder {
        PresentationBuilder {
            name: name.to_string(),
            table: GeneratorTable { names: Vec::new(), invertible: Vec::new(), degree: Vec::new() },
            pending: Vec::new(),
            error: None,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn table(&self) -> &GeneratorTable {
        &self.table
    }

    pub fn ngens(&self) -> usize {
        self.table.len()
    }

    pub fn gen_name(&self, gen: usize) -> &str {
        &self.table.names[gen]
    }

    pub fn is_invertible(&self, gen: usize) -> bool {
        self.table.invertible[gen]
    }

    pub fn degree_of(&self, gen: usize) -> u32 {
        self.table.degree[gen]
    }

    pub fn gen_index(&self, name: &str) -> Result<usize> {
        self.table
            .names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    /// True when both presentations describe the same algebra with the same order.
    pub fn same_algebra(&self, other: &Presentation) -> bool {
        self.name == other.name && self.table == other.table && self.rules == other.rules
    }

    pub fn rule(&self, later: usize, earlier: usize) -> &RewriteRule {
        debug_assert!(later > earlier);
        self.rules[later * self.ngens() + earlier].as_ref().expect("complete rule table")
    }

    pub fn rules(&self) -> impl Iterator<Item = &RewriteRule> {
        self.rules.iter().flatten()
    }

    /// A copy with one swap scalar replaced; used to build negative controls.
    pub fn with_swap_override(&self, later: &str, earlier: &str, swap: QScalar) -> Result<Presentation> {
        let (l, e) = (self.gen_index(later)?, self.gen_index(earlier)?);
        if l <= e {
            return Err(Error::InvalidPresentation(format!("{later} is not after {earlier}")));
        }
        let mut out = self.clone();
        out.name = format!("{}[{}*{} corrupted]", self.name, later, earlier);
        let n = out.ngens();
        out.rules[l * n + e].as_mut().unwrap().swap = swap;
        Ok(out)
    }

    pub fn monomial_degree(&self, m: &Monomial) -> u32 {
        (0..self.ngens())
            .map(|g| self.table.degree[g] * m.exponent(g).max(0) as u32)
            .sum()
    }

    /// Largest filtration degree among the terms (0 for the zero element).
    pub fn element_degree(&self, x: &Element) -> u32 {
        x.iter().map(|(m, _)| self.monomial_degree(m)).max().unwrap_or(0)
    }

    pub fn validate_letter(&self, l: &Letter) -> Result<()> {
        if l.gen >= self.ngens() {
            return Err(Error::UnknownGenerator(format!("#{}", l.gen)));
        }
        if l.exp < 0 && !self.table.invertible[l.gen] {
            return Err(Error::NegativePowerOfNonInvertible(self.table.names[l.gen].clone()));
        }
        Ok(())
    }

    pub fn validate_monomial(&self, m: &Monomial) -> Result<()> {
        for l in m.letters() {
            self.validate_letter(&l)?;
        }
        Ok(())
    }

    pub fn validate_element(&self, x: &Element) -> Result<()> {
        x.iter().try_for_each(|(m, _)| self.validate_monomial(m))
    }

    pub fn gen(&self, name: &str) -> Result<Element> {
        Ok(Element::from_monomial(Monomial::generator(self.gen_index(name)?, 1)))
    }

    pub fn gen_pow(&self, gen: usize, exp: i32) -> Result<Element> {
        self.validate_letter(&Letter::new(gen, exp))?;
        Ok(Element::from_monomial(Monomial::generator(gen, exp)))
    }

    /// Normal form of `sum c_i * w_i` for words in any order, using the memoized multiplier.
    pub fn normal_form_word(&self, w: &[Letter]) -> Result<Element> {
        let mut acc = Element::one();
        for l in w {
            self.validate_letter(l)?;
            if l.exp == 0 {
                continue;
            }
            acc = self.multiply(&acc, &Element::from_monomial(Monomial::generator(l.gen, l.exp)));
        }
        Ok(acc)
    }

    /// Product of two normal-form elements.
    pub fn multiply(&self, x: &Element, y: &Element) -> Element {
        let mut out = Element::zero();
        for (a, ca) in x.iter() {
            for (b, cb) in y.iter() {
                let prod = self.mul_monomials(a, b);
                out.add_scaled(&prod, &(ca * cb));
            }
        }
        out
    }

    pub fn multiply_all<'a, I: IntoIterator<Item = &'a Element>>(&self, factors: I) -> Element {
        factors.into_iter().fold(Element::one(), |acc, f| self.multiply(&acc, f))
    }

    /// `x^k` for `k >= 0`; negative powers require an invertible monomial term.
    pub fn pow(&self, x: &Element, k: i64) -> Result<Element> {
        let base = if k < 0 { self.inverse(x)? } else { x.clone() };
        let mut acc = Element::one();
        for _ in 0..k.unsigned_abs() {
            acc = self.multiply(&acc, &base);
        }
        Ok(acc)
    }

    pub fn commutator(&self, x: &Element, y: &Element) -> Element {
        &self.multiply(x, y) - &self.multiply(y, x)
    }

    /// Inverse of `c * M` where `M` involves invertible generators only.
    pub fn inverse(&self, x: &Element) -> Result<Element> {
        let (m, c) = x
            .single_term()
            .ok_or_else(|| Error::NotInvertible(self.render(x)))?;
        if m.letters().any(|l| !self.is_invertible(l.gen)) {
            return Err(Error::NotInvertible(self.render(x)));
        }
        let word: Word = m.to_word().into_iter().rev().map(|l| Letter::new(l.gen, -l.exp)).collect();
        let inv = self.normal_form_word(&word)?;
        Ok(inv.scale(&c.inv()?))
    }

    pub fn mul_monomials(&self, a: &Monomial, b: &Monomial) -> Arc<Element> {
        if b.is_one() {
            return Arc::new(Element::from_monomial(*a));
        }
        if a.is_one() {
            return Arc::new(Element::from_monomial(*b));
        }
        let first_b = b.first_index().unwrap();
        if a.last_index().unwrap() <= first_b {
            return Arc::new(Element::from_monomial(a.add_exponents(b)));
        }
        if let Some(hit) = self.cache.read().unwrap().get(&(*a, *b)) {
            return Arc::clone(hit);
        }
        let e = b.exponent(first_b);
        let rest = b.with(first_b, 0);
        let head = self.mul_monomial_letter(a, first_b, e);
        let mut out = Element::zero();
        for (m, c) in head.iter() {
            out.add_scaled(&self.mul_monomials(m, &rest), c);
        }
        let out = Arc::new(out);
        self.cache.write().unwrap().insert((*a, *b), Arc::clone(&out));
        out
    }

    fn mul_monomial_letter(&self, a: &Monomial, g: usize, e: i32) -> Element {
        let h = match a.last_index() {
            None => return Element::from_monomial(Monomial::generator(g, e)),
            Some(h) => h,
        };
        if h <= g {
            return Element::from_monomial(a.add_exponents(&Monomial::generator(g, e)));
        }
        let k = a.exponent(h);
        let prefix = a.with(h, 0);
        let swapped = self.pow_pair(h, k, g, e);
        let mut out = Element::zero();
        for (m, c) in swapped.iter() {
            out.add_scaled(&self.mul_monomials(&prefix, m), c);
        }
        out
    }

    /// Normal form of `h^k g^e` for `h > g`.
    fn pow_pair(&self, h: usize, k: i32, g: usize, e: i32) -> Element {
        let rule = self.rule(h, g);
        if rule.tail.is_zero() {
            let c = rule.swap.pow(i64::from(k) * i64::from(e)).expect("swap scalars are nonzero");
            let m = Monomial::generator(g, e).with(h, k);
            return Element::term(c, m);
        }
        debug_assert!(k > 0 && e > 0);
        if k == 1 {
            // h g^e = s g (h g^{e-1}) + t g^{e-1}
            let g1 = Element::from_monomial(Monomial::generator(g, 1));
            if e == 1 {
                let mut out = Element::term(rule.swap.clone(), Monomial::generator(g, 1).with(h, 1));
                out += &rule.tail;
                return out;
            }
            let inner = self.pow_pair(h, 1, g, e - 1);
            let mut out = self.multiply(&g1, &inner).scale(&rule.swap);
            let ge = Element::from_monomial(Monomial::generator(g, e - 1));
            out += &self.multiply(&rule.tail, &ge);
            out
        } else {
            let inner = self.pow_pair(h, 1, g, e);
            self.multiply(&Element::from_monomial(Monomial::generator(h, k - 1)), &inner)
        }
    }

    /// Evaluates `x` under the algebra map sending generator `i` to `images[i]` in `target`.
    pub fn substitute(&self, x: &Element, target: &Presentation, images: &[Element]) -> Result<Element> {
        let mut out = Element::zero();
        for (m, c) in x.iter() {
            let mut acc = Element::one();
            for l in m.letters() {
                let img = target.pow(&images[l.gen], i64::from(l.exp))?;
                acc = target.multiply(&acc, &img);
            }
            out.add_scaled(&acc, c);
        }
        Ok(out)
    }

    pub fn render_monomial(&self, m: &Monomial) -> String {
        if m.is_one() {
            return "1".to_string();
        }
        m.letters()
            .map(|l| {
                let name = &self.table.names[l.gen];
                if l.exp == 1 {
                    name.clone()
                } else {
                    format!("{name}^{}", l.exp)
                }
            })
            .collect::<Vec<_>>()
            .join("*")
    }

    /// Terms in display order: higher degree first, then exponent vectors descending.
    pub fn sorted_terms<'a>(&self, x: &'a Element) -> Vec<(&'a Monomial, &'a QScalar)> {
        let mut terms: Vec<_> = x.iter().collect();
        terms.sort_by(|(a, _), (b, _)| {
            self.monomial_degree(b)
                .cmp(&self.monomial_degree(a))
                .then_with(|| b.cmp(a))
        });
        terms
    }

    pub fn render(&self, x: &Element) -> String {
        if x.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (m, c)) in self.sorted_terms(x).into_iter().enumerate() {
            let mono = self.render_monomial(m);
            let (neg, mag) = match c.as_monomial() {
                Some((r, _)) if r < num_rational::BigRational::from_integer(0.into()) => (true, -c),
                _ => (false, c.clone()),
            };
            if idx == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let coeff = if mag.is_compound() { format!("({mag})") } else { mag.to_string() };
            if m.is_one() {
                out.push_str(&coeff);
            } else if mag.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&coeff);
                out.push('*');
                out.push_str(&mono);
            }
        }
        out
    }

    /// JSON view of an element: `[{coeff, mono: {gen: exp}}]` in display order.
    pub fn element_json(&self, x: &Element) -> serde_json::Value {
        self.element_json_with(x, |c| c.to_string())
    }

    pub fn element_json_with<F: Fn(&QScalar) -> String>(&self, x: &Element, coeff: F) -> serde_json::Value {
        let terms = self
            .sorted_terms(x)
            .into_iter()
            .map(|(m, c)| {
                let mut mono = serde_json::Map::new();
                for l in m.letters() {
                    mono.insert(self.table.names[l.gen].clone(), l.exp.into());
                }
                serde_json::json!({ "coeff": coeff(c), "mono": mono })
            })
            .collect::<Vec<_>>();
        serde_json::Value::Array(terms)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qfield::qpow;

    fn quantum_plane() -> Presentation {
        // y x = q x y with x < y
        Presentation::builder("plane")
            .generator("x", false, 1)
            .generator("y", false, 1)
            .relation("y", "x", qpow(1), &[])
            .build()
            .unwrap()
    }

    fn weyl() -> Presentation {
        // y x = q x y + 1
        Presentation::builder("weyl")
            .generator("x", false, 1)
            .generator("y", false, 1)
            .relation("y", "x", qpow(1), &[(QScalar::one(), &[])])
            .build()
            .unwrap()
    }

    fn letter(g: usize, e: i32) -> Letter {
        Letter::new(g, e)
    }

    #[test]
    fn quantum_plane_powers() {
        let p = quantum_plane();
        let nf = p.normal_form_word(&[letter(1, 2), letter(0, 3)]).unwrap();
        assert_eq!(nf, Element::term(qpow(6), Monomial::from_exponents(&[3, 2])));
    }

    #[test]
    fn weyl_tail_matches_word_engine() {
        let p = weyl();
        let w = vec![letter(1, 3), letter(0, 2), letter(1, 1), letter(0, 1)];
        let fast = p.normal_form_word(&w).unwrap();
        let slow = p.normal_form_words(vec![(QScalar::one(), w)], Strategy::Leftmost).unwrap();
        assert_eq!(fast, slow);
        // y x = q x y + 1 in normal form
        let yx = p.normal_form_word(&[letter(1, 1), letter(0, 1)]).unwrap();
        let mut expected = Element::term(qpow(1), Monomial::from_exponents(&[1, 1]));
        expected += &Element::one();
        assert_eq!(yx, expected);
    }

    #[test]
    fn relation_is_solved_for_the_out_of_order_side() {
        // x y = q^2 y x + 1 with x < y gives y x -> q^-2 x y - q^-2
        let p = Presentation::builder("t")
            .generator("x", false, 1)
            .generator("y", false, 1)
            .relation("x", "y", qpow(2), &[(QScalar::one(), &[])])
            .build()
            .unwrap();
        let r = p.rule(1, 0);
        assert_eq!(r.swap, qpow(-2));
        assert_eq!(r.tail, Element::scalar(-qpow(-2)));
    }

    #[test]
    fn builder_rejects_bad_input() {
        let missing = Presentation::builder("m").generator("x", false, 1).generator("y", false, 1).build();
        assert!(matches!(missing, Err(Error::InvalidPresentation(_))));
        let high_tail = Presentation::builder("h")
            .generator("x", false, 1)
            .generator("y", false, 1)
            .relation("y", "x", qpow(1), &[(QScalar::one(), &[("x", 2)])])
            .build();
        assert!(matches!(high_tail, Err(Error::InvalidPresentation(_))));
        let unknown = Presentation::builder("u").generator("x", false, 1).relation("x", "z", qpow(1), &[]).build();
        assert_eq!(unknown.unwrap_err(), Error::UnknownGenerator("z".into()));
    }

    #[test]
    fn negative_power_of_non_invertible_is_rejected() {
        let p = quantum_plane();
        assert_eq!(
            p.normal_form_word(&[letter(0, -1)]).unwrap_err(),
            Error::NegativePowerOfNonInvertible("x".into())
        );
    }

    #[test]
    fn rendering_orders_by_degree() {
        let p = weyl();
        let yx = p.normal_form_word(&[letter(1, 1), letter(0, 1)]).unwrap();
        assert_eq!(p.render(&yx), "q*x*y + 1");
        assert_eq!(p.render(&Element::zero()), "0");
    }
}
