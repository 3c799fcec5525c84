//! Step-by-step rewriting of words, used as an independent route to normal forms
//! and to test critical overlaps.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::qfield::QScalar;

use super::{word_degree, Element, Letter, Monomial, Presentation, Word};

/// Which reducible position is rewritten next.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    Leftmost,
    Rightmost,
    Random(u64),
}

/// Outcome of the overlap check.
#[derive(Clone, Debug)]
pub struct ConfluenceReport {
    pub algebra: String,
    pub triples_checked: usize,
    pub inverse_overlaps_checked: usize,
    pub divergence: Option<Divergence>,
}

impl ConfluenceReport {
    pub fn passed(&self) -> bool {
        self.divergence.is_none()
    }
}

#[derive(Clone, Debug)]
pub struct Divergence {
    pub word: Word,
    pub rendered: String,
    pub left: Element,
    pub right: Element,
}

fn push(pool: &mut BTreeMap<Word, QScalar>, w: Word, c: QScalar) {
    if c.is_zero() {
        return;
    }
    match pool.get_mut(&w) {
        Some(v) => {
            *v = &*v + &c;
            if v.is_zero() {
                pool.remove(&w);
            }
        }
        None => {
            pool.insert(w, c);
        }
    }
}

fn normalize_word(w: Word) -> Word {
    w.into_iter().filter(|l| l.exp != 0).collect()
}

impl Presentation {
    fn reducible_positions(&self, w: &[Letter]) -> Vec<usize> {
        (0..w.len().saturating_sub(1))
            .filter(|&i| w[i].gen >= w[i + 1].gen)
            .collect()
    }

    fn inversions(w: &[Letter]) -> usize {
        let mut count = 0;
        for i in 0..w.len() {
            for j in i + 1..w.len() {
                if w[i].gen > w[j].gen {
                    count += w[i].exp.unsigned_abs() as usize * w[j].exp.unsigned_abs() as usize;
                }
            }
        }
        count
    }

    fn measure(&self, w: &[Letter]) -> (u32, usize, usize) {
        (word_degree(&self.table, w), Self::inversions(w), w.len())
    }

    /// One rewrite at position `pos` (which must be reducible).
    pub(crate) fn rewrite_at(&self, w: &[Letter], pos: usize) -> Vec<(QScalar, Word)> {
        let (x, y) = (w[pos], w[pos + 1]);
        let pre = &w[..pos];
        let post = &w[pos + 2..];
        let splice = |mid: &[Letter]| -> Word {
            let mut out = Vec::with_capacity(pre.len() + mid.len() + post.len());
            out.extend_from_slice(pre);
            out.extend_from_slice(mid);
            out.extend_from_slice(post);
            normalize_word(out)
        };
        if x.gen == y.gen {
            return vec![(QScalar::one(), splice(&[Letter::new(x.gen, x.exp + y.exp)]))];
        }
        let rule = self.rule(x.gen, y.gen);
        if rule.tail.is_zero() {
            let c = rule.swap.pow(i64::from(x.exp) * i64::from(y.exp)).expect("swap scalars are nonzero");
            return vec![(c, splice(&[y, x]))];
        }
        // x^a y^b = x^{a-1} (s y x + t) y^{b-1}
        let xr = Letter::new(x.gen, x.exp - 1);
        let yr = Letter::new(y.gen, y.exp - 1);
        let mut out = vec![(
            rule.swap.clone(),
            splice(&[xr, Letter::new(y.gen, 1), Letter::new(x.gen, 1), yr]),
        )];
        for (m, c) in rule.tail.iter() {
            let mut mid = vec![xr];
            mid.extend(m.letters());
            mid.push(yr);
            out.push((c.clone(), splice(&mid)));
        }
        out
    }

    /// Normal form of `sum c_i * w_i` by explicit rewriting.
    pub fn normal_form_words(&self, words: Vec<(QScalar, Word)>, strategy: Strategy) -> Result<Element> {
        let mut pool: BTreeMap<Word, QScalar> = BTreeMap::new();
        for (c, w) in words {
            for l in &w {
                self.validate_letter(l)?;
            }
            push(&mut pool, normalize_word(w), c);
        }
        let mut rng = match strategy {
            Strategy::Random(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
            _ => None,
        };
        let mut out = Element::zero();
        while let Some((w, c)) = pool.pop_last() {
            let positions = self.reducible_positions(&w);
            if positions.is_empty() {
                let mut m = Monomial::ONE;
                for l in &w {
                    m.set(l.gen, l.exp);
                }
                out.add_term(m, c);
                continue;
            }
            let pos = match (&strategy, rng.as_mut()) {
                (Strategy::Leftmost, _) => positions[0],
                (Strategy::Rightmost, _) => *positions.last().unwrap(),
                (Strategy::Random(_), Some(r)) => positions[r.gen_range(0..positions.len())],
                (Strategy::Random(_), None) => unreachable!(),
            };
            let before = self.measure(&w);
            for (d, next) in self.rewrite_at(&w, pos) {
                debug_assert!(self.measure(&next) < before, "rewrite measure must decrease");
                push(&mut pool, next, &c * &d);
            }
        }
        Ok(out)
    }

    pub fn render_word(&self, w: &[Letter]) -> String {
        w.iter()
            .map(|l| {
                let name = self.gen_name(l.gen);
                if l.exp == 1 {
                    name.to_string()
                } else {
                    format!("{name}^{}", l.exp)
                }
            })
            .collect::<Vec<_>>()
            .join("*")
    }

    fn critical_pair(&self, w: &[Letter]) -> Result<Option<Divergence>> {
        let left = self.normal_form_words(self.rewrite_at(w, 0), Strategy::Leftmost)?;
        let right = self.normal_form_words(self.rewrite_at(w, 1), Strategy::Leftmost)?;
        if left == right {
            Ok(None)
        } else {
            Ok(Some(Divergence { word: w.to_vec(), rendered: self.render_word(w), left, right }))
        }
    }

    /// Resolves every critical overlap: descending generator triples and the
    /// overlaps produced by inverse letters of invertible generators.
    pub fn check_confluence(&self) -> ConfluenceReport {
        let n = self.ngens();
        let mut report = ConfluenceReport {
            algebra: self.name().to_string(),
            triples_checked: 0,
            inverse_overlaps_checked: 0,
            divergence: None,
        };
        let record = |report: &mut ConfluenceReport, w: &[Letter], inverse: bool| -> bool {
            if inverse {
                report.inverse_overlaps_checked += 1;
            } else {
                report.triples_checked += 1;
            }
            match self.critical_pair(w) {
                Ok(None) => true,
                Ok(Some(d)) => {
                    report.divergence = Some(d);
                    false
                }
                Err(_) => unreachable!("overlap words are valid by construction"),
            }
        };
        for x in (0..n).rev() {
            for y in (0..x).rev() {
                for z in (0..y).rev() {
                    let w = [Letter::new(x, 1), Letter::new(y, 1), Letter::new(z, 1)];
                    if !record(&mut report, &w, false) {
                        return report;
                    }
                }
            }
        }
        let mut letters = Vec::new();
        for g in 0..n {
            letters.push(Letter::new(g, 1));
            if self.is_invertible(g) {
                letters.push(Letter::new(g, -1));
            }
        }
        let reduces = |l: &Letter, r: &Letter| l.gen > r.gen || (l.gen == r.gen && l.exp == -r.exp);
        for l1 in &letters {
            for l2 in &letters {
                if !reduces(l1, l2) {
                    continue;
                }
                for l3 in &letters {
                    if !reduces(l2, l3) {
                        continue;
                    }
                    let plain = l1.exp == 1 && l2.exp == 1 && l3.exp == 1;
                    if plain {
                        continue;
                    }
                    if !record(&mut report, &[*l1, *l2, *l3], true) {
                        return report;
                    }
                }
            }
        }
        report
    }
}
