//! Normal ordering in finitely presented algebras with adjacent-pair rewrite rules.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use thiserror::Error;

use crate::scalars::{EvalEnv, Scalar};

pub const DEFAULT_BUDGET: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RewriteError {
    #[error("rewrite step budget of {0} exceeded")]
    BudgetExceeded(u64),
    #[error("rule {lhs} -> {rhs} does not decrease in degree-lexicographic order")]
    NonTerminating { lhs: String, rhs: String },
    #[error("generator index {0} outside the alphabet")]
    UnknownGenerator(u16),
    #[error("unknown generator name {0}")]
    UnknownName(String),
    #[error("alphabets differ")]
    AlphabetMismatch,
}

/// A monomial; ordered by length, then lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Word(pub Vec<u16>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[u16] {
        &self.0
    }

    pub fn concat(&self, o: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&o.0);
        Word(v)
    }
}

impl Ord for Word {
    fn cmp(&self, o: &Self) -> Ordering {
        self.0.len().cmp(&o.0.len()).then_with(|| self.0.cmp(&o.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// Linear combination of words with exact coefficients.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct NcPoly {
    terms: BTreeMap<Word, Scalar>,
}

impl NcPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Scalar::one())
    }

    pub fn constant(c: Scalar) -> Self {
        Self::term(Word::empty(), c)
    }

    pub fn gen(g: u16) -> Self {
        Self::term(Word(vec![g]), Scalar::one())
    }

    pub fn word(w: &[u16]) -> Self {
        Self::term(Word(w.to_vec()), Scalar::one())
    }

    pub fn term(w: Word, c: Scalar) -> Self {
        let mut p = Self::zero();
        p.add_term(w, c);
        p
    }

    pub fn add_term(&mut self, w: Word, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let v = match self.terms.remove(&w) {
            Some(old) => &old + &c,
            None => c,
        };
        if !v.is_zero() {
            self.terms.insert(w, v);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, w: &[u16]) -> Scalar {
        self.terms.get(&Word(w.to_vec())).cloned().unwrap_or_default()
    }

    /// Coefficient of the empty word.
    pub fn constant_term(&self) -> Scalar {
        self.coefficient(&[])
    }

    pub fn leading_word(&self) -> Option<&Word> {
        self.terms.keys().next_back()
    }

    /// Word lengths present, if they all agree.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut it = self.terms.keys().map(Word::len);
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &o.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&Scalar::int(-1)))
    }

    pub fn scale(&self, k: &Scalar) -> Self {
        let mut out = Self::zero();
        for (w, c) in &self.terms {
            out.add_term(w.clone(), k * c);
        }
        out
    }

    /// Product in the free algebra (no rewriting).
    pub fn concat_mul(&self, o: &Self) -> Self {
        let mut out = Self::zero();
        for (a, x) in &self.terms {
            for (b, y) in &o.terms {
                out.add_term(a.concat(b), x * y);
            }
        }
        out
    }

    /// Applies `f` letter by letter, multiplying images in word order (free algebra).
    pub fn substitute(&self, f: impl Fn(u16) -> NcPoly) -> Self {
        let mut out = Self::zero();
        for (w, c) in &self.terms {
            let mut acc = NcPoly::constant(c.clone());
            for &g in w.letters() {
                acc = acc.concat_mul(&f(g));
            }
            out = out.add(&acc);
        }
        out
    }

    /// Relabels letters with `f`.
    pub fn map_letters(&self, f: impl Fn(u16) -> u16) -> Self {
        let mut out = Self::zero();
        for (w, c) in &self.terms {
            out.add_term(Word(w.letters().iter().map(|&g| f(g)).collect()), c.clone());
        }
        out
    }

    pub fn map_coeffs<E>(&self, f: impl Fn(&Scalar) -> Result<Scalar, E>) -> Result<Self, E> {
        let mut out = Self::zero();
        for (w, c) in &self.terms {
            out.add_term(w.clone(), f(c)?);
        }
        Ok(out)
    }

    /// Largest coefficient modulus at `env`; unevaluable coefficients count as infinite.
    pub fn max_abs_at(&self, env: &EvalEnv) -> f64 {
        self.terms
            .values()
            .map(|c| c.eval(env).map(|z| z.norm()).unwrap_or(f64::INFINITY))
            .fold(0.0, f64::max)
    }
}

impl fmt::Display for NcPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})")?;
            for g in w.letters() {
                write!(f, "*x{g}")?;
            }
        }
        Ok(())
    }
}

/// Ordered alphabet with rules `g h -> rhs` on adjacent pairs.
#[derive(Clone, Debug, PartialEq)]
pub struct RewriteSystem {
    names: Vec<String>,
    rules: BTreeMap<(u16, u16), Vec<NcPoly>>,
}

impl RewriteSystem {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Self {
        Self { names: names.into_iter().map(Into::into).collect(), rules: BTreeMap::new() }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, g: u16) -> &str {
        &self.names[g as usize]
    }

    pub fn gen(&self, name: &str) -> Result<u16, RewriteError> {
        self.names
            .iter()
            .position(|n| n == name)
            .map(|i| i as u16)
            .ok_or_else(|| RewriteError::UnknownName(name.to_string()))
    }

    /// Adds `a b -> rhs`. A second rule on the same pair is kept but never used by
    /// [`Normalizer`]; it only matters for [`local_confluence_check`].
    pub fn add_rule(&mut self, a: u16, b: u16, rhs: NcPoly) -> Result<(), RewriteError> {
        let n = self.names.len() as u16;
        for g in [a, b].into_iter().chain(rhs.terms().flat_map(|(w, _)| w.letters().to_vec())) {
            if g >= n {
                return Err(RewriteError::UnknownGenerator(g));
            }
        }
        let lhs = Word(vec![a, b]);
        if rhs.terms().any(|(w, _)| *w >= lhs) {
            return Err(RewriteError::NonTerminating {
                lhs: self.render(&NcPoly::word(&[a, b])),
                rhs: self.render(&rhs),
            });
        }
        self.rules.entry((a, b)).or_default().push(rhs);
        Ok(())
    }

    pub fn with_rule(mut self, a: u16, b: u16, rhs: NcPoly) -> Result<Self, RewriteError> {
        self.add_rule(a, b, rhs)?;
        Ok(self)
    }

    /// Rules in pair order; each pair may carry several right-hand sides.
    pub fn rules(&self) -> impl Iterator<Item = ((u16, u16), &[NcPoly])> {
        self.rules.iter().map(|(k, v)| (*k, v.as_slice()))
    }

    pub fn rule(&self, a: u16, b: u16) -> Option<&NcPoly> {
        self.rules.get(&(a, b)).and_then(|v| v.first())
    }

    pub fn render(&self, p: &NcPoly) -> String {
        if p.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (w, c) in p.terms() {
            let word = if w.is_empty() {
                "1".to_string()
            } else {
                w.letters()
                    .iter()
                    .map(|&g| self.names.get(g as usize).cloned().unwrap_or_else(|| format!("x{g}")))
                    .collect::<Vec<_>>()
                    .join(" ")
            };
            if c.is_one() {
                parts.push(word);
            } else {
                parts.push(format!("({c}) {word}"));
            }
        }
        parts.join(" + ")
    }

    pub fn normalizer(&self, budget: u64) -> Normalizer<'_> {
        Normalizer { rs: self, budget, memo: HashMap::new() }
    }

    pub fn normal_form(&self, p: &NcPoly, budget: u64) -> Result<NcPoly, RewriteError> {
        self.normalizer(budget).normal_form(p)
    }

    pub fn multiply(&self, a: &NcPoly, b: &NcPoly, budget: u64) -> Result<NcPoly, RewriteError> {
        self.normal_form(&a.concat_mul(b), budget)
    }

    pub fn is_normal_word(&self, w: &Word) -> bool {
        w.letters().windows(2).all(|p| !self.rules.contains_key(&(p[0], p[1])))
    }

    /// All normal words up to `max_len` letters, in word order.
    pub fn normal_words(&self, max_len: usize) -> Vec<Word> {
        let mut out = vec![Word::empty()];
        let mut layer = vec![Word::empty()];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for w in &layer {
                for g in 0..self.names.len() as u16 {
                    if let Some(&last) = w.letters().last() {
                        if self.rules.contains_key(&(last, g)) {
                            continue;
                        }
                    }
                    let mut v = w.0.clone();
                    v.push(g);
                    next.push(Word(v));
                }
            }
            out.extend(next.iter().cloned());
            layer = next;
        }
        out
    }
}

/// Memoizing rewriter. The step count of a word is the size of its full
/// derivation tree, so the budget verdict does not depend on cache state.
pub struct Normalizer<'a> {
    rs: &'a RewriteSystem,
    budget: u64,
    memo: HashMap<Word, (NcPoly, u64)>,
}

impl Normalizer<'_> {
    pub fn system(&self) -> &RewriteSystem {
        self.rs
    }

    pub fn normal_form(&mut self, p: &NcPoly) -> Result<NcPoly, RewriteError> {
        let mut out = NcPoly::zero();
        let mut steps = 0u64;
        for (w, c) in p.terms() {
            let (nf, s) = self.word_nf(w)?;
            steps = steps.saturating_add(s);
            if steps > self.budget {
                return Err(RewriteError::BudgetExceeded(self.budget));
            }
            out = out.add(&nf.scale(c));
        }
        Ok(out)
    }

    /// Normal form of a word together with its derivation size.
    pub fn word_nf(&mut self, w: &Word) -> Result<(NcPoly, u64), RewriteError> {
        if let Some(hit) = self.memo.get(w) {
            return Ok(hit.clone());
        }
        let letters = w.letters();
        let pos = letters.windows(2).position(|p| self.rs.rules.contains_key(&(p[0], p[1])));
        let result = match pos {
            None => (NcPoly::term(w.clone(), Scalar::one()), 0),
            Some(i) => {
                let rhs = self.rs.rule(letters[i], letters[i + 1]).expect("rule present").clone();
                let mut out = NcPoly::zero();
                let mut steps = 1u64;
                for (u, c) in rhs.terms() {
                    let mut v = letters[..i].to_vec();
                    v.extend_from_slice(u.letters());
                    v.extend_from_slice(&letters[i + 2..]);
                    let (nf, s) = self.word_nf(&Word(v))?;
                    steps = steps.saturating_add(s);
                    if steps > self.budget {
                        return Err(RewriteError::BudgetExceeded(self.budget));
                    }
                    out = out.add(&nf.scale(c));
                }
                (out, steps)
            }
        };
        self.memo.insert(w.clone(), result.clone());
        Ok(result)
    }

    pub fn multiply(&mut self, a: &NcPoly, b: &NcPoly) -> Result<NcPoly, RewriteError> {
        self.normal_form(&a.concat_mul(b))
    }
}

/// `n` commuting copies of `rs`; slot `j` letter `g` becomes `j·m + g`.
pub fn tensor_power(rs: &RewriteSystem, n: usize) -> RewriteSystem {
    let m = rs.len() as u16;
    let mut names = Vec::new();
    for j in 0..n {
        for name in rs.names() {
            names.push(format!("{name}@{j}"));
        }
    }
    let mut out = RewriteSystem::new(names);
    for j in 0..n as u16 {
        for ((a, b), rhss) in rs.rules() {
            for rhs in rhss {
                out.rules
                    .entry((j * m + a, j * m + b))
                    .or_default()
                    .push(embed(rhs, j as usize, m));
            }
        }
    }
    for hi in 1..n as u16 {
        for lo in 0..hi {
            for y in 0..m {
                for x in 0..m {
                    let (later, earlier) = (hi * m + y, lo * m + x);
                    out.rules.insert((later, earlier), vec![NcPoly::word(&[earlier, later])]);
                }
            }
        }
    }
    out
}

/// Moves `p` into tensor slot `slot` of an alphabet with `m` letters per slot.
pub fn embed(p: &NcPoly, slot: usize, m: u16) -> NcPoly {
    let shift = slot as u16 * m;
    p.map_letters(|g| g + shift)
}

/// `p₀ ⊗ p₁ ⊗ …` as a normal-ordered polynomial of the tensor power.
pub fn tensor(parts: &[&NcPoly], m: u16) -> NcPoly {
    let mut acc = NcPoly::one();
    for (slot, p) in parts.iter().enumerate() {
        acc = acc.concat_mul(&embed(p, slot, m));
    }
    acc
}

/// Two one-step rewrites of `word` whose normal forms disagree.
#[derive(Clone, Debug, PartialEq)]
pub struct ConfluenceFailure {
    pub word: Word,
    pub first: (usize, usize),
    pub second: (usize, usize),
    pub first_nf: NcPoly,
    pub second_nf: NcPoly,
}

impl ConfluenceFailure {
    pub fn describe(&self, rs: &RewriteSystem) -> String {
        format!(
            "{}: rule {} at {} gives {}, rule {} at {} gives {}",
            rs.render(&NcPoly::term(self.word.clone(), Scalar::one())),
            self.first.1,
            self.first.0,
            rs.render(&self.first_nf),
            self.second.1,
            self.second.0,
            rs.render(&self.second_nf),
        )
    }
}

/// Exhaustive one-step divergence test over all words of length 2..=max_len.
pub fn local_confluence_check(
    rs: &RewriteSystem,
    max_len: usize,
    budget: u64,
) -> Result<Vec<ConfluenceFailure>, RewriteError> {
    let mut nz = rs.normalizer(budget);
    let n = rs.len() as u16;
    let mut failures = Vec::new();
    for len in 2..=max_len {
        let mut letters = vec![0u16; len];
        loop {
            let mut sites = Vec::new();
            for i in 0..len - 1 {
                if let Some(rhss) = rs.rules.get(&(letters[i], letters[i + 1])) {
                    for k in 0..rhss.len() {
                        sites.push((i, k, &rhss[k]));
                    }
                }
            }
            if sites.len() >= 2 {
                let mut results = Vec::with_capacity(sites.len());
                for &(i, _, rhs) in &sites {
                    let mut stepped = NcPoly::zero();
                    for (u, c) in rhs.terms() {
                        let mut v = letters[..i].to_vec();
                        v.extend_from_slice(u.letters());
                        v.extend_from_slice(&letters[i + 2..]);
                        stepped.add_term(Word(v), c.clone());
                    }
                    results.push(nz.normal_form(&stepped)?);
                }
                for b in 1..results.len() {
                    if results[b] != results[0] {
                        failures.push(ConfluenceFailure {
                            word: Word(letters.clone()),
                            first: (sites[0].0, sites[0].1),
                            second: (sites[b].0, sites[b].1),
                            first_nf: results[0].clone(),
                            second_nf: results[b].clone(),
                        });
                    }
                }
            }
            if !next_word(&mut letters, n) {
                break;
            }
        }
    }
    Ok(failures)
}

/// Odometer step over `n`-letter words; false after the last word.
fn next_word(letters: &mut [u16], n: u16) -> bool {
    for i in (0..letters.len()).rev() {
        letters[i] += 1;
        if letters[i] < n {
            return true;
        }
        letters[i] = 0;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> RewriteSystem {
        RewriteSystem::new(["a", "b"]).with_rule(1, 0, NcPoly::word(&[0, 1])).unwrap()
    }

    #[test]
    fn commuting_pair_sorts() {
        let rs = ab();
        let nf = rs.normal_form(&NcPoly::word(&[1, 1, 0, 1, 0]), DEFAULT_BUDGET).unwrap();
        assert_eq!(nf, NcPoly::word(&[0, 0, 1, 1, 1]));
        assert!(local_confluence_check(&rs, 4, DEFAULT_BUDGET).unwrap().is_empty());
    }

    #[test]
    fn increasing_rule_is_rejected() {
        let rs = RewriteSystem::new(["a", "b"]);
        assert!(matches!(
            rs.with_rule(0, 1, NcPoly::word(&[1, 0])),
            Err(RewriteError::NonTerminating { .. })
        ));
    }

    #[test]
    fn conflicting_rules_fail_confluence() {
        let mut rs = ab();
        rs.add_rule(1, 0, NcPoly::word(&[0, 1]).scale(&Scalar::int(2))).unwrap();
        let fails = local_confluence_check(&rs, 3, DEFAULT_BUDGET).unwrap();
        assert!(!fails.is_empty());
        assert_eq!(fails[0].word, Word(vec![1, 0]));
    }

    #[test]
    fn budget_is_enforced() {
        let rs = ab();
        let w = NcPoly::word(&[1, 1, 1, 1, 0, 0, 0, 0]);
        assert_eq!(rs.normal_form(&w, 3), Err(RewriteError::BudgetExceeded(3)));
    }

    #[test]
    fn tensor_slots_commute() {
        let rs = ab();
        let t = tensor_power(&rs, 2);
        let left_a = embed(&NcPoly::gen(0), 0, 2);
        let right_b = embed(&NcPoly::gen(1), 1, 2);
        let p = t.multiply(&right_b, &left_a, DEFAULT_BUDGET).unwrap();
        assert_eq!(p, tensor(&[&NcPoly::gen(0), &NcPoly::gen(1)], 2));
    }

    #[test]
    fn word_order_is_deglex() {
        assert!(Word(vec![5]) < Word(vec![0, 0]));
        assert!(Word(vec![0, 1]) < Word(vec![1, 0]));
    }
}
