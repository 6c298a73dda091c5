//! Hopf algebra axiom checkers over a rewrite-system presentation.

use thiserror::Error;

use crate::ncrewrite::{embed, tensor_power, NcPoly, RewriteError, RewriteSystem, Word};
use crate::report::CheckReport;
use crate::scalars::{EvalEnv, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HopfError {
    #[error(transparent)]
    Rewrite(#[from] RewriteError),
    #[error("no antipode given for {0:?}")]
    AntipodeMissing(Vec<String>),
    #[error("structure map list has {got} entries for {want} generators")]
    Arity { got: usize, want: usize },
}

/// Structure maps on generators; all extend (anti-)multiplicatively.
#[derive(Clone, Debug)]
pub struct HopfData {
    pub name: String,
    pub algebra: RewriteSystem,
    /// Images in the two-fold tensor power of `algebra`.
    pub coproduct: Vec<NcPoly>,
    pub counit: Vec<Scalar>,
    pub antipode: Vec<Option<NcPoly>>,
    double: RewriteSystem,
    triple: RewriteSystem,
}

impl HopfData {
    pub fn new(
        name: impl Into<String>,
        algebra: RewriteSystem,
        coproduct: Vec<NcPoly>,
        counit: Vec<Scalar>,
        antipode: Vec<Option<NcPoly>>,
    ) -> Result<Self, HopfError> {
        let want = algebra.len();
        for got in [coproduct.len(), counit.len(), antipode.len()] {
            if got != want {
                return Err(HopfError::Arity { got, want });
            }
        }
        let double = tensor_power(&algebra, 2);
        let triple = tensor_power(&algebra, 3);
        Ok(Self { name: name.into(), algebra, coproduct, counit, antipode, double, triple })
    }

    pub fn tensor_square(&self) -> &RewriteSystem {
        &self.double
    }

    fn m(&self) -> u16 {
        self.algebra.len() as u16
    }

    /// Δ extended as an algebra map, normal-ordered in the tensor square.
    pub fn delta(&self, p: &NcPoly, budget: u64) -> Result<NcPoly, HopfError> {
        let free = p.substitute(|g| self.coproduct[g as usize].clone());
        Ok(self.double.normal_form(&free, budget)?)
    }

    /// ε extended as an algebra map.
    pub fn epsilon(&self, p: &NcPoly) -> Scalar {
        let mut out = Scalar::zero();
        for (w, c) in p.terms() {
            let mut v = c.clone();
            for &g in w.letters() {
                v = &v * &self.counit[g as usize];
                if v.is_zero() {
                    break;
                }
            }
            out = &out + &v;
        }
        out
    }

    /// S extended as an anti-algebra map; `None` if some letter has no antipode.
    pub fn antipode_of(&self, p: &NcPoly, budget: u64) -> Result<Option<NcPoly>, HopfError> {
        let mut out = NcPoly::zero();
        for (w, c) in p.terms() {
            let mut acc = NcPoly::constant(c.clone());
            for &g in w.letters().iter().rev() {
                match &self.antipode[g as usize] {
                    Some(s) => acc = acc.concat_mul(s),
                    None => return Ok(None),
                }
            }
            out = out.add(&acc);
        }
        Ok(Some(self.algebra.normal_form(&out, budget)?))
    }

    /// Splits a tensor-square word into its two slot words.
    fn split(&self, w: &Word) -> (NcPoly, NcPoly) {
        let m = self.m();
        let (mut a, mut b) = (Vec::new(), Vec::new());
        for &g in w.letters() {
            if g < m {
                a.push(g);
            } else {
                b.push(g - m);
            }
        }
        (NcPoly::word(&a), NcPoly::word(&b))
    }

    fn words(&self, max_len: usize) -> Vec<Word> {
        self.algebra.normal_words(max_len).into_iter().filter(|w| !w.is_empty()).collect()
    }

    fn id(&self, axiom: &str) -> String {
        format!("{}.hopf.{axiom}", self.name)
    }

    fn word_label(&self, w: &Word) -> String {
        self.algebra.render(&NcPoly::term(w.clone(), Scalar::one()))
    }
}

/// Magnitude used as `residual_max` for a failing exact check.
pub fn witness_size(p: &NcPoly) -> f64 {
    let r = p.max_abs_at(&EvalEnv::at_q(1.3).with_k(1.1).with_lambda(0.7));
    if r == 0.0 {
        p.len() as f64
    } else {
        r
    }
}

/// (Δ⊗id)∘Δ = (id⊗Δ)∘Δ on normal words up to `max_len`.
pub fn check_coassociativity(h: &HopfData, max_len: usize, budget: u64) -> Result<CheckReport, HopfError> {
    let m = h.m();
    let mut nz = h.triple.normalizer(budget);
    let mut witness = None;
    let words = h.words(max_len);
    for w in &words {
        let d = h.delta(&NcPoly::term(w.clone(), Scalar::one()), budget)?;
        let (mut left, mut right) = (NcPoly::zero(), NcPoly::zero());
        for (tw, c) in d.terms() {
            let (u, v) = h.split(tw);
            left = left.add(&h.delta(&u, budget)?.concat_mul(&embed(&v, 2, m)).scale(c));
            right = right.add(&embed(&u, 0, m).concat_mul(&h.delta(&v, budget)?.map_letters(|g| g + m)).scale(c));
        }
        let diff = nz.normal_form(&left.sub(&right))?;
        if !diff.is_zero() {
            witness = Some((format!("{}: {}", h.word_label(w), h.triple.render(&diff)), witness_size(&diff)));
            break;
        }
    }
    Ok(finish(CheckReport::new(h.id("coassociativity"), "coproduct is coassociative"), witness, words.len()))
}

/// (ε⊗id)∘Δ = id = (id⊗ε)∘Δ on normal words up to `max_len`.
pub fn check_counit(h: &HopfData, max_len: usize, budget: u64) -> Result<CheckReport, HopfError> {
    let mut witness = None;
    let words = h.words(max_len);
    for w in &words {
        let x = NcPoly::term(w.clone(), Scalar::one());
        let d = h.delta(&x, budget)?;
        let (mut left, mut right) = (NcPoly::zero(), NcPoly::zero());
        for (tw, c) in d.terms() {
            let (u, v) = h.split(tw);
            left = left.add(&v.scale(&(c * &h.epsilon(&u))));
            right = right.add(&u.scale(&(c * &h.epsilon(&v))));
        }
        for (side, p) in [("left", left), ("right", right)] {
            let diff = h.algebra.normal_form(&p.sub(&x), budget)?;
            if !diff.is_zero() {
                witness = Some((
                    format!("{} ({side}): {}", h.word_label(w), h.algebra.render(&diff)),
                    witness_size(&diff),
                ));
                break;
            }
        }
        if witness.is_some() {
            break;
        }
    }
    Ok(finish(CheckReport::new(h.id("counit"), "counit laws hold"), witness, words.len()))
}

/// m(S⊗id)Δ = ηε = m(id⊗S)Δ on normal words up to `max_len`.
///
/// Generators without an antipode are listed in the report and words whose
/// coproduct needs them are skipped; the report then has status `report`.
pub fn check_antipode(h: &HopfData, max_len: usize, budget: u64) -> Result<CheckReport, HopfError> {
    let missing: Vec<String> = (0..h.algebra.len())
        .filter(|&g| h.antipode[g].is_none())
        .map(|g| h.algebra.name(g as u16).to_string())
        .collect();
    if missing.len() == h.algebra.len() {
        return Err(HopfError::AntipodeMissing(missing));
    }
    let mut nz = h.algebra.normalizer(budget);
    let mut witness = None;
    let mut checked = 0usize;
    let mut skipped = 0usize;
    'words: for w in h.words(max_len) {
        let x = NcPoly::term(w.clone(), Scalar::one());
        let d = h.delta(&x, budget)?;
        let target = NcPoly::constant(h.epsilon(&x));
        let (mut left, mut right) = (NcPoly::zero(), NcPoly::zero());
        for (tw, c) in d.terms() {
            let (u, v) = h.split(tw);
            let (Some(su), Some(sv)) = (h.antipode_of(&u, budget)?, h.antipode_of(&v, budget)?) else {
                skipped += 1;
                continue 'words;
            };
            left = left.add(&su.concat_mul(&v).scale(c));
            right = right.add(&u.concat_mul(&sv).scale(c));
        }
        checked += 1;
        for (side, p) in [("S*id", left), ("id*S", right)] {
            let diff = nz.normal_form(&p.sub(&target))?;
            if !diff.is_zero() {
                witness = Some((
                    format!("{} ({side}): {}", h.word_label(&w), h.algebra.render(&diff)),
                    witness_size(&diff),
                ));
                break 'words;
            }
        }
    }
    let mut rep = finish(CheckReport::new(h.id("antipode"), "antipode is a convolution inverse of the identity"), witness, checked);
    if !missing.is_empty() {
        let ok = rep.passed();
        rep = rep
            .detail("antipode_missing", missing.join(","))
            .detail("words_skipped", skipped.to_string())
            .as_report(ok);
    }
    Ok(rep)
}

/// Δ(L) = Δ(R) and ε(L) = ε(R) for every rule `L -> R` of the presentation.
pub fn check_bialgebra_compatibility(h: &HopfData, budget: u64) -> Result<CheckReport, HopfError> {
    let mut witness = None;
    let mut count = 0usize;
    'rules: for ((a, b), rhss) in h.algebra.rules() {
        for rhs in rhss {
            count += 1;
            let lhs = NcPoly::word(&[a, b]);
            let label = format!("{} = {}", h.algebra.render(&lhs), h.algebra.render(rhs));
            let diff = h.delta(&lhs.sub(rhs), budget)?;
            if !diff.is_zero() {
                witness = Some((format!("coproduct of {label}: {}", h.double.render(&diff)), witness_size(&diff)));
                break 'rules;
            }
            let e = h.epsilon(&lhs.sub(rhs));
            if !e.is_zero() {
                witness = Some((format!("counit of {label}: {e}"), witness_size(&NcPoly::constant(e))));
                break 'rules;
            }
        }
    }
    let rep = CheckReport::new(h.id("bialgebra"), "coproduct and counit respect every defining relation");
    Ok(finish(rep, witness, count).detail("relations_checked", count.to_string()))
}

fn finish(rep: CheckReport, witness: Option<(String, f64)>, checked: usize) -> CheckReport {
    let rep = rep.detail("items_checked", checked.to_string());
    match witness {
        None => rep.exact(None, 0.0),
        Some((w, r)) => rep.exact(Some(w), r),
    }
}

/// Left adjoint action `h ▷ x = h₁ x S(h₂)`; `None` without an antipode.
pub fn adjoint_action(h: &HopfData, elem: &NcPoly, x: &NcPoly, budget: u64) -> Result<Option<NcPoly>, HopfError> {
    let d = h.delta(elem, budget)?;
    let mut out = NcPoly::zero();
    for (tw, c) in d.terms() {
        let (u, v) = h.split(tw);
        let Some(sv) = h.antipode_of(&v, budget)? else {
            return Ok(None);
        };
        out = out.add(&u.concat_mul(x).concat_mul(&sv).scale(c));
    }
    Ok(Some(h.algebra.normal_form(&out, budget)?))
}

/// `h ▷ (xy) = (h₁ ▷ x)(h₂ ▷ y)` for the adjoint action; returns the first failing triple.
pub fn check_adjoint_module_algebra(
    h: &HopfData,
    elems: &[NcPoly],
    budget: u64,
) -> Result<Option<String>, HopfError> {
    for e in elems {
        for x in elems {
            for y in elems {
                let Some(lhs) = adjoint_action(h, e, &x.concat_mul(y), budget)? else {
                    return Ok(None);
                };
                let mut rhs = NcPoly::zero();
                for (tw, c) in h.delta(e, budget)?.terms() {
                    let (u, v) = h.split(tw);
                    let (Some(a), Some(b)) = (adjoint_action(h, &u, x, budget)?, adjoint_action(h, &v, y, budget)?)
                    else {
                        return Ok(None);
                    };
                    rhs = rhs.add(&a.concat_mul(&b).scale(c));
                }
                let diff = h.algebra.normal_form(&lhs.sub(&rhs), budget)?;
                if !diff.is_zero() {
                    return Ok(Some(format!(
                        "{} acting on {} * {}: {}",
                        h.algebra.render(e),
                        h.algebra.render(x),
                        h.algebra.render(y),
                        h.algebra.render(&diff)
                    )));
                }
            }
        }
    }
    Ok(None)
}
