use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::gauss::GaussRational;
use super::laurent::{Laurent, Monomial, Var, NVARS};
use super::ScalarError;

/// A product of formal square roots `√c · √p₁ · √p₂ ⋯`.
///
/// `constant` is a squarefree positive integer. Each `pᵢ` is either a single
/// indeterminate or a non-monomial polynomial with nonnegative exponents,
/// minimum exponent zero in every variable and leading coefficient one. The
/// list is sorted and free of duplicates, so `√a·√a` never survives.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Radical {
    constant: BigUint,
    polys: Vec<Laurent>,
}

impl Radical {
    pub fn one() -> Self {
        Self { constant: BigUint::one(), polys: Vec::new() }
    }

    pub fn is_one(&self) -> bool {
        self.constant.is_one() && self.polys.is_empty()
    }

    pub fn constant(&self) -> &BigUint {
        &self.constant
    }

    pub fn radicands(&self) -> &[Laurent] {
        &self.polys
    }

    /// Writes `√l` as `factor · √radical` in canonical form.
    pub fn sqrt_of(l: &Laurent) -> (Laurent, Radical) {
        if l.is_zero() {
            return (Laurent::zero(), Radical::one());
        }
        let min = l.min_exponents();
        let mut half = [0i32; NVARS];
        let mut strip = [0i32; NVARS];
        let mut polys = Vec::new();
        for v in Var::ALL {
            let e = min.exp(v);
            let even = e.div_euclid(2) * 2;
            half[v as usize] = even / 2;
            strip[v as usize] = e;
            if e - even == 1 {
                polys.push(Laurent::var(v));
            }
        }
        let rest = l.shift(&Monomial(strip).inv());
        let mut factor = Laurent::monomial(Monomial(half));

        let (content, body) = match rest.as_single_term() {
            Some((_, c)) if c.is_real() => (Some(c.clone()), None),
            Some(_) => (None, Some(rest)),
            None => {
                let lead = rest.leading().map(|(_, c)| c.clone()).expect("nonzero");
                if lead.is_real() {
                    let inv = lead.inv().expect("nonzero lead");
                    (Some(lead), Some(rest.scale(&inv)))
                } else {
                    (None, Some(rest))
                }
            }
        };
        let mut constant = BigUint::one();
        if let Some(c) = content {
            let (f, sq) = sqrt_rational(&c.re);
            factor = factor.scale(&f);
            constant = sq;
        }
        if let Some(b) = body {
            polys.push(b);
        }
        polys.sort();
        (factor, Radical { constant, polys })
    }

    /// Product of two radicals as `factor · √radical`.
    pub fn mul(&self, o: &Radical) -> (Laurent, Radical) {
        let g = self.constant.gcd(&o.constant);
        let constant = (&self.constant / &g) * (&o.constant / &g);
        let mut factor =
            Laurent::constant(GaussRational::real(BigRational::from_integer(BigInt::from(g))));
        let mut polys = Vec::with_capacity(self.polys.len() + o.polys.len());
        let (mut i, mut j) = (0, 0);
        while i < self.polys.len() || j < o.polys.len() {
            match (self.polys.get(i), o.polys.get(j)) {
                (Some(a), Some(b)) if a == b => {
                    factor = &factor * a;
                    i += 1;
                    j += 1;
                }
                (Some(a), Some(b)) if a < b => {
                    polys.push(a.clone());
                    i += 1;
                }
                (Some(_), Some(b)) => {
                    polys.push(b.clone());
                    j += 1;
                }
                (Some(a), None) => {
                    polys.push(a.clone());
                    i += 1;
                }
                (None, Some(b)) => {
                    polys.push(b.clone());
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        (factor, Radical { constant, polys })
    }

    /// Square-root generators: primes of the constant, then the radicands.
    pub(crate) fn generators(&self) -> Vec<Laurent> {
        let mut out: Vec<Laurent> = prime_factors(&self.constant)
            .into_iter()
            .map(|p| Laurent::constant(GaussRational::real(BigRational::from_integer(p.into()))))
            .collect();
        out.extend(self.polys.iter().cloned());
        out
    }

    /// Removes the generator `g` if present.
    pub(crate) fn without(&self, g: &Laurent) -> Option<Radical> {
        if let Some(c) = g.as_constant() {
            let p = c.re.to_integer().to_biguint()?;
            if (&self.constant % &p).is_zero() {
                return Some(Radical { constant: &self.constant / &p, polys: self.polys.clone() });
            }
            return None;
        }
        let pos = self.polys.iter().position(|x| x == g)?;
        let mut polys = self.polys.clone();
        polys.remove(pos);
        Some(Radical { constant: self.constant.clone(), polys })
    }

    pub fn eval_with(
        &self,
        vals: &[Option<Complex64>; NVARS],
        branch_cut: &mut bool,
    ) -> Result<Complex64, ScalarError> {
        let mut acc = Complex64::new(self.constant.to_f64().unwrap_or(f64::NAN).sqrt(), 0.0);
        for p in &self.polys {
            let v = p.eval_with(vals)?;
            if v.im == 0.0 && v.re < 0.0 {
                *branch_cut = true;
            }
            // avoid a signed-zero imaginary part selecting the lower branch
            let v = Complex64::new(v.re, if v.im == 0.0 { 0.0 } else { v.im });
            acc *= v.sqrt();
        }
        Ok(acc)
    }
}

impl fmt::Display for Radical {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if !self.constant.is_one() {
            parts.push(format!("√{}", self.constant));
        }
        for p in &self.polys {
            parts.push(format!("√({p})"));
        }
        write!(f, "{}", parts.join("*"))
    }
}

/// `√r = factor · √c` with `c` squarefree; negative `r` contributes `i`.
fn sqrt_rational(r: &BigRational) -> (GaussRational, BigUint) {
    let neg = r.is_negative();
    let r = r.abs();
    let n = (r.numer() * r.denom()).to_biguint().expect("nonnegative");
    let (a, f) = squarefree_split(&n);
    let mag = BigRational::new(BigInt::from(a), r.denom().clone());
    let factor = if neg {
        GaussRational::new(BigRational::zero(), mag)
    } else {
        GaussRational::real(mag)
    };
    (factor, f)
}

/// `n = a² · f` with `f` squarefree (up to large unfactored cofactors).
fn squarefree_split(n: &BigUint) -> (BigUint, BigUint) {
    let mut a = BigUint::one();
    let mut f = BigUint::one();
    let mut rest = n.clone();
    let mut p = BigUint::from(2u32);
    let limit = BigUint::from(1_000_000u32);
    while &p * &p <= rest && p < limit {
        let mut e = 0u32;
        while (&rest % &p).is_zero() {
            rest /= &p;
            e += 1;
        }
        for _ in 0..e / 2 {
            a *= &p;
        }
        if e % 2 == 1 {
            f *= &p;
        }
        p += 1u32;
    }
    if !rest.is_one() {
        let s = rest.sqrt();
        if &s * &s == rest {
            a *= s;
        } else {
            f *= rest;
        }
    }
    (a, f)
}

fn prime_factors(n: &BigUint) -> Vec<BigUint> {
    let mut out = Vec::new();
    let mut rest = n.clone();
    let mut p = BigUint::from(2u32);
    while &p * &p <= rest {
        if (&rest % &p).is_zero() {
            out.push(p.clone());
            while (&rest % &p).is_zero() {
                rest /= &p;
            }
        }
        p += 1u32;
    }
    if !rest.is_one() {
        out.push(rest);
    }
    out
}

/// Finite sum `Σ Lᵢ · √Rᵢ` over distinct canonical radicals.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RadicalSum {
    parts: BTreeMap<Radical, Laurent>,
}

impl RadicalSum {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_laurent(l: Laurent) -> Self {
        Self::from_part(Radical::one(), l)
    }

    pub fn from_part(r: Radical, l: Laurent) -> Self {
        let mut parts = BTreeMap::new();
        if !l.is_zero() {
            parts.insert(r, l);
        }
        Self { parts }
    }

    pub fn sqrt_of(l: &Laurent) -> Self {
        let (f, r) = Radical::sqrt_of(l);
        Self::from_part(r, f)
    }

    pub fn is_zero(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn parts(&self) -> impl Iterator<Item = (&Radical, &Laurent)> {
        self.parts.iter()
    }

    pub fn add_part(&mut self, r: Radical, l: Laurent) {
        if l.is_zero() {
            return;
        }
        match self.parts.get_mut(&r) {
            Some(existing) => {
                let s = &*existing + &l;
                if s.is_zero() {
                    self.parts.remove(&r);
                } else {
                    *existing = s;
                }
            }
            None => {
                self.parts.insert(r, l);
            }
        }
    }

    /// The value when no radicals are present.
    pub fn as_laurent(&self) -> Option<Laurent> {
        match self.parts.len() {
            0 => Some(Laurent::zero()),
            1 => self.parts.iter().next().filter(|(r, _)| r.is_one()).map(|(_, l)| l.clone()),
            _ => None,
        }
    }

    pub fn map_coeffs(&self, f: impl Fn(&Laurent) -> Laurent) -> Self {
        let mut out = Self::zero();
        for (r, l) in &self.parts {
            out.add_part(r.clone(), f(l));
        }
        out
    }

    pub fn scale(&self, l: &Laurent) -> Self {
        self.map_coeffs(|x| x * l)
    }

    pub fn uses_var(&self, v: Var) -> bool {
        self.parts
            .iter()
            .any(|(r, l)| l.uses_var(v) || r.radicands().iter().any(|p| p.uses_var(v)))
    }

    /// Distinct square-root generators appearing anywhere in the sum.
    pub(crate) fn generators(&self) -> Vec<Laurent> {
        let mut g: Vec<Laurent> = self.parts.keys().flat_map(|r| r.generators()).collect();
        g.sort();
        g.dedup();
        g
    }

    /// `self = a + b·√g` with `a`, `b` free of `√g`.
    pub(crate) fn split_on(&self, g: &Laurent) -> (RadicalSum, RadicalSum) {
        let mut a = RadicalSum::zero();
        let mut b = RadicalSum::zero();
        for (r, l) in &self.parts {
            match r.without(g) {
                Some(rest) => b.add_part(rest, l.clone()),
                None => a.add_part(r.clone(), l.clone()),
            }
        }
        (a, b)
    }

    pub fn eval_with(
        &self,
        vals: &[Option<Complex64>; NVARS],
        branch_cut: &mut bool,
    ) -> Result<Complex64, ScalarError> {
        let mut acc = Complex64::new(0.0, 0.0);
        for (r, l) in &self.parts {
            acc += l.eval_with(vals)? * r.eval_with(vals, branch_cut)?;
        }
        Ok(acc)
    }
}

impl Add for &RadicalSum {
    type Output = RadicalSum;
    fn add(self, o: &RadicalSum) -> RadicalSum {
        let mut out = self.clone();
        for (r, l) in &o.parts {
            out.add_part(r.clone(), l.clone());
        }
        out
    }
}

impl Sub for &RadicalSum {
    type Output = RadicalSum;
    fn sub(self, o: &RadicalSum) -> RadicalSum {
        let mut out = self.clone();
        for (r, l) in &o.parts {
            out.add_part(r.clone(), -l);
        }
        out
    }
}

impl Neg for &RadicalSum {
    type Output = RadicalSum;
    fn neg(self) -> RadicalSum {
        self.map_coeffs(|l| -l)
    }
}

impl Mul for &RadicalSum {
    type Output = RadicalSum;
    fn mul(self, o: &RadicalSum) -> RadicalSum {
        let mut out = RadicalSum::zero();
        for (ra, la) in &self.parts {
            for (rb, lb) in &o.parts {
                let (f, r) = ra.mul(rb);
                out.add_part(r, &(la * lb) * &f);
            }
        }
        out
    }
}

impl fmt::Display for RadicalSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (r, l) in &self.parts {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if r.is_one() {
                write!(f, "{l}")?;
            } else if l.is_one() {
                write!(f, "{r}")?;
            } else {
                write!(f, "({l})*{r}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Laurent {
        Laurent::half_q_pow(2)
    }

    fn big_q() -> Laurent {
        &q() + &Laurent::half_q_pow(-2)
    }

    #[test]
    fn sqrt_of_q_times_big_q_and_big_q_share_radicand() {
        let a = RadicalSum::sqrt_of(&(&q() * &big_q()));
        let b = RadicalSum::sqrt_of(&big_q());
        // √(qQ) = √(q²+1), √Q = q^{-1/2}·√(q²+1)
        let prod = &a * &b;
        let expect = RadicalSum::from_laurent(&Laurent::half_q_pow(1) * &big_q());
        assert_eq!(prod, expect);
    }

    #[test]
    fn radical_squares_to_radicand() {
        let qq = &q() * &big_q();
        let a = RadicalSum::sqrt_of(&qq);
        assert_eq!(&a * &a, RadicalSum::from_laurent(qq));
    }

    #[test]
    fn constant_radicals_merge() {
        let two = RadicalSum::sqrt_of(&Laurent::int(2));
        let three = RadicalSum::sqrt_of(&Laurent::int(3));
        let six = RadicalSum::sqrt_of(&Laurent::int(6));
        assert_eq!(&two * &three, six);
        assert_eq!(&two * &two, RadicalSum::from_laurent(Laurent::int(2)));
        let eight = RadicalSum::sqrt_of(&Laurent::int(8));
        assert_eq!(eight, two.scale(&Laurent::int(2)));
    }

    #[test]
    fn negative_constant_gives_imaginary_unit() {
        let r = RadicalSum::sqrt_of(&Laurent::constant(GaussRational::from_frac(-9, 16)));
        let expect = RadicalSum::from_laurent(Laurent::constant(&GaussRational::i()
            * &GaussRational::from_frac(3, 4)));
        assert_eq!(r, expect);
    }

    #[test]
    fn squarefree_split_small() {
        let (a, f) = squarefree_split(&BigUint::from(72u32));
        assert_eq!((a, f), (BigUint::from(6u32), BigUint::from(2u32)));
    }
}
