use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use super::gauss::GaussRational;
use super::ScalarError;

pub const NVARS: usize = 3;

/// Indeterminates of the Laurent ring.
///
/// `HalfQ` is `q^{1/2}`; every power of `q` is stored as an even power of it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    HalfQ = 0,
    K = 1,
    Lambda = 2,
}

impl Var {
    pub const ALL: [Var; NVARS] = [Var::HalfQ, Var::K, Var::Lambda];

    fn index(self) -> usize {
        self as usize
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(pub [i32; NVARS]);

impl Monomial {
    pub fn one() -> Self {
        Self([0; NVARS])
    }

    pub fn var(v: Var, e: i32) -> Self {
        let mut m = Self::one();
        m.0[v.index()] = e;
        m
    }

    pub fn exp(&self, v: Var) -> i32 {
        self.0[v.index()]
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut m = *self;
        for (a, b) in m.0.iter_mut().zip(o.0.iter()) {
            *a += b;
        }
        m
    }

    pub fn inv(&self) -> Self {
        let mut m = *self;
        for a in m.0.iter_mut() {
            *a = -*a;
        }
        m
    }

    pub fn with_exp(&self, v: Var, e: i32) -> Self {
        let mut m = *self;
        m.0[v.index()] = e;
        m
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        let s = self.exp(Var::HalfQ);
        if s != 0 {
            parts.push(if s == 2 {
                "q".to_string()
            } else if s % 2 == 0 {
                let e = s / 2;
                if e < 0 { format!("q^({e})") } else { format!("q^{e}") }
            } else {
                format!("q^({s}/2)")
            });
        }
        for (v, name) in [(Var::K, "k"), (Var::Lambda, "λ")] {
            let e = self.exp(v);
            match e {
                0 => {}
                1 => parts.push(name.to_string()),
                e if e < 0 => parts.push(format!("{name}^({e})")),
                e => parts.push(format!("{name}^{e}")),
            }
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}

/// Values substituted for the indeterminates during numeric evaluation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EvalEnv {
    pub q: Complex64,
    pub k: Option<Complex64>,
    pub lambda: Option<Complex64>,
}

impl EvalEnv {
    pub fn at_q(q: f64) -> Self {
        Self { q: Complex64::new(q, 0.0), k: None, lambda: None }
    }

    pub fn with_k(mut self, k: f64) -> Self {
        self.k = Some(Complex64::new(k, 0.0));
        self
    }

    pub fn with_lambda(mut self, l: f64) -> Self {
        self.lambda = Some(Complex64::new(l, 0.0));
        self
    }

    pub(crate) fn var_values(&self) -> Result<[Option<Complex64>; NVARS], ScalarError> {
        if self.q == Complex64::new(0.0, 0.0) {
            return Err(ScalarError::ZeroBase);
        }
        Ok([Some(self.q.sqrt()), self.k, self.lambda])
    }
}

/// Laurent polynomial over the Gaussian rationals in `q^{1/2}`, `k` and `λ`.
///
/// Zero coefficients are never stored, so structural equality is value equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Laurent {
    terms: BTreeMap<Monomial, GaussRational>,
}

impl Laurent {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(GaussRational::one())
    }

    pub fn constant(c: GaussRational) -> Self {
        Self::term(Monomial::one(), c)
    }

    pub fn int(n: i64) -> Self {
        Self::constant(GaussRational::from_int(n))
    }

    pub fn term(m: Monomial, c: GaussRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Self { terms }
    }

    pub fn monomial(m: Monomial) -> Self {
        Self::term(m, GaussRational::one())
    }

    /// `q^{n/2}`.
    pub fn half_q_pow(n: i32) -> Self {
        Self::monomial(Monomial::var(Var::HalfQ, n))
    }

    pub fn var(v: Var) -> Self {
        Self::monomial(Monomial::var(v, 1))
    }

    pub fn from_terms(it: impl IntoIterator<Item = (Monomial, GaussRational)>) -> Self {
        let mut out = Self::zero();
        for (m, c) in it {
            out.add_term(m, c);
        }
        out
    }

    pub fn add_term(&mut self, m: Monomial, c: GaussRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                let s = &*existing + &c;
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *existing = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &GaussRational)> {
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

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self.terms.iter().all(|(m, c)| m.is_one() && c.is_one())
    }

    /// Single term `c·m`, if the polynomial is one.
    pub fn as_single_term(&self) -> Option<(&Monomial, &GaussRational)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    pub fn as_constant(&self) -> Option<GaussRational> {
        if self.is_zero() {
            return Some(GaussRational::zero());
        }
        match self.as_single_term() {
            Some((m, c)) if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    /// Greatest monomial with its coefficient.
    pub fn leading(&self) -> Option<(&Monomial, &GaussRational)> {
        self.terms.iter().next_back()
    }

    /// Componentwise minimum of the exponents.
    pub fn min_exponents(&self) -> Monomial {
        let mut out = [i32::MAX; NVARS];
        for m in self.terms.keys() {
            for (o, e) in out.iter_mut().zip(m.0.iter()) {
                *o = (*o).min(*e);
            }
        }
        if self.terms.is_empty() {
            return Monomial::one();
        }
        Monomial(out)
    }

    pub fn uses_var(&self, v: Var) -> bool {
        self.terms.keys().any(|m| m.exp(v) != 0)
    }

    pub fn uses_only(&self, v: Var) -> bool {
        self.terms
            .keys()
            .all(|m| Var::ALL.iter().all(|&w| w == v || m.exp(w) == 0))
    }

    pub fn shift(&self, m: &Monomial) -> Self {
        Self { terms: self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())).collect() }
    }

    pub fn scale(&self, c: &GaussRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect() }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    /// Groups terms by the exponent of `v`, stripping `v` from each group.
    pub fn split_by(&self, v: Var) -> BTreeMap<i32, Laurent> {
        let mut out: BTreeMap<i32, Laurent> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.exp(v))
                .or_default()
                .add_term(m.with_exp(v, 0), c.clone());
        }
        out
    }

    pub fn eval(&self, env: &EvalEnv) -> Result<Complex64, ScalarError> {
        let vals = env.var_values()?;
        self.eval_with(&vals)
    }

    pub(crate) fn eval_with(
        &self,
        vals: &[Option<Complex64>; NVARS],
    ) -> Result<Complex64, ScalarError> {
        let mut acc = Complex64::new(0.0, 0.0);
        for (m, c) in &self.terms {
            let mut t = c.to_complex();
            for v in Var::ALL {
                let e = m.exp(v);
                if e != 0 {
                    let x = vals[v.index()].ok_or(ScalarError::UnboundSymbol(v))?;
                    t *= x.powi(e);
                }
            }
            acc += t;
        }
        Ok(acc)
    }
}

impl Add for &Laurent {
    type Output = Laurent;
    fn add(self, o: &Laurent) -> Laurent {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl Sub for &Laurent {
    type Output = Laurent;
    fn sub(self, o: &Laurent) -> Laurent {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(*m, -c);
        }
        out
    }
}

impl Mul for &Laurent {
    type Output = Laurent;
    fn mul(self, o: &Laurent) -> Laurent {
        let mut out = Laurent::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &Laurent {
    type Output = Laurent;
    fn neg(self) -> Laurent {
        Laurent { terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect() }
    }
}

impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let (neg, mag) = if c.is_real() && c.re < num_rational::BigRational::from_integer(0.into())
            {
                (true, -c)
            } else {
                (false, c.clone())
            };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            if m.is_one() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{mag}*{m}")?;
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

    #[test]
    fn q_plus_inverse_is_two_terms() {
        let big_q = &q() + &Laurent::half_q_pow(-2);
        assert_eq!(big_q.len(), 2);
        assert_eq!(big_q.to_string(), "q + q^(-1)");
    }

    #[test]
    fn half_powers_multiply() {
        let h = Laurent::half_q_pow(1);
        assert_eq!(&h * &h, q());
    }

    #[test]
    fn additive_inverse_cancels() {
        let a = &q() - &Laurent::half_q_pow(-2);
        let b = &Laurent::half_q_pow(-2) - &q();
        assert!((&a + &b).is_zero());
    }

    #[test]
    fn evaluation_of_half_power() {
        let v = Laurent::half_q_pow(3).eval(&EvalEnv::at_q(4.0)).unwrap();
        assert!((v.re - 8.0).abs() < 1e-12 && v.im.abs() < 1e-12);
        assert!(matches!(
            Laurent::var(Var::K).eval(&EvalEnv::at_q(2.0)),
            Err(ScalarError::UnboundSymbol(Var::K))
        ));
        assert!(matches!(q().eval(&EvalEnv::at_q(0.0)), Err(ScalarError::ZeroBase)));
    }
}
