use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;

use super::gauss::GaussRational;
use super::laurent::{EvalEnv, Laurent, Monomial, Var, NVARS};
use super::radical::{Radical, RadicalSum};
use super::upoly::UPoly;
use super::ScalarError;

/// Exact scalar `num / den`.
///
/// `num` is a canonical radical sum; `den` is a monic polynomial in `q^{1/2}`
/// with nonzero constant term, coprime to every coefficient of `num`. Units
/// (monomials and constants) always live in the numerator, so the pair is a
/// unique representative and derived equality is value equality.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Scalar {
    num: RadicalSum,
    den: UPoly,
}

/// Numeric value plus a flag raised when a radicand landed on the negative
/// real axis, where the principal branch was used.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EvalOutcome {
    pub value: Complex64,
    pub branch_cut: bool,
}

impl Default for Scalar {
    fn default() -> Self {
        Self::zero()
    }
}

impl Scalar {
    pub fn zero() -> Self {
        Self { num: RadicalSum::zero(), den: UPoly::one() }
    }

    pub fn one() -> Self {
        Self::from_laurent(Laurent::one())
    }

    pub fn int(n: i64) -> Self {
        Self::from_laurent(Laurent::int(n))
    }

    pub fn frac(n: i64, d: i64) -> Self {
        Self::from_gauss(GaussRational::from_frac(n, d))
    }

    pub fn rational(r: BigRational) -> Self {
        Self::from_gauss(GaussRational::real(r))
    }

    pub fn from_gauss(c: GaussRational) -> Self {
        Self::from_laurent(Laurent::constant(c))
    }

    pub fn i() -> Self {
        Self::from_gauss(GaussRational::i())
    }

    pub fn from_laurent(l: Laurent) -> Self {
        Self { num: RadicalSum::from_laurent(l), den: UPoly::one() }
    }

    pub fn from_radical_sum(num: RadicalSum) -> Self {
        Self { num, den: UPoly::one() }
    }

    /// The deformation parameter `q`.
    pub fn q() -> Self {
        Self::q_half_pow(2)
    }

    /// `q^{n/2}`.
    pub fn q_half_pow(n: i32) -> Self {
        Self::from_laurent(Laurent::half_q_pow(n))
    }

    /// `Q = q + q^{-1}`.
    pub fn big_q() -> Self {
        Self::from_laurent(&Laurent::half_q_pow(2) + &Laurent::half_q_pow(-2))
    }

    pub fn var(v: Var) -> Self {
        Self::from_laurent(Laurent::var(v))
    }

    pub fn numerator(&self) -> &RadicalSum {
        &self.num
    }

    pub fn denominator(&self) -> &UPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num.as_laurent().is_some_and(|l| l.is_one())
    }

    /// The value as a plain Laurent polynomial, when it is one.
    pub fn as_laurent(&self) -> Option<Laurent> {
        if self.den.is_one() {
            self.num.as_laurent()
        } else {
            None
        }
    }

    pub fn as_gauss(&self) -> Option<GaussRational> {
        self.as_laurent().and_then(|l| l.as_constant())
    }

    pub fn has_radicals(&self) -> bool {
        self.num.as_laurent().is_none()
    }

    pub fn uses_var(&self, v: Var) -> bool {
        self.num.uses_var(v) || (v == Var::HalfQ && !self.den.is_one())
    }

    fn normalize(num: RadicalSum, den: UPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return Self::zero();
        }
        if den.is_one() {
            return Self { num, den };
        }
        // move the s^t factor and the leading coefficient into the numerator
        let t = den.coeffs().iter().take_while(|c| c.is_zero()).count();
        let den = UPoly::new(den.coeffs()[t..].to_vec());
        let lead_inv = den.lead().and_then(|c| c.inv()).expect("nonzero denominator");
        let den = den.scale(&lead_inv);
        let shift = Laurent::term(Monomial::var(Var::HalfQ, -(t as i32)), lead_inv);
        let mut num = num.scale(&shift);
        if den.is_one() {
            return Self { num, den };
        }
        let mut g = den.clone();
        for (_, l) in num.parts() {
            for part in split_s_parts(l).values() {
                let (_, up) = UPoly::from_laurent(part).expect("s-only part");
                g = g.gcd(&up);
                if g.is_one() {
                    break;
                }
            }
            if g.is_one() {
                break;
            }
        }
        let mut den = den;
        if !g.is_one() {
            den = den.div_rem(&g).0;
            num = num.map_coeffs(|l| {
                let mut out = Laurent::zero();
                for (rest, part) in split_s_parts(l) {
                    let (shift, up) = UPoly::from_laurent(&part).expect("s-only part");
                    let (quot, rem) = up.div_rem(&g);
                    debug_assert!(rem.is_zero());
                    let back = quot.to_laurent().shift(&rest.with_exp(Var::HalfQ, shift));
                    out = &out + &back;
                }
                out
            });
        }
        Self { num, den }
    }

    fn den_as_sum(&self) -> RadicalSum {
        RadicalSum::from_laurent(self.den.to_laurent())
    }

    pub fn pow(&self, n: i32) -> Result<Self, ScalarError> {
        let base = if n < 0 { self.inv()? } else { self.clone() };
        let mut out = Self::one();
        for _ in 0..n.unsigned_abs() {
            out = &out * &base;
        }
        Ok(out)
    }

    /// Multiplicative inverse, rationalizing radicals in the denominator.
    pub fn inv(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        let mut n = self.num.clone();
        let mut d = self.den_as_sum();
        while let Some(g) = n.generators().into_iter().next() {
            let (a, b) = n.split_on(&g);
            let conj = &a - &(&b * &RadicalSum::sqrt_of(&g));
            n = &n * &conj;
            d = &d * &conj;
        }
        let l = n.as_laurent().expect("radical-free after rationalization");
        if let Some((m, c)) = l.as_single_term() {
            let inv = Laurent::term(m.inv(), c.inv().expect("nonzero"));
            return Ok(Self::normalize(d.scale(&inv), UPoly::one()));
        }
        match UPoly::from_laurent(&l) {
            Some((t, up)) => {
                let shift = Laurent::half_q_pow(-t);
                Ok(Self::normalize(d.scale(&shift), up))
            }
            None => Err(ScalarError::NonInvertible(l.to_string())),
        }
    }

    pub fn checked_div(&self, o: &Self) -> Result<Self, ScalarError> {
        Ok(self * &o.inv()?)
    }

    /// Square root, defined for radical-free values: `√(N/D) = √(N·D)/D`.
    pub fn sqrt(&self) -> Result<Self, ScalarError> {
        let n = self.num.as_laurent().ok_or(ScalarError::NestedRadical)?;
        let nd = &n * &self.den.to_laurent();
        Ok(Self::normalize(RadicalSum::sqrt_of(&nd), self.den.clone()))
    }

    pub fn eval(&self, env: &EvalEnv) -> Result<Complex64, ScalarError> {
        Ok(self.eval_checked(env)?.value)
    }

    pub fn eval_checked(&self, env: &EvalEnv) -> Result<EvalOutcome, ScalarError> {
        let vals = env.var_values()?;
        self.eval_vals(&vals)
    }

    pub(crate) fn eval_vals(
        &self,
        vals: &[Option<Complex64>; NVARS],
    ) -> Result<EvalOutcome, ScalarError> {
        let mut branch_cut = false;
        let n = self.num.eval_with(vals, &mut branch_cut)?;
        let d = self.den.to_laurent().eval_with(vals)?;
        if d == Complex64::new(0.0, 0.0) {
            return Err(ScalarError::Singular);
        }
        let value = n / d;
        if !value.re.is_finite() || !value.im.is_finite() {
            return Err(ScalarError::NonFinite);
        }
        Ok(EvalOutcome { value, branch_cut })
    }

    /// Substitutes an exact value for one indeterminate.
    pub fn substitute(&self, v: Var, value: &Scalar) -> Result<Self, ScalarError> {
        if !self.uses_var(v) {
            return Ok(self.clone());
        }
        let mut powers: BTreeMap<i32, Scalar> = BTreeMap::new();
        let mut num = Scalar::zero();
        for (r, l) in self.num.parts() {
            let lv = subst_laurent(l, v, value, &mut powers)?;
            let rv = subst_radical(r, v, value, &mut powers)?;
            num = &num + &(&lv * &rv);
        }
        let den = subst_laurent(&self.den.to_laurent(), v, value, &mut powers)?;
        num.checked_div(&den)
    }

    /// Exact value at a rational `q`, with `q^{1/2}` becoming `√q`.
    pub fn at_q(&self, q: &BigRational) -> Result<Self, ScalarError> {
        let qs = Scalar::rational(q.clone());
        if qs.is_zero() {
            return Err(ScalarError::ZeroBase);
        }
        self.substitute(Var::HalfQ, &qs.sqrt()?)
    }

    /// Value at `q = 1`, or `Divergent` when the denominator vanishes there.
    pub fn limit_q_to_one(&self) -> Result<Self, ScalarError> {
        let den_at_one = self.den.eval(&GaussRational::one());
        if den_at_one.is_zero() {
            return Err(ScalarError::Divergent(self.to_string()));
        }
        let num = Scalar::from_radical_sum(self.num.clone()).substitute(Var::HalfQ, &Scalar::one())?;
        Ok(&num * &Scalar::from_gauss(den_at_one.inv().expect("nonzero")))
    }

    /// Coefficients of the expansion in powers of `v` (only `k` or `λ`).
    pub fn coefficients_in(&self, v: Var) -> BTreeMap<i32, Scalar> {
        assert!(v != Var::HalfQ, "denominators live in q^(1/2)");
        let mut parts: BTreeMap<i32, RadicalSum> = BTreeMap::new();
        for (r, l) in self.num.parts() {
            for (e, sub) in l.split_by(v) {
                parts.entry(e).or_default().add_part(r.clone(), sub);
            }
        }
        parts
            .into_iter()
            .map(|(e, n)| (e, Self::normalize(n, self.den.clone())))
            .filter(|(_, s)| !s.is_zero())
            .collect()
    }
}

/// Splits a Laurent polynomial by its non-`s` monomial; each value uses `s` only.
fn split_s_parts(l: &Laurent) -> BTreeMap<Monomial, Laurent> {
    let mut out: BTreeMap<Monomial, Laurent> = BTreeMap::new();
    for (m, c) in l.terms() {
        out.entry(m.with_exp(Var::HalfQ, 0))
            .or_default()
            .add_term(Monomial::var(Var::HalfQ, m.exp(Var::HalfQ)), c.clone());
    }
    out
}

fn cached_pow(
    value: &Scalar,
    e: i32,
    powers: &mut BTreeMap<i32, Scalar>,
) -> Result<Scalar, ScalarError> {
    if let Some(p) = powers.get(&e) {
        return Ok(p.clone());
    }
    let p = value.pow(e)?;
    powers.insert(e, p.clone());
    Ok(p)
}

fn subst_laurent(
    l: &Laurent,
    v: Var,
    value: &Scalar,
    powers: &mut BTreeMap<i32, Scalar>,
) -> Result<Scalar, ScalarError> {
    let mut grouped: BTreeMap<i32, Laurent> = BTreeMap::new();
    for (m, c) in l.terms() {
        grouped
            .entry(m.exp(v))
            .or_default()
            .add_term(m.with_exp(v, 0), c.clone());
    }
    let mut out = Scalar::zero();
    for (e, rest) in grouped {
        out = &out + &(&Scalar::from_laurent(rest) * &cached_pow(value, e, powers)?);
    }
    Ok(out)
}

fn subst_radical(
    r: &Radical,
    v: Var,
    value: &Scalar,
    powers: &mut BTreeMap<i32, Scalar>,
) -> Result<Scalar, ScalarError> {
    let mut out = Scalar::from_laurent(Laurent::one());
    let c = BigRational::from_integer(BigInt::from(r.constant().clone()));
    if c != BigRational::from_integer(1.into()) {
        out = &out * &Scalar::rational(c).sqrt()?;
    }
    for p in r.radicands() {
        let f = if p.uses_var(v) {
            subst_laurent(p, v, value, powers)?.sqrt()?
        } else {
            Scalar::from_radical_sum(RadicalSum::sqrt_of(p))
        };
        out = &out * &f;
    }
    Ok(out)
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        if self.den == o.den {
            return Scalar::normalize(&self.num + &o.num, self.den.clone());
        }
        let n = &(&self.num * &o.den_as_sum()) + &(&o.num * &self.den_as_sum());
        Scalar::normalize(n, self.den.mul(&o.den))
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        self + &(-o)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        if self.is_zero() || o.is_zero() {
            return Scalar::zero();
        }
        if self.den.is_one() && o.den.is_one() {
            return Scalar { num: &self.num * &o.num, den: UPoly::one() };
        }
        Scalar::normalize(&self.num * &o.num, self.den.mul(&o.den))
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { num: -&self.num, den: self.den.clone() }
    }
}

impl Div for &Scalar {
    type Output = Scalar;
    /// Panics on division by zero or by a non-invertible value; use
    /// [`Scalar::checked_div`] where that can happen.
    fn div(self, o: &Scalar) -> Scalar {
        self.checked_div(o).expect("scalar division")
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar { (&self).$m(&o) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::int(n)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Scalar {
        Scalar::q()
    }

    fn qi() -> Scalar {
        Scalar::q_half_pow(-2)
    }

    #[test]
    fn difference_of_squares() {
        let a = &q() - &qi();
        let b = &q() + &qi();
        assert_eq!(&a * &b, &Scalar::q_half_pow(4) - &Scalar::q_half_pow(-4));
    }

    #[test]
    fn radical_of_q_big_q_squares_to_q_squared_plus_one() {
        let r = (&q() * &Scalar::big_q()).sqrt().unwrap();
        assert_eq!(&r * &r, &Scalar::q_half_pow(4) + &Scalar::one());
    }

    #[test]
    fn like_radicals_add() {
        let r = Scalar::big_q().sqrt().unwrap();
        assert_eq!(&r + &r, &Scalar::int(2) * &r);
    }

    #[test]
    fn fraction_reduces_by_common_factor() {
        // (q² - q^{-2}) / (q - q^{-1}) = Q
        let num = &Scalar::q_half_pow(4) - &Scalar::q_half_pow(-4);
        let den = &q() - &qi();
        assert_eq!(num.checked_div(&den).unwrap(), Scalar::big_q());
    }

    #[test]
    fn rationalized_inverse() {
        let a = &Scalar::one() + &Scalar::int(2).sqrt().unwrap();
        let inv = a.inv().unwrap();
        assert!((&a * &inv).is_one());
        let b = &q() + &Scalar::big_q().sqrt().unwrap();
        assert!((&b * &b.inv().unwrap()).is_one());
    }

    #[test]
    fn multivariate_denominator_is_rejected() {
        let a = &Scalar::var(Var::K) + &q();
        assert!(matches!(a.inv(), Err(ScalarError::NonInvertible(_))));
    }

    #[test]
    fn evaluation_points() {
        let v = Scalar::big_q().eval(&EvalEnv::at_q(2.0)).unwrap();
        assert!((v.re - 2.5).abs() < 1e-12);
        let v = Scalar::q_half_pow(3).eval(&EvalEnv::at_q(4.0)).unwrap();
        assert!((v.re - 8.0).abs() < 1e-12);
        let r = (&q() * &Scalar::big_q()).sqrt().unwrap();
        let v = r.eval(&EvalEnv::at_q(1.0)).unwrap();
        assert!((v.re - 2f64.sqrt()).abs() < 1e-12);
        assert!(matches!(q().eval(&EvalEnv::at_q(0.0)), Err(ScalarError::ZeroBase)));
    }

    #[test]
    fn branch_cut_is_flagged() {
        let r = (&Scalar::q_half_pow(4) - &Scalar::int(4)).sqrt().unwrap();
        let out = r.eval_checked(&EvalEnv::at_q(1.0)).unwrap();
        assert!(out.branch_cut);
        assert!((out.value.im - 3f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn limits_at_one() {
        assert_eq!(Scalar::big_q().limit_q_to_one().unwrap(), Scalar::int(2));
        let z = &Scalar::q_half_pow(4) - &Scalar::q_half_pow(-4);
        assert!(z.limit_q_to_one().unwrap().is_zero());
        let lam = Scalar::var(Var::Lambda);
        let e = (&lam.inv().unwrap() - &lam).checked_div(&(&q() - &qi())).unwrap();
        assert!(matches!(e.limit_q_to_one(), Err(ScalarError::Divergent(_))));
    }

    #[test]
    fn exact_value_at_rational_q() {
        let half = BigRational::new(3.into(), 2.into());
        let v = Scalar::q_half_pow(3).at_q(&half).unwrap();
        // (3/2)^{3/2} = (3/2)·√(3/2)
        assert_eq!(&v * &v, Scalar::frac(27, 8));
        let r = Scalar::big_q().sqrt().unwrap().at_q(&half).unwrap();
        assert_eq!(&r * &r, Scalar::frac(13, 6));
    }

    #[test]
    fn coefficients_in_k() {
        let k = Scalar::var(Var::K);
        let e = &(&(&k * &k) * &q()) + &Scalar::int(3);
        let c = e.coefficients_in(Var::K);
        assert_eq!(c.get(&2), Some(&q()));
        assert_eq!(c.get(&0), Some(&Scalar::int(3)));
        assert_eq!(c.get(&1), None);
    }
}
