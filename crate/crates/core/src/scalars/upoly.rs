//! Dense univariate polynomials in `q^{1/2}` used for scalar denominators.

use std::fmt;

use super::gauss::GaussRational;
use super::laurent::{Laurent, Monomial, Var};

/// Coefficients in ascending degree, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct UPoly(Vec<GaussRational>);

impl UPoly {
    pub fn new(mut c: Vec<GaussRational>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        Self(c)
    }

    pub fn one() -> Self {
        Self(vec![GaussRational::one()])
    }

    pub fn coeffs(&self) -> &[GaussRational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.0.len() == 1 && self.0[0].is_one()
    }

    pub fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn lead(&self) -> Option<&GaussRational> {
        self.0.last()
    }

    /// Converts a Laurent polynomial in `q^{1/2}` only, returning the shift `m`
    /// with `l = s^m · result`.
    pub fn from_laurent(l: &Laurent) -> Option<(i32, UPoly)> {
        if !l.uses_only(Var::HalfQ) {
            return None;
        }
        if l.is_zero() {
            return Some((0, UPoly::new(vec![])));
        }
        let lo = l.min_exponents().exp(Var::HalfQ);
        let hi = l.terms().map(|(m, _)| m.exp(Var::HalfQ)).max().unwrap_or(lo);
        let mut c = vec![GaussRational::zero(); (hi - lo + 1) as usize];
        for (m, v) in l.terms() {
            c[(m.exp(Var::HalfQ) - lo) as usize] = v.clone();
        }
        Some((lo, UPoly::new(c)))
    }

    pub fn to_laurent(&self) -> Laurent {
        Laurent::from_terms(
            self.0
                .iter()
                .enumerate()
                .map(|(i, c)| (Monomial::var(Var::HalfQ, i as i32), c.clone())),
        )
    }

    pub fn mul(&self, o: &UPoly) -> UPoly {
        if self.is_zero() || o.is_zero() {
            return UPoly::new(vec![]);
        }
        let mut c = vec![GaussRational::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                c[i + j] = &c[i + j] + &(a * b);
            }
        }
        UPoly::new(c)
    }

    pub fn scale(&self, k: &GaussRational) -> UPoly {
        UPoly::new(self.0.iter().map(|c| c * k).collect())
    }

    pub fn monic(&self) -> UPoly {
        match self.lead().and_then(|l| l.inv()) {
            Some(inv) => self.scale(&inv),
            None => self.clone(),
        }
    }

    /// Euclidean division; `d` must be nonzero.
    pub fn div_rem(&self, d: &UPoly) -> (UPoly, UPoly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let mut rem = self.0.clone();
        if rem.len() < d.0.len() {
            return (UPoly::new(vec![]), self.clone());
        }
        let inv_lead = d.lead().and_then(|l| l.inv()).expect("nonzero lead");
        let mut quot = vec![GaussRational::zero(); rem.len() - d.0.len() + 1];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + d.0.len() - 1] * &inv_lead;
            if c.is_zero() {
                continue;
            }
            for (j, dj) in d.0.iter().enumerate() {
                rem[k + j] = &rem[k + j] - &(&c * dj);
            }
            quot[k] = c;
        }
        (UPoly::new(quot), UPoly::new(rem))
    }

    pub fn gcd(&self, o: &UPoly) -> UPoly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn eval(&self, x: &GaussRational) -> GaussRational {
        let mut acc = GaussRational::zero();
        for c in self.0.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_laurent())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> UPoly {
        UPoly::new(c.iter().map(|&x| GaussRational::from_int(x)).collect())
    }

    #[test]
    fn gcd_of_shared_factor() {
        // (s-1)(s+1) and (s-1)(s+2)
        let a = p(&[-1, 0, 1]);
        let b = p(&[-2, 1, 1]);
        assert_eq!(a.gcd(&b), p(&[-1, 1]));
    }

    #[test]
    fn division_is_exact_on_multiples() {
        let a = p(&[1, 0, 0, 0, 1]);
        let b = p(&[-1, 2, 3]);
        let (qq, r) = a.mul(&b).div_rem(&b);
        assert!(r.is_zero());
        assert_eq!(qq, a);
    }
}
