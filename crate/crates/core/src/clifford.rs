//! Classical Clifford algebras as blade algebras, plus a Dirac matrix set for Cl(3,1).

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::linalg::{Matrix, Ring};
use crate::scalars::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CliffordError {
    #[error("multivectors live over different signatures")]
    SignatureMismatch,
    #[error("signature entries must be +1 or -1")]
    BadSignature,
}

/// Diagonal metric in declared index order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Signature {
    metric: Vec<i8>,
}

impl Signature {
    pub fn new(metric: Vec<i8>) -> Result<Self, CliffordError> {
        if metric.len() > 16 || metric.iter().any(|&m| m != 1 && m != -1) {
            return Err(CliffordError::BadSignature);
        }
        Ok(Self { metric })
    }

    /// Mostly-plus Minkowski metric diag(−1, 1, 1, 1).
    pub fn cl31() -> Self {
        Self { metric: vec![-1, 1, 1, 1] }
    }

    pub fn dim(&self) -> usize {
        self.metric.len()
    }

    pub fn positive(&self) -> usize {
        self.metric.iter().filter(|&&m| m == 1).count()
    }

    pub fn negative(&self) -> usize {
        self.dim() - self.positive()
    }

    pub fn metric(&self, mu: usize) -> i8 {
        self.metric[mu]
    }

    /// Sign and blade of the product of two basis blades.
    pub fn blade_product(&self, a: u32, b: u32) -> (i8, u32) {
        let mut sign = 1i8;
        // count transpositions needed to merge b past a
        let mut x = a >> 1;
        while x != 0 {
            if (x & b).count_ones() % 2 == 1 {
                sign = -sign;
            }
            x >>= 1;
        }
        let common = a & b;
        for mu in 0..self.dim() {
            if common & (1 << mu) != 0 {
                sign *= self.metric[mu];
            }
        }
        (sign, a ^ b)
    }
}

/// Element of a Clifford algebra; blades are bitmasks of generator indices.
#[derive(Clone, Debug, PartialEq)]
pub struct Multivector {
    sig: Signature,
    terms: BTreeMap<u32, Scalar>,
}

impl Multivector {
    pub fn zero(sig: &Signature) -> Self {
        Self { sig: sig.clone(), terms: BTreeMap::new() }
    }

    pub fn scalar(sig: &Signature, c: Scalar) -> Self {
        Self::blade(sig, 0, c)
    }

    pub fn blade(sig: &Signature, blade: u32, c: Scalar) -> Self {
        let mut m = Self::zero(sig);
        m.add_term(blade, c);
        m
    }

    /// The generator `e_mu`.
    pub fn generator(sig: &Signature, mu: usize) -> Self {
        Self::blade(sig, 1 << mu, Scalar::one())
    }

    pub fn signature(&self) -> &Signature {
        &self.sig
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &Scalar)> {
        self.terms.iter().map(|(b, c)| (*b, c))
    }

    pub fn coefficient(&self, blade: u32) -> Scalar {
        self.terms.get(&blade).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, blade: u32, c: Scalar) {
        let v = match self.terms.remove(&blade) {
            Some(old) => &old + &c,
            None => c,
        };
        if !v.is_zero() {
            self.terms.insert(blade, v);
        }
    }

    fn check(&self, o: &Self) -> Result<(), CliffordError> {
        if self.sig != o.sig {
            return Err(CliffordError::SignatureMismatch);
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self, CliffordError> {
        self.check(o)?;
        let mut out = self.clone();
        for (b, c) in &o.terms {
            out.add_term(*b, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, o: &Self) -> Result<Self, CliffordError> {
        self.add(&o.scale(&Scalar::int(-1)))
    }

    pub fn scale(&self, k: &Scalar) -> Self {
        let mut out = Self::zero(&self.sig);
        for (b, c) in &self.terms {
            out.add_term(*b, k * c);
        }
        out
    }

    pub fn product(&self, o: &Self) -> Result<Self, CliffordError> {
        self.check(o)?;
        let mut out = Self::zero(&self.sig);
        for (a, x) in &self.terms {
            for (b, y) in &o.terms {
                let (sign, blade) = self.sig.blade_product(*a, *b);
                let c = x * y;
                out.add_term(blade, if sign < 0 { -c } else { c });
            }
        }
        Ok(out)
    }

    pub fn grade_project(&self, k: u32) -> Self {
        let mut out = Self::zero(&self.sig);
        for (b, c) in &self.terms {
            if b.count_ones() == k {
                out.add_term(*b, c.clone());
            }
        }
        out
    }

    /// Sum of the grade `r + s` parts of the products of homogeneous pieces.
    pub fn wedge(&self, o: &Self) -> Result<Self, CliffordError> {
        self.graded_product(o, |r, s| r + s)
    }

    /// Sum of the grade `|r − s|` parts of the products of homogeneous pieces.
    pub fn dot_part(&self, o: &Self) -> Result<Self, CliffordError> {
        self.graded_product(o, |r, s| r.abs_diff(s))
    }

    fn graded_product(&self, o: &Self, pick: impl Fn(u32, u32) -> u32) -> Result<Self, CliffordError> {
        self.check(o)?;
        let mut out = Self::zero(&self.sig);
        for (a, x) in &self.terms {
            for (b, y) in &o.terms {
                let (sign, blade) = self.sig.blade_product(*a, *b);
                if blade.count_ones() != pick(a.count_ones(), b.count_ones()) {
                    continue;
                }
                let c = x * y;
                out.add_term(blade, if sign < 0 { -c } else { c });
            }
        }
        Ok(out)
    }

    /// Image under `e_mu ↦ gens[mu]`.
    pub fn to_matrix(&self, gens: &[Matrix<Scalar>]) -> Matrix<Scalar> {
        let n = gens.first().map_or(1, |g| g.rows());
        let mut out = Matrix::zeros(n, n);
        for (b, c) in &self.terms {
            out = out.add(&blade_matrix(*b, gens).scale(c)).expect("square generators");
        }
        out
    }
}

/// Ordered product of the generators in `blade`.
pub fn blade_matrix(blade: u32, gens: &[Matrix<Scalar>]) -> Matrix<Scalar> {
    let n = gens.first().map_or(1, |g| g.rows());
    let mut m = Matrix::identity(n);
    for (mu, g) in gens.iter().enumerate() {
        if blade & (1 << mu) != 0 {
            m = m.matmul(g).expect("square generators");
        }
    }
    m
}

impl fmt::Display for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (b, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})")?;
            for mu in 0..self.sig.dim() {
                if b & (1 << mu) != 0 {
                    write!(f, "e{mu}")?;
                }
            }
        }
        Ok(())
    }
}

/// Name of the concrete Dirac set returned by [`dirac_matrices`].
pub const DIRAC_REP: &str = "real Majorana-type: g0 = eps (x) I, g1 = s1 (x) I, g2 = s3 (x) s1, g3 = s3 (x) s3, eps = [[0,1],[-1,0]]";

/// Real 4×4 gammas with `{γ_μ, γ_ν} = 2 g_{μν}` for `g = diag(−1, 1, 1, 1)`.
pub fn dirac_matrices() -> [Matrix<Scalar>; 4] {
    let m = |r: [[i64; 2]; 2]| {
        Matrix::from_rows(r.iter().map(|row| row.iter().map(|&x| Scalar::int(x)).collect()).collect())
    };
    let eps = m([[0, 1], [-1, 0]]);
    let s1 = m([[0, 1], [1, 0]]);
    let s3 = m([[1, 0], [0, -1]]);
    let id = Matrix::<Scalar>::identity(2);
    [eps.kron(&id), s1.kron(&id), s3.kron(&s1), s3.kron(&s3)]
}

/// Residuals `{γ_μ, γ_ν} − 2 g_{μν} I` for all ordered pairs.
pub fn anticommutation_residuals(
    gens: &[Matrix<Scalar>],
    sig: &Signature,
) -> Vec<((usize, usize), Matrix<Scalar>)> {
    let n = gens.first().map_or(0, |g| g.rows());
    let mut out = Vec::new();
    for mu in 0..gens.len() {
        for nu in 0..gens.len() {
            let ac = gens[mu].anticommutator(&gens[nu]).expect("square generators");
            let target = if mu == nu {
                Matrix::identity(n).scale(&Scalar::from_i64(2 * sig.metric(mu) as i64))
            } else {
                Matrix::zeros(n, n)
            };
            out.push(((mu, nu), ac.sub(&target).expect("same shape")));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(mu: usize) -> Multivector {
        Multivector::generator(&Signature::cl31(), mu)
    }

    #[test]
    fn generator_squares() {
        let sig = Signature::cl31();
        let e12 = e(1).product(&e(2)).unwrap();
        assert_eq!(e12.product(&e(2)).unwrap(), e(1));
        assert_eq!(e(0).product(&e(0)).unwrap(), Multivector::scalar(&sig, Scalar::int(-1)));
        assert_eq!(e12.product(&e12).unwrap(), Multivector::scalar(&sig, Scalar::int(-1)));
    }

    #[test]
    fn grade_split() {
        let sig = Signature::cl31();
        let e12 = e(1).product(&e(2)).unwrap();
        assert!(e12.grade_project(0).is_zero());
        assert_eq!(e(0).dot_part(&e(0)).unwrap(), Multivector::scalar(&sig, Scalar::int(-1)));
        assert!(e(0).wedge(&e(0)).unwrap().is_zero());
        assert_eq!(e(1).wedge(&e(2)).unwrap(), e12);
    }

    #[test]
    fn dirac_set_anticommutes() {
        let g = dirac_matrices();
        let i4 = Matrix::<Scalar>::identity(4);
        assert_eq!(g[0].anticommutator(&g[0]).unwrap(), i4.scale(&Scalar::int(-2)));
        assert!(g[1].anticommutator(&g[2]).unwrap().is_zero());
        assert_eq!(g[3].anticommutator(&g[3]).unwrap(), i4.scale(&Scalar::int(2)));
        assert!(anticommutation_residuals(&g, &Signature::cl31()).iter().all(|(_, r)| r.is_zero()));
    }

    #[test]
    fn signature_mismatch() {
        let other = Signature::new(vec![1, 1, 1, 1]).unwrap();
        let a = Multivector::generator(&other, 0);
        assert_eq!(a.product(&e(0)), Err(CliffordError::SignatureMismatch));
    }
}
