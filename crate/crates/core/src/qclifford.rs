//! q-deformed gamma matrices, their metric, and the deformed metric induced
//! by the classical action map.

use num_complex::Complex64;
use num_rational::BigRational;
use thiserror::Error;

use crate::clifford::dirac_matrices;
use crate::linalg::{Field, LinalgError, LinearSolution, Matrix, Ring};
use crate::presentations::ActionConvention;
use crate::scalars::{EvalEnv, Scalar, ScalarError};

/// Index labels in matrix order.
pub const LABELS: [&str; 4] = ["0", "+", "-", "3"];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QCliffordError {
    #[error("q must be nonzero")]
    ZeroQ,
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// `γ^0, γ^+, γ^-, γ^3` at one value of q (or symbolic q).
#[derive(Clone, Debug, PartialEq)]
pub struct QGammaSet<T> {
    pub gammas: [Matrix<T>; 4],
}

/// The metric `C` and its inverse.
#[derive(Clone, Debug, PartialEq)]
pub struct QMetric<T> {
    pub c: Matrix<T>,
    pub c_inv: Matrix<T>,
}

fn sparse(entries: &[(usize, usize, Scalar)]) -> Matrix<Scalar> {
    let mut m = Matrix::zeros(4, 4);
    for (i, j, v) in entries {
        m.set(*i, *j, v.clone());
    }
    m
}

fn qp(n: i32) -> Scalar {
    Scalar::q_half_pow(2 * n)
}

/// Symbolic q-gammas.
pub fn build_q_gammas() -> QGammaSet<Scalar> {
    let one = Scalar::one;
    let neg = |x: Scalar| -x;
    let big_q = Scalar::big_q();
    let root_q_big_q = (&Scalar::q() * &big_q).sqrt().expect("radical-free");
    let root_big_q = big_q.sqrt().expect("radical-free");
    let g0 = sparse(&[(0, 2, qp(2)), (1, 3, neg(one())), (2, 0, neg(one())), (3, 1, neg(one()))]);
    let gp = sparse(&[(0, 3, one()), (2, 1, neg(one()))]).scale(&root_q_big_q);
    let gm = sparse(&[(0, 3, Scalar::q_half_pow(-3)), (3, 0, neg(Scalar::q_half_pow(3)))]).scale(&root_big_q);
    let g3 = sparse(&[
        (0, 2, &(&qp(-1) + &qp(1)) - &qp(2)),
        (1, 3, neg(qp(-2))),
        (2, 0, neg(one())),
        (3, 1, qp(2)),
    ]);
    QGammaSet { gammas: [g0, gp, gm, g3] }
}

/// The displayed metric `C` with its exact inverse.
pub fn build_q_metric() -> Result<QMetric<Scalar>, QCliffordError> {
    let c = sparse(&[
        (0, 3, qp(-1)),
        (1, 1, &qp(-2) - &Scalar::one()),
        (1, 2, -qp(-1)),
        (2, 1, -qp(-1)),
        (3, 0, qp(1)),
    ]);
    let c_inv = c.inverse()?;
    Ok(QMetric { c, c_inv })
}

impl QGammaSet<Scalar> {
    pub fn at_q(&self, q: &BigRational) -> Result<Self, QCliffordError> {
        if q == &BigRational::from_integer(0.into()) {
            return Err(QCliffordError::ZeroQ);
        }
        let [a, b, c, d] = &self.gammas;
        Ok(QGammaSet { gammas: [a.at_q(q)?, b.at_q(q)?, c.at_q(q)?, d.at_q(q)?] })
    }

    pub fn eval(&self, env: &EvalEnv) -> Result<QGammaSet<Complex64>, QCliffordError> {
        if env.q == Complex64::new(0.0, 0.0) {
            return Err(QCliffordError::ZeroQ);
        }
        let [a, b, c, d] = &self.gammas;
        Ok(QGammaSet { gammas: [a.eval(env)?, b.eval(env)?, c.eval(env)?, d.eval(env)?] })
    }
}

impl QMetric<Scalar> {
    pub fn at_q(&self, q: &BigRational) -> Result<Self, QCliffordError> {
        Ok(QMetric { c: self.c.at_q(q)?, c_inv: self.c_inv.at_q(q)? })
    }

    pub fn eval(&self, env: &EvalEnv) -> Result<QMetric<Complex64>, QCliffordError> {
        Ok(QMetric { c: self.c.eval(env)?, c_inv: self.c_inv.eval(env)? })
    }
}

impl<T: Ring> QGammaSet<T> {
    /// `γ^5 = γ^0 γ^+ γ^- γ^3`.
    pub fn gamma5(&self) -> Matrix<T> {
        let [a, b, c, d] = &self.gammas;
        Matrix::product(&[a, b, c, d]).expect("4x4")
    }

    /// Gamma by label, with `"5"` for the fourfold product.
    pub fn by_label(&self, label: &str) -> Option<Matrix<T>> {
        if label == "5" {
            return Some(self.gamma5());
        }
        LABELS.iter().position(|l| *l == label).map(|i| self.gammas[i].clone())
    }
}

/// Classical Dirac matrices with entries in `T`.
pub fn dirac_in<T: Ring>() -> [Matrix<T>; 4] {
    dirac_matrices().map(|m| {
        m.map(|x| {
            let g = x.as_gauss().expect("integer entries");
            let v: i64 = g.re.to_integer().try_into().expect("small");
            T::from_i64(v)
        })
    })
}

/// Induced metric for one convention.
#[derive(Clone, Debug, PartialEq)]
pub struct DeformedMetric<T> {
    pub convention: ActionConvention,
    pub coefficients: Vec<Vec<T>>,
    /// `G^{μν} = tr({A^μ, A^ν}) / 8`.
    pub metric: Matrix<T>,
    /// `{A^μ, A^ν} − 2 G^{μν} I` for each pair.
    pub deviation: Vec<Matrix<T>>,
}

/// `A^μ = Σ_ν c^μ_ν γ_ν` with `c` read off the q-gammas per `conv`.
pub fn deformed_metric<T: Field>(gs: &QGammaSet<T>, conv: ActionConvention) -> DeformedMetric<T> {
    let c = conv.coefficients(&gs.gammas);
    let dirac = dirac_in::<T>();
    let images: Vec<Matrix<T>> = c
        .iter()
        .map(|row| {
            row.iter()
                .zip(&dirac)
                .fold(Matrix::zeros(4, 4), |acc, (k, g)| acc.add(&g.scale(k)).expect("4x4"))
        })
        .collect();
    let eighth = T::from_i64(8).try_inv().expect("8 invertible");
    let two = T::from_i64(2);
    let mut metric = Matrix::zeros(4, 4);
    let mut deviation = Vec::new();
    for mu in 0..4 {
        for nu in 0..4 {
            let ac = images[mu].anticommutator(&images[nu]).expect("4x4");
            let g = ac.trace().times(&eighth);
            deviation.push(ac.sub(&Matrix::identity(4).scale(&g.times(&two))).expect("4x4"));
            metric.set(mu, nu, g);
        }
    }
    DeformedMetric { convention: conv, coefficients: c, metric, deviation }
}

/// The published `α_{g^{μν}}` matrix.
pub fn target_alpha_metric() -> Matrix<Scalar> {
    let q = Scalar::q;
    let big_q = Scalar::big_q;
    let one = Scalar::one;
    let e01 = &one() - &qp(2);
    let e02 = &q() - &qp(-1);
    let e03 = &(&one() - &(&big_q() * &qp(-3))) + &qp(-2);
    let e12 = &(&(&q() - &qp(2)) + &qp(3)) - &qp(4);
    let e13 = &q() * &big_q();
    let e23 = &(&(&one() - &qp(2)) - &qp(-1)) - &qp(-3);
    let rows = vec![
        vec![&big_q() * &qp(-3), e01.clone(), e02.clone(), e03.clone()],
        vec![e01, &(&(&big_q() * &q()) + &qp(4)) - &one(), e12.clone(), e13.clone()],
        vec![e02, e12, &big_q() * &(&big_q() - &(&Scalar::int(2) * &qp(2))), e23.clone()],
        vec![e03, e13, e23, &(&(&(&q() * &big_q()) - &one()) + &qp(-3)) + &qp(-4)],
    ];
    Matrix::from_rows(rows)
}

/// Residuals `γ^μγ^ν + q γ^νγ^μ − q^{-1} Q C^{-1 μν} I` with the braiding replaced by the flip.
pub fn flip_residuals<T: Ring>(gs: &QGammaSet<T>, c_inv: &Matrix<T>, q: &T, q_inv_big_q: &T) -> Vec<((usize, usize), Matrix<T>)> {
    let id = Matrix::<T>::identity(4);
    let mut out = Vec::new();
    for mu in 0..4 {
        for nu in 0..4 {
            let a = gs.gammas[mu].matmul(&gs.gammas[nu]).expect("4x4");
            let b = gs.gammas[nu].matmul(&gs.gammas[mu]).expect("4x4").scale(q);
            let rhs = id.scale(&q_inv_big_q.times(c_inv.get(mu, nu)));
            out.push(((mu, nu), a.add(&b).expect("4x4").sub(&rhs).expect("4x4")));
        }
    }
    out
}

/// Solve mode: for each `(μ,ν)`, find `R^{μν}_{ν'μ'}` with
/// `γ^μγ^ν + q Σ R^{μν}_{ν'μ'} γ^{ν'}γ^{μ'} = q^{-1} Q C^{-1 μν} I`.
pub fn solve_braiding<T: Field>(
    gs: &QGammaSet<T>,
    c_inv: &Matrix<T>,
    q: &T,
    q_inv_big_q: &T,
) -> Result<Vec<((usize, usize), LinearSolution<T>)>, LinalgError> {
    let mut products = Vec::with_capacity(16);
    for nu_p in 0..4 {
        for mu_p in 0..4 {
            products.push(gs.gammas[nu_p].matmul(&gs.gammas[mu_p])?.scale(q));
        }
    }
    let system = Matrix::from_fn(16, 16, |entry, unknown| products[unknown].get(entry / 4, entry % 4).clone());
    let id = Matrix::<T>::identity(4);
    let mut out = Vec::new();
    for mu in 0..4 {
        for nu in 0..4 {
            let rhs = id
                .scale(&q_inv_big_q.times(c_inv.get(mu, nu)))
                .sub(&gs.gammas[mu].matmul(&gs.gammas[nu])?)?;
            out.push(((mu, nu), system.solve(rhs.entries())?));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gamma_plus_squares_to_zero() {
        let gs = build_q_gammas();
        let gp = &gs.gammas[1];
        assert!(gp.matmul(gp).unwrap().is_zero());
    }

    #[test]
    fn metric_inverse() {
        let m = build_q_metric().unwrap();
        assert_eq!(m.c.matmul(&m.c_inv).unwrap(), Matrix::identity(4));
        let qi = qp(-1);
        assert_eq!(m.c_inv.get(0, 3), &qi);
        assert_eq!(m.c_inv.get(1, 2), &-qp(1));
        assert_eq!(m.c_inv.get(2, 2), &(&qp(2) - &Scalar::one()));
        assert_eq!(m.c_inv.get(3, 0), &qp(1));
    }

    #[test]
    fn metric_is_symmetric_for_every_convention() {
        let gs = build_q_gammas();
        for conv in ActionConvention::ALL {
            let d = deformed_metric(&gs, conv);
            assert_eq!(d.metric, d.metric.transpose());
            assert!(d.deviation.iter().all(Matrix::is_zero));
        }
    }

    #[test]
    fn target_corners() {
        let t = target_alpha_metric();
        assert_eq!(t.get(0, 0), &(&Scalar::big_q() * &qp(-3)));
        assert_eq!(t.get(0, 1), &(&Scalar::one() - &qp(2)));
        assert_eq!(t, t.transpose());
    }

    #[test]
    fn solve_at_one_runs() {
        let one = BigRational::from_integer(1.into());
        let gs = build_q_gammas().at_q(&one).unwrap();
        let m = build_q_metric().unwrap().at_q(&one).unwrap();
        let sols = solve_braiding(&gs, &m.c_inv, &Scalar::one(), &Scalar::int(2)).unwrap();
        assert_eq!(sols.len(), 16);
    }
}
