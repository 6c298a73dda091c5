//! q-Fierz machinery: the Hecke R-matrix, Majorana q-spinor currents, the
//! linear current relations and the quadratic identity under the reflection rule.

use std::collections::BTreeSet;

use num_complex::Complex64;
use thiserror::Error;

use crate::linalg::{LinalgError, Matrix, Ring};
use crate::ncrewrite::{NcPoly, RewriteError, RewriteSystem};
use crate::qclifford::QGammaSet;
use crate::scalars::{EvalEnv, Scalar, ScalarError, Var};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FierzError {
    #[error("q must be nonzero")]
    ZeroQ,
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Rewrite(#[from] RewriteError),
}

/// `R̂ = q Σ e_ρρ⊗e_ρρ + Σ_{ρ≠σ} e_σρ⊗e_ρσ + (q − q⁻¹) Σ_{ρ<σ} e_ρρ⊗e_σσ` in the
/// basis `11, 12, 21, 22`.
pub fn build_rhat<T: Ring>(q: &T, q_inv: &T) -> Matrix<T> {
    let e = |i: usize, j: usize| Matrix::<T>::unit(2, i, j);
    let mut r = Matrix::zeros(4, 4);
    for rho in 0..2 {
        r = r.add(&e(rho, rho).kron(&e(rho, rho)).scale(q)).expect("4x4");
        for sigma in 0..2 {
            if rho != sigma {
                r = r.add(&e(sigma, rho).kron(&e(rho, sigma))).expect("4x4");
            }
            if rho < sigma {
                r = r.add(&e(rho, rho).kron(&e(sigma, sigma)).scale(&q.minus(q_inv))).expect("4x4");
            }
        }
    }
    r
}

/// Symbolic `R̂`.
pub fn rhat_symbolic() -> Matrix<Scalar> {
    build_rhat(&Scalar::q(), &Scalar::q().inv().expect("q invertible"))
}

/// `R̂` at a numeric q.
pub fn rhat_numeric(q: Complex64) -> Result<Matrix<Complex64>, FierzError> {
    if q.norm() == 0.0 {
        return Err(FierzError::ZeroQ);
    }
    Ok(build_rhat(&q, &q.inv()))
}

pub fn flip_matrix<T: Ring>() -> Matrix<T> {
    Matrix::from_fn(4, 4, |r, c| {
        let (i, j) = (r / 2, r % 2);
        if c == 2 * j + i {
            T::one()
        } else {
            T::zero()
        }
    })
}

/// `(R̂ − q)(R̂ + q⁻¹)`.
pub fn hecke_residual<T: Ring>(r: &Matrix<T>, q: &T, q_inv: &T) -> Matrix<T> {
    let id = Matrix::<T>::identity(4);
    let a = r.sub(&id.scale(q)).expect("4x4");
    let b = r.add(&id.scale(q_inv)).expect("4x4");
    a.matmul(&b).expect("4x4")
}

/// `(R̂⊗I)(I⊗R̂)(R̂⊗I) − (I⊗R̂)(R̂⊗I)(I⊗R̂)` on the tensor cube.
pub fn braid_residual<T: Ring>(r: &Matrix<T>) -> Matrix<T> {
    let id = Matrix::<T>::identity(2);
    let r12 = r.kron(&id);
    let r23 = id.kron(r);
    let lhs = Matrix::product(&[&r12, &r23, &r12]).expect("8x8");
    let rhs = Matrix::product(&[&r23, &r12, &r23]).expect("8x8");
    lhs.sub(&rhs).expect("8x8")
}

/// A published relation `J^{AB} = c J^{CD}` between two-index currents.
#[derive(Clone, Debug)]
pub struct LinearRelation {
    pub lhs: [&'static str; 2],
    pub coefficient: Scalar,
    pub rhs: [&'static str; 2],
}

impl LinearRelation {
    pub fn label(&self) -> String {
        format!("J{}{}=({})J{}{}", self.lhs[0], self.lhs[1], self.coefficient, self.rhs[0], self.rhs[1])
    }

    pub fn id(&self) -> String {
        let tag = |s: &str| match s {
            "+" => "p".to_string(),
            "-" => "m".to_string(),
            other => other.to_string(),
        };
        format!("{}{}-{}{}", tag(self.lhs[0]), tag(self.lhs[1]), tag(self.rhs[0]), tag(self.rhs[1]))
    }

    /// `γ^Aγ^B − c γ^Cγ^D`.
    pub fn residual<T: Ring>(&self, gs: &QGammaSet<T>, c: &T) -> Matrix<T> {
        let g = |l: &str| gs.by_label(l).expect("known label");
        let a = g(self.lhs[0]).matmul(&g(self.lhs[1])).expect("4x4");
        let b = g(self.rhs[0]).matmul(&g(self.rhs[1])).expect("4x4");
        a.sub(&b.scale(c)).expect("4x4")
    }
}

/// The seven displayed relations.
pub fn linear_relations() -> Vec<LinearRelation> {
    let q2 = Scalar::q_half_pow(4);
    let qm2 = Scalar::q_half_pow(-4);
    let one = Scalar::one();
    let neg = Scalar::int(-1);
    let rel = |lhs, coefficient: &Scalar, rhs| LinearRelation { lhs, coefficient: coefficient.clone(), rhs };
    vec![
        rel(["5", "3"], &-&q2, ["5", "0"]),
        rel(["0", "-"], &neg, ["+", "3"]),
        rel(["3", "5"], &one, ["0", "5"]),
        rel(["-", "0"], &qm2, ["3", "+"]),
        rel(["0", "+"], &q2, ["-", "3"]),
        rel(["5", "+"], &one, ["+", "-"]),
        rel(["+", "0"], &neg, ["3", "-"]),
    ]
}

/// Inter-spinor commutation choice.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SpinorConvention {
    /// Components of different spinors commute.
    A,
    /// Every `Z_a` and `Z̄_b` obey the reflection rule; same-type letters of
    /// different spinors commute.
    B,
}

impl SpinorConvention {
    pub fn as_str(&self) -> &'static str {
        match self {
            SpinorConvention::A => "A",
            SpinorConvention::B => "B",
        }
    }
}

/// Letter layout: all `Z̄_a^i` before all `Z_a^i`, spinors in order.
#[derive(Clone, Debug)]
pub struct SpinorAlgebra {
    pub spinors: usize,
    pub rules: RewriteSystem,
}

impl SpinorAlgebra {
    pub fn zbar(&self, a: usize, i: usize) -> u16 {
        (2 * a + i) as u16
    }

    pub fn z(&self, a: usize, i: usize) -> u16 {
        (2 * self.spinors + 2 * a + i) as u16
    }

    fn spinor_of(&self, g: u16) -> usize {
        (g as usize % (2 * self.spinors)) / 2
    }

    /// Exchanges spinor labels 0 and 1.
    pub fn swap_labels(&self, p: &NcPoly) -> NcPoly {
        let n = self.spinors;
        p.map_letters(|g| {
            let block = g as usize / (2 * n);
            let (a, i) = (self.spinor_of(g), g as usize % 2);
            let b = match a {
                0 => 1,
                1 => 0,
                x => x,
            };
            (block * 2 * n + 2 * b + i) as u16
        })
    }
}

/// Standard quantum metric `ε = [[0, q^{-1/2}], [−q^{1/2}, 0]]`.
pub fn standard_epsilon() -> Matrix<Scalar> {
    Matrix::from_rows(vec![
        vec![Scalar::zero(), Scalar::q_half_pow(-1)],
        vec![-Scalar::q_half_pow(1), Scalar::zero()],
    ])
}

/// Undeformed metric `[[0, 1], [−1, 0]]`.
pub fn classical_epsilon() -> Matrix<Scalar> {
    Matrix::from_rows(vec![vec![Scalar::zero(), Scalar::one()], vec![Scalar::int(-1), Scalar::zero()]])
}

/// Right-hand side of `Z^i Z̄^n → k Σ (ε⁻¹)_{nm} R̂_{(im),(kl)} ε_{kj} Z̄^j Z^l`
/// as coefficients `[j][l]`.
fn reflection_coefficients(
    rhat: &Matrix<Scalar>,
    eps: &Matrix<Scalar>,
    eps_inv: &Matrix<Scalar>,
    k: &Scalar,
    i: usize,
    n: usize,
) -> [[Scalar; 2]; 2] {
    let mut out: [[Scalar; 2]; 2] = Default::default();
    for (j, row) in out.iter_mut().enumerate() {
        for (l, cell) in row.iter_mut().enumerate() {
            let mut acc = Scalar::zero();
            for m in 0..2 {
                for kk in 0..2 {
                    let t = eps_inv.get(n, m) * rhat.get(2 * i + m, 2 * kk + l);
                    if t.is_zero() {
                        continue;
                    }
                    acc = &acc + &(&t * eps.get(kk, j));
                }
            }
            *cell = k * &acc;
        }
    }
    out
}

/// Component rules of `Z(εZ̄) = k R̂ (εZ̄) Z` for `spinors` spinors.
pub fn reflection_rules(
    rhat: &Matrix<Scalar>,
    eps: &Matrix<Scalar>,
    k: &Scalar,
    spinors: usize,
    conv: SpinorConvention,
) -> Result<SpinorAlgebra, FierzError> {
    let eps_inv = eps.inverse()?;
    let mut names = Vec::new();
    for bar in [true, false] {
        for a in 1..=spinors {
            for i in 1..=2 {
                names.push(if bar { format!("Zb{a}_{i}") } else { format!("Z{a}_{i}") });
            }
        }
    }
    let mut alg = SpinorAlgebra { spinors, rules: RewriteSystem::new(names) };
    let mut rs = RewriteSystem::new(alg.rules.names().to_vec());
    for a in 0..spinors {
        for b in 0..spinors {
            let reflect = a == b || conv == SpinorConvention::B;
            for i in 0..2 {
                for n in 0..2 {
                    let (lhs_z, lhs_zb) = (alg.z(a, i), alg.zbar(b, n));
                    let rhs = if reflect {
                        let c = reflection_coefficients(rhat, eps, &eps_inv, k, i, n);
                        let mut p = NcPoly::zero();
                        for (j, row) in c.iter().enumerate() {
                            for (l, v) in row.iter().enumerate() {
                                p = p.add(&NcPoly::word(&[alg.zbar(b, j), alg.z(a, l)]).scale(v));
                            }
                        }
                        p
                    } else {
                        NcPoly::word(&[lhs_zb, lhs_z])
                    };
                    rs.add_rule(lhs_z, lhs_zb, rhs)?;
                }
            }
        }
    }
    // same-type letters of different spinors commute
    for a in 0..spinors {
        for b in 0..a {
            for i in 0..2 {
                for j in 0..2 {
                    rs.add_rule(alg.z(a, i), alg.z(b, j), NcPoly::word(&[alg.z(b, j), alg.z(a, i)]))?;
                    rs.add_rule(alg.zbar(a, i), alg.zbar(b, j), NcPoly::word(&[alg.zbar(b, j), alg.zbar(a, i)]))?;
                }
            }
        }
    }
    alg.rules = rs;
    Ok(alg)
}

/// Components `(Z^1, Z^2, (Z̄ε⁻¹)^1, (Z̄ε⁻¹)^2)` of `ψ_a`.
pub fn majorana_components(alg: &SpinorAlgebra, eps_inv: &Matrix<Scalar>, a: usize) -> [NcPoly; 4] {
    let bar = |k: usize| {
        (0..2).fold(NcPoly::zero(), |acc, j| acc.add(&NcPoly::gen(alg.zbar(a, j)).scale(eps_inv.get(j, k))))
    };
    [NcPoly::gen(alg.z(a, 0)), NcPoly::gen(alg.z(a, 1)), bar(0), bar(1)]
}

/// `1/(q√Q)`.
pub fn current_prefactor() -> Scalar {
    let root = Scalar::big_q().sqrt().expect("radical-free");
    (&Scalar::q() * &root).inv().expect("invertible")
}

/// `(1/(q√Q)) ψ̄_first M ψ_second`, with `ψ̄ = ψᵀ` (free-algebra product).
pub fn current(alg: &SpinorAlgebra, eps_inv: &Matrix<Scalar>, m: &Matrix<Scalar>, first: usize, second: usize) -> NcPoly {
    let left = majorana_components(alg, eps_inv, first);
    let right = majorana_components(alg, eps_inv, second);
    let mut out = NcPoly::zero();
    for (r, l) in left.iter().enumerate() {
        for (c, rt) in right.iter().enumerate() {
            let v = m.get(r, c);
            if !v.is_zero() {
                out = out.add(&l.concat_mul(rt).scale(v));
            }
        }
    }
    out.scale(&current_prefactor())
}

/// Normal form of `q⁴J² − (J^{03})² − Q(1−q⁻⁴)(J⁵)²`.
pub fn quadratic_residual(
    gs: &QGammaSet<Scalar>,
    alg: &SpinorAlgebra,
    eps: &Matrix<Scalar>,
    first: usize,
    second: usize,
    budget: u64,
) -> Result<NcPoly, FierzError> {
    let eps_inv = eps.inverse()?;
    let id = Matrix::<Scalar>::identity(4);
    let g03 = gs.gammas[0].matmul(&gs.gammas[3])?;
    let g5 = gs.gamma5();
    let j = current(alg, &eps_inv, &id, first, second);
    let j03 = current(alg, &eps_inv, &g03, first, second);
    let j5 = current(alg, &eps_inv, &g5, first, second);
    let q4 = Scalar::q_half_pow(8);
    let c5 = &Scalar::big_q() * &(&Scalar::one() - &Scalar::q_half_pow(-8));
    let free = j
        .concat_mul(&j)
        .scale(&q4)
        .sub(&j03.concat_mul(&j03))
        .sub(&j5.concat_mul(&j5).scale(&c5));
    Ok(alg.rules.normal_form(&free, budget)?)
}

/// Values of the reflection parameter `k` that make a residual vanish.
#[derive(Clone, Debug, PartialEq)]
pub enum KAnalysis {
    /// Vanishes for every k.
    Identically,
    /// Exactly these values (possibly none).
    Roots(Vec<Scalar>),
    /// No coefficient was of degree two or less in k after removing powers of k.
    Undetermined { verified: Vec<Scalar> },
}

impl KAnalysis {
    pub fn describe(&self) -> String {
        let list = |v: &[Scalar]| v.iter().map(|s| s.to_string()).collect::<Vec<_>>().join("; ");
        match self {
            KAnalysis::Identically => "all k".into(),
            KAnalysis::Roots(v) if v.is_empty() => "none".into(),
            KAnalysis::Roots(v) => format!("k in {{{}}}", list(v)),
            KAnalysis::Undetermined { verified } => format!("undetermined; verified roots {{{}}}", list(verified)),
        }
    }
}

/// Solves for `k` word by word, then verifies every candidate against all coefficients.
pub fn k_analysis(residual: &NcPoly) -> KAnalysis {
    if residual.is_zero() {
        return KAnalysis::Identically;
    }
    let mut candidates: Vec<Scalar> = Vec::new();
    let mut complete = false;
    for (_, c) in residual.terms() {
        let by_power = c.coefficients_in(Var::K);
        let lo = *by_power.keys().next().expect("nonzero");
        let hi = *by_power.keys().next_back().expect("nonzero");
        let coeff = |e: i32| by_power.get(&(lo + e)).cloned().unwrap_or_default();
        let mut roots = Vec::new();
        if lo > 0 {
            roots.push(Scalar::zero());
        }
        let found_all = match hi - lo {
            0 => true,
            1 => match (-&coeff(0)).checked_div(&coeff(1)) {
                Ok(r) => {
                    roots.push(r);
                    true
                }
                Err(_) => false,
            },
            2 => match quadratic_roots(&coeff(2), &coeff(1), &coeff(0)) {
                Some(rs) => {
                    roots.extend(rs);
                    true
                }
                None => false,
            },
            _ => false,
        };
        for r in roots {
            if !candidates.contains(&r) {
                candidates.push(r);
            }
        }
        complete |= found_all && lo >= 0;
    }
    let verified: Vec<Scalar> = candidates
        .into_iter()
        .filter(|k| {
            residual
                .terms()
                .all(|(_, c)| c.substitute(Var::K, k).map(|v| v.is_zero()).unwrap_or(false))
        })
        .collect();
    let mut sorted: Vec<(String, Scalar)> = verified.into_iter().map(|s| (s.to_string(), s)).collect();
    sorted.sort_by(|a, b| a.0.cmp(&b.0));
    let verified = sorted.into_iter().map(|(_, s)| s).collect();
    if complete {
        KAnalysis::Roots(verified)
    } else {
        KAnalysis::Undetermined { verified }
    }
}

fn quadratic_roots(a: &Scalar, b: &Scalar, c: &Scalar) -> Option<Vec<Scalar>> {
    let disc = &(b * b) - &(&(a * c) * &Scalar::int(4));
    let root = disc.sqrt().ok()?;
    let two_a_inv = (a * &Scalar::int(2)).inv().ok()?;
    let plus = &(&-b + &root) * &two_a_inv;
    let minus = &(&-b - &root) * &two_a_inv;
    Some(if plus == minus { vec![plus] } else { vec![plus, minus] })
}

/// Distinct letters used by a polynomial.
pub fn letters(p: &NcPoly) -> BTreeSet<u16> {
    p.terms().flat_map(|(w, _)| w.letters().to_vec()).collect()
}

/// Largest coefficient modulus of a residual at `q` with a fixed `k`.
pub fn residual_size(p: &NcPoly, q: f64, k: f64) -> f64 {
    p.max_abs_at(&EvalEnv::at_q(q).with_k(k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncrewrite::DEFAULT_BUDGET;
    use crate::qclifford::build_q_gammas;

    #[test]
    fn rhat_shape() {
        let r = rhat_symbolic();
        assert_eq!(r.get(0, 0), &Scalar::q());
        assert_eq!(r.get(3, 3), &Scalar::q());
        assert_eq!(r.get(1, 2), &Scalar::one());
        assert!(hecke_residual(&r, &Scalar::q(), &Scalar::q().inv().unwrap()).is_zero());
        assert!(braid_residual(&r).is_zero());
        let one = build_rhat(&Scalar::one(), &Scalar::one());
        assert_eq!(one, flip_matrix());
    }

    #[test]
    fn seven_relations() {
        assert_eq!(linear_relations().len(), 7);
        let ids: BTreeSet<_> = linear_relations().iter().map(LinearRelation::id).collect();
        assert_eq!(ids.len(), 7);
    }

    #[test]
    fn classical_reflection_is_commutation() {
        let alg = reflection_rules(&flip_matrix(), &standard_epsilon(), &Scalar::one(), 1, SpinorConvention::A).unwrap();
        assert_eq!(alg.rules.rules().count(), 4);
        let p = NcPoly::word(&[alg.z(0, 1), alg.zbar(0, 0)]);
        let nf = alg.rules.normal_form(&p, DEFAULT_BUDGET).unwrap();
        assert_eq!(nf, NcPoly::word(&[alg.zbar(0, 0), alg.z(0, 1)]));
    }

    #[test]
    fn prefactor_squared() {
        let p = current_prefactor();
        let expect = (&Scalar::q_half_pow(4) * &Scalar::big_q()).inv().unwrap();
        assert_eq!(&p * &p, expect);
    }

    #[test]
    fn quadratic_runs_under_both_conventions() {
        let gs = build_q_gammas();
        let k = Scalar::var(Var::K);
        for conv in [SpinorConvention::A, SpinorConvention::B] {
            let alg = reflection_rules(&rhat_symbolic(), &standard_epsilon(), &k, 2, conv).unwrap();
            let r = quadratic_residual(&gs, &alg, &standard_epsilon(), 0, 1, DEFAULT_BUDGET).unwrap();
            assert!(r.terms().all(|(w, _)| w.len() == 4));
            let _ = k_analysis(&r);
        }
    }
}
