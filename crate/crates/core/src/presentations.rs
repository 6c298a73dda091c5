//! Concrete presentations: GL_q(2), CH(2), CH_q(2), the two-dimensional affine
//! CH_q(2) irreps and the su(2) action built from them.

use num_complex::Complex64;
use thiserror::Error;

use crate::hopf::{HopfData, HopfError};
use crate::linalg::{pauli, Matrix, Ring};
use crate::ncrewrite::{tensor, NcPoly, RewriteError, RewriteSystem};
use crate::scalars::{Scalar, ScalarError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresentationError {
    #[error("degenerate irrep parameters: {0}")]
    DegenerateParams(String),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Rewrite(#[from] RewriteError),
    #[error(transparent)]
    Hopf(#[from] HopfError),
}

/// How coefficients `c^μ_ν` are read off matrices `M^μ` with entries `[ρ][ν]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ActionConvention {
    /// `c^μ_ν = Σ_ρ M^μ[ρ][ν]`
    RowSum,
    /// `c^μ_ν = Σ_ρ M^μ[ν][ρ]`
    ColumnSum,
    /// `c^μ_ν = M^μ[μ][ν]`
    FixedRow,
    /// `c^μ_ν = M^μ[ν][μ]`
    FixedColumn,
}

impl ActionConvention {
    pub const ALL: [ActionConvention; 4] = [
        ActionConvention::RowSum,
        ActionConvention::ColumnSum,
        ActionConvention::FixedRow,
        ActionConvention::FixedColumn,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            ActionConvention::RowSum => "row-sum",
            ActionConvention::ColumnSum => "column-sum",
            ActionConvention::FixedRow => "fixed-row",
            ActionConvention::FixedColumn => "fixed-column",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|c| c.as_str() == s)
    }

    /// Coefficient table `c[μ][ν]`.
    pub fn coefficients<T: Ring>(&self, ms: &[Matrix<T>]) -> Vec<Vec<T>> {
        let n = ms.first().map_or(0, |m| m.cols());
        ms.iter()
            .enumerate()
            .map(|(mu, m)| {
                (0..n)
                    .map(|nu| match self {
                        ActionConvention::RowSum => {
                            (0..m.rows()).fold(T::zero(), |acc, rho| acc.plus(m.get(rho, nu)))
                        }
                        ActionConvention::ColumnSum => {
                            (0..m.cols()).fold(T::zero(), |acc, rho| acc.plus(m.get(nu, rho)))
                        }
                        ActionConvention::FixedRow => m.get(mu, nu).clone(),
                        ActionConvention::FixedColumn => m.get(nu, mu).clone(),
                    })
                    .collect()
            })
            .collect()
    }
}

fn poly_q(c: Scalar, w: &[u16]) -> NcPoly {
    NcPoly::word(w).scale(&c)
}

pub const GLQ2_NAMES: [&str; 4] = ["a11", "a12", "a21", "a22"];

/// GL_q(2) relations, ordered `a11 < a12 < a21 < a22`.
pub fn glq2_algebra() -> RewriteSystem {
    let qi = Scalar::q().inv().expect("q invertible");
    let q_minus = &Scalar::q() - &qi;
    let rules = [
        (1, 0, poly_q(qi.clone(), &[0, 1])),
        (2, 0, poly_q(qi.clone(), &[0, 2])),
        (2, 1, NcPoly::word(&[1, 2])),
        (3, 1, poly_q(qi.clone(), &[1, 3])),
        (3, 2, poly_q(qi, &[2, 3])),
        (3, 0, NcPoly::word(&[0, 3]).sub(&poly_q(q_minus, &[1, 2]))),
    ];
    let mut rs = RewriteSystem::new(GLQ2_NAMES);
    for (a, b, rhs) in rules {
        rs.add_rule(a, b, rhs).expect("GL_q(2) rules decrease");
    }
    rs
}

/// Matrix coproduct, counit δ_ij, no antipode.
pub fn build_glq2() -> HopfData {
    let rs = glq2_algebra();
    let a = |i: usize, j: usize| NcPoly::gen((2 * i + j) as u16);
    let coproduct = (0..2)
        .flat_map(|i| (0..2).map(move |j| (i, j)))
        .map(|(i, j)| (0..2).fold(NcPoly::zero(), |acc, k| acc.add(&tensor(&[&a(i, k), &a(k, j)], 4))))
        .collect();
    let counit = vec![Scalar::one(), Scalar::zero(), Scalar::zero(), Scalar::one()];
    HopfData::new("glq2", rs, coproduct, counit, vec![None; 4]).expect("arity")
}

pub const CH2_NAMES: [&str; 6] = ["E1", "E2", "E3", "G1", "G2", "G3"];

/// Central letters commute with every later letter; each `(k, kinv)` pair
/// multiplies to 1 in both orders instead.
fn central_and_clifford(rs: &mut RewriteSystem, central: &[u16], inverses: &[(u16, u16)], gammas: [u16; 3]) {
    for &c in central {
        for g in c + 1..rs.len() as u16 {
            if inverses.contains(&(c, g)) {
                rs.add_rule(g, c, NcPoly::one()).expect("decreases");
                rs.add_rule(c, g, NcPoly::one()).expect("decreases");
            } else {
                rs.add_rule(g, c, NcPoly::word(&[c, g])).expect("swap decreases");
            }
        }
    }
    let [g1, g2, g3] = gammas;
    for (hi, lo) in [(g2, g1), (g3, g1), (g3, g2)] {
        rs.add_rule(hi, lo, NcPoly::word(&[lo, hi]).scale(&Scalar::int(-1))).expect("decreases");
    }
    rs.add_rule(g3, g3, NcPoly::one()).expect("decreases");
}

/// CH(2) with letters E1 < E2 < E3 < G1 < G2 < G3.
pub fn ch2_algebra() -> RewriteSystem {
    let mut rs = RewriteSystem::new(CH2_NAMES);
    central_and_clifford(&mut rs, &[0, 1, 2], &[], [3, 4, 5]);
    rs.add_rule(3, 3, NcPoly::gen(0)).expect("decreases");
    rs.add_rule(4, 4, NcPoly::gen(1)).expect("decreases");
    rs
}

pub fn build_ch2() -> HopfData {
    let rs = ch2_algebra();
    let m = 6;
    let one = NcPoly::one();
    let g = NcPoly::gen;
    let primitive = |x: u16| tensor(&[&g(x), &one], m).add(&tensor(&[&one, &g(x)], m));
    let skew = |x: u16| tensor(&[&g(x), &one], m).add(&tensor(&[&g(5), &g(x)], m));
    let coproduct = vec![primitive(0), primitive(1), primitive(2), skew(3), skew(4), tensor(&[&g(5), &g(5)], m)];
    let counit = vec![Scalar::zero(), Scalar::zero(), Scalar::zero(), Scalar::zero(), Scalar::zero(), Scalar::one()];
    let minus = |x: u16| Some(g(x).scale(&Scalar::int(-1)));
    let antipode = vec![minus(0), minus(1), minus(2), Some(NcPoly::word(&[3, 5])), Some(NcPoly::word(&[4, 5])), Some(g(5))];
    HopfData::new("ch2", rs, coproduct, counit, antipode).expect("arity")
}

pub const CHQ2_NAMES: [&str; 10] = ["E1", "E2", "E3", "K1", "K1inv", "K2", "K2inv", "G1", "G2", "G3"];

/// CH_q(2); `K_μ` stands for `q^{E_μ/2}` and `K_μinv` for its inverse.
pub fn chq2_algebra() -> RewriteSystem {
    let mut rs = RewriteSystem::new(CHQ2_NAMES);
    central_and_clifford(&mut rs, &[0, 1, 2, 3, 4, 5, 6], &[(3, 4), (5, 6)], [7, 8, 9]);
    let denom = (&Scalar::q() - &Scalar::q().inv().expect("q invertible")).inv().expect("invertible");
    for (gamma, k, kinv) in [(7u16, 3u16, 4u16), (8, 5, 6)] {
        let bracket = NcPoly::word(&[k, k]).sub(&NcPoly::word(&[kinv, kinv])).scale(&denom);
        rs.add_rule(gamma, gamma, bracket).expect("decreases");
    }
    rs
}

/// Deformed coproduct `ΔΓ_μ = Γ_μ⊗K_μ⁻¹ + K_μΓ₃⊗Γ_μ`; antipode of `Γ_μ` left unspecified.
pub fn build_chq2() -> HopfData {
    let rs = chq2_algebra();
    let m = 10;
    let one = NcPoly::one();
    let g = NcPoly::gen;
    let primitive = |x: u16| tensor(&[&g(x), &one], m).add(&tensor(&[&one, &g(x)], m));
    let grouplike = |x: u16| tensor(&[&g(x), &g(x)], m);
    let deformed = |x: u16, k: u16, kinv: u16| {
        tensor(&[&g(x), &g(kinv)], m).add(&tensor(&[&NcPoly::word(&[k, 9]), &g(x)], m))
    };
    let coproduct = vec![
        primitive(0),
        primitive(1),
        primitive(2),
        grouplike(3),
        grouplike(4),
        grouplike(5),
        grouplike(6),
        deformed(7, 3, 4),
        deformed(8, 5, 6),
        grouplike(9),
    ];
    let mut counit = vec![Scalar::zero(); 3];
    counit.extend(std::iter::repeat_n(Scalar::one(), 4));
    counit.extend([Scalar::zero(), Scalar::zero(), Scalar::one()]);
    let minus = |x: u16| Some(g(x).scale(&Scalar::int(-1)));
    let antipode = vec![minus(0), minus(1), minus(2), Some(g(4)), Some(g(3)), Some(g(6)), Some(g(5)), None, None, Some(g(9))];
    HopfData::new("chq2", rs, coproduct, counit, antipode).expect("arity")
}

/// Group algebra of Z: `g·ginv = ginv·g = 1`, `g` grouplike.
pub fn build_group_toy() -> HopfData {
    let rs = RewriteSystem::new(["g", "ginv"])
        .with_rule(0, 1, NcPoly::one())
        .and_then(|r| r.with_rule(1, 0, NcPoly::one()))
        .expect("decreases");
    let g = NcPoly::gen;
    let coproduct = vec![tensor(&[&g(0), &g(0)], 2), tensor(&[&g(1), &g(1)], 2)];
    HopfData::new("group", rs, coproduct, vec![Scalar::one(), Scalar::one()], vec![Some(g(1)), Some(g(0))])
        .expect("arity")
}

/// Perturbed structure maps that must make one axiom fail each.
pub fn ch2_negative_controls() -> Vec<(&'static str, HopfData)> {
    let base = build_ch2();
    let m = 6;
    let one = NcPoly::one();
    let g = NcPoly::gen;
    let mut coassoc = base.clone();
    coassoc.name = "ch2.neg-coproduct".into();
    coassoc.coproduct[3] = tensor(&[&g(3), &one], m).add(&tensor(&[&g(3), &g(5)], m));
    let mut counit = base.clone();
    counit.name = "ch2.neg-counit".into();
    counit.counit[5] = Scalar::int(-1);
    let mut antipode = base;
    antipode.name = "ch2.neg-antipode".into();
    antipode.antipode[3] = Some(NcPoly::word(&[5, 3]));
    vec![("coassociativity", coassoc), ("counit", counit), ("antipode", antipode)]
}

pub fn glq2_negative_controls() -> Vec<(&'static str, HopfData)> {
    let base = build_glq2();
    let a = NcPoly::gen;
    let mut coassoc = base.clone();
    coassoc.name = "glq2.neg-coproduct".into();
    coassoc.coproduct[0] = tensor(&[&a(0), &a(1)], 4);
    let mut counit = base;
    counit.name = "glq2.neg-counit".into();
    counit.counit[1] = Scalar::one();
    vec![("coassociativity", coassoc), ("counit", counit)]
}

/// Parameters `(z, λ_x, λ_y, q)` of a two-dimensional affine irrep.
#[derive(Clone, Debug, PartialEq)]
pub struct IrrepParams<T> {
    pub z: T,
    pub lambda_x: T,
    pub lambda_y: T,
    pub q: T,
}

/// Index 0 is `x`, index 1 is `y`; outer index is the affine label `i`.
#[derive(Clone, Debug, PartialEq)]
pub struct AffineIrrep<T> {
    pub gamma: [[Matrix<T>; 2]; 2],
    pub gamma3: Matrix<T>,
    /// Values of `q^{E^{(i)}_μ}`.
    pub q_e: [[T; 2]; 2],
    /// Values of `[E^{(i)}_μ]_q`.
    pub bracket: [[T; 2]; 2],
}

/// Scalar operations the irrep builder needs beyond [`Ring`].
pub trait IrrepScalar: Ring {
    fn inverse(&self) -> Result<Self, PresentationError>;
    fn root(&self) -> Result<Self, PresentationError>;
    fn imag_unit() -> Self;
}

impl IrrepScalar for Scalar {
    fn inverse(&self) -> Result<Self, PresentationError> {
        Ok(self.inv()?)
    }
    fn root(&self) -> Result<Self, PresentationError> {
        Ok(self.sqrt()?)
    }
    fn imag_unit() -> Self {
        Scalar::i()
    }
}

impl IrrepScalar for Complex64 {
    fn inverse(&self) -> Result<Self, PresentationError> {
        if self.norm() == 0.0 {
            return Err(PresentationError::DegenerateParams("zero value".into()));
        }
        Ok(self.inv())
    }
    fn root(&self) -> Result<Self, PresentationError> {
        Ok(self.sqrt())
    }
    fn imag_unit() -> Self {
        Complex64::i()
    }
}

/// The five matrix displays as functions of `(z, λ_x, λ_y, q)`.
pub fn build_affine_irrep<T: IrrepScalar>(p: &IrrepParams<T>) -> Result<AffineIrrep<T>, PresentationError> {
    let degenerate = |what: &str| PresentationError::DegenerateParams(what.into());
    let zi = p.z.inverse().map_err(|_| degenerate("z = 0"))?;
    let qi = p.q.inverse().map_err(|_| degenerate("q = 0"))?;
    let dq = p.q.minus(&qi);
    if dq.is_zero() {
        return Err(degenerate("q = ±1"));
    }
    let dqi = dq.inverse().map_err(|_| degenerate("q = ±1"))?;
    let lx_inv = p.lambda_x.inverse().map_err(|_| degenerate("λ_x = 0"))?;
    let ly_inv = p.lambda_y.inverse().map_err(|_| degenerate("λ_y = 0"))?;
    let i = T::imag_unit();
    let z0 = T::zero();
    let m = |a: T, b: T| Matrix::from_rows(vec![vec![z0.clone(), a], vec![b, z0.clone()]]);
    let flip_x0 = m(zi.clone(), p.z.clone());
    let flip_y0 = m(i.times(&zi).negated(), i.times(&p.z));
    let flip_x1 = m(p.z.clone(), zi.clone());
    let flip_y1 = m(i.times(&p.z).negated(), i.times(&zi));
    let ratio = |num: T| num.times(&dqi);
    let bx0 = ratio(lx_inv.minus(&p.lambda_x));
    let by0 = ratio(ly_inv.minus(&p.lambda_y));
    let bx1 = ratio(p.lambda_x.minus(&lx_inv));
    let by1 = ratio(p.lambda_y.minus(&ly_inv));
    let gamma = [
        [flip_x0.scale(&bx0.root()?), flip_y0.scale(&by0.root()?)],
        [flip_x1.scale(&bx1.root()?), flip_y1.scale(&by1.root()?)],
    ];
    let gamma3 = Matrix::from_rows(vec![vec![T::one(), z0.clone()], vec![z0, T::one().negated()]]);
    Ok(AffineIrrep {
        gamma,
        gamma3,
        q_e: [[lx_inv, ly_inv], [p.lambda_x.clone(), p.lambda_y.clone()]],
        bracket: [[bx0, by0], [bx1, by1]],
    })
}

const AXIS: [&str; 2] = ["x", "y"];

/// Residuals of the CH_q(2) relations for each fixed affine index.
pub fn irrep_residuals<T: Ring>(r: &AffineIrrep<T>) -> Vec<(String, Matrix<T>)> {
    let id = Matrix::<T>::identity(2);
    let mut out = Vec::new();
    for i in 0..2 {
        for mu in 0..2 {
            let g = &r.gamma[i][mu];
            let sq = g.matmul(g).expect("2x2").sub(&id.scale(&r.bracket[i][mu])).expect("2x2");
            out.push((format!("square[{i}].{}", AXIS[mu]), sq));
            out.push((format!("anticomm[{i}].{}.3", AXIS[mu]), g.anticommutator(&r.gamma3).expect("2x2")));
        }
        out.push((format!("anticomm[{i}].x.y"), r.gamma[i][0].anticommutator(&r.gamma[i][1]).expect("2x2")));
    }
    out.push(("square.3".into(), r.gamma3.matmul(&r.gamma3).expect("2x2").sub(&id).expect("2x2")));
    out
}

/// Anticommutators between different affine indices; informational only.
pub fn mixed_anticommutators<T: Ring>(r: &AffineIrrep<T>) -> Vec<(String, Matrix<T>)> {
    let mut out = Vec::new();
    for a in 0..2 {
        for b in 0..2 {
            out.push((
                format!("anticomm[0].{}.[1].{}", AXIS[a], AXIS[b]),
                r.gamma[0][a].anticommutator(&r.gamma[1][b]).expect("2x2"),
            ));
        }
    }
    out
}

/// Images `α_{σ1}, α_{σ2}, α_{σ3}` of the su(2) action for affine index `i`.
pub fn su2_action(r: &AffineIrrep<Scalar>, i: usize, conv: ActionConvention) -> [Matrix<Scalar>; 3] {
    let c = conv.coefficients(&r.gamma[i]);
    let [s1, s2, s3] = pauli();
    let sig = [&s1, &s2];
    let image = |nu: usize| {
        (0..2).fold(Matrix::zeros(2, 2), |acc: Matrix<Scalar>, mu| acc.add(&sig[mu].scale(&c[mu][nu])).expect("2x2"))
    };
    [image(0), image(1), s3]
}

/// Published post-action identities as `(label, computed − claimed)`.
pub fn su2_claim_residuals(alpha: &[Matrix<Scalar>; 3]) -> Vec<(String, Matrix<Scalar>)> {
    let id = Matrix::<Scalar>::identity(2);
    let sq = |m: &Matrix<Scalar>| m.matmul(m).expect("2x2");
    let mut out = vec![
        ("square.1 = 0".to_string(), sq(&alpha[0])),
        ("square.2 = 0".to_string(), sq(&alpha[1])),
        ("square.3 = 1".to_string(), sq(&alpha[2]).sub(&id).expect("2x2")),
        ("anticomm.1.3 = 0".to_string(), alpha[0].anticommutator(&alpha[2]).expect("2x2")),
    ];
    for i in 0..2 {
        for j in i..2 {
            let ac = alpha[i].anticommutator(&alpha[j]).expect("2x2");
            out.push((format!("anticomm.{}.{} = 4", i + 1, j + 1), ac.sub(&id.scale(&Scalar::int(4))).expect("2x2")));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::*;
    use crate::ncrewrite::DEFAULT_BUDGET;

    fn rat(n: i64, d: i64) -> Scalar {
        Scalar::frac(n, d)
    }

    #[test]
    fn glq2_has_six_relations() {
        let rs = glq2_algebra();
        assert_eq!(rs.rules().count(), 6);
        let h = build_glq2();
        assert_eq!(h.counit[2], Scalar::zero());
        let expect = tensor(&[&NcPoly::gen(0), &NcPoly::gen(0)], 4).add(&tensor(&[&NcPoly::gen(1), &NcPoly::gen(2)], 4));
        assert_eq!(h.coproduct[0], expect);
    }

    #[test]
    fn glq2_rewrites() {
        let rs = glq2_algebra();
        let qi = Scalar::q().inv().unwrap();
        assert_eq!(rs.normal_form(&NcPoly::word(&[1, 0]), DEFAULT_BUDGET).unwrap(), NcPoly::word(&[0, 1]).scale(&qi));
        assert_eq!(rs.normal_form(&NcPoly::word(&[2, 1]), DEFAULT_BUDGET).unwrap(), NcPoly::word(&[1, 2]));
    }

    #[test]
    fn ch2_axioms() {
        let h = build_ch2();
        let rs = &h.algebra;
        let ac = rs.normal_form(&NcPoly::word(&[3, 4]).add(&NcPoly::word(&[4, 3])), DEFAULT_BUDGET).unwrap();
        assert!(ac.is_zero());
        assert!(check_coassociativity(&h, 3, DEFAULT_BUDGET).unwrap().passed());
        assert!(check_counit(&h, 3, DEFAULT_BUDGET).unwrap().passed());
        assert!(check_antipode(&h, 3, DEFAULT_BUDGET).unwrap().passed());
        assert!(check_bialgebra_compatibility(&h, DEFAULT_BUDGET).unwrap().passed());
    }

    #[test]
    fn chq2_square_and_structure() {
        let h = build_chq2();
        let nf = h.algebra.normal_form(&NcPoly::word(&[7, 7]), DEFAULT_BUDGET).unwrap();
        assert_eq!(nf.len(), 2);
        assert!(check_bialgebra_compatibility(&h, DEFAULT_BUDGET).unwrap().passed());
        assert!(check_coassociativity(&h, 2, DEFAULT_BUDGET).unwrap().passed());
        assert!(check_counit(&h, 2, DEFAULT_BUDGET).unwrap().passed());
        let anti = check_antipode(&h, 2, DEFAULT_BUDGET).unwrap();
        assert_eq!(anti.details["antipode_missing"], "G1,G2");
    }

    #[test]
    fn pinned_square() {
        let p = IrrepParams { z: rat(1, 1), lambda_x: rat(2, 1), lambda_y: rat(3, 1), q: rat(3, 1) };
        let r = build_affine_irrep(&p).unwrap();
        let g = &r.gamma[0][0];
        assert_eq!(g.matmul(g).unwrap(), Matrix::identity(2).scale(&rat(-9, 16)));
        let p2 = IrrepParams { q: rat(2, 1), ..p };
        let r2 = build_affine_irrep(&p2).unwrap();
        let g = &r2.gamma[1][1];
        assert_eq!(g.matmul(g).unwrap(), Matrix::identity(2).scale(&rat(16, 9)));
        assert!(irrep_residuals(&r2).iter().all(|(_, m)| m.is_zero()));
    }

    #[test]
    fn degenerate_q() {
        let p = IrrepParams { z: rat(1, 1), lambda_x: rat(2, 1), lambda_y: rat(3, 1), q: rat(1, 1) };
        assert!(matches!(build_affine_irrep(&p), Err(PresentationError::DegenerateParams(_))));
    }

    #[test]
    fn symbolic_q_irrep() {
        let p = IrrepParams { z: rat(2, 3), lambda_x: rat(5, 1), lambda_y: rat(-1, 2), q: Scalar::q() };
        let r = build_affine_irrep(&p).unwrap();
        assert!(irrep_residuals(&r).iter().all(|(_, m)| m.is_zero()));
    }

    #[test]
    fn su2_sigma3_fixed() {
        let p = IrrepParams { z: rat(1, 1), lambda_x: rat(2, 1), lambda_y: rat(3, 1), q: rat(3, 1) };
        let r = build_affine_irrep(&p).unwrap();
        for conv in ActionConvention::ALL {
            let a = su2_action(&r, 0, conv);
            assert_eq!(a[2].matmul(&a[2]).unwrap(), Matrix::identity(2));
        }
    }
}
