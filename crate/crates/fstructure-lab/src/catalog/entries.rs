use nalgebra::DMatrix;

use super::sphere::{cross_e7_matrix, Stereographic};
use crate::error::{Error, Result};
use crate::fstructure::WeakMetricFStructureField;
use crate::geometry::{ChartManifold, SamplingDomain, TensorField};
use crate::jets::ScalarField;

/// Chart radius for S⁶ samples.
pub const S6_RADIUS: f64 = 2.0;
/// Chart radius for S⁵ samples.
pub const S5_RADIUS: f64 = 1.5;
/// Half-width of the coordinate box on flat factors.
pub const FLAT_HALF_WIDTH: f64 = 1.0;

fn constant_op(m: &DMatrix<f64>) -> TensorField {
    let rows: Vec<Vec<f64>> = (0..m.nrows()).map(|a| (0..m.ncols()).map(|b| m[(a, b)]).collect()).collect();
    TensorField::constant_operator(&rows).expect("square constant operator")
}

fn unit(k: usize, d: usize) -> Vec<ScalarField> {
    (0..d).map(|i| ScalarField::constant(if i == k { 1.0 } else { 0.0 })).collect()
}

/// Standard complex structure on ℝ^{2n}: `e_{2j} ↦ e_{2j+1}`, `e_{2j+1} ↦ −e_{2j}`,
/// block `j` scaled by `c[j]`; padded with zeros to size `d`.
fn block_rotation(c: &[f64], d: usize) -> DMatrix<f64> {
    let mut m = DMatrix::zeros(d, d);
    for (j, cj) in c.iter().enumerate() {
        m[(2 * j + 1, 2 * j)] = *cj;
        m[(2 * j, 2 * j + 1)] = -cj;
    }
    m
}

/// Euclidean `ℝ^{2n+s}` with `f = ⊕ √λ_j J` on `𝒟` and `Q = ⊕ λ_j Id ⊕ Id`.
pub fn flat_model(n: usize, s: usize, scales: &[f64]) -> Result<WeakMetricFStructureField> {
    if n == 0 {
        return Err(Error::InvalidParameter("flat model needs n >= 1".into()));
    }
    if scales.len() != n {
        return Err(Error::InvalidParameter(format!("flat model with n = {n} needs {n} scales, got {}", scales.len())));
    }
    if let Some(bad) = scales.iter().find(|l| !(**l > 0.0 && l.is_finite())) {
        return Err(Error::InvalidParameter(format!("block scale {bad} is not positive")));
    }
    let d = 2 * n + s;
    let roots: Vec<f64> = scales.iter().map(|l| l.sqrt()).collect();
    let f = block_rotation(&roots, d);
    let mut q = DMatrix::identity(d, d);
    for (j, l) in scales.iter().enumerate() {
        q[(2 * j, 2 * j)] = *l;
        q[(2 * j + 1, 2 * j + 1)] = *l;
    }
    let host = ChartManifold::euclidean(&format!("R{d}"), n, s, SamplingDomain::cube(d, FLAT_HALF_WIDTH));
    let xi = (0..s).map(|i| TensorField::vector(unit(2 * n + i, d))).collect();
    let eta = (0..s).map(|i| TensorField::covector(unit(2 * n + i, d))).collect();
    let scales_txt: Vec<String> = scales.iter().map(|l| format!("{l}")).collect();
    WeakMetricFStructureField::new(
        &format!("flat:n={n},s={s},scales={}", scales_txt.join(",")),
        host,
        constant_op(&f),
        constant_op(&q),
        xi,
        eta,
    )
}

/// Round S⁶ with `J(x)v = x × v`, in the stereographic chart.
pub fn s6_nearly_kahler() -> Result<WeakMetricFStructureField> {
    let st = Stereographic::new(6);
    let host = st.chart("S6", 3, 0, S6_RADIUS)?;
    let j = st.cross_operator()?;
    WeakMetricFStructureField::new("s6", host, j, TensorField::constant_operator(&identity_rows(6))?, vec![], vec![])
}

fn identity_rows(d: usize) -> Vec<Vec<f64>> {
    (0..d).map(|a| (0..d).map(|b| if a == b { 1.0 } else { 0.0 }).collect()).collect()
}

/// Round S⁵ = S⁶ ∩ {x₇ = 0} with `ξ = x × e₇` and `f` the tangential part of `x ×`.
pub fn s5_nearly_cosymplectic() -> Result<WeakMetricFStructureField> {
    let st = Stereographic::new(5);
    let host = st.chart("S5", 2, 1, S5_RADIUS)?;
    let f = st.cross_operator()?;
    let xi = st.linear_field(&cross_e7_matrix());
    let eta = st.lower(&xi);
    WeakMetricFStructureField::new("s5", host, f, TensorField::constant_operator(&identity_rows(5))?, vec![xi], vec![eta])
}

fn is_constant_identity(q: &TensorField) -> bool {
    let d = q.dim;
    q.components.iter().enumerate().all(|(k, c)| c.as_const() == Some(if k / d == k % d { 1.0 } else { 0.0 }))
}

/// `Q̃ = λ² Id + (1 − λ²) η ⊗ ξ` as field expressions.
fn scaled_q(lambda: f64, xi: &TensorField, eta: &TensorField) -> TensorField {
    let d = xi.dim;
    let l2 = lambda * lambda;
    let rows = (0..d)
        .map(|a| {
            (0..d)
                .map(|b| {
                    let diag = if a == b { l2 } else { 0.0 };
                    &((1.0 - l2) * &(&xi.components[a] * &eta.components[b])) + diag
                })
                .collect()
        })
        .collect();
    TensorField::operator(rows).expect("square operator")
}

/// `f ↦ λf`, `Q ↦ λ² Id + (1 − λ²) η ⊗ ξ`. Defined for `s = 1`, `Q = Id` inputs.
pub fn scale_structure(s: &WeakMetricFStructureField, lambda: f64) -> Result<WeakMetricFStructureField> {
    if !(lambda > 0.0 && lambda.is_finite()) {
        return Err(Error::InvalidParameter(format!("scale {lambda} is not positive")));
    }
    if s.s() != 1 || !is_constant_identity(&s.q) {
        return Err(Error::InvalidParameter("scaling needs a structure with s = 1 and Q = Id".into()));
    }
    let f = TensorField { components: s.f.components.iter().map(|c| lambda * c).collect(), ..s.f.clone() };
    let q = scaled_q(lambda, &s.xi[0], &s.eta[0]);
    let name = if s.name == "s5" { format!("s5-scaled:lambda={lambda}") } else { format!("{}|scaled:lambda={lambda}", s.name) };
    WeakMetricFStructureField::new(&name, s.host.clone(), f, q, s.xi.clone(), s.eta.clone())
}

/// Second structure of the rotated-pair construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RotationPair {
    /// `f₂ = ½ f₁ + (√3/2) K`, `K = e₁₃ − e₂₄`; here `ψ = −Id` on `𝒟`.
    SelfDual,
    /// `f₂ = e₁₃ + e₂₄`, commuting with `f₁`; `ψ` has eigenvalues `±2` on `𝒟`.
    AntiSelfDual,
}

/// Skew generator with `e_a ↦ e_b`, `e_b ↦ −e_a`.
fn rot(m: &mut DMatrix<f64>, a: usize, b: usize, c: f64) {
    m[(b, a)] += c;
    m[(a, b)] -= c;
}

/// The two constant structure tensors on ℝ⁵ of the rotated construction.
pub fn rotation_pair(pair: RotationPair) -> (DMatrix<f64>, DMatrix<f64>) {
    let d = 5;
    let mut f1 = DMatrix::zeros(d, d);
    rot(&mut f1, 0, 1, 1.0);
    rot(&mut f1, 2, 3, 1.0);
    let mut f2 = DMatrix::zeros(d, d);
    match pair {
        RotationPair::SelfDual => {
            let w = 3f64.sqrt() / 2.0;
            f2 += &f1 * 0.5;
            rot(&mut f2, 0, 2, w);
            rot(&mut f2, 1, 3, -w);
        }
        RotationPair::AntiSelfDual => {
            rot(&mut f2, 0, 2, 1.0);
            rot(&mut f2, 1, 3, 1.0);
        }
    }
    (f1, f2)
}

/// Smallest eigenvalue an SPD `Q` may have.
pub const SPD_MARGIN: f64 = 1e-8;

/// `f = cos t f₁ + sin t f₂`, `Q = Id − sin t cos t ψ` on flat ℝ⁵.
pub fn rotate_two_structures(t: f64, pair: RotationPair) -> Result<WeakMetricFStructureField> {
    if !t.is_finite() {
        return Err(Error::InvalidParameter("rotation angle must be finite".into()));
    }
    let (f1, f2) = rotation_pair(pair);
    let psi = &f1 * &f2 + &f2 * &f1;
    if psi.iter().all(|x| x.abs() < 1e-12) {
        return Err(Error::InvalidParameter("the chosen pair has psi = 0".into()));
    }
    let (st, ct) = t.sin_cos();
    let f = &f1 * ct + &f2 * st;
    let q = DMatrix::identity(5, 5) - &psi * (st * ct);
    let qs = (&q + q.transpose()) * 0.5;
    let min = qs.symmetric_eigen().eigenvalues.iter().cloned().fold(f64::INFINITY, f64::min);
    if min <= SPD_MARGIN {
        return Err(Error::InvalidParameter(format!(
            "Q = Id - sin t cos t psi is not positive definite at t = {t} (min eigenvalue {min:e})"
        )));
    }
    let host = ChartManifold::euclidean("R5", 2, 1, SamplingDomain::cube(5, FLAT_HALF_WIDTH));
    let tag = match pair {
        RotationPair::SelfDual => "",
        RotationPair::AntiSelfDual => ",pair=asd",
    };
    WeakMetricFStructureField::new(
        &format!("rotated:t={t}{tag}"),
        host,
        constant_op(&f),
        constant_op(&q),
        vec![TensorField::vector(unit(4, 5))],
        vec![TensorField::covector(unit(4, 5))],
    )
}

/// `M̄ × ℝˢ` with `ξ_i = ∂_{y^i}`, `f = (f̄, 0)`, `Q = (Q̄, Id)`.
pub fn product_with_euclidean(base: &WeakMetricFStructureField, s: usize) -> Result<WeakMetricFStructureField> {
    if s == 0 {
        return Err(Error::InvalidParameter("product needs s >= 1".into()));
    }
    if base.s() != 0 {
        return Err(Error::InvalidParameter("product base must be an almost Hermitian structure (s = 0)".into()));
    }
    let db = base.dim();
    let d = db + s;
    let flat = ChartManifold::euclidean("Rs", 0, s, SamplingDomain::cube(s, FLAT_HALF_WIDTH));
    let host = base.host.product(&flat, &format!("{}xR{s}", base.host.name), base.n(), s)?;
    let f = base.f.embed(0, d)?;
    let mut q = base.q.embed(0, d)?;
    for i in db..d {
        q.components[i * d + i] = ScalarField::one();
    }
    let xi = (0..s).map(|i| TensorField::vector(unit(db + i, d))).collect();
    let eta = (0..s).map(|i| TensorField::covector(unit(db + i, d))).collect();
    let name = match base.name.as_str() {
        "s6" => format!("product-s6:s={s}"),
        other => format!("product-{}|s={s}", other),
    };
    WeakMetricFStructureField::new(&name, host, f, q, xi, eta)
}

/// `S⁵ × ℝ⁴` with `f = λ f_B ⊕ λ J`, `Q = λ² Id + (1 − λ²) η ⊗ ξ`.
pub fn product_b5_times_nk(lambda: f64) -> Result<WeakMetricFStructureField> {
    if !(lambda > 0.0 && lambda.is_finite()) {
        return Err(Error::InvalidParameter(format!("scale {lambda} is not positive")));
    }
    let b = s5_nearly_cosymplectic()?;
    let d = 9;
    let nk = ChartManifold::euclidean("R4", 2, 0, SamplingDomain::cube(4, FLAT_HALF_WIDTH));
    let host = b.host.product(&nk, "S5xR4", 4, 1)?;
    let mut f = b.f.embed(0, d)?;
    for c in f.components.iter_mut() {
        *c = lambda * &*c;
    }
    let jn = block_rotation(&[lambda, lambda], 4);
    for a in 0..4 {
        for c in 0..4 {
            if jn[(a, c)] != 0.0 {
                f.components[(5 + a) * d + 5 + c] = ScalarField::constant(jn[(a, c)]);
            }
        }
    }
    let xi = b.xi[0].embed(0, d)?;
    let eta = b.eta[0].embed(0, d)?;
    let q = scaled_q(lambda, &xi, &eta);
    WeakMetricFStructureField::new(&format!("product-b5-nk:lambda={lambda}"), host, f, q, vec![xi], vec![eta])
}

/// Negative control: S⁵ with `f + ε u₁ Id`, which breaks skewness and the
/// nearly-𝒞 condition by a coordinate-dependent symmetric part.
pub fn s5_perturbed(eps: f64) -> Result<WeakMetricFStructureField> {
    let b = s5_nearly_cosymplectic()?;
    let d = b.dim();
    let bump = eps * &ScalarField::coord(0);
    let mut f = b.f.clone();
    for a in 0..d {
        f.components[a * d + a] = &f.components[a * d + a] + &bump;
    }
    WeakMetricFStructureField::new(&format!("s5-perturbed:eps={eps}"), b.host.clone(), f, b.q.clone(), b.xi.clone(), b.eta.clone())
}

/// Ambient rotation field `x ↦ A x` on S⁶ for a skew 7×7 `A`.
pub fn s6_rotation_field(a: &[Vec<f64>]) -> TensorField {
    Stereographic::new(6).linear_field(a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fstructure::AXIOM_TOL;
    use crate::multilinear::{sym_eigen, DEFAULT_CLUSTER_TOL};

    fn worst_axiom(s: &WeakMetricFStructureField, count: usize) -> f64 {
        s.sample_points(count, 0x5EED).iter().map(|p| s.at(p).unwrap().axioms().max()).fold(0.0, f64::max)
    }

    #[test]
    fn flat_axioms_exact() {
        let s = flat_model(3, 2, &[1.0, 4.0, 9.0]).unwrap();
        assert_eq!(worst_axiom(&s, 4), 0.0);
    }

    #[test]
    fn flat_rejects_bad_scales() {
        assert!(matches!(flat_model(2, 1, &[1.0, 0.0]), Err(Error::InvalidParameter(_))));
        assert!(matches!(flat_model(2, 1, &[1.0]), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn s6_j_squared() {
        let s = s6_nearly_kahler().unwrap();
        for p in s.sample_points(6, 1) {
            let sp = s.at(&p).unwrap();
            let j2 = &sp.f * &sp.f + sp.identity();
            assert!(crate::fstructure::max_abs(&j2) < 1e-10);
        }
        assert!(worst_axiom(&s, 6) < AXIOM_TOL);
    }

    #[test]
    fn s5_axioms_and_spectrum() {
        let s = s5_nearly_cosymplectic().unwrap();
        assert!(worst_axiom(&s, 6) < AXIOM_TOL);
        for p in s.sample_points(4, 2) {
            let sp = s.at(&p).unwrap();
            let h2 = &sp.h[0] * &sp.h[0];
            let spec = sym_eigen(&h2, sp.g(), DEFAULT_CLUSTER_TOL).unwrap();
            let shape = spec.shape();
            assert_eq!(shape.len(), 2, "{shape:?}");
            assert!(shape[0].0.abs() < 1e-9 && shape[0].1 == 1);
            assert!((shape[1].0 + 1.0).abs() < 1e-9 && shape[1].1 == 4);
        }
    }

    #[test]
    fn scaled_and_products_satisfy_axioms() {
        let b = s5_nearly_cosymplectic().unwrap();
        assert!(worst_axiom(&scale_structure(&b, 2.0).unwrap(), 3) < AXIOM_TOL);
        assert!(worst_axiom(&product_with_euclidean(&s6_nearly_kahler().unwrap(), 2).unwrap(), 3) < AXIOM_TOL);
        assert!(worst_axiom(&product_b5_times_nk(2.0).unwrap(), 3) < AXIOM_TOL);
    }

    #[test]
    fn scaling_needs_the_right_shape() {
        let s6 = s6_nearly_kahler().unwrap();
        assert!(matches!(scale_structure(&s6, 2.0), Err(Error::InvalidParameter(_))));
        let b = s5_nearly_cosymplectic().unwrap();
        assert!(matches!(scale_structure(&b, -1.0), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn rotated_pairs() {
        let quarter = std::f64::consts::FRAC_PI_4;
        let s = rotate_two_structures(quarter, RotationPair::SelfDual).unwrap();
        assert!(worst_axiom(&s, 2) < 1e-15);
        assert!(matches!(rotate_two_structures(quarter, RotationPair::AntiSelfDual), Err(Error::InvalidParameter(_))));
        assert!(rotate_two_structures(0.1, RotationPair::AntiSelfDual).is_ok());
    }

    #[test]
    fn round_sphere_curvature() {
        let s = s6_nearly_kahler().unwrap();
        let p = &s.sample_points(1, 3)[0];
        let sp = s.at(p).unwrap();
        let x = [1.0, 0.2, 0.0, -0.3, 0.0, 0.1];
        let y = [0.0, 1.0, 0.5, 0.0, 0.2, 0.0];
        assert!((sp.geo.sectional(&x, &y) - 1.0).abs() < 1e-8);

        let b = s5_nearly_cosymplectic().unwrap();
        let p = &b.sample_points(1, 3)[0];
        let sp = b.at(p).unwrap();
        let u = [0.3, -1.0, 0.2, 0.5, 0.1];
        let v = [1.0, 0.4, 0.0, -0.2, 0.7];
        assert!((sp.geo.ricci(&u, &v) - 4.0 * sp.ip(&u, &v)).abs() < 1e-8);
    }
}
