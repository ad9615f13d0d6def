use super::chart::ChartManifold;
use super::connection::LocalGeometry;
use super::fields::{contract_last, nabla, nabla2, TensorField};
use crate::error::{Error, Result};
use crate::jets::{seed_point, ScalarField};
use crate::multilinear::{binomial, index_of, multi_indices, sort_with_sign, KForm, PointTensor};

/// Killing precondition tolerance for [`killing_curvature_residual`].
pub const KILLING_TOL: f64 = 1e-8;

fn check_field(m: &ChartManifold, field: &TensorField) -> Result<()> {
    if field.dim != m.dim() {
        return Err(Error::ShapeError(format!("field of dimension {} on a {}-dimensional chart", field.dim, m.dim())));
    }
    Ok(())
}

fn check_vec(m: &ChartManifold, v: &[f64]) -> Result<()> {
    if v.len() != m.dim() {
        return Err(Error::ShapeError(format!("vector of length {} on a {}-dimensional chart", v.len(), m.dim())));
    }
    Ok(())
}

/// `∇_dir T` at `p`.
pub fn covariant_derivative(m: &ChartManifold, field: &TensorField, dir: &[f64], p: &[f64]) -> Result<PointTensor> {
    check_field(m, field)?;
    check_vec(m, dir)?;
    let seeds = seed_point(p, m.dim())?;
    let geo = LocalGeometry::with_seeds(m, p, &seeds)?;
    let jet = field.jet(&seeds)?;
    let full = nabla(&jet, &geo.gamma);
    PointTensor::new(field.contravariant, field.covariant, m.dim(), contract_last(&full, m.dim(), dir), p)
}

/// `∇²_{X,Y} T = ∇_X ∇_Y T − ∇_{∇_X Y} T` at `p`, with `X, Y` extended as
/// coordinate-constant fields.
pub fn second_covariant_derivative(m: &ChartManifold, field: &TensorField, x: &[f64], y: &[f64], p: &[f64]) -> Result<PointTensor> {
    check_field(m, field)?;
    check_vec(m, x)?;
    check_vec(m, y)?;
    let d = m.dim();
    let seeds = seed_point(p, d)?;
    let geo = LocalGeometry::with_seeds(m, p, &seeds)?;
    let jet = field.jet(&seeds)?;
    let full = nabla2(&jet, &geo.gamma, &geo.dgamma);
    let over_x = contract_last(&full, d, x);
    PointTensor::new(field.contravariant, field.covariant, d, contract_last(&over_x, d, y), p)
}

/// `g(∇_X ζ, Y) + g(∇_Y ζ, X)`.
pub fn killing_residual(m: &ChartManifold, zeta: &TensorField, p: &[f64], x: &[f64], y: &[f64]) -> Result<f64> {
    if zeta.contravariant != 1 || zeta.covariant != 0 {
        return Err(Error::ShapeError("Killing residual needs a vector field".into()));
    }
    check_field(m, zeta)?;
    let seeds = seed_point(p, m.dim())?;
    let geo = LocalGeometry::with_seeds(m, p, &seeds)?;
    let h = nabla(&zeta.jet(&seeds)?, &geo.gamma);
    let d = m.dim();
    let hx = contract_last(&h, d, x);
    let hy = contract_last(&h, d, y);
    Ok(geo.inner(&hx, y) + geo.inner(&hy, x))
}

/// `∇²_{X,Y} ζ − R(X, ζ)Y`. Fails with `NotKilling` when `ζ` is not Killing
/// at `p` to within `tol`, checked on all coordinate pairs.
pub fn killing_curvature_residual(m: &ChartManifold, zeta: &TensorField, p: &[f64], x: &[f64], y: &[f64], tol: f64) -> Result<Vec<f64>> {
    if zeta.contravariant != 1 || zeta.covariant != 0 {
        return Err(Error::ShapeError("Killing residual needs a vector field".into()));
    }
    check_field(m, zeta)?;
    check_vec(m, x)?;
    check_vec(m, y)?;
    let d = m.dim();
    let seeds = seed_point(p, d)?;
    let geo = LocalGeometry::with_seeds(m, p, &seeds)?;
    let jet = zeta.jet(&seeds)?;
    let h = nabla(&jet, &geo.gamma);
    // g(∇_a ζ, ∂_b) + g(∇_b ζ, ∂_a) = (g h)_{ba} + (g h)_{ab}
    let mut worst: f64 = 0.0;
    for a in 0..d {
        for b in 0..d {
            let mut s = 0.0;
            for k in 0..d {
                s += geo.g[(b, k)] * h[k * d + a] + geo.g[(a, k)] * h[k * d + b];
            }
            worst = worst.max(s.abs());
        }
    }
    if worst > tol {
        return Err(Error::NotKilling { residual: worst });
    }
    let full = nabla2(&jet, &geo.gamma, &geo.dgamma);
    let lhs = contract_last(&contract_last(&full, d, x), d, y);
    let rhs = geo.r_op(x, &jet.value, y);
    Ok(lhs.iter().zip(&rhs).map(|(a, b)| a - b).collect())
}

/// Differential form field with one expression per increasing multi-index.
#[derive(Debug, Clone, PartialEq)]
pub struct FormField {
    pub degree: usize,
    pub dim: usize,
    pub components: Vec<ScalarField>,
}

impl FormField {
    pub fn new(degree: usize, dim: usize, components: Vec<ScalarField>) -> Result<Self> {
        if degree > dim {
            return Err(Error::DegreeError(format!("degree {degree} in dimension {dim}")));
        }
        if components.len() != binomial(dim, degree) {
            return Err(Error::ShapeError(format!(
                "a {degree}-form in dimension {dim} has {} components, got {}",
                binomial(dim, degree),
                components.len()
            )));
        }
        Ok(FormField { degree, dim, components })
    }

    pub fn from_covector(c: &TensorField) -> Result<Self> {
        if c.contravariant != 0 || c.covariant != 1 {
            return Err(Error::ShapeError("expected a covector field".into()));
        }
        Self::new(1, c.dim, c.components.clone())
    }

    /// Full covariant tensor field with the antisymmetric components filled in.
    pub fn as_tensor(&self) -> TensorField {
        let d = self.dim;
        let k = self.degree;
        let mut comps = vec![ScalarField::zero(); d.pow(k as u32)];
        for flat in 0..comps.len() {
            let mut idx = vec![0; k];
            let mut rem = flat;
            for slot in (0..k).rev() {
                idx[slot] = rem % d;
                rem /= d;
            }
            if let Some((sorted, sign)) = sort_with_sign(&idx) {
                let c = &self.components[index_of(&sorted, d)];
                comps[flat] = if sign > 0.0 { c.clone() } else { -c };
            }
        }
        TensorField { contravariant: 0, covariant: k, dim: d, components: comps }
    }

    /// Symbolic exterior derivative (component formula, determinant convention).
    pub fn d(&self) -> Result<FormField> {
        let d = self.dim;
        let k = self.degree + 1;
        if k > d {
            return Err(Error::DegreeError(format!("d of a top-degree form in dimension {d}")));
        }
        let comps = multi_indices(d, k)
            .iter()
            .map(|idx| {
                let mut acc = ScalarField::zero();
                for t in 0..k {
                    let rest: Vec<usize> = idx.iter().enumerate().filter(|(u, _)| *u != t).map(|(_, &i)| i).collect();
                    let term = self.components[index_of(&rest, d)].diff(idx[t]);
                    acc = if t % 2 == 0 { &acc + &term } else { &acc - &term };
                }
                acc
            })
            .collect();
        FormField::new(k, d, comps)
    }

    pub fn value_at(&self, p: &[f64]) -> Result<KForm> {
        let comps = self.components.iter().map(|c| c.value_at(p)).collect::<Result<Vec<_>>>()?;
        Ok(KForm { degree: self.degree, dim: self.dim, components: comps, point: p.to_vec() })
    }
}

/// Alternation of a covariant derivative. `nab[(I*d + c)]` holds `∇_c ω[I]`
/// for a full `(0,k)` array `ω`; the result is
/// `dω(v_0..v_k) = Σ_t (−1)^t (∇_{v_t} ω)(v_0..v̂_t..v_k)`.
pub fn exterior_from_covariant(nab: &[f64], d: usize, k: usize, point: &[f64]) -> KForm {
    let idxs = multi_indices(d, k + 1);
    let comps = idxs
        .iter()
        .map(|idx| {
            let mut acc = 0.0;
            for t in 0..=k {
                let flat = idx.iter().enumerate().filter(|(u, _)| *u != t).fold(0, |a, (_, &i)| a * d + i);
                let term = nab[flat * d + idx[t]];
                acc += if t % 2 == 0 { term } else { -term };
            }
            acc
        })
        .collect();
    KForm { degree: k + 1, dim: d, components: comps, point: point.to_vec() }
}

/// Tolerance for the agreement of the two exterior-derivative routes,
/// relative to `1 + max |dω|`.
pub const EXTERIOR_CROSS_TOL: f64 = 1e-9;

/// `dω` at `p` for a 1- or 2-form: once by antisymmetrizing partials and once
/// from the Levi-Civita covariant derivative; the two must agree.
pub fn exterior_derivative(form: &FormField, m: &ChartManifold, p: &[f64]) -> Result<KForm> {
    if form.degree == 0 || form.degree > 2 {
        return Err(Error::DegreeError(format!("exterior_derivative takes 1- or 2-forms, got degree {}", form.degree)));
    }
    if form.dim != m.dim() {
        return Err(Error::ShapeError("form and chart dimensions differ".into()));
    }
    let d = m.dim();
    let k = form.degree;
    let seeds = seed_point(p, d)?;
    let geo = LocalGeometry::with_seeds(m, p, &seeds)?;
    let jet = form.as_tensor().jet(&seeds)?;
    let partial = exterior_from_covariant(&jet.grad, d, k, p);
    let covariant = exterior_from_covariant(&nabla(&jet, &geo.gamma), d, k, p);
    let deviation = partial.components.iter().zip(&covariant.components).fold(0.0f64, |a, (x, y)| a.max((x - y).abs()));
    if deviation > EXTERIOR_CROSS_TOL * (1.0 + partial.max_abs()) {
        return Err(Error::CrossCheckMismatch { deviation });
    }
    Ok(partial)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::chart::SamplingDomain;

    fn plane() -> ChartManifold {
        ChartManifold::euclidean("r2", 1, 0, SamplingDomain::cube(2, 2.0))
    }

    #[test]
    fn d_of_x_dy() {
        let w = FormField::new(1, 2, vec![ScalarField::zero(), ScalarField::coord(0)]).unwrap();
        let dw = exterior_derivative(&w, &plane(), &[0.3, -0.7]).unwrap();
        assert_eq!(dw.components, vec![1.0]);
    }

    #[test]
    fn exact_form_is_closed() {
        // ω = d(sin(x) y²)
        let (x, y) = (ScalarField::coord(0), ScalarField::coord(1));
        let f = &x.sin() * &(&y * &y);
        let w = FormField::new(1, 2, vec![f.diff(0), f.diff(1)]).unwrap();
        let dw = exterior_derivative(&w, &plane(), &[0.4, 1.1]).unwrap();
        assert!(dw.max_abs() < 1e-10);
    }

    #[test]
    fn radial_field_is_not_killing() {
        let line = ChartManifold::euclidean("r1", 0, 1, SamplingDomain::cube(1, 2.0));
        let radial = TensorField::vector(vec![ScalarField::coord(0)]);
        assert_eq!(killing_residual(&line, &radial, &[0.5], &[1.0], &[1.0]).unwrap(), 2.0);
        let translation = TensorField::vector(vec![ScalarField::one()]);
        assert_eq!(killing_residual(&line, &translation, &[0.5], &[1.0], &[1.0]).unwrap(), 0.0);
        assert!(matches!(killing_curvature_residual(&line, &radial, &[0.5], &[1.0], &[1.0], KILLING_TOL), Err(Error::NotKilling { .. })));
    }

    #[test]
    fn linear_field_has_zero_second_derivative() {
        let (x, y) = (ScalarField::coord(0), ScalarField::coord(1));
        let v = TensorField::vector(vec![&(2.0 * &x) - &y, &x + &(3.0 * &y)]);
        let t = second_covariant_derivative(&plane(), &v, &[1.0, 0.5], &[-0.2, 1.0], &[0.1, 0.2]).unwrap();
        assert!(t.max_abs() == 0.0);
    }
}
