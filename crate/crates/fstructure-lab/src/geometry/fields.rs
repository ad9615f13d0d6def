use crate::error::{Error, Result};
use crate::jets::{Jet2, JetCache, ScalarField};

use super::chart::shift_coords;

/// Tensor field of type `(contravariant, covariant)` with one expression per
/// component, laid out like [`crate::multilinear::PointTensor`].
#[derive(Debug, Clone, PartialEq)]
pub struct TensorField {
    pub contravariant: usize,
    pub covariant: usize,
    pub dim: usize,
    pub components: Vec<ScalarField>,
}

/// Values and partials of a tensor field at one point.
/// `grad[I*d + c] = ∂_c T[I]`, `hess[(I*d + c)*d + e] = ∂_c ∂_e T[I]`.
#[derive(Debug, Clone)]
pub struct TensorJet {
    pub contravariant: usize,
    pub covariant: usize,
    pub dim: usize,
    pub value: Vec<f64>,
    pub grad: Vec<f64>,
    pub hess: Vec<f64>,
}

impl TensorField {
    pub fn new(contravariant: usize, covariant: usize, dim: usize, components: Vec<ScalarField>) -> Result<Self> {
        let want = dim.pow((contravariant + covariant) as u32);
        if components.len() != want {
            return Err(Error::ShapeError(format!("expected {want} component fields, got {}", components.len())));
        }
        if let Some(k) = components.iter().filter_map(|c| c.max_coord()).max() {
            if k >= dim {
                return Err(Error::ShapeError(format!("component references coordinate {k} in dimension {dim}")));
            }
        }
        Ok(TensorField { contravariant, covariant, dim, components })
    }

    pub fn vector(components: Vec<ScalarField>) -> Self {
        let d = components.len();
        TensorField { contravariant: 1, covariant: 0, dim: d, components }
    }

    pub fn covector(components: Vec<ScalarField>) -> Self {
        let d = components.len();
        TensorField { contravariant: 0, covariant: 1, dim: d, components }
    }

    /// (1,1) field from rows `T^a_b = rows[a][b]`.
    pub fn operator(rows: Vec<Vec<ScalarField>>) -> Result<Self> {
        let d = rows.len();
        if rows.iter().any(|r| r.len() != d) {
            return Err(Error::ShapeError("operator rows must form a square matrix".into()));
        }
        Self::new(1, 1, d, rows.into_iter().flatten().collect())
    }

    pub fn constant_operator(m: &[Vec<f64>]) -> Result<Self> {
        Self::operator(m.iter().map(|r| r.iter().map(|&x| ScalarField::constant(x)).collect()).collect())
    }

    pub fn zero(contravariant: usize, covariant: usize, dim: usize) -> Self {
        TensorField { contravariant, covariant, dim, components: vec![ScalarField::zero(); dim.pow((contravariant + covariant) as u32)] }
    }

    pub fn rank(&self) -> usize {
        self.contravariant + self.covariant
    }

    pub fn entry(&self, a: usize, b: usize) -> &ScalarField {
        &self.components[a * self.dim + b]
    }

    pub fn jet(&self, seeds: &[Jet2]) -> Result<TensorJet> {
        self.jet_with(seeds, &mut JetCache::new())
    }

    /// Jet evaluation sharing a memo table with other fields alive alongside `self`.
    pub fn jet_with(&self, seeds: &[Jet2], cache: &mut JetCache) -> Result<TensorJet> {
        let d = self.dim;
        if seeds.len() != d {
            return Err(Error::ShapeError(format!("field of dimension {d} evaluated with {} seeds", seeds.len())));
        }
        let n = self.components.len();
        let mut value = vec![0.0; n];
        let mut grad = vec![0.0; n * d];
        let mut hess = vec![0.0; n * d * d];
        for (i, c) in self.components.iter().enumerate() {
            if let Some(v) = c.as_const() {
                value[i] = v;
                continue;
            }
            let j = c.eval_jet_cached(seeds, cache)?;
            value[i] = j.value;
            grad[i * d..(i + 1) * d].copy_from_slice(&j.gradient);
            hess[i * d * d..(i + 1) * d * d].copy_from_slice(&j.hessian);
        }
        Ok(TensorJet { contravariant: self.contravariant, covariant: self.covariant, dim: d, value, grad, hess })
    }

    pub fn value_at(&self, p: &[f64]) -> Result<Vec<f64>> {
        self.components.iter().map(|c| c.value_at(p)).collect()
    }

    /// Embed into a product chart: `offset` new coordinates before and
    /// `extra_after` after, with zero components in the new slots.
    pub fn embed(&self, offset: usize, total_dim: usize) -> Result<TensorField> {
        let d = self.dim;
        if offset + d > total_dim {
            return Err(Error::ShapeError("embedding does not fit".into()));
        }
        let r = self.rank();
        let mut comps = vec![ScalarField::zero(); total_dim.pow(r as u32)];
        for (flat, c) in self.components.iter().enumerate() {
            let mut rem = flat;
            let mut idx = vec![0; r];
            for k in (0..r).rev() {
                idx[k] = rem % d + offset;
                rem /= d;
            }
            let pos = idx.iter().fold(0, |acc, &i| acc * total_dim + i);
            comps[pos] = shift_coords(c, offset);
        }
        TensorField::new(self.contravariant, self.covariant, total_dim, comps)
    }
}

/// Add the connection terms of `∇_c` applied to `t` into `out`:
/// `+Γ^{a_k}_{c e} t[..e..]` per upper slot, `−Γ^e_{c b_k} t[..e..]` per lower slot.
/// `gamma[(k*d + i)*d + j] = Γ^k_{ij}`.
pub fn connection_terms(contravariant: usize, covariant: usize, d: usize, t: &[f64], gamma: &[f64], c: usize, out: &mut [f64]) {
    let r = contravariant + covariant;
    let n = t.len();
    let mut strides = vec![1usize; r];
    for k in (0..r.saturating_sub(1)).rev() {
        strides[k] = strides[k + 1] * d;
    }
    for flat in 0..n {
        let mut acc = 0.0;
        for k in 0..r {
            let stride = strides[k];
            let digit = (flat / stride) % d;
            let base = flat - digit * stride;
            if k < contravariant {
                for e in 0..d {
                    let gm = gamma[(digit * d + c) * d + e];
                    if gm != 0.0 {
                        acc += gm * t[base + e * stride];
                    }
                }
            } else {
                for e in 0..d {
                    let gm = gamma[(e * d + c) * d + digit];
                    if gm != 0.0 {
                        acc -= gm * t[base + e * stride];
                    }
                }
            }
        }
        out[flat] += acc;
    }
}

/// Covariant derivative with the derivative slot last: `(∇T)[I*d + c] = ∇_c T[I]`.
pub fn nabla(t: &TensorJet, gamma: &[f64]) -> Vec<f64> {
    let d = t.dim;
    let n = t.value.len();
    let mut out = t.grad.clone();
    let mut corr = vec![0.0; n];
    for c in 0..d {
        corr.iter_mut().for_each(|x| *x = 0.0);
        connection_terms(t.contravariant, t.covariant, d, &t.value, gamma, c, &mut corr);
        for i in 0..n {
            out[i * d + c] += corr[i];
        }
    }
    out
}

/// Second covariant derivative `(∇∇T)[(I*d + c)*d + e] = (∇_e ∇T)[I, c]`,
/// so that `∇²_{X,Y} T = Σ X^e Y^c (∇∇T)[I, c, e]`.
/// `dgamma[((k*d + i)*d + j)*d + m] = ∂_m Γ^k_{ij}`.
pub fn nabla2(t: &TensorJet, gamma: &[f64], dgamma: &[f64]) -> Vec<f64> {
    let d = t.dim;
    let n = t.value.len();
    let first = nabla(t, gamma);
    // ∂_e (∇_c T)[I] = ∂_e ∂_c T + (∂_e Γ)·T + Γ·∂_e T
    let mut dfirst = vec![0.0; n * d * d];
    let mut de_t = vec![0.0; n];
    let mut de_gamma = vec![0.0; d * d * d];
    let mut corr = vec![0.0; n];
    for e in 0..d {
        for (i, x) in de_t.iter_mut().enumerate() {
            *x = t.grad[i * d + e];
        }
        for (k, x) in de_gamma.iter_mut().enumerate() {
            *x = dgamma[k * d + e];
        }
        for c in 0..d {
            corr.iter_mut().for_each(|x| *x = 0.0);
            connection_terms(t.contravariant, t.covariant, d, &t.value, &de_gamma, c, &mut corr);
            connection_terms(t.contravariant, t.covariant, d, &de_t, gamma, c, &mut corr);
            for i in 0..n {
                dfirst[(i * d + c) * d + e] = t.hess[(i * d + c) * d + e] + corr[i];
            }
        }
    }
    let mut out = dfirst;
    let mut corr2 = vec![0.0; n * d];
    for e in 0..d {
        corr2.iter_mut().for_each(|x| *x = 0.0);
        connection_terms(t.contravariant, t.covariant + 1, d, &first, gamma, e, &mut corr2);
        for ic in 0..n * d {
            out[ic * d + e] += corr2[ic];
        }
    }
    out
}

/// Contract the last slot of a flat array of shape `[N, d]` with `v`.
pub fn contract_last(a: &[f64], d: usize, v: &[f64]) -> Vec<f64> {
    let n = a.len() / d;
    (0..n).map(|i| (0..d).map(|c| a[i * d + c] * v[c]).sum()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jets::seed_point;

    #[test]
    fn embed_places_block() {
        let x = ScalarField::coord(0);
        let f = TensorField::vector(vec![x.clone(), ScalarField::one()]);
        let e = f.embed(1, 4).unwrap();
        assert_eq!(e.components[1], ScalarField::coord(1));
        assert_eq!(e.components[2], ScalarField::one());
        assert!(e.components[0].is_zero() && e.components[3].is_zero());
    }

    #[test]
    fn flat_connection_leaves_partials() {
        let x = ScalarField::coord(0);
        let y = ScalarField::coord(1);
        let f = TensorField::vector(vec![&x * &y, y.clone()]);
        let seeds = seed_point(&[2.0, 3.0], 2).unwrap();
        let j = f.jet(&seeds).unwrap();
        let gamma = vec![0.0; 8];
        assert_eq!(nabla(&j, &gamma), vec![3.0, 2.0, 0.0, 1.0]);
        let second = nabla2(&j, &gamma, &[0.0; 16]);
        // ∂_x∂_y (xy) = 1 in both orders
        assert_eq!(second[1], 1.0);
        assert_eq!(second[2], 1.0);
    }
}
