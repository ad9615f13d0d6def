use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Strictly increasing `k`-subsets of `0..d` in lexicographic order.
pub fn multi_indices(d: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, d: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..d {
            if d - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, d, k, cur, out);
            cur.pop();
        }
    }
    if k <= d {
        rec(0, d, k, &mut cur, &mut out);
    }
    out
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// Position of an increasing multi-index in [`multi_indices`] order.
pub fn index_of(idx: &[usize], d: usize) -> usize {
    let k = idx.len();
    let mut pos = 0;
    let mut prev = 0;
    for (slot, &i) in idx.iter().enumerate() {
        for skipped in prev..i {
            pos += binomial(d - skipped - 1, k - slot - 1);
        }
        prev = i + 1;
    }
    pos
}

/// Sort a multi-index, returning the permutation sign, or `None` on a repeat.
pub fn sort_with_sign(idx: &[usize]) -> Option<(Vec<usize>, f64)> {
    let mut v = idx.to_vec();
    let mut sign = 1.0;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((v, sign))
}

/// Alternating `k`-form at a point, stored on increasing multi-indices so
/// that `omega.components[index_of(I)] = omega(e_I)`.
///
/// Wedge and evaluation use the determinant convention:
/// `(dx^1 ∧ dx^2)(e_1, e_2) = 1` and
/// `(a ∧ b)(X, Y, Z) = a(X) b(Y, Z) + a(Y) b(Z, X) + a(Z) b(X, Y)` for a
/// 1-form `a` and a 2-form `b`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KForm {
    pub degree: usize,
    pub dim: usize,
    pub components: Vec<f64>,
    pub point: Vec<f64>,
}

impl KForm {
    pub fn zero(degree: usize, dim: usize, point: &[f64]) -> Self {
        KForm { degree, dim, components: vec![0.0; binomial(dim, degree)], point: point.to_vec() }
    }

    /// Basis form `dx^{i_1} ∧ … ∧ dx^{i_k}` for any ordering of distinct indices.
    pub fn basis(idx: &[usize], dim: usize, point: &[f64]) -> Result<Self> {
        let mut f = Self::zero(idx.len(), dim, point);
        if idx.iter().any(|&i| i >= dim) {
            return Err(Error::DegreeError(format!("index out of range in {idx:?}")));
        }
        if let Some((sorted, sign)) = sort_with_sign(idx) {
            f.components[index_of(&sorted, dim)] = sign;
        }
        Ok(f)
    }

    pub fn from_covector(c: &[f64], point: &[f64]) -> Self {
        KForm { degree: 1, dim: c.len(), components: c.to_vec(), point: point.to_vec() }
    }

    /// 2-form from the upper triangle of a bilinear form matrix (`B_ij`, `i < j`).
    /// Callers pass skew matrices; the lower triangle is ignored.
    pub fn from_skew_matrix(m: &DMatrix<f64>, point: &[f64]) -> Self {
        let d = m.nrows();
        let comps = multi_indices(d, 2).iter().map(|ij| m[(ij[0], ij[1])]).collect();
        KForm { degree: 2, dim: d, components: comps, point: point.to_vec() }
    }

    pub fn get(&self, idx: &[usize]) -> f64 {
        match sort_with_sign(idx) {
            Some((s, sign)) => sign * self.components[index_of(&s, self.dim)],
            None => 0.0,
        }
    }

    /// `omega(v_1, …, v_k)`.
    pub fn eval(&self, vs: &[&[f64]]) -> Result<f64> {
        if vs.len() != self.degree || vs.iter().any(|v| v.len() != self.dim) {
            return Err(Error::ShapeError(format!("a {}-form in dimension {} needs {} vectors", self.degree, self.dim, self.degree)));
        }
        if self.degree == 0 {
            return Ok(self.components[0]);
        }
        let k = self.degree;
        let mut total = 0.0;
        for (pos, idx) in multi_indices(self.dim, k).iter().enumerate() {
            let c = self.components[pos];
            if c == 0.0 {
                continue;
            }
            let sub = DMatrix::from_fn(k, k, |r, s| vs[s][idx[r]]);
            total += c * sub.determinant();
        }
        Ok(total)
    }

    pub fn scale(&self, c: f64) -> KForm {
        KForm { components: self.components.iter().map(|x| c * x).collect(), ..self.clone() }
    }

    pub fn add(&self, other: &KForm) -> Result<KForm> {
        if self.degree != other.degree || self.dim != other.dim {
            return Err(Error::ShapeError("adding forms of different shape".into()));
        }
        Ok(KForm { components: self.components.iter().zip(&other.components).map(|(a, b)| a + b).collect(), ..self.clone() })
    }

    pub fn max_abs(&self) -> f64 {
        self.components.iter().fold(0.0, |m, x| m.max(x.abs()))
    }
}

/// Graded-antisymmetric product.
pub fn wedge(a: &KForm, b: &KForm) -> Result<KForm> {
    if a.dim != b.dim {
        return Err(Error::ShapeError("wedge of forms in different dimensions".into()));
    }
    if a.point != b.point {
        return Err(Error::ShapeError("wedge of forms at different base points".into()));
    }
    let k = a.degree + b.degree;
    if k > a.dim {
        return Err(Error::DegreeError(format!("degree {k} exceeds dimension {}", a.dim)));
    }
    let d = a.dim;
    let mut out = KForm::zero(k, d, &a.point);
    let ia = multi_indices(d, a.degree);
    let ib = multi_indices(d, b.degree);
    for (pa, i) in ia.iter().enumerate() {
        let ca = a.components[pa];
        if ca == 0.0 {
            continue;
        }
        for (pb, j) in ib.iter().enumerate() {
            let cb = b.components[pb];
            if cb == 0.0 {
                continue;
            }
            let joined: Vec<usize> = i.iter().chain(j.iter()).cloned().collect();
            if let Some((sorted, sign)) = sort_with_sign(&joined) {
                out.components[index_of(&sorted, d)] += sign * ca * cb;
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_round_trip() {
        for (d, k) in [(5, 2), (7, 4), (4, 0), (6, 6)] {
            let all = multi_indices(d, k);
            assert_eq!(all.len(), binomial(d, k));
            for (pos, idx) in all.iter().enumerate() {
                assert_eq!(index_of(idx, d), pos);
            }
        }
    }

    #[test]
    fn wedge_examples() {
        let p = [0.0; 4];
        let dx = KForm::basis(&[0], 4, &p).unwrap();
        let dy = KForm::basis(&[1], 4, &p).unwrap();
        assert_eq!(wedge(&dx, &dx).unwrap().max_abs(), 0.0);
        let dxy = wedge(&dx, &dy).unwrap();
        let (e1, e2) = ([1.0, 0.0, 0.0, 0.0], [0.0, 1.0, 0.0, 0.0]);
        assert_eq!(dxy.eval(&[&e1, &e2]).unwrap(), 1.0);
        assert_eq!(dxy.eval(&[&e2, &e1]).unwrap(), -1.0);
        let dzw = KForm::basis(&[2, 3], 4, &p).unwrap();
        let vol = wedge(&dxy, &dzw).unwrap();
        let e: Vec<Vec<f64>> = (0..4).map(|i| (0..4).map(|j| if i == j { 1.0 } else { 0.0 }).collect()).collect();
        assert_eq!(vol.eval(&[&e[0], &e[1], &e[2], &e[3]]).unwrap(), 1.0);
        assert!(matches!(wedge(&vol, &dx), Err(Error::DegreeError(_))));
    }

    #[test]
    fn one_two_wedge_is_cyclic_sum() {
        let p = [0.0; 3];
        let a = KForm::from_covector(&[0.3, -1.0, 2.0], &p);
        let m = DMatrix::from_row_slice(3, 3, &[0.0, 1.5, -0.5, -1.5, 0.0, 0.7, 0.5, -0.7, 0.0]);
        let b = KForm::from_skew_matrix(&m, &p);
        let (x, y, z) = ([1.0, 0.2, 0.0], [0.0, 1.0, -0.4], [0.3, 0.0, 1.0]);
        let a_of = |v: &[f64]| a.eval(&[v]).unwrap();
        let b_of = |u: &[f64], v: &[f64]| b.eval(&[u, v]).unwrap();
        let expect = a_of(&x) * b_of(&y, &z) + a_of(&y) * b_of(&z, &x) + a_of(&z) * b_of(&x, &y);
        let got = wedge(&a, &b).unwrap().eval(&[&x, &y, &z]).unwrap();
        assert!((expect - got).abs() < 1e-14);
    }
}
