use nalgebra::DMatrix;

use super::kform::{binomial, index_of, multi_indices, sort_with_sign, KForm};
use super::tensor::numerical_rank;
use crate::error::{Error, Result};

/// Relative singular-value threshold used for every rank decision.
pub const RANK_THRESHOLD: f64 = 1e-8;

/// Matrix of `β ↦ ω ∧ β`, rows over increasing 4-indices and columns over
/// increasing 2-indices.
pub fn lefschetz_matrix(omega: &KForm) -> Result<DMatrix<f64>> {
    if omega.degree != 2 {
        return Err(Error::DegreeError(format!("expected a 2-form, got degree {}", omega.degree)));
    }
    let d = omega.dim;
    if d < 4 {
        return Err(Error::ShapeError(format!("the Lefschetz map needs d >= 4, got {d}")));
    }
    let pairs = multi_indices(d, 2);
    let mut m = DMatrix::zeros(binomial(d, 4), pairs.len());
    for (col, j) in pairs.iter().enumerate() {
        for (pi, i) in pairs.iter().enumerate() {
            let w = omega.components[pi];
            if w == 0.0 {
                continue;
            }
            let joined = [i[0], i[1], j[0], j[1]];
            if let Some((sorted, sign)) = sort_with_sign(&joined) {
                m[(index_of(&sorted, d), col)] += sign * w;
            }
        }
    }
    Ok(m)
}

/// Rank of the Lefschetz map and whether it is injective on 2-forms.
pub fn lefschetz_rank(omega: &KForm, d: usize) -> Result<(usize, bool)> {
    if omega.dim != d {
        return Err(Error::ShapeError(format!("form lives in dimension {}, not {d}", omega.dim)));
    }
    let m = lefschetz_matrix(omega)?;
    let rank = numerical_rank(&m, RANK_THRESHOLD);
    Ok((rank, rank == binomial(d, 2)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn symplectic(blocks: usize, d: usize) -> KForm {
        let p = vec![0.0; d];
        let mut w = KForm::zero(2, d, &p);
        for b in 0..blocks {
            w = w.add(&KForm::basis(&[2 * b, 2 * b + 1], d, &p).unwrap()).unwrap();
        }
        w
    }

    #[test]
    fn seven_dimensional_form_is_injective() {
        assert_eq!(lefschetz_rank(&symplectic(3, 7), 7).unwrap(), (21, true));
    }

    #[test]
    fn five_dimensional_form_is_not() {
        let (rank, full) = lefschetz_rank(&symplectic(2, 5), 5).unwrap();
        assert!(rank <= 5 && !full);
        assert_eq!(lefschetz_rank(&KForm::zero(2, 5, &[0.0; 5]), 5).unwrap(), (0, false));
    }
}
