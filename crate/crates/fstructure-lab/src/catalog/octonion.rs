//! Imaginary octonions and the cross product on ℝ⁷.
//!
//! Basis `e₁ … e₇` (stored 0-based). For each oriented Fano line `(i, j, k)`
//! below, `e_i e_j = e_k` and cyclically, so `e_i × e_j = e_k`.

/// Oriented Fano lines, 1-based.
pub const FANO_LINES: [[usize; 3]; 7] = [[1, 2, 3], [1, 4, 5], [1, 7, 6], [2, 4, 6], [2, 5, 7], [3, 4, 7], [3, 6, 5]];

/// `φ(e_i, e_j, e_k) = ⟨e_i, e_j × e_k⟩`, 0-based, totally antisymmetric.
pub fn phi(i: usize, j: usize, k: usize) -> f64 {
    for line in FANO_LINES {
        let [a, b, c] = line.map(|x| x - 1);
        // ⟨e_c, e_a × e_b⟩ = 1; even permutations of (a, b, c) keep the sign
        for (p, sign) in [([a, b, c], 1.0), ([b, c, a], 1.0), ([c, a, b], 1.0), ([c, b, a], -1.0), ([a, c, b], -1.0), ([b, a, c], -1.0)] {
            if p == [i, j, k] {
                return sign;
            }
        }
    }
    0.0
}

/// `a × b` on ℝ⁷.
pub fn cross(a: &[f64], b: &[f64]) -> [f64; 7] {
    let mut out = [0.0; 7];
    for (i, o) in out.iter_mut().enumerate() {
        for j in 0..7 {
            if a[j] == 0.0 {
                continue;
            }
            for k in 0..7 {
                *o += phi(i, j, k) * a[j] * b[k];
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn basis_products() {
        let e = |i: usize| {
            let mut v = [0.0; 7];
            v[i - 1] = 1.0;
            v
        };
        assert_eq!(cross(&e(1), &e(2)), e(3));
        assert_eq!(cross(&e(2), &e(3)), e(1));
        assert_eq!(cross(&e(1), &e(7)), e(6));
        let neg = |v: [f64; 7]| v.map(|x| -x);
        assert_eq!(cross(&e(3), &e(6)), e(5));
        assert_eq!(cross(&e(6), &e(3)), neg(e(5)));
    }

    proptest! {
        #[test]
        fn double_cross_identity(v in proptest::collection::vec(-1.0f64..1.0, 14)) {
            let (x, w) = v.split_at(7);
            let norm = x.iter().map(|a| a * a).sum::<f64>().sqrt();
            prop_assume!(norm > 1e-3);
            let x: Vec<f64> = x.iter().map(|a| a / norm).collect();
            let xw: f64 = x.iter().zip(w).map(|(a, b)| a * b).sum();
            let lhs = cross(&x, &cross(&x, w));
            for i in 0..7 {
                prop_assert!((lhs[i] - (-w[i] + xw * x[i])).abs() < 1e-12);
            }
        }
    }
}
