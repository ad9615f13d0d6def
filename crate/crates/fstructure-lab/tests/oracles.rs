//! Jet-computed derivatives against central differences of plain values.

use fstructure_lab::catalog::{self, CATALOG};
use fstructure_lab::fstructure::{StructurePoint, WeakMetricFStructureField};
use fstructure_lab::geometry::oracle::fd_christoffel;
use nalgebra::DMatrix;

const H: f64 = 1e-5;

fn shifted(s: &WeakMetricFStructureField, p: &[f64], c: usize, t: f64) -> StructurePoint {
    let mut q = p.to_vec();
    q[c] += t;
    s.at(&q).unwrap()
}

/// `(∇_c T)^a_b = ∂_c T^a_b + Γ^a_{ce} T^e_b − Γ^e_{cb} T^a_e` with every piece from differences.
fn fd_nabla_op(s: &WeakMetricFStructureField, p: &[f64], pick: impl Fn(&StructurePoint) -> DMatrix<f64>) -> Vec<f64> {
    let d = p.len();
    let gamma = fd_christoffel(&s.host, p, H).unwrap();
    let gm = |k: usize, i: usize, j: usize| gamma[(k * d + i) * d + j];
    let t = pick(&s.at(p).unwrap());
    let mut out = vec![0.0; d * d * d];
    for c in 0..d {
        let dt = (pick(&shifted(s, p, c, H)) - pick(&shifted(s, p, c, -H))) / (2.0 * H);
        for a in 0..d {
            for b in 0..d {
                let mut v = dt[(a, b)];
                for e in 0..d {
                    v += gm(a, c, e) * t[(e, b)] - gm(e, c, b) * t[(a, e)];
                }
                out[(a * d + b) * d + c] = v;
            }
        }
    }
    out
}

fn max_dev(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

#[test]
fn nabla_f_and_q_match_differences() {
    for name in CATALOG {
        let s = catalog::build(name).unwrap().structure;
        for p in s.sample_points(3, 11) {
            let sp = s.at(&p).unwrap();
            let df = fd_nabla_op(&s, &p, |sp| sp.f.clone());
            let dq = fd_nabla_op(&s, &p, |sp| sp.q.clone());
            assert!(max_dev(&sp.df, &df) < 1e-6, "{name}: nabla f off by {}", max_dev(&sp.df, &df));
            assert!(max_dev(&sp.dq, &dq) < 1e-6, "{name}: nabla Q off by {}", max_dev(&sp.dq, &dq));
        }
    }
}

#[test]
fn h_matches_difference_of_reeb_field() {
    for name in CATALOG {
        let s = catalog::build(name).unwrap().structure;
        let d = s.dim();
        for p in s.sample_points(3, 12) {
            let sp = s.at(&p).unwrap();
            let gamma = fd_christoffel(&s.host, &p, H).unwrap();
            for i in 0..sp.s {
                for c in 0..d {
                    let plus = &shifted(&s, &p, c, H).xi[i];
                    let minus = &shifted(&s, &p, c, -H).xi[i];
                    for a in 0..d {
                        let conn: f64 = (0..d).map(|e| gamma[(a * d + c) * d + e] * sp.xi[i][e]).sum();
                        let fd = (plus[a] - minus[a]) / (2.0 * H) + conn;
                        assert!((sp.h[i][(a, c)] - fd).abs() < 1e-6, "{name}: h_{i}[{a},{c}]");
                    }
                }
            }
        }
    }
}

#[test]
fn deta_matches_difference_of_one_form() {
    for name in CATALOG {
        let s = catalog::build(name).unwrap().structure;
        let d = s.dim();
        for p in s.sample_points(3, 13) {
            let sp = s.at(&p).unwrap();
            for i in 0..sp.s {
                let partial: Vec<Vec<f64>> = (0..d)
                    .map(|c| {
                        let (a, b) = (shifted(&s, &p, c, H), shifted(&s, &p, c, -H));
                        (0..d).map(|k| (a.eta[i][k] - b.eta[i][k]) / (2.0 * H)).collect()
                    })
                    .collect();
                for a in 0..d {
                    for b in 0..d {
                        let fd = partial[a][b] - partial[b][a];
                        assert!((sp.deta[i][(a, b)] - fd).abs() < 1e-6, "{name}: d eta[{a},{b}]");
                    }
                }
            }
        }
    }
}

#[test]
fn second_derivative_of_f_satisfies_ricci_identity() {
    // ∇²f(X,Y) − ∇²f(Y,X) = [R(X,Y), f]
    let s = catalog::s6_nearly_kahler().unwrap();
    let d = s.dim();
    for p in s.sample_points(4, 14) {
        let sp = s.at(&p).unwrap();
        let n2 = s.nabla2_f(&p).unwrap();
        for x in 0..d {
            for y in 0..d {
                let ex: Vec<f64> = (0..d).map(|k| if k == x { 1.0 } else { 0.0 }).collect();
                let ey: Vec<f64> = (0..d).map(|k| if k == y { 1.0 } else { 0.0 }).collect();
                let r = DMatrix::from_fn(d, d, |a, b| {
                    let eb: Vec<f64> = (0..d).map(|k| if k == b { 1.0 } else { 0.0 }).collect();
                    sp.r(&ex, &ey, &eb)[a]
                });
                let comm = &r * &sp.f - &sp.f * &r;
                for a in 0..d {
                    for b in 0..d {
                        let base = (a * d + b) * d;
                        let lhs = n2[(base + y) * d + x] - n2[(base + x) * d + y];
                        assert!((lhs - comm[(a, b)]).abs() < 1e-8, "Ricci identity at ({a},{b},{x},{y})");
                    }
                }
            }
        }
    }
}
