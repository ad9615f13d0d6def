//! The rotated two-structure example and where its Q stops being positive definite.

use fstructure_lab::catalog::{rotate_two_structures, RotationPair};

fn main() {
    for pair in [RotationPair::SelfDual, RotationPair::AntiSelfDual] {
        for t in [0.1, 0.5, std::f64::consts::FRAC_PI_4] {
            match rotate_two_structures(t, pair) {
                Ok(s) => {
                    let sp = s.at(&[0.0; 5]).expect("origin is in the domain");
                    let q = sp.q.clone().symmetric_eigenvalues();
                    println!("{pair:?} t={t:.3}: eig Q in [{:.3}, {:.3}]", q.min(), q.max());
                }
                Err(e) => println!("{pair:?} t={t:.3}: {e}"),
            }
        }
    }
}
