//! The induced structure (f̂, Q̂) on S⁵ and the ξ-sectional curvature.

use fstructure_lab::catalog;
use fstructure_lab::verify::{induced_fk_contact, xi_sectional_residual};

fn main() -> fstructure_lab::Result<()> {
    let s = catalog::s5_nearly_cosymplectic()?;
    for p in s.sample_points(4, 9) {
        let sp = s.at(&p)?;
        let hat = induced_fk_contact(&sp, 0, 1e-8)?;
        let x = sp.project_d(&[0.2, -0.4, 0.7, 0.1, 0.5]);
        println!(
            "axioms {:.1e}  |hatQ - Id| on D {:.1e}  |hatf - f| {:.3}  K(xi,X) residual {:.1e}",
            hat.axioms.max(),
            hat.hat_q_minus_id_on_d,
            hat.hat_f_minus_f,
            xi_sectional_residual(&sp, 0, &x)
        );
    }
    Ok(())
}
