//! Jet curvature on the round sphere chart against finite differences.

use fstructure_lab::catalog;
use fstructure_lab::geometry::oracle::oracle_deviation;

fn main() -> fstructure_lab::Result<()> {
    let s = catalog::s6_nearly_kahler()?;
    let p = &s.sample_points(1, 7)[0];
    let sp = s.at(p)?;
    let e = |k: usize| (0..6).map(|i| if i == k { 1.0 } else { 0.0 }).collect::<Vec<f64>>();
    let (x, y) = (e(0), e(3));
    println!("K(e0, e3) = {:.15}", sp.geo.sectional(&x, &y));
    println!("Ric(e0, e0)/g(e0, e0) = {:.15}", sp.geo.ricci(&x, &x) / sp.ip(&x, &x));
    for step in [1e-3, 1e-4] {
        let dev = oracle_deviation(&s.host, p, step)?;
        println!("step {step:e}: Gamma dev {:.2e}, Riemann dev {:.2e}", dev.gamma, dev.riemann);
    }
    Ok(())
}
