//! The octonionic almost complex structure on S⁶ is nearly Kähler but not Kähler.

use fstructure_lab::catalog;

fn main() -> fstructure_lab::Result<()> {
    let s = catalog::s6_nearly_kahler()?;
    let (mut diag, mut off) = (0.0f64, 0.0f64);
    for (k, p) in s.sample_points(32, 1).iter().enumerate() {
        let sp = s.at(p)?;
        let x: Vec<f64> = (0..6).map(|i| ((i + k) as f64).sin()).collect();
        let y: Vec<f64> = (0..6).map(|i| ((i * k) as f64).cos()).collect();
        let nx = sp.nabla_f(&x);
        diag = diag.max(sp.norm(&sp.mv(&nx, &x)) / sp.ip(&x, &x));
        off = off.max(sp.norm(&sp.mv(&nx, &y)));
    }
    println!("max |(nabla_X J)X| / |X|^2 = {diag:.2e}");
    println!("max |(nabla_X J)Y|         = {off:.3}");
    Ok(())
}
