//! Second-order jets of an s-expression field.

use fstructure_lab::jets::sexpr;

fn main() -> fstructure_lab::Result<()> {
    let f = sexpr::parse("(mul (coord 0) (sin (coord 1)))")?;
    let j = f.jet_at(&[2.0, 0.5])?;
    println!("f       = {f}");
    println!("value   = {:.12}", j.value);
    println!("grad    = {:?}", j.gradient);
    println!("hessian = {:?}", j.hessian);
    println!("d/dy    = {}", f.diff(1));
    Ok(())
}
