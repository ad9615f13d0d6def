use crate::error::{Error, Result};

/// Absolute distance from the singular set below which `div`, `sqrt` and
/// negative powers refuse to evaluate.
pub const GUARD_BAND: f64 = 1e-12;

/// Value, gradient and Hessian of a scalar with respect to `d` chart
/// coordinates. The Hessian is stored densely, row-major, and kept exactly
/// symmetric by every operation.
#[derive(Debug, Clone, PartialEq)]
pub struct Jet2 {
    pub value: f64,
    pub gradient: Vec<f64>,
    pub hessian: Vec<f64>,
}

/// Jets for the coordinate functions at `p`: value `p_k`, gradient `e_k`,
/// zero Hessian.
pub fn seed_point(p: &[f64], d: usize) -> Result<Vec<Jet2>> {
    if d == 0 {
        return Err(Error::InvalidPoint("dimension must be at least 1".into()));
    }
    if p.len() != d {
        return Err(Error::InvalidPoint(format!("expected {d} coordinates, got {}", p.len())));
    }
    if let Some(x) = p.iter().find(|x| !x.is_finite()) {
        return Err(Error::InvalidPoint(format!("non-finite coordinate {x}")));
    }
    Ok((0..d).map(|k| Jet2::variable(p[k], k, d)).collect())
}

impl Jet2 {
    pub fn constant(value: f64, d: usize) -> Self {
        Jet2 { value, gradient: vec![0.0; d], hessian: vec![0.0; d * d] }
    }

    pub fn variable(value: f64, k: usize, d: usize) -> Self {
        let mut j = Jet2::constant(value, d);
        j.gradient[k] = 1.0;
        j
    }

    pub fn dim(&self) -> usize {
        self.gradient.len()
    }

    pub fn hess(&self, i: usize, j: usize) -> f64 {
        self.hessian[i * self.dim() + j]
    }

    fn check_dims(&self, other: &Jet2) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::ShapeError(format!("jet dimensions {} and {}", self.dim(), other.dim())));
        }
        Ok(())
    }

    pub fn add(&self, b: &Jet2) -> Result<Jet2> {
        self.check_dims(b)?;
        Ok(Jet2 {
            value: self.value + b.value,
            gradient: self.gradient.iter().zip(&b.gradient).map(|(x, y)| x + y).collect(),
            hessian: self.hessian.iter().zip(&b.hessian).map(|(x, y)| x + y).collect(),
        })
    }

    pub fn sub(&self, b: &Jet2) -> Result<Jet2> {
        self.check_dims(b)?;
        Ok(Jet2 {
            value: self.value - b.value,
            gradient: self.gradient.iter().zip(&b.gradient).map(|(x, y)| x - y).collect(),
            hessian: self.hessian.iter().zip(&b.hessian).map(|(x, y)| x - y).collect(),
        })
    }

    pub fn mul(&self, b: &Jet2) -> Result<Jet2> {
        self.check_dims(b)?;
        let d = self.dim();
        let (u, v) = (self.value, b.value);
        let gradient = (0..d).map(|i| u * b.gradient[i] + v * self.gradient[i]).collect();
        let mut hessian = vec![0.0; d * d];
        for i in 0..d {
            for j in i..d {
                let h = u * b.hessian[i * d + j]
                    + v * self.hessian[i * d + j]
                    + self.gradient[i] * b.gradient[j]
                    + self.gradient[j] * b.gradient[i];
                hessian[i * d + j] = h;
                hessian[j * d + i] = h;
            }
        }
        Ok(Jet2 { value: u * v, gradient, hessian })
    }

    pub fn div(&self, b: &Jet2) -> Result<Jet2> {
        self.check_dims(b)?;
        if b.value.abs() <= GUARD_BAND {
            return Err(Error::SingularEvaluation(format!("division by {:e}", b.value)));
        }
        self.mul(&b.recip_unchecked())
    }

    fn recip_unchecked(&self) -> Jet2 {
        let v = self.value;
        self.chain(1.0 / v, -1.0 / (v * v), 2.0 / (v * v * v))
    }

    /// Second-order chain rule for a scalar function with the given value
    /// and first two derivatives at `self.value`.
    pub fn chain(&self, f0: f64, f1: f64, f2: f64) -> Jet2 {
        let d = self.dim();
        let gradient = self.gradient.iter().map(|g| f1 * g).collect();
        let mut hessian = vec![0.0; d * d];
        for i in 0..d {
            for j in i..d {
                let h = f2 * self.gradient[i] * self.gradient[j] + f1 * self.hessian[i * d + j];
                hessian[i * d + j] = h;
                hessian[j * d + i] = h;
            }
        }
        Jet2 { value: f0, gradient, hessian }
    }

    pub fn neg(&self) -> Jet2 {
        Jet2 {
            value: -self.value,
            gradient: self.gradient.iter().map(|x| -x).collect(),
            hessian: self.hessian.iter().map(|x| -x).collect(),
        }
    }

    pub fn scale(&self, c: f64) -> Jet2 {
        Jet2 {
            value: c * self.value,
            gradient: self.gradient.iter().map(|x| c * x).collect(),
            hessian: self.hessian.iter().map(|x| c * x).collect(),
        }
    }

    pub fn sin(&self) -> Jet2 {
        let (s, c) = self.value.sin_cos();
        self.chain(s, c, -s)
    }

    pub fn cos(&self) -> Jet2 {
        let (s, c) = self.value.sin_cos();
        self.chain(c, -s, -c)
    }

    pub fn exp(&self) -> Jet2 {
        let e = self.value.exp();
        self.chain(e, e, e)
    }

    pub fn sqrt(&self) -> Result<Jet2> {
        if self.value <= GUARD_BAND {
            return Err(Error::SingularEvaluation(format!("sqrt of {:e}", self.value)));
        }
        let r = self.value.sqrt();
        Ok(self.chain(r, 0.5 / r, -0.25 / (r * self.value)))
    }

    /// `self^r`. Integer exponents accept any base (nonzero if negative);
    /// fractional exponents need a base above the guard band.
    pub fn powf(&self, r: f64) -> Result<Jet2> {
        let v = self.value;
        let integral = r.fract() == 0.0;
        if integral && r >= 0.0 {
            let n = r as i32;
            let f0 = v.powi(n);
            let f1 = if n >= 1 { r * v.powi(n - 1) } else { 0.0 };
            let f2 = if n >= 2 { r * (r - 1.0) * v.powi(n - 2) } else { 0.0 };
            return Ok(self.chain(f0, f1, f2));
        }
        if integral {
            if v.abs() <= GUARD_BAND {
                return Err(Error::SingularEvaluation(format!("{v:e} to the power {r}")));
            }
        } else if v <= GUARD_BAND {
            return Err(Error::SingularEvaluation(format!("{v:e} to the power {r}")));
        }
        Ok(self.chain(v.powf(r), r * v.powf(r - 1.0), r * (r - 1.0) * v.powf(r - 2.0)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(v: f64) -> Jet2 {
        Jet2::variable(v, 0, 1)
    }

    #[test]
    fn seeding() {
        let s = seed_point(&[1.0, 2.0, 3.0], 3).unwrap();
        assert_eq!(s[1].value, 2.0);
        assert_eq!(s[1].gradient, vec![0.0, 1.0, 0.0]);
        assert!(s[1].hessian.iter().all(|h| *h == 0.0));
        let pi = seed_point(&[std::f64::consts::PI], 1).unwrap();
        assert_eq!(pi[0].gradient, vec![1.0]);
        assert!(matches!(seed_point(&[f64::NAN], 1), Err(Error::InvalidPoint(_))));
        assert!(matches!(seed_point(&[], 0), Err(Error::InvalidPoint(_))));
    }

    #[test]
    fn arithmetic_rules() {
        let sq = x(3.0).mul(&x(3.0)).unwrap();
        assert_eq!((sq.value, sq.gradient[0], sq.hessian[0]), (9.0, 6.0, 2.0));

        let s = seed_point(&[2.0, 1.0], 2).unwrap();
        let p = s[0].add(&s[1]).unwrap().mul(&s[0].sub(&s[1]).unwrap()).unwrap();
        assert_eq!(p.value, 3.0);
        assert_eq!(p.gradient, vec![4.0, -2.0]);
        assert_eq!(p.hessian, vec![2.0, 0.0, 0.0, -2.0]);

        let r = Jet2::constant(1.0, 1).div(&x(2.0)).unwrap();
        assert_eq!((r.value, r.gradient[0], r.hessian[0]), (0.5, -0.25, 0.25));
        assert!(matches!(x(1.0).div(&x(0.0)), Err(Error::SingularEvaluation(_))));
    }

    #[test]
    fn unary_rules() {
        let s = x(0.0).sin();
        assert_eq!((s.value, s.gradient[0], s.hessian[0]), (0.0, 1.0, -0.0));
        let e = x(0.0).exp();
        assert_eq!((e.value, e.gradient[0], e.hessian[0]), (1.0, 1.0, 1.0));
        let r = x(4.0).sqrt().unwrap();
        assert_eq!((r.value, r.gradient[0], r.hessian[0]), (2.0, 0.25, -1.0 / 32.0));
        assert!(x(-1.0).sqrt().is_err());
        let c = x(2.0).powf(3.0).unwrap();
        assert_eq!((c.value, c.gradient[0], c.hessian[0]), (8.0, 12.0, 12.0));
        let n = x(-2.0).powf(-1.0).unwrap();
        assert_eq!((n.value, n.gradient[0], n.hessian[0]), (-0.5, -0.25, -0.25));
        assert!(x(-2.0).powf(0.5).is_err());
    }
}
