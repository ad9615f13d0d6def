use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

use super::jet2::{seed_point, Jet2, GUARD_BAND};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub enum Node {
    Const(f64),
    Coord(usize),
    Add(ScalarField, ScalarField),
    Sub(ScalarField, ScalarField),
    Mul(ScalarField, ScalarField),
    Div(ScalarField, ScalarField),
    Sin(ScalarField),
    Cos(ScalarField),
    Exp(ScalarField),
    Sqrt(ScalarField),
    Pow(ScalarField, f64),
}

/// Memo table for [`ScalarField::eval_jet_cached`], keyed by subtree
/// identity. Only valid for one set of seeds and while the fields it was
/// filled from are alive.
#[derive(Debug, Default)]
pub struct JetCache(std::collections::HashMap<usize, Jet2>);

impl JetCache {
    pub fn new() -> Self {
        Self::default()
    }
}

/// A closed expression tree in the chart coordinates. Cloning is cheap;
/// subtrees are shared.
///
/// The builder operators fold constants and drop additive zeros and
/// multiplicative ones, so catalog fields stay small.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarField(Arc<Node>);

impl ScalarField {
    pub fn node(&self) -> &Node {
        &self.0
    }

    pub fn from_node(node: Node) -> Self {
        ScalarField(Arc::new(node))
    }

    pub fn constant(c: f64) -> Self {
        Self::from_node(Node::Const(c))
    }

    pub fn zero() -> Self {
        Self::constant(0.0)
    }

    pub fn one() -> Self {
        Self::constant(1.0)
    }

    pub fn coord(k: usize) -> Self {
        Self::from_node(Node::Coord(k))
    }

    pub fn as_const(&self) -> Option<f64> {
        match self.node() {
            Node::Const(c) => Some(*c),
            _ => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.as_const() == Some(0.0)
    }

    pub fn sin(&self) -> Self {
        match self.as_const() {
            Some(c) => Self::constant(c.sin()),
            None => Self::from_node(Node::Sin(self.clone())),
        }
    }

    pub fn cos(&self) -> Self {
        match self.as_const() {
            Some(c) => Self::constant(c.cos()),
            None => Self::from_node(Node::Cos(self.clone())),
        }
    }

    pub fn exp(&self) -> Self {
        match self.as_const() {
            Some(c) => Self::constant(c.exp()),
            None => Self::from_node(Node::Exp(self.clone())),
        }
    }

    pub fn sqrt(&self) -> Self {
        Self::from_node(Node::Sqrt(self.clone()))
    }

    pub fn pow(&self, r: f64) -> Self {
        if r == 1.0 {
            return self.clone();
        }
        if r == 0.0 {
            return Self::one();
        }
        Self::from_node(Node::Pow(self.clone(), r))
    }

    /// Largest coordinate index referenced, if any.
    pub fn max_coord(&self) -> Option<usize> {
        match self.node() {
            Node::Const(_) => None,
            Node::Coord(k) => Some(*k),
            Node::Add(a, b) | Node::Sub(a, b) | Node::Mul(a, b) | Node::Div(a, b) => match (a.max_coord(), b.max_coord()) {
                (Some(x), Some(y)) => Some(x.max(y)),
                (x, y) => x.or(y),
            },
            Node::Sin(a) | Node::Cos(a) | Node::Exp(a) | Node::Sqrt(a) | Node::Pow(a, _) => a.max_coord(),
        }
    }

    pub fn node_count(&self) -> usize {
        match self.node() {
            Node::Const(_) | Node::Coord(_) => 1,
            Node::Add(a, b) | Node::Sub(a, b) | Node::Mul(a, b) | Node::Div(a, b) => 1 + a.node_count() + b.node_count(),
            Node::Sin(a) | Node::Cos(a) | Node::Exp(a) | Node::Sqrt(a) | Node::Pow(a, _) => 1 + a.node_count(),
        }
    }

    /// Jet of the field at the point whose coordinate jets are `seeds`.
    pub fn eval_jet(&self, seeds: &[Jet2]) -> Result<Jet2> {
        let d = seeds.first().map(|s| s.dim()).unwrap_or(0);
        Ok(match self.node() {
            Node::Const(c) => Jet2::constant(*c, d),
            Node::Coord(k) => seeds.get(*k).cloned().ok_or_else(|| Error::ShapeError(format!("coordinate {k} out of range")))?,
            Node::Add(a, b) => a.eval_jet(seeds)?.add(&b.eval_jet(seeds)?)?,
            Node::Sub(a, b) => a.eval_jet(seeds)?.sub(&b.eval_jet(seeds)?)?,
            Node::Mul(a, b) => match a.as_const() {
                Some(c) => b.eval_jet(seeds)?.scale(c),
                None => a.eval_jet(seeds)?.mul(&b.eval_jet(seeds)?)?,
            },
            Node::Div(a, b) => a.eval_jet(seeds)?.div(&b.eval_jet(seeds)?)?,
            Node::Sin(a) => a.eval_jet(seeds)?.sin(),
            Node::Cos(a) => a.eval_jet(seeds)?.cos(),
            Node::Exp(a) => a.eval_jet(seeds)?.exp(),
            Node::Sqrt(a) => a.eval_jet(seeds)?.sqrt()?,
            Node::Pow(a, r) => a.eval_jet(seeds)?.powf(*r)?,
        })
    }

    /// As [`eval_jet`](Self::eval_jet), memoizing shared subtrees in `cache`.
    /// Results are bit-identical to the uncached path.
    pub fn eval_jet_cached(&self, seeds: &[Jet2], cache: &mut JetCache) -> Result<Jet2> {
        let d = seeds.first().map(|s| s.dim()).unwrap_or(0);
        let key = Arc::as_ptr(&self.0) as usize;
        match self.node() {
            Node::Const(c) => return Ok(Jet2::constant(*c, d)),
            Node::Coord(k) => return seeds.get(*k).cloned().ok_or_else(|| Error::ShapeError(format!("coordinate {k} out of range"))),
            _ => {}
        }
        if let Some(j) = cache.0.get(&key) {
            return Ok(j.clone());
        }
        let j = match self.node() {
            Node::Const(_) | Node::Coord(_) => unreachable!(),
            Node::Add(a, b) => a.eval_jet_cached(seeds, cache)?.add(&b.eval_jet_cached(seeds, cache)?)?,
            Node::Sub(a, b) => a.eval_jet_cached(seeds, cache)?.sub(&b.eval_jet_cached(seeds, cache)?)?,
            Node::Mul(a, b) => match a.as_const() {
                Some(c) => b.eval_jet_cached(seeds, cache)?.scale(c),
                None => a.eval_jet_cached(seeds, cache)?.mul(&b.eval_jet_cached(seeds, cache)?)?,
            },
            Node::Div(a, b) => a.eval_jet_cached(seeds, cache)?.div(&b.eval_jet_cached(seeds, cache)?)?,
            Node::Sin(a) => a.eval_jet_cached(seeds, cache)?.sin(),
            Node::Cos(a) => a.eval_jet_cached(seeds, cache)?.cos(),
            Node::Exp(a) => a.eval_jet_cached(seeds, cache)?.exp(),
            Node::Sqrt(a) => a.eval_jet_cached(seeds, cache)?.sqrt()?,
            Node::Pow(a, r) => a.eval_jet_cached(seeds, cache)?.powf(*r)?,
        };
        cache.0.insert(key, j.clone());
        Ok(j)
    }

    pub fn jet_at(&self, p: &[f64]) -> Result<Jet2> {
        self.eval_jet(&seed_point(p, p.len())?)
    }

    /// Plain value. Shares no code with the jet path, which makes it usable
    /// as the base of finite-difference oracles.
    pub fn value_at(&self, p: &[f64]) -> Result<f64> {
        Ok(match self.node() {
            Node::Const(c) => *c,
            Node::Coord(k) => *p.get(*k).ok_or_else(|| Error::ShapeError(format!("coordinate {k} out of range")))?,
            Node::Add(a, b) => a.value_at(p)? + b.value_at(p)?,
            Node::Sub(a, b) => a.value_at(p)? - b.value_at(p)?,
            Node::Mul(a, b) => a.value_at(p)? * b.value_at(p)?,
            Node::Div(a, b) => {
                let den = b.value_at(p)?;
                if den.abs() <= GUARD_BAND {
                    return Err(Error::SingularEvaluation(format!("division by {den:e}")));
                }
                a.value_at(p)? / den
            }
            Node::Sin(a) => a.value_at(p)?.sin(),
            Node::Cos(a) => a.value_at(p)?.cos(),
            Node::Exp(a) => a.value_at(p)?.exp(),
            Node::Sqrt(a) => {
                let v = a.value_at(p)?;
                if v <= GUARD_BAND {
                    return Err(Error::SingularEvaluation(format!("sqrt of {v:e}")));
                }
                v.sqrt()
            }
            Node::Pow(a, r) => {
                let v = a.value_at(p)?;
                let bad = if r.fract() == 0.0 { *r < 0.0 && v.abs() <= GUARD_BAND } else { v <= GUARD_BAND };
                if bad {
                    return Err(Error::SingularEvaluation(format!("{v:e} to the power {r}")));
                }
                if r.fract() == 0.0 {
                    v.powi(*r as i32)
                } else {
                    v.powf(*r)
                }
            }
        })
    }

    /// Symbolic partial derivative with respect to coordinate `k`.
    pub fn diff(&self, k: usize) -> ScalarField {
        match self.node() {
            Node::Const(_) => Self::zero(),
            Node::Coord(j) => Self::constant(if *j == k { 1.0 } else { 0.0 }),
            Node::Add(a, b) => &a.diff(k) + &b.diff(k),
            Node::Sub(a, b) => &a.diff(k) - &b.diff(k),
            Node::Mul(a, b) => &(&a.diff(k) * b) + &(a * &b.diff(k)),
            Node::Div(a, b) => {
                let num = &(&a.diff(k) * b) - &(a * &b.diff(k));
                &num / &(b * b)
            }
            Node::Sin(a) => &a.diff(k) * &a.cos(),
            Node::Cos(a) => -&(&a.diff(k) * &a.sin()),
            Node::Exp(a) => &a.diff(k) * self,
            Node::Sqrt(a) => &a.diff(k) / &(&Self::constant(2.0) * self),
            Node::Pow(a, r) => &(&Self::constant(*r) * &a.diff(k)) * &a.pow(r - 1.0),
        }
    }
}

impl From<f64> for ScalarField {
    fn from(c: f64) -> Self {
        ScalarField::constant(c)
    }
}

impl Add for &ScalarField {
    type Output = ScalarField;
    fn add(self, b: &ScalarField) -> ScalarField {
        match (self.as_const(), b.as_const()) {
            (Some(x), Some(y)) => ScalarField::constant(x + y),
            (Some(x), _) if x == 0.0 => b.clone(),
            (_, Some(y)) if y == 0.0 => self.clone(),
            _ => ScalarField::from_node(Node::Add(self.clone(), b.clone())),
        }
    }
}

impl Sub for &ScalarField {
    type Output = ScalarField;
    fn sub(self, b: &ScalarField) -> ScalarField {
        match (self.as_const(), b.as_const()) {
            (Some(x), Some(y)) => ScalarField::constant(x - y),
            (_, Some(y)) if y == 0.0 => self.clone(),
            (Some(x), _) if x == 0.0 => -b,
            _ => ScalarField::from_node(Node::Sub(self.clone(), b.clone())),
        }
    }
}

impl Mul for &ScalarField {
    type Output = ScalarField;
    fn mul(self, b: &ScalarField) -> ScalarField {
        match (self.as_const(), b.as_const()) {
            (Some(x), Some(y)) => ScalarField::constant(x * y),
            (Some(x), _) | (_, Some(x)) if x == 0.0 => ScalarField::zero(),
            (Some(x), _) if x == 1.0 => b.clone(),
            (_, Some(y)) if y == 1.0 => self.clone(),
            // keep constants on the left so the jet path can scale
            (None, Some(_)) => ScalarField::from_node(Node::Mul(b.clone(), self.clone())),
            _ => ScalarField::from_node(Node::Mul(self.clone(), b.clone())),
        }
    }
}

impl Div for &ScalarField {
    type Output = ScalarField;
    fn div(self, b: &ScalarField) -> ScalarField {
        match (self.as_const(), b.as_const()) {
            (Some(x), Some(y)) if y != 0.0 => ScalarField::constant(x / y),
            (Some(x), _) if x == 0.0 => ScalarField::zero(),
            (_, Some(y)) if y == 1.0 => self.clone(),
            (_, Some(y)) if y != 0.0 => &ScalarField::constant(1.0 / y) * self,
            _ => ScalarField::from_node(Node::Div(self.clone(), b.clone())),
        }
    }
}

impl Neg for &ScalarField {
    type Output = ScalarField;
    fn neg(self) -> ScalarField {
        match self.as_const() {
            Some(c) => ScalarField::constant(-c),
            None => &ScalarField::constant(-1.0) * self,
        }
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for ScalarField {
            type Output = ScalarField;
            fn $m(self, b: ScalarField) -> ScalarField { (&self).$m(&b) }
        }
        impl $tr<&ScalarField> for ScalarField {
            type Output = ScalarField;
            fn $m(self, b: &ScalarField) -> ScalarField { (&self).$m(b) }
        }
        impl $tr<ScalarField> for &ScalarField {
            type Output = ScalarField;
            fn $m(self, b: ScalarField) -> ScalarField { self.$m(&b) }
        }
        impl $tr<f64> for &ScalarField {
            type Output = ScalarField;
            fn $m(self, b: f64) -> ScalarField { self.$m(&ScalarField::constant(b)) }
        }
        impl $tr<f64> for ScalarField {
            type Output = ScalarField;
            fn $m(self, b: f64) -> ScalarField { (&self).$m(&ScalarField::constant(b)) }
        }
        impl $tr<&ScalarField> for f64 {
            type Output = ScalarField;
            fn $m(self, b: &ScalarField) -> ScalarField { ScalarField::constant(self).$m(b) }
        }
        impl $tr<ScalarField> for f64 {
            type Output = ScalarField;
            fn $m(self, b: ScalarField) -> ScalarField { ScalarField::constant(self).$m(&b) }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul, Div div);

impl Neg for ScalarField {
    type Output = ScalarField;
    fn neg(self) -> ScalarField {
        -&self
    }
}

/// Sum of a sequence of fields, folding constants.
pub fn sum<I: IntoIterator<Item = ScalarField>>(terms: I) -> ScalarField {
    terms.into_iter().fold(ScalarField::zero(), |acc, t| &acc + &t)
}

impl fmt::Display for ScalarField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.node() {
            Node::Const(c) => write!(f, "(const {c:?})"),
            Node::Coord(k) => write!(f, "(coord {k})"),
            Node::Add(a, b) => write!(f, "(add {a} {b})"),
            Node::Sub(a, b) => write!(f, "(sub {a} {b})"),
            Node::Mul(a, b) => write!(f, "(mul {a} {b})"),
            Node::Div(a, b) => write!(f, "(div {a} {b})"),
            Node::Sin(a) => write!(f, "(sin {a})"),
            Node::Cos(a) => write!(f, "(cos {a})"),
            Node::Exp(a) => write!(f, "(exp {a})"),
            Node::Sqrt(a) => write!(f, "(sqrt {a})"),
            Node::Pow(a, r) => write!(f, "(pow {a} {r:?})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> ScalarField {
        ScalarField::coord(0)
    }
    fn y() -> ScalarField {
        ScalarField::coord(1)
    }

    #[test]
    fn builders_fold() {
        assert_eq!(&x() * 0.0, ScalarField::zero());
        assert_eq!(&x() * 1.0, x());
        assert_eq!(&x() + 0.0, x());
        assert_eq!((ScalarField::constant(2.0) * 3.0).as_const(), Some(6.0));
    }

    #[test]
    fn jet_matches_value_path() {
        let e = (&x() * &y().sin()).exp() / (1.0 + &x() * &x());
        let p = [0.3, -1.2];
        assert_eq!(e.jet_at(&p).unwrap().value, e.value_at(&p).unwrap());
    }

    #[test]
    fn symbolic_derivative_agrees_with_jet() {
        let e = (&x() * &y()).sin() * x().sqrt() + y().pow(3.0) / (2.0 + x().cos());
        let p = [0.7, 0.4];
        let j = e.jet_at(&p).unwrap();
        for k in 0..2 {
            let dk = e.diff(k).value_at(&p).unwrap();
            assert!((dk - j.gradient[k]).abs() < 1e-13);
            for l in 0..2 {
                let dkl = e.diff(k).diff(l).value_at(&p).unwrap();
                assert!((dkl - j.hess(k, l)).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn display_is_prefix_form() {
        let e = &x() * &y().sin();
        assert_eq!(e.to_string(), "(mul (coord 0) (sin (coord 1)))");
    }

    #[test]
    fn coordinate_out_of_range() {
        let e = ScalarField::coord(3);
        assert!(matches!(e.jet_at(&[1.0]), Err(Error::ShapeError(_))));
        assert_eq!(e.max_coord(), Some(3));
    }
}
