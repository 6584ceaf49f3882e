//! Number fields `Q(θ) = Q[t]/(m(t))` and their elements.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use super::qpoly::{fmt_rat, rat, QPoly, Rat};
use crate::error::{Error, Result};

/// Default upper bound on the absolute degree of any constructed field.
pub const DEFAULT_DEGREE_CAP: usize = 48;

#[derive(Debug)]
pub struct NumberField {
    name: String,
    min_poly: QPoly,
    degree: usize,
    /// Powers `θ^d, …, θ^{2d-2}` reduced to the power basis.
    reduction: Vec<Vec<Rat>>,
}

pub type FieldRef = Arc<NumberField>;

impl PartialEq for NumberField {
    fn eq(&self, other: &Self) -> bool {
        self.min_poly == other.min_poly
    }
}

impl Eq for NumberField {}

impl NumberField {
    /// The rational numbers, as the degree-1 field `Q[t]/(t)`.
    pub fn rationals() -> FieldRef {
        Arc::new(Self::build(String::new(), QPoly::x()))
    }

    /// Builds `Q[t]/(min_poly)` after checking that `min_poly` is monic and irreducible.
    ///
    /// Degree-1 polynomials collapse to [`NumberField::rationals`].
    pub fn new(name: &str, min_poly: QPoly) -> Result<FieldRef> {
        let deg = min_poly.degree().ok_or(Error::DegreeZero)?;
        if deg == 0 {
            return Err(Error::DegreeZero);
        }
        if !min_poly.lc().is_one() {
            return Err(Error::InvalidInput(format!("minimal polynomial {min_poly} is not monic")));
        }
        if deg == 1 {
            return Ok(Self::rationals());
        }
        let factors = super::factor::factor_q(&min_poly);
        if factors.len() != 1 || factors[0].1 != 1 {
            return Err(Error::InvalidInput(format!(
                "minimal polynomial {} is reducible over Q",
                min_poly.display_with(name)
            )));
        }
        Ok(Arc::new(Self::build(name.to_string(), min_poly)))
    }

    /// Trusted constructor for polynomials already known to be irreducible.
    pub(crate) fn new_unchecked(name: &str, min_poly: QPoly) -> FieldRef {
        if min_poly.degree() == Some(1) {
            return Self::rationals();
        }
        Arc::new(Self::build(name.to_string(), min_poly))
    }

    fn build(name: String, min_poly: QPoly) -> Self {
        let degree = min_poly.degree().unwrap();
        let mut reduction = Vec::new();
        // θ^d = -(m_0 + m_1 θ + ... + m_{d-1} θ^{d-1})
        let mut cur: Vec<Rat> = (0..degree).map(|i| -min_poly.coeff(i)).collect();
        for _ in degree..(2 * degree).saturating_sub(1) {
            reduction.push(cur.clone());
            // multiply by θ
            let top = cur[degree - 1].clone();
            let mut next = vec![Rat::zero(); degree];
            for i in (1..degree).rev() {
                next[i] = cur[i - 1].clone();
            }
            if !top.is_zero() {
                for i in 0..degree {
                    next[i] -= &top * min_poly.coeff(i);
                }
            }
            cur = next;
        }
        NumberField {
            name,
            min_poly,
            degree,
            reduction,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn min_poly(&self) -> &QPoly {
        &self.min_poly
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_rationals(&self) -> bool {
        self.degree == 1
    }
}

/// Constructors that need the shared handle.
pub trait FieldExt {
    fn zero(&self) -> Scalar;
    fn one(&self) -> Scalar;
    fn int(&self, n: i64) -> Scalar;
    fn rational(&self, r: Rat) -> Scalar;
    fn generator(&self) -> Scalar;
    fn from_poly(&self, p: &QPoly) -> Scalar;
}

impl FieldExt for FieldRef {
    fn zero(&self) -> Scalar {
        Scalar {
            field: self.clone(),
            c: vec![Rat::zero(); self.degree],
        }
    }

    fn one(&self) -> Scalar {
        self.rational(Rat::one())
    }

    fn int(&self, n: i64) -> Scalar {
        self.rational(rat(n))
    }

    fn rational(&self, r: Rat) -> Scalar {
        let mut s = self.zero();
        s.c[0] = r;
        s
    }

    fn generator(&self) -> Scalar {
        self.from_poly(&QPoly::x())
    }

    fn from_poly(&self, p: &QPoly) -> Scalar {
        let r = p.rem(&self.min_poly);
        let mut c = r.coeffs().to_vec();
        c.resize(self.degree, Rat::zero());
        Scalar {
            field: self.clone(),
            c,
        }
    }
}

/// Element of a number field, stored in the power basis of its generator.
#[derive(Clone)]
pub struct Scalar {
    field: FieldRef,
    c: Vec<Rat>,
}

pub(crate) fn same_field(a: &FieldRef, b: &FieldRef) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        self.c == other.c && same_field(&self.field, &other.field)
    }
}

impl Eq for Scalar {}

impl std::hash::Hash for Scalar {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.c.hash(state);
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Scalar {
    pub fn field(&self) -> &FieldRef {
        &self.field
    }

    /// Power-basis coefficients (length = field degree).
    pub fn coeffs(&self) -> &[Rat] {
        &self.c
    }

    pub fn to_poly(&self) -> QPoly {
        QPoly::new(self.c.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.c[0].is_one() && self.c[1..].iter().all(|x| x.is_zero())
    }

    /// The value as a rational, when it lies in Q.
    pub fn as_rational(&self) -> Option<Rat> {
        if self.c[1..].iter().all(|x| x.is_zero()) {
            Some(self.c[0].clone())
        } else {
            None
        }
    }

    fn check(&self, o: &Scalar) {
        assert!(
            same_field(&self.field, &o.field),
            "arithmetic between scalars of different fields"
        );
    }

    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        if let Some(r) = self.as_rational() {
            return Some(self.field.rational(r.recip()));
        }
        let p = self.to_poly().inverse_mod(&self.field.min_poly)?;
        Some(self.field.from_poly(&p))
    }

    pub fn try_div(&self, o: &Scalar) -> Result<Scalar> {
        let inv = o.inv().ok_or(Error::DivisionByZero)?;
        Ok(self * &inv)
    }

    pub fn pow(&self, mut e: u64) -> Scalar {
        let mut base = self.clone();
        let mut acc = self.field.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Field norm down to Q.
    pub fn norm(&self) -> Rat {
        if self.field.degree == 1 {
            return self.c[0].clone();
        }
        self.field.min_poly.resultant(&self.to_poly())
    }

    pub fn scale(&self, r: &Rat) -> Scalar {
        Scalar {
            field: self.field.clone(),
            c: self.c.iter().map(|a| a * r).collect(),
        }
    }

    fn mul_impl(&self, o: &Scalar) -> Scalar {
        self.check(o);
        let d = self.field.degree;
        if d == 1 {
            return Scalar {
                field: self.field.clone(),
                c: vec![&self.c[0] * &o.c[0]],
            };
        }
        let mut prod = vec![Rat::zero(); 2 * d - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                prod[i + j] += a * b;
            }
        }
        let mut c: Vec<Rat> = prod[..d].to_vec();
        for (k, hi) in prod[d..].iter().enumerate() {
            if hi.is_zero() {
                continue;
            }
            for (i, r) in self.field.reduction[k].iter().enumerate() {
                if !r.is_zero() {
                    c[i] += hi * r;
                }
            }
        }
        Scalar {
            field: self.field.clone(),
            c,
        }
    }

    /// Formats as a polynomial in the generator name.
    pub fn display(&self) -> String {
        let name = if self.field.name.is_empty() {
            "t"
        } else {
            self.field.name.as_str()
        };
        self.to_poly().display_with(name)
    }

    /// Sign of a rational scalar (None for irrational ones).
    pub(crate) fn rational_sign(&self) -> Option<i8> {
        self.as_rational().map(|r| {
            if r.is_negative() {
                -1
            } else if r.is_zero() {
                0
            } else {
                1
            }
        })
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = self.as_rational() {
            return f.write_str(&fmt_rat(&r));
        }
        f.write_str(&self.display())
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, o: &Scalar) -> Scalar {
                let f: fn(&Scalar, &Scalar) -> Scalar = $body;
                f(self, o)
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar {
                (&self).$m(&o)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: &Scalar) -> Scalar {
                (&self).$m(o)
            }
        }
        impl $tr<Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar {
                self.$m(&o)
            }
        }
    };
}

binop!(Add, add, |a, b| {
    a.check(b);
    Scalar {
        field: a.field.clone(),
        c: a.c.iter().zip(&b.c).map(|(x, y)| x + y).collect(),
    }
});
binop!(Sub, sub, |a, b| {
    a.check(b);
    Scalar {
        field: a.field.clone(),
        c: a.c.iter().zip(&b.c).map(|(x, y)| x - y).collect(),
    }
});
binop!(Mul, mul, |a, b| a.mul_impl(b));
binop!(Div, div, |a, b| a
    .try_div(b)
    .expect("division by zero scalar"));

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            field: self.field.clone(),
            c: self.c.iter().map(|x| -x).collect(),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn omega_field() -> FieldRef {
        NumberField::new("w", QPoly::from_ints(&[1, 1, 1])).unwrap()
    }

    #[test]
    fn omega_cubes_to_one() {
        let k = omega_field();
        let w = k.generator();
        assert!(!w.is_one());
        assert!(w.pow(3).is_one());
        assert_eq!(&w * &w, -(&w) - k.one());
    }

    #[test]
    fn inverse() {
        let k = omega_field();
        let a = k.generator() + k.int(3);
        let b = a.inv().unwrap();
        assert!((&a * &b).is_one());
    }

    #[test]
    fn reducible_minpoly_rejected() {
        assert!(NumberField::new("t", QPoly::from_ints(&[-1, 0, 1])).is_err());
        assert!(NumberField::new("t", QPoly::from_ints(&[2, 0, 2])).is_err());
    }

    #[test]
    fn degree_one_collapses() {
        let k = NumberField::new("t", QPoly::from_ints(&[-2, 1])).unwrap();
        assert!(k.is_rationals());
    }

    #[test]
    fn norm_of_element() {
        let k = NumberField::new("s", QPoly::from_ints(&[-2, 0, 1])).unwrap();
        let a = k.generator() + k.int(1);
        // (1 + √2)(1 - √2) = -1
        assert_eq!(a.norm(), rat(-1));
    }

    #[test]
    fn display_in_generator() {
        let k = omega_field();
        let a = k.generator().scale(&super::super::qpoly::rat_frac(-1, 3)) + k.int(2);
        assert_eq!(a.to_string(), "-1/3*w + 2");
    }
}
