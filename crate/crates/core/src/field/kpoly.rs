//! Dense univariate polynomials over a number field.

use std::fmt;

use super::number_field::{same_field, FieldExt, FieldRef, Scalar};
use super::qpoly::QPoly;

#[derive(Clone, PartialEq, Eq)]
pub struct KPoly {
    field: FieldRef,
    coeffs: Vec<Scalar>,
}

impl fmt::Debug for KPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl KPoly {
    pub fn new(field: &FieldRef, mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        KPoly {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn zero(field: &FieldRef) -> Self {
        KPoly::new(field, Vec::new())
    }

    pub fn constant(c: Scalar) -> Self {
        let f = c.field().clone();
        KPoly::new(&f, vec![c])
    }

    pub fn x(field: &FieldRef) -> Self {
        KPoly::new(field, vec![field.zero(), field.one()])
    }

    /// `x - r`.
    pub fn linear_root(r: &Scalar) -> Self {
        let f = r.field().clone();
        KPoly::new(&f, vec![-r, f.one()])
    }

    /// Lifts a polynomial over Q into `field`.
    pub fn from_qpoly(field: &FieldRef, p: &QPoly) -> Self {
        KPoly::new(
            field,
            p.coeffs().iter().map(|c| field.rational(c.clone())).collect(),
        )
    }

    pub fn field(&self) -> &FieldRef {
        &self.field
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Scalar {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lc(&self) -> Scalar {
        self.coeff(self.coeffs.len().saturating_sub(1))
    }

    /// Coefficients over Q, if every coefficient is rational.
    pub fn as_qpoly(&self) -> Option<QPoly> {
        let c: Option<Vec<_>> = self.coeffs.iter().map(|s| s.as_rational()).collect();
        c.map(QPoly::new)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.lc().inv().unwrap();
        self.scale(&inv)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        KPoly::new(&self.field, self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn add(&self, o: &Self) -> Self {
        assert!(same_field(&self.field, &o.field));
        let n = self.coeffs.len().max(o.coeffs.len());
        KPoly::new(&self.field, (0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        assert!(same_field(&self.field, &o.field));
        let n = self.coeffs.len().max(o.coeffs.len());
        KPoly::new(&self.field, (0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return KPoly::zero(&self.field);
        }
        let mut out = vec![self.field.zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        KPoly::new(&self.field, out)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = KPoly::constant(self.field.one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let dd = d.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return (KPoly::zero(&self.field), self.clone());
        }
        let inv = d.lc().inv().unwrap();
        let mut r = self.coeffs.clone();
        let mut q = vec![self.field.zero(); r.len() - dd];
        for i in (dd..r.len()).rev() {
            if r[i].is_zero() {
                continue;
            }
            let c = &r[i] * &inv;
            for (j, dc) in d.coeffs.iter().enumerate() {
                r[i - dd + j] = &r[i - dd + j] - &(&c * dc);
            }
            q[i - dd] = c;
        }
        r.truncate(dd);
        (KPoly::new(&self.field, q), KPoly::new(&self.field, r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.divrem(d).1
    }

    /// Exact quotient, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.divrem(d);
        r.is_zero().then_some(q)
    }

    pub fn gcd(&self, o: &Self) -> Self {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    pub fn derivative(&self) -> Self {
        KPoly::new(
            &self.field,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * &self.field.int(i as i64))
                .collect(),
        )
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        let mut acc = self.field.zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    /// `self(other(x))`.
    pub fn compose(&self, other: &Self) -> Self {
        let mut acc = KPoly::zero(&self.field);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(other).add(&KPoly::constant(c.clone()));
        }
        acc
    }

    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).degree() == Some(0)
    }

    /// Resultant via the Euclidean remainder sequence.
    pub fn resultant(&self, o: &Self) -> Scalar {
        if self.is_zero() || o.is_zero() {
            return self.field.zero();
        }
        let mut a = self.clone();
        let mut b = o.clone();
        let mut acc = self.field.one();
        loop {
            let da = a.degree().unwrap();
            let db = b.degree().unwrap();
            if db == 0 {
                return &acc * &b.lc().pow(da as u64);
            }
            let r = a.rem(&b);
            if r.is_zero() {
                return self.field.zero();
            }
            let dr = r.degree().unwrap();
            if da % 2 == 1 && db % 2 == 1 {
                acc = -acc;
            }
            acc = &acc * &b.lc().pow((da - dr) as u64);
            a = b;
            b = r;
        }
    }

    /// Interpolation through `(x_i, y_i)` with distinct `x_i`.
    pub fn interpolate(field: &FieldRef, points: &[(Scalar, Scalar)]) -> Self {
        let n = points.len();
        let mut dd: Vec<Scalar> = points.iter().map(|p| p.1.clone()).collect();
        for j in 1..n {
            for i in (j..n).rev() {
                dd[i] = (&dd[i] - &dd[i - 1]) / (&points[i].0 - &points[i - j].0);
            }
        }
        let mut acc = KPoly::zero(field);
        for i in (0..n).rev() {
            acc = acc
                .mul(&KPoly::new(field, vec![-&points[i].0, field.one()]))
                .add(&KPoly::constant(dd[i].clone()));
        }
        acc
    }

    /// Applies `f` to every coefficient, landing in `target`.
    pub fn map_coeffs(&self, target: &FieldRef, f: impl Fn(&Scalar) -> Scalar) -> Self {
        KPoly::new(target, self.coeffs.iter().map(f).collect())
    }
}

impl fmt::Display for KPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.coeffs.iter().enumerate().rev().map(|(i, c)| {
            let mono = match i {
                0 => String::new(),
                1 => "X".to_string(),
                _ => format!("X^{i}"),
            };
            (mono, c)
        });
        f.write_str(&crate::form::fmt_sum(terms))
    }
}
