//! Points of the projective plane.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Embed, Embedding, FieldExt, FieldRef, Scalar};

/// A point of P², stored with its first nonzero coordinate equal to 1.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ProjPoint {
    c: [Scalar; 3],
}

impl ProjPoint {
    pub fn new(c: [Scalar; 3]) -> Result<Self> {
        let Some(first) = c.iter().find(|v| !v.is_zero()) else {
            return Err(Error::InvalidInput("(0, 0, 0) is not a projective point".into()));
        };
        let inv = first.inv().unwrap();
        Ok(ProjPoint {
            c: std::array::from_fn(|i| &c[i] * &inv),
        })
    }

    pub fn from_ints(k: &FieldRef, v: [i64; 3]) -> Result<Self> {
        ProjPoint::new(std::array::from_fn(|i| k.int(v[i])))
    }

    pub fn coords(&self) -> &[Scalar; 3] {
        &self.c
    }

    pub fn field(&self) -> &FieldRef {
        self.c[0].field()
    }

    /// Index of the first nonzero coordinate.
    pub fn pivot(&self) -> usize {
        self.c.iter().position(|v| !v.is_zero()).unwrap()
    }
}

impl Embed for ProjPoint {
    fn embed(&self, e: &Embedding) -> Self {
        ProjPoint {
            c: self.c.embed(e),
        }
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.c[0], self.c[1], self.c[2])
    }
}

impl fmt::Debug for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::NumberField;

    #[test]
    fn canonical_form() {
        let k = NumberField::rationals();
        let a = ProjPoint::from_ints(&k, [0, 2, 4]).unwrap();
        let b = ProjPoint::from_ints(&k, [0, -1, -2]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_string(), "(0, 1, 2)");
        assert!(ProjPoint::from_ints(&k, [0, 0, 0]).is_err());
    }
}
