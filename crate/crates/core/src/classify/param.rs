//! Polynomial parametrizations `t ↦ (c₀(t) : c₁(t) : c₂(t))` of rational components.

use std::fmt;

use crate::field::{Embed, Embedding, FieldExt, FieldRef, KPoly, Scalar};
use crate::form::TernaryForm;
use crate::linalg::{kernel, Mat3};
use crate::point::ProjPoint;

#[derive(Clone, PartialEq, Eq)]
pub struct Parametrization {
    coords: [KPoly; 3],
}

impl fmt::Debug for Parametrization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Parametrization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self
            .coords
            .iter()
            .map(|c| c.to_string().replace('X', "t"))
            .collect();
        write!(f, "({}, {}, {})", s[0], s[1], s[2])
    }
}

impl Parametrization {
    pub fn new(coords: [KPoly; 3]) -> Self {
        Parametrization { coords }
    }

    pub fn coords(&self) -> &[KPoly; 3] {
        &self.coords
    }

    pub fn field(&self) -> &FieldRef {
        self.coords[0].field()
    }

    pub fn degree(&self) -> usize {
        self.coords.iter().filter_map(|c| c.degree()).max().unwrap_or(0)
    }

    /// The point at parameter `t`, or `None` if every coordinate vanishes there.
    pub fn at(&self, t: &Scalar) -> Option<ProjPoint> {
        ProjPoint::new(std::array::from_fn(|i| self.coords[i].eval(t))).ok()
    }

    pub fn at_int(&self, t: i64) -> Option<ProjPoint> {
        self.at(&self.field().int(t))
    }

    /// The limit point as `t → ∞`.
    pub fn at_infinity(&self) -> ProjPoint {
        let d = self.degree();
        ProjPoint::new(std::array::from_fn(|i| self.coords[i].coeff(d)))
            .expect("nonzero top coefficient")
    }

    /// `f(c₀(t), c₁(t), c₂(t))` as a polynomial in `t`.
    pub fn pull_back(&self, f: &TernaryForm) -> KPoly {
        substitute_kpolys(f, &self.coords)
    }

    /// True iff the image lies on `V(f)` identically in `t`.
    pub fn satisfies(&self, f: &TernaryForm) -> bool {
        self.pull_back(f).is_zero()
    }
}

impl Embed for Parametrization {
    fn embed(&self, e: &Embedding) -> Self {
        Parametrization {
            coords: self.coords.clone().map(|c| c.embed(e)),
        }
    }
}

pub(crate) fn substitute_kpolys(f: &TernaryForm, c: &[KPoly; 3]) -> KPoly {
    let k = f.field().clone();
    let d = f.degree();
    let pows: Vec<Vec<KPoly>> = c
        .iter()
        .map(|p| {
            let mut v = vec![KPoly::constant(k.one())];
            for i in 0..d as usize {
                v.push(v[i].mul(p));
            }
            v
        })
        .collect();
    let mut acc = KPoly::zero(&k);
    for (e, coef) in f.terms() {
        let m = pows[0][e[0] as usize]
            .mul(&pows[1][e[1] as usize])
            .mul(&pows[2][e[2] as usize]);
        acc = acc.add(&m.scale(coef));
    }
    acc
}

/// `a + t·b`.
fn affine(a: &[Scalar; 3], b: &[Scalar; 3]) -> [KPoly; 3] {
    let k = a[0].field().clone();
    std::array::from_fn(|i| KPoly::new(&k, vec![a[i].clone(), b[i].clone()]))
}

/// The line `l·(x,y,z) = 0` as `t ↦ A + t·B` for a kernel basis `A, B`.
pub fn line_parametrization(l: &[Scalar; 3]) -> Parametrization {
    let k = l[0].field().clone();
    let basis = kernel(&[l.to_vec()], 3, &k);
    let a: [Scalar; 3] = basis[0].clone().try_into().unwrap();
    let b: [Scalar; 3] = basis[1].clone().try_into().unwrap();
    Parametrization::new(affine(&a, &b))
}

/// Rows `[p, e_{i+1}, e_{i+2}]` where `i` is the pivot of `p`.
pub(crate) fn frame(p: &ProjPoint) -> Mat3 {
    let k = p.field().clone();
    let i = p.pivot();
    let unit = |j: usize| -> [Scalar; 3] {
        std::array::from_fn(|m| if m == j { k.one() } else { k.zero() })
    };
    [p.coords().clone(), unit((i + 1) % 3), unit((i + 2) % 3)]
}

/// Smooth conic through a known point `q`, projected from `q`.
pub fn conic_parametrization(conic: &TernaryForm, q: &ProjPoint) -> Parametrization {
    let c = frame(q);
    let r = affine(&c[1], &c[2]);
    let cr = substitute_kpolys(conic, &r);
    let grad = conic.gradient().map(|g| g.eval_point(q));
    let k = q.field().clone();
    let mut slope = KPoly::zero(&k);
    for i in 0..3 {
        slope = slope.add(&r[i].scale(&grad[i]));
    }
    Parametrization::new(std::array::from_fn(|i| {
        cr.scale(&q.coords()[i]).sub(&slope.mul(&r[i]))
    }))
}

/// Cubic with a double point `p`, parametrized by the lines through `p`.
pub fn singular_cubic_parametrization(g: &TernaryForm, p: &ProjPoint) -> Parametrization {
    let c = frame(p);
    let h = g.compose(&c);
    let k = p.field().clone();
    // h(1·u0, 1, t) split by the power of u0
    let piece = |m: u32| -> KPoly {
        let mut v = vec![k.zero(); m as usize + 1];
        for (e, coef) in h.terms() {
            if e[0] == 3 - m {
                v[e[2] as usize] = coef.clone();
            }
        }
        KPoly::new(&k, v)
    };
    let h2 = piece(2);
    let h3 = piece(3);
    let t = KPoly::x(&k);
    let zero = KPoly::zero(&k);
    let u = [h3, zero.sub(&h2), zero.sub(&t.mul(&h2))];
    Parametrization::new(std::array::from_fn(|i| {
        let mut acc = KPoly::zero(&k);
        for (row, uk) in c.iter().zip(&u) {
            acc = acc.add(&uk.scale(&row[i]));
        }
        acc
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::NumberField;
    use crate::parse::parse_form;

    fn q() -> FieldRef {
        NumberField::rationals()
    }

    #[test]
    fn line_x_equals_zero() {
        let k = q();
        let p = line_parametrization(&[k.one(), k.zero(), k.zero()]);
        assert_eq!(p.at_int(5).unwrap(), ProjPoint::from_ints(&k, [0, 1, 5]).unwrap());
        assert_eq!(p.at_infinity(), ProjPoint::from_ints(&k, [0, 0, 1]).unwrap());
    }

    #[test]
    fn conic_through_point() {
        let k = q();
        let c = parse_form("x^2 - y*z", &k).unwrap();
        let p = conic_parametrization(&c, &ProjPoint::from_ints(&k, [0, 1, 0]).unwrap());
        assert!(p.satisfies(&c));
        assert_eq!(p.to_string(), "(t, t^2, 1)");
        assert_eq!(p.at_infinity(), ProjPoint::from_ints(&k, [0, 1, 0]).unwrap());
    }

    #[test]
    fn nodal_and_cuspidal() {
        let k = q();
        let origin = ProjPoint::from_ints(&k, [0, 0, 1]).unwrap();
        let nc = parse_form("x^3 + y^3 - 2*x*y*z", &k).unwrap();
        let p = singular_cubic_parametrization(&nc, &origin);
        assert!(p.satisfies(&nc));
        assert_eq!(p.to_string(), "(2*t, 2*t^2, t^3 + 1)");
        let cc = parse_form("x^3 - y^2*z", &k).unwrap();
        let p = singular_cubic_parametrization(&cc, &origin);
        assert!(p.satisfies(&cc));
        assert_eq!(p.to_string(), "(t^2, t^3, 1)");
    }
}
