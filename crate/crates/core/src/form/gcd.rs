//! Greatest common divisors of ternary forms.
//!
//! After splitting off powers of z, forms are dehomogenized at z = 1 and
//! treated as polynomials in x with coefficients in K[y]; the gcd is then a
//! primitive pseudo-remainder sequence with contents handled by univariate
//! gcds.

use super::TernaryForm;
use crate::field::{FieldExt, FieldRef, KPoly};

/// Polynomial in x whose coefficients are polynomials in y.
#[derive(Clone)]
struct BiPoly {
    field: FieldRef,
    c: Vec<KPoly>,
}

impl BiPoly {
    fn new(field: &FieldRef, mut c: Vec<KPoly>) -> Self {
        while c.last().is_some_and(|p| p.is_zero()) {
            c.pop();
        }
        BiPoly {
            field: field.clone(),
            c,
        }
    }

    fn from_form(f: &TernaryForm) -> Self {
        let k = f.field().clone();
        let dx = f.terms().map(|(e, _)| e[0] as usize).max().unwrap_or(0);
        let mut rows: Vec<Vec<_>> = vec![Vec::new(); dx + 1];
        for (e, c) in f.terms() {
            let row = &mut rows[e[0] as usize];
            let j = e[1] as usize;
            if row.len() <= j {
                row.resize(j + 1, k.zero());
            }
            row[j] = c.clone();
        }
        BiPoly::new(&k, rows.into_iter().map(|r| KPoly::new(&k, r)).collect())
    }

    fn to_form(&self) -> TernaryForm {
        let deg = self
            .c
            .iter()
            .enumerate()
            .filter_map(|(i, p)| p.degree().map(|d| i + d))
            .max()
            .unwrap_or(0) as u32;
        let mut out = TernaryForm::zero(&self.field, deg);
        for (i, p) in self.c.iter().enumerate() {
            for (j, c) in p.coeffs().iter().enumerate() {
                out.add_term([i as u32, j as u32, deg - i as u32 - j as u32], c.clone());
            }
        }
        out
    }

    fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    fn deg_x(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    fn lc(&self) -> &KPoly {
        self.c.last().unwrap()
    }

    fn content(&self) -> KPoly {
        let mut g = KPoly::zero(&self.field);
        for p in &self.c {
            g = g.gcd(p);
            if g.degree() == Some(0) {
                break;
            }
        }
        g
    }

    fn div_content(&self, c: &KPoly) -> Self {
        BiPoly::new(
            &self.field,
            self.c.iter().map(|p| p.div_exact(c).unwrap()).collect(),
        )
    }

    fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let c = self.content();
        self.div_content(&c)
    }

    fn scale_poly(&self, s: &KPoly) -> Self {
        BiPoly::new(&self.field, self.c.iter().map(|p| p.mul(s)).collect())
    }

    /// Pseudo-remainder of `self` by `b` with respect to x.
    fn prem(&self, b: &BiPoly) -> BiPoly {
        let lb = b.lc().clone();
        let db = b.deg_x();
        let mut r = self.clone();
        while !r.is_zero() && r.deg_x() >= db {
            let shift = r.deg_x() - db;
            let lr = r.lc().clone();
            let mut next = r.scale_poly(&lb).c;
            for (i, bc) in b.c.iter().enumerate() {
                next[i + shift] = next[i + shift].sub(&bc.mul(&lr));
            }
            r = BiPoly::new(&self.field, next);
        }
        r
    }
}

fn bipoly_gcd(a: &BiPoly, b: &BiPoly) -> BiPoly {
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    let ca = a.content();
    let cb = b.content();
    let c = ca.gcd(&cb);
    let mut a = a.div_content(&ca);
    let mut b = b.div_content(&cb);
    if a.deg_x() < b.deg_x() {
        std::mem::swap(&mut a, &mut b);
    }
    loop {
        if b.is_zero() {
            break;
        }
        if b.deg_x() == 0 {
            // b is a primitive constant in x, hence a unit.
            a = BiPoly::new(&a.field, vec![KPoly::constant(a.field.one())]);
            break;
        }
        let r = a.prem(&b);
        a = b;
        b = r.primitive_part();
    }
    a.primitive_part().scale_poly(&c)
}

/// Monic (leading coefficient 1) gcd of two forms; the gcd with the zero form is the other form.
pub fn form_gcd(f: &TernaryForm, g: &TernaryForm) -> TernaryForm {
    if f.is_zero() {
        return g.normalized();
    }
    if g.is_zero() {
        return f.normalized();
    }
    let k = f.field().clone();
    let vf = f.z_valuation();
    let vg = g.z_valuation();
    let strip = |h: &TernaryForm, v: u32| {
        if v == 0 {
            h.clone()
        } else {
            h.div_exact(&TernaryForm::var(&k, 2).pow(v)).unwrap()
        }
    };
    let d = bipoly_gcd(&BiPoly::from_form(&strip(f, vf)), &BiPoly::from_form(&strip(g, vg)));
    let mut h = d.to_form();
    let v = vf.min(vg);
    if v > 0 {
        h = h.mul(&TernaryForm::var(&k, 2).pow(v));
    }
    h.normalized()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::NumberField;
    use crate::parse::parse_form;

    fn f(s: &str) -> TernaryForm {
        parse_form(s, &NumberField::rationals()).unwrap()
    }

    #[test]
    fn gcd_of_products() {
        let g = form_gcd(&f("(x - y)*(x + 2*z)*z"), &f("(x - y)*(y^2 - x*z)*z"));
        assert!(g.is_proportional(&f("(x - y)*z")));
        let g = form_gcd(&f("x^2 + y^2 + z^2"), &f("x*y"));
        assert_eq!(g.degree(), 0);
        let g = form_gcd(&f("y^2*(x - z)"), &f("y*(x - z)^2"));
        assert!(g.is_proportional(&f("y*(x - z)")));
    }

    #[test]
    fn gcd_pure_y_and_z() {
        let g = form_gcd(&f("y^3 - y*z^2"), &f("y^2 - 2*y*z + z^2"));
        assert!(g.is_proportional(&f("y - z")));
    }
}
