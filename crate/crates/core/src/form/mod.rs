//! Homogeneous polynomials in x, y, z.

mod gcd;

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::{same_field, Embed, Embedding, FieldExt, FieldRef, Scalar};
use crate::linalg::Mat3;
use crate::point::ProjPoint;

pub use gcd::form_gcd;

/// Exponent triple `(i, j, k)` for `x^i y^j z^k`.
pub type Exp = [u32; 3];

/// A homogeneous form. Keys of `terms` are ordered lexicographically, which
/// for a fixed total degree is graded-lex with x > y > z; the last key is the
/// leading monomial.
#[derive(Clone)]
pub struct TernaryForm {
    field: FieldRef,
    degree: u32,
    terms: BTreeMap<Exp, Scalar>,
}

impl PartialEq for TernaryForm {
    fn eq(&self, other: &Self) -> bool {
        (self.is_zero() && other.is_zero())
            || (self.degree == other.degree && self.terms == other.terms)
    }
}

impl Eq for TernaryForm {}

impl fmt::Debug for TernaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// `a·x + b·y + c·z`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LinearForm {
    pub coeffs: [Scalar; 3],
}

impl LinearForm {
    pub fn new(a: Scalar, b: Scalar, c: Scalar) -> Self {
        LinearForm { coeffs: [a, b, c] }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn field(&self) -> &FieldRef {
        self.coeffs[0].field()
    }

    pub fn to_form(&self) -> TernaryForm {
        let f = self.field().clone();
        let mut out = TernaryForm::zero(&f, 1);
        for (i, c) in self.coeffs.iter().enumerate() {
            let mut e = [0; 3];
            e[i] = 1;
            out.add_term(e, c.clone());
        }
        out
    }

    /// Recovers the linear form from a degree-1 form.
    pub fn from_form(f: &TernaryForm) -> Option<Self> {
        if f.degree() != 1 || f.is_zero() {
            return None;
        }
        Some(LinearForm {
            coeffs: [
                f.coeff(&[1, 0, 0]),
                f.coeff(&[0, 1, 0]),
                f.coeff(&[0, 0, 1]),
            ],
        })
    }

    pub fn eval(&self, p: &ProjPoint) -> Scalar {
        let c = p.coords();
        &(&(&self.coeffs[0] * &c[0]) + &(&self.coeffs[1] * &c[1])) + &(&self.coeffs[2] * &c[2])
    }
}

impl Embed for LinearForm {
    fn embed(&self, e: &Embedding) -> Self {
        LinearForm {
            coeffs: [
                e.apply(&self.coeffs[0]),
                e.apply(&self.coeffs[1]),
                e.apply(&self.coeffs[2]),
            ],
        }
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_form())
    }
}

fn all_exps(degree: u32) -> Vec<Exp> {
    let mut out = Vec::new();
    for i in 0..=degree {
        for j in 0..=(degree - i) {
            out.push([i, j, degree - i - j]);
        }
    }
    out
}

impl TernaryForm {
    pub fn zero(field: &FieldRef, degree: u32) -> Self {
        TernaryForm {
            field: field.clone(),
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: Scalar) -> Self {
        let mut f = TernaryForm::zero(&c.field().clone(), 0);
        f.add_term([0, 0, 0], c);
        f
    }

    pub fn monomial(c: Scalar, e: Exp) -> Self {
        let mut f = TernaryForm::zero(&c.field().clone(), e.iter().sum());
        f.add_term(e, c);
        f
    }

    /// The coordinate form `x`, `y` or `z` for `i = 0, 1, 2`.
    pub fn var(field: &FieldRef, i: usize) -> Self {
        let mut e = [0; 3];
        e[i] = 1;
        TernaryForm::monomial(field.one(), e)
    }

    pub fn from_terms(field: &FieldRef, degree: u32, terms: impl IntoIterator<Item = (Exp, Scalar)>) -> Result<Self> {
        let mut f = TernaryForm::zero(field, degree);
        for (e, c) in terms {
            if e.iter().sum::<u32>() != degree {
                return Err(Error::InvalidInput(format!(
                    "monomial {e:?} does not have degree {degree}"
                )));
            }
            f.add_term(e, c);
        }
        Ok(f)
    }

    pub(crate) fn add_term(&mut self, e: Exp, c: Scalar) {
        debug_assert_eq!(e.iter().sum::<u32>(), self.degree);
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                let s = &*v + &c;
                if s.is_zero() {
                    self.terms.remove(&e);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn field(&self) -> &FieldRef {
        &self.field
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exp, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, e: &Exp) -> Scalar {
        self.terms.get(e).cloned().unwrap_or_else(|| self.field.zero())
    }

    /// Graded-lex leading term.
    pub fn leading(&self) -> Option<(&Exp, &Scalar)> {
        self.terms.iter().next_back()
    }

    fn check_field(&self, o: &TernaryForm) {
        assert!(same_field(&self.field, &o.field), "forms over different fields");
    }

    pub fn add(&self, o: &Self) -> Self {
        self.check_field(o);
        if o.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return o.clone();
        }
        assert_eq!(self.degree, o.degree, "adding forms of different degrees");
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(*e, c.clone());
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        self.map_terms(|c| -c)
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        if s.is_zero() {
            return TernaryForm::zero(&self.field, self.degree);
        }
        self.map_terms(|c| c * s)
    }

    fn map_terms(&self, f: impl Fn(&Scalar) -> Scalar) -> Self {
        TernaryForm {
            field: self.field.clone(),
            degree: self.degree,
            terms: self.terms.iter().map(|(e, c)| (*e, f(c))).collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.check_field(o);
        let mut out = TernaryForm::zero(&self.field, self.degree + o.degree);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                out.add_term([e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2]], c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = TernaryForm::constant(self.field.one());
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Partial derivative with respect to variable `i` (0 = x).
    pub fn partial(&self, i: usize) -> Self {
        let mut out = TernaryForm::zero(&self.field, self.degree.saturating_sub(1));
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut ne = *e;
            ne[i] -= 1;
            out.add_term(ne, c * &self.field.int(e[i] as i64));
        }
        out
    }

    pub fn gradient(&self) -> [TernaryForm; 3] {
        [self.partial(0), self.partial(1), self.partial(2)]
    }

    /// Determinant of the matrix of second partials.
    pub fn hessian(&self) -> Result<Self> {
        if self.degree < 2 {
            return Err(Error::InvalidInput(format!(
                "hessian needs degree at least 2, got {}",
                self.degree
            )));
        }
        let g = self.gradient();
        let h: Vec<Vec<TernaryForm>> = g
            .iter()
            .map(|gi| (0..3).map(|j| gi.partial(j)).collect())
            .collect();
        let minor = |a: usize, b: usize, c: usize, d: usize| h[1][a].mul(&h[2][b]).sub(&h[1][c].mul(&h[2][d]));
        let det = h[0][0]
            .mul(&minor(1, 2, 2, 1))
            .sub(&h[0][1].mul(&minor(0, 2, 2, 0)))
            .add(&h[0][2].mul(&minor(0, 1, 1, 0)));
        let deg = 3 * (self.degree - 2);
        if det.is_zero() {
            return Ok(TernaryForm::zero(&self.field, deg));
        }
        Ok(det)
    }

    /// True iff the Hessian of the Hessian vanishes identically.
    pub fn second_hessian_is_zero(&self) -> Result<bool> {
        if self.degree != 3 {
            return Err(Error::InvalidInput(format!(
                "second Hessian test needs a cubic, got degree {}",
                self.degree
            )));
        }
        let h = self.hessian()?;
        if h.is_zero() {
            return Ok(true);
        }
        Ok(h.hessian()?.is_zero())
    }

    pub fn eval(&self, p: &[Scalar; 3]) -> Scalar {
        let mut pows: Vec<Vec<Scalar>> = Vec::with_capacity(3);
        for v in p {
            let mut row = vec![self.field.one()];
            for k in 1..=self.degree as usize {
                let next = &row[k - 1] * v;
                row.push(next);
            }
            pows.push(row);
        }
        let mut acc = self.field.zero();
        for (e, c) in &self.terms {
            let m = &(&pows[0][e[0] as usize] * &pows[1][e[1] as usize]) * &pows[2][e[2] as usize];
            acc = &acc + &(c * &m);
        }
        acc
    }

    pub fn eval_point(&self, p: &ProjPoint) -> Scalar {
        self.eval(p.coords())
    }

    /// Substitutes linear forms for x, y, z.
    pub fn substitute(&self, subs: &[TernaryForm; 3]) -> TernaryForm {
        let d = self.degree as usize;
        let mut pows: Vec<Vec<TernaryForm>> = Vec::with_capacity(3);
        for s in subs {
            let mut row = vec![TernaryForm::constant(self.field.one())];
            for k in 1..=d {
                let next = row[k - 1].mul(s);
                row.push(next);
            }
            pows.push(row);
        }
        let out_deg = self.degree * subs[0].degree;
        let mut out = TernaryForm::zero(&self.field, out_deg);
        for (e, c) in &self.terms {
            let m = pows[0][e[0] as usize]
                .mul(&pows[1][e[1] as usize])
                .mul(&pows[2][e[2] as usize]);
            out = out.add(&m.scale(c));
        }
        if out.is_zero() {
            return TernaryForm::zero(&self.field, out_deg);
        }
        out
    }

    /// `f∘T`, i.e. `p ↦ f(p·T)` for row vectors `p`.
    pub fn compose(&self, t: &Mat3) -> TernaryForm {
        let subs: [TernaryForm; 3] = std::array::from_fn(|j| {
            let mut l = TernaryForm::zero(&self.field, 1);
            for i in 0..3 {
                let mut e = [0; 3];
                e[i] = 1;
                l.add_term(e, t[i][j].clone());
            }
            l
        });
        self.substitute(&subs)
    }

    /// Divides by the coefficient of the leading monomial.
    pub fn normalized(&self) -> Self {
        match self.leading() {
            Some((_, c)) => {
                let inv = c.inv().unwrap();
                self.scale(&inv)
            }
            None => self.clone(),
        }
    }

    /// True iff `self = c·other` for a nonzero scalar `c`.
    pub fn is_proportional(&self, other: &Self) -> bool {
        if self.is_zero() || other.is_zero() {
            return self.is_zero() && other.is_zero();
        }
        self.degree == other.degree && self.normalized() == other.normalized()
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        assert!(!d.is_zero(), "division by the zero form");
        self.check_field(d);
        if self.is_zero() {
            return Some(TernaryForm::zero(&self.field, self.degree.saturating_sub(d.degree)));
        }
        if d.degree > self.degree {
            return None;
        }
        let (le, lc) = d.leading().map(|(e, c)| (*e, c.clone())).unwrap();
        let inv = lc.inv().unwrap();
        let mut r = self.clone();
        let mut q = TernaryForm::zero(&self.field, self.degree - d.degree);
        while let Some((e, c)) = r.leading().map(|(e, c)| (*e, c.clone())) {
            if (0..3).any(|i| e[i] < le[i]) {
                return None;
            }
            let qe = [e[0] - le[0], e[1] - le[1], e[2] - le[2]];
            let qc = &c * &inv;
            let t = TernaryForm::monomial(qc.clone(), qe);
            r = r.sub(&t.mul(d));
            q.add_term(qe, qc);
        }
        Some(q)
    }

    /// Remainder of division by `d` (graded-lex normal form).
    pub fn rem(&self, d: &Self) -> Self {
        assert!(!d.is_zero(), "division by the zero form");
        self.check_field(d);
        let (le, lc) = d.leading().map(|(e, c)| (*e, c.clone())).unwrap();
        let inv = lc.inv().unwrap();
        let mut r = self.clone();
        let mut out = TernaryForm::zero(&self.field, self.degree);
        while let Some((e, c)) = r.leading().map(|(e, c)| (*e, c.clone())) {
            if (0..3).any(|i| e[i] < le[i]) {
                out.add_term(e, c.clone());
                r = r.sub(&TernaryForm::monomial(c, e));
                continue;
            }
            let qe = [e[0] - le[0], e[1] - le[1], e[2] - le[2]];
            r = r.sub(&TernaryForm::monomial(&c * &inv, qe).mul(d));
        }
        out
    }

    /// Quotient by a linear form when it divides exactly.
    pub fn divide_by_linear(&self, l: &LinearForm) -> Result<Option<Self>> {
        if l.is_zero() {
            return Err(Error::InvalidInput("zero linear form".into()));
        }
        Ok(self.div_exact(&l.to_form()))
    }

    /// Square-free part and whether `self` is already square-free.
    pub fn squarefree_radical(&self) -> Result<(Self, bool)> {
        if self.is_zero() {
            return Err(Error::InvalidInput("radical of the zero form".into()));
        }
        if self.degree == 0 {
            return Ok((TernaryForm::constant(self.field.one()), true));
        }
        let mut g = self.clone();
        for p in self.gradient() {
            g = form_gcd(&g, &p);
        }
        let rad = self
            .div_exact(&g)
            .expect("gcd divides its argument")
            .normalized();
        let reduced = rad.degree == self.degree;
        Ok((rad, reduced))
    }

    /// Largest `k` with `z^k` dividing the form.
    pub(crate) fn z_valuation(&self) -> u32 {
        self.terms.keys().map(|e| e[2]).min().unwrap_or(0)
    }

    /// Every exponent triple of the given degree (grlex ascending).
    pub fn monomials(degree: u32) -> Vec<Exp> {
        all_exps(degree)
    }
}

impl Embed for TernaryForm {
    fn embed(&self, e: &Embedding) -> Self {
        TernaryForm {
            field: e.target.clone(),
            degree: self.degree,
            terms: self.terms.iter().map(|(k, c)| (*k, e.apply(c))).collect(),
        }
    }
}

fn fmt_monomial(e: &Exp) -> String {
    let names = ["x", "y", "z"];
    let mut parts = Vec::new();
    for i in 0..3 {
        match e[i] {
            0 => {}
            1 => parts.push(names[i].to_string()),
            n => parts.push(format!("{}^{}", names[i], n)),
        }
    }
    parts.join("*")
}

impl fmt::Display for TernaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&fmt_sum(self.terms.iter().rev().map(|(e, c)| (fmt_monomial(e), c))))
    }
}

/// Renders `Σ c·m` with signs folded into the separators.
pub(crate) fn fmt_sum<'a>(terms: impl Iterator<Item = (String, &'a Scalar)>) -> String {
    let mut out = String::new();
    for (mono, c) in terms {
        if c.is_zero() {
            continue;
        }
        let (neg, body) = match c.rational_sign() {
            Some(s) => {
                let a = if s < 0 { -c } else { c.clone() };
                let body = if mono.is_empty() {
                    a.to_string()
                } else if a.is_one() {
                    mono.clone()
                } else {
                    format!("{a}*{mono}")
                };
                (s < 0, body)
            }
            None => {
                let cs = format!("({c})");
                let body = if mono.is_empty() { cs } else { format!("{cs}*{mono}") };
                (false, body)
            }
        };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        out.push_str(&body);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::NumberField;
    use crate::parse::parse_form;

    fn q() -> FieldRef {
        NumberField::rationals()
    }

    fn f(s: &str) -> TernaryForm {
        parse_form(s, &q()).unwrap()
    }

    #[test]
    fn hessian_examples() {
        assert!(f("x^3").hessian().unwrap().is_zero());
        assert!(f("x^2*y").hessian().unwrap().is_zero());
        assert_eq!(f("x*y*z").hessian().unwrap(), f("2*x*y*z"));
        assert_eq!(f("x^3 - y^2*z").hessian().unwrap(), f("-24*x*y^2"));
        assert_eq!(f("x^3 - y^2*z").hessian().unwrap().to_string(), "-24*x*y^2");
    }

    #[test]
    fn second_hessian_examples() {
        assert!(f("x^3 - y^2*z").second_hessian_is_zero().unwrap());
        assert!(!f("x*y*z").second_hessian_is_zero().unwrap());
        assert!(f("x^3").second_hessian_is_zero().unwrap());
        assert!(f("x^2").second_hessian_is_zero().is_err());
    }

    #[test]
    fn linear_division() {
        let x = LinearForm::new(q().one(), q().zero(), q().zero());
        let y = LinearForm::new(q().zero(), q().one(), q().zero());
        assert_eq!(f("x^2*y").divide_by_linear(&x).unwrap(), Some(f("x*y")));
        assert_eq!(
            f("y*(x^2 - y*z)").divide_by_linear(&y).unwrap(),
            Some(f("x^2 - y*z"))
        );
        assert_eq!(f("x^3 - y^2*z").divide_by_linear(&x).unwrap(), None);
        let zero = LinearForm::new(q().zero(), q().zero(), q().zero());
        assert!(f("x").divide_by_linear(&zero).is_err());
    }

    #[test]
    fn radicals() {
        assert_eq!(f("x^3").squarefree_radical().unwrap(), (f("x"), false));
        assert_eq!(f("x^2*y").squarefree_radical().unwrap(), (f("x*y"), false));
        assert_eq!(f("x*y*z").squarefree_radical().unwrap(), (f("x*y*z"), true));
        let (r, red) = f("(x - y)^2*(x + z)").squarefree_radical().unwrap();
        assert!(!red);
        assert!(r.is_proportional(&f("(x - y)*(x + z)")));
    }

    #[test]
    fn evaluation() {
        let pt = |a: i64, b: i64, c: i64| [q().int(a), q().int(b), q().int(c)];
        assert!(f("x^3 - y^2*z").eval(&pt(0, 0, 1)).is_zero());
        assert!(f("x*y*z").eval(&pt(1, 1, 1)).is_one());
        assert!(f("x^3 + y^3 + z^3 - x*y*z").eval(&pt(1, -1, 0)).is_zero());
    }

    #[test]
    fn display_irrational_coefficient() {
        let k = NumberField::new("t", crate::field::QPoly::from_ints(&[1, 1, 1])).unwrap();
        let g = parse_form("(t - 1)*x*y*z", &k).unwrap();
        assert_eq!(g.to_string(), "(t - 1)*x*y*z");
    }
}
