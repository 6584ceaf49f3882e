//! Recursive-descent parser for scalar, form and relation literals.
//!
//! Grammar: `expr := term (("+" | "-") term)*`, `term := unary (("*" | "/")? unary)*`,
//! `unary := ("-" | "+") unary | power`, `power := atom ("^" integer)?`,
//! `atom := integer | identifier | "(" expr ")"`. Juxtaposition multiplies.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::field::{FieldExt, FieldRef, QPoly, Rat, Scalar};
use crate::form::TernaryForm;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(num_bigint::BigInt),
    Ident(String),
    Op(char),
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            out.push(Tok::Num(digits.parse().unwrap()));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Tok::Ident(chars[start..i].iter().collect()));
        } else {
            let op = match c {
                '+' | '-' | '*' | '/' | '^' | '(' | ')' => c,
                '\u{2212}' => '-',
                '\u{00b7}' | '\u{22c5}' => '*',
                _ => return Err(Error::Parse(format!("unexpected character {c:?} in {s:?}"))),
            };
            out.push(Tok::Op(op));
            i += 1;
        }
    }
    Ok(out)
}

/// Values the parser can build.
trait Value: Sized + Clone {
    fn int(&self, n: &num_bigint::BigInt) -> Self;
    fn ident(&self, name: &str) -> Result<Self>;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn div(&self, o: &Self) -> Result<Self>;
}

struct Parser<'a, V: Value> {
    toks: Vec<Tok>,
    pos: usize,
    proto: &'a V,
    src: &'a str,
}

impl<'a, V: Value> Parser<'a, V> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} in {:?}", self.src))
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<V> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = acc.add(&self.term()?);
            } else if self.eat('-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<V> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = acc.mul(&self.unary()?);
            } else if self.eat('/') {
                let d = self.unary()?;
                acc = acc.div(&d)?;
            } else if matches!(self.peek(), Some(Tok::Num(_) | Tok::Ident(_) | Tok::Op('('))) {
                acc = acc.mul(&self.power()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<V> {
        if self.eat('-') {
            return Ok(self.unary()?.neg());
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<V> {
        let base = self.atom()?;
        if self.eat('^') {
            let Some(Tok::Num(n)) = self.peek().cloned() else {
                return Err(self.err("expected a nonnegative integer exponent"));
            };
            self.pos += 1;
            let e: u32 = n
                .try_into()
                .map_err(|_| self.err("exponent too large"))?;
            let mut acc = self.proto.int(&1.into());
            for _ in 0..e {
                acc = acc.mul(&base);
            }
            return Ok(acc);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<V> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(self.proto.int(&n))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                self.proto.ident(&name)
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let v = self.expr()?;
                if !self.eat(')') {
                    return Err(self.err("missing ')'"));
                }
                Ok(v)
            }
            Some(t) => Err(self.err(&format!("unexpected token {t:?}"))),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

fn run<V: Value>(src: &str, proto: &V) -> Result<V> {
    let toks = tokenize(src)?;
    if toks.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let mut p = Parser {
        toks,
        pos: 0,
        proto,
        src,
    };
    let v = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(p.err("trailing input"));
    }
    Ok(v)
}

#[derive(Clone)]
struct QPolyValue {
    var: String,
    p: QPoly,
}

impl Value for QPolyValue {
    fn int(&self, n: &num_bigint::BigInt) -> Self {
        QPolyValue {
            var: self.var.clone(),
            p: QPoly::constant(Rat::from_integer(n.clone())),
        }
    }
    fn ident(&self, name: &str) -> Result<Self> {
        if name != self.var {
            return Err(Error::Parse(format!(
                "unknown symbol {name:?} (expected {:?})",
                self.var
            )));
        }
        Ok(QPolyValue {
            var: self.var.clone(),
            p: QPoly::x(),
        })
    }
    fn add(&self, o: &Self) -> Self {
        self.with(self.p.add(&o.p))
    }
    fn sub(&self, o: &Self) -> Self {
        self.with(self.p.sub(&o.p))
    }
    fn mul(&self, o: &Self) -> Self {
        self.with(self.p.mul(&o.p))
    }
    fn neg(&self) -> Self {
        self.with(self.p.neg())
    }
    fn div(&self, o: &Self) -> Result<Self> {
        match o.p.degree() {
            Some(0) => Ok(self.with(self.p.scale(&o.p.lc().recip()))),
            None => Err(Error::DivisionByZero),
            _ => Err(Error::Parse("division by a non-constant polynomial".into())),
        }
    }
}

impl QPolyValue {
    fn with(&self, p: QPoly) -> Self {
        QPolyValue {
            var: self.var.clone(),
            p,
        }
    }
}

/// Parses a univariate polynomial over Q in the variable `var`.
pub fn parse_qpoly(src: &str, var: &str) -> Result<QPoly> {
    let proto = QPolyValue {
        var: var.to_string(),
        p: QPoly::zero(),
    };
    Ok(run(src, &proto)?.p)
}

#[derive(Clone)]
struct ScalarValue(Scalar);

impl Value for ScalarValue {
    fn int(&self, n: &num_bigint::BigInt) -> Self {
        ScalarValue(self.0.field().rational(Rat::from_integer(n.clone())))
    }
    fn ident(&self, name: &str) -> Result<Self> {
        let k = self.0.field();
        if !k.is_rationals() && name == k.name() {
            Ok(ScalarValue(k.generator()))
        } else {
            Err(Error::Parse(format!("unknown symbol {name:?}")))
        }
    }
    fn add(&self, o: &Self) -> Self {
        ScalarValue(&self.0 + &o.0)
    }
    fn sub(&self, o: &Self) -> Self {
        ScalarValue(&self.0 - &o.0)
    }
    fn mul(&self, o: &Self) -> Self {
        ScalarValue(&self.0 * &o.0)
    }
    fn neg(&self) -> Self {
        ScalarValue(-&self.0)
    }
    fn div(&self, o: &Self) -> Result<Self> {
        Ok(ScalarValue(self.0.try_div(&o.0)?))
    }
}

/// Parses a scalar literal such as `"3/2"` or `"t^2 - 1/3*t"`.
pub fn parse_scalar(src: &str, k: &FieldRef) -> Result<Scalar> {
    Ok(run(src, &ScalarValue(k.zero()))?.0)
}

/// Noncommutative polynomial in x, y, z: words (variable indices) to coefficients.
#[derive(Clone, Debug)]
pub struct NcPoly {
    pub field: FieldRef,
    pub terms: BTreeMap<Vec<u8>, Scalar>,
}

impl NcPoly {
    fn constant(c: Scalar) -> Self {
        let mut terms = BTreeMap::new();
        let k = c.field().clone();
        if !c.is_zero() {
            terms.insert(Vec::new(), c);
        }
        NcPoly { field: k, terms }
    }

    fn insert(&mut self, w: Vec<u8>, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let new = match self.terms.get(&w) {
            Some(v) => v + &c,
            None => c,
        };
        if new.is_zero() {
            self.terms.remove(&w);
        } else {
            self.terms.insert(w, new);
        }
    }

    fn as_constant(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(self.field.zero()),
            1 => self.terms.get(&Vec::new()).cloned(),
            _ => None,
        }
    }

    /// Total degree if every word has the same length.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut it = self.terms.keys().map(|w| w.len());
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }
}

impl Value for NcPoly {
    fn int(&self, n: &num_bigint::BigInt) -> Self {
        NcPoly::constant(self.field.rational(Rat::from_integer(n.clone())))
    }
    fn ident(&self, name: &str) -> Result<Self> {
        // "yz" is read as the word y·z
        let word: Option<Vec<u8>> = name
            .chars()
            .map(|c| match c {
                'x' => Some(0u8),
                'y' => Some(1),
                'z' => Some(2),
                _ => None,
            })
            .collect();
        if let Some(w) = word {
            let mut p = NcPoly::constant(self.field.zero());
            p.insert(w, self.field.one());
            return Ok(p);
        }
        let s = ScalarValue(self.field.zero()).ident(name)?;
        Ok(NcPoly::constant(s.0))
    }
    fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &o.terms {
            out.insert(w.clone(), c.clone());
        }
        out
    }
    fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }
    fn mul(&self, o: &Self) -> Self {
        let mut out = NcPoly::constant(self.field.zero());
        for (w1, c1) in &self.terms {
            for (w2, c2) in &o.terms {
                let mut w = w1.clone();
                w.extend_from_slice(w2);
                out.insert(w, c1 * c2);
            }
        }
        out
    }
    fn neg(&self) -> Self {
        NcPoly {
            field: self.field.clone(),
            terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect(),
        }
    }
    fn div(&self, o: &Self) -> Result<Self> {
        let c = o
            .as_constant()
            .ok_or_else(|| Error::Parse("division by a non-constant expression".into()))?;
        let inv = c.inv().ok_or(Error::DivisionByZero)?;
        Ok(self.mul(&NcPoly::constant(inv)))
    }
}

/// Parses an element of the free algebra on x, y, z.
pub fn parse_nc(src: &str, k: &FieldRef) -> Result<NcPoly> {
    run(src, &NcPoly::constant(k.zero()))
}

/// Parses a quadratic relation into its 3×3 coefficient matrix `C[i][j]`
/// (coefficient of the word `x_i x_j`).
pub fn parse_relation(src: &str, k: &FieldRef) -> Result<[[Scalar; 3]; 3]> {
    let p = parse_nc(src, k)?;
    if p.terms.is_empty() {
        return Err(Error::InvalidInput(format!("relation {src:?} is zero")));
    }
    if p.homogeneous_degree() != Some(2) {
        return Err(Error::InvalidInput(format!(
            "relation {src:?} is not homogeneous of degree 2"
        )));
    }
    let mut c: [[Scalar; 3]; 3] = std::array::from_fn(|_| std::array::from_fn(|_| k.zero()));
    for (w, v) in &p.terms {
        c[w[0] as usize][w[1] as usize] = v.clone();
    }
    Ok(c)
}

/// Parses a homogeneous commutative form such as `"x^3 - y^2*z"`.
pub fn parse_form(src: &str, k: &FieldRef) -> Result<TernaryForm> {
    let p = parse_nc(src, k)?;
    let mut collected: BTreeMap<[u32; 3], Scalar> = BTreeMap::new();
    for (w, c) in &p.terms {
        let mut e = [0u32; 3];
        for &v in w {
            e[v as usize] += 1;
        }
        let entry = collected.entry(e).or_insert_with(|| k.zero());
        *entry = &*entry + c;
    }
    collected.retain(|_, c| !c.is_zero());
    let degs: Vec<u32> = collected.keys().map(|e| e.iter().sum()).collect();
    let Some(&d) = degs.first() else {
        return Err(Error::InvalidInput(format!("form {src:?} is zero")));
    };
    if degs.iter().any(|&e| e != d) {
        return Err(Error::InvalidInput(format!("form {src:?} is not homogeneous")));
    }
    TernaryForm::from_terms(k, d, collected)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{rat, rat_frac, NumberField};

    #[test]
    fn scalars() {
        let q = NumberField::rationals();
        assert_eq!(parse_scalar("3/2", &q).unwrap(), q.rational(rat_frac(3, 2)));
        assert_eq!(parse_scalar("-1", &q).unwrap(), q.int(-1));
        assert_eq!(parse_scalar("2^3 - 1", &q).unwrap(), q.int(7));
        assert!(parse_scalar("t", &q).is_err());
        let k = NumberField::new("t", parse_qpoly("t^2+t+1", "t").unwrap()).unwrap();
        let a = parse_scalar("t^2 - 1/3*t", &k).unwrap();
        // t^2 = -t - 1
        assert_eq!(a, k.generator().scale(&rat_frac(-4, 3)) - k.int(1));
        assert!(parse_scalar("1/0", &q).is_err());
    }

    #[test]
    fn relations() {
        let q = NumberField::rationals();
        let c = parse_relation("y*z - 2*z*y", &q).unwrap();
        assert_eq!(c[1][2], q.int(1));
        assert_eq!(c[2][1], q.int(-2));
        let c = parse_relation("zx - xz - 1/3(yx + xy)", &q).unwrap();
        assert_eq!(c[2][0], q.int(1));
        assert_eq!(c[0][1], q.rational(rat_frac(-1, 3)));
        let c = parse_relation("z*x - x*z - 1/3*(y*x + x*y)", &q).unwrap();
        assert_eq!(c[1][0], q.rational(rat_frac(-1, 3)));
        assert!(parse_relation("x*y*z", &q).is_err());
    }

    #[test]
    fn forms() {
        let q = NumberField::rationals();
        let f = parse_form("x^3 - y^2*z", &q).unwrap();
        assert_eq!(f.degree(), 3);
        assert_eq!(f.coeff(&[0, 2, 1]), q.int(-1));
        let g = parse_form("2x y z", &q).unwrap();
        assert_eq!(g.coeff(&[1, 1, 1]), q.int(2));
        assert!(parse_form("x^2 + y", &q).is_err());
        assert_eq!(parse_qpoly("t^2 + t + 1", "t").unwrap(), QPoly::from_ints(&[1, 1, 1]));
        let _ = rat(0);
    }
}
