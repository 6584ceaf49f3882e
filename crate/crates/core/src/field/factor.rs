//! Factorization over Q and over number fields, and root adjunction.

use algebraics::polynomial::Polynomial;
use num_bigint::BigInt;

use super::kpoly::KPoly;
use super::number_field::{same_field, FieldExt, FieldRef, NumberField, Scalar};
use super::qpoly::{rat, QPoly, Rat};
use crate::error::{invariant, Error, Result};

/// Monic irreducible factors over Q with multiplicities.
pub fn factor_q(p: &QPoly) -> Vec<(QPoly, usize)> {
    let Some(deg) = p.degree() else {
        return Vec::new();
    };
    if deg == 0 {
        return Vec::new();
    }
    if deg == 1 {
        return vec![(p.monic(), 1)];
    }
    let ints: Polynomial<BigInt> = p.primitive_integer().into_iter().collect();
    let factors = ints.factor();
    let mut out: Vec<(QPoly, usize)> = factors
        .polynomial_factors
        .into_iter()
        .map(|f| {
            let q = QPoly::new(f.polynomial.iter().map(|c| Rat::from_integer(c.clone())).collect());
            (q.monic(), f.power)
        })
        .filter(|(q, _)| q.degree().unwrap_or(0) > 0)
        .collect();
    out.sort_by(|a, b| {
        a.0.degree()
            .cmp(&b.0.degree())
            .then_with(|| format!("{}", a.0).cmp(&format!("{}", b.0)))
    });
    out
}

/// Square-free decomposition (Yun): returns `(a_i, i)` with `p = lc · Π a_i^i`.
pub fn squarefree_decomposition(p: &KPoly) -> Vec<(KPoly, usize)> {
    let mut out = Vec::new();
    if p.degree().unwrap_or(0) == 0 {
        return out;
    }
    let f = p.monic();
    let fp = f.derivative();
    let a0 = f.gcd(&fp);
    let mut b = f.div_exact(&a0).unwrap();
    let c = fp.div_exact(&a0).unwrap();
    let mut d = c.sub(&b.derivative());
    let mut i = 1;
    while b.degree().unwrap_or(0) > 0 {
        let a = b.gcd(&d);
        b = b.div_exact(&a).unwrap();
        let c = d.div_exact(&a).unwrap();
        d = c.sub(&b.derivative());
        if a.degree().unwrap_or(0) > 0 {
            out.push((a, i));
        }
        i += 1;
    }
    out
}

/// Shift order used by the norm method: 0, 1, -1, 2, -2, ...
fn shifts() -> impl Iterator<Item = i64> {
    (0..).map(|k: i64| if k % 2 == 1 { (k + 1) / 2 } else { -(k / 2) })
}

/// For `q` squarefree over K, finds `s` such that `Norm(q(x - sθ))` is
/// squarefree over Q and returns `(s, q(x - sθ), norm)`.
fn norm_shift(q: &KPoly) -> (i64, KPoly, QPoly) {
    let k = q.field().clone();
    let n = q.degree().unwrap();
    let d = k.degree();
    let theta = k.generator();
    for s in shifts() {
        let lin = KPoly::new(&k, vec![-theta.scale(&rat(s)), k.one()]);
        let qs = q.compose(&lin);
        let pts: Vec<(Rat, Rat)> = (0..=(n * d) as i64)
            .map(|x0| (rat(x0), qs.eval(&k.int(x0)).norm()))
            .collect();
        let norm = QPoly::interpolate(&pts);
        if norm.is_squarefree() {
            return (s, qs, norm);
        }
    }
    unreachable!()
}

fn factor_squarefree_k(q: &KPoly) -> Vec<KPoly> {
    let k = q.field().clone();
    let q = q.monic();
    if q.degree().unwrap_or(0) <= 1 {
        return vec![q];
    }
    if k.is_rationals() {
        let qq = q.as_qpoly().unwrap();
        return factor_q(&qq)
            .into_iter()
            .map(|(f, _)| KPoly::from_qpoly(&k, &f))
            .collect();
    }
    let (s, qs, norm) = norm_shift(&q);
    let back = KPoly::new(&k, vec![k.generator().scale(&rat(s)), k.one()]);
    let mut out = Vec::new();
    for (h, _) in factor_q(&norm) {
        let g = qs.gcd(&KPoly::from_qpoly(&k, &h));
        if g.degree().unwrap_or(0) > 0 {
            out.push(g.compose(&back).monic());
        }
    }
    out
}

/// Monic irreducible factors over the coefficient field, with multiplicities,
/// sorted by degree.
pub fn factor_k(p: &KPoly) -> Vec<(KPoly, usize)> {
    let mut out = Vec::new();
    for (a, mult) in squarefree_decomposition(p) {
        for f in factor_squarefree_k(&a) {
            out.push((f, mult));
        }
    }
    out.sort_by_key(|(f, _)| f.degree());
    out
}

/// Distinct roots of `p` lying in its coefficient field.
pub fn roots_in_field(p: &KPoly) -> Vec<Scalar> {
    factor_k(p)
        .into_iter()
        .filter(|(f, _)| f.degree() == Some(1))
        .map(|(f, _)| -f.coeff(0))
        .collect()
}

/// Field homomorphism `source -> target` given by the image of the generator.
#[derive(Clone, Debug)]
pub struct Embedding {
    pub source: FieldRef,
    pub target: FieldRef,
    pub gen_image: Scalar,
}

impl Embedding {
    pub fn identity(field: &FieldRef) -> Self {
        Embedding {
            source: field.clone(),
            target: field.clone(),
            gen_image: field.generator(),
        }
    }

    pub fn is_identity(&self) -> bool {
        same_field(&self.source, &self.target)
    }

    pub fn apply(&self, a: &Scalar) -> Scalar {
        assert!(
            same_field(a.field(), &self.source),
            "embedding applied to a scalar of the wrong field"
        );
        if self.is_identity() {
            return a.clone();
        }
        if let Some(r) = a.as_rational() {
            return self.target.rational(r);
        }
        let mut acc = self.target.zero();
        for c in a.coeffs().iter().rev() {
            acc = &(&acc * &self.gen_image) + &self.target.rational(c.clone());
        }
        acc
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &Embedding) -> Embedding {
        Embedding {
            source: self.source.clone(),
            target: other.target.clone(),
            gen_image: other.apply(&self.gen_image),
        }
    }
}

/// Values that can be carried along a field embedding.
pub trait Embed: Sized {
    fn embed(&self, e: &Embedding) -> Self;
}

impl Embed for Scalar {
    fn embed(&self, e: &Embedding) -> Self {
        e.apply(self)
    }
}

impl Embed for KPoly {
    fn embed(&self, e: &Embedding) -> Self {
        self.map_coeffs(&e.target, |c| e.apply(c))
    }
}

impl<T: Embed> Embed for Vec<T> {
    fn embed(&self, e: &Embedding) -> Self {
        self.iter().map(|x| x.embed(e)).collect()
    }
}

impl<T: Embed> Embed for Option<T> {
    fn embed(&self, e: &Embedding) -> Self {
        self.as_ref().map(|x| x.embed(e))
    }
}

impl<A: Embed, B: Embed> Embed for (A, B) {
    fn embed(&self, e: &Embedding) -> Self {
        (self.0.embed(e), self.1.embed(e))
    }
}

/// Result of [`adjoin_root`].
#[derive(Clone, Debug)]
pub struct Adjoined {
    pub field: FieldRef,
    pub root: Scalar,
    pub embedding: Embedding,
}

/// Returns a field containing a root of `p`, the root, and the embedding of
/// the old field. When `p` already has a root the field is unchanged.
pub fn adjoin_root(p: &KPoly, degree_cap: usize) -> Result<Adjoined> {
    let k = p.field().clone();
    match p.degree() {
        None | Some(0) => return Err(Error::DegreeZero),
        _ => {}
    }
    let factors = factor_k(p);
    if let Some((lin, _)) = factors.iter().find(|(f, _)| f.degree() == Some(1)) {
        return Ok(Adjoined {
            root: -lin.coeff(0),
            embedding: Embedding::identity(&k),
            field: k,
        });
    }
    let q = &factors[0].0;
    let e = q.degree().unwrap();
    let new_degree = e * k.degree();
    if new_degree > degree_cap {
        return Err(Error::DegreeCap {
            degree: new_degree,
            cap: degree_cap,
        });
    }
    let name = format!("g{new_degree}");
    if k.is_rationals() {
        let l = NumberField::new_unchecked(&name, q.as_qpoly().unwrap());
        return Ok(Adjoined {
            root: l.generator(),
            embedding: Embedding {
                source: k,
                target: l.clone(),
                gen_image: l.zero(),
            },
            field: l,
        });
    }
    let (s, _, norm) = norm_shift(q);
    let l = NumberField::new_unchecked(&name, norm.monic());
    let gamma = l.generator();
    // θ_L is the common root of m(T) and q(γ - sT) in L.
    let m = KPoly::from_qpoly(&l, k.min_poly());
    let shift = KPoly::new(&l, vec![gamma.clone(), l.int(-s)]);
    let mut shifted = KPoly::zero(&l);
    let mut power = KPoly::constant(l.one());
    for c in q.coeffs() {
        let ci = KPoly::from_qpoly(&l, &c.to_poly());
        shifted = shifted.add(&ci.mul(&power));
        power = power.mul(&shift);
    }
    let g = m.gcd(&shifted);
    if g.degree() != Some(1) {
        return invariant(format!(
            "primitive element construction failed: gcd has degree {:?}",
            g.degree()
        ));
    }
    let theta_l = -g.coeff(0);
    let emb = Embedding {
        source: k.clone(),
        target: l.clone(),
        gen_image: theta_l.clone(),
    };
    let root = &gamma - &theta_l.scale(&rat(s));
    if !q.embed(&emb).eval(&root).is_zero() {
        return invariant("adjoined root does not satisfy its polynomial");
    }
    Ok(Adjoined {
        field: l,
        root,
        embedding: emb,
    })
}

/// Number of distinct roots of `p` over an algebraic closure.
pub fn distinct_root_count(p: &KPoly) -> usize {
    squarefree_decomposition(p)
        .iter()
        .map(|(a, _)| a.degree().unwrap_or(0))
        .sum()
}

/// True if `a` has a square root in its own field.
pub fn is_square(a: &Scalar) -> bool {
    if a.is_zero() {
        return true;
    }
    let k = a.field().clone();
    let p = KPoly::new(&k, vec![-a, k.zero(), k.one()]);
    !roots_in_field(&p).is_empty()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::DEFAULT_DEGREE_CAP;

    fn q() -> FieldRef {
        NumberField::rationals()
    }

    #[test]
    fn factor_over_q() {
        let p = QPoly::from_ints(&[-1, 0, 0, 1]); // t^3 - 1
        let f = factor_q(&p);
        assert_eq!(f.len(), 2);
        assert_eq!(f[0].0, QPoly::from_ints(&[-1, 1]));
        assert_eq!(f[1].0, QPoly::from_ints(&[1, 1, 1]));
    }

    #[test]
    fn adjoin_sqrt2() {
        let p = KPoly::from_qpoly(&q(), &QPoly::from_ints(&[-2, 0, 1]));
        let a = adjoin_root(&p, DEFAULT_DEGREE_CAP).unwrap();
        assert_eq!(a.field.degree(), 2);
        assert_eq!(a.field.min_poly(), &QPoly::from_ints(&[-2, 0, 1]));
        assert!(p.embed(&a.embedding).eval(&a.root).is_zero());
    }

    #[test]
    fn adjoin_with_rational_root_keeps_field() {
        let p = KPoly::from_qpoly(&q(), &QPoly::from_ints(&[-1, 0, 1]));
        let a = adjoin_root(&p, DEFAULT_DEGREE_CAP).unwrap();
        assert!(a.field.is_rationals());
        assert!(a.root.is_one() || (-&a.root).is_one());
    }

    #[test]
    fn tower_sqrt2_then_sqrt3() {
        let p = KPoly::from_qpoly(&q(), &QPoly::from_ints(&[-2, 0, 1]));
        let a = adjoin_root(&p, DEFAULT_DEGREE_CAP).unwrap();
        let k = a.field.clone();
        let p3 = KPoly::from_qpoly(&k, &QPoly::from_ints(&[-3, 0, 1]));
        let b = adjoin_root(&p3, DEFAULT_DEGREE_CAP).unwrap();
        assert_eq!(b.field.degree(), 4);
        assert!(p3.embed(&b.embedding).eval(&b.root).is_zero());
        let s2 = b.embedding.apply(&a.root);
        assert_eq!(&s2 * &s2, b.field.int(2));
        // x^2 - 2 now splits
        let p2 = KPoly::from_qpoly(&b.field, &QPoly::from_ints(&[-2, 0, 1]));
        assert_eq!(factor_k(&p2).len(), 2);
    }

    #[test]
    fn factor_over_extension_splits_cyclotomic() {
        let k = NumberField::new("w", QPoly::from_ints(&[1, 1, 1])).unwrap();
        let p = KPoly::from_qpoly(&k, &QPoly::from_ints(&[-1, 0, 0, 1]));
        let f = factor_k(&p);
        assert_eq!(f.len(), 3);
        assert!(f.iter().all(|(g, m)| g.degree() == Some(1) && *m == 1));
    }

    #[test]
    fn degree_cap_enforced() {
        let p = KPoly::from_qpoly(&q(), &QPoly::from_ints(&[-2, 0, 0, 1]));
        assert!(matches!(adjoin_root(&p, 2), Err(Error::DegreeCap { .. })));
    }

    #[test]
    fn squarefree_parts() {
        // (x-1)^2 (x+2)
        let p = KPoly::from_qpoly(&q(), &QPoly::from_ints(&[-1, 1]).pow(2).mul(&QPoly::from_ints(&[2, 1])));
        let d = squarefree_decomposition(&p);
        assert_eq!(d.len(), 2);
        assert_eq!(distinct_root_count(&p), 2);
    }
}
