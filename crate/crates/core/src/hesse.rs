//! Group law on Hesse cubics `x³ + y³ + z³ − λxyz` with identity `(1, −1, 0)`.

use std::fmt;

use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::field::{same_field, Embed, Embedding, FieldExt, FieldRef, Rat, Scalar, DEFAULT_DEGREE_CAP};
use crate::form::TernaryForm;
use crate::order_result::OrderResult;
use crate::point::ProjPoint;

/// Ring operations needed by the projective group-law formulas.
pub(crate) trait Coord: Clone {
    fn lift(&self, n: i64) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn is_zero(&self) -> bool;
}

impl Coord for Scalar {
    fn lift(&self, n: i64) -> Self {
        self.field().int(n)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
}

/// Element of the prime field F_p (p < 2^31).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Fp {
    v: u64,
    p: u64,
}

impl Fp {
    fn new(v: i64, p: u64) -> Self {
        Fp {
            v: v.rem_euclid(p as i64) as u64,
            p,
        }
    }

    fn pow(self, mut e: u64) -> Self {
        let mut acc = Fp { v: 1, p: self.p };
        let mut b = self;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b);
            }
            b = b.mul(&b);
            e >>= 1;
        }
        acc
    }

    fn inv(self) -> Option<Self> {
        (self.v != 0).then(|| self.pow(self.p - 2))
    }
}

impl Coord for Fp {
    fn lift(&self, n: i64) -> Self {
        Fp::new(n, self.p)
    }
    fn add(&self, o: &Self) -> Self {
        Fp {
            v: (self.v + o.v) % self.p,
            p: self.p,
        }
    }
    fn sub(&self, o: &Self) -> Self {
        Fp {
            v: (self.v + self.p - o.v) % self.p,
            p: self.p,
        }
    }
    fn mul(&self, o: &Self) -> Self {
        Fp {
            v: self.v * o.v % self.p,
            p: self.p,
        }
    }
    fn is_zero(&self) -> bool {
        self.v == 0
    }
}

type V3<T> = [T; 3];

fn dot<T: Coord>(a: &V3<T>, b: &V3<T>) -> T {
    a[0].mul(&b[0]).add(&a[1].mul(&b[1])).add(&a[2].mul(&b[2]))
}

fn cross<T: Coord>(a: &V3<T>, b: &V3<T>) -> V3<T> {
    [
        a[1].mul(&b[2]).sub(&a[2].mul(&b[1])),
        a[2].mul(&b[0]).sub(&a[0].mul(&b[2])),
        a[0].mul(&b[1]).sub(&a[1].mul(&b[0])),
    ]
}

fn is_zero3<T: Coord>(a: &V3<T>) -> bool {
    a.iter().all(|c| c.is_zero())
}

fn proj_eq<T: Coord>(a: &V3<T>, b: &V3<T>) -> bool {
    is_zero3(&cross(a, b))
}

fn lin<T: Coord>(s: &T, a: &V3<T>, u: &T, b: &V3<T>) -> V3<T> {
    std::array::from_fn(|i| s.mul(&a[i]).add(&u.mul(&b[i])))
}

fn curve_eval<T: Coord>(l: &T, p: &V3<T>) -> T {
    let [x, y, z] = p;
    let cubes = x.mul(x).mul(x).add(&y.mul(y).mul(y)).add(&z.mul(z).mul(z));
    cubes.sub(&l.mul(&x.mul(y).mul(z)))
}

fn grad<T: Coord>(l: &T, p: &V3<T>) -> V3<T> {
    let [x, y, z] = p;
    let three = x.lift(3);
    [
        three.mul(&x.mul(x)).sub(&l.mul(&y.mul(z))),
        three.mul(&y.mul(y)).sub(&l.mul(&x.mul(z))),
        three.mul(&z.mul(z)).sub(&l.mul(&x.mul(y))),
    ]
}

fn neg<T: Coord>(p: &V3<T>) -> V3<T> {
    [p[1].clone(), p[0].clone(), p[2].clone()]
}

/// Third intersection of the line through `p` and `q` (the tangent when
/// they coincide) with the curve.
fn third_point<T: Coord>(l: &T, p: &V3<T>, q: &V3<T>) -> V3<T> {
    if proj_eq(p, q) {
        let t = grad(l, p);
        let one = p[0].lift(1);
        let zero = p[0].lift(0);
        for k in 0..3 {
            let mut e = [zero.clone(), zero.clone(), zero.clone()];
            e[k] = one.clone();
            let d = cross(&t, &e);
            if is_zero3(&d) || proj_eq(&d, p) {
                continue;
            }
            // g(sP + uD) = u²(s·B + u·g(D)) on the tangent line
            let b = dot(&grad(l, &d), p);
            let gd = curve_eval(l, &d);
            return lin(&gd, p, &b.lift(0).sub(&b), &d);
        }
        unreachable!("tangent line always contains a second point");
    }
    // g(sP + uQ) = s·u·(s·A + u·B)
    let a = dot(&grad(l, p), q);
    let b = dot(&grad(l, q), p);
    lin(&b, p, &a.lift(0).sub(&a), q)
}

fn add_generic<T: Coord>(l: &T, p: &V3<T>, q: &V3<T>) -> V3<T> {
    neg(&third_point(l, p, q))
}

/// Closed Hesse-form addition; `None` where the formulas degenerate.
fn add_closed<T: Coord>(p: &V3<T>, q: &V3<T>) -> Option<V3<T>> {
    let [x1, y1, z1] = p;
    let [x2, y2, z2] = q;
    let r = if proj_eq(p, q) {
        let (x3, y3, z3) = (x1.mul(x1).mul(x1), y1.mul(y1).mul(y1), z1.mul(z1).mul(z1));
        [
            y1.mul(&z3.sub(&x3)),
            x1.mul(&y3.sub(&z3)),
            z1.mul(&x3.sub(&y3)),
        ]
    } else {
        [
            y1.mul(y1).mul(x2).mul(z2).sub(&y2.mul(y2).mul(x1).mul(z1)),
            x1.mul(x1).mul(y2).mul(z2).sub(&x2.mul(x2).mul(y1).mul(z1)),
            z1.mul(z1).mul(x2).mul(y2).sub(&z2.mul(z2).mul(x1).mul(y1)),
        ]
    };
    (!is_zero3(&r)).then_some(r)
}

fn add_any<T: Coord>(l: &T, p: &V3<T>, q: &V3<T>) -> V3<T> {
    add_closed(p, q).unwrap_or_else(|| add_generic(l, p, q))
}

/// A smooth Hesse cubic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HesseCurve {
    lambda: Scalar,
}

impl HesseCurve {
    pub fn new(lambda: Scalar) -> Result<Self> {
        if lambda.pow(3) == lambda.field().int(27) {
            return Err(Error::InvalidParameter(format!(
                "λ = {lambda} gives a singular curve (λ³ = 27)"
            )));
        }
        Ok(HesseCurve { lambda })
    }

    pub fn lambda(&self) -> &Scalar {
        &self.lambda
    }

    pub fn field(&self) -> &FieldRef {
        self.lambda.field()
    }

    pub fn equation(&self) -> TernaryForm {
        let k = self.field().clone();
        let mut f = TernaryForm::zero(&k, 3);
        for e in [[3, 0, 0], [0, 3, 0], [0, 0, 3]] {
            f = f.add(&TernaryForm::monomial(k.one(), e));
        }
        f.sub(&TernaryForm::monomial(self.lambda.clone(), [1, 1, 1]))
    }

    pub fn contains(&self, p: &ProjPoint) -> bool {
        curve_eval(&self.lambda, p.coords()).is_zero()
    }

    pub fn identity(&self) -> HessePoint {
        let k = self.field();
        HessePoint {
            curve: self.clone(),
            point: ProjPoint::from_ints(k, [1, -1, 0]).unwrap(),
        }
    }

    pub fn point(&self, p: ProjPoint) -> Result<HessePoint> {
        if !same_field(p.field(), self.field()) {
            return Err(Error::InvalidInput("point and curve live over different fields".into()));
        }
        if !self.contains(&p) {
            return Err(Error::InvalidInput(format!("{p} is not on the curve")));
        }
        Ok(HessePoint {
            curve: self.clone(),
            point: p,
        })
    }

    /// The nine inflection points, which form `E[3]`.
    pub fn three_torsion(&self) -> Result<Vec<HessePoint>> {
        let g = self.equation();
        let h = g.hessian()?;
        let sol = crate::solve::common_zeros(&[g, h], DEFAULT_DEGREE_CAP)?;
        let curve = self.embed(&sol.embedding);
        if sol.points.len() != 9 {
            return Err(Error::Invariant(format!(
                "a smooth cubic has 9 inflection points, found {}",
                sol.points.len()
            )));
        }
        sol.points
            .into_iter()
            .map(|p| curve.point(p))
            .collect()
    }
}

impl Embed for HesseCurve {
    fn embed(&self, e: &Embedding) -> Self {
        HesseCurve {
            lambda: e.apply(&self.lambda),
        }
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct HessePoint {
    curve: HesseCurve,
    point: ProjPoint,
}

impl fmt::Debug for HessePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.point)
    }
}

impl fmt::Display for HessePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.point)
    }
}

impl Embed for HessePoint {
    fn embed(&self, e: &Embedding) -> Self {
        HessePoint {
            curve: self.curve.embed(e),
            point: self.point.embed(e),
        }
    }
}

impl HessePoint {
    pub fn curve(&self) -> &HesseCurve {
        &self.curve
    }

    pub fn point(&self) -> &ProjPoint {
        &self.point
    }

    pub fn is_identity(&self) -> bool {
        self.point == self.curve.identity().point
    }

    fn wrap(&self, v: V3<Scalar>) -> HessePoint {
        HessePoint {
            curve: self.curve.clone(),
            point: ProjPoint::new(v).expect("group law produced the zero vector"),
        }
    }

    pub fn neg(&self) -> HessePoint {
        self.wrap(neg(self.point.coords()))
    }

    pub fn add(&self, o: &HessePoint) -> Result<HessePoint> {
        if self.curve != o.curve {
            return Err(Error::InvalidInput("points lie on different curves".into()));
        }
        Ok(self.wrap(add_any(
            &self.curve.lambda,
            self.point.coords(),
            o.point.coords(),
        )))
    }

    /// Sum computed only through line intersections (no closed formulas).
    pub fn add_by_intersection(&self, o: &HessePoint) -> Result<HessePoint> {
        if self.curve != o.curve {
            return Err(Error::InvalidInput("points lie on different curves".into()));
        }
        Ok(self.wrap(add_generic(
            &self.curve.lambda,
            self.point.coords(),
            o.point.coords(),
        )))
    }

    pub fn double(&self) -> HessePoint {
        self.add(self).unwrap()
    }

    /// `n·P` by double-and-add.
    pub fn mul(&self, n: u64) -> HessePoint {
        let mut acc = self.curve.identity();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.add(&base).unwrap();
            }
            n >>= 1;
            if n > 0 {
                base = base.double();
            }
        }
        acc
    }

    /// True iff translation by this point is induced by a projective linear map, i.e. 3P = o.
    pub fn translation_is_linear(&self) -> bool {
        self.double().add(self).unwrap().is_identity()
    }

    /// Least `n ≤ cap` with `n·P = o`, or `Unknown(cap)`.
    ///
    /// The order of P modulo a prime of good reduction divides the true
    /// order, so only its multiples need exact checking.
    pub fn order(&self, cap: u64) -> Result<OrderResult> {
        if cap < 1 {
            return Err(Error::InvalidParameter("cap must be at least 1".into()));
        }
        if self.is_identity() {
            return Ok(OrderResult::exact(1));
        }
        let step = match self.reduced_order() {
            Some(n) => n,
            None => 1,
        };
        if step > cap {
            return Ok(OrderResult::unknown(cap));
        }
        let jump = self.mul(step);
        let mut acc = jump.clone();
        let mut n = step;
        while n <= cap {
            if acc.is_identity() {
                return Ok(OrderResult::exact(n));
            }
            acc = acc.add(&jump)?;
            n += step;
        }
        Ok(OrderResult::unknown(cap))
    }

    /// Order of the reduction modulo some degree-1 prime of good reduction.
    fn reduced_order(&self) -> Option<u64> {
        let k = self.curve.field();
        let mut scalars: Vec<&Scalar> = self.point.coords().iter().collect();
        scalars.push(&self.curve.lambda);
        for p in primes_from(1009).take(40) {
            let Some(r) = field_root_mod(k, p) else {
                continue;
            };
            let red = |s: &Scalar| reduce(s, p, r);
            let Some(vals) = scalars.iter().map(|s| red(s)).collect::<Option<Vec<Fp>>>() else {
                continue;
            };
            let l = vals[3];
            if l.mul(&l).mul(&l) == Fp::new(27, p) {
                continue;
            }
            let pt = [vals[0], vals[1], vals[2]];
            if is_zero3(&pt) {
                continue;
            }
            let o = [Fp::new(1, p), Fp::new(-1, p), Fp::new(0, p)];
            let bound = p + 2 + 2 * (p as f64).sqrt().ceil() as u64;
            let mut acc = pt;
            let mut n = 1;
            while !proj_eq(&acc, &o) && n <= bound {
                acc = add_any(&l, &acc, &pt);
                n += 1;
            }
            if n <= bound {
                return Some(n);
            }
        }
        None
    }
}

fn primes_from(start: u64) -> impl Iterator<Item = u64> {
    (start..).filter(|&n| n > 1 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0))
}

fn rat_mod(c: &Rat, p: u64) -> Option<Fp> {
    let pb = num_bigint::BigInt::from(p);
    let d = c.denom().mod_floor(&pb);
    if d.is_zero() {
        return None;
    }
    let n = c.numer().mod_floor(&pb).to_i64()?;
    Some(Fp::new(n, p).mul(&Fp::new(d.to_i64()?, p).inv()?))
}

/// A root of the minimal polynomial modulo `p`, when its coefficients are p-integral.
fn field_root_mod(k: &FieldRef, p: u64) -> Option<u64> {
    if k.is_rationals() {
        return Some(0);
    }
    let coeffs: Option<Vec<Fp>> = k.min_poly().coeffs().iter().map(|c| rat_mod(c, p)).collect();
    let coeffs = coeffs?;
    (0..p).find(|&r| {
        let x = Fp::new(r as i64, p);
        let mut acc = Fp::new(0, p);
        for c in coeffs.iter().rev() {
            acc = acc.mul(&x).add(c);
        }
        acc.is_zero()
    })
}

fn reduce(s: &Scalar, p: u64, r: u64) -> Option<Fp> {
    let x = Fp::new(r as i64, p);
    let mut acc = Fp::new(0, p);
    for c in s.coeffs().iter().rev() {
        acc = acc.mul(&x).add(&rat_mod(c, p)?);
    }
    Some(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{adjoin_root, KPoly, NumberField, QPoly};

    fn curve(l: i64) -> HesseCurve {
        HesseCurve::new(NumberField::rationals().int(l)).unwrap()
    }

    fn two_torsion() -> HessePoint {
        // s = (r, r, 1) with 2r³ − r² + 1 = 0 on the λ = 1 curve
        let q = NumberField::rationals();
        let m = KPoly::from_qpoly(&q, &QPoly::from_ints(&[1, 0, -1, 2]));
        let adj = adjoin_root(&m, DEFAULT_DEGREE_CAP).unwrap();
        let k = adj.field.clone();
        let e = HesseCurve::new(k.int(1)).unwrap();
        e.point(ProjPoint::new([adj.root.clone(), adj.root, k.one()]).unwrap())
            .unwrap()
    }

    #[test]
    fn identity_and_inverse() {
        let e = curve(1);
        let p = e.point(ProjPoint::from_ints(e.field(), [0, 1, -1]).unwrap()).unwrap();
        assert_eq!(e.identity().add(&p).unwrap(), p);
        assert!(p.add(&p.neg()).unwrap().is_identity());
    }

    #[test]
    fn two_torsion_point() {
        let s = two_torsion();
        assert!(s.double().is_identity());
        assert!(s.add_by_intersection(&s).unwrap().is_identity());
        assert!(!s.translation_is_linear());
        assert_eq!(s.order(10).unwrap(), OrderResult::exact(2));
        let three_s = s.mul(3);
        assert_eq!(three_s, s);
    }

    #[test]
    fn three_torsion_count() {
        for l in [0, 1, 2] {
            let e = curve(l);
            let t = e.three_torsion().unwrap();
            assert_eq!(t.len(), 9);
            for p in &t {
                assert!(p.translation_is_linear());
                let ord = p.order(200).unwrap();
                assert!(ord == OrderResult::exact(3) || (p.is_identity() && ord == OrderResult::exact(1)));
            }
        }
    }

    #[test]
    fn closed_formulas_agree_with_intersection() {
        let e = curve(1);
        let t = e.three_torsion().unwrap();
        for p in &t {
            for q in &t {
                assert_eq!(p.add(q).unwrap(), p.add_by_intersection(q).unwrap());
            }
        }
        assert!(HesseCurve::new(NumberField::rationals().int(3)).is_err());
    }
}
