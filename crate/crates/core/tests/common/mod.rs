#![allow(dead_code)]

use qplane::field::{adjoin_root, Embed, Embedding, FieldExt, FieldRef, KPoly, DEFAULT_DEGREE_CAP};
use qplane::hesse::{HesseCurve, HessePoint};
use qplane::linalg::{det, Mat3};
use qplane::point::ProjPoint;
use rand::Rng;

/// A point of infinite order on `curve`, found on a line `(1, u − 1, m·u)`
/// through the identity, over at most a quadratic extension.
pub fn nontorsion_point(curve: &HesseCurve) -> (Embedding, HesseCurve, HessePoint) {
    let k = curve.field().clone();
    let l = curve.lambda().clone();
    for m in 1..=40i64 {
        // substituting gives u·((1 + m³)u² − (3 + λm)u + (3 + λm))
        let c = &k.int(3) + &(&l * &k.int(m));
        let q = KPoly::new(&k, vec![c.clone(), -c, k.int(1 + m * m * m)]);
        if q.degree() != Some(2) {
            continue;
        }
        let adj = adjoin_root(&q, DEFAULT_DEGREE_CAP).expect("quadratic root");
        let e = adj.embedding;
        let c2 = curve.embed(&e);
        let f = c2.field().clone();
        let u = adj.root;
        let pt = ProjPoint::new([f.one(), &u - &f.one(), &u * &f.int(m)]).expect("nonzero");
        let p = c2.point(pt).expect("on the curve");
        if p.order(24).expect("order").is_finite() == Some(true) {
            continue;
        }
        return (e, c2, p);
    }
    panic!("no point of infinite order found on {}", curve.equation());
}

/// `o`, `(0, 1, −1)` and `(−1, 0, 1)`: the 3-torsion defined over every field.
pub fn rational_torsion(curve: &HesseCurve) -> Vec<HessePoint> {
    let k = curve.field();
    [[1, -1, 0], [0, 1, -1], [-1, 0, 1]]
        .into_iter()
        .map(|v| curve.point(ProjPoint::from_ints(k, v).unwrap()).unwrap())
        .collect()
}

/// Distinct points `±a·g + t` for `a = 1..`, `t` in the rational 3-torsion.
pub fn curve_points(curve: &HesseCurve, g: &HessePoint, want: usize) -> Vec<HessePoint> {
    let tors = rational_torsion(curve);
    let mut out: Vec<HessePoint> = Vec::new();
    let mut a = 1;
    while out.len() < want {
        let ga = g.mul(a);
        for base in [ga.clone(), ga.neg()] {
            for t in &tors {
                let q = base.add(t).unwrap();
                if !out.contains(&q) {
                    out.push(q);
                }
            }
        }
        a += 1;
    }
    out.truncate(want);
    out
}

pub fn random_gl3(rng: &mut impl Rng, k: &FieldRef, bound: i64) -> Mat3 {
    loop {
        let m: Mat3 = std::array::from_fn(|_| std::array::from_fn(|_| k.int(rng.gen_range(-bound..=bound))));
        if !det(&m).is_zero() {
            return m;
        }
    }
}

pub fn pt(k: &FieldRef, v: [i64; 3]) -> ProjPoint {
    ProjPoint::from_ints(k, v).unwrap()
}
