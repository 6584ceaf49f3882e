//! The group law on x³ + y³ + z³ = λxyz: 3-torsion and point orders.

use qplane::field::{FieldExt, NumberField};
use qplane::hesse::HesseCurve;
use qplane::point::ProjPoint;

fn main() {
    let q = NumberField::rationals();
    let e = HesseCurve::new(q.int(5)).unwrap();
    println!("curve {} = 0, identity {}", e.equation(), e.identity().point());
    let t = e.point(ProjPoint::from_ints(&q, [0, 1, -1]).unwrap()).unwrap();
    println!("{} has order {}", t.point(), t.order(50).unwrap());
    let tors = e.three_torsion().unwrap();
    println!("E[3] over {} ({} points)", tors[0].point().field().name(), tors.len());
    for p in &tors {
        println!("  {}", p.point());
    }
    let s = tors[1].add(&tors[2]).unwrap();
    println!("{} + {} = {}", tors[1].point(), tors[2].point(), s.point());
}
