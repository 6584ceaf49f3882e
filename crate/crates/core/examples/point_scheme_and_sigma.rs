//! Point scheme of an algebra read from relations, and σ along a few points.

use qplane::algebra::QuadraticAlgebra;
use qplane::field::NumberField;
use qplane::point::ProjPoint;

fn main() {
    let q = NumberField::rationals();
    let a = QuadraticAlgebra::from_relations(&q, &["yz - zy - x^2", "zx - xz - y^2", "xy - yx"]).unwrap();
    println!("relations {:?}", a.relation_strings());
    println!("point scheme {}", a.point_scheme());
    let a = QuadraticAlgebra::from_relations(&q, &["yz - 2zy", "zx - 2xz", "xy - 2yx"]).unwrap();
    println!("relations {:?}", a.relation_strings());
    println!("point scheme {}", a.point_scheme());
    for v in [[0, 1, 1], [0, 1, 3], [1, 0, 2], [1, 5, 0]] {
        let p = ProjPoint::from_ints(&q, v).unwrap();
        let orbit: Vec<String> = (0..4)
            .map(|i| a.sigma_iter(&p, i).unwrap().map_or("-".into(), |x| x.to_string()))
            .collect();
        println!("  {}", orbit.join(" -> "));
    }
}
