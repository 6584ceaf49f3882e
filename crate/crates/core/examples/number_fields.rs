//! Arithmetic in Q(ζ₆) and orders of roots of unity.

use qplane::field::{root_of_unity_order, FieldExt};
use qplane::table1::zeta6_field;

fn main() {
    let k = zeta6_field();
    let z = k.generator();
    println!("field Q({}) with {} = 0", k.name(), k.min_poly().display_with(k.name()));
    for e in 1..=6 {
        let p = z.pow(e);
        println!("{}^{e} = {:<12} order {}", k.name(), p.to_string(), root_of_unity_order(&p).unwrap());
    }
    let two = k.int(2);
    println!("2 has order {}", root_of_unity_order(&two).unwrap());
    let w = &z - &k.one();
    println!("ζ − 1 = {w}, (ζ − 1)³ = {}", w.pow(3));
}
