//! Hessians and second Hessians of a few plane cubics.

use qplane::field::NumberField;
use qplane::parse::parse_form;

fn main() {
    let q = NumberField::rationals();
    for src in ["x*y*z", "x^3 - y^2*z", "x^3 + y^3 + z^3", "y*(x^2 - y*z)", "x^3 + y^3 - 3*x*y*z"] {
        let g = parse_form(src, &q).unwrap();
        let h = g.hessian().unwrap();
        println!("{src:<22} H = {:<40} H² = 0: {}", h.to_string(), g.second_hessian_is_zero().unwrap());
    }
}
