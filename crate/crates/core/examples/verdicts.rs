//! Full reports for a handful of algebras, as JSON.

use qplane::field::{FieldExt, NumberField};
use qplane::io::verdict_json;
use qplane::order::Caps;
use qplane::table1::{ec_two_torsion_row, zeta6_field, RowType, Table1Row};
use qplane::verdict::verdict_many;

fn main() {
    let q = NumberField::rationals();
    let z = zeta6_field();
    let algs = vec![
        Table1Row::new(RowType::SPrime, &z, Some(z.generator()), None).unwrap().algebra(),
        Table1Row::new(RowType::NC, &q, Some(q.int(2)), None).unwrap().algebra(),
        Table1Row::new(RowType::CC, &q, None, None).unwrap().algebra(),
        ec_two_torsion_row().algebra(),
    ];
    for r in verdict_many(&algs, Caps::default()) {
        println!("{}", serde_json::to_string_pretty(&verdict_json(&r.unwrap())).unwrap());
    }
}
