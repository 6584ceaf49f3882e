//! Classifies the point schemes of every row of the standard corpus.

use qplane::classify::classify_cubic;
use qplane::table1::standard_corpus;

fn main() {
    for (name, row) in standard_corpus() {
        let ps = row.algebra().point_scheme();
        let Some(g) = ps.cubic() else {
            println!("{name:<10} P2");
            continue;
        };
        let c = classify_cubic(g).unwrap();
        let comps: Vec<String> = c
            .components
            .iter()
            .map(|x| format!("({})^{}", x.equation, x.multiplicity))
            .collect();
        println!("{name:<10} {:<3} {}  [{}]", c.type_label.as_str(), c.cubic, comps.join(", "));
        for s in &c.singular_points {
            println!("{:>14} singular {} ({:?})", "", s.point, s.tangent_cone.kind);
        }
    }
}
