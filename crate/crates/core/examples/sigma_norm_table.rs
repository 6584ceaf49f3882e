//! ‖σ‖ and |σ| for every row of the standard corpus, with witnesses.

use qplane::order::{Caps, OrderEngine};
use qplane::table1::standard_corpus;

fn main() {
    for (name, row) in standard_corpus() {
        let e = OrderEngine::new(&row.algebra(), Caps::default()).unwrap();
        let n = e.sigma_norm().unwrap();
        let o = e.sigma_order().unwrap();
        let w = n.witness.map(|t| format!("  T = {t}")).unwrap_or_default();
        println!("{name:<10} ‖σ‖ {:<36} |σ| {:<36}{w}", n.result.to_string(), o.result.to_string());
    }
}
