use qplane::io::{algebra_from_json, algebra_to_json, verdict_json};
use qplane::order::Caps;
use qplane::table1::standard_corpus;
use qplane::verdict::{verdict, verdict_many, Tri};
use qplane::OrderResult;

#[test]
fn emitted_files_reproduce_each_row() {
    for (name, row) in standard_corpus() {
        let alg = algebra_from_json(&algebra_to_json(&row.algebra())).unwrap();
        assert_eq!(alg, row.algebra(), "{name}");
        let r = verdict(&alg, Caps::default()).unwrap();
        assert_eq!(r.type_label, row.type_label(), "{name}");
        assert_eq!(r.point_scheme, row.expected_point_scheme(), "{name}");
    }
}

#[test]
fn verdicts_are_consistent() {
    let corpus = standard_corpus();
    let algs: Vec<_> = corpus.iter().map(|(_, r)| r.algebra()).collect();
    for ((name, _), r) in corpus.iter().zip(verdict_many(&algs, Caps::default())) {
        let r = r.unwrap();
        let fat = matches!(r.sigma_norm.result, OrderResult::Exact { value } if value >= 2);
        assert_eq!(r.has_fat_point, Tri::from_option(Some(fat)), "{name}");
        if r.proj_finite_over_center == Tri::True {
            assert!(fat || r.type_label == qplane::classify::TypeLabel::P, "{name}");
        }
        if r.second_hessian_zero == Some(true) {
            assert_ne!(r.algebra_finite_over_center, Tri::True, "{name}");
        }
        if let (Some(n), Some(o)) = (r.sigma_norm.result.as_exact(), r.sigma_order.result.as_exact()) {
            assert_eq!(o % n, 0, "{name}: ‖σ‖ = {n} should divide |σ| = {o}");
        }
        assert!(r.citations.iter().any(|c| c == "fat-point.norm-between"), "{name}");
    }
}

#[test]
fn reports_serialize_identically_twice() {
    let corpus = standard_corpus();
    let algs: Vec<_> = corpus.iter().map(|(_, r)| r.algebra()).collect();
    let render = || {
        verdict_many(&algs, Caps::default())
            .into_iter()
            .map(|r| verdict_json(&r.unwrap()).to_string())
            .collect::<Vec<_>>()
    };
    assert_eq!(render(), render());
}
