use chaingeo_wasm::{chain_intersection, sampled_triple, standard_triple};

#[test]
fn standard_triples() {
    let v = standard_triple(3, 4, "+-+").unwrap();
    assert_eq!(v["bergmann"], -1);
    assert_eq!(v["span"], 6);
    let v = standard_triple(1, 2, "+").unwrap();
    assert!((v["cartan"].as_f64().unwrap() + 1.0).abs() < 1e-9);
    assert!(standard_triple(2, 3, "+").is_err());
    assert!(standard_triple(2, 3, "+x").is_err());
    assert!(standard_triple(3, 2, "+++").is_err());
}

#[test]
fn sampled_triples() {
    let v = sampled_triple(2, 3, 4, true).unwrap();
    assert_eq!(v["span"], 4);
    assert_eq!(v["bergmann"].as_i64().unwrap().abs() % 2, 0);
    let v = sampled_triple(1, 2, 4, false).unwrap();
    assert!(v["cartan"].as_f64().unwrap().abs() < 1.0);
    assert!(v["bergmann"]["error"].is_string());
    assert_eq!(sampled_triple(2, 4, 1, false).unwrap()["spans_3m"], true);
}

#[test]
fn intersections() {
    let v = chain_intersection(2, 3, 9).unwrap();
    assert_eq!(v["dims"], v["expected"]);
    assert_eq!(v["recovers_z"], true);
    assert!(chain_intersection(2, 2, 1).is_err());
}
