use qhecke_web::{expand_json, mult_hecke_json, product_json};

#[test]
fn expand_delta() {
    let s = expand_json("delta", 4).unwrap();
    assert!(s.contains("\"-24\"") && s.contains("\"252\""), "{s}");
}

#[test]
fn product_of_j() {
    let s = product_json("j", 3).unwrap();
    assert!(s.contains("\"order\": -1") && s.contains("\"-744\""), "{s}");
}

#[test]
fn hecke_image_of_eta_quotient() {
    let s = mult_hecke_json("etaq 4 2:-4,4:8", 3, 10).unwrap();
    assert!(s.contains("\"weight\": \"8\""), "{s}");
}

#[test]
fn rejects_bad_input() {
    assert!(expand_json("E5", 10).is_err());
    assert!(expand_json("E4", 0).is_err());
    assert!(expand_json("E4", 10_000).is_err());
    assert!(mult_hecke_json("E4", 0, 10).is_err());
    assert!(mult_hecke_json("E4", 1000, 400).is_err());
}
