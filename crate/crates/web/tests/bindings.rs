use skck_web::{curve_json, involute_text, verify_json};

#[test]
fn curve_view_at_b5() {
    let v: serde_json::Value = serde_json::from_str(&curve_json(5).unwrap()).unwrap();
    assert_eq!(v["lambda"], "3/7");
    assert_eq!(v["singular"], false);
    assert!(!v["branches"].as_array().unwrap().is_empty());
}

#[test]
fn curve_view_singular_and_invalid() {
    let v: serde_json::Value = serde_json::from_str(&curve_json(2).unwrap()).unwrap();
    assert_eq!(v["singular"], true);
    assert!(v["j"].is_null());
    assert!(curve_json(1).is_err());
}

#[test]
fn branches_stay_on_the_curve() {
    let v: serde_json::Value = serde_json::from_str(&curve_json(7).unwrap()).unwrap();
    let lam = v["lambda_value"].as_f64().unwrap();
    for branch in v["branches"].as_array().unwrap() {
        for pt in branch.as_array().unwrap() {
            let (x, y) = (pt[0].as_f64().unwrap(), pt[1].as_f64().unwrap());
            assert!((y * y - x * (x - 1.0) * (x - lam)).abs() < 1e-9);
        }
    }
}

#[test]
fn claim_and_involution() {
    let r: serde_json::Value = serde_json::from_str(&verify_json("lemma5", Some(3)).unwrap()).unwrap();
    assert_eq!(r["verdict"], "PASS");
    assert!(verify_json("nope", Some(3)).is_err());
    assert_eq!(involute_text("x1*x3 - x4*x2").unwrap(), "-x1*x3 + x4*x2");
    assert!(involute_text("x1*").is_err());
}
