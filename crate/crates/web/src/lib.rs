//! Browser bindings: curve invariants with plot samples, claim verification,
//! and the involution on typed expressions.
//!
//! Each export has a plain Rust twin returning `Result<String, String>` so the
//! logic is testable without a JavaScript host.

use serde::Serialize;
use wasm_bindgen::prelude::*;

use skck::coeff::Coefficient;
use skck::curves::{curve_for_b, projective_equation_string};
use skck::parser::{parse_expr, print_expr};
use skck::presentations::{standard_alphabet, standard_involution, verify, Claim, ClaimOptions, Mode};

#[derive(Serialize)]
struct CurveView {
    b: i64,
    lambda: String,
    lambda_value: f64,
    equation: String,
    discriminant: String,
    j: Option<String>,
    singular: bool,
    /// Upper branch `y = sqrt(x(x−1)(x−λ))` as polylines; the lower branch is its mirror.
    branches: Vec<Vec<[f64; 2]>>,
}

const X_MIN: f64 = -1.5;
const X_MAX: f64 = 3.0;
const SAMPLES: usize = 600;

fn branches(lambda: f64) -> Vec<Vec<[f64; 2]>> {
    let f = |x: f64| x * (x - 1.0) * (x - lambda);
    let mut out = Vec::new();
    let mut cur: Vec<[f64; 2]> = Vec::new();
    for i in 0..=SAMPLES {
        let x = X_MIN + (X_MAX - X_MIN) * i as f64 / SAMPLES as f64;
        let v = f(x);
        if v >= 0.0 {
            cur.push([x, v.sqrt()]);
        } else if !cur.is_empty() {
            out.push(std::mem::take(&mut cur));
        }
    }
    if !cur.is_empty() {
        out.push(cur);
    }
    out
}

fn to_f64(c: &Coefficient) -> f64 {
    c.as_rational()
        .map(|r| {
            let n: f64 = r.numer().to_string().parse().unwrap_or(f64::NAN);
            let d: f64 = r.denom().to_string().parse().unwrap_or(f64::NAN);
            n / d
        })
        .unwrap_or(f64::NAN)
}

pub fn curve_json(b: i64) -> Result<String, String> {
    let c = curve_for_b(b).map_err(|e| e.to_string())?;
    let s = |c: &Coefficient| c.fmt_with(&[]);
    let lambda_value = to_f64(&c.lambda);
    let view = CurveView {
        b,
        lambda: s(&c.lambda),
        lambda_value,
        equation: projective_equation_string(&c.lambda),
        discriminant: s(&c.discriminant),
        j: c.j_invariant.as_ref().map(s),
        singular: c.singular,
        branches: branches(lambda_value),
    };
    Ok(serde_json::to_string(&view).expect("serializes"))
}

/// `b = None` means symbolic.
pub fn verify_json(claim: &str, b: Option<i64>) -> Result<String, String> {
    let claim: Claim = claim.parse()?;
    let mode = b.map(Mode::Concrete).unwrap_or(Mode::Symbolic);
    let report = verify(claim, mode, ClaimOptions::default()).map_err(|e| e.to_string())?;
    Ok(report.to_json())
}

pub fn involute_text(expr: &str) -> Result<String, String> {
    let a = standard_alphabet();
    let p = parse_expr(expr, &a).map_err(|e| e.to_string())?;
    Ok(print_expr(&p.involute(&standard_involution()), &a))
}

#[wasm_bindgen]
pub fn curve_for(b: i32) -> Result<String, JsValue> {
    curve_json(b as i64).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn verify_claim(claim: &str, b: i32, symbolic: bool) -> Result<String, JsValue> {
    verify_json(claim, (!symbolic).then_some(b as i64)).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn involute_expr(expr: &str) -> Result<String, JsValue> {
    involute_text(expr).map_err(|e| JsValue::from_str(&e))
}
