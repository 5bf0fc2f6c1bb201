//! WebAssembly bindings for the static demo page in `www/`.
//!
//! Each export takes rationals as strings (`"3/7"`, `"-2"`) and returns a
//! JSON string; exact values are rendered as `p/q` strings.

use qhyper::askey_wilson::{aw_poly_as_polynomial, AWParams};
use qhyper::identities::determinants::{build_even_det, rhs_pfaffian};
use qhyper::identities::{find, run_check, Sizes};
use qhyper::linalg::{det_fraction_free, pfaffian_matchings, SkewMatrix};
use qhyper::scalar::SamplerConfig;
use qhyper::Scalar;
use serde_json::json;
use wasm_bindgen::prelude::*;

fn parse(name: &str, text: &str) -> Result<Scalar, String> {
    text.trim().parse().map_err(|e| format!("{name}: {e}"))
}

fn params(a: &str, b: &str, c: &str, d: &str, q: &str) -> Result<AWParams, String> {
    AWParams::new(
        parse("a", a)?,
        parse("b", b)?,
        parse("c", c)?,
        parse("d", d)?,
        parse("q", q)?,
    )
    .map_err(|e| e.to_string())
}

/// `p_n` expanded in `x`, with its values at `samples + 1` equally spaced
/// rational points of `[-1, 1]`.
pub fn aw_curve_json(
    a: &str,
    b: &str,
    c: &str,
    d: &str,
    q: &str,
    n: u32,
    samples: u32,
) -> Result<String, String> {
    if n > 10 || samples == 0 || samples > 400 {
        return Err("need n <= 10 and 1 <= samples <= 400".into());
    }
    let p = params(a, b, c, d, q)?;
    let poly = aw_poly_as_polynomial(n as usize, &p).map_err(|e| e.to_string())?;
    let points: Vec<_> = (0..=samples)
        .map(|k| {
            let x = Scalar::ratio(2 * k as i64 - samples as i64, samples as i64)
                .expect("nonzero denominator");
            let y = poly.eval(&x);
            json!([x.to_f64(), y.to_f64()])
        })
        .collect();
    let coeffs: Vec<String> = poly.coeffs().iter().map(|c| c.to_string()).collect();
    Ok(json!({ "n": n, "coefficients": coeffs, "points": points }).to_string())
}

/// Verification report for one registered identity.
pub fn verify_json(id: &str, trials: u32, seed: u32) -> Result<String, String> {
    if trials > 50 {
        return Err("at most 50 trials".into());
    }
    let check = find(id).map_err(|e| e.to_string())?;
    let r = run_check(
        &check,
        trials as usize,
        seed as u64,
        &Sizes::none(),
        SamplerConfig::default(),
    );
    Ok(json!({
        "id": r.id,
        "anchor": r.anchor,
        "trials": r.trials,
        "passes": r.passes,
        "failures": r.failures,
        "witness_seeds": r.witness_seeds,
    })
    .to_string())
}

/// The even-order skew matrix, its Pfaffian, determinant and closed form.
pub fn pfaffian_json(m: u32, a: &str, b: &str, q: &str) -> Result<String, String> {
    if !(1..=4).contains(&m) {
        return Err("m must lie in 1..=4".into());
    }
    let (a, b, q) = (parse("a", a)?, parse("b", b)?, parse("q", q)?);
    let m = m as usize;
    let run = || -> qhyper::Result<_> {
        let mat = build_even_det(m, &a, &b, &q)?;
        let det = det_fraction_free(&mat)?;
        let rows: Vec<Vec<String>> = (0..mat.rows())
            .map(|i| mat.row(i).iter().map(|x| x.to_string()).collect())
            .collect();
        let pf = pfaffian_matchings(&SkewMatrix::new(mat)?)?;
        let closed = rhs_pfaffian(m, &a, &b, &q)?;
        Ok(json!({
            "matrix": rows,
            "pfaffian": pf.to_string(),
            "determinant": det.to_string(),
            "closed_form": closed.to_string(),
            "agree": pf == closed && &pf * &pf == det,
        }))
    };
    run().map(|v| v.to_string()).map_err(|e| e.to_string())
}

/// Ids of the registered identities, as a JSON array.
pub fn identity_ids_json() -> String {
    let ids: Vec<&str> = qhyper::identities::registry()
        .iter()
        .map(|c| c.id)
        .collect();
    json!(ids).to_string()
}

#[wasm_bindgen]
pub fn aw_curve(
    a: &str,
    b: &str,
    c: &str,
    d: &str,
    q: &str,
    n: u32,
    samples: u32,
) -> Result<String, JsError> {
    aw_curve_json(a, b, c, d, q, n, samples).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn verify_identity(id: &str, trials: u32, seed: u32) -> Result<String, JsError> {
    verify_json(id, trials, seed).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn pfaffian_demo(m: u32, a: &str, b: &str, q: &str) -> Result<String, JsError> {
    pfaffian_json(m, a, b, q).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn identity_ids() -> String {
    identity_ids_json()
}
