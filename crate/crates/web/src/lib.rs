//! wasm-bindgen entry points for the static page in `www/`. Each call takes
//! text and returns a JSON string; failures come back as `{"error": ...}`.

use qaffine::drinfeld::{extract_polynomial, highest_weight_vectors};
use qaffine::irreducibility::is_irreducible;
use qaffine::modules::{parse_descriptor, Descriptor};
use qaffine::segments::{canonical_params, construction_plan, factor_json, factor_p0_p1, parse_poly, predict_factors};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

fn wrap(r: Result<Value, String>) -> String {
    match r {
        Ok(v) => v.to_string(),
        Err(e) => json!({ "error": e }).to_string(),
    }
}

fn at_root(descriptor: &str) -> Result<(Descriptor, qaffine::modules::SpecModule), String> {
    let d = parse_descriptor(descriptor, None).map_err(|e| e.to_string())?;
    if let Descriptor::Generic { .. } = d {
        return Err("the demo works at a root of unity; set \"l\" to an odd l >= 3".into());
    }
    let v = d.build_at_root().map_err(|e| e.to_string())?;
    Ok((d, v))
}

/// Drinfeld polynomial of the module named by a descriptor, one entry per
/// highest-weight vector.
pub fn drinfeld_json(descriptor: &str) -> Result<Value, String> {
    let (_, v) = at_root(descriptor)?;
    let certs = highest_weight_vectors(&v).map_err(|e| e.to_string())?;
    let mut out = Vec::new();
    for c in &certs {
        let p = extract_polynomial(&v, c).map_err(|e| e.to_string())?;
        out.push(json!({"weight": p.weight, "plus": p.plus_text(), "minus": p.minus_text()}));
    }
    Ok(json!({ "dim": qaffine::modules::ResModule::dim(&v), "polynomials": out }))
}

/// Split a polynomial into segments and Frobenius part, with a construction plan.
pub fn factor_poly_json(poly: &str, l: u32) -> Result<Value, String> {
    let p = parse_poly(poly, l, &[]).map_err(|e| e.to_string())?;
    let (p0, p1) = factor_p0_p1(&p);
    let params = canonical_params(&p).map_err(|e| e.to_string())?;
    let plan = construction_plan(&p).map_err(|e| e.to_string())?;
    Ok(json!({
        "factored": p.factored_text(),
        "P0": p0.text(),
        "P1": p1.text(),
        "params": params.to_json(),
        "plan": plan.iter().map(factor_json).collect::<Vec<_>>(),
    }))
}

/// Closure-oracle verdict next to the segment criterion.
pub fn irreducible_json(descriptor: &str) -> Result<Value, String> {
    let (d, v) = at_root(descriptor)?;
    let r = is_irreducible(&v).map_err(|e| e.to_string())?;
    let mut out = r.summary_json();
    if let Descriptor::AtRoot { l, factors } = &d {
        if let Ok(p) = predict_factors(factors, *l) {
            out["predicted"] = json!(if p { "irreducible" } else { "reducible" });
        }
    }
    Ok(out)
}

#[wasm_bindgen]
pub fn drinfeld(descriptor: &str) -> String {
    wrap(drinfeld_json(descriptor))
}

#[wasm_bindgen]
pub fn factor(poly: &str, l: u32) -> String {
    wrap(factor_poly_json(poly, l))
}

#[wasm_bindgen]
pub fn irreducible(descriptor: &str) -> String {
    wrap(irreducible_json(descriptor))
}
