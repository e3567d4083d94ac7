//! Browser bindings for the demo page in `www/`. Each export takes a Jordan
//! spec as JSON text and returns JSON text; the work is done by the plain
//! functions below so they can be tested natively.

use serde_json::{json, Value};
use slrev::{
    check_witness, det_sign_of_involutive_reverser, involutive_witness, is_strongly_reversible, pair_blocks,
    sl_reverser_witness, weyr_of, JordanSpec, Partition,
};
use wasm_bindgen::prelude::*;

/// Larger specs are refused so the page stays responsive.
pub const MAX_N: usize = 24;

fn parse(spec_json: &str) -> Result<JordanSpec, String> {
    let spec: JordanSpec = serde_json::from_str(spec_json).map_err(|e| e.to_string())?;
    if spec.n() > MAX_N {
        return Err(format!("n = {} exceeds the demo limit of {MAX_N}", spec.n()));
    }
    Ok(spec)
}

fn diagram(p: &Partition) -> Value {
    json!({ "parts": p, "young": p.young_ascii() })
}

pub fn classify_json(spec_json: &str) -> Result<String, String> {
    let spec = parse(spec_json)?;
    let strong = is_strongly_reversible(&spec);
    let out = json!({
        "spec": spec.to_string(),
        "n": spec.n(),
        "reversibility": pair_blocks(&spec),
        "strong_reversibility": strong,
        "dp": diagram(&strong.dp),
        "dq": diagram(&strong.dq),
        "involutive_det_sign": det_sign_of_involutive_reverser(&spec).ok().map(|d| d.to_string()),
    });
    Ok(out.to_string())
}

pub fn witness_json(spec_json: &str, involutive: bool) -> Result<String, String> {
    let spec = parse(spec_json)?;
    let bundle = if involutive { involutive_witness(&spec) } else { sl_reverser_witness(&spec) }
        .map_err(|e| e.to_string())?;
    let report = check_witness(&bundle.a, &bundle.g).map_err(|e| e.to_string())?;
    let out = json!({
        "a": bundle.a,
        "g": bundle.g,
        "report": report,
        "transcript": bundle.transcript,
    });
    Ok(out.to_string())
}

pub fn weyr_json(spec_json: &str) -> Result<String, String> {
    let spec = parse(spec_json)?;
    let form = weyr_of(&spec).map_err(|e| e.to_string())?;
    let structures: Vec<Value> = form
        .structures
        .iter()
        .map(|w| {
            json!({
                "eigenvalue": w.eigenvalue,
                "jordan": diagram(&spec.jordan_structure(&w.eigenvalue)),
                "weyr": diagram(&w.sizes),
            })
        })
        .collect();
    Ok(json!({ "structures": structures, "matrix": form.matrix, "permutation": form.permutation }).to_string())
}

#[wasm_bindgen]
pub fn classify(spec_json: &str) -> Result<String, JsError> {
    classify_json(spec_json).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn witness(spec_json: &str, involutive: bool) -> Result<String, JsError> {
    witness_json(spec_json, involutive).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn weyr(spec_json: &str) -> Result<String, JsError> {
    weyr_json(spec_json).map_err(|e| JsError::new(&e))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(s: Result<String, String>) -> Value {
        serde_json::from_str(&s.unwrap()).unwrap()
    }

    const THREE_TWOS: &str = r#"{"blocks":[{"eigenvalue":"1","size":2},{"eigenvalue":"1","size":2},{"eigenvalue":"1","size":2}]}"#;

    #[test]
    fn classify_reports_diagrams() {
        let out = v(classify_json(THREE_TWOS));
        assert_eq!(out["strong_reversibility"]["strongly_reversible"], false);
        assert_eq!(out["dp"]["parts"], json!([2, 2, 2]));
        assert_eq!(out["involutive_det_sign"], "-1");
    }

    #[test]
    fn witness_modes() {
        assert!(witness_json(THREE_TWOS, true).unwrap_err().contains("determinant -1"));
        let out = v(witness_json(THREE_TWOS, false));
        assert_eq!(out["report"]["reverses"], true);
        assert_eq!(out["report"]["determinant"], "1");
    }

    #[test]
    fn weyr_structure() {
        let spec = r#"{"blocks":[{"eigenvalue":"1","size":4},{"eigenvalue":"1","size":4},{"eigenvalue":"1","size":2}]}"#;
        let out = v(weyr_json(spec));
        assert_eq!(out["structures"][0]["weyr"]["parts"], json!([3, 3, 2, 2]));
    }

    #[test]
    fn bad_input_and_size_limit() {
        assert!(classify_json("{").is_err());
        let big = format!(r#"{{"blocks":[{{"eigenvalue":"1","size":{}}}]}}"#, MAX_N + 1);
        assert!(weyr_json(&big).unwrap_err().contains("demo limit"));
    }
}
