//! Browser bindings: OFF text in, JSON out. All heavy lifting stays in
//! cast-core; the page (www/index.html) only parses JSON and draws.
//!
//! The `*_impl` functions are plain Rust (testable on any target); the
//! `#[wasm_bindgen]` wrappers only translate errors into JS values.

use cast_core::casting::{self};
use cast_core::mesh::{self, Polyhedron};
use cast_core::report::{cone_dump, directions_dump, CastReport, Timings};
use cast_core::{fixtures, oracle};
use wasm_bindgen::prelude::*;

fn load(off_text: &str) -> Result<Polyhedron, String> {
    let p = mesh::load_off(off_text).map_err(|e| e.to_string())?;
    mesh::merge_coplanar(&p).map_err(|e| e.to_string())
}

fn analyze_impl(off_text: &str, mode: &str, seed: u64) -> Result<String, String> {
    let p = load(off_text)?;
    let result = match mode {
        "check" => casting::all_fsd(&p, seed),
        "directions" => casting::all_fad(&p, seed),
        "convex" => casting::convex_all_fad(&p),
        other => return Err(format!("unknown mode {other:?}")),
    }
    .map_err(|e| e.to_string())?;
    let report = CastReport::new(&p, &result, Timings::default());
    let geometry = directions_dump(&p, &result);
    let combined = serde_json::json!({
        "report": report,
        "geometry": geometry,
    });
    Ok(combined.to_string())
}

fn facet_cone_impl(off_text: &str, facet: usize) -> Result<String, String> {
    let p = load(off_text)?;
    let cone = casting::single_fad(&p, facet).map_err(|e| e.to_string())?;
    let scatter: Vec<[f64; 3]> = cone
        .region
        .sample_points(7, 120)
        .iter()
        .map(|chart_point| {
            let d = cone.lift(chart_point);
            let [x, y, z] = d.to_f64_array();
            let len = (x * x + y * y + z * z).sqrt();
            [x / len, y / len, z / len]
        })
        .collect();
    let valid = !cone.region.is_empty();
    let combined = serde_json::json!({
        "facet": facet,
        "valid": valid,
        "cone": cone_dump(&cone),
        "direction_scatter": scatter,
    });
    Ok(combined.to_string())
}

fn oracle_facets_impl(off_text: &str) -> Result<String, String> {
    let p = load(off_text)?;
    if p.facets.len() > 60 {
        return Err(format!(
            "oracle demo is limited to 60 facets (mesh has {})",
            p.facets.len()
        ));
    }
    let facets: Vec<usize> = oracle::brute_force_top_facets(&p)
        .into_iter()
        .map(|(f, _)| f)
        .collect();
    Ok(serde_json::json!({ "valid_facets": facets }).to_string())
}

fn preset_impl(name: &str) -> Result<String, String> {
    Ok(match name {
        "cube" => fixtures::CUBE_OFF.to_string(),
        "pyramid" => fixtures::SQUARE_PYRAMID_OFF.to_string(),
        "tent" => mesh::to_off(&fixtures::tent()),
        "grooved-cube" => mesh::to_off(&fixtures::grooved_cube()),
        "triple-grooved-cube" => mesh::to_off(&fixtures::triple_grooved_cube()),
        "star-prism" => mesh::to_off(&fixtures::star_prism()),
        "torus" => mesh::to_off(&fixtures::diamond_frame_torus()),
        "sphere-ish" => mesh::to_off(&fixtures::sphere_approximation(2, 24)),
        other => return Err(format!("unknown preset {other:?}")),
    })
}

fn names_impl() -> String {
    serde_json::json!([
        "cube",
        "pyramid",
        "tent",
        "grooved-cube",
        "triple-grooved-cube",
        "star-prism",
        "torus",
        "sphere-ish",
    ])
    .to_string()
}

/// Runs the castability analysis on OFF text and returns the JSON report
/// plus drawable geometry. `mode` is "check" (one direction per facet),
/// "directions" (full cones), or "convex" (linear-time convex path).
#[wasm_bindgen]
pub fn analyze(off_text: &str, mode: &str, seed: u64) -> Result<String, JsValue> {
    analyze_impl(off_text, mode, seed).map_err(|e| JsValue::from_str(&e))
}

/// Full direction cone of one facet, as JSON (chart frame, region kind,
/// vertices, sample), plus a scatter of valid directions for drawing.
#[wasm_bindgen]
pub fn facet_cone(off_text: &str, facet: usize) -> Result<String, JsValue> {
    facet_cone_impl(off_text, facet).map_err(|e| JsValue::from_str(&e))
}

/// Brute-force oracle verdict (small meshes), for the demo's cross-check
/// toggle.
#[wasm_bindgen]
pub fn oracle_facets(off_text: &str) -> Result<String, JsValue> {
    oracle_facets_impl(off_text).map_err(|e| JsValue::from_str(&e))
}

/// Names of the built-in example meshes.
#[wasm_bindgen]
pub fn preset_names() -> String {
    names_impl()
}

/// OFF text of a built-in example mesh.
#[wasm_bindgen]
pub fn preset(name: &str) -> Result<String, JsValue> {
    preset_impl(name).map_err(|e| JsValue::from_str(&e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn analyze_cube_reports_six_facets() {
        let json = analyze_impl(fixtures::CUBE_OFF, "directions", 0).unwrap();
        let value: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(value["report"]["castable"], true);
        assert_eq!(value["report"]["top_facets"].as_array().unwrap().len(), 6);
        assert_eq!(value["geometry"]["facets"].as_array().unwrap().len(), 6);
    }

    #[test]
    fn every_preset_loads_and_analyzes() {
        let names: Vec<String> =
            serde_json::from_str(&names_impl()).expect("preset names are JSON");
        for name in names {
            let off = preset_impl(&name).unwrap();
            let json = analyze_impl(&off, "check", 1).unwrap();
            let value: serde_json::Value = serde_json::from_str(&json).unwrap();
            assert!(value["report"]["castable"].is_boolean(), "{name}");
        }
    }

    #[test]
    fn facet_cone_scatter_is_normalized() {
        let off = preset_impl("pyramid").unwrap();
        let json = facet_cone_impl(&off, 0).unwrap();
        let value: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(value["valid"], true);
        for d in value["direction_scatter"].as_array().unwrap() {
            let x = d[0].as_f64().unwrap();
            let y = d[1].as_f64().unwrap();
            let z = d[2].as_f64().unwrap();
            assert!((x * x + y * y + z * z - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn oracle_matches_analyze_on_presets() {
        for name in ["cube", "pyramid", "grooved-cube", "star-prism"] {
            let off = preset_impl(name).unwrap();
            let solver: serde_json::Value =
                serde_json::from_str(&analyze_impl(&off, "check", 0).unwrap()).unwrap();
            let oracle: serde_json::Value =
                serde_json::from_str(&oracle_facets_impl(&off).unwrap()).unwrap();
            let solver_facets: Vec<u64> = solver["report"]["top_facets"]
                .as_array()
                .unwrap()
                .iter()
                .map(|e| e["facet"].as_u64().unwrap())
                .collect();
            let oracle_facets: Vec<u64> = oracle["valid_facets"]
                .as_array()
                .unwrap()
                .iter()
                .map(|v| v.as_u64().unwrap())
                .collect();
            assert_eq!(solver_facets, oracle_facets, "{name}");
        }
    }

    #[test]
    fn convex_mode_rejects_nonconvex_input() {
        let off = preset_impl("grooved-cube").unwrap();
        assert!(analyze_impl(&off, "convex", 0).is_err());
    }
}
