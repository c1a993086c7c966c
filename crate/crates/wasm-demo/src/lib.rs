//! Browser bindings: catalog listing, orbit probing, classification and point clouds.

use cohom31_core::catalog::{builtin_catalog, find_entry, CatalogEntry, Params, Table};
use cohom31_core::orbit::orbit_point_cloud;
use cohom31_core::parse::{parse_generator_file, parse_point};
use cohom31_core::properness::{decide_properness, quick_verdict};
use cohom31_core::subalgebra::{invariants, match_catalog};
use cohom31_core::{closure_check, cohomogeneity, orbit_dimension, Error, Subalgebra};
use serde_json::json;
use wasm_bindgen::prelude::*;

fn err(e: Error) -> JsError {
    JsError::new(&e.to_string())
}

fn resolve(entry: &CatalogEntry, params: &str) -> Result<(Params, Subalgebra), Error> {
    let ps = if params.trim().is_empty() { entry.default_params() } else { Params::parse(params)? };
    let h = entry.subalgebra(&ps)?;
    Ok((ps, h))
}

/// JSON list of catalog entries with their generators and sample parameters.
#[wasm_bindgen]
pub fn catalog() -> String {
    let rows: Vec<_> = builtin_catalog()
        .iter()
        .map(|e| {
            json!({
                "id": e.id,
                "name": e.name,
                "generators": e.generators_display(),
                "params": e.default_params().to_string(),
            })
        })
        .collect();
    serde_json::to_string(&rows).expect("serializes")
}

/// Orbit dimension and causal type of an entry through `point` (`"x,y,z,w"`).
#[wasm_bindgen]
pub fn orbit_at(entry: &str, params: &str, point: &str) -> Result<String, JsError> {
    let cat = builtin_catalog();
    let e = find_entry(&cat, entry).map_err(err)?;
    let (ps, h) = resolve(e, params).map_err(err)?;
    let p = parse_point(point).map_err(err)?;
    let r = orbit_dimension(&h, &p);
    Ok(json!({
        "entry": e.id,
        "params": ps.to_string(),
        "dim": r.dim,
        "causal": r.causal.kind.to_string(),
        "summary": r.to_string(),
    })
    .to_string())
}

/// Closure, catalog match and properness verdict for a generator list, one element per line.
#[wasm_bindgen]
pub fn classify(text: &str, seed: u64) -> Result<String, JsError> {
    let gens = parse_generator_file(text).map_err(err)?;
    let h = match closure_check(&gens) {
        Ok(h) => h,
        Err(e @ (Error::NotClosed { .. } | Error::DependentBasis)) => {
            return Ok(json!({ "closed": false, "error": e.to_string() }).to_string());
        }
        Err(e) => return Err(err(e)),
    };
    let cat = builtin_catalog();
    let matches = match_catalog(&h, &cat);
    let verdict = match matches.as_slice() {
        [m] => match find_entry(&cat, &m.id) {
            Ok(e) if e.table != Table::Excluded => decide_properness(e, &m.params, seed, (256, 1e-6, 20)),
            _ => quick_verdict(&h),
        },
        _ => quick_verdict(&h),
    };
    let ms: Vec<_> = matches
        .iter()
        .map(|m| json!({ "id": m.id, "params": m.params.to_string(), "conjugator": m.conjugator.to_string() }))
        .collect();
    Ok(json!({
        "closed": true,
        "subalgebra": h.to_string(),
        "invariants": invariants(&h).to_string(),
        "cohomogeneity": cohomogeneity(&h, seed, 16).cohomogeneity,
        "matches": ms,
        "verdict": verdict.kind.to_string(),
        "evidence": verdict.evidence,
    })
    .to_string())
}

/// Orbit sample through `point` as a flat array of `(x, y, z, w)` quadruples.
#[wasm_bindgen]
pub fn orbit_cloud(entry: &str, params: &str, point: &str, grid: usize) -> Result<Vec<f64>, JsError> {
    let cat = builtin_catalog();
    let e = find_entry(&cat, entry).map_err(err)?;
    let (_, h) = resolve(e, params).map_err(err)?;
    let p = parse_point(point).map_err(err)?;
    Ok(orbit_point_cloud(&h, &p, grid.clamp(2, 40)).iter().flat_map(|r| r[3..].iter().copied()).collect())
}
