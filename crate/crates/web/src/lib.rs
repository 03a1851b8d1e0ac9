//! Browser bindings. Every export takes the instance as JSON text and
//! returns JSON or SVG text; errors come back as `"CODE: message"` strings.

use prefcone::plot::{self, PlotOptions, Viewport};
use prefcone::{consistency, EpsilonSearchConfig, Error, PreferenceInstance, ValueFunction, ValueFunctionKind};
use serde::Serialize;
use wasm_bindgen::prelude::*;

const PLOT_SIZE: u32 = 480;

fn render(e: Error) -> String {
    format!("{}: {e}", e.code())
}

fn parse(instance_json: &str) -> Result<PreferenceInstance, String> {
    let inst = PreferenceInstance::from_json(instance_json).map_err(render)?;
    inst.validated().map_err(render)?;
    Ok(inst)
}

fn kind(function: &str) -> Result<Option<ValueFunctionKind>, String> {
    match function {
        "" | "none" => Ok(None),
        f => f.parse().map(Some).map_err(render),
    }
}

#[derive(Serialize)]
struct Analysis {
    report: consistency::ConsistencyReport,
    facet_normals: Vec<Vec<f64>>,
}

/// Full consistency report plus the facet normals of `E`.
#[wasm_bindgen]
pub fn analyze(instance_json: &str) -> Result<String, String> {
    let inst = parse(instance_json)?;
    let report = consistency::consistency_verdict(&inst, &EpsilonSearchConfig::default()).map_err(render)?;
    let facets = prefcone::GeneratorCone::from_instance(&inst, 0.0)
        .facets()
        .map_err(render)?;
    let out = Analysis {
        report,
        facet_normals: facets.facet_normals,
    };
    Ok(serde_json::to_string(&out).expect("analysis serializes"))
}

/// SVG schematic of a two-criterion instance, optionally over the field of
/// `function` (`psi`, `vartheta`, `linear`, or empty).
#[wasm_bindgen]
pub fn plot_svg(instance_json: &str, function: &str) -> Result<String, String> {
    let inst = parse(instance_json)?;
    let cfg = EpsilonSearchConfig::default();
    let pointed = consistency::test_pointedness(&inst, 0.0).map_err(render)?.pointed;
    let epsilon_bar = if pointed {
        Some(consistency::epsilon_search(&inst, &cfg).map_err(render)?)
    } else {
        None
    };
    let field = match kind(function)? {
        Some(k) => Some(ValueFunction::for_instance(&inst, k, &cfg).map_err(render)?),
        None => None,
    };
    let opts = PlotOptions {
        size: PLOT_SIZE,
        epsilon_bar,
        field,
        ..Default::default()
    };
    plot::plot2d(&inst, &opts).map_err(render)
}

#[derive(Serialize)]
struct Evaluation {
    point: [f64; 2],
    value: f64,
    classification: &'static str,
}

/// Evaluates `function` at the criterion-space point under pixel
/// `(px, py)` of the image produced by [`plot_svg`].
#[wasm_bindgen]
pub fn evaluate_at_pixel(instance_json: &str, function: &str, px: f64, py: f64) -> Result<String, String> {
    let inst = parse(instance_json)?;
    if inst.dim() != 2 {
        return Err(render(Error::UnsupportedDimension(inst.dim())));
    }
    let point = Viewport::for_instance(&inst, None, PLOT_SIZE).to_criteria([px, py]);
    let k = kind(function)?.unwrap_or(ValueFunctionKind::Psi);
    let f = ValueFunction::for_instance(&inst, k, &EpsilonSearchConfig::default()).map_err(render)?;
    let (value, class) = f.evaluate_classified(&point).map_err(render)?;
    let out = Evaluation {
        point,
        value,
        classification: class.as_str(),
    };
    Ok(serde_json::to_string(&out).expect("evaluation serializes"))
}
