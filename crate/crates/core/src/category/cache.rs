//! Versioned JSON dump of a built category, usable as a cache: a cache hit
//! reconstructs tables bit-identically to a fresh build.

use super::{CategoryData, CategoryError, Color, Params};
use crate::exact::{ExactValue, FieldContext};
use crate::partitions::YoungDiagram;
use std::collections::BTreeMap;
use std::sync::Arc;

pub const CACHE_VERSION: u32 = 1;

pub fn to_json(data: &CategoryData) -> serde_json::Value {
    let nc = data.colors().len();
    serde_json::json!({
        "version": CACHE_VERSION,
        "params": serde_json::to_value(data.params()).unwrap(),
        "mu_exp": data.mu_exponent(),
        "survivors": data.calibration_survivors(),
        "colors": data.colors().iter()
            .map(|c| serde_json::to_value(c.full_diagram(data.params().n).rows()).unwrap())
            .collect::<Vec<_>>(),
        "gradings": (0..nc).map(|x| data.grading(x)).collect::<Vec<_>>(),
        "qdims": (0..nc).map(|x| data.qdim(x).to_json()).collect::<Vec<_>>(),
        "twists": (0..nc).map(|x| data.twist_exponent(x)).collect::<Vec<_>>(),
        "duals": (0..nc).map(|x| data.dual(x)).collect::<Vec<_>>(),
        "fusion": (0..nc).map(|x| (0..nc).map(|y| data.fusion(x, y).to_vec()).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "hopf": (0..nc).map(|x| (0..nc).map(|y| data.hopf(x, y).to_json()).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "eta_squared_inverse": data.eta_squared_inverse().to_json(),
        "delta": data.delta().to_json(),
        "flow_colors": data.flow_colors().to_vec(),
    })
}

fn bad(field: &str) -> CategoryError {
    CategoryError::InvalidParameters(format!("malformed category cache: {field}"))
}

pub fn from_json(v: &serde_json::Value) -> Result<CategoryData, CategoryError> {
    if v.get("version").and_then(|x| x.as_u64()) != Some(CACHE_VERSION as u64) {
        return Err(bad("version"));
    }
    let params: Params = serde_json::from_value(v.get("params").cloned().ok_or_else(|| bad("params"))?)
        .map_err(|_| bad("params"))?;
    let ctx: Arc<FieldContext> = FieldContext::new(params.m);
    let eta_sq_inv = ExactValue::from_json(&ctx, v.get("eta_squared_inverse").ok_or_else(|| bad("eta"))?)
        .ok_or_else(|| bad("eta"))?;
    ctx.set_eta_squared_inverse(&eta_sq_inv);

    let n = params.n;
    let colors: Vec<Color> = v
        .get("colors")
        .and_then(|x| x.as_array())
        .ok_or_else(|| bad("colors"))?
        .iter()
        .map(|rows| {
            let rows: Vec<usize> = serde_json::from_value(rows.clone()).map_err(|_| bad("colors"))?;
            let diagram = YoungDiagram::new(rows);
            // split the full diagram back into (full_cols, stripped rows)
            let full = if diagram.num_rows() == n { diagram.row_len(n - 1) } else { 0 };
            let stripped: Vec<usize> = diagram
                .rows()
                .iter()
                .map(|&r| r - full)
                .filter(|&r| r > 0)
                .collect();
            Ok(Color { full_cols: full, rows: YoungDiagram::new(stripped) })
        })
        .collect::<Result<_, CategoryError>>()?;
    let index: BTreeMap<Color, usize> = colors
        .iter()
        .enumerate()
        .map(|(i, c)| (c.clone(), i))
        .collect();
    let nc = colors.len();

    let gradings: Vec<u64> =
        serde_json::from_value(v.get("gradings").cloned().ok_or_else(|| bad("gradings"))?)
            .map_err(|_| bad("gradings"))?;
    let twist_exp: Vec<i64> =
        serde_json::from_value(v.get("twists").cloned().ok_or_else(|| bad("twists"))?)
            .map_err(|_| bad("twists"))?;
    let duals: Vec<usize> =
        serde_json::from_value(v.get("duals").cloned().ok_or_else(|| bad("duals"))?)
            .map_err(|_| bad("duals"))?;
    let fusion: Vec<Vec<Vec<(usize, u64)>>> =
        serde_json::from_value(v.get("fusion").cloned().ok_or_else(|| bad("fusion"))?)
            .map_err(|_| bad("fusion"))?;
    let flow: Vec<usize> =
        serde_json::from_value(v.get("flow_colors").cloned().ok_or_else(|| bad("flow"))?)
            .map_err(|_| bad("flow"))?;
    let mu_exp = v.get("mu_exp").and_then(|x| x.as_i64()).ok_or_else(|| bad("mu_exp"))?;
    let survivors: Vec<(i64, i64)> =
        serde_json::from_value(v.get("survivors").cloned().ok_or_else(|| bad("survivors"))?)
            .map_err(|_| bad("survivors"))?;

    let parse_values = |field: &str| -> Result<Vec<ExactValue>, CategoryError> {
        v.get(field)
            .and_then(|x| x.as_array())
            .ok_or_else(|| bad(field))?
            .iter()
            .map(|j| ExactValue::from_json(&ctx, j).ok_or_else(|| bad(field)))
            .collect()
    };
    let qdims = parse_values("qdims")?;
    let hopf_rows = v.get("hopf").and_then(|x| x.as_array()).ok_or_else(|| bad("hopf"))?;
    let mut hopf = Vec::with_capacity(nc);
    for row in hopf_rows {
        let row = row.as_array().ok_or_else(|| bad("hopf"))?;
        let parsed: Vec<ExactValue> = row
            .iter()
            .map(|j| ExactValue::from_json(&ctx, j).ok_or_else(|| bad("hopf")))
            .collect::<Result<_, _>>()?;
        hopf.push(parsed);
    }
    let delta = ExactValue::from_json(&ctx, v.get("delta").ok_or_else(|| bad("delta"))?)
        .ok_or_else(|| bad("delta"))?;
    if qdims.len() != nc || gradings.len() != nc || twist_exp.len() != nc || duals.len() != nc {
        return Err(bad("table sizes"));
    }
    let qdim_inv: Vec<ExactValue> = qdims
        .iter()
        .map(|q| q.inverse().map_err(|_| bad("qdims")))
        .collect::<Result<_, _>>()?;

    Ok(CategoryData {
        params,
        ctx,
        colors,
        index,
        grading: gradings,
        qdim: qdims,
        qdim_inv,
        dual: duals,
        fusion,
        twist_exp,
        hopf,
        eta_sq_inv,
        delta,
        flow,
        mu_exp,
        survivors,
    })
}
