//! wasm-bindgen entry points for the static demo page. Every export returns a
//! JSON string: either a certified coloring or `{"error": ...}`.

use kneser_colorings::achromatic::achromatic_coloring;
use kneser_colorings::geometry::{build_dv, convex_position_points, dv_achromatic_coloring, random_points};
use kneser_colorings::pseudo::psi_lower_coloring_seeded;
use kneser_colorings::{verify_coloring, Check, Coloring, ColoringFile, Graph, KneserGraph};
use serde_json::{json, Value};
use wasm_bindgen::prelude::wasm_bindgen;

/// Largest n the page offers; K(40,2) has 780 vertices.
pub const MAX_N: u32 = 40;

fn certified<G: Graph>(g: &G, n: u32, c: &Coloring, checks: &[Check]) -> Result<Value, String> {
    let report = verify_coloring(g, c, checks).map_err(|e| e.to_string())?;
    let file = ColoringFile::from_coloring(g, n, 2, c).map_err(|e| e.to_string())?;
    Ok(json!({ "n": n, "colors": report.color_count, "report": report, "classes": file.classes }))
}

fn render(result: Result<Value, String>) -> String {
    match result {
        Ok(v) => v.to_string(),
        Err(e) => json!({ "error": e }).to_string(),
    }
}

fn check_n(n: u32, low: u32) -> Result<(), String> {
    if (low..=MAX_N).contains(&n) {
        Ok(())
    } else {
        Err(format!("n must lie in {low}..={MAX_N}; got {n}"))
    }
}

/// Proper complete coloring of K(n,2) with the maximum number of colors.
#[wasm_bindgen]
pub fn achromatic(n: u32) -> String {
    render((|| {
        check_n(n, 2)?;
        let g = KneserGraph::new(n, 2).map_err(|e| e.to_string())?;
        let c = achromatic_coloring(n).map_err(|e| e.to_string())?;
        certified(&g, n, &c, &[Check::Proper, Check::Complete])
    })())
}

/// Complete (not necessarily proper) coloring of K(n,2) with C(n,2)/2 colors.
#[wasm_bindgen]
pub fn psi_lower(n: u32, seed: u32) -> String {
    render((|| {
        check_n(n, 7)?;
        let g = KneserGraph::new(n, 2).map_err(|e| e.to_string())?;
        let c = psi_lower_coloring_seeded(n, seed as u64).map_err(|e| e.to_string())?;
        certified(&g, n, &c, &[Check::Complete])
    })())
}

/// Point set plus a proper complete coloring of its segment disjointness
/// graph. `random` selects seeded random points over the parabola.
#[wasm_bindgen]
pub fn dv_coloring(n: u32, random: bool, seed: u32) -> String {
    render((|| {
        check_n(n, 4)?;
        if n > 16 {
            return Err(format!("the segment demo stops at n = 16; got {n}"));
        }
        let ps = if random { random_points(n as usize, seed as u64) } else { convex_position_points(n as usize) }
            .map_err(|e| e.to_string())?;
        let dv = build_dv(&ps, 2).map_err(|e| e.to_string())?;
        let c = dv_achromatic_coloring(&ps).map_err(|e| e.to_string())?;
        let mut v = certified(&dv, n, &c, &[Check::Proper, Check::Complete])?;
        v["points"] = json!(ps.points);
        Ok(v)
    })())
}
