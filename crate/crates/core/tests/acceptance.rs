//! End-to-end acceptance checks. Each criterion prints one PASS/FAIL line with
//! its wall time and time limit; exceeding the limit is a failure.

use std::time::{Duration, Instant};

use kneser_colorings::achromatic::{achromatic_coloring, grundy_coloring, grundy_relabel};
use kneser_colorings::bounds::{
    alpha_upper_kn2, b_chromatic_lower, improved_psi_bound, matching_colors, psi_upper_general_floor,
};
use kneser_colorings::cli;
use kneser_colorings::coloring::Witness;
use kneser_colorings::designs::{
    c4_free_one_factorization, construct_design_21_5_1, construct_kts, construct_sts, verify_design,
    DEFAULT_SWAP_BUDGET,
};
use kneser_colorings::geometry::{
    build_dv, convex_position_points, dv_achromatic_coloring, dvnk_lower_coloring, random_points,
    thrackle_max_edges, triangle_pair_check,
};
use kneser_colorings::kneser::binomial;
use kneser_colorings::oracle::{
    exact_achromatic, exact_chromatic, exact_pseudoachromatic, Limits, ACHROMATIC_CAP, CHROMATIC_CAP,
};
use kneser_colorings::pseudo::{kneser_matching_coloring, psi_lower_coloring};
use kneser_colorings::{verify_coloring, Check, ColoringFile, KneserGraph};

const PC: [Check; 2] = [Check::Proper, Check::Complete];

/// Runs one criterion, prints its line and returns whether it passed.
fn criterion(id: u32, name: &str, limit_secs: u64, body: impl FnOnce() -> Result<(), String>) -> bool {
    let start = Instant::now();
    let outcome = body();
    let elapsed = start.elapsed();
    let over = elapsed > Duration::from_secs(limit_secs);
    let ok = outcome.is_ok() && !over;
    let detail = match (&outcome, over) {
        (Err(e), _) => format!(" :: {e}"),
        (Ok(()), true) => " :: over time limit".to_string(),
        _ => String::new(),
    };
    println!(
        "criterion {id:>2} [{}] {name} ({:.2?} / limit {limit_secs} s){detail}",
        if ok { "PASS" } else { "FAIL" },
        elapsed
    );
    ok
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn cli_call(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let mut full = vec!["kneser"];
    full.extend_from_slice(args);
    let code = cli::run(full, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn c1_achromatic() -> Result<(), String> {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    for n in 2..=40u32 {
        let path = dir.path().join(format!("a{n}.json"));
        let path = path.to_str().unwrap();
        let ns = n.to_string();
        let (code, _, err) = cli_call(&["construct", "--family", "kn2-achromatic", "--n", &ns, "--out", path]);
        ensure(code == 0, || format!("construct n={n} exited {code}: {err}"))?;
        let (code, out, err) =
            cli_call(&["verify", "--graph", "kneser", "--n", &ns, "--k", "2", "--coloring", path]);
        ensure(code == 0, || format!("verify n={n} exited {code}: {err}"))?;
        let report: serde_json::Value = serde_json::from_str(&out).map_err(|e| e.to_string())?;
        let expected = if n == 3 { 1 } else { binomial(n as u64 + 1, 2) / 3 };
        let got = report["color_count"].as_u64().unwrap_or(0) as u128;
        ensure(got == expected, || format!("n={n}: {got} classes, expected {expected}"))?;
        ensure(report["proper"] == true && report["complete"] == true, || format!("n={n}: {report}"))?;
        ensure(alpha_upper_kn2(n).ok() == Some(expected), || format!("n={n}: upper bound disagrees"))?;
    }
    Ok(())
}

fn c2_oracle() -> Result<(), String> {
    let expected = [1usize, 1, 3, 5, 7];
    for (n, &want) in (2..=6u32).zip(expected.iter()) {
        let g = KneserGraph::new(n, 2).map_err(|e| e.to_string())?;
        let lim = Limits::with_cap(ACHROMATIC_CAP);
        let a = exact_achromatic(&g, lim).map_err(|e| e.to_string())?.value;
        let p = exact_pseudoachromatic(&g, lim).map_err(|e| e.to_string())?.value;
        ensure(a == want && p == want, || format!("n={n}: alpha={a}, psi={p}, expected {want}"))?;
    }
    Ok(())
}

fn c3_psi_lower() -> Result<(), String> {
    for n in 7..=40u32 {
        let g = KneserGraph::new(n, 2).map_err(|e| e.to_string())?;
        let c = psi_lower_coloring(n).map_err(|e| format!("n={n}: {e}"))?;
        let r = verify_coloring(&g, &c, &[Check::Complete]).map_err(|e| e.to_string())?;
        let want = binomial(n as u64, 2) / 2;
        ensure(r.complete && r.color_count as u128 == want, || {
            format!("n={n}: {} classes (want {want}), complete={}", r.color_count, r.complete)
        })?;
    }
    Ok(())
}

fn c4_psi_tight() -> Result<(), String> {
    let (code, out, err) = cli_call(&["construct", "--family", "kn2-psi-tight", "--n", "20"]);
    ensure(code == 0, || format!("exit {code}: {err}"))?;
    let file: ColoringFile = serde_json::from_str(&out).map_err(|e| e.to_string())?;
    let g = KneserGraph::new(20, 2).map_err(|e| e.to_string())?;
    let c = file.to_coloring().map_err(|e| e.to_string())?;
    let r = verify_coloring(&g, &c, &[Check::Complete]).map_err(|e| e.to_string())?;
    let want = (binomial(20, 2) + 10) / 2;
    ensure(r.complete && r.color_count as u128 == want && want == 100, || {
        format!("{} classes, complete={}", r.color_count, r.complete)
    })
}

fn c5_grundy() -> Result<(), String> {
    let checks = [Check::Proper, Check::Complete, Check::Grundy];
    for n in 6..=40u32 {
        let g = KneserGraph::new(n, 2).map_err(|e| e.to_string())?;
        let c = grundy_coloring(n).map_err(|e| format!("n={n}: {e}"))?;
        let r = verify_coloring(&g, &c, &checks).map_err(|e| e.to_string())?;
        let want = binomial(n as u64 + 1, 2) / 3;
        ensure(r.passed() && r.color_count as u128 == want, || {
            format!("n={n}: {} colors, witnesses {:?}", r.color_count, r.witnesses)
        })?;
    }
    for n in [4u32, 5] {
        let g = KneserGraph::new(n, 2).map_err(|e| e.to_string())?;
        let c = grundy_relabel(&achromatic_coloring(n).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        let r = verify_coloring(&g, &c, &[Check::Grundy]).map_err(|e| e.to_string())?;
        let witnessed = r.witnesses.iter().any(|w| {
            matches!(w, Witness::GrundyImpossible { colors, max_degree }
                if *colors == c.color_count() && *max_degree == g.degree() && colors > &(max_degree + 1))
        });
        ensure(!r.grundy && witnessed, || format!("n={n}: expected a Grundy failure with the degree witness"))?;
    }
    Ok(())
}

fn c6_designs() -> Result<(), String> {
    for n in (7..=43u32).filter(|n| n % 6 == 1 || n % 6 == 3) {
        let d = construct_sts(n).map_err(|e| format!("STS({n}): {e}"))?;
        ensure(verify_design(&d).passed(), || format!("STS({n}) failed verification"))?;
    }
    for n in [9u32, 15, 21, 27, 33, 39] {
        let r = construct_kts(n).map_err(|e| format!("KTS({n}): {e}"))?;
        r.verify().map_err(|e| format!("KTS({n}): {e}"))?;
    }
    let plane = construct_design_21_5_1();
    let rep = verify_design(&plane);
    let p = rep.params;
    ensure(rep.passed() && (p.n, p.b, p.r, p.k, p.lambda) == (21, 21, 5, 5, 1), || format!("plane: {p:?}"))?;
    for order in (6..=40u32).step_by(2) {
        let f = c4_free_one_factorization(order, 0, DEFAULT_SWAP_BUDGET).map_err(|e| format!("order {order}: {e}"))?;
        f.verify().map_err(|e| format!("order {order}: {e}"))?;
        ensure(f.four_cycle_pairs().is_empty(), || format!("order {order}: 4-cycles remain"))?;
    }
    Ok(())
}

fn c7_chromatic() -> Result<(), String> {
    for (n, k) in [(4u32, 2u32), (5, 2), (6, 2), (7, 2), (6, 3), (7, 3)] {
        let g = KneserGraph::new(n, k).map_err(|e| e.to_string())?;
        let v = exact_chromatic(&g, Limits::with_cap(CHROMATIC_CAP)).map_err(|e| e.to_string())?.value;
        let want = (n - 2 * (k - 1)) as usize;
        ensure(v == want, || format!("K({n},{k}): chi={v}, expected {want}"))?;
    }
    Ok(())
}

fn c8_bounds() -> Result<(), String> {
    let petersen = KneserGraph::new(5, 2).map_err(|e| e.to_string())?;
    let psi = exact_pseudoachromatic(&petersen, Limits::with_cap(ACHROMATIC_CAP)).map_err(|e| e.to_string())?.value;
    let imp = improved_psi_bound(5, 2).map_err(|e| e.to_string())?;
    ensure(imp == 5 && psi == 5, || format!("improved bound {imp}, oracle psi {psi}"))?;
    for n in 2..=30u32 {
        for k in 1..=n / 2 {
            let imp = improved_psi_bound(n, k).map_err(|e| e.to_string())?;
            let gen = psi_upper_general_floor(n, k).map_err(|e| e.to_string())?;
            ensure(imp <= gen, || format!("K({n},{k}): improved {imp} > general {gen}"))?;
        }
    }
    // Alpha certificates with k >= 3 in this suite: the matching K(6,3).
    let (g, c) = kneser_matching_coloring(3).map_err(|e| e.to_string())?;
    let r = verify_coloring(&g, &c, &PC).map_err(|e| e.to_string())?;
    let lower = b_chromatic_lower(6, 3).map_err(|e| e.to_string())?;
    ensure(r.passed() && lower <= r.color_count as u128, || format!("b-chromatic {lower} vs {}", r.color_count))
}

fn c9_geometry() -> Result<(), String> {
    // Random sets are all checked before reporting, so the line shows how many
    // fall short of n rather than only the first.
    let mut short = Vec::new();
    for n in 3..=7usize {
        let ps = convex_position_points(n).map_err(|e| e.to_string())?;
        let t = thrackle_max_edges(&ps).map_err(|e| e.to_string())?;
        ensure(t == n, || format!("parabola n={n}: thrackle {t}"))?;
        let mut misses = 0;
        for seed in 0..100u64 {
            let ps = random_points(n, seed).map_err(|e| e.to_string())?;
            let t = thrackle_max_edges(&ps).map_err(|e| e.to_string())?;
            ensure(t <= n, || format!("random n={n} seed={seed}: thrackle {t} > n"))?;
            misses += usize::from(t < n);
        }
        if misses > 0 {
            short.push(format!("n={n}: {misses}/100"));
        }
    }
    for seed in 0..1000u64 {
        let n = 6 + (seed % 3) as usize;
        let ps = random_points(n, seed).map_err(|e| e.to_string())?;
        let rep = triangle_pair_check(&ps).map_err(|e| e.to_string())?;
        ensure(rep.passed(), || format!("seed {seed}: {:?}", rep.counterexamples))?;
    }
    for n in [7usize, 9, 13, 15, 8, 12, 14, 10, 16] {
        let ps = convex_position_points(n).map_err(|e| e.to_string())?;
        let dv = build_dv(&ps, 2).map_err(|e| e.to_string())?;
        let c = dv_achromatic_coloring(&ps).map_err(|e| format!("D_V({n}): {e}"))?;
        let r = verify_coloring(&dv, &c, &PC).map_err(|e| e.to_string())?;
        ensure(r.passed(), || format!("D_V({n}): {:?}", r.witnesses))?;
    }
    for (n, k) in [(8usize, 2u32), (12, 3)] {
        let ps = convex_position_points(n).map_err(|e| e.to_string())?;
        let dv = build_dv(&ps, k).map_err(|e| e.to_string())?;
        let c = dvnk_lower_coloring(&ps, k).map_err(|e| e.to_string())?;
        let r = verify_coloring(&dv, &c, &[Check::Complete]).map_err(|e| e.to_string())?;
        let want = binomial(n as u64 / 2, k as u64);
        ensure(r.complete && r.color_count as u128 == want, || {
            format!("D_V({n},{k}): {} classes, want {want}", r.color_count)
        })?;
    }
    ensure(short.is_empty(), || {
        format!("random sets with max thrackle below n: {} (all other parts passed)", short.join(", "))
    })
}

fn c10_matching() -> Result<(), String> {
    for k in [2u32, 3] {
        let (g, c) = kneser_matching_coloring(k).map_err(|e| e.to_string())?;
        let r = verify_coloring(&g, &c, &PC).map_err(|e| e.to_string())?;
        let want = matching_colors(binomial(2 * k as u64, k as u64) / 2);
        ensure(r.passed() && r.color_count as u128 == want, || format!("k={k}: {} colors", r.color_count))?;
        ensure(want == [3, 5][k as usize - 2], || format!("k={k}: formula gives {want}"))?;
    }
    let g = KneserGraph::new(4, 2).map_err(|e| e.to_string())?;
    let lim = Limits::with_cap(ACHROMATIC_CAP);
    let a = exact_achromatic(&g, lim).map_err(|e| e.to_string())?.value;
    let p = exact_pseudoachromatic(&g, lim).map_err(|e| e.to_string())?.value;
    ensure(a == 3 && p == 3, || format!("K(4,2): alpha={a}, psi={p}"))
}

#[test]
fn acceptance() {
    let results = [
        criterion(1, "achromatic colorings of K(n,2), n = 2..40", 10, c1_achromatic),
        criterion(2, "oracle alpha = psi on K(n,2), n = 2..6", 60, c2_oracle),
        criterion(3, "pseudoachromatic lower colorings, n = 7..40", 30, c3_psi_lower),
        criterion(4, "100-class complete coloring of K(20,2)", 10, c4_psi_tight),
        criterion(5, "Grundy colorings n = 6..40; n = 4,5 rejected", 10, c5_grundy),
        criterion(6, "design certificates", 60, c6_designs),
        criterion(7, "chromatic number n - 2k + 2", 60, c7_chromatic),
        criterion(8, "bound formulas", 5, c8_bounds),
        criterion(9, "segment and hull disjointness graphs", 120, c9_geometry),
        criterion(10, "perfect matchings K(2k,k), k = 2,3", 30, c10_matching),
    ];
    let failed: Vec<usize> = (0..results.len()).filter(|&i| !results[i]).map(|i| i + 1).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
