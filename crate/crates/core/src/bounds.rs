//! Closed-form bounds for χ, α, ψ and φ of Kneser graphs, in exact integer
//! arithmetic wherever the value is an integer.

use serde::Serialize;

use crate::error::{domain, Result};
use crate::kneser::binomial;

/// Largest `r` with `r(r-1) <= m`, which equals `⌊1/2 + √(1/4 + m)⌋`.
pub fn floor_half_plus_root(m: u128) -> u128 {
    // integer square root, then fix up the boundary
    let mut r = ((m as f64).sqrt() as u128).saturating_add(1);
    while r * (r - 1) > m {
        r -= 1;
    }
    while (r + 1) * r <= m {
        r += 1;
    }
    r
}

/// `α(K(n,2))`: `⌊C(n+1,2)/3⌋`, except `α(K(3,2)) = 1`.
pub fn alpha_upper_kn2(n: u32) -> Result<u128> {
    if n < 2 {
        return domain(format!("K(n,2) needs n >= 2; got n={n}"));
    }
    Ok(if n == 3 { 1 } else { binomial(n as u64 + 1, 2) / 3 })
}

/// Upper bound `⌊(C(n,2) + ⌊n/2⌋)/2⌋` on `ψ(K(n,2))`, n ≥ 7.
pub fn psi_upper_kn2(n: u32) -> Result<u128> {
    if n < 7 {
        return domain(format!("the ψ(K(n,2)) upper bound is stated for n >= 7; got n={n}"));
    }
    Ok((binomial(n as u64, 2) + n as u128 / 2) / 2)
}

/// Lower bound `⌊C(n,2)/2⌋` on `ψ(K(n,2))` realized by the pair colorings, n ≥ 7.
pub fn psi_lower_kn2(n: u32) -> Result<u128> {
    if n < 7 {
        return domain(format!("the ψ(K(n,2)) lower bound is stated for n >= 7; got n={n}"));
    }
    Ok(binomial(n as u64, 2) / 2)
}

fn check_nk(n: u32, k: u32) -> Result<()> {
    if k < 1 || 2 * k > n {
        return domain(format!("needs 1 <= k <= n/2; got n={n}, k={k}"));
    }
    Ok(())
}

/// `1/2 + √(1/4 + C(n,k)·C(n-k,k))`, the general upper bound on `ψ(K(n,k))`.
pub fn psi_upper_general(n: u32, k: u32) -> Result<f64> {
    check_nk(n, k)?;
    let m = binomial(n as u64, k as u64) * binomial((n - k) as u64, k as u64);
    Ok(0.5 + (0.25 + m as f64).sqrt())
}

/// `⌊psi_upper_general(n,k)⌋`, computed without floating point at the boundary.
pub fn psi_upper_general_floor(n: u32, k: u32) -> Result<u128> {
    check_nk(n, k)?;
    Ok(floor_half_plus_root(binomial(n as u64, k as u64) * binomial((n - k) as u64, k as u64)))
}

/// `g(x) = 1 + x·C(n-k,k) - (x-1)·C(n-kx,k)`, where the last term vanishes once `n - kx < k`.
fn improved_g(n: u32, k: u32, x: u128) -> u128 {
    let a = binomial((n - k) as u64, k as u64);
    let kx = k as u128 * x;
    let b = if kx + k as u128 <= n as u128 { binomial((n as u128 - kx) as u64, k as u64) } else { 0 };
    1 + x * a - (x - 1) * b
}

/// `max_x min(⌊C(n,k)/x⌋, g(x))` over integers `1 <= x <= C(n,k)`.
///
/// Since `f(x) = C(n,k)/x` decreases, the scan stops once `f` drops below the
/// best value found.
pub fn improved_psi_bound(n: u32, k: u32) -> Result<u128> {
    check_nk(n, k)?;
    let total = binomial(n as u64, k as u64);
    let mut best = 0;
    for x in 1..=total {
        let f = total / x;
        if f <= best {
            break;
        }
        best = best.max(f.min(improved_g(n, k, x)));
    }
    Ok(best)
}

/// `2·C(⌊n/2⌋, k)`, a lower bound on the b-chromatic number (hence on α) for k ≥ 3.
pub fn b_chromatic_lower(n: u32, k: u32) -> Result<u128> {
    if k < 3 || n < 2 * k {
        return domain(format!("the b-chromatic bound needs k >= 3 and n >= 2k; got n={n}, k={k}"));
    }
    Ok(2 * binomial(n as u64 / 2, k as u64))
}

/// `⌊1/2 + √(1/4 + C(2k,k))⌋ <= ψ(K(2k+1,k))`.
pub fn odd_graph_psi_lower(k: u32) -> Result<u128> {
    if k < 2 {
        return domain(format!("odd graph bound needs k >= 2; got k={k}"));
    }
    Ok(floor_half_plus_root(binomial(2 * k as u64, k as u64)))
}

/// `α = ψ` of a matching with `m` edges: `⌊1/2 + √(1/4 + 2m)⌋`.
pub fn matching_colors(m: u128) -> u128 {
    floor_half_plus_root(2 * m)
}

/// Chromatic number of `K(n,k)`: `n - 2k + 2` when `n >= 2k`, otherwise 1 (no edges).
pub fn kneser_chromatic(n: u32, k: u32) -> u128 {
    if n >= 2 * k {
        (n - 2 * k + 2) as u128
    } else {
        1
    }
}

/// One line of the bounds table; empty fields do not apply.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundsRow {
    pub n: u32,
    pub k: u32,
    pub chi: u128,
    pub alpha_lower: Option<u128>,
    pub alpha_upper: Option<u128>,
    pub psi_lower: Option<u128>,
    pub psi_upper: Option<u128>,
    pub psi_upper_general: Option<f64>,
    pub psi_upper_improved: Option<u128>,
    pub b_chromatic_lower: Option<u128>,
    pub consistent: bool,
    pub notes: String,
}

fn row(n: u32, k: u32) -> BoundsRow {
    let chi = kneser_chromatic(n, k);
    let mut notes = vec!["chi=n-2k+2"];
    let general = psi_upper_general(n, k).ok();
    let improved = improved_psi_bound(n, k).ok();
    let b_chrom = b_chromatic_lower(n, k).ok();
    let (alpha_lower, alpha_upper, psi_lower, psi_upper) = if k == 2 {
        let alpha = alpha_upper_kn2(n).ok();
        notes.push("alpha exact");
        if n >= 7 {
            notes.push("psi in [C(n,2)/2, (C(n,2)+n/2)/2]");
            (alpha, alpha, psi_lower_kn2(n).ok(), psi_upper_kn2(n).ok())
        } else {
            notes.push("psi = alpha for n <= 6");
            (alpha, alpha, alpha, alpha)
        }
    } else if n == 2 * k {
        // K(2k,k) is a perfect matching
        notes.push("matching: alpha = psi exact");
        let m = Some(matching_colors(binomial(n as u64, k as u64) / 2));
        (m, m, m, m)
    } else {
        let lower = Some(b_chrom.map_or(chi, |b| b.max(chi)));
        notes.push("alpha >= max(chi, 2C(n/2,k))");
        let psi_lower = if n == 2 * k + 1 {
            notes.push("odd graph psi lower");
            lower.max(odd_graph_psi_lower(k).ok())
        } else {
            lower
        };
        let upper = match (psi_upper_general_floor(n, k).ok(), improved) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        (lower, None, psi_lower, upper)
    };
    if improved.is_some() {
        notes.push("improved psi bound");
    }
    let le = |a: Option<u128>, b: Option<u128>| match (a, b) {
        (Some(a), Some(b)) => a <= b,
        _ => true,
    };
    let consistent = le(alpha_lower, alpha_upper)
        && le(psi_lower, psi_upper)
        && le(Some(chi), alpha_upper)
        && le(alpha_lower, psi_upper);
    BoundsRow {
        n,
        k,
        chi,
        alpha_lower,
        alpha_upper,
        psi_lower,
        psi_upper,
        psi_upper_general: general,
        psi_upper_improved: improved,
        b_chromatic_lower: b_chrom,
        consistent,
        notes: notes.join("; "),
    }
}

/// Every applicable bound for `2 <= k <= k_max`, with `n` from 2 (k = 2) or
/// `2k` (k ≥ 3) up to `n_max`.
pub fn bounds_table(n_max: u32, k_max: u32) -> Result<Vec<BoundsRow>> {
    if n_max > 60 {
        return domain(format!("bounds table is limited to n <= 60; got {n_max}"));
    }
    let mut rows = Vec::new();
    for k in 2..=k_max {
        let start = if k == 2 { 2 } else { 2 * k };
        for n in start..=n_max {
            rows.push(row(n, k));
        }
    }
    Ok(rows)
}

/// CSV text of a bounds table, header included.
pub fn bounds_csv(rows: &[BoundsRow]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).map_err(|e| crate::Error::Shape(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| crate::Error::Shape(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn root_form_matches_definition() {
        for m in 0..2000u128 {
            let r = floor_half_plus_root(m);
            assert!(r * (r - 1) <= m && (r + 1) * r > m, "m={m}");
            let float = (0.5 + (0.25 + m as f64).sqrt()).floor() as u128;
            assert_eq!(r, float, "m={m}");
        }
    }

    #[test]
    fn formula_values() {
        assert_eq!(alpha_upper_kn2(7).unwrap(), 9);
        assert_eq!(alpha_upper_kn2(3).unwrap(), 1);
        assert_eq!(alpha_upper_kn2(20).unwrap(), 70);
        assert_eq!(psi_upper_kn2(7).unwrap(), 12);
        assert_eq!(psi_upper_kn2(20).unwrap(), 100);
        assert_eq!(psi_upper_kn2(8).unwrap(), 16);
        assert!(psi_upper_kn2(6).is_err());
        assert_eq!(psi_upper_general(4, 2).unwrap(), 3.0);
        assert_eq!(psi_upper_general(5, 2).unwrap(), 6.0);
        assert_eq!(psi_upper_general(6, 3).unwrap(), 5.0);
        assert_eq!(improved_psi_bound(5, 2).unwrap(), 5);
        assert_eq!(improved_psi_bound(4, 2).unwrap(), 3);
        assert_eq!(b_chromatic_lower(6, 3).unwrap(), 2);
        assert_eq!(b_chromatic_lower(8, 3).unwrap(), 8);
        assert_eq!(b_chromatic_lower(10, 3).unwrap(), 20);
        assert!(b_chromatic_lower(10, 2).is_err());
        assert_eq!(odd_graph_psi_lower(2).unwrap(), 3);
        assert_eq!(odd_graph_psi_lower(3).unwrap(), 5);
        assert_eq!(odd_graph_psi_lower(4).unwrap(), 8);
        assert_eq!(matching_colors(1), 2);
        assert_eq!(matching_colors(3), 3);
        assert_eq!(matching_colors(10), 5);
    }

    #[test]
    fn improved_g_pieces() {
        // (5,2): g(1) = 1 + 3, g(2) = 1 + 2*3 since 5 - 4 < 2
        assert_eq!(improved_g(5, 2, 1), 4);
        assert_eq!(improved_g(5, 2, 2), 7);
        assert_eq!(improved_g(5, 2, 3), 10);
    }

    #[test]
    fn table_rows() {
        let t = bounds_table(10, 2).unwrap();
        assert_eq!(t.len(), 9);
        let r10 = t.iter().find(|r| r.n == 10).unwrap();
        assert_eq!((r10.chi, r10.alpha_lower, r10.psi_lower, r10.psi_upper), (8, Some(18), Some(22), Some(25)));
        let r5 = t.iter().find(|r| r.n == 5).unwrap();
        assert_eq!((r5.alpha_upper, r5.psi_upper_improved), (Some(5), Some(5)));
        let t3 = bounds_table(12, 3).unwrap();
        let r63 = t3.iter().find(|r| (r.n, r.k) == (6, 3)).unwrap();
        assert_eq!((r63.chi, r63.psi_upper_general, r63.b_chromatic_lower), (2, Some(5.0), Some(2)));
        assert!(t3.iter().all(|r| r.consistent), "{:?}", t3.iter().find(|r| !r.consistent));
        let csv = bounds_csv(&t).unwrap();
        assert_eq!(csv.lines().count(), 10);
        assert!(csv.starts_with("n,k,chi,"));
        assert!(bounds_table(61, 2).is_err());
    }
}
