//! Browser bindings: a fiber-type map of `P²(F_p)`, Hilbert series
//! coefficients, and the invariant table. Every function returns JSON text.

use cliffconic::catalog::DelPezzoTag;
use cliffconic::clifford::{fiber_algebra, gamma_hilbert_series};
use cliffconic::exactpoly::{parse_poly, Domain, Matrix, Poly};
use cliffconic::invariants::report;
use cliffconic::qform::{projective_points, QForm, BASE_NAMES, BASE_VARS};
use serde_json::json;
use wasm_bindgen::prelude::*;

fn form(a: [i64; 3], d: i64, entries: &str, domain: Domain) -> Result<QForm, String> {
    let parts: Vec<&str> = entries.split(',').map(str::trim).collect();
    if parts.len() != 6 {
        return Err(format!(
            "expected 6 comma-separated entries, got {}",
            parts.len()
        ));
    }
    let mut polys = Vec::new();
    for text in parts {
        polys.push(
            parse_poly(text, &BASE_NAMES, domain)
                .map_err(|e| format!("`{text}`: {e}"))?
                .into_poly(),
        );
    }
    let idx = [[0, 1, 2], [1, 3, 4], [2, 4, 5]];
    let m = Matrix::from_fn(3, 3, |i, j| polys[idx[i][j]].clone());
    QForm::new(a, d, m).map_err(|e| e.to_string())
}

fn error(message: String) -> String {
    json!({ "error": message }).to_string()
}

/// Fiber algebra type (1-5) at every point of `P²(F_p)`.
///
/// `entries` holds `Q11, Q12, Q13, Q22, Q23, Q33` separated by commas. The
/// result lists the affine chart `w = 1` as a `p x p` grid indexed `[y][x]`,
/// followed by the `p + 1` points on the line `w = 0`.
pub fn fiber_map_json(a1: i64, a2: i64, a3: i64, d: i64, entries: &str, prime: u32) -> String {
    let domain = match Domain::prime(prime as u64) {
        Ok(f) => f,
        Err(e) => return error(e.to_string()),
    };
    let q = match form([a1, a2, a3], d, entries, domain) {
        Ok(q) => q,
        Err(e) => return error(e),
    };
    let p = prime as usize;
    let mut grid = vec![vec![0u8; p]; p];
    let mut infinity = Vec::new();
    for pt in projective_points(domain) {
        let kind = match fiber_algebra(&q.at(&pt)).classify() {
            Ok(t) => t.tag(),
            Err(e) => return error(e.to_string()),
        };
        let c = pt.coords();
        if c[2].is_one() {
            let x = c[0].to_bigint().unwrap().try_into().unwrap_or(0usize);
            let y = c[1].to_bigint().unwrap().try_into().unwrap_or(0usize);
            grid[y][x] = kind;
        } else {
            infinity.push(json!({ "point": pt.to_string(), "type": kind }));
        }
    }
    json!({
        "prime": prime,
        "discriminant": q.discriminant().to_string(),
        "grid": grid,
        "infinity": infinity,
    })
    .to_string()
}

/// Coefficients of the Hilbert series of the algebra of sections for the
/// pattern `(a, d)`, up to `t^order`.
pub fn hilbert_json(a1: i64, a2: i64, a3: i64, d: i64, order: u32) -> String {
    let zero = Matrix::from_fn(3, 3, |_, _| Poly::zero(Domain::Rational, BASE_VARS));
    let q = match QForm::new([a1, a2, a3], d, zero) {
        Ok(q) => q,
        Err(e) => return error(e.to_string()),
    };
    let series = match gamma_hilbert_series(&q) {
        Ok(s) => s,
        Err(e) => return error(e.to_string()),
    };
    match series.expand(order as usize) {
        Ok(c) => json!({
            "series": series.to_string(),
            "coefficients": c.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
        })
        .to_string(),
        Err(e) => error(e.to_string()),
    }
}

/// The invariant table of the four del Pezzo types.
pub fn invariant_table_json() -> String {
    let rows: Result<Vec<_>, _> = DelPezzoTag::ALL.into_iter().map(report).collect();
    match rows {
        Ok(rows) => serde_json::to_string(&rows).unwrap(),
        Err(e) => error(e.to_string()),
    }
}

#[wasm_bindgen]
pub fn fiber_map(a1: i32, a2: i32, a3: i32, d: i32, entries: &str, prime: u32) -> String {
    fiber_map_json(a1 as i64, a2 as i64, a3 as i64, d as i64, entries, prime)
}

#[wasm_bindgen]
pub fn hilbert(a1: i32, a2: i32, a3: i32, d: i32, order: u32) -> String {
    hilbert_json(a1 as i64, a2 as i64, a3 as i64, d as i64, order)
}

#[wasm_bindgen]
pub fn invariant_table() -> String {
    invariant_table_json()
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::Value;

    #[test]
    fn diagonal_map() {
        let out: Value =
            serde_json::from_str(&fiber_map_json(0, 0, 0, 1, "u,0,0,v,0,w", 5)).unwrap();
        assert_eq!(out["discriminant"], "u*v*w");
        assert_eq!(out["grid"][1][1], 1);
        assert_eq!(out["grid"][0][1], 2);
        assert_eq!(out["grid"][0][0], 3);
        assert_eq!(out["infinity"].as_array().unwrap().len(), 6);
    }

    #[test]
    fn hilbert_coefficients() {
        let out: Value = serde_json::from_str(&hilbert_json(0, 0, 0, 1, 4)).unwrap();
        let c: Vec<&str> = out["coefficients"]
            .as_array()
            .unwrap()
            .iter()
            .map(|v| v.as_str().unwrap())
            .collect();
        assert_eq!(c, ["1", "0", "6", "0", "15"]);
    }

    #[test]
    fn table_and_errors() {
        let rows: Value = serde_json::from_str(&invariant_table_json()).unwrap();
        assert_eq!(rows[0]["minus_K3"], 30);
        assert_eq!(rows[3]["minus_K3"], 18);
        let bad: Value = serde_json::from_str(&fiber_map_json(0, 0, 0, 1, "u,v", 5)).unwrap();
        assert!(bad["error"].is_string());
        let bad: Value =
            serde_json::from_str(&fiber_map_json(0, 0, 0, 1, "u,0,0,v,0,w", 4)).unwrap();
        assert!(bad["error"].is_string());
    }
}
