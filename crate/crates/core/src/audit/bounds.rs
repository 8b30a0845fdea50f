//! Closed-form constants used by the lemma estimates.

use std::f64::consts::{FRAC_PI_4, PI, SQRT_2};

use num_complex::Complex64;
use serde::Serialize;

use super::harmonic::half_plane_measure;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConstantRow {
    pub name: &'static str,
    pub value: f64,
    /// `"<="`, `"<"`, `">="`, `"=="` (to 1e-12) or `"~"` (to 5e-5, a printed rounding).
    pub relation: &'static str,
    pub threshold: f64,
    pub pass: bool,
}

fn row(name: &'static str, value: f64, relation: &'static str, threshold: f64) -> ConstantRow {
    let pass = match relation {
        "<=" => value <= threshold,
        "<" => value < threshold,
        ">=" => value >= threshold,
        "~" => (value - threshold).abs() <= 5e-5,
        _ => (value - threshold).abs() <= 1e-12,
    };
    ConstantRow { name, value, relation, threshold, pass }
}

/// Evaluates every constant and rounding the estimates depend on.
///
/// The subtended measure of `[x-y, x-y/2]` seen from `x+iy` is
/// `(pi/4 - atan(1/2))/pi ~ 0.1024`; the rows record both that value and
/// the rounder `(pi/4 - pi/6)/pi = 1/12`, together with the fact that only
/// the lower bound `>= 1/12` is needed downstream.
pub fn constants_check() -> Vec<ConstantRow> {
    let s = (3.0 * PI / 8.0).sin();
    let c = (PI / 24.0).cos();
    let i = Complex64::new(0.0, 1.0);
    let r = 1.1 * 5f64.sqrt();
    vec![
        row("(1+sin3pi/8)/(1-sin3pi/8)", (1.0 + s) / (1.0 - s), "<=", 30.0),
        row("(1+cos(pi/24))/(1-cos(pi/24))", (1.0 + c) / (1.0 - c), "<", 250.0),
        row("omega(x+iy,(-inf,x-y],H)", half_plane_measure(i, f64::NEG_INFINITY, -1.0), "==", 0.25),
        row("(1/pi)(pi/4-pi/6)", (FRAC_PI_4 - PI / 6.0) / PI, "==", 1.0 / 12.0),
        row("omega(x+iy,[x-y,x-y/2],H)", half_plane_measure(i, -1.0, -0.5), ">=", 1.0 / 12.0),
        row("omega(x+iy,[x-y,x-y/2],H) == 1/12", half_plane_measure(i, -1.0, -0.5), "==", 1.0 / 12.0),
        row("sqrt2(1.1sqrt5-2)", SQRT_2 * (r - 2.0), "<", 0.7),
        row("1.1sqrt5", r, "~", 2.4597),
    ]
}

/// Rows that are expected to hold; the exact-1/12 row is informational.
pub fn is_required(row: &ConstantRow) -> bool {
    row.name != "omega(x+iy,[x-y,x-y/2],H) == 1/12"
}
