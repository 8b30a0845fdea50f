#![allow(dead_code)]

use bilex::curve::{Knot, PolylineEmbedding};
use num_complex::Complex64 as Cx;

pub fn identity() -> PolylineEmbedding<f64> {
    PolylineEmbedding::identity()
}

pub fn bend() -> PolylineEmbedding<f64> {
    PolylineEmbedding::bend()
}

/// `f(x) = 2x + 3`.
pub fn affine() -> PolylineEmbedding<f64> {
    PolylineEmbedding::two_ray(0.0, Cx::new(3.0, 0.0), Cx::new(2.0, 0.0), Cx::new(2.0, 0.0)).unwrap()
}

/// Four knots, unit speed everywhere.
pub fn zigzag() -> PolylineEmbedding<f64> {
    PolylineEmbedding::new(
        vec![
            Knot::new(0.0, Cx::new(0.0, 0.0)),
            Knot::new(1.0, Cx::new(0.8, 0.6)),
            Knot::new(2.0, Cx::new(1.6, 0.0)),
            Knot::new(3.0, Cx::new(2.4, 0.6)),
        ],
        Cx::new(1.0, 0.0),
        Cx::new(1.0, 0.0),
    )
    .unwrap()
}

/// Right-angle wedge `f(t) = s t` for `t >= 0`, `f(t) = i s t` for `t <= 0`.
pub fn wedge(s: f64) -> PolylineEmbedding<f64> {
    PolylineEmbedding::two_ray(0.0, Cx::new(0.0, 0.0), Cx::new(0.0, s), Cx::new(s, 0.0)).unwrap()
}

/// Three knots with a sharp inward corner and a slow middle segment.
pub fn hook() -> PolylineEmbedding<f64> {
    PolylineEmbedding::new(
        vec![
            Knot::new(-1.0, Cx::new(-1.0, 0.0)),
            Knot::new(0.0, Cx::new(0.0, 0.5)),
            Knot::new(2.0, Cx::new(0.6, 1.0)),
        ],
        Cx::new(1.0, 0.0),
        Cx::new(0.0, 1.0),
    )
    .unwrap()
}

pub fn all_curves() -> Vec<(&'static str, PolylineEmbedding<f64>)> {
    vec![("identity", identity()), ("affine", affine()), ("bend", bend()), ("zigzag", zigzag()), ("hook", hook())]
}

/// Points of the upper half-plane from a fixed low-discrepancy sequence.
pub fn upper_points(n: usize, half_width: f64, y_min: f64, y_max: f64) -> Vec<Cx> {
    let g = 1.324_717_957_244_746_f64;
    let (a1, a2) = (1.0 / g, 1.0 / (g * g));
    (0..n)
        .map(|k| {
            let u = (0.5 + a1 * k as f64).fract();
            let v = (0.5 + a2 * k as f64).fract();
            Cx::new(half_width * (2.0 * u - 1.0), y_min * (y_max / y_min).powf(v))
        })
        .collect()
}

/// Same as [`upper_points`], alternating between the two half-planes.
pub fn plane_points(n: usize, half_width: f64, y_min: f64, y_max: f64) -> Vec<Cx> {
    upper_points(n, half_width, y_min, y_max)
        .into_iter()
        .enumerate()
        .map(|(k, z)| if k % 2 == 0 { z } else { z.conj() })
        .collect()
}
