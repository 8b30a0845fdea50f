//! Harmonic measure by walk on spheres, and the Beurling–Nevanlinna bounds.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::curve::{PolylineEmbedding, Side};
use crate::error::{Error, Result};
use crate::scalar::{lit, to_f64, Real, C};

/// Absorption distance relative to the starting distance from the boundary.
pub const ABSORPTION: f64 = 1e-4;
/// Walks per random stream.
const CHUNK: usize = 2048;
/// Step cap per walk; a walk that reaches it is scored as a miss and counted.
const MAX_STEPS: usize = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HarmonicMeasureEstimate {
    pub value: f64,
    pub stderr: f64,
    pub walks: usize,
    pub absorption: f64,
    pub unfinished: usize,
}

impl HarmonicMeasureEstimate {
    /// Whether `reference` lies within `k` standard errors.
    pub fn brackets(&self, reference: f64, k: f64) -> bool {
        (self.value - reference).abs() <= k * self.stderr
    }
}

/// A boundary subset given as a union of curve parameter intervals;
/// infinite endpoints are allowed.
#[derive(Debug, Clone, PartialEq)]
pub struct ParamSet<T> {
    pub intervals: Vec<(T, T)>,
}

impl<T: Real> ParamSet<T> {
    pub fn interval(a: T, b: T) -> Self {
        Self { intervals: vec![(a, b)] }
    }

    pub fn contains(&self, t: T) -> bool {
        self.intervals.iter().any(|&(a, b)| t >= a && t <= b)
    }
}

/// Walk on spheres in the component of the complement of `curve` on the
/// given side, started at `zeta`; scores walks absorbed at a curve
/// parameter in `set`.
pub fn harmonic_measure_mc<T: Real>(
    curve: &PolylineEmbedding<T>,
    side: Side,
    zeta: C<T>,
    set: &ParamSet<T>,
    walks: usize,
    seed: u64,
) -> Result<HarmonicMeasureEstimate> {
    let d0 = curve.distance(zeta);
    let eps = d0 * lit(ABSORPTION);
    if side == Side::On || !(d0 > T::zero()) {
        return Err(Error::Domain("walk needs a start point off the curve".into()));
    }
    if curve.side(zeta) != side {
        return Err(Error::Domain("start point is not in the requested domain".into()));
    }
    let chunks = walks.div_ceil(CHUNK);
    let counts: Vec<(usize, usize)> = (0..chunks)
        .into_par_iter()
        .map(|k| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(k as u64);
            let n = CHUNK.min(walks - k * CHUNK);
            let mut hits = 0;
            let mut unfinished = 0;
            for _ in 0..n {
                match walk(curve, zeta, eps, &mut rng) {
                    Some(t) if set.contains(t) => hits += 1,
                    Some(_) => {}
                    None => unfinished += 1,
                }
            }
            (hits, unfinished)
        })
        .collect();
    let hits: usize = counts.iter().map(|c| c.0).sum();
    let unfinished: usize = counts.iter().map(|c| c.1).sum();
    let p = hits as f64 / walks as f64;
    Ok(HarmonicMeasureEstimate {
        value: p,
        stderr: (p * (1.0 - p) / walks as f64).sqrt(),
        walks,
        absorption: to_f64(eps),
        unfinished,
    })
}

fn walk<T: Real, R: Rng>(curve: &PolylineEmbedding<T>, start: C<T>, eps: T, rng: &mut R) -> Option<T> {
    let mut p = start;
    for _ in 0..MAX_STEPS {
        let near = curve.nearest(p);
        if near.distance <= eps {
            return Some(near.t);
        }
        let theta = lit::<T>(rng.gen::<f64>() * std::f64::consts::TAU);
        p = p + C::from_polar(near.distance, theta);
    }
    None
}

/// Exact harmonic measure of `[a, b]` (endpoints may be infinite) in the
/// upper half-plane: the subtended angle over `pi`.
pub fn half_plane_measure(zeta: C<f64>, a: f64, b: f64) -> f64 {
    let ang = |t: f64| {
        if t == f64::NEG_INFINITY {
            -std::f64::consts::FRAC_PI_2
        } else if t == f64::INFINITY {
            std::f64::consts::FRAC_PI_2
        } else {
            ((t - zeta.re) / zeta.im).atan()
        }
    };
    (ang(b) - ang(a)) / std::f64::consts::PI
}

/// `(2/pi) asin((rho - |z|)/(rho + |z|))`, a lower bound for the measure of
/// the boundary inside `B(0, rho)` when `|z| < rho`.
pub fn bn_lower(zeta_abs: f64, rho: f64) -> f64 {
    2.0 / std::f64::consts::PI * ((rho - zeta_abs) / (rho + zeta_abs)).asin()
}

/// `(2/pi) acos((|z| - rho)/(|z| + rho))`, an upper bound for the measure of
/// the boundary inside the closed disk when `|z| > rho`.
pub fn bn_upper(zeta_abs: f64, rho: f64) -> f64 {
    2.0 / std::f64::consts::PI * ((zeta_abs - rho) / (zeta_abs + rho)).acos()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BnCheck {
    /// `"lower"` when `|zeta| < rho`, `"upper"` when `|zeta| > rho`.
    pub kind: &'static str,
    pub bound: f64,
    pub value: f64,
    /// Allowed statistical slack (zero for exact values).
    pub slack: f64,
    pub pass: bool,
}

/// Compares a measure of `boundary ∩ B(0, rho)` (exact, or an estimate with
/// `slack = 3 stderr`) against the applicable bound.
pub fn bn_bounds_check(zeta_abs: f64, rho: f64, value: f64, slack: f64) -> Result<BnCheck> {
    if zeta_abs < rho {
        let bound = bn_lower(zeta_abs, rho);
        Ok(BnCheck { kind: "lower", bound, value, slack, pass: value + slack >= bound })
    } else if zeta_abs > rho {
        let bound = bn_upper(zeta_abs, rho);
        Ok(BnCheck { kind: "upper", bound, value, slack, pass: value - slack <= bound })
    } else {
        Err(Error::Usage("the bounds need |zeta| != rho".into()))
    }
}
