//! End-to-end distortion audit of an extension.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::Grid;
use crate::error::Result;
use crate::extension::{ExtensionMap, PointEval, COMPRESSION_FACTOR, EXPANSION_FACTOR};
use crate::scalar::{lit, to_f64, Real, C};

/// Separations of near-coincident pairs are `10^u`, `u` uniform in this range.
pub const NEAR_PAIR_EXP: (f64, f64) = (-3.0, -1.0);
/// Share of the pair budget spent on near-coincident pairs.
pub const NEAR_PAIR_SHARE: f64 = 0.1;

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct DistortionReport {
    pub curve: String,
    #[serde(rename = "L")]
    pub lip_upper: f64,
    #[serde(rename = "l")]
    pub lip_lower: f64,
    pub seed: u64,
    pub grid_points: usize,
    pub skipped: usize,
    pub pairs: usize,
    #[serde(rename = "maxNormDF")]
    pub max_norm_df: f64,
    #[serde(rename = "maxNormDFinv")]
    pub max_norm_df_inv: f64,
    /// Largest sampled `|F(a) - F(b)| / |a - b|`, a lower bound on the true
    /// upper constant of `F`.
    pub sup_quotient: f64,
    /// Smallest sampled quotient, an upper bound on the true lower constant.
    pub inf_quotient: f64,
    /// `2000 L`.
    pub expansion_bound: f64,
    /// `120 / l`.
    pub compression_bound: f64,
    /// `2000 L / max ||DF||`.
    pub expansion_margin: f64,
    /// `(120 / l) / max ||DF^{-1}||`.
    pub compression_margin: f64,
    /// Worst margins of the pointwise `|Phi'|` vs `DPsi` inequality.
    pub lip2_lower_margin: f64,
    pub lip2_upper_margin: f64,
    pub pass: bool,
}

impl DistortionReport {
    pub fn lip2_pass(&self) -> bool {
        self.lip2_lower_margin >= 1.0 && self.lip2_upper_margin >= 1.0
    }
}

struct Sample {
    z: C<f64>,
    f: C<f64>,
    zeta: C<f64>,
    norm: f64,
    inv_norm: f64,
    lip2: (f64, f64),
}

fn sample<T: Real>(ext: &ExtensionMap<T>, p: &PointEval<T>) -> Sample {
    let m = ext.lip2_margins(p);
    let c = |w: C<T>| C::new(to_f64(w.re), to_f64(w.im));
    Sample {
        z: c(p.z),
        f: c(p.f),
        zeta: c(p.zeta),
        norm: to_f64(p.norm_df()),
        inv_norm: to_f64(p.norm_df_inv()),
        lip2: (m.lower, m.upper),
    }
}

fn cast<T: Real>(z: C<f64>) -> C<T> {
    C::new(lit(z.re), lit(z.im))
}

/// Evaluates `DF` on `grid` and difference quotients on `pairs` random
/// pairs: most are drawn from the grid pool, a share are near-coincident
/// pairs around pool points. Deterministic for a given `seed`.
pub fn distortion_audit<T: Real>(
    ext: &ExtensionMap<T>,
    curve_id: &str,
    grid: &Grid,
    pairs: usize,
    seed: u64,
) -> Result<DistortionReport> {
    let (points, skipped) = grid.points();
    let pool: Vec<Sample> = points
        .par_iter()
        .map(|&z| ext.eval_detail(cast(z), None).map(|p| sample(ext, &p)))
        .collect::<Result<_>>()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let near = if pool.len() > 1 { ((pairs as f64) * NEAR_PAIR_SHARE).round() as usize } else { 0 };
    let far = if pool.len() > 1 { pairs - near } else { 0 };

    let mut sup_q = 0.0f64;
    let mut inf_q = f64::INFINITY;
    for _ in 0..far {
        let i = rng.gen_range(0..pool.len());
        let mut j = rng.gen_range(0..pool.len() - 1);
        if j >= i {
            j += 1;
        }
        let q = (pool[i].f - pool[j].f).norm() / (pool[i].z - pool[j].z).norm();
        sup_q = sup_q.max(q);
        inf_q = inf_q.min(q);
    }
    let jobs: Vec<(usize, C<f64>)> = (0..near)
        .map(|_| {
            let i = rng.gen_range(0..pool.len());
            let sep = 10f64.powf(rng.gen_range(NEAR_PAIR_EXP.0..NEAR_PAIR_EXP.1));
            let dir = C::from_polar(sep, rng.gen_range(0.0..std::f64::consts::TAU));
            (i, dir)
        })
        .collect();
    let partners: Vec<C<f64>> = jobs
        .par_iter()
        .map(|&(i, dir)| {
            let base = &pool[i];
            let z = base.z + dir;
            let w = if z.im.signum() == base.z.im.signum() && z.im.abs() >= super::AXIS_SKIP {
                let hint = cast(base.zeta);
                ext.eval_detail(cast(z), Some(hint)).map(|p| p.f)
            } else {
                ext.eval(cast(z))
            }?;
            Ok(C::new(to_f64(w.re), to_f64(w.im)))
        })
        .collect::<Result<_>>()?;
    for (&(i, dir), w) in jobs.iter().zip(&partners) {
        let q = (w - pool[i].f).norm() / dir.norm();
        sup_q = sup_q.max(q);
        inf_q = inf_q.min(q);
    }

    let max_norm = pool.iter().map(|s| s.norm).fold(0.0, f64::max);
    let max_inv = pool.iter().map(|s| s.inv_norm).fold(0.0, f64::max);
    let lip2_lo = pool.iter().map(|s| s.lip2.0).fold(f64::INFINITY, f64::min);
    let lip2_hi = pool.iter().map(|s| s.lip2.1).fold(f64::INFINITY, f64::min);
    let big_l = to_f64(ext.curve().lip_upper());
    let small_l = to_f64(ext.curve().lip_lower());
    let expansion_bound = EXPANSION_FACTOR * big_l;
    let compression_bound = COMPRESSION_FACTOR / small_l;
    Ok(DistortionReport {
        curve: curve_id.to_string(),
        lip_upper: big_l,
        lip_lower: small_l,
        seed,
        grid_points: pool.len(),
        skipped,
        pairs: far + near,
        max_norm_df: max_norm,
        max_norm_df_inv: max_inv,
        sup_quotient: sup_q,
        inf_quotient: if inf_q.is_finite() { inf_q } else { 0.0 },
        expansion_bound,
        compression_bound,
        expansion_margin: expansion_bound / max_norm,
        compression_margin: compression_bound / max_inv,
        lip2_lower_margin: lip2_lo,
        lip2_upper_margin: lip2_hi,
        pass: max_norm <= expansion_bound && max_inv <= compression_bound,
    })
}

/// The three constraints a `(1.1, 0.7)`-bilipschitz extension of the bend
/// curve would impose on `w = F(i)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Example2 {
    pub w: (f64, f64),
    /// `|w - f(2)|` against `1.1 |i - 2|`.
    pub dist_to_f2: f64,
    /// `|w - f(-2)|` against `1.1 |i + 2|`.
    pub dist_to_fm2: f64,
    /// `dist(w, f(R))` against `0.7 dist(i, R)`.
    pub dist_to_curve: f64,
    pub radius: f64,
    pub violated: [bool; 3],
    /// At least one constraint fails, as it must for any extension.
    pub pass: bool,
}

/// Evaluates `F(i)` and reports which of the three constraints it breaks.
pub fn example2_obstruction_check<T: Real>(ext: &ExtensionMap<T>) -> Result<Example2> {
    let c = ext.curve();
    let i = C::new(T::zero(), T::one());
    let w = ext.eval(i)?;
    let two = lit::<T>(2.0);
    let radius = 1.1 * 5f64.sqrt();
    let d2 = to_f64((w - c.eval(two)).norm());
    let dm2 = to_f64((w - c.eval(-two)).norm());
    let dc = to_f64(c.distance(w));
    let violated = [d2 > radius, dm2 > radius, dc < 0.7];
    Ok(Example2 {
        w: (to_f64(w.re), to_f64(w.im)),
        dist_to_f2: d2,
        dist_to_fm2: dm2,
        dist_to_curve: dc,
        radius,
        violated,
        pass: violated.iter().any(|&v| v),
    })
}

