use std::fmt::Write as _;

use bilex::audit::bounds::is_required;
use bilex::audit::{
    bn_bounds_check, chord_arc_margins, constants_check, distortion_audit, half_plane_measure, harmonic_measure_mc,
    lemma_harm1_check, Check, Grid, ParamSet, Report, AXIS_SKIP,
};
use bilex::ba_ext::{BAExtension, BoundaryReparam};
use bilex::extension::linear_conjugation_check;
use bilex::{build_extension, build_extension_normalized, build_phi, Embedding, Extension, HalfPlane, Normalization, Result, Side};
use num_complex::Complex64 as Cx;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::json;

use crate::Suite;

/// Fixed-point with 12 decimals, trailing zeros trimmed, no negative zero.
pub fn fmt_num(x: f64) -> String {
    let s = format!("{x:.12}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".to_string()
    } else {
        s.to_string()
    }
}

pub fn extend_csv(curve: &Embedding, grid: &Grid, tol: Option<f64>) -> Result<String> {
    let mut ext = build_extension(curve)?;
    if let Some(t) = tol {
        ext = ext.with_tolerance(t);
    }
    let (points, _) = grid.points();
    let rows: Vec<String> = points
        .par_iter()
        .map(|&z| {
            let p = ext.eval_detail(z, None)?;
            Ok([z.re, z.im, p.f.re, p.f.im, p.norm_df(), p.norm_df_inv()].map(fmt_num).join(","))
        })
        .collect::<Result<_>>()?;
    let mut out = String::from("x,y,Fx,Fy,normDF,normDFinv\n");
    for r in rows {
        out.push_str(&r);
        out.push('\n');
    }
    Ok(out)
}

/// Grid lines sampled `per_cell` times per cell; points on the real axis map to
/// the curve itself.
pub fn export_grid_csv(curve: &Embedding, grid: &Grid, per_cell: usize) -> Result<String> {
    let ext = build_extension(curve)?;
    let axis = |lo: f64, hi: f64, step: f64| -> Vec<f64> {
        let n = ((hi - lo) / step + 1e-9).floor() as usize;
        (0..=n).map(|k| lo + step * k as f64).collect()
    };
    let xs = axis(grid.x0, grid.x1, grid.dx);
    let ys = axis(grid.y0, grid.y1, grid.dy);
    let fine_x = axis(grid.x0, grid.x1, grid.dx / per_cell as f64);
    let fine_y = axis(grid.y0, grid.y1, grid.dy / per_cell as f64);
    let mut lines: Vec<(&str, f64, Cx)> = Vec::new();
    for &y in ys.iter().filter(|y| y.abs() >= AXIS_SKIP) {
        lines.extend(fine_x.iter().map(|&x| ("h", y, Cx::new(x, y))));
    }
    for &x in &xs {
        lines.extend(fine_y.iter().filter(|y| y.abs() >= AXIS_SKIP || **y == 0.0).map(|&y| ("v", x, Cx::new(x, y))));
    }
    let images: Vec<Cx> = lines.par_iter().map(|&(_, _, z)| ext.eval(z)).collect::<Result<_>>()?;
    let mut out = String::from("family,value,x,y,Fx,Fy\n");
    for ((fam, v, z), w) in lines.iter().zip(images) {
        let _ = writeln!(out, "{fam},{},{},{},{},{}", fmt_num(*v), fmt_num(z.re), fmt_num(z.im), fmt_num(w.re), fmt_num(w.im));
    }
    Ok(out)
}

pub fn audit(id: &str, curve: &Embedding, grid: &Grid, pairs: usize, seed: u64) -> Result<Report> {
    let ext = build_extension(curve)?;
    let d = distortion_audit(&ext, id, grid, pairs, seed)?;
    let mut report = Report::new(id, curve, seed);
    report.push(Check::new("lip1", d.pass, d.expansion_margin.min(d.compression_margin), &d));
    report.push(Check::from_margin(
        "lip2",
        d.lip2_lower_margin.min(d.lip2_upper_margin),
        json!({"lower": d.lip2_lower_margin, "upper": d.lip2_upper_margin}),
    ));
    Ok(report)
}

pub struct VerifyOptions {
    pub samples: usize,
    pub walks: usize,
    pub seed: u64,
    pub tol: f64,
}

pub fn verify(id: &str, curve: &Embedding, suite: Suite, opts: &VerifyOptions) -> Result<Report> {
    let mut report = Report::new(id, curve, opts.seed);
    match suite {
        Suite::Constants => constants(&mut report),
        Suite::Lemmas => lemmas(&mut report, curve, opts)?,
        Suite::Invariance => invariance(&mut report, curve, opts)?,
    }
    Ok(report)
}

/// Points in the upper half-plane, `x` uniform and `y` log-uniform.
fn random_upper(rng: &mut ChaCha8Rng, n: usize, half_width: f64, y_min: f64, y_max: f64) -> Vec<Cx> {
    (0..n)
        .map(|_| {
            let x = rng.gen_range(-half_width..half_width);
            Cx::new(x, y_min * (y_max / y_min).powf(rng.gen::<f64>()))
        })
        .collect()
}

fn side_name(side: HalfPlane) -> &'static str {
    match side {
        HalfPlane::Upper => "upper",
        HalfPlane::Lower => "lower",
    }
}

fn constants(report: &mut Report) {
    for row in constants_check().into_iter().filter(is_required) {
        let margin = match row.relation {
            "<=" | "<" => row.threshold / row.value,
            ">=" => row.value / row.threshold,
            _ => f64::from(u8::from(row.pass)),
        };
        report.push(Check::new(row.name, row.pass, margin, &row));
    }
}

fn lemmas(report: &mut Report, curve: &Embedding, opts: &VerifyOptions) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    for side in [HalfPlane::Upper, HalfPlane::Lower] {
        let map = build_phi(curve, side)?;
        let pts: Vec<Cx> = random_upper(&mut rng, opts.samples, 10.0, 1e-3, 10.0)
            .into_iter()
            .map(|z| if side == HalfPlane::Upper { z } else { z.conj() })
            .collect();
        let results: Vec<(f64, f64)> = pts
            .par_iter()
            .map(|&z| {
                let h = lemma_harm1_check(&map, z)?;
                let (lo, hi) = map.koebe_check(z)?;
                Ok((h.left_margin.min(h.right_margin), lo.min(1.0 / hi)))
            })
            .collect::<Result<_>>()?;
        let harm = results.iter().map(|r| r.0).fold(f64::INFINITY, f64::min);
        let koebe = results.iter().map(|r| r.1).fold(f64::INFINITY, f64::min);
        let s = side_name(side);
        report.push(Check::from_margin(format!("harm1 ({s})"), harm, json!({"points": pts.len()})));
        report.push(Check::from_margin(format!("koebe ({s})"), koebe, json!({"points": pts.len()})));

        let reparam = BoundaryReparam::new(map);
        let mut worst = f64::INFINITY;
        for (a, b) in [(-3.0, -1.0), (-0.5, 0.2), (0.1, 0.11), (0.5, 4.0), (-6.0, 6.0)] {
            let (diam, dist) = chord_arc_margins(reparam.map(), &reparam, a, b)?;
            worst = worst.min(diam).min(dist);
        }
        // two-ray curves attain the diameter bound exactly
        report.push(Check::new(format!("chord-arc ({s})"), worst >= 1.0 - 1e-9, worst, json!({"intervals": 5})));
    }

    // the half-plane angle estimates behind the four-arc lemma
    let half = Embedding::identity();
    let z = Cx::new(0.3, 1.2);
    let a = z.re - z.im;
    let quarter = harmonic_measure_mc(&half, Side::Left, z, &ParamSet::interval(f64::NEG_INFINITY, a), opts.walks, opts.seed)?;
    let q_ok = quarter.brackets(0.25, 3.0);
    report.push(Check::new("angle 1/4", q_ok, f64::from(u8::from(q_ok)), &quarter));
    let exact = half_plane_measure(z, a, a + z.im / 2.0);
    let second = harmonic_measure_mc(&half, Side::Left, z, &ParamSet::interval(a, a + z.im / 2.0), opts.walks, opts.seed + 1)?;
    let reach = (second.value + 3.0 * second.stderr) * 12.0;
    report.push(Check::new(
        "angle >= 1/12",
        reach >= 1.0 && exact >= 1.0 / 12.0,
        reach,
        json!({"estimate": second, "exact": exact}),
    ));

    let mut bn_margin = f64::INFINITY;
    let mut bn_all = true;
    for &rho in &[0.5, 1.0, 3.0, 8.0] {
        for &(r, th) in &[(0.2, 0.4), (0.7, 1.4), (1.9, 2.2), (5.0, 0.9), (12.0, 2.8)] {
            let z = Cx::from_polar(r, th);
            let c = bn_bounds_check(z.norm(), rho, half_plane_measure(z, -rho, rho), 0.0)?;
            bn_all &= c.pass;
            bn_margin = bn_margin.min(if c.kind == "lower" { c.value / c.bound } else { c.bound / c.value });
        }
    }
    report.push(Check::new("beurling-nevanlinna (half-plane)", bn_all, bn_margin, json!({"combinations": 20})));

    if let [knot] = curve.knots() {
        // ball around the vertex of a two-ray curve meets it in [t0 - rho, t0 + rho]
        let rho = 1.0;
        let e = ParamSet::interval(knot.t - rho, knot.t + rho);
        let mut all = true;
        let mut details = Vec::new();
        for (k, r) in [0.4, 2.5].into_iter().enumerate() {
            let Some(zeta) = (0..64)
                .map(|j| knot.w + Cx::from_polar(r, std::f64::consts::TAU * (j as f64 + 0.5) / 64.0))
                .find(|&w| curve.side(w) == Side::Left && curve.distance(w) > r / 4.0)
            else {
                continue;
            };
            let est = harmonic_measure_mc(curve, Side::Left, zeta, &e, opts.walks, opts.seed + 2 + k as u64)?;
            let c = bn_bounds_check(r, rho, est.value, 3.0 * est.stderr)?;
            all &= c.pass;
            details.push(c);
        }
        report.push(Check::new("beurling-nevanlinna (curve)", all, f64::from(u8::from(all)), &details));
    }
    Ok(())
}

fn invariance(report: &mut Report, curve: &Embedding, opts: &VerifyOptions) -> Result<()> {
    let tol = opts.tol;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let pts: Vec<Cx> = random_upper(&mut rng, opts.samples, 5.0, 0.02, 5.0)
        .into_iter()
        .map(|z| if rng.gen::<bool>() { z } else { z.conj() })
        .collect();

    let base = build_extension(curve)?;
    let other = build_extension_normalized(curve, Normalization { r: 2.5, s: 0.7 }, Normalization { r: 0.4, s: -1.1 })?;
    let dev = max_par(&pts, |z| {
        let (a, b) = (base.eval(z)?, other.eval(z)?);
        Ok((a - b).norm() / b.norm().max(1.0))
    })?;
    report.push(Check::new("normalization", dev <= tol, tol / dev, json!({"maxDeviation": dev, "tol": tol})));

    let small: Vec<Cx> = pts.iter().take(100).copied().collect();
    let mut conj = 0.0f64;
    for (r, s, a, b) in [
        (2.0, 0.0, Cx::new(2.0, 0.0), Cx::new(0.0, 0.0)),
        (1.0, 1.0, Cx::new(0.0, 1.0), Cx::new(0.0, 0.0)),
        (0.5, -2.0, Cx::new(1.5, -0.5), Cx::new(2.0, 1.0)),
    ] {
        let (pre, post) = linear_conjugation_check(curve, r, s, a, b, &small)?;
        conj = conj.max(pre).max(post);
    }
    report.push(Check::new("conjugation", conj <= tol, tol / conj, json!({"maxDeviation": conj, "tol": tol})));

    let xs: Vec<f64> = (0..=80).map(|k| -20.0 + 0.5 * k as f64).collect();
    let gap = max_par(&xs, |x| boundary_gap(&base, curve, x))?;
    report.push(Check::new("boundary agreement", gap < 1e-4, 1e-4 / gap, json!({"maxRelativeGap": gap, "eps": 1e-6})));

    let mut inv = 0.0f64;
    for side in [HalfPlane::Upper, HalfPlane::Lower] {
        let ba = BAExtension::new(BoundaryReparam::new(build_phi(curve, side)?));
        let upper: Vec<Cx> = pts.iter().map(|z| Cx::new(z.re, z.im.abs())).collect();
        inv = inv.max(max_par(&upper, |w| Ok((ba.eval(ba.inverse(w, 1e-10)?)? - w).norm()))?);
    }
    report.push(Check::new("inverse", inv <= 1e-10, 1e-10 / inv, json!({"maxResidual": inv})));
    Ok(())
}

fn boundary_gap(ext: &Extension, curve: &Embedding, x: f64) -> Result<f64> {
    let f = curve.eval(x);
    let up = ext.eval(Cx::new(x, 1e-6))?;
    let down = ext.eval(Cx::new(x, -1e-6))?;
    Ok((up - f).norm().max((down - f).norm()) / (1.0 + f.norm()))
}

fn max_par<X: Copy + Sync>(xs: &[X], f: impl Fn(X) -> Result<f64> + Sync) -> Result<f64> {
    let vals: Vec<f64> = xs.par_iter().map(|&x| f(x)).collect::<Result<_>>()?;
    Ok(vals.into_iter().fold(0.0, f64::max))
}

#[cfg(test)]
mod tests {
    use super::fmt_num;

    #[test]
    fn number_format() {
        assert_eq!(fmt_num(1.0), "1");
        assert_eq!(fmt_num(-2.0), "-2");
        assert_eq!(fmt_num(-1e-15), "0");
        assert_eq!(fmt_num(0.25), "0.25");
        assert_eq!(fmt_num(1.0 / 3.0), "0.333333333333");
    }
}
