mod common;

use bilex::conformal::{HalfPlane, Normalization};
use bilex::curve::Side;
use bilex::extension::{build_extension, build_extension_normalized, linear_conjugation_check};
use bilex::Error;
use num_complex::Complex64 as Cx;

use common::*;

#[test]
fn closed_forms() {
    let id = build_extension(&identity()).unwrap();
    assert!((id.eval(Cx::new(1.0, 1.0)).unwrap() - Cx::new(1.0, 2.0)).norm() < 1e-12);
    assert!((id.eval(Cx::new(0.0, -1.0)).unwrap() - Cx::new(0.0, -2.0)).norm() < 1e-12);
    let j = id.jacobian(Cx::new(-4.0, 0.3)).unwrap();
    assert!((j.a - 1.0).abs() < 1e-10 && (j.d - 2.0).abs() < 1e-10 && j.b.abs() < 1e-10 && j.c.abs() < 1e-10);

    let aff = build_extension(&affine()).unwrap();
    for z in [Cx::new(0.5, 2.0), Cx::new(-3.0, -0.1)] {
        let w = aff.eval(z).unwrap();
        assert!((w - Cx::new(2.0 * z.re + 3.0, 4.0 * z.im)).norm() < 1e-11, "{z}: {w}");
        let j = aff.jacobian(z).unwrap();
        assert!((j.norm() - 4.0).abs() < 1e-10 && (j.inverse_norm() - 0.5).abs() < 1e-10);
    }

    let b = build_extension(&bend()).unwrap();
    let i = Cx::new(0.0, 1.0);
    let w = b.half(HalfPlane::Upper).eval(i).unwrap();
    assert!((b.eval(w).unwrap() - Cx::from_polar(1.0, 0.75 * std::f64::consts::PI)).norm() < 1e-10);
    for (_, c) in all_curves() {
        let e = build_extension(&c).unwrap();
        assert_eq!(e.eval(Cx::new(5.0, 0.0)).unwrap(), c.eval(5.0));
    }
    assert!(matches!(b.jacobian(Cx::new(1.0, 0.0)), Err(Error::Domain(_))));
}

#[test]
fn boundary_agreement_and_continuity() {
    for (name, c) in all_curves() {
        let e = build_extension(&c).unwrap();
        for k in 0..=80 {
            let x = -20.0 + 0.5 * k as f64;
            let f = c.eval(x);
            let up = e.eval(Cx::new(x, 1e-6)).unwrap();
            let down = e.eval(Cx::new(x, -1e-6)).unwrap();
            assert!((up - f).norm() < 1e-4 * (1.0 + f.norm()), "{name} {x}: {up} vs {f}");
            assert!((down - f).norm() < 1e-4 * (1.0 + f.norm()), "{name} {x}: {down} vs {f}");
            let gap = |eps: f64| (e.eval(Cx::new(x, eps)).unwrap() - e.eval(Cx::new(x, -eps)).unwrap()).norm();
            assert!(gap(1e-8) < gap(1e-3) + 1e-12, "{name} {x}");
        }
    }
}

#[test]
fn images_lie_on_matching_sides_and_are_distinct() {
    for (name, c) in all_curves() {
        let e = build_extension(&c).unwrap();
        let pts = plane_points(400, 6.0, 0.01, 6.0);
        let imgs: Vec<Cx> = pts.iter().map(|&z| e.eval(z).unwrap()).collect();
        for (z, w) in pts.iter().zip(&imgs) {
            let want = if z.im > 0.0 { Side::Left } else { Side::Right };
            assert_eq!(c.side(*w), want, "{name} {z}");
        }
        for i in 0..imgs.len() {
            for j in i + 1..imgs.len() {
                assert!((imgs[i] - imgs[j]).norm() > 0.0, "{name}");
            }
        }
    }
}

#[test]
fn jacobian_matches_finite_differences() {
    for (name, c) in all_curves() {
        let e = build_extension(&c).unwrap();
        for z in plane_points(1000, 8.0, 0.01, 8.0) {
            let p = e.eval_detail(z, None).unwrap();
            let h = 1e-5 * z.im.abs();
            let hint = Some(p.zeta);
            let ev = |w: Cx| e.eval_detail(w, hint).unwrap().f;
            let dx = (ev(z + h) - ev(z - h)) / (2.0 * h);
            let dy = (ev(z + Cx::new(0.0, h)) - ev(z - Cx::new(0.0, h))) / (2.0 * h);
            let fd = bilex::linalg::Mat2::new(dx.re, dy.re, dx.im, dy.im);
            let err = fd.sub(&p.df).norm() / p.df.norm();
            assert!(err < 1e-4, "{name} {z}: {err}");
        }
    }
}

#[test]
fn distortion_bounds_pointwise() {
    for (name, c) in all_curves() {
        let e = build_extension(&c).unwrap();
        for z in plane_points(500, 20.0, 1e-3, 20.0) {
            let p = e.eval_detail(z, None).unwrap();
            assert!(p.norm_df() <= e.expansion_bound(), "{name} {z}");
            assert!(p.norm_df_inv() <= 1.0 / e.compression_bound(), "{name} {z}");
            let m = e.lip2_margins(&p);
            assert!(m.lower >= 1.0 && m.upper >= 1.0, "{name} {z}: {m:?}");
        }
    }
}

#[test]
fn normalization_independence() {
    for (name, c) in all_curves() {
        let base = build_extension(&c).unwrap();
        let other = build_extension_normalized(&c, Normalization { r: 2.5, s: 0.7 }, Normalization { r: 0.4, s: -1.1 }).unwrap();
        for z in plane_points(200, 5.0, 0.02, 5.0) {
            let (a, b) = (base.eval(z).unwrap(), other.eval(z).unwrap());
            assert!((a - b).norm() < 1e-5 * b.norm().max(1.0), "{name} {z}: {a} vs {b}");
        }
    }
}

#[test]
fn linear_conjugation() {
    let pts = plane_points(60, 4.0, 0.05, 4.0);
    let choices = [
        (2.0, 0.0, Cx::new(1.0, 0.0), Cx::new(0.0, 0.0)),
        (1.0, 1.0, Cx::new(0.0, 1.0), Cx::new(0.0, 0.0)),
        (0.5, -2.0, Cx::new(1.5, -0.5), Cx::new(2.0, 1.0)),
    ];
    for c in [identity(), bend(), zigzag()] {
        for &(r, s, a, b) in &choices {
            let (pre, post) = linear_conjugation_check(&c, r, s, a, b, &pts).unwrap();
            assert!(pre < 1e-5 && post < 1e-5, "{r} {s} {a} {b}: {pre} {post}");
        }
    }
}

#[test]
fn pair_quotients_within_global_bounds() {
    for (name, c) in all_curves() {
        let e = build_extension(&c).unwrap();
        let pts = plane_points(300, 6.0, 0.01, 6.0);
        let imgs: Vec<Cx> = pts.iter().map(|&z| e.eval(z).unwrap()).collect();
        let (hi, lo) = (e.expansion_bound(), e.compression_bound());
        for i in 0..pts.len() {
            for j in i + 1..pts.len() {
                let q = (imgs[i] - imgs[j]).norm() / (pts[i] - pts[j]).norm();
                assert!(q <= hi && q >= lo, "{name}: {q}");
            }
        }
    }
}

#[test]
fn f32_extension() {
    let e = build_extension(&bilex::EmbeddingF32::identity()).unwrap();
    let w = e.eval(num_complex::Complex32::new(1.0, 1.0)).unwrap();
    assert!((w - num_complex::Complex32::new(1.0, 2.0)).norm() < 1e-5);
}
