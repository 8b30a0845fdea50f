mod common;

use bilex::conformal::{build_phi, build_phi_normalized, promotion_gate, EngineKind, HalfPlane, Normalization};
use bilex::curve::{Knot, PolylineEmbedding, Side};
use bilex::Error;
use num_complex::Complex64 as Cx;

use common::*;

fn sides() -> [HalfPlane; 2] {
    [HalfPlane::Upper, HalfPlane::Lower]
}

fn in_half(side: HalfPlane, z: Cx) -> Cx {
    match side {
        HalfPlane::Upper => z,
        HalfPlane::Lower => z.conj(),
    }
}

#[test]
fn sector_examples() {
    let id = build_phi(&identity(), HalfPlane::Upper).unwrap();
    assert_eq!(id.kind(), EngineKind::ExactSector);
    assert!((id.eval(Cx::new(2.0, 3.0)).unwrap() - Cx::new(2.0, 3.0)).norm() < 1e-14);
    assert!((id.deriv(Cx::new(2.0, 3.0)).unwrap() - 1.0).norm() < 1e-14);
    assert!((id.boundary(-5.0) - Cx::new(-5.0, 0.0)).norm() < 1e-14);

    let b = build_phi(&bend(), HalfPlane::Upper).unwrap();
    let i = Cx::new(0.0, 1.0);
    let e = Cx::from_polar(1.0, 0.75 * std::f64::consts::PI);
    assert!((b.eval(i).unwrap() - e).norm() < 1e-14);
    assert!((b.deriv(i).unwrap() - Cx::from_polar(1.5, std::f64::consts::FRAC_PI_4)).norm() < 1e-14);
    assert!((b.boundary(-1.0) - Cx::new(0.0, -1.0)).norm() < 1e-14);
    assert!((b.boundary(4.0) - Cx::new(8.0, 0.0)).norm() < 1e-13);
    assert!((b.psi_direct(-4.0) + 8.0).abs() < 1e-13);
    assert!((b.psi_direct(9.0) - 27.0).abs() < 1e-12);

    let lo = build_phi(&bend(), HalfPlane::Lower).unwrap();
    // the right-hand domain is the quarter plane {re > 0, im < 0}
    let w = lo.eval(Cx::new(0.3, -0.7)).unwrap();
    assert!(w.re > 0.0 && w.im < 0.0);
    assert_eq!(bend().side(w), Side::Right);
}

#[test]
fn rejects_wrong_half_plane() {
    let b = build_phi(&zigzag(), HalfPlane::Upper).unwrap();
    assert!(matches!(b.eval(Cx::new(0.0, -1.0)), Err(Error::Domain(_))));
    let lo = build_phi(&zigzag(), HalfPlane::Lower).unwrap();
    assert!(matches!(lo.deriv(Cx::new(0.0, 1.0)), Err(Error::Domain(_))));
}

#[test]
fn general_engine_is_used_and_gated() {
    assert!(promotion_gate().passed);
    let m = build_phi(&zigzag(), HalfPlane::Upper).unwrap();
    assert_eq!(m.kind(), EngineKind::SchwarzChristoffel);
    assert!(m.parameter_residual() < 1e-10);
    assert_eq!(m.prevertices().len(), 4);
    assert!(m.prevertices().windows(2).all(|p| p[0] < p[1]));
}

#[test]
fn images_stay_on_the_correct_side() {
    for (name, c) in all_curves() {
        for side in sides() {
            let m = build_phi(&c, side).unwrap();
            let want = if side == HalfPlane::Upper { Side::Left } else { Side::Right };
            for z in upper_points(200, 6.0, 0.01, 8.0) {
                let w = m.eval(in_half(side, z)).unwrap();
                assert_eq!(c.side(w), want, "{name} {side:?} {z}");
                assert!(c.distance(w) > 0.0);
            }
        }
    }
}

#[test]
fn derivative_matches_finite_differences() {
    for (name, c) in all_curves() {
        for side in sides() {
            let m = build_phi(&c, side).unwrap();
            for z in upper_points(300, 6.0, 0.02, 6.0) {
                let z = in_half(side, z);
                let h = 1e-5 * z.im.abs();
                let fd = (m.eval(z + h).unwrap() - m.eval(z - h).unwrap()) / (2.0 * h);
                let fdy = (m.eval(z + Cx::new(0.0, h)).unwrap() - m.eval(z - Cx::new(0.0, h)).unwrap()) / (2.0 * h);
                let d = m.deriv(z).unwrap();
                assert!((fd - d).norm() <= 1e-5 * d.norm(), "{name} {side:?} {z}: {fd} vs {d}");
                // Cauchy–Riemann: d/dy = i d/dx
                assert!((fdy - Cx::i() * fd).norm() <= 1e-6 * fd.norm(), "{name} {side:?} {z}");
            }
        }
    }
}

#[test]
fn koebe_bound_on_every_map() {
    for (name, c) in all_curves() {
        for side in sides() {
            let m = build_phi(&c, side).unwrap();
            for z in upper_points(1000, 10.0, 1e-3, 20.0) {
                let (lo, hi) = m.koebe_check(in_half(side, z)).unwrap();
                assert!(lo >= 1.0 && hi <= 1.0, "{name} {side:?} {z}: {lo} {hi}");
            }
        }
    }
    let (lo, hi) = build_phi(&identity(), HalfPlane::Upper).unwrap().koebe_check(Cx::new(3.0, 2.0)).unwrap();
    assert!((lo - 2.0).abs() < 1e-13 && (hi - 0.5).abs() < 1e-13);
}

#[test]
fn boundary_trace_is_monotone_and_invertible() {
    for (name, c) in all_curves() {
        for side in sides() {
            let m = build_phi(&c, side).unwrap();
            let mut prev = f64::NEG_INFINITY;
            for k in 0..=400 {
                let x = -10.0 + 0.05 * k as f64;
                let w = m.boundary(x);
                let t = c.project_inverse(w, 1e-9 * (1.0 + w.norm())).unwrap();
                assert!(t > prev, "{name} {side:?} at {x}");
                assert!((t - m.psi_direct(x)).abs() <= 1e-9 * (1.0 + t.abs()));
                let back = m.boundary_inv(w, 1e-9).unwrap();
                assert!((back - x).abs() <= 1e-9 * (1.0 + x.abs()), "{name} {side:?} {x} -> {back}");
                prev = t;
            }
        }
    }
}

#[test]
fn boundary_trace_is_interior_limit() {
    for c in [zigzag(), hook()] {
        for side in sides() {
            let m = build_phi(&c, side).unwrap();
            for x in [-3.0, -0.4, 0.3, 0.9, 1.7, 2.5, 6.0] {
                let near = m.eval(in_half(side, Cx::new(x, 1e-9))).unwrap();
                assert!((near - m.boundary(x)).norm() < 1e-6, "{side:?} {x}");
            }
        }
    }
}

#[test]
fn unbounded_at_infinity() {
    for (_, c) in all_curves() {
        for side in sides() {
            let m = build_phi(&c, side).unwrap();
            let a = m.eval(in_half(side, Cx::new(0.0, 1e3))).unwrap().norm();
            let b = m.eval(in_half(side, Cx::new(0.0, 1e6))).unwrap().norm();
            assert!(a > 10.0 && b > 5.0 * a);
        }
    }
}

#[test]
fn normalization_changes_trace_by_affine_map() {
    for c in [bend(), zigzag(), hook()] {
        for side in sides() {
            let base = build_phi(&c, side).unwrap();
            let (r, s) = (0.37, -1.3);
            let other = build_phi_normalized(&c, side, Normalization { r, s }).unwrap();
            for k in 0..=60 {
                let x = -6.0 + 0.2 * k as f64;
                let a = other.psi_direct(x);
                let b = base.psi_direct(r * x + s);
                assert!((a - b).abs() <= 1e-6 * (1.0 + b.abs()), "{side:?} {x}: {a} vs {b}");
                let z = in_half(side, Cx::new(x, 0.8));
                let wa = other.eval(z).unwrap();
                let wb = base.eval(in_half(side, Cx::new(r * x + s, 0.8 * r))).unwrap();
                assert!((wa - wb).norm() <= 1e-8 * (1.0 + wb.norm()));
            }
        }
    }
    let bad = build_phi_normalized(&bend(), HalfPlane::Upper, Normalization { r: -1.0, s: 0.0 });
    assert!(matches!(bad, Err(Error::Usage(_))));
}

/// `sgn(x) |x|^{3/2}` against the traces of a refined bend curve computed by
/// the general engine.
#[test]
fn bend_trace_through_general_engine() {
    let refined = PolylineEmbedding::new(
        vec![
            Knot::new(-1.0, Cx::new(0.0, -1.0)),
            Knot::new(0.0, Cx::new(0.0, 0.0)),
            Knot::new(0.5, Cx::new(0.5, 0.0)),
            Knot::new(2.0, Cx::new(2.0, 0.0)),
        ],
        Cx::new(0.0, 1.0),
        Cx::new(1.0, 0.0),
    )
    .unwrap();
    let m = build_phi(&refined, HalfPlane::Upper).unwrap();
    assert_eq!(m.kind(), EngineKind::SchwarzChristoffel);
    let oracle = |u: f64| u.signum() * u.abs().powf(1.5);
    let oracle_inv = |t: f64| t.signum() * t.abs().powf(2.0 / 3.0);
    let xs: Vec<f64> = (0..=100).map(|k| -5.0 + 0.1 * k as f64).collect();
    // oracle^{-1}(psi(x)) should be r x + s; fit by least squares
    let us: Vec<f64> = xs.iter().map(|&x| oracle_inv(m.psi_direct(x))).collect();
    let n = xs.len() as f64;
    let (mx, mu) = (xs.iter().sum::<f64>() / n, us.iter().sum::<f64>() / n);
    let r = xs.iter().zip(&us).map(|(x, u)| (x - mx) * (u - mu)).sum::<f64>() / xs.iter().map(|x| (x - mx).powi(2)).sum::<f64>();
    let s = mu - r * mx;
    assert!(r > 0.0);
    for &x in &xs {
        let want = oracle(r * x + s);
        let got = m.psi_direct(x);
        assert!((got - want).abs() <= 1e-3 * want.abs().max(1e-2), "{x}: {got} vs {want}");
    }
}

#[test]
fn f32_maps() {
    let b = build_phi(&PolylineEmbedding::<f32>::bend(), HalfPlane::Upper).unwrap();
    let w = b.eval(num_complex::Complex32::new(0.0, 1.0)).unwrap();
    assert!((w - num_complex::Complex32::from_polar(1.0, 0.75 * std::f32::consts::PI)).norm() < 1e-5);
}
