mod common;

use bilex::curve::{Knot, PolylineEmbedding, Side};
use bilex::Error;
use num_complex::Complex64 as Cx;
use proptest::prelude::*;

use common::*;

const S: f64 = std::f64::consts::FRAC_1_SQRT_2;

#[test]
fn evaluation() {
    assert_eq!(identity().eval(3.5), Cx::new(3.5, 0.0));
    assert_eq!(bend().eval(-2.0), Cx::new(0.0, -2.0));
    assert_eq!(bend().eval(3.0), Cx::new(3.0, 0.0));
    let z = zigzag();
    assert!((z.eval(1.5) - Cx::new(1.2, 0.3)).norm() < 1e-15);
    assert!((z.eval(-2.0) - Cx::new(-2.0, 0.0)).norm() < 1e-15);
    assert!((z.eval(5.0) - Cx::new(4.4, 0.6)).norm() < 1e-15);
}

#[test]
fn lipschitz_constants() {
    assert_eq!(identity().lip_upper(), 1.0);
    assert!((identity().lip_lower() - 1.0).abs() < 1e-15);
    assert_eq!(bend().lip_upper(), 1.0);
    assert!((bend().lip_lower() - S).abs() < 1e-12);
    for s in [0.5, 1.0, 3.0] {
        let w = wedge(s);
        assert!((w.lip_lower() - s * S).abs() < 1e-12 * s);
        assert!((w.lip_upper() - s).abs() < 1e-15);
    }
    let scaled = bend().postcompose(Cx::new(2.0, 0.0), Cx::new(0.0, 0.0)).unwrap();
    assert_eq!(scaled.lip_upper(), 2.0);
}

/// Independent oracle: minimum of the quotient over a dense parameter grid
/// plus a far-out geometric sample.
fn brute_lower(c: &PolylineEmbedding<f64>) -> f64 {
    let mut ts: Vec<f64> = (0..=1200).map(|k| -6.0 + 12.0 * k as f64 / 1200.0).collect();
    for k in 0..40 {
        let r = 6.0 * 1.3f64.powi(k);
        ts.push(-r);
        ts.push(r);
    }
    ts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let fs: Vec<Cx> = ts.iter().map(|&t| c.eval(t)).collect();
    let mut best = f64::INFINITY;
    for i in 0..ts.len() {
        for j in i + 1..ts.len() {
            best = best.min((fs[j] - fs[i]).norm() / (ts[j] - ts[i]));
        }
    }
    best
}

#[test]
fn lower_constant_against_brute_force() {
    for (name, c) in all_curves().into_iter().chain([("wedge2", wedge(2.0))]) {
        let brute = brute_lower(&c);
        let exact = c.lip_lower();
        assert!(exact <= brute * (1.0 + 1e-12), "{name}: {exact} > {brute}");
        assert!(brute <= exact * 1.01, "{name}: {brute} vs {exact}");
        let both = c.compute_lip_lower(200).unwrap();
        assert_eq!(both.exact, exact);
        assert!(both.exact <= both.sampled * (1.0 + 1e-12) && both.sampled <= 1.01 * both.exact, "{name}");
    }
}

#[test]
fn projection() {
    assert_eq!(bend().project_inverse(Cx::new(0.0, -2.0), 1e-12).unwrap(), -2.0);
    assert_eq!(identity().project_inverse(Cx::new(7.0, 0.0), 1e-12).unwrap(), 7.0);
    assert_eq!(bend().project_inverse(Cx::new(0.5, 0.0), 1e-12).unwrap(), 0.5);
    assert!(matches!(bend().project_inverse(Cx::new(1.0, 1.0), 1e-6), Err(Error::OffCurve { .. })));
}

#[test]
fn simplicity() {
    assert!(bend().is_simple() && identity().is_simple() && zigzag().is_simple());
    let crossing = PolylineEmbedding::new(
        vec![
            Knot::new(0.0, Cx::new(-3.0, 0.0)),
            Knot::new(1.0, Cx::new(0.0, 0.0)),
            Knot::new(2.0, Cx::new(2.0, 0.0)),
            Knot::new(3.0, Cx::new(1.0, -1.0)),
            Knot::new(4.0, Cx::new(1.0, 1.0)),
            Knot::new(5.0, Cx::new(1.0, 4.0)),
        ],
        Cx::new(1.0, 0.0),
        Cx::new(0.0, 1.0),
    );
    assert!(matches!(crossing, Err(Error::InvalidCurve(_))));
    // the positive tail runs back across the first segment
    let tail_cross = PolylineEmbedding::new(
        vec![Knot::new(0.0, Cx::new(0.0, 0.0)), Knot::new(1.0, Cx::new(1.0, 1.0))],
        Cx::new(-1.0, 0.0),
        Cx::new(0.0, -1.0),
    );
    assert!(tail_cross.is_err());
    // touching within 1e-12
    let touch = PolylineEmbedding::new(
        vec![
            Knot::new(0.0, Cx::new(0.0, 0.0)),
            Knot::new(1.0, Cx::new(2.0, 0.0)),
            Knot::new(2.0, Cx::new(2.0, 1.0)),
            Knot::new(3.0, Cx::new(1.0, 1.0)),
            Knot::new(4.0, Cx::new(1.0, 1e-13)),
        ],
        Cx::new(-1.0, 0.0),
        Cx::new(0.0, -1.0),
    );
    assert!(touch.is_err());
}

#[test]
fn invalid_inputs() {
    let z = Cx::new(0.0, 0.0);
    assert!(PolylineEmbedding::<f64>::new(vec![], Cx::new(1.0, 0.0), Cx::new(1.0, 0.0)).is_err());
    assert!(PolylineEmbedding::two_ray(0.0, z, z, Cx::new(1.0, 0.0)).is_err());
    let repeated = vec![Knot::new(0.0, z), Knot::new(0.0, Cx::new(1.0, 0.0))];
    assert!(PolylineEmbedding::new(repeated, Cx::new(1.0, 0.0), Cx::new(1.0, 0.0)).is_err());
    let zero_len = vec![Knot::new(0.0, z), Knot::new(1.0, z)];
    assert!(PolylineEmbedding::new(zero_len, Cx::new(1.0, 0.0), Cx::new(1.0, 0.0)).is_err());
    // folding back onto itself along a line
    assert!(PolylineEmbedding::two_ray(0.0, z, Cx::new(-1.0, 0.0), Cx::new(1.0, 0.0)).is_err());
}

#[test]
fn sides() {
    let b = bend();
    assert_eq!(b.side(Cx::new(-1.0, 1.0)), Side::Left);
    assert_eq!(b.side(Cx::new(1.0, -1.0)), Side::Right);
    assert_eq!(b.side(Cx::new(1.0, 0.0)), Side::On);
    assert_eq!(identity().side(Cx::new(0.0, 1.0)), Side::Left);
}

#[test]
fn opening_angles() {
    assert!((identity().opening_at_infinity() - std::f64::consts::PI).abs() < 1e-15);
    assert!((bend().opening_at_infinity() - 1.5 * std::f64::consts::PI).abs() < 1e-15);
}

#[test]
fn json_roundtrip() {
    let c = zigzag();
    let back = PolylineEmbedding::<f64>::from_json_str(&c.to_json_string()).unwrap();
    assert_eq!(back, c);
    let bend_json = r#"{"knots":[{"t":0,"w":[0,0]}],"tail_neg":[0,1],"tail_pos":[1,0]}"#;
    assert_eq!(PolylineEmbedding::<f64>::from_json_str(bend_json).unwrap(), bend());
    let with_l = r#"{"knots":[{"t":0,"w":[0,0]}],"tail_neg":[0,1],"tail_pos":[1,0],"l":0.7071}"#;
    assert!(PolylineEmbedding::<f64>::from_json_str(with_l).is_ok());
    let wrong_l = r#"{"knots":[{"t":0,"w":[0,0]}],"tail_neg":[0,1],"tail_pos":[1,0],"l":0.9}"#;
    assert!(PolylineEmbedding::<f64>::from_json_str(wrong_l).is_err());
    let long_tail = r#"{"knots":[{"t":0,"w":[0,0]}],"tail_neg":[0,2],"tail_pos":[1,0]}"#;
    assert!(matches!(PolylineEmbedding::<f64>::from_json_str(long_tail), Err(Error::InvalidCurve(_))));
    assert!(matches!(PolylineEmbedding::<f64>::from_json_str("{"), Err(Error::Json(_))));
}

#[test]
fn transforms() {
    let c = zigzag();
    let pre = c.precompose(2.0, 1.0).unwrap();
    for t in [-3.0, 0.2, 0.9, 4.0] {
        assert!((pre.eval(t) - c.eval(2.0 * t + 1.0)).norm() < 1e-14);
    }
    let a = Cx::new(0.0, 2.0);
    let b = Cx::new(1.0, -1.0);
    let post = c.postcompose(a, b).unwrap();
    assert!((post.lip_lower() - 2.0 * c.lip_lower()).abs() < 1e-12);
    let m = c.conjugate();
    assert_eq!(m.eval(1.0), c.eval(1.0).conj());
}

#[test]
fn chains() {
    let b = bend();
    let arc = b.chain(Some(-1.0), Some(-0.5));
    assert!(arc.is_bounded());
    assert!((arc.diameter() - 0.5).abs() < 1e-15);
    let left = b.chain(None, Some(-1.0));
    let right = b.chain(Some(1.0), None);
    assert!((left.distance_to(&right) - 2f64.sqrt()).abs() < 1e-14);
    let across = b.chain(Some(-1.0), Some(1.0));
    assert!((across.diameter() - 2f64.sqrt()).abs() < 1e-14);
}

#[test]
fn f32_curve() {
    let c = PolylineEmbedding::<f32>::bend();
    assert!((c.lip_lower() - std::f32::consts::FRAC_1_SQRT_2).abs() < 1e-6);
    assert_eq!(c.eval(-2.0), num_complex::Complex32::new(0.0, -2.0));
}

fn curve_strategy() -> impl Strategy<Value = PolylineEmbedding<f64>> {
    prop_oneof![Just(identity()), Just(bend()), Just(zigzag()), Just(hook()), (0.3f64..3.0).prop_map(wedge)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn pair_inequality(c in curve_strategy(), a in -20.0f64..20.0, b in -20.0f64..20.0) {
        prop_assume!((a - b).abs() > 1e-9);
        let d = (c.eval(a) - c.eval(b)).norm();
        let dt = (a - b).abs();
        prop_assert!(c.lip_lower() * dt <= d * (1.0 + 1e-12));
        prop_assert!(d <= c.lip_upper() * dt * (1.0 + 1e-12));
    }

    #[test]
    fn projection_inverts_evaluation(c in curve_strategy(), t in -50.0f64..50.0) {
        let back = c.project_inverse(c.eval(t), 1e-9).unwrap();
        prop_assert!((back - t).abs() <= 1e-9 * (1.0 + t.abs()));
    }

    #[test]
    fn exact_lower_never_exceeds_sampled(c in curve_strategy(), res in 16usize..120) {
        let (sampled, _) = c.lip_lower_sampled(res);
        prop_assert!(c.lip_lower() <= sampled * (1.0 + 1e-12));
    }

    #[test]
    fn speed_between_constants(c in curve_strategy(), t in -10.0f64..10.0) {
        let s = c.speed_at(t);
        prop_assert!(c.lip_lower() <= s * (1.0 + 1e-12) && s <= c.lip_upper() * (1.0 + 1e-12));
    }
}
