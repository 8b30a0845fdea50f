//! Schwarz–Christoffel parameter problem for a polyline with both ends at
//! infinity.
//!
//! Prevertices are `x_0 = 0`, `x_1 = 1` and `x_{j+1} = x_j + exp(s_j)`; the
//! unknowns `s_j` are fixed by matching the ratios of consecutive side
//! lengths to those of the curve.

use crate::curve::PolylineEmbedding;
use crate::error::{Error, Result};
use crate::linalg::solve_dense;
use crate::quad::PowerProduct;
use crate::scalar::{lit, to_f64, Real};

const MAX_ITER: usize = 100;

fn prevertices<T: Real>(s: &[T]) -> Vec<T> {
    let mut x = vec![T::zero(), T::one()];
    for &g in s {
        let last = *x.last().unwrap();
        x.push(last + g.exp());
    }
    x
}

fn residual<T: Real>(s: &[T], exps: &[T], log_ratio: &[T]) -> Vec<T> {
    let x = prevertices(s);
    let pp = PowerProduct::new(x.clone(), exps.to_vec());
    let i0 = pp.real_integral(x[0], x[1]);
    (1..x.len() - 1)
        .map(|k| (pp.real_integral(x[k], x[k + 1]) / i0).ln() - log_ratio[k - 1])
        .collect()
}

fn max_abs<T: Real>(v: &[T]) -> T {
    v.iter().fold(T::zero(), |m, &r| m.max(r.abs()))
}

/// Canonical prevertices and the final residual.
pub(crate) fn solve_prevertices<T: Real>(curve: &PolylineEmbedding<T>, exps: &[T]) -> Result<(Vec<T>, f64)> {
    let knots = curve.knots();
    let sides: Vec<T> = knots.windows(2).map(|w| (w[1].w - w[0].w).norm()).collect();
    let log_ratio: Vec<T> = sides[1..].iter().map(|&l| (l / sides[0]).ln()).collect();
    let m = log_ratio.len();
    let mut s = log_ratio.clone();
    if m == 0 {
        return Ok((prevertices(&s), 0.0));
    }
    let tol = T::epsilon() * lit(64.0);
    let h = T::epsilon().sqrt();
    let mut r = residual(&s, exps, &log_ratio);
    let mut norm = max_abs(&r);
    for _ in 0..MAX_ITER {
        if norm <= tol {
            break;
        }
        let mut jac = vec![vec![T::zero(); m]; m];
        for j in 0..m {
            let mut sp = s.clone();
            sp[j] = sp[j] + h;
            let rp = residual(&sp, exps, &log_ratio);
            for i in 0..m {
                jac[i][j] = (rp[i] - r[i]) / h;
            }
        }
        let step = solve_dense(jac, r.iter().map(|&v| -v).collect()).ok_or_else(|| Error::EngineAccuracy {
            message: "singular Jacobian in the prevertex problem".into(),
            residual: to_f64(norm),
        })?;
        let mut lam = T::one();
        let mut accepted = false;
        for _ in 0..30 {
            let trial: Vec<T> = s.iter().zip(&step).map(|(&a, &d)| a + lam * d).collect();
            let rt = residual(&trial, exps, &log_ratio);
            let nt = max_abs(&rt);
            if nt.is_finite() && nt < norm {
                s = trial;
                r = rt;
                norm = nt;
                accepted = true;
                break;
            }
            lam = lam * lit(0.5);
        }
        if !accepted {
            break;
        }
    }
    let accept = (T::epsilon() * lit(1e4)).max(lit(1e-11));
    if !(norm <= accept) {
        return Err(Error::EngineAccuracy {
            message: "prevertex problem did not converge".into(),
            residual: to_f64(norm),
        });
    }
    Ok((prevertices(&s), to_f64(norm)))
}
