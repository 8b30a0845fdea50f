//! Quadrature: Gauss rules, adaptive Gauss–Legendre, and integrals of
//! power products `prod_j (u - x_j)^{b_j}` with endpoint singularities.
//!
//! Power-product integrals use a compound scheme: a Gauss–Jacobi panel
//! absorbs the singular factor at a starting prevertex, and subsequent
//! Gauss–Legendre panels are at most half as long as the distance to the
//! nearest prevertex, so every panel sees an analytic integrand with a
//! fixed Bernstein-ellipse margin.

use std::num::NonZeroUsize;
use std::sync::OnceLock;

use gauss_quad::{FiniteAboveNegOneF64, GaussJacobi, GaussLegendre};

use crate::error::{Error, Result};
use crate::scalar::{arg_upper, lit, to_f64, Real, C};

/// Nodes per panel. Even: the Jacobi solver pins the middle node of odd
/// rules at zero, which is wrong for asymmetric weights.
pub const NODES: usize = 12;

/// Nodes and weights on `[-1, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Rule<T> {
    pub nodes: Vec<T>,
    pub weights: Vec<T>,
}

impl<T: Real> Rule<T> {
    fn from_pairs(pairs: &[(f64, f64)]) -> Self {
        Self {
            nodes: pairs.iter().map(|p| lit(p.0)).collect(),
            weights: pairs.iter().map(|p| lit(p.1)).collect(),
        }
    }

    /// `sum w_i g(x_i)` on `[-1, 1]`.
    pub fn apply<F: FnMut(T) -> T>(&self, mut g: F) -> T {
        self.nodes.iter().zip(&self.weights).map(|(&x, &w)| w * g(x)).sum()
    }
}

fn legendre_pairs() -> &'static [(f64, f64)] {
    static GL: OnceLock<Vec<(f64, f64)>> = OnceLock::new();
    GL.get_or_init(|| {
        let r = GaussLegendre::new(NonZeroUsize::new(NODES).unwrap());
        r.as_node_weight_pairs().to_vec()
    })
}

pub fn legendre<T: Real>() -> Rule<T> {
    Rule::from_pairs(legendre_pairs())
}

/// Rule for the weight `(1 + s)^b` on `[-1, 1]`, `b > -1`.
pub fn jacobi<T: Real>(b: T) -> Rule<T> {
    let b = to_f64(b);
    if b == 0.0 {
        return legendre();
    }
    let beta = FiniteAboveNegOneF64::new(b).expect("exponent above -1");
    let r = GaussJacobi::new(NonZeroUsize::new(NODES).unwrap(), FiniteAboveNegOneF64::default(), beta);
    Rule::from_pairs(r.as_node_weight_pairs())
}

/// Adaptive Gauss–Legendre on `[a, b]` by bisection until the panel and its
/// halves agree to `tol` (absolute, scaled by the running magnitude).
pub fn adaptive<T: Real, F: Fn(T) -> T>(f: &F, a: T, b: T, tol: T) -> Result<T> {
    let rule = legendre::<T>();
    let panel = |lo: T, hi: T| {
        let h = (hi - lo) / lit(2.0);
        let m = (hi + lo) / lit(2.0);
        h * rule.apply(|s| f(m + h * s))
    };
    let mut total = T::zero();
    let mut scale = T::zero();
    let mut stack = vec![(a, b, panel(a, b), 0u32)];
    while let Some((lo, hi, whole, depth)) = stack.pop() {
        let mid = (lo + hi) / lit(2.0);
        let (l, r) = (panel(lo, mid), panel(mid, hi));
        let err = (l + r - whole).abs();
        scale = scale.max((l + r).abs());
        if err <= tol * scale.max(T::min_positive_value()) || err <= T::epsilon() * lit(8.0) * (l.abs() + r.abs()) {
            total = total + l + r;
        } else if depth >= 60 {
            return Err(Error::Quadrature { a: to_f64(lo), b: to_f64(hi), estimate: to_f64(err) });
        } else {
            stack.push((lo, mid, l, depth + 1));
            stack.push((mid, hi, r, depth + 1));
        }
    }
    Ok(total)
}

/// `P(z) = prod_j (z - x_j)^{b_j}` with sorted real `x_j`, exponents in `(-1, 1)`,
/// and the branch of each factor continuous on the closed upper half-plane.
#[derive(Debug, Clone)]
pub struct PowerProduct<T> {
    pts: Vec<T>,
    exps: Vec<T>,
    jac: Vec<Rule<T>>,
    gl: Rule<T>,
}

impl<T: Real> PowerProduct<T> {
    pub fn new(pts: Vec<T>, exps: Vec<T>) -> Self {
        assert_eq!(pts.len(), exps.len());
        assert!(pts.windows(2).all(|w| w[0] < w[1]), "prevertices must be sorted");
        let jac = exps.iter().map(|&b| jacobi(b)).collect();
        Self { pts, exps, jac, gl: legendre() }
    }

    pub fn points(&self) -> &[T] {
        &self.pts
    }

    pub fn exponents(&self) -> &[T] {
        &self.exps
    }

    /// `P(z)` for `im z >= 0`.
    pub fn eval(&self, z: C<T>) -> C<T> {
        self.eval_except(z, usize::MAX)
    }

    fn eval_except(&self, z: C<T>, skip: usize) -> C<T> {
        let mut lg = C::new(T::zero(), T::zero());
        for (j, (&x, &b)) in self.pts.iter().zip(&self.exps).enumerate() {
            if j != skip {
                let d = z - x;
                lg = lg + C::new(d.norm().ln(), arg_upper(d)) * b;
            }
        }
        lg.exp()
    }

    /// `|P(u)|` for real `u`.
    pub fn abs_real(&self, u: T) -> T {
        self.abs_except(u, usize::MAX)
    }

    fn abs_except(&self, u: T, skip: usize) -> T {
        let mut lg = T::zero();
        for (j, (&x, &b)) in self.pts.iter().zip(&self.exps).enumerate() {
            if j != skip {
                lg = lg + b * (u - x).abs().ln();
            }
        }
        lg.exp()
    }

    /// Distance from `z` to the nearest prevertex other than `skip`.
    fn clearance(&self, z: C<T>, skip: usize) -> T {
        self.pts
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != skip)
            .map(|(_, &x)| (z - x).norm())
            .fold(T::infinity(), T::min)
    }

    fn index_of(&self, u: T) -> Option<usize> {
        self.pts.iter().position(|&x| x == u)
    }

    /// `int_{x_j}^{z} P(w) dw` along the straight path.
    pub fn path_integral(&self, j: usize, z: C<T>) -> C<T> {
        let x = self.pts[j];
        let d = z - x;
        let len = d.norm();
        if len == T::zero() {
            return C::new(T::zero(), T::zero());
        }
        let half = lit::<T>(0.5);
        let b = self.exps[j];
        // singular factor (d tau)^b = d^b tau^b; tau^b goes into the Jacobi weight
        let db = (C::new(len.ln(), arg_upper(d)) * b).exp();
        let t1 = (half * self.clearance(C::new(x, T::zero()), j) / len).min(T::one());
        let scale = (t1 * half).powf(b + T::one());
        let mut acc = C::new(T::zero(), T::zero());
        for (&s, &w) in self.jac[j].nodes.iter().zip(&self.jac[j].weights) {
            let tau = t1 * (s + T::one()) * half;
            acc = acc + self.eval_except(C::new(x, T::zero()) + d * tau, j) * w;
        }
        acc = acc * db * scale;
        let mut tau = t1;
        while tau < T::one() {
            let here = C::new(x, T::zero()) + d * tau;
            let h = (half * self.clearance(here, usize::MAX) / len).min(T::one() - tau);
            let m = tau + h * half;
            let mut part = C::new(T::zero(), T::zero());
            for (&s, &w) in self.gl.nodes.iter().zip(&self.gl.weights) {
                part = part + self.eval(C::new(x, T::zero()) + d * (m + h * half * s)) * w;
            }
            acc = acc + part * (h * half);
            tau = tau + h;
            if h <= T::epsilon() * tau {
                break;
            }
        }
        acc * d
    }

    /// Calls `sink(u, w)` for quadrature nodes `u` in `[a, b]` with weights
    /// `w` such that `sum w g(u)` approximates `int_a^b |P(u)| g(u) du` for
    /// smooth `g`.
    pub fn real_nodes<F: FnMut(T, T)>(&self, a: T, b: T, sink: &mut F) {
        if !(b > a) {
            return;
        }
        let mut breaks = vec![a];
        breaks.extend(self.pts.iter().copied().filter(|&x| x > a && x < b));
        breaks.push(b);
        for w in breaks.windows(2) {
            let mid = (w[0] + w[1]) * lit(0.5);
            self.half_nodes(w[0], mid, sink);
            self.half_nodes(w[1], mid, sink);
        }
    }

    fn half_nodes<F: FnMut(T, T)>(&self, from: T, to: T, sink: &mut F) {
        let half = lit::<T>(0.5);
        let len = (to - from).abs();
        let dir = if to > from { T::one() } else { -T::one() };
        let mut done = T::zero();
        if let Some(j) = self.index_of(from) {
            let b = self.exps[j];
            let h = (half * self.clearance(C::new(from, T::zero()), j)).min(len);
            let scale = (h * half).powf(b + T::one());
            for (&s, &w) in self.jac[j].nodes.iter().zip(&self.jac[j].weights) {
                let u = from + dir * h * (s + T::one()) * half;
                sink(u, w * scale * self.abs_except(u, j));
            }
            done = h;
        }
        while done < len {
            let here = from + dir * done;
            let h = (half * self.clearance(C::new(here, T::zero()), usize::MAX)).min(len - done);
            let m = here + dir * h * half;
            for (&s, &w) in self.gl.nodes.iter().zip(&self.gl.weights) {
                let u = m + h * half * s;
                sink(u, w * h * half * self.abs_real(u));
            }
            done = done + h;
            if h <= T::epsilon() * (here.abs() + len) {
                break;
            }
        }
    }

    /// `int_a^b |P(u)| du`; negative when `b < a`.
    pub fn real_integral(&self, a: T, b: T) -> T {
        if b < a {
            return -self.real_integral(b, a);
        }
        let mut acc = T::zero();
        self.real_nodes(a, b, &mut |_, w| acc = acc + w);
        acc
    }
}
