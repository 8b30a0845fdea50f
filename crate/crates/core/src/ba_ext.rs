//! Beurling–Ahlfors extension of an increasing homeomorphism `psi` of the line.
//!
//! `Psi(x + iy) = 1/2 int_{-1}^{1} psi(x + ty) (1 + i sgn t) dt`. With
//!
//! - `alpha = psi(x+y) - psi(x)`, `beta = psi(x) - psi(x-y)`
//! - `gamma = int_0^1 (psi(x+y) - psi(x+ty)) dt`
//! - `delta = int_{-1}^0 (psi(x+ty) - psi(x-y)) dt`
//!
//! the Jacobian is `(1/2y) [[a+b, g-d], [a-b, g+d]]` with determinant
//! `(a d + b g) / (2 y^2)`.
//!
//! Everything is computed from moments of `psi'` on `[x-y, x]` and
//! `[x, x+y]`: `gamma = int psi'(u) (u-x)/y du` and the pieces
//! `alpha - gamma`, `beta - delta` entering `Psi` are themselves positive
//! moments, so no quantity is formed as a difference of nearly equal values.

use std::marker::PhantomData;

use crate::conformal::ConformalMap;
use crate::error::{Error, Result};
use crate::linalg::Mat2;
use crate::quad::adaptive;
use crate::scalar::{lit, to_f64, Real, C};

/// Default absolute tolerance of [`BAExtension::inverse`].
pub const INVERSE_TOL: f64 = 1e-10;
/// Newton iterations per start.
pub const MAX_NEWTON: usize = 50;

/// An increasing homeomorphism of the line, accessed through its values and
/// the moments of its derivative.
pub trait Reparam<T: Real>: Send + Sync {
    fn psi(&self, x: T) -> Result<T>;

    /// `[int psi', int psi' w, int psi' (1 - w)]` over `[a, b]`, `w = (u - a)/(b - a)`.
    fn moments(&self, a: T, b: T) -> Result<[T; 3]>;

    /// `psi^{-1}(t)`.
    fn psi_inv(&self, t: T) -> Result<T>;
}

/// `psi = f^{-1} o phi` for a conformal map and its curve.
#[derive(Debug, Clone)]
pub struct BoundaryReparam<T> {
    map: ConformalMap<T>,
}

impl<T: Real> BoundaryReparam<T> {
    pub fn new(map: ConformalMap<T>) -> Self {
        Self { map }
    }

    pub fn map(&self) -> &ConformalMap<T> {
        &self.map
    }

    fn tol(&self, w: C<T>) -> T {
        lit::<T>(1e-9) * (self.map.curve().scale() + w.norm())
    }
}

impl<T: Real> Reparam<T> for BoundaryReparam<T> {
    fn psi(&self, x: T) -> Result<T> {
        let w = self.map.boundary(x);
        self.map.curve().project_inverse(w, self.tol(w))
    }

    fn moments(&self, a: T, b: T) -> Result<[T; 3]> {
        Ok(self.map.psi_moments(a, b))
    }

    fn psi_inv(&self, t: T) -> Result<T> {
        let w = self.map.curve().eval(t);
        self.map.boundary_inv(w, self.tol(w))
    }
}

type RealFn<T> = Box<dyn Fn(T) -> T + Send + Sync>;

/// A reparametrization given by closures for `psi` and `psi'`.
///
/// `breaks` lists the points where `psi'` is not smooth; moments are
/// integrated adaptively between them.
pub struct FnReparam<T> {
    psi: RealFn<T>,
    dpsi: RealFn<T>,
    breaks: Vec<T>,
    tol: T,
}

impl<T: Real> FnReparam<T> {
    pub fn new(
        psi: impl Fn(T) -> T + Send + Sync + 'static,
        dpsi: impl Fn(T) -> T + Send + Sync + 'static,
        mut breaks: Vec<T>,
    ) -> Self {
        breaks.sort_by(|a, b| a.partial_cmp(b).unwrap());
        Self { psi: Box::new(psi), dpsi: Box::new(dpsi), breaks, tol: lit(1e-13) }
    }

    /// `psi(u) = a u + b`, `a > 0`.
    pub fn affine(a: T, b: T) -> Self {
        Self::new(move |u| a * u + b, move |_| a, Vec::new())
    }

    /// `psi(u) = sgn(u) |u|^p`, `p > 0`.
    pub fn signed_power(p: T) -> Self {
        Self::new(
            move |u: T| u.signum() * u.abs().powf(p),
            move |u: T| p * u.abs().powf(p - T::one()),
            vec![T::zero()],
        )
    }
}

impl<T: Real> Reparam<T> for FnReparam<T> {
    fn psi(&self, x: T) -> Result<T> {
        Ok((self.psi)(x))
    }

    fn moments(&self, a: T, b: T) -> Result<[T; 3]> {
        let len = b - a;
        let mut cuts = vec![a];
        cuts.extend(self.breaks.iter().copied().filter(|&p| p > a && p < b));
        cuts.push(b);
        let mut m = [T::zero(); 3];
        for w in cuts.windows(2) {
            let f0 = |u: T| (self.dpsi)(u);
            let f1 = |u: T| (self.dpsi)(u) * (u - a) / len;
            let f2 = |u: T| (self.dpsi)(u) * (b - u) / len;
            m[0] = m[0] + adaptive(&f0, w[0], w[1], self.tol)?;
            m[1] = m[1] + adaptive(&f1, w[0], w[1], self.tol)?;
            m[2] = m[2] + adaptive(&f2, w[0], w[1], self.tol)?;
        }
        Ok(m)
    }

    fn psi_inv(&self, t: T) -> Result<T> {
        let f = |x: T| (self.psi)(x) - t;
        let (mut lo, mut hi) = (-T::one(), T::one());
        let mut guard = 0;
        while f(lo) > T::zero() || f(hi) < T::zero() {
            lo = lo * lit(2.0);
            hi = hi * lit(2.0);
            guard += 1;
            if guard > 2000 {
                return Err(Error::Domain("psi does not cover the target value".into()));
            }
        }
        for _ in 0..400 {
            let mid = (lo + hi) * lit(0.5);
            if mid == lo || mid == hi {
                break;
            }
            if f(mid) < T::zero() {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Ok((lo + hi) * lit(0.5))
    }
}

/// Jacobian data of the extension at `x + iy`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BAJacobian<T> {
    pub alpha: T,
    pub beta: T,
    pub gamma: T,
    pub delta: T,
    pub y: T,
    pub matrix: Mat2<T>,
    /// `(alpha delta + beta gamma) / (2 y^2)`.
    pub det: T,
}

impl<T: Real> BAJacobian<T> {
    fn from_parts(alpha: T, beta: T, gamma: T, delta: T, y: T) -> Self {
        let two_y = y * lit(2.0);
        let matrix = Mat2::new(
            (alpha + beta) / two_y,
            (gamma - delta) / two_y,
            (alpha - beta) / two_y,
            (gamma + delta) / two_y,
        );
        let det = (alpha * delta + beta * gamma) / (two_y * y);
        Self { alpha, beta, gamma, delta, y, matrix, det }
    }

    /// Spectral norm.
    pub fn norm(&self) -> T {
        self.matrix.norm()
    }

    /// Spectral norm of the inverse.
    pub fn inverse_norm(&self) -> T {
        self.matrix.inverse_norm()
    }

    /// `(alpha + beta) / y`, an upper bound for [`Self::norm`].
    pub fn norm_bound(&self) -> T {
        (self.alpha + self.beta) / self.y
    }

    /// `2y / min(gamma, delta)`, an upper bound for [`Self::inverse_norm`].
    pub fn inverse_norm_bound(&self) -> T {
        self.y * lit(2.0) / self.gamma.min(self.delta)
    }

    /// `alpha > gamma > 0` and `beta > delta > 0`.
    pub fn positivity_holds(&self) -> bool {
        self.alpha > self.gamma && self.gamma > T::zero() && self.beta > self.delta && self.delta > T::zero()
    }
}

/// The Beurling–Ahlfors extension of a reparametrization.
pub struct BAExtension<T, R> {
    pub reparam: R,
    _scalar: PhantomData<T>,
}

impl<T: Real, R: Reparam<T>> BAExtension<T, R> {
    pub fn new(reparam: R) -> Self {
        Self { reparam, _scalar: PhantomData }
    }

    fn check(z: C<T>) -> Result<()> {
        if !(z.im > T::zero()) || !z.re.is_finite() || !z.im.is_finite() {
            return Err(Error::Domain(format!(
                "extension needs a point of the upper half-plane, got ({}, {})",
                to_f64(z.re),
                to_f64(z.im)
            )));
        }
        Ok(())
    }

    pub fn psi(&self, x: T) -> Result<T> {
        self.reparam.psi(x)
    }

    /// `Psi(z)` together with its Jacobian.
    pub fn eval_with_jacobian(&self, z: C<T>) -> Result<(C<T>, BAJacobian<T>)> {
        Self::check(z)?;
        let (x, y) = (z.re, z.im);
        let right = self.reparam.moments(x, x + y)?;
        let left = self.reparam.moments(x - y, x)?;
        let (alpha, gamma, a_plus) = (right[0], right[1], right[2]);
        let (beta, a_minus, delta) = (left[0], left[1], left[2]);
        let half = lit::<T>(0.5);
        let px = self.reparam.psi(x)?;
        let w = C::new(px + half * (a_plus - a_minus), half * (a_plus + a_minus));
        Ok((w, BAJacobian::from_parts(alpha, beta, gamma, delta, y)))
    }

    /// `Psi(z)` for `im z > 0`.
    pub fn eval(&self, z: C<T>) -> Result<C<T>> {
        Ok(self.eval_with_jacobian(z)?.0)
    }

    pub fn jacobian(&self, z: C<T>) -> Result<BAJacobian<T>> {
        Ok(self.eval_with_jacobian(z)?.1)
    }

    /// Solves `Psi(z) = w` by damped Newton iteration from a sequence of
    /// starting points. Converges when `|Psi(z) - w| <= max(tol, 16 eps |w|)`.
    pub fn inverse(&self, w: C<T>, tol: T) -> Result<C<T>> {
        self.inverse_from(w, tol, None)
    }

    /// Like [`Self::inverse`], trying `hint` first.
    pub fn inverse_from(&self, w: C<T>, tol: T, hint: Option<C<T>>) -> Result<C<T>> {
        Self::check(w)?;
        let target_tol = tol.max(T::epsilon() * lit(16.0) * w.norm());
        let mut trace = Vec::new();
        let mut starts: Vec<C<T>> = hint.into_iter().collect();
        starts.push(w);
        if let Ok(z) = self.psi_start(w) {
            starts.push(z);
        }
        for (k, z0) in starts.iter().enumerate() {
            match self.newton(w, *z0, target_tol) {
                Ok(z) => return Ok(z),
                Err(res) => {
                    trace.push(to_f64(res));
                    if k + 1 == starts.len() {
                        // coarse multistart around the last estimate
                        let base = starts[starts.len() - 1];
                        for dx in [-1.0, 0.0, 1.0] {
                            for fy in [0.25, 1.0, 4.0] {
                                let z = C::new(base.re + lit::<T>(dx) * base.im, base.im * lit(fy));
                                match self.newton(w, z, target_tol) {
                                    Ok(z) => return Ok(z),
                                    Err(res) => trace.push(to_f64(res)),
                                }
                            }
                        }
                    }
                }
            }
        }
        Err(Error::Inversion { re: to_f64(w.re), im: to_f64(w.im), trace })
    }

    /// Start from the boundary inverse: for the identity it is exact.
    fn psi_start(&self, w: C<T>) -> Result<C<T>> {
        let r = &self.reparam;
        let x = r.psi_inv(w.re)?;
        let y = (r.psi_inv(w.re + w.im)? - r.psi_inv(w.re - w.im)?).max(T::min_positive_value());
        Ok(C::new(x, y))
    }

    /// Returns the root or the best residual reached.
    fn newton(&self, w: C<T>, z0: C<T>, tol: T) -> std::result::Result<C<T>, T> {
        if !(z0.im > T::zero()) {
            return Err(T::infinity());
        }
        let mut z = z0;
        let (mut val, mut jac) = self.eval_with_jacobian(z).map_err(|_| T::infinity())?;
        let mut res = (val - w).norm();
        let mut polished = false;
        for _ in 0..MAX_NEWTON {
            if res <= tol {
                if polished {
                    return Ok(z);
                }
                polished = true;
            }
            let inv = match jac.matrix.inverse() {
                Some(m) => m,
                None => return Err(res),
            };
            let step = -inv.apply(val - w);
            let mut lam = T::one();
            let mut moved = false;
            for _ in 0..40 {
                let trial = z + step * lam;
                if trial.im > T::zero() {
                    if let Ok((v, j)) = self.eval_with_jacobian(trial) {
                        let r = (v - w).norm();
                        if r < res || (polished && r <= res) {
                            z = trial;
                            val = v;
                            jac = j;
                            res = r;
                            moved = true;
                            break;
                        }
                    }
                }
                lam = lam * lit(0.5);
            }
            if !moved {
                return if res <= tol { Ok(z) } else { Err(res) };
            }
        }
        if res <= tol {
            Ok(z)
        } else {
            Err(res)
        }
    }
}
