//! Conformal maps of a half-plane onto a complementary domain of a polyline.
//!
//! The upper half-plane goes to the domain on the left of the curve, the
//! lower half-plane to the domain on the right. Both are built as maps of
//! the upper half-plane onto the left domain of a working curve; the lower
//! map uses the mirror curve and is conjugated back, so that
//! `Phi_lower(z) = conj(Phi_mirror(conj z))`.
//!
//! Two engines share one representation
//! `Phi'(z) = C prod_j (z - x_j)^{b_j}` with `b_j = theta_j / pi - 1`:
//! a closed-form sector map for one-knot curves and a Schwarz–Christoffel
//! map for general polylines.

mod gate;
mod sc;

pub use gate::{promotion_gate, GateReport};

use crate::curve::PolylineEmbedding;
use crate::error::{Error, Result};
use crate::quad::PowerProduct;
use crate::scalar::{lit, pow_upper, to_f64, Real, C};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HalfPlane {
    Upper,
    Lower,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EngineKind {
    ExactSector,
    SchwarzChristoffel,
}

/// Precomposition `z -> r z + s` applied to the default map.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Normalization<T> {
    pub r: T,
    pub s: T,
}

impl<T: Real> Default for Normalization<T> {
    fn default() -> Self {
        Self { r: T::one(), s: T::zero() }
    }
}

#[derive(Debug, Clone)]
pub struct ConformalMap<T> {
    side: HalfPlane,
    kind: EngineKind,
    orig: PolylineEmbedding<T>,
    work: PolylineEmbedding<T>,
    pp: PowerProduct<T>,
    c: C<T>,
    /// `Phi(x_j)`, the knots of the working curve
    anchors: Vec<C<T>>,
    norm: Normalization<T>,
    residual: f64,
}

/// Builds the map for the given half-plane with the default normalization.
pub fn build_phi<T: Real>(curve: &PolylineEmbedding<T>, side: HalfPlane) -> Result<ConformalMap<T>> {
    build_phi_normalized(curve, side, Normalization::default())
}

/// Builds the map precomposed with `z -> r z + s`.
pub fn build_phi_normalized<T: Real>(
    curve: &PolylineEmbedding<T>,
    side: HalfPlane,
    norm: Normalization<T>,
) -> Result<ConformalMap<T>> {
    build(curve, side, norm, true)
}

pub(crate) fn build<T: Real>(
    curve: &PolylineEmbedding<T>,
    side: HalfPlane,
    norm: Normalization<T>,
    gated: bool,
) -> Result<ConformalMap<T>> {
    if !(norm.r > T::zero()) || !norm.s.is_finite() {
        return Err(Error::Usage("normalization needs r > 0 and finite s".into()));
    }
    let work = match side {
        HalfPlane::Upper => curve.clone(),
        HalfPlane::Lower => curve.conjugate(),
    };
    let thetas = work.interior_angles();
    let exps: Vec<T> = thetas.iter().map(|&t| t / T::PI() - T::one()).collect();
    let knots = work.knots();
    let (kind, pts, residual) = if knots.len() == 1 {
        (EngineKind::ExactSector, vec![knots[0].t], 0.0)
    } else {
        if gated && !promotion_gate().passed {
            return Err(Error::EngineAccuracy {
                message: "general engine has not passed the sector promotion gate".into(),
                residual: promotion_gate().max_error,
            });
        }
        let (canon, residual) = sc::solve_prevertices(&work, &exps)?;
        // affine fit so that the outer prevertices sit at the outer knot parameters
        let n = knots.len() - 1;
        let (t0, tn) = (knots[0].t, knots[n].t);
        let r = (tn - t0) / (canon[n] - canon[0]);
        (EngineKind::SchwarzChristoffel, canon.iter().map(|&x| t0 + (x - canon[0]) * r).collect(), residual)
    };
    let pts: Vec<T> = pts.iter().map(|&x| (x - norm.s) / norm.r).collect();
    let pp = PowerProduct::new(pts, exps);
    let c_abs = match kind {
        // default sector map w0 + u k (z - x0)^a with k = |v+|, rescaled by r^a
        EngineKind::ExactSector => {
            let a = thetas[0] / T::PI();
            work.tail_pos().norm() * norm.r.powf(a) * a
        }
        EngineKind::SchwarzChristoffel => {
            let p = pp.points();
            (knots[1].w - knots[0].w).norm() / pp.real_integral(p[0], p[1])
        }
    };
    let dir = work.tail_pos() / work.tail_pos().norm();
    let anchors = knots.iter().map(|k| k.w).collect();
    let map = ConformalMap {
        side,
        kind,
        orig: curve.clone(),
        work,
        pp,
        c: dir * c_abs,
        anchors,
        norm,
        residual,
    };
    if kind == EngineKind::SchwarzChristoffel {
        map.check_sides()?;
    }
    Ok(map)
}

impl<T: Real> ConformalMap<T> {
    pub fn side(&self) -> HalfPlane {
        self.side
    }

    pub fn kind(&self) -> EngineKind {
        self.kind
    }

    pub fn curve(&self) -> &PolylineEmbedding<T> {
        &self.orig
    }

    pub fn normalization(&self) -> Normalization<T> {
        self.norm
    }

    /// Prevertices `x_j` with `phi(x_j) = w_j`.
    pub fn prevertices(&self) -> &[T] {
        self.pp.points()
    }

    pub fn exponents(&self) -> &[T] {
        self.pp.exponents()
    }

    /// Residual of the side-length equations (zero for the sector engine).
    pub fn parameter_residual(&self) -> f64 {
        self.residual
    }

    fn sector_power(&self) -> T {
        self.pp.exponents()[0] + T::one()
    }

    fn to_work(&self, z: C<T>) -> Result<C<T>> {
        let ok = match self.side {
            HalfPlane::Upper => z.im > T::zero(),
            HalfPlane::Lower => z.im < T::zero(),
        };
        if !ok || !z.re.is_finite() || !z.im.is_finite() {
            return Err(Error::Domain(format!(
                "point ({}, {}) is not in the {:?} half-plane",
                to_f64(z.re),
                to_f64(z.im),
                self.side
            )));
        }
        Ok(match self.side {
            HalfPlane::Upper => z,
            HalfPlane::Lower => z.conj(),
        })
    }

    fn from_work(&self, w: C<T>) -> C<T> {
        match self.side {
            HalfPlane::Upper => w,
            HalfPlane::Lower => w.conj(),
        }
    }

    fn nearest_prevertex(&self, z: C<T>) -> usize {
        let p = self.pp.points();
        let k = p.partition_point(|&x| x < z.re);
        if k == 0 {
            0
        } else if k == p.len() || z.re - p[k - 1] < p[k] - z.re {
            k - 1
        } else {
            k
        }
    }

    /// Working-frame map on the closed upper half-plane.
    fn eval_work(&self, z: C<T>) -> C<T> {
        match self.kind {
            EngineKind::ExactSector => {
                let a = self.sector_power();
                self.anchors[0] + self.c / a * pow_upper(z - self.pp.points()[0], a)
            }
            EngineKind::SchwarzChristoffel => {
                let j = self.nearest_prevertex(z);
                self.anchors[j] + self.c * self.pp.path_integral(j, z)
            }
        }
    }

    /// `Phi(z)`.
    pub fn eval(&self, z: C<T>) -> Result<C<T>> {
        let zw = self.to_work(z)?;
        Ok(self.from_work(self.eval_work(zw)))
    }

    /// `Phi'(z)`.
    pub fn deriv(&self, z: C<T>) -> Result<C<T>> {
        let zw = self.to_work(z)?;
        Ok(self.from_work(self.c * self.pp.eval(zw)))
    }

    /// Prevertex interval containing `x`; equal to the curve piece it maps onto.
    fn interval(&self, x: T) -> usize {
        self.pp.points().partition_point(|&p| p < x)
    }

    /// Signed boundary arc length from prevertex `j` to `x`.
    fn arc(&self, j: usize, x: T) -> T {
        let p = self.pp.points()[j];
        match self.kind {
            EngineKind::ExactSector => {
                let a = self.sector_power();
                let v = self.c.norm() / a * (x - p).abs().powf(a);
                if x < p {
                    -v
                } else {
                    v
                }
            }
            EngineKind::SchwarzChristoffel => self.c.norm() * self.pp.real_integral(p, x),
        }
    }

    /// Boundary trace `phi(x)`.
    pub fn boundary(&self, x: T) -> C<T> {
        let k = self.interval(x);
        let piece = self.work.piece(k);
        let dir = piece.vel / piece.speed();
        let j = self.boundary_anchor(k, x);
        self.from_work(self.anchors[j] + dir * self.arc(j, x))
    }

    /// `psi(x)` computed from the boundary arc length, without projection.
    pub fn psi_direct(&self, x: T) -> T {
        let k = self.interval(x);
        let j = self.boundary_anchor(k, x);
        self.work.knots()[j].t + self.arc(j, x) / self.work.piece(k).speed()
    }

    /// Prevertex used as the base point for boundary integration on interval `k`.
    fn boundary_anchor(&self, k: usize, x: T) -> usize {
        let p = self.pp.points();
        if k == 0 {
            0
        } else if k == p.len() {
            k - 1
        } else if x - p[k - 1] <= p[k] - x {
            k - 1
        } else {
            k
        }
    }

    /// `psi'(u) = |Phi'(u)| / |f'(psi(u))|` on the real line.
    pub fn psi_density(&self, u: T) -> T {
        self.c.norm() * self.pp.abs_real(u) / self.work.piece(self.interval(u)).speed()
    }

    /// `[int psi', int psi' w, int psi' (1 - w)]` over `[a, b]` with
    /// `w = (u - a) / (b - a)`.
    pub fn psi_moments(&self, a: T, b: T) -> [T; 3] {
        let mut m = [T::zero(); 3];
        let len = b - a;
        let speeds: Vec<T> = self.work.pieces().map(|p| p.speed()).collect();
        let cabs = self.c.norm();
        let pts = self.pp.points();
        self.pp.real_nodes(a, b, &mut |u, w| {
            let d = w * cabs / speeds[pts.partition_point(|&p| p < u)];
            let s = (u - a) / len;
            m[0] = m[0] + d;
            m[1] = m[1] + d * s;
            m[2] = m[2] + d * (T::one() - s);
        });
        m
    }

    /// `phi^{-1}(w)` for `w` within `tol` of the curve.
    pub fn boundary_inv(&self, w: C<T>, tol: T) -> Result<T> {
        let near = self.orig.nearest(w);
        if near.distance > tol {
            return Err(Error::OffCurve {
                re: to_f64(w.re),
                im: to_f64(w.im),
                distance: to_f64(near.distance),
                tol: to_f64(tol),
            });
        }
        let t = near.t;
        let k = near.piece;
        let knots = self.work.knots();
        let p = self.pp.points();
        // base knot on this piece nearest in parameter
        let j = if k == 0 {
            0
        } else if k == p.len() || t - knots[k - 1].t <= knots[k].t - t {
            k - 1
        } else {
            k
        };
        let target = (t - knots[j].t) * self.work.piece(k).speed();
        Ok(self.invert_arc(j, target, k))
    }

    /// Solves `arc(j, x) = s` for `x` inside prevertex interval `k`.
    fn invert_arc(&self, j: usize, s: T, k: usize) -> T {
        let p = self.pp.points();
        let x0 = p[j];
        if s == T::zero() {
            return x0;
        }
        if self.kind == EngineKind::ExactSector {
            let a = self.sector_power();
            let d = (s.abs() * a / self.c.norm()).powf(T::one() / a);
            return if s < T::zero() { x0 - d } else { x0 + d };
        }
        let sign = if s < T::zero() { -T::one() } else { T::one() };
        let target = s.abs();
        let g = |d: T| self.arc(j, x0 + sign * d) * sign - target;
        let limit = if k == 0 || k == p.len() {
            T::infinity()
        } else {
            (p[k] - p[k - 1]).abs()
        };
        let mut lo = T::zero();
        let mut hi = if limit.is_finite() {
            limit
        } else {
            let mut h = T::one();
            while g(h) < T::zero() && h < lit(1e300) {
                lo = h;
                h = h * lit(2.0);
            }
            h
        };
        let mut d = (lo + hi) * lit(0.5);
        for _ in 0..200 {
            let gv = g(d);
            if gv == T::zero() {
                break;
            }
            if gv < T::zero() {
                lo = d;
            } else {
                hi = d;
            }
            let slope = self.c.norm() * self.pp.abs_real(x0 + sign * d);
            let mut next = d - gv / slope;
            if !(next > lo && next < hi) || !next.is_finite() {
                next = (lo + hi) * lit(0.5);
            }
            if (next - d).abs() <= T::epsilon() * lit(4.0) * (d.abs() + x0.abs() + T::one()) {
                d = next;
                break;
            }
            d = next;
        }
        x0 + sign * d
    }

    /// Koebe margins `(d / (y |Phi'| / 2), d / (2 y |Phi'|))` with
    /// `d = dist(Phi(z), curve)`; the bound holds iff the first is at least 1
    /// and the second at most 1.
    pub fn koebe_check(&self, z: C<T>) -> Result<(T, T)> {
        let w = self.eval(z)?;
        let dphi = self.deriv(z)?.norm();
        let d = self.orig.distance(w);
        let y = z.im.abs();
        Ok((d / (y * dphi * lit(0.5)), d / (y * dphi * lit(2.0))))
    }

    /// Checks the side lengths of the Schwarz–Christoffel image.
    fn check_sides(&self) -> Result<()> {
        let knots = self.work.knots();
        let p = self.pp.points();
        let mut worst = T::zero();
        for k in 0..knots.len() - 1 {
            let len = (knots[k + 1].w - knots[k].w).norm();
            let got = self.c.norm() * self.pp.real_integral(p[k], p[k + 1]);
            worst = worst.max(((got - len) / len).abs());
        }
        if worst > (T::epsilon() * lit(1e4)).max(lit(1e-10)) {
            return Err(Error::EngineAccuracy {
                message: "side lengths of the mapped polygon do not match".into(),
                residual: to_f64(worst),
            });
        }
        Ok(())
    }
}
