//! The four boundary arcs around a point and the chord-arc inequalities.

use crate::ba_ext::Reparam;
use crate::conformal::ConformalMap;
use crate::curve::Chain;
use crate::error::Result;
use crate::scalar::{lit, to_f64, Real, C};

/// `phi((-inf, x-y])`, `phi([x-y, x-y/2])`, `phi([x+y/2, x+y])`, `phi([x+y, inf))`
/// for `z = x + iy`, as exact sub-polylines of the curve.
#[derive(Debug, Clone)]
pub struct BoundaryArcs<T> {
    pub z: C<T>,
    /// Curve parameters `psi(x-y), psi(x-y/2), psi(x+y/2), psi(x+y)`.
    pub params: [T; 4],
    pub arcs: [Chain<T>; 4],
}

impl<T: Real> BoundaryArcs<T> {
    /// `dist(Gamma_1, Gamma_4)`.
    pub fn outer_distance(&self) -> T {
        self.arcs[0].distance_to(&self.arcs[3])
    }

    /// `min(diam Gamma_2, diam Gamma_3)`.
    pub fn inner_diameter(&self) -> T {
        self.arcs[1].diameter().min(self.arcs[2].diameter())
    }
}

/// Builds the arcs for `z`; `|im z|` plays the role of `y` for maps of
/// either half-plane.
pub fn boundary_arcs<T: Real>(map: &ConformalMap<T>, z: C<T>) -> Result<BoundaryArcs<T>> {
    let (x, y) = (z.re, z.im.abs());
    let half = lit::<T>(0.5);
    let params = [map.psi_direct(x - y), map.psi_direct(x - y * half), map.psi_direct(x + y * half), map.psi_direct(x + y)];
    let c = map.curve();
    let arcs = [
        c.chain(None, Some(params[0])),
        c.chain(Some(params[0]), Some(params[1])),
        c.chain(Some(params[2]), Some(params[3])),
        c.chain(Some(params[3]), None),
    ];
    Ok(BoundaryArcs { z, params, arcs })
}

/// Both sides of `dist(G1, G4) / 120 <= y |Phi'| <= 500 min(diam G2, diam G3)`.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct Harm1 {
    pub y_dphi: f64,
    pub outer_distance: f64,
    pub inner_diameter: f64,
    /// `y |Phi'| / (dist / 120)`.
    pub left_margin: f64,
    /// `500 min diam / (y |Phi'|)`.
    pub right_margin: f64,
    pub pass: bool,
}

pub fn lemma_harm1_check<T: Real>(map: &ConformalMap<T>, z: C<T>) -> Result<Harm1> {
    let arcs = boundary_arcs(map, z)?;
    let y_dphi = to_f64(z.im.abs() * map.deriv(z)?.norm());
    let outer = to_f64(arcs.outer_distance());
    let inner = to_f64(arcs.inner_diameter());
    let left = y_dphi / (outer / 120.0);
    let right = 500.0 * inner / y_dphi;
    Ok(Harm1 {
        y_dphi,
        outer_distance: outer,
        inner_diameter: inner,
        left_margin: left,
        right_margin: right,
        pass: left >= 1.0 && right >= 1.0,
    })
}

/// Margins of `diam phi([a,b]) <= L (psi(b) - psi(a))` and
/// `dist(phi((-inf,a]), phi([b,inf))) >= l (psi(b) - psi(a))`; both at least 1
/// when the inequalities hold.
pub fn chord_arc_margins<T: Real, R: Reparam<T>>(map: &ConformalMap<T>, reparam: &R, a: T, b: T) -> Result<(f64, f64)> {
    let (pa, pb) = (reparam.psi(a)?, reparam.psi(b)?);
    let c = map.curve();
    let diam = c.chain(Some(pa), Some(pb)).diameter();
    let dist = c.chain(None, Some(pa)).distance_to(&c.chain(Some(pb), None));
    let span = pb - pa;
    Ok((to_f64(c.lip_upper() * span / diam), to_f64(dist / (c.lip_lower() * span))))
}
