//! The plane extension `F = Phi o Psi^{-1}` of a polyline embedding.
//!
//! The upper half-plane uses the map onto the left domain; the lower
//! half-plane is handled through the mirror curve `conj o f`, so that
//! `F(z) = conj(G(conj z))` with `G` the upper extension of the mirror.
//! On the real line `F = f`.

use serde::Serialize;

use crate::ba_ext::{BAExtension, BAJacobian, BoundaryReparam, INVERSE_TOL};
use crate::conformal::{build_phi_normalized, ConformalMap, HalfPlane, Normalization};
use crate::curve::PolylineEmbedding;
use crate::error::{Error, Result};
use crate::linalg::Mat2;
use crate::scalar::{lit, Real, C};

/// Expansion bound factor: `||DF|| <= 2000 L`.
pub const EXPANSION_FACTOR: f64 = 2000.0;
/// Compression bound factor: `||DF^{-1}|| <= 120 / l`.
pub const COMPRESSION_FACTOR: f64 = 120.0;

pub type HalfExtension<T> = BAExtension<T, BoundaryReparam<T>>;

pub struct ExtensionMap<T> {
    curve: PolylineEmbedding<T>,
    upper: HalfExtension<T>,
    lower: HalfExtension<T>,
    tol: T,
}

/// Everything computed at one point off the real line.
#[derive(Debug, Clone, Copy)]
pub struct PointEval<T> {
    pub z: C<T>,
    pub f: C<T>,
    /// Preimage under the extension, in the upper half-plane of the working frame.
    pub zeta: C<T>,
    /// `|Phi'(zeta)|`.
    pub dphi_abs: T,
    pub dpsi: BAJacobian<T>,
    pub df: Mat2<T>,
}

impl<T: Real> PointEval<T> {
    pub fn norm_df(&self) -> T {
        self.df.norm()
    }

    pub fn norm_df_inv(&self) -> T {
        self.df.inverse_norm()
    }
}

/// Margins of `(l/120) ||DPsi|| <= |Phi'| <= 2000 L / ||DPsi^{-1}||`; both are
/// at least 1 when the inequality holds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Lip2Margins {
    pub lower: f64,
    pub upper: f64,
}

/// Builds the extension with default normalizations.
pub fn build_extension<T: Real>(curve: &PolylineEmbedding<T>) -> Result<ExtensionMap<T>> {
    build_extension_normalized(curve, Normalization::default(), Normalization::default())
}

/// Builds the extension with explicit normalizations of the two conformal maps.
pub fn build_extension_normalized<T: Real>(
    curve: &PolylineEmbedding<T>,
    upper: Normalization<T>,
    lower: Normalization<T>,
) -> Result<ExtensionMap<T>> {
    let up = build_phi_normalized(curve, HalfPlane::Upper, upper)?;
    let lo = build_phi_normalized(curve, HalfPlane::Lower, lower)?;
    Ok(ExtensionMap {
        curve: curve.clone(),
        upper: BAExtension::new(BoundaryReparam::new(up)),
        lower: BAExtension::new(BoundaryReparam::new(lo)),
        tol: lit(INVERSE_TOL),
    })
}

impl<T: Real> ExtensionMap<T> {
    pub fn curve(&self) -> &PolylineEmbedding<T> {
        &self.curve
    }

    pub fn half(&self, side: HalfPlane) -> &HalfExtension<T> {
        match side {
            HalfPlane::Upper => &self.upper,
            HalfPlane::Lower => &self.lower,
        }
    }

    pub fn phi(&self, side: HalfPlane) -> &ConformalMap<T> {
        self.half(side).reparam.map()
    }

    /// Sets the absolute tolerance of the inner inversion.
    pub fn with_tolerance(mut self, tol: T) -> Self {
        self.tol = tol;
        self
    }

    /// `2000 L`.
    pub fn expansion_bound(&self) -> T {
        self.curve.lip_upper() * lit(EXPANSION_FACTOR)
    }

    /// `l / 120`.
    pub fn compression_bound(&self) -> T {
        self.curve.lip_lower() / lit(COMPRESSION_FACTOR)
    }

    /// `F(z)`.
    pub fn eval(&self, z: C<T>) -> Result<C<T>> {
        if z.im == T::zero() {
            return Ok(self.curve.eval(z.re));
        }
        Ok(self.eval_detail(z, None)?.f)
    }

    /// `DF(z)` for `z` off the real line.
    pub fn jacobian(&self, z: C<T>) -> Result<Mat2<T>> {
        Ok(self.eval_detail(z, None)?.df)
    }

    /// Evaluates `F`, the inner preimage and all Jacobian data at `z`.
    /// `hint` is a starting guess for the preimage in the working frame.
    pub fn eval_detail(&self, z: C<T>, hint: Option<C<T>>) -> Result<PointEval<T>> {
        if z.im == T::zero() || !z.im.is_finite() || !z.re.is_finite() {
            return Err(Error::Domain("Jacobian of the extension needs a point off the real line".into()));
        }
        let lower = z.im < T::zero();
        let side = if lower { HalfPlane::Lower } else { HalfPlane::Upper };
        let half = self.half(side);
        let map = half.reparam.map();
        let zw = if lower { z.conj() } else { z };
        let zeta = half.inverse_from(zw, self.tol, hint)?;
        let dpsi = half.jacobian(zeta)?;
        // back to the actual half-plane of the map
        let zeta_side = if lower { zeta.conj() } else { zeta };
        let f = map.eval(zeta_side)?;
        let dphi = map.deriv(zeta_side)?;
        // in the working frame: DG = M(G') DPsi^{-1}, with G' = conj(Phi'(conj zeta)) below
        let dphi_work = if lower { dphi.conj() } else { dphi };
        let inv = dpsi.matrix.inverse().ok_or_else(|| Error::EngineAccuracy {
            message: "singular extension Jacobian".into(),
            residual: 0.0,
        })?;
        let dg = Mat2::similarity(dphi_work).mul(&inv);
        let df = if lower { dg.conj_sandwich() } else { dg };
        Ok(PointEval { z, f, zeta, dphi_abs: dphi.norm(), dpsi, df })
    }

    /// Margins of the pointwise inequality between `|Phi'|` and `DPsi` at
    /// the preimage of `z`.
    pub fn lip2_margins(&self, p: &PointEval<T>) -> Lip2Margins {
        let lo = self.compression_bound() * p.dpsi.norm();
        let hi = self.expansion_bound() / p.dpsi.inverse_norm();
        Lip2Margins {
            lower: crate::scalar::to_f64(p.dphi_abs / lo),
            upper: crate::scalar::to_f64(hi / p.dphi_abs),
        }
    }
}

/// Maximum deviations `(|Ext(f o eta)(z) - F(eta z)|, |Ext(eta' o f)(z) - eta'(F(z))|)`
/// over `points`, each divided by `max(1, |reference|)`.
///
/// `eta(z) = r z + s` with `r > 0`, real `s`; `eta'(w) = a w + b` with `a != 0`.
pub fn linear_conjugation_check<T: Real>(
    curve: &PolylineEmbedding<T>,
    r: T,
    s: T,
    a: C<T>,
    b: C<T>,
    points: &[C<T>],
) -> Result<(T, T)> {
    let base = build_extension(curve)?;
    let pre = build_extension(&curve.precompose(r, s)?)?;
    let post = build_extension(&curve.postcompose(a, b)?)?;
    let mut dev = (T::zero(), T::zero());
    for &z in points {
        let want_pre = base.eval(z * r + s)?;
        let got_pre = pre.eval(z)?;
        dev.0 = dev.0.max((got_pre - want_pre).norm() / want_pre.norm().max(T::one()));
        let want_post = a * base.eval(z)? + b;
        let got_post = post.eval(z)?;
        dev.1 = dev.1.max((got_post - want_post).norm() / want_post.norm().max(T::one()));
    }
    Ok(dev)
}
