//! Scalar abstraction shared by every numeric routine in the crate.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive};

/// Floating point scalar the geometry and conformal machinery is generic over.
///
/// Implemented for `f32` and `f64`. Tolerances quoted in the API are `f64`
/// literals converted through [`lit`]; at `f32` precision the tight ones
/// (1e-10 Newton residuals and the like) are clamped to what the type can
/// represent, see [`floor_tol`].
pub trait Real:
    Float + FloatConst + FromPrimitive + Debug + Display + Default + Sum + Send + Sync + 'static
{
}

impl Real for f32 {}
impl Real for f64 {}

/// Complex number over the crate scalar.
pub type C<T> = Complex<T>;

/// Converts an `f64` literal into `T`.
#[inline]
pub fn lit<T: Real>(x: f64) -> T {
    T::from_f64(x).expect("finite literal")
}

#[inline]
pub fn to_f64<T: Real>(x: T) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Clamps a requested tolerance to a small multiple of the type's epsilon.
#[inline]
pub fn floor_tol<T: Real>(tol: T) -> T {
    tol.max(T::epsilon() * lit(64.0))
}

#[inline]
pub fn cplx<T: Real>(re: T, im: T) -> C<T> {
    Complex::new(re, im)
}

/// Dot product of two plane vectors stored as complex numbers.
#[inline]
pub fn dot<T: Real>(a: C<T>, b: C<T>) -> T {
    a.re * b.re + a.im * b.im
}

/// z-component of the cross product `a x b`.
#[inline]
pub fn cross<T: Real>(a: C<T>, b: C<T>) -> T {
    a.re * b.im - a.im * b.re
}

/// Counter-clockwise angle from `from` to `to`, in `[0, 2pi)`.
pub fn ccw_angle<T: Real>(from: C<T>, to: C<T>) -> T {
    let a = cross(from, to).atan2(dot(from, to));
    if a < T::zero() {
        a + T::TAU()
    } else {
        a
    }
}

/// Argument of a point in the closed upper half-plane, in `[0, pi]`.
///
/// Points on the negative real axis get `pi` regardless of the sign of a
/// zero imaginary part, which keeps fractional powers continuous on the
/// closed upper half-plane.
#[inline]
pub fn arg_upper<T: Real>(z: C<T>) -> T {
    if z.im <= T::zero() {
        if z.re >= T::zero() {
            T::zero()
        } else {
            T::PI()
        }
    } else {
        z.im.atan2(z.re)
    }
}

/// Principal power `z^a` on the closed upper half-plane using [`arg_upper`].
#[inline]
pub fn pow_upper<T: Real>(z: C<T>, a: T) -> C<T> {
    let r = z.norm();
    if r == T::zero() {
        return C::new(T::zero(), T::zero());
    }
    C::from_polar(r.powf(a), a * arg_upper(z))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn angles() {
        let e = cplx(1.0_f64, 0.0);
        let i = cplx(0.0_f64, 1.0);
        assert!((ccw_angle(e, i) - std::f64::consts::FRAC_PI_2).abs() < 1e-15);
        assert!((ccw_angle(i, e) - 1.5 * std::f64::consts::PI).abs() < 1e-15);
        assert_eq!(arg_upper(cplx(-2.0_f64, -0.0)), std::f64::consts::PI);
        let w = pow_upper(cplx(0.0_f64, 1.0), 1.5);
        assert!((w - C::from_polar(1.0, 0.75 * std::f64::consts::PI)).norm() < 1e-15);
    }
}
