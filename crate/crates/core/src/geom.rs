//! Exact distance kernels for segments and rays in the plane.

use crate::scalar::{cross, dot, Real, C};

/// A straight piece of a polyline: a segment or a ray.
///
/// Points are `start + s * dir` for `s` in `[0, len]`; rays have
/// `len = +inf` and a unit `dir`, segments have `dir = end - start`
/// and `len = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Piece<T> {
    pub start: C<T>,
    pub dir: C<T>,
    pub len: T,
}

impl<T: Real> Piece<T> {
    pub fn segment(a: C<T>, b: C<T>) -> Self {
        Self {
            start: a,
            dir: b - a,
            len: T::one(),
        }
    }

    /// Ray from `origin` in the direction of `dir` (normalized here).
    pub fn ray(origin: C<T>, dir: C<T>) -> Self {
        Self {
            start: origin,
            dir: dir / dir.norm(),
            len: T::infinity(),
        }
    }

    pub fn is_ray(&self) -> bool {
        self.len.is_infinite()
    }

    pub fn point_at(&self, s: T) -> C<T> {
        self.start + self.dir * s
    }

    /// Finite endpoints of the piece.
    pub fn endpoints(&self) -> impl Iterator<Item = C<T>> + '_ {
        let end = (!self.is_ray()).then(|| self.point_at(self.len));
        std::iter::once(self.start).chain(end)
    }

    /// Closest point on the piece to `p` and its local parameter `s`.
    pub fn closest(&self, p: C<T>) -> (C<T>, T) {
        let dd = self.dir.norm_sqr();
        if dd == T::zero() {
            return (self.start, T::zero());
        }
        let s = (dot(p - self.start, self.dir) / dd).max(T::zero()).min(self.len);
        (self.point_at(s), s)
    }

    pub fn distance(&self, p: C<T>) -> T {
        (self.closest(p).0 - p).norm()
    }

    /// Whether the two pieces share at least one point.
    pub fn intersects(&self, o: &Self) -> bool {
        if self.nearly_parallel(o) {
            // only collinear overlap can intersect; it puts an endpoint on the other piece
            return self.endpoint_distance(o) == T::zero();
        }
        let den = cross(self.dir, o.dir);
        let qp = o.start - self.start;
        let s = cross(qp, o.dir) / den;
        let t = cross(qp, self.dir) / den;
        s >= T::zero() && s <= self.len && t >= T::zero() && t <= o.len
    }

    fn nearly_parallel(&self, o: &Self) -> bool {
        let den = cross(self.dir, o.dir);
        den.abs() <= T::epsilon() * T::from_f64(16.0).unwrap() * self.dir.norm() * o.dir.norm()
    }

    fn endpoint_distance(&self, o: &Self) -> T {
        let a = self.endpoints().map(|e| o.distance(e));
        let b = o.endpoints().map(|e| self.distance(e));
        a.chain(b).fold(T::infinity(), T::min)
    }

    /// Euclidean distance between the two pieces.
    ///
    /// For disjoint convex pieces one of the finite endpoints realises the
    /// distance; a ray contributes only its origin.
    pub fn distance_to(&self, o: &Self) -> T {
        if !self.nearly_parallel(o) && self.intersects(o) {
            return T::zero();
        }
        self.endpoint_distance(o)
    }
}
