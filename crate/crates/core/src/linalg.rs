//! 2x2 real matrices and a small dense solver.

use crate::scalar::{Real, C};

/// Real 2x2 matrix `[[a, b], [c, d]]`, acting on column vectors `(re, im)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2<T> {
    pub a: T,
    pub b: T,
    pub c: T,
    pub d: T,
}

impl<T: Real> Mat2<T> {
    pub fn new(a: T, b: T, c: T, d: T) -> Self {
        Self { a, b, c, d }
    }

    pub fn identity() -> Self {
        Self::new(T::one(), T::zero(), T::zero(), T::one())
    }

    /// Matrix of multiplication by a complex number.
    pub fn similarity(z: C<T>) -> Self {
        Self::new(z.re, -z.im, z.im, z.re)
    }

    /// `diag(1,-1) * self * diag(1,-1)`: the Jacobian of `conj o g o conj`.
    pub fn conj_sandwich(&self) -> Self {
        Self::new(self.a, -self.b, -self.c, self.d)
    }

    pub fn det(&self) -> T {
        self.a * self.d - self.b * self.c
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::new(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )
    }

    pub fn apply(&self, v: C<T>) -> C<T> {
        C::new(self.a * v.re + self.b * v.im, self.c * v.re + self.d * v.im)
    }

    pub fn inverse(&self) -> Option<Self> {
        let det = self.det();
        if det == T::zero() || !det.is_finite() {
            return None;
        }
        Some(Self::new(self.d / det, -self.b / det, -self.c / det, self.a / det))
    }

    /// Singular values `(largest, smallest)`.
    pub fn singular_values(&self) -> (T, T) {
        let half = T::from_f64(0.5).unwrap();
        let e = (self.a + self.d) * half;
        let f = (self.a - self.d) * half;
        let g = (self.c + self.b) * half;
        let h = (self.c - self.b) * half;
        let q = e.hypot(h);
        let r = f.hypot(g);
        (q + r, (q - r).abs())
    }

    /// Spectral norm.
    pub fn norm(&self) -> T {
        self.singular_values().0
    }

    /// Spectral norm of the inverse, `+inf` for singular matrices.
    pub fn inverse_norm(&self) -> T {
        let s = self.singular_values().1;
        if s == T::zero() {
            T::infinity()
        } else {
            T::one() / s
        }
    }

    pub fn max_abs_entry(&self) -> T {
        self.a.abs().max(self.b.abs()).max(self.c.abs()).max(self.d.abs())
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self::new(self.a - o.a, self.b - o.b, self.c - o.c, self.d - o.d)
    }
}

/// Solves `A x = b` by Gaussian elimination with partial pivoting.
///
/// Returns `None` when a pivot vanishes.
pub fn solve_dense<T: Real>(mut a: Vec<Vec<T>>, mut b: Vec<T>) -> Option<Vec<T>> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n).max_by(|&i, &j| a[i][col].abs().partial_cmp(&a[j][col].abs()).unwrap())?;
        if a[piv][col] == T::zero() || !a[piv][col].is_finite() {
            return None;
        }
        a.swap(col, piv);
        b.swap(col, piv);
        for row in col + 1..n {
            let factor = a[row][col] / a[col][col];
            if factor == T::zero() {
                continue;
            }
            for k in col..n {
                let v = a[col][k];
                a[row][k] = a[row][k] - factor * v;
            }
            b[row] = b[row] - factor * b[col];
        }
    }
    let mut x = vec![T::zero(); n];
    for row in (0..n).rev() {
        let mut acc = b[row];
        for k in row + 1..n {
            acc = acc - a[row][k] * x[k];
        }
        x[row] = acc / a[row][row];
    }
    Some(x)
}
