//! Piecewise-linear bilipschitz embeddings of the real line with straight tails.
//!
//! A curve is given by parameter knots `t_0 < ... < t_n`, their images
//! `w_k = f(t_k)`, and two tail velocities. Outside `[t_0, t_n]` the map is
//! affine: `f(t) = w_0 + v_neg (t - t_0)` for `t <= t_0` and
//! `f(t) = w_n + v_pos (t - t_n)` for `t >= t_n`.
//!
//! Pieces are indexed `0 ..= n + 1`: piece `0` is the negative tail, piece
//! `k + 1` is the segment `[t_k, t_{k+1}]`, piece `n + 1` the positive tail.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::Piece;
use crate::scalar::{ccw_angle, cross, lit, to_f64, Real, C};

/// Separation below which two non-adjacent pieces count as intersecting,
/// relative to the curve scale.
pub const SIMPLE_TOL: f64 = 1e-12;

/// Tail vectors read from JSON must have unit length to this tolerance.
pub const UNIT_TAIL_TOL: f64 = 1e-9;

/// Relative tolerance for user supplied Lipschitz constants.
pub const SUPPLIED_CONSTANT_TOL: f64 = 0.01;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Knot<T> {
    pub t: T,
    pub w: C<T>,
}

impl<T: Real> Knot<T> {
    pub fn new(t: T, w: C<T>) -> Self {
        Self { t, w }
    }
}

/// One affine piece: `f(t) = anchor_w + vel * (t - anchor_t)` for `t` in `[lo, hi]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurvePiece<T> {
    pub lo: T,
    pub hi: T,
    pub anchor_t: T,
    pub anchor_w: C<T>,
    pub vel: C<T>,
}

impl<T: Real> CurvePiece<T> {
    pub fn eval(&self, t: T) -> C<T> {
        self.anchor_w + self.vel * (t - self.anchor_t)
    }

    pub fn speed(&self) -> T {
        self.vel.norm()
    }

    /// The geometric image of the piece.
    pub fn geometry(&self) -> Piece<T> {
        match (self.lo.is_finite(), self.hi.is_finite()) {
            (true, true) => Piece::segment(self.eval(self.lo), self.eval(self.hi)),
            (false, _) => Piece::ray(self.eval(self.hi), -self.vel),
            (_, false) => Piece::ray(self.eval(self.lo), self.vel),
        }
    }

    /// Curve parameter of the point at local parameter `s` of [`Self::geometry`].
    fn param_of(&self, s: T) -> T {
        match (self.lo.is_finite(), self.hi.is_finite()) {
            (true, true) => self.lo + s * (self.hi - self.lo),
            (false, _) => self.hi - s / self.speed(),
            (_, false) => self.lo + s / self.speed(),
        }
    }
}

/// Nearest point of the curve to a query point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Nearest<T> {
    pub t: T,
    pub point: C<T>,
    pub distance: T,
    pub piece: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
    On,
}

/// Result of [`PolylineEmbedding::compute_lip_lower`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LipLower<T> {
    /// Exact infimum of the difference quotient over all piece pairs.
    pub exact: T,
    /// Minimum over a finite pair sample; never below `exact`.
    pub sampled: T,
    pub pairs: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PolylineEmbedding<T> {
    knots: Vec<Knot<T>>,
    tail_neg: C<T>,
    tail_pos: C<T>,
    lip_upper: T,
    lip_lower: T,
}

impl<T: Real> PolylineEmbedding<T> {
    /// Builds and validates a curve, computing both Lipschitz constants.
    pub fn new(knots: Vec<Knot<T>>, tail_neg: C<T>, tail_pos: C<T>) -> Result<Self> {
        if knots.is_empty() {
            return Err(Error::InvalidCurve("at least one knot is required".into()));
        }
        let finite = |z: C<T>| z.re.is_finite() && z.im.is_finite();
        if knots.iter().any(|k| !k.t.is_finite() || !finite(k.w)) || !finite(tail_neg) || !finite(tail_pos) {
            return Err(Error::InvalidCurve("non-finite coordinate".into()));
        }
        if tail_neg.norm() == T::zero() || tail_pos.norm() == T::zero() {
            return Err(Error::InvalidCurve("tail velocity must be non-zero".into()));
        }
        for (i, pair) in knots.windows(2).enumerate() {
            if pair[1].t <= pair[0].t {
                return Err(Error::InvalidCurve(format!(
                    "knot parameters must increase strictly (knots {i} and {})",
                    i + 1
                )));
            }
            if pair[1].w == pair[0].w {
                return Err(Error::InvalidCurve(format!("degenerate segment {i}: zero length")));
            }
        }
        let mut curve = Self {
            knots,
            tail_neg,
            tail_pos,
            lip_upper: T::zero(),
            lip_lower: T::zero(),
        };
        curve.check_simple()?;
        curve.lip_upper = curve.compute_lip_upper();
        curve.lip_lower = curve.lip_lower_exact();
        if !(curve.lip_lower > T::zero()) {
            return Err(Error::InvalidCurve("difference quotient infimum is zero".into()));
        }
        Ok(curve)
    }

    /// Two-ray curve `f(t) = vertex + v (t - t0)` on each side of a single knot.
    pub fn two_ray(t0: T, vertex: C<T>, tail_neg: C<T>, tail_pos: C<T>) -> Result<Self> {
        Self::new(vec![Knot::new(t0, vertex)], tail_neg, tail_pos)
    }

    /// `f(t) = t`.
    pub fn identity() -> Self {
        Self::two_ray(T::zero(), C::new(T::zero(), T::zero()), C::new(T::one(), T::zero()), C::new(T::one(), T::zero()))
            .expect("identity curve is valid")
    }

    /// `f(t) = t` for `t >= 0` and `f(t) = i t` for `t <= 0`.
    pub fn bend() -> Self {
        Self::two_ray(T::zero(), C::new(T::zero(), T::zero()), C::new(T::zero(), T::one()), C::new(T::one(), T::zero()))
            .expect("bend curve is valid")
    }

    pub fn knots(&self) -> &[Knot<T>] {
        &self.knots
    }

    pub fn tail_neg(&self) -> C<T> {
        self.tail_neg
    }

    pub fn tail_pos(&self) -> C<T> {
        self.tail_pos
    }

    /// Number of finite segments, `n`.
    pub fn num_segments(&self) -> usize {
        self.knots.len() - 1
    }

    pub fn num_pieces(&self) -> usize {
        self.knots.len() + 1
    }

    /// Expansion constant `L`.
    pub fn lip_upper(&self) -> T {
        self.lip_upper
    }

    /// Compression constant `l`, the exact infimum of the difference quotient.
    pub fn lip_lower(&self) -> T {
        self.lip_lower
    }

    /// Characteristic length used to scale absolute tolerances.
    pub fn scale(&self) -> T {
        let first = self.knots[0].w;
        self.knots
            .iter()
            .map(|k| (k.w - first).norm())
            .fold(T::one(), T::max)
            .max(self.knots.iter().map(|k| k.w.norm()).fold(T::zero(), T::max))
    }

    pub fn piece(&self, i: usize) -> CurvePiece<T> {
        let n = self.num_segments();
        let inf = T::infinity();
        if i == 0 {
            let k = self.knots[0];
            CurvePiece { lo: -inf, hi: k.t, anchor_t: k.t, anchor_w: k.w, vel: self.tail_neg }
        } else if i == n + 1 {
            let k = self.knots[n];
            CurvePiece { lo: k.t, hi: inf, anchor_t: k.t, anchor_w: k.w, vel: self.tail_pos }
        } else {
            let (a, b) = (self.knots[i - 1], self.knots[i]);
            CurvePiece { lo: a.t, hi: b.t, anchor_t: a.t, anchor_w: a.w, vel: (b.w - a.w) / (b.t - a.t) }
        }
    }

    pub fn pieces(&self) -> impl Iterator<Item = CurvePiece<T>> + '_ {
        (0..self.num_pieces()).map(move |i| self.piece(i))
    }

    /// Index of the piece whose parameter range contains `t` (lowest on ties).
    pub fn piece_index(&self, t: T) -> usize {
        self.knots.partition_point(|k| k.t < t)
    }

    /// `f(t)`.
    pub fn eval(&self, t: T) -> C<T> {
        self.piece(self.piece_index(t)).eval(t)
    }

    /// Speed of the piece containing `t`.
    pub fn speed_at(&self, t: T) -> T {
        self.piece(self.piece_index(t)).speed()
    }

    fn outgoing(&self, k: usize) -> C<T> {
        self.piece(k + 1).vel
    }

    fn incoming(&self, k: usize) -> C<T> {
        self.piece(k).vel
    }

    /// Angle of the left complementary domain at each knot, in `(0, 2pi)`.
    pub fn interior_angles(&self) -> Vec<T> {
        (0..self.knots.len())
            .map(|k| ccw_angle(self.outgoing(k), -self.incoming(k)))
            .collect()
    }

    /// Opening angle of the left domain at infinity: `pi` minus the total turning.
    pub fn opening_at_infinity(&self) -> T {
        let n = lit::<T>(self.num_segments() as f64);
        self.interior_angles().into_iter().fold(T::zero(), |a, b| a + b) - T::PI() * n
    }

    /// Nearest point of the curve to `w`.
    pub fn nearest(&self, w: C<T>) -> Nearest<T> {
        let mut best = Nearest { t: T::zero(), point: w, distance: T::infinity(), piece: 0 };
        for (i, p) in self.pieces().enumerate() {
            let g = p.geometry();
            let (q, s) = g.closest(w);
            let d = (q - w).norm();
            if d < best.distance {
                best = Nearest { t: p.param_of(s), point: q, distance: d, piece: i };
            }
        }
        best
    }

    pub fn distance(&self, w: C<T>) -> T {
        self.nearest(w).distance
    }

    /// `f^{-1}(w)` for a point within `tol` of the curve.
    pub fn project_inverse(&self, w: C<T>, tol: T) -> Result<T> {
        let near = self.nearest(w);
        if near.distance > tol {
            return Err(Error::OffCurve {
                re: to_f64(w.re),
                im: to_f64(w.im),
                distance: to_f64(near.distance),
                tol: to_f64(tol),
            });
        }
        Ok(near.t)
    }

    /// Which complementary domain `w` lies in; `Left` is the domain on the
    /// left when the curve is traversed in increasing parameter.
    pub fn side(&self, w: C<T>) -> Side {
        let near = self.nearest(w);
        if near.distance <= T::epsilon() * self.scale() {
            return Side::On;
        }
        let left = match self.knot_at(near.point) {
            Some(k) => {
                let out = self.outgoing(k);
                ccw_angle(out, w - self.knots[k].w) < ccw_angle(out, -self.incoming(k))
            }
            None => cross(self.piece(near.piece).vel, w - near.point) > T::zero(),
        };
        if left {
            Side::Left
        } else {
            Side::Right
        }
    }

    fn knot_at(&self, p: C<T>) -> Option<usize> {
        let tol = T::epsilon() * lit(16.0) * self.scale();
        self.knots.iter().position(|k| (k.w - p).norm() <= tol)
    }

    /// True iff no two pieces meet except adjacent ones at their shared knot.
    pub fn is_simple(&self) -> bool {
        self.check_simple().is_ok()
    }

    fn check_simple(&self) -> Result<()> {
        let tol = lit::<T>(SIMPLE_TOL) * self.scale();
        let angle_tol = lit::<T>(SIMPLE_TOL);
        for (k, &theta) in self.interior_angles().iter().enumerate() {
            if theta <= angle_tol || theta >= T::TAU() - angle_tol {
                return Err(Error::InvalidCurve(format!("curve folds back on itself at knot {k}")));
            }
        }
        let geo: Vec<Piece<T>> = self.pieces().map(|p| p.geometry()).collect();
        for i in 0..geo.len() {
            for j in i + 2..geo.len() {
                if geo[i].distance_to(&geo[j]) <= tol {
                    return Err(Error::InvalidCurve(format!("pieces {i} and {j} intersect")));
                }
            }
        }
        let open = self.opening_at_infinity();
        if !(open > angle_tol && open < T::TAU() - angle_tol) {
            return Err(Error::InvalidCurve("tails are parallel or wind around".into()));
        }
        Ok(())
    }

    /// Exact supremum of `|f(a) - f(b)| / |a - b|`: the largest piece speed.
    pub fn compute_lip_upper(&self) -> T {
        self.pieces().map(|p| p.speed()).fold(T::zero(), T::max)
    }

    /// Exact infimum of `|f(a) - f(b)| / |a - b|` over all parameter pairs.
    ///
    /// On a pair of pieces the quotient has no interior critical points
    /// except along rays out of a shared knot, so the infimum is attained on
    /// the boundary of the parameter rectangle, at a shared-knot corner, or
    /// in the limit where both parameters run off along the tails.
    pub fn lip_lower_exact(&self) -> T {
        let pieces: Vec<CurvePiece<T>> = self.pieces().collect();
        let mut best = pieces.iter().map(|p| p.speed()).fold(T::infinity(), T::min);
        for i in 0..pieces.len() {
            for j in i + 1..pieces.len() {
                best = best.min(pair_infimum(&pieces[i], &pieces[j], self.scale()));
            }
        }
        best
    }

    /// Minimum of the difference quotient over a finite set of parameters:
    /// knots, `resolution` uniform points across the knot span and geometric
    /// samples running far out along both tails.
    pub fn lip_lower_sampled(&self, resolution: usize) -> (T, usize) {
        let ts = self.sample_params(resolution);
        let mut best = T::infinity();
        let mut pairs = 0;
        for i in 0..ts.len() {
            let fi = self.eval(ts[i]);
            for j in i + 1..ts.len() {
                let dt = ts[j] - ts[i];
                if dt <= T::zero() {
                    continue;
                }
                best = best.min((self.eval(ts[j]) - fi).norm() / dt);
                pairs += 1;
            }
        }
        (best, pairs)
    }

    fn sample_params(&self, resolution: usize) -> Vec<T> {
        let t0 = self.knots[0].t;
        let tn = self.knots[self.num_segments()].t;
        let span = (tn - t0).max(T::one());
        let mut ts: Vec<T> = self.knots.iter().map(|k| k.t).collect();
        let m = resolution.max(8);
        if tn > t0 {
            for i in 1..m {
                ts.push(t0 + (tn - t0) * lit(i as f64 / m as f64));
            }
        }
        let tail = (m / 2).max(8);
        for i in 0..tail {
            // 1e-3 .. 1e4 times the span
            let r = span * lit::<T>(10f64.powf(-3.0 + 7.0 * i as f64 / (tail - 1) as f64));
            ts.push(t0 - r);
            ts.push(tn + r);
        }
        ts.sort_by(|a, b| a.partial_cmp(b).unwrap());
        ts.dedup();
        ts
    }

    /// Exact lower constant cross-checked against dense pair sampling.
    ///
    /// Fails when the two routes disagree by more than 1%.
    pub fn compute_lip_lower(&self, resolution: usize) -> Result<LipLower<T>> {
        let exact = self.lip_lower_exact();
        if !(exact > T::zero()) {
            return Err(Error::InvalidCurve("difference quotient infimum is zero".into()));
        }
        let (sampled, pairs) = self.lip_lower_sampled(resolution);
        let slack = lit::<T>(1e-12) * sampled;
        if exact > sampled + slack || sampled > exact * lit(1.01) {
            return Err(Error::Domain(format!(
                "lower Lipschitz routes disagree: exact {} vs sampled {}",
                exact, sampled
            )));
        }
        Ok(LipLower { exact, sampled, pairs })
    }

    /// Checks user supplied constants against the computed ones.
    pub fn validate_constants(&self, supplied_upper: Option<T>, supplied_lower: Option<T>) -> Result<()> {
        let tol = lit::<T>(SUPPLIED_CONSTANT_TOL);
        let check = |name: &str, given: Option<T>, computed: T| match given {
            Some(g) if (g - computed).abs() > tol * computed => Err(Error::InvalidCurve(format!(
                "supplied {name} = {g} disagrees with computed {computed}"
            ))),
            _ => Ok(()),
        };
        check("L", supplied_upper, self.lip_upper)?;
        check("l", supplied_lower, self.lip_lower)
    }

    /// The mirror curve `conj o f`.
    pub fn conjugate(&self) -> Self {
        let knots = self.knots.iter().map(|k| Knot::new(k.t, k.w.conj())).collect();
        Self::new(knots, self.tail_neg.conj(), self.tail_pos.conj()).expect("mirror of a valid curve")
    }

    /// `f o eta` with `eta(t) = r t + s`, `r > 0`.
    pub fn precompose(&self, r: T, s: T) -> Result<Self> {
        if !(r > T::zero()) {
            return Err(Error::Usage("reparametrization must be increasing".into()));
        }
        let knots = self.knots.iter().map(|k| Knot::new((k.t - s) / r, k.w)).collect();
        Self::new(knots, self.tail_neg * r, self.tail_pos * r)
    }

    /// `eta o f` with `eta(w) = a w + b`, `a != 0`.
    pub fn postcompose(&self, a: C<T>, b: C<T>) -> Result<Self> {
        if a.norm() == T::zero() {
            return Err(Error::Usage("affine image map must be non-degenerate".into()));
        }
        let knots = self.knots.iter().map(|k| Knot::new(k.t, a * k.w + b)).collect();
        Self::new(knots, self.tail_neg * a, self.tail_pos * a)
    }

    /// The image `f([lo, hi])`; `None` bounds run to infinity along a tail.
    pub fn chain(&self, lo: Option<T>, hi: Option<T>) -> Chain<T> {
        let mut breaks: Vec<T> = Vec::new();
        breaks.extend(lo);
        breaks.extend(
            self.knots
                .iter()
                .map(|k| k.t)
                .filter(|&t| lo.map_or(true, |l| t > l) && hi.map_or(true, |h| t < h)),
        );
        breaks.extend(hi);
        let mut pieces = Vec::new();
        if lo.is_none() {
            pieces.push(Piece::ray(self.eval(breaks[0]), -self.tail_neg));
        }
        for w in breaks.windows(2) {
            pieces.push(Piece::segment(self.eval(w[0]), self.eval(w[1])));
        }
        if hi.is_none() {
            pieces.push(Piece::ray(self.eval(*breaks.last().unwrap()), self.tail_pos));
        }
        if pieces.is_empty() {
            // degenerate interval: a single point
            let p = self.eval(breaks[0]);
            pieces.push(Piece::segment(p, p));
        }
        Chain { pieces }
    }
}

/// Infimum of the difference quotient for parameters on pieces `p < q`.
fn pair_infimum<T: Real>(p: &CurvePiece<T>, q: &CurvePiece<T>, scale: T) -> T {
    let mut best = T::infinity();
    let adjacent = p.hi == q.lo;
    let zero_tol = lit::<T>(1e-14) * scale;
    // one parameter pinned, the other moving with velocity `v`:
    // f(b) - f(a) = e0 + v D with D = b - a in [d_lo, d_hi], i.e. |e0 s + v| for s = 1/D
    let edge = |e0: C<T>, v: C<T>, d_lo: T, d_hi: T| -> T {
        let ee = e0.norm_sqr();
        if e0.norm() <= zero_tol {
            return v.norm();
        }
        let s_lo = if d_hi.is_infinite() { T::zero() } else { T::one() / d_hi };
        let s_hi = if d_lo <= T::zero() { T::infinity() } else { T::one() / d_lo };
        let s_star = -(e0.re * v.re + e0.im * v.im) / ee;
        let s = s_star.max(s_lo).min(s_hi);
        if s.is_infinite() {
            return T::infinity();
        }
        (e0 * s + v).norm()
    };
    // a pinned at an end of p, b moving on q
    for a in [p.lo, p.hi] {
        if a.is_finite() {
            let e0 = q.eval(a) - p.eval(a);
            best = best.min(edge(e0, q.vel, q.lo - a, q.hi - a));
        }
    }
    // b pinned at an end of q, a moving on p
    for b in [q.lo, q.hi] {
        if b.is_finite() {
            let e0 = q.eval(b) - p.eval(b);
            best = best.min(edge(e0, p.vel, b - p.hi, b - p.lo));
        }
    }
    let mix_min = |u: C<T>, v: C<T>| -> T {
        let d = v - u;
        let dd = d.norm_sqr();
        let lam = if dd == T::zero() {
            T::zero()
        } else {
            (-(u.re * d.re + u.im * d.im) / dd).max(T::zero()).min(T::one())
        };
        (u + d * lam).norm()
    };
    if adjacent {
        best = best.min(mix_min(p.vel, q.vel));
    }
    if p.lo.is_infinite() && q.hi.is_infinite() {
        best = best.min(mix_min(p.vel, q.vel));
    }
    best
}

/// A connected sub-polyline of the curve, possibly ending in rays.
#[derive(Debug, Clone, PartialEq)]
pub struct Chain<T> {
    pub pieces: Vec<Piece<T>>,
}

impl<T: Real> Chain<T> {
    pub fn is_bounded(&self) -> bool {
        self.pieces.iter().all(|p| !p.is_ray())
    }

    pub fn vertices(&self) -> Vec<C<T>> {
        let mut v: Vec<C<T>> = Vec::new();
        for p in &self.pieces {
            for e in p.endpoints() {
                if v.last() != Some(&e) {
                    v.push(e);
                }
            }
        }
        v
    }

    pub fn distance_to(&self, o: &Chain<T>) -> T {
        let mut best = T::infinity();
        for p in &self.pieces {
            for q in &o.pieces {
                best = best.min(p.distance_to(q));
            }
        }
        best
    }

    pub fn distance_to_point(&self, w: C<T>) -> T {
        self.pieces.iter().map(|p| p.distance(w)).fold(T::infinity(), T::min)
    }

    /// Diameter; infinite for chains containing a ray. For a polyline this is
    /// the largest vertex-to-vertex distance.
    pub fn diameter(&self) -> T {
        if !self.is_bounded() {
            return T::infinity();
        }
        let v = self.vertices();
        let mut best = T::zero();
        for i in 0..v.len() {
            for j in i + 1..v.len() {
                best = best.max((v[i] - v[j]).norm());
            }
        }
        best
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct KnotJson {
    t: f64,
    w: [f64; 2],
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CurveJson {
    knots: Vec<KnotJson>,
    tail_neg: [f64; 2],
    tail_pos: [f64; 2],
    #[serde(rename = "L", default, skip_serializing_if = "Option::is_none")]
    lip_upper: Option<f64>,
    #[serde(rename = "l", default, skip_serializing_if = "Option::is_none")]
    lip_lower: Option<f64>,
}

impl<T: Real> PolylineEmbedding<T> {
    /// Parses the curve JSON format
    /// `{"knots":[{"t":..,"w":[re,im]},..],"tail_neg":[re,im],"tail_pos":[re,im]}`.
    ///
    /// Optional `"L"` / `"l"` entries are checked against the computed
    /// constants.
    pub fn from_json_str(s: &str) -> Result<Self> {
        let raw: CurveJson = serde_json::from_str(s)?;
        let unit = |v: [f64; 2], name: &str| -> Result<C<T>> {
            let n = v[0].hypot(v[1]);
            if (n - 1.0).abs() > UNIT_TAIL_TOL {
                return Err(Error::InvalidCurve(format!("{name} must be a unit vector, has length {n}")));
            }
            Ok(C::new(lit(v[0]), lit(v[1])))
        };
        let tail_neg = unit(raw.tail_neg, "tail_neg")?;
        let tail_pos = unit(raw.tail_pos, "tail_pos")?;
        let knots = raw
            .knots
            .iter()
            .map(|k| Knot::new(lit(k.t), C::new(lit(k.w[0]), lit(k.w[1]))))
            .collect();
        let curve = Self::new(knots, tail_neg, tail_pos)?;
        curve.validate_constants(raw.lip_upper.map(lit), raw.lip_lower.map(lit))?;
        Ok(curve)
    }

    pub fn to_json_string(&self) -> String {
        let raw = CurveJson {
            knots: self
                .knots
                .iter()
                .map(|k| KnotJson { t: to_f64(k.t), w: [to_f64(k.w.re), to_f64(k.w.im)] })
                .collect(),
            tail_neg: [to_f64(self.tail_neg.re), to_f64(self.tail_neg.im)],
            tail_pos: [to_f64(self.tail_pos.re), to_f64(self.tail_pos.im)],
            lip_upper: None,
            lip_lower: None,
        };
        serde_json::to_string(&raw).expect("plain data serializes")
    }
}
