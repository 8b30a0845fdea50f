//! Numerical checks of the lemma estimates and distortion bounds on
//! constructed maps.

pub mod arcs;
pub mod bounds;
pub mod distortion;
pub mod harmonic;
pub mod report;

use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};

pub use arcs::{boundary_arcs, chord_arc_margins, lemma_harm1_check, BoundaryArcs, Harm1};
pub use bounds::{constants_check, ConstantRow};
pub use distortion::{distortion_audit, example2_obstruction_check, DistortionReport, Example2};
pub use harmonic::{bn_bounds_check, half_plane_measure, harmonic_measure_mc, HarmonicMeasureEstimate, ParamSet};
pub use report::{Check, Report};

/// Points closer than this to the real line are skipped by grid audits.
pub const AXIS_SKIP: f64 = 1e-6;

/// Rectangular grid `x0:x1:dx, y0:y1:dy` with both ends included.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub x0: f64,
    pub x1: f64,
    pub dx: f64,
    pub y0: f64,
    pub y1: f64,
    pub dy: f64,
}

fn axis(lo: f64, hi: f64, step: f64) -> Vec<f64> {
    let n = ((hi - lo) / step + 1e-9).floor() as usize;
    (0..=n).map(|k| lo + step * k as f64).collect()
}

impl Grid {
    pub fn new(x0: f64, x1: f64, dx: f64, y0: f64, y1: f64, dy: f64) -> Result<Self> {
        let g = Self { x0, x1, dx, y0, y1, dy };
        let finite = [x0, x1, dx, y0, y1, dy].iter().all(|v| v.is_finite());
        if !finite || dx <= 0.0 || dy <= 0.0 || x1 < x0 || y1 < y0 {
            return Err(Error::Usage(format!("bad grid {x0}:{x1}:{dx},{y0}:{y1}:{dy}")));
        }
        Ok(g)
    }

    /// The square `[-h, h]^2` with step `d`.
    pub fn square(h: f64, d: f64) -> Result<Self> {
        Self::new(-h, h, d, -h, h, d)
    }

    /// Grid points in row-major order (`y` outer), without the points near
    /// the real line; the second value counts the skipped ones.
    pub fn points(&self) -> (Vec<Complex64>, usize) {
        let xs = axis(self.x0, self.x1, self.dx);
        let mut out = Vec::new();
        let mut skipped = 0;
        for y in axis(self.y0, self.y1, self.dy) {
            if y.abs() < AXIS_SKIP {
                skipped += xs.len();
                continue;
            }
            out.extend(xs.iter().map(|&x| Complex64::new(x, y)));
        }
        (out, skipped)
    }
}

impl FromStr for Grid {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Usage(format!("grid must look like x0:x1:dx,y0:y1:dy, got {s:?}"));
        let (xs, ys) = s.split_once(',').ok_or_else(bad)?;
        let parse = |part: &str| -> Result<[f64; 3]> {
            let v: Vec<f64> = part.split(':').map(|p| p.trim().parse::<f64>()).collect::<std::result::Result<_, _>>().map_err(|_| bad())?;
            <[f64; 3]>::try_from(v).map_err(|_| bad())
        };
        let [x0, x1, dx] = parse(xs)?;
        let [y0, y1, dy] = parse(ys)?;
        Self::new(x0, x1, dx, y0, y1, dy)
    }
}
