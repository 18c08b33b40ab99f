//! Sampled closed curves `t -> f(e^{it})` and the two geometry queries the
//! univalency tests are built on: self-intersection and winding number.

use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Proximity tolerance, relative to `max(1, curve extent)`.
pub const TOL_GEOM: f64 = 1e-12;
/// Smallest sample count accepted by the geometry queries.
pub const MIN_GEOMETRY_SAMPLES: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurvePoint {
    pub t: f64,
    pub w: Complex64,
}

/// Ordered samples of a (usually closed) curve.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveSamples {
    points: Vec<CurvePoint>,
    closed: bool,
}

impl CurveSamples {
    pub fn new(points: Vec<CurvePoint>, closed: bool) -> Result<Self> {
        if points.windows(2).any(|p| p[1].t <= p[0].t) {
            return Err(Error::InvalidParameter(
                "curve parameters must be strictly increasing".into(),
            ));
        }
        if let Some(bad) = points
            .iter()
            .position(|p| !(p.t.is_finite() && p.w.re.is_finite() && p.w.im.is_finite()))
        {
            return Err(Error::InvalidParameter(format!(
                "curve sample {bad} is not finite"
            )));
        }
        Ok(Self { points, closed })
    }

    /// Samples `f` at `t_k = 2 pi k / samples`, `k = 0..samples`.
    pub fn closed_from_fn(samples: usize, f: impl Fn(f64) -> Complex64) -> Result<Self> {
        Self::closed_from_fn_with_offset(samples, 0.0, f)
    }

    /// Like [`closed_from_fn`](Self::closed_from_fn) with the grid shifted by
    /// `offset` steps (`0 <= offset < 1`).
    pub fn closed_from_fn_with_offset(
        samples: usize,
        offset: f64,
        f: impl Fn(f64) -> Complex64,
    ) -> Result<Self> {
        let points = (0..samples)
            .map(|k| {
                let t = TAU * (k as f64 + offset) / samples as f64;
                CurvePoint { t, w: f(t) }
            })
            .collect();
        Self::new(points, true)
    }

    pub fn points(&self) -> &[CurvePoint] {
        &self.points
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn vertices(&self) -> Vec<Complex64> {
        self.points.iter().map(|p| p.w).collect()
    }

    /// Largest modulus over the samples, floored at 1.
    pub fn scale(&self) -> f64 {
        self.points.iter().fold(1.0_f64, |m, p| m.max(p.w.norm()))
    }

    fn segment_count(&self) -> usize {
        if self.closed {
            self.points.len()
        } else {
            self.points.len().saturating_sub(1)
        }
    }

    fn require_geometry(&self) -> Result<()> {
        if self.points.len() < MIN_GEOMETRY_SAMPLES {
            return Err(Error::InvalidParameter(format!(
                "geometry queries need at least {MIN_GEOMETRY_SAMPLES} samples, got {}",
                self.points.len()
            )));
        }
        Ok(())
    }

    /// Smallest distance from `w` to the polyline.
    pub fn distance_to(&self, w: Complex64) -> f64 {
        let n = self.points.len();
        (0..self.segment_count())
            .map(|i| {
                let a = self.points[i].w;
                let b = self.points[(i + 1) % n].w;
                point_segment_distance(w, a, b)
            })
            .fold(f64::INFINITY, f64::min)
    }
}

fn point_segment_distance(p: Complex64, a: Complex64, b: Complex64) -> f64 {
    let ab = b - a;
    let len2 = ab.norm_sqr();
    if len2 == 0.0 {
        return (p - a).norm();
    }
    let s = ((p - a).re * ab.re + (p - a).im * ab.im) / len2;
    (p - (a + ab * s.clamp(0.0, 1.0))).norm()
}

fn cross(a: Complex64, b: Complex64) -> f64 {
    a.re * b.im - a.im * b.re
}

/// Sign of the turn `a -> b -> c`. Reported as 0 when `c` is within `tol` of
/// the line through `a` and `b`, or the triple is collinear to 1e-12 relative.
fn orientation(a: Complex64, b: Complex64, c: Complex64, tol: f64) -> i8 {
    let u = b - a;
    let v = c - a;
    let d = cross(u, v);
    if d.abs() <= (1e-12 * v.norm()).max(tol) * u.norm() {
        0
    } else if d > 0.0 {
        1
    } else {
        -1
    }
}

fn crosses_transversally(
    p1: Complex64,
    p2: Complex64,
    q1: Complex64,
    q2: Complex64,
    tol: f64,
) -> bool {
    let d1 = orientation(q1, q2, p1, tol);
    let d2 = orientation(q1, q2, p2, tol);
    let d3 = orientation(p1, p2, q1, tol);
    let d4 = orientation(p1, p2, q2, tol);
    d1 * d2 < 0 && d3 * d4 < 0
}

/// All pairs `(i, j)`, `i < j`, of non-adjacent polyline segments that cross
/// transversally. Segment `i` joins samples `i` and `i + 1` (the last one wraps
/// around for a closed curve). Touching at a shared point or collinear overlap
/// is not reported; an endpoint within `TOL_GEOM` (relative to the curve scale)
/// of the other segment's line counts as touching.
pub fn self_intersections(c: &CurveSamples) -> Result<Vec<(usize, usize)>> {
    c.require_geometry()?;
    let n = c.points.len();
    let tol = TOL_GEOM * c.scale();
    let segs = c.segment_count();
    for i in 0..segs {
        let a = c.points[i].w;
        let b = c.points[(i + 1) % n].w;
        if (b - a).norm() <= tol {
            return Err(Error::DegenerateSegment {
                index: i,
                next: (i + 1) % n,
            });
        }
    }

    struct Bounds {
        x0: f64,
        x1: f64,
        y0: f64,
        y1: f64,
        idx: usize,
    }
    let mut boxes: Vec<Bounds> = (0..segs)
        .map(|i| {
            let a = c.points[i].w;
            let b = c.points[(i + 1) % n].w;
            Bounds {
                x0: a.re.min(b.re),
                x1: a.re.max(b.re),
                y0: a.im.min(b.im),
                y1: a.im.max(b.im),
                idx: i,
            }
        })
        .collect();
    boxes.sort_by(|a, b| a.x0.total_cmp(&b.x0));

    let adjacent = |i: usize, j: usize| {
        let d = i.abs_diff(j);
        d <= 1 || (c.closed && d == segs - 1)
    };

    let mut hits = Vec::new();
    for a in 0..boxes.len() {
        let ba = &boxes[a];
        for bb in boxes[a + 1..].iter().take_while(|bb| bb.x0 <= ba.x1) {
            if bb.y0 > ba.y1 || bb.y1 < ba.y0 || adjacent(ba.idx, bb.idx) {
                continue;
            }
            let (i, j) = (ba.idx, bb.idx);
            if crosses_transversally(
                c.points[i].w,
                c.points[(i + 1) % n].w,
                c.points[j].w,
                c.points[(j + 1) % n].w,
                tol,
            ) {
                hits.push((i.min(j), i.max(j)));
            }
        }
    }
    hits.sort_unstable();
    Ok(hits)
}

/// Winding number of the closed polygon `vertices` around `w` (signed
/// crossing count). No proximity check; see [`winding_number`].
pub fn polygon_winding_number(vertices: &[Complex64], w: Complex64) -> i32 {
    let n = vertices.len();
    let mut winding = 0;
    for i in 0..n {
        let a = vertices[i];
        let b = vertices[(i + 1) % n];
        let side = cross(b - a, w - a);
        if a.im <= w.im {
            if b.im > w.im && side > 0.0 {
                winding += 1;
            }
        } else if b.im <= w.im && side < 0.0 {
            winding -= 1;
        }
    }
    winding
}

/// Number of times the closed curve winds around `w`.
pub fn winding_number(c: &CurveSamples, w: Complex64) -> Result<i32> {
    c.require_geometry()?;
    let tol = TOL_GEOM * c.scale();
    if let Some((index, distance)) = c
        .points
        .iter()
        .enumerate()
        .map(|(i, p)| (i, (p.w - w).norm()))
        .find(|&(_, d)| d <= tol)
    {
        return Err(Error::PointOnCurve { index, distance });
    }
    Ok(polygon_winding_number(&c.vertices(), w))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn circle(n: usize) -> CurveSamples {
        CurveSamples::closed_from_fn(n, |t| Complex64::from_polar(1.0, t)).unwrap()
    }

    #[test]
    fn circle_is_simple() {
        assert!(self_intersections(&circle(64)).unwrap().is_empty());
    }

    #[test]
    fn figure_eight_crosses_once() {
        let c = CurveSamples::closed_from_fn_with_offset(64, 0.5, |t| {
            Complex64::new((2.0 * t).sin(), t.sin())
        })
        .unwrap();
        assert_eq!(self_intersections(&c).unwrap().len(), 1);
    }

    #[test]
    fn circle_winding() {
        let c = circle(64);
        assert_eq!(winding_number(&c, Complex64::new(0.0, 0.0)).unwrap(), 1);
        assert_eq!(winding_number(&c, Complex64::new(2.0, 0.0)).unwrap(), 0);
    }

    #[test]
    fn point_on_curve_rejected() {
        let c = circle(64);
        assert!(matches!(
            winding_number(&c, Complex64::new(1.0, 0.0)),
            Err(Error::PointOnCurve { index: 0, .. })
        ));
    }

    #[test]
    fn degenerate_segment() {
        let mut pts: Vec<CurvePoint> = circle(32).points().to_vec();
        pts[5].w = pts[4].w;
        let c = CurveSamples::new(pts, true).unwrap();
        assert!(matches!(
            self_intersections(&c),
            Err(Error::DegenerateSegment { index: 4, next: 5 })
        ));
    }

    #[test]
    fn too_few_samples() {
        assert!(self_intersections(&circle(8)).is_err());
    }

    #[test]
    fn non_increasing_parameter_rejected() {
        let p = CurvePoint {
            t: 1.0,
            w: Complex64::new(0.0, 0.0),
        };
        assert!(CurveSamples::new(vec![p, p], true).is_err());
    }

    #[test]
    fn double_loop_winds_twice() {
        let c = CurveSamples::closed_from_fn(128, |t| Complex64::from_polar(1.0, 2.0 * t)).unwrap();
        assert_eq!(winding_number(&c, Complex64::new(0.1, 0.05)).unwrap(), 2);
    }

    #[test]
    fn distance() {
        let c = circle(4096);
        assert!((c.distance_to(Complex64::new(0.0, 0.0)) - 1.0).abs() < 1e-6);
        assert!((c.distance_to(Complex64::new(3.0, 0.0)) - 2.0).abs() < 1e-12);
    }
}
