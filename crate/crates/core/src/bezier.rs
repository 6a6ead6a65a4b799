//! Bezier vessel segments: evaluation, differentiation, curvature, and
//! rasterization into binary masks.
//!
//! Curves carry a linear half-width profile so one segment describes a
//! tapering vessel tube, not just a centerline.

use crate::error::{Error, Result};
use crate::geom::Point2;
use crate::raster::RasterMask;
use serde::{Deserialize, Serialize};

/// Supported polynomial orders (4, 5, or 6 control points).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CurveOrder {
    Cubic,
    Quartic,
    Quintic,
}

impl CurveOrder {
    pub fn degree(self) -> usize {
        match self {
            CurveOrder::Cubic => 3,
            CurveOrder::Quartic => 4,
            CurveOrder::Quintic => 5,
        }
    }

    pub fn control_point_count(self) -> usize {
        self.degree() + 1
    }

    pub fn from_degree(degree: u32) -> Result<Self> {
        match degree {
            3 => Ok(CurveOrder::Cubic),
            4 => Ok(CurveOrder::Quartic),
            5 => Ok(CurveOrder::Quintic),
            other => Err(Error::ControlPointCount(other as usize + 1)),
        }
    }
}

/// Minimum half-width actually stamped during rasterization. Thinner strokes
/// would break 8-connectivity across diagonal runs.
pub const MIN_RASTER_HALF_WIDTH: f64 = 0.75;

/// Maximum chord deviation allowed when flattening a curve to a polyline.
pub const FLATTEN_TOLERANCE: f64 = 0.25;

/// A Bezier curve of degree 3-5 with a linearly tapering half-width.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BezierCurve {
    control_points: Vec<Point2>,
    width_start: f64,
    width_end: f64,
}

/// Result of rasterizing one curve.
#[derive(Debug, Clone)]
pub struct CurveRaster {
    pub mask: RasterMask,
    /// Set when no pixel was covered (curve entirely outside the canvas).
    pub empty: bool,
}

impl BezierCurve {
    /// Build a curve, enforcing 4-6 finite control points and a tapering
    /// width profile `width_start >= width_end > 0`.
    pub fn new(control_points: Vec<Point2>, width_start: f64, width_end: f64) -> Result<Self> {
        let curve = BezierCurve {
            control_points,
            width_start,
            width_end,
        };
        curve.validate()?;
        Ok(curve)
    }

    pub fn validate(&self) -> Result<()> {
        if !(4..=6).contains(&self.control_points.len()) {
            return Err(Error::ControlPointCount(self.control_points.len()));
        }
        for (i, p) in self.control_points.iter().enumerate() {
            if !p.is_finite() {
                return Err(Error::NonFinitePoint(i));
            }
        }
        if !(self.width_start.is_finite()
            && self.width_end.is_finite()
            && self.width_start >= self.width_end
            && self.width_end > 0.0)
        {
            return Err(Error::WidthProfile {
                start: self.width_start,
                end: self.width_end,
            });
        }
        Ok(())
    }

    pub fn control_points(&self) -> &[Point2] {
        &self.control_points
    }

    pub fn degree(&self) -> usize {
        self.control_points.len() - 1
    }

    pub fn width_start(&self) -> f64 {
        self.width_start
    }

    pub fn width_end(&self) -> f64 {
        self.width_end
    }

    /// Half-width at parameter `t` (linear in `t`).
    pub fn width_at(&self, t: f64) -> f64 {
        self.width_start + (self.width_end - self.width_start) * t
    }

    pub fn start(&self) -> Point2 {
        self.control_points[0]
    }

    pub fn end(&self) -> Point2 {
        *self.control_points.last().unwrap()
    }

    /// Replace one control point (used by the fitting optimizers).
    pub fn set_control_point(&mut self, index: usize, p: Point2) {
        self.control_points[index] = p;
    }

    pub fn set_widths(&mut self, width_start: f64, width_end: f64) -> Result<()> {
        let old = (self.width_start, self.width_end);
        self.width_start = width_start;
        self.width_end = width_end;
        if let Err(e) = self.validate() {
            self.width_start = old.0;
            self.width_end = old.1;
            return Err(e);
        }
        Ok(())
    }

    fn check_t(t: f64) -> Result<()> {
        if !(0.0..=1.0).contains(&t) {
            return Err(Error::ParamOutOfRange(t));
        }
        Ok(())
    }

    /// Evaluate the Bernstein form at `t` in `[0, 1]`.
    pub fn evaluate(&self, t: f64) -> Result<Point2> {
        Self::check_t(t)?;
        Ok(self.evaluate_unchecked(t))
    }

    pub(crate) fn evaluate_unchecked(&self, t: f64) -> Point2 {
        bernstein_point(&self.control_points, t)
    }

    /// Evaluate by repeated linear interpolation (de Casteljau). Serves as an
    /// independent check of the Bernstein evaluation path.
    pub fn evaluate_de_casteljau(&self, t: f64) -> Result<Point2> {
        Self::check_t(t)?;
        let mut points = self.control_points.clone();
        let mut n = points.len();
        while n > 1 {
            for i in 0..n - 1 {
                points[i] = points[i].lerp(points[i + 1], t);
            }
            n -= 1;
        }
        Ok(points[0])
    }

    /// Analytic first or second derivative vector at `t`.
    pub fn derivative(&self, t: f64, order: u32) -> Result<Point2> {
        Self::check_t(t)?;
        match order {
            1 => Ok(self.first_derivative(t)),
            2 => Ok(self.second_derivative(t)),
            other => Err(Error::DerivativeOrder(other)),
        }
    }

    fn first_derivative(&self, t: f64) -> Point2 {
        let n = self.degree() as f64;
        let hodograph: Vec<Point2> = self
            .control_points
            .windows(2)
            .map(|w| w[1] - w[0])
            .collect();
        bernstein_point(&hodograph, t) * n
    }

    fn second_derivative(&self, t: f64) -> Point2 {
        let n = self.degree() as f64;
        let second: Vec<Point2> = self
            .control_points
            .windows(3)
            .map(|w| w[2] - w[1] * 2.0 + w[0])
            .collect();
        bernstein_point(&second, t) * (n * (n - 1.0))
    }

    /// Signed-magnitude curvature `|x'y'' - y'x''| / |B'|^3`, in 1/pixels.
    pub fn curvature(&self, t: f64) -> Result<f64> {
        Self::check_t(t)?;
        let d1 = self.first_derivative(t);
        let d2 = self.second_derivative(t);
        let speed = d1.norm();
        if speed <= 1e-12 {
            return Err(Error::DegenerateTangent(speed));
        }
        Ok(d1.cross(d2).abs() / (speed * speed * speed))
    }

    /// Tangent direction angle at `t`, in `(-pi, pi]`.
    pub fn tangent_angle(&self, t: f64) -> Result<f64> {
        let d1 = self.derivative(t, 1)?;
        if d1.norm() <= 1e-12 {
            return Err(Error::DegenerateTangent(d1.norm()));
        }
        Ok(d1.angle())
    }

    /// Adaptive polyline flattening. Returns `(t, point)` samples whose
    /// chords deviate from the curve by less than `tolerance`.
    pub fn flatten(&self, tolerance: f64) -> Vec<(f64, Point2)> {
        let mut samples = vec![(0.0, self.start())];
        flatten_recursive(&self.control_points, 0.0, 1.0, tolerance, 0, &mut samples);
        samples
    }

    /// Polyline arc length at flattening tolerance `FLATTEN_TOLERANCE / 4`.
    pub fn arc_length(&self) -> f64 {
        let samples = self.flatten(FLATTEN_TOLERANCE / 4.0);
        samples
            .windows(2)
            .map(|w| (w[1].1 - w[0].1).norm())
            .sum()
    }

    /// Rasterize the vessel tube onto a `width x height` canvas.
    ///
    /// A pixel is foreground when its center lies within the interpolated
    /// half-width of the flattened centerline. The stamped half-width is
    /// floored at [`MIN_RASTER_HALF_WIDTH`].
    pub fn rasterize(&self, width: u32, height: u32) -> Result<CurveRaster> {
        if width < 8 || height < 8 {
            return Err(Error::CanvasTooSmall(width, height));
        }
        let mut mask = RasterMask::new(width, height);
        self.rasterize_into(&mut mask);
        let empty = mask.is_empty();
        Ok(CurveRaster { mask, empty })
    }

    /// Stamp the tube into an existing mask (no canvas-size check).
    pub(crate) fn rasterize_into(&self, mask: &mut RasterMask) {
        self.rasterize_collecting(mask, &mut |_, _| {});
    }

    /// Stamp the tube into a scratch mask, reporting each newly set pixel.
    /// The caller can undo the scratch afterwards, which keeps incremental
    /// optimizers from re-clearing whole canvases.
    pub(crate) fn rasterize_collect(&self, scratch: &mut RasterMask) -> Vec<(u32, u32)> {
        let mut pixels = Vec::new();
        self.rasterize_collecting(scratch, &mut |x, y| pixels.push((x, y)));
        pixels
    }

    fn rasterize_collecting(&self, mask: &mut RasterMask, on_new: &mut impl FnMut(u32, u32)) {
        let samples = self.flatten(FLATTEN_TOLERANCE);
        if samples.len() == 1 || self.arc_length() < 1e-9 {
            let r = self.width_start.max(MIN_RASTER_HALF_WIDTH);
            stamp_capsule(mask, self.start(), self.start(), r, r, on_new);
            return;
        }
        for pair in samples.windows(2) {
            let (t0, a) = pair[0];
            let (t1, b) = pair[1];
            let r0 = self.width_at(t0).max(MIN_RASTER_HALF_WIDTH);
            let r1 = self.width_at(t1).max(MIN_RASTER_HALF_WIDTH);
            stamp_capsule(mask, a, b, r0, r1, on_new);
        }
    }
}

fn binomial_row(n: usize) -> &'static [f64] {
    match n {
        1 => &[1.0, 1.0],
        2 => &[1.0, 2.0, 1.0],
        3 => &[1.0, 3.0, 3.0, 1.0],
        4 => &[1.0, 4.0, 6.0, 4.0, 1.0],
        5 => &[1.0, 5.0, 10.0, 10.0, 5.0, 1.0],
        _ => unreachable!("degree outside 1..=5"),
    }
}

/// Weighted Bernstein combination of an arbitrary point set (degree 1-5).
fn bernstein_point(points: &[Point2], t: f64) -> Point2 {
    let n = points.len() - 1;
    if n == 0 {
        return points[0];
    }
    let coefficients = binomial_row(n);
    let u = 1.0 - t;
    let mut acc = Point2::ZERO;
    let mut t_pow = 1.0;
    // u^(n-i) precomputed from the highest power down, single pass
    let mut u_pows = vec![1.0; n + 1];
    for i in (0..n).rev() {
        u_pows[i] = u_pows[i + 1] * u;
    }
    for (i, p) in points.iter().enumerate() {
        acc = acc + *p * (coefficients[i] * u_pows[i] * t_pow);
        t_pow *= t;
    }
    acc
}

fn flatten_recursive(
    points: &[Point2],
    t0: f64,
    t1: f64,
    tolerance: f64,
    depth: u32,
    out: &mut Vec<(f64, Point2)>,
) {
    if depth >= 24 || control_polygon_flatness(points) <= tolerance {
        out.push((t1, *points.last().unwrap()));
        return;
    }
    let (left, right) = split_half(points);
    let tm = 0.5 * (t0 + t1);
    flatten_recursive(&left, t0, tm, tolerance, depth + 1, out);
    flatten_recursive(&right, tm, t1, tolerance, depth + 1, out);
}

/// Max distance from interior control points to the endpoint chord.
fn control_polygon_flatness(points: &[Point2]) -> f64 {
    let a = points[0];
    let b = *points.last().unwrap();
    let chord = b - a;
    let len2 = chord.dot(chord);
    points[1..points.len() - 1]
        .iter()
        .map(|&p| {
            if len2 <= 1e-18 {
                (p - a).norm()
            } else {
                (p - a).cross(chord).abs() / len2.sqrt()
            }
        })
        .fold(0.0, f64::max)
}

/// de Casteljau subdivision at t = 1/2.
fn split_half(points: &[Point2]) -> (Vec<Point2>, Vec<Point2>) {
    let n = points.len();
    let mut levels = points.to_vec();
    let mut left = Vec::with_capacity(n);
    let mut right = vec![Point2::ZERO; n];
    left.push(levels[0]);
    right[n - 1] = levels[n - 1];
    let mut m = n;
    while m > 1 {
        for i in 0..m - 1 {
            levels[i] = levels[i].lerp(levels[i + 1], 0.5);
        }
        m -= 1;
        left.push(levels[0]);
        right[m - 1] = levels[m - 1];
    }
    (left, right)
}

/// Mark every pixel whose center lies within the linearly interpolated
/// radius of segment `a -> b`, reporting pixels that flip to foreground.
fn stamp_capsule(
    mask: &mut RasterMask,
    a: Point2,
    b: Point2,
    ra: f64,
    rb: f64,
    on_new: &mut impl FnMut(u32, u32),
) {
    let r_max = ra.max(rb);
    let min_x = (a.x.min(b.x) - r_max).floor().max(0.0) as i64;
    let max_x = (a.x.max(b.x) + r_max).ceil().min(mask.width() as f64 - 1.0) as i64;
    let min_y = (a.y.min(b.y) - r_max).floor().max(0.0) as i64;
    let max_y = (a.y.max(b.y) + r_max).ceil().min(mask.height() as f64 - 1.0) as i64;
    if min_x > max_x || min_y > max_y {
        return;
    }
    let ab = b - a;
    let len2 = ab.dot(ab);
    for y in min_y..=max_y {
        for x in min_x..=max_x {
            let p = Point2::new(x as f64, y as f64);
            let s = if len2 <= 1e-18 {
                0.0
            } else {
                ((p - a).dot(ab) / len2).clamp(0.0, 1.0)
            };
            let closest = a.lerp(b, s);
            let radius = ra + (rb - ra) * s;
            if p.distance(closest) <= radius && !mask.get(x as u32, y as u32) {
                mask.set(x as u32, y as u32, true);
                on_new(x as u32, y as u32);
            }
        }
    }
}
