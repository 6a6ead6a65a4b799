//! Fitting the curve model to an existing vessel mask.
//!
//! The target is skeletonized, curves are chained along the skeleton's
//! branch decomposition with widths seeded from the distance transform, and
//! then every interior control point and width is refined by greedy
//! coordinate descent on IOU against the target.

use crate::bezier::{BezierCurve, CurveOrder};
use crate::error::{Error, Result};
use crate::geom::Point2;
use crate::metrics;
use crate::raster::{distance_transform, skeletonize, RasterMask};
use crate::rng::stream_for_path;
use crate::skeleton::SkeletonRaster;
use crate::synthesis::{
    chord_curve, pixel_point, refine_alignment, sample_span_end, OrientationField,
};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// RNG domain tag separating fit placement draws from synthesis draws.
const FIT_STREAM_TAG: u32 = 0x666974;

/// Hard cap on placed curves, independent of the optimizer budget.
const MAX_FIT_CURVES: usize = 4096;

/// Default tangent-alignment tolerance during placement, radians.
const FIT_ANGLE_TOLERANCE: f64 = 0.2;

/// Coordinate-descent schedule for the IOU refinement stage.
const REFINE_INITIAL_STEP: f64 = 2.0;
const REFINE_MIN_STEP: f64 = 0.05;
const REFINE_MIN_SWEEP_GAIN: f64 = 1e-4;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FitParams {
    pub curve_order: CurveOrder,
    /// Maximum refinement objective evaluations.
    pub budget: usize,
    /// Fraction of skeleton pixels the initial placement must cover.
    pub coverage_target: f64,
    pub seed: u64,
}

impl Default for FitParams {
    fn default() -> Self {
        FitParams {
            curve_order: CurveOrder::Cubic,
            budget: 2000,
            coverage_target: 1.0,
            seed: 0,
        }
    }
}

impl FitParams {
    pub fn validate(&self) -> Result<()> {
        if self.budget < 1 {
            return Err(Error::InvalidParams("budget must be >= 1".into()));
        }
        if !(self.coverage_target > 0.0 && self.coverage_target <= 1.0) {
            return Err(Error::InvalidParams(format!(
                "coverage_target {} outside (0, 1]",
                self.coverage_target
            )));
        }
        Ok(())
    }
}

/// Fitted curve set with its rendering and scores.
#[derive(Debug, Clone)]
pub struct FitReport {
    pub curves: Vec<BezierCurve>,
    pub rendered: RasterMask,
    pub iou: f64,
    pub ssim: f64,
    pub mse: f64,
    pub iterations_used: usize,
    /// IOU after the initial placement and after each accepted step;
    /// non-decreasing by construction.
    pub iou_trace: Vec<f64>,
}

/// Fit the curve model to `target`.
pub fn fit(target: &RasterMask, params: &FitParams) -> Result<FitReport> {
    params.validate()?;
    if target.is_empty() {
        return Err(Error::EmptyMask("fit target has no foreground"));
    }
    let mut skeleton = SkeletonRaster::from_mask(&skeletonize(target));
    let dt = distance_transform(target);
    extend_skeleton_tips(&mut skeleton, target, &dt);
    let field = OrientationField::new(&skeleton.mask);
    // Half-width at a chain offset: distance transform averaged over a small
    // pixel run, since single-pixel reads are inflated inside junction
    // overlaps and deflated at tips. Center-to-center distance to background
    // overshoots the half-width by half a pixel.
    let width_near = |pixels: &[(u32, u32)], idx: usize| -> f64 {
        let lo = idx.saturating_sub(2);
        let hi = (idx + 2).min(pixels.len() - 1);
        let mut sum = 0.0;
        for &(x, y) in &pixels[lo..=hi] {
            sum += dt[(y * target.width() + x) as usize];
        }
        (sum / (hi - lo + 1) as f64 - 0.5).max(0.5)
    };

    // initial placement along the skeleton chains
    let mut curves: Vec<BezierCurve> = Vec::new();
    // (start movable, end movable): chain-interior joints stay shared
    // between consecutive curves; only free branch tips may be polished by
    // the IOU stage.
    let mut movable: Vec<(bool, bool)> = Vec::new();
    let neighbor_count = |x: u32, y: u32| -> usize {
        let mut n = 0;
        for dy in -1i64..=1 {
            for dx in -1i64..=1 {
                if (dx != 0 || dy != 0) && skeleton.mask.get_i(x as i64 + dx, y as i64 + dy) {
                    n += 1;
                }
            }
        }
        n
    };
    let mut uncovered: Vec<(u32, u32)> = skeleton.mask.foreground_pixels().collect();
    let total_skeleton = uncovered.len();
    let coverage_goal = (params.coverage_target * total_skeleton as f64).ceil() as usize;
    let mut stamp = RasterMask::new(target.width(), target.height());
    'chains: for chain in &skeleton.chains {
        if chain.pixels.len() < 2 {
            continue;
        }
        let head = chain.pixels[0];
        let tail = *chain.pixels.last().unwrap();
        let head_free = neighbor_count(head.0, head.1) <= 1;
        let tail_free = neighbor_count(tail.0, tail.1) <= 1;
        let mut rng = stream_for_path(params.seed, &[FIT_STREAM_TAG, chain.node_id as u32]);
        let mut cursor = 0usize;
        while let Some(end_idx) = sample_span_end(chain.pixels.len(), cursor, &mut rng) {
            let start = pixel_point(chain.pixels[cursor]);
            let end = pixel_point(chain.pixels[end_idx]);
            let w_start = width_near(&chain.pixels, cursor);
            let w_end = width_near(&chain.pixels, end_idx);
            let mut curve = chord_curve(
                start,
                end,
                params.curve_order,
                w_start.max(w_end),
                w_start.min(w_end),
            );
            refine_alignment(&mut curve, &field, FIT_ANGLE_TOLERANCE);
            let mut ends_movable = (
                cursor == 0 && head_free,
                end_idx + 1 == chain.pixels.len() && tail_free,
            );
            if w_end > w_start {
                // keep the fat end at t=0 so the linear taper follows the
                // measured widths
                let reversed: Vec<Point2> =
                    curve.control_points().iter().rev().copied().collect();
                curve = BezierCurve::new(reversed, w_end.max(w_start), w_end.min(w_start))
                    .expect("reversal preserves validity");
                ends_movable = (ends_movable.1, ends_movable.0);
            }
            curve.rasterize_into(&mut stamp);
            curves.push(curve);
            movable.push(ends_movable);
            cursor = end_idx;
            uncovered.retain(|&(x, y)| !stamp.get(x, y));
            if total_skeleton - uncovered.len() >= coverage_goal
                || curves.len() >= MAX_FIT_CURVES
            {
                break 'chains;
            }
        }
    }
    if curves.is_empty() {
        return Err(Error::EmptyMask("target skeleton yields no curves"));
    }

    // IOU coordinate descent over interior control points and widths
    let mut optimizer = IouOptimizer::new(target, &curves);
    let mut iou_trace = vec![optimizer.iou()];
    let mut step = REFINE_INITIAL_STEP;
    let mut iterations_used = 0usize;
    let mut accepted_since_restart = false;
    'refine: loop {
        if step < REFINE_MIN_STEP {
            // restart the schedule once progress was made at fine steps
            if !accepted_since_restart {
                break;
            }
            accepted_since_restart = false;
            step = REFINE_INITIAL_STEP * 0.5;
        }
        let sweep_start_iou = optimizer.iou();
        let mut accepted_any = false;
        for curve_idx in 0..optimizer.curve_count() {
            let degree = optimizer.curve(curve_idx).degree();
            // interior control points, plus endpoints at free branch tips
            let mut point_indices: Vec<usize> = (1..degree).collect();
            if movable[curve_idx].0 {
                point_indices.push(0);
            }
            if movable[curve_idx].1 {
                point_indices.push(degree);
            }
            for point_idx in point_indices {
                for (dx, dy) in [(step, 0.0), (-step, 0.0), (0.0, step), (0.0, -step)] {
                    if iterations_used >= params.budget {
                        break 'refine;
                    }
                    iterations_used += 1;
                    let accepted = optimizer.try_move(curve_idx, |c| {
                        let p = c.control_points()[point_idx] + Point2::new(dx, dy);
                        if point_idx == 0 || point_idx == degree {
                            // tip endpoints must stay anchored on the vessel
                            match p.round_to_pixel(target.width(), target.height()) {
                                Some((x, y)) if target.get(x, y) => {}
                                _ => return false,
                            }
                        }
                        c.set_control_point(point_idx, p);
                        true
                    });
                    if accepted {
                        accepted_any = true;
                        iou_trace.push(optimizer.iou());
                    }
                }
            }
            // widths, at a quarter of the geometric step
            let wstep = step * 0.25;
            for (ds, de) in [(wstep, 0.0), (-wstep, 0.0), (0.0, wstep), (0.0, -wstep)] {
                if iterations_used >= params.budget {
                    break 'refine;
                }
                iterations_used += 1;
                let accepted = optimizer.try_move(curve_idx, |c| {
                    c.set_widths(c.width_start() + ds, c.width_end() + de).is_ok()
                });
                if accepted {
                    accepted_any = true;
                    iou_trace.push(optimizer.iou());
                }
            }
        }
        if accepted_any {
            accepted_since_restart = true;
        }
        // A sweep that gains less than the threshold at this step size moves
        // to finer steps; the loop head stops once the whole schedule is
        // exhausted without progress.
        if !accepted_any || optimizer.iou() - sweep_start_iou < REFINE_MIN_SWEEP_GAIN {
            step *= 0.5;
        }
    }

    let (curves, rendered) = optimizer.finish();
    let iou = metrics::iou(&rendered, target)?;
    let ssim = metrics::ssim(&rendered, target)?;
    let mse = metrics::mse(&rendered, target)?;
    debug_assert!(iou + 1e-12 >= iou_trace[0], "refinement regressed");
    Ok(FitReport {
        curves,
        rendered,
        iou,
        ssim,
        mse,
        iterations_used,
        iou_trace,
    })
}

/// Restore thinning-retracted branch tips.
///
/// Zhang-Suen thinning pulls the ends of a tube's medial line inward by
/// roughly the local half-width, so curves anchored to raw skeleton tips can
/// never cover the tube's end caps. Each free tip is extended along its own
/// direction, one pixel at a time, while it remains inside the target mask;
/// extended pixels are centerline pixels of the target in the same sense as
/// the thinned ones.
fn extend_skeleton_tips(skeleton: &mut SkeletonRaster, target: &RasterMask, dt: &[f64]) {
    let (w, h) = (target.width(), target.height());
    let neighbor_count = |mask: &RasterMask, x: u32, y: u32| -> usize {
        let mut n = 0;
        for dy in -1i64..=1 {
            for dx in -1i64..=1 {
                if (dx != 0 || dy != 0) && mask.get_i(x as i64 + dx, y as i64 + dy) {
                    n += 1;
                }
            }
        }
        n
    };
    for chain_idx in 0..skeleton.chains.len() {
        for front in [false, true] {
            let pixels = &skeleton.chains[chain_idx].pixels;
            if pixels.len() < 2 {
                continue;
            }
            let (tip, inner) = if front {
                let k = pixels.len().min(6) - 1;
                (pixels[0], pixels[k])
            } else {
                let k = pixels.len() - pixels.len().min(6);
                (pixels[pixels.len() - 1], pixels[k])
            };
            if neighbor_count(&skeleton.mask, tip.0, tip.1) > 1 {
                continue; // not a free tip
            }
            let tip_point = pixel_point(tip);
            let dir = tip_point - pixel_point(inner);
            if dir.norm() < 1e-9 {
                continue;
            }
            let mut dir = dir * (1.0 / dir.norm());
            // Follow the distance-transform ridge outward: among forward
            // neighbors, step onto the one with the deepest clearance. The
            // ridge tracks the tube centerline through the retracted stretch
            // and crests at the cap center, where the walk stops.
            let dt_at = |p: (u32, u32)| dt[(p.1 * w + p.0) as usize];
            let mut clearance = dt_at(tip);
            let mut appended: Vec<(u32, u32)> = Vec::new();
            let mut cur = tip;
            for _ in 0..64 {
                let mut best: Option<((u32, u32), f64)> = None;
                for dy in -1i64..=1 {
                    for dx in -1i64..=1 {
                        if dx == 0 && dy == 0 {
                            continue;
                        }
                        let nx = cur.0 as i64 + dx;
                        let ny = cur.1 as i64 + dy;
                        if nx < 0 || ny < 0 || nx >= w as i64 || ny >= h as i64 {
                            continue;
                        }
                        let q = (nx as u32, ny as u32);
                        if !target.get(q.0, q.1) || q == tip || appended.contains(&q) {
                            continue;
                        }
                        let step = Point2::new(dx as f64, dy as f64);
                        if step.dot(dir) / step.norm() < 0.5 {
                            continue; // outside the forward cone
                        }
                        let d = dt_at(q);
                        if best.is_none_or(|(_, bd)| d > bd) {
                            best = Some((q, d));
                        }
                    }
                }
                let Some((next, d)) = best else { break };
                if d < clearance - 0.5 {
                    break; // past the cap center
                }
                clearance = clearance.max(d);
                let step = pixel_point(next) - pixel_point(cur);
                dir = dir * 0.6 + step * (0.4 / step.norm());
                dir = dir * (1.0 / dir.norm());
                appended.push(next);
                cur = next;
            }
            if appended.is_empty() {
                continue;
            }
            let chain_id = skeleton.chains[chain_idx].node_id as i32;
            for &(x, y) in &appended {
                skeleton.mask.set(x, y, true);
                let i = (y * w + x) as usize;
                if skeleton.node_index[i] < 0 {
                    skeleton.node_index[i] = chain_id;
                }
            }
            let chain = &mut skeleton.chains[chain_idx];
            if front {
                for p in appended {
                    chain.pixels.insert(0, p);
                }
            } else {
                chain.pixels.extend(appended);
            }
        }
    }
}

/// Incremental IOU bookkeeping for per-curve edits.
struct IouOptimizer<'a> {
    target: &'a RasterMask,
    curves: Vec<BezierCurve>,
    pixel_lists: Vec<Vec<(u32, u32)>>,
    counts: Vec<u16>,
    scratch: RasterMask,
    rendered_pixels: u64,
    intersection: u64,
    target_pixels: u64,
}

impl<'a> IouOptimizer<'a> {
    fn new(target: &'a RasterMask, curves: &[BezierCurve]) -> Self {
        let mut optimizer = IouOptimizer {
            target,
            curves: curves.to_vec(),
            pixel_lists: vec![Vec::new(); curves.len()],
            counts: vec![0; (target.width() * target.height()) as usize],
            scratch: RasterMask::new(target.width(), target.height()),
            rendered_pixels: 0,
            intersection: 0,
            target_pixels: target.count_foreground() as u64,
        };
        for i in 0..optimizer.curves.len() {
            let pixels = optimizer.collect_pixels(i);
            optimizer.add_pixels(&pixels);
            optimizer.pixel_lists[i] = pixels;
        }
        optimizer
    }

    fn collect_pixels(&mut self, curve_idx: usize) -> Vec<(u32, u32)> {
        let pixels = self.curves[curve_idx].rasterize_collect(&mut self.scratch);
        for &(x, y) in &pixels {
            self.scratch.set(x, y, false);
        }
        pixels
    }

    fn add_pixels(&mut self, pixels: &[(u32, u32)]) {
        for &(x, y) in pixels {
            let i = (y * self.target.width() + x) as usize;
            self.counts[i] += 1;
            if self.counts[i] == 1 {
                self.rendered_pixels += 1;
                if self.target.get(x, y) {
                    self.intersection += 1;
                }
            }
        }
    }

    fn remove_pixels(&mut self, pixels: &[(u32, u32)]) {
        for &(x, y) in pixels {
            let i = (y * self.target.width() + x) as usize;
            self.counts[i] -= 1;
            if self.counts[i] == 0 {
                self.rendered_pixels -= 1;
                if self.target.get(x, y) {
                    self.intersection -= 1;
                }
            }
        }
    }

    fn iou(&self) -> f64 {
        let union = self.target_pixels + self.rendered_pixels - self.intersection;
        if union == 0 {
            1.0
        } else {
            self.intersection as f64 / union as f64
        }
    }

    fn curve_count(&self) -> usize {
        self.curves.len()
    }

    fn curve(&self, idx: usize) -> &BezierCurve {
        &self.curves[idx]
    }

    /// Apply `mutate` to a copy of the curve; keep it only if IOU strictly
    /// improves. Returns whether the move was accepted.
    fn try_move(&mut self, curve_idx: usize, mutate: impl FnOnce(&mut BezierCurve) -> bool) -> bool {
        let before = self.iou();
        let original = self.curves[curve_idx].clone();
        let mut candidate = original.clone();
        if !mutate(&mut candidate) {
            return false;
        }
        let old_pixels = std::mem::take(&mut self.pixel_lists[curve_idx]);
        self.remove_pixels(&old_pixels);
        self.curves[curve_idx] = candidate;
        let new_pixels = self.collect_pixels(curve_idx);
        self.add_pixels(&new_pixels);
        if self.iou() > before {
            self.pixel_lists[curve_idx] = new_pixels;
            true
        } else {
            self.remove_pixels(&new_pixels);
            self.curves[curve_idx] = original;
            self.add_pixels(&old_pixels);
            self.pixel_lists[curve_idx] = old_pixels;
            false
        }
    }

    /// Final curve set and a freshly rendered mask.
    fn finish(self) -> (Vec<BezierCurve>, RasterMask) {
        let mut rendered = RasterMask::new(self.target.width(), self.target.height());
        for curve in &self.curves {
            curve.rasterize_into(&mut rendered);
        }
        (self.curves, rendered)
    }
}

/// One aggregated row of the order-ablation table.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OrderRow {
    pub order: u32,
    pub mean_iou: f64,
    pub mean_ssim: f64,
    pub mean_mse: f64,
}

/// Mean fit scores per curve order, in the requested order.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OrderTable {
    pub rows: Vec<OrderRow>,
}

impl OrderTable {
    pub const CSV_HEADER: &'static str = "order,iou,ssim,mse";

    pub fn to_csv(&self) -> String {
        let mut out = String::from(Self::CSV_HEADER);
        out.push('\n');
        for row in &self.rows {
            out.push_str(&format!(
                "{},{:.6},{:.6},{:.6}\n",
                row.order, row.mean_iou, row.mean_ssim, row.mean_mse
            ));
        }
        out
    }

    pub fn mean_iou_for(&self, order: u32) -> Option<f64> {
        self.rows.iter().find(|r| r.order == order).map(|r| r.mean_iou)
    }
}

/// Fit every target with every order and average the scores per order.
/// Pairs are fitted in parallel; outputs are deterministic in
/// `(targets, orders, params)`.
pub fn compare_orders(
    targets: &[RasterMask],
    orders: &[CurveOrder],
    params: &FitParams,
) -> Result<OrderTable> {
    if targets.is_empty() {
        return Err(Error::InvalidParams("compare_orders needs at least one target".into()));
    }
    if orders.is_empty() {
        return Err(Error::InvalidParams("compare_orders needs at least one order".into()));
    }
    params.validate()?;
    let jobs: Vec<(usize, usize)> = (0..orders.len())
        .flat_map(|o| (0..targets.len()).map(move |t| (o, t)))
        .collect();
    let reports: Vec<(usize, FitReport)> = jobs
        .par_iter()
        .map(|&(o, t)| {
            let job_params = FitParams {
                curve_order: orders[o],
                ..params.clone()
            };
            fit(&targets[t], &job_params).map(|r| (o, r))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut rows = Vec::with_capacity(orders.len());
    for (o, order) in orders.iter().enumerate() {
        let group: Vec<&FitReport> = reports
            .iter()
            .filter(|(idx, _)| *idx == o)
            .map(|(_, r)| r)
            .collect();
        let n = group.len() as f64;
        rows.push(OrderRow {
            order: order.degree() as u32,
            mean_iou: group.iter().map(|r| r.iou).sum::<f64>() / n,
            mean_ssim: group.iter().map(|r| r.ssim).sum::<f64>() / n,
            mean_mse: group.iter().map(|r| r.mse).sum::<f64>() / n,
        });
    }
    Ok(OrderTable { rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::skeleton::SkeletonParams;
    use crate::synthesis::{generate_sample, SynthesisParams};

    fn small_sample(seed: u64) -> RasterMask {
        let skel = SkeletonParams {
            max_depth: 4,
            root_position: Point2::new(128.0, 128.0),
            root_length: 60.0,
            canvas_width: 256,
            canvas_height: 256,
            seed,
            ..SkeletonParams::default()
        };
        let synth = SynthesisParams {
            width_root: 3.5,
            seed,
            ..SynthesisParams::default()
        };
        generate_sample(&skel, &synth).unwrap().0.mask
    }

    #[test]
    fn fit_empty_target_is_domain_error() {
        let empty = RasterMask::new(64, 64);
        assert!(matches!(
            fit(&empty, &FitParams::default()),
            Err(Error::EmptyMask(_))
        ));
    }

    #[test]
    fn fit_recovers_self_generated_target() {
        let target = small_sample(3);
        let report = fit(&target, &FitParams::default()).unwrap();
        assert!(
            report.iou >= 0.90,
            "self-recovery IOU {} below 0.90",
            report.iou
        );
        assert_eq!(report.iou, metrics::iou(&report.rendered, &target).unwrap());
    }

    #[test]
    fn fit_trace_is_non_decreasing() {
        let target = small_sample(8);
        let report = fit(&target, &FitParams { budget: 600, ..FitParams::default() }).unwrap();
        for pair in report.iou_trace.windows(2) {
            assert!(pair[1] >= pair[0], "trace regressed: {:?}", pair);
        }
        assert!(report.iterations_used <= 600);
        assert!(report.iou >= report.iou_trace[0]);
    }

    #[test]
    fn fit_endpoints_anchor_to_centerline_pixels() {
        // Endpoints sit on the (tip-restored) skeleton, which dilates the
        // thinned medial line by at most the local half-width; every anchor
        // must in particular be a target foreground pixel near the thinned
        // skeleton.
        let target = small_sample(5);
        let skeleton = skeletonize(&target);
        let near = crate::raster::dilate(&skeleton, 14);
        let report = fit(&target, &FitParams { budget: 50, ..FitParams::default() }).unwrap();
        for curve in &report.curves {
            for endpoint in [curve.start(), curve.end()] {
                let (x, y) = endpoint
                    .round_to_pixel(target.width(), target.height())
                    .unwrap();
                assert!(target.get(x, y), "endpoint {endpoint:?} off target");
                assert!(near.get(x, y), "endpoint {endpoint:?} far from skeleton");
            }
        }
    }

    #[test]
    fn fit_is_deterministic() {
        let target = small_sample(11);
        let params = FitParams { budget: 400, ..FitParams::default() };
        let a = fit(&target, &params).unwrap();
        let b = fit(&target, &params).unwrap();
        assert_eq!(a.curves, b.curves);
        assert_eq!(a.rendered, b.rendered);
        assert_eq!(a.iou, b.iou);
        assert_eq!(a.iou_trace, b.iou_trace);
    }

    #[test]
    fn refit_of_rendered_output_is_near_perfect() {
        let target = small_sample(2);
        let first = fit(&target, &FitParams::default()).unwrap();
        let second = fit(&first.rendered, &FitParams::default()).unwrap();
        assert!(
            second.iou >= 0.99,
            "fixpoint refit IOU {} below 0.99",
            second.iou
        );
    }

    #[test]
    fn compare_orders_shapes_and_ranges() {
        let targets: Vec<RasterMask> = (0..2).map(small_sample).collect();
        let orders = [CurveOrder::Cubic, CurveOrder::Quartic, CurveOrder::Quintic];
        let params = FitParams { budget: 300, ..FitParams::default() };
        let table = compare_orders(&targets, &orders, &params).unwrap();
        assert_eq!(table.rows.len(), 3);
        assert_eq!(
            table.rows.iter().map(|r| r.order).collect::<Vec<_>>(),
            vec![3, 4, 5]
        );
        for row in &table.rows {
            assert!((0.0..=1.0).contains(&row.mean_iou));
            assert!(row.mean_mse >= 0.0);
        }
        let csv = table.to_csv();
        assert!(csv.starts_with("order,iou,ssim,mse\n"));
        assert_eq!(csv.lines().count(), 4);
    }

    #[test]
    fn compare_orders_rejects_empty_inputs() {
        let targets: Vec<RasterMask> = vec![small_sample(0)];
        assert!(compare_orders(&[], &[CurveOrder::Cubic], &FitParams::default()).is_err());
        assert!(compare_orders(&targets, &[], &FitParams::default()).is_err());
    }
}
