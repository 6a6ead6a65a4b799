//! Scalar mask-quality metrics: IOU, SSIM, MSE, connectivity ratio, and
//! boundary smoothness.

use crate::error::{Error, Result};
use crate::raster::{boundary_trace, connected_components, skeletonize, Connectivity, RasterMask};
use crate::tensor::Tensor2D;
use serde::{Deserialize, Serialize};

/// The full metric bundle for one predicted/reference mask pair.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MetricSet {
    pub iou: f64,
    pub ssim: f64,
    pub mse: f64,
    /// Skeleton pixels over total vascular pixels (the literal ratio).
    pub cr_literal: f64,
    /// Largest connected skeleton component over all skeleton pixels.
    pub cr_connected: f64,
    /// Mean absolute boundary curvature; lower is smoother.
    pub s_smooth: f64,
}

impl MetricSet {
    pub const CSV_HEADER: &'static str = "sample_id,iou,ssim,mse,cr_literal,cr_connected,s_smooth";

    /// One CSV row with fixed 6-decimal formatting.
    pub fn csv_row(&self, sample_id: &str) -> String {
        format!(
            "{},{:.6},{:.6},{:.6},{:.6},{:.6},{:.6}",
            sample_id, self.iou, self.ssim, self.mse, self.cr_literal, self.cr_connected, self.s_smooth
        )
    }
}

/// Intersection over union. Both-empty masks compare as identical (1.0).
pub fn iou(a: &RasterMask, b: &RasterMask) -> Result<f64> {
    a.require_same_shape(b)?;
    let mut intersection = 0u64;
    let mut union = 0u64;
    for (&pa, &pb) in a.bits().iter().zip(b.bits().iter()) {
        intersection += u64::from(pa & pb);
        union += u64::from(pa | pb);
    }
    if union == 0 {
        return Ok(1.0);
    }
    Ok(intersection as f64 / union as f64)
}

/// Mean squared difference of binary masks (equals the Hamming fraction).
pub fn mse(a: &RasterMask, b: &RasterMask) -> Result<f64> {
    a.require_same_shape(b)?;
    let differing = a
        .bits()
        .iter()
        .zip(b.bits().iter())
        .filter(|(pa, pb)| pa != pb)
        .count();
    Ok(differing as f64 / a.bits().len() as f64)
}

/// Mean squared difference of grayscale images with values in `[0, 1]`.
pub fn mse_gray(a: &Tensor2D, b: &Tensor2D) -> Result<f64> {
    a.require_same_shape(b)?;
    let sum: f64 = a
        .data()
        .iter()
        .zip(b.data().iter())
        .map(|(&x, &y)| (x - y) * (x - y))
        .sum();
    Ok(sum / a.len() as f64)
}

/// SSIM between binary masks, treated as 0/255 grayscale.
pub fn ssim(a: &RasterMask, b: &RasterMask) -> Result<f64> {
    a.require_same_shape(b)?;
    let to_tensor = |m: &RasterMask| {
        Tensor2D::new(
            m.height() as usize,
            m.width() as usize,
            m.bits().iter().map(|&v| f64::from(v) * 255.0).collect(),
        )
        .expect("mask dimensions are consistent")
    };
    ssim_gray(&to_tensor(a), &to_tensor(b))
}

const SSIM_WINDOW: usize = 11;
const SSIM_SIGMA: f64 = 1.5;
const SSIM_K1: f64 = 0.01;
const SSIM_K2: f64 = 0.03;
const SSIM_L: f64 = 255.0;

/// Mean local SSIM over an 11x11 Gaussian window (sigma 1.5), K1=0.01,
/// K2=0.03, dynamic range 255. Borders are mirror-padded.
pub fn ssim_gray(a: &Tensor2D, b: &Tensor2D) -> Result<f64> {
    a.require_same_shape(b)?;
    let (h, w) = (a.height(), a.width());
    if h < 8 || w < 8 {
        return Err(Error::ImageTooSmall(w as u32, h as u32));
    }
    let c1 = (SSIM_K1 * SSIM_L) * (SSIM_K1 * SSIM_L);
    let c2 = (SSIM_K2 * SSIM_L) * (SSIM_K2 * SSIM_L);

    let mu_a = gaussian_filter(a.data(), w, h);
    let mu_b = gaussian_filter(b.data(), w, h);
    let aa: Vec<f64> = a.data().iter().map(|&v| v * v).collect();
    let bb: Vec<f64> = b.data().iter().map(|&v| v * v).collect();
    let ab: Vec<f64> = a.data().iter().zip(b.data()).map(|(&x, &y)| x * y).collect();
    let mu_aa = gaussian_filter(&aa, w, h);
    let mu_bb = gaussian_filter(&bb, w, h);
    let mu_ab = gaussian_filter(&ab, w, h);

    let mut total = 0.0;
    for i in 0..w * h {
        let var_a = mu_aa[i] - mu_a[i] * mu_a[i];
        let var_b = mu_bb[i] - mu_b[i] * mu_b[i];
        let cov = mu_ab[i] - mu_a[i] * mu_b[i];
        let numerator = (2.0 * mu_a[i] * mu_b[i] + c1) * (2.0 * cov + c2);
        let denominator = (mu_a[i] * mu_a[i] + mu_b[i] * mu_b[i] + c1) * (var_a + var_b + c2);
        total += numerator / denominator;
    }
    Ok(total / (w * h) as f64)
}

fn gaussian_kernel() -> [f64; SSIM_WINDOW] {
    let mut kernel = [0.0; SSIM_WINDOW];
    let half = (SSIM_WINDOW / 2) as f64;
    let mut sum = 0.0;
    for (i, k) in kernel.iter_mut().enumerate() {
        let d = i as f64 - half;
        *k = (-d * d / (2.0 * SSIM_SIGMA * SSIM_SIGMA)).exp();
        sum += *k;
    }
    for k in &mut kernel {
        *k /= sum;
    }
    kernel
}

/// Mirror index for symmetric (edge-inclusive) reflection.
fn reflect(i: i64, n: i64) -> usize {
    let mut i = i;
    loop {
        if i < 0 {
            i = -i - 1;
        } else if i >= n {
            i = 2 * n - 1 - i;
        } else {
            return i as usize;
        }
    }
}

fn gaussian_filter(values: &[f64], w: usize, h: usize) -> Vec<f64> {
    let kernel = gaussian_kernel();
    let half = SSIM_WINDOW as i64 / 2;
    let mut horizontal = vec![0.0; values.len()];
    for y in 0..h {
        for x in 0..w as i64 {
            let mut acc = 0.0;
            for (i, &k) in kernel.iter().enumerate() {
                acc += k * values[y * w + reflect(x + i as i64 - half, w as i64)];
            }
            horizontal[y * w + x as usize] = acc;
        }
    }
    let mut out = vec![0.0; values.len()];
    for y in 0..h as i64 {
        for x in 0..w {
            let mut acc = 0.0;
            for (i, &k) in kernel.iter().enumerate() {
                acc += k * horizontal[reflect(y + i as i64 - half, h as i64) * w + x];
            }
            out[y as usize * w + x] = acc;
        }
    }
    out
}

/// Connectivity ratios `(literal, connected)`, both in `[0, 1]`.
///
/// The literal ratio divides skeleton pixels by mask pixels; the connected
/// variant is the fraction of the skeleton in its largest 8-connected
/// component, which is 1.0 exactly when the skeleton holds together.
pub fn connectivity_ratio(mask: &RasterMask) -> (f64, f64) {
    let mask_pixels = mask.count_foreground();
    if mask_pixels == 0 {
        return (0.0, 0.0);
    }
    let skeleton = skeletonize(mask);
    let skeleton_pixels = skeleton.count_foreground();
    if skeleton_pixels == 0 {
        return (0.0, 0.0);
    }
    let labels = connected_components(&skeleton, Connectivity::Eight);
    let largest = labels.largest().map_or(0, |c| c.pixel_count);
    (
        skeleton_pixels as f64 / mask_pixels as f64,
        largest as f64 / skeleton_pixels as f64,
    )
}

/// Contours shorter than this many pixels carry no smoothness signal.
const SMOOTHNESS_MIN_CONTOUR: usize = 12;
const SMOOTHNESS_AVG_WINDOW: usize = 5;
const SMOOTHNESS_DERIV_LAG: usize = 2;

/// Mean absolute boundary curvature.
///
/// Each traced contour is smoothed with a 5-point circular moving average,
/// then the discrete second derivative along the (near unit-speed) point
/// sequence is taken per point, normalized by the squared mean sample
/// spacing floored at one pixel. Empty masks score 0.
pub fn edge_smoothness(mask: &RasterMask) -> f64 {
    let mut total = 0.0;
    let mut count = 0usize;
    for contour in boundary_trace(mask) {
        let n = contour.len();
        if n <= SMOOTHNESS_MIN_CONTOUR {
            continue;
        }
        let smoothed = circular_moving_average(&contour, SMOOTHNESS_AVG_WINDOW);
        // Sample spacing comes from the raw traced contour (axis steps are 1,
        // diagonal steps sqrt(2)); the floor keeps corner pile-ups from
        // inflating curvature on shapes whose smoothed path contracts.
        let mut path_len = 0.0;
        for i in 0..n {
            let (x0, y0) = contour[i];
            let (x1, y1) = contour[(i + 1) % n];
            path_len += (x1 as f64 - x0 as f64).hypot(y1 as f64 - y0 as f64);
        }
        let spacing = (path_len / n as f64).max(1.0);
        // Lag-2 central second difference: the residual pixel-staircase
        // wobble shrinks quadratically with the lag while true curvature
        // is preserved.
        let lag = SMOOTHNESS_DERIV_LAG;
        let scale = (lag * lag) as f64 * spacing * spacing;
        for i in 0..n {
            let (xp, yp) = smoothed[(i + n - lag) % n];
            let (xc, yc) = smoothed[i];
            let (xn, yn) = smoothed[(i + lag) % n];
            let ddx = xn - 2.0 * xc + xp;
            let ddy = yn - 2.0 * yc + yp;
            total += ddx.hypot(ddy) / scale;
            count += 1;
        }
    }
    if count == 0 {
        0.0
    } else {
        total / count as f64
    }
}

fn circular_moving_average(contour: &[(u32, u32)], window: usize) -> Vec<(f64, f64)> {
    let n = contour.len();
    let half = window / 2;
    (0..n)
        .map(|i| {
            let mut sx = 0.0;
            let mut sy = 0.0;
            for k in 0..window {
                let j = (i + n + k - half) % n;
                sx += contour[j].0 as f64;
                sy += contour[j].1 as f64;
            }
            (sx / window as f64, sy / window as f64)
        })
        .collect()
}

/// All six metrics for a predicted mask against ground truth. IOU/SSIM/MSE
/// compare the pair; CR and smoothness describe the prediction alone.
pub fn evaluate_pair(pred: &RasterMask, gt: &RasterMask) -> Result<MetricSet> {
    pred.require_same_shape(gt)?;
    let (cr_literal, cr_connected) = connectivity_ratio(pred);
    Ok(MetricSet {
        iou: iou(pred, gt)?,
        ssim: ssim(pred, gt)?,
        mse: mse(pred, gt)?,
        cr_literal,
        cr_connected,
        s_smooth: edge_smoothness(pred),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn disk(w: u32, h: u32, cx: f64, cy: f64, r: f64) -> RasterMask {
        RasterMask::from_fn(w, h, |x, y| {
            let dx = x as f64 - cx;
            let dy = y as f64 - cy;
            (dx * dx + dy * dy).sqrt() <= r
        })
    }

    fn random_mask(seed: u64, w: u32, h: u32) -> RasterMask {
        let mut state = seed.wrapping_mul(0x9e3779b97f4a7c15) | 1;
        RasterMask::from_fn(w, h, |_, _| {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state % 3 == 0
        })
    }

    #[test]
    fn iou_fixpoints() {
        let m = random_mask(1, 16, 16);
        assert_eq!(iou(&m, &m).unwrap(), 1.0);
        let empty = RasterMask::new(16, 16);
        assert_eq!(iou(&empty, &empty).unwrap(), 1.0);
        let left = RasterMask::from_fn(16, 16, |x, _| x < 4);
        let right = RasterMask::from_fn(16, 16, |x, _| x >= 12);
        assert_eq!(iou(&left, &right).unwrap(), 0.0);
    }

    #[test]
    fn iou_hand_example() {
        // 2x2 block at (0,0) vs 2x2 block at (1,0) in a 4x4 canvas:
        // intersection 2, union 6.
        let a = RasterMask::from_fn(4, 4, |x, y| x < 2 && y < 2);
        let b = RasterMask::from_fn(4, 4, |x, y| (1..3).contains(&x) && y < 2);
        assert_eq!(iou(&a, &b).unwrap(), 2.0 / 6.0);
    }

    #[test]
    fn iou_matches_brute_force() {
        for seed in 0..50 {
            let a = random_mask(seed, 16, 16);
            let b = random_mask(seed + 977, 16, 16);
            let mut inter = 0u64;
            let mut uni = 0u64;
            for y in 0..16 {
                for x in 0..16 {
                    if a.get(x, y) && b.get(x, y) {
                        inter += 1;
                    }
                    if a.get(x, y) || b.get(x, y) {
                        uni += 1;
                    }
                }
            }
            let expected = if uni == 0 { 1.0 } else { inter as f64 / uni as f64 };
            assert_eq!(iou(&a, &b).unwrap(), expected);
            assert_eq!(iou(&a, &b).unwrap(), iou(&b, &a).unwrap());
        }
    }

    #[test]
    fn mse_is_hamming_fraction_on_masks() {
        let zeros = RasterMask::new(8, 8);
        let ones = RasterMask::from_fn(8, 8, |_, _| true);
        assert_eq!(mse(&zeros, &zeros).unwrap(), 0.0);
        assert_eq!(mse(&zeros, &ones).unwrap(), 1.0);
        for seed in 0..20 {
            let a = random_mask(seed, 8, 8);
            let b = random_mask(seed + 31, 8, 8);
            let mut differing = 0usize;
            for y in 0..8 {
                for x in 0..8 {
                    if a.get(x, y) != b.get(x, y) {
                        differing += 1;
                    }
                }
            }
            assert_eq!(mse(&a, &b).unwrap(), differing as f64 / 64.0);
        }
    }

    #[test]
    fn shape_mismatch_is_an_error() {
        let a = RasterMask::new(8, 8);
        let b = RasterMask::new(8, 9);
        assert!(iou(&a, &b).is_err());
        assert!(mse(&a, &b).is_err());
        assert!(ssim(&a, &b).is_err());
        assert!(evaluate_pair(&a, &b).is_err());
    }

    #[test]
    fn ssim_identity_and_symmetry() {
        let m = disk(32, 32, 15.0, 16.0, 9.0);
        assert!((ssim(&m, &m).unwrap() - 1.0).abs() < 1e-9);
        let other = disk(32, 32, 18.0, 13.0, 7.0);
        let ab = ssim(&m, &other).unwrap();
        let ba = ssim(&other, &m).unwrap();
        assert!((ab - ba).abs() < 1e-12);
    }

    #[test]
    fn ssim_rejects_small_images() {
        let a = RasterMask::new(7, 20);
        assert!(matches!(ssim(&a, &a), Err(Error::ImageTooSmall(7, 20))));
    }

    #[test]
    fn ssim_constant_offset_follows_luminance_closed_form() {
        // Constant images differ only in the luminance term:
        // l = (2*m1*m2 + C1) / (m1^2 + m2^2 + C1).
        let a = Tensor2D::full(16, 16, 32.0);
        let b = Tensor2D::full(16, 16, 160.0);
        let c1 = (SSIM_K1 * SSIM_L) * (SSIM_K1 * SSIM_L);
        let expected = (2.0 * 32.0 * 160.0 + c1) / (32.0 * 32.0 + 160.0 * 160.0 + c1);
        let got = ssim_gray(&a, &b).unwrap();
        assert!((got - expected).abs() < 1e-9, "{got} vs {expected}");
        assert!(got < 0.6);
    }

    #[test]
    fn connectivity_ratio_thin_path() {
        let mut mask = RasterMask::new(32, 32);
        for i in 0..20u32 {
            mask.set(5 + i, 10 + i / 3, true);
        }
        let (literal, connected) = connectivity_ratio(&mask);
        assert_eq!(literal, 1.0);
        assert_eq!(connected, 1.0);
    }

    #[test]
    fn connectivity_ratio_counts_stray_pixel() {
        let mut mask = RasterMask::new(40, 40);
        for i in 0..21u32 {
            mask.set(4 + i, 20, true);
        }
        mask.set(35, 35, true);
        let (_, connected) = connectivity_ratio(&mask);
        assert!((connected - 21.0 / 22.0).abs() < 1e-12);
    }

    #[test]
    fn connectivity_ratio_empty_mask() {
        assert_eq!(connectivity_ratio(&RasterMask::new(8, 8)), (0.0, 0.0));
    }

    #[test]
    fn smoothness_rectangle_is_low() {
        let mask = RasterMask::from_fn(60, 40, |x, y| (10..50).contains(&x) && (10..30).contains(&y));
        let s = edge_smoothness(&mask);
        assert!(s < 0.05, "rectangle smoothness {s}");
    }

    #[test]
    fn smoothness_disk_tracks_inverse_radius() {
        let r = 30.0;
        let mask = disk(80, 80, 39.5, 39.5, r);
        let s = edge_smoothness(&mask);
        let target = 1.0 / r;
        assert!(
            (s - target).abs() <= 0.30 * target,
            "disk smoothness {s} vs {target}"
        );
    }

    #[test]
    fn smoothness_translation_invariant() {
        let shape = |ox: u32, oy: u32| {
            RasterMask::from_fn(64, 64, move |x, y| {
                let dx = x as f64 - (20 + ox) as f64;
                let dy = y as f64 - (20 + oy) as f64;
                dx * dx + dy * dy < 81.0
            })
        };
        let s1 = edge_smoothness(&shape(0, 0));
        let s2 = edge_smoothness(&shape(13, 7));
        assert!((s1 - s2).abs() < 1e-9);
    }

    #[test]
    fn smoothness_rotation_invariant() {
        let mask = RasterMask::from_fn(48, 48, |x, y| {
            (12..36).contains(&x) && (15..30).contains(&y) && (x + 2 * y) % 11 != 0
        });
        let rotated = RasterMask::from_fn(48, 48, |x, y| mask.get(y, 47 - x));
        let s1 = edge_smoothness(&mask);
        let s2 = edge_smoothness(&rotated);
        assert!((s1 - s2).abs() < 1e-9, "{s1} vs {s2}");
    }

    #[test]
    fn smoothness_empty_mask_is_zero() {
        assert_eq!(edge_smoothness(&RasterMask::new(16, 16)), 0.0);
    }

    #[test]
    fn evaluate_pair_matches_individual_calls() {
        let pred = disk(32, 32, 14.0, 15.0, 8.0);
        let gt = disk(32, 32, 16.0, 16.0, 8.0);
        let bundle = evaluate_pair(&pred, &gt).unwrap();
        assert_eq!(bundle.iou, iou(&pred, &gt).unwrap());
        assert_eq!(bundle.ssim, ssim(&pred, &gt).unwrap());
        assert_eq!(bundle.mse, mse(&pred, &gt).unwrap());
        let (lit, conn) = connectivity_ratio(&pred);
        assert_eq!((bundle.cr_literal, bundle.cr_connected), (lit, conn));
        assert_eq!(bundle.s_smooth, edge_smoothness(&pred));
    }

    #[test]
    fn evaluate_pair_identity_fixpoints() {
        let m = disk(32, 32, 16.0, 16.0, 10.0);
        let bundle = evaluate_pair(&m, &m).unwrap();
        assert_eq!(bundle.iou, 1.0);
        assert_eq!(bundle.mse, 0.0);
        assert!((bundle.ssim - 1.0).abs() < 1e-9);
    }

    #[test]
    fn csv_row_formatting() {
        let set = MetricSet {
            iou: 1.0,
            ssim: 0.5,
            mse: 0.0,
            cr_literal: 0.25,
            cr_connected: 1.0,
            s_smooth: 0.0333333333,
        };
        assert_eq!(
            set.csv_row("sample_00001"),
            "sample_00001,1.000000,0.500000,0.000000,0.250000,1.000000,0.033333"
        );
    }
}
