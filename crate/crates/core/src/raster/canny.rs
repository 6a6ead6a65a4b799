//! Canny edge extraction for binary vessel masks.

use super::{sobel_field, RasterMask};

/// Tunable Canny stage parameters.
#[derive(Debug, Clone, Copy, serde::Serialize, serde::Deserialize)]
pub struct CannyParams {
    /// Gaussian blur sigma (5x5 kernel).
    pub sigma: f64,
    /// Low hysteresis threshold as a fraction of the max gradient magnitude.
    pub low_fraction: f64,
    /// High hysteresis threshold as a fraction of the max gradient magnitude.
    pub high_fraction: f64,
}

impl Default for CannyParams {
    fn default() -> Self {
        CannyParams {
            sigma: 1.0,
            low_fraction: 0.10,
            high_fraction: 0.30,
        }
    }
}

/// Canny with the default parameters (sigma 1.0, thresholds 10%/30%).
pub fn canny_edges(mask: &RasterMask) -> RasterMask {
    canny_edges_with(mask, CannyParams::default())
}

pub fn canny_edges_with(mask: &RasterMask, params: CannyParams) -> RasterMask {
    let (w, h) = (mask.width(), mask.height());
    let gray: Vec<f64> = mask.bits().iter().map(|&b| f64::from(b) * 255.0).collect();
    let blurred = gaussian_blur_5x5(&gray, w, h, params.sigma);
    let field = sobel_field(&blurred, w, h);

    let max_magnitude = field.magnitude.iter().cloned().fold(0.0, f64::max);
    if max_magnitude <= 0.0 {
        return RasterMask::new(w, h);
    }

    let nms = non_maximum_suppression(&field.magnitude, &field.gx, &field.gy, w, h);
    let low = params.low_fraction * max_magnitude;
    let high = params.high_fraction * max_magnitude;
    hysteresis(&nms, w, h, low, high)
}

fn gaussian_kernel_5(sigma: f64) -> [f64; 5] {
    let mut kernel = [0.0; 5];
    let mut sum = 0.0;
    for (i, k) in kernel.iter_mut().enumerate() {
        let d = i as f64 - 2.0;
        *k = (-d * d / (2.0 * sigma * sigma)).exp();
        sum += *k;
    }
    for k in &mut kernel {
        *k /= sum;
    }
    kernel
}

fn gaussian_blur_5x5(values: &[f64], w: u32, h: u32, sigma: f64) -> Vec<f64> {
    let kernel = gaussian_kernel_5(sigma);
    let sample = |buf: &[f64], x: i64, y: i64| -> f64 {
        let cx = x.clamp(0, w as i64 - 1);
        let cy = y.clamp(0, h as i64 - 1);
        buf[(cy as u32 * w + cx as u32) as usize]
    };
    let mut horizontal = vec![0.0; values.len()];
    for y in 0..h as i64 {
        for x in 0..w as i64 {
            let mut acc = 0.0;
            for (i, &k) in kernel.iter().enumerate() {
                acc += k * sample(values, x + i as i64 - 2, y);
            }
            horizontal[(y as u32 * w + x as u32) as usize] = acc;
        }
    }
    let mut out = vec![0.0; values.len()];
    for y in 0..h as i64 {
        for x in 0..w as i64 {
            let mut acc = 0.0;
            for (i, &k) in kernel.iter().enumerate() {
                acc += k * sample(&horizontal, x, y + i as i64 - 2);
            }
            out[(y as u32 * w + x as u32) as usize] = acc;
        }
    }
    out
}

/// Keep a pixel only if its magnitude is a local maximum along the gradient
/// direction, quantized to 0/45/90/135 degrees.
fn non_maximum_suppression(magnitude: &[f64], gx: &[f64], gy: &[f64], w: u32, h: u32) -> Vec<f64> {
    let at = |x: i64, y: i64| -> f64 {
        if x < 0 || y < 0 || x >= w as i64 || y >= h as i64 {
            0.0
        } else {
            magnitude[(y as u32 * w + x as u32) as usize]
        }
    };
    let mut out = vec![0.0; magnitude.len()];
    for y in 0..h as i64 {
        for x in 0..w as i64 {
            let i = (y as u32 * w + x as u32) as usize;
            let m = magnitude[i];
            if m <= 0.0 {
                continue;
            }
            let angle = gy[i].atan2(gx[i]).to_degrees();
            let sector = ((angle + 180.0) / 45.0).round() as i64 % 4;
            let (dx, dy) = match sector {
                0 => (1, 0),
                1 => (1, 1),
                2 => (0, 1),
                _ => (-1, 1),
            };
            if m >= at(x + dx, y + dy) && m >= at(x - dx, y - dy) {
                out[i] = m;
            }
        }
    }
    out
}

fn hysteresis(nms: &[f64], w: u32, h: u32, low: f64, high: f64) -> RasterMask {
    let mut out = RasterMask::new(w, h);
    let mut stack = Vec::new();
    for y in 0..h {
        for x in 0..w {
            let i = (y * w + x) as usize;
            if nms[i] >= high && !out.get(x, y) {
                out.set(x, y, true);
                stack.push((x, y));
                while let Some((cx, cy)) = stack.pop() {
                    for dy in -1i64..=1 {
                        for dx in -1i64..=1 {
                            let nx = cx as i64 + dx;
                            let ny = cy as i64 + dy;
                            if nx < 0 || ny < 0 || nx >= w as i64 || ny >= h as i64 {
                                continue;
                            }
                            let (nx, ny) = (nx as u32, ny as u32);
                            let ni = (ny * w + nx) as usize;
                            if nms[ni] >= low && !out.get(nx, ny) {
                                out.set(nx, ny, true);
                                stack.push((nx, ny));
                            }
                        }
                    }
                }
            }
        }
    }
    out
}
