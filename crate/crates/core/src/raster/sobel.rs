//! 3x3 Sobel gradients with edge replication.

use super::RasterMask;

/// Per-pixel Sobel responses over a raster.
#[derive(Debug, Clone)]
pub struct GradientField {
    pub width: u32,
    pub height: u32,
    /// Signed horizontal response (positive toward +x).
    pub gx: Vec<f64>,
    /// Signed vertical response (positive toward +y).
    pub gy: Vec<f64>,
    /// `hypot(gx, gy)` per pixel.
    pub magnitude: Vec<f64>,
    /// `atan2(gy, gx)` per pixel, in `(-pi, pi]`.
    pub angle: Vec<f64>,
}

impl GradientField {
    #[inline]
    pub fn idx(&self, x: u32, y: u32) -> usize {
        (y * self.width + x) as usize
    }
}

/// Sobel field of a binary mask (foreground read as 1.0).
pub fn sobel(mask: &RasterMask) -> GradientField {
    let values: Vec<f64> = mask.bits().iter().map(|&b| f64::from(b)).collect();
    sobel_field(&values, mask.width(), mask.height())
}

/// Sobel field of an arbitrary scalar image, replicating edge pixels.
pub fn sobel_field(values: &[f64], width: u32, height: u32) -> GradientField {
    assert_eq!(values.len(), (width * height) as usize);
    let sample = |x: i64, y: i64| -> f64 {
        let cx = x.clamp(0, width as i64 - 1) as u32;
        let cy = y.clamp(0, height as i64 - 1) as u32;
        values[(cy * width + cx) as usize]
    };
    let n = values.len();
    let mut gx = vec![0.0; n];
    let mut gy = vec![0.0; n];
    let mut magnitude = vec![0.0; n];
    let mut angle = vec![0.0; n];
    for y in 0..height as i64 {
        for x in 0..width as i64 {
            let tl = sample(x - 1, y - 1);
            let tc = sample(x, y - 1);
            let tr = sample(x + 1, y - 1);
            let ml = sample(x - 1, y);
            let mr = sample(x + 1, y);
            let bl = sample(x - 1, y + 1);
            let bc = sample(x, y + 1);
            let br = sample(x + 1, y + 1);
            let dx = (tr + 2.0 * mr + br) - (tl + 2.0 * ml + bl);
            let dy = (bl + 2.0 * bc + br) - (tl + 2.0 * tc + tr);
            let i = (y as u32 * width + x as u32) as usize;
            gx[i] = dx;
            gy[i] = dy;
            magnitude[i] = dx.hypot(dy);
            let mut a = dy.atan2(dx);
            if a <= -std::f64::consts::PI {
                a = std::f64::consts::PI;
            }
            angle[i] = a;
        }
    }
    GradientField {
        width,
        height,
        gx,
        gy,
        magnitude,
        angle,
    }
}
