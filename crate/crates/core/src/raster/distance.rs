//! Exact Euclidean distance transform (Felzenszwalb-Huttenlocher).

use super::RasterMask;

const INF: f64 = 1e20;

/// Distance from each foreground pixel to the nearest background pixel,
/// measured center-to-center. Background pixels map to 0. A mask with no
/// background at all yields uniformly large values.
pub fn distance_transform(mask: &RasterMask) -> Vec<f64> {
    let (w, h) = (mask.width() as usize, mask.height() as usize);
    let mut squared: Vec<f64> = mask
        .bits()
        .iter()
        .map(|&b| if b != 0 { INF } else { 0.0 })
        .collect();

    // columns, then rows
    let mut column = vec![0.0; h];
    let mut out_col = vec![0.0; h];
    for x in 0..w {
        for y in 0..h {
            column[y] = squared[y * w + x];
        }
        dt_1d(&column, &mut out_col);
        for y in 0..h {
            squared[y * w + x] = out_col[y];
        }
    }
    let mut row = vec![0.0; w];
    let mut out_row = vec![0.0; w];
    for y in 0..h {
        row.copy_from_slice(&squared[y * w..(y + 1) * w]);
        dt_1d(&row, &mut out_row);
        squared[y * w..(y + 1) * w].copy_from_slice(&out_row);
    }

    squared.iter().map(|&d2| d2.sqrt()).collect()
}

/// 1D squared-distance transform via the lower envelope of parabolas.
fn dt_1d(f: &[f64], out: &mut [f64]) {
    let n = f.len();
    let mut v = vec![0usize; n]; // parabola apex indices
    let mut z = vec![0.0f64; n + 1]; // envelope breakpoints
    let mut k = 0usize;
    z[0] = -INF;
    z[1] = INF;
    for q in 1..n {
        loop {
            let s = ((f[q] + (q * q) as f64) - (f[v[k]] + (v[k] * v[k]) as f64))
                / (2.0 * q as f64 - 2.0 * v[k] as f64);
            if s <= z[k] {
                k -= 1;
            } else {
                k += 1;
                v[k] = q;
                z[k] = s;
                z[k + 1] = INF;
                break;
            }
        }
    }
    k = 0;
    for q in 0..n {
        while z[k + 1] < q as f64 {
            k += 1;
        }
        let d = q as f64 - v[k] as f64;
        out[q] = d * d + f[v[k]];
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive(mask: &RasterMask) -> Vec<f64> {
        let (w, h) = (mask.width(), mask.height());
        let mut out = vec![0.0; (w * h) as usize];
        for y in 0..h {
            for x in 0..w {
                if !mask.get(x, y) {
                    continue;
                }
                let mut best = ((x + 1).min(w - x).min(y + 1).min(h - y)) as f64;
                for by in 0..h {
                    for bx in 0..w {
                        if !mask.get(bx, by) {
                            let dx = bx as f64 - x as f64;
                            let dy = by as f64 - y as f64;
                            best = best.min((dx * dx + dy * dy).sqrt());
                        }
                    }
                }
                out[(y * w + x) as usize] = best;
            }
        }
        out
    }

    #[test]
    fn matches_naive_on_random_masks() {
        let mut state = 3u64;
        for _ in 0..8 {
            let mask = RasterMask::from_fn(14, 11, |_, _| {
                state ^= state << 13;
                state ^= state >> 7;
                state ^= state << 17;
                state % 4 != 0
            });
            let fast = distance_transform(&mask);
            let slow = naive(&mask);
            for (a, b) in fast.iter().zip(slow.iter()) {
                assert!((a - b).abs() < 1e-9, "{a} vs {b}");
            }
        }
    }

    #[test]
    fn band_width_readout() {
        // A 5-wide horizontal band: centerline pixels are 3 away from the
        // nearest background row (center-to-center).
        let mask = RasterMask::from_fn(20, 15, |_, y| (5..10).contains(&y));
        let dt = distance_transform(&mask);
        assert_eq!(dt[(7 * 20 + 10) as usize], 3.0);
        assert_eq!(dt[(5 * 20 + 10) as usize], 1.0);
    }
}
