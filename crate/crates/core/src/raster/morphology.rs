//! Binary erosion and dilation with disk structuring elements.

use super::RasterMask;

/// Offsets of the discrete disk `{(dx, dy) : dx^2 + dy^2 <= r^2}`.
pub fn disk_offsets(radius: u32) -> Vec<(i32, i32)> {
    let r = radius as i32;
    let r2 = r * r;
    let mut offsets = Vec::new();
    for dy in -r..=r {
        for dx in -r..=r {
            if dx * dx + dy * dy <= r2 {
                offsets.push((dx, dy));
            }
        }
    }
    offsets
}

/// Binary erosion: a pixel survives iff the whole disk around it is
/// foreground. Pixels beyond the canvas count as background, so foreground
/// touching the border erodes away.
pub fn erode(mask: &RasterMask, radius: u32) -> RasterMask {
    assert!(radius >= 1, "erosion radius must be >= 1");
    let offsets = disk_offsets(radius);
    let mut out = RasterMask::new(mask.width(), mask.height());
    for y in 0..mask.height() {
        for x in 0..mask.width() {
            if !mask.get(x, y) {
                continue;
            }
            let all = offsets
                .iter()
                .all(|&(dx, dy)| mask.get_i(x as i64 + dx as i64, y as i64 + dy as i64));
            if all {
                out.set(x, y, true);
            }
        }
    }
    out
}

/// Binary dilation: every foreground pixel stamps a disk.
pub fn dilate(mask: &RasterMask, radius: u32) -> RasterMask {
    assert!(radius >= 1, "dilation radius must be >= 1");
    let offsets = disk_offsets(radius);
    let (w, h) = (mask.width(), mask.height());
    let mut out = RasterMask::new(w, h);
    for (x, y) in mask.foreground_pixels() {
        for &(dx, dy) in &offsets {
            let nx = x as i64 + dx as i64;
            let ny = y as i64 + dy as i64;
            if nx >= 0 && ny >= 0 && nx < w as i64 && ny < h as i64 {
                out.set(nx as u32, ny as u32, true);
            }
        }
    }
    out
}

/// Foreground pixels with at least one 4-neighbor outside the mask.
pub fn inner_boundary(mask: &RasterMask) -> RasterMask {
    RasterMask::from_fn(mask.width(), mask.height(), |x, y| {
        mask.get(x, y)
            && !(mask.get_i(x as i64 - 1, y as i64)
                && mask.get_i(x as i64 + 1, y as i64)
                && mask.get_i(x as i64, y as i64 - 1)
                && mask.get_i(x as i64, y as i64 + 1))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Brute-force reference: direct double loop over the structuring element.
    fn erode_naive(mask: &RasterMask, radius: u32) -> RasterMask {
        let r = radius as i64;
        RasterMask::from_fn(mask.width(), mask.height(), |x, y| {
            for dy in -r..=r {
                for dx in -r..=r {
                    if dx * dx + dy * dy <= r * r
                        && !mask.get_i(x as i64 + dx, y as i64 + dy)
                    {
                        return false;
                    }
                }
            }
            mask.get(x, y)
        })
    }

    fn dilate_naive(mask: &RasterMask, radius: u32) -> RasterMask {
        let r = radius as i64;
        RasterMask::from_fn(mask.width(), mask.height(), |x, y| {
            for dy in -r..=r {
                for dx in -r..=r {
                    if dx * dx + dy * dy <= r * r && mask.get_i(x as i64 + dx, y as i64 + dy) {
                        return true;
                    }
                }
            }
            false
        })
    }

    fn random_mask(seed: u64, w: u32, h: u32, density_mod: u64) -> RasterMask {
        let mut state = seed.wrapping_mul(0x9e3779b97f4a7c15) | 1;
        RasterMask::from_fn(w, h, |_, _| {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state % density_mod == 0
        })
    }

    #[test]
    fn erode_empty_is_empty() {
        let empty = RasterMask::new(10, 10);
        assert!(erode(&empty, 1).is_empty());
        assert!(dilate(&empty, 1).is_empty());
    }

    #[test]
    fn erode_filled_square_radius_1() {
        // 10x10 filled square inside a 14x14 canvas erodes to 8x8.
        let mask = RasterMask::from_fn(14, 14, |x, y| (2..12).contains(&x) && (2..12).contains(&y));
        let eroded = erode(&mask, 1);
        let expected =
            RasterMask::from_fn(14, 14, |x, y| (3..11).contains(&x) && (3..11).contains(&y));
        assert_eq!(eroded, expected);
        assert_eq!(eroded.count_foreground(), 64);
    }

    #[test]
    fn dilate_point_radius_2_is_13_pixel_disk() {
        let mut mask = RasterMask::new(9, 9);
        mask.set(4, 4, true);
        let dilated = dilate(&mask, 2);
        assert_eq!(dilated.count_foreground(), 13);
        assert!(dilated.get(4, 2) && dilated.get(2, 4) && dilated.get(5, 5));
        assert!(!dilated.get(6, 5));
    }

    #[test]
    fn dilation_is_monotone() {
        for seed in 0..8 {
            let m1 = random_mask(seed, 16, 16, 5);
            let m2 = m1.bitwise_or(&random_mask(seed + 100, 16, 16, 7)).unwrap();
            assert!(m1.is_subset_of(&m2));
            assert!(dilate(&m1, 1).is_subset_of(&dilate(&m2, 1)));
        }
    }

    #[test]
    fn closing_contains_original() {
        // Closing is extensive as long as the dilation is not clipped by the
        // canvas, so keep foreground a structuring-element radius inside.
        for seed in 0..8 {
            let interior = random_mask(seed, 16, 16, 4);
            let m = RasterMask::from_fn(24, 24, |x, y| {
                (4..20).contains(&x) && (4..20).contains(&y) && interior.get(x - 4, y - 4)
            });
            let closed = erode(&dilate(&m, 2), 2);
            assert!(m.is_subset_of(&closed), "closing must be extensive");
        }
    }

    #[test]
    fn matches_brute_force_oracle() {
        for seed in 0..64 {
            let m = random_mask(seed, 16, 16, 3);
            for radius in 1..=2 {
                assert_eq!(erode(&m, radius), erode_naive(&m, radius));
                assert_eq!(dilate(&m, radius), dilate_naive(&m, radius));
            }
        }
    }

    #[test]
    fn erode_dilate_duality_away_from_border() {
        // erode(m, r) == !dilate(!m, r), except within a 2r margin.
        for seed in 0..16 {
            let m = random_mask(seed, 24, 24, 3);
            for radius in 1..=2u32 {
                let lhs = erode(&m, radius);
                let rhs = dilate(&m.complement(), radius).complement();
                let margin = 2 * radius;
                for y in margin..24 - margin {
                    for x in margin..24 - margin {
                        assert_eq!(lhs.get(x, y), rhs.get(x, y), "at ({x},{y}) r={radius}");
                    }
                }
            }
        }
    }
}
