//! Zhang-Suen thinning.

use super::RasterMask;

/// Reduce a mask to a 1-pixel-wide skeleton by Zhang-Suen thinning,
/// iterating the two subpasses until a fixpoint. The result is a subset of
/// the input and keeps each component 8-connected.
pub fn skeletonize(mask: &RasterMask) -> RasterMask {
    let mut current = mask.clone();
    let mut to_clear: Vec<(u32, u32)> = Vec::new();
    loop {
        let mut changed = false;
        for pass in 0..2 {
            to_clear.clear();
            for y in 0..current.height() {
                for x in 0..current.width() {
                    if current.get(x, y) && deletable(&current, x, y, pass) {
                        to_clear.push((x, y));
                    }
                }
            }
            if !to_clear.is_empty() {
                changed = true;
                for &(x, y) in &to_clear {
                    current.set(x, y, false);
                }
            }
        }
        if !changed {
            return current;
        }
    }
}

/// Zhang-Suen deletability test for one subpass.
///
/// Neighbors follow the conventional numbering p2..p9 clockwise from north.
fn deletable(mask: &RasterMask, x: u32, y: u32, pass: u8) -> bool {
    let xi = x as i64;
    let yi = y as i64;
    let p = [
        mask.get_i(xi, yi - 1),     // p2 N
        mask.get_i(xi + 1, yi - 1), // p3 NE
        mask.get_i(xi + 1, yi),     // p4 E
        mask.get_i(xi + 1, yi + 1), // p5 SE
        mask.get_i(xi, yi + 1),     // p6 S
        mask.get_i(xi - 1, yi + 1), // p7 SW
        mask.get_i(xi - 1, yi),     // p8 W
        mask.get_i(xi - 1, yi - 1), // p9 NW
    ];
    let b: u32 = p.iter().map(|&v| u32::from(v)).sum();
    if !(2..=6).contains(&b) {
        return false;
    }
    let a = (0..8)
        .filter(|&i| !p[i] && p[(i + 1) % 8])
        .count();
    if a != 1 {
        return false;
    }
    let (p2, p4, p6, p8) = (p[0], p[2], p[4], p[6]);
    if pass == 0 {
        !(p2 && p4 && p6) && !(p4 && p6 && p8)
    } else {
        !(p2 && p4 && p8) && !(p2 && p6 && p8)
    }
}
