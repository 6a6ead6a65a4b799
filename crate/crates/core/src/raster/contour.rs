//! Moore-neighbor boundary tracing.

use super::{connected_components, Connectivity, RasterMask};

/// Clockwise Moore neighborhood, starting west.
const DIRS: [(i64, i64); 8] = [
    (-1, 0),
    (-1, -1),
    (0, -1),
    (1, -1),
    (1, 0),
    (1, 1),
    (0, 1),
    (-1, 1),
];

/// Trace the outer boundary of every 8-connected component.
///
/// Each contour is a closed ordered pixel loop (the final point connects back
/// to the first). Thin appendages are walked in both directions, so a pixel
/// may appear more than once; an isolated pixel yields a length-1 contour.
pub fn boundary_trace(mask: &RasterMask) -> Vec<Vec<(u32, u32)>> {
    let labels = connected_components(mask, Connectivity::Eight);
    let mut contours = Vec::with_capacity(labels.components.len());
    for component in &labels.components {
        contours.push(trace_component(&labels.labels, mask.width(), component.seed, component.label));
    }
    contours
}

fn trace_component(
    labels: &[u32],
    width: u32,
    start: (u32, u32),
    label: u32,
) -> Vec<(u32, u32)> {
    let height = labels.len() as u32 / width;
    let inside = |x: i64, y: i64| -> bool {
        x >= 0
            && y >= 0
            && x < width as i64
            && y < height as i64
            && labels[(y as u32 * width + x as u32) as usize] == label
    };
    let mut contour = vec![start];
    // The seed is the first pixel in scan order, so its west neighbor is not
    // part of this component; entering from the west is always valid.
    let mut current = (start.0 as i64, start.1 as i64);
    let mut backtrack_dir = 0usize; // direction from current toward previous background (west)
    let first_move: Option<(usize, (i64, i64))> = next_neighbor(current, backtrack_dir, &inside);
    let Some((first_dir, first_pixel)) = first_move else {
        return contour; // isolated pixel
    };
    let stop_state = (current, first_dir);
    let mut dir = first_dir;
    let mut pixel = first_pixel;
    let cap = 4 * labels.iter().filter(|&&l| l == label).count() + 8;
    for _ in 0..cap {
        contour.push((pixel.0 as u32, pixel.1 as u32));
        // New backtrack: the direction from the new pixel toward the last
        // background cell scanned just before finding it.
        backtrack_dir = reverse_entry(dir);
        current = pixel;
        match next_neighbor(current, backtrack_dir, &inside) {
            Some((d, p)) => {
                if (current, d) == stop_state {
                    // Jacob's criterion: re-entering the start the same way.
                    contour.pop();
                    break;
                }
                if current == (start.0 as i64, start.1 as i64) && d == first_dir {
                    contour.pop();
                    break;
                }
                dir = d;
                pixel = p;
            }
            None => break,
        }
    }
    // The loop above appends the start pixel again right before detecting the
    // stop state; drop a trailing duplicate of the seed if present.
    if contour.len() > 1 && contour.last() == Some(&start) {
        contour.pop();
    }
    contour
}

/// Scan clockwise from just after `from_dir`, returning the first component
/// pixel and the direction it was found at.
fn next_neighbor(
    current: (i64, i64),
    from_dir: usize,
    inside: &impl Fn(i64, i64) -> bool,
) -> Option<(usize, (i64, i64))> {
    for step in 1..=8 {
        let d = (from_dir + step) % 8;
        let candidate = (current.0 + DIRS[d].0, current.1 + DIRS[d].1);
        if inside(candidate.0, candidate.1) {
            return Some((d, candidate));
        }
    }
    None
}

/// Direction index pointing back along the entry move, shifted one step
/// clockwise so the scan resumes at the cell after the entry backtrack.
fn reverse_entry(entry_dir: usize) -> usize {
    (entry_dir + 4) % 8
}
