//! Connected-component labeling.

use super::RasterMask;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Connectivity {
    Four,
    Eight,
}

impl Connectivity {
    fn offsets(self) -> &'static [(i64, i64)] {
        match self {
            Connectivity::Four => &[(1, 0), (-1, 0), (0, 1), (0, -1)],
            Connectivity::Eight => &[
                (1, 0),
                (-1, 0),
                (0, 1),
                (0, -1),
                (1, 1),
                (1, -1),
                (-1, 1),
                (-1, -1),
            ],
        }
    }
}

/// One labeled component.
#[derive(Debug, Clone)]
pub struct Component {
    /// 1-based label, assigned in order of the first-scanned pixel.
    pub label: u32,
    pub pixel_count: usize,
    /// First pixel reached in row-major scan order.
    pub seed: (u32, u32),
}

/// Label map plus per-component descriptors.
#[derive(Debug, Clone)]
pub struct ComponentLabels {
    pub width: u32,
    pub height: u32,
    /// Row-major labels; 0 is background.
    pub labels: Vec<u32>,
    pub components: Vec<Component>,
}

impl ComponentLabels {
    pub fn label_at(&self, x: u32, y: u32) -> u32 {
        self.labels[(y * self.width + x) as usize]
    }

    /// Label of the component with the most pixels (0 if none).
    pub fn largest(&self) -> Option<&Component> {
        self.components.iter().max_by_key(|c| c.pixel_count)
    }
}

/// BFS labeling in scan order, so labels are deterministic for a given mask.
pub fn connected_components(mask: &RasterMask, connectivity: Connectivity) -> ComponentLabels {
    let (w, h) = (mask.width(), mask.height());
    let mut labels = vec![0u32; (w * h) as usize];
    let mut components = Vec::new();
    let mut queue = std::collections::VecDeque::new();
    let offsets = connectivity.offsets();
    for y in 0..h {
        for x in 0..w {
            let i = (y * w + x) as usize;
            if !mask.get(x, y) || labels[i] != 0 {
                continue;
            }
            let label = components.len() as u32 + 1;
            let mut pixel_count = 0usize;
            labels[i] = label;
            queue.push_back((x, y));
            while let Some((cx, cy)) = queue.pop_front() {
                pixel_count += 1;
                for &(dx, dy) in offsets {
                    let nx = cx as i64 + dx;
                    let ny = cy as i64 + dy;
                    if nx < 0 || ny < 0 || nx >= w as i64 || ny >= h as i64 {
                        continue;
                    }
                    let (nx, ny) = (nx as u32, ny as u32);
                    let ni = (ny * w + nx) as usize;
                    if mask.get(nx, ny) && labels[ni] == 0 {
                        labels[ni] = label;
                        queue.push_back((nx, ny));
                    }
                }
            }
            components.push(Component {
                label,
                pixel_count,
                seed: (x, y),
            });
        }
    }
    ComponentLabels {
        width: w,
        height: h,
        labels,
        components,
    }
}
