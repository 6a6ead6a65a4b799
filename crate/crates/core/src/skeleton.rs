//! Recursive bifurcating vessel skeletons.
//!
//! A skeleton is a tree of straight segments: each node starts where its
//! parent ends, carries a heading and a length, and spawns a fixed number of
//! children until the depth cap or the canvas edge stops it. Rasterized, it
//! becomes the 1-pixel scaffold that the curve-growth stage covers.

use crate::error::{Error, Result};
use crate::geom::Point2;
use crate::raster::{connected_components, dilate, erode, Connectivity, RasterMask};
use crate::rng::{stream_for_path, uniform};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// Bounds for the per-child length jitter factor.
const LENGTH_JITTER: (f64, f64) = (0.8, 1.2);

/// Parameters of skeleton generation.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SkeletonParams {
    /// Maximum tree depth (nodes at this depth are leaves). 1..=10.
    pub max_depth: u32,
    /// Children per non-leaf node.
    pub branches_per_node: u32,
    pub root_position: Point2,
    pub root_length: f64,
    /// Per-generation length decay factor, in (0, 1).
    pub length_decay: f64,
    /// Child headings deviate from the parent by U(-spread, +spread).
    pub branch_angle_spread: f64,
    pub canvas_width: u32,
    pub canvas_height: u32,
    pub seed: u64,
}

impl Default for SkeletonParams {
    fn default() -> Self {
        SkeletonParams {
            max_depth: 5,
            branches_per_node: 2,
            root_position: Point2::new(256.0, 256.0),
            root_length: 120.0,
            length_decay: 0.84,
            branch_angle_spread: 0.7,
            canvas_width: 512,
            canvas_height: 512,
            seed: 0,
        }
    }
}

impl SkeletonParams {
    pub fn validate(&self) -> Result<()> {
        if !(1..=10).contains(&self.max_depth) {
            return Err(Error::InvalidParams(format!(
                "max_depth {} outside 1..=10",
                self.max_depth
            )));
        }
        if self.branches_per_node < 1 {
            return Err(Error::InvalidParams("branches_per_node must be >= 1".into()));
        }
        if !(self.root_length.is_finite() && self.root_length > 0.0) {
            return Err(Error::InvalidParams(format!(
                "root_length {} must be positive",
                self.root_length
            )));
        }
        if !(self.length_decay > 0.0 && self.length_decay < 1.0) {
            return Err(Error::InvalidParams(format!(
                "length_decay {} outside (0, 1)",
                self.length_decay
            )));
        }
        if !self.branch_angle_spread.is_finite() || self.branch_angle_spread < 0.0 {
            return Err(Error::InvalidParams("branch_angle_spread must be >= 0".into()));
        }
        if self.canvas_width < 8 || self.canvas_height < 8 {
            return Err(Error::CanvasTooSmall(self.canvas_width, self.canvas_height));
        }
        if !self.root_position.is_finite() || !inside_canvas(self.root_position, self) {
            return Err(Error::OutsideCanvas(self.root_position.x, self.root_position.y));
        }
        Ok(())
    }
}

/// One vascular segment: a node of the skeleton tree.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SkeletonNode {
    /// Segment start (equals the parent segment's end).
    pub position: Point2,
    /// Unit heading away from the parent.
    pub direction: Point2,
    pub length: f64,
    pub depth: u32,
    /// Set when the segment was shortened by the canvas border; clipped
    /// nodes spawn no children.
    pub clipped: bool,
    pub children: Vec<SkeletonNode>,
}

impl SkeletonNode {
    pub fn end(&self) -> Point2 {
        self.position + self.direction * self.length
    }

    pub fn node_count(&self) -> usize {
        1 + self.children.iter().map(SkeletonNode::node_count).sum::<usize>()
    }

    pub fn max_depth(&self) -> u32 {
        self.children
            .iter()
            .map(SkeletonNode::max_depth)
            .max()
            .unwrap_or(self.depth)
    }

    pub fn for_each(&self, f: &mut impl FnMut(&SkeletonNode)) {
        f(self);
        for child in &self.children {
            child.for_each(f);
        }
    }
}

fn inside_canvas(p: Point2, params: &SkeletonParams) -> bool {
    p.x >= 0.0
        && p.y >= 0.0
        && p.x <= (params.canvas_width - 1) as f64
        && p.y <= (params.canvas_height - 1) as f64
}

/// Grow the skeleton tree for `params`, deterministically in `params.seed`.
pub fn generate_skeleton(params: &SkeletonParams) -> Result<SkeletonNode> {
    params.validate()?;
    let mut rng = stream_for_path(params.seed, &[]);
    let heading = uniform(&mut rng, -std::f64::consts::PI, std::f64::consts::PI);
    let mut path = Vec::new();
    Ok(grow(
        params,
        params.root_position,
        heading,
        params.root_length,
        0,
        &mut path,
    ))
}

fn grow(
    params: &SkeletonParams,
    position: Point2,
    heading: f64,
    length: f64,
    depth: u32,
    path: &mut Vec<u32>,
) -> SkeletonNode {
    let direction = Point2::new(heading.cos(), heading.sin());
    let (length, clipped) = clip_length(position, direction, length, params);
    let mut node = SkeletonNode {
        position,
        direction,
        length,
        depth,
        clipped,
        children: Vec::new(),
    };
    if clipped || depth >= params.max_depth {
        return node;
    }
    let start = node.end();
    for k in 0..params.branches_per_node {
        path.push(k);
        let mut rng: ChaCha8Rng = stream_for_path(params.seed, path);
        let jitter = uniform(&mut rng, LENGTH_JITTER.0, LENGTH_JITTER.1);
        // Siblings alternate deflection sides so bifurcations diverge
        // instead of collapsing onto one heading.
        let magnitude = uniform(&mut rng, 0.0, params.branch_angle_spread);
        let offset = if k % 2 == 0 { magnitude } else { -magnitude };
        let child_length = length_of_child(length, params.length_decay, jitter);
        let child = grow(params, start, heading + offset, child_length, depth + 1, path);
        path.pop();
        if child.length > 1e-9 {
            node.children.push(child);
        }
    }
    node
}

fn length_of_child(parent_length: f64, decay: f64, jitter: f64) -> f64 {
    parent_length * decay * jitter
}

/// Largest prefix of the segment that stays on the canvas.
fn clip_length(
    position: Point2,
    direction: Point2,
    length: f64,
    params: &SkeletonParams,
) -> (f64, bool) {
    let mut t_max = 1.0f64;
    let w = (params.canvas_width - 1) as f64;
    let h = (params.canvas_height - 1) as f64;
    for (p, d, lo, hi) in [
        (position.x, direction.x * length, 0.0, w),
        (position.y, direction.y * length, 0.0, h),
    ] {
        if d.abs() < 1e-12 {
            continue;
        }
        let t_lo = (lo - p) / d;
        let t_hi = (hi - p) / d;
        let t_exit = t_lo.max(t_hi);
        t_max = t_max.min(t_exit);
    }
    if t_max >= 1.0 {
        (length, false)
    } else {
        (length * t_max.max(0.0), true)
    }
}

/// One rasterized skeleton branch: the ordered pixel run of a single node.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BranchChain {
    pub node_id: usize,
    pub parent: Option<usize>,
    pub depth: u32,
    /// Proximal-to-distal pixel run; the first pixel of a child chain is the
    /// last pixel of its parent chain.
    pub pixels: Vec<(u32, u32)>,
}

/// A skeleton rendered to 1-pixel segments, plus pixel ownership.
#[derive(Debug, Clone)]
pub struct SkeletonRaster {
    pub mask: RasterMask,
    /// Row-major map from pixel to owning chain id (-1 = none). Ownership is
    /// first-writer-wins in depth-first preorder.
    pub node_index: Vec<i32>,
    pub chains: Vec<BranchChain>,
}

impl SkeletonRaster {
    pub fn node_at(&self, x: u32, y: u32) -> Option<usize> {
        let i = (y * self.mask.width() + x) as usize;
        let id = self.node_index[i];
        (id >= 0).then_some(id as usize)
    }

    /// Decompose an arbitrary thin mask into branch chains.
    ///
    /// Pixels of degree other than two (tips and junctions) act as chain
    /// terminals; maximal degree-two runs between them become chains, and
    /// leftover cycles are walked from their first scanned pixel. Chains are
    /// oriented away from the component's scan-order root, so the traversal
    /// and chaining behavior matches tree-grown skeletons.
    pub fn from_mask(mask: &RasterMask) -> SkeletonRaster {
        let (w, h) = (mask.width(), mask.height());
        // Orthogonal neighbors first: when a staircase corner offers both an
        // orthogonal and a diagonal continuation, the orthogonal pixel is the
        // next one on the minimal 8-path.
        let neighbors = |x: u32, y: u32| -> Vec<(u32, u32)> {
            let mut out = Vec::with_capacity(8);
            for (dx, dy) in [
                (1i64, 0i64),
                (-1, 0),
                (0, 1),
                (0, -1),
                (1, 1),
                (1, -1),
                (-1, 1),
                (-1, -1),
            ] {
                let nx = x as i64 + dx;
                let ny = y as i64 + dy;
                if nx >= 0 && ny >= 0 && nx < w as i64 && ny < h as i64
                    && mask.get(nx as u32, ny as u32)
                {
                    out.push((nx as u32, ny as u32));
                }
            }
            out
        };
        let degree = |x: u32, y: u32| neighbors(x, y).len();
        // Crossing number: 0->1 transitions around the 8-ring. Path pixels
        // score 2 even at staircase corners where the raw degree is 3, so
        // branches do not fragment at every corner.
        let crossing = |x: u32, y: u32| -> usize {
            let xi = x as i64;
            let yi = y as i64;
            let ring = [
                mask.get_i(xi, yi - 1),
                mask.get_i(xi + 1, yi - 1),
                mask.get_i(xi + 1, yi),
                mask.get_i(xi + 1, yi + 1),
                mask.get_i(xi, yi + 1),
                mask.get_i(xi - 1, yi + 1),
                mask.get_i(xi - 1, yi),
                mask.get_i(xi - 1, yi - 1),
            ];
            (0..8).filter(|&i| !ring[i] && ring[(i + 1) % 8]).count()
        };
        let is_terminal = |x: u32, y: u32| crossing(x, y) != 2;

        let mut interior_visited = RasterMask::new(w, h);
        let mut terminal_edges: std::collections::HashSet<(u64, u64)> =
            std::collections::HashSet::new();
        let mut raw_chains: Vec<Vec<(u32, u32)>> = Vec::new();
        let key = |p: (u32, u32)| p.1 as u64 * w as u64 + p.0 as u64;

        // terminal-to-terminal runs
        for (x, y) in mask.foreground_pixels() {
            if !is_terminal(x, y) {
                continue;
            }
            if degree(x, y) == 0 {
                raw_chains.push(vec![(x, y)]);
                continue;
            }
            for first in neighbors(x, y) {
                if interior_visited.get(first.0, first.1) {
                    continue;
                }
                if is_terminal(first.0, first.1) {
                    let edge = (key((x, y)).min(key(first)), key((x, y)).max(key(first)));
                    if !terminal_edges.insert(edge) {
                        continue;
                    }
                    raw_chains.push(vec![(x, y), first]);
                    continue;
                }
                let mut chain = vec![(x, y), first];
                interior_visited.set(first.0, first.1, true);
                let mut prev = (x, y);
                let mut cur = first;
                loop {
                    let next = neighbors(cur.0, cur.1).into_iter().find(|&n| {
                        n != prev
                            && !interior_visited.get(n.0, n.1)
                            // an immediate return to the start terminal is a
                            // staircase filler, not a cycle
                            && (n != (x, y) || chain.len() > 4)
                    });
                    let Some(next) = next else { break };
                    chain.push(next);
                    if is_terminal(next.0, next.1) {
                        break;
                    }
                    interior_visited.set(next.0, next.1, true);
                    prev = cur;
                    cur = next;
                }
                raw_chains.push(chain);
            }
        }
        // leftover pure cycles
        for (x, y) in mask.foreground_pixels() {
            if is_terminal(x, y) || interior_visited.get(x, y) || degree(x, y) == 0 {
                continue;
            }
            let mut chain = vec![(x, y)];
            interior_visited.set(x, y, true);
            let mut prev = (x, y);
            let mut cur = neighbors(x, y)[0];
            while cur != (x, y) && !interior_visited.get(cur.0, cur.1) {
                chain.push(cur);
                interior_visited.set(cur.0, cur.1, true);
                let next = neighbors(cur.0, cur.1)
                    .into_iter()
                    .find(|&n| n != prev && (!interior_visited.get(n.0, n.1) || n == (x, y)));
                let Some(next) = next else { break };
                prev = cur;
                cur = next;
            }
            raw_chains.push(chain);
        }

        // Orient chains outward from per-component scan-order roots via BFS
        // over shared terminal pixels.
        let chain_count = raw_chains.len();
        let mut touching: std::collections::HashMap<(u32, u32), Vec<usize>> =
            std::collections::HashMap::new();
        for (id, chain) in raw_chains.iter().enumerate() {
            for &p in [chain.first(), chain.last()].into_iter().flatten() {
                touching.entry(p).or_default().push(id);
            }
        }
        let mut ordered: Vec<BranchChain> = Vec::with_capacity(chain_count);
        let mut assigned = vec![false; chain_count];
        let mut queue = std::collections::VecDeque::new();
        for root in 0..chain_count {
            if assigned[root] {
                continue;
            }
            assigned[root] = true;
            queue.push_back((root, None::<usize>, 0u32, false));
            while let Some((id, parent, depth, flip)) = queue.pop_front() {
                let mut pixels = raw_chains[id].clone();
                if flip {
                    pixels.reverse();
                }
                let new_id = ordered.len();
                let tail = *pixels.last().unwrap();
                let head = pixels[0];
                ordered.push(BranchChain {
                    node_id: new_id,
                    parent,
                    depth,
                    pixels,
                });
                for &junction in &[head, tail] {
                    if let Some(ids) = touching.get(&junction) {
                        for &next in ids {
                            if assigned[next] {
                                continue;
                            }
                            assigned[next] = true;
                            let next_flip = raw_chains[next]
                                .last()
                                .is_some_and(|&p| p == junction);
                            queue.push_back((next, Some(new_id), depth + 1, next_flip));
                        }
                    }
                }
            }
        }

        let mut node_index = vec![-1i32; (w * h) as usize];
        let mut out_mask = RasterMask::new(w, h);
        for chain in &ordered {
            for &(x, y) in &chain.pixels {
                out_mask.set(x, y, true);
                let i = (y * w + x) as usize;
                if node_index[i] < 0 {
                    node_index[i] = chain.node_id as i32;
                }
            }
        }
        SkeletonRaster {
            mask: out_mask,
            node_index,
            chains: ordered,
        }
    }
}

/// Draw each tree segment as a Bresenham run and record ownership.
pub fn rasterize_skeleton(root: &SkeletonNode, width: u32, height: u32) -> SkeletonRaster {
    let mut raster = SkeletonRaster {
        mask: RasterMask::new(width, height),
        node_index: vec![-1; (width * height) as usize],
        chains: Vec::new(),
    };
    rasterize_node(root, None, &mut raster);
    raster
}

fn rasterize_node(node: &SkeletonNode, parent: Option<usize>, raster: &mut SkeletonRaster) {
    let id = raster.chains.len();
    let (w, h) = (raster.mask.width(), raster.mask.height());
    let a = node.position;
    let b = node.end();
    let pixels: Vec<(u32, u32)> = bresenham(
        (a.x.round() as i64, a.y.round() as i64),
        (b.x.round() as i64, b.y.round() as i64),
    )
    .into_iter()
    .filter(|&(x, y)| x >= 0 && y >= 0 && x < w as i64 && y < h as i64)
    .map(|(x, y)| (x as u32, y as u32))
    .collect();
    for &(x, y) in &pixels {
        raster.mask.set(x, y, true);
        let i = (y * w + x) as usize;
        if raster.node_index[i] < 0 {
            raster.node_index[i] = id as i32;
        }
    }
    raster.chains.push(BranchChain {
        node_id: id,
        parent,
        depth: node.depth,
        pixels,
    });
    for child in &node.children {
        rasterize_node(child, Some(id), raster);
    }
}

/// Integer line rasterization, inclusive of both endpoints.
pub fn bresenham(a: (i64, i64), b: (i64, i64)) -> Vec<(i64, i64)> {
    let (mut x, mut y) = a;
    let (x1, y1) = b;
    let dx = (x1 - x).abs();
    let dy = -(y1 - y).abs();
    let sx = if x < x1 { 1 } else { -1 };
    let sy = if y < y1 { 1 } else { -1 };
    let mut err = dx + dy;
    let mut out = Vec::with_capacity((dx.max(-dy) + 1) as usize);
    loop {
        out.push((x, y));
        if x == x1 && y == y1 {
            return out;
        }
        let e2 = 2 * err;
        if e2 >= dy {
            err += dy;
            x += sx;
        }
        if e2 <= dx {
            err += dx;
            y += sy;
        }
    }
}

/// Why `close_skeleton` stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ClosureExit {
    /// Mask is a single 8-connected component.
    Connected,
    /// Still fragmented after the iteration cap.
    IterationLimit,
}

#[derive(Debug, Clone)]
pub struct ClosedSkeleton {
    pub raster: SkeletonRaster,
    pub exit: ClosureExit,
    pub iterations: u32,
}

const CLOSE_MAX_ITERATIONS: u32 = 16;
const CLOSE_DILATE_RADIUS: u32 = 2;
const CLOSE_ERODE_RADIUS: u32 = 1;

/// Bridge gaps until the skeleton raster is one 8-connected component.
///
/// Each round ORs the original pixels with an asymmetric closing
/// (dilate by 2, erode by 1); the dilation radius exceeding the erosion
/// radius is what lets nearby fragments fuse. Tree-grown skeletons are
/// already connected and return unchanged after the first check.
pub fn close_skeleton(raster: SkeletonRaster) -> ClosedSkeleton {
    let mut raster = raster;
    let mut iterations = 0;
    loop {
        let components = connected_components(&raster.mask, Connectivity::Eight);
        if components.components.len() <= 1 {
            return ClosedSkeleton {
                raster,
                exit: ClosureExit::Connected,
                iterations,
            };
        }
        if iterations >= CLOSE_MAX_ITERATIONS {
            return ClosedSkeleton {
                raster,
                exit: ClosureExit::IterationLimit,
                iterations,
            };
        }
        let closed = erode(&dilate(&raster.mask, CLOSE_DILATE_RADIUS), CLOSE_ERODE_RADIUS);
        raster.mask.or_assign(&closed).expect("same canvas");
        iterations += 1;
    }
}
