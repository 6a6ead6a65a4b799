//! Binary raster masks and the image-processing primitives built on them.

mod canny;
mod components;
mod contour;
mod distance;
mod morphology;
mod pgm;
mod sobel;
mod thin;

pub use canny::{canny_edges, canny_edges_with, CannyParams};
pub use components::{connected_components, Component, ComponentLabels, Connectivity};
pub use contour::boundary_trace;
pub use distance::distance_transform;
pub use morphology::{dilate, disk_offsets, erode, inner_boundary};
pub use pgm::{read_pgm, read_pgm_bytes, write_pgm, write_pgm_bytes};
pub use sobel::{sobel, sobel_field, GradientField};
pub use thin::skeletonize;

use crate::error::{Error, Result};

/// A binary image on a fixed canvas. Foreground (1) marks vessel pixels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RasterMask {
    width: u32,
    height: u32,
    bits: Vec<u8>,
}

impl RasterMask {
    /// All-background mask.
    pub fn new(width: u32, height: u32) -> Self {
        RasterMask {
            width,
            height,
            bits: vec![0; (width * height) as usize],
        }
    }

    /// Build from row-major bytes, thresholding at >127.
    pub fn from_gray(width: u32, height: u32, gray: &[u8]) -> Result<Self> {
        if gray.len() != (width * height) as usize {
            return Err(Error::InvalidParams(format!(
                "gray buffer length {} != {}x{}",
                gray.len(),
                width,
                height
            )));
        }
        Ok(RasterMask {
            width,
            height,
            bits: gray.iter().map(|&v| u8::from(v > 127)).collect(),
        })
    }

    pub fn from_fn(width: u32, height: u32, mut f: impl FnMut(u32, u32) -> bool) -> Self {
        let mut mask = RasterMask::new(width, height);
        for y in 0..height {
            for x in 0..width {
                if f(x, y) {
                    mask.set(x, y, true);
                }
            }
        }
        mask
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    #[inline]
    fn idx(&self, x: u32, y: u32) -> usize {
        (y * self.width + x) as usize
    }

    #[inline]
    pub fn get(&self, x: u32, y: u32) -> bool {
        x < self.width && y < self.height && self.bits[self.idx(x, y)] != 0
    }

    /// Signed-coordinate accessor; everything off-canvas is background.
    #[inline]
    pub fn get_i(&self, x: i64, y: i64) -> bool {
        if x < 0 || y < 0 || x >= self.width as i64 || y >= self.height as i64 {
            false
        } else {
            self.bits[(y as u32 * self.width + x as u32) as usize] != 0
        }
    }

    #[inline]
    pub fn set(&mut self, x: u32, y: u32, value: bool) {
        let i = self.idx(x, y);
        self.bits[i] = u8::from(value);
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    pub fn count_foreground(&self) -> usize {
        self.bits.iter().filter(|&&b| b != 0).count()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&b| b == 0)
    }

    pub fn same_shape(&self, other: &RasterMask) -> bool {
        self.width == other.width && self.height == other.height
    }

    pub(crate) fn require_same_shape(&self, other: &RasterMask) -> Result<()> {
        if self.same_shape(other) {
            Ok(())
        } else {
            Err(Error::ShapeMismatch(
                self.width,
                self.height,
                other.width,
                other.height,
            ))
        }
    }

    /// Per-pixel disjunction. Dimensions must match.
    pub fn bitwise_or(&self, other: &RasterMask) -> Result<RasterMask> {
        self.require_same_shape(other)?;
        let bits = self
            .bits
            .iter()
            .zip(other.bits.iter())
            .map(|(&a, &b)| a | b)
            .collect();
        Ok(RasterMask {
            width: self.width,
            height: self.height,
            bits,
        })
    }

    /// In-place disjunction. Dimensions must match.
    pub fn or_assign(&mut self, other: &RasterMask) -> Result<()> {
        self.require_same_shape(other)?;
        for (a, &b) in self.bits.iter_mut().zip(other.bits.iter()) {
            *a |= b;
        }
        Ok(())
    }

    pub fn bitwise_and(&self, other: &RasterMask) -> Result<RasterMask> {
        self.require_same_shape(other)?;
        let bits = self
            .bits
            .iter()
            .zip(other.bits.iter())
            .map(|(&a, &b)| a & b)
            .collect();
        Ok(RasterMask {
            width: self.width,
            height: self.height,
            bits,
        })
    }

    pub fn complement(&self) -> RasterMask {
        RasterMask {
            width: self.width,
            height: self.height,
            bits: self.bits.iter().map(|&b| 1 - b).collect(),
        }
    }

    pub fn is_subset_of(&self, other: &RasterMask) -> bool {
        self.same_shape(other)
            && self
                .bits
                .iter()
                .zip(other.bits.iter())
                .all(|(&a, &b)| a == 0 || b != 0)
    }

    /// Foreground pixel coordinates in row-major scan order.
    pub fn foreground_pixels(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        let width = self.width;
        self.bits
            .iter()
            .enumerate()
            .filter(|(_, &b)| b != 0)
            .map(move |(i, _)| (i as u32 % width, i as u32 / width))
    }
}
