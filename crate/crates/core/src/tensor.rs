//! Minimal dense 2D arrays for the numeric kernels.

use crate::error::{Error, Result};

/// A row-major `h x w` array of `f64`.
#[derive(Debug, Clone, PartialEq)]
pub struct Tensor2D {
    height: usize,
    width: usize,
    data: Vec<f64>,
}

impl Tensor2D {
    pub fn new(height: usize, width: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != height * width {
            return Err(Error::InvalidParams(format!(
                "tensor data length {} != {}x{}",
                data.len(),
                height,
                width
            )));
        }
        if data.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidParams("tensor holds non-finite values".into()));
        }
        Ok(Tensor2D { height, width, data })
    }

    pub fn zeros(height: usize, width: usize) -> Self {
        Tensor2D {
            height,
            width,
            data: vec![0.0; height * width],
        }
    }

    pub fn full(height: usize, width: usize, value: f64) -> Self {
        Tensor2D {
            height,
            width,
            data: vec![value; height * width],
        }
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [f64] {
        &mut self.data
    }

    pub fn same_shape(&self, other: &Tensor2D) -> bool {
        self.height == other.height && self.width == other.width
    }

    pub(crate) fn require_same_shape(&self, other: &Tensor2D) -> Result<()> {
        if self.same_shape(other) {
            Ok(())
        } else {
            Err(Error::ShapeMismatch(
                self.width as u32,
                self.height as u32,
                other.width as u32,
                other.height as u32,
            ))
        }
    }

    /// Elementwise combination into a new tensor of the same shape.
    pub fn zip_map(&self, other: &Tensor2D, f: impl Fn(f64, f64) -> f64) -> Result<Tensor2D> {
        self.require_same_shape(other)?;
        let data = self
            .data
            .iter()
            .zip(other.data.iter())
            .map(|(&a, &b)| f(a, b))
            .collect();
        Ok(Tensor2D {
            height: self.height,
            width: self.width,
            data,
        })
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> Tensor2D {
        Tensor2D {
            height: self.height,
            width: self.width,
            data: self.data.iter().map(|&v| f(v)).collect(),
        }
    }

    pub fn mean(&self) -> f64 {
        if self.data.is_empty() {
            return 0.0;
        }
        self.data.iter().sum::<f64>() / self.data.len() as f64
    }
}
