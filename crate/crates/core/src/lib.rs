//! Procedural vascular geometry.
//!
//! This crate synthesizes, fits, and scores binary vessel masks built from
//! Bezier tubes grown over recursive tree skeletons, and provides the pure
//! array kernels of the companion diffusion formulation:
//!
//! - [`bezier`]: curve evaluation, derivatives, curvature, rasterization
//! - [`raster`]: binary morphology, Sobel, thinning, Canny, components
//! - [`skeleton`]: seeded recursive vessel-tree generation
//! - [`synthesis`]: adaptive curve growth along a skeleton into a mask
//! - [`fitting`]: fitting the curve model to an existing mask
//! - [`metrics`]: IOU / SSIM / MSE, connectivity ratio, edge smoothness
//! - [`diffusion`]: noise schedules, forward/reverse steps, loss kernels

pub mod bezier;
pub mod error;
pub mod fitting;
pub mod geom;
pub mod metrics;
pub mod raster;
pub mod rng;
pub mod skeleton;
pub mod synthesis;
pub mod tensor;

pub use bezier::{BezierCurve, CurveOrder};
pub use error::{Error, Result};
pub use geom::Point2;
pub use raster::RasterMask;
pub use tensor::Tensor2D;
