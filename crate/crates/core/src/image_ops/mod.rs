//! Image-domain linear operators with periodic boundary conditions.
//!
//! Images are `n x n`, stored row-major; pixel `(i, j)` lives at `i * n + j`.
//! Index `i` runs down rows and `j` across columns.

mod blur;
pub(crate) mod difference;
mod fft2;
mod grid;
pub mod matfile;

pub use blur::BlurOperator;
pub use difference::{discrete_divergence, discrete_gradient};
pub use grid::{psf_normalize, GradientField, ImageGrid, PsfKernel};
