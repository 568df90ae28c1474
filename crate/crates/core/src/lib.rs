//! Discrete time-frequency analysis on centered uniform grids.
//!
//! Signals live on an `N`-point grid with spacing `Δ = 1/√N`; phase-space
//! fields live on the `N×N` product grid. On top of that sit the short-time
//! Fourier transform, the (τ-)Wigner distributions, weighted modulation and
//! Wiener amalgam norms, Weyl and τ-quantization of symbols, and a small
//! harness that estimates boundedness constants empirically.

pub mod error;
mod fft;
pub mod grid;
pub mod io;
pub mod norms;
pub mod quantization;
pub mod transforms;
pub mod verify;
pub mod weights;

pub mod cli;

pub use error::{Error, Result};
pub use fft::interpolant_at;
pub use grid::{
    dft, dft2, gaussian, idft, idft2, make_grid, modulate, oversample2, translate, Axes, Field2, HalfGridSignal,
    SampleGrid, Signal1,
};
pub use norms::{Exponent, NormSpec, Order};
pub use quantization::{OperatorMatrix, TauParam};
pub use transforms::{stft1, stft2, tau_wigner, wigner, Stft2Result};
pub use weights::Weight;
