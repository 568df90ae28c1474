//! Grids, sampled signals and phase-space fields, and the discrete Fourier
//! transform every other module builds on.
//!
//! An `N`-point grid has spacing `Δ = 1/√N` and nodes `x_n = (n − N/2)·Δ`, so
//! it covers `[−√N/2, √N/2)`. Frequencies live on the same grid, which makes
//! the transform `(Ff)(ξ_k) = Δ·Σ_n f(x_n) e^{−2πi x_n ξ_k}` exactly unitary for
//! the `Δ`-weighted 2-norm. All shifts are circular.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fft;

/// Largest 1-D grid accepted by [`make_grid`].
pub const MAX_POINTS: usize = 4096;
/// Largest grid accepted by operations that cost O(N⁴) or build dense N×N
/// operators from symbols.
pub const SYMBOL_MAX_POINTS: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SampleGrid {
    n_points: usize,
}

pub fn make_grid(n_points: usize) -> Result<SampleGrid> {
    SampleGrid::new(n_points)
}

impl SampleGrid {
    pub fn new(n_points: usize) -> Result<Self> {
        if n_points % 2 != 0 {
            return Err(Error::InvalidGrid(format!("N = {n_points} is odd")));
        }
        if n_points < 8 {
            return Err(Error::InvalidGrid(format!("N = {n_points} is below the minimum of 8")));
        }
        if n_points > MAX_POINTS {
            return Err(Error::InvalidGrid(format!("N = {n_points} exceeds the cap of {MAX_POINTS}")));
        }
        Ok(Self { n_points })
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.n_points
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub fn delta(&self) -> f64 {
        1.0 / (self.n_points as f64).sqrt()
    }

    /// `x_n = (n − N/2)·Δ`.
    #[inline]
    pub fn point(&self, n: usize) -> f64 {
        (n as f64 - (self.n_points / 2) as f64) * self.delta()
    }

    pub fn points(&self) -> Vec<f64> {
        (0..self.n_points).map(|n| self.point(n)).collect()
    }

    /// Half-open interval `[start, end)` covered by the grid.
    pub fn interval(&self) -> (f64, f64) {
        let half = (self.n_points as f64).sqrt() / 2.0;
        (-half, half)
    }

    /// Grid index of `x` if it is (within 1e−9 of) an integer multiple of `Δ`,
    /// reduced modulo `N`.
    pub fn index_of_shift(&self, x: f64) -> Result<i64> {
        let steps = x / self.delta();
        let rounded = steps.round();
        if !steps.is_finite() || (steps - rounded).abs() > 1e-9 {
            return Err(Error::OffGridShift(x));
        }
        Ok(rounded as i64)
    }

    pub(crate) fn ensure_same(&self, other: &SampleGrid) -> Result<()> {
        if self != other {
            return Err(Error::GridMismatch { left: self.n_points, right: other.n_points });
        }
        Ok(())
    }

    pub(crate) fn ensure_symbol_cap(&self, what: &'static str) -> Result<()> {
        if self.n_points > SYMBOL_MAX_POINTS {
            return Err(Error::CapExceeded { n: self.n_points, cap: SYMBOL_MAX_POINTS, what });
        }
        Ok(())
    }
}

fn check_finite(samples: &[Complex64]) -> Result<()> {
    match samples.iter().position(|z| !z.re.is_finite() || !z.im.is_finite()) {
        Some(i) => Err(Error::NonFinite(i)),
        None => Ok(()),
    }
}

/// Complex samples of a function of one real variable.
#[derive(Debug, Clone, PartialEq)]
pub struct Signal1 {
    grid: SampleGrid,
    samples: Vec<Complex64>,
}

impl Signal1 {
    pub fn new(grid: SampleGrid, samples: Vec<Complex64>) -> Result<Self> {
        if samples.len() != grid.len() {
            return Err(Error::Shape(format!(
                "signal has {} samples but the grid has {} points",
                samples.len(),
                grid.len()
            )));
        }
        check_finite(&samples)?;
        Ok(Self { grid, samples })
    }

    pub fn zeros(grid: SampleGrid) -> Self {
        Self { grid, samples: vec![Complex64::new(0.0, 0.0); grid.len()] }
    }

    /// Samples `f(x_n)`.
    pub fn from_fn(grid: SampleGrid, mut f: impl FnMut(f64) -> Complex64) -> Self {
        let samples = (0..grid.len()).map(|n| f(grid.point(n))).collect();
        Self { grid, samples }
    }

    /// Unit mass `1/Δ` at `x = 0`, so that `Δ·Σ δ = 1`.
    pub fn spike(grid: SampleGrid, index: usize) -> Self {
        let mut s = Self::zeros(grid);
        s.samples[index % grid.len()] = Complex64::new(1.0 / grid.delta(), 0.0);
        s
    }

    #[inline]
    pub fn grid(&self) -> SampleGrid {
        self.grid
    }

    #[inline]
    pub fn samples(&self) -> &[Complex64] {
        &self.samples
    }

    pub fn into_samples(self) -> Vec<Complex64> {
        self.samples
    }

    /// `Δ·Σ|f|²`.
    pub fn energy(&self) -> f64 {
        self.grid.delta() * self.samples.iter().map(|z| z.norm_sqr()).sum::<f64>()
    }

    pub fn norm(&self) -> f64 {
        self.energy().sqrt()
    }

    /// `⟨f, g⟩ = Δ·Σ f·conj(g)`.
    pub fn inner(&self, other: &Signal1) -> Result<Complex64> {
        self.grid.ensure_same(&other.grid)?;
        Ok(self.samples.iter().zip(&other.samples).map(|(a, b)| a * b.conj()).sum::<Complex64>() * self.grid.delta())
    }

    pub fn scale(&self, alpha: Complex64) -> Signal1 {
        Signal1 { grid: self.grid, samples: self.samples.iter().map(|z| z * alpha).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.samples.iter().all(|z| z.re == 0.0 && z.im == 0.0)
    }

    /// Values at the even indices of a half-grid signal.
    pub fn subsample_even(fine: &HalfGridSignal) -> Signal1 {
        let samples = fine.samples.iter().step_by(2).copied().collect();
        Signal1 { grid: fine.base, samples }
    }

    pub fn max_abs_diff(&self, other: &Signal1) -> f64 {
        self.samples.iter().zip(&other.samples).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }
}

/// A signal on the `2N`-point refinement of a base grid: spacing `Δ/2`, index
/// `i` at `(i − N)·Δ/2`. Even indices coincide with the base nodes.
#[derive(Debug, Clone, PartialEq)]
pub struct HalfGridSignal {
    base: SampleGrid,
    samples: Vec<Complex64>,
}

impl HalfGridSignal {
    pub fn base(&self) -> SampleGrid {
        self.base
    }

    pub fn samples(&self) -> &[Complex64] {
        &self.samples
    }

    pub fn spacing(&self) -> f64 {
        self.base.delta() / 2.0
    }

    pub fn point(&self, i: usize) -> f64 {
        (i as f64 - self.base.len() as f64) * self.spacing()
    }
}

/// Axis semantics of a [`Field2`]: first axis × second axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Axes {
    PositionFrequency,
    PositionPosition,
    FrequencyFrequency,
}

/// Complex samples of a phase-space function on the `N×N` product grid,
/// row-major: entry `(i, j)` sits at `(x_i, x_j)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Field2 {
    grid: SampleGrid,
    axes: Axes,
    samples: Vec<Complex64>,
}

impl Field2 {
    pub fn new(grid: SampleGrid, axes: Axes, samples: Vec<Complex64>) -> Result<Self> {
        let n = grid.len();
        if samples.len() != n * n {
            return Err(Error::Shape(format!("field has {} samples, expected {}×{}", samples.len(), n, n)));
        }
        check_finite(&samples)?;
        Ok(Self { grid, axes, samples })
    }

    pub fn zeros(grid: SampleGrid, axes: Axes) -> Self {
        let n = grid.len();
        Self { grid, axes, samples: vec![Complex64::new(0.0, 0.0); n * n] }
    }

    pub fn from_fn(grid: SampleGrid, axes: Axes, mut f: impl FnMut(f64, f64) -> Complex64) -> Self {
        let n = grid.len();
        let mut samples = Vec::with_capacity(n * n);
        for i in 0..n {
            let x = grid.point(i);
            for j in 0..n {
                samples.push(f(x, grid.point(j)));
            }
        }
        Self { grid, axes, samples }
    }

    pub fn constant(grid: SampleGrid, value: Complex64) -> Self {
        let n = grid.len();
        Self { grid, axes: Axes::PositionFrequency, samples: vec![value; n * n] }
    }

    /// `a(x, ξ) = u(x)·w(ξ)`.
    pub fn tensor(u: &Signal1, w: &Signal1) -> Result<Self> {
        u.grid.ensure_same(&w.grid)?;
        let n = u.grid.len();
        let mut samples = Vec::with_capacity(n * n);
        for a in &u.samples {
            for b in &w.samples {
                samples.push(a * b);
            }
        }
        Ok(Self { grid: u.grid, axes: Axes::PositionFrequency, samples })
    }

    #[inline]
    pub fn grid(&self) -> SampleGrid {
        self.grid
    }

    #[inline]
    pub fn axes(&self) -> Axes {
        self.axes
    }

    pub fn with_axes(mut self, axes: Axes) -> Self {
        self.axes = axes;
        self
    }

    #[inline]
    pub fn samples(&self) -> &[Complex64] {
        &self.samples
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.samples[i * self.grid.len() + j]
    }

    pub fn row(&self, i: usize) -> &[Complex64] {
        let n = self.grid.len();
        &self.samples[i * n..(i + 1) * n]
    }

    pub fn map(&self, f: impl Fn(Complex64) -> Complex64) -> Field2 {
        Field2 { grid: self.grid, axes: self.axes, samples: self.samples.iter().map(|z| f(*z)).collect() }
    }

    pub fn add(&self, other: &Field2) -> Result<Field2> {
        self.grid.ensure_same(&other.grid)?;
        Ok(Field2 {
            grid: self.grid,
            axes: self.axes,
            samples: self.samples.iter().zip(&other.samples).map(|(a, b)| a + b).collect(),
        })
    }

    /// `Δ²·Σ|a|²`.
    pub fn energy(&self) -> f64 {
        let d = self.grid.delta();
        d * d * self.samples.iter().map(|z| z.norm_sqr()).sum::<f64>()
    }

    /// `⟨a, b⟩ = Δ²·Σ a·conj(b)`.
    pub fn inner(&self, other: &Field2) -> Result<Complex64> {
        self.grid.ensure_same(&other.grid)?;
        let d = self.grid.delta();
        Ok(self.samples.iter().zip(&other.samples).map(|(a, b)| a * b.conj()).sum::<Complex64>() * (d * d))
    }

    pub fn is_zero(&self) -> bool {
        self.samples.iter().all(|z| z.re == 0.0 && z.im == 0.0)
    }

    pub fn max_abs_diff(&self, other: &Field2) -> f64 {
        self.samples.iter().zip(&other.samples).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    pub(crate) fn from_parts(grid: SampleGrid, axes: Axes, samples: Vec<Complex64>) -> Self {
        debug_assert_eq!(samples.len(), grid.len() * grid.len());
        Self { grid, axes, samples }
    }
}

/// The normalized Gaussian `φ(t) = 2^{1/4} e^{−πt²}`, `‖φ‖₂ = 1`.
pub fn gaussian(grid: SampleGrid) -> Signal1 {
    Signal1::from_fn(grid, |t| Complex64::new(gaussian_at(t), 0.0))
}

#[inline]
pub fn gaussian_at(t: f64) -> f64 {
    2f64.powf(0.25) * (-std::f64::consts::PI * t * t).exp()
}

// Centered DFT in place, `sign = -1` forward, `+1` inverse:
// Δ·Σ_n f_n e^{∓2πi (n−N/2)(k−N/2)/N}
//   = Δ·(−1)^{k+N/2} Σ_n (−1)^n f_n e^{∓2πink/N}.
pub(crate) fn centered_dft_in_place(buf: &mut [Complex64], inverse: bool) {
    let n = buf.len();
    let delta = 1.0 / (n as f64).sqrt();
    for (i, z) in buf.iter_mut().enumerate() {
        if i % 2 == 1 {
            *z = -*z;
        }
    }
    if inverse {
        fft::inverse(buf);
    } else {
        fft::forward(buf);
    }
    let base = if (n / 2) % 2 == 0 { delta } else { -delta };
    for (k, z) in buf.iter_mut().enumerate() {
        *z *= if k % 2 == 0 { base } else { -base };
    }
}

pub fn dft(f: &Signal1) -> Signal1 {
    let mut samples = f.samples.clone();
    centered_dft_in_place(&mut samples, false);
    Signal1 { grid: f.grid, samples }
}

pub fn idft(f: &Signal1) -> Signal1 {
    let mut samples = f.samples.clone();
    centered_dft_in_place(&mut samples, true);
    Signal1 { grid: f.grid, samples }
}

// Row-major `n×n` buffer, both axes transformed in place.
pub(crate) fn centered_dft2_in_place(buf: &mut [Complex64], n: usize, inverse: bool) {
    for row in buf.chunks_mut(n) {
        centered_dft_in_place(row, inverse);
    }
    let mut col = vec![Complex64::new(0.0, 0.0); n];
    for j in 0..n {
        for i in 0..n {
            col[i] = buf[i * n + j];
        }
        centered_dft_in_place(&mut col, inverse);
        for i in 0..n {
            buf[i * n + j] = col[i];
        }
    }
}

fn dft2_impl(a: &Field2, inverse: bool) -> Field2 {
    let n = a.grid.len();
    let mut samples = a.samples.clone();
    centered_dft2_in_place(&mut samples, n, inverse);
    Field2::from_parts(a.grid, Axes::FrequencyFrequency, samples)
}

/// 2-D centered DFT in both axes with factor `Δ²`. The result is tagged
/// frequency × frequency.
pub fn dft2(a: &Field2) -> Field2 {
    dft2_impl(a, false)
}

/// Inverse of [`dft2`]; the result is tagged position × frequency (the symbol
/// convention).
pub fn idft2(a: &Field2) -> Field2 {
    let mut out = dft2_impl(a, true);
    out.axes = Axes::PositionFrequency;
    out
}

/// Band-limited interpolation onto the `2N`-point half grid. Values at the
/// original nodes are copied exactly.
pub fn oversample2(f: &Signal1) -> HalfGridSignal {
    HalfGridSignal { base: f.grid, samples: fft::upsample2(&f.samples) }
}

/// Circular translation `(T_{x0} f)(x) = f(x − x0)`; `x0` must be a multiple of
/// `Δ`.
pub fn translate(f: &Signal1, x0: f64) -> Result<Signal1> {
    let k = f.grid.index_of_shift(x0)?;
    Ok(translate_by_index(f, k))
}

pub(crate) fn translate_by_index(f: &Signal1, k: i64) -> Signal1 {
    let n = f.grid.len() as i64;
    let samples = (0..n).map(|i| f.samples[(i - k).rem_euclid(n) as usize]).collect();
    Signal1 { grid: f.grid, samples }
}

/// `(M_{ξ0} f)(x) = e^{2πi ξ0 x} f(x)`; `ξ0` must be a multiple of `Δ`.
pub fn modulate(f: &Signal1, xi0: f64) -> Result<Signal1> {
    let k = f.grid.index_of_shift(xi0)?;
    let n = f.grid.len() as i64;
    let samples = (0..n).map(|i| f.samples[i as usize] * fft::unit_root(k * (i - n / 2), n)).collect();
    Ok(Signal1 { grid: f.grid, samples })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_signal(grid: SampleGrid, seed: u64) -> Signal1 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Signal1::from_fn(grid, |_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
    }

    #[test]
    fn grid_arithmetic() {
        let g = make_grid(64).unwrap();
        assert_eq!(g.delta(), 0.125);
        assert_eq!(g.point(0), -4.0);
        assert_eq!(g.point(32), 0.0);
        let g16 = make_grid(16).unwrap();
        assert_eq!(g16.delta(), 0.25);
        assert_eq!(g16.interval(), (-2.0, 2.0));
        assert!((g.delta() * g.len() as f64 - 8.0).abs() < 1e-15);
    }

    #[test]
    fn grid_rejects_bad_sizes() {
        assert!(matches!(make_grid(7), Err(Error::InvalidGrid(_))));
        assert!(matches!(make_grid(6), Err(Error::InvalidGrid(_))));
        assert!(matches!(make_grid(8192), Err(Error::InvalidGrid(_))));
        assert!(make_grid(8).is_ok());
        assert!(make_grid(4096).is_ok());
    }

    #[test]
    fn gaussian_is_normalized_even_and_peaked() {
        let g = make_grid(64).unwrap();
        let phi = gaussian(g);
        // quadrature oracle: fine Riemann sum of √2·e^{−2πt²}
        let h = 1e-4;
        let oracle: f64 = (-80_000..80_000)
            .map(|i| {
                let t = i as f64 * h;
                2f64.sqrt() * (-2.0 * std::f64::consts::PI * t * t).exp() * h
            })
            .sum();
        assert!((oracle - 1.0).abs() < 1e-12);
        assert!((phi.energy() - oracle).abs() < 1e-10);
        for n in 1..64 {
            assert_eq!(phi.samples()[n], phi.samples()[64 - n]);
        }
        let peak = phi.samples().iter().map(|z| z.re).fold(f64::MIN, f64::max);
        assert_eq!(peak, phi.samples()[32].re);
        assert_eq!(peak, 2f64.powf(0.25));
    }

    #[test]
    fn dft_of_gaussian_is_gaussian() {
        let g = make_grid(64).unwrap();
        let phi = gaussian(g);
        assert!(dft(&phi).max_abs_diff(&phi) < 1e-8);
    }

    #[test]
    fn dft_is_unitary() {
        let g = make_grid(64).unwrap();
        let f = random_signal(g, 3);
        let e0 = f.energy();
        let e1 = dft(&f).energy();
        assert!((e0 - e1).abs() / e0 < 1e-14);
    }

    #[test]
    fn spike_has_flat_spectrum() {
        let g = make_grid(32).unwrap();
        let mut s = Signal1::zeros(g);
        s.samples[16] = Complex64::new(1.0, 0.0);
        for z in dft(&s).samples() {
            assert!((z.norm() - g.delta()).abs() < 1e-15);
        }
        let flat = Signal1::from_fn(g, |_| Complex64::new(g.delta(), 0.0));
        assert!(idft(&flat).max_abs_diff(&s) < 1e-14);
    }

    #[test]
    fn idft_inverts_dft() {
        let g = make_grid(64).unwrap();
        let phi = gaussian(g);
        assert!(idft(&dft(&phi)).max_abs_diff(&phi) < 1e-12);
        let g32 = make_grid(32).unwrap();
        let f = random_signal(g32, 9);
        let back = idft(&dft(&idft(&dft(&f))));
        assert!(back.max_abs_diff(&f) < 1e-12);
    }

    #[test]
    fn dft_twice_reflects() {
        let g = make_grid(32).unwrap();
        let f = random_signal(g, 4);
        let ff = dft(&dft(&f));
        for n in 0..32 {
            let mirror = (32 - n) % 32;
            assert!((ff.samples()[n] - f.samples()[mirror]).norm() < 1e-10);
        }
    }

    #[test]
    fn oversample_matches_gaussian_at_half_points() {
        let g = make_grid(64).unwrap();
        let phi = gaussian(g);
        let fine = oversample2(&phi);
        assert_eq!(fine.samples().len(), 128);
        for (i, z) in fine.samples().iter().enumerate() {
            let t = fine.point(i);
            assert!((z.re - gaussian_at(t)).abs() < 1e-8 && z.im.abs() < 1e-8, "i={i}");
        }
        assert_eq!(Signal1::subsample_even(&fine), phi);
    }

    #[test]
    fn oversample_reproduces_in_band_exponential() {
        let g = make_grid(32).unwrap();
        let d = g.delta();
        for k in [1usize, 5, 16, 27, 31] {
            let xi = g.point(k);
            let f = Signal1::from_fn(g, |x| Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * xi * x));
            let fine = oversample2(&f);
            for (i, z) in fine.samples().iter().enumerate() {
                let t = fine.point(i);
                let want = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * xi * t);
                assert!((z - want).norm() < 1e-10, "k={k} i={i} d={d}");
            }
        }
    }

    #[test]
    fn translate_and_modulate() {
        let g = make_grid(32).unwrap();
        let spike = Signal1::spike(g, 16);
        let moved = translate(&spike, g.delta()).unwrap();
        assert_eq!(moved, Signal1::spike(g, 17));
        assert!(matches!(translate(&spike, 0.3 * g.delta()), Err(Error::OffGridShift(_))));

        let f = random_signal(g, 5);
        let t = translate(&f, -5.0 * g.delta()).unwrap();
        assert!((t.norm() - f.norm()).abs() < 1e-14);

        let xi0 = 3.0 * g.delta();
        let lhs = dft(&modulate(&f, xi0).unwrap());
        let rhs = translate(&dft(&f), xi0).unwrap();
        // direct computation: both sides agree up to a unimodular factor
        let ratio = lhs.samples()[7] / rhs.samples()[7];
        assert!((ratio.norm() - 1.0).abs() < 1e-12);
        for n in 0..32 {
            assert!((lhs.samples()[n] - ratio * rhs.samples()[n]).norm() < 1e-12);
        }
    }

    #[test]
    fn deterministic() {
        let g = make_grid(64).unwrap();
        let f = random_signal(g, 11);
        assert_eq!(dft(&f), dft(&f));
        assert_eq!(oversample2(&f), oversample2(&f));
    }
}
