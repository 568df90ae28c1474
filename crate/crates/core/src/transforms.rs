//! Short-time Fourier transforms and the (τ-)Wigner distributions.
//!
//! The Wigner transforms are built as the exact adjoints of the operator
//! kernels in [`crate::quantization`], so that
//! `⟨Op_τ(a) f, g⟩ = ⟨a, W_τ(g, f)⟩` holds to roundoff on the grid. A lag `d`
//! (in grid steps) runs over `[−N/2, N/2]`; the two endpoint lags alias to the
//! same frequency bin and each carries weight ½.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fft;
use crate::grid::{centered_dft2_in_place, centered_dft_in_place, Axes, Field2, SampleGrid, Signal1};

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };

/// `V_g f(x_n, ξ_k) = Δ·Σ_m f(x_m)·conj(g(x_m − x_n))·e^{−2πi x_m ξ_k}`.
pub fn stft1(f: &Signal1, g: &Signal1) -> Result<Field2> {
    let grid = f.grid();
    grid.ensure_same(&g.grid())?;
    if g.is_zero() {
        return Err(Error::ZeroWindow);
    }
    let n = grid.len();
    let half = n / 2;
    let (fs, gs) = (f.samples(), g.samples());
    let mut out = vec![ZERO; n * n];
    out.par_chunks_mut(n).enumerate().for_each(|(row, buf)| {
        for (m, z) in buf.iter_mut().enumerate() {
            *z = fs[m] * gs[(m + n + half - row) % n].conj();
        }
        centered_dft_in_place(buf, false);
    });
    Ok(Field2::from_parts(grid, Axes::PositionFrequency, out))
}

/// `V_Φ a(z, ζ)` for every lattice point `z` and every frequency `ζ`.
#[derive(Debug, Clone, PartialEq)]
pub struct Stft2Result {
    base_grid: SampleGrid,
    // block (n1, n2) holds the N×N spectrum at z = (x_{n1}, x_{n2})
    values: Vec<Complex64>,
}

impl Stft2Result {
    pub fn base_grid(&self) -> SampleGrid {
        self.base_grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    #[inline]
    pub fn get(&self, n1: usize, n2: usize, k1: usize, k2: usize) -> Complex64 {
        let n = self.base_grid.len();
        self.values[((n1 * n + n2) * n + k1) * n + k2]
    }

    /// The `N×N` spectrum at lattice point `(n1, n2)`.
    pub fn block(&self, n1: usize, n2: usize) -> &[Complex64] {
        let n = self.base_grid.len();
        let start = (n1 * n + n2) * n * n;
        &self.values[start..start + n * n]
    }

    pub fn blocks(&self) -> impl Iterator<Item = &[Complex64]> {
        let n = self.base_grid.len();
        self.values.chunks(n * n)
    }

    pub(crate) fn from_parts(base_grid: SampleGrid, values: Vec<Complex64>) -> Result<Self> {
        let n = base_grid.len();
        if values.len() != n * n * n * n {
            return Err(Error::Shape(format!("expected {} entries, got {}", n * n * n * n, values.len())));
        }
        Ok(Self { base_grid, values })
    }
}

/// For each `z = (x_{n1}, x_{n2})`, the 2-D transform of `a·conj(T_z Φ)` with
/// factor `Δ²`.
pub fn stft2(a: &Field2, window: &Field2) -> Result<Stft2Result> {
    let grid = a.grid();
    grid.ensure_same(&window.grid())?;
    grid.ensure_symbol_cap("stft2")?;
    if window.is_zero() {
        return Err(Error::ZeroWindow);
    }
    let n = grid.len();
    let mut values = vec![ZERO; n * n * n * n];
    values.par_chunks_mut(n * n).enumerate().for_each(|(z, buf)| {
        stft2_block(a.samples(), window.samples(), n, z / n, z % n, buf);
    });
    Ok(Stft2Result { base_grid: grid, values })
}

/// Fills `buf` with `V_Φ a(z, ·)` at lattice point `z = (n1, n2)`.
pub(crate) fn stft2_block(
    a: &[Complex64],
    window: &[Complex64],
    n: usize,
    n1: usize,
    n2: usize,
    buf: &mut [Complex64],
) {
    let half = n / 2;
    for m1 in 0..n {
        let w1 = (m1 + n + half - n1) % n;
        for m2 in 0..n {
            let w2 = (m2 + n + half - n2) % n;
            buf[m1 * n + m2] = a[m1 * n + m2] * window[w1 * n + w2].conj();
        }
    }
    centered_dft2_in_place(buf, n, false);
}

#[inline]
fn lag_weight(d: i64, half: i64) -> f64 {
    if d.abs() == half {
        0.5
    } else {
        1.0
    }
}

/// Cross-Wigner distribution `W(f, g)` on the position × frequency grid.
///
/// Products `f(p)·conj(g(p − d))` are placed at their midpoints `2p − d` on
/// the half grid, transformed over the lag, and brought back to the base grid
/// with the transpose of [`crate::grid::oversample2`].
pub fn wigner(f: &Signal1, g: &Signal1) -> Result<Field2> {
    let grid = f.grid();
    grid.ensure_same(&g.grid())?;
    let n = grid.len();
    let ni = n as i64;
    let half = ni / 2;
    let delta = grid.delta();
    let (fs, gs) = (f.samples(), g.samples());

    let mut rows = vec![ZERO; 2 * n * n];
    rows.par_chunks_mut(n).enumerate().for_each(|(i, h)| {
        let i = i as i64;
        let mut d = if (i - half).rem_euclid(2) == 0 { -half } else { -half + 1 };
        while d <= half {
            let p = (i + d).div_euclid(2).rem_euclid(ni);
            let q = (p - d).rem_euclid(ni);
            let sign = if d.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
            h[d.rem_euclid(ni) as usize] += fs[p as usize] * gs[q as usize].conj() * (sign * lag_weight(d, half));
            d += 2;
        }
        fft::forward(h);
        for z in h.iter_mut() {
            *z *= delta;
        }
    });

    let cols: Vec<Vec<Complex64>> = (0..n)
        .into_par_iter()
        .map(|k| {
            let col: Vec<Complex64> = (0..2 * n).map(|i| rows[i * n + k]).collect();
            fft::decimate2_adjoint(&col)
        })
        .collect();
    let mut out = vec![ZERO; n * n];
    for (k, col) in cols.iter().enumerate() {
        for (p, z) in col.iter().enumerate() {
            out[p * n + k] = *z;
        }
    }
    Ok(Field2::from_parts(grid, Axes::PositionFrequency, out))
}

/// Cross-τ-Wigner distribution. Off-grid arguments are evaluated on the
/// band-limited interpolant of the lag products, shifted by `τ·d`.
pub fn tau_wigner(f: &Signal1, g: &Signal1, tau: f64) -> Result<Field2> {
    if !(0.0..=1.0).contains(&tau) {
        return Err(Error::TauOutOfRange(tau));
    }
    let grid = f.grid();
    grid.ensure_same(&g.grid())?;
    let n = grid.len();
    let ni = n as i64;
    let half = ni / 2;
    let delta = grid.delta();
    let (fs, gs) = (f.samples(), g.samples());

    let mut acc = vec![ZERO; n * n];
    let mut lagged = vec![ZERO; n];
    for d in -half..=half {
        for (p, z) in lagged.iter_mut().enumerate() {
            let q = (p as i64 - d).rem_euclid(ni) as usize;
            *z = fs[p] * gs[q].conj();
        }
        let shifted = fft::fractional_shift(&lagged, tau * d as f64);
        let sign = if d.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
        let w = sign * lag_weight(d, half);
        let j = d.rem_euclid(ni) as usize;
        for (p, z) in shifted.iter().enumerate() {
            acc[p * n + j] += z * w;
        }
    }
    acc.par_chunks_mut(n).for_each(|row| {
        fft::forward(row);
        for z in row.iter_mut() {
            *z *= delta;
        }
    });
    Ok(Field2::from_parts(grid, Axes::PositionFrequency, acc))
}
