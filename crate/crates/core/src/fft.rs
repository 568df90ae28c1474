//! FFT plumbing shared by the grid and transform modules.
//!
//! Everything here works in *index units*: a length-`N` buffer holds the
//! samples `f(0), …, f(N-1)` and the band-limited interpolant is the
//! trigonometric polynomial
//!
//! ```text
//! p(u) = (1/N) [ Σ_{|κ|<N/2} F_κ e^{2πiκu/N} + F_{N/2} cos(πu) ]
//! ```
//!
//! with the Nyquist bin split symmetrically, so real samples interpolate to a
//! real function and `p(n) = f(n)` at every node.

use std::cell::RefCell;
use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

type PlanCache = (FftPlanner<f64>, HashMap<(usize, bool), Arc<dyn Fft<f64>>>);

thread_local! {
    static PLANS: RefCell<PlanCache> =
        RefCell::new((FftPlanner::new(), HashMap::new()));
}

fn plan(len: usize, forward: bool) -> Arc<dyn Fft<f64>> {
    PLANS.with(|cell| {
        let mut guard = cell.borrow_mut();
        let (planner, cache) = &mut *guard;
        cache
            .entry((len, forward))
            .or_insert_with(|| if forward { planner.plan_fft_forward(len) } else { planner.plan_fft_inverse(len) })
            .clone()
    })
}

/// Unnormalized forward FFT, `X_κ = Σ_n x_n e^{-2πiκn/N}`.
pub(crate) fn forward(buf: &mut [Complex64]) {
    plan(buf.len(), true).process(buf);
}

/// Unnormalized inverse FFT, `x_n = Σ_κ X_κ e^{2πiκn/N}`.
pub(crate) fn inverse(buf: &mut [Complex64]) {
    plan(buf.len(), false).process(buf);
}

/// Signed frequency of FFT bin `k` for an even length `n`; the Nyquist bin
/// reports `n/2`.
#[inline]
pub(crate) fn signed_bin(k: usize, n: usize) -> i64 {
    if k <= n / 2 {
        k as i64
    } else {
        k as i64 - n as i64
    }
}

/// `e^{2πi·num/den}` with the numerator reduced modulo `den` first, so large
/// integer phases do not lose precision.
#[inline]
pub(crate) fn unit_root(num: i64, den: i64) -> Complex64 {
    let r = num.rem_euclid(den);
    Complex64::from_polar(1.0, 2.0 * PI * r as f64 / den as f64)
}

/// Samples of the interpolant at the half-integer refinement: output index `i`
/// holds `p(i/2)`. Even outputs copy the input nodes verbatim.
pub(crate) fn upsample2(samples: &[Complex64]) -> Vec<Complex64> {
    let n = samples.len();
    let half = n / 2;
    let mut spec = samples.to_vec();
    forward(&mut spec);
    let mut padded = vec![Complex64::new(0.0, 0.0); 2 * n];
    padded[..half].copy_from_slice(&spec[..half]);
    for k in 1..half {
        padded[2 * n - k] = spec[n - k];
    }
    padded[half] = spec[half] * 0.5;
    padded[2 * n - half] = spec[half] * 0.5;
    inverse(&mut padded);
    let scale = 1.0 / n as f64;
    let mut out: Vec<Complex64> = padded.into_iter().map(|z| z * scale).collect();
    for (j, s) in samples.iter().enumerate() {
        out[2 * j] = *s;
    }
    out
}

/// Transpose of [`upsample2`]: `(Dᵀv)(n) = Σ_i p_n(i/2) v(i)`, where `p_n` is
/// the interpolant of the unit spike at node `n`. Band-limits a length-`2N`
/// sequence and folds it back onto the coarse grid.
pub(crate) fn decimate2_adjoint(fine: &[Complex64]) -> Vec<Complex64> {
    let m = fine.len();
    let n = m / 2;
    let half = n / 2;
    let mut spec = fine.to_vec();
    forward(&mut spec);
    let mut coarse = vec![Complex64::new(0.0, 0.0); n];
    coarse[..half].copy_from_slice(&spec[..half]);
    for k in 1..half {
        coarse[n - k] = spec[m - k];
    }
    coarse[half] = (spec[half] + spec[m - half]) * 0.5;
    inverse(&mut coarse);
    let scale = 1.0 / n as f64;
    coarse.into_iter().map(|z| z * scale).collect()
}

/// Evaluates the interpolant at `n + shift` for every node `n`.
pub(crate) fn fractional_shift(samples: &[Complex64], shift: f64) -> Vec<Complex64> {
    let n = samples.len();
    let mut spec = samples.to_vec();
    forward(&mut spec);
    for (k, z) in spec.iter_mut().enumerate() {
        let kappa = signed_bin(k, n);
        if 2 * k == n {
            *z *= (PI * shift).cos();
        } else {
            *z *= Complex64::from_polar(1.0, 2.0 * PI * kappa as f64 * shift / n as f64);
        }
    }
    inverse(&mut spec);
    let scale = 1.0 / n as f64;
    spec.into_iter().map(|z| z * scale).collect()
}

/// Direct evaluation of the interpolant at an arbitrary index-unit position.
/// O(N); used by tests and by the cross-check routes.
pub fn interpolant_at(samples: &[Complex64], u: f64) -> Complex64 {
    let n = samples.len();
    let mut spec = samples.to_vec();
    forward(&mut spec);
    let mut acc = Complex64::new(0.0, 0.0);
    for (k, z) in spec.iter().enumerate() {
        let kappa = signed_bin(k, n);
        if 2 * k == n {
            acc += z * (PI * u).cos();
        } else {
            acc += z * Complex64::from_polar(1.0, 2.0 * PI * kappa as f64 * u / n as f64);
        }
    }
    acc / n as f64
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample(n: usize) -> Vec<Complex64> {
        (0..n).map(|i| Complex64::new((i as f64 * 0.37).sin(), (i as f64 * 1.3).cos() * 0.5)).collect()
    }

    #[test]
    fn upsample_matches_direct_interpolant() {
        let s = sample(16);
        let up = upsample2(&s);
        for (i, v) in up.iter().enumerate() {
            let direct = interpolant_at(&s, i as f64 / 2.0);
            assert!((v - direct).norm() < 1e-12, "i={i}");
        }
    }

    #[test]
    fn decimate_is_transpose_of_upsample() {
        let n = 8;
        let x = sample(n);
        let y: Vec<Complex64> = (0..2 * n).map(|i| Complex64::new((i as f64).cos(), (i as f64 * 0.2).sin())).collect();
        // <Ux, y> = <x, Uᵀy> with the bilinear (not sesquilinear) pairing
        let ux = upsample2(&x);
        let uty = decimate2_adjoint(&y);
        let lhs: Complex64 = ux.iter().zip(&y).map(|(a, b)| a * b).sum();
        let rhs: Complex64 = x.iter().zip(&uty).map(|(a, b)| a * b).sum();
        assert!((lhs - rhs).norm() < 1e-12);
    }

    #[test]
    fn fractional_shift_integer_is_rotation() {
        let s = sample(12);
        let sh = fractional_shift(&s, 3.0);
        for i in 0..12 {
            assert!((sh[i] - s[(i + 3) % 12]).norm() < 1e-12);
        }
    }

    #[test]
    fn fractional_shift_matches_direct_interpolant() {
        let s = sample(10);
        let sh = fractional_shift(&s, 0.37);
        for (i, v) in sh.iter().enumerate() {
            assert!((v - interpolant_at(&s, i as f64 + 0.37)).norm() < 1e-12);
        }
    }
}
