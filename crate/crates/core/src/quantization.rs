//! Weyl, τ- and Kohn–Nirenberg quantization of grid symbols as dense
//! operator matrices, and conversion of symbols between quantizations.
//!
//! With `B(n, d) = Δ·Σ_k a(x_n, ξ_k)·e^{2πi d(k − N/2)/N}` the kernel of the
//! τ-operator is
//!
//! ```text
//! K_τ(p, q) = Σ_{d ≡ p − q (mod N), |d| ≤ N/2} w_d · B̃(p − τd, d)
//! ```
//!
//! where `B̃` is the band-limited interpolant of `B` in its position argument
//! and `w_d = ½` for the two endpoint lags. The operator acts as
//! `(Af)(x_p) = Δ·Σ_q K(p, q) f(x_q)`.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fft;
use crate::grid::{centered_dft2_in_place, Axes, Field2, SampleGrid, Signal1};
use crate::transforms::wigner;

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct TauParam(f64);

impl TauParam {
    pub const WEYL: TauParam = TauParam(0.5);
    pub const KOHN_NIRENBERG: TauParam = TauParam(0.0);

    pub fn new(tau: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&tau) {
            return Err(Error::TauOutOfRange(tau));
        }
        Ok(Self(tau))
    }

    pub fn value(&self) -> f64 {
        self.0
    }
}

impl TryFrom<f64> for TauParam {
    type Error = Error;
    fn try_from(v: f64) -> Result<Self> {
        TauParam::new(v)
    }
}

impl From<TauParam> for f64 {
    fn from(t: TauParam) -> f64 {
        t.0
    }
}

/// Dense kernel `K(n, m)` with the grid measure convention
/// `(Af)(x_n) = Δ·Σ_m K(n, m) f(x_m)`.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorMatrix {
    grid: SampleGrid,
    entries: Vec<Complex64>,
}

impl OperatorMatrix {
    pub fn new(grid: SampleGrid, entries: Vec<Complex64>) -> Result<Self> {
        let n = grid.len();
        if entries.len() != n * n {
            return Err(Error::Shape(format!("operator has {} entries, expected {}", entries.len(), n * n)));
        }
        if let Some(i) = entries.iter().position(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite(i));
        }
        Ok(Self { grid, entries })
    }

    /// The identity operator, `K = I/Δ`.
    pub fn identity(grid: SampleGrid) -> Self {
        let n = grid.len();
        let mut entries = vec![ZERO; n * n];
        for i in 0..n {
            entries[i * n + i] = Complex64::new(1.0 / grid.delta(), 0.0);
        }
        Self { grid, entries }
    }

    pub fn grid(&self) -> SampleGrid {
        self.grid
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    #[inline]
    pub fn get(&self, n: usize, m: usize) -> Complex64 {
        self.entries[n * self.grid.len() + m]
    }

    pub fn frobenius(&self) -> f64 {
        self.entries.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `‖A − B‖_F / ‖B‖_F`.
    pub fn relative_distance(&self, reference: &OperatorMatrix) -> Result<f64> {
        self.grid.ensure_same(&reference.grid)?;
        let diff: f64 =
            self.entries.iter().zip(&reference.entries).map(|(a, b)| (a - b).norm_sqr()).sum::<f64>().sqrt();
        Ok(diff / reference.frobenius())
    }

    /// Largest `|K(n, m) − conj(K(m, n))|`.
    pub fn hermitian_defect(&self) -> f64 {
        let n = self.grid.len();
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                worst = worst.max((self.get(i, j) - self.get(j, i).conj()).norm());
            }
        }
        worst
    }
}

/// `(Af)(x_n) = Δ·Σ_m K(n, m) f(x_m)`.
pub fn apply(op: &OperatorMatrix, f: &Signal1) -> Result<Signal1> {
    op.grid.ensure_same(&f.grid())?;
    let n = op.grid.len();
    let d = op.grid.delta();
    let fs = f.samples();
    let out =
        op.entries.par_chunks(n).map(|row| row.iter().zip(fs).map(|(k, v)| k * v).sum::<Complex64>() * d).collect();
    Signal1::new(op.grid, out)
}

#[inline]
fn lag_weight(d: i64, half: i64) -> f64 {
    if d.abs() == half {
        0.5
    } else {
        1.0
    }
}

// B(n, j) for j = d mod N, stored column-major: column j is contiguous.
fn lag_columns(a: &Field2) -> Vec<Vec<Complex64>> {
    let n = a.grid().len();
    let delta = a.grid().delta();
    let rows: Vec<Vec<Complex64>> = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut row = a.row(i).to_vec();
            fft::inverse(&mut row);
            for (j, z) in row.iter_mut().enumerate() {
                *z *= if j % 2 == 0 { delta } else { -delta };
            }
            row
        })
        .collect();
    (0..n).map(|j| rows.iter().map(|r| r[j]).collect()).collect()
}

fn check_symbol(a: &Field2) -> Result<()> {
    a.grid().ensure_symbol_cap("operator assembly")
}

/// Weyl operator of `a`. Each lag column is oversampled by two along the
/// position axis and read at the midpoint index `2p − d`.
pub fn weyl_matrix(a: &Field2) -> Result<OperatorMatrix> {
    check_symbol(a)?;
    let grid = a.grid();
    let n = grid.len();
    let ni = n as i64;
    let half = ni / 2;
    let fine: Vec<Vec<Complex64>> = lag_columns(a).par_iter().map(|c| fft::upsample2(c)).collect();
    let mut entries = vec![ZERO; n * n];
    entries.par_chunks_mut(n).enumerate().for_each(|(p, row)| {
        let p = p as i64;
        for d in -half..=half {
            let q = (p - d).rem_euclid(ni) as usize;
            let i = (2 * p - d).rem_euclid(2 * ni) as usize;
            row[q] += fine[d.rem_euclid(ni) as usize][i] * lag_weight(d, half);
        }
    });
    Ok(OperatorMatrix { grid, entries })
}

/// τ-operator of `a`; the lag column `d` is evaluated at `p − τd` by an exact
/// band-limited fractional shift.
pub fn tau_matrix(a: &Field2, tau: TauParam) -> Result<OperatorMatrix> {
    check_symbol(a)?;
    let grid = a.grid();
    let n = grid.len();
    let ni = n as i64;
    let half = ni / 2;
    let tau = tau.value();
    let cols = lag_columns(a);
    let shifted: Vec<(i64, Vec<Complex64>)> = (-half..=half)
        .into_par_iter()
        .map(|d| (d, fft::fractional_shift(&cols[d.rem_euclid(ni) as usize], -tau * d as f64)))
        .collect();
    let mut entries = vec![ZERO; n * n];
    for (d, s) in &shifted {
        let w = lag_weight(*d, half);
        for (p, z) in s.iter().enumerate() {
            let q = (p as i64 - d).rem_euclid(ni) as usize;
            entries[p * n + q] += z * w;
        }
    }
    Ok(OperatorMatrix { grid, entries })
}

/// Kohn–Nirenberg operator, `τ = 0`.
pub fn kn_matrix(a: &Field2) -> Result<OperatorMatrix> {
    tau_matrix(a, TauParam::KOHN_NIRENBERG)
}

/// Weyl operator through its weak definition: entry `(n, m)` is the pairing
/// `Δ²·Σ a·conj(W(δ_n, δ_m))` with unit-mass spikes. Needs `N²` Wigner
/// transforms; meant as an independent cross-check of [`weyl_matrix`].
pub fn weyl_matrix_weak(a: &Field2) -> Result<OperatorMatrix> {
    check_symbol(a)?;
    let grid = a.grid();
    let n = grid.len();
    let d2 = grid.delta() * grid.delta();
    let spikes: Vec<Signal1> = (0..n).map(|i| Signal1::spike(grid, i)).collect();
    let rows: Result<Vec<Vec<Complex64>>> = (0..n)
        .into_par_iter()
        .map(|r| {
            (0..n)
                .map(|c| {
                    let w = wigner(&spikes[r], &spikes[c])?;
                    let pairing: Complex64 = a.samples().iter().zip(w.samples()).map(|(x, y)| x * y.conj()).sum();
                    Ok(pairing * d2)
                })
                .collect()
        })
        .collect();
    let entries = rows?.into_iter().flatten().collect();
    Ok(OperatorMatrix { grid, entries })
}

/// Multiplies the symbol spectrum by `e^{−2πi (τ₂ − τ₁) ξ₁ξ₂}`, so that the
/// τ₂-operator of the result equals the τ₁-operator of `a`.
pub fn convert_symbol(a: &Field2, from: TauParam, to: TauParam) -> Field2 {
    let sigma = to.value() - from.value();
    if sigma == 0.0 {
        return a.clone();
    }
    let n = a.grid().len();
    let half = (n / 2) as f64;
    let mut spec = a.samples().to_vec();
    centered_dft2_in_place(&mut spec, n, false);
    for k1 in 0..n {
        let u = k1 as f64 - half;
        for k2 in 0..n {
            let v = k2 as f64 - half;
            let phase = -2.0 * std::f64::consts::PI * sigma * u * v / n as f64;
            spec[k1 * n + k2] *= Complex64::from_polar(1.0, phase);
        }
    }
    centered_dft2_in_place(&mut spec, n, true);
    Field2::from_parts(a.grid(), Axes::PositionFrequency, spec)
}

// F⁻¹ of e^{sign·πi ξ₁ξ₂}·F, with the phase reduced exactly in integers.
fn chirp_multiplier(a: &Field2, sign: i64) -> Field2 {
    let n = a.grid().len();
    let ni = n as i64;
    let half = ni / 2;
    let mut spec = a.samples().to_vec();
    centered_dft2_in_place(&mut spec, n, false);
    for k1 in 0..ni {
        for k2 in 0..ni {
            // ξ₁ξ₂ = (k₁ − N/2)(k₂ − N/2)/N
            let m = (k1 - half) * (k2 - half);
            spec[(k1 * ni + k2) as usize] *= fft::unit_root(sign * m, 2 * ni);
        }
    }
    centered_dft2_in_place(&mut spec, n, true);
    Field2::from_parts(a.grid(), Axes::PositionFrequency, spec)
}

/// Weyl symbol of the Kohn–Nirenberg operator of `a_kn`:
/// `F⁻¹ e^{−πi ξ₁ξ₂} F a_kn`.
pub fn weyl_from_kn(a_kn: &Field2) -> Field2 {
    chirp_multiplier(a_kn, -1)
}

/// Kohn–Nirenberg symbol of the Weyl operator of `a_weyl`; inverse of
/// [`weyl_from_kn`].
pub fn kn_from_weyl(a_weyl: &Field2) -> Field2 {
    chirp_multiplier(a_weyl, 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{gaussian, gaussian_at, make_grid};
    use crate::transforms::tau_wigner;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::PI;

    fn gabor_mix(grid: SampleGrid, seed: u64) -> Signal1 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let atoms: Vec<(f64, f64, Complex64)> = (0..3)
            .map(|_| {
                (
                    rng.gen_range(-0.8..0.8),
                    rng.gen_range(-0.8..0.8),
                    Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
                )
            })
            .collect();
        Signal1::from_fn(grid, |x| {
            atoms
                .iter()
                .map(|(c, w, amp)| amp * gaussian_at(x - c) * Complex64::from_polar(1.0, 2.0 * PI * w * x))
                .sum()
        })
    }

    fn smooth_symbol(grid: SampleGrid, seed: u64) -> Field2 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (c1, c2, w1, w2): (f64, f64, f64, f64) =
            (rng.gen_range(-0.5..0.5), rng.gen_range(-0.5..0.5), rng.gen_range(-0.5..0.5), rng.gen_range(-0.5..0.5));
        let tilt = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        Field2::from_fn(grid, Axes::PositionFrequency, |x, xi| {
            let bump = (-PI * ((x - c1).powi(2) + (xi - c2).powi(2))).exp();
            Complex64::from_polar(bump, 2.0 * PI * (w1 * x + w2 * xi)) * (Complex64::new(1.0, 0.0) + tilt * x * 0.3)
        })
    }

    fn rel(a: &Signal1, b: &Signal1) -> f64 {
        let d: f64 = a.samples().iter().zip(b.samples()).map(|(x, y)| (x - y).norm_sqr()).sum();
        (d / b.samples().iter().map(|z| z.norm_sqr()).sum::<f64>()).sqrt()
    }

    #[test]
    fn constant_symbol_is_identity() {
        let grid = make_grid(32).unwrap();
        let one = Field2::constant(grid, Complex64::new(1.0, 0.0));
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let f = Signal1::from_fn(grid, |_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
        assert!(rel(&apply(&weyl_matrix(&one).unwrap(), &f).unwrap(), &f) < 1e-8);
        for tau in [0.0, 0.3, 0.5, 1.0] {
            let op = tau_matrix(&one, TauParam::new(tau).unwrap()).unwrap();
            assert!(rel(&apply(&op, &f).unwrap(), &f) < 1e-8);
        }
        let g16 = make_grid(16).unwrap();
        let weak = weyl_matrix_weak(&Field2::constant(g16, Complex64::new(1.0, 0.0))).unwrap();
        assert!(weak.relative_distance(&OperatorMatrix::identity(g16)).unwrap() < 1e-8);
    }

    #[test]
    fn position_symbol_is_multiplication() {
        let grid = make_grid(64).unwrap();
        let f = gabor_mix(grid, 2);
        let xa = Field2::from_fn(grid, Axes::PositionFrequency, |x, _| Complex64::new(x, 0.0));
        let want: Vec<Complex64> = (0..64).map(|n| f.samples()[n] * grid.point(n)).collect();
        let want = Signal1::new(grid, want).unwrap();
        let got = apply(&weyl_matrix(&xa).unwrap(), &f).unwrap();
        assert!(rel(&got, &want) < 1e-6);

        let h = Field2::from_fn(grid, Axes::PositionFrequency, |x, _| Complex64::new((x * 0.7).cos() + 0.2 * x, 0.0));
        let hwant: Vec<Complex64> =
            (0..64).map(|n| f.samples()[n] * ((grid.point(n) * 0.7).cos() + 0.2 * grid.point(n))).collect();
        let hwant = Signal1::new(grid, hwant).unwrap();
        for tau in [0.0, 0.25, 0.5, 1.0] {
            let got = apply(&tau_matrix(&h, TauParam::new(tau).unwrap()).unwrap(), &f).unwrap();
            assert!(rel(&got, &hwant) < 1e-6, "tau={tau}");
        }
    }

    #[test]
    fn wigner_of_gaussian_gives_projector() {
        let grid = make_grid(64).unwrap();
        let phi = gaussian(grid);
        let a = Field2::from_fn(grid, Axes::PositionFrequency, |x, xi| {
            Complex64::new(2.0 * (-2.0 * PI * (x * x + xi * xi)).exp(), 0.0)
        });
        let op = weyl_matrix(&a).unwrap();
        for seed in 0..5 {
            let f = gabor_mix(grid, 10 + seed);
            let want = phi.scale(f.inner(&phi).unwrap());
            assert!(rel(&apply(&op, &f).unwrap(), &want) < 1e-5);
        }
        assert!(rel(&apply(&op, &phi).unwrap(), &phi) < 1e-5);
    }

    #[test]
    fn kernel_and_weak_routes_agree() {
        let grid = make_grid(16).unwrap();
        for seed in 0..3 {
            let a = smooth_symbol(grid, seed);
            let k = weyl_matrix(&a).unwrap();
            let w = weyl_matrix_weak(&a).unwrap();
            assert!(w.relative_distance(&k).unwrap() < 1e-8);
        }
        let a1 = smooth_symbol(grid, 7);
        let a2 = smooth_symbol(grid, 8);
        let sum = weyl_matrix_weak(&a1.add(&a2).unwrap()).unwrap();
        let parts: Vec<Complex64> = weyl_matrix_weak(&a1)
            .unwrap()
            .entries()
            .iter()
            .zip(weyl_matrix_weak(&a2).unwrap().entries())
            .map(|(x, y)| x + y)
            .collect();
        let parts = OperatorMatrix::new(grid, parts).unwrap();
        assert!(sum.relative_distance(&parts).unwrap() < 1e-14);
    }

    #[test]
    fn weak_definition_pairing() {
        let grid = make_grid(16).unwrap();
        let a = smooth_symbol(grid, 3);
        let f = gabor_mix(grid, 4);
        let g = gabor_mix(grid, 5);
        let lhs = apply(&weyl_matrix(&a).unwrap(), &f).unwrap().inner(&g).unwrap();
        let rhs = a.inner(&wigner(&g, &f).unwrap()).unwrap();
        assert!((lhs - rhs).norm() / rhs.norm() < 1e-6);
        for tau in [0.0, 0.3, 1.0] {
            let t = TauParam::new(tau).unwrap();
            let lhs = apply(&tau_matrix(&a, t).unwrap(), &f).unwrap().inner(&g).unwrap();
            let rhs = a.inner(&tau_wigner(&g, &f, tau).unwrap()).unwrap();
            assert!((lhs - rhs).norm() / rhs.norm() < 1e-10, "tau={tau}");
        }
    }

    #[test]
    fn real_symbol_gives_hermitian_weyl_operator() {
        let grid = make_grid(32).unwrap();
        let a = smooth_symbol(grid, 6).map(|z| Complex64::new(z.re, 0.0));
        let op = weyl_matrix(&a).unwrap();
        let scale = op.entries().iter().map(|z| z.norm()).fold(0.0, f64::max);
        assert!(op.hermitian_defect() / scale < 1e-10);
        let kn = kn_matrix(&a).unwrap();
        assert!(kn.hermitian_defect() / scale > 1e-4);
    }

    #[test]
    fn tau_half_is_weyl() {
        let grid = make_grid(32).unwrap();
        let a = smooth_symbol(grid, 9);
        let w = weyl_matrix(&a).unwrap();
        let t = tau_matrix(&a, TauParam::WEYL).unwrap();
        assert!(t.relative_distance(&w).unwrap() < 1e-8);
    }

    #[test]
    fn conversion_covariance() {
        let grid = make_grid(32).unwrap();
        let a = smooth_symbol(grid, 11);
        for (t1, t2) in [(0.0, 0.5), (0.5, 1.0), (0.3, 0.7), (0.5, 0.0)] {
            let (t1, t2) = (TauParam::new(t1).unwrap(), TauParam::new(t2).unwrap());
            let lhs = tau_matrix(&convert_symbol(&a, t1, t2), t2).unwrap();
            let rhs = tau_matrix(&a, t1).unwrap();
            assert!(lhs.relative_distance(&rhs).unwrap() < 1e-6);
        }
        let t = TauParam::new(0.3).unwrap();
        assert_eq!(convert_symbol(&a, t, t), a);
        let back = convert_symbol(&convert_symbol(&a, t, TauParam::new(0.9).unwrap()), TauParam::new(0.9).unwrap(), t);
        assert!(back.max_abs_diff(&a) < 1e-12);
    }

    #[test]
    fn chirp_routes() {
        let grid = make_grid(32).unwrap();
        let a = smooth_symbol(grid, 12);
        let via_convert = convert_symbol(&a, TauParam::KOHN_NIRENBERG, TauParam::WEYL);
        assert!(weyl_from_kn(&a).max_abs_diff(&via_convert) < 1e-10);
        let via_convert = convert_symbol(&a, TauParam::WEYL, TauParam::KOHN_NIRENBERG);
        assert!(kn_from_weyl(&a).max_abs_diff(&via_convert) < 1e-10);
        assert!(kn_from_weyl(&weyl_from_kn(&a)).max_abs_diff(&a) < 1e-12);
        let one = Field2::constant(grid, Complex64::new(1.0, 0.0));
        assert!(weyl_from_kn(&one).max_abs_diff(&one) < 1e-8);
        // the KN operator of a equals the Weyl operator of its converted symbol
        let kn = kn_matrix(&a).unwrap();
        let w = weyl_matrix(&weyl_from_kn(&a)).unwrap();
        assert!(w.relative_distance(&kn).unwrap() < 1e-6);
    }

    #[test]
    fn apply_basics() {
        let grid = make_grid(16).unwrap();
        let f = gabor_mix(grid, 13);
        assert!(rel(&apply(&OperatorMatrix::identity(grid), &f).unwrap(), &f) < 1e-15);
        let op = weyl_matrix(&smooth_symbol(grid, 14)).unwrap();
        let g = gabor_mix(grid, 15);
        let alpha = Complex64::new(0.2, -0.9);
        let lhs = apply(
            &op,
            &Signal1::new(grid, f.samples().iter().zip(g.samples()).map(|(x, y)| x * alpha + y).collect()).unwrap(),
        )
        .unwrap();
        let af = apply(&op, &f).unwrap();
        let ag = apply(&op, &g).unwrap();
        for n in 0..16 {
            assert!((lhs.samples()[n] - (af.samples()[n] * alpha + ag.samples()[n])).norm() < 1e-12);
        }
        assert!(matches!(apply(&op, &gaussian(make_grid(32).unwrap())), Err(Error::GridMismatch { .. })));
        assert!(matches!(
            weyl_matrix(&Field2::zeros(make_grid(128).unwrap(), Axes::PositionFrequency)),
            Err(Error::CapExceeded { .. })
        ));
        assert!(TauParam::new(-0.1).is_err());
    }
}
