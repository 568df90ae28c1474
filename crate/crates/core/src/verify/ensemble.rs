use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::{gaussian_at, Axes, Field2, SampleGrid, Signal1};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EnsembleKind {
    GaussianNoise,
    RandomGaborSuperposition,
    ChirpedGaussians,
    Spikes,
}

impl std::str::FromStr for EnsembleKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        serde_json::from_value(serde_json::Value::String(s.to_string())).map_err(|_| Error::UnknownKind(s.to_string()))
    }
}

/// A reproducible family of random inputs.
///
/// Smooth kinds draw their continuous parameters independently of the grid,
/// so the same seed yields samples of the same functions on every grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Ensemble {
    pub seed: u64,
    pub kind: EnsembleKind,
    pub count: usize,
}

/// One translated and modulated Gaussian `amp·φ(x − center)·e^{2πi freq·x}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GaborAtom {
    pub center: f64,
    pub freq: f64,
    pub amp: Complex64,
}

impl GaborAtom {
    pub fn eval(&self, x: f64) -> Complex64 {
        self.amp * gaussian_at(x - self.center) * Complex64::from_polar(1.0, 2.0 * PI * self.freq * x)
    }
}

const MAX_ATOMS: usize = 4;
// centers and frequencies stay well inside the smallest grid, [−2, 2)
const SPREAD: f64 = 0.5;

fn complex_normal(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

fn normalized(s: Signal1) -> Result<Signal1> {
    let norm = s.norm();
    if norm.is_nan() || norm <= 0.0 {
        return Err(Error::ZeroNorm("ensemble sample"));
    }
    Ok(s.scale(Complex64::new(1.0 / norm, 0.0)))
}

fn normalized_field(a: Field2) -> Result<Field2> {
    let norm = a.energy().sqrt();
    if norm.is_nan() || norm <= 0.0 {
        return Err(Error::ZeroNorm("ensemble sample"));
    }
    Ok(a.map(|z| z / norm))
}

impl Ensemble {
    pub fn new(seed: u64, kind: EnsembleKind, count: usize) -> Result<Self> {
        if count == 0 {
            return Err(Error::EmptyEnsemble);
        }
        Ok(Self { seed, kind, count })
    }

    fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }

    fn check(&self) -> Result<()> {
        if self.count == 0 {
            return Err(Error::EmptyEnsemble);
        }
        Ok(())
    }

    /// Samples with the atoms they were built from (empty for non-Gabor kinds).
    pub fn sample_with_log(&self, grid: SampleGrid) -> Result<Vec<(Signal1, Vec<GaborAtom>)>> {
        self.check()?;
        let mut rng = self.rng();
        let mut out = Vec::with_capacity(self.count);
        for _ in 0..self.count {
            let (raw, log) = match self.kind {
                EnsembleKind::GaussianNoise => {
                    let v = (0..grid.len()).map(|_| complex_normal(&mut rng)).collect();
                    (Signal1::new(grid, v)?, Vec::new())
                }
                EnsembleKind::RandomGaborSuperposition => {
                    let k = rng.gen_range(1..=MAX_ATOMS);
                    let atoms: Vec<GaborAtom> = (0..k)
                        .map(|_| GaborAtom {
                            center: rng.gen_range(-SPREAD..SPREAD),
                            freq: rng.gen_range(-SPREAD..SPREAD),
                            amp: complex_normal(&mut rng),
                        })
                        .collect();
                    let s = Signal1::from_fn(grid, |x| atoms.iter().map(|a| a.eval(x)).sum());
                    (s, atoms)
                }
                EnsembleKind::ChirpedGaussians => {
                    let center = rng.gen_range(-SPREAD..SPREAD);
                    let width = rng.gen_range(0.7..1.4);
                    let rate = rng.gen_range(-1.0..1.0);
                    let amp = complex_normal(&mut rng);
                    let s = Signal1::from_fn(grid, |x| {
                        let u = (x - center) / width;
                        amp * gaussian_at(u) * Complex64::from_polar(1.0, PI * rate * x * x)
                    });
                    (s, Vec::new())
                }
                EnsembleKind::Spikes => {
                    let mut v = vec![Complex64::new(0.0, 0.0); grid.len()];
                    for _ in 0..rng.gen_range(1..=3) {
                        v[rng.gen_range(0..grid.len())] += complex_normal(&mut rng);
                    }
                    (Signal1::new(grid, v)?, Vec::new())
                }
            };
            out.push((normalized(raw)?, log));
        }
        Ok(out)
    }

    /// `count` signals, each with unit `Δ`-weighted 2-norm.
    pub fn sample(&self, grid: SampleGrid) -> Result<Vec<Signal1>> {
        Ok(self.sample_with_log(grid)?.into_iter().map(|(s, _)| s).collect())
    }

    /// `count` symbols on the position × frequency grid, unit `Δ²`-norm.
    pub fn sample_symbols(&self, grid: SampleGrid) -> Result<Vec<Field2>> {
        self.check()?;
        let mut rng = self.rng();
        let axes = Axes::PositionFrequency;
        let mut out = Vec::with_capacity(self.count);
        for _ in 0..self.count {
            let raw = match self.kind {
                EnsembleKind::GaussianNoise => {
                    let n = grid.len();
                    let v = (0..n * n).map(|_| complex_normal(&mut rng)).collect();
                    Field2::new(grid, axes, v)?
                }
                EnsembleKind::RandomGaborSuperposition => {
                    let k = rng.gen_range(1..=MAX_ATOMS);
                    let atoms: Vec<[f64; 4]> =
                        (0..k).map(|_| std::array::from_fn(|_| rng.gen_range(-SPREAD..SPREAD))).collect();
                    let amps: Vec<Complex64> = (0..k).map(|_| complex_normal(&mut rng)).collect();
                    Field2::from_fn(grid, axes, |x, xi| {
                        atoms
                            .iter()
                            .zip(&amps)
                            .map(|([c1, c2, w1, w2], amp)| {
                                amp * gaussian_at(x - c1)
                                    * gaussian_at(xi - c2)
                                    * Complex64::from_polar(1.0, 2.0 * PI * (w1 * x + w2 * xi))
                            })
                            .sum()
                    })
                }
                EnsembleKind::ChirpedGaussians => {
                    let (c1, c2) = (rng.gen_range(-SPREAD..SPREAD), rng.gen_range(-SPREAD..SPREAD));
                    let (s1, s2) = (rng.gen_range(0.7..1.4), rng.gen_range(0.7..1.4));
                    let rate = rng.gen_range(-1.0..1.0);
                    let amp = complex_normal(&mut rng);
                    Field2::from_fn(grid, axes, |x, xi| {
                        amp * gaussian_at((x - c1) / s1)
                            * gaussian_at((xi - c2) / s2)
                            * Complex64::from_polar(1.0, PI * rate * x * xi)
                    })
                }
                EnsembleKind::Spikes => {
                    let n = grid.len();
                    let mut v = vec![Complex64::new(0.0, 0.0); n * n];
                    for _ in 0..rng.gen_range(1..=3) {
                        v[rng.gen_range(0..n * n)] += complex_normal(&mut rng);
                    }
                    Field2::new(grid, axes, v)?
                }
            };
            out.push(normalized_field(raw)?);
        }
        Ok(out)
    }
}
