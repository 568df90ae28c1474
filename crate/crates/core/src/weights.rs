//! Polynomial weight families on phase space and their audits.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::SampleGrid;

/// The symplectic rotation `J(x, ξ) = (ξ, −x)`.
#[inline]
pub fn symplectic_apply(z: (f64, f64)) -> (f64, f64) {
    (z.1, -z.0)
}

fn one() -> f64 {
    1.0
}

/// A positive weight on `ℝ²`, evaluated with continuous formulas at grid
/// points (weights are never periodized).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum Weight {
    Constant {
        #[serde(default = "one")]
        c: f64,
    },
    /// `(1 + |z|²)^{s/2}`
    RadialPoly {
        s: f64,
    },
    /// `(1 + x²)^{s/2} (1 + ξ²)^{t/2}`
    TensorPoly {
        s: f64,
        t: f64,
    },
    /// `z ↦ inner(Jz)`
    SymplecticPullback {
        inner: Box<Weight>,
    },
    Reciprocal {
        inner: Box<Weight>,
    },
    Product {
        a: Box<Weight>,
        b: Box<Weight>,
    },
}

impl Default for Weight {
    fn default() -> Self {
        Weight::unit()
    }
}

impl Weight {
    pub fn unit() -> Self {
        Weight::Constant { c: 1.0 }
    }

    pub fn radial(s: f64) -> Self {
        Weight::RadialPoly { s }
    }

    pub fn tensor(s: f64, t: f64) -> Self {
        Weight::TensorPoly { s, t }
    }

    pub fn pullback(self) -> Self {
        Weight::SymplecticPullback { inner: Box::new(self) }
    }

    pub fn reciprocal(self) -> Self {
        Weight::Reciprocal { inner: Box::new(self) }
    }

    pub fn product(a: Weight, b: Weight) -> Self {
        Weight::Product { a: Box::new(a), b: Box::new(b) }
    }

    /// Rejects non-finite parameters and non-positive constants.
    pub fn validate(&self) -> Result<()> {
        match self {
            Weight::Constant { c } => {
                if !(c.is_finite() && *c > 0.0) {
                    return Err(Error::InvalidWeight(format!("constant {c} is not positive")));
                }
            }
            Weight::RadialPoly { s } => {
                if !s.is_finite() {
                    return Err(Error::InvalidWeight(format!("exponent {s} is not finite")));
                }
            }
            Weight::TensorPoly { s, t } => {
                if !(s.is_finite() && t.is_finite()) {
                    return Err(Error::InvalidWeight(format!("exponents ({s}, {t}) are not finite")));
                }
            }
            Weight::SymplecticPullback { inner } | Weight::Reciprocal { inner } => inner.validate()?,
            Weight::Product { a, b } => {
                a.validate()?;
                b.validate()?;
            }
        }
        Ok(())
    }

    pub fn is_constant_one(&self) -> bool {
        matches!(self, Weight::Constant { c } if *c == 1.0)
    }

    pub fn eval(&self, z: (f64, f64)) -> f64 {
        let (x, xi) = z;
        match self {
            Weight::Constant { c } => *c,
            Weight::RadialPoly { s } => (1.0 + x * x + xi * xi).powf(s / 2.0),
            Weight::TensorPoly { s, t } => (1.0 + x * x).powf(s / 2.0) * (1.0 + xi * xi).powf(t / 2.0),
            Weight::SymplecticPullback { inner } => inner.eval(symplectic_apply(z)),
            Weight::Reciprocal { inner } => 1.0 / inner.eval(z),
            Weight::Product { a, b } => a.eval(z) * b.eval(z),
        }
    }

    /// Values at `(x_i, x_j)`, row-major.
    pub fn eval_grid(&self, grid: SampleGrid) -> Vec<f64> {
        let n = grid.len();
        let pts = grid.points();
        let mut out = Vec::with_capacity(n * n);
        for &x in &pts {
            for &y in &pts {
                out.push(self.eval((x, y)));
            }
        }
        out
    }

    /// Whether the family is declared submultiplicative. For the polynomial
    /// families with positive exponents this holds only up to the factor
    /// `2^{s/2}` (resp. `2^{(s+t)/2}`), which [`audit_submultiplicative`] exposes.
    pub fn declared_submultiplicative(&self) -> bool {
        match self {
            Weight::Constant { c } => *c >= 1.0,
            Weight::RadialPoly { s } => *s >= 0.0,
            Weight::TensorPoly { s, t } => *s >= 0.0 && *t >= 0.0,
            Weight::SymplecticPullback { inner } => inner.declared_submultiplicative(),
            Weight::Reciprocal { .. } => false,
            Weight::Product { a, b } => a.declared_submultiplicative() && b.declared_submultiplicative(),
        }
    }
}

/// Outcome of a randomized inequality audit.
#[derive(Debug, Clone, PartialEq)]
pub struct AuditReport {
    pub pairs: usize,
    pub violations: usize,
    /// Largest observed `lhs / rhs`.
    pub worst_ratio: f64,
}

fn random_point(rng: &mut ChaCha8Rng, radius: f64) -> (f64, f64) {
    (rng.gen_range(-radius..radius), rng.gen_range(-radius..radius))
}

/// Checks `w(z₁+z₂) ≤ w(z₁)·w(z₂)` on `pairs` random pairs in the square of
/// half-width `radius`.
pub fn audit_submultiplicative(w: &Weight, pairs: usize, radius: f64, seed: u64) -> AuditReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut violations = 0;
    let mut worst = 0.0f64;
    for _ in 0..pairs {
        let z1 = random_point(&mut rng, radius);
        let z2 = random_point(&mut rng, radius);
        let lhs = w.eval((z1.0 + z2.0, z1.1 + z2.1));
        let rhs = w.eval(z1) * w.eval(z2);
        if lhs > rhs * (1.0 + 1e-12) {
            violations += 1;
        }
        worst = worst.max(lhs / rhs);
    }
    AuditReport { pairs, violations, worst_ratio: worst }
}

/// Result of fitting `m(z₁+z₂) ≤ C·v(z₁)·m(z₂)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ModerateAudit {
    pub fitted_constant: f64,
    /// Violations of the fitted constant on a second, independent batch.
    pub holdout: AuditReport,
}

/// Fits the moderateness constant on one batch of pairs and re-checks it on
/// a second batch from the same square.
///
/// A random batch undershoots the supremum, so the best few pairs of the fit
/// batch are polished by a compass search before the constant is fixed.
pub fn audit_moderate(m: &Weight, v: &Weight, pairs: usize, radius: f64, seed: u64) -> ModerateAudit {
    const POLISHED: usize = 8;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ratio = |z: [f64; 4]| m.eval((z[0] + z[2], z[1] + z[3])) / (v.eval((z[0], z[1])) * m.eval((z[2], z[3])));
    let mut batch: Vec<(f64, [f64; 4])> = (0..pairs)
        .map(|_| {
            let (a, b) = random_point(&mut rng, radius);
            let (c, d) = random_point(&mut rng, radius);
            let z = [a, b, c, d];
            (ratio(z), z)
        })
        .collect();
    batch.sort_by(|x, y| y.0.total_cmp(&x.0));
    let fitted = batch.iter().take(POLISHED).map(|&(r, z)| compass_ascent(&ratio, z, r, radius)).fold(0.0f64, f64::max);
    let mut violations = 0;
    let mut worst = 0.0f64;
    for _ in 0..pairs {
        let (a, b) = random_point(&mut rng, radius);
        let (c, d) = random_point(&mut rng, radius);
        let r = ratio([a, b, c, d]) / fitted;
        if r > 1.0 + 1e-9 {
            violations += 1;
        }
        worst = worst.max(r);
    }
    ModerateAudit { fitted_constant: fitted, holdout: AuditReport { pairs, violations, worst_ratio: worst } }
}

fn compass_ascent(f: &impl Fn([f64; 4]) -> f64, mut z: [f64; 4], mut best: f64, radius: f64) -> f64 {
    let mut step = radius / 8.0;
    while step > 1e-9 {
        let mut moved = false;
        for k in 0..4 {
            for dir in [1.0, -1.0] {
                let mut c = z;
                c[k] = (c[k] + dir * step).clamp(-radius, radius);
                let r = f(c);
                if r > best {
                    best = r;
                    z = c;
                    moved = true;
                }
            }
        }
        if !moved {
            step /= 2.0;
        }
    }
    best
}
