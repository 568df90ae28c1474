//! Weighted mixed norms, and the modulation and Wiener amalgam norms built on
//! them.
//!
//! Every discrete integral carries the grid measure: a sum over one axis is
//! multiplied by `Δ`, so for finite exponents the inner norm is
//! `(Δ·Σ|F·m|^p)^{1/p}`. An infinite exponent takes the maximum of the
//! weighted values.

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::grid::{Field2, Signal1};
use crate::transforms::{stft1, stft2_block};
use crate::weights::Weight;

type Q = Ratio<i128>;

/// An exponent in `[1, ∞]`, stored exactly as its reciprocal `1/p ∈ [0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Exponent {
    recip: Q,
}

impl Exponent {
    pub const INF: Exponent = Exponent { recip: Ratio::new_raw(0, 1) };
    pub const ONE: Exponent = Exponent { recip: Ratio::new_raw(1, 1) };
    pub const TWO: Exponent = Exponent { recip: Ratio::new_raw(1, 2) };

    pub fn from_recip(recip: Q) -> Result<Self> {
        if recip < Q::zero() || recip > Q::one() {
            return Err(Error::InvalidExponent(format!("1/p = {recip} is outside [0, 1]")));
        }
        Ok(Self { recip })
    }

    /// `p = num/den`.
    pub fn ratio(num: i128, den: i128) -> Result<Self> {
        if num <= 0 || den <= 0 {
            return Err(Error::InvalidExponent(format!("{num}/{den} is not a positive ratio")));
        }
        Self::from_recip(Q::new(den, num))
    }

    pub fn integer(p: i128) -> Result<Self> {
        Self::ratio(p, 1)
    }

    pub fn recip(&self) -> Q {
        self.recip
    }

    pub fn is_inf(&self) -> bool {
        self.recip.is_zero()
    }

    pub fn value(&self) -> f64 {
        if self.is_inf() {
            f64::INFINITY
        } else {
            *self.recip.denom() as f64 / *self.recip.numer() as f64
        }
    }

    /// Hölder conjugate `p′` with `1/p + 1/p′ = 1`.
    pub fn conj(&self) -> Exponent {
        Exponent { recip: Q::one() - self.recip }
    }

    fn parse_decimal(s: &str) -> Option<Q> {
        let (int_part, frac_part) = match s.split_once('.') {
            Some((a, b)) => (a, b),
            None => (s, ""),
        };
        if int_part.is_empty() && frac_part.is_empty() {
            return None;
        }
        if !int_part.chars().all(|c| c.is_ascii_digit()) || !frac_part.chars().all(|c| c.is_ascii_digit()) {
            return None;
        }
        if frac_part.len() > 18 {
            return None;
        }
        let digits = format!("{int_part}{frac_part}");
        let numer: i128 = digits.parse().ok()?;
        let denom = 10i128.checked_pow(frac_part.len() as u32)?;
        Some(Q::new(numer, denom))
    }
}

impl FromStr for Exponent {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let lower = t.to_ascii_lowercase();
        if matches!(lower.as_str(), "inf" | "infinity" | "∞") {
            return Ok(Exponent::INF);
        }
        let bad =
            || Error::InvalidExponent(format!("cannot parse {s:?}; expected a number ≥ 1, a ratio a/b, or \"inf\""));
        let p = if let Some((a, b)) = t.split_once('/') {
            let a: i128 = a.trim().parse().map_err(|_| bad())?;
            let b: i128 = b.trim().parse().map_err(|_| bad())?;
            if a <= 0 || b <= 0 {
                return Err(bad());
            }
            Q::new(a, b)
        } else {
            Exponent::parse_decimal(t).ok_or_else(bad)?
        };
        if p < Q::one() {
            return Err(Error::InvalidExponent(format!("p = {t} is below 1")));
        }
        Ok(Exponent { recip: p.recip() })
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_inf() {
            return f.write_str("inf");
        }
        let p = self.recip.recip();
        if p.is_integer() {
            write!(f, "{}", p.numer())
        } else {
            write!(f, "{}/{}", p.numer(), p.denom())
        }
    }
}

impl Serialize for Exponent {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        if !self.is_inf() {
            let p = self.recip.recip();
            if p.is_integer() {
                if let Ok(v) = u64::try_from(*p.numer()) {
                    return s.serialize_u64(v);
                }
            }
        }
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Exponent {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        let text = match &v {
            serde_json::Value::String(s) => s.clone(),
            serde_json::Value::Number(n) => n.to_string(),
            other => return Err(serde::de::Error::custom(format!("invalid exponent {other}"))),
        };
        text.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Order {
    /// Inner over the first axis, outer over the second.
    Modulation,
    /// Inner over the second axis, outer over the first.
    Amalgam,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NormSpec {
    pub p: Exponent,
    pub q: Exponent,
    #[serde(default)]
    pub weight: Weight,
    pub order: Order,
}

impl NormSpec {
    pub fn new(p: Exponent, q: Exponent, weight: Weight, order: Order) -> Self {
        Self { p, q, weight, order }
    }

    pub fn modulation(p: Exponent, q: Exponent, weight: Weight) -> Self {
        Self::new(p, q, weight, Order::Modulation)
    }

    pub fn amalgam(p: Exponent, q: Exponent, weight: Weight) -> Self {
        Self::new(p, q, weight, Order::Amalgam)
    }

    fn expect_order(&self, order: Order) -> Result<()> {
        if self.order != order {
            return Err(Error::OrderMismatch(format!("expected {order:?} order, got {:?}", self.order)));
        }
        self.weight.validate()
    }
}

/// Accumulates one `ℓ^p` norm with measure `mu` per term.
#[derive(Clone, Copy)]
struct Acc {
    p: f64,
    inf: bool,
    value: f64,
}

impl Acc {
    fn new(e: Exponent) -> Self {
        Self { p: e.value(), inf: e.is_inf(), value: 0.0 }
    }

    #[inline]
    fn push(&mut self, x: f64) {
        if self.inf {
            self.value = self.value.max(x);
        } else if self.p == 1.0 {
            self.value += x;
        } else if self.p == 2.0 {
            self.value += x * x;
        } else {
            self.value += x.powf(self.p);
        }
    }

    fn finish(&self, mu: f64) -> f64 {
        if self.inf {
            self.value
        } else if self.p == 1.0 {
            self.value * mu
        } else if self.p == 2.0 {
            (self.value * mu).sqrt()
        } else {
            (self.value * mu).powf(1.0 / self.p)
        }
    }
}

// Nested norm of |values|·weight over an n×n row-major array. `inner_along_row`
// selects whether the inner sum runs along a row (over the second index).
fn nested(values: &[f64], n: usize, p: Exponent, q: Exponent, inner_along_row: bool, mu: f64) -> f64 {
    let mut outer = Acc::new(q);
    for a in 0..n {
        let mut inner = Acc::new(p);
        for b in 0..n {
            let idx = if inner_along_row { a * n + b } else { b * n + a };
            inner.push(values[idx]);
        }
        outer.push(inner.finish(mu));
    }
    outer.finish(mu)
}

fn weighted_magnitudes(field: &Field2, weight: &Weight) -> Vec<f64> {
    if weight.is_constant_one() {
        return field.samples().iter().map(|z| z.norm()).collect();
    }
    let w = weight.eval_grid(field.grid());
    field.samples().iter().zip(w).map(|(z, w)| z.norm() * w).collect()
}

/// Weighted mixed norm of a field with the grid measure `Δ` per axis.
pub fn mixed_norm(field: &Field2, spec: &NormSpec) -> f64 {
    let n = field.grid().len();
    let mags = weighted_magnitudes(field, &spec.weight);
    let along_row = spec.order == Order::Amalgam;
    nested(&mags, n, spec.p, spec.q, along_row, field.grid().delta())
}

/// The same nested norm with counting measure (no `Δ` factors).
pub fn mixed_norm_counting(field: &Field2, spec: &NormSpec) -> f64 {
    let n = field.grid().len();
    let mags = weighted_magnitudes(field, &spec.weight);
    nested(&mags, n, spec.p, spec.q, spec.order == Order::Amalgam, 1.0)
}

/// `‖V_g f · m‖_{L^{p,q}}`, inner over position.
pub fn modulation_norm(f: &Signal1, window: &Signal1, spec: &NormSpec) -> Result<f64> {
    spec.expect_order(Order::Modulation)?;
    Ok(mixed_norm(&stft1(f, window)?, spec))
}

/// Wiener amalgam norm of a signal: mixed norm of `V_g F`, inner over
/// frequency. Pass `dft(f)` and `dft(g)` to measure `f` in the Fourier image.
pub fn amalgam_norm(f: &Signal1, window: &Signal1, spec: &NormSpec) -> Result<f64> {
    spec.expect_order(Order::Amalgam)?;
    Ok(mixed_norm(&stft1(f, window)?, spec))
}

/// Amalgam norm of a symbol through its 2-D STFT: inner over the frequency
/// pair `ζ` with exponent `p` and weight `spec.weight(ζ)`, outer over the
/// lattice point `z` with exponent `q`. Each axis pair carries `Δ²`.
pub fn symbol_amalgam_norm(a: &Field2, window: &Field2, spec: &NormSpec) -> Result<f64> {
    spec.expect_order(Order::Amalgam)?;
    let grid = a.grid();
    grid.ensure_same(&window.grid())?;
    grid.ensure_symbol_cap("symbol amalgam norm")?;
    if window.is_zero() {
        return Err(Error::ZeroWindow);
    }
    let n = grid.len();
    let d2 = grid.delta() * grid.delta();
    let w = if spec.weight.is_constant_one() { None } else { Some(spec.weight.eval_grid(grid)) };
    let inner: Vec<f64> = (0..n * n)
        .into_par_iter()
        .map_init(
            || vec![num_complex::Complex64::new(0.0, 0.0); n * n],
            |buf, z| {
                stft2_block(a.samples(), window.samples(), n, z / n, z % n, buf);
                let mut acc = Acc::new(spec.p);
                match &w {
                    None => buf.iter().for_each(|v| acc.push(v.norm())),
                    Some(w) => buf.iter().zip(w).for_each(|(v, w)| acc.push(v.norm() * w)),
                }
                acc.finish(d2)
            },
        )
        .collect();
    let mut outer = Acc::new(spec.q);
    for v in inner {
        outer.push(v);
    }
    Ok(outer.finish(d2))
}

/// Both norms of an inclusion check and the verdicts.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InclusionReport {
    pub small: (Exponent, Exponent),
    pub large: (Exponent, Exponent),
    /// Counting-measure norms of the STFT samples.
    pub counting_small: f64,
    pub counting_large: f64,
    /// `counting_large ≤ counting_small`; always true.
    pub monotone: bool,
    /// Grid-measure norms, informational only.
    pub measure_small: f64,
    pub measure_large: f64,
}

/// Compares the unweighted modulation norms of `f` at `(p₁, q₁)` and
/// `(p₂, q₂)` with `p₁ ≤ p₂`, `q₁ ≤ q₂`.
pub fn check_inclusion(
    f: &Signal1,
    window: &Signal1,
    small: (Exponent, Exponent),
    large: (Exponent, Exponent),
) -> Result<InclusionReport> {
    // larger exponent means smaller reciprocal
    if large.0.recip() > small.0.recip() || large.1.recip() > small.1.recip() {
        return Err(Error::MisorderedExponents(format!(
            "({}, {}) is not componentwise below ({}, {})",
            small.0, small.1, large.0, large.1
        )));
    }
    let v = stft1(f, window)?;
    let s1 = NormSpec::modulation(small.0, small.1, Weight::unit());
    let s2 = NormSpec::modulation(large.0, large.1, Weight::unit());
    let counting_small = mixed_norm_counting(&v, &s1);
    let counting_large = mixed_norm_counting(&v, &s2);
    Ok(InclusionReport {
        small,
        large,
        counting_small,
        counting_large,
        monotone: counting_large <= counting_small * (1.0 + 4.0 * f64::EPSILON),
        measure_small: mixed_norm(&v, &s1),
        measure_large: mixed_norm(&v, &s2),
    })
}
