use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::{gaussian, make_grid, Field2, SampleGrid, Signal1};
use crate::norms::{modulation_norm, symbol_amalgam_norm, Exponent, NormSpec};
use crate::quantization::{apply, weyl_matrix};
use crate::transforms::wigner;
use crate::verify::ensemble::{Ensemble, EnsembleKind};
use crate::verify::exponents::{check_exponents, ExponentTuple};
use crate::verify::report::{RatioReport, Trial, REPORT_SCHEMA};
use crate::weights::Weight;

pub const DEFAULT_SEED: u64 = 42;
pub const CONFIG_SCHEMA: u32 = 1;

/// Numerator, denominator and their quotient for one input pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ratio {
    pub lhs: f64,
    pub rhs: f64,
    pub ratio: f64,
}

impl Ratio {
    fn new(lhs: f64, rhs: f64) -> Self {
        Self { lhs, rhs, ratio: lhs / rhs }
    }
}

/// Default windows: `φ` for signals and `φ⊗φ` for symbols.
pub fn default_windows(grid: SampleGrid) -> (Signal1, Field2) {
    let phi = gaussian(grid);
    let big = Field2::tensor(&phi, &phi).expect("same grid");
    (phi, big)
}

fn nonzero(f: &Signal1, what: &'static str) -> Result<()> {
    if f.is_zero() {
        return Err(Error::ZeroNorm(what));
    }
    Ok(())
}

fn lemma_ratio(
    f: &Signal1,
    g: &Signal1,
    m: &Weight,
    v: &Weight,
    outer: (Exponent, Exponent),
    f_exps: (Exponent, Exponent),
) -> Result<Ratio> {
    nonzero(f, "f")?;
    nonzero(g, "g")?;
    m.validate()?;
    v.validate()?;
    let (phi, big) = default_windows(f.grid());
    let w = wigner(g, f)?;
    let numerator =
        symbol_amalgam_norm(&w, &big, &NormSpec::amalgam(outer.0, outer.1, v.clone().pullback().reciprocal()))?;
    let nf = modulation_norm(f, &phi, &NormSpec::modulation(f_exps.0, f_exps.1, m.clone()))?;
    let ng = modulation_norm(g, &phi, &NormSpec::modulation(f_exps.0.conj(), f_exps.1.conj(), m.clone().reciprocal()))?;
    Ok(Ratio::new(numerator, nf * ng))
}

/// `‖W(g,f)‖_{W(FL¹_{1/v_J}, L^∞)} / (‖f‖_{M^{p₁,p₂}_m}·‖g‖_{M^{p₁′,p₂′}_{1/m}})`.
pub fn lemma31_ratio(f: &Signal1, g: &Signal1, m: &Weight, v: &Weight, p1: Exponent, p2: Exponent) -> Result<Ratio> {
    lemma_ratio(f, g, m, v, (Exponent::ONE, Exponent::INF), (p1, p2))
}

/// `‖W(g,f)‖_{W(FL²_{1/v_J}, L²)} / (‖f‖_{M²_m}·‖g‖_{M²_{1/m}})`.
pub fn lemma32_ratio(f: &Signal1, g: &Signal1, m: &Weight, v: &Weight) -> Result<Ratio> {
    lemma_ratio(f, g, m, v, (Exponent::TWO, Exponent::TWO), (Exponent::TWO, Exponent::TWO))
}

/// `‖Op_W(a) f‖_{M^{r₁,r₂}_m}` against `‖a‖_{W(FL^p_{v_J}, L^q)}·‖f‖_{M^{r₁,r₂}_m}`.
pub fn theorem_ratio(a: &Field2, f: &Signal1, t: &ExponentTuple, m: &Weight, v: &Weight) -> Result<Ratio> {
    let (phi, big) = default_windows(f.grid());
    let sym = symbol_amalgam_norm(a, &big, &NormSpec::amalgam(t.p, t.q, v.clone().pullback()))?;
    if sym == 0.0 {
        return Err(Error::ZeroNorm("symbol"));
    }
    let spec = NormSpec::modulation(t.r1, t.r2, m.clone());
    let lhs = modulation_norm(&apply(&weyl_matrix(a)?, f)?, &phi, &spec)?;
    let nf = modulation_norm(f, &phi, &spec)?;
    Ok(Ratio::new(lhs, sym * nf))
}

fn check_grids(grids: &[usize]) -> Result<Vec<SampleGrid>> {
    if grids.is_empty() {
        return Err(Error::InvalidGrid("no grid sizes given".into()));
    }
    grids
        .iter()
        .map(|&n| {
            let g = make_grid(n)?;
            g.ensure_symbol_cap("ratio experiment")?;
            Ok(g)
        })
        .collect()
}

fn windows_meta() -> BTreeMap<String, String> {
    [
        ("signal".to_string(), "gaussian 2^(1/4) exp(-pi t^2)".to_string()),
        ("symbol".to_string(), "gaussian tensor product".to_string()),
    ]
    .into_iter()
    .collect()
}

/// Runs the boundedness estimate over `max(count)` symbol/signal pairs on
/// each grid. Inadmissible tuples are rejected unless `allow_inadmissible`,
/// in which case the report is marked exploratory.
pub fn theorem_ratio_experiment(
    t: &ExponentTuple,
    m: &Weight,
    v: &Weight,
    symbol_ensemble: &Ensemble,
    signal_ensemble: &Ensemble,
    grid_sizes: &[usize],
    allow_inadmissible: bool,
) -> Result<RatioReport> {
    let verdict = check_exponents(t);
    if !verdict.admissible && !allow_inadmissible {
        return Err(Error::Inadmissible(verdict.failures.join(", ")));
    }
    if symbol_ensemble.count == 0 || signal_ensemble.count == 0 {
        return Err(Error::EmptyEnsemble);
    }
    m.validate()?;
    v.validate()?;
    let grids = check_grids(grid_sizes)?;
    let count = symbol_ensemble.count.max(signal_ensemble.count);
    let mut trials = Vec::new();
    for grid in grids {
        let symbols = symbol_ensemble.sample_symbols(grid)?;
        let signals = signal_ensemble.sample(grid)?;
        let (phi, big) = default_windows(grid);
        let sym_spec = NormSpec::amalgam(t.p, t.q, v.clone().pullback());
        let prepared: Vec<(f64, _)> = symbols
            .iter()
            .map(|a| Ok((symbol_amalgam_norm(a, &big, &sym_spec)?, weyl_matrix(a)?)))
            .collect::<Result<_>>()?;
        if prepared.iter().any(|(s, _)| *s == 0.0) {
            return Err(Error::ZeroNorm("symbol"));
        }
        let spec = NormSpec::modulation(t.r1, t.r2, m.clone());
        let rows: Vec<Trial> = (0..count)
            .into_par_iter()
            .map(|i| {
                let (sym, op) = &prepared[i % prepared.len()];
                let f = &signals[i % signals.len()];
                let lhs = modulation_norm(&apply(op, f)?, &phi, &spec)?;
                let rhs = sym * modulation_norm(f, &phi, &spec)?;
                Ok(Trial { grid_n: grid.len(), trial: i, lhs, rhs, ratio: lhs / rhs })
            })
            .collect::<Result<_>>()?;
        trials.extend(rows);
    }
    let mut report = RatioReport {
        schema: REPORT_SCHEMA,
        experiment: "theorem".into(),
        quantity: "empirical constant".into(),
        exponents: [("p", t.p), ("q", t.q), ("r1", t.r1), ("r2", t.r2)]
            .into_iter()
            .map(|(k, e)| (k.to_string(), e))
            .collect(),
        admissible: verdict.admissible,
        exploratory: !verdict.admissible,
        failed_conditions: verdict.failures,
        weights: [("m".to_string(), m.clone()), ("v".to_string(), v.clone())].into_iter().collect(),
        windows: windows_meta(),
        seed: symbol_ensemble.seed,
        ensembles: [("signal".to_string(), signal_ensemble.clone()), ("symbol".to_string(), symbol_ensemble.clone())]
            .into_iter()
            .collect(),
        grids: grid_sizes.to_vec(),
        trials,
        summary: vec![],
        stability: vec![],
    };
    report.finish();
    Ok(report)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Lemma {
    /// `W(FL¹_{1/v_J}, L^∞)` against `M^{p₁,p₂}_m × M^{p₁′,p₂′}_{1/m}`.
    L31,
    /// `W(FL²_{1/v_J}, L²)` against `M²_m × M²_{1/m}`.
    L32,
}

/// Lemma ratios over `count` pairs `(f, g)` drawn from two independent
/// streams of the signal ensemble.
#[allow(clippy::too_many_arguments)]
pub fn lemma_experiment(
    lemma: Lemma,
    p1: Exponent,
    p2: Exponent,
    m: &Weight,
    v: &Weight,
    f_ensemble: &Ensemble,
    g_ensemble: &Ensemble,
    grid_sizes: &[usize],
) -> Result<RatioReport> {
    if f_ensemble.count == 0 || g_ensemble.count == 0 {
        return Err(Error::EmptyEnsemble);
    }
    let grids = check_grids(grid_sizes)?;
    let count = f_ensemble.count.max(g_ensemble.count);
    let mut trials = Vec::new();
    for grid in grids {
        let fs = f_ensemble.sample(grid)?;
        let gs = g_ensemble.sample(grid)?;
        let rows: Vec<Trial> = (0..count)
            .into_par_iter()
            .map(|i| {
                let (f, g) = (&fs[i % fs.len()], &gs[i % gs.len()]);
                let r = match lemma {
                    Lemma::L31 => lemma31_ratio(f, g, m, v, p1, p2)?,
                    Lemma::L32 => lemma32_ratio(f, g, m, v)?,
                };
                Ok(Trial { grid_n: grid.len(), trial: i, lhs: r.lhs, rhs: r.rhs, ratio: r.ratio })
            })
            .collect::<Result<_>>()?;
        trials.extend(rows);
    }
    let (name, exps) = match lemma {
        Lemma::L31 => ("lemma31", vec![("p1", p1), ("p2", p2)]),
        Lemma::L32 => ("lemma32", vec![("p1", Exponent::TWO), ("p2", Exponent::TWO)]),
    };
    let mut report = RatioReport {
        schema: REPORT_SCHEMA,
        experiment: name.into(),
        quantity: "empirical constant".into(),
        exponents: exps.into_iter().map(|(k, e)| (k.to_string(), e)).collect(),
        admissible: true,
        exploratory: false,
        failed_conditions: vec![],
        weights: [("m".to_string(), m.clone()), ("v".to_string(), v.clone())].into_iter().collect(),
        windows: windows_meta(),
        seed: f_ensemble.seed,
        ensembles: [("f".to_string(), f_ensemble.clone()), ("g".to_string(), g_ensemble.clone())].into_iter().collect(),
        grids: grid_sizes.to_vec(),
        trials,
        summary: vec![],
        stability: vec![],
    };
    report.finish();
    Ok(report)
}

/// Kind and size of an ensemble in a config file; the seed comes from the
/// config's top-level seed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EnsembleConfig {
    pub kind: EnsembleKind,
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeightsConfig {
    #[serde(default)]
    pub m: Weight,
    #[serde(default)]
    pub v: Weight,
}

fn schema_v1() -> u32 {
    CONFIG_SCHEMA
}

fn default_seed() -> u64 {
    DEFAULT_SEED
}

/// Experiment configuration file.
///
/// The theorem reads exponents `p, q, r1, r2`; the first lemma reads `p1, p2`
/// (default 2, 2); the second lemma reads none.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    #[serde(default = "schema_v1")]
    pub schema: u32,
    #[serde(default)]
    pub exponents: BTreeMap<String, Exponent>,
    #[serde(default)]
    pub weights: WeightsConfig,
    #[serde(default)]
    pub symbol_ensemble: Option<EnsembleConfig>,
    pub signal_ensemble: EnsembleConfig,
    pub grids: Vec<usize>,
    #[serde(default = "default_seed")]
    pub seed: u64,
    #[serde(default)]
    pub allow_inadmissible: bool,
}

// independent RNG streams derived from one seed
fn stream(seed: u64, k: u64) -> u64 {
    seed ^ k.wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let c: ExperimentConfig = serde_json::from_str(text)?;
        if c.schema != CONFIG_SCHEMA {
            return Err(Error::Format(format!("unsupported config schema {}", c.schema)));
        }
        Ok(c)
    }

    fn exponent(&self, key: &str, default: Option<Exponent>) -> Result<Exponent> {
        match (self.exponents.get(key), default) {
            (Some(e), _) => Ok(*e),
            (None, Some(d)) => Ok(d),
            (None, None) => Err(Error::Format(format!("config is missing exponent {key:?}"))),
        }
    }

    pub fn tuple(&self) -> Result<ExponentTuple> {
        Ok(ExponentTuple::new(
            self.exponent("p", None)?,
            self.exponent("q", None)?,
            self.exponent("r1", None)?,
            self.exponent("r2", None)?,
        ))
    }

    fn ensemble(&self, cfg: &EnsembleConfig, seed: u64, k: u64) -> Result<Ensemble> {
        Ensemble::new(stream(seed, k), cfg.kind, cfg.count)
    }

    pub fn run_theorem(&self, seed: Option<u64>) -> Result<RatioReport> {
        let seed = seed.unwrap_or(self.seed);
        let t = self.tuple()?;
        let sym_cfg =
            self.symbol_ensemble.as_ref().ok_or_else(|| Error::Format("config is missing symbol_ensemble".into()))?;
        let symbols = self.ensemble(sym_cfg, seed, 1)?;
        let signals = self.ensemble(&self.signal_ensemble, seed, 2)?;
        let mut r = theorem_ratio_experiment(
            &t,
            &self.weights.m,
            &self.weights.v,
            &symbols,
            &signals,
            &self.grids,
            self.allow_inadmissible,
        )?;
        r.seed = seed;
        Ok(r)
    }

    pub fn run_lemma(&self, lemma: Lemma, seed: Option<u64>) -> Result<RatioReport> {
        let seed = seed.unwrap_or(self.seed);
        let p1 = self.exponent("p1", Some(Exponent::TWO))?;
        let p2 = self.exponent("p2", Some(Exponent::TWO))?;
        let f = self.ensemble(&self.signal_ensemble, seed, 2)?;
        let g = self.ensemble(&self.signal_ensemble, seed, 3)?;
        let mut r = lemma_experiment(lemma, p1, p2, &self.weights.m, &self.weights.v, &f, &g, &self.grids)?;
        r.seed = seed;
        Ok(r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::Axes;
    use crate::norms::mixed_norm;
    use crate::transforms::{stft1, stft2};
    use num_complex::Complex64;

    fn e(s: &str) -> Exponent {
        s.parse().unwrap()
    }

    fn gabor(grid: SampleGrid, seed: u64, count: usize) -> Vec<Signal1> {
        Ensemble::new(seed, EnsembleKind::RandomGaborSuperposition, count).unwrap().sample(grid).unwrap()
    }

    #[test]
    fn lemma31_matches_brute_force() {
        let grid = make_grid(16).unwrap();
        let phi = gaussian(grid);
        let one = Weight::unit();
        let r = lemma31_ratio(&phi, &phi, &one, &one, Exponent::TWO, Exponent::TWO).unwrap();
        assert!(r.ratio.is_finite() && r.ratio > 0.0);

        let (_, big) = default_windows(grid);
        let s = stft2(&wigner(&phi, &phi).unwrap(), &big).unwrap();
        let d2 = grid.delta().powi(2);
        let mut brute = 0.0f64;
        for block in s.blocks() {
            brute = brute.max(block.iter().map(|z| z.norm()).sum::<f64>() * d2);
        }
        let v = stft1(&phi, &phi).unwrap();
        let m2 = mixed_norm(&v, &NormSpec::modulation(Exponent::TWO, Exponent::TWO, Weight::unit()));
        assert!((r.lhs - brute).abs() / brute < 1e-10);
        assert!((r.rhs - m2 * m2).abs() / r.rhs < 1e-10);
    }

    #[test]
    fn lemma31_scaling_and_swap() {
        let grid = make_grid(16).unwrap();
        let s = gabor(grid, 1, 2);
        let (f, g) = (&s[0], &s[1]);
        let m = Weight::radial(1.0);
        let v = Weight::radial(1.0);
        let r = lemma31_ratio(f, g, &m, &v, e("4"), e("3/2")).unwrap();
        let r2 = lemma31_ratio(&f.scale(Complex64::new(2.0, 0.0)), g, &m, &v, e("4"), e("3/2")).unwrap();
        assert!((r.ratio - r2.ratio).abs() / r.ratio < 1e-12);
        let swapped = lemma31_ratio(g, f, &m.clone().reciprocal(), &v, e("4/3"), e("3")).unwrap();
        assert!(swapped.ratio.is_finite() && swapped.ratio > 0.0);
        assert!((swapped.lhs - r.lhs).abs() / r.lhs < 1e-10, "|W(g,f)| = |W(f,g)|");
        assert!(swapped.ratio / r.ratio < 10.0 && r.ratio / swapped.ratio < 10.0);
    }

    fn lemma32_spread(n: usize) -> (f64, f64) {
        let grid = make_grid(n).unwrap();
        let one = Weight::unit();
        let ratios: Vec<f64> = gabor(grid, 2, 20)
            .iter()
            .zip(&gabor(grid, 3, 20))
            .map(|(f, g)| lemma32_ratio(f, g, &one, &one).unwrap().ratio)
            .collect();
        let hi = ratios.iter().cloned().fold(f64::MIN, f64::max);
        let lo = ratios.iter().cloned().fold(f64::MAX, f64::min);
        (lo, hi)
    }

    // At N=16 the lag window |t| ≤ 2 clips about 1e-3 of the Wigner mass of
    // off-centre atoms, so the spread there is ~9e-4.
    #[test]
    #[ignore = "lag truncation at N=16 gives a spread of ~9e-4"]
    fn lemma32_unweighted_ratio_is_constant_n16() {
        let (lo, hi) = lemma32_spread(16);
        assert!((hi - lo) / lo < 1e-4, "{lo} .. {hi}");
    }

    #[test]
    fn lemma32_unweighted_ratio_is_constant() {
        let (lo, hi) = lemma32_spread(32);
        assert!((hi - lo) / lo < 1e-4, "{lo} .. {hi}");
        assert!((hi - 1.0).abs() < 1e-4);

        let grid = make_grid(16).unwrap();
        let one = Weight::unit();
        let phi = gaussian(grid);
        let a = lemma32_ratio(&phi, &phi, &one, &one).unwrap();
        assert_eq!(a, lemma32_ratio(&phi, &phi, &one, &one).unwrap());
        assert!((a.ratio - 1.0).abs() < 1e-9);

        let (_, hi16) = lemma32_spread(16);
        let w = Weight::radial(1.0);
        for (f, g) in gabor(grid, 2, 5).iter().zip(&gabor(grid, 3, 5)) {
            let r = lemma32_ratio(f, g, &w, &w).unwrap();
            assert!(r.ratio.is_finite() && r.ratio <= 10.0 * hi16);
        }
    }

    #[test]
    fn homogeneity_cancels() {
        let grid = make_grid(16).unwrap();
        let s = gabor(grid, 4, 2);
        let a = Ensemble::new(5, EnsembleKind::RandomGaborSuperposition, 1)
            .unwrap()
            .sample_symbols(grid)
            .unwrap()
            .remove(0);
        let t = ExponentTuple::parse("inf", "1", "2", "2").unwrap();
        let m = Weight::radial(1.0);
        let base = theorem_ratio(&a, &s[0], &t, &m, &m).unwrap().ratio;
        let scaled =
            theorem_ratio(&a.map(|z| z * Complex64::new(0.0, 3.0)), &s[0].scale(Complex64::new(-0.5, 0.5)), &t, &m, &m)
                .unwrap()
                .ratio;
        assert!((base - scaled).abs() / base < 1e-12);
        let l = lemma32_ratio(&s[0], &s[1], &m, &m).unwrap().ratio;
        let ls = lemma32_ratio(&s[0].scale(Complex64::new(7.0, 1.0)), &s[1].scale(Complex64::new(0.0, -0.2)), &m, &m)
            .unwrap()
            .ratio;
        assert!((l - ls).abs() / l < 1e-12);
    }

    #[test]
    fn identity_symbol_ratio_is_constant() {
        let grid = make_grid(16).unwrap();
        let one = Field2::constant(grid, Complex64::new(1.0, 0.0));
        let t = ExponentTuple::parse("inf", "1", "2", "2").unwrap();
        let w = Weight::unit();
        let ratios: Vec<f64> =
            gabor(grid, 6, 10).iter().map(|f| theorem_ratio(&one, f, &t, &w, &w).unwrap().ratio).collect();
        let hi = ratios.iter().cloned().fold(f64::MIN, f64::max);
        let lo = ratios.iter().cloned().fold(f64::MAX, f64::min);
        assert!((hi - lo) / lo < 1e-6);
    }

    #[test]
    fn theorem_and_lemma32_agree_on_shared_data() {
        let grid = make_grid(16).unwrap();
        let s = gabor(grid, 7, 2);
        let (f, g) = (&s[0], &s[1]);
        let one = Weight::unit();
        let a = wigner(g, f).unwrap();
        let t = ExponentTuple::parse("2", "2", "2", "2").unwrap();
        let th = theorem_ratio(&a, f, &t, &one, &one).unwrap();
        let lm = lemma32_ratio(f, g, &one, &one).unwrap();
        let (phi, _) = default_windows(grid);
        let nf = modulation_norm(f, &phi, &NormSpec::modulation(Exponent::TWO, Exponent::TWO, one.clone())).unwrap();
        let ng = modulation_norm(g, &phi, &NormSpec::modulation(Exponent::TWO, Exponent::TWO, one.clone())).unwrap();
        // theorem rhs = ‖a‖·‖f‖, lemma numerator = ‖a‖
        assert!((th.rhs / nf - lm.lhs).abs() / lm.lhs < 1e-8);
        assert!((lm.rhs - nf * ng).abs() / lm.rhs < 1e-8);
    }

    #[test]
    fn experiment_is_deterministic_and_guarded() {
        let t = ExponentTuple::parse("inf", "1", "2", "2").unwrap();
        let w = Weight::unit();
        let sym = Ensemble::new(1, EnsembleKind::RandomGaborSuperposition, 4).unwrap();
        let sig = Ensemble::new(2, EnsembleKind::ChirpedGaussians, 4).unwrap();
        let a = theorem_ratio_experiment(&t, &w, &w, &sym, &sig, &[16, 32], false).unwrap();
        let b = theorem_ratio_experiment(&t, &w, &w, &sym, &sig, &[16, 32], false).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.trials.len(), 8);
        assert_eq!(a.stability.len(), 1);
        for tr in &a.trials {
            assert!(tr.ratio >= 0.0 && a.max_ratio(tr.grid_n).unwrap() >= tr.ratio);
        }

        let bad = ExponentTuple::parse("2", "2", "1", "1").unwrap();
        assert!(matches!(
            theorem_ratio_experiment(&bad, &w, &w, &sym, &sig, &[16], false),
            Err(Error::Inadmissible(_))
        ));
        let explore = theorem_ratio_experiment(&bad, &w, &w, &sym, &sig, &[16], true).unwrap();
        assert!(explore.exploratory && !explore.admissible);
        assert!(matches!(
            theorem_ratio_experiment(&t, &w, &w, &sym, &sig, &[128], false),
            Err(Error::CapExceeded { .. })
        ));
        let zero = Field2::zeros(make_grid(16).unwrap(), Axes::PositionFrequency);
        assert!(matches!(theorem_ratio(&zero, &gaussian(make_grid(16).unwrap()), &t, &w, &w), Err(Error::ZeroNorm(_))));
    }

    #[test]
    fn config_parsing() {
        let text = r#"{"schema":1,"exponents":{"p":"inf","q":1,"r1":2,"r2":2},
            "weights":{"m":{"kind":"constant"},"v":{"kind":"radial_poly","s":1}},
            "symbol_ensemble":{"kind":"random_gabor_superposition","count":3},
            "signal_ensemble":{"kind":"chirped_gaussians","count":3},
            "grids":[16],"seed":9,"allow_inadmissible":false}"#;
        let c = ExperimentConfig::from_json(text).unwrap();
        assert_eq!(c.tuple().unwrap(), ExponentTuple::parse("inf", "1", "2", "2").unwrap());
        let r = c.run_theorem(None).unwrap();
        assert_eq!(r.seed, 9);
        assert_eq!(r, c.run_theorem(Some(9)).unwrap());
        assert_ne!(r.trials, c.run_theorem(Some(10)).unwrap().trials);
        let l = c.run_lemma(Lemma::L31, None).unwrap();
        assert_eq!(l.trials.len(), 3);
        assert!(ExperimentConfig::from_json(&text.replace("\"schema\":1", "\"schema\":2")).is_err());
        assert!(ExperimentConfig::from_json(&text.replace("\"seed\":9", "\"seed\":9,\"extra\":1")).is_err());
    }
}
