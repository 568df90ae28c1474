use serde::{Deserialize, Serialize};

use crate::norms::Exponent;

/// Exponents `(p, q, r₁, r₂)` of the boundedness estimate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExponentTuple {
    pub p: Exponent,
    pub q: Exponent,
    pub r1: Exponent,
    pub r2: Exponent,
}

impl ExponentTuple {
    pub fn new(p: Exponent, q: Exponent, r1: Exponent, r2: Exponent) -> Self {
        Self { p, q, r1, r2 }
    }

    /// Parses four textual exponents (`"inf"`, `"2"`, `"4/3"`, `"1.5"`).
    pub fn parse(p: &str, q: &str, r1: &str, r2: &str) -> crate::Result<Self> {
        Ok(Self::new(p.parse()?, q.parse()?, r1.parse()?, r2.parse()?))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Admissibility {
    pub admissible: bool,
    /// One entry per violated condition, e.g. `"r1' > p"`.
    pub failures: Vec<String>,
}

impl Admissibility {
    pub fn summary(&self) -> String {
        if self.admissible {
            "admissible".to_string()
        } else {
            format!("inadmissible exponents: {}", self.failures.join(", "))
        }
    }
}

/// `q ≤ p′` and `max{r₁, r₂, r₁′, r₂′} ≤ p`, compared exactly on reciprocals.
pub fn check_exponents(t: &ExponentTuple) -> Admissibility {
    let mut failures = Vec::new();
    // a ≤ b  ⇔  1/a ≥ 1/b
    let le = |a: Exponent, b: Exponent| a.recip() >= b.recip();
    if !le(t.q, t.p.conj()) {
        failures.push(format!("q > p' (q = {}, p' = {})", t.q, t.p.conj()));
    }
    for (name, r) in [("r1", t.r1), ("r2", t.r2)] {
        if !le(r, t.p) {
            failures.push(format!("{name} > p ({name} = {r}, p = {})", t.p));
        }
        if !le(r.conj(), t.p) {
            failures.push(format!("{name}' > p ({name}' = {}, p = {})", r.conj(), t.p));
        }
    }
    Admissibility { admissible: failures.is_empty(), failures }
}
