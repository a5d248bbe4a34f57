//! Discrete probability mass functions and their effective support size.
//!
//! The effective support size of order α is
//!
//! ```text
//! S(p, α) = (Σ p_i^α)^(1/(1−α))        α ∈ (0, ∞), α ≠ 1
//! S(p, 1) = exp(−Σ p_i ln p_i)
//! S(p, ∞) = 1 / max_i p_i
//! ```
//!
//! i.e. the exponential of the Rényi entropy of the same order (the Hill
//! number of order α). Zero entries are skipped in every sum, so padding a
//! pmf with impossible outcomes never changes its Ess.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{EssError, Result};

/// Absolute tolerance on the total mass of user-supplied pmfs.
pub const NORMALIZATION_TOL: f64 = 1e-9;

/// Finite orders closer to 1 than this must be expressed as [`Alpha::One`].
pub const ALPHA_ONE_GUARD: f64 = 1e-12;

/// Order parameter of the Ess / Rényi family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Alpha {
    /// Positive finite order, bounded away from 1.
    Finite(f64),
    /// The α → 1 limit (Shannon).
    One,
    /// The α → ∞ limit (min-entropy).
    Inf,
}

impl Alpha {
    /// Strict constructor for a finite order.
    pub fn finite(a: f64) -> Result<Self> {
        if !a.is_finite() || a <= 0.0 {
            return Err(EssError::Domain(format!(
                "alpha must be a positive finite real, got {a}"
            )));
        }
        if (a - 1.0).abs() <= ALPHA_ONE_GUARD {
            return Err(EssError::Domain(format!(
                "finite alpha {a} is within {ALPHA_ONE_GUARD:e} of 1; use Alpha::One"
            )));
        }
        Ok(Alpha::Finite(a))
    }

    /// Lenient constructor: maps +∞ to `Inf` and values at 1 to `One`.
    pub fn from_value(a: f64) -> Result<Self> {
        if a == f64::INFINITY {
            Ok(Alpha::Inf)
        } else if (a - 1.0).abs() <= ALPHA_ONE_GUARD {
            Ok(Alpha::One)
        } else {
            Alpha::finite(a)
        }
    }

    /// Numeric value of the order (`1.0` for `One`, `+∞` for `Inf`).
    pub fn value(self) -> f64 {
        match self {
            Alpha::Finite(a) => a,
            Alpha::One => 1.0,
            Alpha::Inf => f64::INFINITY,
        }
    }
}

impl fmt::Display for Alpha {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Alpha::Finite(a) => write!(f, "{a}"),
            Alpha::One => f.write_str("1"),
            Alpha::Inf => f.write_str("inf"),
        }
    }
}

impl FromStr for Alpha {
    type Err = EssError;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        match t.to_ascii_lowercase().as_str() {
            "inf" | "infinity" | "+inf" | "∞" => return Ok(Alpha::Inf),
            _ => {}
        }
        let v: f64 = t
            .parse()
            .map_err(|_| EssError::Parse(format!("invalid alpha '{t}'")))?;
        if v.is_nan() {
            return Err(EssError::Parse(format!("invalid alpha '{t}'")));
        }
        Alpha::from_value(v)
    }
}

impl Serialize for Alpha {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Parses a comma-separated list of orders, e.g. `0.5,1,2,inf`.
pub fn parse_alpha_list(s: &str) -> Result<Vec<Alpha>> {
    let alphas = s
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(Alpha::from_str)
        .collect::<Result<Vec<_>>>()?;
    if alphas.is_empty() {
        return Err(EssError::Parse("empty alpha list".into()));
    }
    Ok(alphas)
}

/// The nine orders tabulated for two-point pmfs: 0.001 … 10, ∞.
pub fn table1_alphas() -> Vec<Alpha> {
    vec![
        Alpha::Finite(0.001),
        Alpha::Finite(0.1),
        Alpha::Finite(0.5),
        Alpha::Finite(0.9),
        Alpha::One,
        Alpha::Finite(1.5),
        Alpha::Finite(2.0),
        Alpha::Finite(10.0),
        Alpha::Inf,
    ]
}

/// A validated finite probability mass function.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct Pmf {
    probs: Vec<f64>,
}

impl Pmf {
    /// Validates `weights` as a pmf, optionally dividing by their sum first.
    pub fn new(weights: Vec<f64>, normalize: bool) -> Result<Self> {
        if weights.is_empty() {
            return Err(EssError::Domain("pmf needs at least one outcome".into()));
        }
        if let Some(w) = weights.iter().find(|w| !w.is_finite() || **w < 0.0) {
            return Err(EssError::Domain(format!(
                "pmf entries must be finite and nonnegative, got {w}"
            )));
        }
        let total: f64 = weights.iter().sum();
        if normalize {
            if !(total > 0.0) || !total.is_finite() {
                return Err(EssError::Domain(format!(
                    "cannot normalize weights with total {total}"
                )));
            }
            Ok(Pmf {
                probs: weights.into_iter().map(|w| w / total).collect(),
            })
        } else {
            if (total - 1.0).abs() > NORMALIZATION_TOL {
                return Err(EssError::Normalization(format!(
                    "probabilities sum to {total}, expected 1 within {NORMALIZATION_TOL:e}"
                )));
            }
            Ok(Pmf { probs: weights })
        }
    }

    /// Plug-in pmf from observed counts.
    pub fn from_counts(counts: &[u64]) -> Result<Self> {
        Pmf::new(counts.iter().map(|&c| c as f64).collect(), true)
    }

    /// Uniform pmf `u_m`.
    pub fn uniform(m: usize) -> Result<Self> {
        if m == 0 {
            return Err(EssError::Domain("uniform pmf needs m >= 1".into()));
        }
        Ok(Pmf {
            probs: vec![1.0 / m as f64; m],
        })
    }

    /// Degenerate pmf `δ_m` with all mass on outcome `at`.
    pub fn delta(m: usize, at: usize) -> Result<Self> {
        if at >= m {
            return Err(EssError::Domain(format!(
                "delta position {at} out of range for m = {m}"
            )));
        }
        let mut probs = vec![0.0; m];
        probs[at] = 1.0;
        Ok(Pmf { probs })
    }

    /// Internal constructor for vectors that are a pmf up to rounding.
    pub(crate) fn from_parts(probs: Vec<f64>) -> Self {
        debug_assert!(!probs.is_empty());
        Pmf {
            probs: probs.into_iter().map(|p| p.clamp(0.0, 1.0)).collect(),
        }
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    /// Number of outcomes `m`, including impossible ones.
    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    /// The same pmf extended by `extra` impossible outcomes.
    pub fn padded(&self, extra: usize) -> Pmf {
        let mut probs = self.probs.clone();
        probs.resize(self.probs.len() + extra, 0.0);
        Pmf { probs }
    }

    pub fn max_prob(&self) -> f64 {
        self.probs.iter().copied().fold(0.0, f64::max)
    }

    fn positive(&self) -> impl Iterator<Item = f64> + '_ {
        self.probs.iter().copied().filter(|&p| p > 0.0)
    }
}

impl TryFrom<Vec<f64>> for Pmf {
    type Error = EssError;

    fn try_from(probs: Vec<f64>) -> Result<Self> {
        Pmf::new(probs, false)
    }
}

/// See [`Pmf::new`].
pub fn make_pmf(weights: &[f64], normalize: bool) -> Result<Pmf> {
    Pmf::new(weights.to_vec(), normalize)
}

/// Count of strictly positive entries, `|S(p)|`.
pub fn support_size(p: &Pmf) -> usize {
    p.positive().count()
}

/// Shannon entropy in nats, with `0 ln 0 = 0`.
pub fn shannon_entropy(p: &Pmf) -> f64 {
    -p.positive().map(|x| x * x.ln()).sum::<f64>()
}

/// `ln Σ_i (p_i / s) p_i^(a−1)` with `s = Σ p_i`, i.e. `ln Σ p_i^a` for a
/// normalized pmf.
///
/// Near `a = 1` every exponent `(a−1) ln p_i` is small and of one sign, so
/// the sum is taken as `ln1p(Σ w_i expm1(t_i))` to keep relative accuracy
/// after the division by `1 − a`. Elsewhere the log-sum-exp form with the
/// largest term factored out avoids overflow and underflow.
fn log_power_mean(p: &Pmf, a: f64) -> f64 {
    let total: f64 = p.positive().sum();
    let max_shift = p
        .positive()
        .map(|x| ((a - 1.0) * x.ln()).abs())
        .fold(0.0, f64::max);
    if max_shift <= 1.0 {
        let x: f64 = p
            .positive()
            .map(|x| x / total * ((a - 1.0) * x.ln()).exp_m1())
            .sum();
        x.ln_1p()
    } else {
        let log_total = total.ln();
        let max_log = a * p.max_prob().ln() - log_total;
        let scaled: f64 = p
            .positive()
            .map(|x| (a * x.ln() - log_total - max_log).exp())
            .sum();
        max_log + scaled.ln()
    }
}

/// Rényi entropy of order `a` in nats; `ln` of [`ess`].
pub fn renyi_entropy(p: &Pmf, a: Alpha) -> f64 {
    match a {
        Alpha::Finite(a) => log_power_mean(p, a) / (1.0 - a),
        Alpha::One => shannon_entropy(p),
        Alpha::Inf => -p.max_prob().ln(),
    }
}

/// Effective support size `S(p, a)`, a value in `[1, support_size(p)]`.
pub fn ess(p: &Pmf, a: Alpha) -> f64 {
    match a {
        Alpha::Finite(_) => renyi_entropy(p, a).exp(),
        Alpha::One => shannon_entropy(p).exp(),
        Alpha::Inf => 1.0 / p.max_prob(),
    }
}

/// Ess of one pmf evaluated at a list of orders.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EssProfile {
    alphas: Vec<Alpha>,
    values: Vec<f64>,
}

impl EssProfile {
    pub fn alphas(&self) -> &[Alpha] {
        &self.alphas
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn iter(&self) -> impl Iterator<Item = (Alpha, f64)> + '_ {
        self.alphas.iter().copied().zip(self.values.iter().copied())
    }
}

/// [`ess`] applied to each order in `alphas`, order preserved.
pub fn ess_profile(p: &Pmf, alphas: &[Alpha]) -> Result<EssProfile> {
    if alphas.is_empty() {
        return Err(EssError::Domain("alpha list is empty".into()));
    }
    Ok(EssProfile {
        alphas: alphas.to_vec(),
        values: alphas.iter().map(|&a| ess(p, a)).collect(),
    })
}

/// Joint pmf of two independent variables, flattened row-major
/// (the index into `p` varies slowest).
pub fn product_pmf(p: &Pmf, q: &Pmf) -> Pmf {
    let probs = p
        .probs()
        .iter()
        .flat_map(|&a| q.probs().iter().map(move |&b| a * b))
        .collect();
    Pmf::from_parts(probs)
}
