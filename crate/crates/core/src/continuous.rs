//! Effective support size of univariate continuous densities,
//! `S(f, α) = (∫ f^α dx)^(1/(1−α))`.
//!
//! Unlike the discrete case the value carries the units of `x` and may fall
//! below 1; nothing here clamps it.

use std::f64::consts::{E, PI};

use serde::Serialize;

use crate::discrete::Alpha;
use crate::error::{EssError, Result};
use crate::quadrature::{adaptive_simpson, romberg_on_grid, sup_on_interval};

/// Tolerance on the trapezoidal mass of a tabulated density.
pub const GRID_MASS_TOL: f64 = 1e-6;

/// Half-width of the default Gaussian domain, in standard deviations.
pub const GAUSSIAN_HALF_WIDTH_SIGMAS: f64 = 8.0;

/// Right end of the default Exponential domain, in units of `1/β`.
pub const EXPONENTIAL_WIDTH_SCALES: f64 = 40.0;

/// Tabulated density, linearly interpolated between knots and zero outside.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GridDensity {
    points: Vec<f64>,
    densities: Vec<f64>,
}

impl GridDensity {
    pub fn new(points: Vec<f64>, densities: Vec<f64>) -> Result<Self> {
        if points.len() != densities.len() {
            return Err(EssError::Domain(format!(
                "{} grid points but {} density values",
                points.len(),
                densities.len()
            )));
        }
        if points.len() < 2 {
            return Err(EssError::Domain("grid needs at least two points".into()));
        }
        if points.iter().any(|x| !x.is_finite()) || points.windows(2).any(|w| w[0] >= w[1]) {
            return Err(EssError::Domain(
                "grid points must be finite and strictly ascending".into(),
            ));
        }
        if let Some(f) = densities.iter().find(|f| !f.is_finite() || **f < 0.0) {
            return Err(EssError::Domain(format!(
                "density must be finite and nonnegative, got {f}"
            )));
        }
        let g = GridDensity { points, densities };
        let mass = g.trapezoid_mass();
        if (mass - 1.0).abs() > GRID_MASS_TOL {
            return Err(EssError::Normalization(format!(
                "grid density integrates to {mass}, expected 1 within {GRID_MASS_TOL:e}"
            )));
        }
        Ok(g)
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn densities(&self) -> &[f64] {
        &self.densities
    }

    fn trapezoid_mass(&self) -> f64 {
        self.points
            .windows(2)
            .zip(self.densities.windows(2))
            .map(|(x, f)| 0.5 * (x[1] - x[0]) * (f[0] + f[1]))
            .sum()
    }

    fn eval(&self, x: f64) -> f64 {
        let n = self.points.len();
        if x < self.points[0] || x > self.points[n - 1] {
            return 0.0;
        }
        let k = self.points.partition_point(|&p| p <= x).clamp(1, n - 1);
        let (x0, x1) = (self.points[k - 1], self.points[k]);
        let (f0, f1) = (self.densities[k - 1], self.densities[k]);
        f0 + (x - x0) / (x1 - x0) * (f1 - f0)
    }
}

/// A univariate density.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "family", rename_all = "lowercase")]
pub enum DensitySpec {
    Gaussian { mu: f64, sigma2: f64 },
    Exponential { beta: f64 },
    Uniform { lo: f64, hi: f64 },
    Grid(GridDensity),
}

impl DensitySpec {
    pub fn gaussian(mu: f64, sigma2: f64) -> Result<Self> {
        if !mu.is_finite() || !(sigma2 > 0.0) || !sigma2.is_finite() {
            return Err(EssError::Domain(format!(
                "gaussian needs finite mu and sigma2 > 0, got mu={mu}, sigma2={sigma2}"
            )));
        }
        Ok(DensitySpec::Gaussian { mu, sigma2 })
    }

    pub fn exponential(beta: f64) -> Result<Self> {
        if !(beta > 0.0) || !beta.is_finite() {
            return Err(EssError::Domain(format!(
                "exponential needs beta > 0, got {beta}"
            )));
        }
        Ok(DensitySpec::Exponential { beta })
    }

    pub fn uniform(lo: f64, hi: f64) -> Result<Self> {
        if !lo.is_finite() || !hi.is_finite() || !(hi > lo) {
            return Err(EssError::Domain(format!(
                "uniform needs finite lo < hi, got lo={lo}, hi={hi}"
            )));
        }
        Ok(DensitySpec::Uniform { lo, hi })
    }

    pub fn grid(points: Vec<f64>, densities: Vec<f64>) -> Result<Self> {
        GridDensity::new(points, densities).map(DensitySpec::Grid)
    }

    /// Density value `f(x)`.
    pub fn pdf(&self, x: f64) -> f64 {
        match *self {
            DensitySpec::Gaussian { mu, sigma2 } => {
                (-(x - mu).powi(2) / (2.0 * sigma2)).exp() / (2.0 * PI * sigma2).sqrt()
            }
            DensitySpec::Exponential { beta } => {
                if x < 0.0 {
                    0.0
                } else {
                    beta * (-beta * x).exp()
                }
            }
            DensitySpec::Uniform { lo, hi } => {
                if (lo..=hi).contains(&x) {
                    1.0 / (hi - lo)
                } else {
                    0.0
                }
            }
            DensitySpec::Grid(ref g) => g.eval(x),
        }
    }

    /// Truncated domain used when the caller does not supply one.
    pub fn default_domain(&self) -> (f64, f64) {
        match *self {
            DensitySpec::Gaussian { mu, sigma2 } => {
                let w = GAUSSIAN_HALF_WIDTH_SIGMAS * sigma2.sqrt();
                (mu - w, mu + w)
            }
            DensitySpec::Exponential { beta } => (0.0, EXPONENTIAL_WIDTH_SCALES / beta),
            DensitySpec::Uniform { lo, hi } => (lo, hi),
            DensitySpec::Grid(ref g) => (g.points[0], g.points[g.points.len() - 1]),
        }
    }
}

/// Closed-form continuous Ess for the named families.
pub fn ess_continuous_closed_form(d: &DensitySpec, a: Alpha) -> Result<f64> {
    match *d {
        DensitySpec::Gaussian { sigma2, .. } => {
            let width = (2.0 * PI * sigma2).sqrt();
            Ok(match a {
                Alpha::Finite(a) => width / a.powf(1.0 / (2.0 * (1.0 - a))),
                Alpha::One => (2.0 * E * PI * sigma2).sqrt(),
                Alpha::Inf => width,
            })
        }
        DensitySpec::Exponential { beta } => Ok(match a {
            Alpha::Finite(a) => a.powf(1.0 / (a - 1.0)) / beta,
            Alpha::One => E / beta,
            Alpha::Inf => 1.0 / beta,
        }),
        DensitySpec::Uniform { lo, hi } => Ok(hi - lo),
        DensitySpec::Grid(_) => Err(EssError::UnsupportedFamily(
            "tabulated densities have no closed form; use quadrature".into(),
        )),
    }
}

/// `f^a`, with `0^a = 0`.
fn power_integrand(f: f64, a: f64) -> f64 {
    if f > 0.0 {
        f.powf(a)
    } else {
        0.0
    }
}

/// `−f ln f`, with `0 ln 0 = 0`.
fn entropy_integrand(f: f64) -> f64 {
    if f > 0.0 {
        -f * f.ln()
    } else {
        0.0
    }
}

/// Continuous Ess by numerical integration.
///
/// Named families use adaptive Simpson over `domain` (default: the family's
/// truncated domain); grid densities use Romberg integration over their own
/// knots and ignore `domain`. `Alpha::Inf` evaluates `1 / sup f`.
pub fn ess_continuous_quadrature(
    d: &DensitySpec,
    a: Alpha,
    domain: Option<(f64, f64)>,
    tol: f64,
) -> Result<f64> {
    if !(tol > 0.0) {
        return Err(EssError::Domain(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    if let DensitySpec::Grid(g) = d {
        let (pts, fs) = (g.points(), g.densities());
        return match a {
            Alpha::Finite(a) => {
                let integral = romberg_on_grid(pts, fs, &|f| power_integrand(f, a), tol)?;
                Ok(integral.powf(1.0 / (1.0 - a)))
            }
            Alpha::One => Ok(romberg_on_grid(pts, fs, &entropy_integrand, tol)?.exp()),
            Alpha::Inf => Ok(1.0 / fs.iter().copied().fold(0.0, f64::max)),
        };
    }

    let (lo, hi) = domain.unwrap_or_else(|| d.default_domain());
    if !lo.is_finite() || !hi.is_finite() || !(lo < hi) {
        return Err(EssError::Domain(format!("invalid domain [{lo}, {hi}]")));
    }
    match a {
        Alpha::Finite(a) => {
            let integral = adaptive_simpson(&|x| power_integrand(d.pdf(x), a), lo, hi, tol)?;
            Ok(integral.powf(1.0 / (1.0 - a)))
        }
        Alpha::One => Ok(adaptive_simpson(&|x| entropy_integrand(d.pdf(x)), lo, hi, tol)?.exp()),
        Alpha::Inf => Ok(1.0 / sup_on_interval(&|x| d.pdf(x), lo, hi)),
    }
}
