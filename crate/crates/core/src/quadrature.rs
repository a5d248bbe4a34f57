//! Numerical integration used by the continuous Ess evaluator.

use crate::error::{EssError, Result};

/// Maximum bisection depth for adaptive Simpson.
pub const SIMPSON_MAX_DEPTH: u32 = 40;

/// Panels the interval is split into before adaptive refinement starts.
const INITIAL_PANELS: usize = 64;

/// Relative floor applied to the requested absolute tolerance.
const ROUNDING_FLOOR: f64 = 16.0 * f64::EPSILON;

/// Maximum number of dyadic refinements for Romberg integration.
pub const ROMBERG_MAX_LEVEL: usize = 24;

struct Simpson<'a, F> {
    f: &'a F,
}

impl<F: Fn(f64) -> f64> Simpson<'_, F> {
    #[allow(clippy::too_many_arguments)]
    fn refine(
        &self,
        a: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> Result<f64> {
        let m = 0.5 * (a + b);
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        if !(a < lm && lm < m && m < rm && rm < b) {
            return Err(EssError::Quadrature(format!(
                "interval [{a}, {b}] cannot be bisected further"
            )));
        }
        let flm = (self.f)(lm);
        let frm = (self.f)(rm);
        let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        let delta = left + right - whole;
        if !delta.is_finite() {
            return Err(EssError::Quadrature(format!(
                "non-finite integrand near [{a}, {b}]"
            )));
        }
        if delta.abs() <= 15.0 * tol {
            return Ok(left + right + delta / 15.0);
        }
        if depth >= SIMPSON_MAX_DEPTH {
            return Err(EssError::Quadrature(format!(
                "no convergence after {SIMPSON_MAX_DEPTH} bisections near [{a}, {b}]"
            )));
        }
        Ok(self.refine(a, m, fa, flm, fm, left, tol / 2.0, depth + 1)?
            + self.refine(m, b, fm, frm, fb, right, tol / 2.0, depth + 1)?)
    }
}

/// Adaptive Simpson integration of `f` over `[a, b]` to absolute tolerance `tol`.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> Result<f64> {
    if !(a < b) || !a.is_finite() || !b.is_finite() {
        return Err(EssError::Domain(format!("invalid interval [{a}, {b}]")));
    }
    if !(tol > 0.0) {
        return Err(EssError::Domain(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    let s = Simpson { f };
    let h = (b - a) / INITIAL_PANELS as f64;
    let mut panels = Vec::with_capacity(INITIAL_PANELS);
    let mut x0 = a;
    let mut f0 = f(a);
    for k in 1..=INITIAL_PANELS {
        let x1 = if k == INITIAL_PANELS {
            b
        } else {
            a + h * k as f64
        };
        let xm = 0.5 * (x0 + x1);
        let (fm, f1) = (f(xm), f(x1));
        let whole = (x1 - x0) / 6.0 * (f0 + 4.0 * fm + f1);
        panels.push((x0, x1, f0, fm, f1, whole));
        x0 = x1;
        f0 = f1;
    }
    // tolerances below the rounding noise of f·h on every subinterval are unreachable
    let f_max = panels
        .iter()
        .map(|p| p.2.abs().max(p.3.abs()).max(p.4.abs()))
        .fold(0.0, f64::max);
    let tol = tol.max(ROUNDING_FLOOR * f_max * (b - a));
    let panel_tol = tol / INITIAL_PANELS as f64;
    panels
        .into_iter()
        .map(|(x0, x1, f0, fm, f1, whole)| s.refine(x0, x1, f0, fm, f1, whole, panel_tol, 0))
        .sum()
}

/// Romberg integration of `g(x, y)` over a tabulated grid, where `y` is
/// the piecewise-linear interpolant of `values` at `x`.
///
/// Level `k` applies the composite trapezoid rule with each grid segment
/// split into `2^k` pieces; Richardson extrapolation runs across levels.
pub fn romberg_on_grid<G: Fn(f64) -> f64>(
    points: &[f64],
    values: &[f64],
    g: &G,
    tol: f64,
) -> Result<f64> {
    if !(tol > 0.0) {
        return Err(EssError::Domain(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    let seg = points.len() - 1;
    // level 0: plain trapezoid on the knots
    let mut trap: f64 = (0..seg)
        .map(|i| 0.5 * (points[i + 1] - points[i]) * (g(values[i]) + g(values[i + 1])))
        .sum();
    let mut prev_row = vec![trap];
    for level in 1..=ROMBERG_MAX_LEVEL {
        // midpoints added at this level, per segment
        let pieces = 1usize << (level - 1);
        let mut mid_sum = 0.0;
        for i in 0..seg {
            let (x0, x1) = (points[i], points[i + 1]);
            let (y0, y1) = (values[i], values[i + 1]);
            let h = (x1 - x0) / pieces as f64;
            let mut s = 0.0;
            for k in 0..pieces {
                let t = (k as f64 + 0.5) / pieces as f64;
                s += g(y0 + t * (y1 - y0));
            }
            mid_sum += s * h;
        }
        trap = 0.5 * (trap + mid_sum);
        let mut row = Vec::with_capacity(level + 1);
        row.push(trap);
        let mut factor = 1.0;
        for k in 1..=level {
            factor *= 4.0;
            let r = row[k - 1] + (row[k - 1] - prev_row[k - 1]) / (factor - 1.0);
            row.push(r);
        }
        let err = (row[level] - prev_row[level - 1]).abs();
        if !err.is_finite() {
            return Err(EssError::Quadrature("non-finite integrand on grid".into()));
        }
        if level >= 3 && err <= tol {
            return Ok(row[level]);
        }
        prev_row = row;
    }
    Err(EssError::Quadrature(format!(
        "Romberg integration did not reach tolerance {tol:e} after {ROMBERG_MAX_LEVEL} levels"
    )))
}

/// Supremum of `f` over `[a, b]`: coarse scan, then golden-section search
/// in the bracket around the best sample.
pub fn sup_on_interval<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> f64 {
    const SCAN: usize = 4096;
    let h = (b - a) / SCAN as f64;
    let (mut best_i, mut best) = (0, f(a));
    for i in 1..=SCAN {
        let x = if i == SCAN { b } else { a + h * i as f64 };
        let v = f(x);
        if v > best {
            best = v;
            best_i = i;
        }
    }
    let mut lo = (a + h * best_i.saturating_sub(1) as f64).max(a);
    let mut hi = (a + h * (best_i + 1) as f64).min(b);
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = hi - inv_phi * (hi - lo);
    let mut d = lo + inv_phi * (hi - lo);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..200 {
        if hi - lo <= f64::EPSILON * (1.0 + lo.abs().max(hi.abs())) {
            break;
        }
        if fc > fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - inv_phi * (hi - lo);
            fc = f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + inv_phi * (hi - lo);
            fd = f(d);
        }
    }
    best.max(fc).max(fd)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simpson_polynomials_and_exp() {
        let v = adaptive_simpson(&|x: f64| x * x * x, 0.0, 2.0, 1e-12).unwrap();
        assert!((v - 4.0).abs() < 1e-12);
        let v = adaptive_simpson(&|x: f64| x.exp(), 0.0, 1.0, 1e-12).unwrap();
        assert!((v - (1f64.exp() - 1.0)).abs() < 1e-11);
    }

    #[test]
    fn simpson_rejects_bad_input() {
        assert!(adaptive_simpson(&|x: f64| x, 1.0, 0.0, 1e-8).is_err());
        assert!(adaptive_simpson(&|x: f64| x, 0.0, 1.0, 0.0).is_err());
        let r = adaptive_simpson(&|x: f64| 1.0 / x, 0.0, 1.0, 1e-8);
        assert!(matches!(r, Err(EssError::Quadrature(_))));
    }

    #[test]
    fn simpson_non_smooth_hits_depth_cap() {
        // discontinuous integrand with a tolerance no bisection can satisfy
        let step = |x: f64| if x < 1.0 / 3.0 { 0.0 } else { 1.0 };
        assert!(matches!(
            adaptive_simpson(&step, 0.0, 1.0, 1e-300),
            Err(EssError::Quadrature(_))
        ));
    }

    #[test]
    fn romberg_on_linear_and_nonlinear() {
        let pts = [0.0, 1.0, 3.0];
        let ys = [0.0, 1.0, 0.0];
        let area = romberg_on_grid(&pts, &ys, &|y| y, 1e-12).unwrap();
        assert!((area - 1.5).abs() < 1e-12);
        // ∫ y² over tent: 1/3 + 2/3
        let sq = romberg_on_grid(&pts, &ys, &|y| y * y, 1e-12).unwrap();
        assert!((sq - 1.0).abs() < 1e-12);
    }

    #[test]
    fn sup_finds_interior_and_endpoint_maxima() {
        let g = |x: f64| (-(x - 0.3137).powi(2)).exp();
        assert!((sup_on_interval(&g, -5.0, 5.0) - 1.0).abs() < 1e-14);
        let e = |x: f64| (-x).exp();
        assert_eq!(sup_on_interval(&e, 0.0, 40.0), 1.0);
    }
}
