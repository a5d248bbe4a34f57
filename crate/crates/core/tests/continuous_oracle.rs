//! Closed forms checked against quadrature, plus scaling and ordering.

use ess_core::io::parse_grid_csv;
use ess_core::{ess_continuous_closed_form, ess_continuous_quadrature, Alpha, DensitySpec};

const ORDERS: [Alpha; 4] = [
    Alpha::Finite(0.5),
    Alpha::Finite(2.0),
    Alpha::Finite(5.0),
    Alpha::One,
];

fn agree(d: &DensitySpec) {
    for a in ORDERS.into_iter().chain([Alpha::Inf]) {
        let closed = ess_continuous_closed_form(d, a).unwrap();
        let quad = ess_continuous_quadrature(d, a, None, 1e-10).unwrap();
        assert!(
            (closed - quad).abs() < 1e-6,
            "{d:?} alpha={a}: closed {closed} quad {quad}"
        );
    }
}

#[test]
fn gaussian_closed_form_matches_quadrature() {
    for s2 in [0.25, 1.0, 4.0] {
        agree(&DensitySpec::gaussian(0.0, s2).unwrap());
        agree(&DensitySpec::gaussian(-3.5, s2).unwrap());
    }
}

#[test]
fn exponential_closed_form_matches_quadrature() {
    for b in [0.5, 1.0, 2.0] {
        agree(&DensitySpec::exponential(b).unwrap());
    }
}

#[test]
fn gaussian_ess_scales_with_sigma() {
    let one = DensitySpec::gaussian(0.0, 1.0).unwrap();
    let four = DensitySpec::gaussian(0.0, 4.0).unwrap();
    for a in ORDERS.into_iter().chain([Alpha::Inf, Alpha::Finite(0.01)]) {
        let r = ess_continuous_closed_form(&four, a).unwrap()
            / ess_continuous_closed_form(&one, a).unwrap();
        assert!((r - 2.0).abs() < 1e-9, "alpha={a}: ratio {r}");
    }
}

#[test]
fn ordered_over_alpha() {
    let grid: Vec<Alpha> = [0.05, 0.5, 0.9]
        .into_iter()
        .map(Alpha::Finite)
        .chain([Alpha::One])
        .chain([1.1, 2.0, 5.0, 20.0].into_iter().map(Alpha::Finite))
        .chain([Alpha::Inf])
        .collect();
    for d in [
        DensitySpec::gaussian(0.0, 1.0).unwrap(),
        DensitySpec::exponential(1.0).unwrap(),
        DensitySpec::exponential(3.0).unwrap(),
    ] {
        let closed: Vec<f64> = grid
            .iter()
            .map(|&a| ess_continuous_closed_form(&d, a).unwrap())
            .collect();
        assert!(
            closed.windows(2).all(|w| w[1] <= w[0] + 1e-12),
            "{closed:?}"
        );
        let quad: Vec<f64> = grid
            .iter()
            .map(|&a| ess_continuous_quadrature(&d, a, None, 1e-10).unwrap())
            .collect();
        assert!(quad.windows(2).all(|w| w[1] <= w[0] + 1e-6), "{quad:?}");
    }
}

#[test]
fn values_below_one_are_not_clamped() {
    let d = DensitySpec::exponential(10.0).unwrap();
    for a in ORDERS.into_iter().chain([Alpha::Inf]) {
        let closed = ess_continuous_closed_form(&d, a).unwrap();
        let quad = ess_continuous_quadrature(&d, a, None, 1e-10).unwrap();
        assert!(closed < 1.0 && quad < 1.0, "alpha={a}: {closed} {quad}");
    }
    let narrow = DensitySpec::uniform(0.0, 0.25).unwrap();
    assert_eq!(
        ess_continuous_closed_form(&narrow, Alpha::One).unwrap(),
        0.25
    );
}

#[test]
fn tabulated_gaussian_approximates_closed_form() {
    // fine grid of the standard normal over ±8; piecewise-linear error ~h²
    let n = 4001;
    let h = 16.0 / (n - 1) as f64;
    let g = DensitySpec::gaussian(0.0, 1.0).unwrap();
    let csv: String = (0..n)
        .map(|i| {
            let x = -8.0 + h * i as f64;
            format!("{x},{}\n", g.pdf(x))
        })
        .collect();
    let grid = parse_grid_csv(&csv).unwrap();
    for a in [Alpha::Finite(0.5), Alpha::One, Alpha::Finite(2.0)] {
        let closed = ess_continuous_closed_form(&g, a).unwrap();
        let quad = ess_continuous_quadrature(&grid, a, None, 1e-10).unwrap();
        assert!(
            (closed - quad).abs() < 1e-4,
            "alpha={a}: {closed} vs {quad}"
        );
    }
}

#[test]
fn custom_domain_override() {
    let g = DensitySpec::gaussian(0.0, 1.0).unwrap();
    let wide = ess_continuous_quadrature(&g, Alpha::One, Some((-50.0, 50.0)), 1e-10).unwrap();
    let closed = ess_continuous_closed_form(&g, Alpha::One).unwrap();
    assert!((wide - closed).abs() < 1e-6);
}
