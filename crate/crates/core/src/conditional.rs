//! Joint distributions of two discrete variables and the Ess of their
//! mean conditional distribution.
//!
//! The mean-conditional Ess is defined as the quotient
//! `S(p(X,Y), α) / S(p(X), α)`. At α = 1 it equals the `p(X)`-weighted
//! geometric mean of the row-conditional Ess values; [`verify_chain_identity`]
//! reports how far the same product is from the quotient at any order.

use serde::Serialize;

use crate::discrete::{ess, Alpha, Pmf, NORMALIZATION_TOL};
use crate::error::{EssError, Result};

/// Joint pmf `p(X = x_i, Y = y_j)` stored row-major, rows indexed by X.
#[derive(Debug, Clone, PartialEq)]
pub struct JointPmf {
    n_x: usize,
    n_y: usize,
    table: Vec<f64>,
}

impl JointPmf {
    /// Builds a joint from rows; every row must have the same length.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n_x = rows.len();
        let n_y = rows.first().map_or(0, Vec::len);
        if n_x == 0 || n_y == 0 {
            return Err(EssError::Domain("joint table must be at least 1x1".into()));
        }
        if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != n_y) {
            return Err(EssError::Domain(format!(
                "row {i} has {} entries, expected {n_y}",
                r.len()
            )));
        }
        JointPmf::new(n_x, n_y, rows.concat())
    }

    /// Builds a joint from a flat row-major table.
    pub fn new(n_x: usize, n_y: usize, table: Vec<f64>) -> Result<Self> {
        if n_x == 0 || n_y == 0 {
            return Err(EssError::Domain("joint table must be at least 1x1".into()));
        }
        if table.len() != n_x * n_y {
            return Err(EssError::Domain(format!(
                "table has {} entries, expected {n_x}x{n_y}",
                table.len()
            )));
        }
        if let Some(v) = table.iter().find(|v| !v.is_finite() || **v < 0.0) {
            return Err(EssError::Domain(format!(
                "joint entries must be finite and nonnegative, got {v}"
            )));
        }
        let total: f64 = table.iter().sum();
        if (total - 1.0).abs() > NORMALIZATION_TOL {
            return Err(EssError::Normalization(format!(
                "joint table sums to {total}, expected 1 within {NORMALIZATION_TOL:e}"
            )));
        }
        Ok(JointPmf { n_x, n_y, table })
    }

    /// Joint of two independent variables, `p(x) q(y)`.
    pub fn product(p: &Pmf, q: &Pmf) -> Self {
        let table = p
            .probs()
            .iter()
            .flat_map(|&a| q.probs().iter().map(move |&b| (a * b).clamp(0.0, 1.0)))
            .collect();
        JointPmf {
            n_x: p.len(),
            n_y: q.len(),
            table,
        }
    }

    pub fn n_x(&self) -> usize {
        self.n_x
    }

    pub fn n_y(&self) -> usize {
        self.n_y
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.table[i * self.n_y + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.table[i * self.n_y..(i + 1) * self.n_y]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.table.chunks(self.n_y)
    }

    /// All `n_x · n_y` cells as a single pmf, row-major.
    pub fn flatten(&self) -> Pmf {
        Pmf::from_parts(self.table.clone())
    }
}

/// `p(X)`: row sums.
pub fn marginal_x(j: &JointPmf) -> Pmf {
    Pmf::from_parts(j.rows().map(|r| r.iter().sum()).collect())
}

/// `p(Y)`: column sums.
pub fn marginal_y(j: &JointPmf) -> Pmf {
    let mut cols = vec![0.0; j.n_y];
    for r in j.rows() {
        cols.iter_mut().zip(r).for_each(|(c, v)| *c += v);
    }
    Pmf::from_parts(cols)
}

/// `p(Y | X = x_i)`.
pub fn conditional_y_given_x(j: &JointPmf, i: usize) -> Result<Pmf> {
    if i >= j.n_x {
        return Err(EssError::Domain(format!(
            "row index {i} out of range for {} rows",
            j.n_x
        )));
    }
    let row = j.row(i);
    let mass: f64 = row.iter().sum();
    if !(mass > 0.0) {
        return Err(EssError::Conditioning(format!(
            "row {i} has zero probability"
        )));
    }
    Ok(Pmf::from_parts(row.iter().map(|v| v / mass).collect()))
}

/// `S(p(X,Y), a) / S(p(X), a)`.
pub fn mean_conditional_ess(j: &JointPmf, a: Alpha) -> f64 {
    ess(&j.flatten(), a) / ess(&marginal_x(j), a)
}

/// `∏_i S(p(Y | X = x_i), a)^{p(X = x_i)}`; rows with zero mass are skipped.
pub fn geometric_conditional_ess(j: &JointPmf, a: Alpha) -> f64 {
    let px = marginal_x(j);
    let log_sum: f64 = px
        .probs()
        .iter()
        .enumerate()
        .filter(|(_, &w)| w > 0.0)
        .map(|(i, &w)| {
            let cond = conditional_y_given_x(j, i).expect("row has positive mass");
            w * ess(&cond, a).ln()
        })
        .sum();
    log_sum.exp()
}

/// Right-hand side of the α = 1 chain identity.
pub fn chain_identity_rhs(j: &JointPmf) -> f64 {
    geometric_conditional_ess(j, Alpha::One)
}

/// Comparison of the quotient definition against the weighted geometric mean.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChainReport {
    pub alpha: Alpha,
    pub lhs: f64,
    pub rhs_geometric: f64,
    pub abs_gap: f64,
}

/// Evaluates both sides of the chain identity at order `a`.
///
/// The gap vanishes at `Alpha::One` for every joint; at other orders it is
/// generally nonzero and is only reported.
pub fn verify_chain_identity(j: &JointPmf, a: Alpha) -> ChainReport {
    let lhs = mean_conditional_ess(j, a);
    let rhs_geometric = geometric_conditional_ess(j, a);
    ChainReport {
        alpha: a,
        lhs,
        rhs_geometric,
        abs_gap: (lhs - rhs_geometric).abs(),
    }
}
