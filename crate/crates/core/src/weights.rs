//! Closed-form solver for the non-negative feature-weight maximization
//!
//! ```text
//! max  sum_j w_j * B_j    s.t.  ||w||_2 <= 1,  ||w||_1 <= l,  w_j >= 0
//! ```
//!
//! The optimum is `w = s(B, delta) / ||s(B, delta)||_2` with
//! `s_j = max(B_j - delta, 0)`, where `delta = 0` if that already meets
//! the L1 bound and is otherwise found by bisection so the bound holds
//! with equality.

use crate::error::{Error, Result};

const L1_TOL: f64 = 1e-6;
const MAX_BISECTION_ITER: usize = 100;

/// Non-negative feature weights satisfying the L2/L1 constraints.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightVector {
    w: Vec<f64>,
    l1_bound: f64,
}

impl WeightVector {
    pub(crate) fn new(w: Vec<f64>, l1_bound: f64) -> Self {
        Self { w, l1_bound }
    }

    /// Uniform weights `1/sqrt(p)`, the starting point of the sparse
    /// algorithms. The L1 bound is recorded as `sqrt(p)` (inactive).
    pub fn uniform(p: usize) -> Self {
        let v = 1.0 / (p as f64).sqrt();
        Self {
            w: vec![v; p],
            l1_bound: (p as f64).sqrt(),
        }
    }

    pub fn values(&self) -> &[f64] {
        &self.w
    }

    pub fn len(&self) -> usize {
        self.w.len()
    }

    pub fn is_empty(&self) -> bool {
        self.w.is_empty()
    }

    pub fn l1_bound(&self) -> f64 {
        self.l1_bound
    }

    pub fn l1_norm(&self) -> f64 {
        self.w.iter().sum()
    }

    pub fn l2_norm(&self) -> f64 {
        self.w.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    /// Number of strictly positive weights.
    pub fn nonzero_count(&self) -> usize {
        self.w.iter().filter(|&&v| v > 0.0).count()
    }
}

/// Componentwise positive-part shrinkage `max(b_j - delta, 0)`.
/// Negative inputs map to 0, so only positive components can earn
/// weight downstream.
pub fn soft_threshold(b: &[f64], delta: f64) -> Vec<f64> {
    debug_assert!(delta >= 0.0);
    b.iter().map(|&v| (v - delta).max(0.0)).collect()
}

fn normalized(s: &[f64]) -> Option<(Vec<f64>, f64)> {
    let norm2 = s.iter().map(|v| v * v).sum::<f64>().sqrt();
    if norm2 == 0.0 {
        return None;
    }
    let w: Vec<f64> = s.iter().map(|v| v / norm2).collect();
    let l1 = w.iter().sum();
    Some((w, l1))
}

/// Maximizes `sum_j w_j B_j` over the constraint set.
///
/// Requires `1 <= l <= sqrt(p)` and at least one positive `B_j`; all
/// non-positive components fail with [`Error::DegenerateWeights`] so the
/// caller can decide a fallback.
pub fn solve_weights(b: &[f64], l: f64) -> Result<WeightVector> {
    let p = b.len();
    if p == 0 {
        return Err(Error::Parameter("empty objective vector".into()));
    }
    let sqrt_p = (p as f64).sqrt();
    if !(1.0..=sqrt_p + 1e-12).contains(&l) {
        return Err(Error::Parameter(format!(
            "l1 bound {l} outside [1, sqrt(p)] = [1, {sqrt_p}]"
        )));
    }
    let max_b = b.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    if !(max_b > 0.0) {
        return Err(Error::DegenerateWeights);
    }

    // delta = 0 candidate
    let (w0, l1_0) = normalized(&soft_threshold(b, 0.0)).expect("max_b > 0");
    if l1_0 <= l {
        return Ok(WeightVector::new(w0, l));
    }

    // ||w(delta)||_1 is continuous and non-increasing on [0, max_b);
    // bisect for the root of ||w(delta)||_1 = l.
    let mut lo = 0.0;
    let mut hi = max_b;
    let mut best = w0;
    for _ in 0..MAX_BISECTION_ITER {
        let mid = 0.5 * (lo + hi);
        match normalized(&soft_threshold(b, mid)) {
            Some((w, l1)) => {
                best = w;
                if (l1 - l).abs() <= L1_TOL {
                    break;
                }
                if l1 > l {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            None => hi = mid,
        }
    }
    Ok(WeightVector::new(best, l))
}
