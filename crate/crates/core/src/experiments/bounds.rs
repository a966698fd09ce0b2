//! Explicit bound calculators: the degree-capped ball-size bound
//! `N_{r+1}(K) = 1 + K + ... + K^{r+1}` and the Azuma-Hoeffding tail for
//! truncated empirical local averages.

use super::ExperimentError;
use crate::math;

/// Exact `sum_{j=0}^{r+1} K^j` as an integer; errors on overflow.
pub fn n_ball_bound(k_cap: u64, r: u32) -> Result<u128, ExperimentError> {
    if k_cap < 1 {
        return Err(ExperimentError::NonPositive("K"));
    }
    let mut total: u128 = 0;
    let mut term: u128 = 1;
    for j in 0..=(r as u64 + 1) {
        total = total
            .checked_add(term)
            .ok_or(ExperimentError::Overflow("n_ball_bound"))?;
        if j < r as u64 + 1 {
            term = term
                .checked_mul(k_cap as u128)
                .ok_or(ExperimentError::Overflow("n_ball_bound"))?;
        }
    }
    Ok(total)
}

/// Azuma-Hoeffding tail for the truncated empirical average of a bounded
/// radius-r local functional along the growth filtration:
///
/// ```text
/// 2 exp( -eps^2 n / (2 c^2 ||f||^2) ),    c = 2 (m+1) N_{r+1}(K).
/// ```
///
/// The raw bound is returned unclamped; values above 1 are vacuous and the
/// caller is expected to report them as-is.
pub fn azuma_bound(
    n: u64,
    eps: f64,
    r: u32,
    m: u32,
    k_cap: u64,
    sup_f: f64,
) -> Result<f64, ExperimentError> {
    if n == 0 {
        return Err(ExperimentError::NonPositive("n"));
    }
    if eps.is_nan() || eps <= 0.0 {
        return Err(ExperimentError::NonPositive("eps"));
    }
    if m == 0 {
        return Err(ExperimentError::NonPositive("m"));
    }
    if sup_f.is_nan() || sup_f <= 0.0 {
        return Err(ExperimentError::NonPositive("sup_f"));
    }
    let c = 2.0 * (m as f64 + 1.0) * n_ball_bound(k_cap, r)? as f64;
    let exponent = -(eps * eps) * n as f64 / (2.0 * c * c * sup_f * sup_f);
    Ok(2.0 * math::exp(exponent))
}
