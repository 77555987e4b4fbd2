// inherent float methods shadow this whenever std is linked
#[allow(unused_imports)]
use num_traits::Float;
use alloc::vec::Vec;

use crate::{Error, Result};

/// Outcome of [`accelerate_sequence`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Acceleration {
    pub limit: f64,
    pub error_estimate: f64,
    /// The epsilon table broke down before any acceleration took place and
    /// `limit` is the last partial sum.
    pub breakdown: bool,
}

/// Wynn's epsilon algorithm.
///
/// Exact (up to rounding) for sequences whose error is a finite sum of
/// geometric terms, which covers alternating block sums of oscillatory tails.
/// The reported entry is the last one of the even column whose last two
/// entries agree best, and their difference is the error estimate.
pub fn accelerate_sequence(partial_sums: &[f64]) -> Result<Acceleration> {
    if partial_sums.len() < 4 {
        return Err(Error::InvalidInput("sequence acceleration needs at least four entries"));
    }
    if partial_sums.iter().any(|s| !s.is_finite()) {
        return Err(Error::InvalidInput("sequence acceleration needs finite entries"));
    }
    let last = partial_sums[partial_sums.len() - 1];
    let scale = partial_sums.iter().fold(0.0_f64, |m, s| m.max(s.abs()));
    let tiny = f64::EPSILON * scale.max(f64::MIN_POSITIVE);

    // columns[k] holds ε_k; even columns are estimates of the limit
    let mut prev: Vec<f64> = partial_sums.iter().map(|_| 0.0).collect(); // ε_{-1}
    prev.push(0.0);
    let mut cur: Vec<f64> = partial_sums.to_vec(); // ε_0
    let mut even_tails: Vec<(f64, Option<f64>)> =
        alloc::vec![(last, Some(partial_sums[partial_sums.len() - 2]))];
    let mut column = 0;
    while cur.len() >= 2 {
        let mut next = Vec::with_capacity(cur.len() - 1);
        let mut converged_here = false;
        for i in 0..cur.len() - 1 {
            let diff = cur[i + 1] - cur[i];
            if diff.abs() <= tiny {
                converged_here = true;
                break;
            }
            next.push(prev[i + 1] + 1.0 / diff);
        }
        if converged_here {
            // an exact (to rounding) stall: the current even column has converged
            if column % 2 == 0 {
                let v = cur[cur.len() - 1];
                return Ok(Acceleration { limit: v, error_estimate: tiny, breakdown: false });
            }
            break;
        }
        if next.iter().any(|v| !v.is_finite()) {
            break;
        }
        column += 1;
        prev = cur;
        cur = next;
        if column % 2 == 0 {
            let n = cur.len();
            even_tails.push((cur[n - 1], if n >= 2 { Some(cur[n - 2]) } else { None }));
        }
    }
    if even_tails.len() < 2 {
        let spread = (last - partial_sums[partial_sums.len() - 2]).abs();
        return Ok(Acceleration { limit: last, error_estimate: spread, breakdown: true });
    }
    // deeper columns built from an already-exact one are rounding noise, so
    // take the even column whose last entry moved least; a column with a
    // single entry can only be compared with the column above it
    let spread = |k: usize| {
        let (v, below) = even_tails[k];
        match below {
            Some(b) => (v - b).abs(),
            None => (v - even_tails[k - 1].0).abs(),
        }
    };
    let (k, err) = (1..even_tails.len())
        .map(|k| (k, spread(k)))
        .fold((1, f64::INFINITY), |best, cand| if cand.1 < best.1 { cand } else { best });
    let v = even_tails[k].0;
    Ok(Acceleration { limit: v, error_estimate: err.max(4.0 * f64::EPSILON * v.abs()), breakdown: false })
}

/// Richardson extrapolation of partial sums taken at doubling cut-offs,
/// whose remainders behave like `Σ_j c_j X^{-(e + j)}` with `e =
/// first_exponent`.
///
/// Each level removes one power. The reported level is the one whose last
/// entry moved least from the level below, and that movement is the error
/// estimate.
pub fn richardson_doubling(partial_sums: &[f64], first_exponent: f64) -> Result<Acceleration> {
    if partial_sums.len() < 3 {
        return Err(Error::InvalidInput("Richardson extrapolation needs at least three entries"));
    }
    if partial_sums.iter().any(|s| !s.is_finite()) || !(first_exponent > 0.0) {
        return Err(Error::InvalidInput("Richardson extrapolation needs finite entries and a positive exponent"));
    }
    const MAX_LEVELS: usize = 8;
    let mut row = partial_sums.to_vec();
    let mut last = row[row.len() - 1];
    let mut best = Acceleration {
        limit: last,
        error_estimate: (last - row[row.len() - 2]).abs(),
        breakdown: true,
    };
    let mut level = 0;
    while row.len() >= 2 && level < MAX_LEVELS {
        let factor = 2.0_f64.powf(first_exponent + level as f64);
        row = row.windows(2).map(|w| (factor * w[1] - w[0]) / (factor - 1.0)).collect();
        level += 1;
        let v = row[row.len() - 1];
        let moved = (v - last).abs();
        if moved <= best.error_estimate {
            best = Acceleration { limit: v, error_estimate: moved, breakdown: false };
        }
        last = v;
    }
    best.error_estimate = best.error_estimate.max(4.0 * f64::EPSILON * best.limit.abs());
    Ok(best)
}
