//! Minimum Hamming distance by increasing-weight syndrome search.
//!
//! For `w = 1, 2, ...` every support `c_1 < ... < c_w` is tried with the
//! coefficient at `c_1` fixed to 1 (codes are linear, so scaling loses
//! nothing). The last coefficient is solved for directly instead of being
//! enumerated. Supports are partitioned by `c_1` across worker threads and the
//! hit with the smallest `c_1` wins, so the result does not depend on `jobs`.

use std::sync::atomic::{AtomicUsize, Ordering};

use serde::{Deserialize, Serialize};

use crate::codes::{parity_check_matrix, BuiltCode};
use crate::error::{Error, Result};
use crate::gf::PrimeField;
use crate::linalg::Matrix;

/// Default number of candidate vectors the search may test.
pub const DEFAULT_BUDGET: u128 = 100_000_000;

/// Largest message space the brute-force oracle will enumerate.
pub const BRUTEFORCE_LIMIT: u128 = 10_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistanceResult {
    /// The minimum distance when `exact`, otherwise a lower bound.
    pub d: usize,
    pub exact: bool,
    /// Every weight up to this one was searched exhaustively.
    pub weight_checked: usize,
    /// A codeword of weight `d` (present only when `exact`).
    pub witness: Option<Vec<u32>>,
    /// Number of candidate vectors accounted against the budget.
    pub candidates: u128,
}

#[derive(Clone, Copy, Debug)]
pub struct SearchLimits {
    pub max_weight: Option<usize>,
    pub budget: u128,
    pub jobs: usize,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits {
            max_weight: None,
            budget: DEFAULT_BUDGET,
            jobs: 1,
        }
    }
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Normalized candidates of weight `w`: `C(n, w) (q - 1)^(w - 1)`.
pub fn candidate_count(n: usize, q: u32, w: usize) -> u128 {
    if w == 0 {
        return 0;
    }
    binomial(n, w).saturating_mul((u128::from(q) - 1).saturating_pow(w as u32 - 1))
}

pub fn min_distance(code: &BuiltCode, limits: SearchLimits) -> Result<DistanceResult> {
    if code.dimension == 0 {
        return Err(Error::ZeroDimension);
    }
    let parity = parity_check_matrix(code);
    Ok(min_distance_with_parity(
        &parity,
        code.spec.length(),
        limits,
    ))
}

/// Searches for the lightest nonzero `v` with `parity * v^T = 0`.
pub fn min_distance_with_parity(parity: &Matrix, n: usize, limits: SearchLimits) -> DistanceResult {
    let field = parity.field();
    let q = field.modulus();
    let columns: Vec<Vec<u32>> = (0..n)
        .map(|c| (0..parity.rows()).map(|r| parity.get(r, c)).collect())
        .collect();
    let max_weight = limits.max_weight.unwrap_or(n).min(n);
    let mut used: u128 = 0;
    let mut weight_checked = 0;
    for w in 1..=max_weight {
        let count = candidate_count(n, q, w);
        if used.saturating_add(count) > limits.budget {
            break;
        }
        used += count;
        if let Some(witness) = search_weight(field, &columns, w, limits.jobs.max(1)) {
            return DistanceResult {
                d: w,
                exact: true,
                weight_checked: w - 1,
                witness: Some(witness),
                candidates: used,
            };
        }
        weight_checked = w;
    }
    DistanceResult {
        d: weight_checked + 1,
        exact: false,
        weight_checked,
        witness: None,
        candidates: used,
    }
}

fn search_weight(
    field: PrimeField,
    columns: &[Vec<u32>],
    w: usize,
    jobs: usize,
) -> Option<Vec<u32>> {
    let n = columns.len();
    let firsts = n + 1 - w;
    let next = AtomicUsize::new(0);
    let best = AtomicUsize::new(usize::MAX);
    let hits: Vec<Vec<(usize, Vec<u32>)>> = std::thread::scope(|scope| {
        let workers: Vec<_> = (0..jobs.min(firsts))
            .map(|_| {
                scope.spawn(|| {
                    let mut found = Vec::new();
                    loop {
                        let c1 = next.fetch_add(1, Ordering::Relaxed);
                        if c1 >= firsts || c1 > best.load(Ordering::Relaxed) {
                            break;
                        }
                        if let Some(v) = search_from(field, columns, w, c1) {
                            best.fetch_min(c1, Ordering::Relaxed);
                            found.push((c1, v));
                            break;
                        }
                    }
                    found
                })
            })
            .collect();
        workers
            .into_iter()
            .map(|h| h.join().expect("distance worker panicked"))
            .collect()
    });
    hits.into_iter()
        .flatten()
        .min_by_key(|(c1, _)| *c1)
        .map(|(_, v)| v)
}

/// First hit (in lexicographic support and coefficient order) whose support
/// starts at `c1`.
fn search_from(field: PrimeField, columns: &[Vec<u32>], w: usize, c1: usize) -> Option<Vec<u32>> {
    let mut support = vec![(c1, 1u32)];
    let partial = columns[c1].clone();
    let mut out = None;
    dfs(field, columns, w, &mut support, partial, &mut out);
    out.map(|support| {
        let mut v = vec![0; columns.len()];
        for (c, a) in support {
            v[c] = a;
        }
        v
    })
}

fn dfs(
    field: PrimeField,
    columns: &[Vec<u32>],
    w: usize,
    support: &mut Vec<(usize, u32)>,
    partial: Vec<u32>,
    out: &mut Option<Vec<(usize, u32)>>,
) {
    let n = columns.len();
    let depth = support.len();
    let start = support.last().map_or(0, |&(c, _)| c + 1);
    if depth == w {
        if partial.iter().all(|&x| x == 0) {
            *out = Some(support.clone());
        }
        return;
    }
    let remaining = w - depth;
    for c in start..=n - remaining {
        if remaining == 1 {
            if let Some(a) = closing_coefficient(field, &columns[c], &partial) {
                support.push((c, a));
                *out = Some(support.clone());
                return;
            }
            continue;
        }
        for a in 1..field.modulus() {
            let next: Vec<u32> = partial
                .iter()
                .zip(&columns[c])
                .map(|(&s, &h)| field.add(s, field.mul(a, h)))
                .collect();
            support.push((c, a));
            dfs(field, columns, w, support, next, out);
            if out.is_some() {
                return;
            }
            support.pop();
        }
    }
}

/// The nonzero `a` with `partial + a * col = 0`, if any.
fn closing_coefficient(field: PrimeField, col: &[u32], partial: &[u32]) -> Option<u32> {
    let Some(i) = col.iter().position(|&h| h != 0) else {
        return partial.iter().all(|&x| x == 0).then_some(1);
    };
    let a = field.mul(field.neg(partial[i]), field.inv(col[i]).ok()?);
    if a == 0 {
        return None;
    }
    let closes = partial
        .iter()
        .zip(col)
        .all(|(&s, &h)| field.add(s, field.mul(a, h)) == 0);
    closes.then_some(a)
}

/// Minimum nonzero weight over all `q^dim` codewords; test oracle.
pub fn min_distance_bruteforce(code: &BuiltCode) -> Result<usize> {
    min_weight_bruteforce(&code.g)
}

/// Minimum weight of a nonzero vector in the row space of `g`, whose rows must
/// be independent. Refuses when `q^rows` exceeds [`BRUTEFORCE_LIMIT`].
pub fn min_weight_bruteforce(g: &Matrix) -> Result<usize> {
    let field = g.field();
    let q = field.modulus();
    let dim = g.rows();
    if dim == 0 {
        return Err(Error::ZeroDimension);
    }
    let total = u128::from(q).checked_pow(dim as u32).unwrap_or(u128::MAX);
    if total > BRUTEFORCE_LIMIT {
        return Err(Error::BudgetExceeded {
            required: total,
            budget: BRUTEFORCE_LIMIT,
        });
    }
    // odometer: bumping digit i adds row i; a digit wrapping from q-1 to 0
    // adds row i for the q-th time, which cancels its contribution
    let mut digits = vec![0u32; dim];
    let mut word = vec![0u32; g.cols()];
    let mut best = usize::MAX;
    loop {
        let mut i = 0;
        loop {
            for (x, &r) in word.iter_mut().zip(g.row(i)) {
                *x = field.add(*x, r);
            }
            digits[i] += 1;
            if digits[i] < q {
                break;
            }
            digits[i] = 0;
            i += 1;
            if i == dim {
                return Ok(best);
            }
        }
        let weight = word.iter().filter(|&&x| x != 0).count();
        if weight > 0 {
            best = best.min(weight);
        }
    }
}
