//! Parameter scans over every divisor grid of a ring.
//!
//! [`duality_sweep`] builds each code and checks it directly, which is only
//! practical for small grids. [`factorized_sweep`] covers grids with up to
//! `|D|^(kl)` members (`D` the monic divisors of `x^s - alpha`) by splitting
//! the ring into its `kl` components `zeta_t eta_j F_p[x]/<x^s - alpha>`:
//!
//! * The inner product pairs component `(t, j)` only with its partner
//!   `(t', j')`; this block structure is verified, not assumed.
//! * So `G G^T = 0` holds iff it holds on every partner pair, and the
//!   dimension is the sum of the component dimensions.
//! * Self-dual codes are then counted exactly with a generating polynomial in
//!   the total divisor degree, one factor per partner pair.

use serde::Serialize;

use crate::codes::{
    build_code, build_dual, cell_relation, respec, self_dual_decide, signs, validate_spec, CodeSpec,
};
use crate::error::Result;
use crate::gf::PrimeField;
use crate::idempotents::{build_constacyclic_idempotents, reciprocal_index};
use crate::linalg::Matrix;
use crate::poly::{monic_divisors, Poly};
use crate::ring3d::{Axis, RingParams};

/// Every ring over `field` with constants in `{1, -1}` whose `y` and `z`
/// idempotents exist, in the order `(alpha, beta, gamma)` over `(1, -1)`.
pub fn admitted_sign_rings(field: PrimeField, s: usize, l: usize, k: usize) -> Vec<RingParams> {
    let minus = field.modulus() - 1;
    let mut out = Vec::new();
    for alpha in [1, minus] {
        for beta in [1, minus] {
            for gamma in [1, minus] {
                let ok = build_constacyclic_idempotents(field, l, beta).is_ok()
                    && build_constacyclic_idempotents(field, k, gamma).is_ok();
                if ok {
                    out.push(
                        RingParams::new(field, (s, l, k), (alpha, beta, gamma)).expect("valid"),
                    );
                }
            }
        }
    }
    out
}

/// The rings scanned for the parameter-level exclusion: `beta = gamma = 1`,
/// `alpha = +-1`, `gcd(s, q) = 1`, `s` odd when `alpha = -1`, and
/// `s, l, k <= max_len`, skipping `(l, k)` without idempotents.
pub fn exclusion_rings(q: u64, max_len: usize) -> Result<Vec<RingParams>> {
    let field = PrimeField::new(q)?;
    let mut out = Vec::new();
    for s in 1..=max_len {
        if (s as u64).is_multiple_of(q) {
            continue;
        }
        for alpha in [1, field.modulus() - 1] {
            if alpha != 1 && s % 2 == 0 {
                continue;
            }
            for l in 1..=max_len {
                for k in 1..=max_len {
                    let ok = build_constacyclic_idempotents(field, l, 1).is_ok()
                        && build_constacyclic_idempotents(field, k, 1).is_ok();
                    if ok {
                        out.push(RingParams::new(field, (s, l, k), (alpha, 1, 1))?);
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Number of divisor grids: `|D|^(kl)`.
pub fn grid_count(ring: &RingParams) -> Result<u128> {
    let d = monic_divisors(ring.field, ring.s, ring.alpha)?.len() as u128;
    Ok(d.saturating_pow((ring.k * ring.l) as u32))
}

/// Calls `f` on the spec of every divisor grid, in odometer order with the
/// cell `(k-1, l-1)` varying fastest.
pub fn for_each_grid(ring: &RingParams, mut f: impl FnMut(&CodeSpec)) -> Result<()> {
    let divisors = monic_divisors(ring.field, ring.s, ring.alpha)?;
    let cells = ring.k * ring.l;
    let base_grid = vec![vec![Poly::one(ring.field); ring.l]; ring.k];
    let base = validate_spec(*ring, base_grid)?;
    let mut digits = vec![0usize; cells];
    loop {
        let grid = (0..ring.k)
            .map(|t| {
                (0..ring.l)
                    .map(|j| divisors[digits[t * ring.l + j]].clone())
                    .collect()
            })
            .collect();
        f(&respec(&base, grid));
        let mut i = cells;
        loop {
            if i == 0 {
                return Ok(());
            }
            i -= 1;
            digits[i] += 1;
            if digits[i] < divisors.len() {
                break;
            }
            digits[i] = 0;
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct DualitySweepReport {
    pub specs: usize,
    /// Specs where `G H^T != 0`.
    pub orthogonality_failures: usize,
    /// Specs where `rank G + rank H != n`.
    pub rank_failures: usize,
    /// Specs where the row space of `H` differs from the null space of `G`.
    pub null_space_failures: usize,
    /// Specs where `rank G` differs from `n - sum deg p`.
    pub dimension_failures: usize,
    /// Specs where the divisibility criterion and the direct test disagree.
    pub disagreements: usize,
    pub self_dual: usize,
    /// Specs meeting every divisibility relation but not `n = 2 sum deg p`.
    pub divisibility_without_dimension: usize,
}

impl DualitySweepReport {
    pub fn clean(&self) -> bool {
        self.orthogonality_failures == 0
            && self.rank_failures == 0
            && self.null_space_failures == 0
            && self.dimension_failures == 0
            && self.disagreements == 0
    }

    fn merge(&mut self, o: &DualitySweepReport) {
        self.specs += o.specs;
        self.orthogonality_failures += o.orthogonality_failures;
        self.rank_failures += o.rank_failures;
        self.null_space_failures += o.null_space_failures;
        self.dimension_failures += o.dimension_failures;
        self.disagreements += o.disagreements;
        self.self_dual += o.self_dual;
        self.divisibility_without_dimension += o.divisibility_without_dimension;
    }
}

/// Builds every grid's code and dual and checks them directly.
pub fn duality_sweep(ring: &RingParams) -> Result<DualitySweepReport> {
    let mut report = DualitySweepReport::default();
    let mut err = None;
    for_each_grid(ring, |spec| {
        if err.is_some() {
            return;
        }
        match check_one(spec) {
            Ok(r) => report.merge(&r),
            Err(e) => err = Some(e),
        }
    })?;
    err.map_or(Ok(report), Err)
}

fn check_one(spec: &CodeSpec) -> Result<DualitySweepReport> {
    let n = spec.length();
    let code = build_code(spec);
    let dual = build_dual(spec)?;
    let rank_g = code.g.rank();
    let rank_h = dual.h.rank();
    let orth = dual.h.rows() == 0 || code.g.gram(&dual.h)?.is_zero();
    let decision = self_dual_decide(spec)?;
    Ok(DualitySweepReport {
        specs: 1,
        orthogonality_failures: usize::from(!orth),
        rank_failures: usize::from(rank_g + rank_h != n),
        null_space_failures: usize::from(!dual.h.same_row_space(&code.g.null_space())),
        dimension_failures: usize::from(
            rank_g != spec.expected_dimension() || rank_g != code.g.rows(),
        ),
        disagreements: usize::from(!decision.agrees()),
        self_dual: usize::from(decision.direct_verdict),
        divisibility_without_dimension: usize::from(
            decision.divisibility_condition() && !decision.dimension_condition,
        ),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactorizedReport {
    pub ring: RingParams,
    pub grids: u128,
    /// Inner products vanish between every non-partner pair of components.
    pub block_structure: bool,
    /// The `kl` full components together span `F_p^n`.
    pub components_span: bool,
    /// Every divisor in every cell yields `s - deg p` independent rows.
    pub cell_ranks: bool,
    /// Grids whose code satisfies `G G^T = 0` and `2 dim = n`.
    pub self_dual: u128,
    /// Grids accepted by the divisibility criterion.
    pub criterion_true: u128,
    /// Grids where the two verdicts differ.
    pub disagreements: u128,
    /// Grids meeting every divisibility relation but not `n = 2 sum deg p`.
    pub divisibility_without_dimension: u128,
}

impl FactorizedReport {
    /// Whether the factorization argument applies, so the counts are exact
    /// and the dimension formula holds for every grid.
    pub fn structure_verified(&self) -> bool {
        self.block_structure && self.components_span && self.cell_ranks
    }
}

/// Rows `x^i * zeta_t eta_j p` for `i < s - deg p`.
fn cell_rows(spec: &CodeSpec, t: usize, j: usize, p: &Poly) -> Matrix {
    let ring = spec.ring();
    let count = ring.s - p.degree().expect("nonzero divisor");
    let mut cur = spec.component_element(t, j, p);
    let mut rows = Vec::with_capacity(count);
    for i in 0..count {
        if i > 0 {
            cur = cur.shift(Axis::X);
        }
        rows.push(cur.flatten());
    }
    Matrix::from_rows(ring.field, ring.len(), &rows).expect("row length n")
}

fn gram_zero(a: &Matrix, b: &Matrix) -> bool {
    a.rows() == 0 || b.rows() == 0 || a.gram(b).expect("same width").is_zero()
}

/// Polynomial in the total divisor degree, coefficients are grid counts.
type DegreeCounts = Vec<u128>;

fn convolve(a: &DegreeCounts, b: &DegreeCounts) -> DegreeCounts {
    let mut out = vec![0u128; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Counts self-dual grids through the component factorization.
pub fn factorized_sweep(ring: &RingParams) -> Result<FactorizedReport> {
    let divisors = monic_divisors(ring.field, ring.s, ring.alpha)?;
    let base = validate_spec(*ring, vec![vec![Poly::one(ring.field); ring.l]; ring.k])?;
    let (_, beta, gamma) = signs(&base)?;
    let (k, l, s) = (ring.k, ring.l, ring.s);
    let cells: Vec<(usize, usize)> = (0..k).flat_map(|t| (0..l).map(move |j| (t, j))).collect();
    let partner = |(t, j): (usize, usize)| -> Result<(usize, usize)> {
        Ok((
            reciprocal_index(gamma, k, t)?,
            reciprocal_index(beta, l, j)?,
        ))
    };

    let one = Poly::one(ring.field);
    let full: Vec<Matrix> = cells
        .iter()
        .map(|&(t, j)| cell_rows(&base, t, j, &one))
        .collect();
    let mut block_structure = true;
    for (a, &ca) in cells.iter().enumerate() {
        let pa = partner(ca)?;
        for (b, &cb) in cells.iter().enumerate() {
            if cb != pa && !gram_zero(&full[a], &full[b]) {
                block_structure = false;
            }
        }
    }
    let stacked = full
        .iter()
        .try_fold(Matrix::zeros(ring.field, 0, ring.len()), |acc, m| {
            acc.stack(m)
        })?;
    let components_span = stacked.rank() == ring.len();

    let rows: Vec<Vec<Matrix>> = cells
        .iter()
        .map(|&(t, j)| divisors.iter().map(|p| cell_rows(&base, t, j, p)).collect())
        .collect();
    let cell_ranks = rows.iter().flatten().all(|m| m.rank() == m.rows());

    // one generating polynomial per partner pair, visited once each
    let mut all = vec![1u128];
    let mut orth = vec![1u128];
    let mut crit = vec![1u128];
    let mut both = vec![1u128];
    let mut seen = vec![false; cells.len()];
    for (a, &ca) in cells.iter().enumerate() {
        if seen[a] {
            continue;
        }
        let pa = partner(ca)?;
        let b = pa.0 * l + pa.1;
        seen[a] = true;
        seen[b] = true;
        let mut local = [
            vec![0u128; 2 * s + 1],
            vec![0u128; 2 * s + 1],
            vec![0u128; 2 * s + 1],
            vec![0u128; 2 * s + 1],
        ];
        let choices: Vec<(usize, usize)> = if a == b {
            (0..divisors.len()).map(|x| (x, x)).collect()
        } else {
            (0..divisors.len())
                .flat_map(|x| (0..divisors.len()).map(move |y| (x, y)))
                .collect()
        };
        for (x, y) in choices {
            let mut grid = vec![vec![one.clone(); l]; k];
            grid[ca.0][ca.1] = divisors[x].clone();
            grid[pa.0][pa.1] = divisors[y].clone();
            let spec = respec(&base, grid);
            let deg = if a == b {
                spec.degree(ca.0, ca.1)
            } else {
                spec.degree(ca.0, ca.1) + spec.degree(pa.0, pa.1)
            };
            let o = gram_zero(&rows[a][x], &rows[b][y]);
            let c = cell_relation(&spec, beta, gamma, ca.0, ca.1).holds()
                && cell_relation(&spec, beta, gamma, pa.0, pa.1).holds();
            local[0][deg] += 1;
            local[1][deg] += u128::from(o);
            local[2][deg] += u128::from(c);
            local[3][deg] += u128::from(o && c);
        }
        all = convolve(&all, &local[0]);
        orth = convolve(&orth, &local[1]);
        crit = convolve(&crit, &local[2]);
        both = convolve(&both, &local[3]);
    }
    let n = ring.len();
    // grids with total degree n/2, the only ones that can be self-dual
    let at_half = |v: &DegreeCounts| {
        if n.is_multiple_of(2) {
            v.get(n / 2).copied().unwrap_or(0)
        } else {
            0
        }
    };
    let self_dual = at_half(&orth);
    let criterion_true = at_half(&crit);
    let agree_true = at_half(&both);
    let crit_total: u128 = crit.iter().sum();
    Ok(FactorizedReport {
        ring: *ring,
        grids: all.iter().sum(),
        block_structure,
        components_span,
        cell_ranks,
        self_dual,
        criterion_true,
        disagreements: self_dual + criterion_true - 2 * agree_true,
        divisibility_without_dimension: crit_total - criterion_true,
    })
}
