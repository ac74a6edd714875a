//! Generator and parity-check matrices of 3-D constacyclic codes.
//!
//! A code is described by a `k x l` grid of monic divisors `p_j^(t)(x)` of
//! `x^s - alpha`. Its generators are `zeta_t(z) eta_j(y) p_j^(t)(x)`, where
//! `zeta_t` and `eta_j` are the constacyclic idempotents for `(k, gamma)` and
//! `(l, beta)`. Generator row `(t, j, i)` is `x^i` times generator `(t, j)` for
//! `i < s - deg p_j^(t)`, so the dimension is `s l k - sum deg p_j^(t)`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::PrimeField;
use crate::idempotents::{
    build_constacyclic_idempotents, reciprocal_index, IdempotentFamily, Sign,
};
use crate::linalg::Matrix;
use crate::poly::Poly;
use crate::ring3d::{Axis, RingElement3D, RingParams};

/// A validated code description. Construct with [`validate_spec`].
#[derive(Clone, Debug)]
pub struct CodeSpec {
    ring: RingParams,
    grid: Vec<Vec<Poly>>,
    zeta: IdempotentFamily,
    eta: IdempotentFamily,
}

impl PartialEq for CodeSpec {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.grid == other.grid
    }
}

impl Eq for CodeSpec {}

/// Checks every hypothesis of the construction and normalizes the grid: each
/// entry is made monic, and any nonzero constant becomes 1.
///
/// `grid[t][j]` is `p_j^(t)(x)`.
pub fn validate_spec(ring: RingParams, grid: Vec<Vec<Poly>>) -> Result<CodeSpec> {
    let RingParams {
        field,
        s,
        l,
        k,
        alpha,
        beta,
        gamma,
    } = ring;
    let zeta = build_constacyclic_idempotents(field, k, gamma)?;
    let eta = build_constacyclic_idempotents(field, l, beta)?;
    if grid.len() != k || grid.iter().any(|row| row.len() != l) {
        let found = format!(
            "{} x {:?}",
            grid.len(),
            grid.iter().map(Vec::len).collect::<Vec<_>>()
        );
        return Err(Error::GridShape { k, l, found });
    }
    let binomial = Poly::binomial(field, s, alpha);
    let mut normalized = Vec::with_capacity(k);
    for (t, row) in grid.into_iter().enumerate() {
        let mut out = Vec::with_capacity(l);
        for (j, p) in row.into_iter().enumerate() {
            if p.field() != field {
                return Err(Error::FieldMismatch {
                    left: field.modulus(),
                    right: p.field().modulus(),
                });
            }
            if p.is_zero() || !p.divides(&binomial)? {
                return Err(Error::NotADivisor {
                    t,
                    j,
                    s,
                    poly: p.to_string(),
                });
            }
            out.push(p.monic());
        }
        normalized.push(out);
    }
    Ok(CodeSpec {
        ring,
        grid: normalized,
        zeta,
        eta,
    })
}

impl CodeSpec {
    pub fn ring(&self) -> &RingParams {
        &self.ring
    }

    pub fn field(&self) -> PrimeField {
        self.ring.field
    }

    /// `grid()[t][j]` is `p_j^(t)(x)`.
    pub fn grid(&self) -> &[Vec<Poly>] {
        &self.grid
    }

    pub fn divisor(&self, t: usize, j: usize) -> &Poly {
        &self.grid[t][j]
    }

    /// `q_j^(t) = (x^s - alpha) / p_j^(t)`.
    pub fn cofactor(&self, t: usize, j: usize) -> Poly {
        let f = self.field();
        Poly::binomial(f, self.ring.s, self.ring.alpha)
            .exact_div(&self.grid[t][j])
            .expect("validated divisor")
            .expect("validated divisor")
    }

    /// `a_{t,j} = deg p_j^(t)`.
    pub fn degree(&self, t: usize, j: usize) -> usize {
        self.grid[t][j].degree().expect("nonzero divisor")
    }

    pub fn degree_sum(&self) -> usize {
        (0..self.ring.k)
            .flat_map(|t| (0..self.ring.l).map(move |j| (t, j)))
            .map(|(t, j)| self.degree(t, j))
            .sum()
    }

    pub fn length(&self) -> usize {
        self.ring.len()
    }

    /// `s l k - sum a_{t,j}`.
    pub fn expected_dimension(&self) -> usize {
        self.length() - self.degree_sum()
    }

    /// `zeta_t(z)`, the idempotents of `F_p[z]/<z^k - gamma>`.
    pub fn zeta(&self) -> &IdempotentFamily {
        &self.zeta
    }

    /// `eta_j(y)`, the idempotents of `F_p[y]/<y^l - beta>`.
    pub fn eta(&self) -> &IdempotentFamily {
        &self.eta
    }

    /// Whether all three constants are `1` or `-1`.
    pub fn has_sign_constants(&self) -> bool {
        let f = self.field();
        [self.ring.alpha, self.ring.beta, self.ring.gamma]
            .iter()
            .all(|&c| f.is_unit_sign(c))
    }

    /// `zeta_t(z) eta_j(y) p(x)` for an arbitrary `p`.
    pub fn component_element(&self, t: usize, j: usize, p: &Poly) -> RingElement3D {
        RingElement3D::from_product(self.ring, p, &self.eta.members[j], &self.zeta.members[t])
            .expect("same field")
    }

    fn with_grid(&self, grid: Vec<Vec<Poly>>) -> CodeSpec {
        CodeSpec {
            grid,
            ..self.clone()
        }
    }
}

/// One generator `zeta_t(z) eta_j(y) p_j^(t)(x)` of the ideal.
#[derive(Clone, Debug)]
pub struct Generator {
    pub t: usize,
    pub j: usize,
    pub element: RingElement3D,
}

#[derive(Clone, Debug)]
pub struct BuiltCode {
    pub spec: CodeSpec,
    pub generators: Vec<Generator>,
    /// Generator matrix in generator-row order.
    pub g: Matrix,
    pub dimension: usize,
}

/// Rows `x^i * element` for `i < count`, flattened.
fn shifted_rows(element: &RingElement3D, count: usize, rows: &mut Vec<Vec<u32>>) {
    let mut cur = element.clone();
    for i in 0..count {
        if i > 0 {
            cur = cur.shift(Axis::X);
        }
        rows.push(cur.flatten());
    }
}

pub fn build_code(spec: &CodeSpec) -> BuiltCode {
    let RingParams { s, l, k, .. } = spec.ring;
    let mut generators = Vec::with_capacity(k * l);
    let mut rows = Vec::new();
    for t in 0..k {
        for j in 0..l {
            let element = spec.component_element(t, j, spec.divisor(t, j));
            shifted_rows(&element, s - spec.degree(t, j), &mut rows);
            generators.push(Generator { t, j, element });
        }
    }
    let g = Matrix::from_rows(spec.field(), spec.length(), &rows).expect("row length n");
    let dimension = g.rows();
    BuiltCode {
        spec: spec.clone(),
        generators,
        g,
        dimension,
    }
}

/// Generators `zeta_t*(z) eta_j*(y) q_j^(t)*(x)` of the dual and its matrix.
#[derive(Clone, Debug)]
pub struct DualCode {
    pub generators: Vec<Generator>,
    pub h: Matrix,
    pub dimension: usize,
}

/// The dual code's generator matrix; rows `x^i * zeta_t* eta_j* q_j^(t)*` for
/// `i < a_{t,j}`. Cells with `a_{t,j} = 0` contribute nothing.
pub fn build_dual(spec: &CodeSpec) -> Result<DualCode> {
    let RingParams {
        field,
        l,
        k,
        alpha,
        beta,
        gamma,
        ..
    } = spec.ring;
    if !spec.has_sign_constants() {
        return Err(Error::DualUnsupported { alpha, beta, gamma });
    }
    let mut generators = Vec::with_capacity(k * l);
    let mut rows = Vec::new();
    for t in 0..k {
        for j in 0..l {
            let a = spec.degree(t, j);
            if a == 0 {
                continue;
            }
            let element = RingElement3D::from_product(
                spec.ring,
                &spec.cofactor(t, j).reciprocal(),
                &spec.eta.members[j].reciprocal(),
                &spec.zeta.members[t].reciprocal(),
            )?;
            shifted_rows(&element, a, &mut rows);
            generators.push(Generator { t, j, element });
        }
    }
    let h = Matrix::from_rows(field, spec.length(), &rows)?;
    let dimension = h.rows();
    Ok(DualCode {
        generators,
        h,
        dimension,
    })
}

/// A parity-check matrix: the dual's generator matrix when the constants are
/// `1` or `-1`, otherwise the null space of `G`.
pub fn parity_check_matrix(code: &BuiltCode) -> Matrix {
    match build_dual(&code.spec) {
        Ok(d) => d.h,
        Err(_) => code.g.null_space(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuasiTwistedReport {
    pub x: bool,
    pub y: bool,
    pub z: bool,
}

impl QuasiTwistedReport {
    pub fn all(&self) -> bool {
        self.x && self.y && self.z
    }
}

/// For each axis, rewrites `G` into that axis' block layout and checks that
/// the quasi-twisted block rotation of every row stays in the row space.
pub fn quasi_twisted_closure(code: &BuiltCode) -> QuasiTwistedReport {
    let pr = code.spec.ring;
    let closed = |axis: Axis| {
        let rows: Vec<Vec<u32>> = code
            .g
            .row_vecs()
            .iter()
            .map(|r| pr.to_layout(axis, r))
            .collect();
        let m = Matrix::from_rows(pr.field, pr.len(), &rows).expect("row length n");
        rows.iter().all(|r| {
            m.row_space_contains(&pr.quasi_twisted_shift(axis, r))
                .expect("row length n")
        })
    };
    QuasiTwistedReport {
        x: closed(Axis::X),
        y: closed(Axis::Y),
        z: closed(Axis::Z),
    }
}

/// Whether `C` is self-dual, tested directly: `2 dim = n` and `G G^T = 0`.
pub fn is_self_dual_direct(code: &BuiltCode) -> bool {
    2 * code.dimension == code.spec.length() && code.g.gram(&code.g).expect("square gram").is_zero()
}

/// The two divisibility relations required of one grid cell.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellRelation {
    pub t: usize,
    pub j: usize,
    /// `(t', j')`: the cell whose idempotents are proportional to the
    /// reciprocals of `zeta_t` and `eta_j`.
    pub partner: (usize, usize),
    pub p: String,
    pub q_star: String,
    pub p_partner: String,
    pub q_partner_star: String,
    /// `p_{j'}^(t')` divides `q_j^(t)*`.
    pub partner_p_divides_q_star: bool,
    /// `q_{j'}^(t')*` divides `p_j^(t)`.
    pub partner_q_star_divides_p: bool,
    /// `m_{tj} = q_j^(t)* / p_{j'}^(t')` when exact.
    pub m: Option<String>,
    /// `m'_{tj} = p_j^(t) / q_{j'}^(t')*` when exact.
    pub m_prime: Option<String>,
}

impl CellRelation {
    pub fn holds(&self) -> bool {
        self.partner_p_divides_q_star && self.partner_q_star_divides_p
    }
}

impl fmt::Display for CellRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (tp, jp) = self.partner;
        write!(
            f,
            "(t,j)=({},{}) partner ({tp},{jp}): p_{j}^({t}) = {} vs q_{jp}^({tp})* = {} [{}]; \
             q_{j}^({t})* = {} vs p_{jp}^({tp}) = {} [{}]",
            self.t,
            self.j,
            self.p,
            self.q_partner_star,
            if self.partner_q_star_divides_p {
                "divides"
            } else {
                "does not divide"
            },
            self.q_star,
            self.p_partner,
            if self.partner_p_divides_q_star {
                "divides"
            } else {
                "does not divide"
            },
            j = self.j,
            t = self.t,
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelfDualDecision {
    /// Verdict from the dimension equation and the per-cell divisibilities.
    pub verdict: bool,
    /// `s l k = 2 sum a_{t,j}`.
    pub dimension_condition: bool,
    pub cells: Vec<CellRelation>,
    /// Index into `cells` of the first failing cell, in `(t, j)` order.
    pub first_failure: Option<usize>,
    /// `2 dim = n` and `G G^T = 0`, computed from the matrix.
    pub direct_verdict: bool,
}

impl SelfDualDecision {
    pub fn agrees(&self) -> bool {
        self.verdict == self.direct_verdict
    }

    pub fn failing_cell(&self) -> Option<&CellRelation> {
        self.first_failure.map(|i| &self.cells[i])
    }

    /// Whether every cell relation holds, ignoring the dimension equation.
    pub fn divisibility_condition(&self) -> bool {
        self.cells.iter().all(CellRelation::holds)
    }
}

pub(crate) fn signs(spec: &CodeSpec) -> Result<(Sign, Sign, Sign)> {
    let RingParams {
        field,
        alpha,
        beta,
        gamma,
        ..
    } = spec.ring;
    Ok((
        Sign::of(field, alpha, "alpha")?,
        Sign::of(field, beta, "beta")?,
        Sign::of(field, gamma, "gamma")?,
    ))
}

/// Per-cell relation of the self-duality criterion.
pub(crate) fn cell_relation(
    spec: &CodeSpec,
    beta: Sign,
    gamma: Sign,
    t: usize,
    j: usize,
) -> CellRelation {
    let RingParams { l, k, .. } = spec.ring;
    let tp = reciprocal_index(gamma, k, t).expect("t < k");
    let jp = reciprocal_index(beta, l, j).expect("j < l");
    let p = spec.divisor(t, j);
    let q_star = spec.cofactor(t, j).reciprocal();
    let p_partner = spec.divisor(tp, jp);
    let q_partner_star = spec.cofactor(tp, jp).reciprocal();
    let m = q_star.exact_div(p_partner).expect("nonzero divisor");
    let m_prime = p.exact_div(&q_partner_star).expect("nonzero divisor");
    CellRelation {
        t,
        j,
        partner: (tp, jp),
        p: p.render("x", true),
        q_star: q_star.render("x", true),
        p_partner: p_partner.render("x", true),
        q_partner_star: q_partner_star.render("x", true),
        partner_p_divides_q_star: m.is_some(),
        partner_q_star_divides_p: m_prime.is_some(),
        m: m.map(|m| m.render("x", true)),
        m_prime: m_prime.map(|m| m.render("x", true)),
    }
}

/// Decides self-duality from the divisor grid alone and cross-checks the
/// answer against the generator matrix. Needs all constants in `{1, -1}`.
pub fn self_dual_decide(spec: &CodeSpec) -> Result<SelfDualDecision> {
    let (_, beta, gamma) = signs(spec)?;
    let RingParams { l, k, .. } = spec.ring;
    let dimension_condition = spec.length() == 2 * spec.degree_sum();
    let cells: Vec<CellRelation> = (0..k)
        .flat_map(|t| (0..l).map(move |j| (t, j)))
        .map(|(t, j)| cell_relation(spec, beta, gamma, t, j))
        .collect();
    let first_failure = cells.iter().position(|c| !c.holds());
    let verdict = dimension_condition && first_failure.is_none();
    let direct_verdict = is_self_dual_direct(&build_code(spec));
    Ok(SelfDualDecision {
        verdict,
        dimension_condition,
        cells,
        first_failure,
        direct_verdict,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Feasibility {
    /// `false` when no code with these parameters can be self-dual.
    pub feasible: bool,
    pub reason: String,
}

/// Parameter-level exclusion: with `beta = gamma = 1`, `alpha = +-1` and
/// `gcd(s, p) = 1` (and `s` odd when `alpha = -1`), `x - alpha` divides exactly
/// one of `p` and `q` in the self-paired cell, so no such code is self-dual.
pub fn self_dual_feasible(ring: &RingParams) -> Feasibility {
    let f = ring.field;
    let covered = |why: &str| Feasibility {
        feasible: true,
        reason: why.to_string(),
    };
    if ring.beta != 1 || ring.gamma != 1 {
        return covered("not excluded: exclusion needs beta = gamma = 1");
    }
    let Ok(alpha) = Sign::of(f, ring.alpha, "alpha") else {
        return covered("not excluded: alpha is not 1 or -1");
    };
    if ring.s.is_multiple_of(f.modulus() as usize) {
        return covered("not excluded: p divides s");
    }
    if alpha == Sign::Minus && ring.s.is_multiple_of(2) {
        return covered("not excluded: alpha = -1 with s even");
    }
    Feasibility {
        feasible: false,
        reason: format!(
            "excluded: beta = gamma = 1, alpha = {}, gcd(s, q) = 1 with s = {}, q = {}",
            f.signed(ring.alpha),
            ring.s,
            f.modulus()
        ),
    }
}

/// Replaces the grid, keeping the ring and idempotents. The grid must already
/// be validated against the same ring.
pub(crate) fn respec(spec: &CodeSpec, grid: Vec<Vec<Poly>>) -> CodeSpec {
    spec.with_grid(grid)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(p: u64, dims: (usize, usize, usize), c: (i64, i64, i64)) -> RingParams {
        let f = PrimeField::new(p).unwrap();
        RingParams::new(f, dims, (f.reduce(c.0), f.reduce(c.1), f.reduce(c.2))).unwrap()
    }

    fn poly(r: &RingParams, c: &[i64]) -> Poly {
        Poly::from_signed(r.field, c)
    }

    fn example1() -> CodeSpec {
        let r = ring(5, (2, 2, 2), (1, -1, -1));
        let row = vec![poly(&r, &[-1, 1]), poly(&r, &[1, 1])];
        validate_spec(r, vec![row.clone(), row]).unwrap()
    }

    #[test]
    fn validation_errors() {
        let r = ring(5, (2, 2, 2), (1, -1, -1));
        let bad = vec![
            vec![poly(&r, &[-2, 1]), poly(&r, &[1, 1])],
            vec![poly(&r, &[-1, 1]), poly(&r, &[1, 1])],
        ];
        assert!(matches!(
            validate_spec(r, bad),
            Err(Error::NotADivisor { t: 0, j: 0, .. })
        ));
        let r3 = ring(5, (2, 2, 3), (1, -1, 1));
        let grid = vec![vec![poly(&r3, &[1]); 2]; 3];
        assert!(matches!(
            validate_spec(r3, grid),
            Err(Error::MissingRootOfUnity { .. })
        ));
        assert!(matches!(
            validate_spec(r, vec![]),
            Err(Error::GridShape { .. })
        ));
        let zero = vec![vec![Poly::zero(r.field); 2]; 2];
        assert!(matches!(
            validate_spec(r, zero),
            Err(Error::NotADivisor { .. })
        ));
    }

    #[test]
    fn normalization() {
        let r = ring(5, (2, 2, 2), (1, -1, -1));
        let grid = vec![
            vec![poly(&r, &[3]), poly(&r, &[2, 2])],
            vec![poly(&r, &[1]), poly(&r, &[-1, 1])],
        ];
        let spec = validate_spec(r, grid).unwrap();
        assert_eq!(spec.divisor(0, 0), &Poly::one(r.field));
        assert_eq!(spec.divisor(0, 1), &poly(&r, &[1, 1]));
    }

    #[test]
    fn example1_shapes() {
        let spec = example1();
        let code = build_code(&spec);
        assert_eq!(code.dimension, 4);
        assert_eq!(code.g.rank(), 4);
        let dual = build_dual(&spec).unwrap();
        assert_eq!(dual.h.rows(), 4);
        assert!(code.g.gram(&dual.h).unwrap().is_zero());
        assert!(quasi_twisted_closure(&code).all());
        let d = self_dual_decide(&spec).unwrap();
        assert!(d.verdict && d.direct_verdict);
    }

    #[test]
    fn zero_and_full_codes() {
        let r = ring(5, (2, 2, 2), (1, -1, -1));
        let full = vec![vec![poly(&r, &[-1, 0, 1]); 2]; 2];
        let spec = validate_spec(r, full).unwrap();
        let code = build_code(&spec);
        assert_eq!(code.dimension, 0);
        assert!(quasi_twisted_closure(&code).all());
        let dual = build_dual(&spec).unwrap();
        assert_eq!(dual.h.rank(), 8);

        let ones = vec![vec![poly(&r, &[1]); 2]; 2];
        let spec = validate_spec(r, ones).unwrap();
        let code = build_code(&spec);
        assert_eq!(code.g.rank(), 8);
        assert!(quasi_twisted_closure(&code).all());
        assert_eq!(build_dual(&spec).unwrap().h.rows(), 0);
    }

    #[test]
    fn dual_needs_sign_constants() {
        let r = ring(7, (3, 2, 3), (-1, 2, -1));
        let grid = vec![vec![poly(&r, &[1]); 2]; 3];
        let spec = validate_spec(r, grid).unwrap();
        assert!(matches!(
            build_dual(&spec),
            Err(Error::DualUnsupported { .. })
        ));
        assert!(self_dual_decide(&spec).is_err());
        let code = build_code(&spec);
        assert_eq!(parity_check_matrix(&code).rows(), 0);
    }

    #[test]
    fn odd_length_is_never_self_dual() {
        let r = ring(7, (3, 1, 1), (1, 1, 1));
        for p in crate::poly::monic_divisors(r.field, 3, 1).unwrap() {
            let spec = validate_spec(r, vec![vec![p]]).unwrap();
            let d = self_dual_decide(&spec).unwrap();
            assert!(!d.verdict && !d.dimension_condition && !d.direct_verdict);
        }
    }

    #[test]
    fn feasibility() {
        let f5 = ring(5, (2, 1, 1), (1, 1, 1));
        assert!(!self_dual_feasible(&f5).feasible);
        assert!(self_dual_feasible(&f5).reason.starts_with("excluded"));
        assert!(!self_dual_feasible(&ring(7, (3, 2, 2), (-1, 1, 1))).feasible);
        assert!(self_dual_feasible(&ring(5, (2, 2, 2), (1, -1, -1))).feasible);
        assert!(self_dual_feasible(&ring(5, (2, 2, 2), (-1, 1, 1))).feasible);
        assert!(self_dual_feasible(&ring(5, (5, 1, 1), (1, 1, 1))).feasible);
    }
}
