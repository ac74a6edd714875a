//! Named pass/fail checks and the invariant suite run by `ccode verify`.

use std::fmt;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::{Deserialize, Serialize};

use crate::codes::{
    build_code, build_dual, quasi_twisted_closure, self_dual_decide, BuiltCode, CodeSpec,
};
use crate::idempotents::identity_suite;
use crate::ring3d::{annihilator_orthogonality_equiv, RingElement3D, RingParams};

/// Seed used for randomized checks when `CCODE_SEED` is unset.
pub const DEFAULT_SEED: u64 = 0x3d_c0de;

/// Reads `CCODE_SEED` (decimal), falling back to [`DEFAULT_SEED`].
pub fn seed_from_env() -> u64 {
    std::env::var("CCODE_SEED")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_SEED)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: String, passed: bool, detail: String) -> Self {
        Check {
            name,
            passed,
            detail,
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        if self.detail.is_empty() {
            write!(f, "{tag} {}", self.name)
        } else {
            write!(f, "{tag} {} ({})", self.name, self.detail)
        }
    }
}

pub fn all_passed(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.passed)
}

fn random_element(ring: RingParams, rng: &mut StdRng) -> RingElement3D {
    let p = ring.field.modulus();
    let v = (0..ring.len()).map(|_| rng.gen_range(0..p)).collect();
    RingElement3D::from_flat(ring, v).expect("length n")
}

/// Compares `f g = 0` with the shift-orbit orthogonality test on `pairs`
/// random pairs plus every generator against every cofactor element.
/// Returns `(pairs tested, disagreements)`.
pub fn annihilator_spot_check(spec: &CodeSpec, pairs: usize, seed: u64) -> (usize, usize) {
    let ring = *spec.ring();
    let mut rng = StdRng::seed_from_u64(seed);
    let mut tested = 0;
    let mut bad = 0;
    let mut run = |f: &RingElement3D, g: &RingElement3D| {
        let (a, b) = annihilator_orthogonality_equiv(f, g).expect("same ring");
        tested += 1;
        if a != b {
            bad += 1;
        }
    };
    for _ in 0..pairs {
        let f = random_element(ring, &mut rng);
        let g = random_element(ring, &mut rng);
        run(&f, &g);
    }
    let code = build_code(spec);
    for gen in &code.generators {
        for (t, j) in cells(&ring) {
            run(&gen.element, &cofactor_element(spec, t, j));
        }
    }
    (tested, bad)
}

fn cells(ring: &RingParams) -> impl Iterator<Item = (usize, usize)> {
    let (k, l) = (ring.k, ring.l);
    (0..k).flat_map(move |t| (0..l).map(move |j| (t, j)))
}

/// `zeta_t(z) eta_j(y) q_j^(t)(x)`.
fn cofactor_element(spec: &CodeSpec, t: usize, j: usize) -> RingElement3D {
    spec.component_element(t, j, &spec.cofactor(t, j))
}

fn rank_checks(code: &BuiltCode, checks: &mut Vec<Check>) {
    let spec = &code.spec;
    let rank = code.g.rank();
    checks.push(Check::new(
        "rank(G) = row count = n - sum deg p".into(),
        rank == code.g.rows() && rank == spec.expected_dimension(),
        format!(
            "rank {rank}, rows {}, formula {}",
            code.g.rows(),
            spec.expected_dimension()
        ),
    ));
}

fn dual_checks(code: &BuiltCode, checks: &mut Vec<Check>) {
    let spec = &code.spec;
    let n = spec.length();
    let dual = match build_dual(spec) {
        Ok(d) => d,
        Err(e) => {
            let null = code.g.null_space();
            checks.push(Check::new(
                "null space of G has dimension n - dim".into(),
                null.rows() + code.dimension == n && code.g.gram(&null).expect("n cols").is_zero(),
                format!("dual skipped: {e}"),
            ));
            return;
        }
    };
    let h = &dual.h;
    let orth = h.rows() == 0 || code.g.gram(h).expect("n cols").is_zero();
    checks.push(Check::new("G H^T = 0".into(), orth, String::new()));
    let (rg, rh) = (code.g.rank(), h.rank());
    checks.push(Check::new(
        "rank(G) + rank(H) = n".into(),
        rg + rh == n,
        format!("{rg} + {rh} vs {n}"),
    ));
    checks.push(Check::new(
        "row space of H = null space of G".into(),
        h.same_row_space(&code.g.null_space()),
        String::new(),
    ));
    let mut bad = Vec::new();
    for gen in &code.generators {
        for (u, v) in cells(spec.ring()) {
            let prod = gen
                .element
                .mul(&cofactor_element(spec, u, v))
                .expect("same ring");
            if !prod.is_zero() {
                bad.push(((gen.t, gen.j), (u, v)));
            }
        }
    }
    checks.push(Check::new(
        "zeta_t eta_j p_j^(t) annihilates zeta_u eta_v q_v^(u)".into(),
        bad.is_empty(),
        if bad.is_empty() {
            String::new()
        } else {
            format!("nonzero products at {bad:?}")
        },
    ));
}

/// Every invariant that can be checked for a single spec.
pub fn verify_spec(spec: &CodeSpec, seed: u64) -> Vec<Check> {
    let ring = *spec.ring();
    let mut checks = Vec::new();
    for (axis, len, c) in [("z", ring.k, ring.gamma), ("y", ring.l, ring.beta)] {
        match identity_suite(ring.field, len, c) {
            Ok(suite) => checks.extend(suite.into_iter().map(|mut ch| {
                ch.name = format!("{axis} idempotents {}", ch.name);
                ch
            })),
            Err(e) => checks.push(Check::new(
                format!("{axis} idempotents"),
                false,
                e.to_string(),
            )),
        }
    }
    let code = build_code(spec);
    rank_checks(&code, &mut checks);
    dual_checks(&code, &mut checks);
    let qt = quasi_twisted_closure(&code);
    checks.push(Check::new(
        "quasi-twisted closure on x, y, z".into(),
        qt.all(),
        format!("x {}, y {}, z {}", qt.x, qt.y, qt.z),
    ));
    if let Ok(decision) = self_dual_decide(spec) {
        checks.push(Check::new(
            "self-duality criterion agrees with G G^T = 0 and 2 dim = n".into(),
            decision.agrees(),
            format!(
                "criterion {}, direct {}",
                decision.verdict, decision.direct_verdict
            ),
        ));
    }
    let (tested, bad) = annihilator_spot_check(spec, 64, seed);
    checks.push(Check::new(
        "f g = 0 iff f is orthogonal to the shift orbit of g*".into(),
        bad == 0,
        format!("{tested} pairs, {bad} disagreements, seed {seed}"),
    ));
    checks
}
