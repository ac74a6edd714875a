//! Three-dimensional `(alpha, beta, gamma)`-constacyclic codes over prime fields.
//!
//! A code is an ideal of `F_p[x, y, z]/<x^s - alpha, y^l - beta, z^k - gamma>`,
//! described by a `k x l` grid of divisors of `x^s - alpha`. The crate builds
//! generator and parity-check matrices, decides self-duality from the grid,
//! checks quasi-twisted closure and computes exact minimum distances.
//!
//! ```
//! use constacyclic3d::{build_code, validate_spec, Poly, PrimeField, RingParams};
//!
//! let f = PrimeField::new(5).unwrap();
//! let ring = RingParams::new(f, (2, 2, 2), (1, 4, 4)).unwrap();
//! let row = vec![Poly::from_signed(f, &[-1, 1]), Poly::from_signed(f, &[1, 1])];
//! let spec = validate_spec(ring, vec![row.clone(), row]).unwrap();
//! assert_eq!(build_code(&spec).dimension, 4);
//! ```

pub mod codes;
pub mod distance;
pub mod error;
pub mod format;
pub mod gf;
pub mod idempotents;
pub mod linalg;
pub mod poly;
pub mod ring3d;
pub mod sweep;
pub mod verify;

pub use codes::{
    build_code, build_dual, is_self_dual_direct, parity_check_matrix, quasi_twisted_closure,
    self_dual_decide, self_dual_feasible, validate_spec, BuiltCode, CodeSpec, DualCode,
};
pub use distance::{min_distance, min_distance_bruteforce, DistanceResult, SearchLimits};
pub use error::{Error, Result};
pub use gf::{FieldElement, PrimeField};
pub use linalg::Matrix;
pub use poly::Poly;
pub use ring3d::{Axis, RingElement3D, RingParams};
