//! Exact verification of the isogeny decomposition of the Jacobian of the
//! Fermat curve `x^p + y^p + z^p = 0` into Jacobians of the cyclic p-gonal
//! curves `C_a: y^p = x^a (x-1)`.
//!
//! Everything is integer or rational arithmetic: orbit censuses on residues,
//! explicit finite groups, Riemann–Hurwitz and orbifold genus counts,
//! permutation characters and monomial rewriting on the curves.
//!
//! ```
//! use fermat_jacobian::{decompose_fine, PrimeContext};
//!
//! let ctx = PrimeContext::new(7).unwrap();
//! assert_eq!(decompose_fine(&ctx).unwrap().render(), "JF(7) ~ JC(1)^3 x JE(2)^6");
//! ```

pub mod arith;
pub mod audit;
pub mod certificates;
pub mod curves;
pub mod decompose;
pub mod error;
pub mod genus;
pub mod groups;
pub mod monomial;
pub mod orbits;
pub mod report;
pub mod verify;

pub use arith::{is_prime, primes_between, PrimeContext, MAX_PRIME};
pub use audit::{AuditLine, Verdict};
pub use curves::{CurveFamily, CurveSpec, MoebiusLabel};
pub use decompose::{
    decompose, decompose_coarse, decompose_fine, dimension_audit, match_group_algebra_shape,
    IsogenyDecomposition, IsogenyFactor, KaniRosenAudit, KaniRosenPath, Level,
};
pub use error::{Error, Result};
pub use groups::{FermatGroup, FiniteGroup, PGonalGroup, Subgroup};
pub use orbits::{orbit_partition, OrbitClass, OrbitKind, OrbitPartition};
pub use report::{Report, SCHEMA_VERSION};
pub use verify::{verify, CheckGroup, Depth, FULL_DEPTH_MAX_P};
