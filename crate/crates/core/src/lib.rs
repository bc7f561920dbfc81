//! Exact finite-level Iwasawa theory over `Z/p^N`.
//!
//! The crate models the group algebras `Z_p[G_n] = Z_p[[T]]/(omega_n)` of an
//! anticyclotomic `Z_p`-tower at a fixed absolute precision and provides
//!
//! * `mu`/`lambda` invariants of finite-level and truncated elements,
//! * the structural maps: projection, norm `xi`, involution `iota`,
//! * the logarithm matrices `H_n = C_n ... C_1` of the sharp/flat theory,
//! * synthetic theta families obeying the three-term relation, their
//!   unit-root stabilizations and p-adic L-functions,
//! * executable checks of the invariant formulas and a seeded experiment
//!   runner that produces JSON/CSV reports.
//!
//! All arithmetic is exact; no floating point is involved anywhere.

pub mod encoding;
pub mod error;
pub mod experiment;
pub mod invariants;
pub mod lambda;
pub mod lemmas;
pub mod padic;
pub mod sprung;
pub mod theta;

pub use error::{Error, Result};
pub use invariants::{invariants, invariants_series, q, InvariantResult, Invariants};
pub use lambda::{FiniteLevelElt, SeriesElt, Sign};
pub use padic::{unit_root, PAdicRing, PAdicScalar};
pub use sprung::LambdaMatrix2x2;
pub use theta::{StabilizedFamily, ThetaFamily};
