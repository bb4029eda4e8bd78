//! Normal-approximation bounds for traces of random matrices from compact
//! classical groups, the sphere and Dyson's circular ensembles, obtained from
//! Stein's method of exchangeable pairs, together with the samplers and
//! brute-force oracles used to check them.
//!
//! The crate is organised bottom-up:
//!
//! * [`partitions`]: signatures, partitions and Young-diagram box statistics.
//! * [`characters`]: decomposition tables of the tensor square of the defining
//!   representation for `USp(2n)`, `SO(2n+1)`, `O(2n)` and `U(n)`, plus Schur
//!   function evaluation.
//! * [`spherical`]: Gegenbauer polynomials, Jack principal specialisations and
//!   dimensions, and the sphere / COE / CSE tables.
//! * [`stein`]: the generic bound evaluators and increment-moment formulas.
//! * [`sampling`]: Haar samplers, circular ensembles, Weyl-density MCMC and the
//!   exchangeable-pair simulator.
//! * [`stats`]: normal CDF, Kolmogorov distance, DKW bands, slope estimation.
//! * [`oracle`]: independent checks of the hard-coded coefficients.

pub mod characters;
pub mod error;
pub mod family;
pub mod oracle;
pub mod partitions;
pub mod sampling;
pub mod spherical;
pub mod stats;
pub mod stein;

pub use characters::{CaseKind, DecompositionTable, IrrepComponent, PowerSums, SpaceKind};
pub use error::{Error, Result};
pub use family::{ClassParameter, Family};
pub use partitions::{Partition, Signature};
pub use stein::{BoundReport, LimitReport, MomentReport};
pub use characters::table;
pub use sampling::{sample_pairs, sample_w, PairBatch, SampleBatch};
pub use stats::{kolmogorov_distance, pair_identity_check, KolmogorovReport, PairIdentityReport, DEFAULT_DELTA};
pub use stein::bound;
