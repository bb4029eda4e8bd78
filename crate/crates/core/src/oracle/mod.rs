//! Independent brute-force checks of the hard-coded tables: Gram-Schmidt
//! recovery of Jack coefficients, least-squares Pieri expansions,
//! Monte-Carlo multiplicity integrals and numerical `theta -> 0` limits.

pub mod limits;
pub mod multiplicity;
pub mod pieri;
pub mod quadrature;

pub use limits::{numeric_limit, LimitEstimate};
pub use multiplicity::{monte_carlo_multiplicity, MultiplicityEstimate};
pub use pieri::{pieri_least_squares, PieriReport};
pub use quadrature::{jack_gram_schmidt, GramSchmidtReport};
