//! Exact point counts of classifying stacks of finite groups of Lie type.
//!
//! For a Chevalley group scheme `G` over `F_q` (split, twisted, or a split
//! torus) the crate computes
//!
//! - the order `#G(F_{q^i}) = q^{i dim} ∏ (1 - ε_j^i q^{-i d_j})` ([`counting::group_order`]),
//! - the groupoid cardinality `#BG(F_{q^i}) = 1 / #G(F_{q^i})` ([`counting::stacky_count`]),
//! - truncations of the multi-sum expansion of `#BG(F_q)` with exact tail bounds,
//! - Betti numbers of `H*(BG)`,
//! - zeta functions of `BG`, both from the defining exponential and from the
//!   Euler product over Frobenius eigenvalues ([`zeta`]),
//!
//! and cross-checks small cases against brute-force matrix enumeration over
//! finite fields ([`oracle`]). All arithmetic is exact.
//!
//! See `examples/` for one runnable program per capability.

pub mod catalog;
pub mod cli;
pub mod counting;
mod error;
pub mod exact;
pub mod oracle;
pub mod verify;
pub mod zeta;

pub use catalog::{lookup, parse_spec, validate_q, Family, GroupDatum, GroupSpec, PrimePowerQ, RootOfUnity, Twist};
pub use counting::{betti, group_order, stacky_count, stacky_partial_sum, PartialSum};
pub use error::{Error, Result};
pub use exact::{BigRational, Cyclotomic3};
pub use zeta::{euler_exp_discrepancy, gm_functional_equation_check, zeta_euler_truncated, zeta_exp, PowerSeries};
