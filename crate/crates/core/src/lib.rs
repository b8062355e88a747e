//! AG codes and quantum code parameters from the generalized Suzuki curves
//! X^{q0}(X^q + X) = Y^q + Y over GF(2^s), with q = 2^s, q0 = 2^h, 2h < s.
//!
//! The crate is organized bottom-up:
//! - [`gf2m`]: GF(2^m) arithmetic, subfield embeddings, traces;
//! - [`semigroup`]: numerical semigroups, Apéry sets, Feng-Rao order bound;
//! - [`curve`]: curve parameters, point enumeration, automorphisms,
//!   Castle and weak-Castle verification;
//! - [`linalg`]: dense matrices over GF(2^m);
//! - [`agcode`]: one-point evaluation codes, duality, minimum distance;
//! - [`quantum`]: CSS and general t-point quantum parameter derivation;
//! - [`cli`]: the batch command-line front end.

pub mod agcode;
pub mod cli;
pub mod curve;
pub mod gf2m;
pub mod linalg;
pub mod quantum;
pub mod semigroup;
