//! Numerical evaluation of elliptic hypergeometric special functions and of
//! the determinantal (`t = q`) elliptic Selberg identities.
//!
//! The crate is organised bottom-up:
//!
//! - [`elliptic`]: theta functions, the elliptic gamma function, elliptic
//!   shifted factorials and the normalising constant `C`.
//! - [`detkit`]: complex determinants, the Andreief / Cauchy–Binet
//!   expansion, and Warnaar's determinant in elimination and closed form.
//! - [`discrete`]: both sides of the discrete elliptic Selberg
//!   transformation and summation, plus the `S_jk` moment-matrix replay.
//! - [`continuous`]: torus quadrature, the elliptic beta and Selberg
//!   integrals, Rains' transformation and the `I_jk` moment-matrix replay.
//! - [`xprec`]: double-double complex arithmetic for the cancelling
//!   discrete sums.
//! - [`verify`]: seeded identity suites and their text / JSON reports,
//!   driven by the `selberg-verify` binary.
//!
//! Runnable walkthroughs for each area live in the crate's `examples/`
//! directory (`cargo run --release --example <name>`).

pub mod continuous;
pub mod detkit;
pub mod discrete;
pub mod elliptic;
mod error;
mod nome;
pub mod reduce;
pub mod tuples;
pub mod verify;
pub mod xprec;

pub use error::{Error, Result};
pub use nome::{int_pow, Nome, DEFAULT_CUTOFF, DEFAULT_MAX_TERMS};

pub use num_complex::Complex64;
