//! Exact arithmetic for the abundancy index `I(n) = sigma(n)/n`, where
//! `sigma` is the sum-of-divisors function.
//!
//! Two numbers are *friends* when they share an abundancy index, and a
//! number with no friend at all is *solitary*. Everything here works with
//! exact reduced fractions over arbitrary-precision integers; floating
//! point appears only in display code.
//!
//! The crate provides four layers:
//!
//! - [`arith`]: deterministic primality testing, integer factorization,
//!   `sigma`, and the reduced-[`Ratio`](arith::Ratio) type everything else
//!   is built on.
//! - [`abundancy`]: the index itself, perfect/abundant/deficient
//!   classification, the `gcd(n, sigma(n)) = 1` solitary certificate, and
//!   the strict upper bound `prod p/(p-1)` over a prime support.
//! - [`constraints`]: fourteen machine-checkable necessary conditions a
//!   hypothetical friend of 14 must satisfy, with human-readable failure
//!   witnesses.
//! - [`search`]: a segmented sigma sieve, a parallel checkpointable
//!   range search for any target index, friend enumeration, and
//!   brute-force re-verification of the structural facts the screening
//!   pipeline relies on.
//!
//! ```
//! use abundancy::arith::{factorize, Ratio};
//! use abundancy::abundancy::abundancy;
//! use num_bigint::BigUint;
//!
//! // 14 = 2 * 7 has sigma(14) = 24, so I(14) = 24/14 = 12/7.
//! let fourteen = BigUint::from(14u32);
//! assert_eq!(abundancy(&fourteen).unwrap(), Ratio::from_u64(12, 7));
//!
//! // Any friend of 14 must share that exact index.
//! let f = factorize(&BigUint::from(3006003u32)).unwrap();
//! assert_eq!(f.to_string(), "3*7^2*11^2*13^2");
//! ```

pub mod abundancy;
pub mod arith;
pub mod cli;
pub mod constraints;
pub mod error;
pub mod search;

pub use error::{Error, Result};
