//! List-decoding of affine homomorphism codes over finite groups.
//!
//! The code aHom(G,H) consists of all maps g ↦ h·φ(g) with φ: G → H a
//! homomorphism and h ∈ H a translation. This crate provides:
//!
//! - finite group backends with canonical enumeration ([`groups`]),
//! - homomorphisms, affine codewords, received words and exact agreement
//!   computation ([`homcore`]),
//! - a brute-force oracle suite that enumerates codes, computes true lists
//!   and verifies combinatorial bounds ([`oracle`]),
//! - local, certificate and reduction-based list-decoders ([`decoders`]),
//! - a homomorphism extension engine for partial maps ([`homext`]),
//! - report-producing experiment runners behind the `homcode` CLI ([`cli`]).

pub mod cli;
pub mod decoders;
pub mod error;
pub mod groups;
pub mod homcore;
pub mod homext;
pub mod oracle;
pub mod rat;

pub use error::{Error, Result};
pub use groups::{Element, Group, GroupSpec};
pub use rat::Rat;
