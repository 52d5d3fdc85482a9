//! Homomorphism extension: completing partial maps G ⇀ H to full
//! homomorphisms or affine homomorphisms.
//!
//! Besides the plain search, [`homext012`] classifies the number of
//! extensions as none / unique / multiple. A `multiple` verdict is more
//! than a failure report: two distinct homomorphisms agreeing on
//! M = ⟨dom γ⟩ certify that the maximum pairwise agreement Λ of the code
//! is at least μ(M), and the verdict carries that bound.

pub mod extend;

#[cfg(test)]
mod tests;

pub use extend::{
    affine_subword_extend, affine_subword_extend_budgeted, homext012, homext012_budgeted,
    homext_search, homext_search_budgeted, ExtensionVerdict, HOMEXT_NODE_BUDGET,
    MAX_COMPLETION_GENERATORS,
};
