//! List-decoders for affine homomorphism codes.
//!
//! Two decoding routes are provided. The sampling route draws random
//! tuples and keeps their restrictions as certificates
//! ([`srg_cert_decode`]); pruning ([`prune_certs`]) and a subword extender
//! then turn surviving certificates into codewords ([`decode_pipeline`]).
//! The local route self-corrects a received word over an abelian domain
//! one generator at a time ([`abelian_local_decode`]). Reduction wrappers
//! transfer decoders across code shapes: [`mean_list_decode`] covers
//! mean-lists of word families by sampled per-word decodes,
//! [`hom_to_ahom_decode`] lifts homomorphism decoders to affine lists by
//! anchoring, and [`relax_domain_decode`] decodes through a quotient of
//! the domain when the collapsed subgroup is invisible to every codeword.
//!
//! Every sample count follows a closed formula exposed alongside the
//! decoders, every random choice is driven by one seed, and decoders
//! account for their work: oracle queries through the word's counter,
//! codomain arithmetic through a counting wrapper where the contract
//! prices it.

pub mod abelian;
pub mod params;
pub mod pipeline;
pub mod srg;
pub mod wrappers;


pub use abelian::{abelian_local_decode, AbelianOutcome};
pub use params::{
    agreement_sample_count, anchor_sample_count, mean_sample_count, srg_tuple_count,
    srg_tuple_count_raw, CertificateList, DecodeParams, SAMPLE_PLAN_MAX,
};
pub use pipeline::{decode_pipeline, estimate_agreement, FinalPrune, PipelineOutcome};
pub use srg::{prune_certs, srg_cert_decode};
pub use wrappers::{hom_to_ahom_decode, mean_list_decode, relax_domain_decode, WrapperRun};
