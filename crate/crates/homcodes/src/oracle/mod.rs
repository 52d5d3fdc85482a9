//! Brute-force ground truth at desk scale: complete code enumeration,
//! exact true lists and mean-lists, irrelevant kernels, bucket splits, and
//! verified instances of every combinatorial cap the decoders rely on.
//! Everything here reads words through uncounted snapshots and compares
//! exact rationals; this module is the referee, never a contestant.

pub mod bounds;
pub mod buckets;
pub mod cover;
pub mod enumerate;
pub mod kernel;
pub mod truelist;

#[cfg(test)]
mod tests;

pub use bounds::{large_eps_shortcut, snc_bound_check, subbucket_bound_check, SncCheck, SubbucketCheck};
pub use buckets::{greedy_bucket_split, BucketSplit};
pub use cover::{abelian_image_cover, ImageCover};
pub use enumerate::{enumerate_ahoms, enumerate_homs, HOM_ENUM_MAX};
pub use kernel::irrelevant_kernel;
pub use truelist::{
    lift_list, true_list, true_mean_list, CodeKind, Threshold, ThresholdKind, TrueList,
};
