//! Splitting a list into buckets around pairwise-far representatives.
//!
//! Given the list of codewords at agreement threshold λ+ε and the maximum
//! agreement λ, a maximal subset with pairwise agreement ≤ λ² serves as
//! bucket representatives: every list member agrees with some
//! representative strictly above λ², and the representatives' equalizers
//! with the word are strongly negatively correlated, which caps how many
//! representatives there can be.

use crate::error::{Error, Result};
use crate::homcore::agreement_affine;
use crate::oracle::truelist::TrueList;
use crate::rat::{rat, rat_int, Rat};
use num_traits::Zero;

/// Result of a greedy bucket split.
#[derive(Debug, Clone)]
pub struct BucketSplit {
    /// Indices into the list, in list order: a maximal subset with pairwise
    /// agreement ≤ λ².
    pub reps: Vec<usize>,
    /// For each representative, the indices of all list members agreeing
    /// with it strictly above λ². Buckets may overlap; their union is the
    /// whole list.
    pub buckets: Vec<Vec<usize>>,
    /// Cap 1/(4(λ+ε)ε) + 1 on the number of representatives, present when
    /// the list threshold exceeds λ.
    pub bound: Option<Rat>,
}

/// Greedily selects bucket representatives in canonical list order: an
/// entry becomes a representative when it agrees with every earlier
/// representative at most λ². Greedy selection is maximal, so the cover
/// property holds; the sphere-packing cap holds for *every* maximal
/// selection and is asserted here when the threshold leaves slack over λ.
pub fn greedy_bucket_split(list: &TrueList, lambda: &Rat) -> Result<BucketSplit> {
    if lambda < &Rat::zero() || lambda >= &rat_int(1) {
        return Err(Error::invalid("maximum agreement must lie in [0, 1)"));
    }
    let lambda_sq = lambda * lambda;
    let entries = list.entries();

    let mut reps: Vec<usize> = Vec::new();
    for i in 0..entries.len() {
        let mut far = true;
        for &r in &reps {
            if agreement_affine(&entries[i].0, &entries[r].0)? > lambda_sq {
                far = false;
                break;
            }
        }
        if far {
            reps.push(i);
        }
    }

    let mut buckets: Vec<Vec<usize>> = vec![Vec::new(); reps.len()];
    let mut covered = vec![false; entries.len()];
    for (b, &r) in reps.iter().enumerate() {
        for i in 0..entries.len() {
            if agreement_affine(&entries[i].0, &entries[r].0)? > lambda_sq {
                buckets[b].push(i);
                covered[i] = true;
            }
        }
    }
    // Maximality forces the cover: an uncovered entry would itself have
    // been selected.
    assert!(
        covered.iter().all(|&c| c),
        "greedy bucket split failed to cover its list"
    );

    let eps = list.threshold().value.clone() - lambda;
    let bound = if eps > Rat::zero() {
        let b = rat(1, 4) / (list.threshold().value.clone() * eps) + rat_int(1);
        assert!(
            rat_int(reps.len() as i64) <= b,
            "bucket representative count exceeded the sphere-packing cap"
        );
        Some(b)
    } else {
        None
    };

    Ok(BucketSplit {
        reps,
        buckets,
        bound,
    })
}
