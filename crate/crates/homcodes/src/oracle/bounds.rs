//! Checkers for the combinatorial bounds behind list-size control: strong
//! negative correlation, the large-ε list cap, and the sub-bucket cap for
//! low-depth label subgroups.

use std::collections::BTreeSet;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::groups::{lattice::depth_of_subgroup, Element};
use crate::homcore::{agreement_tables, lambda_exact, AffineHom, ReceivedWord};
use crate::oracle::truelist::{true_list, CodeKind, Threshold, ThresholdKind};
use crate::rat::{rat, rat_counts, rat_int, Rat};

/// Outcome of a verified strong-negative-correlation instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SncCheck {
    /// Number of sets in the family.
    pub r: usize,
    /// The cap 1/(4τ) + 1.
    pub bound: Rat,
    /// bound − r, never negative.
    pub slack: Rat,
}

/// Verifies that the given family is (ρ, τ)-strongly negatively correlated
/// over a ground set of size `x_size` — every set has density ≥ ρ and every
/// pairwise intersection has density ≤ ρ² − τ — then confirms the family
/// size obeys r ≤ 1/(4τ) + 1 and reports the slack. Families that fail the
/// premises are rejected, not measured.
pub fn snc_bound_check(x_size: u64, sets: &[Vec<u64>], rho: &Rat, tau: &Rat) -> Result<SncCheck> {
    if x_size == 0 {
        return Err(Error::invalid("ground set must be nonempty"));
    }
    if rho <= &Rat::zero() || rho > &rat_int(1) {
        return Err(Error::invalid("rho must lie in (0, 1]"));
    }
    if tau <= &Rat::zero() {
        return Err(Error::invalid("tau must be positive"));
    }

    let mut cleaned: Vec<BTreeSet<u64>> = Vec::with_capacity(sets.len());
    for (i, s) in sets.iter().enumerate() {
        let set: BTreeSet<u64> = s.iter().copied().collect();
        if set.iter().any(|&x| x >= x_size) {
            return Err(Error::invalid(format!(
                "set {i} has a member outside the ground set"
            )));
        }
        if rat_counts(set.len() as u64, x_size) < *rho {
            return Err(Error::invalid(format!(
                "set {i} has density below rho; the family is not strongly negatively correlated"
            )));
        }
        cleaned.push(set);
    }
    let cap = rho * rho - tau;
    for i in 0..cleaned.len() {
        for j in (i + 1)..cleaned.len() {
            let common = cleaned[i].intersection(&cleaned[j]).count() as u64;
            if rat_counts(common, x_size) > cap {
                return Err(Error::invalid(format!(
                    "sets {i} and {j} intersect too much; the family is not strongly negatively correlated"
                )));
            }
        }
    }

    let bound = rat(1, 4) / tau + rat_int(1);
    let r = cleaned.len();
    assert!(
        rat_int(r as i64) <= bound,
        "a strongly negatively correlated family exceeded the 1/(4tau)+1 cap"
    );
    let slack = bound.clone() - rat_int(r as i64);
    Ok(SncCheck { r, bound, slack })
}

/// When the maximum agreement is small against ε — specifically λ ≤ ε²/2 —
/// the whole list at threshold λ+ε has at most 1/(2ε²) + 1 members, with no
/// structure theory needed. Returns that cap, or `None` when the premise
/// fails (including ε ≤ 0).
pub fn large_eps_shortcut(lambda: &Rat, eps: &Rat) -> Option<Rat> {
    if eps <= &Rat::zero() {
        return None;
    }
    let half_eps_sq = rat(1, 2) * eps * eps;
    if *lambda <= half_eps_sq {
        Some(rat(1, 2) / (eps * eps) + rat_int(1))
    } else {
        None
    }
}

/// Outcome of a verified sub-bucket instance.
#[derive(Debug, Clone)]
pub struct SubbucketCheck {
    /// The sub-bucket members: list entries that agree with ψ everywhere on
    /// the label subgroup.
    pub members: Vec<AffineHom>,
    /// Depth of the label subgroup in the domain.
    pub depth: u32,
    /// The cap 1/ε^depth.
    pub bound: Rat,
    /// Exact maximum agreement of the pair (G, H), computed here.
    pub lambda: Rat,
}

/// Computes the sub-bucket of the list at threshold λ+ε labeled by the
/// subgroup K — the codewords that agree with ψ on all of K — and confirms
/// its size obeys 1/ε^depth(K). The comparison kind for list membership is
/// the caller's choice; the cap holds for the inclusive list and therefore
/// for the strict one too.
pub fn subbucket_bound_check(
    f: &ReceivedWord,
    psi: &AffineHom,
    label: &[Element],
    eps: &Rat,
    kind: ThresholdKind,
) -> Result<SubbucketCheck> {
    let g = f.domain();
    let h = f.codomain();
    if psi.domain().spec() != g.spec() || psi.codomain().spec() != h.spec() {
        return Err(Error::invalid(
            "the bucket representative must live on the word's groups",
        ));
    }
    if eps <= &Rat::zero() {
        return Err(Error::invalid("eps must be positive"));
    }
    if !g.is_subgroup(label)? {
        return Err(Error::invalid("the label set is not a subgroup"));
    }

    let lambda = lambda_exact(g, h)?;
    let threshold = Threshold {
        kind,
        value: lambda.clone() + eps,
    };
    let list = true_list(CodeKind::AHom, f, threshold)?;

    let psi_table = psi.value_table()?;
    let mut members = Vec::new();
    'entry: for (phi, _) in list.entries() {
        let phi_table = phi.value_table()?;
        for k in label {
            let i = g.index_of(k)? as usize;
            if !h.eq_elems(&phi_table[i], &psi_table[i]) {
                continue 'entry;
            }
        }
        members.push(phi.clone());
    }

    let depth = depth_of_subgroup(g, label)?;
    let bound = (rat_int(1) / eps).pow(depth as i32);
    assert!(
        rat_int(members.len() as i64) <= bound,
        "a sub-bucket exceeded the 1/eps^depth cap"
    );
    Ok(SubbucketCheck {
        members,
        depth,
        bound,
        lambda,
    })
}

/// Exact agreement of a word snapshot with a codeword, used by premise
/// checks in this module's sibling (`cover`).
pub(crate) fn snapshot_agreement(table: &[Element], psi: &AffineHom) -> Result<Rat> {
    agreement_tables(table, psi.value_table()?)
}
