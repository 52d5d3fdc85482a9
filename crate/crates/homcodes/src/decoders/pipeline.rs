//! Certificate-to-list pipeline and sampled agreement estimation.

use std::collections::BTreeSet;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::decoders::params::{agreement_sample_count, CertificateList};
use crate::decoders::srg::prune_certs;
use crate::error::{Error, Result};
use crate::homcore::{AffineHom, PartialMap, ReceivedWord};
use crate::rat::{rat, rat_counts, Rat};

/// Result of a pipeline run. `kept` counts the certificates that survived
/// pruning; only those were handed to the extender.
#[derive(Debug, Clone)]
pub struct PipelineOutcome {
    pub output: Vec<AffineHom>,
    pub certificates: usize,
    pub kept: usize,
    pub extension_budget_failures: usize,
    pub queries: u64,
}

/// Switches on the optional final prune: candidates whose sampled agreement
/// estimate does not exceed λ+ε/2 are dropped. The estimate is taken at
/// accuracy ε/4 so that genuine list members (agreement ≥ λ+ε) clear the
/// strict comparison with probability ≥ 1−η′ each.
#[derive(Debug, Clone)]
pub struct FinalPrune {
    pub eta_prime: Rat,
    pub seed: u64,
}

/// Runs a certificate decoder, prunes its output at λ, extends each
/// surviving certificate, and collects the distinct extensions.
///
/// Certificates that fail the prune never reach the extender. An extender
/// running out of budget on one certificate is recorded and skipped; any
/// other extender error aborts the pipeline. Duplicates collapse through
/// the affine homomorphism order, which coincides with equality of full
/// value tables.
pub fn decode_pipeline<C, X>(
    mut cert_decoder: C,
    mut extender: X,
    f: &ReceivedWord,
    eps: &Rat,
    lambda: &Rat,
    final_prune: Option<FinalPrune>,
) -> Result<PipelineOutcome>
where
    C: FnMut(&ReceivedWord) -> Result<CertificateList>,
    X: FnMut(&PartialMap) -> Result<Option<AffineHom>>,
{
    let start = f.queries();
    let certs = cert_decoder(f)?;
    let survivors = prune_certs(f.domain(), &certs, lambda)?;

    let mut failures = 0usize;
    let mut found: BTreeSet<AffineHom> = BTreeSet::new();
    for (map, _) in survivors.entries() {
        match extender(map) {
            Ok(Some(psi)) => {
                found.insert(psi);
            }
            Ok(None) => {}
            Err(Error::BudgetExceeded(_)) => failures += 1,
            Err(e) => return Err(e),
        }
    }

    let mut output: Vec<AffineHom> = found.into_iter().collect();
    if let Some(fp) = final_prune {
        let cutoff = lambda.clone() + eps.clone() / rat(2, 1);
        let half = eps.clone() / rat(2, 1);
        let mut rng = ChaCha8Rng::seed_from_u64(fp.seed);
        let mut kept = Vec::with_capacity(output.len());
        for psi in output {
            if estimate_agreement_rng(f, &psi, &half, &fp.eta_prime, &mut rng)? > cutoff {
                kept.push(psi);
            }
        }
        output = kept;
    }

    Ok(PipelineOutcome {
        output,
        certificates: certs.len(),
        kept: survivors.len(),
        extension_budget_failures: failures,
        queries: f.queries() - start,
    })
}

/// Samples m = ⌈(2/ε²)·ln(2/η′)⌉ uniform points and returns the observed
/// agreement fraction between the word and the codeword; the estimate is
/// within ε/2 of the exact agreement with probability ≥ 1−η′.
pub fn estimate_agreement(
    f: &ReceivedWord,
    psi: &AffineHom,
    eps: &Rat,
    eta_prime: &Rat,
    seed: u64,
) -> Result<Rat> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    estimate_agreement_rng(f, psi, eps, eta_prime, &mut rng)
}

pub(crate) fn estimate_agreement_rng(
    f: &ReceivedWord,
    psi: &AffineHom,
    eps: &Rat,
    eta_prime: &Rat,
    rng: &mut ChaCha8Rng,
) -> Result<Rat> {
    if psi.domain().spec() != f.domain().spec() {
        return Err(Error::invalid("codeword and word must share a domain"));
    }
    let m = agreement_sample_count(eps, eta_prime)?;
    let g = f.domain();
    let mut hits = 0u64;
    for _ in 0..m {
        let x = g.random_element(rng)?;
        if f.query(&x)? == psi.eval(&x)? {
            hits += 1;
        }
    }
    Ok(rat_counts(hits, m))
}
