//! Reduction wrappers: mean-lists from lists, affine lists from
//! homomorphism lists, and decoding through a quotient of the domain.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::decoders::params::{anchor_sample_count, mean_sample_count, DecodeParams};
use crate::error::{Error, Result};
use crate::groups::Element;
use crate::homcore::{quotient_family, translate_word, AffineHom, Homomorphism, ReceivedWord, WordFamily};
use crate::oracle::Threshold;
use crate::rat::{rat, Rat};

/// Output of a sampling wrapper: the union of the per-sample base decodes,
/// the number of samples the formula prescribed, and the agreement
/// threshold every base call received.
#[derive(Debug, Clone)]
pub struct WrapperRun {
    pub output: Vec<AffineHom>,
    pub samples: u64,
    pub base_threshold: Rat,
}

/// Covers the mean-list of a family at mean agreement λ+ε by the union of
/// s = ⌈(4/(3δ))·(ln ℓ + ln(1/(ηδ)))⌉ base decodes at agreement λ+ε/2,
/// with the deterioration δ fixed to ε/2 and indices drawn uniformly with
/// replacement. `ell_bound` is the caller's upper bound on the base
/// decoder's list size; overestimates only add samples.
///
/// When the base decoder returns a superset of the true list with
/// probability ≥ 3/4, the union is a superset of the true mean-list with
/// probability ≥ 1−η.
pub fn mean_list_decode<D>(
    mut base: D,
    family: &WordFamily,
    params: &DecodeParams,
    ell_bound: f64,
) -> Result<WrapperRun>
where
    D: FnMut(&ReceivedWord, &Threshold) -> Result<Vec<AffineHom>>,
{
    params.validate()?;
    let delta = params.eps.clone() / rat(2, 1);
    let base_threshold = params.lambda_or_zero() + params.eps.clone() - delta.clone();
    let samples = mean_sample_count(&delta, ell_bound, &params.eta)?;

    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let words = family.words();
    let mut union: BTreeSet<AffineHom> = BTreeSet::new();
    for _ in 0..samples {
        let j = rng.random_range(0..words.len());
        let list = base(&words[j], &Threshold::at_least(base_threshold.clone()))?;
        union.extend(list);
    }
    Ok(WrapperRun {
        output: union.into_iter().collect(),
        samples,
        base_threshold,
    })
}

/// Covers the affine list of `f` at agreement λ by anchored homomorphism
/// decodes: s = ⌈(4/(3λ))·(ln ℓ + ln(1/(ηλ)))⌉ anchors a are drawn, the
/// base decoder runs on the view f(a)⁻¹·f(a·x) at the same threshold λ,
/// and every returned ψ is translated to x ↦ f(a)·ψ(a)⁻¹·ψ(x).
///
/// Translation preserves agreement exactly: the view agrees with ψ at x
/// precisely when f agrees with the translate at a·x. An anchor on an
/// agreeing position of an affine codeword therefore recovers it whole.
pub fn hom_to_ahom_decode<D>(
    mut hom_decoder: D,
    f: &ReceivedWord,
    lambda_list: &Rat,
    eta: &Rat,
    ell_bound: f64,
    seed: u64,
) -> Result<WrapperRun>
where
    D: FnMut(&ReceivedWord, &Threshold) -> Result<Vec<Homomorphism>>,
{
    let samples = anchor_sample_count(lambda_list, ell_bound, eta)?;
    let g = f.domain();
    let h = f.codomain();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut union: BTreeSet<AffineHom> = BTreeSet::new();
    for _ in 0..samples {
        let a = g.random_element(&mut rng)?;
        let view = translate_word(f, &a)?;
        let homs = hom_decoder(&view, &Threshold::at_least(lambda_list.clone()))?;
        let va = f.query(&a)?;
        for psi in homs {
            let t = h.mul(&va, &h.inv(&psi.eval(&a)?));
            union.insert(AffineHom::new(t, psi)?);
        }
    }
    Ok(WrapperRun {
        output: union.into_iter().collect(),
        samples,
        base_threshold: lambda_list.clone(),
    })
}

/// Decodes `f` by relaxing its domain through G/N: the word becomes a
/// family over the quotient (one member per element of N), the given
/// decoder handles the family, and each returned codeword is composed
/// with the projection. Mean agreement over the family equals agreement
/// over G codeword by codeword, so the lift loses nothing.
///
/// N must be normal; it is closed under generation first, so any
/// generating set of the subgroup works. With `verify_irrelevant` the
/// subgroup is additionally checked against the intersection of all
/// homomorphism kernels, which enumerates Hom(G, H) and is priced
/// accordingly. N = {e} short-circuits to a singleton family over G
/// itself.
pub fn relax_domain_decode<D>(
    mut quotient_decoder: D,
    f: &ReceivedWord,
    kernel: &[Element],
    verify_irrelevant: bool,
) -> Result<Vec<AffineHom>>
where
    D: FnMut(&WordFamily) -> Result<Vec<AffineHom>>,
{
    let g = f.domain();
    let ker = g.subgroup_closure(kernel)?;
    if verify_irrelevant {
        let irr = crate::oracle::irrelevant_kernel(g, f.codomain())?;
        if ker.iter().any(|e| irr.binary_search(e).is_err()) {
            return Err(Error::invalid(
                "subgroup is not irrelevant: some homomorphism separates it",
            ));
        }
    }
    if ker.len() == 1 {
        let family = WordFamily::new(vec![f.clone()])?;
        let mut out = quotient_decoder(&family)?;
        out.sort();
        out.dedup();
        return Ok(out);
    }
    if !g.is_normal(&ker)? {
        return Err(Error::invalid("the relaxed subgroup must be normal"));
    }

    let (q, family) = quotient_family(f, &ker)?;
    let down = quotient_decoder(&family)?;
    let mut out = Vec::with_capacity(down.len());
    for psi in down {
        out.push(crate::homcore::lift_through_quotient(&q, &psi)?);
    }
    // Composition with the projection is injective, so lifting cannot
    // merge distinct quotient codewords; dedup only collapses duplicates
    // the decoder itself returned.
    out.sort();
    out.dedup();
    Ok(out)
}
