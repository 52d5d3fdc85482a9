//! Local list-decoder for abelian domains in primary decomposition.
//!
//! The domain must be given as Z_{q₁}×…×Z_{q_k} with every qᵢ a prime
//! power and q₁ a power of the prime p that sets the distinguishing
//! agreement Λ = 1/p of the pair (G, H). The decoder self-corrects one
//! standard generator at a time: a committed prefix of generator images is
//! extended by solving u^{c₁−c₂} = φ(y₁)⁻¹·f(x₁)·f(x₂)⁻¹·φ(y₂) for the
//! next image u, where the two sample points x_t = y_t + c_t·eᵢ + s share
//! their suffix s, the offsets satisfy p ∤ c₁−c₂, and (for a nonabelian
//! codomain) the received values commute with each other and with the
//! committed images. Each candidate extension is kept when it wins at
//! least a (Λ+ε)²/2 share of the votes; the candidate pool is capped at
//! 4/ε⁴, completed candidates are validated against the group relations
//! and pruned by sampled agreement.
//!
//! Every query samples a point whose distribution does not depend on |G|
//! beyond the factor count k, so the query bill is poly(log|G|, 1/ε) and
//! independent of |H|.

use std::collections::{BTreeMap, BTreeSet};

use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::decoders::params::{anchor_sample_count, check_unit_open};
use crate::decoders::pipeline::estimate_agreement_rng;
use crate::error::{Error, Result};
use crate::groups::{prime_of_prime_power, Element, Group};
use crate::homcore::{make_hom, AffineHom, ReceivedWord};
use crate::rat::{ceil_to_u64, rat, rat_counts, rat_to_f64, Rat};

/// Vote pairs per candidate and factor: ⌈48/τ⌉ at vote threshold τ keeps
/// the misclassification probability of a single extension step below
/// e⁻¹², far inside the decoder's 1/4 failure budget.
const VOTE_MARGIN: i64 = 48;

/// Failure budget of the anchor stage; the per-anchor decodes themselves
/// succeed with probability well above the 3/4 the covering bound needs.
const ANCHOR_ETA: (i64, i64) = (1, 8);

/// Per-candidate failure budget of the final sampled-agreement prune.
const PRUNE_ETA: (i64, i64) = (1, 64);

/// Hard ceiling on the candidate pool, applied after the 4/ε⁴ cap.
const POOL_ABSOLUTE_MAX: usize = 1_000_000;

/// What a local decode did, alongside its output list.
#[derive(Debug, Clone)]
pub struct AbelianOutcome {
    /// Validated affine homomorphisms, canonically sorted.
    pub output: Vec<AffineHom>,
    /// Counted oracle queries the decode consumed.
    pub queries: u64,
    /// Codomain group operations the decoder itself performed.
    pub codomain_ops: u64,
    /// Anchor draws; each one ran the generator-by-generator core once.
    pub anchors: u64,
    /// Stages at which the candidate pool exceeded its cap and was cut
    /// back to the top-voted candidates.
    pub pool_overflows: u64,
}

/// List-decodes `f` over aHom(G, H) at agreement Λ+ε, where Λ = 1/p for
/// the leading prime p of the domain's primary decomposition.
///
/// With probability ≥ 3/4 over the seed the output contains every affine
/// homomorphism at agreement ≥ Λ+ε; every member of the output is a
/// validated affine homomorphism. Candidate homs are rebuilt over the
/// unwrapped codomain, so callers can verify them without inflating any
/// operation counter.
pub fn abelian_local_decode(f: &ReceivedWord, eps: &Rat, seed: u64) -> Result<AbelianOutcome> {
    check_unit_open("eps", eps)?;
    let g = f.domain();
    let orders: Vec<u32> = g
        .abelian_orders()
        .ok_or_else(|| {
            Error::invalid("the local decoder needs an abelian domain in primary decomposition")
        })?
        .to_vec();
    let primes: Vec<u32> = orders.iter().map(|&q| prime_of_prime_power(q)).collect();

    let h = f.codomain();
    let h_ord = h.order()?;
    let mut shared: Vec<u32> = primes.clone();
    shared.sort_unstable();
    shared.dedup();
    let common = shared.iter().copied().find(|&p| h_ord % p as u64 == 0);
    let p1 = match common {
        None => {
            return Err(Error::invalid(
                "domain and codomain share no prime, so the distinguishing agreement degenerates",
            ))
        }
        Some(p) if p != primes[0] => {
            return Err(Error::invalid(
                "primary decomposition must lead with the prime that sets the agreement threshold",
            ))
        }
        Some(p) => p,
    };
    let lambda = rat_counts(1, p1 as u64);
    let lambda_list = lambda.clone() + eps.clone();
    if lambda_list > rat(1, 1) {
        // No map can reach the requested agreement; the list is empty.
        return Ok(AbelianOutcome {
            output: Vec::new(),
            queries: 0,
            codomain_ops: 0,
            anchors: 0,
            pool_overflows: 0,
        });
    }

    let pool_cap = (rat_to_f64(&(rat(4, 1) / (eps.clone() * eps * eps * eps))).floor() as usize)
        .min(POOL_ABSOLUTE_MAX);
    let tau = lambda_list.clone() * lambda_list.clone() / rat(2, 1);
    let pairs = ceil_to_u64(&(rat(VOTE_MARGIN, 1) / tau.clone()))?;
    let anchors = anchor_sample_count(
        &lambda_list,
        pool_cap as f64,
        &rat(ANCHOR_ETA.0, ANCHOR_ETA.1),
    )?;

    let h_bb = Group::blackbox(h.clone());
    let h_plain = h.unwrapped().clone();
    let h_abelian = h_plain.is_abelian()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let query_base = f.queries();
    let mut overflows = 0u64;
    let mut found: BTreeSet<AffineHom> = BTreeSet::new();

    for _ in 0..anchors {
        let a = g.random_element(&mut rng)?;
        let va = f.query(&a)?;
        let va_inv = h_bb.inv(&va);
        // The anchored view f(a)⁻¹·f(a·x): one counted query per point.
        let mut access = |pt: &Element| -> Result<Element> {
            let w = f.query(&g.mul(&a, pt))?;
            Ok(h_bb.mul(&va_inv, &w))
        };
        let chains = hom_core(
            g,
            &orders,
            &primes,
            &h_bb,
            h_abelian,
            &mut access,
            &tau,
            pairs,
            pool_cap,
            &mut rng,
            &mut overflows,
        )?;
        for images in chains {
            // Relator violations just discard the candidate: vote noise can
            // assemble image tuples no homomorphism realizes.
            let Ok(psi) = make_hom(g, &h_plain, images.clone()) else {
                continue;
            };
            let pa = power_product(&h_bb, &images, &a.as_values());
            let t = h_bb.mul(&va, &h_bb.inv(&pa));
            let Ok(aff) = AffineHom::new(t, psi) else {
                continue;
            };
            found.insert(aff);
        }
    }

    // Completed candidates are pruned by sampled agreement: estimates at
    // accuracy ε/4 must strictly exceed Λ+ε/2, which genuine list members
    // (agreement ≥ Λ+ε) clear with probability ≥ 1−η′ each.
    let half = eps.clone() / rat(2, 1);
    let cutoff = lambda + half.clone();
    let eta_prime = rat(PRUNE_ETA.0, PRUNE_ETA.1);
    let mut kept: Vec<(Rat, AffineHom)> = Vec::new();
    for psi in found {
        let est = estimate_agreement_rng(f, &psi, &half, &eta_prime, &mut rng)?;
        if est > cutoff {
            kept.push((est, psi));
        }
    }
    if kept.len() > pool_cap {
        kept.sort_by(|a, b| b.0.cmp(&a.0).then_with(|| a.1.cmp(&b.1)));
        kept.truncate(pool_cap);
        overflows += 1;
    }
    let mut output: Vec<AffineHom> = kept.into_iter().map(|(_, psi)| psi).collect();
    output.sort();

    Ok(AbelianOutcome {
        output,
        queries: f.queries() - query_base,
        codomain_ops: h_bb.ops_count(),
        anchors,
        pool_overflows: overflows,
    })
}

/// Generator-by-generator candidate growth over the anchored view.
/// Returns the completed image tuples; their validation happens upstream.
#[allow(clippy::too_many_arguments)]
fn hom_core<F>(
    g: &Group,
    orders: &[u32],
    primes: &[u32],
    h_bb: &Group,
    h_abelian: bool,
    access: &mut F,
    tau: &Rat,
    pairs: u64,
    pool_cap: usize,
    rng: &mut ChaCha8Rng,
    overflows: &mut u64,
) -> Result<Vec<Vec<Element>>>
where
    F: FnMut(&Element) -> Result<Element>,
{
    let mut pool: Vec<(Vec<Element>, u64)> = vec![(Vec::new(), pairs)];
    for i in 0..orders.len() {
        let mut next: Vec<(Vec<Element>, u64)> = Vec::new();
        for (imgs, _) in &pool {
            let votes = vote_for_factor(g, orders, i, primes[i], h_bb, h_abelian, imgs, access, pairs, rng)?;
            for (u, v) in votes {
                if rat_counts(v, pairs) >= *tau {
                    let mut ext = imgs.clone();
                    ext.push(u);
                    next.push((ext, v));
                }
            }
        }
        if next.len() > pool_cap {
            next.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
            next.truncate(pool_cap);
            *overflows += 1;
        }
        if next.is_empty() {
            return Ok(Vec::new());
        }
        next.sort_by(|a, b| a.0.cmp(&b.0));
        pool = next;
    }
    Ok(pool.into_iter().map(|(imgs, _)| imgs).collect())
}

/// Draws `pairs` guarded sample pairs for factor i and tallies the solved
/// images u. For a codeword extending the committed images, both points of
/// a pair land on agreeing positions with probability at least the squared
/// agreement, so the right u collects at least twice the (Λ+ε)²/2 vote
/// threshold in expectation.
#[allow(clippy::too_many_arguments)]
fn vote_for_factor<F>(
    g: &Group,
    orders: &[u32],
    i: usize,
    pi: u32,
    h_bb: &Group,
    h_abelian: bool,
    imgs: &[Element],
    access: &mut F,
    pairs: u64,
    rng: &mut ChaCha8Rng,
) -> Result<BTreeMap<Element, u64>>
where
    F: FnMut(&Element) -> Result<Element>,
{
    let k = orders.len();
    let qi = orders[i];
    // Power tables for the committed images: tables[j][t] = imgs[j]^t.
    let mut tables: Vec<Vec<Element>> = Vec::with_capacity(imgs.len());
    for (j, u) in imgs.iter().enumerate() {
        let mut row = Vec::with_capacity(orders[j] as usize);
        row.push(h_bb.identity());
        for _ in 1..orders[j] {
            row.push(h_bb.mul(row.last().expect("row starts with the identity"), u));
        }
        tables.push(row);
    }

    let mut votes: BTreeMap<Element, u64> = BTreeMap::new();
    for _ in 0..pairs {
        // Offsets are redrawn until p ∤ c₁−c₂, so every pair is usable and
        // the query count per stage is fixed. The divisibility guard is met
        // after two expected draws.
        let c1 = rng.random_range(0..qi);
        let mut c2 = rng.random_range(0..qi);
        let mut tries = 0;
        while (c1 as u64 + qi as u64 - c2 as u64) % pi as u64 == 0 {
            c2 = rng.random_range(0..qi);
            tries += 1;
            if tries > 4096 {
                return Err(Error::invalid("offset sampling stalled"));
            }
        }

        let mut co1: Vec<u64> = vec![0; k];
        let mut co2: Vec<u64> = vec![0; k];
        let mut phi1 = h_bb.identity();
        let mut phi2 = h_bb.identity();
        for j in 0..i {
            let y1 = rng.random_range(0..orders[j]);
            let y2 = rng.random_range(0..orders[j]);
            co1[j] = y1 as u64;
            co2[j] = y2 as u64;
            phi1 = h_bb.mul(&phi1, &tables[j][y1 as usize]);
            phi2 = h_bb.mul(&phi2, &tables[j][y2 as usize]);
        }
        co1[i] = c1 as u64;
        co2[i] = c2 as u64;
        for j in (i + 1)..k {
            let s = rng.random_range(0..orders[j]) as u64;
            co1[j] = s;
            co2[j] = s;
        }
        let w1 = access(&g.element_from_values(&co1)?)?;
        let w2 = access(&g.element_from_values(&co2)?)?;

        if !h_abelian {
            // A homomorphism from an abelian group has an abelian image, so
            // values that refuse to commute with each other or with the
            // committed images cannot all be codeword values; skip the pair.
            if !commutes(h_bb, &w1, &w2) {
                continue;
            }
            if imgs
                .iter()
                .any(|u| !commutes(h_bb, &w1, u) || !commutes(h_bb, &w2, u))
            {
                continue;
            }
        }

        // z = φ(y₁)⁻¹·w₁·w₂⁻¹·φ(y₂) equals u^{c₁−c₂} on agreeing pairs.
        let z = h_bb.mul(
            &h_bb.mul(&h_bb.mul(&h_bb.inv(&phi1), &w1), &h_bb.inv(&w2)),
            &phi2,
        );
        if !h_bb.is_identity(&h_bb.pow(&z, qi as i64)) {
            continue;
        }
        let dc = (c1 as u64 + qi as u64 - c2 as u64) % qi as u64;
        let inv = mod_inverse(dc as i64, qi as i64)?;
        let u = h_bb.pow(&z, inv);
        *votes.entry(u).or_insert(0) += 1;
    }
    Ok(votes)
}

fn commutes(h: &Group, a: &Element, b: &Element) -> bool {
    h.eq_elems(&h.mul(a, b), &h.mul(b, a))
}

/// c⁻¹ mod m for gcd(c, m) = 1.
fn mod_inverse(c: i64, m: i64) -> Result<i64> {
    let e = c.extended_gcd(&m);
    if e.gcd != 1 {
        return Err(Error::invalid("offset is not a unit in its factor"));
    }
    Ok(e.x.rem_euclid(m))
}

/// Π imgs[j]^{coords[j]}, the committed candidate's value at the element
/// with the given coordinates.
fn power_product(h: &Group, imgs: &[Element], coords: &[u64]) -> Element {
    let mut acc = h.identity();
    for (u, &c) in imgs.iter().zip(coords) {
        acc = h.mul(&acc, &h.pow(u, c as i64));
    }
    acc
}
