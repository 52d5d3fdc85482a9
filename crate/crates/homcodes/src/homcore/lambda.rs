//! The maximum-agreement parameter Λ(G, H): the largest agreement between
//! two distinct homomorphisms G → H (zero when there are fewer than two).
//! Distinct affine homomorphisms achieve exactly the same maximum, so Λ
//! also governs the affine code's minimum distance 1 − Λ.

use std::collections::BTreeSet;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::groups::Group;
use crate::rat::{rat_counts, Rat};

use super::agreement_homs;

/// Exact Λ by exhaustion. Pairs of abelian groups take a scan that stays
/// cheap for large products; everything else enumerates Hom(G, H) and
/// maximizes pairwise agreement directly.
pub fn lambda_exact(g: &Group, h: &Group) -> Result<Rat> {
    if g.abelian_orders().is_some() && h.is_abelian()? {
        return lambda_exact_abelian(g, h);
    }
    let homs = crate::oracle::enumerate_homs(g, h)?;
    if homs.len() <= 1 {
        return Ok(Rat::zero());
    }
    let mut best = Rat::zero();
    for i in 0..homs.len() {
        for j in (i + 1)..homs.len() {
            let a = agreement_homs(&homs[i], &homs[j])?;
            if a > best {
                best = a;
            }
        }
    }
    Ok(best)
}

/// Λ for abelian G (in primary decomposition) and abelian H.
///
/// With H abelian the pointwise quotient of two homomorphisms is again a
/// homomorphism, so Λ = max over nontrivial χ of μ(ker χ) = 1 / min |im χ|.
/// Any nontrivial χ is nontrivial on some primary generator g_i of order
/// q_i, and the map sending g_i alone to χ(g_i) is also a homomorphism
/// with image ⟨χ(g_i)⟩ ⊆ im χ. The minimum image size is therefore the
/// least order of a nonidentity codomain element satisfying x^{q_i} = e
/// for some i, found by a direct scan.
fn lambda_exact_abelian(g: &Group, h: &Group) -> Result<Rat> {
    let orders = g
        .abelian_orders()
        .expect("abelian scan requires a primary decomposition");
    let mut best: Option<u64> = None;
    for e in h.iter_elements()? {
        if h.is_identity(&e) {
            continue;
        }
        let m = h.element_order(&e)?;
        if orders.iter().any(|&q| (q as u64) % m == 0) {
            best = Some(best.map_or(m, |b| b.min(m)));
        }
    }
    Ok(match best {
        Some(m) => rat_counts(1, m),
        None => Rat::zero(),
    })
}

/// Λ via the closed form valid whenever G or H is solvable: 1/p for the
/// smallest prime p such that G has a normal subgroup of index p and H has
/// an element of order p; zero when no prime qualifies. A normal subgroup
/// of prime index p exists exactly when p divides |G/G'|, since an index-p
/// quotient is abelian and so factors through the abelianization.
pub fn lambda_formula_solvable(g: &Group, h: &Group) -> Result<Rat> {
    if !(g.is_solvable()? || h.is_solvable()?) {
        return Err(Error::invalid(
            "the closed form for Λ needs the domain or the codomain to be solvable",
        ));
    }
    let ab_order = g.order()? / g.derived_subgroup()?.len() as u64;
    let mut h_orders: BTreeSet<u64> = BTreeSet::new();
    for e in h.iter_elements()? {
        h_orders.insert(h.element_order(&e)?);
    }
    for p in prime_divisors(ab_order) {
        if h_orders.contains(&p) {
            return Ok(rat_counts(1, p));
        }
    }
    Ok(Rat::zero())
}

/// Ascending prime divisors by trial division.
fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// The possible values of Λ(A_n, H) for large alternating domains.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AlternatingLambda {
    /// For n ≥ 10, Λ(A_n, H) is one of 1/C(n,2), 1/n, or 0 for every H.
    Candidates(Vec<Rat>),
    /// Below n = 10 the trichotomy is not guaranteed; compute Λ exactly.
    DeferExact,
}

pub fn lambda_candidates_alternating(n: u32) -> AlternatingLambda {
    if n >= 10 {
        let n = n as u64;
        AlternatingLambda::Candidates(vec![
            rat_counts(2, n * (n - 1)),
            rat_counts(1, n),
            Rat::zero(),
        ])
    } else {
        AlternatingLambda::DeferExact
    }
}
