//! Covering the images of all listed homomorphisms by few abelian
//! subgroups of the codomain.
//!
//! For abelian G, each bucket representative ψ spawns at most 1/ε abelian
//! subgroups: the enlargements of listed images φ(G) by ψ(G) (the subgroup
//! generated by φ(G) and the part of ψ(G) centralizing it). Every listed
//! homomorphism's image sits inside one of them by construction, and the
//! representative count is capped by sphere packing, so the whole
//! collection has at most 1/(4(λ+ε)ε²) + 1/ε members.

use std::collections::BTreeSet;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::groups::Element;
use crate::homcore::{
    abelian_enlargement, agreement_homs, lambda_exact, AffineHom, Homomorphism, ReceivedWord,
};
use crate::oracle::bounds::snapshot_agreement;
use crate::oracle::truelist::{true_list, CodeKind, Threshold};
use crate::rat::{rat, rat_int, Rat};

/// The subgroups covering every listed image, with the cap they satisfy.
#[derive(Debug, Clone)]
pub struct ImageCover {
    /// Distinct abelian subgroups of H, each as its sorted element list,
    /// in canonical order.
    pub subgroups: Vec<Vec<Element>>,
    /// The cap 1/(4(λ+ε)ε²) + 1/ε.
    pub bound: Rat,
    /// Exact maximum agreement of the pair (G, H), computed here.
    pub lambda: Rat,
}

/// Builds the image cover for the homomorphism list of `f` at threshold
/// λ+ε from the bucket representatives `psi`. The representatives must
/// themselves be listed, pairwise agree at most λ², and cover the list —
/// the premises under which the cap is a theorem; anything else is
/// rejected as a bad instance rather than measured.
pub fn abelian_image_cover(
    f: &ReceivedWord,
    eps: &Rat,
    psi: &[Homomorphism],
) -> Result<ImageCover> {
    let g = f.domain();
    let h = f.codomain();
    if !g.is_abelian()? {
        return Err(Error::invalid(
            "the image cover construction needs an abelian domain",
        ));
    }
    if eps <= &Rat::zero() {
        return Err(Error::invalid("eps must be positive"));
    }
    for p in psi {
        if p.domain().spec() != g.spec() || p.codomain().spec() != h.spec() {
            return Err(Error::invalid(
                "every bucket representative must live on the word's groups",
            ));
        }
    }

    let lambda = lambda_exact(g, h)?;
    let lambda_sq = &lambda * &lambda;
    let threshold = lambda.clone() + eps;
    let list = true_list(CodeKind::Hom, f, Threshold::at_least(threshold.clone()))?;

    // Premises: representatives are listed and pairwise far.
    let table = f.snapshot_table()?;
    for (i, p) in psi.iter().enumerate() {
        let agr = snapshot_agreement(&table, &AffineHom::from_hom(p.clone()))?;
        if agr < threshold {
            return Err(Error::invalid(format!(
                "bucket representative {i} does not clear the list threshold"
            )));
        }
        for q in &psi[i + 1..] {
            if agreement_homs(p, q)? > lambda_sq {
                return Err(Error::invalid(
                    "two bucket representatives agree above lambda^2",
                ));
            }
        }
    }

    // One enlargement per (listed φ, its bucket); dedup across everything.
    let mut per_rep: Vec<BTreeSet<Vec<Element>>> = vec![BTreeSet::new(); psi.len()];
    'phi: for (phi, _) in list.entries() {
        let phi_image = phi.base().image_subgroup()?;
        for (i, p) in psi.iter().enumerate() {
            if agreement_homs(phi.base(), p)? > lambda_sq {
                let m = abelian_enlargement(h, &p.image_subgroup()?, &phi_image)?;
                debug_assert!(phi_image.iter().all(|x| m.binary_search(x).is_ok()));
                per_rep[i].insert(m);
                continue 'phi;
            }
        }
        return Err(Error::invalid(
            "the bucket representatives do not cover the list",
        ));
    }

    // Per-representative cap 1/ε, then the combined cap.
    let per_cap = rat_int(1) / eps;
    for reps in &per_rep {
        assert!(
            rat_int(reps.len() as i64) <= per_cap,
            "one bucket produced more than 1/eps distinct enlargements"
        );
    }

    let mut all: BTreeSet<Vec<Element>> = BTreeSet::new();
    for reps in per_rep {
        all.extend(reps);
    }
    let bound = rat(1, 4) / (threshold * eps * eps) + rat_int(1) / eps;
    assert!(
        rat_int(all.len() as i64) <= bound,
        "the image cover exceeded its cap"
    );

    Ok(ImageCover {
        subgroups: all.into_iter().collect(),
        bound,
        lambda,
    })
}
