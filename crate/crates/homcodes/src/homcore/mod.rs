//! Core objects of homomorphism codes: homomorphisms and their affine
//! translates, partial maps, received words with query accounting, exact
//! agreement and equalizer computations, and the maximum-agreement
//! parameter Λ.

pub mod enlarge;
pub mod hom;
pub mod lambda;
pub mod quotient;
pub mod word;


pub use enlarge::abelian_enlargement;
pub use hom::{make_hom, AffineHom, Homomorphism, PartialMap};
pub use lambda::{
    lambda_candidates_alternating, lambda_exact, lambda_formula_solvable, AlternatingLambda,
};
pub use quotient::{lift_through_quotient, quotient_family};
pub use word::{
    restrict_word, translate_word, PlantInfo, PlantKind, ReceivedWord, WordFamily,
};

use crate::error::{Error, Result};
use crate::groups::{Element, Subcoset};
use crate::rat::{rat_counts, Rat};

/// Fraction of positions on which two equal-length value tables agree.
pub fn agreement_tables(a: &[Element], b: &[Element]) -> Result<Rat> {
    if a.len() != b.len() || a.is_empty() {
        return Err(Error::invalid("agreement needs equal-length nonempty tables"));
    }
    let hits = a.iter().zip(b).filter(|(x, y)| x == y).count();
    Ok(rat_counts(hits as u64, a.len() as u64))
}

/// Exact agreement of two homomorphisms.
pub fn agreement_homs(a: &Homomorphism, b: &Homomorphism) -> Result<Rat> {
    agreement_tables(a.value_table()?, b.value_table()?)
}

/// Exact agreement of two affine homomorphisms.
pub fn agreement_affine(a: &AffineHom, b: &AffineHom) -> Result<Rat> {
    agreement_tables(a.value_table()?, b.value_table()?)
}

/// Exact agreement of a received word with a homomorphism. Queries the
/// word on every domain element (counted).
pub fn agreement_word_hom(f: &ReceivedWord, phi: &Homomorphism) -> Result<Rat> {
    agreement_word_affine(f, &AffineHom::from_hom(phi.clone()))
}

/// Exact agreement of a received word with an affine homomorphism.
/// Queries the word on every domain element (counted).
pub fn agreement_word_affine(f: &ReceivedWord, psi: &AffineHom) -> Result<Rat> {
    let g = f.domain();
    let n = g.order()?;
    let mut hits = 0u64;
    for x in g.iter_elements()? {
        if f.query(&x)? == psi.eval(&x)? {
            hits += 1;
        }
    }
    Ok(rat_counts(hits, n))
}

/// Mean agreement of an affine homomorphism across a word family
/// (arithmetic mean of the exact per-word agreements).
pub fn mean_agreement_affine(family: &WordFamily, psi: &AffineHom) -> Result<Rat> {
    let mut total = Rat::from_integer(0.into());
    for w in family.words() {
        total += agreement_word_affine(w, psi)?;
    }
    Ok(total / rat_counts(family.len() as u64, 1))
}

/// Equalizer of two homomorphisms: the subgroup on which they agree,
/// canonically sorted.
pub fn equalizer_homs(a: &Homomorphism, b: &Homomorphism) -> Result<Vec<Element>> {
    let g = a.domain();
    let ta = a.value_table()?;
    let tb = b.value_table()?;
    let mut out = Vec::new();
    for (i, x) in g.iter_elements()?.enumerate() {
        if ta[i] == tb[i] {
            out.push(x);
        }
    }
    Ok(out)
}

/// Equalizer of two affine homomorphisms: empty, or a coset of the
/// equalizer of suitable base homomorphisms. The agreement set is
/// collected pointwise and then verified to be a subcoset.
pub fn equalizer_affine(a: &AffineHom, b: &AffineHom) -> Result<Subcoset> {
    let g = a.domain();
    let ta = a.value_table()?;
    let tb = b.value_table()?;
    let mut set = Vec::new();
    for (i, x) in g.iter_elements()?.enumerate() {
        if ta[i] == tb[i] {
            set.push(x);
        }
    }
    if set.is_empty() {
        return Ok(Subcoset::empty());
    }
    let closure = g.affine_closure(&set)?;
    if closure.len() != set.len() {
        return Err(Error::invalid(
            "agreement set of two affine homomorphisms is not a subcoset",
        ));
    }
    Ok(closure)
}
