//! Passing a received word through a quotient G/N.
//!
//! When N is contained in the kernel of every homomorphism G -> H, the
//! affine-homomorphism list of a word f: G -> H can be recovered from a
//! *family* of words on G/N: index the family by the elements g_i of N and
//! give the i-th word the value f(s·g_i) on the coset sN (s the canonical
//! coset representative). Averaging agreements over the family then matches
//! agreement with f exactly, codeword by codeword, so list decoding on the
//! quotient plus a lift solves the original instance.

use crate::error::{Error, Result};
use crate::groups::{Element, Quotient};
use crate::homcore::hom::{make_hom, AffineHom};
use crate::homcore::word::{ReceivedWord, WordFamily};

/// Builds the word family on G/N described above, one word per element of
/// `kernel` in canonical order. Every table cell is filled through a counted
/// query, |G| queries in total.
pub fn quotient_family(
    f: &ReceivedWord,
    kernel: &[Element],
) -> Result<(Quotient, WordFamily)> {
    let g = f.domain();
    let q = g.quotient(kernel)?;
    let quot = q.group().clone();
    let cosets = q.cosets();

    let mut ker: Vec<Element> = kernel.to_vec();
    ker.sort();
    ker.dedup();

    let mut words = Vec::with_capacity(ker.len());
    for gi in &ker {
        let mut table = Vec::with_capacity(cosets);
        for j in 0..cosets as u64 {
            let s = q.transversal(&quot.element_at(j)?)?;
            table.push(f.query(&g.mul(&s, gi))?);
        }
        words.push(ReceivedWord::from_table(&quot, f.codomain(), table)?);
    }
    Ok((q, WordFamily::new(words)?))
}

/// Composes an affine homomorphism on G/N with the projection G -> G/N,
/// giving the affine homomorphism on the base group that takes the same
/// value on every member of a coset.
pub fn lift_through_quotient(q: &Quotient, psi: &AffineHom) -> Result<AffineHom> {
    if psi.domain().spec() != q.group().spec() {
        return Err(Error::invalid(
            "the homomorphism to lift must live on the quotient group",
        ));
    }
    let base = q.base();
    let images: Vec<Element> = base
        .generators()
        .iter()
        .map(|gen| psi.base().eval(&q.project(gen)?))
        .collect::<Result<_>>()?;
    let lifted = make_hom(base, psi.codomain(), images)?;
    AffineHom::new(psi.translation().clone(), lifted)
}
