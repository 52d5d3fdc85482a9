//! Abelian subgroup enlargement σ_B(T) = ⟨T, C_H(T) ∩ B⟩.
//!
//! Given an abelian subgroup B of H and a commuting set T, the enlargement
//! is the subgroup generated by T together with the part of B that
//! centralizes T. It is again abelian, contains ⟨T⟩, and equals B whenever
//! T ⊆ B: the gadget that lets image covers grow a candidate subgroup
//! without leaving the abelian world.

use crate::error::{Error, Result};
use crate::groups::{Element, Group};

fn pairwise_commute(h: &Group, set: &[Element]) -> bool {
    for i in 0..set.len() {
        for j in (i + 1)..set.len() {
            if h.mul(&set[i], &set[j]) != h.mul(&set[j], &set[i]) {
                return false;
            }
        }
    }
    true
}

/// σ_B(T) as a canonically sorted element list.
pub fn abelian_enlargement(h: &Group, b: &[Element], t: &[Element]) -> Result<Vec<Element>> {
    if !h.is_subgroup(b)? {
        return Err(Error::invalid("B is not a subgroup of the codomain"));
    }
    if !pairwise_commute(h, b) {
        return Err(Error::invalid("B is not abelian"));
    }
    for e in t {
        h.check_element(e)?;
    }
    if !pairwise_commute(h, t) {
        return Err(Error::invalid("T is not a commuting set"));
    }
    let mut b_sorted = b.to_vec();
    b_sorted.sort();
    let centralizer = h.centralizer(t)?;
    let mut gens: Vec<Element> = t.to_vec();
    for e in &centralizer {
        if b_sorted.binary_search(e).is_ok() {
            gens.push(e.clone());
        }
    }
    let result = h.subgroup_closure(&gens)?;
    debug_assert!(pairwise_commute(h, &result));
    Ok(result)
}
