//! The subgroup of the domain that no homomorphism can see.

use crate::error::Result;
use crate::groups::{Element, Group};
use crate::oracle::enumerate::enumerate_homs;

/// Intersection of the kernels of all homomorphisms G -> H: the elements on
/// which every codeword of Hom(G, H) takes the identity value. Always a
/// normal subgroup (it contains e, and Hom always contains the trivial
/// map, so the intersection is well defined). When H is abelian it
/// contains the derived subgroup of G.
pub fn irrelevant_kernel(g: &Group, h: &Group) -> Result<Vec<Element>> {
    let homs = enumerate_homs(g, h)?;
    let n = g.order()? as usize;
    let mut keep = vec![true; n];
    for phi in &homs {
        let table = phi.value_table()?;
        for (i, v) in table.iter().enumerate() {
            if keep[i] && !h.is_identity(v) {
                keep[i] = false;
            }
        }
    }

    let elems = g.elements()?;
    Ok(elems
        .iter()
        .zip(keep.iter())
        .filter(|(_, &k)| k)
        .map(|(e, _)| e.clone())
        .collect())
}
