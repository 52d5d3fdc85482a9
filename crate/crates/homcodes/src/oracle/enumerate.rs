//! Exhaustive enumeration of Hom(G, H) and aHom(G, H) by generator-image
//! search. This is the ground truth every decoder and bound is tested
//! against, so it favors transparency over speed: candidate images are
//! prefiltered by order divisibility, every full assignment is validated by
//! the homomorphism constructor, and results come out in the lexicographic
//! order of their image tuples.

use crate::error::{Error, Result};
use crate::groups::{Element, Group};
use crate::homcore::{make_hom, AffineHom, Homomorphism};

/// Cap on the number of image assignments a single enumeration may try.
pub const HOM_ENUM_MAX: u64 = 10_000_000;

/// All homomorphisms G → H, sorted by generator-image tuple, no
/// duplicates.
pub fn enumerate_homs(g: &Group, h: &Group) -> Result<Vec<Homomorphism>> {
    let gens = g.generators();
    let h_elems = h.elements()?;

    // A generator of order m can only map to an element whose order
    // divides m; h_elems is canonically sorted, so each candidate list is
    // too.
    let mut cands: Vec<Vec<Element>> = Vec::with_capacity(gens.len());
    for gen in &gens {
        let m = g.element_order(gen)?;
        let mut c = Vec::new();
        for e in h_elems {
            if m % h.element_order(e)? == 0 {
                c.push(e.clone());
            }
        }
        cands.push(c);
    }

    let mut space: u64 = 1;
    for c in &cands {
        space = space.saturating_mul(c.len() as u64);
    }
    if space > HOM_ENUM_MAX {
        return Err(Error::budget(format!(
            "homomorphism search space of {space} image tuples exceeds the cap of {HOM_ENUM_MAX}"
        )));
    }

    let mut out = Vec::new();
    let mut assign: Vec<Element> = Vec::with_capacity(cands.len());
    search(g, h, &cands, &mut assign, &mut out)?;
    Ok(out)
}

fn search(
    g: &Group,
    h: &Group,
    cands: &[Vec<Element>],
    assign: &mut Vec<Element>,
    out: &mut Vec<Homomorphism>,
) -> Result<()> {
    if assign.len() == cands.len() {
        match make_hom(g, h, assign.clone()) {
            Ok(hom) => out.push(hom),
            Err(Error::RelatorViolation(_)) => {}
            Err(e) => return Err(e),
        }
        return Ok(());
    }
    for c in &cands[assign.len()] {
        assign.push(c.clone());
        search(g, h, cands, assign, out)?;
        assign.pop();
    }
    Ok(())
}

/// All affine homomorphisms h·φ₀, sorted by (translation, base images).
/// Complete and duplicate-free because the decomposition is unique.
pub fn enumerate_ahoms(g: &Group, h: &Group) -> Result<Vec<AffineHom>> {
    let homs = enumerate_homs(g, h)?;
    let h_order = h.order()?;
    if h_order.saturating_mul(homs.len() as u64) > HOM_ENUM_MAX {
        return Err(Error::budget(
            "affine enumeration exceeds the assignment cap",
        ));
    }
    let mut out = Vec::with_capacity((h_order as usize) * homs.len());
    for t in h.iter_elements()? {
        for phi in &homs {
            out.push(AffineHom::new(t.clone(), phi.clone())?);
        }
    }
    out.sort();
    Ok(out)
}
