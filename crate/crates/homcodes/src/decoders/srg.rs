//! Tuple-sampling certificate decoder and certificate pruning.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::decoders::params::{srg_tuple_count, CertificateList, DecodeParams};
use crate::error::{Error, Result};
use crate::groups::Group;
use crate::homcore::{restrict_word, ReceivedWord};
use crate::rat::Rat;

/// Draws |Π| = ⌈(1/ε^b)·ln(1/(η·ε^b))⌉ tuples R ∈ G^b with b = k+d+1 and
/// returns the restrictions f|_R, tagged with their tuple index.
///
/// When G is (k, d)-shallow generating (the caller asserts this; the
/// alternating groups satisfy it with (2, 6)), every affine codeword at
/// agreement ≥ Λ+ε leaves, with probability ≥ 1−η, at least one restriction
/// that is entirely correct and whose domain has dense affine closure: a
/// certificate from which a subword extender can rebuild the codeword.
///
/// The decoder never touches the codomain group: it only moves sampled
/// domain points and received values around, so a run costs exactly b·|Π|
/// oracle queries and zero codomain operations.
pub fn srg_cert_decode(f: &ReceivedWord, params: &DecodeParams) -> Result<CertificateList> {
    params.validate()?;
    let (k, d) = params
        .shallow
        .ok_or_else(|| Error::invalid("tuple sampling needs shallow-generation parameters (k, d)"))?;
    let b = (k + d + 1) as usize;
    let count = srg_tuple_count(&params.eps, &params.eta, b as u32)?;

    let g = f.domain();
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let mut entries = Vec::with_capacity(count as usize);
    for idx in 0..count as usize {
        let mut points = Vec::with_capacity(b);
        for _ in 0..b {
            points.push(g.random_element(&mut rng)?);
        }
        // Repeated points in a tuple are queried again and collapse inside
        // the partial map; the query count stays exactly b per tuple.
        entries.push((restrict_word(f, &points)?, idx));
    }
    Ok(CertificateList::new(entries))
}

/// Keeps exactly the certificates γ with μ(⟨dom γ⟩) > λ, the maps that can
/// still distinguish codewords at agreement above λ. The comparison is
/// strict: a closure of density exactly λ is dropped, and an empty map
/// survives only while 1/|G| > λ.
pub fn prune_certs(g: &Group, certs: &CertificateList, lambda: &Rat) -> Result<CertificateList> {
    let mut kept = Vec::new();
    for (map, idx) in certs.entries() {
        let closure = g.subgroup_closure(&map.domain_elems())?;
        if g.density(&closure)? > *lambda {
            kept.push((map.clone(), *idx));
        }
    }
    Ok(CertificateList::new(kept))
}
