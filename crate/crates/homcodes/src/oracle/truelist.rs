//! Exact lists: every codeword whose (mean) agreement with a received word
//! clears a threshold, computed by full enumeration and exact rational
//! comparison.

use crate::error::{Error, Result};
use crate::groups::Quotient;
use crate::homcore::{agreement_tables, lift_through_quotient, AffineHom, ReceivedWord, WordFamily};
use crate::oracle::enumerate::{enumerate_ahoms, enumerate_homs};
use crate::rat::{rat, Rat};

/// Which comparison admits a codeword into a list. Boundary cases matter
/// everywhere in this domain, so the choice is always spelled out rather
/// than defaulted.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ThresholdKind {
    /// agreement ≥ value
    AtLeast,
    /// agreement > value
    Above,
}

/// An agreement threshold together with its comparison kind.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Threshold {
    pub kind: ThresholdKind,
    pub value: Rat,
}

impl Threshold {
    pub fn at_least(value: Rat) -> Threshold {
        Threshold {
            kind: ThresholdKind::AtLeast,
            value,
        }
    }

    pub fn above(value: Rat) -> Threshold {
        Threshold {
            kind: ThresholdKind::Above,
            value,
        }
    }

    pub fn admits(&self, agreement: &Rat) -> bool {
        match self.kind {
            ThresholdKind::AtLeast => *agreement >= self.value,
            ThresholdKind::Above => *agreement > self.value,
        }
    }
}

/// Which code a list was drawn from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CodeKind {
    /// Homomorphisms only. Entries carry an identity translation.
    Hom,
    /// All affine homomorphisms.
    AHom,
}

/// The complete set of codewords clearing a threshold, with their exact
/// agreements. Entries are sorted by codeword (translation, then base
/// images) and duplicate-free.
#[derive(Debug, Clone)]
pub struct TrueList {
    code: CodeKind,
    threshold: Threshold,
    entries: Vec<(AffineHom, Rat)>,
}

impl TrueList {
    pub fn code(&self) -> CodeKind {
        self.code
    }

    pub fn threshold(&self) -> &Threshold {
        &self.threshold
    }

    pub fn entries(&self) -> &[(AffineHom, Rat)] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn contains(&self, psi: &AffineHom) -> bool {
        self.entries
            .binary_search_by(|(e, _)| e.cmp(psi))
            .is_ok()
    }

    /// The codewords alone, in list order.
    pub fn codewords(&self) -> Vec<AffineHom> {
        self.entries.iter().map(|(e, _)| e.clone()).collect()
    }
}

fn candidates(code: CodeKind, f: &ReceivedWord) -> Result<Vec<AffineHom>> {
    match code {
        CodeKind::Hom => Ok(enumerate_homs(f.domain(), f.codomain())?
            .into_iter()
            .map(AffineHom::from_hom)
            .collect()),
        CodeKind::AHom => enumerate_ahoms(f.domain(), f.codomain()),
    }
}

/// Every codeword whose exact agreement with `f` clears the threshold.
/// Reads the word through an uncounted snapshot; this is ground truth, not
/// a decoder.
pub fn true_list(code: CodeKind, f: &ReceivedWord, threshold: Threshold) -> Result<TrueList> {
    let table = f.snapshot_table()?;
    let mut entries = Vec::new();
    for cand in candidates(code, f)? {
        let agr = agreement_tables(&table, cand.value_table()?)?;
        if threshold.admits(&agr) {
            entries.push((cand, agr));
        }
    }
    // Candidates arrive in canonical order, Hom enumeration by image tuple
    // and aHom by (translation, images); both agree with AffineHom's Ord.
    debug_assert!(entries.windows(2).all(|w| w[0].0 < w[1].0));
    Ok(TrueList {
        code,
        threshold,
        entries,
    })
}

/// Every codeword whose *mean* agreement over the family clears the
/// threshold. The mean is the exact arithmetic average of the per-word
/// agreements.
pub fn true_mean_list(
    code: CodeKind,
    family: &WordFamily,
    threshold: Threshold,
) -> Result<TrueList> {
    let first = &family.words()[0];
    let tables: Vec<Vec<_>> = family
        .words()
        .iter()
        .map(|w| w.snapshot_table())
        .collect::<Result<_>>()?;
    let k = rat(tables.len() as i64, 1);

    let mut entries = Vec::new();
    for cand in candidates(code, first)? {
        let value = cand.value_table()?;
        let mut total = rat(0, 1);
        for t in &tables {
            total += agreement_tables(t, value)?;
        }
        let mean = total / k.clone();
        if threshold.admits(&mean) {
            entries.push((cand, mean));
        }
    }
    Ok(TrueList {
        code,
        threshold,
        entries,
    })
}

/// Lifts a list computed over a quotient to the base group, entry by entry,
/// preserving agreements. Fails if any entry does not live on the quotient.
pub fn lift_list(q: &Quotient, list: &TrueList) -> Result<TrueList> {
    let mut entries = Vec::with_capacity(list.len());
    for (psi, agr) in list.entries() {
        entries.push((lift_through_quotient(q, psi)?, agr.clone()));
    }
    entries.sort_by(|a, b| a.0.cmp(&b.0));
    if entries.windows(2).any(|w| w[0].0 == w[1].0) {
        return Err(Error::invalid(
            "two quotient codewords lifted to the same homomorphism",
        ));
    }
    Ok(TrueList {
        code: list.code(),
        threshold: list.threshold().clone(),
        entries,
    })
}
