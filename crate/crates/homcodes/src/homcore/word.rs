//! Received words: the noisy functions G → H that decoders query.
//!
//! A word is backed either by a full value table (possibly produced by
//! planting a codeword and corrupting positions) or by a translation view
//! f^a of another word. Every evaluation goes through [`ReceivedWord::query`]
//! and bumps an atomically shared counter, so decoders' query complexity is
//! measurable. Clones share the counter: a translation view charges its
//! base word for the two base evaluations each of its own queries costs.

use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::groups::{Element, Group};
use crate::rat::{rat_counts, rat_to_f64, Rat};

use super::hom::{AffineHom, PartialMap};

/// How a planted word's corrupted positions were chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlantKind {
    /// Exactly ⌈target·|G|⌉ positions agree with the codeword.
    ExactTarget,
    /// Each position corrupted independently with the given probability.
    IidRate,
}

/// Provenance of a planted word, kept for reports and oracle comparisons.
#[derive(Debug, Clone)]
pub struct PlantInfo {
    pub base: AffineHom,
    pub kind: PlantKind,
    pub target: Rat,
    /// Exact fraction of positions agreeing with the planted codeword.
    pub achieved: Rat,
    pub seed: u64,
}

#[derive(Debug, Clone)]
enum Source {
    Table(Arc<Vec<Element>>),
    Translate { base: Box<ReceivedWord>, anchor: Element },
}

/// A function G → H accessible only through counted queries.
#[derive(Debug, Clone)]
pub struct ReceivedWord {
    domain: Group,
    codomain: Group,
    source: Source,
    plant: Option<Arc<PlantInfo>>,
    queries: Arc<AtomicU64>,
}

impl ReceivedWord {
    /// Word backed by an explicit value table over the canonical element
    /// order.
    pub fn from_table(domain: &Group, codomain: &Group, table: Vec<Element>) -> Result<ReceivedWord> {
        let n = domain.order()?;
        if table.len() as u64 != n {
            return Err(Error::invalid(format!(
                "value table has {} entries for a domain of order {n}",
                table.len()
            )));
        }
        for v in &table {
            codomain.check_element(v)?;
        }
        Ok(ReceivedWord {
            domain: domain.clone(),
            codomain: codomain.clone(),
            source: Source::Table(Arc::new(table)),
            plant: None,
            queries: Arc::new(AtomicU64::new(0)),
        })
    }

    /// Plant a codeword at an exact agreement level: exactly ⌈target·|G|⌉
    /// positions keep the codeword value and every other position receives
    /// a uniformly random *wrong* value. The achieved agreement
    /// ⌈target·|G|⌉/|G| ≥ target is reported exactly in the plant info.
    pub fn plant_exact(psi: &AffineHom, target: &Rat, seed: u64) -> Result<ReceivedWord> {
        if target < &Rat::zero() || target > &Rat::one() {
            return Err(Error::invalid("agreement target outside [0, 1]"));
        }
        let domain = psi.domain().clone();
        let codomain = psi.codomain().clone();
        let n = domain.order()?;
        let keep = crate::rat::ceil_to_u64(&(target.clone() * rat_counts(n, 1)))?;
        let corrupt = (n - keep) as usize;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let positions = rand::seq::index::sample(&mut rng, n as usize, corrupt).into_vec();
        let mut table: Vec<Element> = psi.value_table()?.to_vec();
        corrupt_positions(&codomain, &mut table, &positions, &mut rng)?;
        let info = PlantInfo {
            base: psi.clone(),
            kind: PlantKind::ExactTarget,
            target: target.clone(),
            achieved: rat_counts(keep, n),
            seed,
        };
        Ok(ReceivedWord {
            domain,
            codomain,
            source: Source::Table(Arc::new(table)),
            plant: Some(Arc::new(info)),
            queries: Arc::new(AtomicU64::new(0)),
        })
    }

    /// Plant a codeword under i.i.d. noise: each position is independently
    /// corrupted (to a uniform wrong value) with probability `rate`. The
    /// exact achieved agreement is reported in the plant info.
    pub fn plant_noise_rate(psi: &AffineHom, rate: &Rat, seed: u64) -> Result<ReceivedWord> {
        if rate < &Rat::zero() || rate > &Rat::one() {
            return Err(Error::invalid("noise rate outside [0, 1]"));
        }
        let domain = psi.domain().clone();
        let codomain = psi.codomain().clone();
        let n = domain.order()?;
        let p = rat_to_f64(rate);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let positions: Vec<usize> = (0..n as usize).filter(|_| rng.random_bool(p)).collect();
        let mut table: Vec<Element> = psi.value_table()?.to_vec();
        corrupt_positions(&codomain, &mut table, &positions, &mut rng)?;
        let info = PlantInfo {
            base: psi.clone(),
            kind: PlantKind::IidRate,
            target: rate.clone(),
            achieved: rat_counts(n - positions.len() as u64, n),
            seed,
        };
        Ok(ReceivedWord {
            domain,
            codomain,
            source: Source::Table(Arc::new(table)),
            plant: Some(Arc::new(info)),
            queries: Arc::new(AtomicU64::new(0)),
        })
    }

    pub fn domain(&self) -> &Group {
        &self.domain
    }

    pub fn codomain(&self) -> &Group {
        &self.codomain
    }

    pub fn plant_info(&self) -> Option<&PlantInfo> {
        self.plant.as_deref()
    }

    /// Total queries made to this word (shared across clones).
    pub fn queries(&self) -> u64 {
        self.queries.load(Ordering::Relaxed)
    }

    /// Evaluate the word at `g`, counting one query. A translation view
    /// f^a(g) = f(a)⁻¹·f(a·g) additionally charges its base word two
    /// queries per evaluation.
    pub fn query(&self, g: &Element) -> Result<Element> {
        self.queries.fetch_add(1, Ordering::Relaxed);
        match &self.source {
            Source::Table(t) => {
                let idx = self.domain.index_of(g)? as usize;
                Ok(t[idx].clone())
            }
            Source::Translate { base, anchor } => {
                let fa = base.query(anchor)?;
                let fag = base.query(&self.domain.mul(anchor, g))?;
                Ok(self.codomain.mul(&self.codomain.inv(&fa), &fag))
            }
        }
    }

    /// The full value table without touching any query counter. Reserved
    /// for ground-truth oracles and tests; decoders must use `query`.
    pub fn snapshot_table(&self) -> Result<Vec<Element>> {
        match &self.source {
            Source::Table(t) => Ok(t.as_ref().clone()),
            Source::Translate { base, anchor } => {
                let base_table = base.snapshot_table()?;
                let fa_idx = self.domain.index_of(anchor)? as usize;
                let fa_inv = self.codomain.inv(&base_table[fa_idx]);
                let mut out = Vec::with_capacity(base_table.len());
                for g in self.domain.iter_elements()? {
                    let idx = self.domain.index_of(&self.domain.mul(anchor, &g))? as usize;
                    out.push(self.codomain.mul(&fa_inv, &base_table[idx]));
                }
                Ok(out)
            }
        }
    }
}

/// Replace each listed table position with a uniformly random wrong value.
fn corrupt_positions(
    codomain: &Group,
    table: &mut [Element],
    positions: &[usize],
    rng: &mut ChaCha8Rng,
) -> Result<()> {
    if !positions.is_empty() && codomain.order()? < 2 {
        return Err(Error::invalid(
            "cannot corrupt positions with a trivial codomain",
        ));
    }
    for &idx in positions {
        let correct = table[idx].clone();
        loop {
            let wrong = codomain.random_element(rng)?;
            if wrong != correct {
                table[idx] = wrong;
                break;
            }
        }
    }
    Ok(())
}

/// The translation view f^a(g) = f(a)⁻¹·f(a·g). When f is an affine
/// codeword h·φ₀, the view equals φ₀ regardless of the anchor; in general
/// each evaluation of the view queries f twice.
pub fn translate_word(f: &ReceivedWord, anchor: &Element) -> Result<ReceivedWord> {
    f.domain().check_element(anchor)?;
    Ok(ReceivedWord {
        domain: f.domain.clone(),
        codomain: f.codomain.clone(),
        source: Source::Translate {
            base: Box::new(f.clone()),
            anchor: anchor.clone(),
        },
        plant: None,
        queries: Arc::new(AtomicU64::new(0)),
    })
}

/// Restrict a word to a list of sample points: one counted query per listed
/// point (duplicates are queried again, then collapse in the partial map).
pub fn restrict_word(f: &ReceivedWord, points: &[Element]) -> Result<PartialMap> {
    let mut pairs = Vec::with_capacity(points.len());
    for g in points {
        pairs.push((g.clone(), f.query(g)?));
    }
    PartialMap::from_pairs(pairs)
}

/// An indexed family of received words over a common (G, H) pair, the
/// input shape of mean-list decoding.
#[derive(Debug, Clone)]
pub struct WordFamily {
    words: Vec<ReceivedWord>,
}

impl WordFamily {
    pub fn new(words: Vec<ReceivedWord>) -> Result<WordFamily> {
        let first = words
            .first()
            .ok_or_else(|| Error::invalid("a word family must be nonempty"))?;
        let spec = first.domain().spec();
        let cospec = first.codomain().spec();
        for w in &words[1..] {
            if w.domain().spec() != spec || w.codomain().spec() != cospec {
                return Err(Error::invalid(
                    "all words in a family must share domain and codomain",
                ));
            }
        }
        Ok(WordFamily { words })
    }

    pub fn words(&self) -> &[ReceivedWord] {
        &self.words
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }
}
