//! Experiment configurations for the `homcode` binary.
//!
//! Every runner consumes a config value that round-trips through JSON, and
//! every report embeds the effective config it ran with. Feeding a report
//! back in as a config file therefore reproduces the report byte for byte:
//! all randomness is seeded, rationals serialize exactly as `p/q`, and the
//! field order is fixed by the struct definitions below.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groups::{Group, GroupSpec};
use crate::homcore::{make_hom, AffineHom, ReceivedWord};
use crate::oracle::{CodeKind, Threshold};
use crate::rat::{rat_opt_serde, rat_serde, Rat};

/// Parses the compact group syntax used on the command line: `z:2,4` for a
/// direct product of cyclic prime-power factors, `alt:N` / `sym:N` for
/// permutation groups, or a raw `GroupSpec` JSON object starting with `{`.
pub fn parse_group_arg(s: &str) -> Result<GroupSpec> {
    let s = s.trim();
    if s.starts_with('{') {
        return serde_json::from_str(s).map_err(|e| Error::invalid(format!("bad group JSON: {e}")));
    }
    if let Some(rest) = s.strip_prefix("z:") {
        let orders = rest
            .split(',')
            .map(|part| part.trim().parse::<u32>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| Error::invalid(format!("bad cyclic factor list `{rest}`")))?;
        return Ok(GroupSpec::Abelian { orders });
    }
    for (prefix, tag) in [("alt:", "alt"), ("sym:", "sym")] {
        if let Some(rest) = s.strip_prefix(prefix) {
            let degree = rest
                .trim()
                .parse::<usize>()
                .map_err(|_| Error::invalid(format!("bad permutation degree `{rest}`")))?;
            return Ok(GroupSpec::Perm {
                degree,
                tag: Some(tag.to_string()),
                generators: None,
            });
        }
    }
    Err(Error::invalid(format!(
        "unrecognized group `{s}` (use z:N,N,.., alt:N, sym:N, or a JSON object)"
    )))
}

/// How a runner obtains its received word.
///
/// Element values are written as arrays of coordinates, matching
/// [`crate::groups::Element::as_values`].
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "source", rename_all = "lowercase")]
pub enum WordSpec {
    /// Plant an affine codeword at an exact agreement fraction, filling the
    /// rest of the table with disagreeing values.
    Plant {
        /// Generator images of the base homomorphism.
        images: Vec<Vec<u64>>,
        /// Left translation; omitted means the identity.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        translation: Option<Vec<u64>>,
        /// Exact agreement of the planted codeword with the word.
        #[serde(with = "rat_serde")]
        target: Rat,
        seed: u64,
    },
    /// Independent uniform codomain values at every point.
    Random { seed: u64 },
    /// An explicit value table over the domain's canonical element order.
    Table { values: Vec<Vec<u64>> },
}

impl WordSpec {
    /// Materializes the word over the given pair, along with the planted
    /// codeword when there is one.
    pub fn build(&self, g: &Group, h: &Group) -> Result<(ReceivedWord, Option<AffineHom>)> {
        match self {
            WordSpec::Plant {
                images,
                translation,
                target,
                seed,
            } => {
                let imgs = images
                    .iter()
                    .map(|v| h.element_from_values(v))
                    .collect::<Result<Vec<_>>>()?;
                let base = make_hom(g, h, imgs)?;
                let psi = match translation {
                    Some(t) => AffineHom::new(h.element_from_values(t)?, base)?,
                    None => AffineHom::from_hom(base),
                };
                let f = ReceivedWord::plant_exact(&psi, target, *seed)?;
                Ok((f, Some(psi)))
            }
            WordSpec::Random { seed } => {
                let mut rng = ChaCha8Rng::seed_from_u64(*seed);
                let table = (0..g.order()?)
                    .map(|_| h.random_element(&mut rng))
                    .collect::<Result<Vec<_>>>()?;
                Ok((ReceivedWord::from_table(g, h, table)?, None))
            }
            WordSpec::Table { values } => {
                let table = values
                    .iter()
                    .map(|v| h.element_from_values(v))
                    .collect::<Result<Vec<_>>>()?;
                Ok((ReceivedWord::from_table(g, h, table)?, None))
            }
        }
    }
}

/// Which decoder `homcode decode` runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DecodeMode {
    /// Shallow-random-generation certificate sampler; emits certificates
    /// only, never touching the codomain.
    SrgCert,
    /// Anchored local decoder for abelian domains.
    Abelian,
    /// Certificate sampling, pruning, and extension end to end.
    Pipeline,
    /// Exhaustive reference decoding by agreement enumeration.
    Oracle,
}

fn default_true() -> bool {
    true
}

fn is_true(b: &bool) -> bool {
    *b
}

fn is_false(b: &bool) -> bool {
    !*b
}

/// Config for `homcode decode` and `homcode cert-decode`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DecodeConfig {
    pub domain: GroupSpec,
    pub codomain: GroupSpec,
    pub word: WordSpec,
    pub mode: DecodeMode,
    /// Agreement margin over the list threshold.
    #[serde(with = "rat_serde")]
    pub eps: Rat,
    /// Failure budget of the randomized stages.
    #[serde(with = "rat_serde")]
    pub eta: Rat,
    /// Maximum agreement of distinct codewords; computed from the group
    /// pair when omitted.
    #[serde(default, skip_serializing_if = "Option::is_none", with = "rat_opt_serde")]
    pub lambda: Option<Rat>,
    pub seed: u64,
    /// Shallow generation parameters `(k, d)` for certificate sampling.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shallow: Option<(u32, u32)>,
    /// Closure-node budget of the extension stage.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub node_budget: Option<u64>,
    /// Whether the pipeline ends with a sampled-agreement prune.
    #[serde(default = "default_true", skip_serializing_if = "is_true")]
    pub final_prune: bool,
    /// Compare the output against the exhaustive reference list.
    #[serde(default, skip_serializing_if = "is_false")]
    pub oracle_compare: bool,
}

/// Config for `homcode homext`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HomextConfig {
    pub domain: GroupSpec,
    pub codomain: GroupSpec,
    /// Partial map as `[point, value]` pairs of element coordinates.
    pub gamma: Vec<(Vec<u64>, Vec<u64>)>,
    /// Density threshold: a verdict of `multiple` certifies that the
    /// subgroup generated by the domain is no denser than this.
    #[serde(default, skip_serializing_if = "Option::is_none", with = "rat_opt_serde")]
    pub lambda: Option<Rat>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub node_budget: Option<u64>,
}

/// Code flavor for the exhaustive reference decoder.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CodeKindArg {
    /// Plain homomorphisms.
    Hom,
    /// Left translates of homomorphisms.
    Ahom,
}

impl CodeKindArg {
    pub fn kind(self) -> CodeKind {
        match self {
            CodeKindArg::Hom => CodeKind::Hom,
            CodeKindArg::Ahom => CodeKind::AHom,
        }
    }
}

/// Agreement cutoff, non-strict or strict.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ThresholdSpec {
    pub cmp: CmpArg,
    #[serde(with = "rat_serde")]
    pub value: Rat,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CmpArg {
    AtLeast,
    Above,
}

impl ThresholdSpec {
    pub fn threshold(&self) -> Threshold {
        match self.cmp {
            CmpArg::AtLeast => Threshold::at_least(self.value.clone()),
            CmpArg::Above => Threshold::above(self.value.clone()),
        }
    }
}

/// Config for `homcode oracle`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OracleConfig {
    pub domain: GroupSpec,
    pub codomain: GroupSpec,
    pub word: WordSpec,
    pub code: CodeKindArg,
    pub threshold: ThresholdSpec,
}

/// Config for `homcode lambda`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LambdaConfig {
    pub domain: GroupSpec,
    pub codomain: GroupSpec,
}

/// Which conjugation family `homcode blowup` builds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BlowupVariant {
    /// Transpositions through an added fixed point; agreement exactly 1/n.
    Point,
    /// All transpositions of the n points; agreement exactly 1/C(n,2).
    Binom,
}

/// Config for `homcode blowup`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BlowupConfig {
    /// Degree of the alternating domain.
    pub n: u32,
    /// Number of codomain blocks.
    pub k: u32,
    pub variant: BlowupVariant,
}

/// Config for `homcode srg-probe`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SrgProbeConfig {
    /// Degree of the alternating group sampled from.
    pub n: u32,
    pub trials: u64,
    /// A trial hits when some orbit of size at least `n - k_check` carries
    /// an induced action that is alternating or symmetric.
    pub k_check: u32,
    pub seed: u64,
}

/// Parses a config file's text. Accepts either a bare config object or a
/// full report; a report's embedded `config` field is extracted, so any
/// report can be re-run as its own config.
pub fn parse_config_text<T: DeserializeOwned>(text: &str) -> Result<T> {
    match serde_json::from_str::<T>(text) {
        Ok(config) => Ok(config),
        Err(direct) => {
            let value: serde_json::Value = serde_json::from_str(text)
                .map_err(|e| Error::invalid(format!("config is not valid JSON: {e}")))?;
            match value.get("config") {
                Some(inner) => serde_json::from_value(inner.clone())
                    .map_err(|e| Error::invalid(format!("bad embedded config: {e}"))),
                None => Err(Error::invalid(format!("bad config: {direct}"))),
            }
        }
    }
}
