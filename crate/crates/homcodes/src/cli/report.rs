//! JSON reports emitted by the `homcode` binary.
//!
//! Each report embeds the effective config that produced it, so a report
//! file doubles as a config file for an identical re-run. Elements appear
//! as coordinate arrays and rationals as exact `p/q` strings; counters are
//! read off the query and operation instrumentation, never estimated.

use serde::Serialize;

use crate::cli::config::{
    BlowupConfig, DecodeConfig, HomextConfig, LambdaConfig, OracleConfig, SrgProbeConfig,
};
use crate::homcore::{AffineHom, Homomorphism, PartialMap};
use crate::rat::{rat_opt_serde, rat_serde, Rat};

/// A homomorphism as its generator images.
#[derive(Debug, Clone, Serialize)]
pub struct HomJson {
    pub images: Vec<Vec<u64>>,
}

impl HomJson {
    pub fn of(phi: &Homomorphism) -> HomJson {
        HomJson {
            images: phi.images().iter().map(|e| e.as_values()).collect(),
        }
    }
}

/// An affine homomorphism as its translation and generator images.
#[derive(Debug, Clone, Serialize)]
pub struct AffineHomJson {
    pub translation: Vec<u64>,
    pub images: Vec<Vec<u64>>,
}

impl AffineHomJson {
    pub fn of(psi: &AffineHom) -> AffineHomJson {
        AffineHomJson {
            translation: psi.translation().as_values(),
            images: psi.base().images().iter().map(|e| e.as_values()).collect(),
        }
    }
}

/// A certificate: sampled point-value pairs plus the index of the sampling
/// run that produced it.
#[derive(Debug, Clone, Serialize)]
pub struct CertificateJson {
    pub run: usize,
    pub pairs: Vec<(Vec<u64>, Vec<u64>)>,
}

impl CertificateJson {
    pub fn of(gamma: &PartialMap, run: usize) -> CertificateJson {
        CertificateJson {
            run,
            pairs: gamma
                .pairs()
                .iter()
                .map(|(d, v)| (d.as_values(), v.as_values()))
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct LambdaReport {
    pub config: LambdaConfig,
    /// Maximum agreement of distinct affine codewords.
    #[serde(with = "rat_serde")]
    pub lambda: Rat,
    /// `formula` when the closed form applied, else `exact`.
    pub method: &'static str,
    /// `exact` when the closed form was checked against enumeration.
    pub cross_check: &'static str,
}

/// Comparison of a decoder's output against the exhaustive reference list.
#[derive(Debug, Clone, Serialize)]
pub struct OracleComparison {
    /// Size of the reference list at the same threshold.
    pub true_list: usize,
    /// Whether the output contains the whole reference list.
    pub superset: bool,
    /// Whether the two lists coincide.
    pub equal: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct DecodeReport {
    pub config: DecodeConfig,
    pub output: Vec<AffineHomJson>,
    /// Counted word queries consumed by the run.
    pub queries: u64,
    /// Counted codomain group operations consumed by the run.
    pub codomain_ops: u64,
    /// Randomized repetitions: sampled tuples, anchor draws, or zero for
    /// the deterministic reference decoder.
    pub trials: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificates: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kept: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub extension_budget_failures: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub anchors: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pool_overflows: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleComparison>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CertDecodeReport {
    pub config: DecodeConfig,
    pub certificates: Vec<CertificateJson>,
    /// Tuples sampled; certificates carry their run index, so a pruned
    /// report still shows which runs survived.
    pub trials: u64,
    pub queries: u64,
    pub codomain_ops: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct HomextReport {
    pub config: HomextConfig,
    /// `none`, `unique`, or `multiple`.
    pub verdict: &'static str,
    /// The extension when unique; one witness when multiple.
    pub extension: Option<HomJson>,
    /// A second, distinct witness when multiple.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub second_witness: Option<HomJson>,
    /// Density of the subgroup generated by the partial map's domain;
    /// present exactly when the verdict is `multiple`.
    #[serde(with = "rat_opt_serde")]
    pub lambda_lower_bound: Option<Rat>,
}

#[derive(Debug, Clone, Serialize)]
pub struct OracleEntryJson {
    pub translation: Vec<u64>,
    pub images: Vec<Vec<u64>>,
    /// Exact agreement with the received word.
    #[serde(with = "rat_serde")]
    pub agreement: Rat,
}

#[derive(Debug, Clone, Serialize)]
pub struct OracleReport {
    pub config: OracleConfig,
    pub entries: Vec<OracleEntryJson>,
    pub queries: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct BlowupReport {
    pub config: BlowupConfig,
    /// Distinct conjugation codewords found.
    pub count: u64,
    /// The closed-form count for these parameters.
    pub expected: u64,
    /// Agreement every family member must attain with the diagonal.
    #[serde(with = "rat_serde")]
    pub agreement: Rat,
    /// Whether every member hit that agreement exactly.
    pub all_agreements_exact: bool,
    /// Whether no two members coincided.
    pub distinct: bool,
    /// Whether the family was checked against exhaustive enumeration.
    pub oracle_checked: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle_contains_all: Option<bool>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SrgProbeReport {
    pub config: SrgProbeConfig,
    pub hits: u64,
    /// Exact hit fraction.
    #[serde(with = "rat_serde")]
    pub frequency: Rat,
    /// The same fraction as a float, for eyeballing.
    pub frequency_approx: f64,
}
