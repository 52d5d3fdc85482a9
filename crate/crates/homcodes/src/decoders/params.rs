//! Decoder parameters, certificate lists, and sample-size formulas.

use crate::error::{Error, Result};
use crate::homcore::PartialMap;
use crate::homext::HOMEXT_NODE_BUDGET;
use crate::rat::{rat_to_f64, Rat};

/// Knobs shared by the statistical decoders. `eps` is the agreement margin
/// above the code's distinguishing agreement, `eta` the failure budget of
/// the stage the parameters drive. Both must lie strictly between 0 and 1.
#[derive(Debug, Clone)]
pub struct DecodeParams {
    pub eps: Rat,
    pub eta: Rat,
    /// Known lower bound on the distinguishing agreement, when the caller
    /// has one; decoders that need it treat a missing bound as zero.
    pub lambda: Option<Rat>,
    /// Seed for every internal random draw; one seed fixes the whole run.
    pub seed: u64,
    /// Shallow-generation parameters (k, d) for the tuple sampler.
    pub shallow: Option<(u32, u32)>,
    /// Node budget for extension searches run on the decoder's behalf.
    pub node_budget: u64,
}

impl DecodeParams {
    pub fn new(eps: Rat, eta: Rat) -> DecodeParams {
        DecodeParams {
            eps,
            eta,
            lambda: None,
            seed: 0,
            shallow: None,
            node_budget: HOMEXT_NODE_BUDGET,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> DecodeParams {
        self.seed = seed;
        self
    }

    pub fn with_lambda(mut self, lambda: Rat) -> DecodeParams {
        self.lambda = Some(lambda);
        self
    }

    pub fn with_shallow(mut self, k: u32, d: u32) -> DecodeParams {
        self.shallow = Some((k, d));
        self
    }

    pub fn with_node_budget(mut self, budget: u64) -> DecodeParams {
        self.node_budget = budget;
        self
    }

    /// The known agreement bound, zero when none was given.
    pub fn lambda_or_zero(&self) -> Rat {
        self.lambda.clone().unwrap_or_else(|| Rat::from_integer(0.into()))
    }

    pub fn validate(&self) -> Result<()> {
        check_unit_open("eps", &self.eps)?;
        check_unit_open("eta", &self.eta)?;
        if let Some(l) = &self.lambda {
            let zero = Rat::from_integer(0.into());
            let one = Rat::from_integer(1.into());
            if *l < zero || *l >= one {
                return Err(Error::invalid("lambda must lie in [0, 1)"));
            }
        }
        Ok(())
    }
}

pub(crate) fn check_unit_open(name: &str, v: &Rat) -> Result<()> {
    let zero = Rat::from_integer(0.into());
    let one = Rat::from_integer(1.into());
    if *v <= zero || *v >= one {
        return Err(Error::invalid(format!("{name} must lie strictly between 0 and 1")));
    }
    Ok(())
}

/// Partial maps produced by a certificate decoder, each tagged with the
/// index of the sampled tuple it came from. The list may contain
/// redundancies and maps that certify nothing; pruning and extension sort
/// that out later.
#[derive(Debug, Clone, Default)]
pub struct CertificateList {
    entries: Vec<(PartialMap, usize)>,
}

impl CertificateList {
    pub fn new(entries: Vec<(PartialMap, usize)>) -> CertificateList {
        CertificateList { entries }
    }

    pub fn entries(&self) -> &[(PartialMap, usize)] {
        &self.entries
    }

    pub fn maps(&self) -> impl Iterator<Item = &PartialMap> {
        self.entries.iter().map(|(m, _)| m)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

// ---------------------------------------------------------------------
// Sample-size formulas
//
// Every count is the exact ceiling of its defining expression, evaluated
// in f64; the expressions are far from integer boundaries at every
// parameter point the crate uses, and tests freeze the values.
// ---------------------------------------------------------------------

/// Hard cap on any single sampling plan; larger plans are refused rather
/// than silently attempted.
pub const SAMPLE_PLAN_MAX: u64 = 50_000_000;

fn ceil_count(value: f64, what: &str) -> Result<u64> {
    if !value.is_finite() || value < 0.0 {
        return Err(Error::invalid(format!("{what} formula left its range")));
    }
    let n = value.ceil() as u64;
    if n > SAMPLE_PLAN_MAX {
        return Err(Error::budget(format!(
            "{what} needs {n} samples, more than the plan cap {SAMPLE_PLAN_MAX}"
        )));
    }
    Ok(n.max(1))
}

/// Number of b-tuples the certificate sampler draws, on raw floats:
/// ⌈(1/x)·ln(1/(η·x))⌉ with x = ε^b. The float form exists because the
/// formula is meaningful at irrational points (x = 1/2, η = 1/e).
pub fn srg_tuple_count_raw(eps_pow_b: f64, eta: f64) -> Result<u64> {
    if !(eps_pow_b > 0.0 && eps_pow_b <= 1.0) {
        return Err(Error::invalid("eps^b must lie in (0, 1]"));
    }
    if !(eta > 0.0 && eta < 1.0) {
        return Err(Error::invalid("eta must lie strictly between 0 and 1"));
    }
    ceil_count((1.0 / eps_pow_b) * -(eta * eps_pow_b).ln(), "tuple sampling")
}

/// Number of b-tuples for rational ε and η: ⌈(1/ε^b)·ln(1/(η·ε^b))⌉.
pub fn srg_tuple_count(eps: &Rat, eta: &Rat, b: u32) -> Result<u64> {
    check_unit_open("eps", eps)?;
    check_unit_open("eta", eta)?;
    srg_tuple_count_raw(rat_to_f64(eps).powi(b as i32), rat_to_f64(eta))
}

/// Indices a mean-list wrapper samples: ⌈(4/(3δ))·(ln ℓ + ln(1/(ηδ)))⌉,
/// where ℓ is an upper bound on the base decoder's list size.
pub fn mean_sample_count(delta: &Rat, ell_bound: f64, eta: &Rat) -> Result<u64> {
    check_unit_open("delta", delta)?;
    check_unit_open("eta", eta)?;
    if ell_bound < 1.0 {
        return Err(Error::invalid("list-size bound must be at least 1"));
    }
    let d = rat_to_f64(delta);
    let e = rat_to_f64(eta);
    ceil_count(4.0 / (3.0 * d) * (ell_bound.ln() - (e * d).ln()), "index sampling")
}

/// Anchors the affine reduction samples: ⌈(4/(3λ))·(ln ℓ + ln(1/(ηλ)))⌉,
/// with λ the agreement threshold of the affine list being covered.
pub fn anchor_sample_count(lambda: &Rat, ell_bound: f64, eta: &Rat) -> Result<u64> {
    let zero = Rat::from_integer(0.into());
    let one = Rat::from_integer(1.into());
    if *lambda <= zero || *lambda > one {
        return Err(Error::invalid("agreement threshold must lie in (0, 1]"));
    }
    check_unit_open("eta", eta)?;
    if ell_bound < 1.0 {
        return Err(Error::invalid("list-size bound must be at least 1"));
    }
    let l = rat_to_f64(lambda);
    let e = rat_to_f64(eta);
    ceil_count(4.0 / (3.0 * l) * (ell_bound.ln() - (e * l).ln()), "anchor sampling")
}

/// Points an agreement estimate samples: ⌈(2/ε²)·ln(2/η′)⌉, giving an
/// estimate within ε/2 of the exact agreement with probability ≥ 1−η′.
pub fn agreement_sample_count(eps: &Rat, eta_prime: &Rat) -> Result<u64> {
    check_unit_open("eps", eps)?;
    check_unit_open("eta", eta_prime)?;
    let e = rat_to_f64(eps);
    let h = rat_to_f64(eta_prime);
    ceil_count(2.0 / (e * e) * (2.0 / h).ln(), "agreement estimation")
}
