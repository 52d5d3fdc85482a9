//! Runners behind the `homcode` subcommands.
//!
//! Each runner takes a config, does the work through the library, and
//! returns a report embedding that config. All counters in reports are
//! read off the word and blackbox instrumentation as deltas across the
//! decode call itself, so setup work (word construction, reference
//! comparisons) never inflates them.

use std::collections::{BTreeMap, BTreeSet};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cli::config::{
    BlowupConfig, BlowupVariant, DecodeConfig, DecodeMode, HomextConfig, LambdaConfig,
    OracleConfig, SrgProbeConfig,
};
use crate::cli::report::{
    AffineHomJson, BlowupReport, CertDecodeReport, CertificateJson, DecodeReport, HomJson,
    HomextReport, LambdaReport, OracleComparison, OracleEntryJson, OracleReport, SrgProbeReport,
};
use crate::decoders::{
    abelian_local_decode, decode_pipeline, prune_certs, srg_cert_decode, srg_tuple_count,
    DecodeParams, FinalPrune,
};
use crate::error::{Error, Result};
use crate::groups::{Group, MAX_ENUM};
use crate::homcore::{
    agreement_homs, lambda_exact, lambda_formula_solvable, make_hom, AffineHom, Homomorphism,
    PartialMap, ReceivedWord,
};
use crate::homext::{affine_subword_extend_budgeted, homext012_budgeted, HOMEXT_NODE_BUDGET};
use crate::oracle::{true_list, CodeKind, Threshold};
use crate::rat::{rat, rat_counts, rat_to_f64, Rat};

/// Largest group order the lambda runner cross-checks by enumeration.
const LAMBDA_CROSS_CHECK_MAX: u64 = 64;

/// Largest codomain order the blowup runner verifies against the
/// exhaustive reference list.
const BLOWUP_ORACLE_MAX: u64 = 400;

/// Trial ceiling of the probe; it exists only to bound runtime.
const PROBE_TRIALS_MAX: u64 = 10_000_000;

/// Maximum agreement of distinct codewords for the pair, preferring an
/// explicit override, then the closed form, then enumeration.
fn lambda_of(g: &Group, h: &Group, explicit: Option<&Rat>) -> Result<Rat> {
    if let Some(l) = explicit {
        return Ok(l.clone());
    }
    match lambda_formula_solvable(g, h) {
        Ok(v) => Ok(v),
        Err(Error::InvalidInput(_)) => lambda_exact(g, h),
        Err(e) => Err(e),
    }
}

pub fn run_lambda(config: &LambdaConfig) -> Result<LambdaReport> {
    let g = Group::from_spec(&config.domain)?;
    let h = Group::from_spec(&config.codomain)?;
    let formula = match lambda_formula_solvable(&g, &h) {
        Ok(v) => Some(v),
        Err(Error::InvalidInput(_)) => None,
        Err(e) => return Err(e),
    };
    let small = g.order()? <= LAMBDA_CROSS_CHECK_MAX && h.order()? <= LAMBDA_CROSS_CHECK_MAX;
    let (lambda, method, cross_check) = match formula {
        Some(v) if small => {
            let exact = lambda_exact(&g, &h)?;
            if exact != v {
                return Err(Error::invalid(
                    "closed-form maximum agreement disagrees with enumeration",
                ));
            }
            (v, "formula", "exact")
        }
        Some(v) => (v, "formula", "skipped"),
        None => (lambda_exact(&g, &h)?, "exact", "skipped"),
    };
    Ok(LambdaReport {
        config: config.clone(),
        lambda,
        method,
        cross_check,
    })
}

/// Output-versus-reference comparison at the non-strict threshold λ+ε.
fn oracle_comparison(
    f: &ReceivedWord,
    output: &[AffineHom],
    threshold: Rat,
) -> Result<OracleComparison> {
    let reference = true_list(CodeKind::AHom, f, Threshold::at_least(threshold))?.codewords();
    let output_set: BTreeSet<&AffineHom> = output.iter().collect();
    let superset = reference.iter().all(|c| output_set.contains(c));
    Ok(OracleComparison {
        true_list: reference.len(),
        superset,
        equal: superset && output.len() == reference.len(),
    })
}

pub fn run_decode(config: &DecodeConfig) -> Result<DecodeReport> {
    let g = Group::from_spec(&config.domain)?;
    let h = Group::from_spec(&config.codomain)?;
    match config.mode {
        DecodeMode::SrgCert => Err(Error::invalid(
            "mode srg-cert produces certificates, not codewords; run cert-decode",
        )),
        DecodeMode::Abelian => run_decode_abelian(config, &g, &h),
        DecodeMode::Pipeline => run_decode_pipeline(config, &g, &h),
        DecodeMode::Oracle => run_decode_oracle(config, &g, &h),
    }
}

fn run_decode_abelian(config: &DecodeConfig, g: &Group, h: &Group) -> Result<DecodeReport> {
    let (f, _) = config.word.build(g, h)?;
    let outcome = abelian_local_decode(&f, &config.eps, config.seed)?;
    let oracle = if config.oracle_compare {
        let lambda = lambda_of(g, h, config.lambda.as_ref())?;
        Some(oracle_comparison(
            &f,
            &outcome.output,
            &lambda + &config.eps,
        )?)
    } else {
        None
    };
    Ok(DecodeReport {
        config: config.clone(),
        output: outcome.output.iter().map(AffineHomJson::of).collect(),
        queries: outcome.queries,
        codomain_ops: outcome.codomain_ops,
        trials: outcome.anchors,
        certificates: None,
        kept: None,
        extension_budget_failures: None,
        anchors: Some(outcome.anchors),
        pool_overflows: Some(outcome.pool_overflows),
        oracle,
    })
}

fn run_decode_pipeline(config: &DecodeConfig, g: &Group, h: &Group) -> Result<DecodeReport> {
    let (k, d) = config
        .shallow
        .ok_or_else(|| Error::invalid("pipeline mode needs shallow generation parameters"))?;
    let lambda = lambda_of(g, h, config.lambda.as_ref())?;
    let h_bb = Group::blackbox(h.clone());
    let (f, _) = config.word.build(g, &h_bb)?;
    let params = DecodeParams::new(config.eps.clone(), config.eta.clone())
        .with_shallow(k, d)
        .with_seed(config.seed);
    let budget = config.node_budget.unwrap_or(HOMEXT_NODE_BUDGET);
    let final_prune = config.final_prune.then(|| FinalPrune {
        eta_prime: rat(1, 64),
        seed: config.seed.wrapping_add(1),
    });
    let ops_before = h_bb.ops_count();
    let outcome = decode_pipeline(
        |w| srg_cert_decode(w, &params),
        |gamma| affine_subword_extend_budgeted(g, &h_bb, gamma, budget),
        &f,
        &config.eps,
        &lambda,
        final_prune,
    )?;
    let codomain_ops = h_bb.ops_count() - ops_before;
    let oracle = if config.oracle_compare {
        Some(oracle_comparison(
            &f,
            &outcome.output,
            &lambda + &config.eps,
        )?)
    } else {
        None
    };
    Ok(DecodeReport {
        config: config.clone(),
        output: outcome.output.iter().map(AffineHomJson::of).collect(),
        queries: outcome.queries,
        codomain_ops,
        trials: srg_tuple_count(&config.eps, &config.eta, k + d + 1)?,
        certificates: Some(outcome.certificates),
        kept: Some(outcome.kept),
        extension_budget_failures: Some(outcome.extension_budget_failures),
        anchors: None,
        pool_overflows: None,
        oracle,
    })
}

fn run_decode_oracle(config: &DecodeConfig, g: &Group, h: &Group) -> Result<DecodeReport> {
    let lambda = lambda_of(g, h, config.lambda.as_ref())?;
    let h_bb = Group::blackbox(h.clone());
    let (f, _) = config.word.build(g, &h_bb)?;
    let queries_before = f.queries();
    let ops_before = h_bb.ops_count();
    let list = true_list(
        CodeKind::AHom,
        &f,
        Threshold::at_least(&lambda + &config.eps),
    )?;
    Ok(DecodeReport {
        config: config.clone(),
        output: list.codewords().iter().map(AffineHomJson::of).collect(),
        queries: f.queries() - queries_before,
        codomain_ops: h_bb.ops_count() - ops_before,
        trials: 0,
        certificates: None,
        kept: None,
        extension_budget_failures: None,
        anchors: None,
        pool_overflows: None,
        oracle: None,
    })
}

pub fn run_cert_decode(config: &DecodeConfig) -> Result<CertDecodeReport> {
    if config.mode != DecodeMode::SrgCert {
        return Err(Error::invalid("cert-decode needs mode srg-cert"));
    }
    let (k, d) = config
        .shallow
        .ok_or_else(|| Error::invalid("certificate sampling needs shallow generation parameters"))?;
    let g = Group::from_spec(&config.domain)?;
    let h = Group::from_spec(&config.codomain)?;
    let h_bb = Group::blackbox(h);
    let (f, _) = config.word.build(&g, &h_bb)?;
    let params = DecodeParams::new(config.eps.clone(), config.eta.clone())
        .with_shallow(k, d)
        .with_seed(config.seed);
    let queries_before = f.queries();
    let ops_before = h_bb.ops_count();
    let certs = srg_cert_decode(&f, &params)?;
    let certs = match &config.lambda {
        Some(l) => prune_certs(&g, &certs, l)?,
        None => certs,
    };
    Ok(CertDecodeReport {
        config: config.clone(),
        certificates: certs
            .entries()
            .iter()
            .map(|(gamma, run)| CertificateJson::of(gamma, *run))
            .collect(),
        trials: srg_tuple_count(&config.eps, &config.eta, k + d + 1)?,
        queries: f.queries() - queries_before,
        codomain_ops: h_bb.ops_count() - ops_before,
    })
}

pub fn run_homext(config: &HomextConfig) -> Result<HomextReport> {
    let g = Group::from_spec(&config.domain)?;
    let h = Group::from_spec(&config.codomain)?;
    let pairs = config
        .gamma
        .iter()
        .map(|(d, v)| Ok((g.element_from_values(d)?, h.element_from_values(v)?)))
        .collect::<Result<Vec<_>>>()?;
    let gamma = PartialMap::from_pairs(pairs)?;
    let budget = config.node_budget.unwrap_or(HOMEXT_NODE_BUDGET);
    let verdict = homext012_budgeted(&g, &h, &gamma, config.lambda.as_ref(), budget)?;
    let tag = verdict.tag();
    let (extension, second_witness, lambda_lower_bound) = match verdict {
        crate::homext::ExtensionVerdict::None => (None, None, None),
        crate::homext::ExtensionVerdict::Unique(phi) => (Some(HomJson::of(&phi)), None, None),
        crate::homext::ExtensionVerdict::Multiple {
            witnesses,
            lambda_lower_bound,
        } => (
            Some(HomJson::of(&witnesses.0)),
            Some(HomJson::of(&witnesses.1)),
            Some(lambda_lower_bound),
        ),
    };
    Ok(HomextReport {
        config: config.clone(),
        verdict: tag,
        extension,
        second_witness,
        lambda_lower_bound,
    })
}

pub fn run_oracle(config: &OracleConfig) -> Result<OracleReport> {
    let g = Group::from_spec(&config.domain)?;
    let h = Group::from_spec(&config.codomain)?;
    let h_bb = Group::blackbox(h);
    let (f, _) = config.word.build(&g, &h_bb)?;
    let queries_before = f.queries();
    let list = true_list(config.code.kind(), &f, config.threshold.threshold())?;
    let entries = list
        .entries()
        .iter()
        .map(|(psi, agr)| OracleEntryJson {
            translation: psi.translation().as_values(),
            images: psi.base().images().iter().map(|e| e.as_values()).collect(),
            agreement: agr.clone(),
        })
        .collect();
    Ok(OracleReport {
        config: config.clone(),
        entries,
        queries: f.queries() - queries_before,
    })
}

/// The codomain of the blowup family: k disjoint blocks, each carrying the
/// alternating group on m points.
fn block_product_alternating(m: usize, k: usize) -> Result<Group> {
    let base = Group::alternating(m)?;
    let degree = m * k;
    let mut gens = Vec::new();
    for block in 0..k {
        for x in base.generators() {
            let vals = x.as_values();
            let mut p: Vec<u16> = (0..degree as u16).collect();
            for (i, &v) in vals.iter().enumerate() {
                p[block * m + i] = (block * m + v as usize) as u16;
            }
            gens.push(p);
        }
    }
    Group::perm(degree, gens)
}

/// φ(x) per block: x itself, extended to m points and conjugated by the
/// transposition on the blocks the mask selects. Conjugating an even
/// permutation by a transposition stays even, so every block lands in the
/// alternating block subgroup.
fn block_image(
    h: &Group,
    x_vals: &[u64],
    m: usize,
    k: usize,
    tau: Option<&[usize]>,
    mask: u32,
) -> Result<crate::groups::Element> {
    let mut xhat: Vec<usize> = (0..m).collect();
    for (i, &v) in x_vals.iter().enumerate() {
        xhat[i] = v as usize;
    }
    let conj: Vec<usize> = match tau {
        Some(t) => (0..m).map(|p| t[xhat[t[p]]]).collect(),
        None => xhat.clone(),
    };
    let mut out = vec![0u64; m * k];
    for block in 0..k {
        let use_conj = tau.is_some() && (mask >> block) & 1 == 1;
        let src = if use_conj { &conj } else { &xhat };
        for p in 0..m {
            out[block * m + p] = (block * m + src[p]) as u64;
        }
    }
    h.element_from_values(&out)
}

pub fn run_blowup(config: &BlowupConfig) -> Result<BlowupReport> {
    let n = config.n as usize;
    let k = config.k as usize;
    if !(3..=8).contains(&n) {
        return Err(Error::invalid("blowup needs a degree between 3 and 8"));
    }
    let (m, transpositions): (usize, Vec<(usize, usize)>) = match config.variant {
        BlowupVariant::Binom => {
            let mut t = Vec::new();
            for a in 0..n {
                for b in a + 1..n {
                    t.push((a, b));
                }
            }
            (n, t)
        }
        BlowupVariant::Point => (n + 1, (0..n).map(|j| (j, n)).collect()),
    };
    let agreement = rat_counts(1, transpositions.len() as u64);
    if k == 0 {
        return Ok(BlowupReport {
            config: config.clone(),
            count: 0,
            expected: 0,
            agreement,
            all_agreements_exact: true,
            distinct: true,
            oracle_checked: false,
            oracle_contains_all: None,
        });
    }
    if k > 3 {
        return Err(Error::budget("blowup verification is sized for k <= 3"));
    }
    let half_fact: u64 = (1..=m as u64).product::<u64>() / 2;
    let codomain_order = half_fact.saturating_pow(k as u32);
    if codomain_order > MAX_ENUM {
        return Err(Error::budget(format!(
            "blowup codomain order {codomain_order} exceeds the enumeration cap of {MAX_ENUM}"
        )));
    }
    let expected = (transpositions.len() as u64) * ((1u64 << k) - 1);
    let g = Group::alternating(n)?;
    let h = block_product_alternating(m, k)?;
    let gen_values: Vec<Vec<u64>> = g.generators().iter().map(|x| x.as_values()).collect();
    let diagonal_images = gen_values
        .iter()
        .map(|vals| block_image(&h, vals, m, k, None, 0))
        .collect::<Result<Vec<_>>>()?;
    let diagonal = make_hom(&g, &h, diagonal_images)?;

    let mut family: BTreeSet<Homomorphism> = BTreeSet::new();
    let mut all_agreements_exact = true;
    for &(a, b) in &transpositions {
        let mut tau: Vec<usize> = (0..m).collect();
        tau.swap(a, b);
        for mask in 1u32..(1 << k) {
            let images = gen_values
                .iter()
                .map(|vals| block_image(&h, vals, m, k, Some(&tau), mask))
                .collect::<Result<Vec<_>>>()?;
            let phi = make_hom(&g, &h, images)?;
            if agreement_homs(&diagonal, &phi)? != agreement {
                all_agreements_exact = false;
            }
            family.insert(phi);
        }
    }
    let count = family.len() as u64;
    let oracle_checked = codomain_order <= BLOWUP_ORACLE_MAX;
    let oracle_contains_all = if oracle_checked {
        let table = diagonal.value_table()?.to_vec();
        let f = ReceivedWord::from_table(&g, &h, table)?;
        let reference: BTreeSet<AffineHom> =
            true_list(CodeKind::Hom, &f, Threshold::at_least(agreement.clone()))?
                .codewords()
                .into_iter()
                .collect();
        Some(
            family
                .iter()
                .all(|phi| reference.contains(&AffineHom::from_hom(phi.clone()))),
        )
    } else {
        None
    };
    Ok(BlowupReport {
        config: config.clone(),
        count,
        expected,
        agreement,
        all_agreements_exact,
        distinct: count == expected,
        oracle_checked,
        oracle_contains_all,
    })
}

fn factorial(r: usize) -> u64 {
    (1..=r as u64).product()
}

/// Whether some orbit of `<pi, sigma>` of size at least `n - k_check`
/// carries an induced action that is the full alternating or symmetric
/// group on the orbit.
fn large_on_big_orbit(n: usize, pi: &[u64], sigma: &[u64], k_check: usize) -> Result<bool> {
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut parent: Vec<usize> = (0..n).collect();
    for p in 0..n {
        for q in [pi[p] as usize, sigma[p] as usize] {
            let (a, b) = (find(&mut parent, p), find(&mut parent, q));
            if a != b {
                parent[a] = b;
            }
        }
    }
    let mut orbits: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for p in 0..n {
        orbits.entry(find(&mut parent, p)).or_default().push(p);
    }
    let min_size = n.saturating_sub(k_check).max(1);
    for orbit in orbits.values().filter(|o| o.len() >= min_size) {
        let r = orbit.len();
        if r == 1 {
            return Ok(true);
        }
        let mut pos = vec![usize::MAX; n];
        for (i, &p) in orbit.iter().enumerate() {
            pos[p] = i;
        }
        let pi_induced: Vec<u16> = orbit.iter().map(|&p| pos[pi[p] as usize] as u16).collect();
        let sigma_induced: Vec<u16> = orbit
            .iter()
            .map(|&p| pos[sigma[p] as usize] as u16)
            .collect();
        let induced = Group::perm(r, vec![pi_induced, sigma_induced])?;
        if induced.order()? * 2 >= factorial(r) {
            return Ok(true);
        }
    }
    Ok(false)
}

pub fn run_srg_probe(config: &SrgProbeConfig) -> Result<SrgProbeReport> {
    let n = config.n as usize;
    if !(3..=8).contains(&n) {
        return Err(Error::invalid("probe needs a degree between 3 and 8"));
    }
    if config.trials == 0 {
        return Err(Error::invalid("probe needs at least one trial"));
    }
    if config.trials > PROBE_TRIALS_MAX {
        return Err(Error::budget(format!(
            "probe is sized for at most {PROBE_TRIALS_MAX} trials"
        )));
    }
    let g = Group::alternating(n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut hits = 0u64;
    for _ in 0..config.trials {
        let pi = g.random_element(&mut rng)?.as_values();
        let sigma = g.random_element(&mut rng)?.as_values();
        if large_on_big_orbit(n, &pi, &sigma, config.k_check as usize)? {
            hits += 1;
        }
    }
    let frequency = rat_counts(hits, config.trials);
    let frequency_approx = rat_to_f64(&frequency);
    Ok(SrgProbeReport {
        config: config.clone(),
        hits,
        frequency,
        frequency_approx,
    })
}
