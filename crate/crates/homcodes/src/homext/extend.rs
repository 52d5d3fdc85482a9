//! Extension of partial maps to homomorphisms.
//!
//! A partial map γ: G ⇀ H prescribes images for finitely many domain
//! elements. Extension runs in two steps. Step (a): propagate the
//! prescribed values over the Cayley graph of M = ⟨dom γ⟩; the extension
//! of γ to M is unique when it exists, and one pass over a closure table
//! decides existence. Step (b): complete M to the whole group by at most
//! [`MAX_COMPLETION_GENERATORS`] canonically chosen extra elements and
//! search their images depth first, pruning every branch whose partial
//! closure table is already inconsistent.

use std::collections::{BTreeMap, VecDeque};

use crate::error::{Error, Result};
use crate::groups::{Element, Group};
use crate::homcore::{make_hom, AffineHom, Homomorphism, PartialMap};
use crate::rat::{rat_counts, rat_int, Rat};

/// Most elements the completion step may add on top of ⟨dom γ⟩ before the
/// search gives up with a budget error.
pub const MAX_COMPLETION_GENERATORS: usize = 3;

/// Default cap on partial closure tables built during one search.
pub const HOMEXT_NODE_BUDGET: u64 = 100_000;

/// Outcome of exact extension classification.
#[derive(Debug, Clone)]
pub enum ExtensionVerdict {
    /// No homomorphism extends the partial map.
    None,
    /// Exactly one homomorphism extends the partial map; here it is.
    Unique(Homomorphism),
    /// At least two extensions exist. Two distinct witnesses are attached.
    /// They agree on M = ⟨dom γ⟩, so μ(M) is a certified lower bound for
    /// the maximum pairwise agreement Λ of the code; that density is
    /// attached as well.
    Multiple {
        witnesses: (Homomorphism, Homomorphism),
        lambda_lower_bound: Rat,
    },
}

impl ExtensionVerdict {
    /// Tag string used by reports.
    pub fn tag(&self) -> &'static str {
        match self {
            ExtensionVerdict::None => "none",
            ExtensionVerdict::Unique(_) => "unique",
            ExtensionVerdict::Multiple { .. } => "multiple",
        }
    }
}

/// Propagate seed values over the Cayley graph of M = ⟨seed domains⟩.
///
/// Returns the table of the unique homomorphism M → H compatible with the
/// seeds, or `None` when no such homomorphism exists. Every edge (m, s) is
/// examined exactly once, so a returned table satisfies
/// table[m·s] = table[m]·table[s] for all m ∈ M and all seeds s, which
/// forces multiplicativity on all of M.
fn closure_table(
    g: &Group,
    h: &Group,
    seeds: &[(Element, Element)],
) -> Option<BTreeMap<Element, Element>> {
    let mut table = BTreeMap::new();
    table.insert(g.identity(), h.identity());
    let mut queue = VecDeque::from([g.identity()]);
    while let Some(m) = queue.pop_front() {
        let vm = table.get(&m).expect("queued elements are mapped").clone();
        for (s, vs) in seeds {
            let ms = g.mul(&m, s);
            let vms = h.mul(&vm, vs);
            match table.get(&ms) {
                Some(existing) => {
                    if !h.eq_elems(existing, &vms) {
                        return None;
                    }
                }
                None => {
                    table.insert(ms.clone(), vms);
                    queue.push_back(ms);
                }
            }
        }
    }
    Some(table)
}

/// Greedy completion of the subgroup `m` to the whole group: repeatedly
/// append the first element in canonical order that lies outside the
/// current closure. Errors when more than [`MAX_COMPLETION_GENERATORS`]
/// additions would be needed.
fn canonical_completion(g: &Group, m: &[Element]) -> Result<Vec<Element>> {
    let order = g.order()?;
    let mut gens = g.small_generating_set(m)?;
    let mut closure: Vec<Element> = m.to_vec();
    let mut extra = Vec::new();
    while (closure.len() as u64) < order {
        if extra.len() == MAX_COMPLETION_GENERATORS {
            return Err(Error::budget(format!(
                "completing the domain subgroup to the whole group needs more \
                 than {MAX_COMPLETION_GENERATORS} extra generators"
            )));
        }
        let next = g
            .iter_elements()?
            .find(|e| closure.binary_search(e).is_err())
            .expect("closure is smaller than the group");
        gens.push(next.clone());
        extra.push(next);
        closure = g.subgroup_closure(&gens)?;
    }
    Ok(extra)
}

/// Depth-first branch of the extension search. The seeds for levels below
/// `level` are already verified consistent and `table` is their closure
/// table. Appends full extensions to `found` in canonical order until
/// `limit` of them are collected.
#[allow(clippy::too_many_arguments)]
fn descend(
    g: &Group,
    h: &Group,
    seeds: &mut Vec<(Element, Element)>,
    table: BTreeMap<Element, Element>,
    completion: &[Element],
    candidates: &[Vec<Element>],
    level: usize,
    limit: usize,
    node_budget: u64,
    nodes: &mut u64,
    found: &mut Vec<Homomorphism>,
) -> Result<()> {
    if level == completion.len() {
        // The seeds generate the whole group here, so the table is a full,
        // verified value assignment; read off the generator images.
        let images = g
            .generators()
            .iter()
            .map(|x| table.get(x).expect("closure covers the group").clone())
            .collect();
        found.push(make_hom(g, h, images)?);
        return Ok(());
    }
    for img in &candidates[level] {
        *nodes += 1;
        if *nodes > node_budget {
            return Err(Error::budget(
                "extension search exceeded its closure-table budget",
            ));
        }
        seeds.push((completion[level].clone(), img.clone()));
        if let Some(next) = closure_table(g, h, seeds) {
            descend(
                g, h, seeds, next, completion, candidates,
                level + 1, limit, node_budget, nodes, found,
            )?;
        }
        seeds.pop();
        if found.len() >= limit {
            return Ok(());
        }
    }
    Ok(())
}

/// Collect up to `limit` homomorphisms extending `gamma`, in canonical
/// order: completion generators take images in canonical element order,
/// with earlier generators varying slowest. Distinct image assignments
/// give distinct extensions and every extension arises from exactly one
/// assignment, so collecting two of them certifies "multiple".
fn extensions_up_to(
    g: &Group,
    h: &Group,
    gamma: &PartialMap,
    limit: usize,
    node_budget: u64,
) -> Result<Vec<Homomorphism>> {
    for (d, v) in gamma.pairs() {
        g.check_element(d)?;
        h.check_element(v)?;
    }
    let mut nodes = 1u64;
    if nodes > node_budget {
        return Err(Error::budget(
            "extension search exceeded its closure-table budget",
        ));
    }
    let mut seeds: Vec<(Element, Element)> = gamma.pairs().to_vec();
    // Step (a): the unique candidate on M = ⟨dom γ⟩, if any.
    let Some(m_table) = closure_table(g, h, &seeds) else {
        return Ok(Vec::new());
    };
    let m: Vec<Element> = m_table.keys().cloned().collect();
    // Step (b): complete M to G and search images of the completion.
    let completion = canonical_completion(g, &m)?;
    let mut candidates = Vec::with_capacity(completion.len());
    for c in &completion {
        let oc = g.element_order(c)?;
        let mut cands = Vec::new();
        for x in h.iter_elements()? {
            // the image's order must divide the preimage's order
            if oc % h.element_order(&x)? == 0 {
                cands.push(x);
            }
        }
        candidates.push(cands);
    }
    let mut found = Vec::new();
    descend(
        g, h, &mut seeds, m_table, &completion, &candidates,
        0, limit, node_budget, &mut nodes, &mut found,
    )?;
    Ok(found)
}

/// Search for a homomorphism G → H extending the partial map, returning
/// the first one in canonical order or `None` when no extension exists.
/// A budget error is a distinct third outcome and never means "none".
pub fn homext_search(g: &Group, h: &Group, gamma: &PartialMap) -> Result<Option<Homomorphism>> {
    homext_search_budgeted(g, h, gamma, HOMEXT_NODE_BUDGET)
}

/// [`homext_search`] with an explicit cap on closure tables built.
pub fn homext_search_budgeted(
    g: &Group,
    h: &Group,
    gamma: &PartialMap,
    node_budget: u64,
) -> Result<Option<Homomorphism>> {
    Ok(extensions_up_to(g, h, gamma, 1, node_budget)?.into_iter().next())
}

/// Classify the extensions of a partial map: none, unique (returning the
/// extension), or multiple (returning two witnesses and the certified
/// lower bound μ(⟨dom γ⟩) for the maximum pairwise agreement Λ).
///
/// The optional threshold only weakens the caller's entitlement: with a
/// threshold λ, answers are promised only for maps whose domain generates
/// a subgroup of density above λ. Classification here is exact on every
/// input regardless, so the threshold is merely validated.
pub fn homext012(
    g: &Group,
    h: &Group,
    gamma: &PartialMap,
    lambda: Option<&Rat>,
) -> Result<ExtensionVerdict> {
    homext012_budgeted(g, h, gamma, lambda, HOMEXT_NODE_BUDGET)
}

/// [`homext012`] with an explicit cap on closure tables built.
pub fn homext012_budgeted(
    g: &Group,
    h: &Group,
    gamma: &PartialMap,
    lambda: Option<&Rat>,
    node_budget: u64,
) -> Result<ExtensionVerdict> {
    if let Some(l) = lambda {
        if *l < rat_int(0) || *l >= rat_int(1) {
            return Err(Error::invalid("extension threshold must lie in [0, 1)"));
        }
    }
    let mut exts = extensions_up_to(g, h, gamma, 2, node_budget)?;
    match exts.len() {
        0 => Ok(ExtensionVerdict::None),
        1 => Ok(ExtensionVerdict::Unique(exts.pop().expect("one extension"))),
        _ => {
            let second = exts.pop().expect("two extensions");
            let first = exts.pop().expect("two extensions");
            let m = g.subgroup_closure(&gamma.domain_elems())?;
            let bound = rat_counts(m.len() as u64, g.order()?);
            Ok(ExtensionVerdict::Multiple {
                witnesses: (first, second),
                lambda_lower_bound: bound,
            })
        }
    }
}

/// Extend a partial map to an affine homomorphism.
///
/// The empty map extends to the trivial homomorphism. Otherwise, with a
/// the least domain element, the shifted map γ₀(x) = γ(a)⁻¹·γ(a·x) on
/// a⁻¹·dom γ extends to a homomorphism φ₀ exactly when γ extends to an
/// affine homomorphism, which is then γ(a)·φ₀(a)⁻¹ · φ₀.
pub fn affine_subword_extend(
    g: &Group,
    h: &Group,
    gamma: &PartialMap,
) -> Result<Option<AffineHom>> {
    affine_subword_extend_budgeted(g, h, gamma, HOMEXT_NODE_BUDGET)
}

/// [`affine_subword_extend`] with an explicit cap on closure tables built.
pub fn affine_subword_extend_budgeted(
    g: &Group,
    h: &Group,
    gamma: &PartialMap,
    node_budget: u64,
) -> Result<Option<AffineHom>> {
    for (d, v) in gamma.pairs() {
        g.check_element(d)?;
        h.check_element(v)?;
    }
    if gamma.is_empty() {
        return Ok(Some(AffineHom::from_hom(Homomorphism::trivial(g, h)?)));
    }
    let (a, va) = gamma.pairs()[0].clone();
    let a_inv = g.inv(&a);
    let va_inv = h.inv(&va);
    let shifted: Vec<(Element, Element)> = gamma
        .pairs()
        .iter()
        .map(|(d, v)| (g.mul(&a_inv, d), h.mul(&va_inv, v)))
        .collect();
    let gamma0 = PartialMap::from_pairs(shifted)?;
    let Some(phi0) = homext_search_budgeted(g, h, &gamma0, node_budget)? else {
        return Ok(None);
    };
    let translation = h.mul(&va, &h.inv(&phi0.eval(&a)?));
    let affine = AffineHom::new(translation, phi0)?;
    #[cfg(debug_assertions)]
    for (d, v) in gamma.pairs() {
        debug_assert!(
            h.eq_elems(&affine.eval(d)?, v),
            "reconstruction must restrict back to the partial map"
        );
    }
    Ok(Some(affine))
}
