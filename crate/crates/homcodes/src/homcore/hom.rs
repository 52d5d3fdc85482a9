//! Homomorphisms, affine homomorphisms, and partial maps.
//!
//! A `Homomorphism` is stored as images of the domain's canonical
//! generators; validation proves the images satisfy every relation the
//! generators satisfy, so evaluation is well defined. An `AffineHom` is a
//! translate h·φ₀ of a homomorphism; the pair (h, φ₀) is recoverable from
//! the function (h is its value at the identity), so equality of the parts
//! coincides with equality of the functions.

use std::collections::HashMap;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::groups::{Element, Group};

/// Render a generator word for a relator-violation message.
fn word_str(word: &[usize]) -> String {
    if word.is_empty() {
        "e".to_string()
    } else {
        word.iter()
            .map(|i| format!("g{i}"))
            .collect::<Vec<_>>()
            .join("*")
    }
}

/// A validated homomorphism G → H, represented by generator images.
#[derive(Debug)]
pub struct Homomorphism {
    domain: Group,
    codomain: Group,
    images: Vec<Element>,
    /// Values over the domain's canonical element order. Filled during
    /// validation for enumerated domains, on demand for abelian ones.
    table: OnceLock<Result<Vec<Element>>>,
}

impl Clone for Homomorphism {
    fn clone(&self) -> Self {
        Homomorphism {
            domain: self.domain.clone(),
            codomain: self.codomain.clone(),
            images: self.images.clone(),
            table: self.table.clone(),
        }
    }
}

// Equality and ordering compare generator images only: the domain's
// canonical generator list is fixed, so the images determine the function.
// Callers must not mix homomorphisms of different (G, H) pairs in one
// ordered collection.
impl PartialEq for Homomorphism {
    fn eq(&self, other: &Self) -> bool {
        self.images == other.images
    }
}
impl Eq for Homomorphism {}
impl PartialOrd for Homomorphism {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Homomorphism {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.images.cmp(&other.images)
    }
}
impl std::hash::Hash for Homomorphism {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.images.hash(state);
    }
}

/// Validate generator images and build a homomorphism.
///
/// For abelian domains the defining relations are generator orders and
/// pairwise commutation, checked directly. For enumerated domains the full
/// value table is propagated along a breadth-first traversal of the Cayley
/// graph; any edge whose two derivations disagree yields a relator
/// violation naming the offending relation.
pub fn make_hom(domain: &Group, codomain: &Group, images: Vec<Element>) -> Result<Homomorphism> {
    let gens = domain.generators();
    if images.len() != gens.len() {
        return Err(Error::invalid(format!(
            "expected {} generator images, got {}",
            gens.len(),
            images.len()
        )));
    }
    for img in &images {
        codomain.check_element(img)?;
    }

    let hom = Homomorphism {
        domain: domain.clone(),
        codomain: codomain.clone(),
        images,
        table: OnceLock::new(),
    };

    if domain.abelian_orders().is_some() {
        hom.validate_abelian()?;
    } else {
        let table = hom.validate_by_table()?;
        hom.table.set(Ok(table)).ok();
    }
    Ok(hom)
}

impl Homomorphism {
    /// Order/commutation relator check for abelian domains.
    fn validate_abelian(&self) -> Result<()> {
        let orders = self
            .domain
            .abelian_orders()
            .expect("abelian validation on abelian domain");
        for (i, (img, &q)) in self.images.iter().zip(orders).enumerate() {
            if !self.codomain.is_identity(&self.codomain.pow(img, q as i64)) {
                return Err(Error::relator(format!(
                    "g{i}^{q} = e in the domain but the image of g{i} has order not dividing {q}"
                )));
            }
        }
        for i in 0..self.images.len() {
            for j in (i + 1)..self.images.len() {
                let a = &self.images[i];
                let b = &self.images[j];
                if self.codomain.mul(a, b) != self.codomain.mul(b, a) {
                    return Err(Error::relator(format!(
                        "g{i}*g{j} = g{j}*g{i} in the domain but the images do not commute"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Full-table validation: propagate images over a BFS spanning tree of
    /// the Cayley graph and check every remaining edge. Each element keeps
    /// its discovery word so a failed edge can be reported as the relation
    /// it violates.
    fn validate_by_table(&self) -> Result<Vec<Element>> {
        let elems = self.domain.elements()?;
        let n = elems.len();
        let gens = self.domain.generators();
        let mut table: Vec<Option<Element>> = vec![None; n];
        let mut words: Vec<Option<Vec<usize>>> = vec![None; n];

        let id_idx = self.domain.index_of(&self.domain.identity())? as usize;
        table[id_idx] = Some(self.codomain.identity());
        words[id_idx] = Some(Vec::new());
        let mut queue = std::collections::VecDeque::from([id_idx]);

        while let Some(m) = queue.pop_front() {
            let m_word = words[m].clone().expect("visited");
            let m_img = table[m].clone().expect("visited");
            for (j, gj) in gens.iter().enumerate() {
                let t = self.domain.mul(&elems[m], gj);
                let t_idx = self.domain.index_of(&t)? as usize;
                let expected = self.codomain.mul(&m_img, &self.images[j]);
                match &table[t_idx] {
                    None => {
                        let mut w = m_word.clone();
                        w.push(j);
                        table[t_idx] = Some(expected);
                        words[t_idx] = Some(w);
                        queue.push_back(t_idx);
                    }
                    Some(existing) => {
                        if *existing != expected {
                            let mut lhs = m_word.clone();
                            lhs.push(j);
                            let rhs = words[t_idx].clone().expect("visited");
                            return Err(Error::relator(format!(
                                "{} = {} in the domain but the images disagree",
                                word_str(&lhs),
                                word_str(&rhs)
                            )));
                        }
                    }
                }
            }
        }

        let mut out = Vec::with_capacity(n);
        for (i, v) in table.into_iter().enumerate() {
            match v {
                Some(e) => out.push(e),
                None => {
                    return Err(Error::invalid(format!(
                        "generators do not reach element #{i} of the domain"
                    )))
                }
            }
        }
        Ok(out)
    }

    pub fn domain(&self) -> &Group {
        &self.domain
    }

    pub fn codomain(&self) -> &Group {
        &self.codomain
    }

    /// Images of the domain's canonical generators.
    pub fn images(&self) -> &[Element] {
        &self.images
    }

    /// Evaluate at a domain element. Abelian domains evaluate as a product
    /// of image powers (no table needed); enumerated domains use the table
    /// built at validation time.
    pub fn eval(&self, g: &Element) -> Result<Element> {
        if let Element::Res(coords) = g {
            if self.domain.abelian_orders().is_some() {
                self.domain.check_element(g)?;
                let mut acc = self.codomain.identity();
                for (img, &x) in self.images.iter().zip(coords) {
                    if x != 0 {
                        acc = self.codomain.mul(&acc, &self.codomain.pow(img, x as i64));
                    }
                }
                return Ok(acc);
            }
        }
        let idx = self.domain.index_of(g)? as usize;
        Ok(self.value_table()?[idx].clone())
    }

    /// Values over the domain's canonical element order.
    pub fn value_table(&self) -> Result<&[Element]> {
        let r = self.table.get_or_init(|| {
            let mut out = Vec::new();
            for g in self.domain.iter_elements()? {
                out.push(self.eval_direct(&g)?);
            }
            Ok(out)
        });
        match r {
            Ok(v) => Ok(v),
            Err(e) => Err(e.clone()),
        }
    }

    /// Evaluation that never consults the cached table (used to build it).
    fn eval_direct(&self, g: &Element) -> Result<Element> {
        match g {
            Element::Res(coords) => {
                let mut acc = self.codomain.identity();
                for (img, &x) in self.images.iter().zip(coords) {
                    if x != 0 {
                        acc = self.codomain.mul(&acc, &self.codomain.pow(img, x as i64));
                    }
                }
                Ok(acc)
            }
            Element::Perm(_) => Err(Error::invalid(
                "table for a non-abelian domain must be built during validation",
            )),
        }
    }

    /// Elements mapping to the identity, canonically sorted.
    pub fn kernel(&self) -> Result<Vec<Element>> {
        let mut out = Vec::new();
        for g in self.domain.iter_elements()? {
            if self.codomain.is_identity(&self.eval(&g)?) {
                out.push(g);
            }
        }
        Ok(out)
    }

    /// The image subgroup of the codomain, canonically sorted.
    pub fn image_subgroup(&self) -> Result<Vec<Element>> {
        self.codomain.subgroup_closure(&self.images)
    }

    pub fn is_trivial(&self) -> bool {
        self.images.iter().all(|i| self.codomain.is_identity(i))
    }

    /// The trivial homomorphism g ↦ e.
    pub fn trivial(domain: &Group, codomain: &Group) -> Result<Homomorphism> {
        let images = vec![codomain.identity(); domain.generators().len()];
        make_hom(domain, codomain, images)
    }

    /// The identity homomorphism G → G.
    pub fn identity_on(domain: &Group) -> Result<Homomorphism> {
        make_hom(domain, domain, domain.generators())
    }

    /// Restriction to a list of domain elements, as a partial map.
    pub fn partial_on(&self, elems: &[Element]) -> Result<PartialMap> {
        let mut pairs = Vec::with_capacity(elems.len());
        for g in elems {
            pairs.push((g.clone(), self.eval(g)?));
        }
        PartialMap::from_pairs(pairs)
    }
}

/// An affine homomorphism ψ = h·φ₀: the translate of a homomorphism φ₀ by
/// a codomain element h. The decomposition is unique: h = ψ(e).
#[derive(Debug, Clone)]
pub struct AffineHom {
    translation: Element,
    base: Homomorphism,
    table: OnceLock<Result<Vec<Element>>>,
}

impl PartialEq for AffineHom {
    fn eq(&self, other: &Self) -> bool {
        self.translation == other.translation && self.base == other.base
    }
}
impl Eq for AffineHom {}
impl PartialOrd for AffineHom {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for AffineHom {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (&self.translation, &self.base).cmp(&(&other.translation, &other.base))
    }
}
impl std::hash::Hash for AffineHom {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.translation.hash(state);
        self.base.hash(state);
    }
}

impl AffineHom {
    pub fn new(translation: Element, base: Homomorphism) -> Result<AffineHom> {
        base.codomain().check_element(&translation)?;
        Ok(AffineHom {
            translation,
            base,
            table: OnceLock::new(),
        })
    }

    /// View a homomorphism as an affine homomorphism with trivial
    /// translation.
    pub fn from_hom(base: Homomorphism) -> AffineHom {
        let translation = base.codomain().identity();
        AffineHom {
            translation,
            base,
            table: OnceLock::new(),
        }
    }

    /// Recover (h, φ₀) from a full value table over the canonical element
    /// order: h is the value at the identity and φ₀ = h⁻¹·ψ. Errors if the
    /// table is not an affine homomorphism.
    pub fn decompose_table(
        domain: &Group,
        codomain: &Group,
        table: &[Element],
    ) -> Result<AffineHom> {
        let n = domain.order()?;
        if table.len() as u64 != n {
            return Err(Error::invalid(format!(
                "value table has {} entries for a domain of order {n}",
                table.len()
            )));
        }
        let id_idx = domain.index_of(&domain.identity())? as usize;
        let h = table[id_idx].clone();
        codomain.check_element(&h)?;
        let h_inv = codomain.inv(&h);
        let mut images = Vec::new();
        for g in domain.generators() {
            let idx = domain.index_of(&g)? as usize;
            images.push(codomain.mul(&h_inv, &table[idx]));
        }
        let base = make_hom(domain, codomain, images)?;
        let ah = AffineHom::new(h, base)?;
        for (i, g) in domain.iter_elements()?.enumerate() {
            if ah.eval(&g)? != table[i] {
                return Err(Error::invalid(
                    "value table is not an affine homomorphism",
                ));
            }
        }
        Ok(ah)
    }

    pub fn translation(&self) -> &Element {
        &self.translation
    }

    pub fn base(&self) -> &Homomorphism {
        &self.base
    }

    pub fn domain(&self) -> &Group {
        self.base.domain()
    }

    pub fn codomain(&self) -> &Group {
        self.base.codomain()
    }

    pub fn eval(&self, g: &Element) -> Result<Element> {
        Ok(self.base.codomain().mul(&self.translation, &self.base.eval(g)?))
    }

    /// True when the translation is trivial, i.e. this is a homomorphism.
    pub fn is_hom(&self) -> bool {
        self.base.codomain().is_identity(&self.translation)
    }

    /// Values over the domain's canonical element order.
    pub fn value_table(&self) -> Result<&[Element]> {
        let r = self.table.get_or_init(|| {
            let h = self.base.codomain();
            Ok(self
                .base
                .value_table()?
                .iter()
                .map(|v| h.mul(&self.translation, v))
                .collect())
        });
        match r {
            Ok(v) => Ok(v),
            Err(e) => Err(e.clone()),
        }
    }

    /// Restriction to a list of domain elements, as a partial map.
    pub fn partial_on(&self, elems: &[Element]) -> Result<PartialMap> {
        let mut pairs = Vec::with_capacity(elems.len());
        for g in elems {
            pairs.push((g.clone(), self.eval(g)?));
        }
        PartialMap::from_pairs(pairs)
    }
}

/// A partial map G ⇀ H: finitely many (domain, image) pairs with distinct
/// domain entries, kept sorted by domain element.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct PartialMap {
    pairs: Vec<(Element, Element)>,
}

impl PartialMap {
    /// Build from pairs. Exact duplicates collapse; two pairs with the same
    /// domain element and different images are rejected.
    pub fn from_pairs(mut pairs: Vec<(Element, Element)>) -> Result<PartialMap> {
        pairs.sort();
        pairs.dedup();
        for w in pairs.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(Error::invalid(
                    "conflicting images for a repeated domain element",
                ));
            }
        }
        Ok(PartialMap { pairs })
    }

    pub fn empty() -> PartialMap {
        PartialMap { pairs: Vec::new() }
    }

    pub fn pairs(&self) -> &[(Element, Element)] {
        &self.pairs
    }

    pub fn domain_elems(&self) -> Vec<Element> {
        self.pairs.iter().map(|(g, _)| g.clone()).collect()
    }

    pub fn image_of(&self, g: &Element) -> Option<&Element> {
        self.pairs
            .binary_search_by(|(d, _)| d.cmp(g))
            .ok()
            .map(|i| &self.pairs[i].1)
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Lookup table keyed by domain element (for repeated queries).
    pub fn as_map(&self) -> HashMap<Element, Element> {
        self.pairs.iter().cloned().collect()
    }
}
