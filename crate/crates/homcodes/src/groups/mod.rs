//! Finite group backends with canonical element enumeration.
//!
//! Three backends: abelian groups given by a primary decomposition (a list
//! of prime-power factor orders), permutation groups given by degree and
//! generators, and a black-box wrapper that delegates to an inner group
//! while counting arithmetic operations.
//!
//! Canonical element order: abelian elements are residue vectors in
//! lexicographic order; permutation elements are image arrays in
//! lexicographic order. Both coincide with the derived `Ord` on `Element`,
//! so "canonical" and "sorted" mean the same thing throughout.

pub mod lattice;
pub mod perm;

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rat::{rat_counts, Rat};

/// Enumeration hard cap: groups bigger than this cannot be materialized.
pub const MAX_ENUM: u64 = 1_000_000;
/// Largest order for which an index-based multiplication table is built.
const MULT_TABLE_MAX: u64 = 2_600;
/// Pairwise commutator computation cap for derived-series steps.
const PAIRWISE_COMMUTATOR_MAX: usize = 5_000;

/// A group element. Residue vectors for abelian backends, image arrays for
/// permutation backends; black-box groups reuse the inner representation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Element {
    Res(Vec<u32>),
    Perm(Vec<u16>),
}

impl Element {
    /// Wire representation: a plain array of numbers.
    pub fn as_values(&self) -> Vec<u64> {
        match self {
            Element::Res(v) => v.iter().map(|&x| x as u64).collect(),
            Element::Perm(v) => v.iter().map(|&x| x as u64).collect(),
        }
    }
}

/// JSON description of a group, the `--group`/`--codomain` wire format.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum GroupSpec {
    Abelian {
        orders: Vec<u32>,
    },
    Perm {
        degree: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        tag: Option<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        generators: Option<Vec<Vec<u16>>>,
    },
    Blackbox {
        inner: Box<GroupSpec>,
    },
}

enum Backend {
    Abelian {
        orders: Vec<u32>,
    },
    Perm {
        degree: usize,
        gens: Vec<Element>,
    },
    Blackbox {
        base: Group,
        ops: AtomicU64,
    },
}

struct Inner {
    backend: Backend,
    spec: GroupSpec,
    elems: OnceLock<Result<Vec<Element>>>,
    index: OnceLock<HashMap<Element, u64>>,
    mult: OnceLock<Result<Arc<MultTable>>>,
    lattice: OnceLock<Result<Arc<lattice::SubgroupLattice>>>,
}

/// Index-based multiplication table for small groups; row-major n x n.
pub(crate) struct MultTable {
    pub n: usize,
    pub table: Vec<u32>,
    pub identity: u32,
}

impl MultTable {
    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.table[a as usize * self.n + b as usize]
    }
}

/// A finite group handle; cheap to clone, caches enumeration lazily.
#[derive(Clone)]
pub struct Group {
    inner: Arc<Inner>,
}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Group({:?})", self.spec())
    }
}

fn is_prime_power(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut n = n;
    for cand in 2..=n {
        if (cand as u64) * (cand as u64) > n as u64 {
            // no divisor found below sqrt, so n is prime
            return true;
        }
        if n % cand == 0 {
            while n % cand == 0 {
                n /= cand;
            }
            return n == 1;
        }
    }
    true
}

/// The prime p with n = p^r, for prime-power n.
pub(crate) fn prime_of_prime_power(n: u32) -> u32 {
    debug_assert!(is_prime_power(n));
    for cand in 2..=n {
        if n % cand == 0 {
            return cand;
        }
    }
    n
}

impl Group {
    fn new(backend: Backend, spec: GroupSpec) -> Group {
        Group {
            inner: Arc::new(Inner {
                backend,
                spec,
                elems: OnceLock::new(),
                index: OnceLock::new(),
                mult: OnceLock::new(),
                lattice: OnceLock::new(),
            }),
        }
    }

    /// Builds a group from its wire description.
    pub fn from_spec(spec: &GroupSpec) -> Result<Group> {
        match spec {
            GroupSpec::Abelian { orders } => Group::abelian(orders.clone()),
            GroupSpec::Perm {
                degree,
                tag,
                generators,
            } => {
                let gens: Vec<Vec<u16>> = match (generators, tag.as_deref()) {
                    (Some(gs), _) => gs.clone(),
                    (None, Some("alt")) => perm::alternating_generators(*degree),
                    (None, Some("sym")) => perm::symmetric_generators(*degree),
                    (None, Some(other)) => {
                        return Err(Error::invalid(format!("unknown perm tag `{other}`")))
                    }
                    (None, None) => {
                        return Err(Error::invalid("perm spec needs a tag or generators"))
                    }
                };
                if tag.as_deref() == Some("alt") {
                    for g in &gens {
                        if !perm::is_even(g) {
                            return Err(Error::invalid(
                                "generator is odd but the spec tag says alternating",
                            ));
                        }
                    }
                }
                Group::perm_with_spec(*degree, gens, spec.clone())
            }
            GroupSpec::Blackbox { inner } => Ok(Group::blackbox(Group::from_spec(inner)?)),
        }
    }

    /// Abelian group from its primary decomposition: every factor order must
    /// be a prime power at least 2. An empty list is the trivial group.
    pub fn abelian(orders: Vec<u32>) -> Result<Group> {
        for &m in &orders {
            if !is_prime_power(m) {
                return Err(Error::invalid(format!(
                    "abelian factor order {m} is not a prime power; give the primary decomposition"
                )));
            }
        }
        let mut total: u64 = 1;
        for &m in &orders {
            total = total
                .checked_mul(m as u64)
                .ok_or_else(|| Error::budget("abelian group order overflows u64"))?;
        }
        let spec = GroupSpec::Abelian {
            orders: orders.clone(),
        };
        Ok(Group::new(Backend::Abelian { orders }, spec))
    }

    /// Permutation group on `degree` points with the given generators.
    pub fn perm(degree: usize, gens: Vec<Vec<u16>>) -> Result<Group> {
        let spec = GroupSpec::Perm {
            degree,
            tag: None,
            generators: Some(gens.clone()),
        };
        Group::perm_with_spec(degree, gens, spec)
    }

    fn perm_with_spec(degree: usize, gens: Vec<Vec<u16>>, spec: GroupSpec) -> Result<Group> {
        if degree > u16::MAX as usize {
            return Err(Error::invalid("permutation degree too large"));
        }
        let mut elems = Vec::new();
        for g in gens {
            if g.len() != degree || !perm::is_permutation(&g) {
                return Err(Error::invalid(
                    "generator is not a permutation of the stated degree",
                ));
            }
            if g != perm::identity(degree) {
                elems.push(Element::Perm(g));
            }
        }
        Ok(Group::new(
            Backend::Perm {
                degree,
                gens: elems,
            },
            spec,
        ))
    }

    pub fn alternating(n: usize) -> Result<Group> {
        Group::from_spec(&GroupSpec::Perm {
            degree: n,
            tag: Some("alt".into()),
            generators: None,
        })
    }

    pub fn symmetric(n: usize) -> Result<Group> {
        Group::from_spec(&GroupSpec::Perm {
            degree: n,
            tag: Some("sym".into()),
            generators: None,
        })
    }

    /// Wraps a group so that every multiplication, inversion, identity and
    /// equality call is counted. Elements are shared with the inner group.
    pub fn blackbox(base: Group) -> Group {
        let spec = GroupSpec::Blackbox {
            inner: Box::new(base.spec().clone()),
        };
        Group::new(
            Backend::Blackbox {
                base,
                ops: AtomicU64::new(0),
            },
            spec,
        )
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.inner.spec
    }

    /// Number of counted operations so far (0 unless black-box).
    pub fn ops_count(&self) -> u64 {
        match &self.inner.backend {
            Backend::Blackbox { ops, .. } => ops.load(Ordering::Relaxed),
            _ => 0,
        }
    }

    fn bump(&self) {
        if let Backend::Blackbox { ops, .. } = &self.inner.backend {
            ops.fetch_add(1, Ordering::Relaxed);
        }
    }

    /// The group this black-box wrapper counts for; `self` otherwise.
    pub fn unwrapped(&self) -> &Group {
        match &self.inner.backend {
            Backend::Blackbox { base, .. } => base.unwrapped(),
            _ => self,
        }
    }

    pub fn is_blackbox(&self) -> bool {
        matches!(self.inner.backend, Backend::Blackbox { .. })
    }

    // ------------------------------------------------------------------
    // Arithmetic
    // ------------------------------------------------------------------

    pub fn identity(&self) -> Element {
        self.bump();
        match &self.inner.backend {
            Backend::Abelian { orders } => Element::Res(vec![0; orders.len()]),
            Backend::Perm { degree, .. } => Element::Perm(perm::identity(*degree)),
            Backend::Blackbox { base, .. } => base.identity(),
        }
    }

    fn unchecked_identity(&self) -> Element {
        match &self.inner.backend {
            Backend::Abelian { orders } => Element::Res(vec![0; orders.len()]),
            Backend::Perm { degree, .. } => Element::Perm(perm::identity(*degree)),
            Backend::Blackbox { base, .. } => base.unchecked_identity(),
        }
    }

    pub fn mul(&self, a: &Element, b: &Element) -> Element {
        self.bump();
        match &self.inner.backend {
            Backend::Abelian { orders } => match (a, b) {
                (Element::Res(x), Element::Res(y)) => Element::Res(
                    x.iter()
                        .zip(y.iter())
                        .zip(orders.iter())
                        .map(|((&xa, &xb), &m)| {
                            let s = xa as u64 + xb as u64;
                            (s % m as u64) as u32
                        })
                        .collect(),
                ),
                _ => panic!("element backend mismatch"),
            },
            Backend::Perm { .. } => match (a, b) {
                (Element::Perm(p), Element::Perm(q)) => Element::Perm(perm::compose(p, q)),
                _ => panic!("element backend mismatch"),
            },
            Backend::Blackbox { base, .. } => base.mul(a, b),
        }
    }

    pub fn inv(&self, a: &Element) -> Element {
        self.bump();
        match &self.inner.backend {
            Backend::Abelian { orders } => match a {
                Element::Res(x) => Element::Res(
                    x.iter()
                        .zip(orders.iter())
                        .map(|(&xa, &m)| if xa == 0 { 0 } else { m - xa })
                        .collect(),
                ),
                _ => panic!("element backend mismatch"),
            },
            Backend::Perm { .. } => match a {
                Element::Perm(p) => Element::Perm(perm::invert(p)),
                _ => panic!("element backend mismatch"),
            },
            Backend::Blackbox { base, .. } => base.inv(a),
        }
    }

    /// Equality of elements as a counted group operation.
    pub fn eq_elems(&self, a: &Element, b: &Element) -> bool {
        self.bump();
        a == b
    }

    pub fn is_identity(&self, a: &Element) -> bool {
        let id = self.identity();
        self.eq_elems(a, &id)
    }

    /// a^k by square and multiply; k may be any integer (negative uses the
    /// inverse).
    pub fn pow(&self, a: &Element, k: i64) -> Element {
        let mut base = if k < 0 { self.inv(a) } else { a.clone() };
        let mut k = k.unsigned_abs();
        let mut acc = self.identity();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            k >>= 1;
            if k > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// a^-1 * b^-1 * a * b.
    pub fn commutator(&self, a: &Element, b: &Element) -> Element {
        let ia = self.inv(a);
        let ib = self.inv(b);
        let t = self.mul(&ia, &ib);
        let t = self.mul(&t, a);
        self.mul(&t, b)
    }

    /// b^-1 * a * b.
    pub fn conjugate(&self, a: &Element, b: &Element) -> Element {
        let ib = self.inv(b);
        let t = self.mul(&ib, a);
        self.mul(&t, b)
    }

    // ------------------------------------------------------------------
    // Structure
    // ------------------------------------------------------------------

    pub fn order(&self) -> Result<u64> {
        match &self.inner.backend {
            Backend::Abelian { orders } => {
                let mut total: u64 = 1;
                for &m in orders {
                    total = total
                        .checked_mul(m as u64)
                        .ok_or_else(|| Error::budget("group order overflows u64"))?;
                }
                Ok(total)
            }
            Backend::Perm { .. } => Ok(self.elements()?.len() as u64),
            Backend::Blackbox { base, .. } => base.order(),
        }
    }

    /// Canonical generators: abelian unit vectors, the permutation
    /// generators as given (identities dropped), or the inner group's.
    pub fn generators(&self) -> Vec<Element> {
        match &self.inner.backend {
            Backend::Abelian { orders } => (0..orders.len())
                .map(|i| {
                    let mut v = vec![0u32; orders.len()];
                    v[i] = 1;
                    Element::Res(v)
                })
                .collect(),
            Backend::Perm { gens, .. } => gens.clone(),
            Backend::Blackbox { base, .. } => base.generators(),
        }
    }

    /// Orders of the abelian primary factors, when this is (a black-box
    /// wrapper of) an abelian backend.
    pub fn abelian_orders(&self) -> Option<&[u32]> {
        match &self.inner.backend {
            Backend::Abelian { orders } => Some(orders),
            Backend::Perm { .. } => None,
            Backend::Blackbox { base, .. } => base.abelian_orders(),
        }
    }

    pub fn is_abelian(&self) -> Result<bool> {
        match &self.inner.backend {
            Backend::Abelian { .. } => Ok(true),
            Backend::Perm { gens, .. } => {
                for (i, a) in gens.iter().enumerate() {
                    for b in gens.iter().skip(i + 1) {
                        if self.mul(a, b) != self.mul(b, a) {
                            return Ok(false);
                        }
                    }
                }
                Ok(true)
            }
            Backend::Blackbox { base, .. } => base.is_abelian(),
        }
    }

    /// Validates that `e` belongs to this group.
    pub fn check_element(&self, e: &Element) -> Result<()> {
        match (&self.inner.backend, e) {
            (Backend::Abelian { orders }, Element::Res(v)) => {
                if v.len() != orders.len() {
                    return Err(Error::invalid("residue vector has wrong length"));
                }
                for (&x, &m) in v.iter().zip(orders.iter()) {
                    if x >= m {
                        return Err(Error::invalid("residue out of range"));
                    }
                }
                Ok(())
            }
            (Backend::Perm { degree, .. }, Element::Perm(p)) => {
                if p.len() != *degree || !perm::is_permutation(p) {
                    return Err(Error::invalid(
                        "element is not a permutation of the group's degree",
                    ));
                }
                if self.index_of(e).is_err() {
                    return Err(Error::invalid(
                        "permutation is not in the generated group",
                    ));
                }
                Ok(())
            }
            (Backend::Blackbox { base, .. }, _) => base.check_element(e),
            _ => Err(Error::invalid("element backend mismatch")),
        }
    }

    /// Parses an element from its wire representation (array of numbers).
    pub fn element_from_values(&self, values: &[u64]) -> Result<Element> {
        let e = match &self.inner.backend {
            Backend::Abelian { .. } => Element::Res(
                values
                    .iter()
                    .map(|&x| {
                        u32::try_from(x).map_err(|_| Error::invalid("residue out of range"))
                    })
                    .collect::<Result<_>>()?,
            ),
            Backend::Perm { .. } => Element::Perm(
                values
                    .iter()
                    .map(|&x| u16::try_from(x).map_err(|_| Error::invalid("point out of range")))
                    .collect::<Result<_>>()?,
            ),
            Backend::Blackbox { base, .. } => return base.element_from_values(values),
        };
        self.check_element(&e)?;
        Ok(e)
    }

    pub fn element_order(&self, e: &Element) -> Result<u64> {
        match (&self.inner.backend, e) {
            (Backend::Abelian { orders }, Element::Res(v)) => {
                let mut ord: u64 = 1;
                for (&x, &m) in v.iter().zip(orders.iter()) {
                    let coord = m as u64 / num_integer::gcd(m as u64, x as u64);
                    ord = num_integer::lcm(ord, coord);
                }
                Ok(ord)
            }
            (Backend::Perm { .. }, Element::Perm(p)) => Ok(perm::order(p)),
            (Backend::Blackbox { base, .. }, _) => base.element_order(e),
            _ => Err(Error::invalid("element backend mismatch")),
        }
    }

    // ------------------------------------------------------------------
    // Enumeration
    // ------------------------------------------------------------------

    /// All elements in canonical order. Materializes the group; errors if
    /// larger than the enumeration cap.
    pub fn elements(&self) -> Result<&[Element]> {
        match &self.inner.backend {
            Backend::Blackbox { base, .. } => base.elements(),
            _ => {
                let cached = self.inner.elems.get_or_init(|| self.enumerate());
                match cached {
                    Ok(v) => Ok(v.as_slice()),
                    Err(e) => Err(e.clone()),
                }
            }
        }
    }

    fn enumerate(&self) -> Result<Vec<Element>> {
        match &self.inner.backend {
            Backend::Abelian { .. } => {
                let n = self.order()?;
                if n > MAX_ENUM {
                    return Err(Error::budget("group too large to enumerate"));
                }
                (0..n).map(|i| self.element_at(i)).collect()
            }
            Backend::Perm { gens, .. } => {
                let id = self.unchecked_identity();
                let mut seen: BTreeSet<Element> = BTreeSet::new();
                seen.insert(id.clone());
                let mut queue = VecDeque::from([id]);
                while let Some(x) = queue.pop_front() {
                    for g in gens {
                        let y = self.mul(&x, g);
                        if seen.insert(y.clone()) {
                            if seen.len() as u64 > MAX_ENUM {
                                return Err(Error::budget("group too large to enumerate"));
                            }
                            queue.push_back(y);
                        }
                    }
                }
                Ok(seen.into_iter().collect())
            }
            Backend::Blackbox { .. } => unreachable!("handled by elements()"),
        }
    }

    fn index_map(&self) -> Result<&HashMap<Element, u64>> {
        match &self.inner.backend {
            Backend::Blackbox { base, .. } => base.index_map(),
            _ => {
                let elems = self.elements()?;
                Ok(self.inner.index.get_or_init(|| {
                    elems
                        .iter()
                        .enumerate()
                        .map(|(i, e)| (e.clone(), i as u64))
                        .collect()
                }))
            }
        }
    }

    /// The element at a canonical index. For abelian backends this is a
    /// direct mixed-radix decode and never materializes the group.
    pub fn element_at(&self, index: u64) -> Result<Element> {
        match &self.inner.backend {
            Backend::Abelian { orders } => {
                if index >= self.order()? {
                    return Err(Error::invalid("element index out of range"));
                }
                // lexicographic order: the first coordinate is the most
                // significant digit
                let mut rem = index;
                let mut v = vec![0u32; orders.len()];
                for i in (0..orders.len()).rev() {
                    let m = orders[i] as u64;
                    v[i] = (rem % m) as u32;
                    rem /= m;
                }
                Ok(Element::Res(v))
            }
            Backend::Perm { .. } => self
                .elements()?
                .get(index as usize)
                .cloned()
                .ok_or_else(|| Error::invalid("element index out of range")),
            Backend::Blackbox { base, .. } => base.element_at(index),
        }
    }

    /// Canonical index of an element.
    pub fn index_of(&self, e: &Element) -> Result<u64> {
        match (&self.inner.backend, e) {
            (Backend::Abelian { orders }, Element::Res(v)) => {
                if v.len() != orders.len() {
                    return Err(Error::invalid("residue vector has wrong length"));
                }
                let mut idx: u64 = 0;
                for (&x, &m) in v.iter().zip(orders.iter()) {
                    if x >= m {
                        return Err(Error::invalid("residue out of range"));
                    }
                    idx = idx * m as u64 + x as u64;
                }
                Ok(idx)
            }
            (Backend::Perm { .. }, _) => self
                .index_map()?
                .get(e)
                .copied()
                .ok_or_else(|| Error::invalid("element is not in the group")),
            (Backend::Blackbox { base, .. }, _) => base.index_of(e),
            _ => Err(Error::invalid("element backend mismatch")),
        }
    }

    /// Iterates elements in canonical order without materializing abelian
    /// groups.
    pub fn iter_elements(&self) -> Result<ElementIter<'_>> {
        let n = self.order()?;
        if n > MAX_ENUM {
            return Err(Error::budget("group too large to iterate"));
        }
        Ok(ElementIter {
            group: self,
            next: 0,
            total: n,
        })
    }

    /// Uniformly random element. Abelian backends sample residues directly;
    /// permutation backends sample a canonical index.
    pub fn random_element<R: rand::Rng + ?Sized>(&self, rng: &mut R) -> Result<Element> {
        match &self.inner.backend {
            Backend::Abelian { orders } => Ok(Element::Res(
                orders.iter().map(|&m| rng.random_range(0..m)).collect(),
            )),
            Backend::Perm { .. } => {
                let elems = self.elements()?;
                Ok(elems[rng.random_range(0..elems.len())].clone())
            }
            Backend::Blackbox { base, .. } => base.random_element(rng),
        }
    }

    // ------------------------------------------------------------------
    // Subgroup machinery
    // ------------------------------------------------------------------

    /// The subgroup generated by `gens`, as a canonically sorted element
    /// vector. The identity is always included.
    pub fn subgroup_closure(&self, gens: &[Element]) -> Result<Vec<Element>> {
        for g in gens {
            self.check_element(g)?;
        }
        let id = self.identity();
        let mut seen: BTreeSet<Element> = BTreeSet::new();
        seen.insert(id.clone());
        let mut queue = VecDeque::from([id]);
        while let Some(x) = queue.pop_front() {
            for g in gens {
                let y = self.mul(&x, g);
                if seen.insert(y.clone()) {
                    if seen.len() as u64 > MAX_ENUM {
                        return Err(Error::budget("subgroup closure exceeds enumeration cap"));
                    }
                    queue.push_back(y);
                }
            }
        }
        Ok(seen.into_iter().collect())
    }

    /// Checks that a set of elements is exactly a subgroup.
    pub fn is_subgroup(&self, set: &[Element]) -> Result<bool> {
        let sorted: BTreeSet<&Element> = set.iter().collect();
        if sorted.len() != set.len() {
            return Ok(false);
        }
        if set.is_empty() {
            return Ok(false);
        }
        let closure = self.subgroup_closure(set)?;
        Ok(closure.len() == set.len() && closure.iter().all(|e| sorted.contains(e)))
    }

    /// Greedy small generating set for a subgroup given as an element set.
    pub fn small_generating_set(&self, subgroup: &[Element]) -> Result<Vec<Element>> {
        let mut gens: Vec<Element> = Vec::new();
        let mut have: BTreeSet<Element> = BTreeSet::new();
        have.insert(self.identity());
        for e in subgroup {
            if !have.contains(e) {
                gens.push(e.clone());
                have = self.subgroup_closure(&gens)?.into_iter().collect();
            }
        }
        Ok(gens)
    }

    /// Fraction |set| / |G| as an exact rational; duplicates are ignored.
    pub fn density(&self, set: &[Element]) -> Result<Rat> {
        let distinct: BTreeSet<&Element> = set.iter().collect();
        for e in &distinct {
            self.check_element(e)?;
        }
        Ok(rat_counts(distinct.len() as u64, self.order()?))
    }

    /// Centralizer of the given elements: everything commuting with all of
    /// them. Materializes the group.
    pub fn centralizer(&self, ts: &[Element]) -> Result<Vec<Element>> {
        for t in ts {
            self.check_element(t)?;
        }
        let mut out = Vec::new();
        for i in 0..self.order()? {
            let g = self.element_at(i)?;
            if ts
                .iter()
                .all(|t| self.mul(&g, t) == self.mul(t, &g))
            {
                out.push(g);
            }
        }
        Ok(out)
    }

    /// The commutator subgroup, computed as the normal closure of the
    /// generator commutators.
    pub fn derived_subgroup(&self) -> Result<Vec<Element>> {
        let gens = self.generators();
        let mut seed: BTreeSet<Element> = BTreeSet::new();
        for (i, a) in gens.iter().enumerate() {
            for b in gens.iter().skip(i + 1) {
                seed.insert(self.commutator(a, b));
            }
        }
        let mut current: Vec<Element> = seed.into_iter().collect();
        loop {
            let closure = self.subgroup_closure(&current)?;
            let mut grew = false;
            let mut next: BTreeSet<Element> = closure.iter().cloned().collect();
            for x in &closure {
                for g in &gens {
                    let c = self.conjugate(x, g);
                    if next.insert(c) {
                        grew = true;
                    }
                }
            }
            if !grew {
                return Ok(closure);
            }
            current = next.into_iter().collect();
        }
    }

    /// Derived subgroup of a subgroup given as an element set: the closure
    /// of all pairwise commutators within the set.
    pub fn derived_of_set(&self, set: &[Element]) -> Result<Vec<Element>> {
        if set.len() > PAIRWISE_COMMUTATOR_MAX {
            return Err(Error::budget("subgroup too large for pairwise commutators"));
        }
        let mut comms: BTreeSet<Element> = BTreeSet::new();
        for (i, a) in set.iter().enumerate() {
            for b in set.iter().skip(i + 1) {
                comms.insert(self.commutator(a, b));
            }
        }
        let gens: Vec<Element> = comms.into_iter().collect();
        self.subgroup_closure(&gens)
    }

    /// Solvability via the derived series.
    pub fn is_solvable(&self) -> Result<bool> {
        let mut current = self.derived_subgroup()?;
        loop {
            if current.len() == 1 {
                return Ok(true);
            }
            let next = self.derived_of_set(&current)?;
            if next.len() == current.len() {
                return Ok(false);
            }
            current = next;
        }
    }

    /// Normality check: conjugates of a small generating set of `set` by
    /// the group generators must stay inside `set`.
    pub fn is_normal(&self, set: &[Element]) -> Result<bool> {
        if !self.is_subgroup(set)? {
            return Err(Error::invalid("normality check needs a subgroup"));
        }
        let members: BTreeSet<&Element> = set.iter().collect();
        let small = self.small_generating_set(set)?;
        for g in &self.generators() {
            for n in &small {
                if !members.contains(&self.conjugate(n, g)) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    // ------------------------------------------------------------------
    // Dense index tables (small groups only)
    // ------------------------------------------------------------------

    pub(crate) fn mult_table(&self) -> Result<Arc<MultTable>> {
        match &self.inner.backend {
            Backend::Blackbox { base, .. } => base.mult_table(),
            _ => {
                let cached = self.inner.mult.get_or_init(|| {
                    let n = self.order()?;
                    if n > MULT_TABLE_MAX {
                        return Err(Error::budget(
                            "group too large for a multiplication table",
                        ));
                    }
                    let n = n as usize;
                    let elems = self.elements()?;
                    let mut table = vec![0u32; n * n];
                    for (i, a) in elems.iter().enumerate() {
                        for (j, b) in elems.iter().enumerate() {
                            table[i * n + j] = self.index_of(&self.mul(a, b))? as u32;
                        }
                    }
                    let identity = self.index_of(&self.identity())? as u32;
                    Ok(Arc::new(MultTable { n, table, identity }))
                });
                cached.clone()
            }
        }
    }

    /// The full subgroup lattice (small groups only), cached.
    pub fn subgroup_lattice(&self) -> Result<Arc<lattice::SubgroupLattice>> {
        match &self.inner.backend {
            Backend::Blackbox { base, .. } => base.subgroup_lattice(),
            _ => self
                .inner
                .lattice
                .get_or_init(|| lattice::SubgroupLattice::build(self).map(Arc::new))
                .clone(),
        }
    }
}

pub struct ElementIter<'a> {
    group: &'a Group,
    next: u64,
    total: u64,
}

impl Iterator for ElementIter<'_> {
    type Item = Element;

    fn next(&mut self) -> Option<Element> {
        if self.next >= self.total {
            return None;
        }
        let e = self.group.element_at(self.next).expect("index in range");
        self.next += 1;
        Some(e)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.total - self.next) as usize;
        (left, Some(left))
    }
}

// ----------------------------------------------------------------------
// Subcosets
// ----------------------------------------------------------------------

/// Either the empty set or a coset q·K of a subgroup K, the shape of every
/// affine closure and of equalizers of affine homomorphisms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subcoset {
    rep: Option<Element>,
    subgroup: Vec<Element>,
}

impl Subcoset {
    pub fn empty() -> Subcoset {
        Subcoset {
            rep: None,
            subgroup: Vec::new(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.rep.is_none()
    }

    pub fn len(&self) -> usize {
        self.subgroup.len()
    }

    pub fn representative(&self) -> Option<&Element> {
        self.rep.as_ref()
    }

    /// The underlying subgroup K (empty vector for the empty subcoset).
    pub fn subgroup(&self) -> &[Element] {
        &self.subgroup
    }

    /// The coset itself as a canonically sorted element vector.
    pub fn as_sorted_vec(&self, g: &Group) -> Vec<Element> {
        match &self.rep {
            None => Vec::new(),
            Some(q) => {
                let mut v: Vec<Element> =
                    self.subgroup.iter().map(|k| g.mul(q, k)).collect();
                v.sort();
                v
            }
        }
    }

    pub fn contains(&self, g: &Group, e: &Element) -> bool {
        match &self.rep {
            None => false,
            Some(q) => {
                let shifted = g.mul(&g.inv(q), e);
                self.subgroup.binary_search(&shifted).is_ok()
            }
        }
    }

    pub fn density(&self, g: &Group) -> Result<Rat> {
        Ok(rat_counts(self.subgroup.len() as u64, g.order()?))
    }
}

impl Group {
    /// Affine closure of a set: the smallest coset of a subgroup containing
    /// it, computed as q·⟨q⁻¹S⟩ (independent of the choice of q ∈ S). The
    /// stored representative is the canonical minimum of the coset.
    pub fn affine_closure(&self, set: &[Element]) -> Result<Subcoset> {
        if set.is_empty() {
            return Ok(Subcoset::empty());
        }
        for e in set {
            self.check_element(e)?;
        }
        let q = set.iter().min().expect("nonempty");
        let qi = self.inv(q);
        let diffs: Vec<Element> = set.iter().map(|r| self.mul(&qi, r)).collect();
        let subgroup = self.subgroup_closure(&diffs)?;
        // canonical representative: minimum of the coset q·K
        let rep = subgroup
            .iter()
            .map(|k| self.mul(q, k))
            .min()
            .expect("nonempty subgroup");
        Ok(Subcoset {
            rep: Some(rep),
            subgroup,
        })
    }
}

// ----------------------------------------------------------------------
// Quotients
// ----------------------------------------------------------------------

/// G/N realized as a permutation group on the right cosets of N, together
/// with the projection and a transversal of minimal representatives.
pub struct Quotient {
    group: Group,
    base: Group,
    reps: Vec<Element>,
    coset_of: HashMap<Element, u32>,
    id_coset: u32,
}

impl Quotient {
    pub fn group(&self) -> &Group {
        &self.group
    }

    /// The group this quotient was formed from.
    pub fn base(&self) -> &Group {
        &self.base
    }

    pub fn cosets(&self) -> usize {
        self.reps.len()
    }

    /// Canonical (minimal) representative of the coset with this index.
    pub fn rep(&self, coset: usize) -> &Element {
        &self.reps[coset]
    }

    pub fn coset_index_of(&self, e: &Element) -> Result<u32> {
        self.coset_of
            .get(e)
            .copied()
            .ok_or_else(|| Error::invalid("element is not in the quotient's base group"))
    }

    /// The projection G -> G/N.
    pub fn project(&self, e: &Element) -> Result<Element> {
        self.base.check_element(e)?;
        let mut image = vec![0u16; self.reps.len()];
        for (c, rep) in self.reps.iter().enumerate() {
            image[c] = self.coset_index_of(&self.base.mul(rep, e))? as u16;
        }
        Ok(Element::Perm(image))
    }

    /// The minimal-representative section of the projection: maps a
    /// quotient element back to the canonical representative of its coset.
    pub fn transversal(&self, q: &Element) -> Result<Element> {
        self.group.check_element(q)?;
        match q {
            Element::Perm(p) => Ok(self.reps[p[self.id_coset as usize] as usize].clone()),
            _ => Err(Error::invalid("quotient elements are permutations")),
        }
    }
}

impl Group {
    /// Quotient by a normal subgroup, with projection and transversal.
    pub fn quotient(&self, normal: &[Element]) -> Result<Quotient> {
        if !self.is_normal(normal)? {
            return Err(Error::invalid("subgroup is not normal"));
        }
        let order = self.order()?;
        if order > MAX_ENUM {
            return Err(Error::budget("group too large for an explicit quotient"));
        }
        let n_len = normal.len() as u64;
        let cosets = (order / n_len) as usize;
        if cosets > u16::MAX as usize {
            return Err(Error::budget("too many cosets for a permutation quotient"));
        }

        let mut coset_of: HashMap<Element, u32> = HashMap::with_capacity(order as usize);
        let mut reps: Vec<Element> = Vec::with_capacity(cosets);
        for e in self.iter_elements()? {
            if coset_of.contains_key(&e) {
                continue;
            }
            // canonical scan order makes the first-found member minimal
            let c = reps.len() as u32;
            for n in normal {
                coset_of.insert(self.mul(n, &e), c);
            }
            coset_of.entry(e.clone()).or_insert(c);
            reps.push(e);
        }
        debug_assert_eq!(reps.len(), cosets);

        let id_coset = *coset_of
            .get(&self.identity())
            .expect("identity has a coset");

        // right multiplication action on right cosets: pi(g)[c] = coset(rep_c * g)
        let mut gen_perms: Vec<Vec<u16>> = Vec::new();
        for g in &self.generators() {
            let mut image = vec![0u16; cosets];
            for (c, rep) in reps.iter().enumerate() {
                image[c] = coset_of[&self.mul(rep, g)] as u16;
            }
            gen_perms.push(image);
        }
        let group = Group::perm(cosets, gen_perms)?;

        Ok(Quotient {
            group,
            base: self.clone(),
            reps,
            coset_of,
            id_coset,
        })
    }
}
