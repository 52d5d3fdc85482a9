//! Full subgroup lattices of small groups, with chain-depth computation.
//!
//! Depth of a subgroup K is the length of the longest strictly increasing
//! subgroup chain K < K_1 < ... < G. Built by closing the set of cyclic
//! subgroups under pairwise joins; complete because every subgroup is the
//! join of its cyclic subgroups.

use std::collections::{HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::groups::{Element, Group};

/// Largest group order for which the lattice is constructed.
pub const LATTICE_MAX_ORDER: u64 = 400;
/// Safety cap on the number of subgroups.
const LATTICE_MAX_SUBGROUPS: usize = 20_000;

type Bits = Vec<u64>;

fn bit_insert(bits: &mut Bits, i: u32) -> bool {
    let w = (i / 64) as usize;
    let mask = 1u64 << (i % 64);
    let fresh = bits[w] & mask == 0;
    bits[w] |= mask;
    fresh
}

fn bit_subset(a: &Bits, b: &Bits) -> bool {
    a.iter().zip(b.iter()).all(|(&x, &y)| x & !y == 0)
}

pub struct SubgroupNode {
    /// Canonical element indices, sorted ascending.
    pub elements: Vec<u32>,
    bits: Bits,
    small_gens: Vec<u32>,
}

impl SubgroupNode {
    pub fn order(&self) -> u64 {
        self.elements.len() as u64
    }
}

pub struct SubgroupLattice {
    group_order: u64,
    nodes: Vec<SubgroupNode>,
    /// contains[i * n + j] holds when node j is a subgroup of node i.
    contains: Vec<bool>,
    depth: Vec<u32>,
    by_bits: HashMap<Bits, usize>,
    full: usize,
    trivial: usize,
}

struct Closer {
    table: std::sync::Arc<crate::groups::MultTable>,
    words: usize,
}

impl Closer {
    fn closure(&self, gens: &[u32]) -> (Vec<u32>, Bits) {
        let mut bits = vec![0u64; self.words];
        let id = self.table.identity;
        bit_insert(&mut bits, id);
        let mut order: Vec<u32> = vec![id];
        let mut head = 0usize;
        while head < order.len() {
            let x = order[head];
            head += 1;
            for &g in gens {
                let y = self.table.mul(x, g);
                if bit_insert(&mut bits, y) {
                    order.push(y);
                }
            }
        }
        order.sort_unstable();
        (order, bits)
    }

    /// Greedy reduction of a generating list for the same subgroup.
    fn reduce_gens(&self, gens: &[u32], target_bits: &Bits) -> Vec<u32> {
        let mut kept: Vec<u32> = Vec::new();
        let mut have = {
            let mut b = vec![0u64; self.words];
            bit_insert(&mut b, self.table.identity);
            b
        };
        for &g in gens {
            let w = (g / 64) as usize;
            if have[w] & (1u64 << (g % 64)) != 0 {
                continue;
            }
            kept.push(g);
            let (_, bits) = self.closure(&kept);
            have = bits;
            if have == *target_bits {
                break;
            }
        }
        kept
    }
}

impl SubgroupLattice {
    pub fn build(g: &Group) -> Result<SubgroupLattice> {
        let order = g.order()?;
        if order > LATTICE_MAX_ORDER {
            return Err(Error::budget(format!(
                "subgroup lattice limited to groups of order <= {LATTICE_MAX_ORDER}"
            )));
        }
        let table = g.mult_table()?;
        let n = table.n;
        let closer = Closer {
            table: table.clone(),
            words: n.div_ceil(64),
        };

        let mut nodes: Vec<SubgroupNode> = Vec::new();
        let mut by_bits: HashMap<Bits, usize> = HashMap::new();
        let mut queue: VecDeque<(usize, usize)> = VecDeque::new();

        let push_node =
            |elements: Vec<u32>,
             bits: Bits,
             gens: Vec<u32>,
             nodes: &mut Vec<SubgroupNode>,
             by_bits: &mut HashMap<Bits, usize>,
             queue: &mut VecDeque<(usize, usize)>|
             -> Result<Option<usize>> {
                if by_bits.contains_key(&bits) {
                    return Ok(None);
                }
                if nodes.len() >= LATTICE_MAX_SUBGROUPS {
                    return Err(Error::budget("subgroup count exceeds the lattice cap"));
                }
                let idx = nodes.len();
                for i in 0..idx {
                    queue.push_back((i, idx));
                }
                by_bits.insert(bits.clone(), idx);
                nodes.push(SubgroupNode {
                    elements,
                    bits,
                    small_gens: gens,
                });
                Ok(Some(idx))
            };

        // seed with every cyclic subgroup
        for e in 0..n as u32 {
            let (elements, bits) = closer.closure(&[e]);
            let gens = if elements.len() == 1 { vec![] } else { vec![e] };
            push_node(elements, bits, gens, &mut nodes, &mut by_bits, &mut queue)?;
        }

        // close under pairwise joins
        while let Some((i, j)) = queue.pop_front() {
            if bit_subset(&nodes[i].bits, &nodes[j].bits)
                || bit_subset(&nodes[j].bits, &nodes[i].bits)
            {
                continue;
            }
            let mut gens: Vec<u32> = nodes[i]
                .small_gens
                .iter()
                .chain(nodes[j].small_gens.iter())
                .copied()
                .collect();
            gens.sort_unstable();
            gens.dedup();
            let (elements, bits) = closer.closure(&gens);
            if gens.len() > 12 {
                gens = closer.reduce_gens(&gens, &bits);
            }
            push_node(elements, bits, gens, &mut nodes, &mut by_bits, &mut queue)?;
        }

        // canonical node order: by size, then by element list
        let mut perm: Vec<usize> = (0..nodes.len()).collect();
        perm.sort_by(|&a, &b| {
            (nodes[a].elements.len(), &nodes[a].elements)
                .cmp(&(nodes[b].elements.len(), &nodes[b].elements))
        });
        let mut sorted_nodes: Vec<SubgroupNode> = Vec::with_capacity(nodes.len());
        for &old in &perm {
            sorted_nodes.push(SubgroupNode {
                elements: std::mem::take(&mut nodes[old].elements),
                bits: std::mem::take(&mut nodes[old].bits),
                small_gens: std::mem::take(&mut nodes[old].small_gens),
            });
        }
        let nodes = sorted_nodes;
        let by_bits: HashMap<Bits, usize> = nodes
            .iter()
            .enumerate()
            .map(|(i, node)| (node.bits.clone(), i))
            .collect();

        let count = nodes.len();
        let mut contains = vec![false; count * count];
        for i in 0..count {
            for j in 0..count {
                contains[i * count + j] = bit_subset(&nodes[j].bits, &nodes[i].bits);
            }
        }

        let trivial = 0; // unique node of order 1, sorted first
        let full = count - 1; // the whole group, sorted last
        debug_assert_eq!(nodes[trivial].elements.len(), 1);
        debug_assert_eq!(nodes[full].elements.len(), n);

        // longest-chain DP from the top, in decreasing node order
        let mut depth = vec![0u32; count];
        for j in (0..count).rev() {
            if j == full {
                continue;
            }
            let mut best = 0u32;
            for i in (j + 1)..count {
                // i > j in canonical order means |node_i| >= |node_j|; a
                // proper supergroup is strictly larger, so scanning upward
                // sees every proper supergroup after its own depth is set
                if nodes[i].elements.len() > nodes[j].elements.len() && contains[i * count + j] {
                    best = best.max(1 + depth[i]);
                }
            }
            depth[j] = best;
        }

        Ok(SubgroupLattice {
            group_order: order,
            nodes,
            contains,
            depth,
            by_bits,
            full,
            trivial,
        })
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn node(&self, i: usize) -> &SubgroupNode {
        &self.nodes[i]
    }

    /// Nodes in canonical order (ascending subgroup size).
    pub fn nodes(&self) -> &[SubgroupNode] {
        &self.nodes
    }

    pub fn full_index(&self) -> usize {
        self.full
    }

    pub fn trivial_index(&self) -> usize {
        self.trivial
    }

    pub fn contains(&self, sup: usize, sub: usize) -> bool {
        self.contains[sup * self.nodes.len() + sub]
    }

    /// Depth of node i: longest chain from it up to the whole group.
    pub fn depth_of_node(&self, i: usize) -> u32 {
        self.depth[i]
    }

    /// Length of the longest subgroup chain in the whole lattice.
    pub fn max_chain_length(&self) -> u32 {
        self.depth[self.trivial]
    }

    /// Finds the node for a subgroup given by canonical element indices.
    pub fn find_by_indices(&self, sorted_indices: &[u32]) -> Option<usize> {
        let words = self.nodes[self.full].bits.len();
        let mut bits = vec![0u64; words];
        for &i in sorted_indices {
            bit_insert(&mut bits, i);
        }
        self.by_bits.get(&bits).copied()
    }

    pub fn group_order(&self) -> u64 {
        self.group_order
    }
}

/// Depth of a subgroup (as an element set) in the lattice of `g`.
pub fn depth_of_subgroup(g: &Group, subgroup: &[Element]) -> Result<u32> {
    let lat = g.subgroup_lattice()?;
    let mut idx: Vec<u32> = subgroup
        .iter()
        .map(|e| g.index_of(e).map(|i| i as u32))
        .collect::<Result<_>>()?;
    idx.sort_unstable();
    idx.dedup();
    let node = lat
        .find_by_indices(&idx)
        .ok_or_else(|| Error::invalid("element set is not a subgroup"))?;
    Ok(lat.depth_of_node(node))
}
