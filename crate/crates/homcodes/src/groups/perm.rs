//! Permutations as image arrays, composed left to right.
//!
//! A permutation of degree n is a `Vec<u16>` of length n whose entry at i is
//! the image of point i. `compose(p, q)` applies p first, then q.

use crate::error::{Error, Result};

pub fn identity(degree: usize) -> Vec<u16> {
    (0..degree as u16).collect()
}

pub fn is_permutation(p: &[u16]) -> bool {
    let n = p.len();
    let mut seen = vec![false; n];
    for &x in p {
        let x = x as usize;
        if x >= n || seen[x] {
            return false;
        }
        seen[x] = true;
    }
    true
}

/// Apply p first, then q.
pub fn compose(p: &[u16], q: &[u16]) -> Vec<u16> {
    debug_assert_eq!(p.len(), q.len());
    p.iter().map(|&x| q[x as usize]).collect()
}

pub fn invert(p: &[u16]) -> Vec<u16> {
    let mut inv = vec![0u16; p.len()];
    for (i, &x) in p.iter().enumerate() {
        inv[x as usize] = i as u16;
    }
    inv
}

/// Order of the permutation: lcm of its cycle lengths.
pub fn order(p: &[u16]) -> u64 {
    let mut seen = vec![false; p.len()];
    let mut ord: u64 = 1;
    for start in 0..p.len() {
        if seen[start] {
            continue;
        }
        let mut len: u64 = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = p[i] as usize;
            len += 1;
        }
        ord = num_integer::lcm(ord, len);
    }
    ord
}

pub fn is_even(p: &[u16]) -> bool {
    // Parity from cycle structure: a cycle of length L contributes L-1
    // transpositions.
    let mut seen = vec![false; p.len()];
    let mut transpositions = 0usize;
    for start in 0..p.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0usize;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = p[i] as usize;
            len += 1;
        }
        transpositions += len - 1;
    }
    transpositions % 2 == 0
}

/// Builds a permutation from disjoint-cycle notation, e.g. `&[&[0,1,2]]`
/// for the 3-cycle (0 1 2). Points not mentioned are fixed.
pub fn from_cycles(degree: usize, cycles: &[&[u16]]) -> Result<Vec<u16>> {
    let mut p = identity(degree);
    let mut touched = vec![false; degree];
    for cycle in cycles {
        for window in 0..cycle.len() {
            let from = cycle[window] as usize;
            let to = cycle[(window + 1) % cycle.len()];
            if from >= degree || to as usize >= degree {
                return Err(Error::invalid("cycle point out of range"));
            }
            if touched[from] {
                return Err(Error::invalid("cycles are not disjoint"));
            }
            touched[from] = true;
            p[from] = to;
        }
    }
    Ok(p)
}

/// Standard generators for the symmetric group S_n.
pub fn symmetric_generators(degree: usize) -> Vec<Vec<u16>> {
    if degree < 2 {
        return Vec::new();
    }
    let transposition = {
        let mut p = identity(degree);
        p.swap(0, 1);
        p
    };
    if degree == 2 {
        return vec![transposition];
    }
    let cycle: Vec<u16> = (0..degree as u16).map(|i| (i + 1) % degree as u16).collect();
    vec![transposition, cycle]
}

/// Standard generators for the alternating group A_n: the 3-cycle (0 1 2)
/// plus a long even cycle (the full n-cycle for odd n, an (n-1)-cycle
/// fixing 0 for even n).
pub fn alternating_generators(degree: usize) -> Vec<Vec<u16>> {
    if degree < 3 {
        return Vec::new();
    }
    let three_cycle = from_cycles(degree, &[&[0, 1, 2]]).expect("static cycle");
    if degree == 3 {
        return vec![three_cycle];
    }
    let long = if degree % 2 == 1 {
        (0..degree as u16).map(|i| (i + 1) % degree as u16).collect()
    } else {
        let mut p = identity(degree);
        for i in 1..degree as u16 {
            p[i as usize] = if (i as usize) == degree - 1 { 1 } else { i + 1 };
        }
        p
    };
    vec![three_cycle, long]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compose_is_left_to_right() {
        // p = (0 1), q = (1 2): apply p then q sends 0 -> 1 -> 2.
        let p = from_cycles(3, &[&[0, 1]]).unwrap();
        let q = from_cycles(3, &[&[1, 2]]).unwrap();
        let pq = compose(&p, &q);
        assert_eq!(pq[0], 2);
    }

    #[test]
    fn inverse_cancels() {
        let p = from_cycles(5, &[&[0, 1, 2, 3, 4]]).unwrap();
        assert_eq!(compose(&p, &invert(&p)), identity(5));
        assert_eq!(compose(&invert(&p), &p), identity(5));
    }

    #[test]
    fn orders_and_parity() {
        let p = from_cycles(5, &[&[0, 1], &[2, 3, 4]]).unwrap();
        assert_eq!(order(&p), 6);
        assert!(!is_even(&p));
        let q = from_cycles(5, &[&[0, 1, 2]]).unwrap();
        assert_eq!(order(&q), 3);
        assert!(is_even(&q));
        assert!(is_even(&identity(4)));
    }

    #[test]
    fn rejects_bad_cycles() {
        assert!(from_cycles(3, &[&[0, 3]]).is_err());
        assert!(from_cycles(3, &[&[0, 1], &[1, 2]]).is_err());
    }

    #[test]
    fn standard_generators_have_right_parity() {
        for n in 3..=8 {
            for g in alternating_generators(n) {
                assert!(is_permutation(&g));
                assert!(is_even(&g), "A_{n} generator must be even");
            }
            for g in symmetric_generators(n) {
                assert!(is_permutation(&g));
            }
        }
    }
}
