use std::collections::BTreeSet;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Error;
use crate::groups::lattice::depth_of_subgroup;
use crate::groups::{Element, Group};
use crate::homcore::{
    agreement_affine, agreement_homs, agreement_tables, lambda_exact,
    lift_through_quotient, make_hom, mean_agreement_affine, quotient_family, AffineHom,
    Homomorphism, ReceivedWord,
};
use crate::rat::{rat, rat_counts, rat_int, Rat};

use super::*;

fn z(orders: &[u32]) -> Group {
    Group::abelian(orders.to_vec()).unwrap()
}

fn el(g: &Group, values: &[u64]) -> Element {
    g.element_from_values(values).unwrap()
}

fn random_word(g: &Group, h: &Group, seed: u64) -> ReceivedWord {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let table = (0..g.order().unwrap())
        .map(|_| h.random_element(&mut rng).unwrap())
        .collect();
    ReceivedWord::from_table(g, h, table).unwrap()
}

// -------------------------------------------------------------- enumerate

#[test]
fn hom_counts_on_small_cyclic_pairs() {
    assert_eq!(enumerate_homs(&z(&[2]), &z(&[2])).unwrap().len(), 2);
    // the image of a generator of Z_6 must have order dividing gcd(6,4)
    assert_eq!(enumerate_homs(&z(&[2, 3]), &z(&[4])).unwrap().len(), 2);
    assert_eq!(enumerate_ahoms(&z(&[2]), &z(&[2])).unwrap().len(), 4);
}

#[test]
fn hom_count_on_a5_matches_its_automorphism_structure() {
    let a5 = Group::alternating(5).unwrap();
    // trivial map plus the 120 automorphisms (inner ones and conjugation
    // by odd permutations); A_5 simple leaves no other images.
    assert_eq!(enumerate_homs(&a5, &a5).unwrap().len(), 121);
    assert_eq!(enumerate_homs(&a5, &z(&[2])).unwrap().len(), 1);
}

#[test]
fn ahom_count_is_codomain_order_times_hom_count() {
    let pairs = [
        (z(&[4]), z(&[2])),
        (z(&[2, 3]), z(&[2, 3])),
        (Group::symmetric(3).unwrap(), Group::symmetric(3).unwrap()),
        (z(&[2, 2]), z(&[4])),
    ];
    for (g, h) in &pairs {
        let homs = enumerate_homs(g, h).unwrap();
        let ahoms = enumerate_ahoms(g, h).unwrap();
        assert_eq!(ahoms.len() as u64, h.order().unwrap() * homs.len() as u64);
        assert!(ahoms.windows(2).all(|w| w[0] < w[1]), "sorted, no dups");
    }
}

#[test]
fn enumeration_respects_the_search_budget() {
    let g = z(&[2; 8]);
    let h = z(&[2; 4]);
    match enumerate_homs(&g, &h) {
        Err(Error::BudgetExceeded(_)) => {}
        other => panic!("expected a budget error, got {other:?}"),
    }
}

// -------------------------------------------------------------- true lists

#[test]
fn true_list_contains_a_planted_codeword() {
    let g = z(&[2, 3]);
    let psi = AffineHom::new(el(&g, &[0, 2]), Homomorphism::identity_on(&g).unwrap()).unwrap();
    let f = ReceivedWord::plant_exact(&psi, &rat_int(1), 5).unwrap();

    let exact = true_list(CodeKind::AHom, &f, Threshold::at_least(rat_int(1))).unwrap();
    assert_eq!(exact.len(), 1);
    assert!(exact.contains(&psi));
    assert_eq!(exact.entries()[0].1, rat_int(1));

    let impossible = true_list(CodeKind::AHom, &f, Threshold::at_least(rat(3, 2))).unwrap();
    assert!(impossible.is_empty());
    let strict = true_list(CodeKind::AHom, &f, Threshold::above(rat_int(1))).unwrap();
    assert!(strict.is_empty());
}

#[test]
fn true_list_boundary_semantics_split_at_the_exact_agreement() {
    let g = z(&[2, 3]);
    let psi = AffineHom::from_hom(Homomorphism::identity_on(&g).unwrap());
    let f = ReceivedWord::plant_exact(&psi, &rat(2, 3), 9).unwrap();
    assert_eq!(f.plant_info().unwrap().achieved, rat(2, 3));

    let inclusive = true_list(CodeKind::AHom, &f, Threshold::at_least(rat(2, 3))).unwrap();
    assert!(inclusive.contains(&psi));
    let strict = true_list(CodeKind::AHom, &f, Threshold::above(rat(2, 3))).unwrap();
    assert!(!strict.contains(&psi));
    for (_, agr) in strict.entries() {
        assert!(*agr > rat(2, 3));
    }
}

#[test]
fn true_list_entries_are_sorted_with_recomputable_agreements() {
    let g = z(&[4]);
    let h = z(&[2]);
    let f = random_word(&g, &h, 31);
    let table = f.snapshot_table().unwrap();

    let list = true_list(CodeKind::AHom, &f, Threshold::above(Rat::zero())).unwrap();
    assert!(list.entries().windows(2).all(|w| w[0].0 < w[1].0));
    for (psi, agr) in list.entries() {
        assert_eq!(
            *agr,
            agreement_tables(&table, psi.value_table().unwrap()).unwrap()
        );
        assert!(*agr > Rat::zero());
    }

    let everything = true_list(CodeKind::AHom, &f, Threshold::at_least(Rat::zero())).unwrap();
    assert_eq!(
        everything.len(),
        enumerate_ahoms(&g, &h).unwrap().len(),
        "a zero threshold admits the whole code"
    );
}

// ------------------------------------------------- agreement structure

#[test]
fn max_agreement_agrees_between_hom_and_ahom_codes() {
    let pairs = [
        (z(&[2]), z(&[2])),
        (z(&[4]), z(&[2])),
        (z(&[2, 2]), z(&[2])),
        (z(&[3]), z(&[3])),
        (z(&[2, 3]), z(&[2, 3])),
        (Group::symmetric(3).unwrap(), Group::symmetric(3).unwrap()),
        (Group::symmetric(3).unwrap(), z(&[2, 3])),
    ];
    for (g, h) in &pairs {
        let ahoms = enumerate_ahoms(g, h).unwrap();
        let mut best = Rat::zero();
        for i in 0..ahoms.len() {
            for j in (i + 1)..ahoms.len() {
                let a = agreement_affine(&ahoms[i], &ahoms[j]).unwrap();
                if a > best {
                    best = a;
                }
            }
        }
        assert_eq!(best, lambda_exact(g, h).unwrap(), "pair {:?}", g.spec());
    }
}

#[test]
fn affine_agreements_come_from_hom_agreements_even_nonabelian() {
    let s3 = Group::symmetric(3).unwrap();
    let homs = enumerate_homs(&s3, &s3).unwrap();
    assert_eq!(homs.len(), 10);

    let mut hom_agreements: BTreeSet<Rat> = BTreeSet::new();
    hom_agreements.insert(Rat::zero());
    for a in &homs {
        for b in &homs {
            hom_agreements.insert(agreement_homs(a, b).unwrap());
        }
    }

    let ahoms = enumerate_ahoms(&s3, &s3).unwrap();
    for i in 0..ahoms.len() {
        for j in i..ahoms.len() {
            let a = agreement_affine(&ahoms[i], &ahoms[j]).unwrap();
            assert!(
                hom_agreements.contains(&a),
                "affine agreement {a} is not a homomorphism agreement"
            );
        }
    }
}

// ------------------------------------------------------ irrelevant kernel

#[test]
fn irrelevant_kernel_examples() {
    let ker = irrelevant_kernel(&z(&[4]), &z(&[2])).unwrap();
    assert_eq!(ker, vec![el(&z(&[4]), &[0]), el(&z(&[4]), &[2])]);

    let a5 = Group::alternating(5).unwrap();
    let ker = irrelevant_kernel(&a5, &a5).unwrap();
    assert_eq!(ker.len(), 1, "the identity automorphism sees everything");

    let g24 = z(&[2, 4]);
    let ker = irrelevant_kernel(&g24, &z(&[2])).unwrap();
    assert_eq!(ker, vec![el(&g24, &[0, 0]), el(&g24, &[0, 2])]);
}

#[test]
fn irrelevant_kernel_contains_the_derived_subgroup_for_abelian_codomains() {
    let cases = [
        (Group::symmetric(3).unwrap(), z(&[2, 3])),
        (Group::symmetric(3).unwrap(), z(&[2])),
        (Group::alternating(4).unwrap(), z(&[2, 3])),
    ];
    for (g, h) in &cases {
        let ker: BTreeSet<Element> = irrelevant_kernel(g, h).unwrap().into_iter().collect();
        for c in g.derived_subgroup().unwrap() {
            assert!(ker.contains(&c));
        }
    }
    // For S_3 -> Z_6 the two sides coincide exactly.
    let s3 = Group::symmetric(3).unwrap();
    assert_eq!(
        irrelevant_kernel(&s3, &z(&[2, 3])).unwrap(),
        s3.derived_subgroup().unwrap()
    );
}

// ------------------------------------------------ quotient identification

#[test]
fn quotient_family_mean_agreement_matches_direct_agreement() {
    let g = z(&[4]);
    let h = z(&[2]);
    let f = random_word(&g, &h, 77);
    let table = f.snapshot_table().unwrap();
    let kernel = irrelevant_kernel(&g, &h).unwrap();

    let (q, family) = quotient_family(&f, &kernel).unwrap();
    assert_eq!(f.queries(), g.order().unwrap(), "one counted query per cell");

    for psi in enumerate_ahoms(q.group(), &h).unwrap() {
        let mean = mean_agreement_affine(&family, &psi).unwrap();
        let lifted = lift_through_quotient(&q, &psi).unwrap();
        let direct = agreement_tables(&table, lifted.value_table().unwrap()).unwrap();
        assert_eq!(mean, direct);
    }
}

fn assert_mean_list_identifies(g: &Group, h: &Group, seed: u64) {
    let f = random_word(g, h, seed);
    let kernel = irrelevant_kernel(g, h).unwrap();
    let (q, family) = quotient_family(&f, &kernel).unwrap();

    for threshold in [
        Threshold::at_least(rat(1, 2)),
        Threshold::above(rat(1, 2)),
        Threshold::at_least(rat(3, 4)),
    ] {
        let direct = true_list(CodeKind::AHom, &f, threshold.clone()).unwrap();
        let mean = true_mean_list(CodeKind::AHom, &family, threshold).unwrap();
        let lifted = lift_list(&q, &mean).unwrap();

        assert_eq!(direct.len(), lifted.len());
        for ((a, ra), (b, rb)) in direct.entries().iter().zip(lifted.entries()) {
            assert_eq!(a, b);
            assert_eq!(ra, rb);
        }
    }
}

#[test]
fn mean_list_identification_on_z4() {
    for seed in 0..10 {
        assert_mean_list_identifies(&z(&[4]), &z(&[2]), 100 + seed);
    }
}

#[test]
fn mean_list_identification_on_z2xz4() {
    for seed in 0..10 {
        assert_mean_list_identifies(&z(&[2, 4]), &z(&[2]), 200 + seed);
    }
}

#[test]
fn lambda_is_invariant_under_irrelevant_quotients() {
    let cases = [
        (z(&[4]), z(&[2])),
        (z(&[2, 4]), z(&[2])),
        (Group::symmetric(3).unwrap(), z(&[2])),
    ];
    for (g, h) in &cases {
        let kernel = irrelevant_kernel(g, h).unwrap();
        let q = g.quotient(&kernel).unwrap();
        assert_eq!(
            lambda_exact(g, h).unwrap(),
            lambda_exact(q.group(), h).unwrap(),
            "pair {:?}",
            g.spec()
        );
    }
}

// --------------------------------------------------------- bucket splits

#[test]
fn greedy_bucket_split_returns_singleton_for_singleton_list() {
    let g = z(&[2, 3]);
    let psi = AffineHom::new(el(&g, &[0, 2]), Homomorphism::identity_on(&g).unwrap()).unwrap();
    let f = ReceivedWord::plant_exact(&psi, &rat_int(1), 3).unwrap();
    let list = true_list(CodeKind::AHom, &f, Threshold::at_least(rat_int(1))).unwrap();
    assert_eq!(list.len(), 1);

    let split = greedy_bucket_split(&list, &rat(1, 2)).unwrap();
    assert_eq!(split.reps, vec![0]);
    assert_eq!(split.buckets, vec![vec![0]]);
    // threshold 1 = lambda + 1/2, so the cap is 1/(4*1*(1/2)) + 1
    assert_eq!(split.bound, Some(rat(3, 2)));
}

#[test]
fn greedy_bucket_split_covers_random_lists() {
    let g = z(&[2, 3]);
    let lambda = lambda_exact(&g, &g).unwrap();
    assert_eq!(lambda, rat(1, 2));
    let lambda_sq = rat(1, 4);
    let threshold = &lambda + rat(1, 4);

    for seed in 0..10 {
        let f = random_word(&g, &g, 400 + seed);
        let list = true_list(CodeKind::AHom, &f, Threshold::at_least(threshold.clone())).unwrap();
        let split = greedy_bucket_split(&list, &lambda).unwrap();

        for (a, &i) in split.reps.iter().enumerate() {
            for &j in split.reps.iter().skip(a + 1) {
                let agr = agreement_affine(&list.entries()[i].0, &list.entries()[j].0).unwrap();
                assert!(agr <= lambda_sq, "representatives must be pairwise far");
            }
        }

        let mut covered = vec![false; list.len()];
        for (b, &r) in split.reps.iter().enumerate() {
            for &i in &split.buckets[b] {
                let agr = agreement_affine(&list.entries()[i].0, &list.entries()[r].0).unwrap();
                assert!(agr > lambda_sq, "bucket members sit close to their rep");
                covered[i] = true;
            }
        }
        assert!(covered.iter().all(|&c| c));

        // cap: 1/(4(lambda+eps)eps) + 1 with eps = 1/4
        let expect = rat(1, 4) / (threshold.clone() * rat(1, 4)) + rat_int(1);
        assert_eq!(split.bound, Some(expect));
    }
}

// ------------------------------------------------- strong negative corr.

#[test]
fn snc_examples_and_rejections() {
    // tau = 1/4 makes the cap exactly 2, met by two disjoint half-sets
    let check = snc_bound_check(
        4,
        &[vec![0, 1], vec![2, 3]],
        &rat(1, 2),
        &rat(1, 4),
    )
    .unwrap();
    assert_eq!(check.r, 2);
    assert_eq!(check.bound, rat_int(2));
    assert_eq!(check.slack, Rat::zero());

    // overlapping halves violate the intersection premise
    match snc_bound_check(4, &[vec![0, 1], vec![1, 2]], &rat(1, 2), &rat(1, 4)) {
        Err(Error::InvalidInput(msg)) => assert!(msg.contains("intersect"), "got: {msg}"),
        other => panic!("expected rejection, got {other:?}"),
    }
    // a sparse set violates the density premise
    match snc_bound_check(4, &[vec![0], vec![2, 3]], &rat(1, 2), &rat(1, 4)) {
        Err(Error::InvalidInput(msg)) => assert!(msg.contains("density"), "got: {msg}"),
        other => panic!("expected rejection, got {other:?}"),
    }
    assert!(snc_bound_check(0, &[], &rat(1, 2), &rat(1, 4)).is_err());
    assert!(snc_bound_check(4, &[vec![7]], &rat(1, 4), &rat(1, 4)).is_err());
}

#[test]
fn random_snc_families_respect_the_cap() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut accepted = 0u32;
    let mut attempts = 0u32;
    while accepted < 1000 {
        attempts += 1;
        assert!(attempts < 50_000, "rejection sampling stalled");

        let x: u64 = rng.random_range(8..=24);
        let k: usize = rng.random_range(2..=5);

        let sets: Vec<Vec<u64>> = if rng.random_bool(0.5) {
            // disjoint equal blocks of a shuffled ground set
            let size = rng.random_range(1..=(x as usize / k));
            let mut ground: Vec<u64> = (0..x).collect();
            for i in (1..ground.len()).rev() {
                ground.swap(i, rng.random_range(0..=i));
            }
            (0..k)
                .map(|b| ground[b * size..(b + 1) * size].to_vec())
                .collect()
        } else {
            (0..k)
                .map(|_| (0..x).filter(|_| rng.random_bool(0.5)).collect())
                .collect()
        };

        if sets.iter().any(|s| s.is_empty()) {
            continue;
        }
        let rho = sets
            .iter()
            .map(|s| rat_counts(s.len() as u64, x))
            .min()
            .unwrap();
        let mut worst = Rat::zero();
        for i in 0..sets.len() {
            let a: BTreeSet<u64> = sets[i].iter().copied().collect();
            for s in &sets[i + 1..] {
                let common = s.iter().filter(|e| a.contains(e)).count();
                let d = rat_counts(common as u64, x);
                if d > worst {
                    worst = d;
                }
            }
        }
        let rho_sq = &rho * &rho;
        if worst >= rho_sq {
            continue;
        }
        let tau = rho_sq - worst;

        // premises hold by construction; the check must accept and the cap
        // must never be violated (it panics if it is)
        let check = snc_bound_check(x, &sets, &rho, &tau).unwrap();
        assert!(check.slack >= Rat::zero());
        accepted += 1;
    }
}

// ----------------------------------------------------------- list caps

#[test]
fn large_eps_shortcut_frozen_values() {
    assert_eq!(
        large_eps_shortcut(&Rat::zero(), &rat(1, 2)),
        Some(rat_int(3))
    );
    // 1/10 <= (1/2)^2 / 2 = 1/8, so the same cap applies
    assert_eq!(
        large_eps_shortcut(&rat(1, 10), &rat(1, 2)),
        Some(rat_int(3))
    );
    assert_eq!(large_eps_shortcut(&rat(1, 10), &rat(1, 10)), None);
    assert_eq!(large_eps_shortcut(&Rat::zero(), &Rat::zero()), None);
}

#[test]
fn large_eps_cap_holds_on_a_trivial_hom_pair() {
    // Hom(A_5, Z_2) is only the trivial map, so lambda = 0 and the list at
    // agreement 1/2 can hold at most 3 codewords; aHom has just 2.
    let a5 = Group::alternating(5).unwrap();
    let h = z(&[2]);
    assert_eq!(lambda_exact(&a5, &h).unwrap(), Rat::zero());
    let cap = large_eps_shortcut(&Rat::zero(), &rat(1, 2)).unwrap();

    let f = random_word(&a5, &h, 11);
    let list = true_list(CodeKind::AHom, &f, Threshold::at_least(rat(1, 2))).unwrap();
    assert!(rat_int(list.len() as i64) <= cap);
}

// ------------------------------------------------------------ sub-buckets

#[test]
fn subbucket_with_full_label_subgroup_is_at_most_the_representative() {
    let g = z(&[2, 3]);
    let psi = AffineHom::new(el(&g, &[1, 1]), Homomorphism::identity_on(&g).unwrap()).unwrap();
    let f = ReceivedWord::plant_exact(&psi, &rat(2, 3), 8).unwrap();

    let label: Vec<Element> = g.elements().unwrap().to_vec();
    let check = subbucket_bound_check(
        &f,
        &psi,
        &label,
        &rat(1, 6),
        ThresholdKind::AtLeast,
    )
    .unwrap();
    assert_eq!(check.depth, 0);
    assert_eq!(check.bound, rat_int(1));
    assert_eq!(check.lambda, rat(1, 2));
    assert_eq!(check.members, vec![psi]);
}

#[test]
fn subbucket_bounds_on_a5_planted_instances() {
    let a5 = Group::alternating(5).unwrap();
    let psi = AffineHom::from_hom(Homomorphism::identity_on(&a5).unwrap());
    // agreement lambda + 2/5 = 1/2
    let f = ReceivedWord::plant_exact(&psi, &rat(1, 2), 21).unwrap();

    let five_cycle = el(&a5, &[1, 2, 3, 4, 0]);
    let c5 = a5.subgroup_closure(&[five_cycle]).unwrap();
    assert_eq!(c5.len(), 5);
    let check = subbucket_bound_check(&f, &psi, &c5, &rat(2, 5), ThresholdKind::AtLeast).unwrap();
    assert_eq!(check.lambda, rat(1, 10));
    assert_eq!(check.depth, 2, "C_5 < D_5 < A_5 is the longest chain up");
    assert_eq!(check.bound, rat(25, 4));
    assert!(check.members.iter().any(|m| *m == psi));

    // the point stabilizer A_4 is maximal, so depth 1 and cap 5/2
    let a4 = a5
        .subgroup_closure(&[el(&a5, &[1, 2, 0, 3, 4]), el(&a5, &[1, 0, 3, 2, 4])])
        .unwrap();
    assert_eq!(a4.len(), 12);
    let check = subbucket_bound_check(&f, &psi, &a4, &rat(2, 5), ThresholdKind::AtLeast).unwrap();
    assert_eq!(check.depth, 1);
    assert_eq!(check.bound, rat(5, 2));
    assert!(check.members.len() <= 2);
}

#[test]
fn subbucket_rejects_a_non_subgroup_label() {
    let g = z(&[2, 3]);
    let psi = AffineHom::from_hom(Homomorphism::identity_on(&g).unwrap());
    let f = ReceivedWord::plant_exact(&psi, &rat_int(1), 2).unwrap();
    let err = subbucket_bound_check(
        &f,
        &psi,
        &[el(&g, &[1, 1])],
        &rat(1, 4),
        ThresholdKind::AtLeast,
    )
    .unwrap_err();
    match err {
        Error::InvalidInput(msg) => assert!(msg.contains("subgroup"), "got: {msg}"),
        other => panic!("expected invalid input, got {other:?}"),
    }
}

// ------------------------------------------------------------ image cover

#[test]
fn abelian_image_cover_frozen_small_instance() {
    let g = z(&[2, 2]);
    let h = z(&[2]);
    // the word is the parity map x+y corrupted at the identity only
    let xy = make_hom(&g, &h, vec![el(&h, &[1]), el(&h, &[1])]).unwrap();
    let mut table = xy.value_table().unwrap().to_vec();
    table[0] = el(&h, &[1]);
    let f = ReceivedWord::from_table(&g, &h, table).unwrap();

    let cover = abelian_image_cover(&f, &rat(1, 4), &[xy]).unwrap();
    assert_eq!(cover.lambda, rat(1, 2));
    assert_eq!(cover.subgroups, vec![vec![el(&h, &[0]), el(&h, &[1])]]);
    // cap: 1/(4 * 3/4 * 1/16) + 4 = 16/3 + 4
    assert_eq!(cover.bound, rat(28, 3));
}

#[test]
fn abelian_image_cover_catalog_cover_property() {
    let pairs = [
        (z(&[4]), z(&[2])),
        (z(&[2, 2]), z(&[2, 3])),
        (z(&[2, 3]), Group::symmetric(3).unwrap()),
        (z(&[8]), z(&[4])),
        (z(&[2, 4]), z(&[4])),
    ];
    for (g, h) in &pairs {
        let lambda = lambda_exact(g, h).unwrap();
        for seed in 0..6 {
            let f = random_word(g, h, 700 + seed);
            for eps in [rat(1, 4), rat(1, 2)] {
                let threshold = &lambda + &eps;
                let list =
                    true_list(CodeKind::Hom, &f, Threshold::at_least(threshold.clone())).unwrap();
                let split = greedy_bucket_split(&list, &lambda).unwrap();
                let reps: Vec<_> = split
                    .reps
                    .iter()
                    .map(|&i| list.entries()[i].0.base().clone())
                    .collect();

                let cover = abelian_image_cover(&f, &eps, &reps).unwrap();
                assert!(rat_int(cover.subgroups.len() as i64) <= cover.bound);
                for (phi, _) in list.entries() {
                    let image = phi.base().image_subgroup().unwrap();
                    assert!(
                        cover.subgroups.iter().any(|m| image
                            .iter()
                            .all(|x| m.binary_search(x).is_ok())),
                        "a listed image escaped the cover"
                    );
                }
            }
        }
    }
}

#[test]
fn image_cover_rejects_bad_premises() {
    let s3 = Group::symmetric(3).unwrap();
    let f = random_word(&s3, &z(&[2]), 1);
    match abelian_image_cover(&f, &rat(1, 4), &[]) {
        Err(Error::InvalidInput(msg)) => assert!(msg.contains("abelian"), "got: {msg}"),
        other => panic!("expected invalid input, got {other:?}"),
    }

    let g = z(&[2, 2]);
    let h = z(&[2]);
    let xy = make_hom(&g, &h, vec![el(&h, &[1]), el(&h, &[1])]).unwrap();
    let f = ReceivedWord::from_table(&g, &h, xy.value_table().unwrap().to_vec()).unwrap();

    // a duplicated representative pair agrees far above lambda^2
    match abelian_image_cover(&f, &rat(1, 4), &[xy.clone(), xy.clone()]) {
        Err(Error::InvalidInput(msg)) => assert!(msg.contains("lambda"), "got: {msg}"),
        other => panic!("expected invalid input, got {other:?}"),
    }
    // an unlisted representative fails the threshold premise
    let trivial = Homomorphism::trivial(&g, &h).unwrap();
    match abelian_image_cover(&f, &rat(1, 4), &[trivial.clone()]) {
        Err(Error::InvalidInput(msg)) => assert!(msg.contains("threshold"), "got: {msg}"),
        other => panic!("expected invalid input, got {other:?}"),
    }
    // no representatives at all cannot cover a nonempty list
    match abelian_image_cover(&f, &rat(1, 4), &[]) {
        Err(Error::InvalidInput(msg)) => assert!(msg.contains("cover"), "got: {msg}"),
        other => panic!("expected invalid input, got {other:?}"),
    }
}

// --------------------------------------------------- depth and frequency

/// Exact fraction of tuples in S^d whose join with the label subgroup has
/// density above `lambda`.
fn depth_event_frequency(g: &Group, label: &[Element], s: &[Element], lambda: &Rat, d: u32) -> Rat {
    let order = g.order().unwrap();
    let mut hits = 0u64;
    let mut total = 0u64;
    let mut idx = vec![0usize; d as usize];
    loop {
        let mut gens: Vec<Element> = label.to_vec();
        gens.extend(idx.iter().map(|&i| s[i].clone()));
        let joined = g.subgroup_closure(&gens).unwrap();
        if rat_counts(joined.len() as u64, order) > *lambda {
            hits += 1;
        }
        total += 1;

        let mut k = 0usize;
        loop {
            if k == idx.len() {
                let freq = rat_counts(hits, total);
                assert_eq!(total, (s.len() as u64).pow(d));
                return freq;
            }
            idx[k] += 1;
            if idx[k] < s.len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

#[test]
fn depth_event_frequency_meets_its_lower_bound_exactly() {
    // K = {e} in Z_2 x Z_2 has depth 2; S is the three non-identity
    // elements, lambda = 1/2, eps = 1/4. A tuple generates past density
    // 1/2 exactly when its two entries differ: frequency 6/9.
    let g = z(&[2, 2]);
    let label = vec![el(&g, &[0, 0])];
    assert_eq!(depth_of_subgroup(&g, &label).unwrap(), 2);
    let s: Vec<Element> = g
        .elements()
        .unwrap()
        .iter()
        .filter(|e| !g.is_identity(e))
        .cloned()
        .collect();
    let freq = depth_event_frequency(&g, &label, &s, &rat(1, 2), 2);
    assert_eq!(freq, rat(2, 3));
    // (eps / (lambda + eps))^d = (1/3)^2
    assert!(freq >= rat(1, 9));

    // K = {0, 2} in Z_4 has depth 1; S = {0, 1, 3} has density 3/4 and the
    // join is everything exactly when the sample is odd: frequency 2/3.
    let g = z(&[4]);
    let label = vec![el(&g, &[0]), el(&g, &[2])];
    assert_eq!(depth_of_subgroup(&g, &label).unwrap(), 1);
    let s = vec![el(&g, &[0]), el(&g, &[1]), el(&g, &[3])];
    let freq = depth_event_frequency(&g, &label, &s, &rat(1, 2), 1);
    assert_eq!(freq, rat(2, 3));
    assert!(freq >= rat(1, 3));
}

#[test]
fn double_counting_bound_on_random_bipartite_graphs() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for _ in 0..500 {
        let nv: usize = rng.random_range(1..=7);
        let nw: usize = rng.random_range(1..=7);
        let mut edges = vec![vec![false; nw]; nv];
        for row in edges.iter_mut() {
            for cell in row.iter_mut() {
                *cell = rng.random_bool(0.5);
            }
        }
        // every right vertex needs at least one edge for a positive delta
        for w in 0..nw {
            if !(0..nv).any(|v| edges[v][w]) {
                edges[rng.random_range(0..nv)][w] = true;
            }
        }

        let max_left = (0..nv)
            .map(|v| edges[v].iter().filter(|&&e| e).count())
            .max()
            .unwrap();
        let min_right = (0..nw)
            .map(|w| (0..nv).filter(|&v| edges[v][w]).count())
            .min()
            .unwrap();

        // premises: deg(v) <= L and deg(w) >= delta |V|; conclusion
        // |W| <= L / delta
        let delta = rat_counts(min_right as u64, nv as u64);
        let cap = rat_int(max_left as i64) / delta;
        assert!(rat_int(nw as i64) <= cap);
    }
}

// ------------------------------------------------------- stabilizer sanity

#[test]
fn low_index_subgroups_of_a6_and_their_stabilizer_exceptions() {
    let a6 = Group::alternating(6).unwrap();
    let lat = a6.subgroup_lattice().unwrap();
    let elems = a6.elements().unwrap();

    let fixes = |node_elems: &[u32], p: usize| -> bool {
        node_elems.iter().all(|&i| match &elems[i as usize] {
            Element::Perm(v) => v[p] as usize == p,
            _ => unreachable!("alternating groups are permutation groups"),
        })
    };

    let mut violators: Vec<(u64, bool)> = Vec::new();
    let mut small_index = 0usize;
    for i in 0..lat.node_count() {
        let node = lat.node(i);
        let order = node.order();
        let index = 360 / order;
        if index >= 15 {
            continue;
        }
        small_index += 1;

        // conforming means: equal to A_6 itself (the empty set of points)
        // or to a single point's stabilizer, since for a singleton the
        // pointwise and setwise stabilizers coincide
        let whole = order == 360;
        let point_stab = order == 60 && (0..6).any(|p| fixes(&node.elements, p));
        if !(whole || point_stab) {
            let transitive = {
                // orbit of point 0 under the subgroup
                let mut orbit = vec![false; 6];
                orbit[0] = true;
                let mut grew = true;
                while grew {
                    grew = false;
                    for &ei in &node.elements {
                        if let Element::Perm(v) = &elems[ei as usize] {
                            for p in 0..6 {
                                if orbit[p] && !orbit[v[p] as usize] {
                                    orbit[v[p] as usize] = true;
                                    grew = true;
                                }
                            }
                        }
                    }
                }
                orbit.iter().all(|&b| b)
            };
            violators.push((order, transitive));
        }
    }

    // index < 15 subgroups of A_6: the group itself, 6 natural point
    // stabilizers, 6 transitive copies of A_5, and 10 subgroups of order
    // 36 (Sylow 3-normalizers); only the first two kinds conform
    assert_eq!(small_index, 23);
    assert_eq!(violators.len(), 16);
    assert_eq!(
        violators.iter().filter(|(o, _)| *o == 36).count(),
        10,
        "every order-36 subgroup falls outside all stabilizer sandwiches"
    );
    let exotic: Vec<_> = violators.iter().filter(|(o, _)| *o == 60).collect();
    assert_eq!(exotic.len(), 6);
    assert!(
        exotic.iter().all(|(_, transitive)| *transitive),
        "order-60 violators are exactly the transitive copies of A_5"
    );

    // for index < 6 the sandwich forces the whole group, and indeed the
    // only such subgroup is A_6 itself
    let tiny: Vec<_> = (0..lat.node_count())
        .filter(|&i| 360 / lat.node(i).order() < 6)
        .collect();
    assert_eq!(tiny.len(), 1);
    assert_eq!(lat.node(tiny[0]).order(), 360);
}
