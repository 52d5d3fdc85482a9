use crate::error::Error;
use crate::groups::{Element, Group};
use crate::homcore::{lambda_exact, Homomorphism, PartialMap};
use crate::homext::{
    affine_subword_extend, homext012, homext_search, homext_search_budgeted, ExtensionVerdict,
};
use crate::oracle::{enumerate_ahoms, enumerate_homs};
use crate::rat::{rat, rat_counts, rat_int};

fn z(orders: &[u32]) -> Group {
    Group::abelian(orders.to_vec()).expect("abelian group")
}

fn sym(n: usize) -> Group {
    Group::symmetric(n).expect("symmetric group")
}

fn alt(n: usize) -> Group {
    Group::alternating(n).expect("alternating group")
}

fn el(g: &Group, values: &[u64]) -> Element {
    g.element_from_values(values).expect("element")
}

fn pm(pairs: Vec<(Element, Element)>) -> PartialMap {
    PartialMap::from_pairs(pairs).expect("partial map")
}

/// The empty domain, every singleton, and every unordered pair.
fn small_domains(g: &Group) -> Vec<Vec<Element>> {
    let elems = g.elements().expect("domain elements");
    let mut doms: Vec<Vec<Element>> = vec![Vec::new()];
    for x in elems {
        doms.push(vec![x.clone()]);
    }
    for i in 0..elems.len() {
        for j in (i + 1)..elems.len() {
            doms.push(vec![elems[i].clone(), elems[j].clone()]);
        }
    }
    doms
}

fn catalog() -> Vec<(&'static str, Group, Group)> {
    vec![
        ("Z4 -> Z2", z(&[4]), z(&[2])),
        ("Z2xZ2 -> Z4", z(&[2, 2]), z(&[4])),
        ("Z6 -> Z3", z(&[2, 3]), z(&[3])),
        ("S3 -> S3", sym(3), sym(3)),
        (
            "D4 -> Z2xZ2",
            Group::perm(4, vec![vec![1, 2, 3, 0], vec![3, 2, 1, 0]]).expect("dihedral group"),
            z(&[2, 2]),
        ),
        ("A4 -> S3", alt(4), sym(3)),
        ("S4 -> Z2", sym(4), z(&[2])),
        ("Z3xZ3 -> Z3", z(&[3, 3]), z(&[3])),
        ("A4 -> A4", alt(4), alt(4)),
    ]
}

/// Exhaustive ground truth: on every partial map with at most two domain
/// points, the classifier must agree with filtering the enumerated
/// homomorphism list. Multiple-verdicts must carry distinct extending
/// witnesses and the domain subgroup density as the attached bound, which
/// in turn never exceeds the exact maximum agreement.
#[test]
fn verdicts_match_enumeration_on_all_small_partial_maps() {
    for (label, g, h) in catalog() {
        let homs = enumerate_homs(&g, &h).expect("enumerable pair");
        let tables: Vec<Vec<Element>> = homs
            .iter()
            .map(|p| p.value_table().expect("value table").to_vec())
            .collect();
        let lambda = lambda_exact(&g, &h).expect("exact lambda");
        let h_elems: Vec<Element> = h.elements().expect("codomain elements").to_vec();
        for dom in small_domains(&g) {
            let k = dom.len();
            let dom_idx: Vec<usize> = dom
                .iter()
                .map(|d| g.index_of(d).expect("index") as usize)
                .collect();
            let mut choice = vec![0usize; k];
            loop {
                let pairs: Vec<(Element, Element)> = dom
                    .iter()
                    .zip(&choice)
                    .map(|(d, &c)| (d.clone(), h_elems[c].clone()))
                    .collect();
                let gamma = pm(pairs);
                let matching: Vec<usize> = (0..homs.len())
                    .filter(|&t| {
                        dom_idx
                            .iter()
                            .zip(&choice)
                            .all(|(&di, &c)| tables[t][di] == h_elems[c])
                    })
                    .collect();
                let verdict = homext012(&g, &h, &gamma, None).expect("classification");
                match (&verdict, matching.len()) {
                    (ExtensionVerdict::None, 0) => {}
                    (ExtensionVerdict::Unique(phi), 1) => {
                        assert_eq!(
                            phi, &homs[matching[0]],
                            "unique extension mismatch for {label}"
                        );
                    }
                    (
                        ExtensionVerdict::Multiple {
                            witnesses,
                            lambda_lower_bound,
                        },
                        n,
                    ) if n >= 2 => {
                        assert_ne!(witnesses.0, witnesses.1, "witnesses must differ for {label}");
                        for w in [&witnesses.0, &witnesses.1] {
                            assert!(
                                homs.binary_search(w).is_ok(),
                                "witness is not in the code for {label}"
                            );
                            for (d, v) in gamma.pairs() {
                                assert!(
                                    h.eq_elems(&w.eval(d).expect("eval"), v),
                                    "witness does not extend the map for {label}"
                                );
                            }
                        }
                        let m = g.subgroup_closure(&gamma.domain_elems()).expect("closure");
                        assert_eq!(
                            *lambda_lower_bound,
                            rat_counts(m.len() as u64, g.order().expect("order")),
                            "bound must be the domain subgroup density for {label}"
                        );
                        // contrapositive of the uniqueness law: a multiple
                        // verdict certifies agreement, so its bound stays
                        // below the exact maximum agreement
                        assert!(
                            *lambda_lower_bound <= lambda,
                            "attached bound exceeds the exact maximum agreement for {label}"
                        );
                    }
                    _ => panic!(
                        "verdict {} disagrees with enumeration count {} for {label}",
                        verdict.tag(),
                        matching.len()
                    ),
                }
                if k <= 1 {
                    let found = homext_search(&g, &h, &gamma).expect("search");
                    assert_eq!(
                        found.is_some(),
                        !matching.is_empty(),
                        "search existence mismatch for {label}"
                    );
                    if let Some(phi) = &found {
                        for (d, v) in gamma.pairs() {
                            assert!(h.eq_elems(&phi.eval(d).expect("eval"), v));
                        }
                    }
                    let with_threshold =
                        homext012(&g, &h, &gamma, Some(&lambda)).expect("classification");
                    assert_eq!(
                        with_threshold.tag(),
                        verdict.tag(),
                        "a threshold must not change exact classification for {label}"
                    );
                }
                let mut pos = 0;
                loop {
                    if pos == k {
                        break;
                    }
                    choice[pos] += 1;
                    if choice[pos] < h_elems.len() {
                        break;
                    }
                    choice[pos] = 0;
                    pos += 1;
                }
                if pos == k {
                    break;
                }
            }
        }
    }
}

#[test]
fn empty_partial_maps_extend_to_the_trivial_homomorphism() {
    let pairs = vec![(sym(3), z(&[4])), (alt(4), z(&[2, 2])), (z(&[2, 3]), sym(3))];
    for (g, h) in pairs {
        let found = homext_search(&g, &h, &PartialMap::empty())
            .expect("search")
            .expect("the trivial homomorphism always extends the empty map");
        assert!(found.is_trivial());
        assert_eq!(found, Homomorphism::trivial(&g, &h).expect("trivial"));
        let affine = affine_subword_extend(&g, &h, &PartialMap::empty())
            .expect("search")
            .expect("the empty map extends");
        assert!(affine.is_hom());
        assert!(affine.base().is_trivial());
    }
}

#[test]
fn order_obstructions_yield_no_extension() {
    let g = z(&[2]);
    let h = z(&[3]);
    let gamma = pm(vec![(el(&g, &[1]), el(&h, &[1]))]);
    assert!(homext_search(&g, &h, &gamma).expect("search").is_none());
    assert_eq!(
        homext012(&g, &h, &gamma, None).expect("classification").tag(),
        "none"
    );

    // the analogous map with compatible orders does extend (parity map)
    let g2 = z(&[4]);
    let h2 = z(&[2]);
    let gamma2 = pm(vec![(el(&g2, &[1]), el(&h2, &[1]))]);
    let phi = homext_search(&g2, &h2, &gamma2)
        .expect("search")
        .expect("parity map");
    assert!(h2.eq_elems(&phi.eval(&el(&g2, &[1])).expect("eval"), &el(&h2, &[1])));
}

#[test]
fn generator_restrictions_of_the_identity_recover_it() {
    for g in [alt(4), sym(3)] {
        let ident = Homomorphism::identity_on(&g).expect("identity");
        let gamma = ident.partial_on(&g.generators()).expect("restriction");
        let found = homext_search(&g, &g, &gamma)
            .expect("search")
            .expect("the identity extends its own restriction");
        assert_eq!(found, ident);
        // the domain generates everything, so the extension is unique
        match homext012(&g, &g, &gamma, None).expect("classification") {
            ExtensionVerdict::Unique(phi) => assert_eq!(phi, ident),
            v => panic!("expected a unique extension, got {}", v.tag()),
        }
    }
}

#[test]
fn inconsistent_values_on_the_generated_subgroup_are_rejected() {
    // gamma(1) + gamma(1) forces gamma(2) = 2; prescribing 3 closes no table
    let g = z(&[4]);
    let gamma = pm(vec![
        (el(&g, &[1]), el(&g, &[1])),
        (el(&g, &[2]), el(&g, &[3])),
    ]);
    assert_eq!(
        homext012(&g, &g, &gamma, None).expect("classification").tag(),
        "none"
    );

    // a transposition cannot land on a 3-cycle: squares disagree
    let s3 = sym(3);
    let gamma2 = pm(vec![(el(&s3, &[1, 0, 2]), el(&s3, &[1, 2, 0]))]);
    assert!(homext_search(&s3, &s3, &gamma2).expect("search").is_none());
}

#[test]
fn a_point_on_the_four_group_has_multiple_extensions_with_bound_one_half() {
    let g = z(&[2, 2]);
    let h = z(&[2]);
    let gamma = pm(vec![(el(&g, &[1, 0]), el(&h, &[1]))]);
    match homext012(&g, &h, &gamma, None).expect("classification") {
        ExtensionVerdict::Multiple {
            witnesses,
            lambda_lower_bound,
        } => {
            assert_ne!(witnesses.0, witnesses.1);
            for w in [&witnesses.0, &witnesses.1] {
                assert!(h.eq_elems(
                    &w.eval(&el(&g, &[1, 0])).expect("eval"),
                    &el(&h, &[1])
                ));
            }
            assert_eq!(lambda_lower_bound, rat(1, 2));
        }
        v => panic!("expected multiple extensions, got {}", v.tag()),
    }
    // canonical order pins the search result: the first element outside
    // the domain subgroup, (0,1), takes the first feasible image, the
    // identity
    let phi = homext_search(&g, &h, &gamma)
        .expect("search")
        .expect("extends");
    assert!(h.is_identity(&phi.eval(&el(&g, &[0, 1])).expect("eval")));
    assert!(h.eq_elems(&phi.eval(&el(&g, &[1, 0])).expect("eval"), &el(&h, &[1])));
}

#[test]
fn invalid_inputs_are_rejected() {
    let g = z(&[2, 2]);
    let h = z(&[2]);
    let gamma = pm(vec![(el(&g, &[1, 0]), el(&h, &[1]))]);
    for bad in [rat_int(1), rat_int(-1), rat(3, 2)] {
        let err = homext012(&g, &h, &gamma, Some(&bad)).expect_err("threshold outside [0,1)");
        assert!(matches!(err, Error::InvalidInput(_)));
    }
    // an element of the wrong group is rejected up front
    let s3 = sym(3);
    let foreign = pm(vec![(el(&s3, &[1, 0, 2]), el(&h, &[1]))]);
    assert!(matches!(
        homext_search(&g, &h, &foreign),
        Err(Error::InvalidInput(_))
    ));
}

#[test]
fn completion_needing_more_than_three_generators_is_a_budget_error() {
    let g = z(&[2, 2, 2, 2]);
    let h = z(&[2]);
    let err = homext_search(&g, &h, &PartialMap::empty()).expect_err("four generators needed");
    assert!(matches!(err, Error::BudgetExceeded(_)));
    let err =
        homext012(&g, &h, &PartialMap::empty(), None).expect_err("four generators needed");
    assert!(matches!(err, Error::BudgetExceeded(_)));
}

#[test]
fn node_budget_exhaustion_is_reported() {
    let g = sym(3);
    let err = homext_search_budgeted(&g, &g, &PartialMap::empty(), 1)
        .expect_err("one closure table is not enough");
    assert!(matches!(err, Error::BudgetExceeded(_)));
    // the same instance succeeds under the default budget
    assert!(homext_search(&g, &g, &PartialMap::empty())
        .expect("search")
        .is_some());
}

#[test]
fn single_point_partial_maps_always_extend_affinely() {
    for (g, h) in [(z(&[4]), z(&[2])), (sym(3), sym(3))] {
        let gels = g.elements().expect("domain elements").to_vec();
        let hels = h.elements().expect("codomain elements").to_vec();
        for d in &gels {
            for v in &hels {
                let gamma = pm(vec![(d.clone(), v.clone())]);
                let psi = affine_subword_extend(&g, &h, &gamma)
                    .expect("search")
                    .expect("a single point always extends");
                // the canonical extension is the constant map at the value
                assert!(psi.base().is_trivial());
                assert!(h.eq_elems(psi.translation(), v));
                assert!(h.eq_elems(&psi.eval(d).expect("eval"), v));
            }
        }
    }
}

/// The affine extension exists exactly when the shifted plain search
/// succeeds, for every choice of anchor point, and the reconstruction
/// restricts back to the input map.
#[test]
fn affine_reduction_agrees_with_the_base_search_for_every_anchor() {
    for (g, h) in [(z(&[2, 2]), z(&[4])), (sym(3), sym(3))] {
        let h_elems: Vec<Element> = h.elements().expect("codomain elements").to_vec();
        for dom in small_domains(&g).into_iter().filter(|d| !d.is_empty()) {
            let k = dom.len();
            let mut choice = vec![0usize; k];
            loop {
                let pairs: Vec<(Element, Element)> = dom
                    .iter()
                    .zip(&choice)
                    .map(|(d, &c)| (d.clone(), h_elems[c].clone()))
                    .collect();
                let gamma = pm(pairs);
                let affine = affine_subword_extend(&g, &h, &gamma).expect("affine search");
                for (a, va) in gamma.pairs() {
                    let a_inv = g.inv(a);
                    let va_inv = h.inv(va);
                    let shifted: Vec<(Element, Element)> = gamma
                        .pairs()
                        .iter()
                        .map(|(d, v)| (g.mul(&a_inv, d), h.mul(&va_inv, v)))
                        .collect();
                    let gamma0 = PartialMap::from_pairs(shifted).expect("shifted map");
                    let base = homext_search(&g, &h, &gamma0).expect("base search");
                    assert_eq!(
                        affine.is_some(),
                        base.is_some(),
                        "affine extension must exist exactly when the shifted search succeeds"
                    );
                }
                if let Some(psi) = &affine {
                    for (d, v) in gamma.pairs() {
                        assert!(h.eq_elems(&psi.eval(d).expect("eval"), v));
                    }
                }
                let mut pos = 0;
                loop {
                    if pos == k {
                        break;
                    }
                    choice[pos] += 1;
                    if choice[pos] < h_elems.len() {
                        break;
                    }
                    choice[pos] = 0;
                    pos += 1;
                }
                if pos == k {
                    break;
                }
            }
        }
    }
}

#[test]
fn planted_affine_restrictions_are_recovered() {
    for (g, h) in [(z(&[2, 4]), z(&[4])), (sym(3), sym(3))] {
        let mut dom = vec![g.identity()];
        dom.extend(g.generators());
        // the domain pins the translation (at the identity) and the base
        // (on a generating set), so recovery must be exact
        for psi in enumerate_ahoms(&g, &h).expect("code") {
            let gamma = psi.partial_on(&dom).expect("restriction");
            let rec = affine_subword_extend(&g, &h, &gamma)
                .expect("search")
                .expect("the restriction of a codeword extends");
            assert_eq!(rec, psi);
        }
    }
}

#[test]
fn affine_closure_inconsistency_yields_none() {
    // values 0,1,1 on 0,1,2 in Z_4 -> Z_2: the shifted map needs
    // phi(2) = phi(1) + phi(1) = 0, contradicting the prescribed 1
    let g = z(&[4]);
    let h = z(&[2]);
    let gamma = pm(vec![
        (el(&g, &[0]), el(&h, &[0])),
        (el(&g, &[1]), el(&h, &[1])),
        (el(&g, &[2]), el(&h, &[1])),
    ]);
    assert!(affine_subword_extend(&g, &h, &gamma)
        .expect("search")
        .is_none());
}
