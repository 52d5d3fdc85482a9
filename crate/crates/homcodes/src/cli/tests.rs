use crate::error::Error;
use crate::groups::GroupSpec;
use crate::rat::{rat, rat_counts, rat_int};

use super::*;

fn zn(orders: &[u32]) -> GroupSpec {
    GroupSpec::Abelian {
        orders: orders.to_vec(),
    }
}

fn alt(degree: usize) -> GroupSpec {
    GroupSpec::Perm {
        degree,
        tag: Some("alt".to_string()),
        generators: None,
    }
}

/// Mod-2 reduction on Z_4, planted noiselessly.
fn mod2_config(mode: DecodeMode) -> DecodeConfig {
    DecodeConfig {
        domain: zn(&[4]),
        codomain: zn(&[2]),
        word: WordSpec::Plant {
            images: vec![vec![1]],
            translation: None,
            target: rat_int(1),
            seed: 2,
        },
        mode,
        eps: rat(1, 2),
        eta: rat(1, 4),
        lambda: None,
        seed: 5,
        shallow: Some((1, 1)),
        node_budget: None,
        final_prune: true,
        oracle_compare: true,
    }
}

#[test]
fn group_arguments_parse_compact_and_json_forms() {
    assert!(matches!(
        parse_group_arg("z:2,3").unwrap(),
        GroupSpec::Abelian { orders } if orders == vec![2, 3]
    ));
    assert!(matches!(
        parse_group_arg("alt:5").unwrap(),
        GroupSpec::Perm { degree: 5, .. }
    ));
    assert!(matches!(
        parse_group_arg(" sym:4 ").unwrap(),
        GroupSpec::Perm { degree: 4, .. }
    ));
    assert!(matches!(
        parse_group_arg(r#"{"kind":"perm","degree":4,"tag":"alt"}"#).unwrap(),
        GroupSpec::Perm { degree: 4, .. }
    ));
    assert!(parse_group_arg("q:8").is_err());
    assert!(parse_group_arg("z:two").is_err());
    assert!(parse_group_arg("alt:x").is_err());
}

#[test]
fn config_text_parses_bare_configs_and_embedded_report_configs() {
    let config = mod2_config(DecodeMode::SrgCert);
    let bare = serde_json::to_string_pretty(&config).unwrap();
    let reloaded: DecodeConfig = parse_config_text(&bare).unwrap();
    assert_eq!(serde_json::to_string_pretty(&reloaded).unwrap(), bare);

    assert!(matches!(
        parse_config_text::<DecodeConfig>("{}"),
        Err(Error::InvalidInput(_))
    ));
    assert!(matches!(
        parse_config_text::<DecodeConfig>("not json"),
        Err(Error::InvalidInput(_))
    ));
}

#[test]
fn lambda_reports_cross_check_the_closed_form() {
    let report = run_lambda(&LambdaConfig {
        domain: zn(&[2, 3]),
        codomain: zn(&[4]),
    })
    .unwrap();
    assert_eq!(report.lambda, rat(1, 2));
    assert_eq!(report.method, "formula");
    assert_eq!(report.cross_check, "exact");
}

#[test]
fn lambda_falls_back_to_enumeration_off_the_solvable_path() {
    let report = run_lambda(&LambdaConfig {
        domain: alt(5),
        codomain: alt(5),
    })
    .unwrap();
    assert_eq!(report.lambda, rat(1, 10));
    assert_eq!(report.method, "exact");
    assert_eq!(report.cross_check, "skipped");
}

#[test]
fn certificate_reports_count_queries_and_never_touch_the_codomain() {
    let config = mod2_config(DecodeMode::SrgCert);
    let report = run_cert_decode(&config).unwrap();
    assert_eq!(report.trials, 28);
    assert_eq!(report.certificates.len(), 28);
    assert_eq!(report.queries, 3 * 28);
    assert_eq!(report.codomain_ops, 0);

    let mut pruned_config = config;
    pruned_config.lambda = Some(rat(1, 2));
    let pruned = run_cert_decode(&pruned_config).unwrap();
    assert!(pruned.certificates.len() < 28);
    assert!(!pruned.certificates.is_empty());
    // tuples may sample a point twice, so a certificate carries between
    // one and three distinct pairs
    for cert in &pruned.certificates {
        assert!(cert.run < 28);
        assert!((1..=3).contains(&cert.pairs.len()));
    }
}

#[test]
fn mode_and_runner_mismatches_are_rejected() {
    assert!(matches!(
        run_decode(&mod2_config(DecodeMode::SrgCert)),
        Err(Error::InvalidInput(_))
    ));
    assert!(matches!(
        run_cert_decode(&mod2_config(DecodeMode::Pipeline)),
        Err(Error::InvalidInput(_))
    ));
    let mut no_shallow = mod2_config(DecodeMode::Pipeline);
    no_shallow.shallow = None;
    assert!(matches!(
        run_decode(&no_shallow),
        Err(Error::InvalidInput(_))
    ));
}

#[test]
fn the_pipeline_report_recovers_a_planted_codeword_end_to_end() {
    let report = run_decode(&mod2_config(DecodeMode::Pipeline)).unwrap();
    assert_eq!(report.trials, 28);
    assert_eq!(report.certificates, Some(28));
    assert!(report.kept.unwrap() <= 28);
    assert_eq!(report.extension_budget_failures, Some(0));
    assert!(report
        .output
        .iter()
        .any(|o| o.translation == vec![0] && o.images == vec![vec![1]]));
    assert!(report.queries >= 3 * 28);
    assert!(report.codomain_ops > 0);
    let oracle = report.oracle.unwrap();
    assert_eq!(oracle.true_list, 1);
    assert!(oracle.superset);
}

#[test]
fn local_decode_reports_cover_the_reference_list() {
    let config = DecodeConfig {
        domain: zn(&[2, 3]),
        codomain: zn(&[2, 3]),
        word: WordSpec::Plant {
            images: vec![vec![1, 0], vec![0, 2]],
            translation: Some(vec![1, 2]),
            target: rat(5, 6),
            seed: 4,
        },
        mode: DecodeMode::Abelian,
        eps: rat(1, 4),
        eta: rat(1, 4),
        lambda: None,
        seed: 11,
        shallow: None,
        node_budget: None,
        final_prune: true,
        oracle_compare: true,
    };
    let report = run_decode(&config).unwrap();
    assert!(report
        .output
        .iter()
        .any(|o| o.translation == vec![1, 2] && o.images == vec![vec![1, 0], vec![0, 2]]));
    assert_eq!(report.trials, report.anchors.unwrap());
    assert!(report.anchors.unwrap() > 0);
    assert_eq!(report.pool_overflows, Some(0));
    assert!(report.queries > 0);
    assert!(report.codomain_ops > 0);
    let oracle = report.oracle.unwrap();
    assert!(oracle.superset);
    assert!(oracle.true_list >= 1);
}

#[test]
fn random_words_decode_through_the_reference_mode() {
    let config = DecodeConfig {
        domain: zn(&[2, 2]),
        codomain: zn(&[2]),
        word: WordSpec::Random { seed: 0 },
        mode: DecodeMode::Oracle,
        eps: rat(1, 4),
        eta: rat(1, 4),
        lambda: None,
        seed: 0,
        shallow: None,
        node_budget: None,
        final_prune: true,
        oracle_compare: false,
    };
    let report = run_decode(&config).unwrap();
    assert_eq!(report.trials, 0);
    assert!(report.anchors.is_none());
    for entry in &report.output {
        assert_eq!(entry.translation.len(), 1);
        assert_eq!(entry.images.len(), 2);
    }
}

#[test]
fn reports_reproduce_byte_for_byte_from_their_embedded_configs() {
    let config = mod2_config(DecodeMode::SrgCert);
    let first = serde_json::to_string_pretty(&run_cert_decode(&config).unwrap()).unwrap();
    let second = serde_json::to_string_pretty(&run_cert_decode(&config).unwrap()).unwrap();
    assert_eq!(first, second);

    let reloaded: DecodeConfig = parse_config_text(&first).unwrap();
    let third = serde_json::to_string_pretty(&run_cert_decode(&reloaded).unwrap()).unwrap();
    assert_eq!(first, third);
}

#[test]
fn extension_reports_carry_the_verdict_and_witnesses() {
    let unique = run_homext(&HomextConfig {
        domain: zn(&[4]),
        codomain: zn(&[2]),
        gamma: vec![(vec![1], vec![1])],
        lambda: None,
        node_budget: None,
    })
    .unwrap();
    assert_eq!(unique.verdict, "unique");
    assert_eq!(unique.extension.unwrap().images, vec![vec![1]]);
    assert!(unique.second_witness.is_none());
    assert!(unique.lambda_lower_bound.is_none());

    let multiple = run_homext(&HomextConfig {
        domain: zn(&[4]),
        codomain: zn(&[2]),
        gamma: vec![],
        lambda: None,
        node_budget: None,
    })
    .unwrap();
    assert_eq!(multiple.verdict, "multiple");
    assert!(multiple.extension.is_some());
    assert!(multiple.second_witness.is_some());
    assert_eq!(multiple.lambda_lower_bound, Some(rat(1, 4)));

    let none = run_homext(&HomextConfig {
        domain: zn(&[4]),
        codomain: zn(&[3]),
        gamma: vec![(vec![1], vec![1])],
        lambda: None,
        node_budget: None,
    })
    .unwrap();
    assert_eq!(none.verdict, "none");
    assert!(none.extension.is_none());
    let json = serde_json::to_string_pretty(&none).unwrap();
    assert!(json.contains("\"extension\": null"));
    assert!(json.contains("\"lambda_lower_bound\": null"));
}

#[test]
fn the_reference_runner_lists_codewords_with_exact_agreements() {
    let config = OracleConfig {
        domain: zn(&[4]),
        codomain: zn(&[2]),
        word: WordSpec::Table {
            values: vec![vec![0], vec![1], vec![0], vec![1]],
        },
        code: CodeKindArg::Hom,
        threshold: ThresholdSpec {
            cmp: CmpArg::AtLeast,
            value: rat_int(1),
        },
    };
    let report = run_oracle(&config).unwrap();
    assert_eq!(report.entries.len(), 1);
    assert_eq!(report.entries[0].translation, vec![0]);
    assert_eq!(report.entries[0].images, vec![vec![1]]);
    assert_eq!(report.entries[0].agreement, rat_int(1));
    assert_eq!(report.queries, 0);

    let mut strict = config;
    strict.threshold = ThresholdSpec {
        cmp: CmpArg::Above,
        value: rat_int(1),
    };
    assert!(run_oracle(&strict).unwrap().entries.is_empty());
}

#[test]
fn blowup_families_hit_their_counts_and_agreements_exactly() {
    let binom = run_blowup(&BlowupConfig {
        n: 5,
        k: 1,
        variant: BlowupVariant::Binom,
    })
    .unwrap();
    assert_eq!(binom.count, 10);
    assert_eq!(binom.expected, 10);
    assert_eq!(binom.agreement, rat(1, 10));
    assert!(binom.all_agreements_exact);
    assert!(binom.distinct);
    assert!(binom.oracle_checked);
    assert_eq!(binom.oracle_contains_all, Some(true));

    let wider = run_blowup(&BlowupConfig {
        n: 5,
        k: 2,
        variant: BlowupVariant::Binom,
    })
    .unwrap();
    assert_eq!(wider.count, 30);
    assert_eq!(wider.expected, 30);
    assert!(wider.all_agreements_exact);
    assert!(wider.distinct);
    assert!(!wider.oracle_checked);
}

#[test]
fn point_blowups_meet_the_coarser_agreement_bound() {
    let report = run_blowup(&BlowupConfig {
        n: 4,
        k: 1,
        variant: BlowupVariant::Point,
    })
    .unwrap();
    assert_eq!(report.count, 4);
    assert_eq!(report.expected, 4);
    assert_eq!(report.agreement, rat(1, 4));
    assert!(report.all_agreements_exact);
    assert!(report.distinct);
    assert_eq!(report.oracle_contains_all, Some(true));
}

#[test]
fn degenerate_and_oversized_blowups_are_trivial_or_rejected() {
    let empty = run_blowup(&BlowupConfig {
        n: 5,
        k: 0,
        variant: BlowupVariant::Binom,
    })
    .unwrap();
    assert_eq!(empty.count, 0);
    assert_eq!(empty.expected, 0);
    assert!(empty.all_agreements_exact);
    assert!(!empty.oracle_checked);

    assert!(matches!(
        run_blowup(&BlowupConfig {
            n: 9,
            k: 1,
            variant: BlowupVariant::Binom
        }),
        Err(Error::InvalidInput(_))
    ));
    assert!(matches!(
        run_blowup(&BlowupConfig {
            n: 6,
            k: 3,
            variant: BlowupVariant::Binom
        }),
        Err(Error::BudgetExceeded(_))
    ));
    assert!(matches!(
        run_blowup(&BlowupConfig {
            n: 5,
            k: 4,
            variant: BlowupVariant::Point
        }),
        Err(Error::BudgetExceeded(_))
    ));
}

#[test]
fn probe_frequencies_are_exact_hit_fractions_and_reproducible() {
    let config = SrgProbeConfig {
        n: 5,
        trials: 400,
        k_check: 0,
        seed: 1,
    };
    let report = run_srg_probe(&config).unwrap();
    assert_eq!(report.frequency, rat_counts(report.hits, 400));
    assert!(report.frequency > rat_int(0));
    assert!(report.frequency < rat_int(1));
    let again = run_srg_probe(&config).unwrap();
    assert_eq!(
        serde_json::to_string_pretty(&report).unwrap(),
        serde_json::to_string_pretty(&again).unwrap()
    );
}

#[test]
fn allowing_missed_points_raises_the_probe_frequency() {
    let tight = run_srg_probe(&SrgProbeConfig {
        n: 6,
        trials: 200,
        k_check: 0,
        seed: 9,
    })
    .unwrap();
    let loose = run_srg_probe(&SrgProbeConfig {
        n: 6,
        trials: 200,
        k_check: 2,
        seed: 9,
    })
    .unwrap();
    assert!(loose.hits >= tight.hits);
    assert!(loose.frequency >= tight.frequency);
}

#[test]
fn the_probe_rejects_out_of_range_parameters() {
    for config in [
        SrgProbeConfig {
            n: 2,
            trials: 10,
            k_check: 0,
            seed: 0,
        },
        SrgProbeConfig {
            n: 9,
            trials: 10,
            k_check: 0,
            seed: 0,
        },
        SrgProbeConfig {
            n: 5,
            trials: 0,
            k_check: 0,
            seed: 0,
        },
    ] {
        assert!(matches!(
            run_srg_probe(&config),
            Err(Error::InvalidInput(_))
        ));
    }
}
