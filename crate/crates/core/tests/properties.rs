mod common;

use common::{random_bundle, random_stories};
use mmlint::io::ArtifactBundle;
use mmlint::model::{GoalId, GoalNode};
use mmlint::{build_model, run_all, CheckConfig, CheckId, Diagnostic};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const CASES: usize = 300;

fn of(diags: &[Diagnostic], ids: &[CheckId]) -> Vec<Diagnostic> {
    diags.iter().filter(|d| ids.contains(&d.code)).cloned().collect()
}

fn is_sub_multiset(small: &[Diagnostic], big: &[Diagnostic]) -> bool {
    let mut pool: Vec<&Diagnostic> = big.iter().collect();
    small.iter().all(|d| match pool.iter().position(|x| *x == d) {
        Some(i) => {
            pool.swap_remove(i);
            true
        }
        None => false,
    })
}

#[test]
fn adding_a_story_never_adds_coverage_diagnostics() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let coverage = [CheckId::Cp5, CheckId::Cp6, CheckId::Cp8];
    for _ in 0..CASES {
        let g = random_bundle(&mut rng);
        let before = run_all(&g.bundle, &CheckConfig::default());
        let mut extra = random_stories(&mut rng, &g.bundle.model, 3);
        extra.retain(|s| s.epic.is_none());
        let mut stories = g.bundle.stories.clone();
        for (i, mut s) in extra.into_iter().enumerate() {
            s.id = format!("extra-{i}");
            stories.push(s);
        }
        let grown = ArtifactBundle::assemble(
            g.bundle.model.clone(),
            g.bundle.personas.clone(),
            stories,
            g.bundle.aliases.clone(),
            &g.epic_nodes,
        )
        .unwrap();
        let after = run_all(&grown, &CheckConfig::default());
        assert!(is_sub_multiset(&of(after.diagnostics(), &coverage), &of(before.diagnostics(), &coverage)));
    }
}

#[test]
fn adding_goals_only_adds_coverage_and_keeps_vocabulary_diagnostics() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..CASES {
        let g = random_bundle(&mut rng);
        let mut parts = g.bundle.model.to_parts();
        parts.qualities.push("Zq fresh quality".into());
        parts.emotions.push("Zq fresh feeling".into());
        let internal: Vec<usize> = (0..parts.nodes.len()).filter(|&i| !parts.nodes[i].children.is_empty()).collect();
        if !internal.is_empty() {
            let at = internal[rng.random_range(0..internal.len())];
            let id = GoalId::new("zq-fresh").unwrap();
            parts.nodes[at].children.push(id.clone());
            parts.nodes.push(GoalNode { id, label: "Zq fresh goal".into(), children: vec![] });
        }
        let mut grown = g.bundle.clone();
        grown.model = build_model(parts).unwrap();

        let before = run_all(&g.bundle, &CheckConfig::default());
        let after = run_all(&grown, &CheckConfig::default());
        let coverage = [CheckId::Cp5, CheckId::Cp6, CheckId::Cp8];
        assert!(is_sub_multiset(&of(before.diagnostics(), &coverage), &of(after.diagnostics(), &coverage)));
        let vocabulary = [CheckId::Cp7, CheckId::Cp9];
        assert_eq!(of(before.diagnostics(), &vocabulary), of(after.diagnostics(), &vocabulary));
    }
}

#[test]
fn disabling_a_check_filters_exactly_its_diagnostics() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..CASES {
        let g = random_bundle(&mut rng);
        let full = run_all(&g.bundle, &CheckConfig::default());
        let id = CheckId::ALL[rng.random_range(1..CheckId::ALL.len())];
        let partial = run_all(&g.bundle, &CheckConfig::default().disable(id));
        let expected: Vec<_> = full.diagnostics().iter().filter(|d| d.code != id).cloned().collect();
        assert_eq!(partial.diagnostics(), expected.as_slice(), "disabling {}", id.code());
    }
}

#[test]
fn config_check_cannot_be_disabled() {
    let config = CheckConfig::default().disable(CheckId::Config);
    assert!(config.is_enabled(CheckId::Config));
}

#[test]
fn report_order_is_by_check_then_source() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for _ in 0..CASES {
        let g = random_bundle(&mut rng);
        let report = run_all(&g.bundle, &CheckConfig::default());
        assert!(report.diagnostics().windows(2).all(|w| w[0].code <= w[1].code));
        let c = report.counts();
        assert_eq!(c.errors + c.warnings + c.advisories, report.diagnostics().len());
    }
}
