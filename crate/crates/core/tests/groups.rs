use std::path::Path;

use chx_core::groups::{
    check_gsc_group, check_semi_clifford_group, classify_double_cosets, closure, matrix_closure, validate_recipe,
    ConstraintWitness, GroupFile, RecipeSpec, Verdict,
};
use chx_core::hierarchy::matrix_level;
use chx_core::{Engine, EngineConfig};

fn fixture(name: &str) -> String {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name);
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

fn group(name: &str) -> GroupFile {
    GroupFile::from_json(&fixture(name)).unwrap()
}

fn engine() -> Engine {
    Engine::new(EngineConfig::default())
}

#[test]
fn dihedral_closure_has_sixteen_elements_at_three_levels() {
    let g = group("dihedral.json").monomials().unwrap().unwrap();
    let c = closure(1, &g, 100).unwrap();
    assert_eq!(c.order(), 16);
    let mut e = engine();
    let mut per_level = [0usize; 4];
    for m in &c.elements {
        per_level[e.level(m).unwrap().level().unwrap() as usize] += 1;
    }
    assert_eq!(per_level, [0, 4, 4, 8]);
}

#[test]
fn semi_clifford_fixtures() {
    for (name, pass) in [
        ("n2_perm_diag.json", true),
        ("n2_clifford_block.json", true),
        ("n2_clifford.json", true),
        ("sc_cnot_pass.json", true),
        ("sc_hadamard_frame.json", false),
        ("sc_anticommuting_axes.json", false),
    ] {
        let r = check_semi_clifford_group(&group(name).forms().unwrap());
        assert_eq!(r.verdict == Verdict::Pass, pass, "{name}: {}", r.message);
    }
    let r = check_semi_clifford_group(&group("sc_anticommuting_axes.json").forms().unwrap());
    assert!(matches!(r.witness, Some(ConstraintWitness::AnticommutingAxes { .. })));
}

#[test]
fn passing_semi_clifford_group_stays_in_the_hierarchy() {
    // Every member of a group that passes the check must be semi-Clifford,
    // so in particular of finite level.
    let file = group("n2_clifford_block.json");
    assert_eq!(check_semi_clifford_group(&file.forms().unwrap()).verdict, Verdict::Pass);
    let c = matrix_closure(2, &file.matrices().unwrap(), 10_000).unwrap();
    assert!(!c.truncated);
    for (i, m) in c.elements.iter().enumerate().step_by(7) {
        assert!(matrix_level(m, 4).is_some(), "element {i} outside the hierarchy");
    }
}

#[test]
fn generalized_check_on_toffoli_groups() {
    let mut e = engine();
    let r = check_gsc_group(&group("toffoli_perm_diag_g3.json").forms().unwrap(), 100_000, &mut e).unwrap();
    assert_eq!(r.verdict, Verdict::Pass, "{}", r.message);
    assert_eq!(r.permutation_group_order, Some(384));
    assert_eq!(r.permutation_levels.values().sum::<usize>(), 384);
    assert_eq!(r.stabilizer.as_deref(), Some(&["+ZII".to_string(), "+IZI".into(), "+IIZ".into()][..]));

    let r = check_gsc_group(&group("toffoli_pair_negative.json").forms().unwrap(), 100_000, &mut e).unwrap();
    assert_eq!(r.verdict, Verdict::Fail);
    assert_eq!(r.witness, Some(ConstraintWitness::PermutationOutsideHierarchy { word: "ab".into() }));
    assert_eq!(r.permutation_group_order, Some(6));
}

#[test]
fn toffoli_cosets_from_fixture() {
    let file = group("toffoli3_cosets.json");
    let gens = file.monomials().unwrap().unwrap();
    let k = file.subgroup_monomials().unwrap();
    let r = classify_double_cosets(3, &gens, &file.names(), &k, &file.labels, 100_000, &mut engine()).unwrap();
    let mut sizes: Vec<usize> = r.classes.iter().map(|c| c.size).collect();
    sizes.sort_unstable();
    assert_eq!(sizes, vec![1344, 9408, 10752, 18816]);
    assert_eq!(r.labels.len(), 37);
    assert_eq!(r.distinct_label_elements, 24);
    // a and its conjugates by other Toffolis land in one class
    let a = r.label_class("a").unwrap().word.clone();
    for l in ["b", "c", "aba", "aca", "bcb"] {
        assert_eq!(r.label_class(l).unwrap().word, a, "{l}");
    }
    assert_eq!(r.distinct_label_classes().len(), 4);
}

#[test]
fn recipe_fixtures() {
    for (name, ok, errors, warnings) in [
        ("recipe_valid.json", true, 0, 0),
        ("recipe_forbidden_propagation.json", false, 1, 0),
        ("recipe_two_clifford_wires.json", false, 1, 0),
        ("recipe_restricted_cliffords.json", true, 0, 1),
    ] {
        let r = validate_recipe(&RecipeSpec::from_json(&fixture(name)).unwrap()).unwrap();
        assert_eq!(r.ok, ok, "{name}");
        assert_eq!(r.errors().count(), errors, "{name}");
        assert_eq!(r.warnings().count(), warnings, "{name}");
    }
}
