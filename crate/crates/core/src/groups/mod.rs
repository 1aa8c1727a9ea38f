//! Finitely generated gate groups: closure, canonical forms, structure
//! checks, double cosets and construction linting.

pub mod canonical;
pub mod closure;
pub mod constraints;
pub mod cosets;
pub mod input;
pub mod recipe;

pub use canonical::{
    canonicalize, default_names, element_names, ElementSpec, FactoredSpec, FormSummary, GroupElementForm,
};
pub use closure::{closure, matrix_closure, render_word, GroupClosure};
pub use constraints::{check_gsc_group, check_semi_clifford_group, ConstraintReport, ConstraintWitness, Verdict};
pub use cosets::{
    classify_double_cosets, clifford_permutation_generators, evaluate_word, parse_word, word_count_check, CosetClass,
    CosetReport, WordClass, WordCountCheck,
};
pub use input::GroupFile;
pub use recipe::{validate_recipe, Finding, RecipeReport, RecipeSpec, Severity};
