//! Double-coset classification of permutation groups.
//!
//! Given named permutation generators and a subgroup `K`, every element of the
//! ambient group `<generators, K>` is sorted into its double coset `K g K`.
//! Multiplying by Clifford gates on either side preserves membership in the
//! hierarchy and every level from 2 upward, so with `K` the Clifford
//! permutations each class outside `K` carries a single verdict.

use std::collections::{HashMap, HashSet};

use serde::Serialize;

use super::closure::{closure, render_word};
use crate::error::{Error, Result};
use crate::hierarchy::{Engine, LevelVerdict};
use crate::monomial::MonomialGate;

#[derive(Debug, Clone, Serialize)]
pub struct CosetClass {
    /// Shortest word reaching the class, ties broken by generator order.
    pub word: String,
    pub permutation: Vec<u32>,
    pub size: usize,
    pub verdict: LevelVerdict,
}

#[derive(Debug, Clone, Serialize)]
pub struct WordClass {
    pub word: String,
    pub class: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct CosetReport {
    pub ambient_order: usize,
    pub subgroup_order: usize,
    /// Order of the group generated by the generators outside the subgroup.
    pub word_group_order: usize,
    pub classes: Vec<CosetClass>,
    /// Class of every element of the word group, by its shortest word.
    pub words: Vec<WordClass>,
    /// Class of each requested label word.
    pub labels: Vec<WordClass>,
    /// Number of distinct group elements among the labels.
    pub distinct_label_elements: usize,
}

impl CosetReport {
    /// Class index of a word over the generator names, if it was requested
    /// as a label.
    pub fn label_class(&self, label: &str) -> Option<&CosetClass> {
        self.labels.iter().find(|l| l.word == label).map(|l| &self.classes[l.class])
    }

    /// Distinct classes reached by the labels, in first-seen order.
    pub fn distinct_label_classes(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for l in &self.labels {
            if !out.contains(&l.class) {
                out.push(l.class);
            }
        }
        out
    }
}

/// Parses a word over `names`. Single-character names may be written
/// back to back; otherwise names are separated by dots. `1` and the empty
/// string denote the identity.
pub fn parse_word(word: &str, names: &[String]) -> Result<Vec<usize>> {
    let lookup = |tok: &str| {
        names
            .iter()
            .position(|n| n == tok)
            .ok_or_else(|| Error::Parse(format!("unknown generator `{tok}` in word `{word}`")))
    };
    if word.is_empty() || word == "1" {
        return Ok(Vec::new());
    }
    if word.contains('.') {
        return word.split('.').map(lookup).collect();
    }
    word.chars().map(|c| lookup(&c.to_string())).collect()
}

/// Evaluates a word in time order: `[i, j]` is `g_j * g_i`.
pub fn evaluate_word(n: usize, word: &[usize], generators: &[MonomialGate]) -> MonomialGate {
    word.iter().fold(MonomialGate::identity(n), |acc, &i| generators[i].mul(&acc))
}

fn require_permutations(n: usize, gens: &[MonomialGate]) -> Result<()> {
    for g in gens {
        if g.num_qubits() != n {
            return Err(Error::QubitMismatch { left: n, right: g.num_qubits() });
        }
        if !g.is_permutation() {
            return Err(Error::InvalidPermutation("coset generators must be permutations".into()));
        }
    }
    Ok(())
}

/// Splits `<generators, subgroup>` into double cosets of `<subgroup>`.
///
/// Representatives are the first class members in shortlex order over the
/// alphabet `generators` followed by `subgroup`. Fails with
/// [`Error::CapExceeded`] if either group outgrows `cap`.
pub fn classify_double_cosets(
    n: usize,
    generators: &[MonomialGate],
    names: &[String],
    subgroup: &[MonomialGate],
    labels: &[String],
    cap: usize,
    engine: &mut Engine,
) -> Result<CosetReport> {
    require_permutations(n, generators)?;
    require_permutations(n, subgroup)?;
    if names.len() != generators.len() {
        return Err(Error::Parse(format!("{} names for {} generators", names.len(), generators.len())));
    }
    let k = closure(n, subgroup, cap)?;
    if k.truncated {
        return Err(Error::CapExceeded { cap });
    }
    let mut alphabet: Vec<MonomialGate> = generators.to_vec();
    alphabet.extend_from_slice(subgroup);
    let mut all_names: Vec<String> = names.to_vec();
    all_names.extend((0..subgroup.len()).map(|i| format!("k{i}")));
    let ambient = closure(n, &alphabet, cap)?;
    if ambient.truncated {
        return Err(Error::CapExceeded { cap });
    }
    let outside: Vec<usize> = {
        let members: HashSet<&MonomialGate> = k.elements.iter().collect();
        (0..generators.len()).filter(|&i| !members.contains(&generators[i])).collect()
    };
    let word_gens: Vec<MonomialGate> = outside.iter().map(|&i| generators[i].clone()).collect();
    let word_group = closure(n, &word_gens, cap)?;
    if word_group.truncated {
        return Err(Error::CapExceeded { cap });
    }

    let index: HashMap<&MonomialGate, usize> = ambient.elements.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let mut class_of = vec![usize::MAX; ambient.order()];
    let mut classes = Vec::new();
    for start in 0..ambient.order() {
        if class_of[start] != usize::MAX {
            continue;
        }
        let id = classes.len();
        class_of[start] = id;
        let mut stack = vec![start];
        let mut size = 0;
        while let Some(i) = stack.pop() {
            size += 1;
            let e = &ambient.elements[i];
            for h in subgroup {
                for next in [h.mul(e), e.mul(h)] {
                    let j = index[&next];
                    if class_of[j] == usize::MAX {
                        class_of[j] = id;
                        stack.push(j);
                    }
                }
            }
        }
        let rep = &ambient.elements[start];
        classes.push(CosetClass {
            word: render_word(&ambient.words[start], &all_names),
            permutation: rep.perm().to_vec(),
            size,
            verdict: engine.perm_level(rep)?,
        });
    }

    let word_names: Vec<String> = outside.iter().map(|&i| names[i].clone()).collect();
    let words = word_group
        .elements
        .iter()
        .zip(&word_group.words)
        .map(|(e, w)| WordClass { word: render_word(w, &word_names), class: class_of[index[e]] })
        .collect();
    let mut distinct = HashSet::new();
    let labels = labels
        .iter()
        .map(|l| {
            let w = parse_word(l, names)?;
            let e = evaluate_word(n, &w, generators);
            let i = index[&e];
            distinct.insert(i);
            Ok(WordClass { word: l.clone(), class: class_of[i] })
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(CosetReport {
        ambient_order: ambient.order(),
        subgroup_order: k.order(),
        word_group_order: word_group.order(),
        classes,
        words,
        labels,
        distinct_label_elements: distinct.len(),
    })
}

/// Comparison of a claimed number of distinct words with the order of the
/// group they are words in.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WordCountCheck {
    pub claimed: usize,
    pub group_order: usize,
    pub consistent: bool,
    pub note: String,
}

/// Distinct group elements can number at most the group order, so a claim
/// above it cannot be right. A claim below it is reported as incomplete.
pub fn word_count_check(claimed: usize, group_order: usize) -> WordCountCheck {
    let note = match claimed.cmp(&group_order) {
        std::cmp::Ordering::Greater => format!(
            "{claimed} distinct words cannot exist in a group of order {group_order}; the word list has duplicates"
        ),
        std::cmp::Ordering::Less => format!("{claimed} words cover part of a group of order {group_order}"),
        std::cmp::Ordering::Equal => format!("{claimed} words match the group order"),
    };
    WordCountCheck { claimed, group_order, consistent: claimed == group_order, note }
}

/// Generators of the Clifford permutations on `n` qubits: every CNOT and
/// every X.
pub fn clifford_permutation_generators(n: usize) -> Vec<MonomialGate> {
    use crate::circuit::{Circuit, Gate};
    let mut gates = Vec::new();
    for c in 0..n {
        for t in 0..n {
            if c != t {
                gates.push(Gate::cnot(c, t));
            }
        }
    }
    gates.extend((0..n).map(Gate::x));
    gates.into_iter().map(|g| Circuit::new(n, vec![g]).and_then(|c| c.to_monomial()).expect("valid gate")).collect()
}
