//! Breadth-first closure of finitely generated gate groups.

use std::collections::HashMap;
use std::hash::Hash;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::matrix::ExactMatrix;
use crate::monomial::MonomialGate;

/// Elements reached from the identity by appending generators, with the
/// shortlex-first word for each. Word `[i, j]` means generator `i` then `j` in
/// time order, so the element is `g_j * g_i`.
#[derive(Debug, Clone)]
pub struct GroupClosure<T> {
    pub elements: Vec<T>,
    pub words: Vec<Vec<usize>>,
    pub generators: Vec<T>,
    /// True when the cap stopped the enumeration before the group closed.
    pub truncated: bool,
}

impl<T> GroupClosure<T> {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Renders the word of element `i` with the given generator names.
    pub fn word_string(&self, i: usize, names: &[String]) -> String {
        render_word(&self.words[i], names)
    }
}

/// Words made only of single-character names are concatenated; any longer
/// name switches the whole word to dot-joined form.
pub fn render_word(word: &[usize], names: &[String]) -> String {
    let sep = if word.iter().all(|&g| names[g].chars().count() == 1) { "" } else { "." };
    word.iter().map(|&g| names[g].as_str()).collect::<Vec<_>>().join(sep)
}

/// Generic BFS. `step(e, g)` is the element reached by applying `g` after `e`.
pub(crate) fn bfs_closure<T, K, S, F>(identity: T, generators: &[T], step: S, key: F, cap: usize) -> GroupClosure<T>
where
    T: Clone + Send + Sync,
    K: Eq + Hash + Send,
    S: Fn(&T, &T) -> T + Sync,
    F: Fn(&T) -> K + Sync,
{
    let mut elements = vec![identity];
    let mut words: Vec<Vec<usize>> = vec![Vec::new()];
    let mut seen: HashMap<K, ()> = HashMap::new();
    seen.insert(key(&elements[0]), ());
    let mut truncated = false;
    let mut start = 0;
    while start < elements.len() && !truncated {
        let end = elements.len();
        let children: Vec<Vec<(T, K)>> = elements[start..end]
            .par_iter()
            .map(|e| {
                generators
                    .iter()
                    .map(|g| {
                        let c = step(e, g);
                        let k = key(&c);
                        (c, k)
                    })
                    .collect()
            })
            .collect();
        'outer: for (offset, row) in children.into_iter().enumerate() {
            for (gi, (c, k)) in row.into_iter().enumerate() {
                if seen.contains_key(&k) {
                    continue;
                }
                if elements.len() >= cap {
                    truncated = true;
                    break 'outer;
                }
                seen.insert(k, ());
                let mut w = words[start + offset].clone();
                w.push(gi);
                elements.push(c);
                words.push(w);
            }
        }
        start = end;
    }
    GroupClosure { elements, words, generators: generators.to_vec(), truncated }
}

/// Closure of monomial generators. Monomials are stored gauge-fixed, so the
/// group is enumerated up to global phase.
pub fn closure(n: usize, generators: &[MonomialGate], cap: usize) -> Result<GroupClosure<MonomialGate>> {
    if let Some(g) = generators.iter().find(|g| g.num_qubits() != n) {
        return Err(Error::QubitMismatch { left: n, right: g.num_qubits() });
    }
    Ok(bfs_closure(MonomialGate::identity(n), generators, |e, g| g.mul(e), Clone::clone, cap))
}

/// Closure of dense generators up to global phase. Elements are unitary
/// representatives; membership is decided on [`ExactMatrix::projective_key`].
pub fn matrix_closure(n: usize, generators: &[ExactMatrix], cap: usize) -> Result<GroupClosure<ExactMatrix>> {
    let dim = 1usize << n;
    if let Some(g) = generators.iter().find(|g| g.dim() != dim) {
        return Err(Error::DimensionMismatch { left: dim, right: g.dim() });
    }
    Ok(bfs_closure(
        ExactMatrix::identity(dim),
        generators,
        |e, g| g.mul(e).expect("same dimension"),
        ExactMatrix::projective_key,
        cap,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{Circuit, Gate};

    fn mono(n: usize, gates: Vec<Gate>) -> MonomialGate {
        Circuit::new(n, gates).unwrap().to_monomial().unwrap()
    }

    #[test]
    fn small_orders() {
        let x = mono(1, vec![Gate::x(0)]);
        assert_eq!(closure(1, std::slice::from_ref(&x), 100).unwrap().order(), 2);
        let t = mono(1, vec![Gate::t(0)]);
        let c = closure(1, &[x, t], 100).unwrap();
        assert_eq!(c.order(), 16);
        assert!(!c.truncated);
    }

    #[test]
    fn truncation_is_reported() {
        let t = mono(1, vec![Gate::phase(0, crate::phase::DyadicPhase::new(1, 6))]);
        let c = closure(1, &[t], 10).unwrap();
        assert!(c.truncated);
        assert_eq!(c.order(), 10);
    }

    #[test]
    fn words_evaluate_to_elements() {
        let gens = vec![mono(3, vec![Gate::ccx(1, 2, 0)]), mono(3, vec![Gate::ccx(0, 2, 1)])];
        let c = closure(3, &gens, 1000).unwrap();
        for (e, w) in c.elements.iter().zip(&c.words) {
            let rebuilt = w.iter().fold(MonomialGate::identity(3), |acc, &i| gens[i].mul(&acc));
            assert_eq!(&rebuilt, e);
        }
        let names = vec!["a".to_string(), "b".to_string()];
        assert_eq!(c.word_string(3, &names), "ab");
        // a and b generate the symmetric group on the three states they move
        assert_eq!(c.order(), 6);
    }

    #[test]
    fn dense_closure_of_single_qubit_cliffords() {
        let h = Circuit::new(1, vec![Gate::h(0)]).unwrap().evaluate_exact().unwrap();
        let s = Circuit::new(1, vec![Gate::s(0)]).unwrap().evaluate_exact().unwrap();
        // the single-qubit Clifford group modulo phases
        assert_eq!(matrix_closure(1, &[h, s], 1000).unwrap().order(), 24);
    }
}
