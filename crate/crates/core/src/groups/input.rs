//! The JSON generator-file format shared by the group commands.

use serde::{Deserialize, Serialize};

use super::canonical::{element_names, ElementSpec, GroupElementForm};
use crate::error::{Error, Result};
use crate::matrix::ExactMatrix;
use crate::monomial::MonomialGate;

/// A generator file: `{"qubits": n, "elements": [...]}` plus optional coset data.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupFile {
    pub qubits: usize,
    #[serde(alias = "generators")]
    pub elements: Vec<ElementSpec>,
    /// Generators of the subgroup used for double cosets.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub subgroup: Vec<ElementSpec>,
    /// Words over the element names whose classes should be reported.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub labels: Vec<String>,
    /// A number of distinct words claimed for the group generated by the
    /// elements outside the subgroup, checked against the computed order.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub claimed_word_count: Option<usize>,
}

impl GroupFile {
    pub fn from_json(text: &str) -> Result<GroupFile> {
        let f: GroupFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        if f.qubits == 0 {
            return Err(Error::Parse("`qubits` must be positive".into()));
        }
        Ok(f)
    }

    pub fn names(&self) -> Vec<String> {
        element_names(&self.elements)
    }

    pub fn forms(&self) -> Result<Vec<GroupElementForm>> {
        let names = self.names();
        self.elements.iter().zip(&names).map(|(e, name)| e.form(self.qubits, name)).collect()
    }

    /// Every element as a monomial, or `None` if some element is not monomial.
    pub fn monomials(&self) -> Result<Option<Vec<MonomialGate>>> {
        let mut out = Vec::with_capacity(self.elements.len());
        for e in &self.elements {
            match e.monomial(self.qubits) {
                Ok(m) => out.push(m),
                Err(Error::NonMonomial(_)) => return Ok(None),
                Err(err) => return Err(err),
            }
        }
        Ok(Some(out))
    }

    pub fn matrices(&self) -> Result<Vec<ExactMatrix>> {
        self.elements.iter().map(|e| e.matrix(self.qubits)).collect()
    }

    pub fn subgroup_monomials(&self) -> Result<Vec<MonomialGate>> {
        self.subgroup.iter().map(|e| e.monomial(self.qubits)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_mixed_elements() {
        let f = GroupFile::from_json(
            r#"{"qubits": 2, "generators": [
                {"name": "X", "targets": [0]},
                {"name": "h2", "gates": [{"name": "H", "targets": [1]}]},
                {"name": "u", "permutation": [{"name": "CNOT", "controls": [0], "targets": [1]}],
                 "diagonal": [{"name": "T", "targets": [0]}]}
            ]}"#,
        )
        .unwrap();
        assert_eq!(f.names(), vec!["a", "h2", "u"]);
        assert!(f.monomials().unwrap().is_none());
        let forms = f.forms().unwrap();
        assert_eq!(forms[2].rotations.len(), 1);
        assert!(GroupFile::from_json(r#"{"qubits": 1, "elements": [], "extra": 1}"#).is_err());
    }
}
