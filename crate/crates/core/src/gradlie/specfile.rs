//! The JSON spec-file format for a Lie algebra with an optional automorphism.

use serde::{Deserialize, Serialize};

use super::gradation::{Gradation, GradationReport};
use super::lie::{BracketEntryRepr, LieAlgebraSpec};
use crate::error::{Error, Result};
use crate::ufield::{FieldDescriptor, FieldElement};
use crate::ulinalg::MatrixK;

/// `{"field": {...}, "dim": 3, "brackets": [{"i":0,"j":1,"k":2,"c":"1"}], "automorphism": [[...]]}`
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SpecFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub field: FieldDescriptor,
    pub dim: usize,
    #[serde(default)]
    pub brackets: Vec<BracketEntryRepr>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub automorphism: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gradation: Option<GradationReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theta: Option<String>,
}

/// Byte offset of a serde_json error position.
pub(crate) fn json_error_offset(text: &str, e: &serde_json::Error) -> usize {
    let line_start: usize = text
        .split_inclusive('\n')
        .take(e.line().saturating_sub(1))
        .map(str::len)
        .sum();
    line_start + e.column().saturating_sub(1)
}

impl SpecFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse {
            pos: json_error_offset(text, &e),
            msg: e.to_string(),
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("spec files serialize")
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        self.field
    }

    pub fn algebra(&self) -> Result<LieAlgebraSpec> {
        LieAlgebraSpec::from_repr(self.field, self.dim, &self.brackets)
    }

    pub fn automorphism(&self) -> Result<Option<MatrixK>> {
        self.automorphism
            .as_ref()
            .map(|rows| MatrixK::parse(self.field, rows))
            .transpose()
    }

    pub fn gradation(&self, l: &LieAlgebraSpec) -> Result<Option<Gradation>> {
        self.gradation.as_ref().map(|g| Gradation::from_report(l, g)).transpose()
    }

    pub fn theta(&self) -> Result<Option<FieldElement>> {
        self.theta
            .as_ref()
            .map(|s| FieldElement::parse(self.field, s))
            .transpose()
    }

    /// Same spec over a descriptor with a different working precision.
    pub fn with_precision(mut self, precision: u32) -> Self {
        self.field = self.field.with_precision(precision);
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_the_documented_shape() {
        let text = r#"{"field": {"kind": "padic", "p": 5}, "dim": 3,
            "brackets": [{"i":0,"j":1,"k":2,"c":"1"}],
            "automorphism": [["5","0","0"],["0","5","0"],["0","0","25"]]}"#;
        let s = SpecFile::from_json(text).unwrap();
        let l = s.algebra().unwrap();
        assert_eq!(l.dim(), 3);
        assert_eq!(s.automorphism().unwrap().unwrap().to_string(), "[5, 0, 0; 0, 5, 0; 0, 0, 25]");
        let again = SpecFile::from_json(&s.to_json()).unwrap();
        assert_eq!(again.brackets, s.brackets);
    }

    #[test]
    fn parse_errors_have_positions() {
        let text = "{\"field\": {\"kind\": \"padic\", \"p\": 5},\n \"dim\": x}";
        match SpecFile::from_json(text) {
            Err(Error::Parse { pos, .. }) => assert_eq!(&text[pos..pos + 1], "x"),
            other => panic!("unexpected {other:?}"),
        }
    }
}
