use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::{AlgebraError, AlgebraMeta, BasisElement, GradedLieAlgebra};
use crate::exact::{parse_rational, rational_to_string, ExactMatrix, Scalar};

/// A scalar split into real and imaginary rational strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScalarDoc {
    pub re: String,
    pub im: String,
}

impl ScalarDoc {
    pub fn from_scalar(s: &Scalar) -> Self {
        Self { re: rational_to_string(s.re()), im: rational_to_string(s.im()) }
    }

    pub fn to_scalar(&self) -> Result<Scalar, AlgebraError> {
        let p = |t: &str| parse_rational(t).map_err(|e| AlgebraError::Malformed(e.to_string()));
        Ok(Scalar::new(p(&self.re)?, p(&self.im)?))
    }
}

/// Dense matrix as rows of scalar literals such as `"1/2-i"`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MatrixDoc(pub Vec<Vec<String>>);

impl MatrixDoc {
    pub fn from_matrix(m: &ExactMatrix) -> Self {
        Self((0..m.rows()).map(|r| m.row(r).iter().map(|s| s.to_string()).collect()).collect())
    }

    pub fn to_matrix(&self) -> Result<ExactMatrix, AlgebraError> {
        let rows = self
            .0
            .iter()
            .map(|row| {
                row.iter()
                    .map(|t| t.parse::<Scalar>().map_err(|e| AlgebraError::Malformed(e.to_string())))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(ExactMatrix::from_rows(rows)?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermDoc {
    pub k: usize,
    pub re: String,
    pub im: String,
}

/// `[e_i, e_j] = Σ terms`, listed only for `i < j` and nonzero brackets.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BracketDoc {
    pub i: usize,
    pub j: usize,
    pub terms: Vec<TermDoc>,
}

/// Serialized form of a [`GradedLieAlgebra`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraDoc {
    pub basis: Vec<BasisElement>,
    pub brackets: Vec<BracketDoc>,
    #[serde(rename = "J", default, skip_serializing_if = "Option::is_none")]
    pub j: Option<MatrixDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub conjugation: Option<MatrixDoc>,
    #[serde(default)]
    pub meta: AlgebraMeta,
}

impl GradedLieAlgebra {
    pub fn to_doc(&self) -> AlgebraDoc {
        let n = self.dim();
        let mut brackets = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let terms: Vec<TermDoc> = self
                    .bracket(i, j)
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(k, c)| {
                        let s = ScalarDoc::from_scalar(c);
                        TermDoc { k, re: s.re, im: s.im }
                    })
                    .collect();
                if !terms.is_empty() {
                    brackets.push(BracketDoc { i, j, terms });
                }
            }
        }
        AlgebraDoc {
            basis: self.basis().to_vec(),
            brackets,
            j: self.complex_structure().map(|j| MatrixDoc::from_matrix(j.matrix())),
            conjugation: self.conjugation().map(MatrixDoc::from_matrix),
            meta: self.meta.clone(),
        }
    }

    pub fn from_doc(doc: &AlgebraDoc) -> Result<Self, AlgebraError> {
        let n = doc.basis.len();
        let mut entries = Vec::with_capacity(doc.brackets.len());
        for b in &doc.brackets {
            if b.i >= b.j {
                return Err(AlgebraError::Malformed(format!("bracket entry ({}, {}) must have i < j", b.i, b.j)));
            }
            let mut v = vec![Scalar::zero(); n];
            for t in &b.terms {
                if t.k >= n {
                    return Err(AlgebraError::Malformed(format!("term index {} out of range", t.k)));
                }
                v[t.k] += &ScalarDoc { re: t.re.clone(), im: t.im.clone() }.to_scalar()?;
            }
            entries.push((b.i, b.j, v));
        }
        let mut alg = Self::from_brackets(doc.basis.clone(), entries)?.with_meta(doc.meta.clone());
        if let Some(j) = &doc.j {
            alg = alg.with_complex_structure(j.to_matrix()?)?;
        }
        if let Some(c) = &doc.conjugation {
            alg = alg.with_conjugation(c.to_matrix()?)?;
        }
        Ok(alg)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_doc()).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Self, AlgebraError> {
        let doc: AlgebraDoc = serde_json::from_str(text).map_err(|e| AlgebraError::Malformed(e.to_string()))?;
        Self::from_doc(&doc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::{build_symbol_algebra, QuotientSpec};

    #[test]
    fn round_trip_symbols() {
        for k in [1, 2, 3, 5, 8] {
            let s = build_symbol_algebra(k, QuotientSpec::Default).unwrap();
            let text = s.algebra().to_json();
            assert_eq!(&GradedLieAlgebra::from_json(&text).unwrap(), s.algebra());
            let real = s.real_form().unwrap().algebra;
            assert_eq!(GradedLieAlgebra::from_json(&real.to_json()).unwrap(), real);
        }
    }

    #[test]
    fn schema_shape() {
        let s = build_symbol_algebra(1, QuotientSpec::Default).unwrap();
        let v: serde_json::Value = serde_json::from_str(&s.algebra().to_json()).unwrap();
        assert_eq!(v["basis"][2]["label"], "[1,2]");
        assert_eq!(v["basis"][2]["degree"], -2);
        assert_eq!(v["brackets"][0]["terms"][0], serde_json::json!({"k": 2, "re": "1", "im": "0"}));
        assert_eq!(v["J"][0][0], "i");
        assert_eq!(v["meta"]["k"], 1);
    }

    #[test]
    fn rejects_malformed() {
        let bad = r#"{"basis":[{"label":"x","degree":-1}],"brackets":[{"i":0,"j":0,"terms":[]}]}"#;
        assert!(GradedLieAlgebra::from_json(bad).is_err());
        let bad = r#"{"basis":[{"label":"x","degree":-1},{"label":"y","degree":-1}],
            "brackets":[{"i":0,"j":1,"terms":[{"k":0,"re":"1","im":"0"}]}]}"#;
        assert!(matches!(GradedLieAlgebra::from_json(bad), Err(AlgebraError::GradingViolation { .. })));
        assert!(GradedLieAlgebra::from_json("{").is_err());
    }
}
