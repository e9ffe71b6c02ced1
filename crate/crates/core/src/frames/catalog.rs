use serde::{Deserialize, Serialize};

use super::field::{Chart, PolyVectorField};
use super::model::ModelSpec;
use super::poly::Poly;
use super::FrameError;
use crate::freelie::min_length_for_codim;
use crate::liealg::ScalarDoc;

const EMBEDDED: &str = include_str!("../../catalog/models.json");

/// One monomial: exponents and a complex coefficient.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermDoc {
    pub exp: Vec<u32>,
    pub re: String,
    pub im: String,
}

/// A catalog model. Rigid entries give `phi` over `(z, z̄)`; others give the
/// components of `L` over `(z, z̄, u₁, …, u_k)` in `field`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub id: String,
    pub k: usize,
    pub rho: usize,
    /// `stated` for models written down explicitly in the literature,
    /// `constructed` for entries that are trusted only after the growth check.
    pub origin: String,
    #[serde(default)]
    pub defining: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phi: Option<Vec<Vec<TermDoc>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<Vec<Vec<TermDoc>>>,
    #[serde(default)]
    pub note: String,
}

fn poly_from_terms(terms: &[TermDoc], nvars: usize) -> Result<Poly, FrameError> {
    let mut p = Poly::zero(nvars);
    for t in terms {
        if t.exp.len() > nvars {
            return Err(FrameError::Catalog(format!("exponent {:?} has too many variables", t.exp)));
        }
        let c = ScalarDoc { re: t.re.clone(), im: t.im.clone() }
            .to_scalar()
            .map_err(|e| FrameError::Catalog(e.to_string()))?;
        let mut e = t.exp.clone();
        e.resize(nvars, 0);
        p.add_term(e, c);
    }
    Ok(p)
}

impl CatalogEntry {
    /// The model, with the claimed length checked against the codimension
    /// and, for rigid entries, against the last weight.
    pub fn model(&self) -> Result<ModelSpec, FrameError> {
        let rho = min_length_for_codim(self.k);
        if self.rho != rho {
            return Err(FrameError::Catalog(format!("{}: length {} but codimension {} needs {rho}", self.id, self.rho, self.k)));
        }
        let n = 2 + self.k;
        match (&self.phi, &self.field) {
            (Some(phis), None) => {
                if phis.len() != self.k {
                    return Err(FrameError::Catalog(format!("{}: {} defining functions for k = {}", self.id, phis.len(), self.k)));
                }
                let phis = phis.iter().map(|t| poly_from_terms(t, n)).collect::<Result<Vec<_>, _>>()?;
                let model = ModelSpec::rigid(self.id.clone(), phis)?;
                if model.weights()?.last() != Some(&rho) {
                    return Err(FrameError::Catalog(format!("{}: last weight differs from length {rho}", self.id)));
                }
                Ok(model)
            }
            (None, Some(comps)) => {
                let comps = comps.iter().map(|t| poly_from_terms(t, n)).collect::<Result<Vec<_>, _>>()?;
                ModelSpec::explicit(self.id.clone(), PolyVectorField::new(Chart::Cr { k: self.k }, comps)?)
            }
            _ => Err(FrameError::Catalog(format!("{}: give exactly one of phi or field", self.id))),
        }
    }
}

/// A list of models.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Catalog {
    pub entries: Vec<CatalogEntry>,
}

impl Catalog {
    /// The catalog compiled into the library.
    pub fn embedded() -> Self {
        Self::from_json(EMBEDDED).expect("embedded catalog parses")
    }

    pub fn from_json(text: &str) -> Result<Self, FrameError> {
        let cat: Catalog = serde_json::from_str(text).map_err(|e| FrameError::Catalog(e.to_string()))?;
        let mut ids: Vec<&str> = cat.entries.iter().map(|e| e.id.as_str()).collect();
        ids.sort_unstable();
        if let Some(w) = ids.windows(2).find(|w| w[0] == w[1]) {
            return Err(FrameError::Catalog(format!("duplicate id {}", w[0])));
        }
        Ok(cat)
    }

    pub fn get(&self, id: &str) -> Result<&CatalogEntry, FrameError> {
        self.entries.iter().find(|e| e.id == id).ok_or_else(|| FrameError::UnknownModel(id.to_string()))
    }

    pub fn model(&self, id: &str) -> Result<ModelSpec, FrameError> {
        self.get(id)?.model()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frames::{growth_and_nondegeneracy, tangential_cr_field};

    #[test]
    fn embedded_entries_parse() {
        let cat = Catalog::embedded();
        assert_eq!(cat.entries.len(), 11);
        for e in &cat.entries {
            let m = e.model().unwrap();
            assert_eq!(m.k, e.k);
        }
        assert_eq!(cat.get("heisenberg").unwrap().defining, vec!["w - wbar = 2i z zbar"]);
        assert!(matches!(cat.model("nope"), Err(FrameError::UnknownModel(_))));
    }

    #[test]
    fn explicit_field_entry() {
        let text = r#"[{"id": "h", "k": 1, "rho": 2, "origin": "constructed",
            "field": [[{"exp": [], "re": "1", "im": "0"}], [], [{"exp": [0, 1], "re": "0", "im": "1"}]]}]"#;
        let m = Catalog::from_json(text).unwrap().model("h").unwrap();
        assert_eq!(tangential_cr_field(&m).unwrap().to_string(), "∂/∂z + i z̄ ∂/∂u₁");
        assert!(growth_and_nondegeneracy(&m).unwrap().1.totally_nondegenerate);
    }

    #[test]
    fn rejects_bad_entries() {
        let wrong_rho = r#"[{"id": "x", "k": 1, "rho": 3, "origin": "constructed",
            "phi": [[{"exp": [1, 1], "re": "1", "im": "0"}]]}]"#;
        assert!(Catalog::from_json(wrong_rho).unwrap().model("x").is_err());
        let dup = r#"[{"id": "x", "k": 1, "rho": 2, "origin": "c"}, {"id": "x", "k": 1, "rho": 2, "origin": "c"}]"#;
        assert!(Catalog::from_json(dup).is_err());
    }
}
