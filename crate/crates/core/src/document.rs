//! JSON documents for maps and forms. All numbers are exact rational
//! strings (`"p/q"` or `"p"`).
//!
//! A map document:
//!
//! ```json
//! {"n": 2, "components": [[{"exp": [1, 0], "re": "1", "im": "0"}]]}
//! ```
//!
//! with an optional `"scales": ["2", "1"]` making component `k` equal to
//! `√scales[k] · p_k`. A form document lists Gram entries:
//!
//! ```json
//! {"n": 1, "entries": [{"row": [1], "col": [1], "re": "4", "im": "0"}]}
//! ```

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::form::HermitianForm;
use crate::poly::{HoloMap, HoloPoly};
use crate::rankdecomp::ScaledMap;
use crate::scalar::{parse_rational, GaussianRational};

fn zero_string() -> String {
    "0".to_string()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermDoc {
    pub exp: Vec<u32>,
    pub re: String,
    #[serde(default = "zero_string")]
    pub im: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapDocument {
    pub n: usize,
    pub components: Vec<Vec<TermDoc>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scales: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EntryDoc {
    pub row: Vec<u32>,
    pub col: Vec<u32>,
    pub re: String,
    #[serde(default = "zero_string")]
    pub im: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FormDocument {
    pub n: usize,
    pub entries: Vec<EntryDoc>,
}

/// Either kind of document, told apart by its fields.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Document {
    Map(MapDocument),
    Form(FormDocument),
}

fn poly_terms(p: &HoloPoly) -> Vec<TermDoc> {
    p.terms().map(|(m, c)| TermDoc { exp: m.exps().to_vec(), re: c.re.to_string(), im: c.im.to_string() }).collect()
}

impl MapDocument {
    pub fn from_map(f: &HoloMap) -> Self {
        Self { n: f.nvars(), components: f.components().iter().map(poly_terms).collect(), scales: None }
    }

    pub fn from_scaled(f: &ScaledMap) -> Self {
        let all_one = f.components().iter().all(|(r, _)| r == &num_rational::BigRational::from_integer(1.into()));
        Self {
            n: f.nvars(),
            components: f.components().iter().map(|(_, p)| poly_terms(p)).collect(),
            scales: (!all_one).then(|| f.components().iter().map(|(r, _)| r.to_string()).collect()),
        }
    }

    fn polys(&self) -> Result<Vec<HoloPoly>> {
        self.components
            .iter()
            .map(|terms| {
                let parsed = terms
                    .iter()
                    .map(|t| Ok((t.exp.clone(), GaussianRational::parse(&t.re, &t.im)?)))
                    .collect::<Result<Vec<_>>>()?;
                HoloPoly::from_terms(self.n, parsed)
            })
            .collect()
    }

    /// The unscaled map; fails if the document carries non-unit scales.
    pub fn to_map(&self) -> Result<HoloMap> {
        let scaled = self.to_scaled()?;
        if scaled.components().iter().any(|(r, _)| r != &num_rational::BigRational::from_integer(1.into())) {
            return Err(Error::Parse("document has irrational scales; expected a plain map".into()));
        }
        Ok(scaled.polys())
    }

    pub fn to_scaled(&self) -> Result<ScaledMap> {
        let polys = self.polys()?;
        let scales = match &self.scales {
            None => vec![num_rational::BigRational::from_integer(1.into()); polys.len()],
            Some(s) => {
                if s.len() != polys.len() {
                    return Err(Error::Parse(format!("{} scales for {} components", s.len(), polys.len())));
                }
                s.iter().map(|x| parse_rational(x)).collect::<Result<_>>()?
            }
        };
        ScaledMap::new(self.n, scales.into_iter().zip(polys).collect())
    }

    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents always serialize")
    }
}

impl FormDocument {
    pub fn from_form(a: &HermitianForm) -> Self {
        Self {
            n: a.nvars(),
            entries: a
                .entries()
                .map(|(r, c, v)| EntryDoc {
                    row: r.exps().to_vec(),
                    col: c.exps().to_vec(),
                    re: v.re.to_string(),
                    im: v.im.to_string(),
                })
                .collect(),
        }
    }

    pub fn to_form(&self) -> Result<HermitianForm> {
        let triples = self
            .entries
            .iter()
            .map(|e| Ok((e.row.clone(), e.col.clone(), GaussianRational::parse(&e.re, &e.im)?)))
            .collect::<Result<Vec<_>>>()?;
        HermitianForm::from_triples(self.n, triples)
    }

    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents always serialize")
    }
}

impl Document {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    /// The squared norm for a map document, the form itself otherwise.
    pub fn to_form(&self) -> Result<HermitianForm> {
        match self {
            Document::Map(m) => Ok(crate::rankdecomp::SquaredNorm::squared_norm(&m.to_scaled()?)),
            Document::Form(f) => f.to_form(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_map() {
        let doc =
            MapDocument::parse(r#"{"n":2,"components":[[{"exp":[1,0],"re":"2/4","im":"0"},{"exp":[0,1],"re":"1"}]]}"#)
                .unwrap();
        let f = doc.to_map().unwrap();
        assert_eq!(f.len(), 1);
        assert_eq!(f.components()[0].num_terms(), 2);
        // canonical form: lowest terms, explicit imaginary part
        let again = MapDocument::from_map(&f);
        assert_eq!(again.components[0][0].re, "1/2");
        assert_eq!(again.components[0][1].im, "0");
    }

    #[test]
    fn rejects_bad_input() {
        assert!(MapDocument::parse(r#"{"n":1,"components":[[{"exp":[1],"re":"1/0"}]]}"#).unwrap().to_map().is_err());
        assert!(MapDocument::parse(r#"{"n":2,"components":[[{"exp":[1],"re":"1"}]]}"#).unwrap().to_map().is_err());
        assert!(MapDocument::parse(r#"{"n":2,"components":[[{"exp":[1],"re":1.5}]]}"#).is_err());
        assert!(MapDocument::parse(r#"{"n":1,"components":[[{"exp":[1],"re":"1"}]],"scales":["0"]}"#)
            .unwrap()
            .to_scaled()
            .is_err());
    }

    #[test]
    fn scaled_round_trip() {
        let doc = MapDocument::parse(r#"{"n":1,"components":[[{"exp":[1],"re":"1"}]],"scales":["2"]}"#).unwrap();
        let s = doc.to_scaled().unwrap();
        assert!(doc.to_map().is_err());
        assert_eq!(MapDocument::from_scaled(&s), doc);
    }

    #[test]
    fn document_kind_detection() {
        let d = Document::parse(r#"{"n":1,"entries":[{"row":[1],"col":[1],"re":"-1"}]}"#).unwrap();
        assert!(matches!(d, Document::Form(_)));
        let d = Document::parse(r#"{"n":1,"components":[]}"#).unwrap();
        assert!(matches!(d, Document::Map(_)));
        assert!(d.to_form().unwrap().is_zero());
    }

    #[test]
    fn non_hermitian_form_rejected() {
        let d = FormDocument::parse(r#"{"n":1,"entries":[{"row":[1],"col":[0],"re":"1"}]}"#).unwrap();
        assert_eq!(d.to_form(), Err(Error::NotHermitian));
    }
}
