//! JSON documents for sheaf data.
//!
//! Objects over `(X, δ)` key stalks by simplex and maps by `"source->target"`:
//!
//! ```json
//! {"perversity": [0, -1, 1],
//!  "stalks": {"a": 1, "ab": 2},
//!  "maps": {"a->ab": [["1"], ["0"]]}}
//! ```
//!
//! Objects over the subdivision key everything by flags, written as arrays
//! of simplex keys. Either kind may embed the complex under `"complex"`.
//! Matrix entries are exact fraction strings. Missing stalks are zero; a
//! map may be omitted only when it is the empty matrix.
//!
//! Quiver algebras can also be given directly, by nodes, arrows and
//! relations (see [`AlgebraDocument`]).

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraError, QuadraticQuiverAlgebra, RelationSpace};
use crate::cellular::{CellularData, ShapeError};
use crate::complex::{ComplexDocument, SimplicialComplex};
use crate::linalg::{parse_q, Matrix, MatrixParseError};
use crate::perversity::{Perversity, PerversityError};
use crate::quiver::{Path, Quiver, QuiverError};
use crate::triangulation::fit_perversity;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DocumentError {
    #[error("malformed document: {0}")]
    Json(String),
    #[error(transparent)]
    Perversity(#[from] PerversityError),
    #[error("unknown simplex `{0}`")]
    UnknownSimplex(String),
    #[error("unknown flag {0:?}")]
    UnknownFlag(Vec<String>),
    #[error("map key `{0}` is not of the form `source->target`")]
    BadMapKey(String),
    #[error("`{0}` is not an arrow")]
    NotAnArrow(String),
    #[error("map `{0}` is missing")]
    MissingMap(String),
    #[error("`{0}` is listed twice")]
    Duplicate(String),
    #[error("map `{key}`: {source}")]
    Matrix { key: String, source: MatrixParseError },
    #[error(transparent)]
    Shape(#[from] ShapeError),
    #[error("unknown node `{0}`")]
    UnknownNode(String),
    #[error("`{0}` is not a fraction")]
    Coefficient(String),
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// An object over `(X, δ)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SheafDocument {
    pub perversity: Vec<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub complex: Option<ComplexDocument>,
    #[serde(default)]
    pub stalks: BTreeMap<String, usize>,
    #[serde(default)]
    pub maps: BTreeMap<String, Vec<Vec<String>>>,
}

impl SheafDocument {
    pub fn parse(text: &str) -> Result<Self, DocumentError> {
        serde_json::from_str(text).map_err(|e| DocumentError::Json(e.to_string()))
    }

    pub fn perversity_for(&self, complex: &SimplicialComplex) -> Result<Perversity, DocumentError> {
        Ok(fit_perversity(complex, &Perversity::new(self.perversity.clone())?)?)
    }

    /// Resolve against `complex`, producing data on `Q(X, δ)`.
    pub fn to_data(&self, complex: &SimplicialComplex) -> Result<(Perversity, CellularData), DocumentError> {
        let perversity = self.perversity_for(complex)?;
        let quiver = Arc::new(Quiver::of_complex(complex, &perversity));
        let mut stalks = vec![0; complex.len()];
        let mut seen = vec![false; complex.len()];
        for (key, &dim) in &self.stalks {
            let s = complex.resolve_key(key).ok_or_else(|| DocumentError::UnknownSimplex(key.clone()))?;
            if std::mem::replace(&mut seen[s], true) {
                return Err(DocumentError::Duplicate(key.clone()));
            }
            stalks[s] = dim;
        }
        let mut given: Vec<Option<&Vec<Vec<String>>>> = vec![None; quiver.arrows().len()];
        for (key, rows) in &self.maps {
            let (src, tgt) = key.split_once("->").ok_or_else(|| DocumentError::BadMapKey(key.clone()))?;
            let s = complex.resolve_key(src.trim()).ok_or_else(|| DocumentError::UnknownSimplex(src.trim().into()))?;
            let t = complex.resolve_key(tgt.trim()).ok_or_else(|| DocumentError::UnknownSimplex(tgt.trim().into()))?;
            let a = quiver.arrow_id(s, t).ok_or_else(|| DocumentError::NotAnArrow(key.clone()))?;
            if given[a].replace(rows).is_some() {
                return Err(DocumentError::Duplicate(key.clone()));
            }
        }
        let maps = read_maps(&quiver, &stalks, &given)?;
        Ok((perversity, CellularData::new(quiver, stalks, maps)?))
    }

    /// Every stalk and every map, in canonical order.
    pub fn from_data(
        complex: &SimplicialComplex,
        perversity: &Perversity,
        data: &CellularData,
        embed_complex: bool,
    ) -> Self {
        let q = data.quiver();
        SheafDocument {
            perversity: perversity.values().to_vec(),
            complex: embed_complex.then(|| complex.to_document()),
            stalks: (0..q.len()).map(|v| (q.name(v).to_string(), data.stalk(v))).collect(),
            maps: (0..q.arrows().len()).map(|a| (q.arrow_name(a), data.map(a).to_strings())).collect(),
        }
    }
}

fn read_maps(
    quiver: &Quiver,
    stalks: &[usize],
    given: &[Option<&Vec<Vec<String>>>],
) -> Result<Vec<Matrix>, DocumentError> {
    (0..quiver.arrows().len())
        .map(|a| {
            let (s, t) = quiver.arrow(a);
            let (rows, cols) = (stalks[t], stalks[s]);
            match given[a] {
                Some(entries) => Matrix::from_strings(entries, rows, cols)
                    .map_err(|source| DocumentError::Matrix { key: quiver.arrow_name(a), source }),
                None if rows == 0 || cols == 0 => Ok(Matrix::zeros(rows, cols)),
                None => Err(DocumentError::MissingMap(quiver.arrow_name(a))),
            }
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlagStalk {
    pub flag: Vec<String>,
    pub dim: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlagMap {
    pub source: Vec<String>,
    pub target: Vec<String>,
    pub matrix: Vec<Vec<String>>,
}

/// An object over the subdivision, keyed by flags.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlagSheafDocument {
    pub perversity: Vec<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub complex: Option<ComplexDocument>,
    #[serde(default)]
    pub stalks: Vec<FlagStalk>,
    #[serde(default)]
    pub maps: Vec<FlagMap>,
}

impl FlagSheafDocument {
    pub fn parse(text: &str) -> Result<Self, DocumentError> {
        serde_json::from_str(text).map_err(|e| DocumentError::Json(e.to_string()))
    }

    pub fn perversity_for(&self, complex: &SimplicialComplex) -> Result<Perversity, DocumentError> {
        Ok(fit_perversity(complex, &Perversity::new(self.perversity.clone())?)?)
    }

    /// Resolve against `complex`, producing data on the flag quiver.
    pub fn to_data(&self, complex: &SimplicialComplex) -> Result<(Perversity, CellularData), DocumentError> {
        let perversity = self.perversity_for(complex)?;
        let sd = complex.subdivision();
        let quiver = Arc::new(Quiver::of_subdivision(complex));
        let flag = |keys: &Vec<String>| {
            sd.resolve_key_list(complex, keys).ok_or_else(|| DocumentError::UnknownFlag(keys.clone()))
        };
        let mut stalks = vec![0; sd.len()];
        let mut seen = vec![false; sd.len()];
        for entry in &self.stalks {
            let f = flag(&entry.flag)?;
            if std::mem::replace(&mut seen[f], true) {
                return Err(DocumentError::Duplicate(sd.key(complex, f)));
            }
            stalks[f] = entry.dim;
        }
        let mut given: Vec<Option<&Vec<Vec<String>>>> = vec![None; quiver.arrows().len()];
        for entry in &self.maps {
            let (g, h) = (flag(&entry.source)?, flag(&entry.target)?);
            let name = format!("{}->{}", sd.key(complex, g), sd.key(complex, h));
            let a = quiver.arrow_id(g, h).ok_or_else(|| DocumentError::NotAnArrow(name.clone()))?;
            if given[a].replace(&entry.matrix).is_some() {
                return Err(DocumentError::Duplicate(name));
            }
        }
        let maps = read_maps(&quiver, &stalks, &given)?;
        Ok((perversity, CellularData::new(quiver, stalks, maps)?))
    }

    pub fn from_data(
        complex: &SimplicialComplex,
        perversity: &Perversity,
        data: &CellularData,
        embed_complex: bool,
    ) -> Self {
        let sd = complex.subdivision();
        let q = data.quiver();
        FlagSheafDocument {
            perversity: perversity.values().to_vec(),
            complex: embed_complex.then(|| complex.to_document()),
            stalks: (0..q.len()).map(|f| FlagStalk { flag: sd.key_list(complex, f), dim: data.stalk(f) }).collect(),
            maps: q
                .arrows()
                .iter()
                .enumerate()
                .map(|(a, &(g, h))| FlagMap {
                    source: sd.key_list(complex, g),
                    target: sd.key_list(complex, h),
                    matrix: data.map(a).to_strings(),
                })
                .collect(),
        }
    }
}

/// One term of a relation: a coefficient times a path, given by its nodes
/// in travel order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationTerm {
    pub path: Vec<String>,
    pub coefficient: String,
}

/// A quiver algebra given by hand.
///
/// ```json
/// {"label": "mutant",
///  "nodes": ["1", "2", "3"],
///  "arrows": [["1", "2"], ["2", "3"], ["1", "3"]],
///  "relations": [[{"path": ["1", "3"], "coefficient": "1"},
///                 {"path": ["1", "2", "3"], "coefficient": "-1"}]]}
/// ```
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraDocument {
    #[serde(default)]
    pub label: Option<String>,
    pub nodes: Vec<String>,
    pub arrows: Vec<(String, String)>,
    #[serde(default)]
    pub relations: Vec<Vec<RelationTerm>>,
}

impl AlgebraDocument {
    pub fn parse(text: &str) -> Result<Self, DocumentError> {
        serde_json::from_str(text).map_err(|e| DocumentError::Json(e.to_string()))
    }

    pub fn to_algebra(&self) -> Result<QuadraticQuiverAlgebra, DocumentError> {
        let node = |name: &String| {
            self.nodes.iter().position(|n| n == name).ok_or_else(|| DocumentError::UnknownNode(name.clone()))
        };
        if let Some(dup) = self.nodes.iter().enumerate().find(|(i, n)| self.nodes[..*i].contains(n)) {
            return Err(DocumentError::Duplicate(dup.1.clone()));
        }
        let arrows =
            self.arrows.iter().map(|(s, t)| Ok((node(s)?, node(t)?))).collect::<Result<Vec<_>, DocumentError>>()?;
        let quiver = Arc::new(Quiver::from_arrows(self.nodes.clone(), arrows)?);
        let relations = self
            .relations
            .iter()
            .map(|rel| {
                rel.iter()
                    .map(|term| {
                        if term.path.is_empty() {
                            return Err(DocumentError::Json("relation term with an empty path".into()));
                        }
                        let nodes = term.path.iter().map(node).collect::<Result<Vec<_>, _>>()?;
                        let c = parse_q(&term.coefficient)
                            .ok_or_else(|| DocumentError::Coefficient(term.coefficient.clone()))?;
                        Ok((Path::new(nodes), c))
                    })
                    .collect::<Result<Vec<_>, DocumentError>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        let relations = RelationSpace::from_relations(&quiver, &relations)?;
        Ok(QuadraticQuiverAlgebra::new(self.label.clone().unwrap_or_else(|| "algebra".into()), quiver, relations))
    }
}
