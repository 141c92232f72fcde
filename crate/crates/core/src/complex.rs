//! Finite abstract simplicial complexes and their first barycentric
//! subdivision.
//!
//! Vertices are kept sorted by label and simplices are stored in the
//! canonical order `(dimension, sorted vertex labels)`. A [`SimplexId`] is an
//! index into that order, so comparing ids compares simplices canonically.
//! Flags (chains of simplices) are ordered lexicographically by their id
//! sequences, which is the same as ordering by chains of simplices.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

/// Index of a simplex in the canonical order of its complex.
pub type SimplexId = usize;

/// Index of a flag in the canonical order of a subdivision.
pub type FlagId = usize;

/// Face closure enumerates subsets, so cap simplex size well below overflow.
pub const MAX_SIMPLEX_VERTICES: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ComplexError {
    #[error("complex has no vertices")]
    Empty,
    #[error("vertex label is empty")]
    EmptyLabel,
    #[error("duplicate vertex label `{0}`")]
    DuplicateVertex(String),
    #[error("simplex references unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("maximal simplex #{0} is empty")]
    EmptySimplex(usize),
    #[error("vertex `{vertex}` repeated in maximal simplex #{index}")]
    RepeatedVertex { index: usize, vertex: String },
    #[error("maximal simplex #{index} has {size} vertices (limit {MAX_SIMPLEX_VERTICES})")]
    SimplexTooLarge { index: usize, size: usize },
    #[error("complex is disconnected: `{0}` and `{1}` lie in different components")]
    Disconnected(String, String),
    #[error("listed simplex #{index} is a face of listed simplex #{container}")]
    NotMaximal { index: usize, container: usize },
    #[error("unknown simplex {0}")]
    UnknownSimplex(String),
}

/// Non-fatal findings while reading a complex document.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum ComplexWarning {
    /// A listed "maximal" simplex is a face of another listed simplex.
    NotMaximal { index: usize, container: usize },
}

/// How strictly to read a complex document.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ParseOptions {
    /// Reject documents whose maximal list contains a non-maximal simplex
    /// instead of warning about it.
    pub reject_non_maximal: bool,
}

/// The on-disk complex format: vertex labels plus maximal simplices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexDocument {
    pub vertices: Vec<String>,
    pub maximal_simplices: Vec<Vec<String>>,
}

/// A finite connected simplicial complex, immutable after construction.
#[derive(Clone)]
pub struct SimplicialComplex {
    vertices: Vec<String>,
    simplices: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, SimplexId>,
    cofaces: Vec<Vec<SimplexId>>,
    maximal: Vec<SimplexId>,
    dimension: usize,
    compact_keys: bool,
    subdivision: OnceLock<SubdividedComplex>,
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.simplices == other.simplices
    }
}

impl Eq for SimplicialComplex {}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SimplicialComplex")
            .field("vertices", &self.vertices)
            .field("maximal", &self.maximal.iter().map(|&s| self.key(s)).collect::<Vec<_>>())
            .finish()
    }
}

/// Read a complex from its JSON document text.
pub fn parse_complex(text: &str) -> Result<(SimplicialComplex, Vec<ComplexWarning>), ParseError> {
    parse_complex_with(text, ParseOptions::default())
}

pub fn parse_complex_with(
    text: &str,
    options: ParseOptions,
) -> Result<(SimplicialComplex, Vec<ComplexWarning>), ParseError> {
    let doc: ComplexDocument = serde_json::from_str(text).map_err(|e| ParseError::Json(e.to_string()))?;
    Ok(SimplicialComplex::from_document(&doc, options)?)
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("malformed complex document: {0}")]
    Json(String),
    #[error(transparent)]
    Invalid(#[from] ComplexError),
}

impl SimplicialComplex {
    pub fn from_document(
        doc: &ComplexDocument,
        options: ParseOptions,
    ) -> Result<(Self, Vec<ComplexWarning>), ComplexError> {
        Self::from_maximal(&doc.vertices, &doc.maximal_simplices, options)
    }

    /// Face closure of the given simplices, validated.
    pub fn from_maximal<S: AsRef<str>>(
        vertices: &[S],
        maximal: &[Vec<S>],
        options: ParseOptions,
    ) -> Result<(Self, Vec<ComplexWarning>), ComplexError> {
        if vertices.is_empty() {
            return Err(ComplexError::Empty);
        }
        let mut labels: Vec<String> = Vec::with_capacity(vertices.len());
        let mut seen = HashSet::new();
        for v in vertices {
            let v = v.as_ref();
            if v.is_empty() {
                return Err(ComplexError::EmptyLabel);
            }
            if !seen.insert(v.to_string()) {
                return Err(ComplexError::DuplicateVertex(v.to_string()));
            }
            labels.push(v.to_string());
        }
        labels.sort();
        let position: HashMap<&str, usize> = labels.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();

        let mut listed: Vec<Vec<usize>> = Vec::with_capacity(maximal.len());
        for (index, simplex) in maximal.iter().enumerate() {
            if simplex.is_empty() {
                return Err(ComplexError::EmptySimplex(index));
            }
            if simplex.len() > MAX_SIMPLEX_VERTICES {
                return Err(ComplexError::SimplexTooLarge { index, size: simplex.len() });
            }
            let mut ids = Vec::with_capacity(simplex.len());
            for label in simplex {
                let label = label.as_ref();
                let &id = position.get(label).ok_or_else(|| ComplexError::UnknownVertex(label.to_string()))?;
                if ids.contains(&id) {
                    return Err(ComplexError::RepeatedVertex { index, vertex: label.to_string() });
                }
                ids.push(id);
            }
            ids.sort_unstable();
            listed.push(ids);
        }

        let mut warnings = Vec::new();
        for (index, s) in listed.iter().enumerate() {
            let container = listed
                .iter()
                .enumerate()
                .find(|&(j, t)| j != index && is_subset(s, t) && (s.len() < t.len() || j < index));
            if let Some((container, _)) = container {
                if options.reject_non_maximal {
                    return Err(ComplexError::NotMaximal { index, container });
                }
                warnings.push(ComplexWarning::NotMaximal { index, container });
            }
        }

        let mut all: BTreeSet<(usize, Vec<usize>)> = BTreeSet::new();
        for v in 0..labels.len() {
            all.insert((0, vec![v]));
        }
        for s in &listed {
            for mask in 1u32..(1u32 << s.len()) {
                let face: Vec<usize> =
                    s.iter().enumerate().filter(|(i, _)| mask & (1 << i) != 0).map(|(_, &v)| v).collect();
                all.insert((face.len() - 1, face));
            }
        }
        let simplices: Vec<Vec<usize>> = all.into_iter().map(|(_, s)| s).collect();
        let complex = Self::assemble(labels, simplices);
        complex.check_connected()?;
        Ok((complex, warnings))
    }

    fn assemble(vertices: Vec<String>, simplices: Vec<Vec<usize>>) -> Self {
        let index: HashMap<Vec<usize>, SimplexId> =
            simplices.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
        let mut cofaces = vec![Vec::new(); simplices.len()];
        for (i, s) in simplices.iter().enumerate() {
            for (j, t) in simplices.iter().enumerate() {
                if s.len() < t.len() && is_subset(s, t) {
                    cofaces[i].push(j);
                }
            }
        }
        let maximal = (0..simplices.len()).filter(|&i| cofaces[i].is_empty()).collect();
        let dimension = simplices.iter().map(|s| s.len() - 1).max().unwrap_or(0);
        let compact_keys = vertices.iter().all(|l| l.chars().count() == 1 && l != ",");
        SimplicialComplex {
            vertices,
            simplices,
            index,
            cofaces,
            maximal,
            dimension,
            compact_keys,
            subdivision: OnceLock::new(),
        }
    }

    fn check_connected(&self) -> Result<(), ComplexError> {
        let n = self.vertices.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while parent[r] != r {
                r = parent[r];
            }
            let mut y = x;
            while parent[y] != r {
                let next = parent[y];
                parent[y] = r;
                y = next;
            }
            r
        }
        for s in self.simplices.iter().filter(|s| s.len() == 2) {
            let (a, b) = (find(&mut parent, s[0]), find(&mut parent, s[1]));
            parent[a] = b;
        }
        let root = find(&mut parent, 0);
        for v in 1..n {
            if find(&mut parent, v) != root {
                return Err(ComplexError::Disconnected(self.vertices[0].clone(), self.vertices[v].clone()));
            }
        }
        Ok(())
    }

    /// The full simplex on `n + 1` vertices labelled `a`, `b`, `c`, ...
    pub fn full_simplex(n: usize) -> Self {
        let labels = letter_labels(n + 1);
        Self::from_maximal(&labels, std::slice::from_ref(&labels), ParseOptions::default())
            .expect("full simplex is valid")
            .0
    }

    /// The boundary of the `n`-simplex, a triangulated `(n-1)`-sphere.
    pub fn simplex_boundary(n: usize) -> Self {
        assert!(n >= 1, "the boundary of a point is empty");
        let labels = letter_labels(n + 1);
        let facets: Vec<Vec<String>> = (0..=n)
            .map(|skip| labels.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, l)| l.clone()).collect())
            .collect();
        Self::from_maximal(&labels, &facets, ParseOptions::default()).expect("sphere is valid").0
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn ids(&self) -> std::ops::Range<SimplexId> {
        0..self.simplices.len()
    }

    /// Sorted vertex indices of a simplex.
    pub fn vertex_set(&self, s: SimplexId) -> &[usize] {
        &self.simplices[s]
    }

    pub fn dim(&self, s: SimplexId) -> usize {
        self.simplices[s].len() - 1
    }

    pub fn maximal(&self) -> &[SimplexId] {
        &self.maximal
    }

    /// Simplices strictly containing `s`, in canonical order.
    pub fn cofaces(&self, s: SimplexId) -> &[SimplexId] {
        &self.cofaces[s]
    }

    pub fn labels(&self, s: SimplexId) -> Vec<&str> {
        self.simplices[s].iter().map(|&v| self.vertices[v].as_str()).collect()
    }

    /// Canonical text key: concatenated labels when every label is a single
    /// character (`"abc"`), comma separated otherwise (`"v1,v2"`).
    pub fn key(&self, s: SimplexId) -> String {
        let labels = self.labels(s);
        if self.compact_keys {
            labels.concat()
        } else {
            labels.join(",")
        }
    }

    /// Look a simplex up by its vertex labels (any order).
    pub fn find<S: AsRef<str>>(&self, labels: &[S]) -> Option<SimplexId> {
        let mut ids = Vec::with_capacity(labels.len());
        for l in labels {
            ids.push(self.vertices.binary_search_by(|v| v.as_str().cmp(l.as_ref())).ok()?);
        }
        ids.sort_unstable();
        ids.dedup();
        if ids.len() != labels.len() {
            return None;
        }
        self.index.get(&ids).copied()
    }

    /// Inverse of [`key`](Self::key). Comma-separated keys are always
    /// accepted; compact keys only when every label is one character.
    pub fn resolve_key(&self, key: &str) -> Option<SimplexId> {
        if key.contains(',') {
            let parts: Vec<&str> = key.split(',').map(str::trim).collect();
            return self.find(&parts);
        }
        if let Some(s) = self.find(&[key]) {
            return Some(s);
        }
        if self.compact_keys {
            let parts: Vec<String> = key.chars().map(String::from).collect();
            return self.find(&parts);
        }
        None
    }

    /// `a` is a proper face of `b`.
    pub fn is_proper_face(&self, a: SimplexId, b: SimplexId) -> bool {
        let (sa, sb) = (&self.simplices[a], &self.simplices[b]);
        sa.len() < sb.len() && is_subset(sa, sb)
    }

    /// Incidence: distinct simplices one of which contains the other.
    pub fn incident(&self, a: SimplexId, b: SimplexId) -> Result<bool, ComplexError> {
        for s in [a, b] {
            if s >= self.len() {
                return Err(ComplexError::UnknownSimplex(format!("#{s}")));
            }
        }
        Ok(self.is_proper_face(a, b) || self.is_proper_face(b, a))
    }

    /// The maximal simplices as a document, in canonical order.
    pub fn to_document(&self) -> ComplexDocument {
        ComplexDocument {
            vertices: self.vertices.clone(),
            maximal_simplices: self
                .maximal
                .iter()
                .map(|&s| self.labels(s).into_iter().map(String::from).collect())
                .collect(),
        }
    }

    /// The first barycentric subdivision, computed once.
    pub fn subdivision(&self) -> &SubdividedComplex {
        self.subdivision.get_or_init(|| SubdividedComplex::build(self))
    }
}

/// Free-function form of [`SimplicialComplex::subdivision`].
pub fn barycentric_subdivision(complex: &SimplicialComplex) -> &SubdividedComplex {
    complex.subdivision()
}

fn letter_labels(count: usize) -> Vec<String> {
    (0..count).map(|i| if i < 26 { char::from(b'a' + i as u8).to_string() } else { format!("v{i}") }).collect()
}

fn is_subset(small: &[usize], big: &[usize]) -> bool {
    let mut it = big.iter();
    small.iter().all(|x| it.any(|y| y == x))
}

/// A strictly increasing chain of simplices: one simplex of the subdivision.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Flag(Vec<SimplexId>);

impl Flag {
    pub fn new(chain: Vec<SimplexId>) -> Self {
        Flag(chain)
    }

    pub fn chain(&self) -> &[SimplexId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Dimension as a simplex of the subdivision.
    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    pub fn top(&self) -> SimplexId {
        *self.0.last().expect("flags are nonempty")
    }

    /// Subchain test (non-strict).
    pub fn is_face_of(&self, other: &Flag) -> bool {
        is_subset(&self.0, &other.0)
    }

    /// Check that the chain is nonempty and strictly increasing under proper
    /// face inclusion in `complex`.
    pub fn is_valid_in(&self, complex: &SimplicialComplex) -> bool {
        !self.0.is_empty()
            && self.0.iter().all(|&s| s < complex.len())
            && self.0.windows(2).all(|w| complex.is_proper_face(w[0], w[1]))
    }
}

/// The first barycentric subdivision, as the set of all flags of the base
/// complex together with their face structure.
#[derive(Debug, Clone)]
pub struct SubdividedComplex {
    flags: Vec<Flag>,
    index: HashMap<Flag, FlagId>,
    facets: Vec<Vec<FlagId>>,
    cofacets: Vec<Vec<FlagId>>,
}

/// Result of [`SubdividedComplex::closed_union`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedUnion {
    pub flags: BTreeSet<FlagId>,
    pub was_closed: bool,
}

impl SubdividedComplex {
    fn build(complex: &SimplicialComplex) -> Self {
        let mut flags = Vec::new();
        let mut stack: Vec<Vec<SimplexId>> = complex.ids().map(|s| vec![s]).collect();
        while let Some(chain) = stack.pop() {
            let top = *chain.last().unwrap();
            for &c in complex.cofaces(top) {
                let mut longer = chain.clone();
                longer.push(c);
                stack.push(longer);
            }
            flags.push(Flag(chain));
        }
        flags.sort();
        let index: HashMap<Flag, FlagId> = flags.iter().cloned().enumerate().map(|(i, f)| (f, i)).collect();
        let mut facets = vec![Vec::new(); flags.len()];
        let mut cofacets = vec![Vec::new(); flags.len()];
        for (i, f) in flags.iter().enumerate() {
            if f.len() < 2 {
                continue;
            }
            for skip in 0..f.len() {
                let face: Vec<SimplexId> =
                    f.0.iter().enumerate().filter(|&(k, _)| k != skip).map(|(_, &s)| s).collect();
                let j = index[&Flag(face)];
                facets[i].push(j);
                cofacets[j].push(i);
            }
        }
        for list in facets.iter_mut().chain(cofacets.iter_mut()) {
            list.sort_unstable();
        }
        SubdividedComplex { flags, index, facets, cofacets }
    }

    pub fn flags(&self) -> &[Flag] {
        &self.flags
    }

    pub fn len(&self) -> usize {
        self.flags.len()
    }

    pub fn is_empty(&self) -> bool {
        self.flags.is_empty()
    }

    pub fn flag(&self, id: FlagId) -> &Flag {
        &self.flags[id]
    }

    pub fn id_of(&self, flag: &Flag) -> Option<FlagId> {
        self.index.get(flag).copied()
    }

    /// The singleton flag `(s)`, i.e. the barycenter of `s`.
    pub fn vertex_flag(&self, s: SimplexId) -> FlagId {
        self.index[&Flag(vec![s])]
    }

    /// Codimension-one faces of a flag.
    pub fn facets(&self, id: FlagId) -> &[FlagId] {
        &self.facets[id]
    }

    /// Flags having `id` as a codimension-one face.
    pub fn cofacets(&self, id: FlagId) -> &[FlagId] {
        &self.cofacets[id]
    }

    /// Number of flags of each length `1..=n+1`.
    pub fn census(&self) -> Vec<usize> {
        let longest = self.flags.iter().map(Flag::len).max().unwrap_or(0);
        let mut counts = vec![0; longest];
        for f in &self.flags {
            counts[f.len() - 1] += 1;
        }
        counts
    }

    /// Close a set of flags under taking faces, reporting whether it already
    /// was closed.
    pub fn closed_union(&self, flags: &BTreeSet<FlagId>) -> ClosedUnion {
        let mut closed = flags.clone();
        let mut stack: Vec<FlagId> = flags.iter().copied().collect();
        while let Some(f) = stack.pop() {
            for &g in &self.facets[f] {
                if closed.insert(g) {
                    stack.push(g);
                }
            }
        }
        let was_closed = closed.len() == flags.len();
        ClosedUnion { flags: closed, was_closed }
    }

    /// Flag key for reports: simplex keys joined by `<`.
    pub fn key(&self, complex: &SimplicialComplex, id: FlagId) -> String {
        self.flags[id].0.iter().map(|&s| complex.key(s)).collect::<Vec<_>>().join("<")
    }

    /// Flag as an array of simplex keys.
    pub fn key_list(&self, complex: &SimplicialComplex, id: FlagId) -> Vec<String> {
        self.flags[id].0.iter().map(|&s| complex.key(s)).collect()
    }

    /// Inverse of [`key_list`](Self::key_list); chain order is normalised.
    pub fn resolve_key_list<S: AsRef<str>>(&self, complex: &SimplicialComplex, keys: &[S]) -> Option<FlagId> {
        let mut chain = Vec::with_capacity(keys.len());
        for k in keys {
            chain.push(complex.resolve_key(k.as_ref())?);
        }
        chain.sort_by_key(|&s| (complex.dim(s), s));
        self.id_of(&Flag(chain))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn build(vertices: &[&str], maximal: &[&[&str]]) -> Result<SimplicialComplex, ComplexError> {
        let maximal: Vec<Vec<&str>> = maximal.iter().map(|s| s.to_vec()).collect();
        SimplicialComplex::from_maximal(vertices, &maximal, ParseOptions::default()).map(|(c, _)| c)
    }

    #[test]
    fn edge_closure() {
        let x = build(&["a", "b"], &[&["a", "b"]]).unwrap();
        assert_eq!(x.len(), 3);
        assert_eq!(x.dimension(), 1);
        let keys: Vec<String> = x.ids().map(|s| x.key(s)).collect();
        assert_eq!(keys, ["a", "b", "ab"]);
    }

    #[test]
    fn triangle_closure() {
        let x = build(&["c", "a", "b"], &[&["c", "b", "a"]]).unwrap();
        assert_eq!(x.len(), 7);
        assert_eq!(x.dimension(), 2);
        let keys: Vec<String> = x.ids().map(|s| x.key(s)).collect();
        assert_eq!(keys, ["a", "b", "c", "ab", "ac", "bc", "abc"]);
    }

    #[test]
    fn validation_errors_are_distinct() {
        assert_eq!(
            build(&["a", "b", "c"], &[&["a", "b"], &["c"]]),
            Err(ComplexError::Disconnected("a".into(), "c".into()))
        );
        assert_eq!(build(&["a", "a"], &[&["a"]]), Err(ComplexError::DuplicateVertex("a".into())));
        assert_eq!(build(&["a"], &[&["a", "z"]]), Err(ComplexError::UnknownVertex("z".into())));
        assert_eq!(build(&[], &[]), Err(ComplexError::Empty));
        assert_eq!(build(&["a"], &[&[]]), Err(ComplexError::EmptySimplex(0)));
        assert_eq!(
            build(&["a", "b"], &[&["a", "b", "a"]]),
            Err(ComplexError::RepeatedVertex { index: 0, vertex: "a".into() })
        );
    }

    #[test]
    fn unlisted_vertex_disconnects() {
        assert!(matches!(build(&["a", "b", "c"], &[&["a", "b"]]), Err(ComplexError::Disconnected(..))));
    }

    #[test]
    fn non_maximal_is_warning_or_error() {
        let maximal = vec![vec!["a", "b"], vec!["a"]];
        let (_, warnings) = SimplicialComplex::from_maximal(&["a", "b"], &maximal, ParseOptions::default()).unwrap();
        assert_eq!(warnings, vec![ComplexWarning::NotMaximal { index: 1, container: 0 }]);
        let strict = ParseOptions { reject_non_maximal: true };
        assert_eq!(
            SimplicialComplex::from_maximal(&["a", "b"], &maximal, strict).unwrap_err(),
            ComplexError::NotMaximal { index: 1, container: 0 }
        );
    }

    #[test]
    fn incidence() {
        let x = SimplicialComplex::full_simplex(2);
        let id = |k: &str| x.resolve_key(k).unwrap();
        assert!(x.incident(id("a"), id("ab")).unwrap());
        assert!(x.incident(id("abc"), id("a")).unwrap());
        assert!(!x.incident(id("a"), id("bc")).unwrap());
        assert!(!x.incident(id("ab"), id("ab")).unwrap());
        assert!(x.incident(0, 99).is_err());
    }

    #[test]
    fn keys_for_long_labels() {
        let x = build(&["v10", "v2"], &[&["v2", "v10"]]).unwrap();
        let e = x.find(&["v2", "v10"]).unwrap();
        assert_eq!(x.key(e), "v10,v2");
        assert_eq!(x.resolve_key("v2,v10"), Some(e));
        assert_eq!(x.resolve_key("v2"), x.find(&["v2"]));
    }

    #[test]
    fn edge_subdivision() {
        let x = SimplicialComplex::full_simplex(1);
        let sd = x.subdivision();
        assert_eq!(sd.census(), vec![3, 2]);
        let keys: Vec<String> = (0..sd.len()).map(|f| sd.key(&x, f)).collect();
        assert_eq!(keys, ["a", "a<ab", "b", "b<ab", "ab"]);
    }

    #[test]
    fn point_subdivision() {
        let x = build(&["p"], &[&["p"]]).unwrap();
        assert_eq!(x.subdivision().len(), 1);
        assert_eq!(x.subdivision().census(), vec![1]);
    }

    #[test]
    fn closed_union_of_one_flag() {
        let x = SimplicialComplex::full_simplex(1);
        let sd = x.subdivision();
        let f = sd.resolve_key_list(&x, &["a", "ab"]).unwrap();
        let closure = sd.closed_union(&BTreeSet::from([f]));
        assert!(!closure.was_closed);
        let keys: BTreeSet<String> = closure.flags.iter().map(|&g| sd.key(&x, g)).collect();
        assert_eq!(keys, BTreeSet::from(["a".into(), "ab".into(), "a<ab".into()]));

        let all: BTreeSet<FlagId> = (0..sd.len()).collect();
        let closure = sd.closed_union(&all);
        assert!(closure.was_closed);
        assert_eq!(closure.flags, all);

        let empty = sd.closed_union(&BTreeSet::new());
        assert!(empty.was_closed && empty.flags.is_empty());
    }
}
