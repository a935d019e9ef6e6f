//! Quivers with homogeneous admissible relations and their path bases.
//!
//! Paths compose left to right: the path `[alpha, beta]` is "alpha then beta".
//! The basis of `e_i A e_j` is built degree by degree: degree `d + 1` is spanned
//! by (basis path of degree `d`) · (arrow), modulo the span of
//! (basis path) · (relation). Row reduction of that span picks the
//! canonical basis: the non-pivot paths survive.

use std::collections::{BTreeSet, HashMap};
use std::str::FromStr;
use std::sync::Arc;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::{QMatrix, Rational};

pub const DEFAULT_BUDGET: usize = 64;

/// On-disk algebra document.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraSpec {
    pub vertices: Vec<String>,
    #[serde(default)]
    pub arrows: Vec<ArrowSpec>,
    #[serde(default)]
    pub relations: Vec<Vec<TermSpec>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub budget: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowSpec {
    pub name: String,
    pub from: String,
    pub to: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermSpec {
    pub coeff: String,
    pub path: Vec<String>,
}

impl AlgebraSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("algebra spec serializes")
    }

    /// Quiver without relations; arrows given as `(name, from, to)`.
    pub fn path_algebra(vertices: &[&str], arrows: &[(&str, &str, &str)]) -> Self {
        AlgebraSpec {
            vertices: vertices.iter().map(|v| v.to_string()).collect(),
            arrows: arrows
                .iter()
                .map(|(n, f, t)| ArrowSpec {
                    name: n.to_string(),
                    from: f.to_string(),
                    to: t.to_string(),
                })
                .collect(),
            relations: Vec::new(),
            budget: None,
        }
    }

    /// Adds the monomial relation `path = 0`.
    pub fn with_zero_relation(mut self, path: &[&str]) -> Self {
        self.relations.push(vec![TermSpec {
            coeff: "1".into(),
            path: path.iter().map(|a| a.to_string()).collect(),
        }]);
        self
    }
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    if let Some((p, q)) = t.split_once('/') {
        let p = num_bigint::BigInt::from_str(p.trim()).map_err(|e| Error::Parse(format!("`{s}`: {e}")))?;
        let q = num_bigint::BigInt::from_str(q.trim()).map_err(|e| Error::Parse(format!("`{s}`: {e}")))?;
        if q.is_zero() {
            return Err(Error::Parse(format!("`{s}`: zero denominator")));
        }
        Ok(Rational::new(p, q))
    } else {
        num_bigint::BigInt::from_str(t)
            .map(Rational::from_integer)
            .map_err(|e| Error::Parse(format!("`{s}`: {e}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

/// Linear combination of parallel paths of one common length.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Relation {
    pub terms: Vec<(Rational, Vec<usize>)>,
    pub source: usize,
    pub target: usize,
}

impl Relation {
    pub fn len(&self) -> usize {
        self.terms[0].1.len()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }
}

/// A path whose class is a member of the canonical basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BasisPath {
    pub start: usize,
    pub end: usize,
    pub arrows: Vec<usize>,
}

impl BasisPath {
    pub fn len(&self) -> usize {
        self.arrows.len()
    }
}

#[derive(Clone, Debug)]
struct Level {
    basis: Vec<BasisPath>,
    /// `(basis index one degree down, arrow)` to its normal form in this level.
    reduce: HashMap<(usize, usize), Vec<(usize, Rational)>>,
}

#[derive(Clone, Debug)]
struct PathTable {
    levels: Vec<Level>,
}

/// A validated finite-dimensional algebra `KQ/I`.
#[derive(Debug)]
pub struct Algebra {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    relations: Vec<Relation>,
    budget: usize,
    tables: Vec<PathTable>,
}

impl PartialEq for Algebra {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self, other)
            || (self.vertices == other.vertices
                && self.arrows == other.arrows
                && self.relations == other.relations)
    }
}

impl Algebra {
    pub fn load(spec: &AlgebraSpec) -> Result<Arc<Algebra>> {
        let mut seen = BTreeSet::new();
        for v in &spec.vertices {
            if !seen.insert(v.as_str()) {
                return Err(Error::DuplicateLabel(v.clone()));
            }
        }
        let vertex = |name: &str| {
            spec.vertices
                .iter()
                .position(|v| v == name)
                .ok_or_else(|| Error::UnknownVertex(name.to_string()))
        };
        let mut arrows = Vec::with_capacity(spec.arrows.len());
        let mut arrow_names = BTreeSet::new();
        for a in &spec.arrows {
            if !arrow_names.insert(a.name.as_str()) || seen.contains(a.name.as_str()) {
                return Err(Error::DuplicateLabel(a.name.clone()));
            }
            arrows.push(Arrow {
                name: a.name.clone(),
                source: vertex(&a.from)?,
                target: vertex(&a.to)?,
            });
        }
        let arrow_index = |name: &str| {
            arrows
                .iter()
                .position(|a| a.name == name)
                .ok_or_else(|| Error::UnknownArrow(name.to_string()))
        };
        let mut relations = Vec::new();
        for (index, rel) in spec.relations.iter().enumerate() {
            let mut terms = Vec::new();
            let mut ends: Option<(usize, usize)> = None;
            let mut length: Option<usize> = None;
            for t in rel {
                let path = t
                    .path
                    .iter()
                    .map(|n| arrow_index(n))
                    .collect::<Result<Vec<_>>>()?;
                if path.len() < 2 {
                    return Err(Error::NotAdmissible(format!(
                        "relation {index} contains a path of length {}",
                        path.len()
                    )));
                }
                for w in path.windows(2) {
                    if arrows[w[0]].target != arrows[w[1]].source {
                        return Err(Error::NonParallelRelation {
                            index,
                            reason: format!(
                                "`{}` then `{}` is not a path",
                                arrows[w[0]].name, arrows[w[1]].name
                            ),
                        });
                    }
                }
                let e = (arrows[path[0]].source, arrows[*path.last().unwrap()].target);
                match ends {
                    None => ends = Some(e),
                    Some(prev) if prev != e => {
                        return Err(Error::NonParallelRelation {
                            index,
                            reason: "terms have different endpoints".into(),
                        })
                    }
                    _ => {}
                }
                match length {
                    None => length = Some(path.len()),
                    Some(l) if l != path.len() => return Err(Error::NonHomogeneousRelation(index)),
                    _ => {}
                }
                let c = parse_rational(&t.coeff)?;
                if c.is_zero() {
                    continue;
                }
                // Merge repeated paths.
                if let Some(slot) = terms.iter_mut().find(|(_, p): &&mut (Rational, Vec<usize>)| *p == path) {
                    slot.0 += c;
                } else {
                    terms.push((c, path));
                }
            }
            terms.retain(|(c, _)| !c.is_zero());
            if terms.is_empty() {
                continue;
            }
            terms.sort_by(|a, b| a.1.cmp(&b.1));
            let (source, target) = ends.unwrap();
            relations.push(Relation {
                terms,
                source,
                target,
            });
        }
        let budget = spec.budget.unwrap_or(DEFAULT_BUDGET);
        let mut alg = Algebra {
            vertices: spec.vertices.clone(),
            arrows,
            relations,
            budget,
            tables: Vec::new(),
        };
        let tables = (0..alg.vertices.len())
            .map(|i| alg.build_table(i))
            .collect::<Result<Vec<_>>>()?;
        alg.tables = tables;
        Ok(Arc::new(alg))
    }

    pub fn from_json(text: &str) -> Result<Arc<Algebra>> {
        Self::load(&AlgebraSpec::from_json(text)?)
    }

    pub fn to_spec(&self) -> AlgebraSpec {
        AlgebraSpec {
            vertices: self.vertices.clone(),
            arrows: self
                .arrows
                .iter()
                .map(|a| ArrowSpec {
                    name: a.name.clone(),
                    from: self.vertices[a.source].clone(),
                    to: self.vertices[a.target].clone(),
                })
                .collect(),
            relations: self
                .relations
                .iter()
                .map(|r| {
                    r.terms
                        .iter()
                        .map(|(c, p)| TermSpec {
                            coeff: c.to_string(),
                            path: p.iter().map(|&a| self.arrows[a].name.clone()).collect(),
                        })
                        .collect()
                })
                .collect(),
            budget: (self.budget != DEFAULT_BUDGET).then_some(self.budget),
        }
    }

    fn build_table(&self, start: usize) -> Result<PathTable> {
        let mut levels = vec![Level {
            basis: vec![BasisPath {
                start,
                end: start,
                arrows: Vec::new(),
            }],
            reduce: HashMap::new(),
        }];
        loop {
            let d = levels.len() - 1;
            let prev = &levels[d].basis;
            // Spanning set of degree d + 1.
            let mut w: Vec<(usize, usize)> = Vec::new();
            for (k, b) in prev.iter().enumerate() {
                for (a, arrow) in self.arrows.iter().enumerate() {
                    if arrow.source == b.end {
                        w.push((k, a));
                    }
                }
            }
            if w.is_empty() {
                break;
            }
            let col = |key: (usize, usize)| w.binary_search(&key).expect("spanning pair");
            let mut rows: Vec<Vec<Rational>> = Vec::new();
            for rel in &self.relations {
                let l = rel.len();
                if l > d + 1 {
                    continue;
                }
                for b in levels[d + 1 - l].basis.iter().filter(|b| b.end == rel.source) {
                    let mut row = vec![Rational::zero(); w.len()];
                    for (c, p) in &rel.terms {
                        let mut prefix = b.arrows.clone();
                        prefix.extend_from_slice(&p[..l - 1]);
                        let last = p[l - 1];
                        for (k, x) in normal_form_in(&levels, start, &self.arrows, &prefix) {
                            row[col((k, last))] += c * x;
                        }
                    }
                    if row.iter().any(|x| !x.is_zero()) {
                        rows.push(row);
                    }
                }
            }
            let (r, pivots) = QMatrix::from_rows(rows, w.len()).rref();
            let mut new_index = vec![usize::MAX; w.len()];
            let mut basis = Vec::new();
            for (j, &(k, a)) in w.iter().enumerate() {
                if !pivots.contains(&j) {
                    new_index[j] = basis.len();
                    let mut arrows = prev[k].arrows.clone();
                    arrows.push(a);
                    basis.push(BasisPath {
                        start,
                        end: self.arrows[a].target,
                        arrows,
                    });
                }
            }
            let mut reduce = HashMap::new();
            for (j, &key) in w.iter().enumerate() {
                let nf = if let Some(row) = pivots.iter().position(|&p| p == j) {
                    (0..w.len())
                        .filter(|&c| new_index[c] != usize::MAX && !r[(row, c)].is_zero())
                        .map(|c| (new_index[c], -r[(row, c)].clone()))
                        .collect()
                } else {
                    vec![(new_index[j], Rational::one())]
                };
                reduce.insert(key, nf);
            }
            if basis.is_empty() {
                break;
            }
            if d + 1 >= self.budget {
                return Err(Error::NotAdmissible(format!(
                    "a path of length {} from `{}` survives the relations (budget {})",
                    d + 1,
                    self.vertices[start],
                    self.budget
                )));
            }
            levels.push(Level { basis, reduce });
        }
        Ok(PathTable { levels })
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn budget(&self) -> usize {
        self.budget
    }

    pub fn vertex_index(&self, label: &str) -> Result<usize> {
        self.vertices
            .iter()
            .position(|v| v == label)
            .ok_or_else(|| Error::UnknownVertex(label.to_string()))
    }

    pub fn arrow_index(&self, name: &str) -> Result<usize> {
        self.arrows
            .iter()
            .position(|a| a.name == name)
            .ok_or_else(|| Error::UnknownArrow(name.to_string()))
    }

    /// Canonical basis of paths `i → j` modulo the relations, ordered by length.
    pub fn path_basis(&self, i: usize, j: usize) -> Vec<BasisPath> {
        self.tables[i]
            .levels
            .iter()
            .flat_map(|l| l.basis.iter().filter(|b| b.end == j).cloned())
            .collect()
    }

    /// All basis paths starting at `i`, as `(degree, index within degree)`.
    pub(crate) fn basis_from(&self, i: usize) -> Vec<(usize, usize, &BasisPath)> {
        self.tables[i]
            .levels
            .iter()
            .enumerate()
            .flat_map(|(d, l)| l.basis.iter().enumerate().map(move |(k, b)| (d, k, b)))
            .collect()
    }

    /// Normal form of `(basis path at degree d, index k) · arrow` at degree `d + 1`.
    pub(crate) fn extend_basis_path(
        &self,
        start: usize,
        degree: usize,
        index: usize,
        arrow: usize,
    ) -> Vec<(usize, Rational)> {
        match self.tables[start].levels.get(degree + 1) {
            None => Vec::new(),
            Some(level) => level.reduce.get(&(index, arrow)).cloned().unwrap_or_default(),
        }
    }

    /// Normal form of an arbitrary composable path starting at `start`, as
    /// coefficients on the basis paths of the same degree.
    pub fn normal_form(&self, start: usize, path: &[usize]) -> Vec<(BasisPath, Rational)> {
        let levels = &self.tables[start].levels;
        if path.len() >= levels.len() {
            return Vec::new();
        }
        normal_form_in(levels, start, &self.arrows, path)
            .into_iter()
            .map(|(k, c)| (levels[path.len()].basis[k].clone(), c))
            .collect()
    }

    pub fn dimension(&self) -> usize {
        self.tables
            .iter()
            .map(|t| t.levels.iter().map(|l| l.basis.len()).sum::<usize>())
            .sum()
    }

    /// Longest surviving path length from `i` plus one.
    pub fn loewy_length_from(&self, i: usize) -> usize {
        self.tables[i].levels.len()
    }

    /// Linear or cyclic quiver (each vertex has at most one incoming and one
    /// outgoing arrow, connected) with monomial relations.
    pub fn nakayama_check(&self) -> Result<()> {
        let n = self.vertices.len();
        let mut indeg = vec![0usize; n];
        let mut outdeg = vec![0usize; n];
        for a in &self.arrows {
            outdeg[a.source] += 1;
            indeg[a.target] += 1;
        }
        if let Some(v) = (0..n).find(|&v| indeg[v] > 1 || outdeg[v] > 1) {
            return Err(Error::NotNakayama(format!(
                "vertex `{}` has more than one arrow in or out",
                self.vertices[v]
            )));
        }
        if !self.is_connected() {
            return Err(Error::NotNakayama("quiver is not connected".into()));
        }
        if self.relations.iter().any(|r| !r.is_monomial()) {
            return Err(Error::NotNakayama("relations are not monomial".into()));
        }
        Ok(())
    }

    pub fn is_nakayama(&self) -> bool {
        self.nakayama_check().is_ok()
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertices.len();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for a in &self.arrows {
                for (x, y) in [(a.source, a.target), (a.target, a.source)] {
                    if x == v && !seen[y] {
                        seen[y] = true;
                        stack.push(y);
                    }
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    pub fn path_label(&self, path: &BasisPath) -> String {
        if path.arrows.is_empty() {
            format!("e{}", self.vertices[path.start])
        } else {
            path.arrows
                .iter()
                .map(|&a| self.arrows[a].name.as_str())
                .collect::<Vec<_>>()
                .join("")
        }
    }
}

fn normal_form_in(
    levels: &[Level],
    start: usize,
    arrows: &[Arrow],
    path: &[usize],
) -> Vec<(usize, Rational)> {
    let mut cur: Vec<(usize, Rational)> = vec![(0, Rational::one())];
    let mut end = start;
    for (d, &a) in path.iter().enumerate() {
        debug_assert_eq!(arrows[a].source, end, "path is not composable");
        end = arrows[a].target;
        let Some(level) = levels.get(d + 1) else {
            return Vec::new();
        };
        let mut next: Vec<(usize, Rational)> = Vec::new();
        for (k, c) in &cur {
            if let Some(nf) = level.reduce.get(&(*k, a)) {
                for (j, x) in nf {
                    match next.iter_mut().find(|(i, _)| i == j) {
                        Some(slot) => slot.1 += c * x,
                        None => next.push((*j, c * x)),
                    }
                }
            }
        }
        next.retain(|(_, c)| !c.is_zero());
        next.sort_by_key(|(j, _)| *j);
        if next.is_empty() {
            return next;
        }
        cur = next;
    }
    cur
}
