//! Modules as quiver representations over the rationals.
//!
//! An arrow `a: i → j` acts by a `dim(j) × dim(i)` matrix; a path acts by the
//! product of its arrow matrices in composition order, so the path
//! `[a, b]` acts by `M_b · M_a`.

mod endo;
mod hom;

use std::collections::BTreeMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{parse_rational, Algebra};
use crate::error::{Error, Result};
use crate::{QMatrix, Rational};

pub use endo::{
    decompose, decompose_grouped, end_radical, is_brick, is_isomorphic, lift_idempotent,
    splitting_idempotent, EndRadical,
};
pub use hom::{hom_basis, hom_dim, is_short_exact};
pub(crate) use endo::indecomposables_isomorphic;
pub(crate) use hom::{factor_through_cokernel, submodule_inclusion};

struct RepData {
    algebra: Arc<Algebra>,
    dims: Vec<usize>,
    mats: Vec<QMatrix>,
}

/// A finite-dimensional right module, immutable and cheap to clone.
#[derive(Clone)]
pub struct Representation {
    inner: Arc<RepData>,
}

impl PartialEq for Representation {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.dims == other.inner.dims && self.inner.mats == other.inner.mats)
    }
}

impl Eq for Representation {}

impl Hash for Representation {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.inner.dims.hash(state);
        self.inner.mats.hash(state);
    }
}

impl fmt::Debug for Representation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Rep[{} dims={:?}", self.name(), self.inner.dims)?;
        for (a, m) in self.inner.algebra.arrows().iter().zip(&self.inner.mats) {
            if !m.is_zero() {
                write!(f, " {}={:?}", a.name, m)?;
            }
        }
        write!(f, "]")
    }
}

impl Representation {
    /// Validates matrix shapes and that every relation acts by zero.
    pub fn new(algebra: Arc<Algebra>, dims: Vec<usize>, mats: Vec<QMatrix>) -> Result<Self> {
        let rep = Self::new_unchecked(algebra, dims, mats)?;
        rep.check_relations()?;
        Ok(rep)
    }

    /// Shape checks only; relations are assumed.
    pub(crate) fn new_unchecked(
        algebra: Arc<Algebra>,
        dims: Vec<usize>,
        mats: Vec<QMatrix>,
    ) -> Result<Self> {
        if dims.len() != algebra.num_vertices() {
            return Err(Error::InvalidModule(format!(
                "{} dimensions for {} vertices",
                dims.len(),
                algebra.num_vertices()
            )));
        }
        if mats.len() != algebra.arrows().len() {
            return Err(Error::InvalidModule(format!(
                "{} matrices for {} arrows",
                mats.len(),
                algebra.arrows().len()
            )));
        }
        for (a, m) in algebra.arrows().iter().zip(&mats) {
            if m.shape() != (dims[a.target], dims[a.source]) {
                return Err(Error::InvalidModule(format!(
                    "arrow `{}` has shape {:?}, expected {:?}",
                    a.name,
                    m.shape(),
                    (dims[a.target], dims[a.source])
                )));
            }
        }
        Ok(Representation {
            inner: Arc::new(RepData {
                algebra,
                dims,
                mats,
            }),
        })
    }

    pub fn check_relations(&self) -> Result<()> {
        let alg = &self.inner.algebra;
        for (k, rel) in alg.relations().iter().enumerate() {
            let mut acc = QMatrix::zeros(self.dim(rel.target), self.dim(rel.source));
            for (c, path) in &rel.terms {
                acc = &acc + &self.eval_path(path).scale(c);
            }
            if !acc.is_zero() {
                return Err(Error::InvalidModule(format!("relation {k} does not act by zero")));
            }
        }
        Ok(())
    }

    pub fn zero(algebra: &Arc<Algebra>) -> Self {
        let dims = vec![0; algebra.num_vertices()];
        Self::with_zero_arrows(algebra, dims)
    }

    fn with_zero_arrows(algebra: &Arc<Algebra>, dims: Vec<usize>) -> Self {
        let mats = algebra
            .arrows()
            .iter()
            .map(|a| QMatrix::zeros(dims[a.target], dims[a.source]))
            .collect();
        Self::new_unchecked(algebra.clone(), dims, mats).expect("shapes agree")
    }

    /// The one-dimensional simple module at vertex `i`.
    pub fn simple(algebra: &Arc<Algebra>, i: usize) -> Self {
        let mut dims = vec![0; algebra.num_vertices()];
        dims[i] = 1;
        Self::with_zero_arrows(algebra, dims)
    }

    /// Semisimple module with the given dimension vector.
    pub fn semisimple(algebra: &Arc<Algebra>, dims: Vec<usize>) -> Self {
        Self::with_zero_arrows(algebra, dims)
    }

    /// The indecomposable projective `e_i A`: at vertex `j` its basis is the
    /// canonical path basis `i → j`, and arrows act by post-composition.
    pub fn projective(algebra: &Arc<Algebra>, i: usize) -> Self {
        let n = algebra.num_vertices();
        let paths = algebra.basis_from(i);
        let mut dims = vec![0; n];
        // (degree, index) -> local index at its end vertex
        let mut local: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for (d, k, b) in &paths {
            local.insert((*d, *k), dims[b.end]);
            dims[b.end] += 1;
        }
        let mut mats: Vec<QMatrix> = algebra
            .arrows()
            .iter()
            .map(|a| QMatrix::zeros(dims[a.target], dims[a.source]))
            .collect();
        for (d, k, b) in &paths {
            for (ai, a) in algebra.arrows().iter().enumerate() {
                if a.source != b.end {
                    continue;
                }
                let col = local[&(*d, *k)];
                for (j, c) in algebra.extend_basis_path(i, *d, *k, ai) {
                    let row = local[&(d + 1, j)];
                    mats[ai][(row, col)] = c;
                }
            }
        }
        Self::new_unchecked(algebra.clone(), dims, mats).expect("projective shapes")
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.inner.algebra
    }

    pub fn dims(&self) -> &[usize] {
        &self.inner.dims
    }

    pub fn dim(&self, v: usize) -> usize {
        self.inner.dims[v]
    }

    pub fn total_dim(&self) -> usize {
        self.inner.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    pub fn mats(&self) -> &[QMatrix] {
        &self.inner.mats
    }

    pub fn arrow_mat(&self, a: usize) -> &QMatrix {
        &self.inner.mats[a]
    }

    pub(crate) fn same_algebra(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(self.algebra(), other.algebra()) || **self.algebra() == **other.algebra() {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch)
        }
    }

    /// Action of a path (arrow indices, composition order) from its source space
    /// to its target space.
    pub fn eval_path(&self, path: &[usize]) -> QMatrix {
        let arrows = self.algebra().arrows();
        let start = arrows[path[0]].source;
        path.iter().fold(QMatrix::identity(self.dim(start)), |acc, &a| {
            self.inner.mats[a].matmul(&acc)
        })
    }

    /// Direct sum with canonical inclusions and projections.
    pub fn direct_sum(parts: &[Representation], algebra: &Arc<Algebra>) -> DirectSum {
        let n = algebra.num_vertices();
        let mut dims = vec![0; n];
        for p in parts {
            for v in 0..n {
                dims[v] += p.dim(v);
            }
        }
        let mats = (0..algebra.arrows().len())
            .map(|a| QMatrix::block_diag(&parts.iter().map(|p| p.arrow_mat(a).clone()).collect::<Vec<_>>()))
            .collect();
        let module = Self::new_unchecked(algebra.clone(), dims.clone(), mats).expect("sum shapes");
        let mut offsets = vec![0; n];
        let mut inclusions = Vec::new();
        let mut projections = Vec::new();
        for p in parts {
            let inc: Vec<QMatrix> = (0..n)
                .map(|v| {
                    let mut m = QMatrix::zeros(dims[v], p.dim(v));
                    m.set_block(offsets[v], 0, &QMatrix::identity(p.dim(v)));
                    m
                })
                .collect();
            let proj: Vec<QMatrix> = inc.iter().map(|m| m.transpose()).collect();
            inclusions.push(Morphism::from_parts(p.clone(), module.clone(), inc));
            projections.push(Morphism::from_parts(module.clone(), p.clone(), proj));
            for v in 0..n {
                offsets[v] += p.dim(v);
            }
        }
        DirectSum {
            module,
            inclusions,
            projections,
        }
    }

    pub fn sum(parts: &[Representation], algebra: &Arc<Algebra>) -> Self {
        Self::direct_sum(parts, algebra).module
    }

    /// The isomorphic module obtained by the base change `x ↦ g_v x` at each vertex.
    pub fn transport(&self, change: &[QMatrix]) -> Result<Self> {
        let arrows = self.algebra().arrows();
        let mut mats = Vec::with_capacity(arrows.len());
        for (a, m) in arrows.iter().zip(self.mats()) {
            let inv = change[a.source]
                .inverse()
                .ok_or_else(|| Error::InvalidMorphism("base change is not invertible".into()))?;
            mats.push(change[a.target].matmul(m).matmul(&inv));
        }
        Self::new_unchecked(self.algebra().clone(), self.dims().to_vec(), mats)
    }

    /// Per-vertex subspaces (as column bases) of the radical series
    /// `X ⊇ rad X ⊇ rad² X ⊇ …`, ending with the zero submodule.
    pub fn radical_series(&self) -> Vec<Vec<QMatrix>> {
        let alg = self.algebra();
        let n = alg.num_vertices();
        let mut layers = vec![(0..n).map(|v| QMatrix::identity(self.dim(v))).collect::<Vec<_>>()];
        loop {
            let cur = layers.last().unwrap();
            if cur.iter().all(|b| b.cols() == 0) {
                break;
            }
            let next: Vec<QMatrix> = (0..n)
                .map(|v| {
                    let mut span = QMatrix::zeros(self.dim(v), 0);
                    for (ai, a) in alg.arrows().iter().enumerate() {
                        if a.target == v {
                            span = span.hstack(&self.arrow_mat(ai).matmul(&cur[a.source]));
                        }
                    }
                    span.column_space()
                })
                .collect();
            layers.push(next);
        }
        layers
    }

    /// Dimension vectors of `rad^k X / rad^{k+1} X`.
    pub fn radical_layers(&self) -> Vec<Vec<usize>> {
        let series = self.radical_series();
        series
            .windows(2)
            .map(|w| w[0].iter().zip(&w[1]).map(|(a, b)| a.cols() - b.cols()).collect())
            .collect()
    }

    /// Dimension vector of `top X = X / rad X`.
    pub fn top_dims(&self) -> Vec<usize> {
        self.radical_layers()
            .into_iter()
            .next()
            .unwrap_or_else(|| vec![0; self.algebra().num_vertices()])
    }

    pub fn is_uniserial(&self) -> bool {
        self.radical_layers().iter().all(|l| l.iter().sum::<usize>() == 1)
    }

    /// Stacked composition-factor name for uniserial modules (`"4/2/3"`),
    /// `"0"` for the zero module, and the dimension vector otherwise.
    pub fn name(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let labels = self.algebra().vertices();
        let layers = self.radical_layers();
        if layers.iter().all(|l| l.iter().sum::<usize>() == 1) {
            layers
                .iter()
                .map(|l| labels[l.iter().position(|&d| d == 1).unwrap()].clone())
                .collect::<Vec<_>>()
                .join("/")
        } else {
            let dv: Vec<String> = self.dims().iter().map(|d| d.to_string()).collect();
            format!("({})", dv.join(","))
        }
    }

    /// Bytes that order modules with equal dimension vectors canonically.
    pub fn canonical_key(&self) -> String {
        self.mats()
            .iter()
            .map(|m| {
                m.entries()
                    .iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect::<Vec<_>>()
            .join(";")
    }

    pub fn from_literal(algebra: &Arc<Algebra>, lit: &ModuleLiteral) -> Result<Self> {
        let n = algebra.num_vertices();
        let mut dims = vec![0; n];
        for (v, d) in &lit.dims {
            dims[algebra.vertex_index(v)?] = *d;
        }
        let mut mats: Vec<QMatrix> = algebra
            .arrows()
            .iter()
            .map(|a| QMatrix::zeros(dims[a.target], dims[a.source]))
            .collect();
        for (name, rows) in &lit.arrows {
            let ai = algebra.arrow_index(name)?;
            let a = &algebra.arrows()[ai];
            let (r, c) = (dims[a.target], dims[a.source]);
            if r * c == 0 && rows.iter().all(|row| row.is_empty()) {
                continue;
            }
            if rows.len() != r || rows.iter().any(|row| row.len() != c) {
                return Err(Error::InvalidModule(format!(
                    "arrow `{name}` needs a {r}x{c} matrix"
                )));
            }
            let entries = rows
                .iter()
                .flatten()
                .map(|s| parse_rational(s))
                .collect::<Result<Vec<_>>>()?;
            mats[ai] = QMatrix::from_vec(r, c, entries);
        }
        Self::new(algebra.clone(), dims, mats)
    }

    pub fn to_literal(&self) -> ModuleLiteral {
        let alg = self.algebra();
        ModuleLiteral {
            dims: alg
                .vertices()
                .iter()
                .zip(self.dims())
                .filter(|(_, d)| **d > 0)
                .map(|(v, d)| (v.clone(), *d))
                .collect(),
            arrows: alg
                .arrows()
                .iter()
                .zip(self.mats())
                .filter(|(_, m)| m.rows() * m.cols() > 0)
                .map(|(a, m)| {
                    let rows = (0..m.rows())
                        .map(|i| m.row(i).iter().map(|x| x.to_string()).collect())
                        .collect();
                    (a.name.clone(), rows)
                })
                .collect(),
        }
    }
}

/// On-disk module document: dimensions per vertex label and a matrix of
/// rational strings per arrow name. Omitted entries are zero.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleLiteral {
    #[serde(default)]
    pub dims: BTreeMap<String, usize>,
    #[serde(default)]
    pub arrows: BTreeMap<String, Vec<Vec<String>>>,
}

impl ModuleLiteral {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("module literal serializes")
    }
}

pub struct DirectSum {
    pub module: Representation,
    pub inclusions: Vec<Morphism>,
    pub projections: Vec<Morphism>,
}

/// A module homomorphism given by one matrix per vertex.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Morphism {
    source: Representation,
    target: Representation,
    maps: Vec<QMatrix>,
}

impl fmt::Debug for Morphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Morphism[{} -> {}: {:?}]", self.source.name(), self.target.name(), self.maps)
    }
}

impl Morphism {
    /// Checks shapes and every commuting square `Y_a φ_i = φ_j X_a`.
    pub fn new(source: Representation, target: Representation, maps: Vec<QMatrix>) -> Result<Self> {
        source.same_algebra(&target)?;
        let alg = source.algebra().clone();
        if maps.len() != alg.num_vertices() {
            return Err(Error::InvalidMorphism("wrong number of vertex maps".into()));
        }
        for (v, m) in maps.iter().enumerate() {
            if m.shape() != (target.dim(v), source.dim(v)) {
                return Err(Error::InvalidMorphism(format!(
                    "map at vertex `{}` has shape {:?}",
                    alg.vertices()[v],
                    m.shape()
                )));
            }
        }
        for (ai, a) in alg.arrows().iter().enumerate() {
            let lhs = target.arrow_mat(ai).matmul(&maps[a.source]);
            let rhs = maps[a.target].matmul(source.arrow_mat(ai));
            if lhs != rhs {
                return Err(Error::InvalidMorphism(format!(
                    "square at arrow `{}` does not commute",
                    a.name
                )));
            }
        }
        Ok(Morphism {
            source,
            target,
            maps,
        })
    }

    pub(crate) fn from_parts(source: Representation, target: Representation, maps: Vec<QMatrix>) -> Self {
        debug_assert!(Morphism::new(source.clone(), target.clone(), maps.clone()).is_ok());
        Morphism {
            source,
            target,
            maps,
        }
    }

    pub fn zero(source: &Representation, target: &Representation) -> Self {
        let maps = (0..source.dims().len())
            .map(|v| QMatrix::zeros(target.dim(v), source.dim(v)))
            .collect();
        Morphism {
            source: source.clone(),
            target: target.clone(),
            maps,
        }
    }

    pub fn identity(x: &Representation) -> Self {
        let maps = x.dims().iter().map(|&d| QMatrix::identity(d)).collect();
        Morphism {
            source: x.clone(),
            target: x.clone(),
            maps,
        }
    }

    pub fn source(&self) -> &Representation {
        &self.source
    }

    pub fn target(&self) -> &Representation {
        &self.target
    }

    pub fn maps(&self) -> &[QMatrix] {
        &self.maps
    }

    pub fn map_at(&self, v: usize) -> &QMatrix {
        &self.maps[v]
    }

    /// `next ∘ self`
    pub fn then(&self, next: &Morphism) -> Morphism {
        assert_eq!(self.target.dims(), next.source.dims(), "morphisms are not composable");
        let maps = self
            .maps
            .iter()
            .zip(&next.maps)
            .map(|(f, g)| g.matmul(f))
            .collect();
        Morphism {
            source: self.source.clone(),
            target: next.target.clone(),
            maps,
        }
    }

    pub fn add(&self, other: &Morphism) -> Morphism {
        let maps = self.maps.iter().zip(&other.maps).map(|(a, b)| a + b).collect();
        Morphism {
            source: self.source.clone(),
            target: self.target.clone(),
            maps,
        }
    }

    pub fn scale(&self, c: &Rational) -> Morphism {
        Morphism {
            source: self.source.clone(),
            target: self.target.clone(),
            maps: self.maps.iter().map(|m| m.scale(c)).collect(),
        }
    }

    /// `Σ coeffs[k] · basis[k]`; the zero map when the basis is empty.
    pub fn combination(
        source: &Representation,
        target: &Representation,
        basis: &[Morphism],
        coeffs: &[Rational],
    ) -> Morphism {
        let mut acc = Morphism::zero(source, target);
        for (b, c) in basis.iter().zip(coeffs) {
            if !c.is_zero() {
                acc = acc.add(&if c.is_one() { b.clone() } else { b.scale(c) });
            }
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.maps.iter().all(|m| m.is_zero())
    }

    pub fn is_injective(&self) -> bool {
        self.maps.iter().all(|m| m.rank() == m.cols())
    }

    pub fn is_surjective(&self) -> bool {
        self.maps.iter().all(|m| m.rank() == m.rows())
    }

    pub fn is_isomorphism(&self) -> bool {
        self.maps.iter().all(|m| m.is_invertible())
    }

    /// Block-diagonal matrix acting on the total space.
    pub fn total_matrix(&self) -> QMatrix {
        QMatrix::block_diag(&self.maps)
    }

    /// The inclusion of the kernel.
    pub fn kernel(&self) -> (Representation, Morphism) {
        hom::kernel(self)
    }

    /// The inclusion of the image.
    pub fn image(&self) -> (Representation, Morphism) {
        hom::image(self)
    }

    /// The projection onto the cokernel.
    pub fn cokernel(&self) -> (Representation, Morphism) {
        hom::cokernel(self)
    }
}

#[cfg(test)]
mod tests;
