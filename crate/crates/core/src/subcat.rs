//! Additive subcategories as sets of census ids, their closure properties and
//! the enumeration of ICE-closed subcategories.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use itertools::Itertools;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::census::Census;
use crate::error::{Error, Result};
use crate::grid::Grid;
use crate::homext::{middle_term, simple_quotient_steps, ExtSpace};
use crate::rep::{hom_basis, is_isomorphic, Morphism, Representation};

/// A set of census ids, at most 128 of them.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IdSet(u128);

impl IdSet {
    pub const EMPTY: IdSet = IdSet(0);

    pub fn all(n: usize) -> IdSet {
        if n == 128 {
            IdSet(u128::MAX)
        } else {
            IdSet((1u128 << n) - 1)
        }
    }

    pub fn from_bits(bits: u128) -> IdSet {
        IdSet(bits)
    }

    pub fn bits(self) -> u128 {
        self.0
    }

    pub fn singleton(id: usize) -> IdSet {
        IdSet(1u128 << id)
    }

    pub fn contains(self, id: usize) -> bool {
        id < 128 && self.0 >> id & 1 == 1
    }

    pub fn insert(&mut self, id: usize) {
        self.0 |= 1u128 << id;
    }

    pub fn with(self, id: usize) -> IdSet {
        IdSet(self.0 | 1u128 << id)
    }

    pub fn union(self, other: IdSet) -> IdSet {
        IdSet(self.0 | other.0)
    }

    pub fn is_subset(self, other: IdSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..128).filter(move |&i| self.contains(i))
    }

    pub fn ids(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Size first, then the sorted id list.
    pub fn canonical_cmp(&self, other: &IdSet) -> std::cmp::Ordering {
        self.len().cmp(&other.len()).then_with(|| self.ids().cmp(&other.ids()))
    }
}

impl FromIterator<usize> for IdSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = IdSet::EMPTY;
        for i in iter {
            s.insert(i);
        }
        s
    }
}

impl fmt::Debug for IdSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl Serialize for IdSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

pub(crate) fn check_size(census: &Census) -> Result<()> {
    if census.len() > 128 {
        Err(Error::CensusTooLarge(census.len()))
    } else {
        Ok(())
    }
}

/// Member names, `"0"` for the empty set.
pub fn member_names(census: &Census, ids: IdSet) -> Vec<String> {
    if ids.is_empty() {
        vec!["0".into()]
    } else {
        ids.iter().map(|i| census.name(i)).collect()
    }
}

/// `add{2/3, 2}`, or `add{0}` for the zero subcategory.
pub fn format_add(census: &Census, ids: IdSet) -> String {
    format!("add{{{}}}", member_names(census, ids).join(", "))
}

/// Parses member names (as printed by the census) into ids; `"0"` is ignored.
pub fn parse_names(census: &Census, names: &[&str]) -> Result<IdSet> {
    let mut s = IdSet::EMPTY;
    for n in names.iter().filter(|n| **n != "0") {
        let id = census
            .id_by_name(n)
            .ok_or_else(|| Error::Parse(format!("no unique census member named `{n}`")))?;
        s.insert(id);
    }
    Ok(s)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ClosureFlags {
    pub images: bool,
    pub cokernels: bool,
    pub kernels: bool,
    pub extensions: bool,
    pub quotients: bool,
}

/// How morphisms and extensions are sampled when deriving closure rules.
#[derive(Clone, Copy, Debug)]
pub struct Sampling {
    /// Largest number of indecomposable summands on either side.
    pub max_summands: usize,
    pub grid: Grid,
}

impl Default for Sampling {
    fn default() -> Self {
        Sampling {
            max_summands: 2,
            grid: Grid::default(),
        }
    }
}

/// Implications `premise ⊆ C ⇒ conclusion ⊆ C`, merged per premise.
#[derive(Clone, Debug, Default)]
struct Rules(Vec<(IdSet, IdSet)>);

impl Rules {
    fn from_pairs(pairs: impl IntoIterator<Item = (IdSet, IdSet)>) -> Rules {
        let mut merged: BTreeMap<IdSet, IdSet> = BTreeMap::new();
        for (p, c) in pairs {
            if c.is_subset(p) {
                continue;
            }
            let e = merged.entry(p).or_default();
            *e = e.union(c);
        }
        Rules(merged.into_iter().collect())
    }

    fn holds(&self, c: IdSet) -> bool {
        self.0
            .iter()
            .all(|&(p, concl)| !p.is_subset(c) || concl.is_subset(c))
    }

    /// One round of forward chaining.
    fn apply(&self, c: IdSet) -> IdSet {
        self.0
            .iter()
            .filter(|(p, _)| p.is_subset(c))
            .fold(c, |acc, (_, concl)| acc.union(*concl))
    }
}

#[derive(Clone, Copy, Default)]
struct Outcome {
    image: IdSet,
    kernel: IdSet,
    cokernel: IdSet,
}

/// Closure rules of a complete census, derived once by sampling.
#[derive(Clone, Debug)]
pub struct Closures {
    census: Arc<Census>,
    homs: HashMap<(usize, usize), Vec<Morphism>>,
    exts: HashMap<(usize, usize), usize>,
    images: Rules,
    kernels: Rules,
    cokernels: Rules,
    extensions: Rules,
    quotients: Rules,
}

fn summands(census: &Census, x: &Representation) -> Result<IdSet> {
    Ok(census.summand_ids(x)?.into_iter().collect())
}

/// Multisets of at most `k` ids, sorted, nonempty.
fn small_multisets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (1..=k)
        .flat_map(|size| (0..n).combinations_with_replacement(size))
        .collect()
}

impl Closures {
    pub fn new(census: Arc<Census>, sampling: Sampling) -> Result<Self> {
        census.require_complete()?;
        check_size(&census)?;
        let n = census.len();
        let multis = small_multisets(n, sampling.max_summands);

        let homs: HashMap<(usize, usize), Vec<Morphism>> = (0..n)
            .cartesian_product(0..n)
            .collect::<Vec<_>>()
            .into_par_iter()
            .map(|(i, j)| Ok(((i, j), hom_basis(census.module(i), census.module(j))?)))
            .collect::<Result<_>>()?;
        let exts: HashMap<(usize, usize), usize> = (0..n)
            .cartesian_product(0..n)
            .collect::<Vec<_>>()
            .into_par_iter()
            .map(|(i, j)| Ok(((i, j), ExtSpace::new(census.module(i), census.module(j))?.dim())))
            .collect::<Result<_>>()?;

        let pairs: Vec<(&Vec<usize>, &Vec<usize>)> = multis.iter().cartesian_product(multis.iter()).collect();

        let morphism_rules: Vec<(IdSet, Vec<Outcome>)> = pairs
            .par_iter()
            .map(|(src, tgt)| {
                let premise: IdSet = src.iter().chain(tgt.iter()).copied().collect();
                Ok((premise, morphism_outcomes(&census, &homs, src, tgt, sampling.grid)?))
            })
            .collect::<Result<_>>()?;
        let ext_rules: Vec<(IdSet, IdSet)> = pairs
            .par_iter()
            .filter(|(y, x)| ext_can_be_nonsplit(&exts, y, x))
            .map(|(y, x)| {
                let premise: IdSet = y.iter().chain(x.iter()).copied().collect();
                let mut concl = IdSet::EMPTY;
                let space = ExtSpace::new(&census.sum_of(y), &census.sum_of(x))?;
                for coords in sampling.grid.up_to_sign(space.dim()) {
                    let e = middle_term(&space, &space.class(&coords));
                    concl = concl.union(summands(&census, &e.middle)?);
                }
                Ok((premise, concl))
            })
            .collect::<Result<_>>()?;
        let quotient_rules: Vec<(IdSet, IdSet)> = multis
            .par_iter()
            .map(|ids| {
                let premise: IdSet = ids.iter().copied().collect();
                let mut concl = IdSet::EMPTY;
                for qt in all_quotients(&census.sum_of(ids), sampling.grid)? {
                    concl = concl.union(summands(&census, &qt)?);
                }
                Ok((premise, concl))
            })
            .collect::<Result<_>>()?;

        let pick = |f: fn(&Outcome) -> IdSet| {
            Rules::from_pairs(
                morphism_rules
                    .iter()
                    .flat_map(|(p, outs)| outs.iter().map(move |o| (*p, f(o)))),
            )
        };
        Ok(Closures {
            images: pick(|o| o.image),
            kernels: pick(|o| o.kernel),
            cokernels: pick(|o| o.cokernel),
            extensions: Rules::from_pairs(ext_rules),
            quotients: Rules::from_pairs(quotient_rules),
            census,
            homs,
            exts,
        })
    }

    /// Basis of `Hom(X_i, X_j)` between census members.
    pub fn hom_basis(&self, i: usize, j: usize) -> &[Morphism] {
        &self.homs[&(i, j)]
    }

    /// `dim Ext¹(X_i, X_j)`.
    pub fn ext_dim(&self, i: usize, j: usize) -> usize {
        self.exts[&(i, j)]
    }

    /// Least superset of `seed` closed under sampled cokernels.
    pub fn cokernel_closure(&self, seed: IdSet) -> IdSet {
        fixpoint(seed, |c| self.cokernels.apply(c))
    }

    /// Least superset of `seed` closed under extensions.
    pub fn extension_closure(&self, seed: IdSet) -> IdSet {
        fixpoint(seed, |c| self.extensions.apply(c))
    }

    pub fn census(&self) -> &Arc<Census> {
        &self.census
    }

    /// Every summand of `m` lies in `c`.
    pub fn contains(&self, c: IdSet, m: &Representation) -> Result<bool> {
        Ok(summands(&self.census, m)?.is_subset(c))
    }

    pub fn closure_report(&self, c: IdSet) -> ClosureFlags {
        ClosureFlags {
            images: self.images.holds(c),
            cokernels: self.cokernels.holds(c),
            kernels: self.kernels.holds(c),
            extensions: self.extensions.holds(c),
            quotients: self.quotients.holds(c),
        }
    }

    pub fn is_ice(&self, c: IdSet) -> bool {
        self.images.holds(c) && self.cokernels.holds(c) && self.extensions.holds(c)
    }

    pub fn is_torsion_class(&self, c: IdSet) -> bool {
        self.quotients.holds(c) && self.extensions.holds(c)
    }

    pub fn is_wide(&self, c: IdSet) -> bool {
        self.kernels.holds(c) && self.cokernels.holds(c) && self.extensions.holds(c)
    }

    /// Least ICE-closed superset of `seed`.
    pub fn ice_closure(&self, seed: IdSet) -> IdSet {
        fixpoint(seed, |c| self.extensions.apply(self.cokernels.apply(self.images.apply(c))))
    }

    /// All ICE-closed subcategories, in canonical order.
    pub fn enumerate_ice(&self) -> Vec<IdSet> {
        let n = self.census.len();
        assert!(n < 64, "powerset sweep over {n} ids");
        let mut out: Vec<IdSet> = (0u64..1 << n)
            .into_par_iter()
            .map(|bits| self.ice_closure(IdSet::from_bits(bits as u128)))
            .collect();
        out.sort_by(IdSet::canonical_cmp);
        out.dedup();
        out
    }

    pub fn format(&self, c: IdSet) -> String {
        format_add(&self.census, c)
    }
}

fn fixpoint(mut c: IdSet, step: impl Fn(IdSet) -> IdSet) -> IdSet {
    loop {
        let next = step(c);
        if next == c {
            return c;
        }
        c = next;
    }
}

/// A class in `Ext¹(⊕Y, ⊕X)` can only be non-split on summands that have a
/// nonzero `Ext¹` block with the other side.
fn ext_can_be_nonsplit(exts: &HashMap<(usize, usize), usize>, y: &[usize], x: &[usize]) -> bool {
    y.iter().all(|&a| x.iter().any(|&b| exts[&(a, b)] > 0))
        && x.iter().all(|&b| y.iter().any(|&a| exts[&(a, b)] > 0))
}

/// Images, kernels and cokernels of grid morphisms `⊕src → ⊕tgt` whose block
/// components are all nonzero. Maps with a zero block reduce to smaller sums.
fn morphism_outcomes(
    census: &Census,
    homs: &HashMap<(usize, usize), Vec<Morphism>>,
    src: &[usize],
    tgt: &[usize],
    grid: Grid,
) -> Result<Vec<Outcome>> {
    let blocks: Vec<(usize, usize)> = (0..src.len()).cartesian_product(0..tgt.len()).collect();
    if blocks.iter().any(|&(a, b)| homs[&(src[a], tgt[b])].is_empty()) {
        return Ok(Vec::new());
    }
    let alg = census.algebra();
    let xs: Vec<Representation> = src.iter().map(|&i| census.module(i).clone()).collect();
    let ys: Vec<Representation> = tgt.iter().map(|&i| census.module(i).clone()).collect();
    let xsum = Representation::direct_sum(&xs, alg);
    let ysum = Representation::direct_sum(&ys, alg);
    // Global basis: block basis elements pushed into the sums.
    let mut basis = Vec::new();
    let mut block_of = Vec::new();
    for (k, &(a, b)) in blocks.iter().enumerate() {
        for f in &homs[&(src[a], tgt[b])] {
            basis.push(xsum.projections[a].then(f).then(&ysum.inclusions[b]));
            block_of.push(k);
        }
    }
    let mut out = Vec::new();
    for coeffs in grid.up_to_sign(basis.len()) {
        let mut hit = vec![false; blocks.len()];
        for (c, &k) in coeffs.iter().zip(&block_of) {
            if *c != Default::default() {
                hit[k] = true;
            }
        }
        if !hit.iter().all(|h| *h) {
            continue;
        }
        let f = Morphism::combination(&xsum.module, &ysum.module, &basis, &coeffs);
        let (im, _) = f.image();
        let (ker, _) = f.kernel();
        let (cok, _) = f.cokernel();
        out.push(Outcome {
            image: summands(census, &im)?,
            kernel: summands(census, &ker)?,
            cokernel: summands(census, &cok)?,
        });
    }
    Ok(out)
}

/// All nonzero proper quotients, by iterating simple-submodule quotients.
fn all_quotients(x: &Representation, grid: Grid) -> Result<Vec<Representation>> {
    let mut seen: Vec<Representation> = Vec::new();
    let mut frontier = vec![x.clone()];
    while let Some(m) = frontier.pop() {
        for qt in simple_quotient_steps(&m, grid)? {
            let mut new = true;
            for s in &seen {
                if s.dims() == qt.dims() && is_isomorphic(s, &qt)? {
                    new = false;
                    break;
                }
            }
            if new {
                seen.push(qt.clone());
                frontier.push(qt);
            }
        }
    }
    Ok(seen)
}

#[cfg(test)]
mod tests;
