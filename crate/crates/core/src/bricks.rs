//! Epibricks, monobricks and semibricks over a census.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::census::Census;
use crate::error::{Error, Result};
use crate::grid::Grid;
use crate::rep::{hom_basis, is_brick, Morphism, Representation};
use crate::subcat::{check_size, member_names, IdSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PairKind {
    NoNonzeroMaps,
    AllSurjective,
    AllInjective,
    AllIsomorphisms,
    Mixed,
}

/// Classification of the nonzero maps `X → Y`. `beyond_grid` marks a verdict
/// other than `Mixed` drawn from grid samples of a Hom space of dimension ≥ 2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct PairClass {
    pub kind: PairKind,
    pub beyond_grid: bool,
}

impl fmt::Display for PairClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.kind {
            PairKind::NoNonzeroMaps => "no-nonzero-maps",
            PairKind::AllSurjective => "all-surjective",
            PairKind::AllInjective => "all-injective",
            PairKind::AllIsomorphisms => "all-isomorphisms",
            PairKind::Mixed => "mixed",
        };
        if self.beyond_grid {
            write!(f, "{name} (indeterminate-beyond-grid)")
        } else {
            f.write_str(name)
        }
    }
}

pub fn classify_pair(x: &Representation, y: &Representation, grid: Grid) -> Result<PairClass> {
    let basis = hom_basis(x, y)?;
    let (mut surj, mut inj) = (true, true);
    let maps: Vec<Morphism> = if basis.len() == 1 {
        basis.clone()
    } else {
        grid.up_to_sign(basis.len())
            .map(|c| Morphism::combination(x, y, &basis, &c))
            .collect()
    };
    for f in &maps {
        surj &= f.is_surjective();
        inj &= f.is_injective();
    }
    let kind = match (basis.is_empty(), surj, inj) {
        (true, _, _) => PairKind::NoNonzeroMaps,
        (false, true, true) => PairKind::AllIsomorphisms,
        (false, true, false) => PairKind::AllSurjective,
        (false, false, true) => PairKind::AllInjective,
        (false, false, false) => PairKind::Mixed,
    };
    Ok(PairClass {
        kind,
        beyond_grid: basis.len() >= 2 && kind != PairKind::Mixed,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BrickKind {
    Epi,
    Mono,
    Semi,
}

impl BrickKind {
    fn allows(self, k: PairKind) -> bool {
        use PairKind::*;
        match self {
            BrickKind::Epi => matches!(k, NoNonzeroMaps | AllSurjective | AllIsomorphisms),
            BrickKind::Mono => matches!(k, NoNonzeroMaps | AllInjective | AllIsomorphisms),
            BrickKind::Semi => matches!(k, NoNonzeroMaps | AllIsomorphisms),
        }
    }
}

/// Bricks of a complete census with all pairwise classifications.
#[derive(Clone, Debug)]
pub struct BrickTable {
    census: Arc<Census>,
    bricks: IdSet,
    pairs: HashMap<(usize, usize), PairClass>,
}

impl BrickTable {
    pub fn new(census: Arc<Census>, grid: Grid) -> Result<Self> {
        census.require_complete()?;
        check_size(&census)?;
        let bricks: IdSet = census.bricks()?.into_iter().collect();
        let ids = bricks.ids();
        let pairs = ids
            .iter()
            .flat_map(|&a| ids.iter().map(move |&b| (a, b)))
            .collect::<Vec<_>>()
            .into_par_iter()
            .map(|(a, b)| Ok(((a, b), classify_pair(census.module(a), census.module(b), grid)?)))
            .collect::<Result<_>>()?;
        Ok(BrickTable { census, bricks, pairs })
    }

    pub fn census(&self) -> &Arc<Census> {
        &self.census
    }

    pub fn bricks(&self) -> IdSet {
        self.bricks
    }

    pub fn pair(&self, a: usize, b: usize) -> Option<PairClass> {
        self.pairs.get(&(a, b)).copied()
    }

    fn check(&self, s: IdSet, kind: BrickKind) -> Result<bool> {
        if !s.is_subset(self.bricks) {
            return Ok(false);
        }
        let mut unsure = None;
        for a in s.iter() {
            for b in s.iter().filter(|&b| b != a) {
                let c = self.pairs[&(a, b)];
                if !kind.allows(c.kind) {
                    return Ok(false);
                }
                if c.beyond_grid {
                    unsure = Some((a, b));
                }
            }
        }
        match unsure {
            Some((a, b)) => Err(Error::Indeterminate(format!(
                "maps {} → {} classified from grid samples only",
                self.census.name(a),
                self.census.name(b)
            ))),
            None => Ok(true),
        }
    }

    pub fn is_epibrick(&self, s: IdSet) -> Result<bool> {
        self.check(s, BrickKind::Epi)
    }

    pub fn is_monobrick(&self, s: IdSet) -> Result<bool> {
        self.check(s, BrickKind::Mono)
    }

    pub fn is_semibrick(&self, s: IdSet) -> Result<bool> {
        self.check(s, BrickKind::Semi)
    }

    /// All subsets of the bricks passing the predicate, including the empty
    /// set, in canonical order.
    pub fn enumerate(&self, kind: BrickKind) -> Result<Vec<IdSet>> {
        let ids = self.bricks.ids();
        assert!(ids.len() < 64, "powerset sweep over {} bricks", ids.len());
        let mut out: Vec<IdSet> = (0u64..1 << ids.len())
            .into_par_iter()
            .map(|bits| {
                let s: IdSet = (0..ids.len()).filter(|k| bits >> k & 1 == 1).map(|k| ids[k]).collect();
                Ok(self.check(s, kind)?.then_some(s))
            })
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .flatten()
            .collect();
        out.sort_by(IdSet::canonical_cmp);
        Ok(out)
    }

    pub fn enumerate_ebricks(&self) -> Result<Vec<IdSet>> {
        self.enumerate(BrickKind::Epi)
    }

    pub fn enumerate_mbricks(&self) -> Result<Vec<IdSet>> {
        self.enumerate(BrickKind::Mono)
    }

    pub fn enumerate_semibricks(&self) -> Result<Vec<IdSet>> {
        self.enumerate(BrickKind::Semi)
    }

    pub fn format(&self, s: IdSet) -> String {
        format_bricks(&self.census, s)
    }
}

/// `{2, 2/3}`, or `{0}` for the empty set.
pub fn format_bricks(census: &Census, s: IdSet) -> String {
    format!("{{{}}}", member_names(census, s).join(", "))
}

/// A brick set given as modules: each must be a brick.
pub fn brick_ids(census: &Census, modules: &[Representation]) -> Result<IdSet> {
    let mut s = IdSet::EMPTY;
    for m in modules {
        if !is_brick(m)? {
            return Err(Error::InvalidModule(format!("{} is not a brick", m.name())));
        }
        let id = census
            .find(m)?
            .ok_or_else(|| Error::CensusIncomplete(format!("{} is not in the census", m.name())))?;
        s.insert(id);
    }
    Ok(s)
}

#[cfg(test)]
mod tests;
