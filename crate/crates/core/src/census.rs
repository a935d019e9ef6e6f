//! Complete lists of indecomposable modules up to isomorphism.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::{Arc, RwLock};

use serde::Serialize;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::grid::Grid;
use crate::homext::{middle_term, ExtSpace};
use crate::rep::{
    decompose, end_radical, indecomposables_isomorphic, is_brick, submodule_inclusion,
    ModuleLiteral, Representation,
};

/// Decomposition of a module as `(census id, multiplicity)`, sorted by id.
pub type Multiset = Vec<(usize, usize)>;

/// Indecomposables of an algebra in canonical order; ids are positions.
pub struct Census {
    algebra: Arc<Algebra>,
    modules: Vec<Representation>,
    complete: bool,
    identified: RwLock<HashMap<Representation, Multiset>>,
}

impl Clone for Census {
    fn clone(&self) -> Self {
        Census {
            algebra: self.algebra.clone(),
            modules: self.modules.clone(),
            complete: self.complete,
            identified: RwLock::new(self.identified.read().unwrap().clone()),
        }
    }
}

impl fmt::Debug for Census {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Census")
            .field("modules", &self.names())
            .field("complete", &self.complete)
            .finish()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CensusEntry {
    pub id: usize,
    pub name: String,
    pub dims: Vec<usize>,
    pub brick: bool,
    pub module: ModuleLiteral,
}

fn order_key(x: &Representation) -> (usize, Vec<usize>, String) {
    (x.total_dim(), x.dims().to_vec(), x.canonical_key())
}

/// Options for the extension-knitting engine.
#[derive(Clone, Copy, Debug)]
pub struct KnitOptions {
    /// Largest total dimension considered; defaults to `dim A + 2`.
    pub dim_bound: Option<usize>,
    /// Maximum number of `(Y, S)` pairs whose extensions are realized.
    pub budget: usize,
    pub grid: Grid,
}

impl Default for KnitOptions {
    fn default() -> Self {
        KnitOptions {
            dim_bound: None,
            budget: 200_000,
            grid: Grid::default(),
        }
    }
}

impl Census {
    /// Builds a census from pairwise non-isomorphic indecomposables.
    pub fn from_modules(algebra: &Arc<Algebra>, mut modules: Vec<Representation>, complete: bool) -> Self {
        modules.sort_by_cached_key(order_key);
        Census {
            algebra: algebra.clone(),
            modules,
            complete,
            identified: RwLock::new(HashMap::new()),
        }
    }

    /// Nakayama algebras in closed form, anything else by knitting.
    pub fn build(algebra: &Arc<Algebra>, opts: KnitOptions) -> Result<Self> {
        if algebra.is_nakayama() {
            nakayama_census(algebra)
        } else {
            knit_census(algebra, opts)
        }
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn len(&self) -> usize {
        self.modules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.modules.is_empty()
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn modules(&self) -> &[Representation] {
        &self.modules
    }

    pub fn module(&self, id: usize) -> &Representation {
        &self.modules[id]
    }

    pub fn name(&self, id: usize) -> String {
        self.modules[id].name()
    }

    pub fn names(&self) -> Vec<String> {
        self.modules.iter().map(|m| m.name()).collect()
    }

    /// Id of the member whose name is `name`, when names are unique.
    pub fn id_by_name(&self, name: &str) -> Option<usize> {
        let mut hits = self.modules.iter().enumerate().filter(|(_, m)| m.name() == name);
        match (hits.next(), hits.next()) {
            (Some((id, _)), None) => Some(id),
            _ => None,
        }
    }

    pub fn require_complete(&self) -> Result<()> {
        if self.complete {
            Ok(())
        } else {
            Err(Error::CensusIncomplete(format!(
                "{} indecomposables found before the budget ran out",
                self.len()
            )))
        }
    }

    /// Id of an indecomposable module, `None` if it is not listed.
    pub fn find(&self, x: &Representation) -> Result<Option<usize>> {
        if !Arc::ptr_eq(x.algebra(), &self.algebra) && **x.algebra() != *self.algebra {
            return Err(Error::AlgebraMismatch);
        }
        for (id, m) in self.modules.iter().enumerate() {
            if m.dims() == x.dims() && (m == x || indecomposables_isomorphic(m, x)?) {
                return Ok(Some(id));
            }
        }
        Ok(None)
    }

    /// Decomposes `x` into census members.
    pub fn identify(&self, x: &Representation) -> Result<Multiset> {
        if let Some(hit) = self.identified.read().unwrap().get(x) {
            return Ok(hit.clone());
        }
        let mut counts: HashMap<usize, usize> = HashMap::new();
        for part in decompose(x)? {
            let id = self.find(&part)?.ok_or_else(|| {
                Error::CensusIncomplete(format!("summand {} is not in the census", part.name()))
            })?;
            *counts.entry(id).or_default() += 1;
        }
        let mut out: Multiset = counts.into_iter().collect();
        out.sort_unstable();
        self.identified.write().unwrap().insert(x.clone(), out.clone());
        Ok(out)
    }

    /// Distinct ids of the summands of `x`.
    pub fn summand_ids(&self, x: &Representation) -> Result<Vec<usize>> {
        Ok(self.identify(x)?.into_iter().map(|(id, _)| id).collect())
    }

    /// Direct sum of members with multiplicity.
    pub fn sum_of(&self, ids: &[usize]) -> Representation {
        let parts: Vec<Representation> = ids.iter().map(|&i| self.modules[i].clone()).collect();
        Representation::sum(&parts, &self.algebra)
    }

    pub fn bricks(&self) -> Result<Vec<usize>> {
        let mut out = Vec::new();
        for (id, m) in self.modules.iter().enumerate() {
            if is_brick(m)? {
                out.push(id);
            }
        }
        Ok(out)
    }

    pub fn entries(&self) -> Result<Vec<CensusEntry>> {
        self.modules
            .iter()
            .enumerate()
            .map(|(id, m)| {
                Ok(CensusEntry {
                    id,
                    name: m.name(),
                    dims: m.dims().to_vec(),
                    brick: is_brick(m)?,
                    module: m.to_literal(),
                })
            })
            .collect()
    }
}

/// All `P_i / rad^t P_i`: for Nakayama algebras these are every indecomposable.
pub fn nakayama_census(alg: &Arc<Algebra>) -> Result<Census> {
    alg.nakayama_check()?;
    let mut modules: Vec<Representation> = Vec::new();
    for i in 0..alg.num_vertices() {
        let p = Representation::projective(alg, i);
        let series = p.radical_series();
        for t in 1..series.len() {
            let incl = submodule_inclusion(&p, series[t].clone());
            let (quotient, _) = incl.cokernel();
            if modules.iter().all(|m| m.dims() != quotient.dims() || m.top_dims() != quotient.top_dims()) {
                modules.push(quotient);
            }
        }
    }
    Ok(Census::from_modules(alg, modules, true))
}

/// Every non-simple indecomposable `E` is an extension of `E / S` by a simple
/// submodule `S`, so closing the simples under middle terms `0 → S → E → Y → 0`
/// reaches all of them. A summand `Y_k` of `Y` can only occur with
/// `Ext¹(Y_k, S) ≠ 0` and multiplicity at most its dimension; otherwise `E`
/// splits off a copy of it.
pub fn knit_census(alg: &Arc<Algebra>, opts: KnitOptions) -> Result<Census> {
    let bound = opts.dim_bound.unwrap_or(alg.dimension() + 2);
    let simples: Vec<Representation> = (0..alg.num_vertices()).map(|i| Representation::simple(alg, i)).collect();
    let mut known: Vec<Representation> = simples.clone();
    let mut ext_dims: HashMap<(usize, usize), usize> = HashMap::new();
    let mut done: HashSet<(Vec<usize>, usize)> = HashSet::new();
    let mut spent = 0usize;

    let find = |known: &[Representation], x: &Representation| -> Result<bool> {
        for m in known {
            if m.dims() == x.dims() && indecomposables_isomorphic(m, x)? {
                return Ok(true);
            }
        }
        Ok(false)
    };

    loop {
        let before = known.len();
        for (s_idx, s) in simples.iter().enumerate() {
            let mut cands = Vec::new();
            for (k, m) in known.iter().enumerate() {
                let e = match ext_dims.get(&(k, s_idx)) {
                    Some(&e) => e,
                    None => {
                        let e = ExtSpace::new(m, s)?.dim();
                        ext_dims.insert((k, s_idx), e);
                        e
                    }
                };
                if e > 0 {
                    cands.push((k, e, m.total_dim()));
                }
            }
            let mut pending = Vec::new();
            multisets(&cands, bound.saturating_sub(1), &mut Vec::new(), 0, &mut pending);
            for ids in pending {
                if !done.insert((ids.clone(), s_idx)) {
                    continue;
                }
                spent += 1;
                if spent > opts.budget {
                    return Err(Error::BudgetExhausted {
                        partial: Box::new(Census::from_modules(alg, known, false)),
                    });
                }
                let parts: Vec<Representation> = ids.iter().map(|&i| known[i].clone()).collect();
                let y = Representation::sum(&parts, alg);
                let space = ExtSpace::new(&y, s)?;
                for coords in opts.grid.up_to_sign(space.dim()) {
                    let e = middle_term(&space, &space.class(&coords)).middle;
                    let pieces = if end_radical(&e)?.top_dim() == 1 {
                        vec![e]
                    } else {
                        decompose(&e)?
                    };
                    for piece in pieces {
                        if piece.total_dim() <= bound && !find(&known, &piece)? {
                            known.push(piece);
                        }
                    }
                }
            }
        }
        if known.len() == before {
            break;
        }
    }
    Ok(Census::from_modules(alg, known, true))
}

/// Nonempty multisets (sorted ids) over `cands = (id, max multiplicity, dim)`
/// with total dimension at most `room`.
fn multisets(
    cands: &[(usize, usize, usize)],
    room: usize,
    cur: &mut Vec<usize>,
    from: usize,
    out: &mut Vec<Vec<usize>>,
) {
    for k in from..cands.len() {
        let (id, max, dim) = cands[k];
        let mut taken = 0;
        let mut used = 0;
        while taken < max && used + dim <= room {
            taken += 1;
            used += dim;
            cur.push(id);
            out.push(cur.clone());
            multisets(cands, room - used, cur, k + 1, out);
        }
        cur.truncate(cur.len() - taken);
    }
}

#[cfg(test)]
mod tests;
