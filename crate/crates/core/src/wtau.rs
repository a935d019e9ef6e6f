//! Wide τ-tilting modules through the bijections with ICE-closed
//! subcategories and epibricks over Nakayama algebras.

use itertools::Itertools;
use rayon::prelude::*;
use serde::Serialize;

use crate::bricks::format_bricks;
use crate::algebra::Algebra;
use crate::census::Census;
use crate::error::{Error, Result};
use crate::opext::Transfer;
use crate::rep::Representation;
use crate::subcat::{format_add, Closures, IdSet};

/// The operations `cok`, `Filt`, `Sim` and `P` over one complete census.
pub struct Bijections<'a> {
    closures: &'a Closures,
}

/// `NotNakayama` unless `force` is set, in which case a warning is returned.
pub fn nakayama_gate(alg: &Algebra, force: bool) -> Result<Option<String>> {
    match alg.nakayama_check() {
        Ok(()) => Ok(None),
        Err(e) if force => Ok(Some(format!("forced run outside the Nakayama setting: {e}"))),
        Err(e) => Err(e),
    }
}

impl<'a> Bijections<'a> {
    /// Fails with `NotNakayama` unless `force` is set, in which case the
    /// second component carries a warning.
    pub fn new(closures: &'a Closures, force: bool) -> Result<(Self, Option<String>)> {
        let warning = nakayama_gate(closures.census().algebra(), force)?;
        Ok((Bijections { closures }, warning))
    }

    pub fn census(&self) -> &Census {
        self.closures.census()
    }

    /// `cok(M)` for `M` given by its summand ids.
    pub fn cok(&self, m: IdSet) -> IdSet {
        self.closures.cokernel_closure(m)
    }

    pub fn cok_module(&self, m: &Representation) -> Result<IdSet> {
        let ids: IdSet = self.census().summand_ids(m)?.into_iter().collect();
        Ok(self.cok(ids))
    }

    pub fn filt(&self, s: IdSet) -> IdSet {
        self.closures.extension_closure(s)
    }

    /// Members of `C` with no proper nonzero subobject in `C`.
    ///
    /// A subobject is a grid-sampled injection `Y ↪ X` from another member.
    /// The variant that also asks for the cokernel to lie in `C` is computed
    /// alongside; if the two disagree the result is `Indeterminate`.
    pub fn sim(&self, c: IdSet) -> Result<IdSet> {
        let census = self.census();
        let grid = crate::grid::Grid::default();
        let mut plain = IdSet::EMPTY;
        let mut strict = IdSet::EMPTY;
        for x in c.iter() {
            let (mut any_sub, mut exact_sub) = (false, false);
            for y in c.iter().filter(|&y| y != x) {
                let basis = self.closures.hom_basis(y, x);
                let src = census.module(y);
                let tgt = census.module(x);
                for coeffs in grid.up_to_sign(basis.len()) {
                    let f = crate::rep::Morphism::combination(src, tgt, basis, &coeffs);
                    if !f.is_injective() {
                        continue;
                    }
                    any_sub = true;
                    let (cok, _) = f.cokernel();
                    if census.summand_ids(&cok)?.into_iter().all(|k| c.contains(k)) {
                        exact_sub = true;
                    }
                }
            }
            if !any_sub {
                plain.insert(x);
            }
            if !exact_sub {
                strict.insert(x);
            }
        }
        if plain != strict {
            return Err(Error::Indeterminate(format!(
                "simple objects of {} depend on the notion of subobject: {} vs {}",
                format_add(census, c),
                format_bricks(census, plain),
                format_bricks(census, strict)
            )));
        }
        Ok(plain)
    }

    /// Ext-projective members of `C`: `Ext¹(X, Y) = 0` for all `Y ∈ C`.
    pub fn ext_projectives(&self, c: IdSet) -> IdSet {
        c.iter()
            .filter(|&x| c.iter().all(|y| self.closures.ext_dim(x, y) == 0))
            .collect()
    }

    pub fn ext_projective_module(&self, c: IdSet) -> Representation {
        self.census().sum_of(&self.ext_projectives(c).ids())
    }
}

/// `2/3 ⊕ 2`, or `0`.
pub fn format_sum(census: &Census, m: IdSet) -> String {
    if m.is_empty() {
        "0".into()
    } else {
        m.iter().map(|i| census.name(i)).join(" ⊕ ")
    }
}

/// One column triple: a basic module by its summands, its ICE-closed
/// subcategory, and the matching epibrick.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct WTauRow {
    pub module: IdSet,
    pub ice: IdSet,
    pub ebrick: IdSet,
}

impl WTauRow {
    fn from_ice(b: &Bijections, ice: IdSet) -> Result<Self> {
        Ok(WTauRow {
            module: b.ext_projectives(ice),
            ice,
            ebrick: b.sim(ice)?,
        })
    }

    pub fn module(&self, census: &Census) -> Representation {
        census.sum_of(&self.module.ids())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RowReport {
    pub module: String,
    pub ice: String,
    pub ebrick: String,
}

impl RowReport {
    pub fn new(census: &Census, row: &WTauRow) -> Self {
        RowReport {
            module: format_sum(census, row.module),
            ice: format_add(census, row.ice),
            ebrick: format_bricks(census, row.ebrick),
        }
    }
}

/// One line of the tables: the A column and both B routes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TableLine {
    pub a: WTauRow,
    /// `P(T2(C))`, with `Sim` of that subcategory.
    pub route1: WTauRow,
    /// `P(Filt(S′(Sim C)))`.
    pub route2: WTauRow,
    /// `cok(P(C)) = C` over A.
    pub a_round_trip: bool,
}

impl TableLine {
    pub fn routes_agree(&self) -> bool {
        self.route1 == self.route2
    }
}

#[derive(Clone, Debug)]
pub struct WTauTable {
    pub lines: Vec<TableLine>,
    pub warnings: Vec<String>,
}

/// Both construction routes for every ICE-closed subcategory of A, in the
/// canonical order of the A enumeration.
pub fn wtau_table(t: &Transfer, force: bool) -> Result<WTauTable> {
    let ope = t.extension();
    let warnings = [nakayama_gate(ope.base(), force)?, nakayama_gate(ope.result(), force)?]
        .into_iter()
        .flatten()
        .collect();
    let ba = Bijections { closures: t.closures_a()? };
    let bb = Bijections { closures: t.closures_b()? };
    let lines = t
        .closures_a()?
        .enumerate_ice()
        .into_par_iter()
        .map(|c| {
            let a = WTauRow::from_ice(&ba, c)?;
            let route1 = WTauRow::from_ice(&bb, t.thm31_t2(c)?)?;
            let s2 = t.thm35_sprime(a.ebrick)?;
            let ice2 = bb.filt(s2);
            let route2 = WTauRow {
                module: bb.ext_projectives(ice2),
                ice: ice2,
                ebrick: s2,
            };
            Ok(TableLine {
                a,
                route1,
                route2,
                a_round_trip: ba.cok(a.module) == c,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(WTauTable { lines, warnings })
}

/// Outcome of the bijection round trips over one census.
#[derive(Clone, Debug, Default, Serialize)]
pub struct RoundTrips {
    pub ice_sets: usize,
    pub ebrick_sets: usize,
    /// `C` with `cok(P(C)) ≠ C`.
    pub cok_failures: Vec<IdSet>,
    /// `S` with `Sim(Filt(S)) ≠ S`.
    pub sim_failures: Vec<IdSet>,
    /// `C` with `Filt(Sim C) ⊄ C`.
    pub filt_not_contained: Vec<IdSet>,
    /// `C` with `Filt(Sim C) = C`.
    pub filt_sim_equal: Vec<IdSet>,
}

impl RoundTrips {
    pub fn ok(&self) -> bool {
        self.cok_failures.is_empty() && self.sim_failures.is_empty() && self.filt_not_contained.is_empty()
    }
}

pub fn round_trips(b: &Bijections, ice: &[IdSet], ebricks: &[IdSet]) -> Result<RoundTrips> {
    let mut r = RoundTrips {
        ice_sets: ice.len(),
        ebrick_sets: ebricks.len(),
        ..Default::default()
    };
    for &c in ice {
        if b.cok(b.ext_projectives(c)) != c {
            r.cok_failures.push(c);
        }
        let f = b.filt(b.sim(c)?);
        if !f.is_subset(c) {
            r.filt_not_contained.push(c);
        } else if f == c {
            r.filt_sim_equal.push(c);
        }
    }
    for &s in ebricks {
        if b.sim(b.filt(s))? != s {
            r.sim_failures.push(s);
        }
    }
    Ok(r)
}

#[cfg(test)]
mod tests;
