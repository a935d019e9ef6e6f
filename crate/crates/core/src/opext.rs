//! One-point extensions `B = [[A, 0], [M, k]]`, the triple description of
//! B-modules, and the transfer of ICE-closed subcategories and brick sets
//! from A to B.

use std::sync::{Arc, OnceLock};

use serde::Serialize;

use crate::algebra::{Algebra, AlgebraSpec, ArrowSpec, TermSpec};
use crate::bricks::{BrickKind, BrickTable};
use crate::census::Census;
use crate::error::{Error, Result};
use crate::homext::{map_from_projectives, min_presentation, Generator, Presentation};
use crate::rep::{factor_through_cokernel, is_short_exact, Morphism, Representation};
use crate::subcat::{Closures, IdSet, Sampling};
use crate::QMatrix;

/// A new arrow `ω → target`, one per basis element of `top M`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NewArrow {
    pub name: String,
    pub target: String,
    /// Index into the presentation's top generators.
    pub generator: usize,
}

#[derive(Clone, Debug, Default)]
pub struct ExtensionOptions {
    /// Label of the new vertex; defaults to the smallest unused positive integer.
    pub vertex_label: Option<String>,
    /// Names of the new arrows; defaults to `alpha` or `alpha1, alpha2, …`.
    pub arrow_names: Option<Vec<String>>,
}

#[derive(Clone, Debug)]
pub struct OnePointExtension {
    base: Arc<Algebra>,
    module: Representation,
    result: Arc<Algebra>,
    omega: String,
    new_arrows: Vec<NewArrow>,
    presentation: Presentation,
}

fn default_label(base: &Algebra) -> String {
    (1..)
        .map(|k: usize| k.to_string())
        .find(|l| !base.vertices().contains(l))
        .expect("some label is free")
}

fn default_arrow_names(base: &Algebra, count: usize) -> Vec<String> {
    let taken = |n: &str| base.arrows().iter().any(|a| a.name == n) || base.vertices().iter().any(|v| v == n);
    let mut stem = String::from("alpha");
    while (count == 1 && taken(&stem)) || (count > 1 && (1..=count).any(|k| taken(&format!("{stem}{k}")))) {
        stem.push('\'');
    }
    if count == 1 {
        vec![stem]
    } else {
        (1..=count).map(|k| format!("{stem}{k}")).collect()
    }
}

impl OnePointExtension {
    pub fn new(module: &Representation, opts: &ExtensionOptions) -> Result<Self> {
        module.check_relations()?;
        let base = module.algebra().clone();
        let presentation = min_presentation(module);
        let omega = opts.vertex_label.clone().unwrap_or_else(|| default_label(&base));
        let gens = &presentation.top_generators;
        let names = match &opts.arrow_names {
            Some(n) if n.len() == gens.len() => n.clone(),
            Some(n) => {
                return Err(Error::Parse(format!(
                    "{} arrow names given, top of M has dimension {}",
                    n.len(),
                    gens.len()
                )))
            }
            None => default_arrow_names(&base, gens.len()),
        };
        let new_arrows: Vec<NewArrow> = names
            .into_iter()
            .zip(gens)
            .enumerate()
            .map(|(k, (name, g))| NewArrow {
                name,
                target: base.vertices()[g.vertex].clone(),
                generator: k,
            })
            .collect();

        let a_spec = base.to_spec();
        let mut spec = AlgebraSpec {
            vertices: std::iter::once(omega.clone()).chain(a_spec.vertices.clone()).collect(),
            arrows: new_arrows
                .iter()
                .map(|a| ArrowSpec {
                    name: a.name.clone(),
                    from: omega.clone(),
                    to: a.target.clone(),
                })
                .chain(a_spec.arrows.clone())
                .collect(),
            relations: Vec::new(),
            budget: a_spec.budget,
        };
        for r in &presentation.relation_generators {
            spec.relations.push(relation_terms(&base, &new_arrows, gens, r));
        }
        spec.relations.extend(a_spec.relations);
        let result = Algebra::load(&spec)?;
        let ope = OnePointExtension {
            base,
            module: module.clone(),
            result,
            omega,
            new_arrows,
            presentation,
        };
        let expect = ope.base.dimension() + module.total_dim() + 1;
        if ope.result.dimension() != expect {
            return Err(Error::TheoremCheckFailed(format!(
                "dim B = {}, expected dim A + dim M + 1 = {expect}",
                ope.result.dimension()
            )));
        }
        Ok(ope)
    }

    pub fn base(&self) -> &Arc<Algebra> {
        &self.base
    }

    pub fn module(&self) -> &Representation {
        &self.module
    }

    pub fn result(&self) -> &Arc<Algebra> {
        &self.result
    }

    pub fn omega_label(&self) -> &str {
        &self.omega
    }

    /// Index of `ω` among the vertices of B (always 0).
    pub fn omega(&self) -> usize {
        0
    }

    pub fn new_arrows(&self) -> &[NewArrow] {
        &self.new_arrows
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    fn b_vertex(&self, v: usize) -> usize {
        v + 1
    }

    fn b_arrow(&self, a: usize) -> usize {
        a + self.new_arrows.len()
    }

    /// The B-module of a triple: `N` at the old vertices, `kⁿ` at `ω`, and the
    /// new arrow for generator `x_k` acting by `e_j ↦ f(x_k in copy j)`.
    pub fn triple_to_rep(&self, t: &TripleModule) -> Result<Representation> {
        let n_mod = &t.n_module;
        if !Arc::ptr_eq(n_mod.algebra(), &self.base) && **n_mod.algebra() != *self.base {
            return Err(Error::AlgebraMismatch);
        }
        let mut dims = vec![t.n];
        dims.extend_from_slice(n_mod.dims());
        let mut mats = Vec::new();
        for a in &self.new_arrows {
            let g = &self.presentation.top_generators[a.generator];
            let v = g.vertex;
            let m_dim = self.module.dim(v);
            let fv = t.f.map_at(v);
            let cols: Vec<Vec<_>> = (0..t.n)
                .map(|j| fv.block(0, j * m_dim, n_mod.dim(v), m_dim).apply(&g.image))
                .collect();
            mats.push(QMatrix::from_columns(&cols, n_mod.dim(v)));
        }
        mats.extend(n_mod.mats().iter().cloned());
        Representation::new(self.result.clone(), dims, mats)
    }

    /// Restriction to A, the space at `ω`, and the structure map `Mⁿ → N`.
    pub fn rep_to_triple(&self, x: &Representation) -> Result<TripleModule> {
        if !Arc::ptr_eq(x.algebra(), &self.result) && **x.algebra() != *self.result {
            return Err(Error::AlgebraMismatch);
        }
        let n_mod = self.restrict(x)?;
        let n = x.dim(self.omega());
        let pres = &self.presentation;
        let mut blocks: Vec<Morphism> = Vec::with_capacity(n);
        for j in 0..n {
            let gens: Vec<Generator> = self
                .new_arrows
                .iter()
                .enumerate()
                .map(|(k, a)| Generator {
                    vertex: pres.top_generators[a.generator].vertex,
                    image: x.arrow_mat(k).column(j),
                })
                .collect();
            let (_, g) = map_from_projectives(&self.base, &gens, &n_mod);
            if !pres.syzygy_incl.then(&g).is_zero() {
                return Err(Error::InvalidModule("structure map does not vanish on the relations of M".into()));
            }
            blocks.push(factor_through_cokernel(&pres.eps, &g));
        }
        let copies = vec![self.module.clone(); n];
        let source = Representation::sum(&copies, &self.base);
        let maps = (0..self.base.num_vertices())
            .map(|v| {
                blocks
                    .iter()
                    .fold(QMatrix::zeros(n_mod.dim(v), 0), |acc, b| acc.hstack(b.map_at(v)))
            })
            .collect();
        let f = Morphism::new(source, n_mod.clone(), maps)?;
        Ok(TripleModule { n_module: n_mod, n, f })
    }

    /// The A-module obtained by forgetting `ω`.
    pub fn restrict(&self, x: &Representation) -> Result<Representation> {
        let dims = (0..self.base.num_vertices()).map(|v| x.dim(self.b_vertex(v))).collect();
        let mats = (0..self.base.arrows().len())
            .map(|a| x.arrow_mat(self.b_arrow(a)).clone())
            .collect();
        Representation::new(self.base.clone(), dims, mats)
    }

    /// `(N, 0, 0)`.
    pub fn embed(&self, n_mod: &Representation) -> Result<Representation> {
        self.triple_to_rep(&TripleModule::embedded(n_mod, &self.module))
    }

    /// `(0, k, 0)`, the simple at `ω`.
    pub fn omega_simple(&self) -> Representation {
        Representation::simple(&self.result, self.omega())
    }

    /// A morphism of triples as a B-morphism.
    pub fn triple_morphism_to_rep(
        &self,
        source: &TripleModule,
        target: &TripleModule,
        m: &TripleMorphism,
    ) -> Result<Morphism> {
        let mut maps = vec![m.at_omega.clone()];
        maps.extend(m.on_n.maps().iter().cloned());
        Morphism::new(self.triple_to_rep(source)?, self.triple_to_rep(target)?, maps)
    }
}

/// Terms of the B-relation `Σ c · (new arrow k)(path)` for an element of `P0`.
fn relation_terms(base: &Algebra, new_arrows: &[NewArrow], gens: &[Generator], r: &Generator) -> Vec<TermSpec> {
    let w = r.vertex;
    let mut terms = Vec::new();
    let mut offset = 0;
    for (k, g) in gens.iter().enumerate() {
        for path in base.path_basis(g.vertex, w) {
            let c = &r.image[offset];
            offset += 1;
            if *c == Default::default() {
                continue;
            }
            let mut names = vec![new_arrows[k].name.clone()];
            names.extend(path.arrows.iter().map(|&a| base.arrows()[a].name.clone()));
            terms.push(TermSpec {
                coeff: c.to_string(),
                path: names,
            });
        }
    }
    terms
}

/// A B-module as `(N, kⁿ, f: Mⁿ → N)`.
#[derive(Clone, Debug)]
pub struct TripleModule {
    pub n_module: Representation,
    pub n: usize,
    pub f: Morphism,
}

impl TripleModule {
    /// `(N, 0, 0)`.
    pub fn embedded(n_mod: &Representation, m: &Representation) -> Self {
        let src = Representation::zero(m.algebra());
        TripleModule {
            n_module: n_mod.clone(),
            n: 0,
            f: Morphism::zero(&src, n_mod),
        }
    }

    /// `(0, kⁿ, 0)`.
    pub fn vector_space(m: &Representation, n: usize) -> Self {
        let copies = vec![m.clone(); n];
        let src = Representation::sum(&copies, m.algebra());
        let zero = Representation::zero(m.algebra());
        TripleModule {
            n_module: zero.clone(),
            n,
            f: Morphism::zero(&src, &zero),
        }
    }
}

/// `(φ: N → N', g: kⁿ → kⁿ')`.
#[derive(Clone, Debug)]
pub struct TripleMorphism {
    pub on_n: Morphism,
    pub at_omega: QMatrix,
}

/// Componentwise criterion: `0 → X → Y → Z → 0` of triples is exact iff it is
/// exact on the A-modules and on the vector spaces at `ω`.
pub fn exactness_check(f: &TripleMorphism, g: &TripleMorphism) -> bool {
    if !is_short_exact(&f.on_n, &g.on_n) {
        return false;
    }
    let (fv, gv) = (&f.at_omega, &g.at_omega);
    fv.rows() == gv.cols()
        && fv.rank() == fv.cols()
        && gv.rank() == gv.rows()
        && gv.matmul(fv).is_zero()
        && fv.rank() + gv.rank() == gv.cols()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GrowthKind {
    Ice,
    Ebrick,
}

#[derive(Clone, Debug, Serialize)]
pub struct GrowthReport {
    pub kind: GrowthKind,
    pub n: usize,
    pub m: usize,
    pub images: usize,
    pub images_distinct: bool,
    pub images_valid: bool,
    pub bound_holds: bool,
}

/// A one-point extension together with complete censuses of A and B, and the
/// theorem constructions between them.
pub struct Transfer {
    ope: Arc<OnePointExtension>,
    census_a: Arc<Census>,
    census_b: Arc<Census>,
    embed: Vec<usize>,
    omega_id: usize,
    /// A-summands of the N-component of each B-indecomposable.
    n_parts: Vec<IdSet>,
    sampling: Sampling,
    closures_a: OnceLock<Closures>,
    closures_b: OnceLock<Closures>,
    bricks_a: OnceLock<BrickTable>,
    bricks_b: OnceLock<BrickTable>,
}

impl Transfer {
    pub fn new(ope: Arc<OnePointExtension>, census_a: Arc<Census>, census_b: Arc<Census>, sampling: Sampling) -> Result<Self> {
        census_a.require_complete()?;
        census_b.require_complete()?;
        let missing = |what: String| Error::CensusIncomplete(format!("{what} is not in the B census"));
        let embed = census_a
            .modules()
            .iter()
            .map(|m| {
                census_b
                    .find(&ope.embed(m)?)?
                    .ok_or_else(|| missing(format!("({}, 0, 0)", m.name())))
            })
            .collect::<Result<Vec<_>>>()?;
        let omega_id = census_b
            .find(&ope.omega_simple())?
            .ok_or_else(|| missing("the simple at ω".into()))?;
        let n_parts = census_b
            .modules()
            .iter()
            .map(|x| {
                let t = ope.rep_to_triple(x)?;
                Ok(census_a.summand_ids(&t.n_module)?.into_iter().collect())
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Transfer {
            ope,
            census_a,
            census_b,
            embed,
            omega_id,
            n_parts,
            sampling,
            closures_a: OnceLock::new(),
            closures_b: OnceLock::new(),
            bricks_a: OnceLock::new(),
            bricks_b: OnceLock::new(),
        })
    }

    pub fn extension(&self) -> &Arc<OnePointExtension> {
        &self.ope
    }

    pub fn census_a(&self) -> &Arc<Census> {
        &self.census_a
    }

    pub fn census_b(&self) -> &Arc<Census> {
        &self.census_b
    }

    pub fn omega_id(&self) -> usize {
        self.omega_id
    }

    /// B-census id of `(X, 0, 0)` for an A-census id.
    pub fn embed_id(&self, a: usize) -> usize {
        self.embed[a]
    }

    pub fn embed_set(&self, s: IdSet) -> IdSet {
        s.iter().map(|a| self.embed[a]).collect()
    }

    /// A-summands of the N-component of a B-indecomposable.
    pub fn n_component(&self, b: usize) -> IdSet {
        self.n_parts[b]
    }

    fn lazy<'a, T>(&self, cell: &'a OnceLock<T>, make: impl FnOnce() -> Result<T>) -> Result<&'a T> {
        if let Some(v) = cell.get() {
            return Ok(v);
        }
        let v = make()?;
        Ok(cell.get_or_init(|| v))
    }

    pub fn closures_a(&self) -> Result<&Closures> {
        self.lazy(&self.closures_a, || Closures::new(self.census_a.clone(), self.sampling))
    }

    pub fn closures_b(&self) -> Result<&Closures> {
        self.lazy(&self.closures_b, || Closures::new(self.census_b.clone(), self.sampling))
    }

    pub fn bricks_a(&self) -> Result<&BrickTable> {
        self.lazy(&self.bricks_a, || BrickTable::new(self.census_a.clone(), self.sampling.grid))
    }

    pub fn bricks_b(&self) -> Result<&BrickTable> {
        self.lazy(&self.bricks_b, || BrickTable::new(self.census_b.clone(), self.sampling.grid))
    }

    fn expect_ice(&self, s: IdSet, what: &str) -> Result<IdSet> {
        let c = self.closures_b()?;
        if c.is_ice(s) {
            Ok(s)
        } else {
            Err(Error::TheoremCheckFailed(format!("{what} = {} is not ICE-closed over B", c.format(s))))
        }
    }

    fn expect_bricks(&self, s: IdSet, kind: BrickKind, what: &str) -> Result<IdSet> {
        let t = self.bricks_b()?;
        let ok = match kind {
            BrickKind::Epi => t.is_epibrick(s)?,
            BrickKind::Mono => t.is_monobrick(s)?,
            BrickKind::Semi => t.is_semibrick(s)?,
        };
        if ok {
            Ok(s)
        } else {
            Err(Error::TheoremCheckFailed(format!("{what} = {} fails over B ({kind:?})", t.format(s))))
        }
    }

    /// `{(N, 0, 0) | N ∈ C}`.
    pub fn thm31_t1(&self, c: IdSet) -> Result<IdSet> {
        self.expect_ice(self.embed_set(c), "T1")
    }

    /// B-indecomposables whose N-component lies in `add C`, which includes the
    /// simple at `ω`.
    pub fn thm31_t2(&self, c: IdSet) -> Result<IdSet> {
        let s = (0..self.census_b.len()).filter(|&b| self.n_parts[b].is_subset(c)).collect();
        self.expect_ice(s, "T2")
    }

    /// `{(s, 0, 0) | s ∈ S}`.
    pub fn thm35_s(&self, s: IdSet) -> Result<IdSet> {
        self.expect_bricks(self.embed_set(s), BrickKind::Epi, "S_B")
    }

    /// `S_B ∪ {(0, k, 0)}`.
    pub fn thm35_sprime(&self, s: IdSet) -> Result<IdSet> {
        self.expect_bricks(self.embed_set(s).with(self.omega_id), BrickKind::Epi, "S'_B")
    }

    /// The monobrick analogue of both constructions.
    pub fn remark36(&self, s: IdSet) -> Result<(IdSet, IdSet)> {
        let plain = self.embed_set(s);
        Ok((
            self.expect_bricks(plain, BrickKind::Mono, "S_B")?,
            self.expect_bricks(plain.with(self.omega_id), BrickKind::Mono, "S'_B")?,
        ))
    }

    /// Counts over A and B and the `2n` theorem images.
    pub fn growth_report(&self, kind: GrowthKind) -> Result<GrowthReport> {
        let (over_a, over_b, images) = match kind {
            GrowthKind::Ice => {
                let a = self.closures_a()?.enumerate_ice();
                let b = self.closures_b()?.enumerate_ice();
                let mut images = Vec::new();
                for c in &a {
                    images.push(self.thm31_t1(*c)?);
                    images.push(self.thm31_t2(*c)?);
                }
                (a, b, images)
            }
            GrowthKind::Ebrick => {
                let a = self.bricks_a()?.enumerate_ebricks()?;
                let b = self.bricks_b()?.enumerate_ebricks()?;
                let mut images = Vec::new();
                for s in &a {
                    images.push(self.thm35_s(*s)?);
                    images.push(self.thm35_sprime(*s)?);
                }
                (a, b, images)
            }
        };
        let mut distinct = images.clone();
        distinct.sort();
        distinct.dedup();
        let n = over_a.len();
        let m = over_b.len();
        Ok(GrowthReport {
            kind,
            n,
            m,
            images: images.len(),
            images_distinct: distinct.len() == 2 * n,
            images_valid: images.iter().all(|s| over_b.contains(s)),
            bound_holds: m >= 2 * n,
        })
    }
}

/// A one-point extension with both censuses built by the default engines.
pub fn transfer_for(module: &Representation, opts: &ExtensionOptions, sampling: Sampling) -> Result<Transfer> {
    let ope = Arc::new(OnePointExtension::new(module, opts)?);
    let knit = crate::census::KnitOptions {
        grid: sampling.grid,
        ..Default::default()
    };
    let census_a = Arc::new(Census::build(ope.base(), knit)?);
    let census_b = Arc::new(Census::build(ope.result(), knit)?);
    Transfer::new(ope, census_a, census_b, sampling)
}
