//! Projective presentations, `Ext¹`, extension middle terms and quotient steps.

use std::sync::Arc;

use num_traits::Zero;

use crate::algebra::Algebra;
use crate::error::Result;
use crate::grid::Grid;
use crate::rep::{factor_through_cokernel, hom_basis, is_isomorphic, Morphism, Representation};
use crate::{QMatrix, Rational};

/// A generator of a free summand: the vertex `v` of `P_v` and the image of `e_v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub vertex: usize,
    pub image: Vec<Rational>,
}

/// `P1 --d--> P0 --eps--> X → 0`, minimal at both steps. `d` factors as the
/// cover `P1 ↠ Ω` followed by the inclusion of the syzygy `Ω = ker eps`.
#[derive(Clone, Debug)]
pub struct Presentation {
    pub p1: Representation,
    pub p0: Representation,
    pub d: Morphism,
    pub eps: Morphism,
    pub syzygy: Representation,
    pub syzygy_incl: Morphism,
    pub cover: Morphism,
    /// Lifts of a basis of `top X`, one per summand of `P0`.
    pub top_generators: Vec<Generator>,
    /// Lifts of a basis of `top ker(eps)`, as elements of `P0`.
    pub relation_generators: Vec<Generator>,
}

/// The homomorphism `P_v → X` sending the trivial path to `y ∈ X_v`.
fn column_at(x: &Representation, path: &[usize], y: &[Rational]) -> Vec<Rational> {
    if path.is_empty() {
        y.to_vec()
    } else {
        x.eval_path(path).apply(y)
    }
}

/// The free module `⊕ P_{v_k}` and the map to `x` sending each generator to
/// its given image.
pub fn map_from_projectives(
    alg: &Arc<Algebra>,
    gens: &[Generator],
    x: &Representation,
) -> (Representation, Morphism) {
    let parts: Vec<Representation> = gens
        .iter()
        .map(|g| Representation::projective(alg, g.vertex))
        .collect();
    let p = Representation::sum(&parts, alg);
    let maps = (0..alg.num_vertices())
        .map(|w| {
            let mut cols = Vec::with_capacity(p.dim(w));
            for g in gens {
                for path in alg.path_basis(g.vertex, w) {
                    cols.push(column_at(x, &path.arrows, &g.image));
                }
            }
            QMatrix::from_columns(&cols, x.dim(w))
        })
        .collect();
    (p.clone(), Morphism::from_parts(p, x.clone(), maps))
}

/// Lifts of a basis of `top X`: unit vectors completing a basis of `rad X`.
pub fn top_generators(x: &Representation) -> Vec<Generator> {
    let series = x.radical_series();
    let mut gens = Vec::new();
    for v in 0..x.dims().len() {
        let rad = series.get(1).map(|s| s[v].clone()).unwrap_or_else(|| QMatrix::zeros(x.dim(v), 0));
        let (_, pivots) = rad.transpose().rref();
        for c in (0..x.dim(v)).filter(|c| !pivots.contains(c)) {
            let mut image = vec![Rational::zero(); x.dim(v)];
            image[c] = Rational::from_integer(1.into());
            gens.push(Generator { vertex: v, image });
        }
    }
    gens
}

pub fn min_presentation(x: &Representation) -> Presentation {
    let alg = x.algebra();
    let top = top_generators(x);
    let (p0, eps) = map_from_projectives(alg, &top, x);
    let (k, k_incl) = eps.kernel();
    let rel_k = top_generators(&k);
    let (p1, cover) = map_from_projectives(alg, &rel_k, &k);
    let d = cover.then(&k_incl);
    let syzygy = k.clone();
    let relation_generators = rel_k
        .iter()
        .map(|g| Generator {
            image: k_incl.map_at(g.vertex).apply(&g.image),
            vertex: g.vertex,
        })
        .collect();
    Presentation {
        p1,
        p0,
        d,
        eps,
        syzygy,
        syzygy_incl: k_incl,
        cover,
        top_generators: top,
        relation_generators,
    }
}

fn flatten(f: &Morphism) -> Vec<Rational> {
    f.maps().iter().flat_map(|m| m.entries().iter().cloned()).collect()
}

/// `Ext¹(Y, X)` as the cokernel of restriction `Hom(P0, X) → Hom(Ω, X)` along
/// the syzygy, with coordinates on the complement of the image's pivot
/// positions. Cocycles are reported on `P1` through the cover `P1 ↠ Ω`; when
/// `d` is injective this is the cokernel of `Hom(P0, X) → Hom(P1, X)`.
#[derive(Clone, Debug)]
pub struct ExtSpace {
    pub y: Representation,
    pub x: Representation,
    pub presentation: Presentation,
    hom_omega_x: Vec<Morphism>,
    /// Flattened `cover ∘ hom_omega_x`, one column per basis element.
    hom_coords: QMatrix,
    image_rref: QMatrix,
    image_pivots: Vec<usize>,
    free: Vec<usize>,
}

/// An element of `Ext¹(Y, X)` represented by a cocycle `P1(Y) → X`.
#[derive(Clone, Debug)]
pub struct ExtClass {
    pub y: Representation,
    pub x: Representation,
    /// `P1 → X`, vanishing on the kernel of `d`.
    pub cocycle: Morphism,
    /// The same cocycle on the syzygy `Ω → X`.
    pub on_syzygy: Morphism,
    pub coords: Vec<Rational>,
}

impl ExtSpace {
    pub fn new(y: &Representation, x: &Representation) -> Result<Self> {
        y.same_algebra(x)?;
        let presentation = min_presentation(y);
        let hom_omega_x = hom_basis(&presentation.syzygy, x)?;
        let cols: Vec<Vec<Rational>> = hom_omega_x
            .iter()
            .map(|g| flatten(&presentation.cover.then(g)))
            .collect();
        let flat_len = cols.first().map_or(0, |c| c.len());
        let hom_coords = QMatrix::from_columns(&cols, flat_len);
        let n = hom_omega_x.len();
        let mut image_rows = Vec::new();
        if n > 0 {
            for g in hom_basis(&presentation.p0, x)? {
                let restricted = presentation.d.then(&g);
                let c = hom_coords
                    .solve(&flatten(&restricted))
                    .expect("restriction factors through the syzygy");
                image_rows.push(c);
            }
        }
        let (image_rref, image_pivots) = QMatrix::from_rows(image_rows, n).rref();
        let free = (0..n).filter(|c| !image_pivots.contains(c)).collect();
        Ok(ExtSpace {
            y: y.clone(),
            x: x.clone(),
            presentation,
            hom_omega_x,
            hom_coords,
            image_rref,
            image_pivots,
            free,
        })
    }

    pub fn dim(&self) -> usize {
        self.free.len()
    }

    /// The class with the given coordinates.
    pub fn class(&self, coords: &[Rational]) -> ExtClass {
        let mut full = vec![Rational::zero(); self.hom_omega_x.len()];
        for (c, &k) in coords.iter().zip(&self.free) {
            full[k] = c.clone();
        }
        let pres = &self.presentation;
        let on_syzygy = Morphism::combination(&pres.syzygy, &self.x, &self.hom_omega_x, &full);
        ExtClass {
            y: self.y.clone(),
            x: self.x.clone(),
            cocycle: pres.cover.then(&on_syzygy),
            on_syzygy,
            coords: coords.to_vec(),
        }
    }

    pub fn basis(&self) -> Vec<ExtClass> {
        (0..self.dim())
            .map(|k| {
                let mut c = vec![Rational::zero(); self.dim()];
                c[k] = Rational::from_integer(1.into());
                self.class(&c)
            })
            .collect()
    }

    /// Coordinates of a cocycle `P1 → X`, reduced modulo coboundaries. `None`
    /// if the map does not vanish on the kernel of `d`.
    pub fn coordinates(&self, cocycle: &Morphism) -> Option<Vec<Rational>> {
        if self.hom_omega_x.is_empty() {
            return cocycle.is_zero().then(Vec::new);
        }
        let mut v = self.hom_coords.solve(&flatten(cocycle))?;
        for (r, &p) in self.image_pivots.iter().enumerate() {
            let factor = v[p].clone();
            if factor.is_zero() {
                continue;
            }
            for (vi, ri) in v.iter_mut().zip(self.image_rref.row(r)) {
                *vi -= &factor * ri;
            }
        }
        Some(self.free.iter().map(|&k| v[k].clone()).collect())
    }
}

pub fn ext1_basis(y: &Representation, x: &Representation) -> Result<Vec<ExtClass>> {
    Ok(ExtSpace::new(y, x)?.basis())
}

pub fn ext1_dim(y: &Representation, x: &Representation) -> Result<usize> {
    Ok(ExtSpace::new(y, x)?.dim())
}

/// A realized short exact sequence `0 → X --incl--> E --proj--> Y → 0`.
#[derive(Clone, Debug)]
pub struct Extension {
    pub middle: Representation,
    pub incl: Morphism,
    pub proj: Morphism,
}

/// Pushout of `Ω ↪ P0` along the cocycle: `E = coker(Ω --(−c, ι)--> X ⊕ P0)`.
pub fn middle_term(space: &ExtSpace, class: &ExtClass) -> Extension {
    let alg = space.x.algebra();
    let pres = &space.presentation;
    let sum = Representation::direct_sum(&[space.x.clone(), pres.p0.clone()], alg);
    let neg = class.on_syzygy.scale(&Rational::from_integer((-1).into()));
    let phi = neg
        .then(&sum.inclusions[0])
        .add(&pres.syzygy_incl.then(&sum.inclusions[1]));
    let (middle, pi) = phi.cokernel();
    let incl = sum.inclusions[0].then(&pi);
    let to_y = sum.projections[1].then(&pres.eps);
    let proj = factor_through_cokernel(&pi, &to_y);
    debug_assert!(crate::rep::is_short_exact(&incl, &proj));
    Extension { middle, incl, proj }
}

/// Pushes `items` into `out` unless an isomorphic copy is already present.
pub(crate) fn push_unique(out: &mut Vec<Representation>, item: Representation) -> Result<()> {
    for o in out.iter() {
        if is_isomorphic(o, &item)? {
            return Ok(());
        }
    }
    out.push(item);
    Ok(())
}

/// Middle terms of all classes with coordinates on the grid, up to isomorphism.
/// The split extension comes first.
pub fn middle_terms_all(y: &Representation, x: &Representation, grid: Grid) -> Result<Vec<Representation>> {
    let space = ExtSpace::new(y, x)?;
    let mut out = Vec::new();
    let zero = vec![Rational::zero(); space.dim()];
    // λξ and ξ have isomorphic middle terms.
    for coords in std::iter::once(zero).chain(grid.up_to_sign(space.dim())) {
        let e = middle_term(&space, &space.class(&coords));
        push_unique(&mut out, e.middle)?;
    }
    Ok(out)
}

/// Proper quotients `X / im φ` for nonzero grid maps `φ: S_i → X`.
pub fn simple_quotient_steps(x: &Representation, grid: Grid) -> Result<Vec<Representation>> {
    let alg = x.algebra();
    let mut out = Vec::new();
    for i in 0..alg.num_vertices() {
        if x.dim(i) == 0 {
            continue;
        }
        let s = Representation::simple(alg, i);
        let basis = hom_basis(&s, x)?;
        for coeffs in grid.up_to_sign(basis.len()) {
            let phi = Morphism::combination(&s, x, &basis, &coeffs);
            let (c, _) = phi.cokernel();
            if !c.is_zero() {
                push_unique(&mut out, c)?;
            }
        }
    }
    Ok(out)
}
