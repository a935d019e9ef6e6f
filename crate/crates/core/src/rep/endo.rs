//! Endomorphism algebras, idempotent splitting and isomorphism testing.

use itertools::Itertools;
use num_traits::Zero;

use super::hom::hom_basis;
use super::{Morphism, Representation};
use crate::error::{Error, Result};
use crate::grid::Grid;
use crate::{q, QMatrix, QPoly, Rational};

/// Coefficient grid used when searching Hom spaces for invertible maps.
const ISO_GRID_MAX_DIM: usize = 8;
const LIFT_MAX_ROUNDS: usize = 64;

#[derive(Clone, Debug)]
pub struct EndRadical {
    pub end: Vec<Morphism>,
    pub radical: Vec<Morphism>,
}

impl EndRadical {
    /// `dim End(X) / rad End(X)`.
    pub fn top_dim(&self) -> usize {
        self.end.len() - self.radical.len()
    }
}

fn trace(f: &Morphism) -> Rational {
    f.maps().iter().fold(Rational::zero(), |acc, m| acc + m.trace())
}

/// `End(X)` and its Jacobson radical, the null space of the trace form
/// `(f, g) ↦ tr(f ∘ g)` (exact in characteristic zero).
pub fn end_radical(x: &Representation) -> Result<EndRadical> {
    let end = hom_basis(x, x)?;
    let d = end.len();
    let mut gram = QMatrix::zeros(d, d);
    for i in 0..d {
        for j in i..d {
            let t = trace(&end[j].then(&end[i]));
            gram[(i, j)] = t.clone();
            gram[(j, i)] = t;
        }
    }
    let radical = gram
        .kernel_basis()
        .columns()
        .into_iter()
        .map(|c| Morphism::combination(x, x, &end, &c))
        .collect();
    Ok(EndRadical { end, radical })
}

/// One-dimensional endomorphism algebra.
pub fn is_brick(x: &Representation) -> Result<bool> {
    Ok(!x.is_zero() && hom_basis(x, x)?.len() == 1)
}

/// Iterates `e ← 3e² − 2e³` until `e² = e`. Converges when `e` is idempotent
/// modulo a nilpotent ideal.
pub fn lift_idempotent(e: &Morphism) -> Option<(Morphism, usize)> {
    let mut cur = e.clone();
    for round in 0..=LIFT_MAX_ROUNDS {
        let sq = cur.then(&cur);
        if sq == cur {
            return Some((cur, round));
        }
        let cube = sq.then(&cur);
        cur = sq.scale(&q(3)).add(&cube.scale(&q(-2)));
    }
    None
}

/// Splits a polynomial into two coprime nonconstant factors when the split is
/// visible over the rationals: a rational root, or distinct multiplicities.
fn coprime_split(p: &QPoly) -> Option<(QPoly, QPoly)> {
    let roots = crate::exactla::rational_roots(p);
    if let Some(r) = roots.first() {
        let lin = QPoly::linear(r.clone());
        let mut power = QPoly::one();
        let mut rest = p.clone();
        loop {
            let (quot, rem) = rest.div_rem(&lin);
            if !rem.is_zero() {
                break;
            }
            power = power.mul(&lin);
            rest = quot;
        }
        if rest.degree().unwrap_or(0) > 0 {
            return Some((power, rest));
        }
        return None;
    }
    // Yun's squarefree decomposition: factors grouped by multiplicity.
    let deriv = QPoly::new(
        p.coeffs()
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * q(k as i64))
            .collect(),
    );
    let (g, _, _) = p.ext_gcd(&deriv);
    if g.degree().unwrap_or(0) == 0 {
        return None;
    }
    let (radical, _) = p.div_rem(&g);
    let (common, _, _) = radical.ext_gcd(&g);
    // Factors of multiplicity one are `radical / gcd(radical, g)`.
    let (simple_part, _) = radical.div_rem(&common);
    if simple_part.degree().unwrap_or(0) > 0 {
        let (rest, _) = p.div_rem(&simple_part);
        return Some((simple_part, rest));
    }
    None
}

fn eval_morphism(p: &QPoly, a: &Morphism) -> Morphism {
    let maps = a.maps().iter().map(|m| p.eval_matrix(m)).collect();
    Morphism::from_parts(a.source().clone(), a.target().clone(), maps)
}

fn candidates(end: &[Morphism]) -> Vec<Morphism> {
    let x = end[0].source();
    let mut out: Vec<Morphism> = end.to_vec();
    for (a, b) in end.iter().tuple_combinations() {
        out.push(a.add(b));
        out.push(a.add(&b.scale(&q(-1))));
    }
    let weights: Vec<Rational> = (0..end.len()).map(|k| q(k as i64 + 1)).collect();
    out.push(Morphism::combination(x, x, end, &weights));
    out
}

/// A nontrivial idempotent of `End(X)` built from the minimal polynomial of
/// some endomorphism, via the partial-fraction decomposition of its coprime
/// factors. `None` if no candidate element splits over the rationals.
pub fn splitting_idempotent(x: &Representation, er: &EndRadical) -> Option<Morphism> {
    if er.top_dim() <= 1 {
        return None;
    }
    for a in candidates(&er.end) {
        let p = QPoly::minimal_polynomial(&a.total_matrix());
        let Some((f, g)) = coprime_split(&p) else {
            continue;
        };
        // u f + v g = 1, so v g is 1 on ker f(a) and 0 on ker g(a).
        let (one, _u, v) = f.ext_gcd(&g);
        debug_assert_eq!(one, QPoly::one());
        let e = eval_morphism(&v.mul(&g), &a);
        let (e, _) = lift_idempotent(&e)?;
        if !e.is_zero() && e != Morphism::identity(x) {
            return Some(e);
        }
    }
    None
}

/// Indecomposable direct summands (with repetition), by recursive idempotent
/// splitting `X = im e ⊕ ker e`.
pub fn decompose(x: &Representation) -> Result<Vec<Representation>> {
    if x.is_zero() {
        return Ok(Vec::new());
    }
    let er = end_radical(x)?;
    if er.top_dim() == 1 {
        return Ok(vec![x.clone()]);
    }
    let e = splitting_idempotent(x, &er).ok_or(Error::NonSplitEndAlgebra(er.top_dim()))?;
    let (im, _) = e.image();
    let (ker, _) = e.kernel();
    let mut parts = decompose(&im)?;
    parts.extend(decompose(&ker)?);
    Ok(parts)
}

/// Summands grouped into isomorphism classes with multiplicities, in order of
/// first appearance.
pub fn decompose_grouped(x: &Representation) -> Result<Vec<(Representation, usize)>> {
    let mut groups: Vec<(Representation, usize)> = Vec::new();
    for part in decompose(x)? {
        let mut found = false;
        for g in groups.iter_mut() {
            if indecomposables_isomorphic(&g.0, &part)? {
                g.1 += 1;
                found = true;
                break;
            }
        }
        if !found {
            groups.push((part, 1));
        }
    }
    Ok(groups)
}

/// For indecomposables the non-invertible maps form a proper subspace, so some
/// basis element of `Hom(X, Y)` is invertible whenever `X ≅ Y`.
pub(crate) fn indecomposables_isomorphic(x: &Representation, y: &Representation) -> Result<bool> {
    if x.dims() != y.dims() {
        return Ok(false);
    }
    Ok(hom_basis(x, y)?.iter().any(|f| f.is_isomorphism()))
}

/// Searches `{−1, 0, 1}` combinations of a Hom basis for an invertible map,
/// falling back to comparing decompositions.
pub fn is_isomorphic(x: &Representation, y: &Representation) -> Result<bool> {
    x.same_algebra(y)?;
    if x.dims() != y.dims() {
        return Ok(false);
    }
    if x == y || x.is_zero() {
        return Ok(true);
    }
    let basis = hom_basis(x, y)?;
    if basis.is_empty() {
        return Ok(false);
    }
    // X ≅ Y forces Hom(X, Y) ≅ End(X) ≅ End(Y) ≅ Hom(Y, X).
    let end_x = hom_basis(x, x)?.len();
    if basis.len() != end_x
        || hom_basis(y, y)?.len() != end_x
        || hom_basis(y, x)?.len() != end_x
    {
        return Ok(false);
    }
    if basis.iter().any(|f| f.is_isomorphism()) {
        return Ok(true);
    }
    if basis.len() <= ISO_GRID_MAX_DIM {
        for coeffs in Grid::default().nonzero(basis.len()) {
            let f = Morphism::combination(x, y, &basis, &coeffs);
            if f.is_isomorphism() {
                return Ok(true);
            }
        }
    }
    let gx = decompose_grouped(x).map_err(indeterminate)?;
    let gy = decompose_grouped(y).map_err(indeterminate)?;
    if gx.len() != gy.len() {
        return Ok(false);
    }
    let mut used = vec![false; gy.len()];
    for (px, mx) in &gx {
        let mut matched = false;
        for (k, (py, my)) in gy.iter().enumerate() {
            if !used[k] && mx == my && indecomposables_isomorphic(px, py)? {
                used[k] = true;
                matched = true;
                break;
            }
        }
        if !matched {
            return Ok(false);
        }
    }
    Ok(true)
}

fn indeterminate(e: Error) -> Error {
    Error::Indeterminate(format!("isomorphism test fell back to decomposition: {e}"))
}
