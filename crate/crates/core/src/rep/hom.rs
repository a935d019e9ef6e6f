use super::{Morphism, Representation};
use crate::error::Result;
use crate::{QMatrix, Rational};

/// Offsets of each vertex block in the flattened unknown vector of `Hom(X, Y)`.
fn unknown_offsets(x: &Representation, y: &Representation) -> (Vec<usize>, usize) {
    let mut offs = Vec::with_capacity(x.dims().len());
    let mut total = 0;
    for v in 0..x.dims().len() {
        offs.push(total);
        total += y.dim(v) * x.dim(v);
    }
    (offs, total)
}

/// Canonical basis of `Hom(X, Y)`: the kernel of the stacked commuting-square
/// equations `Y_a φ_i − φ_j X_a = 0`, one unknown per entry of each `φ_v`.
pub fn hom_basis(x: &Representation, y: &Representation) -> Result<Vec<Morphism>> {
    x.same_algebra(y)?;
    let alg = x.algebra();
    let (offs, unknowns) = unknown_offsets(x, y);
    if unknowns == 0 {
        return Ok(Vec::new());
    }
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for (ai, a) in alg.arrows().iter().enumerate() {
        let (i, j) = (a.source, a.target);
        let (ya, xa) = (y.arrow_mat(ai), x.arrow_mat(ai));
        for r in 0..y.dim(j) {
            for c in 0..x.dim(i) {
                let mut row = vec![Rational::default(); unknowns];
                // (Y_a φ_i)[r, c] = Σ_s Y_a[r, s] φ_i[s, c]
                for s in 0..y.dim(i) {
                    row[offs[i] + s * x.dim(i) + c] += ya[(r, s)].clone();
                }
                // (φ_j X_a)[r, c] = Σ_t φ_j[r, t] X_a[t, c]
                for t in 0..x.dim(j) {
                    row[offs[j] + r * x.dim(j) + t] -= xa[(t, c)].clone();
                }
                if row.iter().any(|e| *e != Rational::default()) {
                    rows.push(row);
                }
            }
        }
    }
    let kernel = QMatrix::from_rows(rows, unknowns).kernel_basis();
    Ok(kernel
        .columns()
        .into_iter()
        .map(|col| {
            let maps = (0..x.dims().len())
                .map(|v| {
                    let n = y.dim(v) * x.dim(v);
                    QMatrix::from_vec(y.dim(v), x.dim(v), col[offs[v]..offs[v] + n].to_vec())
                })
                .collect();
            Morphism {
                source: x.clone(),
                target: y.clone(),
                maps,
            }
        })
        .collect())
}

pub fn hom_dim(x: &Representation, y: &Representation) -> Result<usize> {
    Ok(hom_basis(x, y)?.len())
}

/// Matrix `M` with `basis_j · M = action · basis_i`, where both bases have
/// full column rank and the image of `action · basis_i` lies in span(`basis_j`).
fn induced(action: &QMatrix, basis_i: &QMatrix, basis_j: &QMatrix) -> QMatrix {
    basis_j
        .solve_matrix(&action.matmul(basis_i))
        .expect("subspace is stable under the arrow")
}

fn subrepresentation(x: &Representation, bases: Vec<QMatrix>) -> (Representation, Vec<QMatrix>) {
    let alg = x.algebra();
    let dims: Vec<usize> = bases.iter().map(|b| b.cols()).collect();
    let mats = alg
        .arrows()
        .iter()
        .enumerate()
        .map(|(ai, a)| induced(x.arrow_mat(ai), &bases[a.source], &bases[a.target]))
        .collect();
    let sub = Representation::new_unchecked(alg.clone(), dims, mats).expect("induced shapes");
    (sub, bases)
}

/// Inclusion of the subrepresentation spanned per vertex by the given column
/// bases, which must be stable under every arrow.
pub(crate) fn submodule_inclusion(x: &Representation, bases: Vec<QMatrix>) -> Morphism {
    let (sub, incl) = subrepresentation(x, bases);
    Morphism::from_parts(sub, x.clone(), incl)
}

pub(super) fn kernel(f: &Morphism) -> (Representation, Morphism) {
    let bases = f.maps.iter().map(|m| m.kernel_basis()).collect();
    let (k, incl) = subrepresentation(&f.source, bases);
    (k.clone(), Morphism::from_parts(k, f.source.clone(), incl))
}

pub(super) fn image(f: &Morphism) -> (Representation, Morphism) {
    let bases = f.maps.iter().map(|m| m.column_space()).collect();
    let (im, incl) = subrepresentation(&f.target, bases);
    (im.clone(), Morphism::from_parts(im, f.target.clone(), incl))
}

pub(super) fn cokernel(f: &Morphism) -> (Representation, Morphism) {
    let y = &f.target;
    let alg = y.algebra();
    let projs: Vec<QMatrix> = f.maps.iter().map(|m| m.cokernel_projection()).collect();
    let sections: Vec<QMatrix> = projs
        .iter()
        .map(|p| p.right_inverse().expect("cokernel projection has full row rank"))
        .collect();
    let dims: Vec<usize> = projs.iter().map(|p| p.rows()).collect();
    let mats = alg
        .arrows()
        .iter()
        .enumerate()
        .map(|(ai, a)| {
            projs[a.target]
                .matmul(y.arrow_mat(ai))
                .matmul(&sections[a.source])
        })
        .collect();
    let c = Representation::new_unchecked(alg.clone(), dims, mats).expect("cokernel shapes");
    (c.clone(), Morphism::from_parts(y.clone(), c, projs))
}

/// The map `coker(f) → Z` induced by `g: target(f) → Z` with `g ∘ f = 0`.
pub(crate) fn factor_through_cokernel(projection: &Morphism, g: &Morphism) -> Morphism {
    let maps = projection
        .maps
        .iter()
        .zip(&g.maps)
        .map(|(p, gv)| gv.matmul(&p.right_inverse().expect("surjective projection")))
        .collect();
    Morphism::from_parts(projection.target.clone(), g.target.clone(), maps)
}

/// `0 → X --f--> E --g--> Y → 0` is exact at every vertex.
pub fn is_short_exact(f: &Morphism, g: &Morphism) -> bool {
    if f.target.dims() != g.source.dims() {
        return false;
    }
    if !f.is_injective() || !g.is_surjective() {
        return false;
    }
    f.maps.iter().zip(&g.maps).all(|(fv, gv)| {
        gv.matmul(fv).is_zero() && fv.rank() + gv.rank() == gv.cols()
    })
}
