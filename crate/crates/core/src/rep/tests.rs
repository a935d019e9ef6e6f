use super::*;
use crate::fixtures::{a2, a3, a3_rel, point};
use crate::q;

fn p2_s2_s3() -> (Representation, Representation, Representation) {
    let alg = a2();
    (
        Representation::projective(&alg, 0),
        Representation::simple(&alg, 0),
        Representation::simple(&alg, 1),
    )
}

#[test]
fn projectives_match_path_counts() {
    let alg = a2();
    let p2 = Representation::projective(&alg, 0);
    assert_eq!(p2.dims(), &[1, 1]);
    assert_eq!(*p2.arrow_mat(0), QMatrix::identity(1));
    assert_eq!(p2.name(), "2/3");
    assert_eq!(Representation::projective(&alg, 1), Representation::simple(&alg, 1));

    let rel = a3_rel();
    assert_eq!(Representation::projective(&rel, 0).dims(), &[1, 1, 0]);
    for alg in [a2(), a3(), a3_rel(), point()] {
        let total: usize = (0..alg.num_vertices())
            .map(|i| Representation::projective(&alg, i).total_dim())
            .sum();
        assert_eq!(total, alg.dimension());
        for i in 0..alg.num_vertices() {
            Representation::projective(&alg, i).check_relations().unwrap();
            Representation::simple(&alg, i).check_relations().unwrap();
        }
    }
}

#[test]
fn hom_dimensions() {
    let (p2, s2, s3) = p2_s2_s3();
    assert_eq!(hom_dim(&p2, &s2).unwrap(), 1);
    assert_eq!(hom_dim(&s2, &s3).unwrap(), 0);
    assert_eq!(hom_dim(&s3, &p2).unwrap(), 1);
    assert_eq!(hom_dim(&s2, &p2).unwrap(), 0);
    assert!(matches!(
        hom_basis(&p2, &Representation::simple(&a3(), 0)),
        Err(Error::AlgebraMismatch)
    ));
}

#[test]
fn kernels_images_cokernels() {
    let (p2, s2, s3) = p2_s2_s3();
    let incl = hom_basis(&s3, &p2).unwrap().remove(0);
    let (c, proj) = incl.cokernel();
    assert!(is_isomorphic(&c, &s2).unwrap());
    assert!(proj.is_surjective());
    assert!(incl.then(&proj).is_zero());

    let (k, _) = Morphism::identity(&p2).kernel();
    assert!(k.is_zero());

    let top = hom_basis(&p2, &s2).unwrap().remove(0);
    let (k, kincl) = top.kernel();
    assert!(is_isomorphic(&k, &s3).unwrap());
    assert!(kincl.is_injective());
    let (im, _) = top.image();
    assert!(is_isomorphic(&im, &s2).unwrap());
}

#[test]
fn endomorphism_radicals() {
    let (p2, s2, _) = p2_s2_s3();
    let alg = a2();
    let er = end_radical(&s2).unwrap();
    assert_eq!((er.end.len(), er.radical.len()), (1, 0));

    let x = Representation::sum(&[p2.clone(), s2.clone()], &alg);
    let er = end_radical(&x).unwrap();
    assert_eq!((er.end.len(), er.radical.len()), (3, 1));

    let y = Representation::sum(&[s2.clone(), s2.clone()], &alg);
    let er = end_radical(&y).unwrap();
    assert_eq!((er.end.len(), er.radical.len()), (4, 0));
}

#[test]
fn bricks() {
    let (p2, s2, s3) = p2_s2_s3();
    assert!(is_brick(&s2).unwrap());
    assert!(is_brick(&s3).unwrap());
    assert!(is_brick(&p2).unwrap());
    assert!(!is_brick(&Representation::sum(&[p2, s2], &a2())).unwrap());
}

#[test]
fn isomorphism_tests() {
    let (p2, s2, s3) = p2_s2_s3();
    let alg = a2();
    assert!(is_isomorphic(&p2, &p2).unwrap());
    let xy = Representation::sum(&[p2.clone(), s2.clone()], &alg);
    let yx = Representation::sum(&[s2.clone(), p2.clone()], &alg);
    assert!(is_isomorphic(&xy, &yx).unwrap());
    let semi = Representation::sum(&[s2.clone(), s3.clone()], &alg);
    assert!(!is_isomorphic(&p2, &semi).unwrap());
}

#[test]
fn decompositions() {
    let (p2, s2, s3) = p2_s2_s3();
    let alg = a2();
    assert_eq!(decompose(&s2).unwrap(), vec![s2.clone()]);

    let parts = decompose_grouped(&Representation::sum(&[p2.clone(), s2.clone()], &alg)).unwrap();
    assert_eq!(parts.len(), 2);
    assert!(parts.iter().all(|(_, m)| *m == 1));
    assert!(parts.iter().any(|(p, _)| is_isomorphic(p, &p2).unwrap()));
    assert!(parts.iter().any(|(p, _)| is_isomorphic(p, &s2).unwrap()));

    let parts = decompose_grouped(&Representation::sum(&[s3.clone(), s2.clone(), s3.clone()], &alg)).unwrap();
    assert_eq!(parts.len(), 2);
    let m3 = parts.iter().find(|(p, _)| is_isomorphic(p, &s3).unwrap()).unwrap().1;
    assert_eq!(m3, 2);

    // Fixpoint: every part decomposes to itself.
    let x = Representation::sum(&[p2.clone(), s2.clone(), p2.clone(), s3.clone()], &alg);
    for part in decompose(&x).unwrap() {
        assert_eq!(decompose(&part).unwrap().len(), 1);
    }
}

#[test]
fn decomposition_survives_base_change() {
    // A non-block-diagonal copy of 2/3 ⊕ 2 ⊕ 3.
    let (p2, s2, s3) = p2_s2_s3();
    let alg = a2();
    let x = Representation::sum(&[p2.clone(), s2.clone(), s3.clone()], &alg);
    let g2 = QMatrix::from_vec(2, 2, vec![q(1), q(1), q(1), q(2)]);
    let g3 = QMatrix::from_vec(2, 2, vec![q(2), q(-1), q(1), q(3)]);
    let y = x.transport(&[g2, g3]).unwrap();
    y.check_relations().unwrap();
    assert!(is_isomorphic(&x, &y).unwrap());
    let parts = decompose_grouped(&y).unwrap();
    assert_eq!(parts.len(), 3);
    assert_eq!(hom_dim(&y, &y).unwrap(), hom_dim(&x, &x).unwrap());
}

#[test]
fn idempotent_lift_converges() {
    let (p2, s2, _) = p2_s2_s3();
    let alg = a2();
    let x = Representation::sum(&[p2, s2], &alg);
    let er = end_radical(&x).unwrap();
    let e = splitting_idempotent(&x, &er).unwrap();
    assert_eq!(e.then(&e), e);
    // Perturb by the radical and lift back.
    let perturbed = e.add(&er.radical[0]);
    let (lifted, rounds) = lift_idempotent(&perturbed).unwrap();
    assert_eq!(lifted.then(&lifted), lifted);
    assert!(rounds <= 2, "nilpotency index 2 needs at most one round, took {rounds}");
}

#[test]
fn short_exact_sequences() {
    let (p2, s2, s3) = p2_s2_s3();
    let incl = hom_basis(&s3, &p2).unwrap().remove(0);
    let proj = hom_basis(&p2, &s2).unwrap().remove(0);
    assert!(is_short_exact(&incl, &proj));
    assert!(!is_short_exact(&Morphism::zero(&s3, &p2), &proj));
}

#[test]
fn literal_round_trip() {
    let alg = a3();
    let text = r#"{"dims": {"1": 1, "2": 1}, "arrows": {"alpha": [["1"]]}}"#;
    let x = Representation::from_literal(&alg, &ModuleLiteral::from_json(text).unwrap()).unwrap();
    assert_eq!(x.name(), "1/2");
    let back = Representation::from_literal(&alg, &x.to_literal()).unwrap();
    assert_eq!(back, x);

    let bad = r#"{"dims": {"1": 1, "2": 1, "3": 1}, "arrows": {"alpha": [["1"]], "beta": [["1"]]}}"#;
    let rel = a3_rel();
    assert!(matches!(
        Representation::from_literal(&rel, &ModuleLiteral::from_json(bad).unwrap()),
        Err(Error::InvalidModule(_))
    ));
}

#[test]
fn exactness_bookkeeping_on_random_morphisms() {
    use rand::{Rng, SeedableRng};
    let alg = a3();
    let mods: Vec<Representation> = (0..3)
        .map(|i| Representation::projective(&alg, i))
        .chain((0..3).map(|i| Representation::simple(&alg, i)))
        .collect();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    for _ in 0..200 {
        let x = Representation::sum(&[mods[rng.gen_range(0..6)].clone(), mods[rng.gen_range(0..6)].clone()], &alg);
        let y = Representation::sum(&[mods[rng.gen_range(0..6)].clone(), mods[rng.gen_range(0..6)].clone()], &alg);
        let basis = hom_basis(&x, &y).unwrap();
        let coeffs: Vec<Rational> = basis.iter().map(|_| q(rng.gen_range(-3..=3))).collect();
        let f = Morphism::combination(&x, &y, &basis, &coeffs);
        let (k, _) = f.kernel();
        let (im, _) = f.image();
        let (c, _) = f.cokernel();
        for v in 0..alg.num_vertices() {
            assert_eq!(k.dim(v) + im.dim(v), x.dim(v));
            assert_eq!(im.dim(v) + c.dim(v), y.dim(v));
        }
        k.check_relations().unwrap();
        c.check_relations().unwrap();
    }
}
