use super::*;
use crate::census::nakayama_census;
use crate::fixtures::{a2, a3, a3_rel, point};
use proptest::prelude::*;

fn closures(alg: &Arc<crate::algebra::Algebra>) -> Closures {
    Closures::new(Arc::new(nakayama_census(alg).unwrap()), Sampling::default()).unwrap()
}

fn set(c: &Closures, names: &[&str]) -> IdSet {
    parse_names(c.census(), names).unwrap()
}

#[test]
fn membership() {
    let c = closures(&a2());
    let census = c.census().clone();
    let s23 = set(&c, &["2", "3"]);
    assert!(c.contains(s23, &Representation::zero(census.algebra())).unwrap());
    let p2 = census.module(census.id_by_name("2/3").unwrap()).clone();
    assert!(!c.contains(s23, &p2).unwrap());
    let semi = Representation::semisimple(census.algebra(), vec![1, 1]);
    assert!(c.contains(s23, &semi).unwrap());
}

#[test]
fn closure_flags() {
    let c = closures(&a2());
    let f = c.closure_report(set(&c, &["2/3", "2"]));
    assert!(f.images && f.cokernels && f.extensions);
    let f = c.closure_report(set(&c, &["2/3", "3"]));
    assert!(!f.cokernels);
    let f = c.closure_report(IdSet::EMPTY);
    assert!(f.images && f.cokernels && f.kernels && f.extensions && f.quotients);
}

#[test]
fn ice_predicates() {
    let c = closures(&a2());
    assert!(c.is_ice(set(&c, &["2"])));
    assert!(c.is_ice(set(&c, &["2/3"])));
    let all = IdSet::all(3);
    assert!(c.is_ice(all) && c.is_torsion_class(all) && c.is_wide(all));
    // add{2, 3} is not extension closed: 2/3 is an extension of 2 by 3.
    assert!(!c.closure_report(set(&c, &["2", "3"])).extensions);
}

#[test]
fn closure_operator() {
    let c = closures(&a2());
    assert_eq!(c.ice_closure(IdSet::EMPTY), IdSet::EMPTY);
    assert_eq!(c.ice_closure(set(&c, &["2/3", "3"])), IdSet::all(3));
    let p = set(&c, &["2/3"]);
    assert_eq!(c.ice_closure(p), p);
    assert_eq!(c.format(IdSet::EMPTY), "add{0}");
    assert_eq!(c.format(set(&c, &["2/3", "2"])), "add{2, 2/3}");
}

#[test]
fn enumerations() {
    let c = closures(&a2());
    let all = c.enumerate_ice();
    assert_eq!(all.len(), 6);
    for s in &all {
        assert!(c.is_ice(*s));
    }
    assert_eq!(closures(&point()).enumerate_ice().len(), 2);

    let c = closures(&a3_rel());
    let got = c.enumerate_ice();
    let listed: [&[&str]; 10] = [
        &["2/3", "2", "3"],
        &["2/3", "2"],
        &["2"],
        &["3"],
        &[],
        &["2/3", "1", "1/2", "2", "3"],
        &["2/3", "1", "1/2", "2"],
        &["1/2", "1", "2"],
        &["1", "3"],
        &["1"],
    ];
    for names in listed {
        let s = set(&c, names);
        assert!(got.contains(&s), "{} missing", c.format(s));
    }
}

#[test]
fn torsion_and_wide_are_ice() {
    for alg in [a2(), a3(), a3_rel()] {
        let c = closures(&alg);
        let n = c.census().len();
        for bits in 0u128..1 << n {
            let s = IdSet::from_bits(bits);
            if c.is_torsion_class(s) || c.is_wide(s) {
                assert!(c.is_ice(s), "{}", c.format(s));
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]
    #[test]
    fn closure_is_a_closure_operator(a in 0u128..64, b in 0u128..64) {
        thread_local! {
            static C: Closures = closures(&a3());
        }
        C.with(|c| {
            let (a, b) = (IdSet::from_bits(a), IdSet::from_bits(b));
            let ca = c.ice_closure(a);
            prop_assert!(a.is_subset(ca));
            prop_assert_eq!(c.ice_closure(ca), ca);
            prop_assert!(c.is_ice(ca));
            let ab = a.union(b);
            prop_assert!(ca.is_subset(c.ice_closure(ab)));
            Ok(())
        })?;
    }
}
