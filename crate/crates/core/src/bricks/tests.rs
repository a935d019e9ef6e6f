use super::*;
use crate::census::nakayama_census;
use crate::fixtures::{a2, a3, a3_423, a3_rel, point};
use crate::subcat::parse_names;

fn table(alg: &Arc<crate::algebra::Algebra>) -> BrickTable {
    BrickTable::new(Arc::new(nakayama_census(alg).unwrap()), Grid::default()).unwrap()
}

fn set(t: &BrickTable, names: &[&str]) -> IdSet {
    parse_names(t.census(), names).unwrap()
}

fn id(t: &BrickTable, name: &str) -> usize {
    t.census().id_by_name(name).unwrap()
}

#[test]
fn pair_classes() {
    let t = table(&a3_423());
    let kind = |a: &str, b: &str| t.pair(id(&t, a), id(&t, b)).unwrap().kind;
    assert_eq!(kind("4", "2"), PairKind::NoNonzeroMaps);
    // The top of 4/2 is 4: the projection goes to 4, and nothing nonzero reaches 2.
    assert_eq!(kind("4/2", "4"), PairKind::AllSurjective);
    assert_eq!(kind("4/2", "2"), PairKind::NoNonzeroMaps);
    assert_eq!(kind("2", "4/2"), PairKind::AllInjective);
    assert_eq!(kind("4/2", "4/2"), PairKind::AllIsomorphisms);
    assert!(!t.is_epibrick(set(&t, &["2", "4/2"])).unwrap());
    assert!(t.is_epibrick(set(&t, &["4", "2"])).unwrap());
}

#[test]
fn predicates() {
    let t = table(&a2());
    let p = set(&t, &["2/3"]);
    assert!(t.is_epibrick(p).unwrap() && t.is_monobrick(p).unwrap() && t.is_semibrick(p).unwrap());
    let s = set(&t, &["2/3", "2"]);
    assert!(t.is_epibrick(s).unwrap());
    assert!(!t.is_monobrick(s).unwrap());
    assert_eq!(t.format(IdSet::EMPTY), "{0}");
}

#[test]
fn enumerations() {
    let t = table(&a2());
    let e = t.enumerate_ebricks().unwrap();
    let expect: Vec<IdSet> = [&[][..], &["2"], &["3"], &["2/3"], &["2", "3"], &["2", "2/3"]]
        .iter()
        .map(|n| set(&t, n))
        .collect();
    assert_eq!(e.len(), 6);
    for s in expect {
        assert!(e.contains(&s));
    }
    assert_eq!(table(&point()).enumerate_ebricks().unwrap().len(), 2);
    assert_eq!(table(&a3_423()).enumerate_ebricks().unwrap().len(), 22);
}

#[test]
fn brick_set_properties() {
    for alg in [a2(), a3(), a3_rel(), a3_423()] {
        let t = table(&alg);
        for s in t.enumerate_semibricks().unwrap() {
            assert!(t.is_monobrick(s).unwrap() && t.is_epibrick(s).unwrap());
        }
        let e = t.enumerate_ebricks().unwrap();
        for s in &e {
            for sub in 0u128..1 << s.len() {
                let ids = s.ids();
                let subset: IdSet = (0..ids.len()).filter(|k| sub >> k & 1 == 1).map(|k| ids[k]).collect();
                assert!(e.contains(&subset));
            }
        }
        for b in t.bricks().iter() {
            assert_eq!(t.pair(b, b).unwrap().kind, PairKind::AllIsomorphisms);
        }
    }
}

#[test]
fn brick_ids_rejects_non_bricks() {
    let t = table(&a2());
    let c = t.census();
    let x = c.sum_of(&[0, 1]);
    assert!(brick_ids(c, &[x]).is_err());
    assert_eq!(brick_ids(c, &[c.module(2).clone()]).unwrap(), IdSet::singleton(2));
}
