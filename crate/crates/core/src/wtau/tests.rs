use super::*;
use crate::census::nakayama_census;
use crate::fixtures::{a2, a3, a3_rel, d4};
use crate::opext::{transfer_for, ExtensionOptions};
use crate::subcat::{parse_names, Sampling};
use std::sync::Arc;

fn closures(alg: &Arc<crate::algebra::Algebra>) -> Closures {
    Closures::new(Arc::new(nakayama_census(alg).unwrap()), Sampling::default()).unwrap()
}

#[test]
fn operations_over_a2() {
    let cl = closures(&a2());
    let (b, warn) = Bijections::new(&cl, false).unwrap();
    assert!(warn.is_none());
    let s = |n: &[&str]| parse_names(b.census(), n).unwrap();
    assert_eq!(b.cok(s(&["2/3", "2"])), s(&["2/3", "2"]));
    assert_eq!(b.cok(IdSet::EMPTY), IdSet::EMPTY);
    assert_eq!(b.cok(s(&["2/3", "3"])), s(&["2/3", "3", "2"]));
    assert_eq!(b.filt(s(&["2", "3"])), IdSet::all(3));
    assert_eq!(b.filt(IdSet::EMPTY), IdSet::EMPTY);
    assert_eq!(b.filt(s(&["2/3", "2"])), s(&["2/3", "2"]));
    assert_eq!(b.sim(IdSet::all(3)).unwrap(), s(&["2", "3"]));
    assert_eq!(b.sim(s(&["2/3"])).unwrap(), s(&["2/3"]));
    assert_eq!(b.sim(IdSet::EMPTY).unwrap(), IdSet::EMPTY);
    assert_eq!(b.ext_projectives(IdSet::all(3)), s(&["2/3", "3"]));
    assert_eq!(b.ext_projectives(s(&["2"])), s(&["2"]));
    assert!(b.ext_projective_module(IdSet::EMPTY).is_zero());
    assert_eq!(format_sum(b.census(), s(&["2/3", "3"])), "3 ⊕ 2/3");
    assert_eq!(format_sum(b.census(), IdSet::EMPTY), "0");
}

#[test]
fn gate() {
    let c = Arc::new(crate::census::Census::build(&d4(), Default::default()).unwrap());
    let cl = Closures::new(c, Sampling::default()).unwrap();
    assert!(matches!(Bijections::new(&cl, false), Err(Error::NotNakayama(_))));
    let (_, warn) = Bijections::new(&cl, true).unwrap();
    assert!(warn.is_some());
}

#[test]
fn tables_over_a2() {
    let a = a2();
    let t = transfer_for(&Representation::projective(&a, 0), &ExtensionOptions::default(), Sampling::default()).unwrap();
    let table = wtau_table(&t, false).unwrap();
    assert!(table.warnings.is_empty());
    assert_eq!(table.lines.len(), 6);
    let (ca, cb) = (t.census_a().clone(), t.census_b().clone());
    let find = |ice: &[&str]| {
        let c = parse_names(&ca, ice).unwrap();
        *table.lines.iter().find(|l| l.a.ice == c).unwrap()
    };
    let sb = |n: &[&str]| parse_names(&cb, n).unwrap();

    let l = find(&["2"]);
    assert_eq!(l.route1.ice, sb(&["1/2", "1", "2"]));
    assert_eq!(l.route1.module, sb(&["2", "1/2"]));
    let l = find(&[]);
    assert_eq!(l.route1.ice, sb(&["1"]));
    assert_eq!(l.route1.module, sb(&["1"]));
    let l = find(&["2/3"]);
    assert_eq!(l.route2.ebrick, sb(&["1", "2/3"]));
    assert_eq!(l.route2.module, sb(&["2/3", "1/2/3"]));
    for l in &table.lines {
        assert!(l.routes_agree(), "{:?}", l);
        assert!(l.a_round_trip);
        let bb = Bijections::new(t.closures_b().unwrap(), false).unwrap().0;
        assert!(l.route1.module.is_subset(l.route1.ice));
        assert_eq!(bb.ext_projectives(l.route1.ice), l.route1.module);
    }
}

#[test]
fn round_trips_on_nakayama() {
    for alg in [a2(), a3(), a3_rel()] {
        let cl = closures(&alg);
        let (b, _) = Bijections::new(&cl, false).unwrap();
        let bricks = crate::bricks::BrickTable::new(cl.census().clone(), Default::default()).unwrap();
        let r = round_trips(&b, &cl.enumerate_ice(), &bricks.enumerate_ebricks().unwrap()).unwrap();
        assert!(r.ok(), "{r:?}");
        assert_eq!(r.ice_sets, r.ebrick_sets);
    }
}
