use super::*;

fn run(case: &str) -> CaseReport {
    verify(case, Sampling::default()).unwrap()
}

#[test]
fn ice_examples_warn_on_the_short_list() {
    for case in ["ex-3.2-1", "ex-3.2-2"] {
        let r = run(case);
        assert_eq!(r.status, Status::Warn, "{r:#?}");
        let count = r.checks.iter().find(|c| c.name == "ICE-closed subcategories of A").unwrap();
        assert_eq!(count.status, Status::Warn);
        assert_eq!(count.unexpected, ["add{2/3}"]);
        assert!(r.checks.iter().filter(|c| c.status != Status::Warn).all(|c| c.status == Status::Pass));
    }
}

#[test]
fn tables_pass() {
    for case in ["table-1", "table-2"] {
        let r = run(case);
        assert_eq!(r.status, Status::Pass, "{r:#?}");
        assert_eq!(r.checks.len(), 7);
    }
}

#[test]
fn ebrick_example_reports_the_listing_error() {
    let r = run("ex-3.7");
    assert_eq!(r.status, Status::Fail);
    let by_name = |n: &str| r.checks.iter().find(|c| c.name == n).unwrap();
    assert_eq!(by_name("indecomposables of A").status, Status::Pass);
    assert_eq!(by_name("indecomposables of B").status, Status::Pass);
    let eq = by_name("epibricks of A");
    assert_eq!(eq.missing, ["{2, 4/2, 4/2/3}"]);
    assert_eq!(eq.unexpected, ["{4/2}"]);
    let imgs = by_name("S/S' images of the epibricks of A");
    assert_eq!(imgs.missing.len(), 2);
    assert_eq!(imgs.unexpected.len(), 2);
    assert!(by_name("listed B-sets are epibricks").detail.contains("4/2"));
}

#[test]
fn unknown_case() {
    assert!(matches!(verify("ex-9", Sampling::default()), Err(Error::Parse(_))));
}

#[test]
fn report_serializes() {
    let json = serde_json::to_string(&run("table-1")).unwrap();
    assert!(json.contains("\"status\":\"PASS\""));
}
