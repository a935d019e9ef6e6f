//! Published lists for the worked examples and tables, and their comparison
//! against computed enumerations.

use std::collections::BTreeSet;
use std::sync::Arc;

use serde::Serialize;

use crate::algebra::{Algebra, AlgebraSpec};
use crate::bricks::format_bricks;
use crate::census::Census;
use crate::error::{Error, Result};
use crate::fixtures;
use crate::opext::{transfer_for, ExtensionOptions, Transfer};
use crate::rep::Representation;
use crate::subcat::{format_add, parse_names, IdSet, Sampling};
use crate::wtau::{format_sum, wtau_table, TableLine};

pub const CASES: [&str; 5] = ["ex-3.2-1", "ex-3.2-2", "ex-3.7", "table-1", "table-2"];

type Sets = &'static [&'static [&'static str]];

const ICE_A: Sets = &[&["2/3", "2", "3"], &["2/3", "2"], &["2"], &["3"], &[]];

const ICE_B_PROJECTIVE: Sets = &[
    &["2/3", "2", "3"],
    &["2/3", "2"],
    &["2"],
    &["3"],
    &[],
    &["1/2/3", "1", "2/3", "1/2", "2", "3"],
    &["1/2/3", "1", "2/3", "1/2", "2"],
    &["1/2", "1", "2"],
    &["1", "3"],
    &["1"],
];

const ICE_B_SIMPLE: Sets = &[
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

const CENSUS_423: &[&str] = &["4", "2", "3", "4/2", "2/3", "4/2/3"];

const EBRICK_A: Sets = &[
    &["4"],
    &["4", "2"],
    &["4", "3"],
    &["4", "4/2"],
    &["4", "2/3"],
    &["4", "4/2/3"],
    &["4", "2", "3"],
    &["4", "2", "2/3"],
    &["4", "2", "4/2/3"],
    &["4", "3", "4/2"],
    &["4", "4/2", "4/2/3"],
    &["2"],
    &["2", "3"],
    &["2", "2/3"],
    &["2", "4/2/3"],
    &["2", "4/2/3", "4/2"],
    &["3"],
    &["3", "4/2"],
    &["4/2", "4/2/3"],
    &["2/3"],
    &["4/2/3"],
    &[],
];

/// The second half of the listed B-sets adds the simple `1` to each A-set.
fn ebrick_b() -> Vec<Vec<&'static str>> {
    let plain = EBRICK_A.iter().map(|s| s.to_vec());
    let primed = EBRICK_A.iter().map(|s| {
        let mut v = s.to_vec();
        v.push("1");
        v
    });
    plain.chain(primed).collect()
}

/// `mod` stands for every indecomposable.
type Row = [&'static [&'static str]; 4];

/// w τ-tilt A, ice A, ice B, w τ-tilt B.
const TABLE_1: [Row; 6] = [
    [&[], &[], &["1"], &["1"]],
    [&["2"], &["2"], &["1/2", "1", "2"], &["2", "1/2"]],
    [&["3"], &["3"], &["1", "3"], &["1", "3"]],
    [&["2/3"], &["2/3"], &["1/2/3", "1", "2/3"], &["2/3", "1/2/3"]],
    [&["2/3", "2"], &["2/3", "2"], &["1/2/3", "1", "2/3", "1/2", "2"], &["1/2/3", "2/3", "2"]],
    [&["2/3", "3"], &["2/3", "3", "2"], &["mod"], &["1/2/3", "2/3", "3"]],
];

/// w τ-tilt A, ebrick A, ebrick B, w τ-tilt B.
const TABLE_2: [Row; 6] = [
    [&[], &[], &["1"], &["1"]],
    [&["2"], &["2"], &["1", "2"], &["2", "1/2"]],
    [&["3"], &["3"], &["1", "3"], &["1", "3"]],
    [&["2/3"], &["2/3"], &["1", "2/3"], &["2/3", "1/2/3"]],
    [&["2/3", "2"], &["2/3", "2"], &["1", "2/3", "2"], &["1/2/3", "2/3", "2"]],
    [&["2/3", "3"], &["2", "3"], &["1", "2", "3"], &["1/2/3", "2/3", "3"]],
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Warn,
    Fail,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub detail: String,
    /// Listed but not computed.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub missing: Vec<String>,
    /// Computed but not listed.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub unexpected: Vec<String>,
}

impl Check {
    fn flag(name: &str, ok: bool, detail: String) -> Check {
        Check {
            name: name.into(),
            status: if ok { Status::Pass } else { Status::Fail },
            detail,
            missing: Vec::new(),
            unexpected: Vec::new(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CaseReport {
    pub case: String,
    pub status: Status,
    pub checks: Vec<Check>,
}

impl CaseReport {
    fn new(case: &str, checks: Vec<Check>) -> Self {
        let status = checks.iter().map(|c| c.status).max().unwrap_or(Status::Pass);
        CaseReport {
            case: case.into(),
            status,
            checks,
        }
    }
}

fn sets(census: &Census, lists: &[&[&str]]) -> Result<Vec<IdSet>> {
    lists.iter().map(|names| set(census, names)).collect()
}

fn set(census: &Census, names: &[&str]) -> Result<IdSet> {
    if names == ["mod"] {
        Ok(IdSet::all(census.len()))
    } else {
        parse_names(census, names)
    }
}

/// Listed versus computed collections of sets. A list that is a strict
/// subset of the enumeration warns.
fn compare(name: &str, listed: &[IdSet], computed: &[IdSet], show: impl Fn(IdSet) -> String) -> Check {
    let l: BTreeSet<IdSet> = listed.iter().copied().collect();
    let c: BTreeSet<IdSet> = computed.iter().copied().collect();
    let sorted = |s: Vec<IdSet>| {
        let mut s = s;
        s.sort_by(IdSet::canonical_cmp);
        s.into_iter().map(&show).collect::<Vec<_>>()
    };
    let missing = sorted(l.difference(&c).copied().collect());
    let unexpected = sorted(c.difference(&l).copied().collect());
    let status = match (missing.is_empty(), unexpected.is_empty()) {
        (true, true) => Status::Pass,
        (true, false) => Status::Warn,
        _ => Status::Fail,
    };
    let detail = match status {
        Status::Pass => format!("{} listed, {} computed", l.len(), c.len()),
        Status::Warn => format!(
            "every listed set is computed; the list has {} entries, the enumeration {} (the list is incomplete)",
            l.len(),
            c.len()
        ),
        Status::Fail => format!("{} listed, {} computed, {} missing", l.len(), c.len(), missing.len()),
    };
    Check {
        name: name.into(),
        status,
        detail,
        missing,
        unexpected,
    }
}

fn transfer(spec: AlgebraSpec, vertex: &str, projective: bool, sampling: Sampling) -> Result<Transfer> {
    let a: Arc<Algebra> = Algebra::load(&spec)?;
    let v = a.vertex_index(vertex)?;
    let m = if projective {
        Representation::projective(&a, v)
    } else {
        Representation::simple(&a, v)
    };
    transfer_for(&m, &ExtensionOptions::default(), sampling)
}

pub fn verify(case: &str, sampling: Sampling) -> Result<CaseReport> {
    let checks = match case {
        "ex-3.2-1" => ice_example(&transfer(fixtures::a2_spec(), "2", true, sampling)?, ICE_B_PROJECTIVE)?,
        "ex-3.2-2" => ice_example(&transfer(fixtures::a2_spec(), "2", false, sampling)?, ICE_B_SIMPLE)?,
        "ex-3.7" => ebrick_example(&transfer(fixtures::a3_423_spec(), "2", true, sampling)?)?,
        "table-1" => table(&transfer(fixtures::a2_spec(), "2", true, sampling)?, &TABLE_1, false)?,
        "table-2" => table(&transfer(fixtures::a2_spec(), "2", true, sampling)?, &TABLE_2, true)?,
        other => {
            return Err(Error::Parse(format!(
                "unknown case `{other}`; known cases: {}",
                CASES.join(", ")
            )))
        }
    };
    Ok(CaseReport::new(case, checks))
}

fn census_check(census: &Census, listed: &[&str]) -> Check {
    let mut got = census.names();
    got.sort();
    let mut want: Vec<String> = listed.iter().map(|s| s.to_string()).collect();
    want.sort();
    Check::flag(
        "indecomposables of A",
        got == want,
        format!("computed {}", got.join(", ")),
    )
}

fn ice_example(t: &Transfer, listed_b: Sets) -> Result<Vec<Check>> {
    let (ca, cb) = (t.census_a(), t.census_b());
    let (cla, clb) = (t.closures_a()?, t.closures_b()?);
    let mut checks = vec![census_check(ca, &["2/3", "2", "3"])];

    let paper_a = sets(ca, ICE_A)?;
    let bad: Vec<String> = paper_a.iter().filter(|s| !cla.is_ice(**s)).map(|s| cla.format(*s)).collect();
    checks.push(Check::flag("listed A-sets are ICE-closed", bad.is_empty(), bad.join("; ")));
    let all_a = cla.enumerate_ice();
    checks.push(compare("ICE-closed subcategories of A", &paper_a, &all_a, |s| cla.format(s)));

    let paper_b = sets(cb, listed_b)?;
    let bad: Vec<String> = paper_b.iter().filter(|s| !clb.is_ice(**s)).map(|s| clb.format(*s)).collect();
    checks.push(Check::flag("listed B-sets are ICE-closed", bad.is_empty(), bad.join("; ")));
    let mut images = Vec::new();
    for c in &paper_a {
        images.push(t.thm31_t1(*c)?);
        images.push(t.thm31_t2(*c)?);
    }
    let mut check = compare("T1/T2 images of the listed A-sets", &paper_b, &images, |s| clb.format(s));
    if check.status == Status::Warn {
        check.status = Status::Fail;
    }
    checks.push(check);
    Ok(checks)
}

fn ebrick_example(t: &Transfer) -> Result<Vec<Check>> {
    let (ca, cb) = (t.census_a(), t.census_b());
    let (ba, bb) = (t.bricks_a()?, t.bricks_b()?);
    let mut checks = vec![census_check(ca, CENSUS_423)];
    checks.push(Check::flag(
        "indecomposables of B",
        cb.len() == 12,
        format!("{} computed, 12 positive roots of D4", cb.len()),
    ));

    let paper_a = sets(ca, EBRICK_A)?;
    let mut bad = Vec::new();
    for s in &paper_a {
        if !ba.is_epibrick(*s)? {
            bad.push(format_bricks(ca, *s));
        }
    }
    checks.push(Check::flag("listed A-sets are epibricks", bad.is_empty(), bad.join("; ")));
    let all_a = ba.enumerate_ebricks()?;
    let mut check = compare("epibricks of A", &paper_a, &all_a, |s| format_bricks(ca, s));
    if check.status == Status::Warn {
        check.status = Status::Fail;
    }
    checks.push(check);

    let listed_b = ebrick_b();
    let refs: Vec<&[&str]> = listed_b.iter().map(Vec::as_slice).collect();
    let paper_b = sets(cb, &refs)?;
    let mut bad = Vec::new();
    for s in &paper_b {
        if !bb.is_epibrick(*s)? {
            bad.push(format_bricks(cb, *s));
        }
    }
    checks.push(Check::flag("listed B-sets are epibricks", bad.is_empty(), bad.join("; ")));
    let mut images = Vec::new();
    for s in &all_a {
        images.push(t.thm35_s(*s)?);
        images.push(t.thm35_sprime(*s)?);
    }
    let mut check = compare("S/S' images of the epibricks of A", &paper_b, &images, |s| format_bricks(cb, s));
    if check.status == Status::Warn {
        check.status = Status::Fail;
    }
    checks.push(check);
    Ok(checks)
}

fn table(t: &Transfer, rows: &[Row; 6], bricks: bool) -> Result<Vec<Check>> {
    let (ca, cb) = (t.census_a(), t.census_b());
    let computed = wtau_table(t, false)?;
    let mut checks = vec![Check::flag(
        "row count",
        computed.lines.len() == rows.len(),
        format!("{} computed", computed.lines.len()),
    )];
    for (k, row) in rows.iter().enumerate() {
        let [wa, xa, xb, wb] = *row;
        let (wa, xa) = (set(ca, wa)?, set(ca, xa)?);
        let (xb, wb) = (set(cb, xb)?, set(cb, wb)?);
        let line = computed
            .lines
            .iter()
            .find(|l| if bricks { l.a.ebrick == xa } else { l.a.ice == xa });
        let name = format!("row {}", k + 1);
        let Some(line) = line else {
            checks.push(Check::flag(&name, false, "no computed row has this A column".into()));
            continue;
        };
        let diffs = row_diffs(line, ca, cb, wa, xb, wb, bricks);
        checks.push(Check::flag(&name, diffs.is_empty(), diffs.join("; ")));
    }
    Ok(checks)
}

fn row_diffs(line: &TableLine, ca: &Census, cb: &Census, wa: IdSet, xb: IdSet, wb: IdSet, bricks: bool) -> Vec<String> {
    let mut out = Vec::new();
    if line.a.module != wa {
        out.push(format!("w τ-tilt A: computed {}", format_sum(ca, line.a.module)));
    }
    let (b_col, show) = if bricks {
        (line.route2.ebrick, format_bricks(cb, line.route2.ebrick))
    } else {
        (line.route1.ice, format_add(cb, line.route1.ice))
    };
    if b_col != xb {
        out.push(format!("B column: computed {show}"));
    }
    for (route, row) in [("route 1", &line.route1), ("route 2", &line.route2)] {
        if row.module != wb {
            out.push(format!("w τ-tilt B ({route}): computed {}", format_sum(cb, row.module)));
        }
    }
    out
}

#[cfg(test)]
mod tests;
