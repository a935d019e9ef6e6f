//! Acceptance suite: one line per criterion, `PASS` or `FAIL`, with the
//! time taken against its budget. All comparisons are exact.

use std::collections::HashSet;
use std::sync::{Arc, Mutex};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use icebrick::algebra::Algebra;
use icebrick::bricks::BrickTable;
use icebrick::census::{Census, KnitOptions};
use icebrick::fixtures;
use icebrick::golden::{self, CaseReport, Status};
use icebrick::opext::{transfer_for, ExtensionOptions, GrowthKind, OnePointExtension, Transfer};
use icebrick::q;
use icebrick::rep::{hom_basis, hom_dim, Morphism, Representation};
use icebrick::subcat::{Closures, IdSet, Sampling};
use icebrick::wtau::{round_trips, Bijections};

const CENSUS_BUDGET: Duration = Duration::from_secs(1);
const EX_3_2_BUDGET: Duration = Duration::from_secs(5);
const EX_3_7_BUDGET: Duration = Duration::from_secs(10);
const GROWTH_BUDGET: Duration = Duration::from_secs(30);
const TABLE_BUDGET: Duration = Duration::from_secs(5);
const PROPERTY_BUDGET: Duration = Duration::from_secs(300);
const RANDOM_NAKAYAMA: usize = 50;
const RANDOM_MORPHISMS: usize = 1000;
const SEED: u64 = 0x1ce;

/// Criteria run one at a time so the timings do not overlap.
static SERIAL: Mutex<()> = Mutex::new(());

struct Verdict {
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Verdict {
    fn new() -> Self {
        Verdict {
            failures: Vec::new(),
            notes: Vec::new(),
        }
    }

    fn require(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.failures.push(what.into());
        }
    }
}

fn criterion(number: u32, title: &str, budget: Duration, body: impl FnOnce(&mut Verdict)) {
    let _guard = SERIAL.lock().unwrap_or_else(|e| e.into_inner());
    let mut v = Verdict::new();
    let start = Instant::now();
    body(&mut v);
    let took = start.elapsed();
    v.require(took <= budget, format!("took {took:.2?}, budget {budget:?}"));
    let status = if v.failures.is_empty() { "PASS" } else { "FAIL" };
    let mut line = format!(
        "criterion {number}: {status} {title} [exact; {:.2}s of {}s]",
        took.as_secs_f64(),
        budget.as_secs()
    );
    for n in &v.notes {
        line.push_str(&format!("; {n}"));
    }
    for f in &v.failures {
        line.push_str(&format!("; FAILED: {f}"));
    }
    println!("{line}");
    assert!(v.failures.is_empty(), "{line}");
}

/// Positive roots of a loopless quiver, by closing the simple roots under
/// reflections.
fn positive_roots(alg: &Algebra) -> HashSet<Vec<i64>> {
    let n = alg.num_vertices();
    let mut adj = vec![vec![0i64; n]; n];
    for a in alg.arrows() {
        adj[a.source][a.target] += 1;
        adj[a.target][a.source] += 1;
    }
    let mut roots = HashSet::new();
    let mut queue: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    while let Some(r) = queue.pop() {
        if !roots.insert(r.clone()) {
            continue;
        }
        for i in 0..n {
            let pairing = 2 * r[i] - (0..n).map(|j| adj[i][j] * r[j]).sum::<i64>();
            let mut s = r.clone();
            s[i] -= pairing;
            if s.iter().all(|&c| c >= 0) && s.iter().any(|&c| c > 0) {
                queue.push(s);
            }
        }
        assert!(roots.len() < 1000);
    }
    roots
}

#[test]
fn criterion_1_census_counts() {
    criterion(1, "census counts", CENSUS_BUDGET * 5, |v| {
        let alt = Algebra::load(&fixtures::d4_alt_spec()).unwrap();
        let d4 = fixtures::d4();
        let cases: [(&str, Arc<Algebra>, usize); 5] = [
            ("A2", fixtures::a2(), 3),
            ("A3", fixtures::a3(), 6),
            ("A3 with relation", fixtures::a3_rel(), 5),
            ("D4 (extension quiver)", d4.clone(), 12),
            ("D4 (listed orientation)", alt.clone(), 12),
        ];
        for (name, alg, expect) in cases {
            if name.starts_with("D4") {
                v.require(positive_roots(&alg).len() == expect, format!("{name}: root oracle disagrees"));
            }
            let t = Instant::now();
            let c = Census::build(&alg, KnitOptions::default()).unwrap();
            let took = t.elapsed();
            v.require(c.len() == expect, format!("{name}: {} indecomposables, expected {expect}", c.len()));
            v.require(took <= CENSUS_BUDGET, format!("{name}: census took {took:.2?}"));
            v.notes.push(format!("{name} {} in {:.0}ms", c.len(), took.as_secs_f64() * 1e3));
        }
    });
}

fn check_ice_example(v: &mut Verdict, case: &str) {
    let r: CaseReport = golden::verify(case, Sampling::default()).unwrap();
    for c in &r.checks {
        if c.name == "ICE-closed subcategories of A" {
            v.require(
                c.status == Status::Warn && c.unexpected == ["add{2/3}"] && c.missing.is_empty(),
                format!("{}: {:?} {}", c.name, c.status, c.detail),
            );
            v.notes.push(format!("listed 5 ⊆ computed 6, extra {}", c.unexpected.join(", ")));
        } else {
            v.require(c.status == Status::Pass, format!("{}: {}", c.name, c.detail));
        }
    }
}

#[test]
fn criterion_2_ice_example_path_algebra() {
    criterion(2, "ICE transfer over 1→2→3", EX_3_2_BUDGET, |v| check_ice_example(v, "ex-3.2-1"));
}

#[test]
fn criterion_3_ice_example_with_relation() {
    criterion(3, "ICE transfer over 1→2→3 with αβ = 0", EX_3_2_BUDGET, |v| check_ice_example(v, "ex-3.2-2"));
}

#[test]
fn criterion_4_epibrick_example() {
    criterion(4, "epibricks over 4→2→3 and their images", EX_3_7_BUDGET, |v| {
        let r = golden::verify("ex-3.7", Sampling::default()).unwrap();
        for c in &r.checks {
            let mut what = format!("{}: {}", c.name, c.detail);
            if !c.missing.is_empty() {
                what.push_str(&format!(" (listed only: {})", c.missing.join(" ")));
            }
            if !c.unexpected.is_empty() {
                what.push_str(&format!(" (computed only: {})", c.unexpected.join(" ")));
            }
            v.require(c.status == Status::Pass, what);
        }
    });
}

fn example_transfers() -> Vec<(&'static str, Transfer)> {
    let a2 = fixtures::a2();
    let a423 = fixtures::a3_423();
    let p = |a: &Arc<Algebra>| Representation::projective(a, a.vertex_index("2").unwrap());
    let opts = ExtensionOptions::default();
    vec![
        ("1→2→3", transfer_for(&p(&a2), &opts, Sampling::default()).unwrap()),
        ("D4", transfer_for(&p(&a423), &opts, Sampling::default()).unwrap()),
    ]
}

#[test]
fn criterion_5_growth() {
    criterion(5, "m ≥ 2n with 2n distinct images", GROWTH_BUDGET, |v| {
        for (name, t) in example_transfers() {
            for kind in [GrowthKind::Ice, GrowthKind::Ebrick] {
                let g = t.growth_report(kind).unwrap();
                v.require(
                    g.images == 2 * g.n && g.images_distinct && g.images_valid && g.bound_holds,
                    format!("{name} {kind:?}: {g:?}"),
                );
                v.notes.push(format!("{name} {kind:?} n={} m={}", g.n, g.m));
            }
        }
    });
}

#[test]
fn criterion_6_tables() {
    criterion(6, "wide τ-tilting tables", TABLE_BUDGET, |v| {
        for case in ["table-1", "table-2"] {
            let r = golden::verify(case, Sampling::default()).unwrap();
            for c in &r.checks {
                v.require(c.status == Status::Pass, format!("{case} {}: {}", c.name, c.detail));
            }
            v.notes.push(format!("{case} {} rows", r.checks.len() - 1));
        }
    });
}

fn random_kupisch(rng: &mut impl Rng, n: usize, cyclic: bool) -> Vec<usize> {
    loop {
        let c: Vec<usize> = (0..n)
            .map(|i| {
                if cyclic {
                    rng.gen_range(2..=4)
                } else if i + 1 == n {
                    1
                } else {
                    rng.gen_range(2..=(n - i).min(4))
                }
            })
            .collect();
        if (0..n).all(|i| (!cyclic && i + 1 == n) || c[(i + 1) % n] + 1 >= c[i]) {
            return c;
        }
    }
}

fn random_morphism(rng: &mut ChaCha8Rng, c: &Census) -> Morphism {
    let xs: Vec<usize> = (0..rng.gen_range(1..=2)).map(|_| rng.gen_range(0..c.len())).collect();
    let ys: Vec<usize> = (0..rng.gen_range(1..=2)).map(|_| rng.gen_range(0..c.len())).collect();
    let (x, y) = (c.sum_of(&xs), c.sum_of(&ys));
    let basis = hom_basis(&x, &y).unwrap();
    let coeffs: Vec<_> = basis.iter().map(|_| q(rng.gen_range(-2..=2))).collect();
    Morphism::combination(&x, &y, &basis, &coeffs)
}

struct Tally {
    subsets: usize,
    morphisms: usize,
    triples: usize,
    semibricks: usize,
    round_trip_sets: usize,
}

fn properties_for(v: &mut Verdict, name: &str, alg: &Arc<Algebra>, rng: &mut ChaCha8Rng, morphisms: usize, tally: &mut Tally) {
    let census = Arc::new(Census::build(alg, KnitOptions::default()).unwrap());
    let cl = Closures::new(census.clone(), Sampling::default()).unwrap();
    let n = census.len();

    // Torsion classes and wide subcategories are ICE-closed.
    let subsets: Vec<IdSet> = if n <= 12 {
        (0u128..1 << n).map(IdSet::from_bits).collect()
    } else {
        (0..4096).map(|_| IdSet::from_bits(rng.gen::<u128>() & ((1 << n) - 1))).collect()
    };
    for &s in &subsets {
        if (cl.is_torsion_class(s) || cl.is_wide(s)) && !cl.is_ice(s) {
            v.require(false, format!("{name}: {} is torsion or wide but not ICE", cl.format(s)));
        }
    }
    tally.subsets += subsets.len();

    // Closure operator laws.
    for _ in 0..64 {
        let mask = (1u128 << n) - 1;
        let a = IdSet::from_bits(rng.gen::<u128>() & mask);
        let b = IdSet::from_bits(rng.gen::<u128>() & mask);
        let ca = cl.ice_closure(a);
        v.require(a.is_subset(ca), format!("{name}: closure not extensive at {a:?}"));
        v.require(cl.ice_closure(ca) == ca, format!("{name}: closure not idempotent at {a:?}"));
        v.require(ca.is_subset(cl.ice_closure(a.union(b))), format!("{name}: closure not monotone at {a:?}"));
    }

    // Rank bookkeeping.
    for _ in 0..morphisms {
        let f = random_morphism(rng, &census);
        let (im, _) = f.image();
        let (ker, _) = f.kernel();
        let (cok, _) = f.cokernel();
        v.require(
            im.total_dim() + ker.total_dim() == f.source().total_dim()
                && im.total_dim() + cok.total_dim() == f.target().total_dim(),
            format!("{name}: rank bookkeeping fails for {f:?}"),
        );
        tally.morphisms += 1;
    }

    // Semibricks are monobricks and epibricks.
    let bricks = BrickTable::new(census.clone(), Default::default()).unwrap();
    for s in bricks.enumerate_semibricks().unwrap() {
        v.require(
            bricks.is_monobrick(s).unwrap() && bricks.is_epibrick(s).unwrap(),
            format!("{name}: semibrick {} fails", bricks.format(s)),
        );
        tally.semibricks += 1;
    }

    // Bijection round trips on Nakayama algebras.
    if alg.is_nakayama() {
        let (b, _) = Bijections::new(&cl, false).unwrap();
        let ice = cl.enumerate_ice();
        let eb = bricks.enumerate_ebricks().unwrap();
        let r = round_trips(&b, &ice, &eb).unwrap();
        v.require(r.ok(), format!("{name}: round trips {r:?}"));
        tally.round_trip_sets += ice.len() + eb.len();
    }
}

/// Triple round trips over B and Hom dimensions of embedded A-modules.
fn triple_checks(v: &mut Verdict, name: &str, ope: &OnePointExtension, census_a: &Census, census_b: Option<&Census>, tally: &mut Tally) {
    for x in census_a.modules() {
        let bx = ope.embed(x).unwrap();
        let t = ope.rep_to_triple(&bx).unwrap();
        v.require(ope.triple_to_rep(&t).unwrap() == bx, format!("{name}: round trip of {}", x.name()));
        for y in census_a.modules() {
            let by = ope.embed(y).unwrap();
            v.require(
                hom_dim(&bx, &by).unwrap() == hom_dim(x, y).unwrap(),
                format!("{name}: Hom({}, {}) changes under embedding", x.name(), y.name()),
            );
            tally.triples += 1;
        }
    }
    if let Some(cb) = census_b {
        for x in cb.modules() {
            let t = ope.rep_to_triple(x).unwrap();
            v.require(&ope.triple_to_rep(&t).unwrap() == x, format!("{name}: round trip of B-module {}", x.name()));
            tally.triples += 1;
        }
    }
}

#[test]
fn criterion_7_properties() {
    criterion(7, "property suites", PROPERTY_BUDGET, |v| {
        let mut rng = ChaCha8Rng::seed_from_u64(SEED);
        let mut tally = Tally {
            subsets: 0,
            morphisms: 0,
            triples: 0,
            semibricks: 0,
            round_trip_sets: 0,
        };
        let corpus: Vec<(String, Arc<Algebra>)> = vec![
            ("point".into(), fixtures::point()),
            ("A2".into(), fixtures::a2()),
            ("A3".into(), fixtures::a3()),
            ("A3 with relation".into(), fixtures::a3_rel()),
            ("4→2→3".into(), fixtures::a3_423()),
            ("D4".into(), fixtures::d4()),
            ("D4 listed".into(), Algebra::load(&fixtures::d4_alt_spec()).unwrap()),
        ];
        let mut random = Vec::new();
        for k in 0..RANDOM_NAKAYAMA {
            let n = rng.gen_range(1..=4);
            let cyclic = n > 1 && rng.gen_bool(0.4);
            let kupisch = random_kupisch(&mut rng, n, cyclic);
            let alg = Algebra::load(&fixtures::nakayama_spec(&kupisch, cyclic)).unwrap();
            random.push((format!("Nakayama #{k} {kupisch:?}{}", if cyclic { " cyclic" } else { "" }), alg));
        }
        let all: Vec<_> = corpus.iter().chain(&random).collect();
        let per = RANDOM_MORPHISMS.div_ceil(all.len());
        for (name, alg) in &all {
            properties_for(v, name, alg, &mut rng, per, &mut tally);
        }

        for (name, t) in example_transfers() {
            triple_checks(v, name, t.extension(), t.census_a(), Some(t.census_b()), &mut tally);
        }
        let a2 = fixtures::a2();
        let ope = OnePointExtension::new(&Representation::simple(&a2, 0), &ExtensionOptions::default()).unwrap();
        let ca = Census::build(&a2, KnitOptions::default()).unwrap();
        let cb = Census::build(ope.result(), KnitOptions::default()).unwrap();
        triple_checks(v, "1→2→3 with relation", &ope, &ca, Some(&cb), &mut tally);

        for (name, alg) in &random {
            let ca = Census::build(alg, KnitOptions::default()).unwrap();
            let m = ca.module(rng.gen_range(0..ca.len())).clone();
            let ope = OnePointExtension::new(&m, &ExtensionOptions::default()).unwrap();
            // The B census is only built when B stays Nakayama.
            let cb = ope
                .result()
                .is_nakayama()
                .then(|| Census::build(ope.result(), KnitOptions::default()).unwrap());
            triple_checks(v, name, &ope, &ca, cb.as_ref(), &mut tally);
        }
        v.notes.push(format!(
            "{} algebras, {} subsets, {} morphisms, {} triple checks, {} semibricks, {} round-trip sets",
            all.len(),
            tally.subsets,
            tally.morphisms,
            tally.triples,
            tally.semibricks,
            tally.round_trip_sets
        ));
    });
}
