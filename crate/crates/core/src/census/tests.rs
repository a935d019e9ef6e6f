use super::*;
use crate::algebra::Algebra;
use crate::fixtures::{a2, a3, a3_423, a3_rel, d4, d4_alt_spec, nakayama_spec, point};
use crate::homext::middle_terms_all;
use crate::rep::is_isomorphic;

/// Positive roots of the Tits form of a loopless quiver: close the simple roots
/// under simple reflections, keeping positive vectors.
pub(crate) fn positive_roots(n: usize, edges: &[(usize, usize)]) -> HashSet<Vec<i64>> {
    let mut adj = vec![vec![0i64; n]; n];
    for &(a, b) in edges {
        adj[a][b] += 1;
        adj[b][a] += 1;
    }
    let mut roots: HashSet<Vec<i64>> = HashSet::new();
    let mut queue: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect();
    while let Some(r) = queue.pop() {
        if !roots.insert(r.clone()) {
            continue;
        }
        for i in 0..n {
            // s_i(r) = r − (r, e_i) e_i with (x, e_i) = 2 x_i − Σ_j adj[i][j] x_j
            let pairing = 2 * r[i] - (0..n).map(|j| adj[i][j] * r[j]).sum::<i64>();
            let mut s = r.clone();
            s[i] -= pairing;
            if s.iter().all(|&c| c >= 0) && s.iter().any(|&c| c > 0) && !roots.contains(&s) {
                queue.push(s);
            }
        }
        assert!(roots.len() < 1000, "root system is not finite");
    }
    roots
}

fn edges(alg: &Algebra) -> Vec<(usize, usize)> {
    alg.arrows().iter().map(|a| (a.source, a.target)).collect()
}

fn dims_set(c: &Census) -> HashSet<Vec<i64>> {
    c.modules().iter().map(|m| m.dims().iter().map(|&d| d as i64).collect()).collect()
}

#[test]
fn root_oracle_counts() {
    assert_eq!(positive_roots(2, &[(0, 1)]).len(), 3);
    assert_eq!(positive_roots(3, &[(0, 1), (1, 2)]).len(), 6);
    assert_eq!(positive_roots(4, &[(0, 2), (1, 2), (2, 3)]).len(), 12);
}

#[test]
fn nakayama_counts() {
    let c = nakayama_census(&a2()).unwrap();
    assert_eq!(c.names(), ["3", "2", "2/3"]);
    let full = nakayama_census(&a3()).unwrap();
    assert_eq!(full.len(), 6);
    assert!(full.id_by_name("1/2/3").is_some());
    let rel = nakayama_census(&a3_rel()).unwrap();
    let mut names = rel.names();
    names.sort();
    assert_eq!(names, ["1", "1/2", "2", "2/3", "3"]);
    assert!(matches!(nakayama_census(&d4()), Err(Error::NotNakayama(_))));
}

#[test]
fn knitting_matches_closed_form() {
    for alg in [a2(), a3(), a3_rel(), a3_423(), point()] {
        let k = knit_census(&alg, KnitOptions::default()).unwrap();
        let n = nakayama_census(&alg).unwrap();
        assert_eq!(k.len(), n.len());
        for (a, b) in k.modules().iter().zip(n.modules()) {
            assert!(is_isomorphic(a, b).unwrap(), "{} vs {}", a.name(), b.name());
        }
    }
    assert_eq!(knit_census(&point(), KnitOptions::default()).unwrap().len(), 1);
}

#[test]
fn dynkin_censuses_are_positive_roots() {
    let alt = Algebra::load(&d4_alt_spec()).unwrap();
    for alg in [a2(), a3(), d4(), alt] {
        let c = Census::build(&alg, KnitOptions::default()).unwrap();
        let roots = positive_roots(alg.num_vertices(), &edges(&alg));
        assert_eq!(c.len(), roots.len());
        assert_eq!(dims_set(&c), roots);
        assert!(c.is_complete());
    }
}

pub(crate) fn random_kupisch(rng: &mut impl rand::Rng, n: usize, cyclic: bool) -> Vec<usize> {
    loop {
        let c: Vec<usize> = (0..n)
            .map(|i| {
                if cyclic {
                    rng.gen_range(2..=4)
                } else if i + 1 == n {
                    1
                } else {
                    rng.gen_range(2..=n - i)
                }
            })
            .collect();
        let ok = (0..n).all(|i| (!cyclic && i + 1 == n) || c[(i + 1) % n] + 1 >= c[i]);
        if ok {
            return c;
        }
    }
}

#[test]
fn random_nakayama_counts_follow_kupisch_series() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
    for _ in 0..20 {
        let n = rng.gen_range(1..=4);
        let cyclic = n > 1 && rng.gen_bool(0.5);
        let kupisch = random_kupisch(&mut rng, n, cyclic);
        let alg = Algebra::load(&nakayama_spec(&kupisch, cyclic)).unwrap();
        let total: usize = kupisch.iter().sum();
        assert_eq!(alg.dimension(), (0..n).map(|i| kupisch[i]).sum::<usize>());
        let c = nakayama_census(&alg).unwrap();
        assert_eq!(c.len(), total, "{kupisch:?} cyclic={cyclic}");
        for m in c.modules() {
            assert!(m.is_uniserial());
            assert_eq!(decompose(m).unwrap().len(), 1);
        }
    }
}

#[test]
fn census_is_closed_under_middle_terms() {
    let alg = a3();
    let c = nakayama_census(&alg).unwrap();
    for y in c.modules() {
        for x in c.modules() {
            for e in middle_terms_all(y, x, Grid::default()).unwrap() {
                c.identify(&e).unwrap();
            }
        }
    }
}

#[test]
fn bricks_and_identification() {
    let c = nakayama_census(&a2()).unwrap();
    assert_eq!(c.bricks().unwrap().len(), 3);
    let c6 = nakayama_census(&a3_423()).unwrap();
    assert_eq!(c6.bricks().unwrap().len(), 6);
    let rel = nakayama_census(&a3_rel()).unwrap();
    for i in 0..3 {
        let s = Representation::simple(rel.algebra(), i);
        assert!(rel.bricks().unwrap().contains(&rel.find(&s).unwrap().unwrap()));
    }
    let p2 = c.id_by_name("2/3").unwrap();
    let s2 = c.id_by_name("2").unwrap();
    let x = c.sum_of(&[p2, s2, p2]);
    let mut expect = vec![(p2, 2), (s2, 1)];
    expect.sort();
    assert_eq!(c.identify(&x).unwrap(), expect);
    let entries = c.entries().unwrap();
    assert_eq!(entries.len(), 3);
    assert!(serde_json::to_string(&entries).unwrap().contains("\"2/3\""));
}

#[test]
fn budget_exhaustion_is_loud() {
    let opts = KnitOptions {
        budget: 1,
        ..KnitOptions::default()
    };
    match knit_census(&d4(), opts) {
        Err(Error::BudgetExhausted { partial }) => {
            assert!(!partial.is_complete());
            assert!(partial.len() >= 4);
        }
        other => panic!("expected exhaustion, got {other:?}"),
    }
}
