//! The small algebras that recur in examples, tests and golden cases.

use std::sync::Arc;

use crate::algebra::{Algebra, AlgebraSpec};

fn load(spec: AlgebraSpec) -> Arc<Algebra> {
    Algebra::load(&spec).expect("fixture algebra is valid")
}

/// `2 --beta--> 3`
pub fn a2_spec() -> AlgebraSpec {
    AlgebraSpec::path_algebra(&["2", "3"], &[("beta", "2", "3")])
}

pub fn a2() -> Arc<Algebra> {
    load(a2_spec())
}

/// `1 --alpha--> 2 --beta--> 3`
pub fn a3_spec() -> AlgebraSpec {
    AlgebraSpec::path_algebra(&["1", "2", "3"], &[("alpha", "1", "2"), ("beta", "2", "3")])
}

pub fn a3() -> Arc<Algebra> {
    load(a3_spec())
}

/// `1 --alpha--> 2 --beta--> 3` with `alpha beta = 0`.
pub fn a3_rel_spec() -> AlgebraSpec {
    a3_spec().with_zero_relation(&["alpha", "beta"])
}

pub fn a3_rel() -> Arc<Algebra> {
    load(a3_rel_spec())
}

/// `4 --gamma--> 2 --beta--> 3`
pub fn a3_423_spec() -> AlgebraSpec {
    AlgebraSpec::path_algebra(&["4", "2", "3"], &[("gamma", "4", "2"), ("beta", "2", "3")])
}

pub fn a3_423() -> Arc<Algebra> {
    load(a3_423_spec())
}

/// `1 --alpha--> 2 <--gamma-- 4`, `2 --beta--> 3`: the one-point extension of
/// [`a3_423`] by the projective at 2.
pub fn d4_spec() -> AlgebraSpec {
    AlgebraSpec::path_algebra(
        &["1", "4", "2", "3"],
        &[("alpha", "1", "2"), ("gamma", "4", "2"), ("beta", "2", "3")],
    )
}

pub fn d4() -> Arc<Algebra> {
    load(d4_spec())
}

/// D4 with arrows `1 → 2`, `3 → 2`, `2 → 4`.
pub fn d4_alt_spec() -> AlgebraSpec {
    AlgebraSpec::path_algebra(
        &["1", "2", "3", "4"],
        &[("alpha", "1", "2"), ("beta", "3", "2"), ("gamma", "2", "4")],
    )
}

pub fn point_spec() -> AlgebraSpec {
    AlgebraSpec::path_algebra(&["1"], &[])
}

pub fn point() -> Arc<Algebra> {
    load(point_spec())
}

/// Nakayama algebra with Kupisch series `kupisch` (Loewy length of each `P_i`)
/// on `1 → 2 → … → n`, closed up by `n → 1` when `cyclic`. Relations are the
/// minimal zero paths. The series must be admissible: every entry ≥ 2 except a
/// linear sink, `c_{i+1} ≥ c_i − 1`, and paths must exist in the linear case.
pub fn nakayama_spec(kupisch: &[usize], cyclic: bool) -> AlgebraSpec {
    let n = kupisch.len();
    let labels: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
    let names: Vec<String> = (1..=n).map(|i| format!("a{i}")).collect();
    let arrow_count = if cyclic { n } else { n - 1 };
    let arrows: Vec<(&str, &str, &str)> = (0..arrow_count)
        .map(|i| (names[i].as_str(), labels[i].as_str(), labels[(i + 1) % n].as_str()))
        .collect();
    let vertices: Vec<&str> = labels.iter().map(String::as_str).collect();
    let mut spec = AlgebraSpec::path_algebra(&vertices, &arrows);
    for i in 0..n {
        let c = kupisch[i];
        let next = kupisch[(i + 1) % n];
        let exists = cyclic || i + c < n;
        let implied = (cyclic || i + 1 < n) && next < c;
        if exists && !implied {
            let path: Vec<&str> = (0..c).map(|k| names[(i + k) % n].as_str()).collect();
            spec = spec.with_zero_relation(&path);
        }
    }
    spec
}
