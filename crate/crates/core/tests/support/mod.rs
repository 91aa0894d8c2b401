//! Random instance generators and stored posets shared by the test targets.
#![allow(dead_code)]

use std::collections::BTreeSet;

use meetjoin_core::matrix::SymMatrix;
use meetjoin_core::mobius::PosetFunction;
use meetjoin_core::poset::{build_poset, FinitePoset, Subset};
use meetjoin_core::Rational;
use num_traits::{One, Zero};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn int(v: i64) -> Rational {
    Rational::from_integer(v.into())
}

/// Random rational in `[lo, hi]` with denominator at most 4.
pub fn rational_in(rng: &mut StdRng, lo: i64, hi: i64) -> Rational {
    let q: i64 = rng.gen_range(1..=4);
    let p: i64 = rng.gen_range(lo * q..=hi * q);
    Rational::new(p.into(), q.into())
}

pub fn random_function(rng: &mut StdRng, n: usize, lo: i64, hi: i64) -> PosetFunction {
    PosetFunction::new((0..n).map(|_| rational_in(rng, lo, hi)).collect())
}

/// A random finite lattice with at most `max_n` elements: an
/// intersection-closed family of subsets of a small ground set, plus the
/// full set as top. Every finite lattice arises this way.
pub fn random_lattice(rng: &mut StdRng, max_n: usize) -> FinitePoset {
    loop {
        let ground: u32 = rng.gen_range(2..=4);
        let full = (1u32 << ground) - 1;
        let mut family: BTreeSet<u32> = BTreeSet::new();
        family.insert(full);
        let picks = rng.gen_range(1..=max_n);
        for _ in 0..picks {
            family.insert(rng.gen_range(0..=full));
        }
        loop {
            let current: Vec<u32> = family.iter().copied().collect();
            let before = family.len();
            for &a in &current {
                for &b in &current {
                    family.insert(a & b);
                }
            }
            if family.len() == before {
                break;
            }
        }
        if family.len() > max_n {
            continue;
        }
        let mut sets: Vec<u32> = family.into_iter().collect();
        sets.shuffle(rng);
        let labels = sets.iter().map(|s| format!("{s:0w$b}", w = ground as usize)).collect();
        return FinitePoset::from_fn(sets.len(), |a, b| sets[a] & !sets[b] == 0, Some(labels))
            .expect("inclusion is a partial order");
    }
}

/// Random poset on `n` elements from a random DAG, with a shuffled input
/// order so re-indexing is exercised.
pub fn random_poset(rng: &mut StdRng, n: usize, density: f64) -> FinitePoset {
    let mut names: Vec<usize> = (0..n).collect();
    names.shuffle(rng);
    let mut relation = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if rng.gen_bool(density) {
                relation.push((names[i], names[j]));
            }
        }
    }
    build_poset(n, &relation, None).expect("a DAG closes to a partial order")
}

/// Rooted tree on `n` nodes ordered root-upwards.
pub fn random_tree(rng: &mut StdRng, n: usize) -> FinitePoset {
    let relation: Vec<(usize, usize)> = (1..n).map(|i| (rng.gen_range(0..i), i)).collect();
    build_poset(n, &relation, None).unwrap()
}

/// Random non-empty subset, sorted by index.
pub fn random_subset<'a>(rng: &mut StdRng, p: &'a FinitePoset, max: usize) -> Subset<'a> {
    let n = p.len();
    let k = rng.gen_range(1..=max.min(n));
    let mut all: Vec<usize> = (0..n).collect();
    all.shuffle(rng);
    all.truncate(k);
    Subset::sorted(p, all).unwrap()
}

/// Random strictly order-preserving positive function on `p`: each value
/// exceeds every value below it by a random positive amount.
pub fn strictly_increasing_function(rng: &mut StdRng, p: &FinitePoset) -> PosetFunction {
    let n = p.len();
    let mut values: Vec<Rational> = Vec::with_capacity(n);
    for k in 0..n {
        let base = (0..k).filter(|&v| p.lt(v, k)).map(|v| values[v].clone()).max();
        let step = rational_in(rng, 0, 3) + Rational::new(1.into(), 8.into());
        values.push(match base {
            Some(b) => b + step,
            None => step,
        });
    }
    PosetFunction::new(values)
}

/// Random order-preserving nonnegative floats on `p` (ties allowed).
pub fn weakly_increasing_floats(rng: &mut StdRng, p: &FinitePoset) -> Vec<f64> {
    let n = p.len();
    let mut values = vec![0.0f64; n];
    for k in 0..n {
        let base = (0..k).filter(|&v| p.lt(v, k)).map(|v| values[v]).fold(0.0, f64::max);
        let step = if rng.gen_bool(0.2) { 0.0 } else { rng.gen_range(0.0..3.0) };
        values[k] = base + step;
    }
    values
}

/// Left diagram of the stored pair: six maximal elements over a tree with
/// four meet points. A ∧-tree set that is not an A-set.
pub fn tree_not_a_set() -> (FinitePoset, Vec<&'static str>) {
    let labels = ["b", "m", "l", "r", "x1", "x2", "x3", "x4", "x5", "x6"];
    let idx = |s: &str| labels.iter().position(|l| *l == s).unwrap();
    let covers = [
        ("b", "m"),
        ("m", "l"),
        ("l", "x1"),
        ("l", "x2"),
        ("l", "x3"),
        ("m", "x4"),
        ("b", "r"),
        ("r", "x5"),
        ("r", "x6"),
    ];
    let relation: Vec<(usize, usize)> = covers.iter().map(|&(a, b)| (idx(a), idx(b))).collect();
    let p = build_poset(labels.len(), &relation, Some(labels.iter().map(|s| s.to_string()).collect()))
        .unwrap();
    (p, vec!["x1", "x2", "x3", "x4", "x5", "x6"])
}

/// Right diagram of the stored pair: an eleven-element A-set whose pairwise
/// meets all lie on one spine.
pub fn eleven_element_a_set() -> (FinitePoset, Vec<&'static str>) {
    let labels = [
        "c0", "c1", "c3", "x1", "x2", "x3", "x4", "x5", "x6", "x7", "x8", "x9", "x10", "x11",
    ];
    let idx = |s: &str| labels.iter().position(|l| *l == s).unwrap();
    let covers = [
        ("c0", "x1"),
        ("c0", "x2"),
        ("c0", "x3"),
        ("c0", "x4"),
        ("c0", "c1"),
        ("c1", "x5"),
        ("c1", "x6"),
        ("x6", "x7"),
        ("x6", "x8"),
        ("x6", "x9"),
        ("x6", "c3"),
        ("c3", "x10"),
        ("c3", "x11"),
    ];
    let relation: Vec<(usize, usize)> = covers.iter().map(|&(a, b)| (idx(a), idx(b))).collect();
    let p = build_poset(labels.len(), &relation, Some(labels.iter().map(|s| s.to_string()).collect()))
        .unwrap();
    (p, vec!["x1", "x2", "x3", "x4", "x5", "x6", "x7", "x8", "x9", "x10", "x11"])
}

/// Random distinct integers in `1..=max`.
pub fn random_integers(rng: &mut StdRng, n: usize, max: u64) -> Vec<u64> {
    let mut set = BTreeSet::new();
    while set.len() < n {
        set.insert(rng.gen_range(1..=max));
    }
    let mut v: Vec<u64> = set.into_iter().collect();
    v.shuffle(rng);
    v
}

/// Float determinant by Gaussian elimination with partial pivoting.
pub fn float_det(n: usize, entries: &[f64]) -> f64 {
    let mut a = entries.to_vec();
    let mut det = 1.0;
    for k in 0..n {
        let piv = (k..n).max_by(|&x, &y| a[x * n + k].abs().total_cmp(&a[y * n + k].abs())).unwrap();
        if a[piv * n + k] == 0.0 {
            return 0.0;
        }
        if piv != k {
            for j in 0..n {
                a.swap(k * n + j, piv * n + j);
            }
            det = -det;
        }
        det *= a[k * n + k];
        for i in (k + 1)..n {
            let f = a[i * n + k] / a[k * n + k];
            for j in k..n {
                a[i * n + j] -= f * a[k * n + j];
            }
        }
    }
    det
}

/// Determinant by plain Gaussian elimination over the rationals.
pub fn gauss_det(m: &SymMatrix) -> Rational {
    let n = m.dim();
    let mut a: Vec<Vec<Rational>> = (0..n).map(|i| m.row(i).to_vec()).collect();
    let mut det = Rational::one();
    for k in 0..n {
        let Some(piv) = (k..n).find(|&r| !a[r][k].is_zero()) else {
            return Rational::zero();
        };
        if piv != k {
            a.swap(piv, k);
            det = -det;
        }
        det *= &a[k][k];
        for i in k + 1..n {
            let factor = &a[i][k] / &a[k][k];
            for j in k..n {
                let v = &factor * &a[k][j];
                a[i][j] -= v;
            }
        }
    }
    det
}

/// Sylvester's criterion with independently computed leading minors.
pub fn sylvester_pd(m: &SymMatrix) -> bool {
    (1..=m.dim()).all(|k| gauss_det(&m.leading(k)) > Rational::zero())
}
