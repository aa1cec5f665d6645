#![allow(dead_code)]

use std::path::PathBuf;

use rand::seq::IndexedRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use qwa_core::lattice::IntMatrix;
use qwa_core::{Presentation, Relation, Scalar, ScalarGroup};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `q` free, `-1` available.
pub fn group() -> ScalarGroup {
    ScalarGroup::new(2, Some("z"), &["q"]).unwrap()
}

pub fn q(g: &ScalarGroup) -> Scalar {
    g.symbol("q").unwrap()
}

/// Additive weights {-1, 0, 1, 2}, quantum weights {q, q^-1, q^2, -1}.
pub fn weights(g: &ScalarGroup) -> Vec<Relation> {
    let q = q(g);
    let mut out: Vec<Relation> = [-1, 0, 1, 2].into_iter().map(Relation::Additive).collect();
    for s in [q.clone(), q.inv(), q.pow(2), g.minus_one().unwrap()] {
        out.push(Relation::Multiplicative(s));
    }
    out
}

pub fn names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("x{i}")).collect()
}

/// Upper-triangle relations listed row by row.
pub fn presentation(g: &ScalarGroup, n: usize, choice: &[Relation]) -> Presentation {
    let mut p = Presentation::new(g.clone(), names(n)).unwrap();
    let mut k = 0;
    for i in 0..n {
        for j in i + 1..n {
            p.set(i, j, choice[k].clone()).unwrap();
            k += 1;
        }
    }
    p
}

pub fn random_presentation(rng: &mut ChaCha8Rng, g: &ScalarGroup, n: usize) -> Presentation {
    let w = weights(g);
    let choice: Vec<Relation> = (0..n * (n - 1) / 2).map(|_| w.choose(rng).unwrap().clone()).collect();
    presentation(g, n, &choice)
}

/// Multiplicatively antisymmetric matrix with entries from `pool`.
pub fn random_lambda(rng: &mut ChaCha8Rng, g: &ScalarGroup, n: usize, pool: &[Scalar]) -> Vec<Vec<Scalar>> {
    let mut l = vec![vec![g.one(); n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let s = pool.choose(rng).unwrap().clone();
            l[j][i] = s.inv();
            l[i][j] = s;
        }
    }
    l
}

pub fn random_antisymmetric(rng: &mut ChaCha8Rng, n: usize, bound: i64) -> IntMatrix {
    let mut rows = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let v = rng.random_range(-bound..=bound);
            rows[i][j] = v;
            rows[j][i] = -v;
        }
    }
    IntMatrix::from_rows(&rows)
}

/// Product of at most `max_ops` elementary unimodular matrices.
pub fn random_unimodular(rng: &mut ChaCha8Rng, n: usize, max_ops: usize) -> IntMatrix {
    let mut u = vec![vec![0i64; n]; n];
    for (i, row) in u.iter_mut().enumerate() {
        row[i] = 1;
    }
    let ops = rng.random_range(0..=max_ops);
    for _ in 0..ops {
        if n < 2 {
            let i = 0;
            u[i][0] = -u[i][0];
            continue;
        }
        let i = rng.random_range(0..n);
        let mut j = rng.random_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        match rng.random_range(0..3) {
            0 => {
                let c = [-2, -1, 1, 2][rng.random_range(0..4)];
                for row in u.iter_mut() {
                    row[i] += c * row[j];
                }
            }
            1 => {
                for row in u.iter_mut() {
                    row.swap(i, j);
                }
            }
            _ => {
                for row in u.iter_mut() {
                    row[i] = -row[i];
                }
            }
        }
    }
    IntMatrix::from_rows(&u)
}

pub fn congruent(a: &IntMatrix, u: &IntMatrix) -> IntMatrix {
    &(&u.transpose() * a) * u
}

pub fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

pub fn corpus_files() -> Vec<PathBuf> {
    let mut v: Vec<PathBuf> = std::fs::read_dir(corpus_dir())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "qwa"))
        .collect();
    v.sort();
    v
}
