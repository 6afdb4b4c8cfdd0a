#![allow(dead_code)]

use arbor::multi_index::enumerate_multi_indices;
use arbor::rational::{int, ratio};
use arbor::{CommMap, CommSeries, FreeMap, FreeSeries, Matrix, Rational, Word};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    ratio(rng.gen_range(-5..=5), rng.gen_range(1..=4))
}

/// Zero constant term; linear part from `linear` or random; each higher
/// coefficient present with probability `density`.
pub fn comm_map(
    rng: &mut ChaCha8Rng,
    dim: usize,
    trunc: usize,
    linear: Option<&Matrix>,
    density: f64,
) -> CommMap {
    let comps = (0..dim)
        .map(|i| {
            let terms: Vec<_> = enumerate_multi_indices(dim, trunc)
                .unwrap()
                .into_iter()
                .filter_map(|a| match (a.degree(), linear) {
                    (0, _) => None,
                    (1, Some(m)) => Some((a.clone(), m.get(i, a.as_unit().unwrap()).clone())),
                    _ if rng.gen_bool(density) => Some((a, random_rational(rng))),
                    _ => None,
                })
                .collect();
            CommSeries::from_coeffs(dim, trunc, terms).unwrap()
        })
        .collect();
    CommMap::new(comps).unwrap()
}

pub fn free_map(
    rng: &mut ChaCha8Rng,
    dim: usize,
    trunc: usize,
    linear: Option<&Matrix>,
    density: f64,
) -> FreeMap {
    let comps = (0..dim)
        .map(|i| {
            let terms: Vec<_> = Word::all_up_to(dim, trunc)
                .into_iter()
                .filter_map(|w| match (w.len(), linear) {
                    (0, _) => None,
                    (1, Some(m)) => Some((w.clone(), m.get(i, w.letters()[0]).clone())),
                    _ if rng.gen_bool(density) => Some((w, random_rational(rng))),
                    _ => None,
                })
                .collect();
            FreeSeries::from_coeffs(dim, trunc, terms).unwrap()
        })
        .collect();
    FreeMap::new(comps).unwrap()
}

pub fn invertible_matrix(rng: &mut ChaCha8Rng, dim: usize) -> Matrix {
    loop {
        let rows = (0..dim)
            .map(|_| (0..dim).map(|_| int(rng.gen_range(-2..=2))).collect())
            .collect();
        let m = Matrix::from_rows(rows);
        if m.inverse().is_some() {
            return m;
        }
    }
}
