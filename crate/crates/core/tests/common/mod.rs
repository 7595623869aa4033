#![allow(dead_code)]

use rand::Rng;
use trileibniz::structure::{antisymmetrize, Sc3};
use trileibniz::Scalar;

/// Sparse tensor with up to `max_nnz` entries drawn from `-2..=2`.
pub fn random_sc3(rng: &mut impl Rng, dim: usize, max_nnz: usize) -> Sc3 {
    let nnz = rng.gen_range(0..=max_nnz);
    let entries = (0..nnz).map(|_| {
        let key = [
            rng.gen_range(1..=dim),
            rng.gen_range(1..=dim),
            rng.gen_range(1..=dim),
            rng.gen_range(1..=dim),
        ];
        (key, Scalar::from_int(rng.gen_range(-2..=2)))
    });
    Sc3::from_entries(dim, entries).unwrap()
}

/// Random tensor projected onto the antisymmetric ones, scaled to keep
/// integer entries.
pub fn random_antisymmetric(rng: &mut impl Rng, dim: usize, max_nnz: usize) -> Sc3 {
    antisymmetrize(&random_sc3(rng, dim, max_nnz)).scale(&Scalar::from_int(6))
}

/// A three-dimensional 3-Lie algebra `[e1,e2,e3] = Σ c_m e_m`; every such
/// tensor satisfies the fundamental identity.
pub fn random_lie3_dim3(rng: &mut impl Rng) -> Sc3 {
    let entries = (1..=3).map(|m| ([1, 2, 3, m], Scalar::from_int(rng.gen_range(-2..=2))));
    Sc3::from_entries(3, entries)
        .unwrap()
        .antisymmetric_completion()
        .unwrap()
}

pub fn sc3_from_list(dim: usize, list: &[(usize, usize, usize, usize, i64)]) -> Sc3 {
    let entries = list.iter().map(|&(i, j, k, m, v)| {
        (
            [(i % dim) + 1, (j % dim) + 1, (k % dim) + 1, (m % dim) + 1],
            Scalar::from_int(v),
        )
    });
    Sc3::from_entries(dim, entries).unwrap()
}
