#![allow(dead_code)]

use std::collections::BTreeSet;

use proptest::prelude::*;
use ringlab_core::{Algebra, FVector, PrimeField, Subspace};

pub fn gf(p: u32) -> PrimeField {
    PrimeField::new(p).unwrap()
}

/// Small algebras covering every family, all with `p^dim <= 4096`.
pub fn small_algebras() -> Vec<Algebra> {
    let f2 = Algebra::truncated_poly(1, gf(2));
    vec![
        Algebra::matrix_algebra(2, gf(2)),
        Algebra::matrix_algebra(2, gf(3)),
        Algebra::matrix_algebra(2, gf(5)),
        Algebra::triangular_algebra(2, gf(2)),
        Algebra::triangular_algebra(2, gf(3)),
        Algebra::triangular_algebra(3, gf(2)),
        Algebra::strictly_upper_triangular(3, gf(3)),
        Algebra::truncated_poly(2, gf(2)),
        Algebra::truncated_poly(3, gf(3)),
        Algebra::truncated_poly(2, gf(5)),
        Algebra::zero_product(2, gf(3)),
        Algebra::direct_sum(&f2, &Algebra::matrix_algebra(2, gf(2))).unwrap(),
        Algebra::matrix_algebra(2, gf(3)).opposite(),
    ]
}

/// Every coordinate vector of `GF(p)^dim`.
pub fn all_vectors(p: u32, dim: usize) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for _ in 0..dim {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..p).map(move |a| {
                    let mut w = v.clone();
                    w.push(a);
                    w
                })
            })
            .collect();
    }
    out
}

pub fn add(p: u32, a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b).map(|(x, y)| (x + y) % p).collect()
}

pub fn scale(p: u32, s: u32, a: &[u32]) -> Vec<u32> {
    a.iter().map(|x| (x * s) % p).collect()
}

pub fn sub(p: u32, a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b).map(|(x, y)| (x + p - y) % p).collect()
}

/// The set of all linear combinations, by closure under addition and scaling.
pub fn span_set(p: u32, dim: usize, gens: &[Vec<u32>]) -> BTreeSet<Vec<u32>> {
    let mut set: BTreeSet<Vec<u32>> = BTreeSet::new();
    set.insert(vec![0; dim]);
    for g in gens {
        let current: Vec<Vec<u32>> = set.iter().cloned().collect();
        for c in current {
            for a in 1..p {
                set.insert(add(p, &c, &scale(p, a, g)));
            }
        }
    }
    set
}

pub fn elements(s: &Subspace) -> BTreeSet<Vec<u32>> {
    span_set(s.field().p(), s.ambient_dim(), &s.to_rows())
}

pub fn vec_of(alg: &Algebra, coords: &[u32]) -> FVector {
    alg.element(coords.to_vec()).unwrap()
}

pub fn mul(alg: &Algebra, a: &[u32], b: &[u32]) -> Vec<u32> {
    alg.mul_coords(a, b)
}

pub fn bracket(alg: &Algebra, a: &[u32], b: &[u32]) -> Vec<u32> {
    sub(alg.p(), &alg.mul_coords(a, b), &alg.mul_coords(b, a))
}

pub fn subspace_of(alg: &Algebra, gens: &[Vec<u32>]) -> Subspace {
    let vs: Vec<FVector> = gens.iter().map(|g| vec_of(alg, g)).collect();
    alg.span(&vs).unwrap()
}

/// An algebra from the small list together with up to `dim` generator vectors.
pub fn algebra_and_gens() -> impl Strategy<Value = (Algebra, Vec<Vec<u32>>)> {
    let algs = small_algebras();
    (0..algs.len()).prop_flat_map(move |i| {
        let a = algs[i].clone();
        let (p, d) = (a.p(), a.dim());
        (
            Just(a),
            prop::collection::vec(prop::collection::vec(0..p, d), 0..=d),
        )
    })
}

/// An algebra with two generator lists.
pub fn algebra_and_two() -> impl Strategy<Value = (Algebra, Vec<Vec<u32>>, Vec<Vec<u32>>)> {
    let algs = small_algebras();
    (0..algs.len()).prop_flat_map(move |i| {
        let a = algs[i].clone();
        let (p, d) = (a.p(), a.dim());
        let gens = prop::collection::vec(prop::collection::vec(0..p, d), 0..=d);
        (Just(a), gens.clone(), gens)
    })
}

/// An algebra with three elements.
pub fn algebra_and_elements() -> impl Strategy<Value = (Algebra, Vec<u32>, Vec<u32>, Vec<u32>)> {
    let algs = small_algebras();
    (0..algs.len()).prop_flat_map(move |i| {
        let a = algs[i].clone();
        let (p, d) = (a.p(), a.dim());
        let e = prop::collection::vec(0..p, d);
        (Just(a), e.clone(), e.clone(), e)
    })
}
