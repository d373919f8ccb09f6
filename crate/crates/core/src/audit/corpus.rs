use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::Algebra;
use crate::field::{FMatrix, PrimeField};
use crate::subspace::Subspace;

/// A named algebra.
#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub id: String,
    pub algebra: Algebra,
}

impl CorpusEntry {
    pub fn new(id: &str, algebra: Algebra) -> Self {
        CorpusEntry {
            id: String::from(id),
            algebra,
        }
    }
}

fn gf(p: u32) -> PrimeField {
    PrimeField::new(p).expect("corpus primes are prime")
}

/// Simple and non-simple, unital and non-unital, idempotent and not,
/// characteristic 2 and odd.
pub fn default_corpus() -> Vec<CorpusEntry> {
    let f2 = Algebra::truncated_poly(1, gf(2));
    let m2f2 = Algebra::matrix_algebra(2, gf(2));
    let m2f3 = Algebra::matrix_algebra(2, gf(3));
    vec![
        CorpusEntry::new("m2-f2", m2f2.clone()),
        CorpusEntry::new("m2-f3", m2f3.clone()),
        CorpusEntry::new("m2-f5", Algebra::matrix_algebra(2, gf(5))),
        CorpusEntry::new("m3-f2", Algebra::matrix_algebra(3, gf(2))),
        CorpusEntry::new("t2-f2", Algebra::triangular_algebra(2, gf(2))),
        CorpusEntry::new("t2-f3", Algebra::triangular_algebra(2, gf(3))),
        CorpusEntry::new("t3-f2", Algebra::triangular_algebra(3, gf(2))),
        CorpusEntry::new("trunc2-f2", Algebra::truncated_poly(2, gf(2))),
        CorpusEntry::new("trunc2-f3", Algebra::truncated_poly(2, gf(3))),
        CorpusEntry::new("trunc3-f3", Algebra::truncated_poly(3, gf(3))),
        CorpusEntry::new("trunc2-f5", Algebra::truncated_poly(2, gf(5))),
        CorpusEntry::new("f2-plus-m2-f2", Algebra::direct_sum(&f2, &m2f2).expect("same field")),
        CorpusEntry::new("m2-f3-plus-m2-f3", Algebra::direct_sum(&m2f3, &m2f3).expect("same field")),
        CorpusEntry::new("zero2-f3", Algebra::zero_product(2, gf(3))),
    ]
}

/// Every subspace of `GF(p)^dim`, in canonical form, or `None` if there are
/// more than `cap`.
pub fn all_subspaces(field: PrimeField, dim: usize, cap: usize) -> Option<Vec<Subspace>> {
    let mut out = Vec::new();
    for k in 0..=dim {
        let mut pivots: Vec<usize> = (0..k).collect();
        loop {
            // Free entries: row i, column c > pivots[i], c not a pivot.
            let free: Vec<(usize, usize)> = (0..k)
                .flat_map(|i| {
                    let pv = &pivots;
                    (pv[i] + 1..dim).filter(move |c| !pv.contains(c)).map(move |c| (i, c))
                })
                .collect();
            let mut vals = vec![0u32; free.len()];
            loop {
                if out.len() >= cap {
                    return None;
                }
                let mut m = FMatrix::zero(field, k, dim);
                for (i, &c) in pivots.iter().enumerate() {
                    m.set(i, c, 1);
                }
                for (&(i, c), &v) in free.iter().zip(&vals) {
                    m.set(i, c, v);
                }
                out.push(Subspace::from_matrix(&m));
                if !next_odometer(&mut vals, field.p()) {
                    break;
                }
            }
            if !next_combination(&mut pivots, dim) {
                break;
            }
        }
    }
    Some(out)
}

fn next_odometer(vals: &mut [u32], p: u32) -> bool {
    for v in vals.iter_mut() {
        *v += 1;
        if *v < p {
            return true;
        }
        *v = 0;
    }
    false
}

fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    for i in (0..k).rev() {
        if c[i] < n - k + i {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}
