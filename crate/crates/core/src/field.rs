//! Prime fields GF(p) and dense linear algebra over them.
//!
//! Residues are stored as `u32` in `[0, p)` and reduced eagerly. Since
//! `p <= 2^16`, a product of two residues fits in 32 bits and a sum of up to
//! `2^32` such products fits in a `u64` accumulator.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::Error;

/// Largest supported characteristic.
pub const MAX_PRIME: u32 = 1 << 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    /// Validates `p` by trial division.
    pub fn new(p: u32) -> Result<Self, Error> {
        if !(2..=MAX_PRIME).contains(&p) || !is_prime(p) {
            return Err(Error::InvalidPrime(p));
        }
        Ok(PrimeField { p })
    }

    #[inline]
    pub fn p(self) -> u32 {
        self.p
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    pub fn pow(self, mut base: u32, mut exp: u64) -> u32 {
        let mut acc = 1 % self.p;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(self, a: u32) -> Option<u32> {
        let a = a % self.p;
        if a == 0 {
            None
        } else {
            Some(self.pow(a, (self.p - 2) as u64))
        }
    }

    /// Reduces an arbitrary signed integer into `[0, p)`.
    pub fn reduce(self, x: i64) -> u32 {
        x.rem_euclid(self.p as i64) as u32
    }

    /// All residues `0, 1, ..., p-1` in increasing order.
    pub fn elements(self) -> impl Iterator<Item = u32> + Clone {
        0..self.p
    }
}

impl fmt::Display for PrimeField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.p)
    }
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// A vector over GF(p).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FVector {
    p: u32,
    coords: Vec<u32>,
}

impl FVector {
    pub fn zero(field: PrimeField, len: usize) -> Self {
        FVector {
            p: field.p,
            coords: vec![0; len],
        }
    }

    /// Basis vector `e_i` of length `len`.
    pub fn unit_vector(field: PrimeField, len: usize, i: usize) -> Self {
        let mut v = Self::zero(field, len);
        v.coords[i] = 1;
        v
    }

    /// Builds a vector, reducing every coordinate mod p.
    pub fn from_coords(field: PrimeField, coords: Vec<u32>) -> Self {
        let p = field.p;
        FVector {
            p,
            coords: coords.into_iter().map(|c| c % p).collect(),
        }
    }

    pub fn from_i64(field: PrimeField, coords: &[i64]) -> Self {
        FVector {
            p: field.p,
            coords: coords.iter().map(|&c| field.reduce(c)).collect(),
        }
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        PrimeField { p: self.p }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.coords.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    #[inline]
    pub fn coords(&self) -> &[u32] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<u32> {
        self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    pub fn add(&self, other: &FVector) -> FVector {
        debug_assert_eq!(self.len(), other.len());
        let f = self.field();
        FVector {
            p: self.p,
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(&a, &b)| f.add(a, b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &FVector) -> FVector {
        debug_assert_eq!(self.len(), other.len());
        let f = self.field();
        FVector {
            p: self.p,
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(&a, &b)| f.sub(a, b))
                .collect(),
        }
    }

    pub fn neg(&self) -> FVector {
        let f = self.field();
        FVector {
            p: self.p,
            coords: self.coords.iter().map(|&a| f.neg(a)).collect(),
        }
    }

    pub fn scale(&self, s: u32) -> FVector {
        let f = self.field();
        FVector {
            p: self.p,
            coords: self.coords.iter().map(|&a| f.mul(a, s)).collect(),
        }
    }

    /// `self += s * other`
    pub fn add_scaled(&mut self, s: u32, other: &FVector) {
        add_scaled_slice(self.field(), &mut self.coords, s, &other.coords);
    }

    /// Scales so that the first nonzero coordinate becomes 1.
    pub fn normalized(&self) -> FVector {
        match self.coords.iter().find(|&&c| c != 0) {
            None => self.clone(),
            Some(&lead) => self.scale(self.field().inv(lead).expect("nonzero")),
        }
    }
}

impl fmt::Debug for FVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.coords)
    }
}

/// `dst += s * src` coordinatewise.
#[inline]
pub(crate) fn add_scaled_slice(field: PrimeField, dst: &mut [u32], s: u32, src: &[u32]) {
    if s == 0 {
        return;
    }
    for (d, &x) in dst.iter_mut().zip(src) {
        if x != 0 {
            *d = field.add(*d, field.mul(s, x));
        }
    }
}

/// A dense row-major matrix over GF(p).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FMatrix {
    p: u32,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl FMatrix {
    pub fn zero(field: PrimeField, rows: usize, cols: usize) -> Self {
        FMatrix {
            p: field.p,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Self::zero(field, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Builds a matrix from rows; entries are reduced mod p.
    pub fn from_rows(field: PrimeField, cols: usize, rows: &[Vec<u32>]) -> Result<Self, Error> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: r.len(),
                });
            }
            data.extend(r.iter().map(|&x| x % field.p));
        }
        Ok(FMatrix {
            p: field.p,
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub fn from_vectors(field: PrimeField, cols: usize, rows: &[FVector]) -> Result<Self, Error> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: r.len(),
                });
            }
            data.extend_from_slice(r.coords());
        }
        Ok(FMatrix {
            p: field.p,
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub(crate) fn from_raw(field: PrimeField, rows: usize, cols: usize, data: Vec<u32>) -> Self {
        debug_assert_eq!(data.len(), rows * cols);
        FMatrix {
            p: field.p,
            rows,
            cols,
            data,
        }
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        PrimeField { p: self.p }
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v % self.p;
    }

    #[inline]
    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vector(&self, r: usize) -> FVector {
        FVector {
            p: self.p,
            coords: self.row(r).to_vec(),
        }
    }

    pub fn row_vectors(&self) -> Vec<FVector> {
        (0..self.rows).map(|r| self.row_vector(r)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> FMatrix {
        let mut t = FMatrix::zero(self.field(), self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c);
            }
        }
        t
    }

    pub fn push_row(&mut self, row: &[u32]) {
        assert_eq!(row.len(), self.cols);
        self.data.extend(row.iter().map(|&x| x % self.p));
        self.rows += 1;
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &FMatrix) -> FMatrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        FMatrix {
            p: self.p,
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    /// Matrix-vector product `self * x`.
    pub fn mul_vec(&self, x: &[u32]) -> Vec<u32> {
        assert_eq!(x.len(), self.cols);
        let p = self.p as u64;
        (0..self.rows)
            .map(|r| {
                let acc: u64 = self
                    .row(r)
                    .iter()
                    .zip(x)
                    .map(|(&a, &b)| a as u64 * b as u64 % p)
                    .sum();
                (acc % p) as u32
            })
            .collect()
    }

    /// Row-vector product `x * self`.
    pub fn vec_mul(&self, x: &[u32]) -> Vec<u32> {
        assert_eq!(x.len(), self.rows);
        let f = self.field();
        let mut out = vec![0u32; self.cols];
        for (r, &s) in x.iter().enumerate() {
            add_scaled_slice(f, &mut out, s, self.row(r));
        }
        out
    }

    pub fn mul(&self, other: &FMatrix) -> FMatrix {
        assert_eq!(self.cols, other.rows);
        let mut data = Vec::with_capacity(self.rows * other.cols);
        for r in 0..self.rows {
            data.extend(other.vec_mul(self.row(r)));
        }
        FMatrix {
            p: self.p,
            rows: self.rows,
            cols: other.cols,
            data,
        }
    }

    pub fn rank(&self) -> usize {
        rref(self).1.len()
    }
}

impl fmt::Debug for FMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries((0..self.rows).map(|r| self.row(r))).finish()
    }
}

/// Reduced row-echelon form with zero rows dropped, plus the pivot columns.
pub fn rref(m: &FMatrix) -> (FMatrix, Vec<usize>) {
    let field = m.field();
    let cols = m.cols;
    let mut rows: Vec<Vec<u32>> = (0..m.rows).map(|r| m.row(r).to_vec()).collect();
    let mut pivots = Vec::new();
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows.len() {
            break;
        }
        let Some(found) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else {
            continue;
        };
        rows.swap(rank, found);
        let inv = field.inv(rows[rank][c]).expect("nonzero pivot");
        for x in rows[rank].iter_mut() {
            *x = field.mul(*x, inv);
        }
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[c] != 0 {
                let s = field.neg(row[c]);
                add_scaled_slice(field, row, s, &pivot_row);
            }
        }
        pivots.push(c);
        rank += 1;
    }
    rows.truncate(rank);
    let data = rows.into_iter().flatten().collect();
    (FMatrix::from_raw(field, rank, cols, data), pivots)
}

/// Basis (in rref) of the right null space `{ x : m x = 0 }`.
pub fn kernel(m: &FMatrix) -> FMatrix {
    let field = m.field();
    let (r, pivots) = rref(m);
    let n = m.cols;
    let mut is_pivot = vec![false; n];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    let mut basis = FMatrix::zero(field, 0, n);
    for free in (0..n).filter(|&c| !is_pivot[c]) {
        let mut v = vec![0u32; n];
        v[free] = 1;
        for (i, &pc) in pivots.iter().enumerate() {
            v[pc] = field.neg(r.get(i, free));
        }
        basis.push_row(&v);
    }
    rref(&basis).0
}

/// Returns one solution of `a x = b`, or `None` when the system is inconsistent.
pub fn solve_linear(a: &FMatrix, b: &FVector) -> Result<Option<FVector>, Error> {
    if a.rows != b.len() {
        return Err(Error::DimensionMismatch {
            expected: a.rows,
            found: b.len(),
        });
    }
    let field = a.field();
    let n = a.cols;
    // Augmented matrix [a | b].
    let mut aug = FMatrix::zero(field, 0, n + 1);
    for r in 0..a.rows {
        let mut row = a.row(r).to_vec();
        row.push(b.coords()[r] % field.p());
        aug.push_row(&row);
    }
    let (red, pivots) = rref(&aug);
    if pivots.last() == Some(&n) {
        return Ok(None);
    }
    let mut x = vec![0u32; n];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = red.get(i, n);
    }
    Ok(Some(FVector::from_coords(field, x)))
}

/// Residues `0..p`; the `field_elements` enumeration.
pub fn field_elements(field: PrimeField) -> impl Iterator<Item = u32> + Clone {
    field.elements()
}
