//! Subspaces of `GF(p)^n` in canonical reduced row-echelon form.
//!
//! Over a prime field every additive subgroup is a subspace, so this type is the
//! common currency for Lie ideals, ideals, spans and towers.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::field::{add_scaled_slice, kernel, rref, FMatrix, FVector, PrimeField};

/// A subspace stored by its rref basis; equality is equality of subspaces.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    basis: FMatrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: PrimeField, ambient: usize) -> Self {
        Subspace {
            basis: FMatrix::zero(field, 0, ambient),
            pivots: Vec::new(),
        }
    }

    pub fn whole(field: PrimeField, ambient: usize) -> Self {
        Subspace {
            basis: FMatrix::identity(field, ambient),
            pivots: (0..ambient).collect(),
        }
    }

    /// Row space of an arbitrary matrix.
    pub fn from_matrix(m: &FMatrix) -> Self {
        let (basis, pivots) = rref(m);
        Subspace { basis, pivots }
    }

    /// Span of a list of vectors of length `ambient`.
    ///
    /// Panics if a vector has the wrong length; callers validate external input.
    pub fn span(field: PrimeField, ambient: usize, gens: &[FVector]) -> Self {
        let m = FMatrix::from_vectors(field, ambient, gens).expect("generator length matches ambient dimension");
        Self::from_matrix(&m)
    }

    pub(crate) fn span_rows(field: PrimeField, ambient: usize, rows: Vec<u32>) -> Self {
        let n = rows.len().checked_div(ambient).unwrap_or(0);
        Self::from_matrix(&FMatrix::from_raw(field, n, ambient, rows))
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.basis.field()
    }

    #[inline]
    pub fn ambient_dim(&self) -> usize {
        self.basis.cols()
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_whole(&self) -> bool {
        self.dim() == self.ambient_dim()
    }

    /// The canonical rref basis matrix.
    pub fn basis(&self) -> &FMatrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<FVector> {
        self.basis.row_vectors()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn non_pivot_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient_dim()];
        for &c in &self.pivots {
            is_pivot[c] = true;
        }
        (0..self.ambient_dim()).filter(|&c| !is_pivot[c]).collect()
    }

    /// Subtracts basis rows so that `v` vanishes on every pivot column. The
    /// result is zero iff `v` lies in the subspace.
    pub fn reduce_in_place(&self, v: &mut [u32]) {
        let f = self.field();
        for (i, &c) in self.pivots.iter().enumerate() {
            let s = v[c];
            if s != 0 {
                add_scaled_slice(f, v, f.neg(s), self.basis.row(i));
            }
        }
    }

    pub fn contains_coords(&self, v: &[u32]) -> bool {
        debug_assert_eq!(v.len(), self.ambient_dim());
        let mut w = v.to_vec();
        self.reduce_in_place(&mut w);
        w.iter().all(|&x| x == 0)
    }

    pub fn contains(&self, v: &FVector) -> bool {
        v.len() == self.ambient_dim() && self.contains_coords(v.coords())
    }

    /// Coordinates of `v` in the quotient space, read off the non-pivot columns.
    pub fn quotient_coords(&self, v: &[u32]) -> Vec<u32> {
        let mut w = v.to_vec();
        self.reduce_in_place(&mut w);
        self.non_pivot_columns().into_iter().map(|c| w[c]).collect()
    }

    /// Inclusion `self ⊆ other`.
    pub fn leq(&self, other: &Subspace) -> bool {
        self.ambient_dim() == other.ambient_dim() && (0..self.dim()).all(|r| other.contains_coords(self.basis.row(r)))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient_dim(), other.ambient_dim());
        Self::from_matrix(&self.basis.vstack(&other.basis))
    }

    /// Intersection through the left kernel of the stacked bases.
    pub fn intersect(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient_dim(), other.ambient_dim());
        let field = self.field();
        let n = self.ambient_dim();
        if self.is_zero() || other.is_zero() {
            return Subspace::zero(field, n);
        }
        let stacked = self.basis.vstack(&other.basis);
        let combos = kernel(&stacked.transpose());
        let r = self.dim();
        let mut rows = Vec::with_capacity(combos.rows() * n);
        for k in 0..combos.rows() {
            rows.extend(self.basis.vec_mul(&combos.row(k)[..r]));
        }
        Self::span_rows(field, n, rows)
    }

    /// Adds one vector.
    pub fn with(&self, v: &FVector) -> Subspace {
        let mut m = self.basis.clone();
        m.push_row(v.coords());
        Self::from_matrix(&m)
    }

    /// Generator lists in canonical order.
    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        self.basis.to_rows()
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(dim {}/{}, {:?})", self.dim(), self.ambient_dim(), self.basis)
    }
}
