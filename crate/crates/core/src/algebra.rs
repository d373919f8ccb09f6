//! Finite-dimensional associative algebras over GF(p) given by structure constants.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;

use crate::error::Error;
use crate::field::{add_scaled_slice, solve_linear, FMatrix, FVector, PrimeField};
use crate::subspace::Subspace;

/// Elements are coordinate vectors in the owning algebra's basis.
pub type AlgebraElement = FVector;

/// An associative GF(p)-algebra with basis `e_0, ..., e_{d-1}`.
///
/// `table` stores the coordinates of `e_i e_j` at `(i * d + j) * d ..`. The unit,
/// when one exists, is always recorded: constructors either verify a declared unit
/// or solve for it. Dimension 0 is the zero algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Algebra {
    field: PrimeField,
    dim: usize,
    table: Vec<u32>,
    unit: Option<FVector>,
    basis_names: Option<Vec<String>>,
}

impl Algebra {
    /// Builds an algebra from `products[i * dim + j] = e_i e_j`.
    ///
    /// Fails with the first non-associative basis triple, or if a declared unit is
    /// not a two-sided identity.
    pub fn from_products(
        field: PrimeField,
        dim: usize,
        products: &[Vec<u32>],
        unit: Option<Vec<u32>>,
        basis_names: Option<Vec<String>>,
    ) -> Result<Self, Error> {
        if products.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim,
                found: products.len(),
            });
        }
        let mut table = Vec::with_capacity(dim * dim * dim);
        for v in products {
            if v.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: v.len(),
                });
            }
            table.extend(v.iter().map(|&x| x % field.p()));
        }
        if let Some(names) = &basis_names {
            if names.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: names.len(),
                });
            }
        }
        let mut alg = Algebra {
            field,
            dim,
            table,
            unit: None,
            basis_names,
        };
        alg.check_associative()?;
        match unit {
            Some(u) => {
                if u.len() != dim {
                    return Err(Error::DimensionMismatch {
                        expected: dim,
                        found: u.len(),
                    });
                }
                let u = FVector::from_coords(field, u);
                alg.verify_unit(&u)?;
                alg.unit = Some(u);
            }
            None => alg.unit = alg.solve_for_unit(),
        }
        Ok(alg)
    }

    fn from_table_unchecked(field: PrimeField, dim: usize, table: Vec<u32>, names: Vec<String>) -> Self {
        let mut alg = Algebra {
            field,
            dim,
            table,
            unit: None,
            basis_names: Some(names),
        };
        debug_assert!(alg.check_associative().is_ok());
        alg.unit = alg.solve_for_unit();
        alg
    }

    fn check_associative(&self) -> Result<(), Error> {
        let d = self.dim;
        for i in 0..d {
            for j in 0..d {
                let ij = self.basis_product(i, j);
                for k in 0..d {
                    let left = self.mul_coords(ij, self.basis_element(k).coords());
                    let right = self.mul_coords(self.basis_element(i).coords(), self.basis_product(j, k));
                    if left != right {
                        return Err(Error::NotAssociative { i, j, k });
                    }
                }
            }
        }
        Ok(())
    }

    fn verify_unit(&self, u: &FVector) -> Result<(), Error> {
        for j in 0..self.dim {
            let e = self.basis_element(j);
            if self.mul_coords(u.coords(), e.coords()) != e.coords()
                || self.mul_coords(e.coords(), u.coords()) != e.coords()
            {
                return Err(Error::InvalidUnit { index: j });
            }
        }
        Ok(())
    }

    /// Solves the linear system `u e_j = e_j = e_j u` for all `j`.
    fn solve_for_unit(&self) -> Option<FVector> {
        let d = self.dim;
        let mut a = FMatrix::zero(self.field, 0, d);
        let mut rhs = Vec::new();
        for j in 0..d {
            // (u e_j)_k = sum_i u_i T[i][j][k]; (e_j u)_k = sum_i u_i T[j][i][k]
            for k in 0..d {
                let row: Vec<u32> = (0..d).map(|i| self.table[(i * d + j) * d + k]).collect();
                a.push_row(&row);
                rhs.push(u32::from(j == k));
                let row: Vec<u32> = (0..d).map(|i| self.table[(j * d + i) * d + k]).collect();
                a.push_row(&row);
                rhs.push(u32::from(j == k));
            }
        }
        let rhs = FVector::from_coords(self.field, rhs);
        let u = solve_linear(&a, &rhs).expect("shapes agree")?;
        debug_assert!(self.verify_unit(&u).is_ok());
        Some(u)
    }

    /// The zero algebra over GF(p).
    pub fn zero_algebra(field: PrimeField) -> Self {
        Algebra {
            field,
            dim: 0,
            table: Vec::new(),
            unit: Some(FVector::zero(field, 0)),
            basis_names: Some(Vec::new()),
        }
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.field.p()
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn unit(&self) -> Option<&FVector> {
        self.unit.as_ref()
    }

    pub fn is_unital(&self) -> bool {
        self.unit.is_some()
    }

    pub fn basis_names(&self) -> Option<&[String]> {
        self.basis_names.as_deref()
    }

    /// Coordinates of `e_i e_j`.
    #[inline]
    pub fn basis_product(&self, i: usize, j: usize) -> &[u32] {
        let d = self.dim;
        &self.table[(i * d + j) * d..(i * d + j + 1) * d]
    }

    pub fn basis_element(&self, i: usize) -> FVector {
        FVector::unit_vector(self.field, self.dim, i)
    }

    pub fn basis(&self) -> Vec<FVector> {
        (0..self.dim).map(|i| self.basis_element(i)).collect()
    }

    pub fn zero(&self) -> FVector {
        FVector::zero(self.field, self.dim)
    }

    pub fn element(&self, coords: Vec<u32>) -> Result<FVector, Error> {
        if coords.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: coords.len(),
            });
        }
        Ok(FVector::from_coords(self.field, coords))
    }

    fn check_operand(&self, a: &FVector) -> Result<(), Error> {
        if a.field() != self.field || a.len() != self.dim {
            return Err(Error::AlgebraMismatch);
        }
        Ok(())
    }

    /// Product of raw coordinate slices (no operand checks).
    pub fn mul_coords(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        let d = self.dim;
        let f = self.field;
        let mut out = vec![0u32; d];
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                if bj == 0 {
                    continue;
                }
                add_scaled_slice(f, &mut out, f.mul(ai, bj), self.basis_product(i, j));
            }
        }
        out
    }

    pub(crate) fn mul_raw(&self, a: &FVector, b: &FVector) -> FVector {
        FVector::from_coords(self.field, self.mul_coords(a.coords(), b.coords()))
    }

    pub(crate) fn bracket_raw(&self, a: &FVector, b: &FVector) -> FVector {
        let ab = self.mul_coords(a.coords(), b.coords());
        let ba = self.mul_coords(b.coords(), a.coords());
        let f = self.field;
        FVector::from_coords(f, ab.iter().zip(&ba).map(|(&x, &y)| f.sub(x, y)).collect())
    }

    pub fn mul(&self, a: &FVector, b: &FVector) -> Result<FVector, Error> {
        self.check_operand(a)?;
        self.check_operand(b)?;
        Ok(self.mul_raw(a, b))
    }

    /// The commutator `ab - ba`.
    pub fn bracket(&self, a: &FVector, b: &FVector) -> Result<FVector, Error> {
        self.check_operand(a)?;
        self.check_operand(b)?;
        Ok(self.bracket_raw(a, b))
    }

    /// `x^n` for `n >= 1` by repeated squaring.
    pub fn pow(&self, x: &FVector, mut n: u64) -> FVector {
        assert!(n >= 1, "non-unital algebras have no zeroth power");
        let mut base = x.clone();
        let mut acc: Option<FVector> = None;
        while n > 0 {
            if n & 1 == 1 {
                acc = Some(match acc {
                    None => base.clone(),
                    Some(a) => self.mul_raw(&a, &base),
                });
            }
            n >>= 1;
            if n > 0 {
                base = self.mul_raw(&base, &base);
            }
        }
        acc.expect("n >= 1")
    }

    /// Matrix of `y -> x y` acting on column vectors.
    pub fn left_mul_matrix(&self, x: &FVector) -> FMatrix {
        let d = self.dim;
        let mut m = FMatrix::zero(self.field, d, d);
        for j in 0..d {
            let col = self.mul_coords(x.coords(), self.basis_element(j).coords());
            for (k, &v) in col.iter().enumerate() {
                m.set(k, j, v);
            }
        }
        m
    }

    /// Matrix of `y -> y x` acting on column vectors.
    pub fn right_mul_matrix(&self, x: &FVector) -> FMatrix {
        let d = self.dim;
        let mut m = FMatrix::zero(self.field, d, d);
        for j in 0..d {
            let col = self.mul_coords(self.basis_element(j).coords(), x.coords());
            for (k, &v) in col.iter().enumerate() {
                m.set(k, j, v);
            }
        }
        m
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.dim).all(|i| (0..i).all(|j| self.basis_product(i, j) == self.basis_product(j, i)))
    }

    /// Number of elements, `p^dim`, saturating.
    pub fn cardinality(&self) -> u128 {
        count_elements(self.field, self.dim)
    }

    /// Every element exactly once, in odometer order starting at zero.
    pub fn enumerate_elements(&self, budget: u64) -> Result<ElementIter, Error> {
        ElementIter::new(self.field, self.dim, budget)
    }

    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> FVector {
        random_vector(self.field, self.dim, rng)
    }

    /// `n x n` matrices with basis `E_11, E_12, ..., E_nn` in row-major order.
    pub fn matrix_algebra(n: usize, field: PrimeField) -> Self {
        let entries: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
        Self::matrix_subalgebra(field, &entries, "")
    }

    /// Upper triangular `n x n` matrices, basis `E_ij` with `i <= j`.
    pub fn triangular_algebra(n: usize, field: PrimeField) -> Self {
        let entries: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
        Self::matrix_subalgebra(field, &entries, "")
    }

    /// Strictly upper triangular `n x n` matrices (nilpotent, non-unital).
    pub fn strictly_upper_triangular(n: usize, field: PrimeField) -> Self {
        let entries: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        Self::matrix_subalgebra(field, &entries, "")
    }

    /// Span of matrix units closed under multiplication.
    fn matrix_subalgebra(field: PrimeField, entries: &[(usize, usize)], prefix: &str) -> Self {
        let d = entries.len();
        let mut table = vec![0u32; d * d * d];
        for (a, &(i, j)) in entries.iter().enumerate() {
            for (b, &(k, l)) in entries.iter().enumerate() {
                if j == k {
                    let c = entries
                        .iter()
                        .position(|&e| e == (i, l))
                        .expect("matrix units closed under products");
                    table[(a * d + b) * d + c] = 1;
                }
            }
        }
        let names = entries
            .iter()
            .map(|(i, j)| format!("{prefix}E{}{}", i + 1, j + 1))
            .collect();
        Self::from_table_unchecked(field, d, table, names)
    }

    /// `F_p[t]/(t^k)` with basis `1, t, ..., t^(k-1)`.
    pub fn truncated_poly(k: usize, field: PrimeField) -> Self {
        let mut table = vec![0u32; k * k * k];
        for i in 0..k {
            for j in 0..k {
                if i + j < k {
                    table[(i * k + j) * k + i + j] = 1;
                }
            }
        }
        let names = (0..k)
            .map(|i| match i {
                0 => String::from("1"),
                1 => String::from("t"),
                _ => format!("t^{i}"),
            })
            .collect();
        Self::from_table_unchecked(field, k, table, names)
    }

    /// `d`-dimensional algebra in which every product vanishes.
    pub fn zero_product(d: usize, field: PrimeField) -> Self {
        let names = (0..d).map(|i| format!("x{}", i + 1)).collect();
        Self::from_table_unchecked(field, d, vec![0; d * d * d], names)
    }

    /// `a ⊕ b` with componentwise multiplication; basis of `a` first.
    pub fn direct_sum(a: &Algebra, b: &Algebra) -> Result<Self, Error> {
        if a.field != b.field {
            return Err(Error::AlgebraMismatch);
        }
        let (da, db) = (a.dim, b.dim);
        let d = da + db;
        let mut table = vec![0u32; d * d * d];
        for i in 0..da {
            for j in 0..da {
                let src = a.basis_product(i, j);
                table[(i * d + j) * d..(i * d + j) * d + da].copy_from_slice(src);
            }
        }
        for i in 0..db {
            for j in 0..db {
                let src = b.basis_product(i, j);
                let (ii, jj) = (da + i, da + j);
                table[(ii * d + jj) * d + da..(ii * d + jj + 1) * d].copy_from_slice(src);
            }
        }
        let names_of = |alg: &Algebra, tag: &str| -> Vec<String> {
            match &alg.basis_names {
                Some(n) => n.iter().map(|s| format!("{tag}{s}")).collect(),
                None => (0..alg.dim).map(|i| format!("{tag}e{i}")).collect(),
            }
        };
        let mut names = names_of(a, "L.");
        names.extend(names_of(b, "R."));
        Ok(Self::from_table_unchecked(a.field, d, table, names))
    }

    /// The opposite algebra, `e_i * e_j := e_j e_i`.
    pub fn opposite(&self) -> Self {
        let d = self.dim;
        let mut table = vec![0u32; d * d * d];
        for i in 0..d {
            for j in 0..d {
                table[(i * d + j) * d..(i * d + j + 1) * d].copy_from_slice(self.basis_product(j, i));
            }
        }
        let names = self
            .basis_names
            .clone()
            .unwrap_or_else(|| (0..d).map(|i| format!("e{i}")).collect());
        Self::from_table_unchecked(self.field, d, table, names)
    }

    pub fn with_basis_names(mut self, names: Vec<String>) -> Result<Self, Error> {
        if names.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: names.len(),
            });
        }
        self.basis_names = Some(names);
        Ok(self)
    }

    /// Minimal unitization: the algebra itself when unital, otherwise
    /// `GF(p) × A` with `(m, x)(n, y) = (mn, my + nx + xy)`.
    pub fn unitize(&self) -> Unitization {
        if self.is_unital() {
            return Unitization {
                base: self.clone(),
                result: self.clone(),
                adjoined: false,
            };
        }
        let d = self.dim;
        let n = d + 1;
        let mut table = vec![0u32; n * n * n];
        // 1 * 1 = 1, 1 * e_j = e_j, e_i * 1 = e_i, e_i e_j from the base table.
        table[0] = 1;
        for j in 0..d {
            table[(j + 1) * n + j + 1] = 1;
            table[((j + 1) * n) * n + j + 1] = 1;
        }
        for i in 0..d {
            for j in 0..d {
                let dst = ((i + 1) * n + j + 1) * n;
                table[dst + 1..dst + n].copy_from_slice(self.basis_product(i, j));
            }
        }
        let mut names = vec![String::from("1")];
        match &self.basis_names {
            Some(b) => names.extend(b.iter().cloned()),
            None => names.extend((0..d).map(|i| format!("e{i}"))),
        }
        let result = Self::from_table_unchecked(self.field, n, table, names);
        debug_assert_eq!(result.unit().map(|u| u.coords()[0]), Some(1));
        Unitization {
            base: self.clone(),
            result,
            adjoined: true,
        }
    }

    /// Whether `i` is closed under left and right multiplication by the basis.
    pub fn is_ideal(&self, i: &Subspace) -> bool {
        if i.ambient_dim() != self.dim || i.field() != self.field {
            return false;
        }
        let basis = self.basis();
        i.basis_vectors().iter().all(|v| {
            basis.iter().all(|e| {
                i.contains_coords(&self.mul_coords(e.coords(), v.coords()))
                    && i.contains_coords(&self.mul_coords(v.coords(), e.coords()))
            })
        })
    }

    /// The quotient by a two-sided ideal, on the basis of non-pivot coordinates.
    pub fn quotient(&self, ideal: &Subspace) -> Result<Quotient, Error> {
        if !self.is_ideal(ideal) {
            return Err(Error::NotAnIdeal);
        }
        let free_cols = ideal.non_pivot_columns();
        let q = free_cols.len();
        let mut table = vec![0u32; q * q * q];
        for (a, &ca) in free_cols.iter().enumerate() {
            for (b, &cb) in free_cols.iter().enumerate() {
                let mut prod = self.basis_product(ca, cb).to_vec();
                ideal.reduce_in_place(&mut prod);
                for (c, &cc) in free_cols.iter().enumerate() {
                    table[(a * q + b) * q + c] = prod[cc];
                }
            }
        }
        let names = match &self.basis_names {
            Some(n) => free_cols.iter().map(|&c| n[c].clone()).collect(),
            None => free_cols.iter().map(|&c| format!("e{c}")).collect(),
        };
        let algebra = if q == 0 {
            Algebra::zero_algebra(self.field)
        } else {
            Self::from_table_unchecked(self.field, q, table, names)
        };
        Ok(Quotient {
            algebra,
            ideal: ideal.clone(),
            free_cols,
        })
    }
}

/// `R̃` together with the embedding of `R`.
#[derive(Clone, Debug)]
pub struct Unitization {
    pub base: Algebra,
    pub result: Algebra,
    adjoined: bool,
}

impl Unitization {
    /// True when a unit was adjoined (the base was non-unital).
    pub fn adjoined(&self) -> bool {
        self.adjoined
    }

    /// `x -> (0, x)`, or the identity map when nothing was adjoined.
    pub fn embed(&self, x: &FVector) -> FVector {
        if !self.adjoined {
            return x.clone();
        }
        let mut c = Vec::with_capacity(x.len() + 1);
        c.push(0);
        c.extend_from_slice(x.coords());
        FVector::from_coords(self.result.field(), c)
    }

    /// Inverse of `embed` on its image; `None` if the scalar part is nonzero.
    pub fn restrict(&self, x: &FVector) -> Option<FVector> {
        if !self.adjoined {
            return Some(x.clone());
        }
        if x.coords()[0] != 0 {
            return None;
        }
        Some(FVector::from_coords(self.result.field(), x.coords()[1..].to_vec()))
    }

    /// The unit of `R̃`.
    pub fn one(&self) -> FVector {
        self.result.unit().expect("unitization is unital").clone()
    }

    /// `λ·1 + x` for `x` in the base.
    pub fn scalar_plus(&self, lambda: u32, x: &FVector) -> FVector {
        let mut v = self.embed(x);
        v.add_scaled(lambda, &self.one());
        v
    }
}

/// `R/I` with its projection.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub algebra: Algebra,
    pub ideal: Subspace,
    free_cols: Vec<usize>,
}

impl Quotient {
    pub fn project(&self, x: &FVector) -> FVector {
        let mut c = x.coords().to_vec();
        self.ideal.reduce_in_place(&mut c);
        FVector::from_coords(
            self.algebra.field(),
            self.free_cols.iter().map(|&i| c[i]).collect(),
        )
    }

    /// Canonical representative with zeros on the ideal's pivot columns.
    pub fn lift(&self, y: &FVector) -> FVector {
        let mut c = vec![0u32; self.ideal.ambient_dim()];
        for (k, &i) in self.free_cols.iter().enumerate() {
            c[i] = y.coords()[k];
        }
        FVector::from_coords(self.algebra.field(), c)
    }

    /// Image of a subspace of the parent algebra.
    pub fn project_subspace(&self, v: &Subspace) -> Subspace {
        let gens: Vec<FVector> = v.basis_vectors().iter().map(|x| self.project(x)).collect();
        Subspace::span(self.algebra.field(), self.algebra.dim(), &gens)
    }

    /// Preimage of a subspace of the quotient.
    pub fn preimage(&self, w: &Subspace) -> Subspace {
        let mut gens: Vec<FVector> = w.basis_vectors().iter().map(|y| self.lift(y)).collect();
        gens.extend(self.ideal.basis_vectors());
        Subspace::span(self.algebra.field(), self.ideal.ambient_dim(), &gens)
    }
}

pub(crate) fn count_elements(field: PrimeField, dim: usize) -> u128 {
    let mut n: u128 = 1;
    for _ in 0..dim {
        n = n.saturating_mul(field.p() as u128);
    }
    n
}

pub(crate) fn random_vector<R: Rng + ?Sized>(field: PrimeField, dim: usize, rng: &mut R) -> FVector {
    FVector::from_coords(field, (0..dim).map(|_| rng.random_range(0..field.p())).collect())
}

/// Odometer over all vectors of `GF(p)^dim`.
#[derive(Clone, Debug)]
pub struct ElementIter {
    field: PrimeField,
    current: Vec<u32>,
    done: bool,
}

impl ElementIter {
    pub fn new(field: PrimeField, dim: usize, budget: u64) -> Result<Self, Error> {
        let required = count_elements(field, dim);
        if required > budget as u128 {
            return Err(Error::BudgetExceeded { required, budget });
        }
        Ok(ElementIter {
            field,
            current: vec![0; dim],
            done: false,
        })
    }
}

impl Iterator for ElementIter {
    type Item = FVector;

    fn next(&mut self) -> Option<FVector> {
        if self.done {
            return None;
        }
        let out = FVector::from_coords(self.field, self.current.clone());
        let p = self.field.p();
        let mut carry = true;
        for c in self.current.iter_mut() {
            *c += 1;
            if *c == p {
                *c = 0;
            } else {
                carry = false;
                break;
            }
        }
        if carry {
            self.done = true;
        }
        Some(out)
    }
}

/// One representative per line through the origin: nonzero vectors whose first
/// nonzero coordinate is 1. Scans whose predicate is invariant under nonzero
/// scaling only need these.
pub fn projective_points(field: PrimeField, dim: usize, budget: u64) -> Result<impl Iterator<Item = FVector>, Error> {
    Ok(ElementIter::new(field, dim, budget)?.filter(|v| v.coords().iter().find(|&&c| c != 0) == Some(&1)))
}
