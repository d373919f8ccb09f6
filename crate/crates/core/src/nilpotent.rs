//! Square-zero and nilpotent elements, orthogonally factorizable square-zero
//! elements, inner automorphisms and zero-product balance.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;

use crate::algebra::{projective_points, Algebra, Unitization};
use crate::budget::seeded_rng;
use crate::error::Error;
use crate::field::{kernel, solve_linear, FVector};
use crate::subspace::Subspace;

/// Elements found by a scan, and whether the scan was exhaustive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElementScan {
    pub elements: Vec<FVector>,
    pub exhaustive: bool,
}

/// Span of `{yz : zy = 0}` with one factorization per basis generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fn2Span {
    pub span: Subspace,
    /// `(y, z)` with `zy = 0`; the products `yz` span `span`.
    pub witnesses: Vec<(FVector, FVector)>,
    pub exhaustive: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NilReport {
    pub n2_span: Subspace,
    pub n_span: Subspace,
    pub fn2_span: Subspace,
    pub fn2_witnesses: Vec<(FVector, FVector)>,
    pub n2_is_full: bool,
    pub commutators_in_n2span: bool,
    pub exhaustive: bool,
}

/// Conjugation `a ↦ u a u⁻¹` by a unit of the unitization. Both elements are
/// stored in unitization coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InnerAutomorphism {
    pub u: FVector,
    pub u_inv: FVector,
}

impl InnerAutomorphism {
    pub fn apply(&self, unit: &Unitization, a: &FVector) -> FVector {
        let r = &unit.result;
        let c = r.mul_raw(&r.mul_raw(&self.u, &unit.embed(a)), &self.u_inv);
        unit.restrict(&c).expect("the algebra is an ideal in its unitization")
    }

    /// `u = 1 + x`, `u⁻¹ = 1 - x` for `x² = 0`.
    pub fn square_zero(unit: &Unitization, x: &FVector) -> Self {
        let f = unit.base.field();
        InnerAutomorphism {
            u: unit.scalar_plus(1, x),
            u_inv: unit.scalar_plus(1, &x.scale(f.neg(1))),
        }
    }

    /// `u = 1 + x + … + x^{k-1}`, `u⁻¹ = 1 - x` where `k` is the nilpotency
    /// index of `x`.
    pub fn nilpotent(unit: &Unitization, x: &FVector) -> Option<Self> {
        let a = &unit.base;
        let k = a.nilpotency_index(x)?;
        let f = a.field();
        let mut sum = a.zero();
        let mut power = x.clone();
        for _ in 1..k {
            sum = sum.add(&power);
            power = a.mul_raw(&power, x);
        }
        Some(InnerAutomorphism {
            u: unit.scalar_plus(1, &sum),
            u_inv: unit.scalar_plus(1, &x.scale(f.neg(1))),
        })
    }

    pub fn is_valid(&self, unit: &Unitization) -> bool {
        let r = &unit.result;
        let one = unit.one();
        r.mul_raw(&self.u, &self.u_inv) == one && r.mul_raw(&self.u_inv, &self.u) == one
    }
}

/// Outcome of the scalar-multiple argument for a nilpotent `x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VandermondeOutcome {
    Verified,
    /// `[x, v] ⊄ v` although `v` is invariant under every `λx`.
    Failed { element: FVector },
    /// Fewer than `index` nonzero scalars are available.
    SkippedHypothesis { index: usize, p: u32 },
    /// `v` is not invariant under the automorphism induced by `λx`.
    PreconditionViolated { lambda: u32 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZpbReport {
    pub balanced: bool,
    /// Basis triples `(i, j, k)` with `e_i e_j ⊗ e_k - e_i ⊗ e_j e_k ∉ W`.
    pub defect_triples: Vec<(usize, usize, usize)>,
    /// Basis of the defect tensors reduced modulo `W`, in `dim²` coordinates.
    pub defect_basis: Vec<FVector>,
}

fn tensor(v: &FVector, w: &FVector) -> Vec<u32> {
    let f = v.field();
    let mut out = Vec::with_capacity(v.len() * w.len());
    for &a in v.coords() {
        for &b in w.coords() {
            out.push(f.mul(a, b));
        }
    }
    out
}

impl Algebra {
    fn scan(&self, budget: u64, keep: impl Fn(&FVector) -> bool) -> ElementScan {
        match self.enumerate_elements(budget) {
            Ok(it) => ElementScan {
                elements: it.filter(|x| keep(x)).collect(),
                exhaustive: true,
            },
            Err(_) => {
                let mut rng = seeded_rng(0);
                let mut elements: Vec<FVector> = (0..budget)
                    .map(|_| self.random_element(&mut rng))
                    .filter(|x| keep(x))
                    .collect();
                elements.sort();
                elements.dedup();
                ElementScan {
                    elements,
                    exhaustive: false,
                }
            }
        }
    }

    /// `N₂(A) = { x : x² = 0 }`.
    pub fn square_zero_elements(&self, budget: u64) -> ElementScan {
        self.scan(budget, |x| self.mul_raw(x, x).is_zero())
    }

    pub fn n2_span(&self, budget: u64) -> (Subspace, bool) {
        let s = self.square_zero_elements(budget);
        (Subspace::span(self.field(), self.dim(), &s.elements), s.exhaustive)
    }

    /// Smallest `k >= 1` with `x^k = 0`, or `None` if `x` is not nilpotent.
    /// Powers of `x` live in a subalgebra of dimension at most `dim`, so
    /// `k <= dim + 1`.
    pub fn nilpotency_index(&self, x: &FVector) -> Option<usize> {
        let mut power = x.clone();
        for k in 1..=self.dim() + 1 {
            if power.is_zero() {
                return Some(k);
            }
            power = self.mul_raw(&power, x);
        }
        power.is_zero().then_some(self.dim() + 2)
    }

    pub fn is_nilpotent(&self, x: &FVector) -> bool {
        self.pow(x, self.dim() as u64 + 1).is_zero()
    }

    pub fn nilpotent_elements(&self, budget: u64) -> ElementScan {
        self.scan(budget, |x| self.is_nilpotent(x))
    }

    pub fn nilpotent_span(&self, budget: u64) -> (Subspace, bool) {
        let s = self.nilpotent_elements(budget);
        (Subspace::span(self.field(), self.dim(), &s.elements), s.exhaustive)
    }

    /// `FN₂(R)⁺`. For fixed `y` the admissible `z` form the kernel of
    /// right multiplication by `y`, so only `y` is enumerated.
    pub fn fn2_span(&self, budget: u64) -> Fn2Span {
        let d = self.dim();
        let mut span = self.zero_space();
        let mut witnesses = Vec::new();
        let mut visit = |y: FVector, span: &mut Subspace| {
            let k = kernel(&self.right_mul_matrix(&y));
            for z in k.row_vectors() {
                let x = self.mul_raw(&y, &z);
                if !span.contains(&x) {
                    *span = span.with(&x);
                    witnesses.push((y.clone(), z));
                }
            }
        };
        let exhaustive = match projective_points(self.field(), d, budget) {
            Ok(points) => {
                for y in points {
                    visit(y, &mut span);
                    if span.is_whole() {
                        break;
                    }
                }
                true
            }
            Err(_) => {
                let mut rng = seeded_rng(0);
                for _ in 0..budget {
                    visit(self.random_element(&mut rng), &mut span);
                }
                false
            }
        };
        Fn2Span {
            span,
            witnesses,
            exhaustive,
        }
    }

    pub fn nil_report(&self, budget: u64) -> NilReport {
        let (n2_span, e1) = self.n2_span(budget);
        let (n_span, e2) = self.nilpotent_span(budget);
        let fn2 = self.fn2_span(budget);
        NilReport {
            n2_is_full: self.is_full(&n2_span),
            commutators_in_n2span: self.commutator_space().leq(&n2_span),
            n2_span,
            n_span,
            fn2_span: fn2.span,
            fn2_witnesses: fn2.witnesses,
            exhaustive: e1 && e2 && fn2.exhaustive,
        }
    }

    /// `[R, R] ⊆ N₂(R)⁺`.
    pub fn commutators_in_n2span(&self, budget: u64) -> bool {
        self.commutator_space().leq(&self.n2_span(budget).0)
    }

    /// Every unit of the unitization with its inverse.
    pub fn inner_automorphisms(&self, budget: u64) -> Result<Vec<InnerAutomorphism>, Error> {
        let unit = self.unitize();
        let r = &unit.result;
        let one = unit.one();
        let mut out = Vec::new();
        for u in r.enumerate_elements(budget)? {
            let m = r.left_mul_matrix(&u);
            if m.rank() < r.dim() {
                continue;
            }
            let u_inv = solve_linear(&m, &one)?.expect("full rank");
            let aut = InnerAutomorphism { u, u_inv };
            debug_assert!(aut.is_valid(&unit));
            out.push(aut);
        }
        Ok(out)
    }

    /// A subset of the unit group `auts` generating it. Invariance under the
    /// whole group is invariance under these.
    pub fn unit_group_generators(&self, unit: &Unitization, auts: &[InnerAutomorphism]) -> Vec<InnerAutomorphism> {
        let r = &unit.result;
        let mut gens: Vec<InnerAutomorphism> = Vec::new();
        let mut group: BTreeSet<FVector> = BTreeSet::new();
        group.insert(unit.one());
        for a in auts {
            if group.contains(&a.u) {
                continue;
            }
            gens.push(a.clone());
            let mut frontier: Vec<FVector> = group.iter().cloned().collect();
            while let Some(g) = frontier.pop() {
                for h in &gens {
                    let gh = r.mul_raw(&g, &h.u);
                    if group.insert(gh.clone()) {
                        frontier.push(gh);
                    }
                }
            }
        }
        gens
    }

    pub fn sq_zero_units(&self, unit: &Unitization, square_zero: &[FVector]) -> Vec<InnerAutomorphism> {
        square_zero
            .iter()
            .filter(|x| !x.is_zero())
            .map(|x| InnerAutomorphism::square_zero(unit, x))
            .collect()
    }

    pub fn nilpotent_units(&self, unit: &Unitization, nilpotent: &[FVector]) -> Vec<InnerAutomorphism> {
        nilpotent
            .iter()
            .filter(|x| !x.is_zero())
            .filter_map(|x| InnerAutomorphism::nilpotent(unit, x))
            .collect()
    }

    /// First `(automorphism index, basis vector)` moved outside `v`, if any.
    pub fn invariance_violation(
        &self,
        v: &Subspace,
        unit: &Unitization,
        auts: &[InnerAutomorphism],
    ) -> Option<(usize, FVector)> {
        let basis = v.basis_vectors();
        for (i, a) in auts.iter().enumerate() {
            for b in &basis {
                if !v.contains(&a.apply(unit, b)) {
                    return Some((i, b.clone()));
                }
            }
        }
        None
    }

    pub fn is_invariant(&self, v: &Subspace, unit: &Unitization, auts: &[InnerAutomorphism]) -> bool {
        self.invariance_violation(v, unit, auts).is_none()
    }

    /// Smallest superspace of `v` mapped into itself by every automorphism in `auts`.
    pub fn orbit_closure(&self, v: &Subspace, unit: &Unitization, auts: &[InnerAutomorphism]) -> Subspace {
        let mut cur = v.clone();
        loop {
            let mut rows = cur.basis().clone();
            for b in cur.basis_vectors() {
                for a in auts {
                    rows.push_row(a.apply(unit, &b).coords());
                }
            }
            let next = Subspace::from_matrix(&rows);
            if next.dim() == cur.dim() {
                return cur;
            }
            cur = next;
        }
    }

    /// Checks `[x, v] ⊆ v` for a nilpotent `x` of index `k`, given that `v` is
    /// invariant under the automorphisms induced by all `λx`, `λ ≠ 0`. The
    /// interpolation uses `k` distinct nonzero scalars, so it needs `p > k`.
    pub fn vandermonde_bracket_check(&self, v: &Subspace, x: &FVector) -> Result<VandermondeOutcome, Error> {
        let k = self
            .nilpotency_index(x)
            .ok_or_else(|| Error::InvalidParameter(String::from("element is not nilpotent")))?;
        let f = self.field();
        if f.p() as usize <= k {
            return Ok(VandermondeOutcome::SkippedHypothesis { index: k, p: f.p() });
        }
        let unit = self.unitize();
        for lambda in 1..f.p() {
            let aut = InnerAutomorphism::nilpotent(&unit, &x.scale(lambda)).expect("scalar multiple is nilpotent");
            if !self.is_invariant(v, &unit, core::slice::from_ref(&aut)) {
                return Ok(VandermondeOutcome::PreconditionViolated { lambda });
            }
        }
        for b in v.basis_vectors() {
            let c = self.bracket_raw(x, &b);
            if !v.contains(&c) {
                return Ok(VandermondeOutcome::Failed { element: b });
            }
        }
        Ok(VandermondeOutcome::Verified)
    }

    /// The span `W` of `v ⊗ w` over `vw = 0`, in `dim²` coordinates.
    pub fn zero_product_tensors(&self, budget: u64) -> Result<Subspace, Error> {
        let d = self.dim();
        let mut rows = Vec::new();
        for v in projective_points(self.field(), d, budget)? {
            for w in kernel(&self.left_mul_matrix(&v)).row_vectors() {
                rows.extend(tensor(&v, &w));
            }
        }
        Ok(Subspace::span_rows(self.field(), d * d, rows))
    }

    /// Whether `xy ⊗ z - x ⊗ yz ∈ W` for all `x, y, z`; trilinearity reduces
    /// this to basis triples.
    pub fn zero_product_balanced(&self, budget: u64) -> Result<ZpbReport, Error> {
        let d = self.dim();
        let f = self.field();
        let w = self.zero_product_tensors(budget)?;
        let basis = self.basis();
        let mut defect_triples = Vec::new();
        let mut defects = Vec::new();
        for i in 0..d {
            for j in 0..d {
                let eij = FVector::from_coords(f, self.basis_product(i, j).to_vec());
                for k in 0..d {
                    let ejk = FVector::from_coords(f, self.basis_product(j, k).to_vec());
                    let mut t = tensor(&eij, &basis[k]);
                    let s = tensor(&basis[i], &ejk);
                    for (a, b) in t.iter_mut().zip(s) {
                        *a = f.sub(*a, b);
                    }
                    w.reduce_in_place(&mut t);
                    if t.iter().any(|&c| c != 0) {
                        defect_triples.push((i, j, k));
                        defects.push(FVector::from_coords(f, t));
                    }
                }
            }
        }
        let defect_basis = Subspace::span(f, d * d, &defects).basis_vectors();
        Ok(ZpbReport {
            balanced: defect_triples.is_empty(),
            defect_triples,
            defect_basis,
        })
    }
}
