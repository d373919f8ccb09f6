//! Subspace calculus inside an algebra: bracket and product subspaces, ideal
//! closures, centers, normalizer towers `T^n(V)` and derived towers `V^(n)`.

use alloc::vec::Vec;

use crate::algebra::Algebra;
use crate::error::Error;
use crate::field::{kernel, FMatrix, FVector};
use crate::subspace::Subspace;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum TowerKind {
    /// `T^{n+1}(V) = T(T^n(V))`
    Normalizer,
    /// `V^{(n+1)} = [V^{(n)}, V^{(n)}]`
    Derived,
}

/// Stages `0..` of a tower, starting with `V` itself.
///
/// When `stabilized_at == Some(s)`, `stages[s] == stages[s + 1]` and the
/// sequence is constant from `s` on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TowerRecord {
    pub kind: TowerKind,
    pub stages: Vec<Subspace>,
    pub stabilized_at: Option<usize>,
}

impl TowerRecord {
    /// Dimensions of the distinct stages (through the stabilization index).
    pub fn dims(&self) -> Vec<usize> {
        let end = self.stabilized_at.map_or(self.stages.len(), |s| s + 1);
        self.stages[..end].iter().map(Subspace::dim).collect()
    }

    /// Stage `n`, extended by the stable value past the recorded range.
    pub fn stage(&self, n: usize) -> Option<&Subspace> {
        match self.stages.get(n) {
            Some(s) => Some(s),
            None => self.stabilized_at.map(|s| &self.stages[s]),
        }
    }
}

impl Algebra {
    pub fn whole_space(&self) -> Subspace {
        Subspace::whole(self.field(), self.dim())
    }

    pub fn zero_space(&self) -> Subspace {
        Subspace::zero(self.field(), self.dim())
    }

    pub fn span(&self, gens: &[FVector]) -> Result<Subspace, Error> {
        for g in gens {
            if g.len() != self.dim() || g.field() != self.field() {
                return Err(Error::AlgebraMismatch);
            }
        }
        Ok(Subspace::span(self.field(), self.dim(), gens))
    }

    fn check_space(&self, s: &Subspace) {
        assert!(
            s.ambient_dim() == self.dim() && s.field() == self.field(),
            "subspace does not belong to this algebra"
        );
    }

    /// `[G, H]`, spanned by brackets of basis pairs.
    pub fn bracket_space(&self, g: &Subspace, h: &Subspace) -> Subspace {
        self.check_space(g);
        self.check_space(h);
        let gb = g.basis_vectors();
        let hb = h.basis_vectors();
        let mut rows = Vec::with_capacity(gb.len() * hb.len() * self.dim());
        for x in &gb {
            for y in &hb {
                rows.extend(self.bracket_raw(x, y).into_coords());
            }
        }
        Subspace::span_rows(self.field(), self.dim(), rows)
    }

    /// `GH`, spanned by products of basis pairs.
    pub fn product_space(&self, g: &Subspace, h: &Subspace) -> Subspace {
        self.check_space(g);
        self.check_space(h);
        let gb = g.basis_vectors();
        let hb = h.basis_vectors();
        let mut rows = Vec::with_capacity(gb.len() * hb.len() * self.dim());
        for x in &gb {
            for y in &hb {
                rows.extend(self.mul_coords(x.coords(), y.coords()));
            }
        }
        Subspace::span_rows(self.field(), self.dim(), rows)
    }

    /// The commutator subspace `[R, R]`.
    pub fn commutator_space(&self) -> Subspace {
        let r = self.whole_space();
        self.bracket_space(&r, &r)
    }

    /// Smallest two-sided ideal containing `v`, by iterating `v <- v + Rv + vR`.
    pub fn ideal_closure(&self, v: &Subspace) -> Subspace {
        self.check_space(v);
        let basis = self.basis();
        let mut cur = v.clone();
        loop {
            let mut rows = cur.basis().clone();
            for x in cur.basis_vectors() {
                for e in &basis {
                    rows.push_row(&self.mul_coords(e.coords(), x.coords()));
                    rows.push_row(&self.mul_coords(x.coords(), e.coords()));
                }
            }
            let next = Subspace::from_matrix(&rows);
            if next.dim() == cur.dim() {
                return cur;
            }
            cur = next;
        }
    }

    /// Reference formula `V + RV + VR + RVR`, used to cross-check `ideal_closure`.
    pub fn ideal_closure_direct(&self, v: &Subspace) -> Subspace {
        let r = self.whole_space();
        let rv = self.product_space(&r, v);
        let vr = self.product_space(v, &r);
        let rvr = self.product_space(&rv, &r);
        v.sum(&rv).sum(&vr).sum(&rvr)
    }

    /// Whether `x` generates `R` as an ideal.
    pub fn is_full(&self, x: &Subspace) -> bool {
        self.ideal_closure(x).is_whole()
    }

    /// Whether `[R, V]` is full.
    pub fn is_fully_noncentral(&self, v: &Subspace) -> bool {
        self.is_full(&self.bracket_space(&self.whole_space(), v))
    }

    /// `Z(R) = T(0)`.
    pub fn center(&self) -> Subspace {
        self.t_of(&self.zero_space())
    }

    /// `T(V) = { x : [R, x] ⊆ V }`, as the kernel of
    /// `x -> (π[e_j, x])_j` where `π` is the projection onto `R/V`.
    pub fn t_of(&self, v: &Subspace) -> Subspace {
        self.check_space(v);
        let d = self.dim();
        let free = v.non_pivot_columns();
        let c = free.len();
        if c == 0 {
            return self.whole_space();
        }
        let mut m = FMatrix::zero(self.field(), d * c, d);
        for j in 0..d {
            let ej = self.basis_element(j);
            for i in 0..d {
                let q = v.quotient_coords(self.bracket_raw(&ej, &self.basis_element(i)).coords());
                for (f, &val) in q.iter().enumerate() {
                    m.set(j * c + f, i, val);
                }
            }
        }
        Subspace::from_matrix(&kernel(&m))
    }

    /// `T(V)` by testing every element; only for small algebras.
    pub fn t_of_by_scan(&self, v: &Subspace, budget: u64) -> Result<Subspace, Error> {
        let basis = self.basis();
        let members: Vec<FVector> = self
            .enumerate_elements(budget)?
            .filter(|x| basis.iter().all(|e| v.contains(&self.bracket_raw(e, x))))
            .collect();
        Ok(Subspace::span(self.field(), self.dim(), &members))
    }

    /// Default tower depth cap, `dim + 2`.
    pub fn default_tower_depth(&self) -> usize {
        self.dim() + 2
    }

    fn tower(&self, kind: TowerKind, v: &Subspace, n_max: usize, step: impl Fn(&Subspace) -> Subspace) -> TowerRecord {
        self.check_space(v);
        let mut stages = alloc::vec![v.clone()];
        let mut stabilized_at = None;
        for n in 1..=n_max.max(1) {
            let next = step(&stages[n - 1]);
            let same = next == stages[n - 1];
            stages.push(next);
            if same {
                stabilized_at = Some(n - 1);
                break;
            }
        }
        TowerRecord {
            kind,
            stages,
            stabilized_at,
        }
    }

    pub fn t_tower(&self, v: &Subspace, n_max: usize) -> TowerRecord {
        self.tower(TowerKind::Normalizer, v, n_max, |s| self.t_of(s))
    }

    pub fn derived_tower(&self, v: &Subspace, n_max: usize) -> TowerRecord {
        self.tower(TowerKind::Derived, v, n_max, |s| self.bracket_space(s, s))
    }

    /// `V^{(n)}`.
    pub fn derived(&self, v: &Subspace, n: usize) -> Subspace {
        let mut cur = v.clone();
        for _ in 0..n {
            cur = self.bracket_space(&cur, &cur);
        }
        cur
    }

    /// `T^n(V)`, with `T^0(V) = V`.
    pub fn t_power(&self, v: &Subspace, n: usize) -> Subspace {
        let mut cur = v.clone();
        for _ in 0..n {
            cur = self.t_of(&cur);
        }
        cur
    }

    /// `[R, L] ⊆ L`.
    pub fn is_lie_ideal(&self, v: &Subspace) -> bool {
        self.bracket_space(&self.whole_space(), v).leq(v)
    }

    /// `[[R, R], V] ⊆ V`.
    pub fn is_rr_submodule(&self, v: &Subspace) -> bool {
        self.bracket_space(&self.commutator_space(), v).leq(v)
    }

    /// `R̃ X R̃`, computed inside the unitization and restricted back to `R`.
    pub fn ideal_closure_via_unitization(&self, x: &Subspace) -> Subspace {
        let u = self.unitize();
        let gens: Vec<FVector> = x.basis_vectors().iter().map(|v| u.embed(v)).collect();
        let big = Subspace::span(u.result.field(), u.result.dim(), &gens);
        let closed = u.result.ideal_closure(&big);
        let back: Vec<FVector> = closed
            .basis_vectors()
            .iter()
            .map(|v| u.restrict(v).expect("R is an ideal of its unitization"))
            .collect();
        Subspace::span(self.field(), self.dim(), &back)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use alloc::vec;

    fn gf(p: u32) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    /// `L = {(a b; b a)}` in `M_2(F_2)`, basis order E11, E12, E21, E22.
    fn exceptional_l(m: &Algebra) -> Subspace {
        m.span(&[
            m.element(vec![1, 0, 0, 1]).unwrap(),
            m.element(vec![0, 1, 1, 0]).unwrap(),
        ])
        .unwrap()
    }

    #[test]
    fn commutators_of_m2f2() {
        let m = Algebra::matrix_algebra(2, gf(2));
        let rr = m.commutator_space();
        // {(a b; c a)}
        let expected = m
            .span(&[
                m.element(vec![1, 0, 0, 1]).unwrap(),
                m.element(vec![0, 1, 0, 0]).unwrap(),
                m.element(vec![0, 0, 1, 0]).unwrap(),
            ])
            .unwrap();
        assert_eq!(rr, expected);
    }

    #[test]
    fn exceptional_lie_ideal_golden_values() {
        let m = Algebra::matrix_algebra(2, gf(2));
        let l = exceptional_l(&m);
        let r = m.whole_space();
        assert_eq!(m.bracket_space(&r, &l), l);
        assert!(m.bracket_space(&l, &l).is_zero());
        assert_eq!(m.product_space(&l, &l), l);
        assert!(m.is_fully_noncentral(&l));
        assert!(m.is_full(&l));
        assert!(!m.commutator_space().leq(&l));
        assert!(m.is_lie_ideal(&l));
        assert!(l.leq(&m.t_of(&l)));
    }

    #[test]
    fn derived_tower_of_m2f2() {
        let m = Algebra::matrix_algebra(2, gf(2));
        let t = m.derived_tower(&m.whole_space(), m.default_tower_depth());
        assert_eq!(t.dims(), vec![4, 3, 1, 0]);
        assert_eq!(t.stages[2], m.center());
        assert_eq!(t.stabilized_at, Some(3));
        let s = t.stabilized_at.unwrap();
        assert_eq!(t.stages[s], t.stages[s + 1]);
    }

    #[test]
    fn commutative_algebras() {
        let a = Algebra::truncated_poly(3, gf(3));
        assert!(a.commutator_space().is_zero());
        assert_eq!(a.center(), a.whole_space());
        let t = a.derived_tower(&a.whole_space(), 5);
        assert_eq!(t.dims(), vec![3, 0]);
    }

    #[test]
    fn unital_square() {
        let m = Algebra::matrix_algebra(2, gf(3));
        let r = m.whole_space();
        assert_eq!(m.product_space(&r, &r), r);
        assert!(m.product_space(&m.zero_space(), &r).is_zero());
    }

    #[test]
    fn ideal_closures() {
        for p in [2, 3] {
            let m = Algebra::matrix_algebra(2, gf(p));
            let e12 = m.span(&[m.basis_element(1)]).unwrap();
            assert!(m.ideal_closure(&e12).is_whole());
            assert!(m.ideal_closure(&m.zero_space()).is_zero());
        }
        let m = Algebra::matrix_algebra(2, gf(3));
        assert!(m.is_full(&m.center()));
    }

    #[test]
    fn full_noncentrality() {
        let m = Algebra::matrix_algebra(2, gf(3));
        assert!(m.is_fully_noncentral(&m.whole_space()));
        assert!(!m.is_fully_noncentral(&m.center()));
    }

    #[test]
    fn centers() {
        let m = Algebra::matrix_algebra(2, gf(2));
        let z = m.center();
        assert_eq!(z.dim(), 1);
        assert!(z.contains(m.unit().unwrap()));
        let t = Algebra::triangular_algebra(2, gf(3));
        let zt = t.center();
        assert_eq!(zt.dim(), 1);
        assert!(zt.contains(t.unit().unwrap()));
    }

    #[test]
    fn t_of_edge_cases() {
        let m = Algebra::matrix_algebra(2, gf(3));
        assert_eq!(m.t_of(&m.whole_space()), m.whole_space());
        assert_eq!(m.t_of(&m.zero_space()), m.center());
    }

    #[test]
    fn t_of_matches_scan() {
        let m = Algebra::matrix_algebra(2, gf(2));
        let l = exceptional_l(&m);
        assert_eq!(m.t_of(&l), m.t_of_by_scan(&l, 1 << 12).unwrap());
    }

    #[test]
    fn t_tower_of_zero_ascends_from_center() {
        let t = Algebra::triangular_algebra(3, gf(2));
        let tower = t.t_tower(&t.zero_space(), t.default_tower_depth());
        assert_eq!(tower.stages[1], t.center());
        for w in tower.stages.windows(2) {
            assert!(w[0].leq(&w[1]));
        }
    }

    #[test]
    fn lie_ideal_checks() {
        let m = Algebra::matrix_algebra(2, gf(3));
        assert!(m.is_lie_ideal(&m.center()));
        // [E21, E12] = E22 - E11 is not in span{E12}.
        let e12 = m.span(&[m.basis_element(1)]).unwrap();
        assert!(!m.is_lie_ideal(&e12));
        assert!(m.is_rr_submodule(&m.commutator_space()));
    }

    #[test]
    fn unitization_closure_agrees() {
        let n = Algebra::strictly_upper_triangular(3, gf(3));
        let x = n.span(&[n.basis_element(0)]).unwrap();
        assert_eq!(n.ideal_closure(&x), n.ideal_closure_via_unitization(&x));
        assert_eq!(n.ideal_closure(&x), n.ideal_closure_direct(&x));
    }
}
