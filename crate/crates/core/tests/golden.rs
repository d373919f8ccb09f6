mod common;

use common::*;
use ringlab_core::field::{rref, solve_linear};
use ringlab_core::nilpotent::{InnerAutomorphism, VandermondeOutcome};
use ringlab_core::{Algebra, FMatrix, FVector, Subspace};

fn m2(p: u32) -> Algebra {
    Algebra::matrix_algebra(2, gf(p))
}

fn sp(alg: &Algebra, gens: &[&[u32]]) -> Subspace {
    subspace_of(alg, &gens.iter().map(|g| g.to_vec()).collect::<Vec<_>>())
}

const B: u64 = 1 << 20;

#[test]
fn elimination_examples() {
    let m = FMatrix::from_rows(gf(2), 2, &[vec![1, 1], vec![1, 1]]).unwrap();
    let (r, piv) = rref(&m);
    assert_eq!(r.to_rows(), vec![vec![1, 1]]);
    assert_eq!(piv, vec![0]);
    let (r, piv) = rref(&FMatrix::from_rows(gf(3), 2, &[vec![0, 0]]).unwrap());
    assert_eq!(r.rows(), 0);
    assert!(piv.is_empty());
    // det = 2*2 - 1*1 = 3 = 0 mod 3
    let (r, piv) = rref(&FMatrix::from_rows(gf(3), 2, &[vec![2, 1], vec![1, 2]]).unwrap());
    assert_eq!(r.to_rows(), vec![vec![1, 2]]);
    assert_eq!(piv, vec![0]);

    let id = FMatrix::identity(gf(5), 3);
    let b = FVector::from_coords(gf(5), vec![4, 0, 2]);
    assert_eq!(solve_linear(&id, &b).unwrap(), Some(b.clone()));
    assert_eq!(solve_linear(&FMatrix::zero(gf(5), 3, 3), &b).unwrap(), None);
    let a = FMatrix::from_rows(gf(2), 2, &[vec![1, 1]]).unwrap();
    let x = solve_linear(&a, &FVector::from_coords(gf(2), vec![1])).unwrap().unwrap();
    assert_eq!(a.mul_vec(x.coords()), vec![1]);
    assert!(solve_linear(&a, &FVector::from_coords(gf(2), vec![1, 0])).is_err());
}

#[test]
fn algebra_examples() {
    let r = m2(2);
    assert_eq!(mul(&r, &[0, 1, 0, 0], &[0, 0, 1, 0]), vec![1, 0, 0, 0]);
    assert_eq!(r.dim(), 4);
    assert!(r.is_unital());
    for p in [2, 3, 5] {
        let r = m2(p);
        assert_eq!(bracket(&r, &[1, 0, 0, 0], &[0, 1, 0, 0]), vec![0, 1, 0, 0]);
    }
    let t = Algebra::truncated_poly(2, gf(3));
    assert_eq!(mul(&t, &[0, 1], &[0, 1]), vec![0, 0]);
    let one = t.unit().unwrap().clone();
    for b in t.basis() {
        assert_eq!(t.mul(&one, &b).unwrap(), b);
    }
    assert_eq!(Algebra::truncated_poly(1, gf(7)).dim(), 1);
    assert!(Algebra::truncated_poly(1, gf(7)).is_commutative());
    let s = Algebra::direct_sum(&m2(3), &t).unwrap();
    assert_eq!(s.dim(), 6);
    assert!(Algebra::direct_sum(&m2(3), &m2(2)).is_err());
}

#[test]
fn unitization_examples() {
    let r = m2(2);
    let u = r.unitize();
    assert!(!u.adjoined());
    assert_eq!(u.result.dim(), 4);

    let z = Algebra::zero_product(1, gf(2));
    let u = z.unitize();
    assert!(u.adjoined());
    assert_eq!(u.result.dim(), 2);
    assert!(u.result.is_unital());

    // The strictly upper 2x2 algebra is spanned by x with x^2 = 0.
    let n = Algebra::strictly_upper_triangular(2, gf(3));
    assert_eq!(n.dim(), 1);
    let u = n.unitize();
    let x = u.embed(&n.basis_element(0));
    assert!(u.result.mul(&x, &x).unwrap().is_zero());
    assert!(u.result.is_commutative());
    assert_eq!(u.result.dim(), 2);
    assert_eq!(u.result.nilpotent_span(B).0.dim(), 1);
}

#[test]
fn quotient_examples() {
    let r = m2(3);
    let q = r.quotient(&r.zero_space()).unwrap();
    assert_eq!(q.algebra.dim(), 4);
    let q = r.quotient(&r.whole_space()).unwrap();
    assert_eq!(q.algebra.dim(), 0);

    let t = Algebra::triangular_algebra(2, gf(2));
    // Basis E11, E12, E22; the strict upper part is span{E12}.
    let j = sp(&t, &[&[0, 1, 0]]);
    let q = t.quotient(&j).unwrap();
    assert_eq!(q.algebra.dim(), 2);
    assert!(q.algebra.is_commutative());
    assert!(q.algebra.is_unital());
    assert_eq!(q.algebra.spectrum(B).ideals.len(), 4);
    let e = q.project(&t.basis_element(0));
    assert_eq!(q.algebra.mul(&e, &e).unwrap(), e);
    assert!(q.algebra.nilpotent_span(B).0.is_zero());
    assert!(r.quotient(&sp(&r, &[&[0, 1, 0, 0]])).is_err());
}

#[test]
fn subspace_examples() {
    let f = gf(3);
    let zero = Subspace::span(f, 2, &[]);
    assert!(zero.is_zero());
    let u = Subspace::span(f, 2, &[FVector::from_coords(f, vec![1, 0])]);
    let w = Subspace::span(f, 2, &[FVector::from_coords(f, vec![0, 1])]);
    assert_eq!(u.sum(&zero), u);
    assert!(u.intersect(&w).is_zero());
    assert!(u.sum(&w).is_whole());
}

#[test]
fn paper_example_on_m2_f2() {
    let r = m2(2);
    let whole = r.whole_space();
    let l = sp(&r, &[&[1, 0, 0, 1], &[0, 1, 1, 0]]);
    let rr = r.commutator_space();
    assert_eq!(r.bracket_space(&whole, &l), l);
    assert!(r.bracket_space(&l, &l).is_zero());
    assert_eq!(r.product_space(&l, &l), l);
    assert!(!r.product_space(&l, &l).is_whole());
    assert!(r.is_fully_noncentral(&l));
    assert!(r.is_lie_ideal(&l));
    assert!(l.leq(&r.t_of(&l)));
    assert!(!rr.leq(&l));
    assert_eq!(r.derived_tower(&whole, 3).dims(), vec![4, 3, 1, 0]);
    assert_eq!(rr, sp(&r, &[&[1, 0, 0, 1], &[0, 1, 0, 0], &[0, 0, 1, 0]]));
    assert_eq!(r.derived(&whole, 2), r.center());
    assert_eq!(r.center(), sp(&r, &[&[1, 0, 0, 1]]));
}

#[test]
fn lattice_examples() {
    for p in [2, 3, 5] {
        let r = m2(p);
        assert!(r.ideal_closure(&sp(&r, &[&[0, 1, 0, 0]])).is_whole());
        assert!(r.ideal_closure(&r.center()).is_whole());
        assert!(r.ideal_closure(&r.zero_space()).is_zero());
        assert!(r.center().leq(&r.t_of(&r.zero_space())) && r.t_of(&r.zero_space()).leq(&r.center()));
        assert!(r.t_of(&r.whole_space()).is_whole());
        assert!(r.is_lie_ideal(&r.center()));
        assert!(!r.is_fully_noncentral(&r.center()));
    }
    let r3 = m2(3);
    assert!(r3.is_fully_noncentral(&r3.whole_space()));
    assert!(!r3.is_lie_ideal(&sp(&r3, &[&[0, 1, 0, 0]])));
    let sl2 = sp(&r3, &[&[1, 0, 0, 2], &[0, 1, 0, 0], &[0, 0, 1, 0]]);
    assert_eq!(r3.lie_closure(&sp(&r3, &[&[0, 1, 0, 0]])), sl2);
    assert_eq!(r3.lie_closure(&r3.center()), r3.center());

    let t = Algebra::triangular_algebra(2, gf(3));
    assert_eq!(t.center(), sp(&t, &[&[1, 0, 1]]));
    let c = Algebra::truncated_poly(3, gf(3));
    assert!(c.commutator_space().is_zero());
    assert!(c.center().is_whole());
    assert_eq!(c.derived_tower(&c.whole_space(), 3).dims(), vec![3, 0]);

    // Upper central series of T3(F2): Z(R) ⊆ T(Z(R)) ⊆ ...
    let t3 = Algebra::triangular_algebra(3, gf(2));
    let tower = t3.t_tower(&t3.zero_space(), 4);
    assert_eq!(tower.stage(1).unwrap(), &t3.center());
    for n in 0..4 {
        assert!(tower.stage(n).unwrap().leq(tower.stage(n + 1).unwrap()));
    }
}

#[test]
fn spectrum_examples() {
    let r = m2(2);
    let spec = r.spectrum(B);
    assert!(spec.lattice_complete);
    assert_eq!(spec.ideals.len(), 2);
    assert_eq!(spec.primes().count(), 1);
    assert_eq!(spec.exceptional_prime_count(), 1);
    assert!(!r.hypothesis_nonexceptional_cofinal(B).unwrap().holds);

    let c = Algebra::truncated_poly(3, gf(3));
    let dims: Vec<usize> = c.spectrum(B).ideals.iter().map(|i| i.subspace.dim()).collect();
    let mut sorted = dims.clone();
    sorted.sort();
    assert_eq!(sorted, vec![0, 1, 2, 3]);

    let f2 = Algebra::truncated_poly(1, gf(2));
    let s = Algebra::direct_sum(&f2, &f2).unwrap();
    assert_eq!(s.spectrum(B).ideals.len(), 4);
    assert!(!s.is_prime_ideal(&s.zero_space(), B).unwrap());

    let r3 = m2(3);
    assert!(r3.is_prime_ideal(&r3.zero_space(), B).unwrap());
    assert!(!r3.is_exceptional_prime(&r3.zero_space(), B).unwrap());
    assert!(r.is_exceptional_prime(&r.zero_space(), B).unwrap());
    assert!(r3.hypothesis_nonexceptional_cofinal(B).unwrap().holds);
    assert_eq!(r3.spectrum(B).primes().count(), 1);

    let t = Algebra::truncated_poly(2, gf(3));
    assert!(t.is_prime_ideal(&sp(&t, &[&[0, 1]]), B).unwrap());

    // F2 as a quotient of F2 ⊕ F2 is a commutative exceptional prime ring.
    let first = sp(&s, &[&[1, 0]]);
    assert!(s.is_exceptional_prime(&first, B).unwrap());

    let t2 = Algebra::triangular_algebra(2, gf(2));
    let c = t2.hypothesis_nonexceptional_cofinal(B).unwrap();
    assert!(!c.holds);
    assert!(c.prime_cofinal);
    assert_eq!(t2.spectrum(B).exceptional_prime_count(), 2);

    assert!(r.s4_span().is_zero());
    assert!(!Algebra::matrix_algebra(3, gf(2)).s4_span().is_zero());
    assert!(c_is_zero_s4(&Algebra::truncated_poly(3, gf(5))));

    let z = Algebra::zero_product(1, gf(2));
    assert!(!z.is_idempotent_ring());
    let mp = z.check_max_vs_prime(B).unwrap();
    assert!(!mp.maximal_are_prime);
    assert!(mp.maximal_cofinal);
    assert!(mp.all_hold());
    assert!(r3.check_max_vs_prime(B).unwrap().idempotent);
}

fn c_is_zero_s4(a: &Algebra) -> bool {
    a.s4_span().is_zero()
}

#[test]
fn nil_examples() {
    let r = m2(2);
    let n2: Vec<Vec<u32>> = r.square_zero_elements(B).elements.iter().map(|x| x.coords().to_vec()).collect();
    assert!(n2.contains(&vec![0, 1, 0, 0]));
    assert!(n2.contains(&vec![0, 0, 1, 0]));
    assert!(!n2.contains(&vec![0, 1, 1, 0]));
    assert_eq!(n2.len(), 4);

    let t = Algebra::truncated_poly(2, gf(3));
    assert_eq!(t.square_zero_elements(B).elements.len(), 3);
    assert_eq!(t.n2_span(B).0, sp(&t, &[&[0, 1]]));
    assert!(Algebra::truncated_poly(1, gf(3)).n2_span(B).0.is_zero());
    assert!(t.fn2_span(B).span.is_zero());

    let r3 = m2(3);
    let sl2 = sp(&r3, &[&[1, 0, 0, 2], &[0, 1, 0, 0], &[0, 0, 1, 0]]);
    assert_eq!(r3.nilpotent_span(B).0, sl2);
    let fn2 = r3.fn2_span(B);
    assert_eq!(fn2.span, sl2);
    assert_eq!(fn2.span, r3.commutator_space());
    for (y, z) in &fn2.witnesses {
        assert!(r3.mul(z, y).unwrap().is_zero());
    }
    assert!(r3.commutators_in_n2span(B));
    assert!(Algebra::truncated_poly(3, gf(3)).commutators_in_n2span(B));
    let f2 = Algebra::truncated_poly(1, gf(2));
    assert!(Algebra::direct_sum(&f2, &m2(2)).unwrap().commutators_in_n2span(B));

    let t2 = Algebra::triangular_algebra(2, gf(2));
    assert_eq!(t2.nilpotent_span(B).0, sp(&t2, &[&[0, 1, 0]]));
    assert!(Algebra::truncated_poly(1, gf(2)).nilpotent_span(B).0.is_zero());
}

#[test]
fn unit_examples() {
    let r3 = m2(3);
    let u = r3.unitize();
    let x = r3.basis_element(1);
    let a = InnerAutomorphism::square_zero(&u, &x);
    assert!(a.is_valid(&u));
    assert_eq!(a.u, u.scalar_plus(1, &x));
    assert_eq!(a.u_inv, u.scalar_plus(1, &x.neg()));
    assert_eq!(m2(2).inner_automorphisms(B).unwrap().len(), 6);
    let z = Algebra::zero_algebra(gf(3));
    assert_eq!(z.inner_automorphisms(B).unwrap().len(), 1);

    let auts = r3.inner_automorphisms(B).unwrap();
    assert!(r3.is_invariant(&r3.commutator_space(), &u, &auts));
    assert!(r3.is_invariant(&r3.center(), &u, &auts));
    let e11 = sp(&r3, &[&[1, 0, 0, 0]]);
    assert!(!r3.is_invariant(&e11, &u, std::slice::from_ref(&a)));
    let orbit = r3.invariant_orbit_closure(&e11, &u, std::slice::from_ref(&a));
    assert!(e11.leq(&orbit));
    assert!(orbit.contains(&a.apply(&u, &r3.basis_element(0))));
}

#[test]
fn zero_product_balance_examples() {
    assert!(m2(3).zero_product_balanced(B).unwrap().balanced);
    let t = Algebra::truncated_poly(2, gf(3));
    let z = t.zero_product_balanced(B).unwrap();
    assert!(!z.balanced);
    assert!(!z.defect_triples.is_empty());
    assert!(Algebra::zero_product(2, gf(3)).zero_product_balanced(B).unwrap().balanced);
}

#[test]
fn vandermonde_examples() {
    let m3 = Algebra::matrix_algebra(3, gf(5));
    // E12 + E23 has x^3 = 0.
    let mut c = vec![0u32; 9];
    c[1] = 1;
    c[5] = 1;
    let x = vec_of(&m3, &c);
    assert_eq!(m3.nilpotency_index(&x), Some(3));
    let u = m3.unitize();
    let auts: Vec<InnerAutomorphism> = (1..5)
        .filter_map(|l| InnerAutomorphism::nilpotent(&u, &x.scale(l)))
        .collect();
    let v = m3.orbit_closure(&sp(&m3, &[&[1, 0, 0, 0, 0, 0, 0, 0, 0]]), &u, &auts);
    assert_eq!(m3.vandermonde_bracket_check(&v, &x).unwrap(), VandermondeOutcome::Verified);
    assert!(m3.bracket_space(&sp(&m3, &[&c]), &v).leq(&v));

    let r2 = m2(2);
    let e12 = r2.basis_element(1);
    assert!(matches!(
        r2.vandermonde_bracket_check(&r2.center(), &e12).unwrap(),
        VandermondeOutcome::SkippedHypothesis { .. }
    ));
    assert_eq!(
        m3.vandermonde_bracket_check(&v, &m3.zero()).unwrap(),
        VandermondeOutcome::Verified
    );
}
