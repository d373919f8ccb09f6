mod common;

use common::*;
use proptest::prelude::*;
use ringlab_core::Algebra;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn multiplication_is_associative_and_bilinear((alg, x, y, z) in algebra_and_elements(), s in 0u32..5) {
        let p = alg.p();
        let s = s % p;
        prop_assert_eq!(mul(&alg, &mul(&alg, &x, &y), &z), mul(&alg, &x, &mul(&alg, &y, &z)));
        prop_assert_eq!(
            mul(&alg, &add(p, &x, &scale(p, s, &y)), &z),
            add(p, &mul(&alg, &x, &z), &scale(p, s, &mul(&alg, &y, &z)))
        );
        let jacobi = add(
            p,
            &add(p, &bracket(&alg, &x, &bracket(&alg, &y, &z)), &bracket(&alg, &y, &bracket(&alg, &z, &x))),
            &bracket(&alg, &z, &bracket(&alg, &x, &y)),
        );
        prop_assert!(jacobi.iter().all(|&c| c == 0));
        prop_assert!(bracket(&alg, &x, &x).iter().all(|&c| c == 0));
        let lx = alg.left_mul_matrix(&vec_of(&alg, &x));
        let rx = alg.right_mul_matrix(&vec_of(&alg, &x));
        prop_assert_eq!(lx.mul_vec(&y), mul(&alg, &x, &y));
        prop_assert_eq!(rx.mul_vec(&y), mul(&alg, &y, &x));
    }

    #[test]
    fn t_of_is_a_subring_containing_the_center((alg, gens) in algebra_and_gens()) {
        let v = subspace_of(&alg, &gens);
        let t = alg.t_of(&v);
        prop_assert!(alg.product_space(&t, &t).leq(&t));
        prop_assert!(alg.center().leq(&t));
        prop_assert_eq!(alg.is_lie_ideal(&v), v.leq(&t));
        prop_assert!(alg.bracket_space(&alg.whole_space(), &t).leq(&v));
        for x in t.basis_vectors() {
            for r in alg.basis() {
                prop_assert!(v.contains(&alg.bracket(&r, &x).unwrap()));
            }
        }
    }

    #[test]
    fn t_of_is_monotone((alg, g1, g2) in algebra_and_two()) {
        let v = subspace_of(&alg, &g1);
        let w = v.sum(&subspace_of(&alg, &g2));
        prop_assert!(alg.t_of(&v).leq(&alg.t_of(&w)));
        let d = alg.default_tower_depth();
        let tv = alg.t_tower(&v, d);
        let tw = alg.t_tower(&w, d);
        for n in 0..=d {
            prop_assert!(tv.stage(n).unwrap().leq(tw.stage(n).unwrap()));
        }
    }

    #[test]
    fn lie_ideal_towers_increase((alg, gens) in algebra_and_gens()) {
        let l = alg.lie_closure(&subspace_of(&alg, &gens));
        prop_assert!(alg.is_lie_ideal(&l));
        let d = alg.default_tower_depth();
        let t = alg.t_tower(&l, d);
        for n in 0..d {
            prop_assert!(t.stage(n).unwrap().leq(t.stage(n + 1).unwrap()));
        }
    }

    #[test]
    fn derived_tower_decreases_and_stabilizes((alg, gens) in algebra_and_gens()) {
        let v = subspace_of(&alg, &gens);
        let d = alg.default_tower_depth();
        let tower = alg.derived_tower(&v, d);
        let dims = tower.dims();
        prop_assert_eq!(dims[0], v.dim());
        let subalgebra = alg.bracket_space(&v, &v).leq(&v);
        for n in 1..dims.len() {
            let prev = tower.stage(n - 1).unwrap();
            let cur = tower.stage(n).unwrap();
            prop_assert_eq!(cur, &alg.bracket_space(prev, prev));
            if subalgebra {
                prop_assert!(cur.leq(prev));
            }
        }
        prop_assert_eq!(alg.derived(&v, 2), tower.stage(2).unwrap().clone());
        let l = alg.lie_closure(&v);
        let lt = alg.derived_tower(&l, d);
        for n in 1..lt.dims().len() {
            prop_assert!(lt.stage(n).unwrap().leq(lt.stage(n - 1).unwrap()));
        }
    }

    #[test]
    fn closures_are_smallest_closed_superspaces((alg, gens) in algebra_and_gens()) {
        let v = subspace_of(&alg, &gens);
        let rr = alg.commutator_space();
        let l = alg.lie_closure(&v);
        let m = alg.submodule_closure(&v);
        let i = alg.ideal_closure(&v);
        prop_assert!(v.leq(&l) && v.leq(&m) && v.leq(&i));
        prop_assert!(alg.is_lie_ideal(&l));
        prop_assert!(alg.is_rr_submodule(&m));
        prop_assert!(alg.bracket_space(&rr, &m).leq(&m));
        prop_assert!(alg.is_ideal(&i));
        prop_assert!(m.leq(&l));
        prop_assert!(l.leq(&i));
        prop_assert_eq!(alg.lie_closure(&l), l.clone());
        prop_assert_eq!(&i, &alg.ideal_closure_direct(&v));
        prop_assert_eq!(&i, &alg.ideal_closure_via_unitization(&v));
        prop_assert_eq!(alg.is_full(&v), i.is_whole());
        prop_assert_eq!(alg.is_fully_noncentral(&v), alg.is_full(&alg.bracket_space(&alg.whole_space(), &v)));
    }

    #[test]
    fn bracket_and_product_spaces_match_elementwise((alg, g1, g2) in algebra_and_two()) {
        let g = subspace_of(&alg, &g1);
        let h = subspace_of(&alg, &g2);
        let br = alg.bracket_space(&g, &h);
        let pr = alg.product_space(&g, &h);
        let mut bgens = Vec::new();
        let mut pgens = Vec::new();
        for a in g.to_rows() {
            for b in h.to_rows() {
                bgens.push(bracket(&alg, &a, &b));
                pgens.push(mul(&alg, &a, &b));
            }
        }
        let p = alg.p();
        prop_assert_eq!(elements(&br), span_set(p, alg.dim(), &bgens));
        prop_assert_eq!(elements(&pr), span_set(p, alg.dim(), &pgens));
        prop_assert_eq!(br, alg.bracket_space(&h, &g));
    }

    #[test]
    fn quotient_is_a_homomorphism((alg, gens, elems) in algebra_and_two()) {
        let i = alg.ideal_closure(&subspace_of(&alg, &gens));
        let q = alg.quotient(&i).unwrap();
        prop_assert_eq!(q.algebra.dim(), alg.dim() - i.dim());
        for pair in elems.windows(2) {
            let (xv, yv) = (vec_of(&alg, &pair[0]), vec_of(&alg, &pair[1]));
            let lhs = q.project(&alg.mul(&xv, &yv).unwrap());
            let rhs = q.algebra.mul(&q.project(&xv), &q.project(&yv)).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
        for b in q.algebra.basis() {
            prop_assert_eq!(q.project(&q.lift(&b)), b);
        }
        prop_assert_eq!(q.preimage(&q.algebra.zero_space()), i);
    }

    #[test]
    fn unitization_restricts_back((alg, x, y, _) in algebra_and_elements()) {
        let u = alg.unitize();
        let (xv, yv) = (vec_of(&alg, &x), vec_of(&alg, &y));
        let ex = u.embed(&xv);
        prop_assert_eq!(u.restrict(&ex), Some(xv.clone()));
        let prod = u.result.mul(&ex, &u.embed(&yv)).unwrap();
        prop_assert_eq!(u.restrict(&prod), Some(alg.mul(&xv, &yv).unwrap()));
        let one = u.one();
        prop_assert_eq!(u.result.mul(&one, &ex).unwrap(), ex.clone());
        prop_assert_eq!(u.result.mul(&ex, &one).unwrap(), ex);
    }
}

#[test]
fn opposite_reverses_products() {
    for alg in small_algebras() {
        let op = alg.opposite();
        for a in alg.basis() {
            for b in alg.basis() {
                assert_eq!(op.mul(&a, &b).unwrap(), alg.mul(&b, &a).unwrap());
            }
        }
        assert_eq!(op.commutator_space(), alg.commutator_space());
    }
}

#[test]
fn from_products_rejects_nonassociative_tables() {
    let f = gf(3);
    // e0 e0 = e1, e0 e1 = e0, others zero: (e0 e0) e0 = e1 e0 = 0 but e0 (e0 e0) = e0.
    let table = vec![vec![0, 1], vec![1, 0], vec![0, 0], vec![0, 0]];
    assert!(matches!(
        Algebra::from_products(f, 2, &table, None, None),
        Err(ringlab_core::Error::NotAssociative { .. })
    ));
    let ok = vec![vec![1, 0], vec![0, 0], vec![0, 0], vec![0, 1]];
    assert!(Algebra::from_products(f, 2, &ok, Some(vec![1, 1]), None).is_ok());
    assert!(matches!(
        Algebra::from_products(f, 2, &ok, Some(vec![1, 0]), None),
        Err(ringlab_core::Error::InvalidUnit { .. })
    ));
}
