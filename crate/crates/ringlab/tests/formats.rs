use proptest::prelude::*;
use ringlab::formats::{read_algebra, read_json, read_subspace, write_json};
use ringlab::{AlgebraFile, FormatError, SubspaceFile};
use ringlab_core::{Algebra, FVector, PrimeField};

fn algebra() -> impl Strategy<Value = Algebra> {
    (0usize..5, prop::sample::select(vec![2u32, 3, 5, 7]), 1usize..4).prop_map(|(family, p, n)| {
        let f = PrimeField::new(p).unwrap();
        match family {
            0 => Algebra::matrix_algebra(n.min(2), f),
            1 => Algebra::triangular_algebra(n, f),
            2 => Algebra::truncated_poly(n, f),
            3 => Algebra::zero_product(n, f),
            _ => Algebra::direct_sum(&Algebra::truncated_poly(n, f), &Algebra::matrix_algebra(2, f)).unwrap(),
        }
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn algebra_files_round_trip(alg in algebra(), id in "[a-z0-9-]{1,12}") {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("a.alg.json");
        let file = AlgebraFile::from_algebra(&id, &alg);
        write_json(&path, &file).unwrap();
        let back: AlgebraFile = read_json(&path).unwrap();
        prop_assert_eq!(&back, &file);
        let (bid, balg) = read_algebra(&path).unwrap();
        prop_assert_eq!(bid, id);
        prop_assert_eq!(balg, alg);
    }

    #[test]
    fn subspace_files_round_trip(alg in algebra(), seed in any::<u64>(), k in 0usize..4) {
        let mut rng = ringlab_core::budget::seeded_rng(seed);
        let gens: Vec<FVector> = (0..k).map(|_| alg.random_element(&mut rng)).collect();
        let s = alg.span(&gens).unwrap();
        let file = SubspaceFile::from_subspace("x", &s);
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("s.sub.json");
        write_json(&path, &file).unwrap();
        let back: SubspaceFile = read_json(&path).unwrap();
        prop_assert_eq!(&back, &file);
        prop_assert_eq!(read_subspace(&path, &alg).unwrap(), s);
    }
}

#[test]
fn generators_are_canonicalized_on_load() {
    let alg = Algebra::matrix_algebra(2, PrimeField::new(3).unwrap());
    let file = SubspaceFile {
        algebra_id: "m2-f3".into(),
        generators: vec![vec![0, 2, 0, 0], vec![0, 1, 0, 0], vec![1, 1, 0, 0]],
    };
    let s = file.to_subspace(&alg).unwrap();
    assert_eq!(s.dim(), 2);
    assert_eq!(s.to_rows(), vec![vec![1, 0, 0, 0], vec![0, 1, 0, 0]]);
    let bad = SubspaceFile {
        algebra_id: "m2-f3".into(),
        generators: vec![vec![1, 0]],
    };
    assert!(matches!(bad.to_subspace(&alg), Err(FormatError::Algebra(_))));
}

#[test]
fn malformed_files_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.alg.json");
    std::fs::write(&path, "{\"id\": \"x\", \"p\": 3}").unwrap();
    assert!(matches!(read_algebra(&path), Err(FormatError::Json { .. })));
    assert!(matches!(read_algebra(&dir.path().join("missing.json")), Err(FormatError::Io { .. })));
}
