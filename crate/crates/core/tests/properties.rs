//! Algebraic invariants of the decomposition on random inputs.

use jordan_chevalley::chevalley::{jordan_chevalley, jordan_chevalley_with_roots, verify, IterationMode};
use jordan_chevalley::matrix::random::{random_block_companion, random_conjugate};
use jordan_chevalley::{Field, Mat, Poly, PrimeField, Rationals};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn f3() -> PrimeField {
    PrimeField::new(3).unwrap()
}

fn fp_matrix(n: usize, entries: &[u64]) -> Mat<PrimeField> {
    let rows = (0..n).map(|i| entries[i * n..(i + 1) * n].iter().map(|v| v % 3).collect()).collect();
    Mat::from_rows(f3(), rows).unwrap()
}

fn q_matrix(n: usize, entries: &[i64]) -> Mat<Rationals> {
    let rows = (0..n).map(|i| entries[i * n..(i + 1) * n].iter().map(|&v| Rationals.from_i64(v)).collect()).collect();
    Mat::from_rows(Rationals, rows).unwrap()
}

fn check_structure<F: Field>(a: &Mat<F>) -> Result<(), TestCaseError> {
    let dec = jordan_chevalley(a, None, IterationMode::Quotient).unwrap();
    prop_assert!(verify(a, &dec).unwrap().passed());
    let (d, n) = (&dec.semisimple, &dec.nilpotent);

    // D and N are their own decompositions.
    let dd = jordan_chevalley(d, None, IterationMode::Quotient).unwrap();
    prop_assert_eq!(&dd.semisimple, d);
    prop_assert!(dd.nilpotent.is_zero());
    let nn = jordan_chevalley(n, None, IterationMode::Quotient).unwrap();
    prop_assert!(nn.semisimple.is_zero());
    prop_assert_eq!(&nn.nilpotent, n);

    // Anything commuting with A commutes with D; powers of A in particular.
    let a2 = a.mul(a).unwrap();
    prop_assert!(d.commutes_with(&a2).unwrap());
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn structure_over_f3(n in 1usize..7, entries in prop::collection::vec(0u64..3, 36)) {
        check_structure(&fp_matrix(n, &entries))?;
    }

    #[test]
    fn structure_over_q(n in 1usize..5, entries in prop::collection::vec(-3i64..4, 16)) {
        check_structure(&q_matrix(n, &entries))?;
    }

    #[test]
    fn conjugation_equivariance(seed in any::<u64>(), n in 2usize..9) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (b, _) = random_block_companion(&f3(), n, 2, 3, &mut rng);
        let a = random_conjugate(&b, 3 * n, &mut rng);
        // The conjugating matrix is not returned, so compare similarity invariants.
        let da = jordan_chevalley(&a, None, IterationMode::Quotient).unwrap();
        let db = jordan_chevalley(&b, None, IterationMode::Quotient).unwrap();
        prop_assert_eq!(da.semisimple.minimal_polynomial(), db.semisimple.minimal_polynomial());
        prop_assert_eq!(da.nilpotent.minimal_polynomial(), db.nilpotent.minimal_polynomial());
        prop_assert_eq!(da.k_used, db.k_used);
    }

    #[test]
    fn explicit_similarity(n in 1usize..6, entries in prop::collection::vec(0u64..3, 25), p_entries in prop::collection::vec(0u64..3, 25)) {
        let a = fp_matrix(n, &entries);
        let p = fp_matrix(n, &p_entries);
        prop_assume!(p.inverse().is_some());
        let pinv = p.inverse().unwrap();
        let b = p.mul(&a).unwrap().mul(&pinv).unwrap();
        let da = jordan_chevalley(&a, None, IterationMode::Matrix).unwrap();
        let db = jordan_chevalley(&b, None, IterationMode::Matrix).unwrap();
        prop_assert_eq!(db.semisimple, p.mul(&da.semisimple).unwrap().mul(&pinv).unwrap());
    }

    #[test]
    fn roots_path_matches(roots in prop::collection::vec((0u64..5, 1u32..4), 1..4), seed in any::<u64>()) {
        let f5 = PrimeField::new(5).unwrap();
        let mut seen = std::collections::HashSet::new();
        let roots: Vec<(u64, u32)> = roots.into_iter().filter(|r| seen.insert(r.0)).collect();
        // One Jordan-type block (X - l)^e per root, then a change of basis.
        let blocks: Vec<Mat<PrimeField>> = roots
            .iter()
            .map(|&(l, e)| Mat::companion(&Poly::linear(f5, &l).pow(e as u64)))
            .collect();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_conjugate(&Mat::block_diagonal(f5, &blocks), 6, &mut rng);
        let by_roots = jordan_chevalley_with_roots(&a, &roots, IterationMode::Quotient).unwrap();
        let by_minpoly = jordan_chevalley(&a, None, IterationMode::Quotient).unwrap();
        prop_assert_eq!(&by_roots.semisimple, &by_minpoly.semisimple);
        let diag: Vec<u64> = roots.iter().flat_map(|&(l, e)| std::iter::repeat_n(l, e as usize)).collect();
        prop_assert_eq!(by_roots.semisimple.minimal_polynomial(), Mat::diagonal(f5, &diag).minimal_polynomial());
    }
}
