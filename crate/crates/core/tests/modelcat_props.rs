use pants_core::exactlin::{RatMatrix, Rational};
use pants_core::modelcat::random::{random_autpair, random_int_matrix, random_invertible, rng_for};
use pants_core::modelcat::{
    classify, ext1_autpair, from_autpair, graph_star, hom_autpair, hom_star, random_pants, random_trefoil,
    roundtrip_witness, to_autpair, AutPair, Classification,
};
use proptest::prelude::*;

fn det_shift(m3: &RatMatrix, m4: &RatMatrix) -> Rational {
    let m = m3.invert().unwrap().try_mul(m4).unwrap();
    m.try_sub(&RatMatrix::identity(m.rows())).unwrap().det().unwrap()
}

/// Basis change without reordering arms, which keeps the AutPair class.
fn rebase(rep: &pants_core::StarSumRep, seed: u64) -> pants_core::StarSumRep {
    let mut rng = rng_for(seed);
    let g = random_invertible(&mut rng, rep.dim_v());
    let h: Vec<RatMatrix> = rep.outer().iter().map(|o| random_invertible(&mut rng, o.dim)).collect();
    rep.change_basis(&g, &h).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn graph_star_validity_matches_eigenvalue_condition(seed in any::<u64>(), d in 1usize..4) {
        let mut rng = rng_for(seed);
        let m3 = random_invertible(&mut rng, d);
        let m4 = random_invertible(&mut rng, d);
        let valid = graph_star(&m3, &m4).is_valid();
        prop_assert_eq!(valid, !det_shift(&m3, &m4).is_zero());
    }

    #[test]
    fn engineered_eigenvalue_one_is_invalid(seed in any::<u64>(), d in 1usize..4) {
        let mut rng = rng_for(seed);
        let m3 = random_invertible(&mut rng, d);
        // m4 = m3 (I + N) with N singular.
        let mut n = random_int_matrix(&mut rng, d, d);
        for j in 0..d {
            n[(0, j)] = Rational::zero();
        }
        let m4 = m3.try_mul(&RatMatrix::identity(d).try_add(&n).unwrap()).unwrap();
        prop_assert!(det_shift(&m3, &m4).is_zero() || m4.det().unwrap().is_zero());
        prop_assert!(!graph_star(&m3, &m4).is_valid());
    }

    #[test]
    fn autpair_round_trip(seed in any::<u64>()) {
        let pair = random_autpair(&mut rng_for(seed), 5);
        prop_assert_eq!(to_autpair(&from_autpair(&pair)).unwrap(), pair);
    }

    #[test]
    fn witness_on_random_pants(seed in any::<u64>()) {
        let rep = random_pants(seed, 4);
        prop_assert!(roundtrip_witness(&rep).unwrap().passed());
    }

    #[test]
    fn basis_change_preserves_class(seed in any::<u64>()) {
        let pair = random_autpair(&mut rng_for(seed), 4);
        let back = to_autpair(&rebase(&from_autpair(&pair), seed ^ 0x5a5a)).unwrap();
        for x in [2, 3, 5, 7] {
            let x = Rational::from(x);
            prop_assert_eq!(back.char_poly_at(&x), pair.char_poly_at(&x));
        }
        let self_hom = hom_autpair(&pair, &pair).dimension;
        prop_assert_eq!(hom_autpair(&pair, &back).dimension, self_hom);
        prop_assert_eq!(hom_autpair(&back, &back).dimension, self_hom);
    }

    #[test]
    fn hom_preserved_by_functor(seed in any::<u64>()) {
        let mut rng = rng_for(seed);
        let a = random_autpair(&mut rng, 3);
        let b = random_autpair(&mut rng, 3);
        let (p, q) = (rebase(&from_autpair(&a), seed), rebase(&from_autpair(&b), !seed));
        prop_assert_eq!(hom_star(&p, &q).unwrap().dimension, hom_autpair(&a, &b).dimension);
    }

    #[test]
    fn ext_equals_hom_for_torsion(seed in any::<u64>()) {
        let mut rng = rng_for(seed);
        let a = random_autpair(&mut rng, 4);
        let b = random_autpair(&mut rng, 4);
        prop_assert_eq!(ext1_autpair(&a, &b), hom_autpair(&a, &b).dimension);
    }

    #[test]
    fn trefoil_reps_classify_to_vect(s1 in any::<u64>(), s2 in any::<u64>()) {
        let (p, q) = (random_trefoil(s1, 3), random_trefoil(s2, 3));
        let dim = |r| match classify(r).unwrap() {
            Classification::GraphVect { dim, verified, .. } => { assert!(verified); dim }
            other => panic!("unexpected {other:?}"),
        };
        let (d, e) = (dim(&p), dim(&q));
        prop_assert_eq!(hom_star(&p, &q).unwrap().dimension, d * e);
    }
}

#[test]
fn skyscraper_orthogonality() {
    let values = [Rational::from(2), Rational::from(3), Rational::from(-1), Rational::new(1, 2)];
    for (i, l) in values.iter().enumerate() {
        for (j, m) in values.iter().enumerate() {
            let (a, b) = (AutPair::skyscraper(l.clone()).unwrap(), AutPair::skyscraper(m.clone()).unwrap());
            let expected = usize::from(i == j);
            assert_eq!(hom_autpair(&a, &b).dimension, expected);
            assert_eq!(hom_star(&from_autpair(&a), &from_autpair(&b)).unwrap().dimension, expected);
        }
    }
}

#[test]
fn jordan_block_versus_split() {
    // Same characteristic polynomial, different classes.
    let j = AutPair::new(RatMatrix::from_i64(&[&[2, 1], &[0, 2]])).unwrap();
    let s = AutPair::new(RatMatrix::from_i64(&[&[2, 0], &[0, 2]])).unwrap();
    assert_eq!(hom_autpair(&j, &j).dimension, 2);
    assert_eq!(hom_autpair(&s, &s).dimension, 4);
    assert_eq!(hom_autpair(&j, &s).dimension, 2);
    assert_eq!(hom_star(&from_autpair(&j), &from_autpair(&s)).unwrap().dimension, 2);
}
