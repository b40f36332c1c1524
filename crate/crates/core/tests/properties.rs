use proptest::prelude::*;
use transmds::algebra::{Alphabet, Permutation, Symbol};
use transmds::code::is_mds;
use transmds::constructions::{quadratic_code, quadratic_witness, QuadraticSpec};
use transmds::counting::partition_exact;
use transmds::isometry::{Budget, Isometry, Isotopism};
use transmds::loops::latin_squares;
use transmds::q4::{classify, standard_semilinear_code, BooleanFunction};

fn perm(q: usize) -> impl Strategy<Value = Permutation> {
    Just((0..q as Symbol).collect::<Vec<_>>()).prop_shuffle().prop_map(|v| Permutation::from_images(v).unwrap())
}

fn isotopism(q: usize, n: usize) -> impl Strategy<Value = Isotopism> {
    prop::collection::vec(perm(q), n).prop_map(Isotopism::new)
}

fn isometry(q: usize, n: usize) -> impl Strategy<Value = Isometry> {
    (perm(n), isotopism(q, n)).prop_map(|(c, t)| Isometry::new(c, t).unwrap())
}

fn word(q: usize, n: usize) -> impl Strategy<Value = Vec<Symbol>> {
    prop::collection::vec(0..q as Symbol, n)
}

fn partitions_dp(n: usize) -> u128 {
    let mut p = vec![0u128; n + 1];
    p[0] = 1;
    for k in 1..=n {
        for m in k..=n {
            p[m] += p[m - k];
        }
    }
    p[n]
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn flipping_a_latin_square_entry_breaks_mds(idx in 0usize..576, cell in 0usize..16, delta in 1u8..4) {
        let sq = &latin_squares(4).unwrap()[idx];
        let mut words: Vec<Vec<Symbol>> = sq.graph().words().map(<[Symbol]>::to_vec).collect();
        prop_assert!(is_mds(&words, &Alphabet::plain(4).unwrap(), 3).unwrap().is_mds());
        words[cell][2] = (words[cell][2] + delta) % 4;
        prop_assert!(!is_mds(&words, &Alphabet::plain(4).unwrap(), 3).unwrap().is_mds());
    }

    #[test]
    fn isotopism_compose_and_inverse(a in isotopism(5, 4), b in isotopism(5, 4), w in word(5, 4)) {
        prop_assert_eq!(a.compose(&b).unwrap().apply_word(&w), a.apply_word(&b.apply_word(&w)));
        prop_assert!(a.compose(&a.inverse()).unwrap().is_identity());
    }

    #[test]
    fn isometry_compose_and_inverse(a in isometry(4, 5), b in isometry(4, 5), w in word(4, 5)) {
        prop_assert_eq!(a.compose(&b).unwrap().apply_word(&w), a.apply_word(&b.apply_word(&w)));
        prop_assert_eq!(a.inverse().apply_word(&a.apply_word(&w)), w);
    }

    #[test]
    fn isometry_images_of_codes_stay_mds(idx in 0usize..576, g in isometry(4, 3)) {
        let m = latin_squares(4).unwrap()[idx].graph();
        let img = g.apply(&m).unwrap();
        prop_assert!(img.check_lines().is_ok());
        prop_assert!(g.is_automorphism(&m).unwrap() == img.same_words(&m));
    }

    #[test]
    fn quadratic_witnesses_gf3(
        alpha in prop::collection::vec(0u8..3, 16),
        beta in prop::collection::vec(0u8..3, 8),
        pick in 0usize..729,
    ) {
        let n = 4;
        let alpha: Vec<Vec<Symbol>> = alpha.chunks(4).map(<[Symbol]>::to_vec).collect();
        let beta: Vec<Vec<Symbol>> = beta.chunks(2).map(|c| vec![0, c[0], c[1]]).collect();
        let spec = QuadraticSpec::new(3, 1, n, alpha, beta).unwrap();
        let m = quadratic_code(&spec).unwrap();
        prop_assert!(m.check_lines().is_ok());
        let w = m.word(pick % m.len()).to_vec();
        let g = quadratic_witness(&spec, &w).unwrap();
        prop_assert!(g.is_autotopism(&m));
        prop_assert_eq!(g.apply_word(&w), vec![0; n]);
    }

    #[test]
    fn semilinear_degree_is_isotopy_invariant(table in prop::collection::vec(0u8..2, 16), t in isotopism(4, 4)) {
        let f = BooleanFunction::from_anf(4, table);
        let m = standard_semilinear_code(4, &f).unwrap();
        let img = Isometry::new(Permutation::identity(4), t).unwrap().apply(&m).unwrap();
        let b = Budget::default();
        prop_assert_eq!(classify(&m, false, &b).unwrap().degree, classify(&img, false, &b).unwrap().degree);
    }

    #[test]
    fn partitions_match_dp(n in 0usize..400) {
        prop_assert_eq!(partition_exact(n).unwrap().to_string(), partitions_dp(n).to_string());
    }
}
