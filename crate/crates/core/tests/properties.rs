//! Invariants from each module, as property tests.

mod common;

use acmq::algebra::{poly_parse, ExactMatrix, Polynomial, Rational};
use acmq::pfaffian::{determinant, pfaffian};
use acmq::picard::{
    add_reduced, scale_reduced, CohomologyFlags, DivisorClass, PicardLattice, StabilityKind, WatanabeCase,
};
use acmq::schemes::{self, gorenstein_symmetry, HilbertProfile, PointScheme};
use acmq::surface::{
    build_phi_n8, pfaffian_rep_from_quadrics, quadric_product_sum, smoothness_probe, verify_representation,
    QuarticSurface, Representation,
};
use common::*;
use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;

fn seeds() -> impl Strategy<Value = u64> {
    any::<u64>()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn product_degrees_add(seed in seeds(), a in 0u32..4, b in 0u32..4) {
        let mut r = rng(seed);
        let p = random_form(&mut r, a, 5);
        let q_ = random_form(&mut r, b, 5);
        prop_assume!(!p.is_zero() && !q_.is_zero());
        prop_assert_eq!((&p * &q_).homogeneous_degree(), Some(a + b));
        let sum = &p + &q_;
        if a == b {
            prop_assert!(sum.is_homogeneous());
        } else {
            prop_assert!(!sum.is_homogeneous());
        }
    }

    #[test]
    fn display_parses_back(seed in seeds(), d in 0u32..4) {
        let mut r = rng(seed);
        let p = random_rational_form(&mut r, d);
        prop_assert_eq!(poly_parse(&p.to_string(), Some(d)).unwrap(), p);
    }

    #[test]
    fn rank_of_transpose_and_kernel(seed in seeds(), rows in 1usize..7, cols in 1usize..7) {
        let mut r = rng(seed);
        // low-rank-ish integer matrices: small range produces dependencies
        let vals: Vec<i64> = (0..rows * cols).map(|_| r.gen_range(-1..=1)).collect();
        let m = ExactMatrix::from_integers(rows, cols, &vals);
        prop_assert_eq!(m.rank(), m.transpose().rank());
        prop_assert!(m.rank() <= rows.min(cols));
        let ker = m.kernel_basis();
        prop_assert_eq!(ker.len() + m.rank(), cols);
        for v in ker {
            prop_assert!(m.mul_vec(&v).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn pfaffian_squares_to_determinant(seed in seeds(), half in 1usize..=4) {
        let mut r = rng(seed);
        let m = random_skew_integer(&mut r, 2 * half);
        let pf = pfaffian(&m).unwrap();
        prop_assert_eq!(&pf * &pf, determinant(&m.to_full()).unwrap());
    }

    #[test]
    fn polynomial_pfaffian_squares_to_determinant(seed in seeds(), half in 1usize..=3) {
        let mut r = rng(seed);
        let m = random_skew_forms(&mut r, 2 * half, 1);
        let pf = pfaffian(&m).unwrap();
        prop_assert_eq!(&pf * &pf, determinant(&m.to_full()).unwrap());
    }

    #[test]
    fn swapping_negates_pfaffian(seed in seeds(), half in 1usize..=4) {
        let mut r = rng(seed);
        let n = 2 * half;
        let m = random_skew_integer(&mut r, n);
        let i = r.gen_range(0..n);
        let j = (i + r.gen_range(1..n)) % n;
        prop_assert_eq!(pfaffian(&m.swap(i, j)).unwrap(), -pfaffian(&m).unwrap());
    }

    #[test]
    fn scaling_an_index_scales_pfaffian(seed in seeds(), half in 1usize..=3, lambda in -7i64..=7) {
        let mut r = rng(seed);
        let n = 2 * half;
        let m = random_skew_forms(&mut r, n, 1);
        let i = r.gen_range(0..n);
        let c = Polynomial::from_int(lambda);
        prop_assert_eq!(pfaffian(&m.scale_index(i, &c)).unwrap(), &pfaffian(&m).unwrap() * &c);
    }

    #[test]
    fn quadric_representation_round_trip(seed in seeds()) {
        let mut r = rng(seed);
        let q_: [Polynomial; 6] = std::array::from_fn(|_| random_rational_form(&mut r, 2));
        let f = quadric_product_sum(&q_);
        prop_assume!(!f.is_zero());
        let m = pfaffian_rep_from_quadrics(&q_).unwrap();
        let out = verify_representation(Representation::Pfaffian(&m), &QuarticSurface::new(f).unwrap()).unwrap();
        prop_assert_eq!(out.lambda(), Some(&Rational::one()));
    }

    #[test]
    fn determinant_mode_iff_proportional(seed in seeds(), num in -5i64..=5, den in 1i64..=4) {
        prop_assume!(num != 0);
        let mut r = rng(seed);
        let a = random_linear_matrix(&mut r);
        let det = determinant(&a).unwrap();
        prop_assume!(!det.is_zero());
        let lambda = Rational::new(num.into(), den.into());
        let surface = QuarticSurface::new(det.scale(&lambda.recip())).unwrap();
        let out = verify_representation(Representation::Determinant(&a), &surface).unwrap();
        prop_assert_eq!(out.lambda(), Some(&lambda));
        let other = QuarticSurface::new(&det + &Polynomial::var(0).pow(4)).unwrap();
        let out = verify_representation(Representation::Determinant(&a), &other).unwrap();
        prop_assert!(out.lambda().is_none());
    }

    #[test]
    fn pairing_symmetric_bilinear_even(seed in seeds()) {
        let mut r = rng(seed);
        let (l, _) = random_lattice_with_c2_eight(&mut r);
        let n = l.rank();
        let mut v = || DivisorClass::new((0..n).map(|_| r.gen_range(-4..=4)).collect());
        let (a, b, c) = (v(), v(), v());
        prop_assert_eq!(l.pair(&a, &b).unwrap(), l.pair(&b, &a).unwrap());
        prop_assert_eq!(l.pair(&(&a + &b), &c).unwrap(), l.pair(&a, &c).unwrap() + l.pair(&b, &c).unwrap());
        prop_assert_eq!(l.pair(&(3 * &a), &c).unwrap(), 3 * l.pair(&a, &c).unwrap());
        prop_assert_eq!(l.self_intersection(&a).unwrap() % 2, 0);
        prop_assert_eq!(l.euler_characteristic(1, &a, 0).unwrap(), l.euler_characteristic(1, &-&a, 0).unwrap());
    }

    #[test]
    fn reduced_polynomials_add_up(seed in seeds()) {
        let mut r = rng(seed);
        let (l, d) = random_lattice_with_c2_eight(&mut r);
        let rest = l.complement(&d);
        let two_h = 2 * l.h();
        let lhs = add_reduced(&l.reduced_hilbert_poly(1, &d, 0).unwrap(), &l.reduced_hilbert_poly(1, &rest, 0).unwrap());
        prop_assert_eq!(lhs, scale_reduced(&l.reduced_hilbert_poly(2, &two_h, 8).unwrap(), 2));
    }

    #[test]
    fn semistable_complement_is_also_elliptic(seed in seeds()) {
        let mut r = rng(seed);
        let (l, d) = random_lattice_with_c2_eight(&mut r);
        let v = l.stability_classify(&d).unwrap();
        let (d2, dh) = l.numerics(&d).unwrap();
        match v.kind {
            StabilityKind::Unstable => prop_assert!(dh > 4),
            StabilityKind::StableCandidate => prop_assert!(dh < 4),
            StabilityKind::StrictlySemistable => {
                prop_assert_eq!((dh, d2), (4, 0));
                prop_assert_eq!(l.numerics(&l.complement(&d)).unwrap(), (0, 4));
                prop_assert_eq!(l.stability_classify(&l.complement(&d)).unwrap().kind, StabilityKind::StrictlySemistable);
            }
        }
    }

    #[test]
    fn multiples_of_h_are_not_initialized(k in 1i64..6, seed in seeds()) {
        let mut r = rng(seed);
        let (l, _) = random_lattice_with_c2_eight(&mut r);
        let all = CohomologyFlags {
            h0_d_minus_h_vanishes: true,
            h0_2h_minus_d_vanishes: true,
            d_irreducible: true,
            d_effective: true,
            d_globally_generated: true,
            h0_twice_difference_vanishes: true,
        };
        prop_assert_eq!(l.watanabe_classify(&(k * l.h()), &all).unwrap(), WatanabeCase::None);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn block_pfaffian_independent_of_b(seed in seeds()) {
        let mut r = rng(seed);
        let a = random_linear_matrix(&mut r);
        let first = build_phi_n8(&random_skew_forms(&mut r, 4, 2), &a).unwrap();
        for _ in 0..3 {
            let other = build_phi_n8(&random_skew_forms(&mut r, 4, 2), &a).unwrap();
            prop_assert_eq!(&other.pfaffian, &first.pfaffian);
            prop_assert_eq!(other.sign, first.sign);
        }
    }

    #[test]
    fn hilbert_function_shape(seed in seeds(), count in 1usize..9) {
        let e = schemes::random_points(seed, count);
        let prof = e.hilbert_profile();
        prop_assert!(prof.hf.windows(2).all(|w| w[0] <= w[1]));
        prop_assert_eq!(prof.hvec.iter().sum::<i64>(), count as i64);
        prop_assert_eq!(prof.hvec[0], 1);
        prop_assert!(prof.hvec.iter().all(|&h| h >= 0));
        prop_assert!(prof.hf.len() <= count);
        for t in (count as u32 - 1)..(count as u32 + 1) {
            prop_assert_eq!(e.hilbert_function(t), count);
        }
    }

    #[test]
    fn palindrome_iff_symmetric(hvec in proptest::collection::vec(0i64..5, 1..7)) {
        let mut hvec = hvec;
        hvec[0] = 1;
        let last = hvec.len() - 1;
        prop_assume!(hvec[last] != 0);
        let prof = HilbertProfile::from_hvec(&hvec);
        let deg = hvec.iter().sum::<i64>() as usize;
        prop_assert_eq!(prof.is_palindromic(), gorenstein_symmetry(&prof, deg));
    }

    #[test]
    fn classify_invariant_under_permutation(seed in seeds(), which in 0usize..3) {
        let mut r = rng(seed);
        let e = match which {
            0 => schemes::cube_points(),
            1 => schemes::twisted_cubic_points_int(&[0, 1, 2, 3, 4, 5, 6, 7]).unwrap(),
            _ => schemes::random_points(seed, 8),
        };
        let mut perm: Vec<usize> = (0..8).collect();
        perm.shuffle(&mut r);
        prop_assert_eq!(e.permuted(&perm).classify_degree8().unwrap().class, e.classify_degree8().unwrap().class);
    }
}

#[test]
fn coordinate_changes_preserve_scheme_verdicts() {
    let bases: Vec<PointScheme> = vec![
        schemes::cube_points(),
        schemes::twisted_cubic_points_int(&[0, 1, 2, 3, 4, 5, 6, 7]).unwrap(),
        schemes::random_points(1, 8),
        schemes::collinear_points(8),
    ];
    let reference: Vec<_> = bases
        .iter()
        .map(|e| {
            (
                e.hilbert_profile(),
                e.ag_check().verdict,
                e.cayley_bacharach(2).holds(),
                e.classify_degree8().unwrap().class,
            )
        })
        .collect();
    for seed in 0..20 {
        let g = schemes::random_coordinate_change(seed);
        for (e, expected) in bases.iter().zip(&reference) {
            let moved = e.transform(&g).unwrap();
            let got = (
                moved.hilbert_profile(),
                moved.ag_check().verdict,
                moved.cayley_bacharach(2).holds(),
                moved.classify_degree8().unwrap().class,
            );
            assert_eq!(&got, expected, "seed {seed}");
        }
    }
}

#[test]
fn smoothness_evidence_is_monotone() {
    let s = QuarticSurface::parse("x0^2*x1^2 + x2^4 - x3^4").unwrap();
    let one = smoothness_probe(&s, &[5]).unwrap();
    let more = smoothness_probe(&s, &[5, 7, 11]).unwrap();
    for w in one.singular_witnesses() {
        assert!(more.singular_witnesses().contains(&w));
    }
    let merged = one.clone().merge(smoothness_probe(&s, &[13]).unwrap());
    assert!(merged.singular_witnesses().len() >= one.singular_witnesses().len());
}

#[test]
fn ag_implies_symmetric_and_cubic_hvector() {
    for e in [
        schemes::cube_points(),
        schemes::twisted_cubic_points_int(&[0, 1, 2, 3, 4, 5, 6, 7]).unwrap(),
        schemes::twisted_cubic_points_int(&[-3, -1, 2, 5, 9, 10, 12, 20]).unwrap(),
    ] {
        let r = e.ag_check();
        assert_eq!(r.verdict, acmq::AgVerdict::Ag);
        assert!(r.symmetric);
        assert_eq!(e.hilbert_function(1), 4);
        assert_eq!(r.profile.hvec, vec![1, 3, 3, 1]);
    }
}

#[test]
fn rank_one_lattice_rejects_c2_eight_constraint() {
    let l = PicardLattice::rank_one();
    assert!(l.stability_classify(l.h()).is_err());
}
