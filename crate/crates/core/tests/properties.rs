use proptest::prelude::*;

use monogamy::bounds::{
    comparator_ref15, lemma1_gap, lemma2_gap, mono_chain_bound, mono_pair_bound,
    poly_pair_bound_concurrence, poly_pair_bound_noa, BoundParams,
};
use monogamy::linalg::{trace_norm, ComplexMatrix};
use monogamy::measures::{concurrence_pure, concurrence_wootters, negativity, negativity_pure};
use monogamy::qstate::{
    density_from_pure, partial_trace, partial_transpose, random_pure, random_unitary, sample_rng,
    DensityMatrix, PartitionSpec,
};

fn two_qubit_mixed(seed: u64) -> DensityMatrix {
    random_pure(&[2, 2, 2], seed).unwrap().reduced(&[0, 1]).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn partial_transpose_is_an_involution(seed in any::<u64>()) {
        // 0.1 |psi><psi| + 0.9 I/6 has a partial transpose with spectrum >= 0.15 - 0.05
        let pure = density_from_pure(&random_pure(&[2, 3], seed).unwrap());
        let noisy = &pure.matrix().scale(0.1) + &ComplexMatrix::identity(6).scale(0.15);
        let rho = DensityMatrix::new(noisy, vec![2, 3]).unwrap();
        let cut = PartitionSpec::first_vs_rest(2).unwrap();
        let once = partial_transpose(&rho, &cut).unwrap();
        prop_assert!((once.trace().re - 1.0).abs() < 1e-12);
        prop_assert!(once.is_hermitian(1e-12));
        let back = DensityMatrix::new(once, vec![2, 3]).unwrap();
        let twice = partial_transpose(&back, &cut).unwrap();
        prop_assert!(twice.max_abs_diff(rho.matrix()) < 1e-14);
    }

    #[test]
    fn partial_trace_keeps_trace_and_hermiticity(seed in any::<u64>(), which in 0usize..3) {
        let rho = density_from_pure(&random_pure(&[2, 3, 2], seed).unwrap());
        let red = partial_trace(&rho, &[which]).unwrap();
        prop_assert!((red.matrix().trace().re - 1.0).abs() < 1e-12);
        prop_assert!(red.matrix().is_hermitian(1e-12));
        prop_assert_eq!(red.factor_dims().len(), 2);
    }

    #[test]
    fn two_qubit_measures_in_unit_interval(seed in any::<u64>()) {
        let rho = two_qubit_mixed(seed);
        let cut = PartitionSpec::first_vs_rest(2).unwrap();
        let c = concurrence_wootters(&rho).unwrap();
        let n = negativity(&rho, &cut).unwrap();
        prop_assert!((0.0..=1.0 + 1e-12).contains(&c));
        prop_assert!((0.0..=1.0 + 1e-12).contains(&n));
        // negativity never exceeds concurrence on two qubits
        prop_assert!(n <= c + 1e-9);
    }

    #[test]
    fn local_unitaries_leave_pure_measures_unchanged(seed in any::<u64>()) {
        let psi = random_pure(&[2, 3], seed).unwrap();
        let mut rng = sample_rng(seed, 7);
        let u = [random_unitary(2, &mut rng), random_unitary(3, &mut rng)];
        let moved = psi.apply_local(&u).unwrap();
        let cut = PartitionSpec::first_vs_rest(2).unwrap();
        prop_assert!((concurrence_pure(&psi, &cut).unwrap() - concurrence_pure(&moved, &cut).unwrap()).abs() < 1e-12);
        prop_assert!((negativity_pure(&psi, &cut).unwrap() - negativity_pure(&moved, &cut).unwrap()).abs() < 1e-10);
    }

    #[test]
    fn trace_norm_of_partial_transpose_at_least_one(seed in any::<u64>()) {
        let rho = two_qubit_mixed(seed);
        let pt = partial_transpose(&rho, &PartitionSpec::first_vs_rest(2).unwrap()).unwrap();
        prop_assert!(trace_norm(&pt) >= 1.0 - 1e-12);
    }

    #[test]
    fn lemma1_holds_on_domain(k in 1.0f64..10.0, extra in 0.0f64..20.0, p in 0.5f64..=1.0, x in 0.0f64..=0.5) {
        let gap = lemma1_gap(k + extra, k, p, x).unwrap();
        prop_assert!(gap >= -1e-12, "gap {}", gap);
    }

    #[test]
    fn lemma2_holds_on_domain(
        k in 1.0f64..10.0,
        extra in 0.0f64..20.0,
        q in 0.01f64..=1.0,
        x in prop_oneof![1.0f64..4.0, -3.0f64..=0.0],
    ) {
        let gap = lemma2_gap(k + extra, k, q, x).unwrap();
        prop_assert!(gap >= -1e-12 * (1.0 + k + extra).powf(x.abs()), "gap {}", gap);
    }

    #[test]
    fn chain_of_three_equals_pair(
        a in 0.0f64..1.0, b in 0.0f64..1.0, k in 1.0f64..2.0, p in 0.5f64..=1.0,
        r in 2.0f64..5.0, frac in 0.0f64..=1.0,
    ) {
        let params = BoundParams::monogamy(k, p, frac * r / 2.0, r);
        if let Ok(pair) = mono_pair_bound(a, b, &params) {
            let chain = mono_chain_bound(&[a, b], &[b], &params).unwrap();
            prop_assert!((pair.bound - chain.bound).abs() <= 1e-14);
        }
    }

    #[test]
    fn p_equal_one_is_the_comparator(a in 0.0f64..1.0, b in 0.0f64..1.0, k in 1.0f64..2.0, r in 2.0f64..5.0, frac in 0.0f64..=1.0) {
        let alpha = frac * r / 2.0;
        let params = BoundParams::monogamy(k, 1.0, alpha, r);
        if let Ok(rep) = mono_pair_bound(a, b, &params) {
            let want = match rep.branch {
                monogamy::bounds::Branch::A12Dominant => comparator_ref15(b, a, k, alpha, r),
                _ => comparator_ref15(a, b, k, alpha, r),
            };
            prop_assert_eq!(rep.bound, want);
        }
    }

    #[test]
    fn smaller_p_gives_larger_monogamy_bound(
        a in 0.01f64..1.0, b in 0.01f64..1.0, k in 1.0f64..2.0,
        p1 in 0.5f64..=1.0, p2 in 0.5f64..=1.0, r in 2.0f64..5.0, frac in 0.0f64..=1.0,
    ) {
        let (lo, hi) = if p1 <= p2 { (p1, p2) } else { (p2, p1) };
        let alpha = frac * r / 2.0;
        let small = mono_pair_bound(a, b, &BoundParams::monogamy(k, lo, alpha, r));
        let large = mono_pair_bound(a, b, &BoundParams::monogamy(k, hi, alpha, r));
        if let (Ok(s), Ok(l)) = (small, large) {
            prop_assert!(s.bound >= l.bound - 1e-12);
        }
    }

    #[test]
    fn q_equal_one_gives_the_smallest_polygamy_bound(
        a in 0.05f64..1.0, b in 0.05f64..1.0, k in 1.0f64..2.0, q in 0.05f64..=1.0,
        beta in -3.0f64..=0.0, s in 2.0f64..5.0,
    ) {
        let with_q = poly_pair_bound_concurrence(a, b, &BoundParams::polygamy(k, q, beta, s));
        let with_one = poly_pair_bound_concurrence(a, b, &BoundParams::polygamy(k, 1.0, beta, s));
        if let (Ok(x), Ok(y)) = (with_q, with_one) {
            prop_assert!(y.bound <= x.bound + 1e-12 * x.bound.abs().max(1.0));
        }
    }

    #[test]
    fn noa_bound_q_monotone(
        a in 0.0f64..1.0, b in 0.0f64..1.0, k in 1.0f64..2.0, q in 0.05f64..=1.0,
        s in 0.1f64..=1.0, extra in 0.0f64..3.0,
    ) {
        let beta = s + extra;
        let with_q = poly_pair_bound_noa(a, b, &BoundParams::polygamy(k, q, beta, s));
        let with_one = poly_pair_bound_noa(a, b, &BoundParams::polygamy(k, 1.0, beta, s));
        if let (Ok(x), Ok(y)) = (with_q, with_one) {
            prop_assert!(y.bound <= x.bound + 1e-12);
        }
    }

    #[test]
    fn haar_three_qubit_monogamy(seed in any::<u64>()) {
        let psi = random_pure(&[2, 2, 2], seed).unwrap();
        let joint = concurrence_pure(&psi, &PartitionSpec::first_vs_rest(3).unwrap()).unwrap();
        let c12 = concurrence_wootters(&psi.reduced(&[0, 1]).unwrap()).unwrap();
        let c13 = concurrence_wootters(&psi.reduced(&[0, 2]).unwrap()).unwrap();
        prop_assert!(joint * joint >= c12 * c12 + c13 * c13 - 1e-9);
        let params = BoundParams::monogamy(1.0, 0.5, 1.0, 2.0);
        if let Ok(rep) = mono_pair_bound(c12, c13, &params) {
            prop_assert!(rep.against(joint).unwrap().slack.unwrap() >= -1e-9);
        }
    }
}
