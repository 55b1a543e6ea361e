//! Randomized invariants via proptest. Complements the fixed-seed suites in
//! the acceptance tests with shrinkable counterexample search.

use proptest::prelude::*;

use qrobust::channels::{evolve, ChannelKind};
use qrobust::distances::{qjsd, qjsd_sqrt};
use qrobust::entanglement::entanglement;
use qrobust::qlinalg::{haar_random_pure_state, partial_transpose};

fn any_kind() -> impl Strategy<Value = ChannelKind> {
    prop_oneof![
        Just(ChannelKind::BitFlip),
        Just(ChannelKind::PhaseFlip),
        Just(ChannelKind::BitPhaseFlip),
        Just(ChannelKind::DepolarizingLocal),
        Just(ChannelKind::DepolarizingGlobal),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn channels_preserve_density_matrix_invariants(
        seed in 0u64..1_000_000,
        p in 0.0f64..=1.0,
        kind in any_kind(),
    ) {
        let rho = haar_random_pure_state(4, seed).to_density();
        let out = evolve(&rho, kind, p).unwrap();
        out.validate().unwrap();
        prop_assert!(out.purity() <= 1.0 + 1e-12);
    }

    #[test]
    fn partial_transpose_is_involutive_and_trace_preserving(
        seed in 0u64..1_000_000,
        subset_bits in 1u8..15,
    ) {
        let rho = haar_random_pure_state(4, seed).to_density();
        let subset: Vec<usize> =
            (1..=4).filter(|q| subset_bits & (1 << (q - 1)) != 0).collect();
        let pt = partial_transpose(&rho, &subset).unwrap();
        prop_assert!((pt.trace().re - 1.0).abs() < 1e-12);
        prop_assert!(pt.trace().im.abs() < 1e-12);
        prop_assert!(pt.hermiticity_defect() < 1e-14);
        // applying the index swap again recovers rho entrywise (PT of an
        // indefinite matrix is not representable as a DensityMatrix, so the
        // second transpose is done on raw indices; qubit q is bit n - q)
        let d = rho.dim();
        let mask: usize = subset.iter().map(|&q| 1usize << (4 - q)).sum();
        let mut twice = qrobust::qlinalg::ComplexMatrix::zeros(d);
        for r in 0..d {
            for c in 0..d {
                let r2 = (r & !mask) | (c & mask);
                let c2 = (c & !mask) | (r & mask);
                twice.set(r2, c2, pt.get(r, c));
            }
        }
        prop_assert!(twice.max_abs_diff(rho.matrix()) < 1e-14);
    }

    #[test]
    fn qjsd_symmetric_bounded_and_sqrt_consistent(
        s1 in 0u64..1_000_000,
        s2 in 0u64..1_000_000,
    ) {
        let a = haar_random_pure_state(4, s1).to_density();
        let b = haar_random_pure_state(4, 7_000_000 + s2).to_density();
        let ab = qjsd(&a, &b).unwrap().value;
        let ba = qjsd(&b, &a).unwrap().value;
        prop_assert!((ab - ba).abs() < 1e-12);
        prop_assert!(ab >= -1e-12 && ab <= 1.0 + 1e-12);
        let root = qjsd_sqrt(&a, &b).unwrap().value;
        prop_assert!((root * root - ab.max(0.0)).abs() < 1e-12);
    }

    #[test]
    fn entanglement_nonnegative_and_lu_invariant(seed in 0u64..1_000_000) {
        let psi = haar_random_pure_state(4, seed);
        let e = entanglement(&psi.to_density()).unwrap();
        prop_assert!(e >= 0.0);
        let u = qrobust::qlinalg::haar_random_local_unitary(4, seed ^ 0xABCD);
        let rotated = psi.apply_unitary(&u);
        let e2 = entanglement(&rotated.to_density()).unwrap();
        prop_assert!((e - e2).abs() < 1e-10);
    }
}
