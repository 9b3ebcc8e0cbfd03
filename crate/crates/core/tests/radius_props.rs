mod common;

use common::{matrix, pair_same_size, square, SLACK};
use kronrad::generators::{random_unitary, stream_rng};
use kronrad::radius::rayleigh_modulus;
use kronrad::{anti_diagonal, kron, radius_antidiagonal, spectral_norm, spectral_radius, w, CMatrix, C64};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn radius_between_half_norm_and_norm(a in square(6)) {
        let (wa, na) = (w(&a).unwrap(), spectral_norm(&a).unwrap());
        prop_assert!(0.5 * na <= wa + SLACK);
        prop_assert!(wa <= na + SLACK);
        prop_assert!(spectral_radius(&a).unwrap() <= wa + SLACK);
    }

    #[test]
    fn attaining_vector_reaches_value(a in square(5)) {
        let r = kronrad::numerical_radius(&a, 1024, 1e-12).unwrap();
        prop_assert!((rayleigh_modulus(&a, &r.attaining_vector) - r.value).abs() < 1e-9);
    }

    #[test]
    fn unitary_invariance(a in square(5), seed in any::<u64>()) {
        let u: CMatrix = random_unitary(&mut stream_rng(seed, 0), a.rows());
        let b = &(&u.adjoint() * &a) * &u;
        prop_assert!((w(&a).unwrap() - w(&b).unwrap()).abs() < 1e-9);
    }

    #[test]
    fn kron_sandwich_and_symmetry(a in square(3), b in square(3)) {
        let (wa, wb) = (w(&a).unwrap(), w(&b).unwrap());
        let ab = w(&kron(&a, &b).unwrap()).unwrap();
        let ba = w(&kron(&b, &a).unwrap()).unwrap();
        prop_assert!(wa * wb <= ab + SLACK);
        prop_assert!(ab <= (wa * spectral_norm(&b).unwrap()).min(wb * spectral_norm(&a).unwrap()) + SLACK);
        prop_assert!((ab - ba).abs() < 1e-9);
    }

    #[test]
    fn antidiagonal_closed_form(lams in prop::collection::vec(common::entry(), 1..8)) {
        let a = anti_diagonal(&lams).unwrap();
        prop_assert!((w(&a).unwrap() - radius_antidiagonal(&lams)).abs() < 1e-9);
    }

    #[test]
    fn radius_is_a_norm((a, b) in pair_same_size(4), z in common::entry()) {
        let sum = w(&(&a + &b)).unwrap();
        prop_assert!(sum <= w(&a).unwrap() + w(&b).unwrap() + SLACK);
        prop_assert!((w(&a.scale(z)).unwrap() - z.norm() * w(&a).unwrap()).abs() < 1e-9);
    }

    #[test]
    fn direct_sum_takes_max(a in matrix(2, 2), b in matrix(3, 3)) {
        let ws = w(&a.direct_sum(&b)).unwrap();
        prop_assert!((ws - w(&a).unwrap().max(w(&b).unwrap())).abs() < 1e-9);
    }
}

#[test]
fn two_by_two_nilpotent() {
    let j = CMatrix::from_rows(&[vec![C64::new(0.0, 0.0), C64::new(0.0, 3.0)], vec![C64::new(0.0, 0.0); 2]]).unwrap();
    assert!((w(&j).unwrap() - 1.5).abs() < 1e-12);
}
