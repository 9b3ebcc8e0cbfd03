mod common;

use common::{matrix, square};
use kronrad::generators::{random_doubly_stochastic, stream_rng};
use kronrad::pnorm::{circ_minus_a_b, circ_norm2_closed, mixed_norm};
use kronrad::{kappa, kron, kron_pnorm_bounds, opnorm_exact, opnorm_lower, opnorm_upper_interp, spectral_norm, CMatrix, Exponent};
use proptest::prelude::*;

fn exponent() -> impl Strategy<Value = Exponent> {
    prop_oneof![
        Just(Exponent::Finite(1.0)),
        Just(Exponent::Finite(1.5)),
        Just(Exponent::Finite(2.0)),
        Just(Exponent::Finite(3.0)),
        Just(Exponent::Infinity),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn lower_never_exceeds_upper(a in square(4), p in exponent()) {
        let (lo, x) = opnorm_lower(&a, p, 50).unwrap();
        let up = opnorm_upper_interp(&a, p);
        prop_assert!(lo <= up * (1.0 + 1e-10) + 1e-12);
        // the witness is a genuine unit vector achieving the lower value
        prop_assert!((mixed_norm(&x, 1, p) - 1.0).abs() < 1e-9);
        prop_assert!((mixed_norm(&a.mul_vec(&x), 1, p) - lo).abs() < 1e-9);
    }

    #[test]
    fn kron_bracket_contains_exact(a in square(3), b in matrix(2, 2), p in exponent()) {
        let r = kron_pnorm_bounds(&a, &b, p).unwrap();
        prop_assert!(r.lower <= r.upper * (1.0 + 1e-10) + 1e-12);
        if let Some(e) = r.exact {
            prop_assert!(r.lower <= e + 1e-9 && e <= r.upper + 1e-9);
        }
    }

    #[test]
    fn exact_norms_at_one_two_infinity(a in square(4)) {
        prop_assert!((opnorm_exact(&a, Exponent::Finite(1.0)).unwrap() - a.norm_one()).abs() < 1e-12);
        prop_assert!((opnorm_exact(&a, Exponent::Infinity).unwrap() - a.norm_inf()).abs() < 1e-12);
        prop_assert!((opnorm_exact(&a, Exponent::Finite(2.0)).unwrap() - spectral_norm(&a).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn doubly_stochastic_collapse(seed in any::<u64>(), n in 2usize..5, p in exponent()) {
        let mut rng = stream_rng(seed, 0);
        let a: CMatrix = random_doubly_stochastic(&mut rng, n, 3.0, 4);
        let b: CMatrix = kronrad::generators::random_complex(&mut rng, 2, 2);
        let r = kron_pnorm_bounds(&a, &b, p).unwrap();
        let target = 3.0 * spectral_norm(&b).unwrap();
        prop_assert!((r.lower - target).abs() < 1e-8 && (r.upper - target).abs() < 1e-8);
    }

    #[test]
    fn circulant_closed_form(a in common::entry(), b in common::entry(), n in 2usize..9, bm in matrix(2, 2)) {
        let (closed, _) = circ_norm2_closed(a, b, n, &bm).unwrap();
        let direct = spectral_norm(&kron(&circ_minus_a_b(a, b, n).unwrap(), &bm).unwrap()).unwrap();
        prop_assert!((closed - direct).abs() < 1e-9);
    }
}

#[test]
fn kappa_values() {
    assert!((kappa(2, 1 << 16).unwrap() - 4.0 / std::f64::consts::PI).abs() < 1e-6);
    for n in 2..=8 {
        assert!(kappa(n, 1 << 16).unwrap() > 1.0);
    }
}
