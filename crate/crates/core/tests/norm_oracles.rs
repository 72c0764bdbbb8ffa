mod common;

use common::{normal, product_triple, shape};
use proptest::prelude::*;
use tnorm_core::linalg::{nuclear_norm, Matrix};
use tnorm_core::nucnorm::{nuclear_interval, nuclear_lower, nuclear_upper_greedy, GreedyOptions, LowerSearchOptions};
use tnorm_core::random;
use tnorm_core::specnorm::{
    bruteforce_gap, hopm, hopm_restart, spectral_alt_formula, spectral_bruteforce, HopmOptions,
};
use tnorm_core::{contract_product, fixtures, Tensor};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn sweeps_never_decrease(s in shape(4, 3), seed in any::<u64>()) {
        let a = normal(&s, seed);
        let mut rng = random::stream(seed, 0);
        let init = s.iter().map(|&n| random::unit_vector(&mut rng, n)).collect();
        let opts = HopmOptions { max_sweeps: 200, ..HopmOptions::default() };
        let run = hopm_restart(&a, init, &opts, &mut rng);
        for w in run.sweep_values[1..].windows(2) {
            prop_assert!(w[1] >= w[0] - 1e-12 * w[0].abs().max(1.0), "{} then {}", w[0], w[1]);
        }
    }

    #[test]
    fn spectral_value_is_sign_symmetric_and_bounded(s in shape(3, 3), seed in any::<u64>()) {
        let a = normal(&s, seed);
        let opts = HopmOptions::default();
        let pos = hopm(&a, &opts).unwrap();
        let neg = hopm(&a.scale(-1.0), &opts).unwrap();
        prop_assert!((pos.value - neg.value).abs() <= 1e-10 * pos.value.max(1.0));
        prop_assert!(pos.value <= a.frobenius() * (1.0 + 1e-12));
        let up = nuclear_upper_greedy(&a, &GreedyOptions::default()).unwrap();
        prop_assert!(pos.value <= up.value + 1e-9);
    }

    #[test]
    fn hopm_matches_grid_on_cubes(seed in any::<u64>()) {
        let a = normal(&[2, 2, 2], seed);
        let h = hopm(&a, &HopmOptions::default()).unwrap().value;
        let n = 256;
        let grid = spectral_bruteforce(&a, n).unwrap();
        prop_assert!(h >= grid - 1e-9, "hopm {h} below grid {grid}");
        prop_assert!(h <= grid + bruteforce_gap(&a, n));
        let alt = spectral_alt_formula(&a, 16, seed, &HopmOptions::default()).unwrap();
        prop_assert!(alt <= h + 1e-8);
    }

    #[test]
    fn interval_is_ordered(s in shape(4, 3), seed in any::<u64>()) {
        let a = normal(&s, seed);
        let i = nuclear_interval(&a, &GreedyOptions::default(), &LowerSearchOptions::default()).unwrap();
        prop_assert!(i.lower <= i.upper + 1e-8, "{} > {}", i.lower, i.upper);
        for w in &i.lower_witness {
            prop_assert!((nuclear_norm(w).unwrap() - 1.0).abs() <= 1e-10);
        }
    }

    #[test]
    fn bounds_are_homogeneous(s in shape(3, 3), seed in any::<u64>(), alpha in prop_oneof![-4.0..-0.25f64, 0.25..4.0f64]) {
        let a = normal(&s, seed);
        let b = a.scale(alpha);
        let g = GreedyOptions::default();
        let l = LowerSearchOptions::default();
        let (ua, ub) = (nuclear_upper_greedy(&a, &g).unwrap().value, nuclear_upper_greedy(&b, &g).unwrap().value);
        prop_assert!((ub - alpha.abs() * ua).abs() <= 1e-10 * ub);
        let (la, lb) = (nuclear_lower(&a, &l).unwrap().value, nuclear_lower(&b, &l).unwrap().value);
        prop_assert!((lb - alpha.abs() * la).abs() <= 1e-10 * lb);
    }

    #[test]
    fn matrices_have_exact_intervals(rows in 1..5usize, cols in 1..5usize, seed in any::<u64>()) {
        let a = normal(&[rows, cols], seed);
        let exact = nuclear_norm(&Matrix::from_tensor(&a).unwrap()).unwrap();
        let i = nuclear_interval(&a, &GreedyOptions::default(), &LowerSearchOptions::default()).unwrap();
        prop_assert!((i.lower - exact).abs() <= 1e-6);
        prop_assert!((i.upper - exact).abs() <= 1e-6);
    }

    #[test]
    fn product_inequalities_in_the_safe_direction((a, b, plan) in product_triple()) {
        let c = contract_product(&a, &b, plan).unwrap();
        let g = GreedyOptions::default();
        let (ua, ub) = (nuclear_upper_greedy(&a, &g).unwrap().value, nuclear_upper_greedy(&b, &g).unwrap().value);
        let lc = nuclear_lower(&c, &LowerSearchOptions::default()).unwrap().value;
        prop_assert!(lc <= ua * ub + 1e-6);
        let opts = HopmOptions::default();
        let (sa, sc) = (hopm(&a, &opts).unwrap().value, hopm(&c, &opts).unwrap().value);
        prop_assert!(sc <= sa * ub + 1e-8, "{sc} > {sa} * {ub}");
    }
}

#[test]
fn grid_and_alternative_formula_on_fixture() {
    let a = fixtures::sym_2x2x2();
    let v = spectral_bruteforce(&a, 720).unwrap();
    assert!((v - 0.5).abs() <= 0.01);
    let z = Tensor::zeros(&[2, 2, 2]).unwrap();
    assert_eq!(spectral_bruteforce(&z, 720).unwrap(), 0.0);
}
