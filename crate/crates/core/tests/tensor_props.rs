mod common;

use common::{normal, product_oracle, product_triple, shape};
use proptest::prelude::*;
use tnorm_core::tensor::{contract_vectors, full_contraction, MultiIndex};
use tnorm_core::{contract_product, inner, outer, ContractionPlan, Tensor};

fn close(x: f64, y: f64, rel: f64) -> bool {
    (x - y).abs() <= rel * x.abs().max(y.abs()).max(1.0)
}

#[test]
fn outer_matches_triple_loop() {
    let (u, v, w) = (normal(&[2], 1), normal(&[3], 2), normal(&[4], 3));
    let t = outer(&[u.data(), v.data(), w.data()]).unwrap();
    for i in 0..2 {
        for j in 0..3 {
            for k in 0..4 {
                assert_eq!(t.get(&[i, j, k]), u.data()[i] * v.data()[j] * w.data()[k]);
            }
        }
    }
}

#[test]
fn symmetric_fixture_from_outer_products() {
    let (e1, e2) = ([1.0, 0.0], [0.0, 1.0]);
    let sum = outer(&[e1, e1, e2])
        .unwrap()
        .add(&outer(&[e1, e2, e1]).unwrap())
        .unwrap()
        .add(&outer(&[e2, e1, e1]).unwrap())
        .unwrap()
        .sub(&outer(&[e2, e2, e2]).unwrap())
        .unwrap()
        .scale(0.5);
    assert_eq!(sum, tnorm_core::fixtures::sym_2x2x2());
}

#[test]
fn inner_examples() {
    let a = tnorm_core::fixtures::product_counterexample();
    assert_eq!(inner(&a, &a).unwrap(), 488.0);
    assert_eq!(inner(&a, &Tensor::zeros(&[2, 2, 2, 2]).unwrap()).unwrap(), 0.0);
    assert!(inner(&a, &Tensor::zeros(&[2, 2]).unwrap()).is_err());
}

#[test]
fn matrix_product_special_case() {
    let (a, b) = (normal(&[3, 3], 4), normal(&[3, 3], 5));
    let c = contract_product(&a, &b, ContractionPlan::new(1, 1, 1).unwrap()).unwrap();
    for i in 0..3 {
        for j in 0..3 {
            let expect: f64 = (0..3).map(|l| a.get(&[i, l]) * b.get(&[l, j])).sum();
            assert!((c.get(&[i, j]) - expect).abs() <= 1e-14);
        }
    }
}

#[test]
fn nonconforming_plans_rejected() {
    let (a, b) = (normal(&[2, 3], 1), normal(&[2, 2], 2));
    assert!(contract_product(&a, &b, ContractionPlan::new(1, 1, 1).unwrap()).is_err());
    assert!(ContractionPlan::new(0, 1, 1).is_err());
    assert!(ContractionPlan::new(1, 0, 1).is_err());
}

#[test]
fn infinity_norm_counterexample() {
    let j = Tensor::new(vec![2, 2], vec![1.0; 4]).unwrap();
    let c = contract_product(&j, &j, ContractionPlan::new(1, 1, 1).unwrap()).unwrap();
    assert_eq!(c.max_abs(), 2.0);
    assert!(c.max_abs() > j.max_abs() * j.max_abs());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn product_matches_oracle((a, b, plan) in product_triple()) {
        let c = contract_product(&a, &b, plan).unwrap();
        let oracle = product_oracle(&a, &b, plan);
        prop_assert_eq!(c.shape(), oracle.shape());
        prop_assert!(c.max_abs_diff(&oracle) <= 1e-12 * oracle.max_abs().max(1.0));
    }

    #[test]
    fn product_is_bilinear((a, b, plan) in product_triple(), alpha in -3.0..3.0f64, seed in any::<u64>()) {
        let c = contract_product(&a, &b, plan).unwrap();
        let scaled = contract_product(&a.scale(alpha), &b, plan).unwrap();
        prop_assert!(scaled.max_abs_diff(&c.scale(alpha)) <= 1e-12 * c.max_abs().max(1.0) * alpha.abs().max(1.0));
        let b2 = normal(b.shape(), seed);
        let sum = contract_product(&a, &b.add(&b2).unwrap(), plan).unwrap();
        let parts = c.add(&contract_product(&a, &b2, plan).unwrap()).unwrap();
        prop_assert!(sum.max_abs_diff(&parts) <= 1e-12 * parts.max_abs().max(1.0));
        let zero = Tensor::zeros(b.shape()).unwrap();
        prop_assert!(contract_product(&a, &zero, plan).unwrap().is_zero());
    }

    #[test]
    fn one_and_frobenius_submultiplicative((a, b, plan) in product_triple()) {
        let c = contract_product(&a, &b, plan).unwrap();
        prop_assert!(c.one_norm() <= a.one_norm() * b.one_norm() * (1.0 + 1e-12));
        prop_assert!(c.frobenius() <= a.frobenius() * b.frobenius() * (1.0 + 1e-12));
    }

    #[test]
    fn q_zero_then_inner_matches_nested_loops(dims in prop::collection::vec(1..=3usize, 2..=4), split in 1..=3usize, sa in any::<u64>(), sb in any::<u64>()) {
        let p = split.min(dims.len() - 1);
        let k = dims.len() - p;
        let a = normal(&dims, sa);
        let b = normal(&dims[k..], sb);
        let c = contract_product(&a, &b, ContractionPlan::new(k, p, 0).unwrap()).unwrap();
        prop_assert_eq!(c.order(), k);
        let w = normal(&dims[..k], sb ^ 1);
        let via_product = inner(&c, &w).unwrap();
        let mut direct = 0.0;
        for idx in MultiIndex::new(&dims) {
            direct += a.get(&idx) * w.get(&idx[..k]) * b.get(&idx[k..]);
        }
        prop_assert!(close(via_product, direct, 1e-12));
    }

    #[test]
    fn inner_of_outers_factorizes(seed in any::<u64>()) {
        let f: Vec<Tensor> = [2usize, 3, 4, 2, 3, 4].iter().enumerate().map(|(i, &n)| normal(&[n], seed ^ i as u64)).collect();
        let x = outer(&[f[0].data(), f[1].data(), f[2].data()]).unwrap();
        let y = outer(&[f[3].data(), f[4].data(), f[5].data()]).unwrap();
        let expect = inner(&f[0], &f[3]).unwrap()
            * inner(&f[1], &f[4]).unwrap()
            * inner(&f[2], &f[5]).unwrap();
        prop_assert!(close(inner(&x, &y).unwrap(), expect, 1e-12));
        let direct = full_contraction(&x, &[f[3].data(), f[4].data(), f[5].data()]).unwrap();
        prop_assert!(close(direct, expect, 1e-12));
        prop_assert!(close(x.frobenius(), f[0].frobenius() * f[1].frobenius() * f[2].frobenius(), 1e-12));
    }

    #[test]
    fn vector_contraction_agrees_with_full(s in shape(4, 3), seed in any::<u64>()) {
        prop_assume!(s.len() >= 2);
        let a = normal(&s, seed);
        let vs: Vec<Tensor> = s.iter().enumerate().map(|(m, &n)| normal(&[n], seed ^ (m as u64 + 1))).collect();
        let partial: Vec<(usize, &[f64])> = (1..s.len()).map(|m| (m, vs[m].data())).collect();
        let c = contract_vectors(&a, &partial).unwrap();
        let full = full_contraction(&a, &vs.iter().map(|v| v.data()).collect::<Vec<_>>()).unwrap();
        prop_assert!(close(inner(&c, &vs[0]).unwrap(), full, 1e-12));
    }
}
