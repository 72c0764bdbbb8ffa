#![allow(dead_code)]

use proptest::prelude::*;
use tnorm_core::random::{random_tensor, Distribution};
use tnorm_core::tensor::MultiIndex;
use tnorm_core::{ContractionPlan, Tensor};

pub fn normal(shape: &[usize], seed: u64) -> Tensor {
    random_tensor(shape, seed, Distribution::StandardNormal).unwrap()
}

/// Shape of order 1..=max_order with dimensions in 1..=max_dim.
pub fn shape(max_order: usize, max_dim: usize) -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(1..=max_dim, 1..=max_order)
}

/// Random conforming operands and plan with every dimension at most 3.
pub fn product_triple() -> impl Strategy<Value = (Tensor, Tensor, ContractionPlan)> {
    (
        1..=2usize,
        1..=2usize,
        0..=2usize,
        prop::collection::vec(1..=3usize, 6),
        any::<u64>(),
        any::<u64>(),
    )
        .prop_map(|(k, p, q, dims, sa, sb)| {
            let a = normal(&dims[..k + p], sa);
            let b = normal(&dims[k..k + p + q], sb);
            (a, b, ContractionPlan::new(k, p, q).unwrap())
        })
}

/// Nested-loop contraction product using only `get`.
pub fn product_oracle(a: &Tensor, b: &Tensor, plan: ContractionPlan) -> Tensor {
    let mut out_shape = a.shape()[..plan.k].to_vec();
    out_shape.extend_from_slice(&b.shape()[plan.p..]);
    let contracted = a.shape()[plan.k..].to_vec();
    Tensor::from_fn(&out_shape, |idx| {
        let mut sum = 0.0;
        for c in MultiIndex::new(&contracted) {
            let mut ia = idx[..plan.k].to_vec();
            ia.extend_from_slice(&c);
            let mut ib = c.clone();
            ib.extend_from_slice(&idx[plan.k..]);
            sum += a.get(&ia) * b.get(&ib);
        }
        sum
    })
    .unwrap()
}

/// Summing einsum over explicit index labels: `factors[f][m]` names the label
/// used for mode `m` of factor `f`; labels `0..5` are output indices, the rest
/// are summed over. Every factor is `a`; all dimensions must be equal.
pub fn self_einsum(a: &Tensor, factors: &[[usize; 5]], dummies: usize) -> Tensor {
    let d = a.shape()[0];
    Tensor::from_fn(a.shape(), |out| {
        let mut sum = 0.0;
        for dummy in MultiIndex::new(&vec![d; dummies]) {
            let label = |l: usize| if l < 5 { out[l] } else { dummy[l - 5] };
            let mut prod = 1.0;
            for f in factors {
                let idx: Vec<usize> = f.iter().map(|&l| label(l)).collect();
                prod *= a.get(&idx);
            }
            sum += prod;
        }
        sum
    })
    .unwrap()
}
