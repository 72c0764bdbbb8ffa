//! Small named tensors with known norms, used by tests and the reproduction
//! report.

use crate::tensor::{outer, Tensor};

fn set(t: &mut Tensor, one_based: &[usize], v: f64) {
    let idx: Vec<usize> = one_based.iter().map(|i| i - 1).collect();
    t.set(&idx, v);
}

/// Symmetric 2×2×2 tensor with `a112 = a121 = a211 = 1/2`, `a222 = -1/2`.
/// Spectral norm 0.5, nuclear norm 2.
pub fn sym_2x2x2() -> Tensor {
    let mut t = Tensor::zeros(&[2, 2, 2]).unwrap();
    set(&mut t, &[1, 1, 2], 0.5);
    set(&mut t, &[1, 2, 1], 0.5);
    set(&mut t, &[2, 1, 1], 0.5);
    set(&mut t, &[2, 2, 2], -0.5);
    t
}

/// `e⊗4 − Σ eᵢ⊗4` on ℝ³: all ones except zero on the superdiagonal.
/// Nuclear norm 12.
pub fn ones_minus_diagonal_3333() -> Tensor {
    Tensor::from_fn(
        &[3, 3, 3, 3],
        |idx| {
            if idx.iter().all(|&i| i == idx[0]) {
                0.0
            } else {
                1.0
            }
        },
    )
    .unwrap()
}

/// 2×2×2×2 integer tensor whose self-product over two modes has a spectral
/// norm exceeding the square of its own.
pub fn product_counterexample() -> Tensor {
    let entries: [([usize; 4], f64); 16] = [
        ([1, 1, 1, 1], 2.0),
        ([1, 2, 1, 1], 3.0),
        ([2, 1, 1, 1], -6.0),
        ([2, 2, 1, 1], 3.0),
        ([1, 1, 2, 1], -6.0),
        ([1, 2, 2, 1], 3.0),
        ([2, 1, 2, 1], 4.0),
        ([2, 2, 2, 1], 3.0),
        ([1, 1, 1, 2], 3.0),
        ([1, 2, 1, 2], 9.0),
        ([2, 1, 1, 2], 3.0),
        ([2, 2, 1, 2], -3.0),
        ([1, 1, 2, 2], 3.0),
        ([1, 2, 2, 2], -3.0),
        ([2, 1, 2, 2], 3.0),
        ([2, 2, 2, 2], 15.0),
    ];
    let mut t = Tensor::zeros(&[2, 2, 2, 2]).unwrap();
    for (idx, v) in entries {
        set(&mut t, &idx, v);
    }
    t
}

/// Symmetric 2×2×2 tensor with `a111 = -1`, `a122 = a212 = a221 = 1`; its
/// cubic power is exactly zero.
pub fn nilpotent_2x2x2() -> Tensor {
    let mut t = Tensor::zeros(&[2, 2, 2]).unwrap();
    set(&mut t, &[1, 1, 1], -1.0);
    set(&mut t, &[1, 2, 2], 1.0);
    set(&mut t, &[2, 1, 2], 1.0);
    set(&mut t, &[2, 2, 1], 1.0);
    t
}

/// Rows of the published random 4×3×2 tensor; column `3k + j` holds
/// `a[i][j][k]`.
pub const GELFAND_4X3X2_ROWS: [[f64; 6]; 4] = [
    [-0.512159, -0.507535, -1.383216, 0.203856, -0.578312, 1.921669],
    [0.906334, -0.258462, -0.982083, 0.736707, 0.608575, -1.063641],
    [-0.731184, 0.525138, -1.347676, -0.782006, 0.568222, -0.214013],
    [-0.086664, -0.736508, 0.474856, 0.345770, 0.194509, 0.006420],
];

/// Gelfand limit of [`gelfand_4x3x2`].
pub const GELFAND_4X3X2_LIMIT: f64 = 2.537118666456933;

pub fn gelfand_4x3x2() -> Tensor {
    Tensor::from_fn(&[4, 3, 2], |idx| GELFAND_4X3X2_ROWS[idx[0]][3 * idx[2] + idx[1]]).unwrap()
}

/// Unit rank-one 4×2×4 tensor with dyadic entries, so its cubic power is
/// computed without rounding.
pub fn unit_rank_one_4x2x4() -> Tensor {
    outer(&[vec![0.5, 0.5, 0.5, 0.5], vec![0.0, 1.0], vec![0.5, -0.5, 0.5, 0.5]]).unwrap()
}

/// Unit rank-one order-5 tensor with every dimension 2.
pub fn unit_rank_one_order5() -> Tensor {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    outer(&[
        vec![s, s],
        vec![0.6, 0.8],
        vec![0.0, 1.0],
        vec![0.8, -0.6],
        vec![1.0, 0.0],
    ])
    .unwrap()
}

/// Diagonal cube tensor with the given diagonal.
pub fn diagonal(alpha: &[f64]) -> Tensor {
    let n = alpha.len();
    Tensor::from_fn(&[n, n, n], |idx| {
        if idx[0] == idx[1] && idx[1] == idx[2] {
            alpha[idx[0]]
        } else {
            0.0
        }
    })
    .unwrap()
}
