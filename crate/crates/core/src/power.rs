//! Cubic and quintic tensor powers.
//!
//! The cubic power of an order-3 tensor is
//! `t[i,j,k] = Σ_{s,p,q} a[i,p,q] · a[s,j,q] · a[s,p,k]`, a degree-3 map that
//! plays the role of the matrix cube. Order-5 tensors have two natural
//! degree-5 analogues, [`QuinticVariant::A`] and [`QuinticVariant::B`], which
//! differ in how the dummy indices are shared between the five factors.

use crate::error::{Error, Result};
use crate::tensor::Tensor;

/// The two five-factor contraction patterns for order-5 tensors.
///
/// With output index `(i1,…,i5)`, both use the factors
/// `a[i1,j2,j3,j4,j5]`, `a[·,i2,j3,j4,j5]`, `a[j1,j2,i3,k4,k5]`,
/// `a[·,·,·,i4,k5]`, `a[k1,k2,k3,k4,i5]`:
///
/// * `A`: second factor `a[j1,i2,j3,j4,j5]`, fourth `a[k1,k2,k3,i4,k5]`.
/// * `B`: second factor `a[k1,i2,j3,j4,j5]`, fourth `a[j1,k2,k3,i4,k5]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuinticVariant {
    A,
    B,
}

impl std::str::FromStr for QuinticVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "A" | "a" => Ok(QuinticVariant::A),
            "B" | "b" => Ok(QuinticVariant::B),
            _ => Err(Error::invalid(format!(
                "unknown quintic variant `{s}`, expected A or B"
            ))),
        }
    }
}

/// A power map together with its degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PowerMap {
    Cubic,
    Quintic(QuinticVariant),
}

impl PowerMap {
    pub fn degree(self) -> u32 {
        match self {
            PowerMap::Cubic => 3,
            PowerMap::Quintic(_) => 5,
        }
    }

    /// Order of the tensors the map acts on (equal to its degree).
    pub fn order(self) -> usize {
        self.degree() as usize
    }

    pub fn apply(self, a: &Tensor) -> Result<Tensor> {
        match self {
            PowerMap::Cubic => cubic_power(a),
            PowerMap::Quintic(v) => quintic_power(a, v),
        }
    }
}

fn require_order(a: &Tensor, order: usize) -> Result<()> {
    if a.order() != order {
        return Err(Error::invalid(format!(
            "expected an order-{order} tensor, got order {} with shape {:?}",
            a.order(),
            a.shape()
        )));
    }
    Ok(())
}

pub fn cubic_power(a: &Tensor) -> Result<Tensor> {
    require_order(a, 3)?;
    let (d1, d2, d3) = (a.shape()[0], a.shape()[1], a.shape()[2]);
    let x = a.data();
    let at = |i: usize, j: usize, k: usize| x[(i * d2 + j) * d3 + k];
    let mut out = Vec::with_capacity(a.len());
    for i in 0..d1 {
        for j in 0..d2 {
            for k in 0..d3 {
                let mut sum = 0.0;
                for s in 0..d1 {
                    for p in 0..d2 {
                        for q in 0..d3 {
                            sum += at(i, p, q) * at(s, j, q) * at(s, p, k);
                        }
                    }
                }
                out.push(sum);
            }
        }
    }
    Tensor::new(a.shape().to_vec(), out)
}

/// Row-major offset helper for a fixed shape.
struct Layout {
    strides: Vec<usize>,
}

impl Layout {
    fn new(shape: &[usize]) -> Self {
        Layout {
            strides: crate::tensor::strides(shape),
        }
    }

    fn at(&self, idx: &[usize]) -> usize {
        idx.iter().zip(&self.strides).map(|(i, s)| i * s).sum()
    }
}

/// Evaluated through two pairwise intermediates so the cost stays at
/// `O(d^10)` for the final stage instead of `O(d^15)`. The summation order is
/// fixed, so results are bitwise reproducible.
pub fn quintic_power(a: &Tensor, variant: QuinticVariant) -> Result<Tensor> {
    require_order(a, 5)?;
    match variant {
        QuinticVariant::A => Ok(quintic_a(a)),
        QuinticVariant::B => Ok(quintic_b(a)),
    }
}

fn quintic_a(a: &Tensor) -> Tensor {
    let d = a.shape();
    let (d1, d2, d3, d4, d5) = (d[0], d[1], d[2], d[3], d[4]);
    let la = Layout::new(d);
    let x = a.data();

    // p[i1,i2,j1,j2] = Σ_{j3,j4,j5} a[i1,j2,j3,j4,j5] a[j1,i2,j3,j4,j5]
    let lp = Layout::new(&[d1, d2, d1, d2]);
    let mut p = vec![0.0; d1 * d2 * d1 * d2];
    for i1 in 0..d1 {
        for i2 in 0..d2 {
            for j1 in 0..d1 {
                for j2 in 0..d2 {
                    let mut sum = 0.0;
                    for j3 in 0..d3 {
                        for j4 in 0..d4 {
                            for j5 in 0..d5 {
                                sum += x[la.at(&[i1, j2, j3, j4, j5])] * x[la.at(&[j1, i2, j3, j4, j5])];
                            }
                        }
                    }
                    p[lp.at(&[i1, i2, j1, j2])] = sum;
                }
            }
        }
    }

    // q[i4,i5,k4,k5] = Σ_{k1,k2,k3} a[k1,k2,k3,i4,k5] a[k1,k2,k3,k4,i5]
    let lq = Layout::new(&[d4, d5, d4, d5]);
    let mut q = vec![0.0; d4 * d5 * d4 * d5];
    for i4 in 0..d4 {
        for i5 in 0..d5 {
            for k4 in 0..d4 {
                for k5 in 0..d5 {
                    let mut sum = 0.0;
                    for k1 in 0..d1 {
                        for k2 in 0..d2 {
                            for k3 in 0..d3 {
                                sum += x[la.at(&[k1, k2, k3, i4, k5])] * x[la.at(&[k1, k2, k3, k4, i5])];
                            }
                        }
                    }
                    q[lq.at(&[i4, i5, k4, k5])] = sum;
                }
            }
        }
    }

    // t = Σ_{j1,j2,k4,k5} p[i1,i2,j1,j2] a[j1,j2,i3,k4,k5] q[i4,i5,k4,k5]
    let mut out = vec![0.0; a.len()];
    for i1 in 0..d1 {
        for i2 in 0..d2 {
            for i3 in 0..d3 {
                for i4 in 0..d4 {
                    for i5 in 0..d5 {
                        let mut sum = 0.0;
                        for j1 in 0..d1 {
                            for j2 in 0..d2 {
                                let pv = p[lp.at(&[i1, i2, j1, j2])];
                                if pv == 0.0 {
                                    continue;
                                }
                                for k4 in 0..d4 {
                                    for k5 in 0..d5 {
                                        sum += pv * x[la.at(&[j1, j2, i3, k4, k5])] * q[lq.at(&[i4, i5, k4, k5])];
                                    }
                                }
                            }
                        }
                        out[la.at(&[i1, i2, i3, i4, i5])] = sum;
                    }
                }
            }
        }
    }
    Tensor::new(d.to_vec(), out).expect("finite input gives finite output")
}

fn quintic_b(a: &Tensor) -> Tensor {
    let d = a.shape();
    let (d1, d2, d3, d4, d5) = (d[0], d[1], d[2], d[3], d[4]);
    let la = Layout::new(d);
    let x = a.data();

    // p[i1,i2,j2,k1] = Σ_{j3,j4,j5} a[i1,j2,j3,j4,j5] a[k1,i2,j3,j4,j5]
    let lp = Layout::new(&[d1, d2, d2, d1]);
    let mut p = vec![0.0; d1 * d2 * d2 * d1];
    for i1 in 0..d1 {
        for i2 in 0..d2 {
            for j2 in 0..d2 {
                for k1 in 0..d1 {
                    let mut sum = 0.0;
                    for j3 in 0..d3 {
                        for j4 in 0..d4 {
                            for j5 in 0..d5 {
                                sum += x[la.at(&[i1, j2, j3, j4, j5])] * x[la.at(&[k1, i2, j3, j4, j5])];
                            }
                        }
                    }
                    p[lp.at(&[i1, i2, j2, k1])] = sum;
                }
            }
        }
    }

    // r[i3,i4,j2,k2,k3,k4] = Σ_{j1,k5} a[j1,j2,i3,k4,k5] a[j1,k2,k3,i4,k5]
    let lr = Layout::new(&[d3, d4, d2, d2, d3, d4]);
    let mut r = vec![0.0; d3 * d4 * d2 * d2 * d3 * d4];
    for i3 in 0..d3 {
        for i4 in 0..d4 {
            for j2 in 0..d2 {
                for k2 in 0..d2 {
                    for k3 in 0..d3 {
                        for k4 in 0..d4 {
                            let mut sum = 0.0;
                            for j1 in 0..d1 {
                                for k5 in 0..d5 {
                                    sum += x[la.at(&[j1, j2, i3, k4, k5])] * x[la.at(&[j1, k2, k3, i4, k5])];
                                }
                            }
                            r[lr.at(&[i3, i4, j2, k2, k3, k4])] = sum;
                        }
                    }
                }
            }
        }
    }

    // t = Σ_{j2,k1,k2,k3,k4} p[i1,i2,j2,k1] r[i3,i4,j2,k2,k3,k4] a[k1,k2,k3,k4,i5]
    let mut out = vec![0.0; a.len()];
    for i1 in 0..d1 {
        for i2 in 0..d2 {
            for i3 in 0..d3 {
                for i4 in 0..d4 {
                    for i5 in 0..d5 {
                        let mut sum = 0.0;
                        for j2 in 0..d2 {
                            for k1 in 0..d1 {
                                let pv = p[lp.at(&[i1, i2, j2, k1])];
                                if pv == 0.0 {
                                    continue;
                                }
                                for k2 in 0..d2 {
                                    for k3 in 0..d3 {
                                        for k4 in 0..d4 {
                                            sum += pv
                                                * r[lr.at(&[i3, i4, j2, k2, k3, k4])]
                                                * x[la.at(&[k1, k2, k3, k4, i5])];
                                        }
                                    }
                                }
                            }
                        }
                        out[la.at(&[i1, i2, i3, i4, i5])] = sum;
                    }
                }
            }
        }
    }
    Tensor::new(d.to_vec(), out).expect("finite input gives finite output")
}

pub fn is_nonnegative(a: &Tensor) -> bool {
    a.data().iter().all(|&x| x >= 0.0)
}

/// Exact invariance under every index permutation; only cube-shaped order-3
/// tensors qualify.
pub fn is_symmetric(a: &Tensor) -> bool {
    if a.order() != 3 || a.shape().iter().any(|&n| n != a.shape()[0]) {
        return false;
    }
    let n = a.shape()[0];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let v = a.get(&[i, j, k]);
                let perms = [[i, k, j], [j, i, k], [j, k, i], [k, i, j], [k, j, i]];
                if perms.iter().any(|p| a.get(p) != v) {
                    return false;
                }
            }
        }
    }
    true
}

/// Cube-shaped order-3 tensor whose only nonzeros sit at `(i,i,i)`.
pub fn is_diagonal(a: &Tensor) -> bool {
    if a.order() != 3 || a.shape().iter().any(|&n| n != a.shape()[0]) {
        return false;
    }
    let mut it = crate::tensor::MultiIndex::new(a.shape());
    let mut pos = 0;
    while let Some(idx) = it.next_index() {
        if a.data()[pos] != 0.0 && !(idx[0] == idx[1] && idx[1] == idx[2]) {
            return false;
        }
        pos += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::random::{random_tensor, Distribution};
    use crate::tensor::outer;

    #[test]
    fn diagonal_cubes() {
        let t = cubic_power(&fixtures::diagonal(&[2.0, -1.0, 0.5])).unwrap();
        assert_eq!(t, fixtures::diagonal(&[8.0, -1.0, 0.125]));
        assert!(is_diagonal(&t));
    }

    #[test]
    fn nilpotent_fixture_cubes_to_zero() {
        let t = cubic_power(&fixtures::nilpotent_2x2x2()).unwrap();
        assert!(t.data().iter().all(|&x| x == 0.0));
    }

    #[test]
    fn rank_one_scaling() {
        let (u, v, w) = (vec![1.0, 2.0], vec![0.5, -1.0, 3.0], vec![2.0, 1.0]);
        let a = outer(&[&u, &v, &w]).unwrap();
        let scale = a.frobenius().powi(2);
        let t = cubic_power(&a).unwrap();
        assert!(t.max_abs_diff(&a.scale(scale)) <= 1e-12 * scale * a.max_abs());
        let unit = fixtures::unit_rank_one_4x2x4();
        assert_eq!(cubic_power(&unit).unwrap(), unit);
    }

    #[test]
    fn wrong_order_rejected() {
        let t = Tensor::zeros(&[2, 2]).unwrap();
        assert!(cubic_power(&t).is_err());
        assert!(quintic_power(&t, QuinticVariant::A).is_err());
    }

    #[test]
    fn structure_checks() {
        assert!(is_symmetric(&fixtures::sym_2x2x2()));
        assert!(!is_symmetric(&fixtures::gelfand_4x3x2()));
        assert!(!is_diagonal(&fixtures::sym_2x2x2()));
        let s = cubic_power(&fixtures::sym_2x2x2()).unwrap();
        assert!(is_symmetric(&s));
    }

    #[test]
    fn quintic_zero_and_rank_one() {
        let z = Tensor::zeros(&[2, 2, 2, 2, 2]).unwrap();
        for v in [QuinticVariant::A, QuinticVariant::B] {
            assert!(quintic_power(&z, v).unwrap().is_zero());
            let u = fixtures::unit_rank_one_order5();
            assert!(quintic_power(&u, v).unwrap().max_abs_diff(&u) <= 1e-12);
        }
    }

    #[test]
    fn quintic_variants_differ() {
        let a = random_tensor(&[2, 2, 2, 2, 2], 11, Distribution::StandardNormal).unwrap();
        let ta = quintic_power(&a, QuinticVariant::A).unwrap();
        let tb = quintic_power(&a, QuinticVariant::B).unwrap();
        assert!(ta.max_abs_diff(&tb) > 1e-6);
    }

    #[test]
    fn variant_parsing() {
        assert_eq!("A".parse::<QuinticVariant>().unwrap(), QuinticVariant::A);
        assert_eq!("b".parse::<QuinticVariant>().unwrap(), QuinticVariant::B);
        assert!("C".parse::<QuinticVariant>().is_err());
        assert_eq!(PowerMap::Quintic(QuinticVariant::B).degree(), 5);
    }
}
