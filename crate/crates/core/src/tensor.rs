//! Dense real tensors and the contraction product.
//!
//! A [`Tensor`] stores its entries in row-major order (the last index varies
//! fastest). Every tensor has order at least one; vectors and matrices are the
//! order-1 and order-2 cases.
//!
//! The contraction product of `a` (order `k + p`) and `b` (order `p + q`)
//! sums over the last `p` modes of `a` paired with the first `p` modes of `b`:
//!
//! ```text
//! c[i1..ik, j1..jq] = Σ_{l1..lp} a[i1..ik, l1..lp] · b[l1..lp, j1..jq]
//! ```
//!
//! The contracted multi-index is the innermost loop and iterates in row-major
//! order, so results are bitwise reproducible.

use crate::error::{Error, Result};

/// Dense real multi-way array with an explicit shape.
#[derive(Debug, Clone, PartialEq)]
pub struct Tensor {
    shape: Vec<usize>,
    data: Vec<f64>,
}

impl Tensor {
    /// Builds a tensor from a shape and row-major data.
    ///
    /// Rejects empty shapes, zero dimensions, a data length that does not
    /// match the shape, and non-finite entries.
    pub fn new(shape: Vec<usize>, data: Vec<f64>) -> Result<Self> {
        let len = checked_len(&shape)?;
        if data.len() != len {
            return Err(Error::invalid(format!(
                "shape {:?} needs {} entries, got {}",
                shape,
                len,
                data.len()
            )));
        }
        if let Some(pos) = data.iter().position(|x| !x.is_finite()) {
            return Err(Error::invalid(format!("entry {} is not finite ({})", pos, data[pos])));
        }
        Ok(Tensor { shape, data })
    }

    pub fn zeros(shape: &[usize]) -> Result<Self> {
        let len = checked_len(shape)?;
        Ok(Tensor {
            shape: shape.to_vec(),
            data: vec![0.0; len],
        })
    }

    /// Builds a tensor by evaluating `f` at every multi-index in row-major order.
    pub fn from_fn(shape: &[usize], mut f: impl FnMut(&[usize]) -> f64) -> Result<Self> {
        let mut t = Tensor::zeros(shape)?;
        let mut it = MultiIndex::new(shape);
        let mut pos = 0;
        while let Some(idx) = it.next_index() {
            t.data[pos] = f(idx);
            pos += 1;
        }
        if t.data.iter().any(|x| !x.is_finite()) {
            return Err(Error::invalid("generated entry is not finite"));
        }
        Ok(t)
    }

    /// Wraps data already known to satisfy the invariants.
    pub(crate) fn from_parts(shape: Vec<usize>, data: Vec<f64>) -> Self {
        debug_assert_eq!(shape.iter().product::<usize>(), data.len());
        Tensor { shape, data }
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn order(&self) -> usize {
        self.shape.len()
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn into_data(self) -> Vec<f64> {
        self.data
    }

    /// Row-major strides for the current shape.
    pub fn strides(&self) -> Vec<usize> {
        strides(&self.shape)
    }

    pub fn offset(&self, idx: &[usize]) -> usize {
        assert_eq!(idx.len(), self.order(), "index order mismatch");
        idx.iter().zip(&self.shape).fold(0, |acc, (&i, &n)| {
            assert!(i < n, "index {i} out of bounds for dimension {n}");
            acc * n + i
        })
    }

    pub fn get(&self, idx: &[usize]) -> f64 {
        self.data[self.offset(idx)]
    }

    pub fn set(&mut self, idx: &[usize], value: f64) {
        let off = self.offset(idx);
        self.data[off] = value;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0.0)
    }

    pub fn scale(&self, alpha: f64) -> Tensor {
        Tensor::from_parts(self.shape.clone(), self.data.iter().map(|x| alpha * x).collect())
    }

    pub fn add(&self, other: &Tensor) -> Result<Tensor> {
        self.zip_with(other, |x, y| x + y)
    }

    pub fn sub(&self, other: &Tensor) -> Result<Tensor> {
        self.zip_with(other, |x, y| x - y)
    }

    fn zip_with(&self, other: &Tensor, f: impl Fn(f64, f64) -> f64) -> Result<Tensor> {
        same_shape(self, other)?;
        Ok(Tensor::from_parts(
            self.shape.clone(),
            self.data.iter().zip(&other.data).map(|(&x, &y)| f(x, y)).collect(),
        ))
    }

    pub fn one_norm(&self) -> f64 {
        self.data.iter().map(|x| x.abs()).sum()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    pub fn frobenius(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn norm(&self, kind: ElementwiseNorm) -> f64 {
        elementwise_norm(self, kind)
    }

    /// Largest absolute entrywise difference; panics on shape mismatch.
    pub fn max_abs_diff(&self, other: &Tensor) -> f64 {
        assert_eq!(self.shape, other.shape, "shape mismatch");
        self.data
            .iter()
            .zip(&other.data)
            .fold(0.0, |m, (x, y)| m.max((x - y).abs()))
    }
}

fn checked_len(shape: &[usize]) -> Result<usize> {
    if shape.is_empty() {
        return Err(Error::invalid("tensor order must be at least 1"));
    }
    if let Some(pos) = shape.iter().position(|&n| n == 0) {
        return Err(Error::invalid(format!("dimension {pos} is zero")));
    }
    shape
        .iter()
        .try_fold(1usize, |acc, &n| acc.checked_mul(n))
        .ok_or_else(|| Error::invalid(format!("shape {shape:?} overflows")))
}

pub(crate) fn strides(shape: &[usize]) -> Vec<usize> {
    let mut s = vec![1; shape.len()];
    for m in (0..shape.len().saturating_sub(1)).rev() {
        s[m] = s[m + 1] * shape[m + 1];
    }
    s
}

fn same_shape(a: &Tensor, b: &Tensor) -> Result<()> {
    if a.shape != b.shape {
        return Err(Error::invalid(format!(
            "shape mismatch: {:?} vs {:?}",
            a.shape, b.shape
        )));
    }
    Ok(())
}

/// Row-major odometer over all multi-indices of a shape.
#[derive(Debug, Clone)]
pub struct MultiIndex {
    shape: Vec<usize>,
    current: Vec<usize>,
    started: bool,
    done: bool,
}

impl MultiIndex {
    pub fn new(shape: &[usize]) -> Self {
        MultiIndex {
            shape: shape.to_vec(),
            current: vec![0; shape.len()],
            started: false,
            done: shape.contains(&0),
        }
    }

    /// Advances and returns the next index, borrowing the internal buffer.
    pub fn next_index(&mut self) -> Option<&[usize]> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(&self.current);
        }
        for m in (0..self.shape.len()).rev() {
            self.current[m] += 1;
            if self.current[m] < self.shape[m] {
                return Some(&self.current);
            }
            self.current[m] = 0;
        }
        self.done = true;
        None
    }
}

impl Iterator for MultiIndex {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        self.next_index().map(<[usize]>::to_vec)
    }
}

/// Rank-one tensor `f1 ∘ f2 ∘ … ∘ fk`.
pub fn outer<V: AsRef<[f64]>>(factors: &[V]) -> Result<Tensor> {
    if factors.is_empty() {
        return Err(Error::invalid("outer product needs at least one factor"));
    }
    let shape: Vec<usize> = factors.iter().map(|f| f.as_ref().len()).collect();
    if shape.contains(&0) {
        return Err(Error::invalid("outer product factor is empty"));
    }
    let mut data = vec![1.0];
    for f in factors {
        let f = f.as_ref();
        let mut next = Vec::with_capacity(data.len() * f.len());
        for &d in &data {
            next.extend(f.iter().map(|&x| d * x));
        }
        data = next;
    }
    Tensor::new(shape, data)
}

/// Entrywise inner product of two tensors with identical shapes.
pub fn inner(a: &Tensor, b: &Tensor) -> Result<f64> {
    same_shape(a, b)?;
    Ok(a.data.iter().zip(&b.data).map(|(x, y)| x * y).sum())
}

/// Mode split of the contraction product.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ContractionPlan {
    /// Leading modes of `a` that survive.
    pub k: usize,
    /// Contracted modes.
    pub p: usize,
    /// Trailing modes of `b` that survive.
    pub q: usize,
}

impl ContractionPlan {
    pub fn new(k: usize, p: usize, q: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::invalid("plan needs k >= 1"));
        }
        if p == 0 {
            return Err(Error::invalid("plan needs p >= 1"));
        }
        Ok(ContractionPlan { k, p, q })
    }

    /// Checks the plan against concrete operands.
    pub fn validate(&self, a: &Tensor, b: &Tensor) -> Result<()> {
        if self.k == 0 || self.p == 0 {
            return Err(Error::invalid("plan needs k >= 1 and p >= 1"));
        }
        if a.order() != self.k + self.p {
            return Err(Error::invalid(format!(
                "left operand has order {}, plan needs k + p = {}",
                a.order(),
                self.k + self.p
            )));
        }
        if b.order() != self.p + self.q {
            return Err(Error::invalid(format!(
                "right operand has order {}, plan needs p + q = {}",
                b.order(),
                self.p + self.q
            )));
        }
        let a_tail = &a.shape[self.k..];
        let b_head = &b.shape[..self.p];
        if a_tail != b_head {
            return Err(Error::invalid(format!(
                "contracted dimensions differ: {a_tail:?} (left) vs {b_head:?} (right)"
            )));
        }
        Ok(())
    }

    pub fn output_shape(&self, a: &Tensor, b: &Tensor) -> Vec<usize> {
        let mut s = a.shape[..self.k].to_vec();
        s.extend_from_slice(&b.shape[self.p..]);
        s
    }
}

/// Contraction product of `a` and `b` under `plan`.
pub fn contract_product(a: &Tensor, b: &Tensor, plan: ContractionPlan) -> Result<Tensor> {
    plan.validate(a, b)?;
    let rows: usize = a.shape[..plan.k].iter().product();
    let inner_len: usize = a.shape[plan.k..].iter().product();
    let cols: usize = b.shape[plan.p..].iter().product();
    let mut out = vec![0.0; rows * cols];
    for i in 0..rows {
        let a_row = &a.data[i * inner_len..(i + 1) * inner_len];
        for j in 0..cols {
            let mut acc = 0.0;
            for (l, &x) in a_row.iter().enumerate() {
                acc += x * b.data[l * cols + j];
            }
            out[i * cols + j] = acc;
        }
    }
    Ok(Tensor::from_parts(plan.output_shape(a, b), out))
}

/// Entrywise norms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ElementwiseNorm {
    /// Sum of absolute entries.
    One,
    /// Largest absolute entry.
    Infinity,
    /// Square root of the sum of squares.
    Frobenius,
}

pub fn elementwise_norm(a: &Tensor, kind: ElementwiseNorm) -> f64 {
    match kind {
        ElementwiseNorm::One => a.one_norm(),
        ElementwiseNorm::Infinity => a.max_abs(),
        ElementwiseNorm::Frobenius => a.frobenius(),
    }
}

/// Contracts `a` against one vector per listed mode; the remaining modes keep
/// their original order. Contracting every mode is rejected: use
/// [`full_contraction`] for the scalar.
pub fn contract_vectors(a: &Tensor, vectors: &[(usize, &[f64])]) -> Result<Tensor> {
    let k = a.order();
    let mut weights: Vec<Option<&[f64]>> = vec![None; k];
    for &(mode, v) in vectors {
        if mode >= k {
            return Err(Error::invalid(format!("mode {mode} out of range for order {k}")));
        }
        if v.len() != a.shape[mode] {
            return Err(Error::invalid(format!(
                "vector for mode {mode} has length {}, dimension is {}",
                v.len(),
                a.shape[mode]
            )));
        }
        if weights[mode].replace(v).is_some() {
            return Err(Error::invalid(format!("mode {mode} listed twice")));
        }
    }
    let survivors: Vec<usize> = (0..k).filter(|&m| weights[m].is_none()).collect();
    if survivors.is_empty() {
        return Err(Error::invalid("every mode contracted; result would be a scalar"));
    }
    let out_shape: Vec<usize> = survivors.iter().map(|&m| a.shape[m]).collect();
    let out_strides = strides(&out_shape);
    let mut out = vec![0.0; out_shape.iter().product()];
    let mut it = MultiIndex::new(&a.shape);
    let mut pos = 0;
    while let Some(idx) = it.next_index() {
        let x = a.data[pos];
        pos += 1;
        if x == 0.0 {
            continue;
        }
        let mut w = x;
        for (m, wv) in weights.iter().enumerate() {
            if let Some(v) = wv {
                w *= v[idx[m]];
            }
        }
        let o: usize = survivors.iter().zip(&out_strides).map(|(&m, &s)| idx[m] * s).sum();
        out[o] += w;
    }
    Ok(Tensor::from_parts(out_shape, out))
}

/// `⟨a, f1 ∘ … ∘ fk⟩` for one vector per mode.
pub fn full_contraction<V: AsRef<[f64]>>(a: &Tensor, factors: &[V]) -> Result<f64> {
    if factors.len() != a.order() {
        return Err(Error::invalid(format!(
            "need {} factors, got {}",
            a.order(),
            factors.len()
        )));
    }
    for (m, f) in factors.iter().enumerate() {
        if f.as_ref().len() != a.shape[m] {
            return Err(Error::invalid(format!("factor {m} has the wrong length")));
        }
    }
    let mut it = MultiIndex::new(&a.shape);
    let mut pos = 0;
    let mut acc = 0.0;
    while let Some(idx) = it.next_index() {
        let mut w = a.data[pos];
        pos += 1;
        for (m, f) in factors.iter().enumerate() {
            w *= f.as_ref()[idx[m]];
        }
        acc += w;
    }
    Ok(acc)
}

/// Contraction of `a` against every factor except the one at `skip`,
/// returning a vector over mode `skip`.
pub(crate) fn contract_all_but(a: &Tensor, factors: &[Vec<f64>], skip: usize) -> Vec<f64> {
    debug_assert_eq!(factors.len(), a.order());
    let mut g = vec![0.0; a.shape[skip]];
    let mut it = MultiIndex::new(&a.shape);
    let mut pos = 0;
    while let Some(idx) = it.next_index() {
        let mut w = a.data[pos];
        pos += 1;
        if w == 0.0 {
            continue;
        }
        for (m, f) in factors.iter().enumerate() {
            if m != skip {
                w *= f[idx[m]];
            }
        }
        g[idx[skip]] += w;
    }
    g
}

pub(crate) fn vec_norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}
