//! Certified bounds on the tensor nuclear norm.
//!
//! The nuclear norm is the smallest `Σ|λⱼ|` over decompositions of a tensor
//! into unit rank-one terms. It is NP-hard to compute, so this module brackets
//! it:
//!
//! * **Upper bound** ([`nuclear_upper_greedy`]): any explicit decomposition
//!   gives an upper bound. Greedy rank-one deflation with [`hopm`] produces
//!   terms until the residual is small, and the residual `R` is charged
//!   `√(N / n_max) · ‖R‖_F`, where `N` is the number of entries and `n_max`
//!   the largest dimension. That factor is safe for every order: splitting
//!   `R` into its `N / n_max` fibers along the longest mode gives a
//!   decomposition with cost `Σ‖fiber‖₂ ≤ √(N / n_max) · ‖R‖_F`.
//! * **Lower bound** ([`nuclear_lower_witness`], [`nuclear_lower_search`]):
//!   contracting the tensor against matrices of unit nuclear norm on pairs of
//!   modes never increases the nuclear norm, so the nuclear norm of the
//!   resulting vector (2-norm) or matrix (sum of singular values) is a lower
//!   bound. The search restricts the witnesses to rank-one `u vᵀ`: the
//!   objective is convex in each witness and the extreme points of the
//!   nuclear-norm unit ball are rank-one, so nothing is lost.
//!
//! [`contraction_matrix`] and [`radius_bound_check`] relate the mode Gram matrices
//! to the product of the spectral and nuclear norms.

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix, SymmetricMatrix, DEFAULT_TOL};
use crate::random;
use crate::specnorm::{hopm, HopmOptions, RankOneTerm};
use crate::tensor::{vec_norm, MultiIndex, Tensor};

/// Certified bracket for the nuclear norm.
#[derive(Debug, Clone)]
pub struct NuclearInterval {
    pub lower: f64,
    pub upper: f64,
    /// Unit-nuclear-norm matrices behind `lower` (empty for orders 1 and 2,
    /// where the bound is exact).
    pub lower_witness: Vec<Matrix>,
    pub upper_witness: Vec<RankOneTerm>,
    /// Frobenius norm of the residual left after the upper decomposition.
    pub residual_norm: f64,
}

impl NuclearInterval {
    pub fn contains(&self, value: f64, slack: f64) -> bool {
        self.lower - slack <= value && value <= self.upper + slack
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GreedyOptions {
    pub max_terms: usize,
    /// Stop once `‖R‖_F ≤ tol · ‖A‖_F`.
    pub tol: f64,
    pub seed: u64,
    /// Power-method restarts per extracted term.
    pub restarts: usize,
    pub max_sweeps: usize,
}

impl Default for GreedyOptions {
    fn default() -> Self {
        GreedyOptions {
            max_terms: 100,
            tol: 1e-8,
            seed: 0,
            restarts: 8,
            max_sweeps: 500,
        }
    }
}

/// Upper side of the interval.
#[derive(Debug, Clone)]
pub struct NuclearUpper {
    pub value: f64,
    pub terms: Vec<RankOneTerm>,
    pub residual_norm: f64,
    /// Multiplier applied to `residual_norm` in `value`.
    pub residual_factor: f64,
}

/// `√(N / n_max)` for the given shape.
pub fn residual_factor(shape: &[usize]) -> f64 {
    let n: usize = shape.iter().product();
    let n_max = shape.iter().copied().max().unwrap_or(1);
    ((n / n_max) as f64).sqrt()
}

/// Greedy rank-one deflation upper bound.
///
/// Term `j` is extracted with the restart seeds of `seed ^ j`.
pub fn nuclear_upper_greedy(a: &Tensor, opts: &GreedyOptions) -> Result<NuclearUpper> {
    if opts.max_terms == 0 {
        return Err(Error::invalid("max_terms must be at least 1"));
    }
    let factor = residual_factor(a.shape());
    let scale = a.frobenius();
    let mut residual = a.clone();
    let mut terms = Vec::new();
    let mut sum = 0.0;
    let mut r_norm = scale;
    while r_norm > opts.tol * scale && terms.len() < opts.max_terms {
        let h = HopmOptions {
            restarts: opts.restarts,
            max_sweeps: opts.max_sweeps,
            seed: random::sub_seed(opts.seed, terms.len() as u64),
            ..HopmOptions::default()
        };
        let cert = hopm(&residual, &h)?;
        if cert.value <= 0.0 {
            break;
        }
        residual = residual.sub(&cert.witness.evaluate())?;
        sum += cert.value;
        terms.push(cert.witness);
        r_norm = residual.frobenius();
    }
    Ok(NuclearUpper {
        value: sum + factor * r_norm,
        terms,
        residual_norm: r_norm,
        residual_factor: factor,
    })
}

/// Which modes survive a witness contraction and which are paired with a
/// witness matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pairing {
    survivors: Vec<usize>,
    pairs: Vec<(usize, usize)>,
}

impl Pairing {
    /// Odd order: mode 0 survives and (1,2), (3,4), … are paired. Even order:
    /// modes 0 and 1 survive and (2,3), (4,5), … are paired.
    pub fn standard(order: usize) -> Result<Self> {
        if order < 3 {
            return Err(Error::invalid(format!("witness pairing needs order >= 3, got {order}")));
        }
        let first = if order % 2 == 1 { 1 } else { 2 };
        Ok(Pairing {
            survivors: (0..first).collect(),
            pairs: (first..order).step_by(2).map(|m| (m, m + 1)).collect(),
        })
    }

    /// Arbitrary pairing; one or two survivors, every other mode paired
    /// exactly once.
    pub fn custom(order: usize, survivors: Vec<usize>, pairs: Vec<(usize, usize)>) -> Result<Self> {
        if !(1..=2).contains(&survivors.len()) {
            return Err(Error::invalid("a pairing keeps one or two modes"));
        }
        let mut seen = vec![false; order];
        let modes = survivors.iter().copied().chain(pairs.iter().flat_map(|&(p, q)| [p, q]));
        for m in modes {
            if m >= order {
                return Err(Error::invalid(format!("mode {m} out of range for order {order}")));
            }
            if std::mem::replace(&mut seen[m], true) {
                return Err(Error::invalid(format!("mode {m} used twice in pairing")));
            }
        }
        if seen.iter().any(|s| !s) || pairs.is_empty() {
            return Err(Error::invalid("pairing must cover every mode with at least one pair"));
        }
        Ok(Pairing { survivors, pairs })
    }

    pub fn survivors(&self) -> &[usize] {
        &self.survivors
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    fn order(&self) -> usize {
        self.survivors.len() + 2 * self.pairs.len()
    }
}

/// Contracts `a` against the witness matrices; the result keeps the survivor
/// modes.
fn contract_witnesses(a: &Tensor, pairing: &Pairing, witnesses: &[Matrix]) -> Tensor {
    let out_shape: Vec<usize> = pairing.survivors.iter().map(|&m| a.shape()[m]).collect();
    let out_cols = if out_shape.len() == 2 { out_shape[1] } else { 1 };
    let mut acc = vec![0.0; out_shape.iter().product()];
    let mut it = MultiIndex::new(a.shape());
    let mut pos = 0;
    while let Some(idx) = it.next_index() {
        let mut w = a.data()[pos];
        pos += 1;
        if w == 0.0 {
            continue;
        }
        for (b, &(p, q)) in witnesses.iter().zip(&pairing.pairs) {
            w *= b.get(idx[p], idx[q]);
        }
        let o = match pairing.survivors.as_slice() {
            [s] => idx[*s],
            [s, t] => idx[*s] * out_cols + idx[*t],
            _ => unreachable!("pairing keeps one or two modes"),
        };
        acc[o] += w;
    }
    Tensor::new(out_shape, acc).expect("sums of finite products")
}

fn nuclear_of_small(t: &Tensor) -> Result<f64> {
    match t.order() {
        1 => Ok(vec_norm(t.data())),
        _ => linalg::nuclear_norm(&Matrix::from_tensor(t)?),
    }
}

fn check_witnesses(a: &Tensor, pairing: &Pairing, witnesses: &[Matrix]) -> Result<Vec<Matrix>> {
    if pairing.order() != a.order() {
        return Err(Error::invalid(format!(
            "pairing covers {} modes, tensor has order {}",
            pairing.order(),
            a.order()
        )));
    }
    if witnesses.len() != pairing.pairs.len() {
        return Err(Error::invalid(format!(
            "need {} witness matrices, got {}",
            pairing.pairs.len(),
            witnesses.len()
        )));
    }
    let mut normalized = Vec::with_capacity(witnesses.len());
    for (j, (b, &(p, q))) in witnesses.iter().zip(&pairing.pairs).enumerate() {
        let (rows, cols) = (a.shape()[p], a.shape()[q]);
        if b.rows() != rows || b.cols() != cols {
            return Err(Error::invalid(format!(
                "witness {j} is {}x{}, modes ({p},{q}) need {rows}x{cols}",
                b.rows(),
                b.cols()
            )));
        }
        let nuc = linalg::nuclear_norm(b)?;
        if nuc == 0.0 {
            return Err(Error::invalid(format!("witness {j} is zero")));
        }
        normalized.push(b.scale(1.0 / nuc));
    }
    Ok(normalized)
}

/// Lower bound from explicit witnesses under the standard pairing. Each
/// witness is rescaled to unit nuclear norm first.
pub fn nuclear_lower_witness(a: &Tensor, witnesses: &[Matrix]) -> Result<f64> {
    nuclear_lower_witness_with(a, &Pairing::standard(a.order())?, witnesses)
}

pub fn nuclear_lower_witness_with(a: &Tensor, pairing: &Pairing, witnesses: &[Matrix]) -> Result<f64> {
    let normalized = check_witnesses(a, pairing, witnesses)?;
    nuclear_of_small(&contract_witnesses(a, pairing, &normalized))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LowerSearchOptions {
    /// Random restarts; one extra restart starts from the leading singular
    /// vectors of the paired unfoldings.
    pub restarts: usize,
    pub max_sweeps: usize,
    pub tol: f64,
    pub seed: u64,
}

impl Default for LowerSearchOptions {
    fn default() -> Self {
        LowerSearchOptions {
            restarts: 16,
            max_sweeps: 500,
            tol: 1e-13,
            seed: 0,
        }
    }
}

/// Lower side of the interval.
#[derive(Debug, Clone)]
pub struct NuclearLower {
    pub value: f64,
    /// Unit-nuclear-norm witnesses `u vᵀ`, one per pair.
    pub witnesses: Vec<Matrix>,
    pub pairing: Pairing,
}

/// Maximizes the witness bound over rank-one witnesses by coordinate ascent.
///
/// With `D` the dual of the contracted result (`c/‖c‖₂` for vectors, the
/// polar factor for matrices), the objective `⟨A, D ⊗ u₁v₁ᵀ ⊗ …⟩` is linear
/// in each witness vector, so each update sets one vector to its normalized
/// contraction. The objective never decreases.
pub fn nuclear_lower_search(a: &Tensor, opts: &LowerSearchOptions) -> Result<NuclearLower> {
    nuclear_lower_search_with(a, &Pairing::standard(a.order())?, opts)
}

pub fn nuclear_lower_search_with(a: &Tensor, pairing: &Pairing, opts: &LowerSearchOptions) -> Result<NuclearLower> {
    if pairing.order() != a.order() {
        return Err(Error::invalid("pairing does not match the tensor order"));
    }
    let paired: Vec<usize> = pairing.pairs.iter().flat_map(|&(p, q)| [p, q]).collect();
    let mut starts: Vec<Vec<Vec<f64>>> = Vec::new();
    // vectors indexed by mode; survivor slots stay empty
    let mut svd_start = vec![Vec::new(); a.order()];
    for &m in &paired {
        let u = linalg::svd(&linalg::unfold(a, m)?, DEFAULT_TOL)?.u.column(0);
        svd_start[m] = if vec_norm(&u) > 0.0 { u } else { basis(a.shape()[m]) };
    }
    starts.push(svd_start);
    for r in 0..opts.restarts {
        let mut rng = random::stream(opts.seed, r as u64);
        let mut v = vec![Vec::new(); a.order()];
        for &m in &paired {
            v[m] = random::unit_vector(&mut rng, a.shape()[m]);
        }
        starts.push(v);
    }

    let mut best: Option<(f64, Vec<Vec<f64>>)> = None;
    for start in starts {
        let (value, vectors) = ascend(a, pairing, start, opts);
        if best.as_ref().is_none_or(|(b, _)| value > *b) {
            best = Some((value, vectors));
        }
    }
    let (_, vectors) = best.expect("at least the unfolding start");
    let witnesses: Vec<Matrix> = pairing
        .pairs
        .iter()
        .map(|&(p, q)| Matrix::outer(&vectors[p], &vectors[q]))
        .collect();
    let value = nuclear_lower_witness_with(a, pairing, &witnesses)?;
    Ok(NuclearLower {
        value,
        witnesses,
        pairing: pairing.clone(),
    })
}

fn basis(n: usize) -> Vec<f64> {
    let mut e = vec![0.0; n];
    e[0] = 1.0;
    e
}

fn witnesses_from(pairing: &Pairing, vectors: &[Vec<f64>]) -> Vec<Matrix> {
    pairing
        .pairs
        .iter()
        .map(|&(p, q)| Matrix::outer(&vectors[p], &vectors[q]))
        .collect()
}

/// Dual of the contracted result: the unit-spectral-norm maximizer of
/// `⟨c, D⟩`, with value `‖c‖★`.
fn dual(c: &Tensor) -> Result<(f64, Tensor)> {
    if c.order() == 1 {
        let n = vec_norm(c.data());
        let d = if n > 0.0 { c.scale(1.0 / n) } else { c.clone() };
        return Ok((n, d));
    }
    let svd = linalg::svd(&Matrix::from_tensor(c)?, DEFAULT_TOL)?;
    Ok((svd.s.iter().sum(), svd.polar_factor().to_tensor()))
}

fn ascend(
    a: &Tensor,
    pairing: &Pairing,
    mut vectors: Vec<Vec<f64>>,
    opts: &LowerSearchOptions,
) -> (f64, Vec<Vec<f64>>) {
    let paired: Vec<usize> = pairing.pairs.iter().flat_map(|&(p, q)| [p, q]).collect();
    let mut value = 0.0;
    for sweep in 0..opts.max_sweeps {
        let c = contract_witnesses(a, pairing, &witnesses_from(pairing, &vectors));
        let Ok((current, d)) = dual(&c) else { break };
        if sweep > 0 && (current - value).abs() <= opts.tol * current.max(f64::MIN_POSITIVE) {
            value = current;
            break;
        }
        value = current;
        for &m in &paired {
            let g = mode_gradient(a, pairing, &d, &vectors, m);
            let n = vec_norm(&g);
            if n > 0.0 {
                vectors[m] = g.into_iter().map(|x| x / n).collect();
            }
        }
    }
    (value, vectors)
}

/// Contraction of `a` against `d` on the survivors and every paired vector
/// except the one on `skip`.
fn mode_gradient(a: &Tensor, pairing: &Pairing, d: &Tensor, vectors: &[Vec<f64>], skip: usize) -> Vec<f64> {
    let mut g = vec![0.0; a.shape()[skip]];
    let d_cols = if d.order() == 2 { d.shape()[1] } else { 1 };
    let mut it = MultiIndex::new(a.shape());
    let mut pos = 0;
    while let Some(idx) = it.next_index() {
        let mut w = a.data()[pos];
        pos += 1;
        if w == 0.0 {
            continue;
        }
        w *= match pairing.survivors.as_slice() {
            [s] => d.data()[idx[*s]],
            [s, t] => d.data()[idx[*s] * d_cols + idx[*t]],
            _ => unreachable!("pairing keeps one or two modes"),
        };
        for (m, v) in vectors.iter().enumerate() {
            if m != skip && !v.is_empty() {
                w *= v[idx[m]];
            }
        }
        g[idx[skip]] += w;
    }
    g
}

/// Lower bound for any order: the 2-norm for vectors, the sum of singular
/// values for matrices, and the witness search from order 3 on.
pub fn nuclear_lower(a: &Tensor, opts: &LowerSearchOptions) -> Result<NuclearLower> {
    match a.order() {
        1 | 2 => Ok(NuclearLower {
            value: nuclear_of_small(a)?,
            witnesses: Vec::new(),
            pairing: Pairing {
                survivors: (0..a.order()).collect(),
                pairs: Vec::new(),
            },
        }),
        _ => nuclear_lower_search(a, opts),
    }
}

/// Both sides of the bracket.
pub fn nuclear_interval(a: &Tensor, greedy: &GreedyOptions, search: &LowerSearchOptions) -> Result<NuclearInterval> {
    let upper = nuclear_upper_greedy(a, greedy)?;
    let lower = nuclear_lower(a, search)?;
    Ok(NuclearInterval {
        lower: lower.value,
        upper: upper.value,
        lower_witness: lower.witnesses,
        upper_witness: upper.terms,
        residual_norm: upper.residual_norm,
    })
}

/// `A⁽ʲ⁾ = U Uᵀ` for the mode-`j` unfolding `U` (zero-based `j`).
pub fn contraction_matrix(a: &Tensor, j: usize) -> Result<SymmetricMatrix> {
    if a.order() < 2 {
        return Err(Error::invalid("contraction matrix needs order >= 2"));
    }
    let u = linalg::unfold(a, j)?;
    SymmetricMatrix::new(u.matmul(&u.transpose())?)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadiusBoundReport {
    /// Spectral radius of the contraction matrix.
    pub rho: f64,
    /// Power-method lower bound on the spectral norm.
    pub spectral: f64,
    pub nuclear_upper: f64,
    pub product_upper: f64,
    pub holds: bool,
}

/// Checks `ρ(A⁽ʲ⁾) ≤ ‖A‖★ · ‖A‖_S` using the spectral lower bound and the
/// nuclear upper bound, with slack `1e-6`.
pub fn radius_bound_check(
    a: &Tensor,
    j: usize,
    hopm_opts: &HopmOptions,
    greedy: &GreedyOptions,
) -> Result<RadiusBoundReport> {
    let m = contraction_matrix(a, j)?;
    let rho = linalg::sym_eig(&m, DEFAULT_TOL)?
        .values
        .iter()
        .fold(0.0f64, |acc, v| acc.max(v.abs()));
    let spectral = hopm(a, hopm_opts)?.value;
    let nuclear_upper = nuclear_upper_greedy(a, greedy)?.value;
    let product_upper = spectral * nuclear_upper;
    Ok(RadiusBoundReport {
        rho,
        spectral,
        nuclear_upper,
        product_upper,
        holds: rho <= product_upper + 1e-6,
    })
}
