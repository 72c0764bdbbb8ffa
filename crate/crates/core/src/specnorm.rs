//! Tensor spectral norm: `max ⟨A, u1 ∘ … ∘ uk⟩` over unit vectors.
//!
//! Computing it exactly is NP-hard, so [`hopm`] runs a multistart
//! higher-order power method and reports the best local maximum found, which
//! is always a certified lower bound. [`spectral_bruteforce`] is an
//! independent grid oracle for tiny tensors, and [`spectral_alt_formula`]
//! evaluates the nuclear-ball characterization through rank-one witnesses.

use crate::error::{Error, Result};
use crate::random::{self, StreamRng};
use crate::tensor::{contract_all_but, contract_vectors, full_contraction, outer, vec_norm, Tensor};

/// Scalar times an outer product of unit vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct RankOneTerm {
    pub coefficient: f64,
    pub factors: Vec<Vec<f64>>,
}

impl RankOneTerm {
    /// Checks that each factor has unit 2-norm within `1e-10`.
    pub fn new(coefficient: f64, factors: Vec<Vec<f64>>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::invalid("rank-one term needs at least one factor"));
        }
        for (m, f) in factors.iter().enumerate() {
            let n = vec_norm(f);
            if (n - 1.0).abs() > 1e-10 {
                return Err(Error::invalid(format!("factor {m} has norm {n}, expected 1")));
            }
        }
        Ok(RankOneTerm { coefficient, factors })
    }

    pub fn evaluate(&self) -> Tensor {
        outer(&self.factors)
            .expect("factors are non-empty")
            .scale(self.coefficient)
    }

    pub fn shape(&self) -> Vec<usize> {
        self.factors.iter().map(Vec::len).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HopmOptions {
    pub restarts: usize,
    pub max_sweeps: usize,
    /// Relative change in the objective below which a restart is converged.
    pub tol: f64,
    /// Largest per-entry factor change also required for convergence. The
    /// objective settles quadratically faster than the factors, so this
    /// keeps the witness accurate enough for deflation.
    pub factor_tol: f64,
    pub seed: u64,
}

impl Default for HopmOptions {
    fn default() -> Self {
        HopmOptions {
            restarts: 32,
            max_sweeps: 500,
            tol: 1e-13,
            factor_tol: 1e-12,
            seed: 0,
        }
    }
}

impl HopmOptions {
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_restarts(mut self, restarts: usize) -> Self {
        self.restarts = restarts;
        self
    }
}

/// Best rank-one certificate found by [`hopm`].
#[derive(Debug, Clone)]
pub struct SpectralCertificate {
    /// `⟨A, outer(witness.factors)⟩`, a lower bound on the spectral norm.
    pub value: f64,
    pub witness: RankOneTerm,
    pub restarts_used: usize,
    pub best_restart: usize,
    pub best_restart_seed: u64,
    /// Whether the winning restart met the tolerance before the sweep cap.
    pub converged: bool,
    /// Factors re-randomized because their contraction vanished.
    pub perturbations: usize,
}

/// Outcome of one power-method restart.
#[derive(Debug, Clone)]
pub struct RestartRun {
    pub value: f64,
    pub factors: Vec<Vec<f64>>,
    /// Objective after the initialization (index 0) and after every sweep.
    pub sweep_values: Vec<f64>,
    pub converged: bool,
    pub perturbations: usize,
}

/// One restart from the given initial unit factors.
pub fn hopm_restart(a: &Tensor, mut factors: Vec<Vec<f64>>, opts: &HopmOptions, rng: &mut StreamRng) -> RestartRun {
    let k = a.order();
    let mut value = full_contraction(a, &factors).expect("factor shapes match");
    let mut sweep_values = vec![value];
    let mut converged = false;
    let mut perturbations = 0;
    for _ in 0..opts.max_sweeps {
        let previous = value;
        let mut moved: f64 = 0.0;
        for m in 0..k {
            let g = contract_all_but(a, &factors, m);
            let n = vec_norm(&g);
            if n == 0.0 {
                // The objective is zero for every choice of this factor.
                factors[m] = random::unit_vector(rng, a.shape()[m]);
                perturbations += 1;
                moved = f64::INFINITY;
                value = 0.0;
            } else {
                for (f, x) in factors[m].iter_mut().zip(g) {
                    let next = x / n;
                    moved = moved.max((next - *f).abs());
                    *f = next;
                }
                value = n;
            }
        }
        sweep_values.push(value);
        let settled = (value - previous).abs() <= opts.tol * value.abs().max(f64::MIN_POSITIVE);
        if settled && moved <= opts.factor_tol {
            converged = true;
            break;
        }
    }
    RestartRun {
        value,
        factors,
        sweep_values,
        converged,
        perturbations,
    }
}

/// Multistart higher-order power method.
///
/// Restart `r` draws its initial factors from the stream seeded with
/// `seed ^ r`. Ties between restarts keep the earliest one. A zero tensor
/// yields value 0 with first-basis-vector witnesses.
pub fn hopm(a: &Tensor, opts: &HopmOptions) -> Result<SpectralCertificate> {
    if opts.restarts == 0 {
        return Err(Error::invalid("hopm needs at least one restart"));
    }
    if opts.tol.is_nan() || opts.tol <= 0.0 {
        return Err(Error::invalid("hopm tolerance must be positive"));
    }
    if a.is_zero() {
        let factors = a
            .shape()
            .iter()
            .map(|&n| {
                let mut e = vec![0.0; n];
                e[0] = 1.0;
                e
            })
            .collect();
        return Ok(SpectralCertificate {
            value: 0.0,
            witness: RankOneTerm::new(0.0, factors)?,
            restarts_used: 0,
            best_restart: 0,
            best_restart_seed: random::sub_seed(opts.seed, 0),
            converged: true,
            perturbations: 0,
        });
    }

    let mut best: Option<(usize, RestartRun)> = None;
    let mut perturbations = 0;
    for r in 0..opts.restarts {
        let mut rng = random::stream(opts.seed, r as u64);
        let init = a.shape().iter().map(|&n| random::unit_vector(&mut rng, n)).collect();
        let run = hopm_restart(a, init, opts, &mut rng);
        perturbations += run.perturbations;
        if best.as_ref().is_none_or(|(_, b)| run.value > b.value) {
            best = Some((r, run));
        }
    }
    let (r, run) = best.expect("at least one restart");
    let value = full_contraction(a, &run.factors)?;
    Ok(SpectralCertificate {
        value,
        witness: RankOneTerm::new(value, run.factors)?,
        restarts_used: opts.restarts,
        best_restart: r,
        best_restart_seed: random::sub_seed(opts.seed, r as u64),
        converged: run.converged,
        perturbations,
    })
}

/// Largest mode dimension and order accepted by [`spectral_bruteforce`].
pub const BRUTEFORCE_MAX_DIM: usize = 3;
pub const BRUTEFORCE_MAX_ORDER: usize = 3;

/// Grid maximization of `⟨A, u ∘ v ∘ w⟩` for tensors of order ≤ 3 with
/// every dimension ≤ 3.
///
/// All modes but the last are sampled on a spherical-angle grid with
/// `grid_points` steps per angle (a half circle for 2-vectors; polar step
/// `π/N` and azimuth step `2π/N` for 3-vectors). The last mode is maximized
/// in closed form as the 2-norm of the remaining contraction. The returned
/// value lies within [`bruteforce_gap`] below the true spectral norm.
pub fn spectral_bruteforce(a: &Tensor, grid_points: usize) -> Result<f64> {
    if a.order() > BRUTEFORCE_MAX_ORDER || a.shape().iter().any(|&n| n > BRUTEFORCE_MAX_DIM) {
        return Err(Error::UnsupportedSize(format!(
            "grid search supports order <= {BRUTEFORCE_MAX_ORDER} and dimensions <= {BRUTEFORCE_MAX_DIM}, got {:?}",
            a.shape()
        )));
    }
    if grid_points == 0 {
        return Err(Error::invalid("grid needs at least one point per angle"));
    }
    let k = a.order();
    if k == 1 {
        return Ok(vec_norm(a.data()));
    }
    let grids: Vec<Vec<Vec<f64>>> = a.shape()[..k - 1]
        .iter()
        .map(|&n| sphere_grid(n, grid_points))
        .collect();
    let last = k - 1;
    let mut best: f64 = 0.0;
    let mut factors: Vec<Vec<f64>> = a.shape().iter().map(|&n| vec![0.0; n]).collect();
    let mut choice = vec![0usize; k - 1];
    loop {
        for (m, &c) in choice.iter().enumerate() {
            factors[m].clone_from(&grids[m][c]);
        }
        let g = contract_all_but(a, &factors, last);
        best = best.max(vec_norm(&g));
        // odometer over grid choices
        let mut m = k - 1;
        loop {
            if m == 0 {
                return Ok(best);
            }
            m -= 1;
            choice[m] += 1;
            if choice[m] < grids[m].len() {
                break;
            }
            choice[m] = 0;
        }
    }
}

/// Worst-case shortfall of [`spectral_bruteforce`]: `‖A‖_F · order · π / N`.
pub fn bruteforce_gap(a: &Tensor, grid_points: usize) -> f64 {
    a.frobenius() * a.order() as f64 * std::f64::consts::PI / grid_points as f64
}

fn sphere_grid(n: usize, points: usize) -> Vec<Vec<f64>> {
    use std::f64::consts::PI;
    match n {
        1 => vec![vec![1.0]],
        2 => (0..points)
            .map(|i| {
                let t = PI * i as f64 / points as f64;
                vec![t.cos(), t.sin()]
            })
            .collect(),
        3 => {
            let mut out = Vec::with_capacity((points + 1) * points);
            for i in 0..=points {
                let theta = PI * i as f64 / points as f64;
                for j in 0..points {
                    let phi = 2.0 * PI * j as f64 / points as f64;
                    out.push(vec![theta.sin() * phi.cos(), theta.sin() * phi.sin(), theta.cos()]);
                }
            }
            out
        }
        _ => unreachable!("dimension checked by caller"),
    }
}

/// Lower bound from the nuclear-ball formula: sample rank-one `B = u vᵀ`
/// (unit `u`, `v`, so `‖B‖★ = 1`), contract it against the last two modes and
/// take the spectral norm of the result with [`hopm`]. Returns the best value.
pub fn spectral_alt_formula(a: &Tensor, samples: usize, seed: u64, opts: &HopmOptions) -> Result<f64> {
    let k = a.order();
    if k < 3 {
        return Err(Error::invalid(format!("alternative formula needs order >= 3, got {k}")));
    }
    if a.is_zero() {
        return Ok(0.0);
    }
    let mut best: f64 = 0.0;
    for s in 0..samples {
        let mut rng = random::stream(seed, s as u64);
        let u = random::unit_vector(&mut rng, a.shape()[k - 2]);
        let v = random::unit_vector(&mut rng, a.shape()[k - 1]);
        let c = contract_vectors(a, &[(k - 2, &u), (k - 1, &v)])?;
        let value = if c.order() == 1 {
            vec_norm(c.data())
        } else {
            hopm(&c, opts)?.value
        };
        best = best.max(value);
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use approx::assert_abs_diff_eq;

    #[test]
    fn rank_one_term_checks_units() {
        assert!(RankOneTerm::new(1.0, vec![vec![1.0, 1.0]]).is_err());
        let t = RankOneTerm::new(2.0, vec![vec![0.0, 1.0], vec![1.0]]).unwrap();
        assert_eq!(t.evaluate().data(), &[0.0, 2.0]);
    }

    #[test]
    fn zero_tensor_has_zero_norm() {
        let z = Tensor::zeros(&[2, 3, 2]).unwrap();
        let c = hopm(&z, &HopmOptions::default()).unwrap();
        assert_eq!(c.value, 0.0);
        assert!(c.converged);
        assert_eq!(spectral_bruteforce(&z, 10).unwrap(), 0.0);
        assert_eq!(spectral_alt_formula(&z, 4, 0, &HopmOptions::default()).unwrap(), 0.0);
    }

    #[test]
    fn known_spectral_norms() {
        let opts = HopmOptions::default();
        assert_abs_diff_eq!(hopm(&fixtures::sym_2x2x2(), &opts).unwrap().value, 0.5, epsilon = 1e-6);
        assert_abs_diff_eq!(
            hopm(&fixtures::nilpotent_2x2x2(), &opts).unwrap().value,
            1.0,
            epsilon = 1e-6
        );
        let a = fixtures::product_counterexample();
        assert_abs_diff_eq!(hopm(&a, &opts).unwrap().value, 16.3609, epsilon = 1e-3);
    }

    #[test]
    fn witness_reproduces_value() {
        let a = crate::random::random_tensor(&[3, 2, 3], 5, crate::random::Distribution::StandardNormal).unwrap();
        let c = hopm(&a, &HopmOptions::default()).unwrap();
        let direct = full_contraction(&a, &c.witness.factors).unwrap();
        assert_abs_diff_eq!(c.value, direct.abs(), epsilon = 1e-10);
        assert!(c.value <= a.frobenius() + 1e-12);
        assert_eq!(c.best_restart_seed, c.best_restart as u64);
    }

    #[test]
    fn order_one_and_two() {
        let v = Tensor::new(vec![3], vec![3.0, 0.0, 4.0]).unwrap();
        assert_abs_diff_eq!(hopm(&v, &HopmOptions::default()).unwrap().value, 5.0, epsilon = 1e-12);
        let m = Tensor::new(vec![2, 2], vec![2.0, 0.0, 0.0, -3.0]).unwrap();
        assert_abs_diff_eq!(hopm(&m, &HopmOptions::default()).unwrap().value, 3.0, epsilon = 1e-9);
    }

    #[test]
    fn bruteforce_refuses_large_inputs() {
        let t = Tensor::zeros(&[4, 2, 2]).unwrap();
        assert!(matches!(spectral_bruteforce(&t, 10), Err(Error::UnsupportedSize(_))));
        let t = Tensor::zeros(&[2, 2, 2, 2]).unwrap();
        assert!(matches!(spectral_bruteforce(&t, 10), Err(Error::UnsupportedSize(_))));
    }

    #[test]
    fn bruteforce_on_symmetric_cubic() {
        let a = fixtures::sym_2x2x2();
        let v = spectral_bruteforce(&a, 720).unwrap();
        assert!((v - 0.5).abs() <= 0.01, "{v}");
        assert!(v <= 0.5 + 1e-12);
    }

    #[test]
    fn bruteforce_on_unit_rank_one() {
        let s = 1.0 / 2f64.sqrt();
        let a = outer(&[vec![s, s], vec![0.6, 0.0, 0.8], vec![0.0, 1.0]]).unwrap();
        let n = 90;
        let v = spectral_bruteforce(&a, n).unwrap();
        assert!(v <= 1.0 + 1e-12);
        assert!(v >= 1.0 - bruteforce_gap(&a, n));
    }

    #[test]
    fn alt_formula_on_symmetric_cubic() {
        let v = spectral_alt_formula(&fixtures::sym_2x2x2(), 64, 3, &HopmOptions::default()).unwrap();
        assert!((0.49..=0.5 + 1e-6).contains(&v), "{v}");
        let m = Tensor::zeros(&[2, 2]).unwrap();
        assert!(spectral_alt_formula(&m, 4, 0, &HopmOptions::default()).is_err());
    }
}
