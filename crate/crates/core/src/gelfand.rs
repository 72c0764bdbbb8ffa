//! Gelfand limits of the cubic and quintic power maps.
//!
//! For a degree-`d` power map `F`, the Gelfand limit is
//! `ρ(A) = lim ‖F^m(A)‖^(1/d^m)`, the same for every norm. The raw iterates
//! grow or shrink like `ρ^(d^m)` and leave double range within a few steps,
//! so the iteration keeps a Frobenius-normalized representative `B_m` and a
//! log-scale accumulator `L_m` with `F^m(A) = e^(L_m) · B_m`:
//!
//! ```text
//! B_0 = A / ‖A‖_F,   L_0 = ln ‖A‖_F
//! C = F(B_m),  s = ‖C‖_F,  B_{m+1} = C / s,  L_{m+1} = d · L_m + ln s
//! r_m(X) = exp((L_m + ln ‖B_m‖_X) / d^m)
//! ```
//!
//! This works because `F` is homogeneous of degree `d`.

use std::fmt::Write as _;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::io::format_real;
use crate::nucnorm::{nuclear_upper_greedy, GreedyOptions};
use crate::power::PowerMap;
use crate::tensor::Tensor;

/// Below this Frobenius `r_m` a tensor is reported as numerically nilpotent.
pub const NILPOTENT_FLOOR: f64 = 1e-12;

/// Norms that can be tracked along the iteration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TraceNorm {
    One,
    Frobenius,
    Infinity,
    /// Greedy nuclear upper bound; not itself a norm, so no monotonicity is
    /// expected from this column.
    NuclearUpper,
}

impl TraceNorm {
    pub fn label(self) -> &'static str {
        match self {
            TraceNorm::One => "one",
            TraceNorm::Frobenius => "fro",
            TraceNorm::Infinity => "inf",
            TraceNorm::NuclearUpper => "nuclear-upper",
        }
    }

    /// Whether the column is guaranteed non-increasing.
    pub fn is_tensor_norm(self) -> bool {
        matches!(self, TraceNorm::One | TraceNorm::Frobenius)
    }

    fn eval(self, t: &Tensor, greedy: &GreedyOptions) -> Result<f64> {
        Ok(match self {
            TraceNorm::One => t.one_norm(),
            TraceNorm::Frobenius => t.frobenius(),
            TraceNorm::Infinity => t.max_abs(),
            TraceNorm::NuclearUpper => nuclear_upper_greedy(t, greedy)?.value,
        })
    }
}

impl FromStr for TraceNorm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "one" | "1" => Ok(TraceNorm::One),
            "fro" | "frobenius" | "2" => Ok(TraceNorm::Frobenius),
            "inf" | "infinity" => Ok(TraceNorm::Infinity),
            "nuclear-upper" | "nuclear" => Ok(TraceNorm::NuclearUpper),
            _ => Err(Error::invalid(format!(
                "unknown norm `{s}`, expected one of one, fro, inf, nuclear-upper"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GelfandStatus {
    Converged,
    NilpotentDetected,
    IterationCap,
}

impl GelfandStatus {
    pub fn label(self) -> &'static str {
        match self {
            GelfandStatus::Converged => "converged",
            GelfandStatus::NilpotentDetected => "nilpotent_detected",
            GelfandStatus::IterationCap => "iteration_cap",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GelfandRow {
    pub m: usize,
    /// One value per requested norm, in request order.
    pub r_values: Vec<f64>,
    /// `ln` of the Frobenius norm of the unscaled iterate; `-inf` once it
    /// vanishes.
    pub log_scale: f64,
}

#[derive(Debug, Clone)]
pub struct GelfandTrace {
    pub map: PowerMap,
    pub norms: Vec<TraceNorm>,
    pub rows: Vec<GelfandRow>,
    pub rho_estimate: f64,
    pub classification: GelfandStatus,
}

impl GelfandTrace {
    pub fn column(&self, norm: TraceNorm) -> Option<Vec<f64>> {
        let k = self.norms.iter().position(|&n| n == norm)?;
        Some(self.rows.iter().map(|r| r.r_values[k]).collect())
    }

    pub fn last(&self) -> &GelfandRow {
        self.rows.last().expect("a trace has at least one row")
    }

    /// Delimited rows with a header: `m`, one column per norm in request
    /// order, then `log_scale`.
    pub fn to_delimited(&self, delimiter: char) -> String {
        let mut out = String::new();
        out.push('m');
        for n in &self.norms {
            out.push(delimiter);
            out.push_str(n.label());
        }
        out.push(delimiter);
        out.push_str("log_scale\n");
        for row in &self.rows {
            write!(out, "{}", row.m).unwrap();
            for v in &row.r_values {
                out.push(delimiter);
                out.push_str(&format_real(*v));
            }
            out.push(delimiter);
            out.push_str(&format_real(row.log_scale));
            out.push('\n');
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GelfandOptions {
    pub max_m: usize,
    /// Convergence threshold on `|r_m − r_{m−1}|` across all norms.
    pub tol: f64,
    /// Stop at the first converged step instead of running to `max_m`.
    pub early_stop: bool,
    /// Settings for the nuclear-upper column.
    pub greedy: GreedyOptions,
}

impl Default for GelfandOptions {
    fn default() -> Self {
        GelfandOptions {
            max_m: 31,
            tol: 1e-10,
            early_stop: true,
            greedy: GreedyOptions::default(),
        }
    }
}

fn row(
    m: usize,
    b: &Tensor,
    log_scale: f64,
    denom: f64,
    norms: &[TraceNorm],
    greedy: &GreedyOptions,
) -> Result<GelfandRow> {
    let mut r_values = Vec::with_capacity(norms.len());
    for n in norms {
        let x = n.eval(b, greedy)?;
        r_values.push(if x == 0.0 {
            0.0
        } else {
            ((log_scale + x.ln()) / denom).exp()
        });
    }
    Ok(GelfandRow { m, r_values, log_scale })
}

/// Runs the scaled power iteration and records `r_m` for each norm.
///
/// `rho_estimate` is the Frobenius `r_m` of the final row (0 once an iterate
/// vanishes exactly).
pub fn gelfand_iterate(a: &Tensor, map: PowerMap, norms: &[TraceNorm], opts: &GelfandOptions) -> Result<GelfandTrace> {
    if a.order() != map.order() {
        return Err(Error::invalid(format!(
            "power map of degree {} needs an order-{} tensor, got shape {:?}",
            map.degree(),
            map.order(),
            a.shape()
        )));
    }
    if opts.max_m == 0 {
        return Err(Error::invalid("max_m must be at least 1"));
    }
    if opts.tol.is_nan() || opts.tol <= 0.0 {
        return Err(Error::invalid("tolerance must be positive"));
    }
    let d = map.degree() as f64;
    let norms = norms.to_vec();
    let fro = a.frobenius();
    let zero_row = |m: usize| GelfandRow {
        m,
        r_values: vec![0.0; norms.len()],
        log_scale: f64::NEG_INFINITY,
    };
    if fro == 0.0 {
        return Ok(GelfandTrace {
            map,
            norms: norms.clone(),
            rows: vec![zero_row(0)],
            rho_estimate: 0.0,
            classification: GelfandStatus::NilpotentDetected,
        });
    }

    let mut b = a.scale(1.0 / fro);
    let mut log_scale = fro.ln();
    let mut rows = vec![row(0, &b, log_scale, 1.0, &norms, &opts.greedy)?];
    let mut rho = fro;
    let mut status = GelfandStatus::IterationCap;
    for m in 1..=opts.max_m {
        let c = map.apply(&b)?;
        let s = c.frobenius();
        if s == 0.0 {
            rows.push(zero_row(m));
            rho = 0.0;
            status = GelfandStatus::NilpotentDetected;
            break;
        }
        b = c.scale(1.0 / s);
        log_scale = d * log_scale + s.ln();
        let denom = d.powi(m as i32);
        let next = row(m, &b, log_scale, denom, &norms, &opts.greedy)?;
        rho = (log_scale / denom).exp();
        let prev = rows.last().expect("row 0 exists");
        let settled = next
            .r_values
            .iter()
            .zip(&prev.r_values)
            .all(|(x, y)| (x - y).abs() <= opts.tol)
            && (rho - (prev.log_scale / d.powi(m as i32 - 1)).exp()).abs() <= opts.tol;
        rows.push(next);
        if settled {
            status = GelfandStatus::Converged;
            if opts.early_stop {
                break;
            }
        } else {
            status = GelfandStatus::IterationCap;
        }
    }
    Ok(GelfandTrace {
        map,
        norms,
        rows,
        rho_estimate: rho,
        classification: status,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Classification {
    pub nilpotent: bool,
    pub idempotent: bool,
    pub rho: f64,
}

/// Nilpotent when an iterate vanishes or the Frobenius `r_m` falls below
/// [`NILPOTENT_FLOOR`] within `max_m` steps; this is numerical evidence, not
/// a proof either way. Idempotent when `‖F(A) − A‖_F ≤ tol · max(1, ‖A‖_F)`.
pub fn classify(a: &Tensor, map: PowerMap, max_m: usize, tol: f64) -> Result<Classification> {
    let opts = GelfandOptions {
        max_m,
        tol,
        early_stop: true,
        ..GelfandOptions::default()
    };
    let trace = gelfand_iterate(a, map, &[TraceNorm::Frobenius], &opts)?;
    let nilpotent = trace.classification == GelfandStatus::NilpotentDetected
        || trace.rows.iter().any(|r| r.r_values[0] < NILPOTENT_FLOOR);
    let image = map.apply(a)?;
    let idempotent = image.sub(a)?.frobenius() <= tol * a.frobenius().max(1.0);
    Ok(Classification {
        nilpotent,
        idempotent,
        rho: if nilpotent { 0.0 } else { trace.rho_estimate },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use approx::assert_relative_eq;

    const ELEMENTWISE: [TraceNorm; 3] = [TraceNorm::One, TraceNorm::Frobenius, TraceNorm::Infinity];

    #[test]
    fn first_row_is_elementwise_norms() {
        let a = fixtures::gelfand_4x3x2();
        let t = gelfand_iterate(&a, PowerMap::Cubic, &ELEMENTWISE, &GelfandOptions::default()).unwrap();
        let r0 = &t.rows[0].r_values;
        assert_relative_eq!(r0[0], a.one_norm(), max_relative = 1e-14);
        assert_relative_eq!(r0[1], a.frobenius(), max_relative = 1e-14);
        assert_relative_eq!(r0[2], a.max_abs(), max_relative = 1e-14);
    }

    #[test]
    fn nilpotent_fixture_detected_at_first_step() {
        let t = gelfand_iterate(
            &fixtures::nilpotent_2x2x2(),
            PowerMap::Cubic,
            &ELEMENTWISE,
            &GelfandOptions::default(),
        )
        .unwrap();
        assert_eq!(t.classification, GelfandStatus::NilpotentDetected);
        assert_eq!(t.rows.len(), 2);
        assert_eq!(t.rho_estimate, 0.0);
        let c = classify(&fixtures::nilpotent_2x2x2(), PowerMap::Cubic, 10, 1e-10).unwrap();
        assert!(c.nilpotent && !c.idempotent);
        assert_eq!(c.rho, 0.0);
    }

    #[test]
    fn unit_rank_one_is_fixed() {
        let a = fixtures::unit_rank_one_4x2x4();
        let t = gelfand_iterate(&a, PowerMap::Cubic, &[TraceNorm::Frobenius], &GelfandOptions::default()).unwrap();
        assert!(t.rows.iter().all(|r| (r.r_values[0] - 1.0).abs() <= 1e-12));
        assert_eq!(t.classification, GelfandStatus::Converged);
        let c = classify(&a, PowerMap::Cubic, 10, 1e-12).unwrap();
        assert!(c.idempotent && !c.nilpotent);
        assert!((c.rho - 1.0).abs() <= 1e-10);
    }

    #[test]
    fn zero_tensor() {
        let z = Tensor::zeros(&[2, 2, 2]).unwrap();
        let c = classify(&z, PowerMap::Cubic, 5, 1e-10).unwrap();
        assert!(c.nilpotent && c.idempotent);
        assert_eq!(c.rho, 0.0);
    }

    #[test]
    fn diagonal_limit_is_max_entry() {
        let a = fixtures::diagonal(&[2.0, 0.5]);
        let t = gelfand_iterate(&a, PowerMap::Cubic, &[TraceNorm::Frobenius], &GelfandOptions::default()).unwrap();
        assert!((t.rho_estimate - 2.0).abs() <= 1e-9, "{}", t.rho_estimate);
    }

    #[test]
    fn export_has_header_in_request_order() {
        let a = fixtures::unit_rank_one_4x2x4();
        let norms = [TraceNorm::Infinity, TraceNorm::One];
        let opts = GelfandOptions {
            max_m: 2,
            early_stop: false,
            ..Default::default()
        };
        let t = gelfand_iterate(&a, PowerMap::Cubic, &norms, &opts).unwrap();
        let text = t.to_delimited(',');
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("m,inf,one,log_scale"));
        assert_eq!(lines.count(), 3);
    }

    #[test]
    fn order_mismatch_rejected() {
        let a = fixtures::gelfand_4x3x2();
        let q = PowerMap::Quintic(crate::power::QuinticVariant::A);
        assert!(gelfand_iterate(&a, q, &ELEMENTWISE, &GelfandOptions::default()).is_err());
        assert!("bogus".parse::<TraceNorm>().is_err());
    }
}
