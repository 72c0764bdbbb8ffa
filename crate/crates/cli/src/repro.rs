//! Reproduction report for the published example values.
//!
//! Each row pairs a published number with the value recomputed from a
//! bundled fixture and a verdict:
//!
//! * `reproduced`: agreement to every printed digit (or exactly for
//!   structural claims).
//! * `bounded`: the published value lies inside a certified interval, or a
//!   one-sided estimate reaches it within the stated slack.
//! * `discrepancy-documented`: the published value is not reproduced, and an
//!   independent oracle confirms the recomputed value.
//! * `NOT-REPRODUCED`: none of the above; makes the command exit with 1.

use std::fmt::Write as _;
use std::io::Write;

use tnorm_core::gelfand::{classify, gelfand_iterate, GelfandOptions, TraceNorm};
use tnorm_core::io::format_real;
use tnorm_core::linalg::{sym_eig, Matrix, DEFAULT_TOL};
use tnorm_core::nucnorm::{contraction_matrix, nuclear_interval, nuclear_lower_witness, radius_bound_check};
use tnorm_core::power::{cubic_power, PowerMap, QuinticVariant};
use tnorm_core::random::{random_tensor, Distribution};
use tnorm_core::specnorm::hopm;
use tnorm_core::{contract_product, fixtures as core_fixtures, ContractionPlan, Tensor};

use crate::commands::{greedy_options, hopm_options, interval, lower_options};
use crate::fixtures::load;
use crate::{CliError, Format, GlobalArgs};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Reproduced,
    Bounded,
    DiscrepancyDocumented,
    NotReproduced,
}

impl Verdict {
    pub fn label(self) -> &'static str {
        match self {
            Verdict::Reproduced => "reproduced",
            Verdict::Bounded => "bounded",
            Verdict::DiscrepancyDocumented => "discrepancy-documented",
            Verdict::NotReproduced => "NOT-REPRODUCED",
        }
    }
}

#[derive(Debug, Clone)]
pub struct ReproRow {
    pub id: String,
    pub quantity: String,
    pub published: String,
    pub computed: String,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, Default)]
pub struct ReproReport {
    pub rows: Vec<ReproRow>,
    /// Measured quantities with no published value to compare against.
    pub observations: Vec<(String, String)>,
}

impl ReproReport {
    fn row(
        &mut self,
        id: &str,
        quantity: &str,
        published: impl Into<String>,
        computed: impl Into<String>,
        verdict: Verdict,
    ) {
        self.rows.push(ReproRow {
            id: id.to_string(),
            quantity: quantity.to_string(),
            published: published.into(),
            computed: computed.into(),
            verdict,
        });
    }

    pub fn find(&self, id: &str) -> Option<&ReproRow> {
        self.rows.iter().find(|r| r.id == id)
    }

    pub fn all_ok(&self) -> bool {
        self.rows.iter().all(|r| r.verdict != Verdict::NotReproduced)
    }

    pub fn write(&self, format: Format, out: &mut dyn Write) -> std::io::Result<()> {
        match format {
            Format::Text => {
                for r in &self.rows {
                    writeln!(
                        out,
                        "{} | {} | published {} | computed {} | {}",
                        r.id,
                        r.quantity,
                        r.published,
                        r.computed,
                        r.verdict.label()
                    )?;
                }
                for (k, v) in &self.observations {
                    writeln!(out, "observation {k}: {v}")?;
                }
            }
            Format::Rows => {
                writeln!(out, "id\tquantity\tpublished\tcomputed\tverdict")?;
                for r in &self.rows {
                    writeln!(
                        out,
                        "{}\t{}\t{}\t{}\t{}",
                        r.id,
                        r.quantity,
                        r.published,
                        r.computed,
                        r.verdict.label()
                    )?;
                }
                for (k, v) in &self.observations {
                    writeln!(out, "{k}\tobservation\t\t{v}\t")?;
                }
            }
        }
        let count = |v: Verdict| self.rows.iter().filter(|r| r.verdict == v).count();
        writeln!(
            out,
            "summary: {} rows, {} reproduced, {} bounded, {} discrepancy-documented, {} not reproduced",
            self.rows.len(),
            count(Verdict::Reproduced),
            count(Verdict::Bounded),
            count(Verdict::DiscrepancyDocumented),
            count(Verdict::NotReproduced)
        )
    }
}

/// Whether `value` rounds to the printed decimal `printed`.
pub fn matches_printed(value: f64, printed: &str) -> bool {
    let Ok(target) = printed.parse::<f64>() else {
        return false;
    };
    let decimals = printed.split_once('.').map_or(0, |(_, d)| d.len());
    let half_unit = 0.5 * 10f64.powi(-(decimals as i32));
    (value - target).abs() <= half_unit + 8.0 * f64::EPSILON * target.abs().max(1.0)
}

/// Renders `value` with as many decimals as `printed` has.
fn like_printed(value: f64, printed: &str) -> String {
    let decimals = printed.split_once('.').map_or(0, |(_, d)| d.len());
    format!("{value:.decimals$}")
}

fn digits_verdict(value: f64, printed: &str) -> Verdict {
    if matches_printed(value, printed) {
        Verdict::Reproduced
    } else {
        Verdict::NotReproduced
    }
}

/// Entry table printed for the self-product of the 2x2x2x2 counterexample,
/// keyed by one-based index `[i1, i2, i5, i6]`.
pub const PUBLISHED_PRODUCT_ENTRIES: [([usize; 4], i64); 16] = [
    ([1, 1, 1, 1], 58),
    ([1, 2, 1, 1], 6),
    ([2, 1, 1, 1], -18),
    ([2, 2, 1, 1], 24),
    ([1, 1, 2, 1], -18),
    ([1, 2, 2, 1], 12),
    ([2, 1, 2, 1], 70),
    ([2, 2, 2, 1], 30),
    ([1, 1, 1, 2], 6),
    ([1, 2, 1, 2], 108),
    ([2, 1, 1, 2], 12),
    ([2, 2, 1, 2], -54),
    ([1, 1, 2, 2], 24),
    ([1, 2, 2, 2], -54),
    ([2, 1, 2, 2], 30),
    ([2, 2, 2, 2], 1252),
];

/// Published Gelfand trace of the 4x3x2 fixture: `m` and the printed one,
/// Frobenius and infinity columns.
pub const PUBLISHED_GELFAND_TABLE: [(usize, [&str; 3]); 32] = [
    (0, ["15.6755", "3.86508", "1.92167"]),
    (1, ["4.0199", "2.70142", "2.31202"]),
    (2, ["2.82591", "2.54596", "2.45592"]),
    (3, ["2.61624", "2.53718", "2.50769"]),
    (4, ["2.56299", "2.53712", "2.52722"]),
    (5, ["2.54571", "2.53712", "2.53382"]),
    (6, ["2.53998", "2.537118666456933", "2.53602"]),
    (7, ["2.538072064165983", "2.537118666456933", "2.536751440470295"]),
    (8, ["2.537436425894090", "2.537118666456933", "2.536996251888380"]),
    (9, ["2.537224581847678", "2.537118666456933", "2.537077860944460"]),
    (10, ["2.537153971095906", "2.537118666456933", "2.537105064546520"]),
    (11, ["2.537130434615338", "2.537118666456933", "2.537114132478693"]),
    (12, ["2.537122589170336", "2.537118666456933", "2.537117155129952"]),
    (13, ["2.537119974027393", "2.537118666456933", "2.537118162681173"]),
    (14, ["2.537119102313678", "2.537118666456933", "2.537118498531668"]),
    (15, ["2.537118811742506", "2.537118666456933", "2.537118610481843"]),
    (16, ["2.537118714885456", "2.537118666456933", "2.537118647798569"]),
    (17, ["2.537118682599774", "2.537118666456933", "2.537118660237478"]),
    (18, ["2.537118671837880", "2.537118666456933", "2.537118664383781"]),
    (19, ["2.537118668250582", "2.537118666456933", "2.537118665765882"]),
    (20, ["2.537118667054816", "2.537118666456933", "2.537118666226583"]),
    (21, ["2.537118666656227", "2.537118666456933", "2.537118666380149"]),
    (22, ["2.537118666523364", "2.537118666456933", "2.537118666431338"]),
    (23, ["2.537118666479076", "2.537118666456933", "2.537118666448401"]),
    (24, ["2.537118666464314", "2.537118666456933", "2.537118666454089"]),
    (25, ["2.537118666459393", "2.537118666456933", "2.537118666455985"]),
    (26, ["2.537118666457753", "2.537118666456933", "2.537118666456617"]),
    (27, ["2.537118666457206", "2.537118666456933", "2.537118666456827"]),
    (28, ["2.537118666457024", "2.537118666456933", "2.537118666456898"]),
    (29, ["2.537118666456963", "2.537118666456933", "2.537118666456921"]),
    (30, ["2.537118666456943", "2.537118666456933", "2.537118666456929"]),
    (31, ["2.537118666456936", "2.537118666456933", "2.537118666456931"]),
];

/// Dense-loop contraction of an order-3 tensor with a matrix over its last
/// two modes, returning the 2-norm of the resulting vector.
#[allow(clippy::needless_range_loop)]
fn oracle_vector_bound(a: &Tensor, b: &[Vec<f64>]) -> f64 {
    let s = a.shape();
    let mut sq = 0.0;
    for i in 0..s[0] {
        let mut c = 0.0;
        for j in 0..s[1] {
            for k in 0..s[2] {
                c += a.get(&[i, j, k]) * b[j][k];
            }
        }
        sq += c * c;
    }
    sq.sqrt()
}

/// Dense-loop contraction of an order-4 tensor with a matrix over its last
/// two modes.
#[allow(clippy::needless_range_loop)]
fn oracle_matrix_contraction(a: &Tensor, b: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let s = a.shape();
    let mut c = vec![vec![0.0; s[1]]; s[0]];
    for (i, row) in c.iter_mut().enumerate() {
        for (j, cij) in row.iter_mut().enumerate() {
            for k in 0..s[2] {
                for l in 0..s[3] {
                    *cij += a.get(&[i, j, k, l]) * b[k][l];
                }
            }
        }
    }
    c
}

fn all_ones_unit_nuclear(n: usize) -> (Matrix, Vec<Vec<f64>>) {
    let v = 1.0 / n as f64;
    (Matrix::filled(n, n, v), vec![vec![v; n]; n])
}

fn witness_rows(report: &mut ReproReport) -> Result<(), CliError> {
    let a = load("sym_2x2x2");
    let (b, dense) = all_ones_unit_nuclear(2);
    let value = nuclear_lower_witness(&a, &[b])?;
    let oracle = oracle_vector_bound(&a, &dense);
    let confirmed = (value - oracle).abs() <= 1e-12 && value <= 2.0 + 1e-12;
    report.row(
        "sym_2x2x2/witness-lower",
        "nuclear lower bound from the all-ones witness",
        "0.6455",
        format!("{} (dense oracle {})", format_real(value), format_real(oracle)),
        if matches_printed(value, "0.6455") {
            Verdict::Reproduced
        } else if confirmed {
            Verdict::DiscrepancyDocumented
        } else {
            Verdict::NotReproduced
        },
    );

    let a = load("ones_minus_diagonal_3333");
    let (b, dense) = all_ones_unit_nuclear(3);
    let value = nuclear_lower_witness(&a, &[b])?;
    // C = 3J - I/3, eigenvalues 26/3, -1/3, -1/3.
    let c = oracle_matrix_contraction(&a, &dense);
    let closed_form_ok = c.iter().enumerate().all(|(i, row)| {
        row.iter()
            .enumerate()
            .all(|(j, &x)| (x - (3.0 - if i == j { 1.0 / 3.0 } else { 0.0 })).abs() <= 1e-12)
    });
    let oracle = 28.0 / 3.0;
    let confirmed = closed_form_ok && (value - oracle).abs() <= 1e-10 && value <= 12.0 + 1e-12;
    report.row(
        "ones_minus_diagonal_3333/witness-lower",
        "nuclear lower bound from the all-ones witness",
        "10.3757",
        format!("{} (dense oracle 28/3 = {})", format_real(value), format_real(oracle)),
        if matches_printed(value, "10.3757") {
            Verdict::Reproduced
        } else if confirmed {
            Verdict::DiscrepancyDocumented
        } else {
            Verdict::NotReproduced
        },
    );
    Ok(())
}

fn nuclear_rows(g: &GlobalArgs, report: &mut ReproReport) -> Result<(), CliError> {
    for (name, published) in [("sym_2x2x2", 2.0), ("ones_minus_diagonal_3333", 12.0)] {
        let iv = nuclear_interval(&load(name), &greedy_options(g), &lower_options(g))?;
        report.row(
            &format!("{name}/nuclear"),
            "nuclear norm",
            format_real(published),
            interval(iv.lower, iv.upper),
            if iv.contains(published, 1e-6) {
                Verdict::Bounded
            } else {
                Verdict::NotReproduced
            },
        );
    }
    Ok(())
}

fn contraction_rows(g: &GlobalArgs, report: &mut ReproReport) -> Result<(), CliError> {
    let a = load("sym_2x2x2");
    let spectral = hopm(&a, &hopm_options(g))?.value;
    report.row(
        "sym_2x2x2/spectral",
        "spectral norm",
        "0.5",
        format_real(spectral),
        digits_verdict(spectral, "0.5"),
    );
    let half_identity = Matrix::identity(2).scale(0.5);
    for j in 0..3 {
        let m = contraction_matrix(&a, j)?;
        let diff = m.matrix().sub(&half_identity)?.max_abs();
        report.row(
            &format!("sym_2x2x2/contraction-matrix[{j}]"),
            "mode contraction matrix",
            "0.5 I",
            format!("max deviation {}", format_real(diff)),
            if diff <= 1e-12 {
                Verdict::Reproduced
            } else {
                Verdict::NotReproduced
            },
        );
        let rho = sym_eig(&m, DEFAULT_TOL)?
            .values
            .iter()
            .fold(0.0f64, |acc, x| acc.max(x.abs()));
        report.row(
            &format!("sym_2x2x2/radius[{j}]"),
            "spectral radius of the contraction matrix",
            "0.5",
            format_real(rho),
            digits_verdict(rho, "0.5"),
        );
        let bound = radius_bound_check(&a, j, &hopm_options(g), &greedy_options(g))?;
        report.row(
            &format!("sym_2x2x2/radius-bound[{j}]"),
            "radius <= spectral * nuclear",
            "holds",
            format!("{} <= {}", format_real(bound.rho), format_real(bound.product_upper)),
            if bound.holds {
                Verdict::Reproduced
            } else {
                Verdict::NotReproduced
            },
        );
    }
    Ok(())
}

fn product_rows(g: &GlobalArgs, report: &mut ReproReport) -> Result<(), CliError> {
    let a = load("product_counterexample");
    let c = contract_product(&a, &a, ContractionPlan::new(2, 2, 2)?)?;
    for (idx, published) in PUBLISHED_PRODUCT_ENTRIES {
        let zero_based: Vec<usize> = idx.iter().map(|i| i - 1).collect();
        let value = c.get(&zero_based);
        // dense oracle over the contracted pair
        let mut oracle = 0.0;
        for s in 0..2 {
            for t in 0..2 {
                oracle += a.get(&[zero_based[0], zero_based[1], s, t]) * a.get(&[s, t, zero_based[2], zero_based[3]]);
            }
        }
        let name: String = idx.iter().map(|i| i.to_string()).collect();
        let verdict = if value == published as f64 {
            Verdict::Reproduced
        } else if value == oracle && value.fract() == 0.0 {
            Verdict::DiscrepancyDocumented
        } else {
            Verdict::NotReproduced
        };
        report.row(
            &format!("product_counterexample/entry[{name}]"),
            "self-product entry (k = p = q = 2)",
            published.to_string(),
            format_real(value),
            verdict,
        );
    }

    let opts = hopm_options(g);
    let sa = hopm(&a, &opts)?.value;
    let sc = hopm(&c, &opts)?.value;
    report.row(
        "product_counterexample/spectral",
        "spectral norm of the factor",
        "16.3609",
        like_printed(sa, "16.3609"),
        digits_verdict(sa, "16.3609"),
    );
    report.row(
        "product_counterexample/product-spectral",
        "spectral norm of the self-product",
        "271.5503",
        format!("{} (power-method lower bound)", format_real(sc)),
        if matches_printed(sc, "271.5503") {
            Verdict::Reproduced
        } else if sc >= 271.5503 - 1e-2 {
            Verdict::Bounded
        } else {
            Verdict::NotReproduced
        },
    );
    let squared = sa * sa;
    let printed_factor_squared = 16.3609f64 * 16.3609;
    report.row(
        "product_counterexample/spectral-squared",
        "square of the factor spectral norm",
        "268.6781",
        format!(
            "{} (square of printed 16.3609 is {})",
            like_printed(squared, "268.6781"),
            like_printed(printed_factor_squared, "268.6781")
        ),
        if matches_printed(squared, "268.6781") {
            Verdict::Reproduced
        } else if (squared - printed_factor_squared).abs() < 0.05 {
            Verdict::DiscrepancyDocumented
        } else {
            Verdict::NotReproduced
        },
    );
    report.row(
        "product_counterexample/violation",
        "spectral(C) > spectral(A) * spectral(B)",
        "holds",
        format!("{} > {}", format_real(sc), format_real(squared)),
        if sc > squared {
            Verdict::Reproduced
        } else {
            Verdict::NotReproduced
        },
    );
    Ok(())
}

fn power_rows(g: &GlobalArgs, report: &mut ReproReport) -> Result<(), CliError> {
    let alpha = [2.0, -1.0, 0.5];
    let cube = cubic_power(&core_fixtures::diagonal(&alpha))?;
    let expected = core_fixtures::diagonal(&alpha.map(|x: f64| x.powi(3)));
    report.row(
        "diagonal/cube",
        "cubic power of a diagonal tensor",
        "diagonal with cubed entries",
        format!("max deviation {}", format_real(cube.max_abs_diff(&expected))),
        if cube == expected {
            Verdict::Reproduced
        } else {
            Verdict::NotReproduced
        },
    );

    let nil = load("nilpotent_2x2x2");
    let cube = cubic_power(&nil)?;
    report.row(
        "nilpotent_2x2x2/cube",
        "cubic power",
        "zero tensor",
        format!("max entry {}", format_real(cube.max_abs())),
        if cube.is_zero() {
            Verdict::Reproduced
        } else {
            Verdict::NotReproduced
        },
    );
    let spectral = hopm(&nil, &hopm_options(g))?.value;
    report.row(
        "nilpotent_2x2x2/spectral",
        "spectral norm",
        "1",
        format_real(spectral),
        digits_verdict(spectral, "1"),
    );
    let class = classify(&nil, PowerMap::Cubic, 31, g.tol)?;
    report.row(
        "nilpotent_2x2x2/classification",
        "nilpotent, Gelfand limit",
        "nilpotent, 0",
        format!("nilpotent {}, {}", class.nilpotent, format_real(class.rho)),
        if class.nilpotent && class.rho == 0.0 {
            Verdict::Reproduced
        } else {
            Verdict::NotReproduced
        },
    );

    let unit = load("unit_rank_one");
    let class = classify(&unit, PowerMap::Cubic, 31, g.tol)?;
    let exact = cubic_power(&unit)? == unit;
    report.row(
        "unit_rank_one/idempotent",
        "idempotent, Gelfand limit",
        "idempotent, 1",
        format!(
            "idempotent {} (exact {exact}), {}",
            class.idempotent,
            format_real(class.rho)
        ),
        if class.idempotent && exact && (class.rho - 1.0).abs() <= 1e-12 {
            Verdict::Reproduced
        } else {
            Verdict::NotReproduced
        },
    );
    Ok(())
}

fn gelfand_rows(report: &mut ReproReport) -> Result<(), CliError> {
    let a = load("gelfand_4x3x2");
    let norms = [TraceNorm::One, TraceNorm::Frobenius, TraceNorm::Infinity];
    let opts = GelfandOptions {
        max_m: 31,
        early_stop: false,
        ..GelfandOptions::default()
    };
    let trace = gelfand_iterate(&a, PowerMap::Cubic, &norms, &opts)?;
    for (m, printed) in PUBLISHED_GELFAND_TABLE {
        let row = &trace.rows[m];
        let ok = row.r_values.iter().zip(printed).all(|(v, p)| matches_printed(*v, p));
        let computed: Vec<String> = row
            .r_values
            .iter()
            .zip(printed)
            .map(|(v, p)| like_printed(*v, p))
            .collect();
        report.row(
            &format!("gelfand_4x3x2/m{m}"),
            "one / fro / inf Gelfand terms",
            printed.join(" / "),
            computed.join(" / "),
            if ok {
                Verdict::Reproduced
            } else {
                Verdict::NotReproduced
            },
        );
    }
    let limit = trace.rows[31].r_values[1];
    report.row(
        "gelfand_4x3x2/limit",
        "Gelfand limit",
        format_real(core_fixtures::GELFAND_4X3X2_LIMIT),
        format_real(limit),
        if (limit - core_fixtures::GELFAND_4X3X2_LIMIT).abs() <= 1e-9 {
            Verdict::Reproduced
        } else {
            Verdict::NotReproduced
        },
    );
    for norm in [TraceNorm::One, TraceNorm::Frobenius] {
        let col = trace.column(norm).expect("requested column");
        let monotone = col.windows(2).all(|w| w[1] <= w[0] * (1.0 + 1e-14));
        report.row(
            &format!("gelfand_4x3x2/monotone-{}", norm.label()),
            "column is non-increasing",
            "holds",
            monotone.to_string(),
            if monotone {
                Verdict::Reproduced
            } else {
                Verdict::NotReproduced
            },
        );
    }
    Ok(())
}

/// Gelfand limits of both quintic variants on fixed random tensors.
pub fn quintic_observations(seeds: &[u64]) -> Result<Vec<(u64, f64, f64)>, CliError> {
    let opts = GelfandOptions {
        max_m: 25,
        ..GelfandOptions::default()
    };
    let mut out = Vec::new();
    for &seed in seeds {
        let t = random_tensor(&[2, 2, 2, 2, 2], seed, Distribution::StandardNormal)?;
        let rho = |v| -> Result<f64, CliError> {
            Ok(gelfand_iterate(&t, PowerMap::Quintic(v), &[TraceNorm::Frobenius], &opts)?.rho_estimate)
        };
        out.push((seed, rho(QuinticVariant::A)?, rho(QuinticVariant::B)?));
    }
    Ok(out)
}

pub fn run_repro(g: &GlobalArgs) -> Result<ReproReport, CliError> {
    let mut report = ReproReport::default();
    witness_rows(&mut report)?;
    nuclear_rows(g, &mut report)?;
    contraction_rows(g, &mut report)?;
    product_rows(g, &mut report)?;
    power_rows(g, &mut report)?;
    gelfand_rows(&mut report)?;
    for (seed, ra, rb) in quintic_observations(&[0, 1, 2, 3])? {
        let mut v = String::new();
        write!(
            v,
            "variant A {}, variant B {}, gap {}",
            format_real(ra),
            format_real(rb),
            format_real((ra - rb).abs())
        )
        .expect("writing to a String");
        report.observations.push((format!("quintic-gelfand/seed{seed}"), v));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn globals() -> GlobalArgs {
        GlobalArgs {
            seed: 0,
            tol: 1e-10,
            restarts: 32,
            max_iter: 500,
            format: Format::Text,
            no_timestamp: true,
        }
    }

    #[test]
    fn printed_digit_matching() {
        assert!(matches_printed(1.921669, "1.92167"));
        assert!(matches_printed(15.675515, "15.6755"));
        assert!(!matches_printed(15.67565, "15.6755"));
        assert!(matches_printed(0.5, "0.5"));
        assert!(!matches_printed(0.5, "0.6455"));
        assert!(matches_printed(252.0, "252"));
        assert!(!matches_printed(1.0, "x"));
    }

    #[test]
    fn oracles_agree_with_closed_forms() {
        let (_, dense) = all_ones_unit_nuclear(2);
        assert!((oracle_vector_bound(&load("sym_2x2x2"), &dense) - 0.5).abs() < 1e-15);
        let (_, dense) = all_ones_unit_nuclear(3);
        let c = oracle_matrix_contraction(&load("ones_minus_diagonal_3333"), &dense);
        assert!((c[0][0] - 8.0 / 3.0).abs() < 1e-14);
        assert!((c[0][1] - 3.0).abs() < 1e-14);
    }

    #[test]
    fn report_verdicts() {
        let report = run_repro(&globals()).unwrap();
        assert!(report.all_ok());
        let verdict = |id: &str| report.find(id).unwrap_or_else(|| panic!("{id}")).verdict;
        assert_eq!(verdict("sym_2x2x2/witness-lower"), Verdict::DiscrepancyDocumented);
        assert_eq!(
            verdict("ones_minus_diagonal_3333/witness-lower"),
            Verdict::DiscrepancyDocumented
        );
        assert_eq!(
            verdict("product_counterexample/entry[2222]"),
            Verdict::DiscrepancyDocumented
        );
        assert_eq!(verdict("product_counterexample/entry[1212]"), Verdict::Reproduced);
        assert_eq!(verdict("sym_2x2x2/nuclear"), Verdict::Bounded);
        assert_eq!(verdict("gelfand_4x3x2/m7"), Verdict::Reproduced);
        assert_eq!(verdict("gelfand_4x3x2/limit"), Verdict::Reproduced);
        assert_eq!(report.observations.len(), 4);
    }

    #[test]
    fn report_is_deterministic() {
        let render = || {
            let mut buf = Vec::new();
            run_repro(&globals()).unwrap().write(Format::Rows, &mut buf).unwrap();
            buf
        };
        assert_eq!(render(), render());
    }
}
