//! Subcommand implementations.

use std::io::Write;
use std::path::Path;

use tnorm_core::gelfand::{gelfand_iterate, GelfandOptions, TraceNorm};
use tnorm_core::io::{format_real, format_tensor, read_tensor, write_tensor};
use tnorm_core::nucnorm::{
    nuclear_interval, nuclear_lower, nuclear_upper_greedy, radius_bound_check, GreedyOptions, LowerSearchOptions,
};
use tnorm_core::power::{PowerMap, QuinticVariant};
use tnorm_core::random::{random_tensor, Distribution};
use tnorm_core::specnorm::{hopm, HopmOptions};
use tnorm_core::{contract_product, ContractionPlan, Tensor};

use crate::suites::{run_suite, Suite};
use crate::{repro, Cli, CliError, Command, Dist, Format, GlobalArgs, NormKind};

/// Key-value report rendered as `key: value` lines or as delimited rows.
pub struct Report {
    format: Format,
    entries: Vec<(String, String)>,
}

impl Report {
    pub fn new(format: Format) -> Self {
        Report {
            format,
            entries: Vec::new(),
        }
    }

    pub fn push(&mut self, key: impl Into<String>, value: impl Into<String>) {
        self.entries.push((key.into(), value.into()));
    }

    pub fn real(&mut self, key: impl Into<String>, value: f64) {
        self.push(key, format_real(value));
    }

    pub fn write(&self, out: &mut dyn Write) -> std::io::Result<()> {
        match self.format {
            Format::Text => {
                for (k, v) in &self.entries {
                    writeln!(out, "{k}: {v}")?;
                }
            }
            Format::Rows => {
                writeln!(out, "key,value")?;
                for (k, v) in &self.entries {
                    if v.contains(',') {
                        writeln!(out, "{k},\"{v}\"")?;
                    } else {
                        writeln!(out, "{k},{v}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

pub fn interval(lower: f64, upper: f64) -> String {
    format!("[{}, {}]", format_real(lower), format_real(upper))
}

fn vector(v: &[f64]) -> String {
    let parts: Vec<String> = v.iter().map(|x| format_real(*x)).collect();
    format!("[{}]", parts.join(", "))
}

fn load(path: &Path) -> Result<Tensor, CliError> {
    read_tensor(path).map_err(|source| CliError::Input {
        path: path.to_path_buf(),
        source,
    })
}

pub fn hopm_options(g: &GlobalArgs) -> HopmOptions {
    HopmOptions {
        restarts: g.restarts,
        max_sweeps: g.max_iter,
        seed: g.seed,
        ..HopmOptions::default()
    }
}

pub fn greedy_options(g: &GlobalArgs) -> GreedyOptions {
    GreedyOptions {
        seed: g.seed,
        max_sweeps: g.max_iter,
        ..GreedyOptions::default()
    }
}

pub fn lower_options(g: &GlobalArgs) -> LowerSearchOptions {
    LowerSearchOptions {
        seed: g.seed,
        max_sweeps: g.max_iter,
        ..LowerSearchOptions::default()
    }
}

/// Resolves the power map from the input order and the variant flag.
fn power_map(a: &Tensor, variant: Option<&str>) -> Result<PowerMap, CliError> {
    match (a.order(), variant) {
        (3, None) => Ok(PowerMap::Cubic),
        (3, Some(_)) => Err(CliError::Usage("--variant applies only to order-5 input".into())),
        (5, Some(v)) => Ok(PowerMap::Quintic(v.parse::<QuinticVariant>()?)),
        (5, None) => Err(CliError::Usage("order-5 input needs --variant A or --variant B".into())),
        (n, _) => Err(CliError::Usage(format!(
            "power maps need an order-3 or order-5 tensor, got order {n} with shape {:?}",
            a.shape()
        ))),
    }
}

fn emit_tensor(t: &Tensor, comment: &str, output: Option<&Path>, out: &mut dyn Write) -> Result<(), CliError> {
    match output {
        Some(path) => {
            write_tensor(path, t, &[comment])?;
            let mut r = Report::new(Format::Text);
            r.push("wrote", path.display().to_string());
            r.push("shape", format!("{:?}", t.shape()));
            r.write(out)?;
        }
        None => out.write_all(format_tensor(t, &[comment]).as_bytes())?,
    }
    Ok(())
}

/// Runs the parsed command; `Ok(false)` signals a violation.
pub fn execute(cli: &Cli, out: &mut dyn Write) -> Result<bool, CliError> {
    let g = &cli.global;
    match &cli.command {
        Command::Norm { kinds, witnesses, file } => cmd_norm(g, kinds, *witnesses, file, out),
        Command::Product {
            a,
            b,
            k,
            p,
            q,
            output,
            verify,
        } => cmd_product(g, a, b, (*k, *p, *q), output.as_deref(), *verify, out),
        Command::Gelfand {
            file,
            norms,
            max_m,
            variant,
            no_early_stop,
            delimiter,
            output,
        } => cmd_gelfand(
            g,
            file,
            norms,
            *max_m,
            variant.as_deref(),
            !no_early_stop,
            *delimiter,
            output.as_deref(),
            out,
        ),
        Command::Power { file, variant, output } => {
            let a = load(file)?;
            let map = power_map(&a, variant.as_deref())?;
            let image = map.apply(&a)?;
            let label = match map {
                PowerMap::Cubic => "cubic power".to_string(),
                PowerMap::Quintic(v) => format!("quintic power, variant {v:?}"),
            };
            emit_tensor(&image, &label, output.as_deref(), out)?;
            Ok(true)
        }
        Command::Bounds { file, mode, max_terms } => cmd_bounds(g, file, *mode, *max_terms, out),
        Command::Gen { shape, dist, output } => {
            let dist = match dist {
                Dist::Normal => Distribution::StandardNormal,
                Dist::Uniform => Distribution::Uniform,
            };
            let t = random_tensor(shape, g.seed, dist)?;
            let label = format!("random {dist:?} tensor, seed {}", g.seed);
            emit_tensor(&t, &label, output.as_deref(), out)?;
            Ok(true)
        }
        Command::Verify { suite, trials } => cmd_verify(g, suite, *trials, out),
        Command::Repro => {
            let report = repro::run_repro(g)?;
            report.write(g.format, out)?;
            Ok(report.all_ok())
        }
    }
}

fn cmd_norm(
    g: &GlobalArgs,
    kinds: &[NormKind],
    witnesses: bool,
    file: &Path,
    out: &mut dyn Write,
) -> Result<bool, CliError> {
    let a = load(file)?;
    let mut r = Report::new(g.format);
    r.push("shape", format!("{:?}", a.shape()));
    for kind in kinds {
        match kind {
            NormKind::One => r.real("one", a.one_norm()),
            NormKind::Fro => r.real("fro", a.frobenius()),
            NormKind::Inf => r.real("inf", a.max_abs()),
            NormKind::Spectral => {
                let cert = hopm(&a, &hopm_options(g))?;
                r.real("spectral", cert.value);
                if witnesses {
                    for (i, f) in cert.witness.factors.iter().enumerate() {
                        r.push(format!("spectral.factor[{i}]"), vector(f));
                    }
                    r.push("spectral.best_restart_seed", cert.best_restart_seed.to_string());
                }
            }
            NormKind::Nuclear => {
                let iv = nuclear_interval(&a, &greedy_options(g), &lower_options(g))?;
                r.push("nuclear", interval(iv.lower, iv.upper));
                if witnesses {
                    for (i, w) in iv.lower_witness.iter().enumerate() {
                        r.push(
                            format!("nuclear.lower_witness[{i}]"),
                            format!("{}x{} {}", w.rows(), w.cols(), vector(w.data())),
                        );
                    }
                    r.push("nuclear.upper_terms", iv.upper_witness.len().to_string());
                    for (i, term) in iv.upper_witness.iter().enumerate() {
                        let factors: Vec<String> = term.factors.iter().map(|f| vector(f)).collect();
                        r.push(
                            format!("nuclear.term[{i}]"),
                            format!("{} {}", format_real(term.coefficient), factors.join(" ")),
                        );
                    }
                    r.real("nuclear.residual_norm", iv.residual_norm);
                }
            }
        }
    }
    r.write(out)?;
    Ok(true)
}

/// One inequality check on a product triple.
pub struct ProductCheck {
    pub name: &'static str,
    pub lhs: f64,
    pub rhs: f64,
    /// Whether the inequality holds for every triple, so a failure is a
    /// violation rather than an observation.
    pub guaranteed: bool,
}

impl ProductCheck {
    pub fn holds(&self, slack: f64) -> bool {
        self.lhs <= self.rhs + slack * self.rhs.abs().max(1.0)
    }
}

/// Norm inequalities for `C = A ×(k,p,q) B`. Power-method values are lower
/// bounds and greedy values upper bounds, so each guaranteed check compares
/// quantities that keep it valid.
pub fn product_checks(
    a: &Tensor,
    b: &Tensor,
    c: &Tensor,
    hopm_opts: &HopmOptions,
    greedy: &GreedyOptions,
    lower: &LowerSearchOptions,
) -> Result<Vec<ProductCheck>, CliError> {
    let ua = nuclear_upper_greedy(a, greedy)?.value;
    let ub = nuclear_upper_greedy(b, greedy)?.value;
    let lc = nuclear_lower(c, lower)?.value;
    let sa = hopm(a, hopm_opts)?.value;
    let sb = hopm(b, hopm_opts)?.value;
    let sc = hopm(c, hopm_opts)?.value;
    Ok(vec![
        ProductCheck {
            name: "nuclear",
            lhs: lc,
            rhs: ua * ub,
            guaranteed: true,
        },
        ProductCheck {
            name: "spectral-nuclear",
            lhs: sc,
            rhs: sa * ub,
            guaranteed: true,
        },
        ProductCheck {
            name: "one",
            lhs: c.one_norm(),
            rhs: a.one_norm() * b.one_norm(),
            guaranteed: true,
        },
        ProductCheck {
            name: "fro",
            lhs: c.frobenius(),
            rhs: a.frobenius() * b.frobenius(),
            guaranteed: true,
        },
        ProductCheck {
            name: "inf",
            lhs: c.max_abs(),
            rhs: a.max_abs() * b.max_abs(),
            guaranteed: false,
        },
        ProductCheck {
            name: "spectral",
            lhs: sc,
            rhs: sa * sb,
            guaranteed: false,
        },
    ])
}

fn cmd_product(
    g: &GlobalArgs,
    a_path: &Path,
    b_path: &Path,
    (k, p, q): (usize, usize, usize),
    output: Option<&Path>,
    verify: bool,
    out: &mut dyn Write,
) -> Result<bool, CliError> {
    let a = load(a_path)?;
    let b = load(b_path)?;
    let plan = ContractionPlan::new(k, p, q)?;
    let c = contract_product(&a, &b, plan)?;
    emit_tensor(&c, &format!("contraction product with k={k} p={p} q={q}"), output, out)?;
    if !verify {
        return Ok(true);
    }
    let checks = product_checks(&a, &b, &c, &hopm_options(g), &greedy_options(g), &lower_options(g))?;
    let mut ok = true;
    for check in &checks {
        let holds = check.holds(g.tol);
        let verdict = match (holds, check.guaranteed) {
            (true, _) => "holds",
            (false, true) => "VIOLATED",
            (false, false) => "fails (not a tensor norm)",
        };
        ok &= holds || !check.guaranteed;
        writeln!(
            out,
            "# check {}: {} <= {} {verdict}",
            check.name,
            format_real(check.lhs),
            format_real(check.rhs)
        )?;
    }
    Ok(ok)
}

#[allow(clippy::too_many_arguments)]
fn cmd_gelfand(
    g: &GlobalArgs,
    file: &Path,
    norms: &[String],
    max_m: usize,
    variant: Option<&str>,
    early_stop: bool,
    delimiter: char,
    output: Option<&Path>,
    out: &mut dyn Write,
) -> Result<bool, CliError> {
    let a = load(file)?;
    let map = power_map(&a, variant)?;
    let norms: Vec<TraceNorm> = norms.iter().map(|s| s.parse()).collect::<Result<_, _>>()?;
    if norms.is_empty() {
        return Err(CliError::Usage("--norms must name at least one norm".into()));
    }
    let opts = GelfandOptions {
        max_m,
        tol: g.tol,
        early_stop,
        greedy: greedy_options(g),
    };
    let trace = gelfand_iterate(&a, map, &norms, &opts)?;
    let rows = trace.to_delimited(delimiter);
    match output {
        Some(path) => std::fs::write(path, &rows)?,
        None => out.write_all(rows.as_bytes())?,
    }
    let mut r = Report::new(g.format);
    r.real("rho", trace.rho_estimate);
    r.push("classification", trace.classification.label());
    r.push("m", trace.last().m.to_string());
    r.write(out)?;
    Ok(true)
}

fn cmd_bounds(
    g: &GlobalArgs,
    file: &Path,
    mode: Option<usize>,
    max_terms: usize,
    out: &mut dyn Write,
) -> Result<bool, CliError> {
    let a = load(file)?;
    let greedy = GreedyOptions {
        max_terms,
        ..greedy_options(g)
    };
    let iv = nuclear_interval(&a, &greedy, &lower_options(g))?;
    let mut r = Report::new(g.format);
    r.push("nuclear", interval(iv.lower, iv.upper));
    r.push("nuclear.upper_terms", iv.upper_witness.len().to_string());
    r.real("nuclear.residual_norm", iv.residual_norm);
    let modes: Vec<usize> = match mode {
        Some(j) if j >= a.order() => {
            return Err(CliError::Usage(format!(
                "mode {j} out of range for an order-{} tensor (modes are zero-based)",
                a.order()
            )))
        }
        Some(j) => vec![j],
        None => (0..a.order()).collect(),
    };
    let mut ok = true;
    for j in modes {
        let rep = radius_bound_check(&a, j, &hopm_options(g), &greedy)?;
        ok &= rep.holds;
        r.real(format!("mode[{j}].rho"), rep.rho);
        r.real(format!("mode[{j}].spectral"), rep.spectral);
        r.real(format!("mode[{j}].nuclear_upper"), rep.nuclear_upper);
        r.real(format!("mode[{j}].product_upper"), rep.product_upper);
        r.push(format!("mode[{j}].holds"), rep.holds.to_string());
    }
    r.write(out)?;
    Ok(ok)
}

fn cmd_verify(g: &GlobalArgs, selected: &[Suite], trials: usize, out: &mut dyn Write) -> Result<bool, CliError> {
    let suites: Vec<Suite> = if selected.is_empty() {
        Suite::ALL.to_vec()
    } else {
        selected.to_vec()
    };
    let mut ok = true;
    let mut r = Report::new(g.format);
    for s in suites {
        let rep = run_suite(s, trials, g.seed)?;
        ok &= rep.passed();
        r.push(
            s.name(),
            format!(
                "{} (trials {}, checks {}, violations {})",
                if rep.passed() { "PASS" } else { "FAIL" },
                rep.trials,
                rep.checks,
                rep.violations.len()
            ),
        );
        for v in rep.violations.iter().take(10) {
            r.push(format!("{}.violation", s.name()), v.clone());
        }
    }
    r.write(out)?;
    Ok(ok)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rows_format_quotes_commas() {
        let mut r = Report::new(Format::Rows);
        r.push("shape", "[2, 2]");
        r.real("one", 0.5);
        let mut buf = Vec::new();
        r.write(&mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "key,value\nshape,\"[2, 2]\"\none,0.5\n"
        );
    }

    #[test]
    fn text_format() {
        let mut r = Report::new(Format::Text);
        r.push("nuclear", interval(0.5, 2.0));
        let mut buf = Vec::new();
        r.write(&mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "nuclear: [0.5, 2]\n");
    }

    #[test]
    fn power_map_resolution() {
        let cube = Tensor::zeros(&[2, 2, 2]).unwrap();
        let fifth = Tensor::zeros(&[2; 5]).unwrap();
        let matrix = Tensor::zeros(&[2, 2]).unwrap();
        assert_eq!(power_map(&cube, None).unwrap(), PowerMap::Cubic);
        assert!(matches!(power_map(&cube, Some("A")), Err(CliError::Usage(_))));
        assert_eq!(
            power_map(&fifth, Some("b")).unwrap(),
            PowerMap::Quintic(QuinticVariant::B)
        );
        assert!(matches!(power_map(&fifth, None), Err(CliError::Usage(_))));
        assert!(power_map(&fifth, Some("C")).is_err());
        assert!(matches!(power_map(&matrix, None), Err(CliError::Usage(_))));
    }

    #[test]
    fn product_checks_on_matrices() {
        let a = Tensor::new(vec![2, 2], vec![1.0, 2.0, 0.0, 1.0]).unwrap();
        let b = Tensor::new(vec![2, 2], vec![0.5, 0.0, -1.0, 3.0]).unwrap();
        let c = contract_product(&a, &b, ContractionPlan::new(1, 1, 1).unwrap()).unwrap();
        let checks = product_checks(
            &a,
            &b,
            &c,
            &HopmOptions::default(),
            &GreedyOptions::default(),
            &LowerSearchOptions::default(),
        )
        .unwrap();
        assert_eq!(checks.len(), 6);
        for check in checks.iter().filter(|c| c.guaranteed) {
            assert!(check.holds(1e-10), "{}", check.name);
        }
    }

    #[test]
    fn ones_matrix_violates_infinity_check() {
        let j = Tensor::new(vec![2, 2], vec![1.0; 4]).unwrap();
        let c = contract_product(&j, &j, ContractionPlan::new(1, 1, 1).unwrap()).unwrap();
        let checks = product_checks(
            &j,
            &j,
            &c,
            &HopmOptions::default(),
            &GreedyOptions::default(),
            &LowerSearchOptions::default(),
        )
        .unwrap();
        let inf = checks.iter().find(|c| c.name == "inf").unwrap();
        assert!(!inf.guaranteed);
        assert!(!inf.holds(1e-10));
    }
}
