//! Command-line interface over system files.
//!
//! Exit codes: 0 success, 1 usage/parse/internal error, 2 precondition
//! violation, 3 infinite Darboux family detected, 4 no first integral /
//! Prelle-Singer failure below the bound.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::mpsc;
use std::time::{Duration, Instant};

use clap::{ArgAction, Parser, Subcommand};

use darboux::darboux::{darboux_count_threshold, lagutinskii_pereira, DarbouxOutcome};
use darboux::derivation::{gen_exponential_example, Derivation};
use darboux::extactic::{extactic_curve, extactic_reduced, ExtacticCurve};
use darboux::output::{
    power_product_display, to_json, BenchOut, DarbouxOut, ExtacticOut, FirstIntegralOut,
    InverseOut, Parameters, PrelleSingerOut, ProductOut, ResultBody, ResultDocument, SystemInfo,
    VerifyInfo, SCHEMA_VERSION,
};
use darboux::parse::parse_system;
use darboux::prellesinger::{
    inverse_integrating_factor, solve_integrating_factor, solve_log_derivative,
};
use darboux::ratfirstint::{rat_first_int, verify_first_integral, FirstIntegralOutcome};

const EXIT_OK: u8 = 0;
const EXIT_ERROR: u8 = 1;
const EXIT_PRECONDITION: u8 = 2;
const EXIT_INFINITE: u8 = 3;
const EXIT_NONE_FOUND: u8 = 4;

#[derive(Parser)]
#[command(
    name = "darboux",
    version,
    about = "Darboux polynomials, rational first integrals and integrating \
             factors of planar polynomial vector fields",
    after_help = "System files contain two lines, `A = <expr>` and \
                  `B = <expr>`, with integer coefficients, explicit `*` \
                  and `^` with nonnegative integer exponents."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Emit a machine-readable JSON document instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Re-check all produced identities symbolically (default on).
    #[arg(
        long,
        global = true,
        default_value_t = true,
        action = ArgAction::Set,
        num_args = 0..=1,
        default_missing_value = "true"
    )]
    verify: bool,
    /// Abort after this many seconds.
    #[arg(long, global = true)]
    timeout: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Print the extactic curve E_N(D) (or E_{N,0} with --reduced),
    /// its size, and the two proven bounds.
    Extactic {
        file: PathBuf,
        /// Basis degree bound N.
        #[arg(long)]
        n: u32,
        /// Use the constant-free basis (needs N >= 1).
        #[arg(long)]
        reduced: bool,
    },
    /// All irreducible Darboux polynomials of degree <= N with
    /// cofactors, or the infinite-family report (exit 3).
    Darboux {
        file: PathBuf,
        #[arg(long = "max-degree")]
        max_degree: u32,
    },
    /// Decide and construct a rational first integral of degree <= N
    /// (exit 4 when none exists).
    FirstIntegral {
        file: PathBuf,
        #[arg(long = "max-degree")]
        max_degree: u32,
    },
    /// Run the Prelle-Singer loop for n = 1..N: first integral from
    /// cofactor relations, else integrating factor, else failure
    /// (exit 4).
    IntegratingFactor {
        file: PathBuf,
        #[arg(long = "max-degree")]
        max_degree: u32,
    },
    /// Basis of polynomial inverse integrating factors of degree <= N.
    InverseIntegratingFactor {
        file: PathBuf,
        #[arg(long)]
        degree: u32,
    },
    /// Built-in example families.
    Bench {
        #[command(subcommand)]
        which: BenchCommand,
    },
}

#[derive(Subcommand)]
enum BenchCommand {
    /// The Hamiltonian family of F = Y (X+1)...(X+d-1) + X, which has
    /// d-1 linear Darboux polynomials and 2^(d-1)+1 Darboux polynomials
    /// of degree <= d in total.
    Exponential {
        /// Family parameter (>= 2).
        #[arg(long)]
        d: u32,
        /// Write the system file here.
        #[arg(long)]
        emit: Option<PathBuf>,
        /// Also run the Darboux computation on the generated system.
        #[arg(long)]
        run: bool,
        #[arg(long = "max-degree", default_value_t = 1)]
        max_degree: u32,
    },
}

fn main() -> ExitCode {
    if let Ok(t) = std::env::var("THREADS") {
        if let Ok(n) = t.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_ERROR,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let timeout = cli.timeout;
    match timeout {
        None => ExitCode::from(run(cli)),
        Some(secs) => {
            let (tx, rx) = mpsc::channel();
            std::thread::spawn(move || {
                let _ = tx.send(run(cli));
            });
            match rx.recv_timeout(Duration::from_secs(secs)) {
                Ok(code) => ExitCode::from(code),
                Err(_) => {
                    eprintln!("error: timeout after {secs} s");
                    ExitCode::from(EXIT_ERROR)
                }
            }
        }
    }
}

fn run(cli: Cli) -> u8 {
    let started = Instant::now();
    let outcome = dispatch(&cli);
    match outcome {
        Ok(mut out) => {
            out.doc.timing_ms = started.elapsed().as_millis();
            if cli.json {
                println!("{}", to_json(&out.doc));
            } else {
                for line in &out.text {
                    println!("{line}");
                }
            }
            out.code
        }
        Err(CliError { message, code }) => {
            eprintln!("error: {message}");
            code
        }
    }
}

struct CommandOutput {
    text: Vec<String>,
    doc: ResultDocument,
    code: u8,
}

struct CliError {
    message: String,
    code: u8,
}

impl From<darboux::Error> for CliError {
    fn from(e: darboux::Error) -> Self {
        let code = match &e {
            darboux::Error::InvalidParameter(_) => EXIT_PRECONDITION,
            _ => EXIT_ERROR,
        };
        CliError {
            message: e.to_string(),
            code,
        }
    }
}

fn precondition(message: impl Into<String>) -> CliError {
    CliError {
        message: message.into(),
        code: EXIT_PRECONDITION,
    }
}

fn load_system(path: &Path) -> Result<(Derivation, SystemInfo), CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError {
        message: format!("cannot read {}: {e}", path.display()),
        code: EXIT_ERROR,
    })?;
    let parsed = parse_system(&text)?;
    if let Some(g) = &parsed.removed_common_factor {
        eprintln!(
            "warning: A and B had the common factor {}; the reduced system is used",
            g.to_canonical_string()
        );
    }
    let info = SystemInfo::new(&parsed.derivation, parsed.removed_common_factor.as_ref());
    Ok((parsed.derivation, info))
}

fn base_doc(command: &str, input: SystemInfo, parameters: Parameters, verify: bool) -> ResultDocument {
    ResultDocument {
        schema_version: SCHEMA_VERSION,
        command: command.to_string(),
        input,
        parameters,
        result: ResultBody::default(),
        verify: VerifyInfo {
            enabled: verify,
            passed: None,
        },
        timing_ms: 0,
    }
}

fn dispatch(cli: &Cli) -> Result<CommandOutput, CliError> {
    match &cli.command {
        Command::Extactic { file, n, reduced } => cmd_extactic(file, *n, *reduced, cli.verify),
        Command::Darboux { file, max_degree } => cmd_darboux(file, *max_degree, cli.verify),
        Command::FirstIntegral { file, max_degree } => {
            cmd_first_integral(file, *max_degree, cli.verify)
        }
        Command::IntegratingFactor { file, max_degree } => {
            cmd_integrating_factor(file, *max_degree, cli.verify)
        }
        Command::InverseIntegratingFactor { file, degree } => {
            cmd_inverse(file, *degree, cli.verify)
        }
        Command::Bench { which } => match which {
            BenchCommand::Exponential {
                d,
                emit,
                run,
                max_degree,
            } => cmd_bench_exponential(*d, emit.as_deref(), *run, *max_degree, cli.verify),
        },
    }
}

fn curve_label(c: &ExtacticCurve) -> String {
    if c.reduced {
        format!("E_{{{},0}}", c.n)
    } else {
        format!("E_{}", c.n)
    }
}

fn cmd_extactic(
    file: &Path,
    n: u32,
    reduced: bool,
    verify: bool,
) -> Result<CommandOutput, CliError> {
    if reduced && n < 1 {
        return Err(precondition("--reduced needs --n >= 1"));
    }
    let (d, info) = load_system(file)?;
    let curve = if reduced {
        extactic_reduced(&d, n)?
    } else {
        extactic_curve(&d, n)
    };
    let mut doc = base_doc(
        "extactic",
        info,
        Parameters {
            n: Some(n),
            reduced: Some(reduced),
            ..Default::default()
        },
        verify,
    );
    let passed = if verify {
        Some(curve.satisfies_bounds())
    } else {
        None
    };
    doc.verify.passed = passed;
    doc.result.extactic = Some(ExtacticOut::new(&curve));
    let text = if curve.is_zero() {
        vec![format!("{} = 0 (identically zero)", curve_label(&curve))]
    } else {
        vec![format!(
            "{} = {}, deg {} <= bound {}, height {} <= bound {}",
            curve_label(&curve),
            curve.poly.to_canonical_string(),
            curve.poly.total_degree().unwrap(),
            curve.degree_bound,
            curve.poly.height(),
            curve.height_bound
        )]
    };
    if passed == Some(false) {
        return Err(CliError {
            message: "verification failed: curve exceeds a proven bound".into(),
            code: EXIT_ERROR,
        });
    }
    Ok(CommandOutput {
        text,
        doc,
        code: EXIT_OK,
    })
}

fn cmd_darboux(file: &Path, max_degree: u32, verify: bool) -> Result<CommandOutput, CliError> {
    if max_degree < 1 {
        return Err(precondition("--max-degree must be >= 1"));
    }
    let (d, info) = load_system(file)?;
    let report = lagutinskii_pereira(&d, max_degree)?;
    let threshold = darboux_count_threshold(d.degree().max(1));
    let mut doc = base_doc(
        "darboux",
        info,
        Parameters {
            max_degree: Some(max_degree),
            ..Default::default()
        },
        verify,
    );
    if verify {
        let ok = report.certificates().iter().all(|c| c.verify(&d));
        doc.verify.passed = Some(ok);
        if !ok {
            return Err(CliError {
                message: "verification failed: a certificate identity does not hold".into(),
                code: EXIT_ERROR,
            });
        }
    }
    doc.result.darboux = Some(DarbouxOut::new(&report, threshold));
    let mut text = Vec::new();
    let code = match &report.outcome {
        DarbouxOutcome::InfiniteFamily {
            minimal_null_degree,
        } => {
            text.push(format!(
                "E_{}(D) = 0: there exists an infinite number of irreducible \
                 Darboux polynomials",
                max_degree
            ));
            if let Some(m) = minimal_null_degree {
                text.push(format!(
                    "minimal vanishing degree {m}: a rational first integral of \
                     exact degree {m} exists (see first-integral)"
                ));
            }
            EXIT_INFINITE
        }
        DarbouxOutcome::Finite(certs) => {
            text.push(format!(
                "{} irreducible Darboux polynomial(s) of degree <= {max_degree}",
                certs.len()
            ));
            for c in certs {
                text.push(format!(
                    "  f = {}, cofactor = {}, multiplicity in E_N = {}, absolutely irreducible: {}",
                    c.poly.to_canonical_string(),
                    c.cofactor.to_canonical_string(),
                    c.extactic_multiplicity,
                    match c.absolutely_irreducible {
                        darboux::AbsoluteIrreducibility::Yes => "yes",
                        darboux::AbsoluteIrreducibility::No => "no",
                        darboux::AbsoluteIrreducibility::Unknown => "unknown",
                    }
                ));
            }
            for (f, m) in &report.discarded_factors {
                text.push(format!(
                    "  (factor of E_N above the degree bound, untested: {} ^ {m})",
                    f.to_canonical_string()
                ));
            }
            if report.implies_rational_first_integral {
                text.push(format!(
                    "count reaches the Darboux threshold {threshold}: a rational \
                     first integral exists"
                ));
            }
            EXIT_OK
        }
    };
    Ok(CommandOutput { text, doc, code })
}

fn cmd_first_integral(
    file: &Path,
    max_degree: u32,
    verify: bool,
) -> Result<CommandOutput, CliError> {
    if max_degree < 1 {
        return Err(precondition("--max-degree must be >= 1"));
    }
    let (d, info) = load_system(file)?;
    let outcome = rat_first_int(&d, max_degree)?;
    let mut doc = base_doc(
        "first-integral",
        info,
        Parameters {
            max_degree: Some(max_degree),
            ..Default::default()
        },
        verify,
    );
    let (text, code) = match &outcome {
        FirstIntegralOutcome::Found(fi) => {
            if verify {
                let ok = verify_first_integral(&d, &fi.p, &fi.q)?;
                doc.verify.passed = Some(ok);
                if !ok {
                    return Err(CliError {
                        message: "verification failed: q D(p) - p D(q) != 0".into(),
                        code: EXIT_ERROR,
                    });
                }
            }
            doc.result.first_integral = Some(FirstIntegralOut::found(fi));
            (
                vec![
                    format!("rational first integral of exact degree {}", fi.degree),
                    format!("  p = {}", fi.p.to_canonical_string()),
                    format!("  q = {}", fi.q.to_canonical_string()),
                    format!(
                        "  shift ({}, {}), {} while-loop pass(es)",
                        fi.shift_used.0, fi.shift_used.1, fi.iterations
                    ),
                ],
                EXIT_OK,
            )
        }
        FirstIntegralOutcome::NoneBelow(n) => {
            doc.result.first_integral = Some(FirstIntegralOut::none_below(*n));
            if verify {
                doc.verify.passed = Some(true);
            }
            (
                vec![format!(
                    "there exists no rational first integral with degree smaller than {n}"
                )],
                EXIT_NONE_FOUND,
            )
        }
    };
    Ok(CommandOutput { text, doc, code })
}

fn cmd_integrating_factor(
    file: &Path,
    max_degree: u32,
    verify: bool,
) -> Result<CommandOutput, CliError> {
    if max_degree < 1 {
        return Err(precondition("--max-degree must be >= 1"));
    }
    let (d, info) = load_system(file)?;
    let mut doc = base_doc(
        "integrating-factor",
        info,
        Parameters {
            max_degree: Some(max_degree),
            ..Default::default()
        },
        verify,
    );
    let mut text = Vec::new();
    for n in 1..=max_degree {
        let report = lagutinskii_pereira(&d, n)?;
        if report.is_infinite() {
            // a rational first integral exists; construct it directly
            match rat_first_int(&d, n)? {
                FirstIntegralOutcome::Found(fi) => {
                    if verify {
                        let ok = verify_first_integral(&d, &fi.p, &fi.q)?;
                        doc.verify.passed = Some(ok);
                        if !ok {
                            return Err(CliError {
                                message: "verification failed: first integral identity".into(),
                                code: EXIT_ERROR,
                            });
                        }
                    }
                    text.push(format!(
                        "degree {n}: rational first integral ({}) / ({})",
                        fi.p.to_canonical_string(),
                        fi.q.to_canonical_string()
                    ));
                    doc.result.prelle_singer = Some(PrelleSingerOut {
                        outcome: "rational_first_integral".into(),
                        degree_reached: n,
                        product: None,
                        rational_first_integral: Some(FirstIntegralOut::found(&fi)),
                    });
                    return Ok(CommandOutput {
                        text,
                        doc,
                        code: EXIT_OK,
                    });
                }
                FirstIntegralOutcome::NoneBelow(_) => unreachable!(
                    "vanishing extactic curve guarantees a first integral"
                ),
            }
        }
        let certs = report.certificates().to_vec();
        if let Some(product) = solve_log_derivative(&d, &certs) {
            if verify {
                doc.verify.passed = Some(product.verify(&d));
            }
            text.push(format!(
                "degree {n}: first integral {}",
                power_product_display(&product)
            ));
            doc.result.prelle_singer = Some(PrelleSingerOut {
                outcome: "first_integral".into(),
                degree_reached: n,
                product: Some(ProductOut::new(&product)),
                rational_first_integral: None,
            });
            return Ok(CommandOutput {
                text,
                doc,
                code: EXIT_OK,
            });
        }
        if let Some(product) = solve_integrating_factor(&d, &certs)? {
            if verify {
                doc.verify.passed = Some(product.verify(&d));
            }
            text.push(format!(
                "degree {n}: integrating factor {}",
                power_product_display(&product)
            ));
            text.push(
                "a first integral follows by the standard quadrature of the \
                 integrating factor"
                    .to_string(),
            );
            doc.result.prelle_singer = Some(PrelleSingerOut {
                outcome: "integrating_factor".into(),
                degree_reached: n,
                product: Some(ProductOut::new(&product)),
                rational_first_integral: None,
            });
            return Ok(CommandOutput {
                text,
                doc,
                code: EXIT_OK,
            });
        }
        text.push(format!("degree {n}: no relation found"));
    }
    text.push("failure".to_string());
    doc.result.prelle_singer = Some(PrelleSingerOut {
        outcome: "failure".into(),
        degree_reached: max_degree,
        product: None,
        rational_first_integral: None,
    });
    if verify {
        doc.verify.passed = Some(true);
    }
    Ok(CommandOutput {
        text,
        doc,
        code: EXIT_NONE_FOUND,
    })
}

fn cmd_inverse(file: &Path, degree: u32, verify: bool) -> Result<CommandOutput, CliError> {
    let (d, info) = load_system(file)?;
    let basis = inverse_integrating_factor(&d, degree)?;
    let mut doc = base_doc(
        "inverse-integrating-factor",
        info,
        Parameters {
            degree: Some(degree),
            ..Default::default()
        },
        verify,
    );
    if verify {
        let ok = basis.iter().all(|r| {
            (&(&(d.a() * &r.partial_x()) + &(d.b() * &r.partial_y())) - &(&d.divergence() * r))
                .is_zero()
        });
        doc.verify.passed = Some(ok);
        if !ok {
            return Err(CliError {
                message: "verification failed: inverse integrating factor identity".into(),
                code: EXIT_ERROR,
            });
        }
    }
    doc.result.inverse_integrating_factor = Some(InverseOut {
        basis: basis.iter().map(|b| b.to_canonical_string()).collect(),
        dimension: basis.len(),
    });
    let mut text = vec![format!(
        "inverse integrating factors of degree <= {degree}: dimension {}",
        basis.len()
    )];
    for b in &basis {
        text.push(format!("  R = {}", b.to_canonical_string()));
    }
    Ok(CommandOutput {
        text,
        doc,
        code: EXIT_OK,
    })
}

fn cmd_bench_exponential(
    dpar: u32,
    emit: Option<&Path>,
    run: bool,
    max_degree: u32,
    verify: bool,
) -> Result<CommandOutput, CliError> {
    if dpar < 2 {
        return Err(precondition("bench exponential needs --d >= 2"));
    }
    let deriv = gen_exponential_example(dpar)?;
    let system_text = format!(
        "A = {}\nB = {}\n",
        deriv.a().to_canonical_string(),
        deriv.b().to_canonical_string()
    );
    let mut text = vec![format!(
        "exponential family d = {dpar}: F = Y*(X+1)*...*(X+{}) + X",
        dpar - 1
    )];
    text.push(system_text.trim_end().to_string());
    let mut emitted_to = None;
    if let Some(path) = emit {
        std::fs::write(path, &system_text).map_err(|e| CliError {
            message: format!("cannot write {}: {e}", path.display()),
            code: EXIT_ERROR,
        })?;
        emitted_to = Some(path.display().to_string());
        text.push(format!("written to {}", path.display()));
    }
    let info = SystemInfo::new(&deriv, None);
    let mut doc = base_doc(
        "bench-exponential",
        info,
        Parameters {
            d: Some(dpar),
            max_degree: run.then_some(max_degree),
            ..Default::default()
        },
        verify,
    );
    let mut code = EXIT_OK;
    let mut darboux_out = None;
    if run {
        if max_degree < 1 {
            return Err(precondition("--max-degree must be >= 1"));
        }
        let report = lagutinskii_pereira(&deriv, max_degree)?;
        if verify {
            doc.verify.passed = Some(report.certificates().iter().all(|c| c.verify(&deriv)));
        }
        let threshold = darboux_count_threshold(deriv.degree().max(1));
        text.push(format!(
            "darboux run at max degree {max_degree}: {} certificate(s)",
            report.certificates().len()
        ));
        for c in report.certificates() {
            text.push(format!(
                "  f = {}, cofactor = {}",
                c.poly.to_canonical_string(),
                c.cofactor.to_canonical_string()
            ));
        }
        if report.is_infinite() {
            code = EXIT_INFINITE;
        }
        darboux_out = Some(DarbouxOut::new(&report, threshold));
    }
    doc.result.bench = Some(BenchOut {
        d: dpar,
        system: system_text,
        emitted_to,
        darboux: darboux_out,
    });
    Ok(CommandOutput { text, doc, code })
}
