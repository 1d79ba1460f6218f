//! Command-line surface: compute named series, continued-fraction levels,
//! tau and representation counts, and run the identity verification suites
//! with machine-readable reports.

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_traits::One;
use std::process::ExitCode;
use sumsq_core::error::Error;
use sumsq_core::hankel::{AssocCfFamily, RegCfFamily};
use sumsq_core::identities::{self, Suite};
use sumsq_core::lambert::{self, LambertFamily, QTransform, TauMethod, ThetaKind};
use sumsq_core::oracle::{count_representations, CountKind};
use sumsq_core::qx::QX;
use sumsq_core::report::VerificationReport;
use sumsq_core::schur::{self, SchurSuite};

#[derive(Parser)]
#[command(name = "sumsq", about = "Exact q-series identity engine", version)]
struct Cli {
    /// Worker threads for suite execution (default: all cores)
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RsMethod {
    Oracle,
    Formula,
    Theta,
    Schur,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Transform {
    Plain,
    MinusQ,
    Q2,
    SqrtQ,
}

impl Transform {
    fn to_q(self) -> QTransform {
        match self {
            Transform::Plain => QTransform::Plain,
            Transform::MinusQ => QTransform::MinusQ,
            Transform::Q2 => QTransform::QSquared,
            Transform::SqrtQ => QTransform::SqrtQ,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Representation counts r_s(N)
    Rs {
        #[arg(long)]
        s: u32,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "oracle")]
        method: RsMethod,
        /// Compute by the chosen method and the oracle; nonzero exit on mismatch
        #[arg(long)]
        check: bool,
    },
    /// Verify one identity or a whole suite
    Verify {
        #[arg(long, conflicts_with = "suite")]
        id: Option<String>,
        #[arg(long)]
        suite: Option<String>,
        /// Instance parameter; suites run each parameterized identity at
        /// exactly this n
        #[arg(long, default_value = "2")]
        n: usize,
        /// Truncation order in quarter-exponent units
        #[arg(long)]
        order: Option<usize>,
        /// Truncation order in integer q-units (multiplied by 4)
        #[arg(long, conflicts_with = "order")]
        order_q: Option<usize>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Print a named series
    Series {
        #[arg(long)]
        name: String,
        /// Family index (Lambert families and Eisenstein weight)
        #[arg(long, default_value = "1")]
        s: i64,
        #[arg(long, default_value = "1")]
        power: u32,
        #[arg(long, value_enum, default_value = "plain")]
        transform: Transform,
        #[arg(long)]
        order: Option<usize>,
        #[arg(long, conflicts_with = "order")]
        order_q: Option<usize>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Closed-form continued fraction levels of an integrand family
    Cfrac {
        #[arg(long)]
        family: String,
        #[arg(long, default_value = "4")]
        levels: usize,
        /// Use the regular C-fraction shape instead of the associated one
        #[arg(long)]
        reg: bool,
    },
    /// Ramanujan tau
    Tau {
        #[arg(long)]
        n: u64,
        #[arg(long, default_value = "eta")]
        method: String,
    },
}

fn default_order() -> usize {
    std::env::var("SUMSQ_DEFAULT_ORDER")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(200)
}

fn resolve_order(order: Option<usize>, order_q: Option<usize>) -> Result<usize, Error> {
    let o = match (order, order_q) {
        (Some(o), _) => o,
        (None, Some(q)) => 4 * q,
        (None, None) => default_order(),
    };
    if o < 4 {
        return Err(Error::Domain(
            "order must be at least 4 quarter-units".into(),
        ));
    }
    Ok(o)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global();
    }
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cmd: Command) -> Result<ExitCode, Error> {
    match cmd {
        Command::Rs {
            s,
            n,
            method,
            check,
        } => {
            let value = rs_value(s, n, method)?;
            if check {
                let oracle = rs_value(s, n, RsMethod::Oracle)?;
                if value == oracle {
                    println!("{value}");
                    Ok(ExitCode::SUCCESS)
                } else {
                    eprintln!("mismatch: method gives {value}, oracle gives {oracle}");
                    Ok(ExitCode::from(1))
                }
            } else {
                println!("{value}");
                Ok(ExitCode::SUCCESS)
            }
        }
        Command::Verify {
            id,
            suite,
            n,
            order,
            order_q,
            format,
        } => {
            let order = resolve_order(order, order_q)?;
            let reports = if let Some(id) = id {
                vec![verify_any(&id, n, order)?]
            } else if let Some(name) = suite {
                run_suite(&name, n, order)?
            } else {
                return Err(Error::Domain("pass --id or --suite".into()));
            };
            let mut all_pass = true;
            for rep in &reports {
                all_pass &= rep.pass;
                match format {
                    Format::Json => println!("{}", rep.to_json()),
                    _ => {
                        print!("{rep}");
                        let note = identities::degenerate_note(&rep.id)
                            .or_else(|| schur::degenerate_note(&rep.id));
                        if let (Some(note), Some(1)) = (note, rep.n) {
                            print!("  [{note}]");
                        }
                        println!();
                    }
                }
            }
            Ok(if all_pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Series {
            name,
            s,
            power,
            transform,
            order,
            order_q,
            format,
        } => {
            let order = resolve_order(order, order_q)?;
            let series = build_series(&name, s, transform.to_q(), order)?.pow(power);
            print_series(&series, format);
            Ok(ExitCode::SUCCESS)
        }
        Command::Cfrac {
            family,
            levels,
            reg,
        } => {
            if reg {
                let fam = match family.as_str() {
                    "cn" => RegCfFamily::Cn,
                    "dn" => RegCfFamily::Dn,
                    "cd" => RegCfFamily::Cd,
                    "nd" => RegCfFamily::Nd,
                    "dc" => RegCfFamily::Dc,
                    "nc" => RegCfFamily::Nc,
                    _ => {
                        return Err(Error::Registry(format!(
                            "no regular C-fraction shape for {family}"
                        )))
                    }
                };
                for j in 1..=levels {
                    println!("gamma_{j} = {}", fam.gamma(j).display("K"));
                }
            } else {
                let fam = AssocCfFamily::parse(&family)?;
                let var = if matches!(
                    fam,
                    AssocCfFamily::GaussDn | AssocCfFamily::GaussSn | AssocCfFamily::GaussCn
                ) {
                    "k"
                } else {
                    "K"
                };
                for n in 1..=levels {
                    println!(
                        "n={n}: alpha = {}, beta = {}",
                        fam.alpha(n).display(var),
                        fam.beta(n).display(var)
                    );
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Tau { n, method } => {
            let m = TauMethod::parse(&method)?;
            println!("{}", lambert::tau(n, m)?);
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn rs_value(s: u32, n: usize, method: RsMethod) -> Result<BigInt, Error> {
    match method {
        RsMethod::Oracle => Ok(count_representations(CountKind::Squares, s, n).counts[n].clone()),
        RsMethod::Formula => {
            if ![4, 8, 16, 24].contains(&s) {
                return Err(Error::Domain(format!("no closed formula for s = {s}")));
            }
            Ok(identities::r_formula(s, n))
        }
        RsMethod::Theta => {
            let order = 4 * (n + 1);
            let series = lambert::theta3(order).pow(s);
            let c = series.coeff_q(n);
            assert!(c.denom().is_one());
            Ok(c.numer().clone())
        }
        RsMethod::Schur => Ok(schur::r_count_via_schur(s, n)?[n].clone()),
    }
}

fn verify_any(id: &str, n: usize, order: usize) -> Result<VerificationReport, Error> {
    match identities::verify_identity(id, n, order) {
        Err(Error::Registry(_)) => schur::schur_form_identity(id, n, order),
        other => other,
    }
}

fn run_suite(name: &str, n: usize, order: usize) -> Result<Vec<VerificationReport>, Error> {
    if let Ok(s) = Suite::parse(name) {
        return identities::suite_at(s, n, order);
    }
    let s = SchurSuite::parse(name)?;
    schur::schur_suite_at(s, n, order)
}

fn build_series(name: &str, s: i64, t: QTransform, order: usize) -> Result<QX, Error> {
    match name {
        "theta2" => lambert::theta(ThetaKind::Theta2, t, order),
        "theta3" => lambert::theta(ThetaKind::Theta3, t, order),
        "theta4" => lambert::theta(ThetaKind::Theta4, t, order),
        "triangle" => lambert::theta(ThetaKind::Triangle, t, order),
        "eisenstein" => {
            if t != QTransform::Plain {
                return Err(Error::Domain(
                    "transforms are not wired for this series".into(),
                ));
            }
            Ok(lambert::eisenstein(s as usize, order).series)
        }
        _ => {
            let fam = LambertFamily::parse(name)?;
            lambert::named_family(fam, s, t, order)
        }
    }
}

fn print_series(series: &QX, format: Format) {
    match format {
        Format::Json => println!("{}", series.to_json()),
        Format::Csv => {
            println!("e,v");
            for (e, c) in series.support() {
                println!("{e},{}/{}", c.numer(), c.denom());
            }
        }
        Format::Text => {
            let integer_grid = series.support().iter().all(|(e, _)| e % 4 == 0);
            if integer_grid {
                let vals: Vec<String> = (0..series.order() / 4)
                    .map(|n| {
                        let c = series.coeff_q(n);
                        if c.denom().is_one() {
                            format!("{}", c.numer())
                        } else {
                            format!("{}/{}", c.numer(), c.denom())
                        }
                    })
                    .collect();
                println!("{}", vals.join(","));
            } else {
                for (e, c) in series.support() {
                    println!("x^{e}: {}/{}", c.numer(), c.denom());
                }
            }
        }
    }
}
