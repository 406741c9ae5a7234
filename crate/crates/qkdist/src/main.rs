//! Command-line interface: root-system data, Weyl group listings,
//! distances between opposite Schubert varieties, the pairings they
//! determine, and consistency checks for multiplication tables.
//!
//! Exit status: 0 on success, 1 when a verification check or oracle
//! comparison fails, 2 on malformed input or usage errors.

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use qkdist::{
    mobius_coefficients, run_checks, CartanType, CheckKind, Degree, Error, FlagVariety, Parabolic,
    QkTable, Report, Result, RootSystem, WeylGroup,
};

#[derive(Parser)]
#[command(
    name = "qkdist",
    version,
    about = "Distances between opposite Schubert varieties and quantum K-theory table checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the positive roots and their coroots, one pair per line.
    Roots {
        /// Cartan type, e.g. A3, B2, G2.
        cartan_type: String,
    },
    /// List the Weyl group, or the minimal coset representatives modulo
    /// a parabolic subgroup, as canonical reduced words.
    Weyl {
        /// Cartan type, e.g. A3, B2, G2.
        cartan_type: String,
        /// Simple roots generating the parabolic (1-based, comma-separated).
        #[arg(long, value_delimiter = ',')]
        parabolic: Vec<usize>,
    },
    /// The minimal degree of a chain of rational curves joining the
    /// opposite Schubert variety of u to the Schubert variety of v.
    Dist {
        /// Cartan type, e.g. A3, B2, G2.
        cartan_type: String,
        /// Source coset: a reduced word like 1,2,1 or e for the identity.
        u: String,
        /// Target coset.
        v: String,
        /// Simple roots generating the parabolic (1-based, comma-separated).
        #[arg(long, value_delimiter = ',')]
        parabolic: Vec<usize>,
        /// Cross-check against the Pareto-minimal degree search.
        #[arg(long)]
        oracle: bool,
    },
    /// Distances for every ordered pair of cosets, as TSV.
    DistTable {
        /// Cartan type, e.g. A3, B2, G2.
        cartan_type: String,
        /// Simple roots generating the parabolic (1-based, comma-separated).
        #[arg(long, value_delimiter = ',')]
        parabolic: Vec<usize>,
        /// Cross-check every entry against the Pareto-minimal search.
        #[arg(long)]
        oracle: bool,
    },
    /// The two-point K-theoretic Gromov-Witten invariant of (O^u, O_v)
    /// in a fixed degree: prints 1 or 0.
    Gw2 {
        /// Cartan type, e.g. A3, B2, G2.
        cartan_type: String,
        u: String,
        v: String,
        /// Degree components, comma-separated, one per quantum parameter.
        degree: String,
        /// Simple roots generating the parabolic (1-based, comma-separated).
        #[arg(long, value_delimiter = ',')]
        parabolic: Vec<usize>,
    },
    /// The quantum K-metric pairing of (O^u, O_v): a closed form, or a
    /// coefficient table up to a cap.
    Metric {
        /// Cartan type, e.g. A3, B2, G2.
        cartan_type: String,
        u: String,
        v: String,
        /// Simple roots generating the parabolic (1-based, comma-separated).
        #[arg(long, value_delimiter = ',')]
        parabolic: Vec<usize>,
        /// Expand the series and print all coefficients up to this
        /// componentwise cap (comma-separated).
        #[arg(long)]
        cap: Option<String>,
    },
    /// Expand the class dual to a Schubert basis element over the
    /// opposite basis, as TSV rows `coset<TAB>coefficient`.
    Mobius {
        /// Cartan type, e.g. A3, B2, G2.
        cartan_type: String,
        v: String,
        /// Simple roots generating the parabolic (1-based, comma-separated).
        #[arg(long, value_delimiter = ',')]
        parabolic: Vec<usize>,
    },
    /// Check a multiplication table against the distance function.
    Verify {
        /// Path to the table file.
        file: std::path::PathBuf,
        /// Which family of checks to run.
        #[arg(long, value_enum, default_value = "all")]
        check: CheckSelection,
        /// Print one line per check per pair instead of only counts.
        #[arg(long)]
        verbose: bool,
        /// Report format.
        #[arg(long, value_enum, default_value = "text")]
        format: OutputFormat,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum CheckSelection {
    Euler,
    Sumcoef,
    Ringhom,
    All,
}

impl CheckSelection {
    fn kinds(self) -> Vec<CheckKind> {
        match self {
            CheckSelection::Euler => vec![CheckKind::Euler],
            CheckSelection::Sumcoef => vec![CheckKind::SumcoefTotal, CheckKind::SumcoefPerDegree],
            CheckSelection::Ringhom => vec![CheckKind::RingHom],
            CheckSelection::All => CheckKind::ALL.to_vec(),
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
}

fn main() -> ExitCode {
    // Die silently when the reader closes the pipe (`qkdist ... | head`)
    // instead of panicking mid-print, like other line-oriented tools.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    match run() {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn build_group(label: &str) -> Result<WeylGroup> {
    Ok(WeylGroup::new(RootSystem::new(CartanType::parse(label)?)))
}

/// Convert 1-based simple-root indices from the command line.
fn build_parabolic(indices: &[usize], rank: usize) -> Result<Parabolic> {
    let mut zero_based = Vec::with_capacity(indices.len());
    for &i in indices {
        if i == 0 || i > rank {
            return Err(Error::IndexOutOfRange { index: i, rank });
        }
        zero_based.push(i - 1);
    }
    Parabolic::new(zero_based, rank)
}

fn parse_degree(variety: &FlagVariety<'_>, text: &str) -> Result<Degree> {
    let components: Vec<u64> = if text.is_empty() {
        Vec::new()
    } else {
        text.split(',')
            .map(|part| {
                part.trim().parse::<u64>().map_err(|_| Error::InvalidWord {
                    word: text.to_string(),
                    reason: format!("degree component `{part}` is not a nonnegative integer"),
                })
            })
            .collect::<Result<_>>()?
    };
    variety.degree_from_components(&components)
}

fn run() -> Result<ExitCode> {
    let cli = Cli::parse();
    match cli.command {
        Command::Roots { cartan_type } => {
            let group = build_group(&cartan_type)?;
            let system = group.root_system();
            for root in system.positive_roots() {
                let coroot = system.coroot(root)?;
                let row: Vec<String> = root
                    .0
                    .iter()
                    .chain(&coroot.0)
                    .map(|c| c.to_string())
                    .collect();
                println!("{}", row.join("\t"));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Weyl {
            cartan_type,
            parabolic,
        } => {
            let group = build_group(&cartan_type)?;
            let p = build_parabolic(&parabolic, group.rank())?;
            for w in group.minimal_representatives(&p) {
                println!("{}", group.format_word(&w));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Dist {
            cartan_type,
            u,
            v,
            parabolic,
            oracle,
        } => {
            let group = build_group(&cartan_type)?;
            let p = build_parabolic(&parabolic, group.rank())?;
            let x = FlagVariety::new(&group, p)?;
            let u = group.parse_word(&u)?;
            let v = group.parse_word(&v)?;
            let d = x.distance(&u, &v)?;
            println!("{d}");
            if oracle {
                let frontier = x.pareto_minimal_degrees(&u, &v)?;
                if frontier != vec![d.clone()] {
                    eprintln!(
                        "oracle mismatch: search returned {:?}, formula returned {d}",
                        frontier.iter().map(Degree::to_string).collect::<Vec<_>>()
                    );
                    return Ok(ExitCode::from(1));
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::DistTable {
            cartan_type,
            parabolic,
            oracle,
        } => {
            let group = build_group(&cartan_type)?;
            let p = build_parabolic(&parabolic, group.rank())?;
            let x = FlagVariety::new(&group, p)?;
            let mut mismatches = 0usize;
            for u in x.basis() {
                for v in x.basis() {
                    let d = x.distance(u, v)?;
                    println!("{}\t{}\t{}", group.format_word(u), group.format_word(v), d);
                    if oracle && x.pareto_minimal_degrees(u, v)? != vec![d] {
                        mismatches += 1;
                        eprintln!(
                            "oracle mismatch at ({}, {})",
                            group.format_word(u),
                            group.format_word(v)
                        );
                    }
                }
            }
            Ok(ExitCode::from(u8::from(mismatches > 0)))
        }
        Command::Gw2 {
            cartan_type,
            u,
            v,
            degree,
            parabolic,
        } => {
            let group = build_group(&cartan_type)?;
            let p = build_parabolic(&parabolic, group.rank())?;
            let x = FlagVariety::new(&group, p)?;
            let u = group.parse_word(&u)?;
            let v = group.parse_word(&v)?;
            let d = parse_degree(&x, &degree)?;
            println!("{}", x.two_point_invariant(&u, &v, &d)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Metric {
            cartan_type,
            u,
            v,
            parabolic,
            cap,
        } => {
            let group = build_group(&cartan_type)?;
            let p = build_parabolic(&parabolic, group.rank())?;
            let x = FlagVariety::new(&group, p)?;
            let u = group.parse_word(&u)?;
            let v = group.parse_word(&v)?;
            match cap {
                None => println!("{}", x.metric(&u, &v)?),
                Some(cap) => {
                    let cap = parse_degree(&x, &cap)?;
                    let series = x.metric_truncated(&u, &v, &cap)?;
                    for d in qkdist::degrees_up_to(&cap) {
                        let c = series.coefficient(&d).unwrap_or(0);
                        println!("{d}\t{c}");
                    }
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Mobius {
            cartan_type,
            v,
            parabolic,
        } => {
            let group = build_group(&cartan_type)?;
            let p = build_parabolic(&parabolic, group.rank())?;
            let x = FlagVariety::new(&group, p)?;
            let v = group.parse_word(&v)?;
            let f = mobius_coefficients(&x, &v)?;
            for z in x.basis() {
                if let Some(c) = f.get(z) {
                    println!("{}\t{}", group.format_word(z), c);
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            file,
            check,
            verbose,
            format,
        } => {
            let text = std::fs::read_to_string(&file)?;
            let (cartan_type, p) = qkdist::read_header(&text)?;
            let group = WeylGroup::new(RootSystem::new(cartan_type));
            let x = FlagVariety::new(&group, p)?;
            let table = QkTable::parse(&text, &x)?;
            let report = run_checks(&table, &x, &check.kinds())?;
            print_report(&report, verbose, format);
            Ok(ExitCode::from(u8::from(!report.passed())))
        }
    }
}

fn print_report(report: &Report, verbose: bool, format: OutputFormat) {
    match format {
        OutputFormat::Json => {
            let records: Vec<serde_json::Value> = report
                .records()
                .iter()
                .map(|r| {
                    serde_json::json!({
                        "check": r.check.name(),
                        "u": r.u,
                        "v": r.v,
                        "expected": r.expected,
                        "actual": r.actual,
                        "pass": r.pass,
                    })
                })
                .collect();
            let doc = serde_json::json!({
                "summary": {
                    "total": report.total(),
                    "passed": report.total() - report.failed(),
                    "failed": report.failed(),
                },
                "records": records,
            });
            println!("{doc:#}");
        }
        OutputFormat::Text => {
            if verbose {
                for r in report.records() {
                    println!(
                        "{}\t{}\t{}\t{}\t{}\t{}",
                        r.check,
                        r.u,
                        r.v,
                        r.expected,
                        r.actual,
                        if r.pass { "pass" } else { "fail" }
                    );
                }
            }
            println!("total\t{}", report.total());
            println!("passed\t{}", report.total() - report.failed());
            println!("failed\t{}", report.failed());
        }
    }
}
