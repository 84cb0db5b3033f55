//! Command-line front end: reproducible validation, homology, and identity
//! suites over facial sets, bifacial grids, monoids and loops.
//!
//! Exit codes: 0 when every check passes, 1 when a mathematical identity
//! fails (the report carries a witness), 2 on malformed input or any other
//! structural error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use facial_core::bar::BarVariant;
use facial_core::cotriple::Comonad;
use facial_core::error::StructureError;
use facial_core::facial::{FacialSet, Level};
use facial_core::gen;
use facial_core::json;
use facial_core::monoid::FiniteMonoid;
use facial_core::moore::retraction_witness;
use facial_core::report::Report;
use facial_core::suites;

#[derive(Parser)]
#[command(name = "facial", version, about = "Exact engine for facial (semi-simplicial) sets")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Cell budget for constructions that can blow up.
    #[arg(long, global = true, default_value_t = 200_000)]
    budget: usize,
    /// Seed for the randomized suites.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    G,
    P,
}

impl From<VariantArg> for BarVariant {
    fn from(v: VariantArg) -> BarVariant {
        match v {
            VariantArg::G => BarVariant::G,
            VariantArg::P => BarVariant::P,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Validate the identities of a facial set (or a bifacial grid).
    Validate {
        #[arg(long)]
        input: PathBuf,
        /// Treat the input as a bifacial grid.
        #[arg(long, default_value_t = false)]
        bifacial: bool,
    },
    /// Integer homology of a truncated realization.
    Homology {
        #[arg(long, conflicts_with_all = ["bar", "lambda_x"])]
        input: Option<PathBuf>,
        /// Use the bar facial set of a named monoid.
        #[arg(long)]
        bar: Option<String>,
        #[arg(long, value_enum, default_value_t = VariantArg::G)]
        variant: VariantArg,
        /// Use the product-comonad resolution of a pointed set of this size.
        #[arg(long)]
        lambda_x: Option<usize>,
        #[arg(long, default_value_t = 2)]
        lambda_e: usize,
        /// Truncation stage.
        #[arg(long, default_value_t = 1)]
        n: usize,
        /// Collapse basepoint cells first.
        #[arg(long, default_value_t = false)]
        pointed: bool,
    },
    /// Build and validate a bar facial set of a named monoid.
    Bar {
        #[arg(long)]
        monoid: String,
        #[arg(long, value_enum, default_value_t = VariantArg::G)]
        variant: VariantArg,
        #[arg(long, default_value_t = 2)]
        n: usize,
    },
    /// Milnor stages E_n -> B_n of a finite group.
    Milnor {
        #[arg(long)]
        group: String,
        #[arg(long, default_value_t = 1)]
        n: usize,
    },
    /// Iterated join of a monoid's underlying pointed set with itself.
    Join {
        #[arg(long)]
        monoid: String,
        /// Number of join factors.
        #[arg(long, default_value_t = 2)]
        copies: usize,
    },
    /// The Hopf chain map from the join to the suspension wedge.
    Hopf {
        #[arg(long)]
        group: String,
    },
    /// Randomized appendix identity suite.
    Rectify {
        #[arg(long, default_value_t = 50)]
        count: usize,
        #[arg(long, default_value_t = 3)]
        n: usize,
    },
    /// Contracted-realization point suite.
    Points {
        #[arg(long, default_value_t = 20)]
        count: usize,
        #[arg(long, default_value_t = 3)]
        n: usize,
    },
    /// Rectified-section pipeline over bifacial grids.
    Libman {
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long, default_value_t = 20)]
        count: usize,
        #[arg(long, default_value_t = 2)]
        n: usize,
    },
    /// Compare the two iterated truncated realizations of a grid.
    BifacialCompare {
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long, default_value_t = 10)]
        count: usize,
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        p: usize,
    },
    /// The 1-truncated section lemma over random diagrams.
    Petitlibman {
        #[arg(long, default_value_t = 20)]
        count: usize,
    },
    /// Comonad laws and the truncated resolution suite.
    Cotriple {
        #[arg(long, default_value_t = 3)]
        x_max: usize,
        #[arg(long, default_value_t = 3)]
        e_max: usize,
        #[arg(long, default_value_t = 2)]
        n: usize,
    },
    /// Moore loop retraction suite.
    Moore {
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long, default_value_t = 200)]
        count: usize,
        #[arg(long, default_value_t = 2)]
        dim: usize,
    },
}

fn named_monoid(name: &str) -> Result<FiniteMonoid, StructureError> {
    FiniteMonoid::named(name).ok_or_else(|| {
        StructureError::new(format!(
            "unknown monoid `{name}` (try: trivial, z2, z3, z4, z5, klein, s3, idem2)"
        ))
    })
}

fn read(path: &PathBuf) -> Result<String, StructureError> {
    std::fs::read_to_string(path)
        .map_err(|e| StructureError::new(format!("cannot read {}: {e}", path.display())))
}

fn run(cli: &Cli) -> Result<Report, StructureError> {
    match &cli.command {
        Command::Validate { input, bifacial } => {
            let text = read(input)?;
            if *bifacial {
                let z = json::parse_bifacial(&text)?;
                let v = z.validate();
                let mut r = Report::new("validate");
                r.param("input", input.display());
                r.check(
                    "bifacial identities",
                    v.is_valid(),
                    v.violations.first().map(|w| format!("{w:?}")),
                );
                Ok(r)
            } else {
                let f = json::parse_facial(&text)?;
                let mut r = suites::validate_report(&f);
                r.param("input", input.display());
                Ok(r)
            }
        }
        Command::Homology {
            input,
            bar,
            variant,
            lambda_x,
            lambda_e,
            n,
            pointed,
        } => {
            let f: FacialSet = if let Some(path) = input {
                json::parse_facial(&read(path)?)?
            } else if let Some(name) = bar {
                facial_core::bar::bar_facial(&named_monoid(name)?, (*variant).into(), *n)?
            } else if let Some(xs) = lambda_x {
                let mk = |size: usize, tag: &str| {
                    let names: Vec<String> = (0..size)
                        .map(|i| if i == 0 { "*".into() } else { format!("{tag}{i}") })
                        .collect();
                    Level::new(names, "*").unwrap()
                };
                let t = Comonad::Product {
                    factor: mk(*lambda_e, "e"),
                };
                facial_core::cotriple::lambda_resolution(&t, &mk(*xs, "x"), *n, cli.budget)?
            } else {
                return Err(StructureError::new(
                    "homology needs --input, --bar or --lambda-x",
                ));
            };
            suites::homology_report(&f, *n, *pointed)
        }
        Command::Bar { monoid, variant, n } => {
            suites::bar_report(&named_monoid(monoid)?, (*variant).into(), *n)
        }
        Command::Milnor { group, n } => suites::milnor_report(&named_monoid(group)?, *n, cli.budget),
        Command::Join { monoid, copies } => suites::join_report(&named_monoid(monoid)?, *copies),
        Command::Hopf { group } => suites::hopf_report(&named_monoid(group)?),
        Command::Rectify { count, n } => Ok(suites::rectify_suite(cli.seed, *count, *n)),
        Command::Points { count, n } => Ok(suites::point_suite(cli.seed, *count, *n)),
        Command::Libman { input, count, n } => match input {
            Some(path) => {
                let z = json::parse_bifacial(&read(path)?)?;
                let mut r = Report::new("libman");
                r.param("input", path.display()).param("n", *n);
                let mut rng = gen::rng_from_seed(cli.seed);
                suites::run_libman_instance(&mut r, "input", &z, *n, &mut rng);
                Ok(r)
            }
            None => Ok(suites::libman_suite(cli.seed, *count, *n)),
        },
        Command::BifacialCompare { input, count, n, p } => match input {
            Some(path) => {
                let z = json::parse_bifacial(&read(path)?)?;
                let mut r = Report::new("bifacial-compare");
                r.param("input", path.display());
                let cmp = facial_core::rectify::bifacial_compare(&z, *n, *p)?;
                r.check("signed cell bijection commutes with boundaries", true, None);
                let ha = cmp.rows_then_cols.complex.homology()?;
                let hb = cmp.cols_then_rows.complex.homology()?;
                r.homology_table("rows then columns", &ha);
                r.homology_table("columns then rows", &hb);
                r.check(
                    "homology of both orders equal",
                    (0..=n + p).all(|d| ha.group(d) == hb.group(d)),
                    None,
                );
                Ok(r)
            }
            None => Ok(suites::bifacial_compare_suite(cli.seed, *count, *n, *p)),
        },
        Command::Petitlibman { count } => Ok(suites::petit_suite(cli.seed, *count)),
        Command::Cotriple { x_max, e_max, n } => {
            Ok(suites::cotriple_suite(*x_max, *e_max, *n, cli.budget))
        }
        Command::Moore { input, count, dim } => match input {
            Some(path) => {
                let l = json::parse_loop(&read(path)?)?;
                let mut r = Report::new("moore");
                r.param("input", path.display());
                let mut rng = gen::rng_from_seed(cli.seed);
                let mut ok = true;
                let mut witness = None;
                let mut times: Vec<_> = l.breakpoints().iter().map(|(t, _)| t.clone()).collect();
                for _ in 0..50 {
                    times.push(
                        gen::rand_rational_unit(&mut rng)
                            * (l.length() + num::rational::BigRational::from_integer(1.into())),
                    );
                }
                for u in &times {
                    if let Some(w) = retraction_witness(&l, u) {
                        ok = false;
                        witness.get_or_insert(w);
                    }
                }
                r.check(
                    "ev(γ(ω)(u)) = ω(u) at breakpoints and 50 random times",
                    ok,
                    witness,
                );
                Ok(r)
            }
            None => Ok(suites::moore_suite(cli.seed, *count, *dim, 12)),
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            match cli.format {
                Format::Text => print!("{}", report.render_text()),
                Format::Json => println!("{}", report.to_json()),
            }
            if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
