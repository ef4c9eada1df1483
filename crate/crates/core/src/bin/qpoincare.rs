use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map};

use affine_poincare::error::Error;
use affine_poincare::orbit::{self, NODE_BUDGET_ENV};
use affine_poincare::output::{self, OutputDocument};
use affine_poincare::qseries::{bott_affine_poincare, eta_quotient_series, simply_laced_product};
use affine_poincare::verify::{verify_algebra, verify_all, VerifyOptions};
use affine_poincare::{AffineAlgebra, AlgebraId, BottConvention, HveeInterp, ProductConvention};

const EXIT_VERIFY: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_BUDGET: u8 = 3;
const EXIT_MISMATCH: u8 = 4;

#[derive(Parser)]
#[command(
    name = "qpoincare",
    version,
    about = "Depth-graded Weyl orbit counts of affine algebras"
)]
struct Cli {
    /// Human-readable rendering instead of JSON.
    #[arg(long, global = true)]
    pretty: bool,

    /// Instantiation of h^vee in twisted rows [default: affine; verify searches].
    #[arg(long, global = true, value_enum)]
    hvee_interp: Option<Interp>,

    #[arg(long, global = true, value_enum, default_value_t = BottConv::Degrees)]
    bott_convention: BottConv,

    #[arg(long, global = true, value_enum, default_value_t = ProductConv::Exponents)]
    product_convention: ProductConv,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Supported algebras with their table data.
    List {
        #[arg(long)]
        twist: Option<u8>,
        #[arg(long, default_value_t = 8)]
        max_rank: u32,
    },
    /// Expand a series from one of the closed forms.
    Qseries {
        algebra: String,
        #[arg(long, value_enum, default_value_t = Source::Eta)]
        source: Source,
        #[arg(short = 'T', long)]
        truncation: usize,
    },
    /// Depth census of the Weyl vector orbit.
    Orbit {
        algebra: String,
        #[arg(short = 'M', long)]
        max_depth: usize,
        #[arg(long, value_enum, default_value_t = Method::Permw)]
        method: Method,
        #[arg(long, env = NODE_BUDGET_ENV, default_value_t = orbit::DEFAULT_NODE_BUDGET)]
        node_budget: u128,
    },
    /// Permutation weights, optionally with reflection words.
    Permw {
        algebra: String,
        #[arg(short = 'M', long)]
        max_depth: usize,
        #[arg(long)]
        words: bool,
    },
    /// Run every cross-check.
    Verify {
        algebra: Option<String>,
        #[arg(long, conflicts_with = "algebra")]
        all: bool,
        #[arg(long, default_value_t = 8)]
        max_rank: u32,
        #[arg(short = 'M', long, default_value_t = 10)]
        max_depth: usize,
        #[arg(long, env = NODE_BUDGET_ENV, default_value_t = orbit::DEFAULT_NODE_BUDGET)]
        node_budget: u128,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Source {
    Eta,
    Product,
    Bott,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum Method {
    Bfs,
    Permw,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum Interp {
    Affine,
    HorizontalDual,
    Horizontal,
}

#[derive(Clone, Copy, ValueEnum)]
enum BottConv {
    Degrees,
    Exponents,
}

#[derive(Clone, Copy, ValueEnum)]
enum ProductConv {
    Exponents,
    Degrees,
}

impl From<Interp> for HveeInterp {
    fn from(i: Interp) -> Self {
        match i {
            Interp::Affine => HveeInterp::Affine,
            Interp::HorizontalDual => HveeInterp::HorizontalDual,
            Interp::Horizontal => HveeInterp::Horizontal,
        }
    }
}

impl From<BottConv> for BottConvention {
    fn from(c: BottConv) -> Self {
        match c {
            BottConv::Degrees => BottConvention::Degrees,
            BottConv::Exponents => BottConvention::Exponents,
        }
    }
}

impl From<ProductConv> for ProductConvention {
    fn from(c: ProductConv) -> Self {
        match c {
            ProductConv::Exponents => ProductConvention::Exponents,
            ProductConv::Degrees => ProductConvention::Degrees,
        }
    }
}

enum Failure {
    Lib(Error),
    Verify(Box<OutputDocument>),
    Mismatch(Box<OutputDocument>, String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::NodeBudget { .. } => EXIT_BUDGET,
        Error::Internal(_) | Error::NonTermination(_) => EXIT_MISMATCH,
        _ => EXIT_USAGE,
    }
}

fn run(cli: &Cli) -> Result<OutputDocument, Failure> {
    let forced: Option<HveeInterp> = cli.hvee_interp.map(Into::into);
    let interp = forced.unwrap_or(HveeInterp::Affine);
    match &cli.command {
        Command::List { twist, max_rank } => {
            let ids: Vec<AlgebraId> = AlgebraId::supported(*max_rank)
                .into_iter()
                .filter(|id| twist.is_none_or(|t| id.twist() == t))
                .collect();
            Ok(OutputDocument::new(
                "list",
                "all",
                output::list_payload(&ids, interp)?,
            )?)
        }
        Command::Qseries {
            algebra,
            source,
            truncation,
        } => {
            let alg = AffineAlgebra::parse(algebra)?;
            let mut config = Map::new();
            let (name, series) = match source {
                Source::Eta => {
                    let spec = alg.eta_entry(interp)?;
                    config.insert("g".into(), json!(spec.notation()));
                    config.insert("phi".into(), json!(spec.phase));
                    if alg.id.is_twisted() {
                        config.insert("hvee_interp".into(), json!(interp.name()));
                    }
                    ("eta", eta_quotient_series(&spec, *truncation)?)
                }
                Source::Product => {
                    let conv: ProductConvention = cli.product_convention.into();
                    config.insert("product_convention".into(), json!(conv.name()));
                    ("product", simply_laced_product(&alg, *truncation, conv)?)
                }
                Source::Bott => {
                    let conv: BottConvention = cli.bott_convention.into();
                    config.insert("bott_convention".into(), json!(conv.name()));
                    ("bott", bott_affine_poincare(&alg, *truncation, conv)?)
                }
            };
            let payload = output::series_payload(name, &series, config);
            Ok(OutputDocument::new(
                "qseries",
                &alg.id.to_string(),
                payload,
            )?)
        }
        Command::Orbit {
            algebra,
            max_depth,
            method,
            node_budget,
        } => {
            let alg = AffineAlgebra::parse(algebra)?;
            let name = alg.id.to_string();
            let census = match method {
                Method::Bfs => orbit::enumerate_bfs(&alg, *max_depth, *node_budget)?,
                Method::Permw => orbit::count_via_permutation_weights(&alg, *max_depth)?.census,
                Method::Both => {
                    let bfs = orbit::enumerate_bfs(&alg, *max_depth, *node_budget)?;
                    let pw = orbit::count_via_permutation_weights(&alg, *max_depth)?.census;
                    if bfs != pw {
                        let doc = OutputDocument::new(
                            "orbit",
                            &name,
                            json!({
                                "bfs": output::census_payload("bfs", &bfs),
                                "permw": output::census_payload("permw", &pw),
                            }),
                        )?;
                        return Err(Failure::Mismatch(
                            Box::new(doc),
                            format!("{name}: bfs and permw censuses differ"),
                        ));
                    }
                    pw
                }
            };
            let label = match method {
                Method::Bfs => "bfs",
                Method::Permw => "permw",
                Method::Both => "both",
            };
            Ok(OutputDocument::new(
                "orbit",
                &name,
                output::census_payload(label, &census),
            )?)
        }
        Command::Permw {
            algebra,
            max_depth,
            words,
        } => {
            let alg = AffineAlgebra::parse(algebra)?;
            let pw = orbit::count_via_permutation_weights(&alg, *max_depth)?;
            Ok(OutputDocument::new(
                "permw",
                &alg.id.to_string(),
                output::records_payload(&pw, *words),
            )?)
        }
        Command::Verify {
            algebra,
            all,
            max_rank,
            max_depth,
            node_budget,
        } => {
            let opts = VerifyOptions {
                node_budget: *node_budget,
                hvee_interp: forced,
                product_convention: cli.product_convention.into(),
                bott_convention: cli.bott_convention.into(),
                ..VerifyOptions::default()
            };
            let (doc, passed) = match (algebra, all) {
                (Some(name), false) => {
                    let alg = AffineAlgebra::parse(name)?;
                    let report = verify_algebra(&alg, *max_depth, &opts)?;
                    let passed = report.passed();
                    (
                        OutputDocument::new("verify", &alg.id.to_string(), &report)?,
                        passed,
                    )
                }
                (None, true) => {
                    let reports = verify_all(*max_rank, *max_depth, &opts)?;
                    let passed = reports.iter().all(|r| r.passed());
                    let payload = json!({
                        "max_rank": max_rank,
                        "max_depth": max_depth,
                        "passed": passed,
                        "reports": reports,
                    });
                    (OutputDocument::new("verify", "all", payload)?, passed)
                }
                _ => {
                    return Err(Failure::Lib(Error::Parse(
                        "give an algebra or --all".into(),
                    )))
                }
            };
            if passed {
                Ok(doc)
            } else {
                Err(Failure::Verify(Box::new(doc)))
            }
        }
    }
}

fn emit(cli: &Cli, doc: &OutputDocument) {
    if cli.pretty {
        print!("{}", doc.render_pretty());
    } else {
        println!("{}", doc.to_json());
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(doc) => {
            emit(&cli, &doc);
            ExitCode::SUCCESS
        }
        Err(Failure::Verify(doc)) => {
            emit(&cli, &doc);
            eprintln!("qpoincare: verification failed");
            ExitCode::from(EXIT_VERIFY)
        }
        Err(Failure::Mismatch(doc, msg)) => {
            emit(&cli, &doc);
            eprintln!("qpoincare: {msg}");
            ExitCode::from(EXIT_MISMATCH)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("qpoincare: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
