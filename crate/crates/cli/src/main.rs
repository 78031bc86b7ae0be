mod commands;
mod report;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use hopf_pairs::json::Document;
use hopf_pairs::modules::Side;
use hopf_pairs::{Error, Result};

use commands::ModuleRequest;
use report::CliReport;

/// Exact checks on twisted tensor products of Hopf algebras, their modules
/// and Cartan data.
#[derive(Parser)]
#[command(name = "hopfpairs", version)]
struct Cli {
    /// Write the report (or built object) as JSON to this file.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check the axioms of a hopf, twisted or datum file.
    Verify {
        #[arg(long)]
        input: PathBuf,
    },
    /// Build catalog objects.
    Catalog {
        #[command(subcommand)]
        cmd: CatalogCmd,
    },
    /// The left module L(ρ, χ) over a twisted algebra.
    Lmodule(ModuleArgs),
    /// The right module R(χ, ρ) over a twisted algebra.
    Rmodule(ModuleArgs),
    /// All character pairs: dimensions, isomorphism classes, duality.
    Table {
        #[arg(long)]
        input: PathBuf,
    },
    /// The Drinfeld double of a Hopf algebra file.
    Double {
        #[arg(long)]
        input: PathBuf,
        /// Write the double as a twisted algebra file.
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Cartan data.
    Cartan {
        #[command(subcommand)]
        cmd: CartanCmd,
    },
    /// Run the acceptance suite.
    Selftest,
}

#[derive(Subcommand)]
enum CatalogCmd {
    /// Emit a catalog object as JSON.
    Build {
        name: String,
        #[arg(long = "N", default_value_t = 2)]
        n: usize,
    },
}

#[derive(Subcommand)]
enum CartanCmd {
    /// Check the hypotheses for simple modules to be one-dimensional.
    Audit {
        #[arg(long)]
        datum: PathBuf,
        #[arg(long)]
        rep: Option<PathBuf>,
        /// Pairs `i,j` of generators in different components that skew commute.
        #[arg(long, num_args = 1..)]
        skew: Vec<String>,
    },
}

#[derive(Args)]
struct ModuleArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    rho: Option<usize>,
    #[arg(long)]
    chi: Option<usize>,
    #[arg(long)]
    all_pairs: bool,
}

impl ModuleArgs {
    fn request(&self) -> ModuleRequest {
        ModuleRequest { rho: self.rho, chi: self.chi, all_pairs: self.all_pairs }
    }
}

enum Output {
    Report(CliReport),
    Object(Box<Document>),
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| Error::Invalid(format!("cannot write {}: {e}", path.display())))
}

fn run(cli: &Cli, echo: Vec<String>) -> Result<Output> {
    Ok(match &cli.cmd {
        Cmd::Verify { input } => Output::Report(commands::verify(input, echo)?),
        Cmd::Catalog { cmd: CatalogCmd::Build { name, n } } => {
            Output::Object(Box::new(commands::catalog_build(name, *n)?))
        }
        Cmd::Lmodule(a) => Output::Report(commands::module(&a.input, Side::Left, &a.request(), echo)?),
        Cmd::Rmodule(a) => Output::Report(commands::module(&a.input, Side::Right, &a.request(), echo)?),
        Cmd::Table { input } => Output::Report(commands::table(input, echo)?),
        Cmd::Double { input, emit } => {
            let (r, d) = commands::double(input, echo)?;
            if let Some(p) = emit {
                write(p, &(Document::Twisted(d).to_string_pretty() + "\n"))?;
            }
            Output::Report(r)
        }
        Cmd::Cartan { cmd: CartanCmd::Audit { datum, rep, skew } } => {
            Output::Report(commands::cartan_audit(datum, rep.as_deref(), skew, echo)?)
        }
        Cmd::Selftest => Output::Report(commands::selftest(echo)?),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let echo: Vec<String> = std::env::args().skip(1).collect();
    let start = Instant::now();
    let result = run(&cli, echo).and_then(|out| match out {
        Output::Report(r) => {
            if let Some(p) = &cli.out {
                write(p, &r.to_json())?;
            }
            print!("{}", r.human());
            Ok(r.pass)
        }
        Output::Object(doc) => {
            let text = doc.to_string_pretty() + "\n";
            match &cli.out {
                Some(p) => {
                    write(p, &text)?;
                    println!("wrote {} to {}", doc.kind(), p.display());
                }
                None => print!("{text}"),
            }
            Ok(true)
        }
    });
    eprintln!("elapsed {:.2?}", start.elapsed());
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if matches!(e, Error::CheckFailed(_)) { 1 } else { 2 })
        }
    }
}
