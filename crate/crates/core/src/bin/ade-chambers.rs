use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use ade_chambers::chambers::{enumerate_chambers_with, EnumerateOptions};
use ade_chambers::cli::{self, ProblemSpec};
use ade_chambers::{arrangement, knit_trace, Error, Result};

#[derive(Parser)]
#[command(name = "ade-chambers", version, about = "Exact GIT chamber structures for ADE partial resolutions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print canonical labels, delta and adjacency of an affine diagram
    Describe {
        /// e.g. A3, D5, E7
        diagram: String,
    },
    /// Knit the exchange sequence of every slot (or one slot)
    Knit {
        #[command(flatten)]
        input: Input,
        /// 1-based slot; all slots when omitted
        #[arg(long)]
        slot: Option<usize>,
    },
    /// Enumerate chambers and walls
    Chambers {
        #[command(flatten)]
        input: Input,
        /// Skip the root arrangement cross-check
        #[arg(long)]
        no_oracle: bool,
    },
    /// Restricted root arrangement and its region counts
    Oracle {
        #[command(flatten)]
        input: Input,
    },
    /// Full pipeline: report.json plus optional skeleton.dot and chambers.svg
    Report {
        #[command(flatten)]
        input: Input,
        /// Output directory
        #[arg(long, default_value = "out")]
        out: PathBuf,
        /// Skip the root arrangement cross-check
        #[arg(long)]
        no_oracle: bool,
        /// Draw the wall fan (two retained curves only)
        #[arg(long)]
        svg: bool,
        /// Write the chamber skeleton as DOT
        #[arg(long)]
        dot: bool,
        /// Seed for the random coverage points
        #[arg(long)]
        seed: Option<u64>,
    },
}

#[derive(Args)]
struct Input {
    /// Problem spec (JSON)
    #[arg(long)]
    spec: PathBuf,
}

impl Input {
    fn load(&self) -> Result<ProblemSpec> {
        let text = fs::read_to_string(&self.spec).map_err(|source| Error::Io {
            path: self.spec.display().to_string(),
            source,
        })?;
        cli::parse_spec(&text)
    }
}

fn run(command: Command) -> Result<()> {
    match command {
        Command::Describe { diagram } => print!("{}", cli::describe(&diagram)?),
        Command::Knit { input, slot } => {
            let config = input.load()?.configuration();
            let slots: Vec<usize> = match slot {
                Some(0) => return Err(Error::Argument("slots are numbered from 1".into())),
                Some(s) => vec![s - 1],
                None => (0..config.len()).collect(),
            };
            for s in slots {
                print!("{}", cli::knit_text(&knit_trace(&config, s)?, config.diagram()));
            }
        }
        Command::Chambers { input, no_oracle } => {
            let mut spec = input.load()?;
            spec.options.oracle &= !no_oracle;
            let structure = enumerate_chambers_with(
                &spec.configuration(),
                EnumerateOptions {
                    oracle: spec.options.oracle,
                },
            )?;
            print!("{}", cli::chambers_text(&structure));
        }
        Command::Oracle { input } => {
            let arr = arrangement::restricted_walls(&input.load()?.configuration());
            for c in &arr.covectors {
                println!("{c}");
            }
            match arrangement::count_regions(&arr) {
                Ok(n) => println!("subset-sum count: {n}"),
                Err(e) => println!("subset-sum count: skipped ({e})"),
            }
            println!("sign vectors: {}", arrangement::sign_vectors(&arr)?.len());
        }
        Command::Report {
            input,
            out,
            no_oracle,
            svg,
            dot,
            seed,
        } => {
            let mut spec = input.load()?;
            spec.options.oracle &= !no_oracle;
            spec.options.svg |= svg;
            spec.options.dot |= dot;
            if let Some(seed) = seed {
                spec.options.seed = seed;
            }
            let artifacts = cli::run_report(&spec, &out)?;
            let r = &artifacts.report;
            if let Some(notice) = &r.files.svg_notice {
                eprintln!("{notice}");
            }
            println!(
                "{} chambers, {} walls, bounds ({}, {}); wrote {}",
                r.counts.chambers,
                r.counts.walls,
                r.bounds.lower,
                r.bounds.upper,
                out.join(cli::REPORT_FILE).display()
            );
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let args = Cli::parse();
    match run(args.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.kind().exit_code() as u8)
        }
    }
}
