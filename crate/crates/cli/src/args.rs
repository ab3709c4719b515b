use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::format::Format;

/// Pólya groups of quadratic and biquadratic number fields.
#[derive(Debug, Parser)]
#[command(name = "polya", version, about)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Report on the quadratic field Q(√d).
    #[command(allow_negative_numbers = true)]
    Quad {
        d: i64,
        #[command(flatten)]
        common: Common,
    },
    /// Report on the biquadratic field Q(√d1, √d2).
    #[command(allow_negative_numbers = true)]
    Biquad {
        d1: i64,
        d2: i64,
        /// Include the indices of the unit chain.
        #[arg(long)]
        chain: bool,
        #[command(flatten)]
        common: Common,
    },
    /// One row per biquadratic field with |d1|, |d2| ≤ bound.
    Scan {
        #[arg(long)]
        bound: i64,
        #[arg(long, conflicts_with = "imag_only")]
        real_only: bool,
        #[arg(long)]
        imag_only: bool,
        /// Include the indices of the unit chain.
        #[arg(long)]
        chain: bool,
        /// Write rows to this file instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Worker threads; defaults to the number of CPUs.
        #[arg(long)]
        jobs: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Debug, Args)]
pub struct Common {
    /// Check the closed formulas against the class-counting oracles.
    #[arg(long)]
    pub verify: bool,
    /// Enumeration budget per principality test; overrides POLYA_ORACLE_BUDGET.
    #[arg(long)]
    pub budget: Option<u64>,
    #[arg(long, value_enum, conflicts_with_all = ["json", "csv", "text"])]
    pub format: Option<Format>,
    /// Newline-delimited JSON.
    #[arg(long, conflicts_with_all = ["csv", "text"])]
    pub json: bool,
    #[arg(long, conflicts_with = "text")]
    pub csv: bool,
    /// Fixed-width table (the default).
    #[arg(long)]
    pub text: bool,
}

impl Common {
    pub fn output_format(&self) -> Format {
        if let Some(f) = self.format {
            f
        } else if self.json {
            Format::Json
        } else if self.csv {
            Format::Csv
        } else {
            Format::Text
        }
    }
}
