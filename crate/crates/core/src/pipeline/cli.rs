//! Command-line front end.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{PrimeField, MERSENNE_61};
use crate::circuit::{expand, read_circuit, write_circuit};
use crate::error::{Error, Result};
use crate::pipeline::{factor, FactorConfig};
use crate::pit::verify_split;
use crate::resultant::resultant_y;

#[derive(Parser, Debug)]
#[command(name = "factorforge", version, about = "Factor polynomials given as arithmetic circuits over F_p")]
pub struct Cli {
    /// Field characteristic; must be prime.
    #[arg(long, global = true, env = "FACTORFORGE_PRIME", default_value_t = MERSENNE_61)]
    pub prime: u64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Factor the polynomial in FILE; writes one SLP per factor and result.txt.
    Factor {
        file: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output directory; defaults to FILE's stem followed by `.factors`.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        /// Candidate subsets per recombination search.
        #[arg(long)]
        budget: Option<usize>,
        /// Largest accepted total degree.
        #[arg(long, default_value_t = 16)]
        cap: usize,
        /// Distinguished variable, 1-based; the last variable by default.
        #[arg(long)]
        yvar: Option<usize>,
    },
    /// Check F = G * H by evaluation at random points.
    Verify {
        f: PathBuf,
        g: PathBuf,
        h: PathBuf,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Print the dense expansion of every output.
    Expand {
        file: PathBuf,
        #[arg(long, default_value_t = 16)]
        cap: usize,
    },
    /// Resultant of G and H with respect to a variable.
    Resultant {
        g: PathBuf,
        h: PathBuf,
        /// Variable to eliminate, 1-based.
        #[arg(long)]
        yvar: usize,
        #[arg(long, default_value_t = 16)]
        cap: usize,
    },
    /// Evaluate every output at a point.
    Eval {
        file: PathBuf,
        /// Comma-separated coordinates; negative values are taken mod p.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        point: Vec<i128>,
    },
}

enum Outcome {
    Ok,
    Rejected,
}

fn one_based(v: usize, what: &str) -> Result<usize> {
    v.checked_sub(1)
        .ok_or_else(|| Error::Domain(format!("{what} is 1-based, got 0")))
}

fn default_out(file: &Path) -> PathBuf {
    let stem = file.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    file.with_file_name(format!("{stem}.factors"))
}

fn run(cli: Cli) -> Result<Outcome> {
    let field = PrimeField::new(cli.prime)?;
    match cli.command {
        Command::Factor { file, seed, out, trials, budget, cap, yvar } => {
            let f = read_circuit(&file, field)?;
            let config = FactorConfig {
                yvar: yvar.map(|v| one_based(v, "--yvar")).transpose()?,
                degree_cap: cap,
                trials,
                budget,
                seed,
                ..Default::default()
            };
            let res = factor(&f, &config)?;
            let dir = out.unwrap_or_else(|| default_out(&file));
            fs::create_dir_all(&dir)?;
            for (i, fac) in res.factors.iter().enumerate() {
                write_circuit(dir.join(format!("factor_{i}.slp")), &fac.circuit)?;
            }
            let stats = res.stats_text();
            fs::write(dir.join("result.txt"), &stats)?;
            print!("{stats}");
            println!("output = {}", dir.display());
            Ok(Outcome::Ok)
        }
        Command::Verify { f, g, h, trials, seed } => {
            let (f, g, h) = (read_circuit(f, field)?, read_circuit(g, field)?, read_circuit(h, field)?);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            if verify_split(&f, &g, &h, trials, &mut rng)? {
                println!("ok");
                Ok(Outcome::Ok)
            } else {
                println!("mismatch");
                Ok(Outcome::Rejected)
            }
        }
        Command::Expand { file, cap } => {
            let c = read_circuit(file, field)?;
            for p in expand(&c, cap)? {
                println!("{p}");
            }
            Ok(Outcome::Ok)
        }
        Command::Resultant { g, h, yvar, cap } => {
            let y = one_based(yvar, "--yvar")?;
            let g = expand(&read_circuit(g, field)?, cap)?.remove(0);
            let h = expand(&read_circuit(h, field)?, cap)?.remove(0);
            println!("{}", resultant_y(&g, &h, y)?);
            Ok(Outcome::Ok)
        }
        Command::Eval { file, point } => {
            let c = read_circuit(file, field)?;
            let p = field.modulus() as i128;
            let pt: Vec<_> = point.iter().map(|&v| field.elem(v.rem_euclid(p) as u64)).collect();
            for v in c.eval(&pt)? {
                println!("{v}");
            }
            Ok(Outcome::Ok)
        }
    }
}

/// Parses `args` and runs the command. Exit codes: 0 success, 1 failed
/// verification, 2 bad input.
pub fn cli_main<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::Rejected) => ExitCode::from(1),
        Err(e @ (Error::NotATrueSplit(_) | Error::NotAPurePower(_))) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
