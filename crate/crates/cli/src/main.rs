//! Command-line front end: read permutation sets, run the mining pipeline,
//! list avoiders, verify conjectured descriptions, and render results.

use std::collections::BTreeSet;
use std::ffi::OsString;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use bisc_core::classes::parse_pattern_list;
use bisc_core::pipeline::{avoiders_with_cap, bisc, prune, verify_equality, verify_subset};
use bisc_core::{
    ascii_grid, mine, read_permutation_file, tikz, Basis, ClassSpec, EqualityCheck, Error,
    MeshPattern, Permutation,
};

#[derive(Parser)]
#[command(
    name = "bisc",
    version,
    about = "Conjecture forbidden-pattern descriptions of permutation sets",
    after_help = "Running without a subcommand is shorthand for `bisc bisc ...`.\n\
                  Thread count follows RAYON_NUM_THREADS."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Record the allowed mesh patterns of a permutation set
    Mine(MineArgs),
    /// Conjecture the forbidden patterns of a permutation set
    Bisc(BiscArgs),
    /// List the permutations avoiding a pattern list
    Avoiders(AvoidersArgs),
    /// Check a pattern list against a permutation set
    Verify(VerifyArgs),
    /// Print the members of a registered class
    Classgen(ClassgenArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Ascii,
    Tikz,
}

#[derive(Args)]
struct InputArgs {
    /// Permutation file, one per line (`eps` for the empty permutation)
    #[arg(long, value_name = "FILE", conflicts_with_all = ["class", "len"])]
    input: Option<PathBuf>,
    /// Registered class spec, e.g. west2, dihedral, rsk_avoid:2,2
    #[arg(long, value_name = "SPEC", requires = "len")]
    class: Option<String>,
    /// Generation length for --class
    #[arg(long, value_name = "N")]
    len: Option<usize>,
}

impl InputArgs {
    fn load(&self, cap: usize) -> Result<BTreeSet<Permutation>> {
        match (&self.input, &self.class) {
            (Some(path), None) => {
                read_permutation_file(path).with_context(|| format!("reading {}", path.display()))
            }
            (None, Some(spec)) => {
                let spec: ClassSpec = spec.parse()?;
                let len = self.len.ok_or_else(|| anyhow!("--class requires --len"))?;
                Ok(spec.generate(len, cap)?)
            }
            _ => bail!("exactly one of --input or --class is required"),
        }
    }
}

#[derive(Args)]
struct PatternArgs {
    /// Pattern list, e.g. "2341; (3241, {(1,4)})"
    #[arg(long, value_name = "LIST", conflicts_with = "basis")]
    patterns: Option<String>,
    /// Basis file in the one-pattern-per-line text form
    #[arg(long, value_name = "FILE")]
    basis: Option<PathBuf>,
}

impl PatternArgs {
    fn load(&self) -> Result<Vec<MeshPattern>> {
        match (&self.patterns, &self.basis) {
            (Some(list), None) => Ok(parse_pattern_list(list)?),
            (None, Some(path)) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| Error::Io(e.to_string()))
                    .with_context(|| format!("reading {}", path.display()))?;
                Ok(Basis::from_text(&text)?.patterns().to_vec())
            }
            _ => bail!("exactly one of --patterns or --basis is required"),
        }
    }
}

#[derive(Args)]
struct MineArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Pattern-length bound
    #[arg(short, default_value_t = 4, value_name = "K")]
    m: usize,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Class-generation length cap
    #[arg(long, default_value_t = bisc_core::DEFAULT_LENGTH_CAP, value_name = "N")]
    cap: usize,
}

#[derive(Args)]
struct BiscArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Pattern-length bound
    #[arg(short, default_value_t = 4, value_name = "K")]
    m: usize,
    /// Verification horizon; appends an equality report
    #[arg(short, value_name = "H")]
    n: Option<usize>,
    /// Drop patterns whose removal keeps the description exact at the
    /// longest input length
    #[arg(long)]
    prune: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long, default_value_t = bisc_core::DEFAULT_LENGTH_CAP, value_name = "N")]
    cap: usize,
}

#[derive(Args)]
struct AvoidersArgs {
    #[command(flatten)]
    patterns: PatternArgs,
    /// Largest listed length
    #[arg(short, value_name = "H")]
    n: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long, default_value_t = bisc_core::DEFAULT_LENGTH_CAP, value_name = "N")]
    cap: usize,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    patterns: PatternArgs,
    /// Verification horizon; defaults to the longest input length
    #[arg(short, value_name = "H")]
    n: Option<usize>,
    #[arg(long, default_value_t = bisc_core::DEFAULT_LENGTH_CAP, value_name = "N")]
    cap: usize,
}

#[derive(Args)]
struct ClassgenArgs {
    /// Registered class spec
    #[arg(long, value_name = "SPEC")]
    class: String,
    /// Generation length
    #[arg(long, value_name = "N")]
    len: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long, default_value_t = bisc_core::DEFAULT_LENGTH_CAP, value_name = "N")]
    cap: usize,
}

fn main() -> ExitCode {
    let cli = Cli::parse_from(with_default_subcommand(std::env::args_os()));
    let outcome = match cli.command {
        Command::Mine(args) => run_mine(args),
        Command::Bisc(args) => run_bisc(args),
        Command::Avoiders(args) => run_avoiders(args),
        Command::Verify(args) => run_verify(args),
        Command::Classgen(args) => run_classgen(args),
    };
    match outcome {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            let cap_exceeded = err
                .downcast_ref::<Error>()
                .is_some_and(|e| matches!(e, Error::LengthCap { .. }));
            ExitCode::from(if cap_exceeded { 3 } else { 2 })
        }
    }
}

/// A leading flag means the `bisc` subcommand, so plain
/// `bisc --class west2 ...` works.
fn with_default_subcommand(args: impl Iterator<Item = OsString>) -> Vec<OsString> {
    let mut args: Vec<OsString> = args.collect();
    if let Some(first) = args.get(1) {
        let first = first.to_string_lossy();
        let top_level = ["mine", "bisc", "avoiders", "verify", "classgen", "help"]
            .contains(&first.as_ref())
            || ["-h", "--help", "-V", "--version"].contains(&first.as_ref());
        if !top_level {
            args.insert(1, OsString::from("bisc"));
        }
    }
    args
}

fn run_mine(args: MineArgs) -> Result<ExitCode> {
    let input = args.input.load(args.cap)?;
    let table = mine(&input, args.m)?;
    match args.format {
        Format::Json => println!("{}", table.to_json()),
        Format::Text => {
            for (pattern, antichain) in table.entries() {
                let shadings: Vec<String> =
                    antichain.iter().map(|s| format!("{s:?}")).collect();
                if shadings.is_empty() {
                    println!("{pattern}: -");
                } else {
                    println!("{pattern}: {}", shadings.join(" "));
                }
            }
        }
        _ => bail!("mine supports the text and json formats"),
    }
    Ok(ExitCode::SUCCESS)
}

fn run_bisc(args: BiscArgs) -> Result<ExitCode> {
    let input = args.input.load(args.cap)?;
    let mut basis = bisc(&input, args.m)?;
    if args.prune {
        basis = prune(&basis, &input, basis.source_max_len())?;
    }
    print_basis(&basis, args.format)?;

    if let Some(horizon) = args.n {
        if horizon > args.cap {
            return Err(Error::LengthCap {
                n: horizon,
                cap: args.cap,
            }
            .into());
        }
        let check = verify_equality(&input, &basis, horizon);
        let line = equality_line(&check, horizon);
        if args.format == Format::Text {
            println!("{line}");
        } else {
            eprintln!("{line}");
        }
        if !check.is_equal() {
            return Ok(ExitCode::from(1));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn equality_line(check: &EqualityCheck, horizon: usize) -> String {
    match check {
        EqualityCheck::Equal => format!("# equality at n={horizon}: ok"),
        EqualityCheck::Unequal {
            counterexample,
            in_input,
        } => {
            let side = if *in_input {
                "is in the input but contains a basis pattern"
            } else {
                "avoids the basis but is not in the input"
            };
            format!("# equality at n={horizon}: FAIL, {counterexample} {side}")
        }
    }
}

fn print_basis(basis: &Basis, format: Format) -> Result<()> {
    match format {
        Format::Text => print!("{}", basis.to_text()),
        Format::Json => println!("{}", basis.to_json()),
        Format::Ascii => {
            for p in basis.patterns() {
                println!("{p}");
                print!("{}", ascii_grid(p));
                println!();
            }
        }
        Format::Tikz => {
            for p in basis.patterns() {
                println!("% {p}");
                print!("{}", tikz(p));
            }
        }
    }
    Ok(())
}

fn run_avoiders(args: AvoidersArgs) -> Result<ExitCode> {
    let basis = Basis::from_patterns(args.patterns.load()?);
    let avoiding = avoiders_with_cap(&basis, args.n, args.cap)?;
    match args.format {
        Format::Text => {
            for q in avoiding.iter() {
                println!("{q}");
            }
        }
        Format::Json => {
            let by_length: Vec<Vec<String>> = (0..=avoiding.max_length())
                .map(|len| {
                    avoiding
                        .of_length(len)
                        .iter()
                        .map(|q| q.to_string())
                        .collect()
                })
                .collect();
            println!(
                "{}",
                serde_json::json!({ "n": args.n, "by_length": by_length })
            );
        }
        _ => bail!("avoiders supports the text and json formats"),
    }
    Ok(ExitCode::SUCCESS)
}

fn run_verify(args: VerifyArgs) -> Result<ExitCode> {
    let input = args.input.load(args.cap)?;
    let basis = Basis::from_patterns(args.patterns.load()?);
    let horizon = args
        .n
        .unwrap_or_else(|| input.iter().map(|p| p.len()).max().unwrap_or(0));
    if horizon > args.cap {
        return Err(Error::LengthCap {
            n: horizon,
            cap: args.cap,
        }
        .into());
    }

    let subset = verify_subset(&input, &basis, horizon);
    println!("subset: {}", if subset { "ok" } else { "FAIL" });
    let check = verify_equality(&input, &basis, horizon);
    match &check {
        EqualityCheck::Equal => println!("equality: ok"),
        EqualityCheck::Unequal {
            counterexample,
            in_input,
        } => {
            let side = if *in_input { "input" } else { "avoiders" };
            println!("equality: FAIL, counterexample {counterexample} (from the {side} side)");
        }
    }
    if subset && check.is_equal() {
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::from(1))
    }
}

fn run_classgen(args: ClassgenArgs) -> Result<ExitCode> {
    let spec: ClassSpec = args.class.parse()?;
    let members = spec.generate(args.len, args.cap)?;
    match args.format {
        Format::Text => {
            for q in &members {
                println!("{q}");
            }
        }
        Format::Json => {
            let listed: Vec<String> = members.iter().map(|q| q.to_string()).collect();
            println!(
                "{}",
                serde_json::json!({ "class": spec.to_string(), "len": args.len, "members": listed })
            );
        }
        _ => bail!("classgen supports the text and json formats"),
    }
    Ok(ExitCode::SUCCESS)
}
