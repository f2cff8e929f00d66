use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use rinehart_cli::{
    builtin_pair, eval, infer_pair, load_morphism, load_pair, pair_summary, parse, parse_syntax, run_suite, CliError,
    NamedMorphism, NamedPair, SessionConfig, Suite,
};

/// Exterior algebras, Schouten–Nijenhuis brackets and Lie n-brackets of
/// Lie–Rinehart pairs, in exact arithmetic.
#[derive(Debug, Parser)]
#[command(name = "rinehart", version)]
struct Cli {
    /// Pair document (JSON).
    #[arg(long, global = true)]
    pair: Option<PathBuf>,

    /// Built-in pair: sl2, gl2, solvable4, cartan<m> or abelian<d>.
    #[arg(long, global = true, conflicts_with = "pair")]
    builtin: Option<String>,

    /// Morphism document (JSON) for the morphism-strict suite.
    #[arg(long, global = true)]
    morphism: Option<PathBuf>,

    /// Load documents without checking the pair axioms.
    #[arg(long, global = true)]
    skip_validation: bool,

    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate an expression and print the canonical rendering.
    Eval { expr: String },
    /// Run an identity suite; exit status 1 if any check fails.
    Check {
        /// leibniz, jacobi-antisym, jacobi-sym, poisson, weak-jacobi,
        /// morphism-injection, morphism-strict, ce-square-zero or combinatorial.
        suite: String,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        p: Option<usize>,
        #[arg(long)]
        q: Option<usize>,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 10)]
        max_n: usize,
        #[arg(long, default_value_t = rinehart::linfty::DEFAULT_ARITY_CAP)]
        arity_cap: usize,
    },
    /// Print a summary of the loaded pair.
    Info,
}

impl Cli {
    fn named_pair(&self) -> Result<Option<NamedPair>, CliError> {
        if let Some(path) = &self.pair {
            let pair = load_pair(path, !self.skip_validation)?;
            return Ok(Some(NamedPair::new(path.display().to_string(), pair)));
        }
        if let Some(name) = &self.builtin {
            return Ok(Some(NamedPair::new(name.clone(), builtin_pair(name)?)));
        }
        Ok(None)
    }
}

fn run(cli: &Cli) -> Result<bool, CliError> {
    match &cli.command {
        Command::Eval { expr } => {
            let pair = match cli.named_pair()? {
                Some(p) => p.pair,
                None => infer_pair(&parse_syntax(expr)?)?,
            };
            let value = eval(&parse(expr, &pair)?, &pair)?;
            let rendered = value.display(pair.generator_prefix()).to_string();
            if cli.json {
                println!("{}", serde_json::json!({ "expression": expr, "result": rendered }));
            } else {
                println!("{rendered}");
            }
            Ok(true)
        }
        Command::Check {
            suite,
            n,
            p,
            q,
            trials,
            seed,
            max_n,
            arity_cap,
        } => {
            let suite: Suite = suite.parse()?;
            let morphism = match &cli.morphism {
                Some(path) => Some(NamedMorphism {
                    label: path.display().to_string(),
                    morphism: load_morphism(path, !cli.skip_validation)?,
                }),
                None => None,
            };
            let config = SessionConfig {
                pair: cli.named_pair()?,
                morphism,
                seed: *seed,
                trials: *trials,
                arity_cap: *arity_cap,
                n: *n,
                p: *p,
                q: *q,
                max_n: *max_n,
            };
            let reports = run_suite(&config, suite)?;
            for r in &reports {
                println!("{}", if cli.json { r.to_json() } else { r.to_text() });
            }
            Ok(reports.iter().all(|r| r.report.pass))
        }
        Command::Info => {
            let pair = cli
                .named_pair()?
                .map(|p| p.pair)
                .ok_or_else(|| CliError::Usage("info needs --pair or --builtin".into()))?;
            if cli.json {
                println!("{}", pair.to_document().to_json());
            } else {
                print!("{}", pair_summary(&pair));
            }
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
