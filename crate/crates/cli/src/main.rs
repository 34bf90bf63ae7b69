//! `sccat`: run law suites, evaluate and compare terms, replay the
//! teleportation, trace and feedback demonstrations, and push matrices along
//! semiring homomorphisms.

mod demo;

use std::fs;
use std::io::{self, Write};
use std::path::Path;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use sccat::laws::{run_suite_for, to_json_lines, SuiteConfig};
use sccat::termlang::{eval, parse_program, terms_equal, typecheck, Env, Model, Program, Strategy, Term, Verdict};
use sccat::transfer::{run_transfer, HOM_IDS};
use sccat::{Boolean, ComplexRational, Execution, NonNegRational, Semiring, SemiringKind};

#[derive(Debug, Parser)]
#[command(name = "sccat", version, about = "Exact checks for strongly compact closed categories of matrices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SemiringArg {
    Bool,
    Nnrat,
    Crat,
}

impl From<SemiringArg> for SemiringKind {
    fn from(s: SemiringArg) -> Self {
        match s {
            SemiringArg::Bool => SemiringKind::Bool,
            SemiringArg::Nnrat => SemiringKind::NonNegRational,
            SemiringArg::Crat => SemiringKind::ComplexRational,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Jsonl,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum StrategyArg {
    Wiring,
    Random,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum DemoName {
    Teleport,
    TraceProjectors,
    Feedback,
}

/// Options shared by every randomized command.
#[derive(Debug, Clone, clap::Args)]
struct RunArgs {
    /// Largest dimension of a random object factor.
    #[arg(long = "dim", default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..=8))]
    dim: u64,
    #[arg(long, default_value_t = 50)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Run trials on one thread.
    #[arg(long)]
    sequential: bool,
}

impl RunArgs {
    fn suite(&self) -> SuiteConfig {
        let execution = if self.sequential { Execution::Sequential } else { Execution::default() };
        SuiteConfig::new(self.dim as usize, self.trials, self.seed).with_execution(execution)
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check every catalog law on random instances.
    Laws {
        #[arg(long, value_enum, default_value_t = SemiringArg::Crat)]
        semiring: SemiringArg,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Evaluate a term (a file, or the term text itself) in a matrix model.
    Eval {
        term: String,
        /// File of `obj` and `gen` declarations giving dimensions and matrices.
        model: Option<String>,
        #[arg(long, value_enum, default_value_t = SemiringArg::Crat)]
        semiring: SemiringArg,
    },
    /// Decide whether two terms denote the same morphism.
    Equal {
        left: String,
        right: String,
        /// Extra declarations shared by both terms.
        #[arg(long)]
        model: Option<String>,
        #[arg(long, value_enum, default_value_t = StrategyArg::Wiring)]
        strategy: StrategyArg,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Print the evidence behind the verdict.
        #[arg(long)]
        explain: bool,
    },
    /// Replay one of the worked examples.
    Demo {
        #[arg(value_enum)]
        name: DemoName,
        /// Matrix literal overriding the demo's default morphism.
        #[arg(long)]
        matrix: Option<String>,
        /// Relation file (`[X]`, `[Y]`, `[Z]` sections and `a -> b` edges) for the feedback demo.
        #[arg(long)]
        input: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Check what a semiring homomorphism preserves once lifted to matrices.
    Transfer {
        #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(HOM_IDS.iter().copied()))]
        hom: String,
        /// Also print the image of this matrix literal.
        #[arg(long)]
        matrix: Option<String>,
        #[command(flatten)]
        run: RunArgs,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = io::stdout().lock();
    match run(cli.command, &mut out) {
        Ok(code) => code,
        Err(e) => {
            let _ = out.flush();
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command, out: &mut impl Write) -> Result<ExitCode> {
    match command {
        Command::Laws { semiring, run } => cmd_laws(semiring.into(), &run, out),
        Command::Eval { term, model, semiring } => cmd_eval(&term, model.as_deref(), semiring.into(), out),
        Command::Equal { left, right, model, strategy, trials, seed, explain } => {
            let strategy = match strategy {
                StrategyArg::Wiring => Strategy::Wiring,
                StrategyArg::Random => Strategy::RandomEval { trials, seed },
            };
            cmd_equal(&left, &right, model.as_deref(), strategy, explain, out)
        }
        Command::Demo { name, matrix, input, seed } => {
            match name {
                DemoName::Teleport => demo::teleport(matrix.as_deref(), out)?,
                DemoName::TraceProjectors => demo::trace_projectors(matrix.as_deref(), out)?,
                DemoName::Feedback => {
                    let text = input.map(|p| read(&p)).transpose()?;
                    demo::feedback(text.as_deref(), seed, out)?
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Transfer { hom, matrix, run } => cmd_transfer(&hom, matrix.as_deref(), &run, out),
    }
}

fn status(all_passed: bool) -> ExitCode {
    if all_passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn cmd_laws(kind: SemiringKind, run: &RunArgs, out: &mut impl Write) -> Result<ExitCode> {
    let reports = run_suite_for(kind, &run.suite());
    let passed = reports.iter().filter(|r| r.passed).count();
    match run.format {
        Format::Jsonl => out.write_all(to_json_lines(&reports).as_bytes())?,
        Format::Text => {
            for r in &reports {
                writeln!(out, "{r}")?;
            }
            writeln!(out, "{passed}/{} laws hold over {kind} (seed {})", reports.len(), run.seed)?;
        }
    }
    Ok(status(passed == reports.len()))
}

fn read(path: &str) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read `{path}`"))
}

/// A term argument is a path when such a file exists, and term text otherwise.
fn load_program(arg: &str) -> Result<Program> {
    let text = if Path::new(arg).is_file() { read(arg)? } else { arg.to_string() };
    parse_program(&text).with_context(|| format!("in `{arg}`"))
}

fn load_env(programs: &[&Program], model: Option<&str>) -> Result<Env> {
    let mut env = Env::new();
    if let Some(path) = model {
        let decls = parse_program(&read(path)?).with_context(|| format!("in `{path}`"))?;
        if decls.term.is_some() {
            bail!("model file `{path}` must contain only declarations");
        }
        env.extend(&decls.decls);
    }
    for p in programs {
        env.extend(&p.decls);
    }
    Ok(env)
}

fn term_of(p: Program, arg: &str) -> Result<Term> {
    p.term.ok_or_else(|| anyhow!("`{arg}` declares things but contains no term"))
}

fn cmd_eval(term: &str, model: Option<&str>, kind: SemiringKind, out: &mut impl Write) -> Result<ExitCode> {
    let program = load_program(term)?;
    let env = load_env(&[&program], model)?;
    let t = term_of(program, term)?;
    typecheck(&t, &env)?;
    let text = match kind {
        SemiringKind::Bool => eval_in::<Boolean>(&t, &env)?,
        SemiringKind::NonNegRational => eval_in::<NonNegRational>(&t, &env)?,
        SemiringKind::ComplexRational => eval_in::<ComplexRational>(&t, &env)?,
    };
    writeln!(out, "{text}")?;
    Ok(ExitCode::SUCCESS)
}

fn eval_in<S: Semiring>(t: &Term, env: &Env) -> Result<String> {
    let model = Model::<S>::from_env(env)?;
    Ok(eval(t, &model)?.to_string())
}

fn cmd_equal(
    left: &str,
    right: &str,
    model: Option<&str>,
    strategy: Strategy,
    explain: bool,
    out: &mut impl Write,
) -> Result<ExitCode> {
    let (p1, p2) = (load_program(left)?, load_program(right)?);
    let env = load_env(&[&p1, &p2], model)?;
    let (t1, t2) = (term_of(p1, left)?, term_of(p2, right)?);
    let result = terms_equal(&t1, &t2, &env, strategy)?;
    writeln!(out, "{}", result.verdict)?;
    if explain {
        writeln!(out, "{}", result.certificate)?;
    }
    Ok(status(result.verdict == Verdict::Equal))
}

fn cmd_transfer(hom: &str, matrix: Option<&str>, run: &RunArgs, out: &mut impl Write) -> Result<ExitCode> {
    let reports = run_transfer(hom, &run.suite()).ok_or_else(|| anyhow!("unknown homomorphism `{hom}`"))?;
    let passed = reports.iter().all(|r| r.passed);
    for r in &reports {
        match run.format {
            Format::Jsonl => writeln!(out, "{}", r.to_json())?,
            Format::Text => writeln!(out, "{r}")?,
        }
    }
    if let Some(text) = matrix {
        let image = demo::transfer_image(hom, text)?;
        match run.format {
            Format::Jsonl => writeln!(out, "{}", serde_json::json!({ "image": image }))?,
            Format::Text => writeln!(out, "image: {image}")?,
        }
    }
    Ok(status(passed))
}
