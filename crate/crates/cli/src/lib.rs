//! Command-line front end: argument parsing, dispatch and JSON output.

pub mod class_spec;
pub mod docs;

use std::io::Read;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use docs::{
    BettiDoc, ClassDoc, CommandEcho, ComplexDocument, CupDoc, DetectDoc, ErrorDocument, GraphDoc, MasseyDoc,
    ObstructionsDoc, Payload, ResultDocument,
};
use zk_massey::hochster::DEFAULT_BETTI_CAP;
use zk_massey::massey::{coset_check, triple_massey};
use zk_massey::obstruction::{catalog, detect};
use zk_massey::oracle::{self, ComplexMode};
use zk_massey::{CohomologyClass, Error, Field, MomentAngleModel};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_DISAGREEMENT: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "zk-massey", version, about = "Massey products in moment-angle complexes")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct FieldArgs {
    /// gf2, gfp (with --p), gfN for a prime N, or rational
    #[arg(long, default_value = "gf2")]
    pub field: String,
    /// Modulus for --field gfp
    #[arg(long)]
    pub p: Option<u32>,
}

impl FieldArgs {
    pub fn field(&self) -> Result<Field, Error> {
        let bad = || Error::InvalidField(format!("unknown field {:?}", self.field));
        match self.field.to_ascii_lowercase().as_str() {
            "rational" | "q" => Ok(Field::Rational),
            "gfp" => Field::prime(self.p.ok_or_else(|| Error::InvalidField("--field gfp needs --p".into()))?),
            other => {
                let p = other.strip_prefix("gf").ok_or_else(bad)?.parse().map_err(|_| bad())?;
                Field::prime(p)
            }
        }
    }
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Complex document (JSON), or - for stdin
    #[arg(long = "in", value_name = "FILE")]
    pub input: PathBuf,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum ModeArg {
    Graph,
    Flag,
}

impl From<ModeArg> for ComplexMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Graph => ComplexMode::Graph,
            ModeArg::Flag => ComplexMode::Flag,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Betti numbers of Z_K via the full subcomplexes
    Betti {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        field: FieldArgs,
        /// Include one entry per support J
        #[arg(long)]
        by_subset: bool,
    },
    /// Product of two classes
    Cup {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
    },
    /// Triple Massey product of three classes
    Massey {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, allow_hyphen_values = true)]
        a1: String,
        #[arg(long, allow_hyphen_values = true)]
        a2: String,
        #[arg(long, allow_hyphen_values = true)]
        a3: String,
        /// Also perturb the defining system this many times
        #[arg(long)]
        coset_samples: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Six-vertex full subcomplexes whose one-skeleton is an obstruction graph
    Detect {
        #[command(flatten)]
        input: InputArgs,
    },
    /// Compare detection with direct Massey computation on every six-vertex graph
    VerifyTheorem {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, value_enum, default_value = "graph")]
        mode: ModeArg,
        /// Worker threads
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Six-vertex graphs carrying a non-trivial triple Massey product
    DeriveObstructions {
        #[command(flatten)]
        field: FieldArgs,
    },
    /// Non-isomorphism of the obstruction graphs
    VerifyLemma,
}

/// What the process should print and return.
#[derive(Debug, Default)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Usage(String),
    Io(String),
    Core(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl Failure {
    fn document(&self) -> ErrorDocument {
        let (error, message, exit_status) = match self {
            Failure::Usage(m) => ("usage", m.clone(), EXIT_INPUT),
            Failure::Io(m) => ("io", m.clone(), EXIT_INPUT),
            Failure::Core(e @ Error::Invariant(_)) => ("internal", e.to_string(), EXIT_INTERNAL),
            Failure::Core(e) => ("input", e.to_string(), EXIT_INPUT),
        };
        ErrorDocument { error: error.into(), message, exit_status }
    }
}

fn read_complex(path: &PathBuf, stdin: &mut dyn Read) -> Result<ComplexDocument, Failure> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        stdin.read_to_string(&mut s).map_err(|e| Failure::Io(format!("stdin: {e}")))?;
        s
    } else {
        std::fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?
    };
    serde_json::from_str(&text).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn load_model(input: &InputArgs, field: Field, stdin: &mut dyn Read) -> Result<MomentAngleModel, Failure> {
    Ok(MomentAngleModel::new(read_complex(&input.input, stdin)?.build()?, field))
}

fn class(model: &MomentAngleModel, spec: &str) -> Result<CohomologyClass, Failure> {
    let m = model.complex().m();
    Ok(model.class(class_spec::parse(model.field(), m, spec)?)?)
}

fn class_doc(model: &MomentAngleModel, c: &CohomologyClass) -> Result<ClassDoc, Failure> {
    Ok(ClassDoc::new(c, &model.class_vector(c.representative())?))
}

fn summary_table(report: &oracle::VerificationReport) -> String {
    let s = &report.summary;
    let rows = [
        ("field", report.field.to_string()),
        ("mode", format!("{:?}", report.mode).to_lowercase()),
        ("graphs", s.total.to_string()),
        ("agreements", s.agreements.to_string()),
        ("detected", s.detected.to_string()),
        ("witnessed", s.witnessed.to_string()),
        ("with candidate triples", s.with_candidates.to_string()),
        ("complement has perfect matching", s.with_perfect_matching.to_string()),
        ("witnessed isomorphism classes", s.witnessed_classes.len().to_string()),
        ("wall time (ms)", report.wall_time_ms.to_string()),
        ("verdict", if report.passed() { "pass" } else { "FAIL" }.into()),
    ];
    rows.iter().map(|(k, v)| format!("{k:<32} {v}\n")).collect()
}

fn dispatch(
    command: &Command,
    stdin: &mut dyn Read,
    stderr: &mut String,
) -> Result<(Option<Field>, Payload, i32), Failure> {
    Ok(match command {
        Command::Betti { input, field, by_subset } => {
            let f = field.field()?;
            let model = load_model(input, f, stdin)?;
            let table = model.betti_table(DEFAULT_BETTI_CAP)?;
            (Some(f), Payload::Betti(BettiDoc::new(&table, *by_subset)), EXIT_OK)
        }
        Command::Cup { input, field, a, b } => {
            let f = field.field()?;
            let model = load_model(input, f, stdin)?;
            let (a, b) = (class(&model, a)?, class(&model, b)?);
            let product = model.cup_classes(&a, &b)?;
            let doc = CupDoc { a: class_doc(&model, &a)?, b: class_doc(&model, &b)?, product: class_doc(&model, &product)? };
            (Some(f), Payload::Cup(doc), EXIT_OK)
        }
        Command::Massey { input, field, a1, a2, a3, coset_samples, seed } => {
            let f = field.field()?;
            let model = load_model(input, f, stdin)?;
            let (a1, a2, a3) = (class(&model, a1)?, class(&model, a2)?, class(&model, a3)?);
            let result = triple_massey(&model, &a1, &a2, &a3)?;
            let coset = match coset_samples {
                Some(n) if result.defined => Some(coset_check(&model, &result, *n, *seed)?),
                _ => None,
            };
            (Some(f), Payload::Massey(MasseyDoc::new(&result, coset.as_ref())), EXIT_OK)
        }
        Command::Detect { input } => {
            let k = read_complex(&input.input, stdin)?.build()?;
            let hits = detect(&k)?;
            (None, Payload::Detect(DetectDoc::new(&hits, catalog().classes())), EXIT_OK)
        }
        Command::VerifyTheorem { field, mode, jobs } => {
            let f = field.field()?;
            let report = oracle::verify_theorem(f, (*mode).into(), *jobs)?;
            stderr.push_str(&summary_table(&report));
            let code = if report.passed() { EXIT_OK } else { EXIT_DISAGREEMENT };
            (Some(f), Payload::Verification(Box::new(report)), code)
        }
        Command::DeriveObstructions { field } => {
            let f = field.field()?;
            let graphs = oracle::derive_minimal_obstructions(f)?;
            let matches_catalog = graphs == catalog().classes();
            let doc = ObstructionsDoc { graphs: graphs.iter().map(GraphDoc::from).collect(), matches_catalog };
            let code = if matches_catalog { EXIT_OK } else { EXIT_DISAGREEMENT };
            (Some(f), Payload::Obstructions(doc), code)
        }
        Command::VerifyLemma => {
            let report = oracle::verify_lemma();
            let code = if report.passed { EXIT_OK } else { EXIT_DISAGREEMENT };
            (None, Payload::Lemma(report), code)
        }
    })
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Betti { .. } => "betti",
        Command::Cup { .. } => "cup",
        Command::Massey { .. } => "massey",
        Command::Detect { .. } => "detect",
        Command::VerifyTheorem { .. } => "verify-theorem",
        Command::DeriveObstructions { .. } => "derive-obstructions",
        Command::VerifyLemma => "verify-lemma",
    }
}

fn error_outcome(failure: Failure) -> Outcome {
    let doc = failure.document();
    Outcome {
        code: doc.exit_status,
        stdout: String::new(),
        stderr: serde_json::to_string(&doc).expect("error documents serialize") + "\n",
    }
}

/// Parses `argv` (including the program name) and runs the command.
pub fn run(argv: &[String], stdin: &mut dyn Read) -> Outcome {
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => return Outcome { code: EXIT_OK, stdout: e.to_string(), stderr: String::new() },
        Err(e) => return error_outcome(Failure::Usage(e.to_string())),
    };
    let mut stderr = String::new();
    match dispatch(&cli.command, stdin, &mut stderr) {
        Ok((field, payload, code)) => {
            let doc = ResultDocument {
                command: CommandEcho { name: command_name(&cli.command).into(), args: argv[1..].to_vec() },
                field,
                payload,
                exit_status: code,
            };
            Outcome { code, stdout: doc.to_json() + "\n", stderr }
        }
        Err(f) => {
            let mut out = error_outcome(f);
            out.stderr.insert_str(0, &stderr);
            out
        }
    }
}
