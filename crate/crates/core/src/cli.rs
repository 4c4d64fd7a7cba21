//! The `desobs` command-line front end.
//!
//! Exit codes: 0 success (or property holds), 1 parse or I/O error,
//! 2 validation error, 3 property fails, 4 iteration cap reached.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::alphabet::{Alphabet, Word};
use crate::ctrlobs::sup_ctrl_relobs;
use crate::error::Error;
use crate::lang::Lang;
use crate::model::{parse_model, write_finite, write_lang};
use crate::oracle::{self, lang_to_finite_exact, FiniteLang};
use crate::projection::{inverse_project, project};
use crate::relobs::{relobs_witness, sup_relobs, Problem, SynthesisOptions, DEFAULT_MAX_ITER};
use crate::supremal::{
    controllability_witness, normality_witness, sup_closed, sup_controllable, sup_normal,
    sup_normal_unrestricted,
};
use crate::trace::SynthesisTrace;

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 1;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_PROPERTY_FAILS: i32 = 3;
pub const EXIT_ITERATION_CAP: i32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "desobs",
    version,
    about = "Supervisor synthesis under partial observation"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Supremal relatively observable sublanguage of the specification.
    Supobs(SynthesisArgs),
    /// Supremal controllable and relatively observable sublanguage.
    Supcobs(SynthesisArgs),
    /// Test a language for a property; exit 3 with a witness when it fails.
    Check(CheckArgs),
    /// Apply a single language operator.
    Ops(OpsArgs),
    /// Brute-force reference computations on finite languages.
    Oracle(OracleArgs),
}

#[derive(Debug, Args)]
struct SynthesisArgs {
    #[arg(long)]
    plant: PathBuf,
    #[arg(long)]
    spec: PathBuf,
    #[arg(long)]
    out: PathBuf,
    /// Write one JSON record per iteration.
    #[arg(long)]
    trace: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_MAX_ITER)]
    max_iter: usize,
    /// Replace the specification with its intersection with the plant.
    #[arg(long)]
    allow_spec_trim: bool,
    /// Print members of the result up to this length.
    #[arg(long, value_name = "MAXLEN")]
    enumerate: Option<usize>,
    /// Include the inner Ω records of every Γ step in the trace.
    #[arg(long)]
    nested_trace: bool,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum CheckKind {
    Relobs,
    Normal,
    Controllable,
    Ctrlobs,
}

#[derive(Debug, Args)]
struct CheckArgs {
    kind: CheckKind,
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    plant: PathBuf,
    /// Not needed for `controllable`.
    #[arg(long)]
    spec: Option<PathBuf>,
    #[arg(long)]
    allow_spec_trim: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Op {
    Project,
    InverseProject,
    Complement,
    Union,
    Intersect,
    Difference,
    Closure,
    AppendSigma,
    Supn,
    Supf,
    Supc,
}

#[derive(Debug, Args)]
struct OpsArgs {
    op: Op,
    /// Operand files, in order.
    #[arg(long = "in", required = true)]
    inputs: Vec<PathBuf>,
    /// Target alphabet for `inverse-project`.
    #[arg(long)]
    plant: Option<PathBuf>,
    /// Event for `append-sigma`.
    #[arg(long)]
    event: Option<String>,
    #[arg(long)]
    out: PathBuf,
    #[arg(long, value_name = "MAXLEN")]
    enumerate: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OracleCmd {
    Supobs,
    Supcobs,
    CheckRelobs,
    F,
    Supn,
    Supf,
    Supc,
}

#[derive(Debug, Args)]
struct OracleArgs {
    cmd: OracleCmd,
    #[arg(long)]
    plant: Option<PathBuf>,
    #[arg(long)]
    spec: Option<PathBuf>,
    #[arg(long = "in")]
    inputs: Vec<PathBuf>,
    /// Result as a finite-language file.
    #[arg(long)]
    out: Option<PathBuf>,
}

/// A failed command: message for stderr and the exit code.
#[derive(Debug)]
struct Failure {
    code: i32,
    msg: String,
}

impl Failure {
    fn validation(msg: impl Into<String>) -> Self {
        Self {
            code: EXIT_VALIDATION,
            msg: msg.into(),
        }
    }

    fn io(path: &Path, err: std::io::Error) -> Self {
        Self {
            code: EXIT_PARSE,
            msg: format!("{}: {err}", path.display()),
        }
    }
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        let code = match err {
            Error::Parse { .. } => EXIT_PARSE,
            Error::IterationCap(_) => EXIT_ITERATION_CAP,
            _ => EXIT_VALIDATION,
        };
        Self {
            code,
            msg: err.to_string(),
        }
    }
}

type CmdResult = std::result::Result<i32, Failure>;

/// Parses `args` (program name first), runs the command and returns the
/// process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let result = match cli.command {
        Command::Supobs(a) => cmd_synthesis(&a, false),
        Command::Supcobs(a) => cmd_synthesis(&a, true),
        Command::Check(a) => cmd_check(&a),
        Command::Ops(a) => cmd_ops(&a),
        Command::Oracle(a) => cmd_oracle(&a),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.msg);
            f.code
        }
    }
}

fn load(path: &Path) -> std::result::Result<Lang, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::io(path, e))?;
    let model = parse_model(&text).map_err(|e| Failure {
        code: EXIT_PARSE,
        msg: format!("{}: {e}", path.display()),
    })?;
    Ok(model.to_lang())
}

/// Re-expresses `l` over `target`, naming the file on failure.
fn align(l: &Lang, target: &Arc<Alphabet>, what: &str) -> std::result::Result<Lang, Failure> {
    l.remap(target.clone()).map_err(|e| match e {
        Error::UnknownEvent(name) => Failure::validation(format!(
            "{what}: event `{name}` is not in the plant alphabet"
        )),
        other => Failure::validation(format!("{what}: {other}")),
    })
}

fn load_problem(plant: &Path, spec: &Path, trim: bool) -> std::result::Result<Problem, Failure> {
    let m = load(plant)?;
    let c = align(&load(spec)?, m.alphabet(), "specification")?;
    let problem = if trim {
        Problem::with_spec_trim(m, c)
    } else {
        Problem::new(m, c)
    };
    problem.map_err(|e| match e {
        Error::NotSubset(_) => Failure::validation(
            "specification is not contained in the plant (use --allow-spec-trim to intersect)",
        ),
        other => other.into(),
    })
}

fn write_out(path: &Path, text: &str) -> std::result::Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::io(path, e))
}

fn print_members(l: &Lang, max_len: Option<usize>) {
    if let Some(n) = max_len {
        for w in l.enumerate_strings(n) {
            println!("{}", l.alphabet().format_word(&w));
        }
    }
}

fn cmd_synthesis(a: &SynthesisArgs, controllable: bool) -> CmdResult {
    let p = load_problem(&a.plant, &a.spec, a.allow_spec_trim)?;
    let opts = SynthesisOptions {
        max_iter: a.max_iter,
        nested_trace: a.nested_trace,
    };
    let (result, trace): (Lang, SynthesisTrace) = if controllable {
        sup_ctrl_relobs(&p, &opts)?
    } else {
        sup_relobs(&p, &opts)?
    };
    write_out(&a.out, &write_lang(&result))?;
    if let Some(path) = &a.trace {
        write_out(path, &trace.to_json_lines())?;
    }
    eprintln!(
        "converged after {} applications; result has {} states",
        trace.applications(),
        result.num_states()
    );
    print_members(&result, a.enumerate);
    Ok(EXIT_OK)
}

fn describe_witness(alphabet: &Alphabet, w: &Word) -> String {
    let observed: Word = w
        .iter()
        .copied()
        .filter(|&e| alphabet.is_observable(e))
        .collect();
    format!(
        "{} (observed as {})",
        alphabet.format_word(w),
        alphabet.format_word(&observed)
    )
}

fn cmd_check(a: &CheckArgs) -> CmdResult {
    let m = load(&a.plant)?;
    let k = align(&load(&a.input)?, m.alphabet(), "candidate")?;
    let problem = |m: Lang| -> std::result::Result<Problem, Failure> {
        let spec = a
            .spec
            .as_ref()
            .ok_or_else(|| Failure::validation("this check needs --spec"))?;
        let c = align(&load(spec)?, m.alphabet(), "specification")?;
        let p = if a.allow_spec_trim {
            Problem::with_spec_trim(m, c)
        } else {
            Problem::new(m, c)
        };
        Ok(p?)
    };
    let witness = match a.kind {
        CheckKind::Controllable => controllability_witness(&k, &m)?,
        CheckKind::Normal => {
            let p = problem(m)?;
            normality_witness(&k, p.ambient())?
        }
        CheckKind::Relobs => {
            let p = problem(m)?;
            relobs_witness(&k, &p)?
        }
        CheckKind::Ctrlobs => {
            let p = problem(m.clone())?;
            match relobs_witness(&k, &p)? {
                Some(w) => Some(w),
                None => controllability_witness(&k, &m)?,
            }
        }
    };
    match witness {
        None => {
            eprintln!("property holds");
            Ok(EXIT_OK)
        }
        Some(w) => {
            eprintln!(
                "property fails; witness: {}",
                describe_witness(k.alphabet(), &w)
            );
            Ok(EXIT_PROPERTY_FAILS)
        }
    }
}

fn operands(
    a: &OpsArgs,
    arity: std::ops::RangeInclusive<usize>,
) -> std::result::Result<Vec<Lang>, Failure> {
    if !arity.contains(&a.inputs.len()) {
        return Err(Failure::validation(format!(
            "operator expects {} --in operand(s), got {}",
            if arity.start() == arity.end() {
                arity.start().to_string()
            } else {
                format!("{} to {}", arity.start(), arity.end())
            },
            a.inputs.len()
        )));
    }
    let mut langs = Vec::with_capacity(a.inputs.len());
    for path in &a.inputs {
        let l = load(path)?;
        let l = match langs.first() {
            Some(first) => align(&l, Lang::alphabet(first), &path.display().to_string())?,
            None => l,
        };
        langs.push(l);
    }
    Ok(langs)
}

fn cmd_ops(a: &OpsArgs) -> CmdResult {
    let result = match a.op {
        Op::Project => {
            let [l] = <[Lang; 1]>::try_from(operands(a, 1..=1)?).expect("arity checked");
            let lo = project(&l);
            if lo.alphabet().is_empty() {
                return Err(Failure::validation(
                    "no observable events; the projection cannot be written as a model file",
                ));
            }
            lo
        }
        Op::InverseProject => {
            let [lo] = <[Lang; 1]>::try_from(operands(a, 1..=1)?).expect("arity checked");
            let target = a.plant.as_ref().ok_or_else(|| {
                Failure::validation("inverse-project needs --plant for the target alphabet")
            })?;
            let target = load(target)?.alphabet().clone();
            let observable = Arc::new(target.observable_subalphabet());
            let lo = align(&lo, &observable, "operand")?;
            inverse_project(&lo, &target)?
        }
        Op::Complement => operands(a, 1..=1)?[0].complement(),
        Op::Closure => operands(a, 1..=1)?[0].prefix_closure(),
        Op::Supf => sup_closed(&operands(a, 1..=1)?[0]),
        Op::Union | Op::Intersect | Op::Difference | Op::Supc => {
            let [x, y] = <[Lang; 2]>::try_from(operands(a, 2..=2)?).expect("arity checked");
            match a.op {
                Op::Union => x.union(&y)?,
                Op::Intersect => x.intersect(&y)?,
                Op::Difference => x.difference(&y)?,
                _ => sup_controllable(&x, &y)?,
            }
        }
        Op::Supn => {
            let ls = operands(a, 1..=2)?;
            match ls.as_slice() {
                [l] => sup_normal_unrestricted(l),
                [k, h] => sup_normal(k, h)?,
                _ => unreachable!("arity checked"),
            }
        }
        Op::AppendSigma => {
            let l = &operands(a, 1..=1)?[0];
            let name = a
                .event
                .as_ref()
                .ok_or_else(|| Failure::validation("append-sigma needs --event"))?;
            l.append_event(l.alphabet().id(name)?)?
        }
    };
    write_out(&a.out, &write_lang(&result))?;
    print_members(&result, a.enumerate);
    Ok(EXIT_OK)
}

fn finite(l: &Lang) -> std::result::Result<FiniteLang, Failure> {
    Ok(lang_to_finite_exact(l, l.num_states())?)
}

fn cmd_oracle(a: &OracleArgs) -> CmdResult {
    let problem = || -> std::result::Result<(FiniteLang, FiniteLang), Failure> {
        let (Some(plant), Some(spec)) = (&a.plant, &a.spec) else {
            return Err(Failure::validation(
                "this oracle command needs --plant and --spec",
            ));
        };
        let m = load(plant)?;
        let c = align(&load(spec)?, m.alphabet(), "specification")?;
        Ok((finite(&m)?, finite(&c)?))
    };
    let inputs = |n: usize| -> std::result::Result<Vec<FiniteLang>, Failure> {
        if a.inputs.len() != n {
            return Err(Failure::validation(format!(
                "oracle command expects {n} --in operand(s), got {}",
                a.inputs.len()
            )));
        }
        let mut out: Vec<Lang> = Vec::new();
        for path in &a.inputs {
            let l = load(path)?;
            let l = match out.first() {
                Some(first) => align(&l, first.alphabet(), &path.display().to_string())?,
                None => l,
            };
            out.push(l);
        }
        out.iter().map(finite).collect()
    };
    let result = match a.cmd {
        OracleCmd::Supobs => {
            let (m, c) = problem()?;
            oracle::brute_sup_relobs(&c, &m)?
        }
        OracleCmd::Supcobs => {
            let (m, c) = problem()?;
            oracle::brute_sup_ctrl_relobs(&c, &m)?
        }
        OracleCmd::CheckRelobs | OracleCmd::F => {
            let (m, c) = problem()?;
            let k = a
                .inputs
                .first()
                .ok_or_else(|| Failure::validation("this oracle command needs --in"))?;
            let k = finite(&align(&load(k)?, m.alphabet(), "candidate")?)?;
            if a.cmd == OracleCmd::F {
                oracle::f_operator_definition(&k, &c, &m)?
            } else if oracle::check_relobs_definition(&k, &c, &m)? {
                eprintln!("property holds");
                return Ok(EXIT_OK);
            } else {
                eprintln!("property fails");
                return Ok(EXIT_PROPERTY_FAILS);
            }
        }
        OracleCmd::Supn => {
            let [k, h] = <[FiniteLang; 2]>::try_from(inputs(2)?).expect("arity checked");
            oracle::brute_sup_normal(&k, &h)?
        }
        OracleCmd::Supf => oracle::brute_sup_closed(&inputs(1)?[0])?,
        OracleCmd::Supc => {
            let [k, m] = <[FiniteLang; 2]>::try_from(inputs(2)?).expect("arity checked");
            oracle::brute_sup_controllable(&k, &m)?
        }
    };
    match &a.out {
        Some(path) => write_out(path, &write_finite(&result))?,
        None => return Err(Failure::validation("this oracle command needs --out")),
    }
    Ok(EXIT_OK)
}
