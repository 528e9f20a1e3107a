//! Command-line front end for `bgkit-core`.
//!
//! Exit codes: 0 success (including negative answers such as "not
//! conjugate"), 1 input outside the operation's domain, 2 syntax or usage
//! error, 3 bit budget exceeded, 4 internal contradiction.

use std::ffi::OsString;
use std::io::Write;

use bgkit_core::automorphisms::{apply_aut, classify, compose_out, invert_out, std_aut};
use bgkit_core::britton::{britton_reduce, cyclic_reduce_g, g_is_identity};
use bgkit_core::conjugacy::{chain_search, ChainSearch};
use bgkit_core::h_arith::{eval_h_with, h_normal_form, psi};
use bgkit_core::{AutImages, Budget, Classification, Dyadic, Error, Word};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Map, Value};

#[derive(Debug, Parser)]
#[command(
    name = "bgkit",
    version,
    about = "Word problems, conjugacy and automorphisms of the Baumslag-Gersten group"
)]
struct Cli {
    /// Largest number of bits any intermediate integer may occupy.
    #[arg(long, global = true, env = "BGKIT_BIT_BUDGET", default_value_t = Budget::DEFAULT_BITS)]
    bit_budget: u64,

    /// Longest conjugacy chain to search for.
    #[arg(long, global = true, default_value_t = bgkit_core::conjugacy::DEFAULT_MAX_DEPTH)]
    max_depth: usize,

    /// Print one JSON object instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Britton-reduce a word of G.
    Reduce { word: Word },
    /// Decide whether a word of G is the identity.
    IsId { word: Word },
    /// Evaluate a word of H as an affine pair and print its normal form.
    EvalH { word: Word },
    /// Dyadic value of a word of H that commutes with x.
    Psi { word: Word },
    /// Conjugacy of two words of G.
    Conj { u: Word, v: Word },
    /// Classify the endomorphism given by generator images.
    Classify(ClassifyArgs),
    /// Standard automorphisms and Out(G) arithmetic.
    #[command(subcommand)]
    Aut(AutCommand),
}

#[derive(Debug, Args)]
struct ClassifyArgs {
    #[arg(long)]
    x: Word,
    #[arg(long)]
    y: Word,
    #[arg(long)]
    t: Word,
}

#[derive(Debug, Subcommand)]
enum AutCommand {
    /// Images of the standard automorphism with the given class.
    Std {
        #[arg(allow_hyphen_values = true)]
        d: Dyadic,
    },
    /// Apply the standard automorphism with class `d` to a word.
    Apply {
        #[arg(allow_hyphen_values = true)]
        d: Dyadic,
        word: Word,
    },
    /// Sum of two classes.
    Compose {
        #[arg(allow_hyphen_values = true)]
        d1: Dyadic,
        #[arg(allow_hyphen_values = true)]
        d2: Dyadic,
    },
    /// Negative of a class.
    Invert {
        #[arg(allow_hyphen_values = true)]
        d: Dyadic,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Reduce { .. } => "reduce",
            Command::IsId { .. } => "is-id",
            Command::EvalH { .. } => "eval-h",
            Command::Psi { .. } => "psi",
            Command::Conj { .. } => "conj",
            Command::Classify(_) => "classify",
            Command::Aut(AutCommand::Std { .. }) => "aut std",
            Command::Aut(AutCommand::Apply { .. }) => "aut apply",
            Command::Aut(AutCommand::Compose { .. }) => "aut compose",
            Command::Aut(AutCommand::Invert { .. }) => "aut invert",
        }
    }
}

/// A command's answer: text lines and the JSON fields beyond `command` and `budget_bits`.
struct Answer {
    text: String,
    fields: Map<String, Value>,
}

impl Answer {
    fn new(text: impl Into<String>, result: Value) -> Self {
        let mut fields = Map::new();
        fields.insert("result".into(), result);
        Answer {
            text: text.into(),
            fields,
        }
    }

    fn with(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.fields.insert(key.into(), value.into());
        self
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Syntax { .. } | Error::InvalidBudget { .. } => 2,
        Error::BudgetExceeded { .. } => 3,
        Error::InternalContradiction(_) => 4,
        _ => 1,
    }
}

fn execute(cmd: &Command, budget: &Budget, max_depth: usize) -> Result<Answer, Error> {
    Ok(match cmd {
        Command::Reduce { word } => {
            let g = britton_reduce(word, budget)?;
            Answer::new(
                format!("{g} (t-length {})", g.t_length()),
                g.to_string().into(),
            )
            .with("t_length", g.t_length())
        }
        Command::IsId { word } => {
            let id = g_is_identity(word, budget)?;
            Answer::new(id.to_string(), id.into())
        }
        Command::EvalH { word } => {
            let a = eval_h_with(word, budget)?;
            let nf = h_normal_form(&a);
            Answer::new(
                format!("{a} = {nf}"),
                json!({ "pair": a.to_string(), "normal_form": nf.to_string() }),
            )
        }
        Command::Psi { word } => match psi(&eval_h_with(word, budget)?) {
            Ok(d) => Answer::new(d.to_string(), d.to_string().into()),
            Err(Error::NotInCentralizer { y_exponent }) => Answer::new(
                format!("not in centralizer (total y-exponent {y_exponent})"),
                "not_in_centralizer".into(),
            ),
            Err(e) => return Err(e),
        },
        Command::Conj { u, v } => conj(u, v, budget, max_depth)?,
        Command::Classify(ClassifyArgs { x, y, t }) => {
            let images = AutImages::new(x.clone(), y.clone(), t.clone());
            let c = classify(&images, budget)?;
            let answer = Answer::new(c.to_string(), c.kind().into());
            match c {
                Classification::NotHom { relation, residue } => answer.with(
                    "witness",
                    json!({ "relation": relation.to_string(), "residue": residue.to_string() }),
                ),
                Classification::Degenerate { t_image } => {
                    answer.with("t_image", t_image.to_string())
                }
                Classification::Aut { out, conjugator } => answer
                    .with("out_class", out.to_string())
                    .with("certificate", conjugator.to_string()),
            }
        }
        Command::Aut(AutCommand::Std { d }) => {
            let f = std_aut(d);
            Answer::new(
                format!("x -> {}\ny -> {}\nt -> {}", f.x, f.y, f.t),
                json!({ "x": f.x.to_string(), "y": f.y.to_string(), "t": f.t.to_string() }),
            )
            .with("out_class", d.to_string())
        }
        Command::Aut(AutCommand::Apply { d, word }) => {
            let g = apply_aut(&std_aut(d), word, budget)?;
            Answer::new(g.to_string(), g.to_string().into())
                .with("t_length", g.t_length())
                .with("out_class", d.to_string())
        }
        Command::Aut(AutCommand::Compose { d1, d2 }) => {
            let d = compose_out(d1, d2).to_string();
            Answer::new(d.clone(), d.clone().into()).with("out_class", d)
        }
        Command::Aut(AutCommand::Invert { d }) => {
            let d = invert_out(d).to_string();
            Answer::new(d.clone(), d.clone().into()).with("out_class", d)
        }
    })
}

/// Compares cyclic cores; when both lie in `H`, searches for a chain between
/// them and converts it into a conjugator for the original words.
fn conj(u: &Word, v: &Word, budget: &Budget, max_depth: usize) -> Result<Answer, Error> {
    let (cu, core_u) = cyclic_reduce_g(u, budget)?;
    let (cv, core_v) = cyclic_reduce_g(v, budget)?;
    let lengths = [core_u.t_length(), core_v.t_length()];
    let mut text = format!("core t-lengths: {} {}\n", lengths[0], lengths[1]);
    let answer = |text: String, result: &str| {
        Answer::new(text, result.into()).with("t_length", json!(lengths))
    };

    if lengths[0] != lengths[1] {
        text.push_str("result: not conjugate");
        return Ok(answer(text, "not_conjugate"));
    }
    let (Some(a), Some(b)) = (core_u.as_h(), core_v.as_h()) else {
        text.push_str("result: undecided (equal nonzero t-lengths)");
        return Ok(answer(text, "undecided"));
    };
    Ok(match chain_search(a, b, budget, max_depth)? {
        ChainSearch::Found(cert) => {
            let r = cu.concat(&cert.global_conjugator()).concat(&cv.inverse());
            let conjugator = britton_reduce(&r, budget)?.to_word();
            if !cu.is_identity() || !cv.is_identity() {
                text.push_str(&format!("cores: {core_u} ~ {core_v}\n"));
            }
            text.push_str(&format!(
                "result: conjugate\n{cert}\nconjugator: {conjugator}"
            ));
            answer(text, "conjugate")
                .with("certificate", cert.to_string())
                .with("conjugator", conjugator.to_string())
        }
        ChainSearch::NoChain {
            depth_capped: false,
        } => {
            text.push_str("result: not conjugate");
            answer(text, "not_conjugate")
        }
        ChainSearch::NoChain { depth_capped: true } => {
            text.push_str(&format!("result: no chain within depth {max_depth}"));
            answer(text, "no_chain_within_depth")
        }
    })
}

fn emit(out: &mut dyn Write, text: &str) {
    let _ = writeln!(out, "{text}");
}

/// Runs the CLI on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    let name = cli.command.name();
    let result = Budget::new(cli.bit_budget).and_then(|b| execute(&cli.command, &b, cli.max_depth));
    match result {
        Ok(answer) => {
            if cli.json {
                let mut obj = answer.fields;
                obj.insert("command".into(), name.into());
                obj.insert("budget_bits".into(), cli.bit_budget.into());
                emit(out, &Value::Object(obj).to_string());
            } else {
                emit(out, &answer.text);
            }
            0
        }
        Err(e) => {
            if cli.json {
                let obj = json!({ "command": name, "error": e.to_string(), "budget_bits": cli.bit_budget });
                emit(out, &obj.to_string());
            }
            emit(err, &format!("error: {e}"));
            exit_code(&e)
        }
    }
}
