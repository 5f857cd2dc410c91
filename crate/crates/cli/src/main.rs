//! `sepmodels`: check propositions against instances in either model,
//! translate instances between models, run the resource-monoid law checker,
//! build automorphism witnesses and apply group actions.

use std::ffi::OsString;
use std::io::{self, Write};
use std::path::Path;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use sepmodels::dsl::{parse_prob_prop, parse_store_prop};
use sepmodels::group::{
    act_on_measured_partition, act_on_nom_store, act_on_nom_subst, act_on_step_fn, correspondence_witness,
    homogeneity_auto, FinPerm, PwAffine,
};
use sepmodels::io::{self as files, ProbM1File, ProbM2File, StoreM1File, StoreM2File};
use sepmodels::monoid::{check_laws, fin_prob_rm, partition_rm, store_rm, LawReport};
use sepmodels::prob::{
    make_decoder, sat_prob_m1, sat_prob_m2, translate_prob_m1_to_m2, DistMode, EvalOptions, FinOmega,
    DEFAULT_BUDGET,
};
use sepmodels::store::{sat_store_m1, sat_store_m2, translate_store_m1_to_m2};
use sepmodels::{Error, MPartition, MeasuredPartition};

const GRAMMAR: &str = "\
Proposition syntax:
  prop := or
  or   := and (\"\\/\" and)*
  and  := star (\"/\\\" star)*
  star := atom (\"*\" atom)*
  atom := \"true\" | ident \"|->\" int | ident \"~\" pmf | \"(\" prop \")\"
  pmf  := \"ber(\" rat \")\" | \"{\" int \":\" rat (\",\" int \":\" rat)* \"}\"
  rat  := int | int \"/\" int
\"*\" binds tighter than \"/\\\", which binds tighter than \"\\/\"; all are left-associative.

Exit codes: 0 SAT / success, 1 UNSAT / disagreement / law violations,
2 input or parse error, 3 enumeration budget exceeded.";

#[derive(Parser, Debug)]
#[command(name = "sepmodels", version, about = "Decide store and probabilistic separation logic in two discrete models", after_help = GRAMMAR)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value = "human")]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Model {
    StoreM1,
    StoreM2,
    ProbM1,
    ProbM2,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Logic {
    Store,
    Prob,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Instance {
    Store,
    Partition,
    Finprob,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Action {
    Perm,
    Affine,
}

#[derive(clap::Args, Debug)]
struct EvalArgs {
    /// Proposition: a file name, or the proposition text itself.
    #[arg(long)]
    prop: String,
    /// Instance file (JSON).
    #[arg(long)]
    instance: String,
    /// Largest number of atoms/cells for which `*` is decided.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: usize,
    /// Read `X ~ mu` in Model 2 as "every level set is a single cell".
    #[arg(long)]
    literal_dist: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide a proposition on an instance.
    Check {
        #[arg(value_enum)]
        model: Model,
        #[command(flatten)]
        eval: EvalArgs,
    },
    /// Translate a Model 1 instance to Model 2.
    Translate {
        #[arg(value_enum)]
        logic: Logic,
        #[arg(long)]
        instance: String,
    },
    /// Decide in Model 1, translate, decide in Model 2, compare.
    Equiv {
        #[arg(value_enum)]
        logic: Logic,
        #[command(flatten)]
        eval: EvalArgs,
    },
    /// Run the randomized resource-monoid law checker.
    Laws {
        #[arg(value_enum)]
        instance: Instance,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 500)]
        cases: usize,
        /// Number of sample points for the finite probability instance.
        #[arg(long, default_value_t = 6)]
        omega_size: usize,
    },
    /// Build an interval automorphism refining a surjection between encoded
    /// sample spaces.
    Homogeneity {
        #[arg(long)]
        surjection: String,
        /// Decoder of the surjection's target.
        #[arg(long)]
        dec: String,
        /// Decoder of the surjection's source.
        #[arg(long)]
        dec_prime: String,
    },
    /// Build an automorphism fixing partition A but not partition B.
    WitnessFix {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// Apply a permutation to a Model 2 store instance, or an interval
    /// bijection to a Model 2 probability instance.
    Act {
        #[arg(value_enum)]
        action: Action,
        /// Instance file to act on.
        #[arg(long)]
        on: String,
        /// Group element file: a list of [n, m] pairs, or a list of
        /// {"src", "dst"} pieces.
        #[arg(long)]
        by: String,
    },
}

type Outcome = Result<i32, Error>;

fn read(path: &str) -> Result<String, Error> {
    std::fs::read_to_string(path).map_err(|e| Error::input(format!("cannot read {path}: {e}")))
}

fn read_json<T: serde::de::DeserializeOwned>(path: &str) -> Result<T, Error> {
    files::from_json(&read(path)?).map_err(|e| match e {
        Error::Input(m) => Error::input(format!("{path}: {m}")),
        other => other,
    })
}

fn prop_text(arg: &str) -> Result<String, Error> {
    if Path::new(arg).is_file() {
        read(arg)
    } else {
        Ok(arg.to_string())
    }
}

fn options(eval: &EvalArgs) -> EvalOptions {
    EvalOptions {
        budget: eval.budget,
        dist: if eval.literal_dist { DistMode::SingleCell } else { DistMode::UnionOfCells },
    }
}

fn verdict(b: bool) -> &'static str {
    if b {
        "SAT"
    } else {
        "UNSAT"
    }
}

fn emit(out: &mut dyn Write, text: &str) {
    let _ = writeln!(out, "{text}");
}

fn check(model: Model, eval: &EvalArgs, format: Format, out: &mut dyn Write) -> Outcome {
    let text = prop_text(&eval.prop)?;
    let opts = options(eval);
    let sat = match model {
        Model::StoreM1 => {
            let p = parse_store_prop(&text)?;
            let (s, g) = read_json::<StoreM1File>(&eval.instance)?.into_instance()?;
            sat_store_m1(&s, &g, &p)?
        }
        Model::StoreM2 => {
            let p = parse_store_prop(&text)?;
            let f: StoreM2File = read_json(&eval.instance)?;
            sat_store_m2(&f.store, &f.subst, &p)?
        }
        Model::ProbM1 => {
            let p = parse_prob_prop(&text)?;
            let (space, g) = read_json::<ProbM1File>(&eval.instance)?.into_instance()?;
            sat_prob_m1(&space, &g, &p, &opts)?
        }
        Model::ProbM2 => {
            let p = parse_prob_prop(&text)?;
            let f: ProbM2File = read_json(&eval.instance)?;
            sat_prob_m2(&f.partition, &f.rvs, &p, &opts)?
        }
    };
    match format {
        Format::Human => emit(out, verdict(sat)),
        Format::Json => emit(
            out,
            &json!({"model": model.to_possible_value().unwrap().get_name(), "verdict": verdict(sat)}).to_string(),
        ),
    }
    Ok(if sat { 0 } else { 1 })
}

fn translate(logic: Logic, instance: &str, out: &mut dyn Write) -> Outcome {
    let text = match logic {
        Logic::Store => {
            let (s, g) = read_json::<StoreM1File>(instance)?.into_instance()?;
            let (store, subst) = translate_store_m1_to_m2(&s, &g)?;
            files::to_json(&StoreM2File { store, subst })
        }
        Logic::Prob => {
            let (space, g) = read_json::<ProbM1File>(instance)?.into_instance()?;
            let dec = make_decoder(space.omega());
            let (partition, rvs) = translate_prob_m1_to_m2(&space, &g, &dec)?;
            files::to_json(&ProbM2File { partition, rvs })
        }
    };
    emit(out, &text);
    Ok(0)
}

fn equiv(logic: Logic, eval: &EvalArgs, format: Format, out: &mut dyn Write) -> Outcome {
    let text = prop_text(&eval.prop)?;
    let opts = options(eval);
    let (m1, m2) = match logic {
        Logic::Store => {
            let p = parse_store_prop(&text)?;
            let (s, g) = read_json::<StoreM1File>(&eval.instance)?.into_instance()?;
            let (s2, g2) = translate_store_m1_to_m2(&s, &g)?;
            (sat_store_m1(&s, &g, &p)?, sat_store_m2(&s2, &g2, &p)?)
        }
        Logic::Prob => {
            let p = parse_prob_prop(&text)?;
            let (space, g) = read_json::<ProbM1File>(&eval.instance)?.into_instance()?;
            let dec = make_decoder(space.omega());
            let (a, g2) = translate_prob_m1_to_m2(&space, &g, &dec)?;
            (sat_prob_m1(&space, &g, &p, &opts)?, sat_prob_m2(&a, &g2, &p, &opts)?)
        }
    };
    let agree = m1 == m2;
    match format {
        Format::Human => {
            emit(out, &format!("model 1: {}", verdict(m1)));
            emit(out, &format!("model 2: {}", verdict(m2)));
            emit(out, if agree { "agree" } else { "DISAGREE" });
        }
        Format::Json => emit(
            out,
            &json!({"model1": verdict(m1), "model2": verdict(m2), "agree": agree}).to_string(),
        ),
    }
    Ok(if agree { 0 } else { 1 })
}

fn laws(instance: Instance, seed: u64, cases: usize, omega_size: usize, format: Format, out: &mut dyn Write) -> Outcome {
    let report: LawReport = match instance {
        Instance::Store => check_laws(&store_rm(), seed, cases),
        Instance::Partition => check_laws(&partition_rm(), seed, cases),
        Instance::Finprob => {
            if omega_size == 0 {
                return Err(Error::input("--omega-size must be positive"));
            }
            let omega = FinOmega::new((0..omega_size).map(|i| format!("w{i}")))?;
            check_laws(&fin_prob_rm(omega), seed, cases)
        }
    };
    match format {
        Format::Human => {
            emit(out, &report.to_string());
            for v in &report.violations {
                emit(out, &format!("{} (case seed {}): {}", v.law, v.seed, v.elements.join(" ; ")));
            }
        }
        Format::Json => emit(out, &serde_json::to_string(&report).expect("serializable")),
    }
    Ok(if report.passed() { 0 } else { 1 })
}

fn print_affine(pi: &PwAffine, format: Format, out: &mut dyn Write) {
    match format {
        Format::Human => {
            for piece in pi.pieces() {
                emit(out, &format!("{piece:?}"));
            }
        }
        Format::Json => emit(out, &serde_json::to_string(pi).expect("serializable")),
    }
}

fn act(action: Action, on: &str, by: &str, out: &mut dyn Write) -> Outcome {
    let text = match action {
        Action::Perm => {
            let pi: FinPerm = read_json(by)?;
            let f: StoreM2File = read_json(on)?;
            files::to_json(&StoreM2File {
                store: act_on_nom_store(&f.store, &pi),
                subst: act_on_nom_subst(&f.subst, &pi),
            })
        }
        Action::Affine => {
            let pi: PwAffine = read_json(by)?;
            let raw = read(on)?;
            match files::from_json::<ProbM2File>(&raw) {
                Ok(f) => files::to_json(&ProbM2File {
                    partition: act_on_measured_partition(&f.partition, &pi),
                    rvs: f.rvs.iter().map(|(x, s)| (x.clone(), act_on_step_fn(s, &pi))).collect(),
                }),
                Err(_) => match files::from_json::<MeasuredPartition>(&raw) {
                    Ok(p) => files::to_json(&act_on_measured_partition(&p, &pi)),
                    Err(e) => {
                        return Err(Error::input(format!(
                            "{on}: expected a Model 2 probability instance or a measured partition ({})",
                            strip(&e)
                        )))
                    }
                },
            }
        }
    };
    emit(out, &text);
    Ok(0)
}

fn strip(e: &Error) -> String {
    match e {
        Error::Input(m) => m.clone(),
        other => other.to_string(),
    }
}

fn dispatch(cli: Cli, out: &mut dyn Write) -> Outcome {
    let format = cli.format;
    match cli.command {
        Command::Check { model, eval } => check(model, &eval, format, out),
        Command::Translate { logic, instance } => translate(logic, &instance, out),
        Command::Equiv { logic, eval } => equiv(logic, &eval, format, out),
        Command::Laws { instance, seed, cases, omega_size } => laws(instance, seed, cases, omega_size, format, out),
        Command::Homogeneity { surjection, dec, dec_prime } => {
            let p = files::surjection_from_json(&read(&surjection)?)?;
            let dec = files::decoder_from_json(&read(&dec)?)?;
            let dec_prime = files::decoder_from_json(&read(&dec_prime)?)?;
            print_affine(&homogeneity_auto(&p, &dec_prime, &dec)?, format, out);
            Ok(0)
        }
        Command::WitnessFix { a, b } => {
            let a: MPartition = read_json(&a)?;
            let b: MPartition = read_json(&b)?;
            print_affine(&correspondence_witness(&a, &b)?, format, out);
            Ok(0)
        }
        Command::Act { action, on, by } => act(action, &on, &by, out),
    }
}

/// Run the command line `argv` (including the program name), writing results
/// to `out` and a one-line diagnostic to `err`. Returns the exit code.
fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{}", e.render());
                return 0;
            }
            let rendered = e.render().to_string();
            let line = rendered.lines().next().unwrap_or("invalid arguments");
            let line = line.strip_prefix("error: ").unwrap_or(line);
            let _ = writeln!(err, "error: usage: {line}");
            return 2;
        }
    };
    match dispatch(cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {}", e.to_string().replace('\n', " "));
            match e {
                Error::Budget { .. } => 3,
                _ => 2,
            }
        }
    }
}

fn main() -> ExitCode {
    let code = run(std::env::args_os(), &mut io::stdout().lock(), &mut io::stderr().lock());
    ExitCode::from(code as u8)
}
