use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use rmc_core::automata::{apply, inclusion_witness, inverse, lang_equal};
use rmc_core::harness::{
    corpus_builtin, export_dot, load_corpus_dir, parse_automaton, parse_transducer, print_automaton,
    print_transducer, run, run_table, Bounds, ClassifierSource, Engine, Input, ProblemSpec, TableOptions,
};
use rmc_core::{CriterionExpr, FixpointTest, Nfa, Report, Transducer};

const ERROR_EXIT: u8 = 4;

#[derive(Parser)]
#[command(name = "rmc", version, about = "Regular model checking with quotient approximations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Quotient-criterion fixpoint.
    Fixpoint {
        #[command(flatten)]
        files: Files,
        #[arg(long)]
        criterion: CriterionExpr,
        #[arg(long, value_enum, default_value = "equal")]
        fixpoint_test: TestArg,
        #[command(flatten)]
        out: Output,
    },
    /// Classifier-automaton fixpoint.
    FixpointT {
        #[command(flatten)]
        files: Files,
        /// A classifier file, `onestate` or `mutex:p,q`.
        #[arg(long)]
        classifier: ClassifierSource,
        #[arg(long)]
        early_bad_check: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Counterexample-guided classifier refinement.
    Cegar {
        #[command(flatten)]
        files: Files,
        #[arg(long)]
        classifier: ClassifierSource,
        #[arg(long, default_value_t = 0)]
        ell: usize,
        #[arg(long, default_value_t = 10)]
        max_outer: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Results table over a corpus.
    Table {
        /// Corpus directory; the built-in corpus when omitted.
        #[arg(long)]
        corpus: Option<PathBuf>,
        #[arg(long, value_delimiter = ',', default_value = "in,out,in+out,in.out,left,right,left+right,left.right,(left+right).(in+out)")]
        criteria: Vec<String>,
        #[arg(long, default_value_t = 10)]
        max_steps: usize,
        #[arg(long, value_enum, default_value = "equal")]
        fixpoint_test: TestArg,
        /// Write the table as JSON (`-` for stdout).
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Image of an automaton under a transducer.
    Apply {
        #[arg(long)]
        trans: PathBuf,
        #[arg(long)]
        system: PathBuf,
    },
    /// Inverse transducer.
    Inverse {
        #[arg(long)]
        trans: PathBuf,
    },
    /// Whether L(sub) ⊆ L(sup); exit 0 if so, 1 otherwise.
    Include { sup: PathBuf, sub: PathBuf },
    /// Whether two automata have the same language; exit 0 if so, 1 otherwise.
    Equal { left: PathBuf, right: PathBuf },
    /// Graphviz rendering of an automaton.
    Dot { automaton: PathBuf },
}

#[derive(Args)]
struct Files {
    #[arg(long)]
    system: PathBuf,
    #[arg(long)]
    trans: PathBuf,
    #[arg(long)]
    bad: PathBuf,
    #[arg(long, default_value_t = 20)]
    max_steps: usize,
    /// Wall-clock budget in seconds.
    #[arg(long)]
    timeout: Option<f64>,
}

#[derive(Args)]
struct Output {
    /// Write the report as JSON (`-` for stdout).
    #[arg(long)]
    json: Option<PathBuf>,
    /// Write the final automaton as `final.dot` into this directory.
    #[arg(long)]
    dot_dir: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum TestArg {
    Equal,
    Inclusion,
}

impl From<TestArg> for FixpointTest {
    fn from(t: TestArg) -> Self {
        match t {
            TestArg::Equal => FixpointTest::Equal,
            TestArg::Inclusion => FixpointTest::Inclusion,
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn automaton(path: &Path) -> Result<Nfa> {
    parse_automaton(&read(path)?).with_context(|| path.display().to_string())
}

fn transducer(path: &Path) -> Result<Transducer> {
    parse_transducer(&read(path)?).with_context(|| path.display().to_string())
}

fn write_out(target: &Path, text: &str) -> Result<()> {
    if target == Path::new("-") {
        print!("{text}");
        Ok(())
    } else {
        fs::write(target, text).with_context(|| format!("writing {}", target.display()))
    }
}

fn spec(engine: Engine, files: &Files) -> Result<ProblemSpec> {
    let mut s = ProblemSpec::new(
        engine,
        Input::Path(files.system.clone()),
        Input::Path(files.trans.clone()),
        Input::Path(files.bad.clone()),
    );
    s.bounds = Bounds {
        max_steps: files.max_steps,
        timeout: files
            .timeout
            .map(Duration::try_from_secs_f64)
            .transpose()
            .context("--timeout")?,
        ..Bounds::default()
    };
    Ok(s)
}

fn summary(r: &Report) -> String {
    let mut s = format!("{:?}", r.outcome).to_lowercase();
    let opt = |v: Option<usize>| v.map_or_else(|| "-".to_owned(), |k| k.to_string());
    s += &format!(
        "\nequality step: {}\nbad step: {}\nfinal size: {}",
        r.equality_step.map_or_else(|| "No".to_owned(), |k| k.to_string()),
        r.bad_step.map_or_else(|| "∅".to_owned(), |k| k.to_string()),
        opt(r.final_size),
    );
    if let Some(w) = &r.witness {
        s += &format!("\nwitness: {w:?}");
    }
    if let Some(d) = r.depth {
        s += &format!("\ndepth: {d}");
    }
    if let Some(t) = &r.refinement {
        s += &format!("\nrefinement rounds: {}", t.rounds.len());
    }
    for n in &r.notes {
        s += &format!("\nnote: {n}");
    }
    s
}

fn finish(r: Report, out: &Output) -> Result<u8> {
    if out.json.as_deref() != Some(Path::new("-")) {
        println!("{}", summary(&r));
    }
    if let Some(path) = &out.json {
        write_out(path, &(r.to_json() + "\n"))?;
    }
    if let (Some(dir), Some(f)) = (&out.dot_dir, &r.final_automaton) {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        write_out(&dir.join("final.dot"), &export_dot(f))?;
    }
    Ok(r.exit_code() as u8)
}

fn verdict(holds: bool) -> u8 {
    println!("{holds}");
    if holds {
        0
    } else {
        1
    }
}

fn execute(cmd: Command) -> Result<u8> {
    match cmd {
        Command::Fixpoint {
            files,
            criterion,
            fixpoint_test,
            out,
        } => {
            let mut s = spec(Engine::Fixpoint, &files)?;
            s.criterion = Some(criterion);
            s.fixpoint_test = fixpoint_test.into();
            finish(run(&s)?, &out)
        }
        Command::FixpointT {
            files,
            classifier,
            early_bad_check,
            out,
        } => {
            let mut s = spec(Engine::FixpointT, &files)?;
            s.classifier = Some(classifier);
            s.early_bad_check = early_bad_check;
            finish(run(&s)?, &out)
        }
        Command::Cegar {
            files,
            classifier,
            ell,
            max_outer,
            out,
        } => {
            let mut s = spec(Engine::Cegar, &files)?;
            s.classifier = Some(classifier);
            s.ell = ell;
            s.bounds.max_outer = max_outer;
            finish(run(&s)?, &out)
        }
        Command::Table {
            corpus,
            criteria,
            max_steps,
            fixpoint_test,
            json,
        } => {
            let entries = match corpus {
                Some(dir) => load_corpus_dir(&dir)?,
                None => corpus_builtin(),
            };
            let opts = TableOptions {
                max_steps,
                test: fixpoint_test.into(),
                timeout: None,
            };
            let criteria: Vec<String> = criteria.into_iter().filter(|c| !c.is_empty()).collect();
            let table = run_table(&entries, &criteria, &opts);
            match json.as_deref() {
                Some(p) if p == Path::new("-") => println!("{}", table.to_json()),
                Some(p) => {
                    print!("{}", table.render());
                    write_out(p, &(table.to_json() + "\n"))?;
                }
                None => print!("{}", table.render()),
            }
            Ok(0)
        }
        Command::Apply { trans, system } => {
            let img = apply(&transducer(&trans)?, &automaton(&system)?)?;
            print!("{}", print_automaton(&img, "image"));
            Ok(0)
        }
        Command::Inverse { trans } => {
            print!("{}", print_transducer(&inverse(&transducer(&trans)?), "inverse"));
            Ok(0)
        }
        Command::Include { sup, sub } => {
            let (sup, sub) = (automaton(&sup)?, automaton(&sub)?);
            let witness = inclusion_witness(&sup, &sub)?;
            if let Some(w) = &witness {
                eprintln!("counterexample: {:?}", sub.alphabet().render(w));
            }
            Ok(verdict(witness.is_none()))
        }
        Command::Equal { left, right } => Ok(verdict(lang_equal(&automaton(&left)?, &automaton(&right)?)?)),
        Command::Dot { automaton: path } => {
            print!("{}", export_dot(&automaton(&path)?));
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(ERROR_EXIT)
        }
    }
}
