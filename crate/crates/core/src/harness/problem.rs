use std::fmt;
use std::fs;
use std::path::PathBuf;
use std::str::FromStr;
use std::time::Duration;

use super::format::{parse_automaton, parse_classifier, parse_transducer};
use crate::automata::{ensure_identity, Nfa, Transducer};
use crate::cegar::{reach_cegar, CegarOptions};
use crate::classifier::{fixpoint_t, Classifier, FixpointTOptions};
use crate::criteria::{fixpoint, CriterionExpr, FixpointOptions, FixpointTest};
use crate::error::{Error, Result};
use crate::report::Report;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Engine {
    Fixpoint,
    FixpointT,
    Cegar,
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Engine::Fixpoint => "fixpoint",
            Engine::FixpointT => "fixpoint-t",
            Engine::Cegar => "cegar",
        })
    }
}

/// File contents or a path to read them from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Input {
    Path(PathBuf),
    Text(String),
}

impl Input {
    fn text(&self) -> Result<String> {
        match self {
            Input::Text(s) => Ok(s.clone()),
            Input::Path(p) => fs::read_to_string(p).map_err(|e| Error::Io(format!("{}: {e}", p.display()))),
        }
    }

    fn context(&self, e: Error) -> Error {
        match self {
            Input::Path(p) => Error::Io(format!("{}: {e}", p.display())),
            Input::Text(_) => e,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClassifierSource {
    File(Input),
    OneState,
    /// The mutual exclusion classifier watching two transducer states.
    Mutex(String, String),
}

impl FromStr for ClassifierSource {
    type Err = Error;

    /// `onestate`, `mutex:p,q`, or a path.
    fn from_str(s: &str) -> Result<Self> {
        if s == "onestate" {
            return Ok(ClassifierSource::OneState);
        }
        if let Some(rest) = s.strip_prefix("mutex:") {
            return match rest.split_once(',') {
                Some((p, q)) if !p.is_empty() && !q.is_empty() => {
                    Ok(ClassifierSource::Mutex(p.to_owned(), q.to_owned()))
                }
                _ => Err(Error::Validation(format!("expected `mutex:p,q`, found `{s}`"))),
            };
        }
        Ok(ClassifierSource::File(Input::Path(s.into())))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bounds {
    pub max_steps: usize,
    pub max_outer: usize,
    pub timeout: Option<Duration>,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            max_steps: 20,
            max_outer: 10,
            timeout: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProblemSpec {
    pub engine: Engine,
    pub system: Input,
    pub trans: Input,
    pub bad: Input,
    pub classifier: Option<ClassifierSource>,
    pub criterion: Option<CriterionExpr>,
    pub fixpoint_test: FixpointTest,
    pub early_bad_check: bool,
    /// Starting step of the refinement driver.
    pub ell: usize,
    pub bounds: Bounds,
}

impl ProblemSpec {
    pub fn new(engine: Engine, system: Input, trans: Input, bad: Input) -> Self {
        ProblemSpec {
            engine,
            system,
            trans,
            bad,
            classifier: None,
            criterion: None,
            fixpoint_test: FixpointTest::Equal,
            early_bad_check: false,
            ell: 0,
            bounds: Bounds::default(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let wants_classifier = matches!(self.engine, Engine::FixpointT | Engine::Cegar);
        match (wants_classifier, self.classifier.is_some()) {
            (true, false) => return Err(Error::Validation(format!("engine {} needs a classifier", self.engine))),
            (false, true) => {
                return Err(Error::Validation(format!("engine {} takes no classifier", self.engine)))
            }
            _ => {}
        }
        match (self.engine == Engine::Fixpoint, self.criterion.is_some()) {
            (true, false) => Err(Error::Validation("engine fixpoint needs a criterion".into())),
            (false, true) => Err(Error::Validation(format!("engine {} takes no criterion", self.engine))),
            _ => Ok(()),
        }
    }
}

fn load(input: &Input, parse: impl Fn(&str) -> Result<Nfa>) -> Result<Nfa> {
    parse(&input.text()?).map_err(|e| input.context(e))
}

fn load_transducer(input: &Input) -> Result<Transducer> {
    parse_transducer(&input.text()?).map_err(|e| input.context(e))
}

/// Resolves the classifier together with the transducer it reads. Generated
/// classifiers are built on `t` extended with an identity state when it
/// lacks one; a classifier file is taken as is.
pub fn resolve_classifier(src: &ClassifierSource, t: &Transducer) -> Result<(Transducer, Classifier, bool)> {
    match src {
        ClassifierSource::File(input) => {
            let c = parse_classifier(&input.text()?, t).map_err(|e| input.context(e))?;
            Ok((t.clone(), c, false))
        }
        ClassifierSource::OneState => {
            let t2 = ensure_identity(t);
            let added = t2.num_states() != t.num_states();
            let c = Classifier::one_state(&t2);
            Ok((t2, c, added))
        }
        ClassifierSource::Mutex(p, q) => {
            let t2 = ensure_identity(t);
            let added = t2.num_states() != t.num_states();
            let c = Classifier::mutual_exclusion(&t2, p, q)?;
            Ok((t2, c, added))
        }
    }
}

/// Loads the inputs and runs the selected engine.
pub fn run(spec: &ProblemSpec) -> Result<Report> {
    spec.validate()?;
    let a = load(&spec.system, parse_automaton)?;
    let t = load_transducer(&spec.trans)?;
    let bad = load(&spec.bad, parse_automaton)?;
    let b = &spec.bounds;
    match spec.engine {
        Engine::Fixpoint => {
            let e = spec.criterion.as_ref().expect("validated");
            let opts = FixpointOptions {
                max_steps: b.max_steps,
                test: spec.fixpoint_test,
                timeout: b.timeout,
            };
            fixpoint(&a, &t, &bad, e, &opts)
        }
        Engine::FixpointT | Engine::Cegar => {
            let src = spec.classifier.as_ref().expect("validated");
            let (t, c, added) = resolve_classifier(src, &t)?;
            let mut report = if spec.engine == Engine::FixpointT {
                let opts = FixpointTOptions {
                    max_steps: b.max_steps,
                    early_bad_check: spec.early_bad_check,
                    timeout: b.timeout,
                };
                fixpoint_t(&a, &t, &bad, &c, &opts)?
            } else {
                let opts = CegarOptions {
                    ell: spec.ell,
                    max_outer: b.max_outer,
                    max_steps: b.max_steps,
                    timeout: b.timeout,
                };
                reach_cegar(&a, &bad, &t, &c, &opts)?
            };
            if added {
                report.notes.push(format!(
                    "identity state `{}` added to the transducer",
                    t.label(t.num_states() - 1)
                ));
            }
            Ok(report)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::lang_equal;
    use crate::fixtures::token_ring;
    use crate::harness::corpus::corpus_builtin;
    use crate::report::Outcome;

    fn spec(engine: Engine, entry: usize) -> ProblemSpec {
        let e = corpus_builtin()[entry].encoding.clone().unwrap();
        ProblemSpec::new(engine, Input::Text(e.a), Input::Text(e.t), Input::Text(e.b))
    }

    #[test]
    fn left_is_safe() {
        let mut s = spec(Engine::Fixpoint, 0);
        s.criterion = Some(CriterionExpr::Left);
        let r = run(&s).unwrap();
        assert_eq!((r.outcome, r.exit_code()), (Outcome::Safe, 0));
        assert!(lang_equal(r.final_automaton.as_ref().unwrap(), &token_ring::left_closure()).unwrap());
    }

    #[test]
    fn right_on_the_mirrored_ring() {
        let mut s = spec(Engine::Fixpoint, 1);
        s.criterion = Some(CriterionExpr::Right);
        let r = run(&s).unwrap();
        assert_eq!((r.equality_step, r.bad_step, r.final_size), (Some(2), None, Some(5)));
    }

    #[test]
    fn bad_initial_words_are_inconclusive() {
        let mut s = spec(Engine::Fixpoint, 0);
        s.bad = s.system.clone();
        s.criterion = Some(CriterionExpr::Left);
        let r = run(&s).unwrap();
        assert_eq!((r.outcome, r.exit_code(), r.bad_step), (Outcome::Inconclusive, 2, Some(1)));
    }

    #[test]
    fn classifier_engines() {
        let mut s = spec(Engine::FixpointT, 0);
        s.classifier = Some(ClassifierSource::File(Input::Text(
            corpus_builtin()[0].encoding.clone().unwrap().c.unwrap(),
        )));
        assert_eq!(run(&s).unwrap().outcome, Outcome::Safe);

        let mut s = spec(Engine::Cegar, 0);
        s.classifier = Some(ClassifierSource::OneState);
        let r = run(&s).unwrap();
        assert_eq!(r.outcome, Outcome::Safe);
        assert!(r.depth.unwrap() <= 4);
        assert!(r.notes.is_empty());

        s.classifier = Some("mutex:3,4".parse().unwrap());
        assert_eq!(run(&s).unwrap().outcome, Outcome::Safe);
    }

    #[test]
    fn generated_classifiers_add_identity() {
        let mut s = spec(Engine::Cegar, 0);
        s.trans = Input::Text(
            "transducer\nalphabet: a b\nstates: 3 4\ninitial: 3\nfinal: 3\ntransitions:\n3 a/b 4\n4 b/a 3\n".into(),
        );
        s.classifier = Some(ClassifierSource::OneState);
        let r = run(&s).unwrap();
        assert_eq!(r.notes, ["identity state `id` added to the transducer"]);
        assert_eq!(r.outcome, Outcome::Safe);
    }

    #[test]
    fn validation() {
        let s = spec(Engine::Fixpoint, 0);
        assert!(matches!(run(&s), Err(Error::Validation(_))));
        let mut s = spec(Engine::Cegar, 0);
        assert!(s.validate().is_err());
        s.classifier = Some(ClassifierSource::OneState);
        s.criterion = Some(CriterionExpr::In);
        assert!(s.validate().is_err());
        assert!("mutex:3".parse::<ClassifierSource>().is_err());
        assert_eq!(
            "x.cla".parse::<ClassifierSource>().unwrap(),
            ClassifierSource::File(Input::Path("x.cla".into()))
        );
    }

    #[test]
    fn missing_file_is_an_error() {
        let mut s = spec(Engine::Fixpoint, 0);
        s.criterion = Some(CriterionExpr::Left);
        s.system = Input::Path("/nonexistent/A.aut".into());
        assert!(matches!(run(&s), Err(Error::Io(_))));
    }
}
