//! The `nitlog` command line.
//!
//! Exit codes: 0 affirmative (satisfiable, valid, accepted), 1 negative,
//! 2 usage or input error, 3 resource limit reached.

use std::ffi::OsString;
use std::io::Write;
use std::path::Path;

use clap::{Parser, Subcommand, ValueEnum};

use nitlog::proofs::{check_proof, parse_proof};
use nitlog::prop::SetValuation;
use nitlog::semantics::{frame_satisfies, model_check, parse_frame, parse_subset, write_frame, FrameCheck, FrameFile};
use nitlog::solver::{sat_solve, SatResult, SolverConfig};
use nitlog::step01::{extract_rule, instantiate, Backend, Step01Check, Step01Context};
use nitlog::syntax::{parse_closed_formula, parse_formula, parse_formula_inferring, parse_logic};
use nitlog::{presets, Error, Formula, LogicPresentation, Signature};

pub const EXIT_YES: i32 = 0;
pub const EXIT_NO: i32 = 1;
pub const EXIT_ERROR: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "nitlog", version, about = "Workbench for non-iterative modal logics")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Report whether a formula is rank-1, non-iterative or iterative.
    Classify { formula: String },
    /// Search for a model of a closed formula over frames of the logic.
    Sat {
        logic: String,
        formula: String,
        /// Largest number of states to try.
        #[arg(long, default_value_t = 3, conflicts_with = "full_bound")]
        max_states: usize,
        /// Try up to 2^size(formula) states; an UNSAT verdict is then certified.
        #[arg(long)]
        full_bound: bool,
    },
    /// Evaluate a closed formula at a state of a model.
    ModelCheck {
        logic: String,
        frame: String,
        state: usize,
        formula: String,
    },
    /// Check every axiom of the logic as a frame condition.
    FrameCheck { logic: String, frame: String },
    /// Check a proof file against the logic.
    ProofCheck { logic: String, proof: String },
    /// Print the axiom each rule of the logic converts to.
    #[command(name = "rule2axiom")]
    Rule2Axiom { logic: String },
    /// The 0-1-step layer over a base set {0..N-1}.
    Step01 {
        #[command(subcommand)]
        cmd: Step01Cmd,
    },
}

#[derive(Subcommand, Debug)]
enum Step01Cmd {
    /// Is a non-iterative formula 0-1-step sound over the logic's subfunctor?
    Sound {
        logic: String,
        formula: String,
        #[arg(long)]
        base_size: usize,
    },
    /// Is the instance of a formula under --val assignments derivable?
    Derivable {
        logic: String,
        formula: String,
        #[arg(long)]
        base_size: usize,
        /// Variable assignment such as `a={0,1}`; repeat for each variable.
        #[arg(long = "val")]
        vals: Vec<String>,
        #[arg(long, value_enum, default_value_t = BackendArg::Semantic)]
        backend: BackendArg,
    },
    /// List the elements of the logic's subfunctor.
    Subfunctor {
        logic: String,
        #[arg(long)]
        base_size: usize,
    },
    /// Extract the rule whose premiss collects all clauses valid under --val.
    Extract {
        logic: String,
        formula: String,
        #[arg(long)]
        base_size: usize,
        #[arg(long = "val")]
        vals: Vec<String>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum BackendArg {
    Semantic,
    Syntactic,
}

/// A failure with its exit code and a message naming the offending input.
struct Failure {
    code: i32,
    msg: String,
}

type Outcome = Result<i32, Failure>;

fn fail(source: &str, e: Error) -> Failure {
    let code = if e.is_resource() { EXIT_RESOURCE } else { EXIT_ERROR };
    let msg = match e {
        Error::Syntax { line, col, msg } => format!("{source}:{line}:{col}: {msg}"),
        other => format!("{source}: {other}"),
    };
    Failure { code, msg }
}

fn read_source(path: &str) -> Result<String, Failure> {
    match std::fs::read_to_string(path) {
        Ok(t) => Ok(t),
        Err(e) => {
            if !Path::new(path).exists() {
                if let Some(t) = presets::source(path) {
                    return Ok(t.to_string());
                }
            }
            Err(Failure {
                code: EXIT_ERROR,
                msg: format!("{path}: cannot read: {e}"),
            })
        }
    }
}

fn load_logic(path: &str) -> Result<LogicPresentation, Failure> {
    let text = read_source(path)?;
    parse_logic(&text).map_err(|e| fail(path, e))
}

fn load_frame(path: &str, logic: &LogicPresentation) -> Result<FrameFile, Failure> {
    let text = read_source(path)?;
    let f = parse_frame(&text).map_err(|e| fail(path, e))?;
    for m in logic.sig.iter() {
        match f.model.sig().arity(&m.name) {
            Some(k) if k == m.arity => {}
            Some(k) => {
                return Err(Failure {
                    code: EXIT_ERROR,
                    msg: format!("{path}: modality `{}` has arity {k}, the logic declares {}", m.name, m.arity),
                })
            }
            None => {
                return Err(Failure {
                    code: EXIT_ERROR,
                    msg: format!("{path}: modality `{}` of the logic is not declared", m.name),
                })
            }
        }
    }
    Ok(f)
}

fn closed_formula(text: &str, sig: &Signature) -> Result<Formula, Failure> {
    let mut sig = sig.clone();
    parse_closed_formula(text, &mut sig).map_err(|e| fail("<formula>", e))
}

fn valuation(vals: &[String], base: usize) -> Result<(SetValuation, Vec<String>), Failure> {
    if base == 0 || base > 16 {
        return Err(Failure {
            code: EXIT_ERROR,
            msg: format!("--base-size: {base} is outside 1..16"),
        });
    }
    let mut tau = SetValuation::new(base);
    let mut order = Vec::new();
    for v in vals {
        let bad = |msg: String| Failure {
            code: EXIT_ERROR,
            msg: format!("--val {v}: {msg}"),
        };
        let (x, set) = v.split_once('=').ok_or_else(|| bad("expected `var={i,j,..}`".into()))?;
        let x = x.trim();
        let s = parse_subset(set).map_err(|e| bad(e.to_string()))?;
        tau.insert(x, s).map_err(|e| bad(e.to_string()))?;
        if order.iter().any(|y| y == x) {
            return Err(bad(format!("`{x}` assigned twice")));
        }
        order.push(x.to_string());
    }
    Ok((tau, order))
}

fn step01_context(logic: &LogicPresentation, path: &str, base: usize) -> Result<Step01Context, Failure> {
    if base == 0 {
        return Err(Failure {
            code: EXIT_ERROR,
            msg: "--base-size: the base set needs at least one point".into(),
        });
    }
    Step01Context::from_logic(logic, base).map_err(|e| fail(path, e))
}

fn execute(cmd: Cmd, out: &mut dyn Write) -> Outcome {
    let w = |out: &mut dyn Write, s: String| {
        let _ = writeln!(out, "{s}");
    };
    match cmd {
        Cmd::Classify { formula } => {
            let (f, _) = parse_formula_inferring(&formula).map_err(|e| fail("<formula>", e))?;
            let rank = f.classify();
            w(out, rank.describe().to_string());
            Ok(if rank.is_non_iterative() { EXIT_YES } else { EXIT_NO })
        }
        Cmd::Sat {
            logic,
            formula,
            max_states,
            full_bound,
        } => {
            let l = load_logic(&logic)?;
            let goal = closed_formula(&formula, &l.sig)?;
            let mut cfg = SolverConfig::default().with_max_states(max_states);
            cfg.full_bound = full_bound;
            match sat_solve(&l, &goal, &cfg).map_err(|e| fail("<formula>", e))? {
                SatResult::Satisfiable { model, witness } => {
                    w(out, format!("SAT ({} state(s), witness {witness})", model.size()));
                    let _ = write!(out, "{}", write_frame(&model, Some(witness)));
                    Ok(EXIT_YES)
                }
                SatResult::UnsatWithinBound { bound, certified } => {
                    let c = if certified { "certified" } else { "not certified" };
                    w(out, format!("UNSAT ({c}, bound {bound})"));
                    Ok(EXIT_NO)
                }
            }
        }
        Cmd::ModelCheck {
            logic,
            frame,
            state,
            formula,
        } => {
            let l = load_logic(&logic)?;
            let f = load_frame(&frame, &l)?;
            let phi = closed_formula(&formula, f.model.sig())?;
            let holds = model_check(&f.model, state, &phi).map_err(|e| fail(&frame, e))?;
            w(out, holds.to_string());
            Ok(if holds { EXIT_YES } else { EXIT_NO })
        }
        Cmd::FrameCheck { logic, frame } => {
            let l = load_logic(&logic)?;
            let f = load_frame(&frame, &l)?;
            let axioms = l.all_axioms().map_err(|e| fail(&logic, e))?;
            let mut all = true;
            for (i, a) in axioms.iter().enumerate() {
                let r = frame_satisfies(&f.model, a, nitlog::semantics::DEFAULT_FRAME_CAP)
                    .map_err(|e| fail(&frame, e))?;
                match r {
                    FrameCheck::Holds => w(out, format!("axiom {i} `{a}`: holds")),
                    FrameCheck::Counterexample { valuation, state } => {
                        all = false;
                        let under = valuation.to_string();
                        let under = if under.is_empty() { String::new() } else { format!(" under {under}") };
                        w(out, format!("axiom {i} `{a}`: fails at state {state}{under}"));
                    }
                }
            }
            Ok(if all { EXIT_YES } else { EXIT_NO })
        }
        Cmd::ProofCheck { logic, proof } => {
            let l = load_logic(&logic)?;
            let text = read_source(&proof)?;
            let p = parse_proof(&text, &l).map_err(|e| fail(&proof, e))?;
            match check_proof(&p) {
                Ok(c) => {
                    w(out, format!("OK: {c}"));
                    Ok(EXIT_YES)
                }
                Err(e) => {
                    let line = e.source_line.map_or(String::new(), |s| format!("{s}:"));
                    w(out, format!("{proof}:{line} {}: proof line {}: {}", e.reason, e.line, e.detail));
                    Ok(if e.reason == nitlog::proofs::Reason::ResourceLimit { EXIT_RESOURCE } else { EXIT_NO })
                }
            }
        }
        Cmd::Rule2Axiom { logic } => {
            let l = load_logic(&logic)?;
            for r in &l.rules {
                let a = nitlog::prop::rule_to_axiom(r).map_err(|e| fail(&logic, e))?;
                w(out, format!("{r}  =>  {a}"));
            }
            Ok(EXIT_YES)
        }
        Cmd::Step01 { cmd } => step01(cmd, out),
    }
}

fn step01(cmd: Step01Cmd, out: &mut dyn Write) -> Outcome {
    match cmd {
        Step01Cmd::Sound {
            logic,
            formula,
            base_size,
        } => {
            let l = load_logic(&logic)?;
            let f = parse_formula(&formula, &l.sig).map_err(|e| fail("<formula>", e))?;
            let ctx = step01_context(&l, &logic, base_size)?;
            match ctx.check_sound(&f).map_err(|e| fail("<formula>", e))? {
                Step01Check::Sound => {
                    let _ = writeln!(out, "sound over {base_size} point(s)");
                    Ok(EXIT_YES)
                }
                Step01Check::Counterexample { valuation, element } => {
                    let _ = writeln!(out, "unsound: {valuation} at {element}");
                    Ok(EXIT_NO)
                }
            }
        }
        Step01Cmd::Derivable {
            logic,
            formula,
            base_size,
            vals,
            backend,
        } => {
            let l = load_logic(&logic)?;
            let f = parse_formula(&formula, &l.sig).map_err(|e| fail("<formula>", e))?;
            let (tau, _) = valuation(&vals, base_size)?;
            let psi = instantiate(&f, &tau).map_err(|e| fail("<formula>", e))?;
            let ctx = step01_context(&l, &logic, base_size)?;
            let backend = match backend {
                BackendArg::Semantic => Backend::Semantic,
                BackendArg::Syntactic => Backend::Syntactic,
            };
            let yes = ctx.derivable(&psi, backend).map_err(|e| fail("<formula>", e))?;
            let _ = writeln!(out, "{}: {psi}", if yes { "derivable" } else { "not derivable" });
            Ok(if yes { EXIT_YES } else { EXIT_NO })
        }
        Step01Cmd::Subfunctor { logic, base_size } => {
            let l = load_logic(&logic)?;
            let ctx = step01_context(&l, &logic, base_size)?;
            let elems = ctx.elements().map_err(|e| fail(&logic, e))?;
            let _ = writeln!(out, "{} element(s)", elems.len());
            for t in &elems {
                let _ = writeln!(out, "{t}");
            }
            Ok(EXIT_YES)
        }
        Step01Cmd::Extract {
            logic,
            formula,
            base_size,
            vals,
        } => {
            let l = load_logic(&logic)?;
            let f = parse_formula(&formula, &l.sig).map_err(|e| fail("<formula>", e))?;
            let (tau, order) = valuation(&vals, base_size)?;
            let rule = extract_rule(&tau, &order, &f).map_err(|e| fail("<formula>", e))?;
            let _ = writeln!(out, "{rule}");
            let psi = instantiate(&f, &tau).map_err(|e| fail("<formula>", e))?;
            let ctx = step01_context(&l, &logic, base_size)?;
            if ctx.derivable(&psi, Backend::Semantic).map_err(|e| fail("<formula>", e))? {
                Ok(EXIT_YES)
            } else {
                let _ = writeln!(out, "note: the instance {psi} is not valid over the subfunctor");
                Ok(EXIT_NO)
            }
        }
    }
}

/// Runs the command line `args` (including the program name), writing the
/// report to `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return code;
        }
    };
    match execute(cli.cmd, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.msg);
            f.code
        }
    }
}
