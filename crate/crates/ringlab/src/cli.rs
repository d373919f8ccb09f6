//! The `ringlab` command line.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use ringlab_core::audit::{default_corpus, theorem_by_id, SampleKind, SamplerConfig, Theorem};
use ringlab_core::budget::{DEFAULT_ELEMENT_BUDGET, DEFAULT_PAIR_BUDGET};
use ringlab_core::{Algebra, Budgets, Error, FVector, PrimeField, Subspace, TowerRecord};
use serde_json::{json, Value};

use crate::formats::{read_algebra, read_subspace, write_json, AlgebraFile, FormatError};
use crate::runner::{load_corpus_dir, run_corpus_audit, threads_from_env};

pub const EXIT_OK: u8 = 0;
pub const EXIT_VIOLATION: u8 = 1;
pub const EXIT_INPUT: u8 = 2;
pub const EXIT_BUDGET: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "ringlab", version, about = "Lie structure of finite-dimensional algebras over GF(p)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write an algebra file for a standard family.
    Gen {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        p: u32,
        /// Id stored in the file; derived from the family by default.
        #[arg(long)]
        id: Option<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Summand files for `dsum`.
        inputs: Vec<PathBuf>,
    },
    /// Print a structural summary of an algebra file.
    Show {
        alg: PathBuf,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Run one operation on an algebra (and optionally a subspace).
    Compute {
        #[arg(long)]
        alg: PathBuf,
        #[arg(long, value_enum)]
        op: Op,
        #[arg(long)]
        subspace: Option<PathBuf>,
        /// Element budget for exhaustive scans.
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long)]
        json: bool,
    },
    /// Audit the theorems on a corpus and write a JSON report.
    Audit {
        /// A directory of `*.alg.json` files, or `default`.
        #[arg(long, default_value = "default")]
        corpus: String,
        #[arg(long = "theorem")]
        theorems: Vec<String>,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_ELEMENT_BUDGET)]
        budget_elems: u64,
        #[arg(long, default_value_t = DEFAULT_PAIR_BUDGET)]
        budget_pairs: u64,
        #[arg(long, default_value_t = 50)]
        retry_cap: usize,
        #[arg(long, value_enum, value_delimiter = ',')]
        kinds: Vec<Kind>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Family {
    Mat,
    Tri,
    Trunc,
    Dsum,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Kind {
    Raw,
    LieClosure,
    SubmoduleClosure,
    InvariantOrbit,
}

impl From<Kind> for SampleKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::Raw => SampleKind::Raw,
            Kind::LieClosure => SampleKind::LieClosure,
            Kind::SubmoduleClosure => SampleKind::SubmoduleClosure,
            Kind::InvariantOrbit => SampleKind::InvariantOrbit,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Op {
    Center,
    Commutator,
    T,
    TTower,
    DerivedTower,
    IdealClosure,
    Full,
    FullyNoncentral,
    LieIdeal,
    Submodule,
    Primes,
    Exceptional,
    HypothesisNeCofinal,
    Idempotent,
    S4,
    #[value(name = "n2span")]
    N2Span,
    #[value(name = "nspan")]
    NSpan,
    #[value(name = "fn2span")]
    Fn2Span,
    Zpb,
    #[value(name = "comm-in-n2")]
    CommInN2,
    LieClosure,
    SubmoduleClosure,
    InvariantClosure,
}

impl Op {
    fn needs_subspace(self) -> bool {
        matches!(
            self,
            Op::T
                | Op::TTower
                | Op::DerivedTower
                | Op::IdealClosure
                | Op::Full
                | Op::FullyNoncentral
                | Op::LieIdeal
                | Op::Submodule
                | Op::LieClosure
                | Op::SubmoduleClosure
                | Op::InvariantClosure
        )
    }
}

/// Failure of a command, carrying its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<FormatError> for Failure {
    fn from(e: FormatError) -> Self {
        Failure {
            code: EXIT_INPUT,
            message: e.to_string(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if matches!(e, Error::BudgetExceeded { .. }) {
            EXIT_BUDGET
        } else {
            EXIT_INPUT
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn input_error(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_INPUT,
        message: message.into(),
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            if code == EXIT_OK {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return code;
        }
    };
    let result = match cli.command {
        Command::Gen {
            family,
            n,
            p,
            id,
            output,
            inputs,
        } => gen(family, n, p, id, output.as_deref(), &inputs, out),
        Command::Show { alg, budget } => show(&alg, budget.unwrap_or(DEFAULT_ELEMENT_BUDGET), out),
        Command::Compute {
            alg,
            op,
            subspace,
            budget,
            json,
        } => compute(&alg, op, subspace.as_deref(), budget.unwrap_or(DEFAULT_ELEMENT_BUDGET), json, out),
        Command::Audit {
            corpus,
            theorems,
            samples,
            seed,
            budget_elems,
            budget_pairs,
            retry_cap,
            kinds,
            output,
        } => {
            let config = SamplerConfig {
                seed,
                count: samples,
                kinds: if kinds.is_empty() {
                    SampleKind::ALL.to_vec()
                } else {
                    kinds.into_iter().map(SampleKind::from).collect()
                },
                retry_cap,
            };
            let budgets = Budgets {
                elements: budget_elems,
                pairs: budget_pairs,
            };
            audit(&corpus, &theorems, &config, budgets, output.as_deref(), out, err)
        }
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn emit(text: &str, output: Option<&Path>, out: &mut dyn Write) -> Result<(), Failure> {
    match output {
        Some(path) => std::fs::write(path, text).map_err(|e| input_error(format!("{}: {e}", path.display()))),
        None => out
            .write_all(text.as_bytes())
            .map_err(|e| input_error(e.to_string())),
    }
}

fn gen(
    family: Family,
    n: usize,
    p: u32,
    id: Option<String>,
    output: Option<&Path>,
    inputs: &[PathBuf],
    out: &mut dyn Write,
) -> Result<u8, Failure> {
    let field = PrimeField::new(p)?;
    if n == 0 && !matches!(family, Family::Dsum) {
        return Err(input_error("--n must be positive"));
    }
    let (default_id, alg) = match family {
        Family::Mat => (format!("m{n}-f{p}"), Algebra::matrix_algebra(n, field)),
        Family::Tri => (format!("t{n}-f{p}"), Algebra::triangular_algebra(n, field)),
        Family::Trunc => (format!("trunc{n}-f{p}"), Algebra::truncated_poly(n, field)),
        Family::Dsum => {
            let [a, b] = inputs else {
                return Err(input_error("dsum takes exactly two algebra files"));
            };
            let (ia, a) = read_algebra(a)?;
            let (ib, b) = read_algebra(b)?;
            (format!("{ia}-plus-{ib}"), Algebra::direct_sum(&a, &b)?)
        }
    };
    let file = AlgebraFile::from_algebra(&id.unwrap_or(default_id), &alg);
    match output {
        Some(path) => write_json(path, &file)?,
        None => {
            let text = serde_json::to_string_pretty(&file).expect("serializable") + "\n";
            emit(&text, None, out)?;
        }
    }
    Ok(EXIT_OK)
}

fn show(path: &Path, budget: u64, out: &mut dyn Write) -> Result<u8, Failure> {
    let (id, alg) = read_algebra(path)?;
    let mut text = String::new();
    let mut line = |k: &str, v: String| text.push_str(&format!("{k}: {v}\n"));
    line("id", id);
    line("p", alg.p().to_string());
    line("dim", alg.dim().to_string());
    line("unital", alg.is_unital().to_string());
    line("center dim", alg.center().dim().to_string());
    line("[R,R] dim", alg.commutator_space().dim().to_string());
    line("idempotent", alg.is_idempotent_ring().to_string());
    line("s4-span dim", alg.s4_span().dim().to_string());
    let spectrum = alg.spectrum(budget);
    if spectrum.lattice_complete {
        line("ideals", spectrum.ideals.len().to_string());
        let primes = spectrum.primes().count();
        let exc = spectrum.exceptional_prime_count();
        line("primes", format!("{primes} (exceptional: {exc}, non-exceptional: {})", primes - exc));
    } else {
        line("spectrum", "over budget".to_string());
    }
    emit(&text, None, out)?;
    Ok(EXIT_OK)
}

fn subspace_json(s: &Subspace) -> Value {
    json!({ "dim": s.dim(), "basis": s.to_rows() })
}

fn subspace_text(s: &Subspace) -> String {
    let mut t = format!("dim {}\n", s.dim());
    for r in s.to_rows() {
        t.push_str(&format!("{r:?}\n"));
    }
    t
}

fn element_json(x: &FVector) -> Value {
    json!(x.coords())
}

fn tower_json(t: &TowerRecord) -> Value {
    json!({
        "dims": t.dims(),
        "stages": t.stages.iter().map(subspace_json).collect::<Vec<_>>(),
    })
}

/// Result of one `compute` operation.
struct Computed {
    value: Value,
    text: String,
    exhaustive: bool,
}

impl Computed {
    fn exact(value: Value, text: String) -> Self {
        Computed {
            value,
            text,
            exhaustive: true,
        }
    }

    fn subspace(s: &Subspace) -> Self {
        Computed::exact(subspace_json(s), subspace_text(s))
    }

    fn flag(b: bool) -> Self {
        Computed::exact(json!(b), format!("{b}\n"))
    }
}

fn compute(
    alg_path: &Path,
    op: Op,
    sub_path: Option<&Path>,
    budget: u64,
    as_json: bool,
    out: &mut dyn Write,
) -> Result<u8, Failure> {
    let (id, alg) = read_algebra(alg_path)?;
    let v = match sub_path {
        Some(p) => Some(read_subspace(p, &alg)?),
        None if op.needs_subspace() => {
            let name = op.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default();
            return Err(input_error(format!("--op {name} requires --subspace")));
        }
        None => None,
    };
    let sub = || v.clone().expect("checked above");
    let r = match op {
        Op::Center => Computed::subspace(&alg.center()),
        Op::Commutator => Computed::subspace(&alg.commutator_space()),
        Op::T => Computed::subspace(&alg.t_of(&sub())),
        Op::TTower | Op::DerivedTower => {
            let d = alg.default_tower_depth();
            let t = if op == Op::TTower {
                alg.t_tower(&sub(), d)
            } else {
                alg.derived_tower(&sub(), d)
            };
            Computed::exact(tower_json(&t), format!("dims {:?}\n", t.dims()))
        }
        Op::IdealClosure => Computed::subspace(&alg.ideal_closure(&sub())),
        Op::Full => Computed::flag(alg.is_full(&sub())),
        Op::FullyNoncentral => Computed::flag(alg.is_fully_noncentral(&sub())),
        Op::LieIdeal => Computed::flag(alg.is_lie_ideal(&sub())),
        Op::Submodule => Computed::flag(alg.is_rr_submodule(&sub())),
        Op::LieClosure => Computed::subspace(&alg.lie_closure(&sub())),
        Op::SubmoduleClosure => Computed::subspace(&alg.submodule_closure(&sub())),
        Op::InvariantClosure => {
            let unit = alg.unitize();
            match alg.inner_automorphisms(budget) {
                Ok(auts) => {
                    let gens = alg.unit_group_generators(&unit, &auts);
                    Computed::subspace(&alg.invariant_orbit_closure(&sub(), &unit, &gens))
                }
                Err(Error::BudgetExceeded { .. }) => {
                    let sz = alg.square_zero_elements(budget);
                    let auts = alg.sq_zero_units(&unit, &sz.elements);
                    let mut c = Computed::subspace(&alg.invariant_orbit_closure(&sub(), &unit, &auts));
                    c.exhaustive = false;
                    c
                }
                Err(e) => return Err(e.into()),
            }
        }
        Op::Primes => {
            let spectrum = alg.spectrum(budget);
            let primes: Vec<Value> = spectrum
                .primes()
                .map(|r| {
                    json!({
                        "ideal": subspace_json(&r.subspace),
                        "maximal": r.is_maximal,
                        "exceptional": r.is_exceptional,
                    })
                })
                .collect();
            let mut text = String::new();
            for r in spectrum.primes() {
                text.push_str(&format!(
                    "prime of dim {}{}{}\n",
                    r.subspace.dim(),
                    if r.is_maximal { ", maximal" } else { "" },
                    match r.is_exceptional {
                        Some(true) => ", exceptional",
                        Some(false) => ", non-exceptional",
                        None => "",
                    }
                ));
            }
            Computed {
                value: json!({ "ideals": spectrum.ideals.len(), "primes": primes }),
                text,
                exhaustive: spectrum.lattice_complete,
            }
        }
        Op::Exceptional => {
            let ideal = v.clone().unwrap_or_else(|| alg.zero_space());
            Computed::flag(alg.is_exceptional_prime(&ideal, budget)?)
        }
        Op::HypothesisNeCofinal => {
            let c = alg.hypothesis_nonexceptional_cofinal(budget)?;
            Computed::exact(
                json!({
                    "holds": c.holds,
                    "witness": c.witness.as_ref().map(subspace_json),
                    "prime_cofinal": c.prime_cofinal,
                    "s4_criterion": c.s4_criterion,
                    "agree": c.agree,
                }),
                format!("{}\n", c.holds),
            )
        }
        Op::Idempotent => Computed::flag(alg.is_idempotent_ring()),
        Op::S4 => Computed::subspace(&alg.s4_span()),
        Op::N2Span | Op::NSpan => {
            let (s, exhaustive) = if op == Op::N2Span {
                alg.n2_span(budget)
            } else {
                alg.nilpotent_span(budget)
            };
            let mut c = Computed::subspace(&s);
            c.exhaustive = exhaustive;
            c
        }
        Op::Fn2Span => {
            let f = alg.fn2_span(budget);
            let pairs: Vec<Value> = f
                .witnesses
                .iter()
                .map(|(y, z)| json!({ "y": element_json(y), "z": element_json(z) }))
                .collect();
            let mut text = subspace_text(&f.span);
            for (y, z) in &f.witnesses {
                text.push_str(&format!("y = {:?}, z = {:?}\n", y.coords(), z.coords()));
            }
            Computed {
                value: json!({ "span": subspace_json(&f.span), "witnesses": pairs }),
                text,
                exhaustive: f.exhaustive,
            }
        }
        Op::Zpb => {
            let z = alg.zero_product_balanced(budget)?;
            Computed::exact(
                json!({ "balanced": z.balanced, "defect_triples": z.defect_triples }),
                format!("{}\n", z.balanced),
            )
        }
        Op::CommInN2 => {
            let (n2, exhaustive) = alg.n2_span(budget);
            let mut c = Computed::flag(alg.commutator_space().leq(&n2));
            c.exhaustive = exhaustive;
            c
        }
    };
    let text = if as_json {
        let doc = json!({
            "algebra": id,
            "op": op.to_possible_value().expect("named").get_name(),
            "result": r.value,
            "exhaustive": r.exhaustive,
        });
        serde_json::to_string_pretty(&doc).expect("serializable") + "\n"
    } else if r.exhaustive {
        r.text
    } else {
        format!("{}(partial: budget exceeded)\n", r.text)
    };
    emit(&text, None, out)?;
    Ok(if r.exhaustive { EXIT_OK } else { EXIT_BUDGET })
}

fn audit(
    corpus: &str,
    theorem_ids: &[String],
    config: &SamplerConfig,
    budgets: Budgets,
    output: Option<&Path>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<u8, Failure> {
    let entries = if corpus == "default" {
        default_corpus()
    } else {
        load_corpus_dir(Path::new(corpus))?
    };
    let theorems: Vec<Theorem> = if theorem_ids.is_empty() {
        Theorem::ALL.to_vec()
    } else {
        theorem_ids
            .iter()
            .map(|id| theorem_by_id(id))
            .collect::<Result<_, _>>()
            .map_err(|e| input_error(e.to_string()))?
    };
    let report = run_corpus_audit(&entries, &theorems, config, budgets, threads_from_env());
    let text = serde_json::to_string_pretty(&report).expect("serializable") + "\n";
    emit(&text, output, out)?;
    let s = &report.summary;
    let _ = writeln!(
        err,
        "{} verdicts: {} hypothesis holds, {} fails, {} skipped; {} violations; {} counterexamples outside hypotheses; {} findings",
        s.verdicts, s.hypothesis_holds, s.hypothesis_fails, s.hypothesis_skipped, s.violations,
        s.counterexamples_outside_hypothesis, s.findings
    );
    Ok(if report.has_violations() { EXIT_VIOLATION } else { EXIT_OK })
}
