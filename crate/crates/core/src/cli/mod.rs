//! The `rankcalc` command line.
//!
//! Exit codes: 0 on success, 1 on invalid input, 2 when a verification
//! finds a violation. Output depends only on the arguments and input files.

mod model;

pub use model::{EvidenceAtom, EvidenceFile, Model, ModelFile, Ranking, TableRow, VariableSpec, MODEL_VERSION};

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{ArgMatches, Args, CommandFactory, FromArgMatches, Parser, Subcommand, ValueEnum};

use crate::bridge::{ncf_to_measure, verify_correspondence, BridgeConfig};
use crate::error::Error;
use crate::independence::{cond_independent_on_field, independent, Regime};
use crate::random::{random_population, rng, DEFAULT_SEED};
use crate::report::Report;
use crate::revision::{revision_sequence, EvidenceWeight, RevisionStep};
use crate::rivals::{default_scale, ncf_to_surprise};
use crate::space::{PartitionField, Proposition, DEFAULT_WORLD_CAP};
use crate::suites::{population_reports, Suite, SuiteConfig};
use crate::Rational;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_VIOLATION: i32 = 2;

/// Overrides the largest accepted number of worlds.
pub const WORLD_CAP_ENV: &str = "RANKCALC_WORLD_CAP";

#[derive(Parser, Debug)]
#[command(name = "rankcalc", version, about = "Ranking functions: queries, revision, independence and verification")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Rank, belief status and firmness of a formula.
    Query {
        model: PathBuf,
        /// A formula such as `X=1 and not Y=0`, or a named proposition.
        formula: String,
    },
    /// Apply revision steps in command-line order.
    Revise(ReviseArgs),
    /// Decide whether two sets of variables are independent.
    Independent {
        model: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        lhs: Vec<String>,
        #[arg(long, value_delimiter = ',', required = true)]
        rhs: Vec<String>,
        #[arg(long, value_delimiter = ',')]
        given: Vec<String>,
    },
    /// Run property suites on a model or on a seeded random population.
    Verify {
        #[arg(required_unless_present = "random", conflicts_with = "random")]
        model: Option<PathBuf>,
        /// Number of random NCFs.
        #[arg(long)]
        random: Option<usize>,
        /// Largest number of binary variables; each NCF draws 1 to this many.
        #[arg(long, default_value_t = 3)]
        vars: usize,
        #[arg(long, default_value_t = 5)]
        max_rank: u32,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
    },
    /// World weights of the infinitesimal measure and the order checks.
    Bridge {
        model: PathBuf,
        /// Positive rational coefficient per world, in world order.
        #[arg(long, value_delimiter = ',')]
        coeffs: Option<Vec<String>>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Surprise axioms, the max rule and the consonance counterexample.
    Rivals {
        model: PathBuf,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

#[derive(Args, Debug)]
struct ReviseArgs {
    model: PathBuf,
    /// Proposition to conditionalize on; pair each with `--firmness`.
    #[arg(long = "on", action = clap::ArgAction::Append)]
    on: Vec<String>,
    #[arg(long, action = clap::ArgAction::Append)]
    firmness: Vec<u32>,
    /// Evidence file with ranks for a partition of the worlds.
    #[arg(long, action = clap::ArgAction::Append)]
    jeffrey: Vec<PathBuf>,
    /// Write the revised model here.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SuiteArg {
    Laws,
    Bridge,
    Rivals,
    All,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Suite {
        match s {
            SuiteArg::Laws => Suite::Laws,
            SuiteArg::Bridge => Suite::Bridge,
            SuiteArg::Rivals => Suite::Rivals,
            SuiteArg::All => Suite::All,
        }
    }
}

/// A command failure: the message and the exit code.
struct Failure(i32, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(EXIT_INVALID, e.to_string())
    }
}

type Outcome = Result<(String, i32), Failure>;

/// Runs one command line, writing to `out` and `err`; returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let matches = match Cli::command().try_get_matches_from(args) {
        Ok(m) => m,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    let _ = out.write_all(text.as_bytes());
                    EXIT_OK
                }
                _ => {
                    let _ = err.write_all(text.as_bytes());
                    EXIT_INVALID
                }
            };
        }
    };
    let cli = match Cli::from_arg_matches(&matches) {
        Ok(c) => c,
        Err(e) => {
            let _ = err.write_all(e.render().to_string().as_bytes());
            return EXIT_INVALID;
        }
    };
    let outcome = match cli.command {
        Command::Query { model, formula } => query(&model, &formula),
        Command::Revise(args) => {
            let sub = matches.subcommand_matches("revise").expect("revise was parsed");
            revise(&args, sub)
        }
        Command::Independent { model, lhs, rhs, given } => independence(&model, &lhs, &rhs, &given),
        Command::Verify {
            model,
            random,
            vars,
            max_rank,
            seed,
            suite,
        } => verify(model.as_deref(), random, vars, max_rank, seed, suite.into()),
        Command::Bridge { model, coeffs, seed } => bridge(&model, coeffs.as_deref(), seed),
        Command::Rivals { model, seed } => rivals(&model, seed),
    };
    match outcome {
        Ok((text, code)) => {
            let _ = out.write_all(text.as_bytes());
            code
        }
        Err(Failure(code, message)) => {
            let _ = writeln!(err, "error: {message}");
            code
        }
    }
}

fn world_cap() -> Result<usize, Failure> {
    match std::env::var(WORLD_CAP_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Failure(EXIT_INVALID, format!("{WORLD_CAP_ENV} must be a positive integer, got `{v}`"))),
        Err(_) => Ok(DEFAULT_WORLD_CAP),
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure(EXIT_INVALID, format!("cannot read {}: {e}", path.display())))
}

fn load_model(path: &Path) -> Result<Model, Failure> {
    let file = ModelFile::parse(&read(path)?).map_err(|m| Failure(EXIT_INVALID, format!("{}: {m}", path.display())))?;
    file.load(world_cap()?)
        .map_err(|e| Failure(EXIT_INVALID, format!("{}: {e}", path.display())))
}

fn belief_status(kappa: &crate::ncf::Ncf, a: &Proposition) -> crate::error::Result<&'static str> {
    Ok(if kappa.believes(a)? {
        "believed true"
    } else if kappa.believes(&a.complement())? {
        "believed false"
    } else {
        "neither believed nor disbelieved"
    })
}

fn query(path: &Path, formula: &str) -> Outcome {
    let model = load_model(path)?;
    let kappa = &model.kappa;
    let a = model.resolve(formula)?;
    let mut s = String::new();
    writeln!(s, "proposition {}", a.describe()).unwrap();
    let (r, nr) = (kappa.rank(&a)?, kappa.rank(&a.complement())?);
    let status = belief_status(kappa, &a)?;
    if a.is_contingent() {
        writeln!(s, "rank {r}, neg-rank {nr}, {status}, firmness {}", kappa.firmness(&a)?).unwrap();
    } else {
        writeln!(s, "rank {r}, neg-rank {nr}, {status}").unwrap();
        let kind = if a.is_full() { "tautology" } else { "contradiction" };
        writeln!(s, "note: the formula is a {kind}; firmness is defined only for contingent propositions").unwrap();
    }
    Ok((s, EXIT_OK))
}

/// Positions of each occurrence of `id` on the command line.
fn indices(m: &ArgMatches, id: &str) -> Vec<usize> {
    m.indices_of(id).map(|i| i.collect()).unwrap_or_default()
}

fn revise(args: &ReviseArgs, m: &ArgMatches) -> Outcome {
    let model = load_model(&args.model)?;
    let (on_at, firm_at, jeffrey_at) = (indices(m, "on"), indices(m, "firmness"), indices(m, "jeffrey"));
    if on_at.len() != firm_at.len() {
        return Err(Failure(
            EXIT_INVALID,
            format!("{} --on but {} --firmness; give one --firmness per --on", on_at.len(), firm_at.len()),
        ));
    }
    for (i, (&o, &f)) in on_at.iter().zip(&firm_at).enumerate() {
        let next_on = on_at.get(i + 1).copied().unwrap_or(usize::MAX);
        if f < o || f > next_on {
            return Err(Failure(EXIT_INVALID, format!("--firmness must follow its --on (step with `{}`)", args.on[i])));
        }
    }

    enum Source<'a> {
        On(&'a str, u32),
        Jeffrey(&'a Path),
    }
    let mut ordered: Vec<(usize, Source)> = on_at
        .iter()
        .zip(args.on.iter().zip(&args.firmness))
        .map(|(&i, (f, &w))| (i, Source::On(f, w)))
        .chain(jeffrey_at.iter().zip(&args.jeffrey).map(|(&i, p)| (i, Source::Jeffrey(p))))
        .collect();
    ordered.sort_by_key(|(i, _)| *i);

    let mut steps = Vec::new();
    let mut labels = Vec::new();
    for (n, (_, src)) in ordered.iter().enumerate() {
        let step_error = |e: String| Failure(EXIT_INVALID, format!("revision step {}: {e}", n + 1));
        match src {
            Source::On(f, w) => {
                let target = model.resolve(f).map_err(|e| step_error(e.to_string()))?;
                steps.push(RevisionStep::Conditionalize {
                    target,
                    weight: EvidenceWeight(*w),
                });
                labels.push(format!("conditionalize on `{f}` with firmness {w}"));
            }
            Source::Jeffrey(p) => {
                let file = EvidenceFile::parse(&read(p)?).map_err(step_error)?;
                let lambda = file.load(&model).map_err(|e| step_error(e.to_string()))?;
                steps.push(RevisionStep::Jeffrey(lambda));
                labels.push(format!("jeffrey revision from {}", p.display()));
            }
        }
    }
    let run = revision_sequence(&model.kappa, &steps).map_err(|e| match e {
        Error::RevisionStep { index, source } => {
            Failure(EXIT_INVALID, format!("revision step {}: {source}", index + 1))
        }
        e => e.into(),
    })?;

    let mut s = String::new();
    if steps.is_empty() {
        writeln!(s, "no revision steps; model unchanged").unwrap();
    }
    for (entry, label) in run.trace.iter().zip(&labels) {
        writeln!(s, "step {}: {label}", entry.index + 1).unwrap();
        writeln!(s, "  core {}", entry.core.describe()).unwrap();
        for (target, f) in &entry.firmness {
            let status = match f.value() {
                v if v > 0 => "believed true",
                v if v < 0 => "believed false",
                _ => "neither believed nor disbelieved",
            };
            writeln!(s, "  firmness of {} = {f} ({status})", target.describe()).unwrap();
        }
    }
    let revised = model.with_kappa(run.result);
    writeln!(s, "final ranks").unwrap();
    let space = revised.space().clone();
    for w in 0..space.world_count() {
        writeln!(s, "  {} {}", space.describe_world(w), revised.kappa.world_rank(w)).unwrap();
    }
    if let Some(out) = &args.out {
        std::fs::write(out, revised.to_json())
            .map_err(|e| Failure(EXIT_INVALID, format!("cannot write {}: {e}", out.display())))?;
        writeln!(s, "wrote {}", out.display()).unwrap();
    }
    Ok((s, EXIT_OK))
}

fn independence(path: &Path, lhs: &[String], rhs: &[String], given: &[String]) -> Outcome {
    let model = load_model(path)?;
    let kappa = &model.kappa;
    let space = kappa.space();
    let mut seen = std::collections::BTreeSet::new();
    for v in lhs.iter().chain(rhs).chain(given) {
        space.variable_index(v)?;
        if !seen.insert(v.as_str()) {
            return Err(Error::OverlappingVariables.into());
        }
    }
    let b = PartitionField::of_variables(space, lhs)?;
    let c = PartitionField::of_variables(space, rhs)?;
    let verdict = if given.is_empty() {
        independent(kappa, &b, &c)?
    } else {
        cond_independent_on_field(kappa, &b, &c, &PartitionField::of_variables(space, given)?)?
    };
    let mut s = String::new();
    let given_text = if given.is_empty() {
        String::new()
    } else {
        format!(" given {{{}}}", given.join(", "))
    };
    writeln!(s, "{{{}}} vs {{{}}}{given_text}", lhs.join(", "), rhs.join(", ")).unwrap();
    writeln!(s, "{}", if verdict.independent { "independent" } else { "dependent" }).unwrap();
    match verdict.regime {
        Regime::Exhaustive => writeln!(s, "checked every pair of members").unwrap(),
        Regime::Sampled(n) => writeln!(s, "checked every pair of atoms and {n} sampled pairs of members").unwrap(),
    }
    if let Some(w) = verdict.witness {
        writeln!(s, "witness").unwrap();
        writeln!(s, "  B = {}", w.b.describe()).unwrap();
        writeln!(s, "  C = {}", w.c.describe()).unwrap();
        if !w.given.is_full() {
            writeln!(s, "  D = {}", w.given.describe()).unwrap();
            writeln!(s, "  κ(B∩C|D) = {}, κ(B|D) + κ(C|D) = {}", w.joint, w.sum).unwrap();
        } else {
            writeln!(s, "  κ(B∩C) = {}, κ(B) + κ(C) = {}", w.joint, w.sum).unwrap();
        }
    }
    Ok((s, EXIT_OK))
}

fn render(reports: &[Report]) -> (String, i32) {
    let mut s = String::new();
    for r in reports {
        write!(s, "{r}").unwrap();
    }
    let violations: u64 = reports.iter().map(Report::violations).sum();
    writeln!(s, "total violations: {violations}").unwrap();
    (s, if violations == 0 { EXIT_OK } else { EXIT_VIOLATION })
}

fn verify(
    model: Option<&Path>,
    random: Option<usize>,
    vars: usize,
    max_rank: u32,
    seed: u64,
    suite: Suite,
) -> Outcome {
    let (kappas, config, header) = match (model, random) {
        (Some(path), _) => {
            let m = load_model(path)?;
            let config = SuiteConfig {
                seed,
                pairs: 64,
                triples: 64,
                revisions: 16,
                ..SuiteConfig::default()
            };
            (vec![m.kappa], config, format!("model {}", path.display()))
        }
        (None, Some(n)) => {
            if vars == 0 || vars > 4 {
                return Err(Failure(EXIT_INVALID, format!("--vars must be between 1 and 4, got {vars}")));
            }
            let kappas = random_population(&mut rng(seed), n, vars, max_rank)?;
            let config = SuiteConfig {
                seed,
                ..SuiteConfig::default()
            };
            (kappas, config, format!("{n} random NCFs, up to {vars} binary variables, ranks up to {max_rank}, seed {seed}"))
        }
        (None, None) => unreachable!("clap requires a model or --random"),
    };
    let reports = population_reports(&kappas, suite, &config)?;
    let (body, code) = render(&reports);
    Ok((format!("{header}\n{body}"), code))
}

fn bridge(path: &Path, coeffs: Option<&[String]>, seed: u64) -> Outcome {
    let model = load_model(path)?;
    let coeffs: Option<Vec<Rational>> = coeffs
        .map(|cs| {
            cs.iter()
                .map(|c| {
                    c.trim()
                        .parse::<Rational>()
                        .map_err(|_| Failure(EXIT_INVALID, format!("`{c}` is not a rational number")))
                })
                .collect::<Result<Vec<_>, _>>()
        })
        .transpose()?;
    let p = ncf_to_measure(&model.kappa, coeffs.as_deref())?;
    let mut s = String::new();
    let space = model.space();
    writeln!(s, "world weights").unwrap();
    for w in 0..space.world_count() {
        writeln!(s, "  {} {}", space.describe_world(w), p.world_weight(w)).unwrap();
    }
    writeln!(s, "total {}", p.total()).unwrap();
    let config = BridgeConfig {
        seed,
        ..BridgeConfig::default()
    };
    let report = verify_correspondence(&model.kappa, coeffs.as_deref(), &config)?;
    let (body, code) = render(&[report]);
    s.push_str(&body);
    Ok((s, code))
}

fn rivals(path: &Path, seed: u64) -> Outcome {
    let model = load_model(path)?;
    let kappa = &model.kappa;
    let y = ncf_to_surprise(kappa, default_scale::<Rational>)?;
    let mut s = String::new();
    writeln!(s, "potential surprise, scale n/(n+1)").unwrap();
    let space = model.space();
    for w in 0..space.world_count() {
        let v = y.value(&Proposition::from_worlds(space, [w]))?;
        writeln!(s, "  {} {v}", space.describe_world(w)).unwrap();
    }
    let config = SuiteConfig {
        seed,
        pairs: 256,
        ..SuiteConfig::default()
    };
    let reports = population_reports(std::slice::from_ref(kappa), Suite::Rivals, &config)?;
    let (body, code) = render(&reports);
    s.push_str(&body);
    Ok((s, code))
}
