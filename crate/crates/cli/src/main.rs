use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use lstar_t::automata::{format, SuccinctAutomaton};
use lstar_t::bench::{self, ExperimentGrid, Suite};
use lstar_t::effects::text::parse_effect_spec;
use lstar_t::effects::Semiring;
use lstar_t::learner::{lstar_t_observed, CeMethod, LearnerConfig, RightInverse, TraceEvent};
use lstar_t::oracle::{counted, ExactTeacher, PacTeacher, RandomTeacher, Teacher, WordSampler};
use lstar_t::table::ConsistencyMode;
use lstar_t::Error;

/// Active learning of automata with side-effects.
///
/// Exit status: 0 success, 1 i/o or internal failure, 2 malformed input,
/// 3 conflicting configuration, 4 enumeration limit reached.
#[derive(Parser)]
#[command(name = "lstar-t", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Learn the language of an automaton file.
    Learn(LearnArgs),
    /// Run a query-count experiment on random targets.
    Bench(BenchArgs),
    /// Write a random automaton.
    Generate(GenerateArgs),
}

#[derive(clap::Args)]
struct LearnArgs {
    /// Automaton file giving the target language.
    #[arg(long)]
    target: PathBuf,
    /// Effect of the learner, e.g. identity, powerset, powerset-and, maybe,
    /// semimodule:5, upset, writer:z3 or writer:<file>. Defaults to the
    /// target's effect.
    #[arg(long)]
    effect: Option<String>,
    #[arg(long, value_enum, default_value = "angluin")]
    ce: Ce,
    /// Defaults to the cheapest check that is sound for the effect and --ce.
    #[arg(long, value_enum)]
    consistency: Option<Consistency>,
    #[arg(long, value_enum, default_value = "stored")]
    inverse: Inverse,
    /// exact, random:<tests> or pac:<epsilon>:<delta>.
    #[arg(long, default_value = "exact")]
    teacher: String,
    /// Seed for sampling teachers.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write the learned automaton here instead of to stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Print the table after every step.
    #[arg(long)]
    trace: bool,
}

#[derive(clap::Args)]
struct BenchArgs {
    /// nfa-table2, wfa-table1, dfa-fig6, moore-fig7 or wfa-fig8.
    #[arg(long)]
    suite: String,
    /// Comma-separated sizes or a range such as 1..4 (inclusive).
    #[arg(long)]
    sizes: String,
    #[arg(long, default_value_t = 25)]
    iters: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Directory for rows.csv, aggregate.csv and the series files.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Record zero wall times so that output is reproducible.
    #[arg(long)]
    no_timing: bool,
}

#[derive(clap::Args)]
struct GenerateArgs {
    #[arg(long, value_enum)]
    kind: Kind,
    #[arg(long, default_value_t = 4)]
    n: usize,
    #[arg(long, default_value_t = 3)]
    k: usize,
    /// Transitions per state and symbol (tv-nfa).
    #[arg(long, default_value_t = 1.25)]
    density: f64,
    /// Field order for weights (wfa) or number of outputs (moore).
    #[arg(long, default_value_t = 5)]
    field: u32,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Ce {
    Angluin,
    Mp,
    Rs,
}

#[derive(Clone, Copy, ValueEnum)]
enum Consistency {
    Full,
    Transpose,
    Bollig,
    None,
}

#[derive(Clone, Copy, ValueEnum)]
enum Inverse {
    Stored,
    I1,
    I2,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    /// Moore machine with --field outputs.
    Moore,
    /// Moore machine with two outputs.
    Dfa,
    /// Tabakov-Vardi random NFA.
    TvNfa,
    /// Weighted automaton over GF(--field).
    Wfa,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Learn(a) => learn(a),
        Command::Bench(a) => run_bench(a),
        Command::Generate(a) => generate(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse { .. } | Error::UnknownSymbol(_) | Error::Invalid(_) => 2,
        Error::Config(_) | Error::AlphabetMismatch(..) => 3,
        Error::EnumerationCap { .. } => 4,
        _ => 1,
    }
}

fn read(path: &Path) -> Result<String, Error> {
    fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn write_or_print(path: Option<&Path>, text: &str) -> Result<(), Error> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Error::Io(format!("{}: {e}", p.display()))),
        None => emit(text),
    }
}

/// Writes to stdout; a reader that went away early is not an error.
fn emit(text: &str) -> Result<(), Error> {
    match io::stdout().lock().write_all(text.as_bytes()) {
        Err(e) if e.kind() != io::ErrorKind::BrokenPipe => Err(Error::Io(e.to_string())),
        _ => Ok(()),
    }
}

fn learner_config(args: &LearnArgs, target: &SuccinctAutomaton) -> Result<LearnerConfig, Error> {
    let outputs = target.algebra().carrier_size();
    let (effect, algebra) = match &args.effect {
        None => (target.effect().clone(), target.algebra().clone()),
        Some(spec) => match spec.strip_prefix("writer:") {
            // a monoid may be given inline or as a file holding its spec
            Some(m) if Path::new(m).is_file() => parse_effect_spec(&format!("writer:{}", read(Path::new(m))?.trim()), outputs)?,
            _ => parse_effect_spec(spec, outputs)?,
        },
    };
    let ce = match args.ce {
        Ce::Angluin => CeMethod::Angluin,
        Ce::Mp => CeMethod::MalerPnueli,
        Ce::Rs => CeMethod::RivestSchapire,
    };
    let mut config = LearnerConfig::new(effect, algebra, ce).trace_tables(args.trace);
    if let Some(c) = args.consistency {
        config = config.consistency(match c {
            Consistency::Full => ConsistencyMode::Full,
            Consistency::Transpose => ConsistencyMode::Transpose,
            Consistency::Bollig => ConsistencyMode::BolligRfsa,
            Consistency::None => ConsistencyMode::None,
        });
    }
    config = config.inverse(match args.inverse {
        Inverse::Stored => RightInverse::Stored,
        Inverse::I1 => RightInverse::MaxJsl,
        Inverse::I2 => RightInverse::SimplifiedJsl,
    });
    config.validate()?;
    Ok(config)
}

fn teacher(spec: &str, target: SuccinctAutomaton, seed: u64) -> Result<Box<dyn Teacher>, Error> {
    let parts: Vec<&str> = spec.split(':').collect();
    let bad = || Error::Config(format!("bad teacher `{spec}`"));
    let alphabet = target.alphabet().clone();
    let rng = ChaCha8Rng::seed_from_u64(seed);
    let t = target.clone();
    let oracle = move |w: &lstar_t::Word| t.language(w).expect("alphabet checked");
    Ok(match parts.as_slice() {
        ["exact"] => Box::new(counted(ExactTeacher::new(target))),
        ["random", n] => {
            let n = n.parse().map_err(|_| bad())?;
            Box::new(counted(RandomTeacher::new(alphabet, n, WordSampler::default(), rng, oracle)))
        }
        ["pac", e, d] => {
            let e = e.parse().map_err(|_| bad())?;
            let d = d.parse().map_err(|_| bad())?;
            Box::new(counted(PacTeacher::new(alphabet, e, d, WordSampler::default(), rng, oracle)?))
        }
        _ => return Err(bad()),
    })
}

fn learn(args: LearnArgs) -> Result<(), Error> {
    let target = format::parse(&read(&args.target)?)?;
    let config = learner_config(&args, &target)?;
    let mut t = teacher(&args.teacher, target, args.seed)?;
    let (learned, stats) = lstar_t_observed(&mut t, &config, &mut |_, _, _| {})?;
    let mut report = String::new();
    if args.trace {
        for r in &stats.trace {
            let event = match &r.event {
                TraceEvent::Initial => "initial".to_string(),
                TraceEvent::Closedness(w) => format!("closedness {}", learned.alphabet().show(w)),
                TraceEvent::Consistency(w) => format!("consistency {}", learned.alphabet().show(w)),
                TraceEvent::Hypothesis(n) => format!("hypothesis {n}"),
                TraceEvent::Counterexample(w) => format!("counterexample {}", learned.alphabet().show(w)),
            };
            report += &format!("# round {} {event}\n", r.round);
            report += r.table.as_deref().unwrap_or("");
        }
    }
    report += &format!(
        "mq {}\neq {}\nrounds {}\nprefixes {}\nsuffixes {}\nstates {}\nlongest_counterexample {}\n",
        stats.mq, stats.eq, stats.rounds, stats.prefixes, stats.suffixes, stats.generators, stats.longest_counterexample
    );
    emit(&report)?;
    write_or_print(args.out.as_deref(), &format::serialize(&learned))
}

fn parse_sizes(s: &str) -> Result<Vec<usize>, Error> {
    let bad = || Error::Config(format!("bad size list `{s}`"));
    if let Some((a, b)) = s.split_once("..") {
        let a: usize = a.trim().parse().map_err(|_| bad())?;
        let b: usize = b.trim().parse().map_err(|_| bad())?;
        if a > b {
            return Err(bad());
        }
        return Ok((a..=b).collect());
    }
    s.split(',').map(|x| x.trim().parse().map_err(|_| bad())).collect()
}

fn run_bench(args: BenchArgs) -> Result<(), Error> {
    let mut grid = ExperimentGrid::new(Suite::parse(&args.suite)?, parse_sizes(&args.sizes)?, args.iters, args.seed);
    grid.jobs = args.jobs;
    grid.timing = !args.no_timing;
    let rows = bench::run_experiment(&grid)?;
    let aggs = bench::aggregate(&rows);
    for r in rows.iter().filter(|r| r.error.is_some()) {
        eprintln!("run failed: {} size {} seed {}: {}", r.variant, r.size, r.seed, r.error.as_deref().unwrap_or(""));
    }
    if let Some(dir) = &args.out {
        fs::create_dir_all(dir)?;
        bench::write_rows_csv(&rows, fs::File::create(dir.join("rows.csv"))?)?;
        bench::write_aggregate_csv(&aggs, fs::File::create(dir.join("aggregate.csv"))?)?;
        bench::write_series(&aggs, &dir.join("series"))?;
    }
    emit(&bench::format_aggregates(&aggs))
}

fn generate(args: GenerateArgs) -> Result<(), Error> {
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let aut = match args.kind {
        Kind::Moore => bench::gen_moore(args.n, args.k, args.field, &mut rng)?,
        Kind::Dfa => bench::gen_moore(args.n, args.k, 2, &mut rng)?,
        Kind::TvNfa => bench::gen_tabakov_vardi_nfa(args.n, args.k, args.density, &mut rng)?,
        Kind::Wfa => bench::gen_wfa(args.n, args.k, &Semiring::gf(args.field).map_err(|e| Error::Config(e.to_string()))?, &mut rng)?,
    };
    write_or_print(args.out.as_deref(), &format::serialize(&aut))
}
