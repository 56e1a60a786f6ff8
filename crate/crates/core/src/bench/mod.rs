//! Query-count experiments on random targets.

pub mod generate;

use std::fmt::Write as _;
use std::io;
use std::path::Path;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::automata::SuccinctAutomaton;
use crate::effects::{Effect, OutputAlgebra, Semiring};
use crate::error::{Error, Result};
use crate::learner::{lstar_t, CeMethod, LearnerConfig};
use crate::oracle::{counted, ExactTeacher, Teacher};
use crate::table::ConsistencyMode;

pub use generate::{gen_moore, gen_tabakov_vardi_nfa, gen_wfa};

/// One learner configuration in a comparison.
#[derive(Clone, Debug)]
pub struct Variant {
    pub name: &'static str,
    pub config: LearnerConfig,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    /// Moore-machine L* against residual-automaton learners on random NFAs.
    NfaTable2,
    /// Moore-machine L* against the vector-space learner on random WFAs.
    WfaTable1,
    /// The three counterexample handlers on random DFAs.
    DfaFig6,
    /// L* against the vector-space learners on random Moore machines.
    MooreFig7,
    /// The vector-space learners on random WFAs.
    WfaFig8,
}

impl Suite {
    pub const ALL: [Suite; 5] = [Suite::NfaTable2, Suite::WfaTable1, Suite::DfaFig6, Suite::MooreFig7, Suite::WfaFig8];

    pub fn name(&self) -> &'static str {
        match self {
            Suite::NfaTable2 => "nfa-table2",
            Suite::WfaTable1 => "wfa-table1",
            Suite::DfaFig6 => "dfa-fig6",
            Suite::MooreFig7 => "moore-fig7",
            Suite::WfaFig8 => "wfa-fig8",
        }
    }

    pub fn parse(s: &str) -> Result<Suite> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown suite `{s}`")))
    }

    pub fn variants(&self, grid: &ExperimentGrid) -> Result<Vec<Variant>> {
        let field = Semiring::gf(grid.field)?;
        let moore = |name, outputs, ce| Variant {
            name,
            config: LearnerConfig::new(Effect::Identity, OutputAlgebra::Free(outputs), ce),
        };
        let vector = |name, ce| Variant {
            name,
            config: LearnerConfig::new(Effect::Semimodule(field.clone()), OutputAlgebra::Linear(field.clone()), ce),
        };
        let nfa = |name, ce, consistency| Variant {
            name,
            config: LearnerConfig::new(Effect::Powerset, OutputAlgebra::Or, ce).consistency(consistency),
        };
        use CeMethod::*;
        let f = grid.field;
        Ok(match self {
            Suite::NfaTable2 => vec![
                moore("lstar", 2, Angluin),
                nfa("nlstar-mp", MalerPnueli, ConsistencyMode::BolligRfsa),
                nfa("nlstar-mp-nc", MalerPnueli, ConsistencyMode::None),
                nfa("nlstar-rs", RivestSchapire, ConsistencyMode::BolligRfsa),
                nfa("nlstar-rs-nc", RivestSchapire, ConsistencyMode::None),
            ],
            Suite::WfaTable1 => vec![
                moore("lstar", f, Angluin),
                vector("lstarv", Angluin),
                moore("lstar-mp", f, MalerPnueli),
                vector("lstarv-mp", MalerPnueli),
                moore("lstar-rs", f, RivestSchapire),
                vector("lstarv-rs", RivestSchapire),
            ],
            Suite::DfaFig6 => vec![
                moore("lstar", 2, Angluin),
                moore("lstar-mp", 2, MalerPnueli),
                moore("lstar-rs", 2, RivestSchapire),
            ],
            Suite::MooreFig7 => vec![
                vector("lstarv", Angluin),
                vector("lstarv-mp", MalerPnueli),
                vector("lstarv-rs", RivestSchapire),
                moore("lstar", f, Angluin),
            ],
            Suite::WfaFig8 => vec![
                vector("lstarv", Angluin),
                vector("lstarv-mp", MalerPnueli),
                vector("lstarv-rs", RivestSchapire),
            ],
        })
    }

    /// The random target for one size and one per-cell generator.
    pub fn target(&self, grid: &ExperimentGrid, size: usize, rng: &mut ChaCha8Rng) -> Result<SuccinctAutomaton> {
        match self {
            Suite::NfaTable2 => gen_tabakov_vardi_nfa(size, grid.alphabet_size, grid.density, rng),
            Suite::WfaTable1 | Suite::WfaFig8 => gen_wfa(size, grid.alphabet_size, &Semiring::gf(grid.field)?, rng),
            Suite::DfaFig6 => gen_moore(size, grid.alphabet_size, 2, rng),
            Suite::MooreFig7 => gen_moore(size, grid.alphabet_size, grid.field, rng),
        }
    }
}

#[derive(Clone, Debug)]
pub struct ExperimentGrid {
    pub suite: Suite,
    pub sizes: Vec<usize>,
    pub iterations: usize,
    pub seed: u64,
    pub alphabet_size: usize,
    /// Transitions per state and symbol for random NFAs.
    pub density: f64,
    /// Order of the prime field for weights and Moore outputs.
    pub field: u32,
    /// Record wall-clock times; off makes the output reproducible byte for byte.
    pub timing: bool,
    pub jobs: usize,
}

impl ExperimentGrid {
    pub fn new(suite: Suite, sizes: Vec<usize>, iterations: usize, seed: u64) -> Self {
        ExperimentGrid {
            suite,
            sizes,
            iterations,
            seed,
            alphabet_size: 3,
            density: 1.25,
            field: 5,
            timing: true,
            jobs: 1,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.iterations == 0 {
            return Err(Error::Config("at least one iteration is needed".into()));
        }
        if self.sizes.is_empty() || self.sizes.contains(&0) {
            return Err(Error::Config("sizes must be positive".into()));
        }
        if self.jobs == 0 {
            return Err(Error::Config("at least one job is needed".into()));
        }
        Ok(())
    }

    /// The generator seed of one cell. It ignores the variant, so every
    /// variant meets the same targets.
    pub fn cell_seed(&self, size: usize, iteration: usize) -> u64 {
        splitmix(splitmix(self.seed ^ splitmix(size as u64)) ^ iteration as u64)
    }
}

fn splitmix(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

#[derive(Clone, Debug, PartialEq)]
pub struct ResultRow {
    pub effect: String,
    pub variant: String,
    pub size: usize,
    pub iteration: usize,
    pub seed: u64,
    pub mq: u64,
    pub eq: u64,
    pub rounds: usize,
    pub learned_states: usize,
    pub wall_ms: f64,
    /// Set when the run failed; the counts are then meaningless.
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Aggregate {
    pub effect: String,
    pub variant: String,
    pub size: usize,
    pub runs: usize,
    pub mq_mean: f64,
    pub mq_sd: f64,
    pub eq_mean: f64,
    pub eq_sd: f64,
}

fn run_cell(grid: &ExperimentGrid, variant: &Variant, size: usize, iteration: usize) -> ResultRow {
    let seed = grid.cell_seed(size, iteration);
    let mut row = ResultRow {
        effect: variant.config.effect.name(),
        variant: variant.name.to_string(),
        size,
        iteration,
        seed,
        mq: 0,
        eq: 0,
        rounds: 0,
        learned_states: 0,
        wall_ms: 0.0,
        error: None,
    };
    let started = Instant::now();
    let outcome = (|| -> Result<()> {
        let target = grid.suite.target(grid, size, &mut ChaCha8Rng::seed_from_u64(seed))?;
        let mut teacher = counted(ExactTeacher::new(target.clone()));
        let (learned, stats) = lstar_t(&mut teacher, &variant.config)?;
        // the teacher already accepted it; re-check a tenth of the runs
        if iteration % 10 == 0 && ExactTeacher::new(target).equivalence(&learned)?.is_some() {
            return Err(Error::Internal("learned automaton differs from its target".into()));
        }
        row.mq = stats.mq;
        row.eq = stats.eq;
        row.rounds = stats.rounds;
        row.learned_states = learned.num_states();
        Ok(())
    })();
    if grid.timing {
        row.wall_ms = started.elapsed().as_secs_f64() * 1000.0;
    }
    if let Err(e) = outcome {
        row.error = Some(e.to_string());
    }
    row
}

/// Runs every variant on every cell. Rows come back sorted by variant (in
/// suite order), size and iteration.
pub fn run_experiment(grid: &ExperimentGrid) -> Result<Vec<ResultRow>> {
    grid.validate()?;
    let variants = grid.suite.variants(grid)?;
    let mut cells = Vec::new();
    for (v, _) in variants.iter().enumerate() {
        for &size in &grid.sizes {
            for it in 0..grid.iterations {
                cells.push((v, size, it));
            }
        }
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(grid.jobs)
        .build()
        .map_err(|e| Error::Config(e.to_string()))?;
    let mut rows: Vec<(usize, ResultRow)> =
        pool.install(|| cells.par_iter().map(|&(v, size, it)| (v, run_cell(grid, &variants[v], size, it))).collect());
    rows.sort_by(|(va, a), (vb, b)| (va, a.size, a.iteration).cmp(&(vb, b.size, b.iteration)));
    Ok(rows.into_iter().map(|(_, r)| r).collect())
}

/// Mean and sample standard deviation per variant and size, over the
/// successful runs. Keeps the order of `rows`.
pub fn aggregate(rows: &[ResultRow]) -> Vec<Aggregate> {
    let mut out: Vec<Aggregate> = Vec::new();
    let mut groups: Vec<Vec<&ResultRow>> = Vec::new();
    for r in rows.iter().filter(|r| r.error.is_none()) {
        match out.iter().position(|a| a.variant == r.variant && a.size == r.size && a.effect == r.effect) {
            Some(i) => groups[i].push(r),
            None => {
                out.push(Aggregate {
                    effect: r.effect.clone(),
                    variant: r.variant.clone(),
                    size: r.size,
                    runs: 0,
                    mq_mean: 0.0,
                    mq_sd: 0.0,
                    eq_mean: 0.0,
                    eq_sd: 0.0,
                });
                groups.push(vec![r]);
            }
        }
    }
    for (a, g) in out.iter_mut().zip(&groups) {
        let (mq_mean, mq_sd) = mean_sd(g.iter().map(|r| r.mq as f64));
        let (eq_mean, eq_sd) = mean_sd(g.iter().map(|r| r.eq as f64));
        *a = Aggregate { runs: g.len(), mq_mean, mq_sd, eq_mean, eq_sd, ..a.clone() };
    }
    out
}

fn mean_sd(xs: impl Iterator<Item = f64> + Clone) -> (f64, f64) {
    let n = xs.clone().count() as f64;
    let mean = xs.clone().sum::<f64>() / n;
    if n < 2.0 {
        return (mean, 0.0);
    }
    let var = xs.map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, var.sqrt())
}

#[derive(Serialize)]
struct CsvRow<'a> {
    effect: &'a str,
    variant: &'a str,
    size: usize,
    seed: u64,
    mq: Option<u64>,
    eq: Option<u64>,
    rounds: Option<usize>,
    learned_states: Option<usize>,
    wall_ms: f64,
}

/// Per-run CSV; failed runs have empty count fields.
pub fn write_rows_csv<W: io::Write>(rows: &[ResultRow], w: W) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    for r in rows {
        let ok = r.error.is_none();
        out.serialize(CsvRow {
            effect: &r.effect,
            variant: &r.variant,
            size: r.size,
            seed: r.seed,
            mq: ok.then_some(r.mq),
            eq: ok.then_some(r.eq),
            rounds: ok.then_some(r.rounds),
            learned_states: ok.then_some(r.learned_states),
            wall_ms: r.wall_ms,
        })
        .map_err(csv_error)?;
    }
    out.flush()?;
    Ok(())
}

#[derive(Serialize)]
struct CsvAggregate<'a> {
    effect: &'a str,
    variant: &'a str,
    size: usize,
    mq_mean: f64,
    mq_sd: f64,
    eq_mean: f64,
    eq_sd: f64,
}

pub fn write_aggregate_csv<W: io::Write>(aggs: &[Aggregate], w: W) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    for a in aggs {
        out.serialize(CsvAggregate {
            effect: &a.effect,
            variant: &a.variant,
            size: a.size,
            mq_mean: a.mq_mean,
            mq_sd: a.mq_sd,
            eq_mean: a.eq_mean,
            eq_sd: a.eq_sd,
        })
        .map_err(csv_error)?;
    }
    out.flush()?;
    Ok(())
}

fn csv_error(e: csv::Error) -> Error {
    Error::Io(e.to_string())
}

/// Writes `<variant>_mq.dat` and `<variant>_eq.dat` into `dir`, one line
/// `size mean sd` per size.
pub fn write_series(aggs: &[Aggregate], dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir)?;
    let mut variants: Vec<&str> = Vec::new();
    for a in aggs {
        if !variants.contains(&a.variant.as_str()) {
            variants.push(&a.variant);
        }
    }
    for v in variants {
        let (mut mq, mut eq) = (String::new(), String::new());
        for a in aggs.iter().filter(|a| a.variant == v) {
            let _ = writeln!(mq, "{} {} {}", a.size, a.mq_mean, a.mq_sd);
            let _ = writeln!(eq, "{} {} {}", a.size, a.eq_mean, a.eq_sd);
        }
        std::fs::write(dir.join(format!("{v}_mq.dat")), mq)?;
        std::fs::write(dir.join(format!("{v}_eq.dat")), eq)?;
    }
    Ok(())
}

/// Human-readable summary: membership means rounded to whole numbers,
/// equivalence means to two decimals.
pub fn format_aggregates(aggs: &[Aggregate]) -> String {
    let mut s = format!("{:<14} {:>5} {:>5} {:>10} {:>8}\n", "variant", "size", "runs", "MQ", "EQ");
    for a in aggs {
        let _ = writeln!(s, "{:<14} {:>5} {:>5} {:>10.0} {:>8.2}", a.variant, a.size, a.runs, a.mq_mean, a.eq_mean);
    }
    s
}
