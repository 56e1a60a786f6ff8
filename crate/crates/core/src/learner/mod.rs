//! The learning loop.

pub mod counterexample;
pub mod hypothesis;

use std::time::{Duration, Instant};

use crate::automata::SuccinctAutomaton;
use crate::effects::{Effect, EnumCaps, OutputAlgebra};
use crate::error::{Error, Result};
use crate::oracle::{CountingTeacher, Teacher};
use crate::table::{ConsistencyMode, DecompositionStrategy, ObservationTable};
use crate::word::Word;

pub use counterexample::{compute_r, handle_ce, rs_split, CeMethod};
pub use hypothesis::{build_succinct, minimize_generators, Hypothesis, Inverse, RightInverse};

#[derive(Clone, Debug)]
pub struct LearnerConfig {
    pub effect: Effect,
    pub algebra: OutputAlgebra,
    pub strategy: DecompositionStrategy,
    pub consistency: ConsistencyMode,
    pub ce_method: CeMethod,
    pub inverse: RightInverse,
    pub caps: EnumCaps,
    /// Keep a rendering of the table in every trace record.
    pub trace_tables: bool,
}

impl LearnerConfig {
    /// Defaults: the effect's dedicated decomposition strategy, the cheapest
    /// sound consistency check for the handler, stored inverses.
    pub fn new(effect: Effect, algebra: OutputAlgebra, ce_method: CeMethod) -> Self {
        let strategy = DecompositionStrategy::default_for(&effect, &algebra);
        let consistency = default_consistency(&effect, &algebra, ce_method);
        LearnerConfig {
            effect,
            algebra,
            strategy,
            consistency,
            ce_method,
            inverse: RightInverse::Stored,
            caps: EnumCaps::default(),
            trace_tables: false,
        }
    }

    pub fn strategy(mut self, s: DecompositionStrategy) -> Self {
        self.strategy = s;
        self
    }

    pub fn consistency(mut self, c: ConsistencyMode) -> Self {
        self.consistency = c;
        self
    }

    pub fn inverse(mut self, i: RightInverse) -> Self {
        self.inverse = i;
        self
    }

    pub fn caps(mut self, caps: EnumCaps) -> Self {
        self.caps = caps;
        self
    }

    pub fn trace_tables(mut self, on: bool) -> Self {
        self.trace_tables = on;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let effect = self.effect.name();
        if !self.algebra.fits(&self.effect) {
            return Err(Error::Config(format!("output algebra {:?} does not fit {effect}", self.algebra)));
        }
        if !self.strategy.supports(&self.effect, &self.algebra) {
            return Err(Error::Config(format!("{:?} decomposition does not apply to {effect}", self.strategy)));
        }
        if !self.inverse.supports(&self.effect, &self.algebra) {
            return Err(Error::Config(format!("{:?} inverse needs the powerset effect with `or`", self.inverse)));
        }
        match self.consistency {
            ConsistencyMode::None if self.ce_method == CeMethod::Angluin => {
                Err(Error::Config("dropping consistency needs mp or rs counterexample handling".into()))
            }
            ConsistencyMode::BolligRfsa
                if !(self.effect == Effect::Powerset && self.algebra == OutputAlgebra::Or) =>
            {
                Err(Error::Config("bollig consistency needs the powerset effect with `or`".into()))
            }
            ConsistencyMode::BolligRfsa if self.ce_method == CeMethod::Angluin => {
                Err(Error::Config("bollig consistency does not guarantee progress with angluin handling".into()))
            }
            ConsistencyMode::Transpose if !self.effect.is_commutative() => {
                Err(Error::Config(format!("transpose consistency needs a commutative effect, not {effect}")))
            }
            _ => Ok(()),
        }
    }
}

/// The consistency check used when none is given.
pub fn default_consistency(effect: &Effect, algebra: &OutputAlgebra, ce: CeMethod) -> ConsistencyMode {
    let suffix_based = ce != CeMethod::Angluin;
    match effect {
        Effect::Powerset if *algebra == OutputAlgebra::Or && suffix_based => ConsistencyMode::BolligRfsa,
        Effect::Powerset if *algebra == OutputAlgebra::Or => ConsistencyMode::Full,
        Effect::Powerset | Effect::Semimodule(_) => ConsistencyMode::Transpose,
        Effect::Identity | Effect::Upset if suffix_based => ConsistencyMode::None,
        _ => ConsistencyMode::Full,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TraceEvent {
    Initial,
    /// `s·a` moved to `S`.
    Closedness(Word),
    /// Column added.
    Consistency(Word),
    /// Hypothesis with this many states submitted.
    Hypothesis(usize),
    /// Counterexample processed.
    Counterexample(Word),
}

#[derive(Clone, Debug)]
pub struct TraceRecord {
    /// Number of equivalence queries posed before this event.
    pub round: usize,
    pub prefixes: usize,
    pub suffixes: usize,
    pub event: TraceEvent,
    /// The table after the event, when tables are traced.
    pub table: Option<String>,
}

#[derive(Clone, Debug, Default)]
pub struct RunStats {
    pub mq: u64,
    pub eq: u64,
    /// Hypotheses built.
    pub rounds: usize,
    pub closedness_fixes: usize,
    pub consistency_fixes: usize,
    pub prefixes: usize,
    pub suffixes: usize,
    /// States of the returned automaton.
    pub generators: usize,
    pub alphabet_size: usize,
    pub longest_counterexample: usize,
    pub wall: Duration,
    pub trace: Vec<TraceRecord>,
}

/// Runs the learner until the teacher accepts a hypothesis.
pub fn lstar_t(teacher: &mut dyn Teacher, config: &LearnerConfig) -> Result<(SuccinctAutomaton, RunStats)> {
    lstar_t_observed(teacher, config, &mut |_, _, _| {})
}

/// [`lstar_t`], calling `observer` after every event with the current table
/// and, for `Hypothesis` events, the hypothesis.
pub fn lstar_t_observed(
    teacher: &mut dyn Teacher,
    config: &LearnerConfig,
    observer: &mut dyn FnMut(&ObservationTable, &TraceEvent, Option<&Hypothesis>),
) -> Result<(SuccinctAutomaton, RunStats)> {
    config.validate()?;
    if teacher.alphabet().len() == 0 {
        return Err(Error::Config("the alphabet is empty".into()));
    }
    let started = Instant::now();
    let base = teacher.counters();
    let mut t = CountingTeacher::new(teacher);
    let mut stats = RunStats { alphabet_size: t.alphabet().len(), ..RunStats::default() };
    let mut table =
        ObservationTable::new(config.effect.clone(), config.algebra.clone(), t.alphabet().clone(), config.caps);
    table.fill(&mut t);

    let mut record = |table: &ObservationTable, stats: &mut RunStats, event: TraceEvent, hyp: Option<&Hypothesis>| {
        observer(table, &event, hyp);
        log::debug!(
            "round={} S={} E={} event={:?}",
            stats.rounds,
            table.prefixes().len(),
            table.suffixes().len(),
            event
        );
        stats.trace.push(TraceRecord {
            round: stats.rounds,
            prefixes: table.prefixes().len(),
            suffixes: table.suffixes().len(),
            event,
            table: config.trace_tables.then(|| table.dump()),
        });
    };
    record(&table, &mut stats, TraceEvent::Initial, None);

    loop {
        loop {
            if let Some((s, a)) = table.closedness_defect(config.strategy)? {
                let sa = s.push(a);
                table.add_prefix(sa.clone());
                table.fill(&mut t);
                stats.closedness_fixes += 1;
                record(&table, &mut stats, TraceEvent::Closedness(sa), None);
                continue;
            }
            if let Some(col) = table.consistency_defect(config.consistency, config.strategy)? {
                if !table.add_suffix(col.clone()) {
                    return Err(Error::Internal("consistency repair proposed an existing column".into()));
                }
                table.fill(&mut t);
                stats.consistency_fixes += 1;
                record(&table, &mut stats, TraceEvent::Consistency(col), None);
                continue;
            }
            break;
        }
        let gens = minimize_generators(&table, config.strategy)?;
        let hyp = build_succinct(&table, &gens, config.inverse, config.strategy)?;
        stats.rounds += 1;
        record(&table, &mut stats, TraceEvent::Hypothesis(gens.len()), Some(&hyp));
        match t.equivalence(&hyp.automaton)? {
            None => {
                stats.prefixes = table.prefixes().len();
                stats.suffixes = table.suffixes().len();
                stats.generators = gens.len();
                let own = t.counters().unwrap_or_default();
                let (mq, eq) = match (base, t.inner().counters()) {
                    (Some(b), Some(e)) => (e.mq - b.mq, e.eq - b.eq),
                    _ => (own.mq, own.eq),
                };
                stats.mq = mq;
                stats.eq = eq;
                stats.wall = started.elapsed();
                return Ok((hyp.automaton, stats));
            }
            Some(z) => {
                stats.longest_counterexample = stats.longest_counterexample.max(z.len());
                handle_ce(&mut table, &hyp, &mut t, &z, config.ce_method)?;
                record(&table, &mut stats, TraceEvent::Counterexample(z), None);
            }
        }
    }
}
