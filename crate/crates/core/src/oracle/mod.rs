//! Teachers answering membership and equivalence queries.

use std::collections::HashMap;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::automata::bisim::{bisim_up_to, CongruenceContext, ContextChecker};
use crate::automata::{harmonize, SuccinctAutomaton};
use crate::effects::{Effect, EffectValue, OutputAlgebra, Out};
use crate::error::{Error, Result};
use crate::word::{Alphabet, Word};

/// Membership and equivalence oracle for one target language.
pub trait Teacher {
    fn alphabet(&self) -> &Alphabet;

    fn membership(&mut self, word: &Word) -> Out;

    /// `None` when the hypothesis is accepted, otherwise a counterexample.
    fn equivalence(&mut self, hypothesis: &SuccinctAutomaton) -> Result<Option<Word>>;

    /// Query counts, when some layer of the teacher keeps them.
    fn counters(&self) -> Option<QueryCounters> {
        None
    }
}

impl<T: Teacher + ?Sized> Teacher for &mut T {
    fn alphabet(&self) -> &Alphabet {
        (**self).alphabet()
    }
    fn membership(&mut self, word: &Word) -> Out {
        (**self).membership(word)
    }
    fn equivalence(&mut self, hypothesis: &SuccinctAutomaton) -> Result<Option<Word>> {
        (**self).equivalence(hypothesis)
    }
    fn counters(&self) -> Option<QueryCounters> {
        (**self).counters()
    }
}

impl<T: Teacher + ?Sized> Teacher for Box<T> {
    fn alphabet(&self) -> &Alphabet {
        (**self).alphabet()
    }
    fn membership(&mut self, word: &Word) -> Out {
        (**self).membership(word)
    }
    fn equivalence(&mut self, hypothesis: &SuccinctAutomaton) -> Result<Option<Word>> {
        (**self).equivalence(hypothesis)
    }
    fn counters(&self) -> Option<QueryCounters> {
        (**self).counters()
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct QueryCounters {
    pub mq: u64,
    pub eq: u64,
}

/// Knows the target automaton; decides equivalence by bisimulation up to
/// context.
pub struct ExactTeacher {
    target: SuccinctAutomaton,
    ctx: Option<Box<dyn ContextChecker + Send>>,
}

impl ExactTeacher {
    /// Uses [`CongruenceContext`] for whichever effect the comparison runs in.
    pub fn new(target: SuccinctAutomaton) -> Self {
        ExactTeacher { target, ctx: None }
    }

    pub fn with_context(target: SuccinctAutomaton, ctx: Box<dyn ContextChecker + Send>) -> Self {
        ExactTeacher { target, ctx: Some(ctx) }
    }

    pub fn target(&self) -> &SuccinctAutomaton {
        &self.target
    }
}

impl Teacher for ExactTeacher {
    fn alphabet(&self) -> &Alphabet {
        self.target.alphabet()
    }

    fn membership(&mut self, word: &Word) -> Out {
        self.target.language(word).expect("membership query outside the alphabet")
    }

    fn equivalence(&mut self, hypothesis: &SuccinctAutomaton) -> Result<Option<Word>> {
        let (h, t) = harmonize(hypothesis, &self.target)?;
        let found = match &self.ctx {
            Some(ctx) => bisim_up_to(ctx.as_ref(), &h, &t)?,
            None => bisim_up_to(&CongruenceContext::new(h.effect().clone()), &h, &t)?,
        };
        if let Some(z) = &found {
            if h.language(z)? == t.language(z)? {
                return Err(Error::Internal(format!("bisimulation returned a non-counterexample {z:?}")));
            }
        }
        Ok(found)
    }
}

/// Random test words: geometric length, uniform symbols.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WordSampler {
    p_stop: f64,
}

impl Default for WordSampler {
    fn default() -> Self {
        WordSampler { p_stop: 0.2 }
    }
}

impl WordSampler {
    pub fn new(p_stop: f64) -> Result<Self> {
        if !(p_stop > 0.0 && p_stop <= 1.0) {
            return Err(Error::Config(format!("stop probability {p_stop} outside (0,1]")));
        }
        Ok(WordSampler { p_stop })
    }

    pub fn p_stop(&self) -> f64 {
        self.p_stop
    }

    pub fn sample(&self, alphabet_size: usize, rng: &mut impl Rng) -> Word {
        let mut w = Vec::new();
        while !rng.gen_bool(self.p_stop) {
            w.push(rng.gen_range(0..alphabet_size));
        }
        Word::from(w)
    }
}

/// Tests each hypothesis on a fixed number of random words.
pub struct RandomTeacher<F> {
    alphabet: Alphabet,
    num_tests: usize,
    sampler: WordSampler,
    rng: ChaCha8Rng,
    oracle: F,
}

impl<F: FnMut(&Word) -> Out> RandomTeacher<F> {
    pub fn new(alphabet: Alphabet, num_tests: usize, sampler: WordSampler, rng: ChaCha8Rng, oracle: F) -> Self {
        RandomTeacher { alphabet, num_tests, sampler, rng, oracle }
    }
}

impl<F: FnMut(&Word) -> Out> Teacher for RandomTeacher<F> {
    fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    fn membership(&mut self, word: &Word) -> Out {
        (self.oracle)(word)
    }

    fn equivalence(&mut self, hypothesis: &SuccinctAutomaton) -> Result<Option<Word>> {
        for _ in 0..self.num_tests {
            let w = self.sampler.sample(self.alphabet.len(), &mut self.rng);
            if hypothesis.language(&w)? != (self.oracle)(&w) {
                return Ok(Some(w));
            }
        }
        Ok(None)
    }
}

/// Samples drawn at the `i`-th equivalence query (1-based) so that an accepted
/// hypothesis is ε-close to the target with probability at least 1 − δ.
pub fn pac_sample_count(epsilon: f64, delta: f64, i: u64) -> u64 {
    ((1.0 / epsilon) * ((1.0 / delta).ln() + i as f64 * std::f64::consts::LN_2)).ceil() as u64
}

/// Probably approximately correct teacher: the number of samples grows with
/// the number of equivalence queries asked.
pub struct PacTeacher<F> {
    alphabet: Alphabet,
    epsilon: f64,
    delta: f64,
    sampler: WordSampler,
    rng: ChaCha8Rng,
    oracle: F,
    queries: u64,
    last_samples: u64,
}

impl<F: FnMut(&Word) -> Out> PacTeacher<F> {
    pub fn new(
        alphabet: Alphabet,
        epsilon: f64,
        delta: f64,
        sampler: WordSampler,
        rng: ChaCha8Rng,
        oracle: F,
    ) -> Result<Self> {
        if !(epsilon > 0.0 && epsilon < 1.0 && delta > 0.0 && delta < 1.0) {
            return Err(Error::Config(format!("PAC parameters ε={epsilon}, δ={delta} must lie in (0,1)")));
        }
        Ok(PacTeacher { alphabet, epsilon, delta, sampler, rng, oracle, queries: 0, last_samples: 0 })
    }

    /// Words drawn during the most recent equivalence query.
    pub fn last_samples(&self) -> u64 {
        self.last_samples
    }
}

impl<F: FnMut(&Word) -> Out> Teacher for PacTeacher<F> {
    fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    fn membership(&mut self, word: &Word) -> Out {
        (self.oracle)(word)
    }

    fn equivalence(&mut self, hypothesis: &SuccinctAutomaton) -> Result<Option<Word>> {
        self.queries += 1;
        let r = pac_sample_count(self.epsilon, self.delta, self.queries);
        self.last_samples = 0;
        for _ in 0..r {
            let w = self.sampler.sample(self.alphabet.len(), &mut self.rng);
            self.last_samples += 1;
            if hypothesis.language(&w)? != (self.oracle)(&w) {
                return Ok(Some(w));
            }
        }
        Ok(None)
    }
}

/// Memoizes membership answers.
pub struct CacheTeacher<T> {
    inner: T,
    cache: HashMap<Word, Out>,
}

impl<T: Teacher> CacheTeacher<T> {
    pub fn new(inner: T) -> Self {
        CacheTeacher { inner, cache: HashMap::new() }
    }

    pub fn inner(&self) -> &T {
        &self.inner
    }

    pub fn into_inner(self) -> T {
        self.inner
    }
}

impl<T: Teacher> Teacher for CacheTeacher<T> {
    fn alphabet(&self) -> &Alphabet {
        self.inner.alphabet()
    }

    fn membership(&mut self, word: &Word) -> Out {
        if let Some(&o) = self.cache.get(word) {
            return o;
        }
        let o = self.inner.membership(word);
        self.cache.insert(word.clone(), o);
        o
    }

    fn equivalence(&mut self, hypothesis: &SuccinctAutomaton) -> Result<Option<Word>> {
        self.inner.equivalence(hypothesis)
    }

    fn counters(&self) -> Option<QueryCounters> {
        self.inner.counters()
    }
}

/// Counts the queries that reach it. Put it inside a [`CacheTeacher`] to
/// count distinct membership queries only.
pub struct CountingTeacher<T> {
    inner: T,
    counters: QueryCounters,
}

impl<T: Teacher> CountingTeacher<T> {
    pub fn new(inner: T) -> Self {
        CountingTeacher { inner, counters: QueryCounters::default() }
    }

    pub fn inner(&self) -> &T {
        &self.inner
    }
}

impl<T: Teacher> Teacher for CountingTeacher<T> {
    fn alphabet(&self) -> &Alphabet {
        self.inner.alphabet()
    }

    fn membership(&mut self, word: &Word) -> Out {
        self.counters.mq += 1;
        self.inner.membership(word)
    }

    fn equivalence(&mut self, hypothesis: &SuccinctAutomaton) -> Result<Option<Word>> {
        self.counters.eq += 1;
        self.inner.equivalence(hypothesis)
    }

    fn counters(&self) -> Option<QueryCounters> {
        Some(self.counters)
    }
}

/// The standard stack for experiments: counts distinct membership queries.
pub fn counted<T: Teacher>(teacher: T) -> CacheTeacher<CountingTeacher<T>> {
    CacheTeacher::new(CountingTeacher::new(teacher))
}

/// Evaluates a combination of words followed by `suffix`, querying only the
/// words in its support.
pub fn extended_membership(
    teacher: &mut dyn Teacher,
    effect: &Effect,
    algebra: &OutputAlgebra,
    v: &EffectValue<Word>,
    suffix: &Word,
) -> Out {
    let answers: HashMap<&Word, Out> = v.support().into_iter().map(|w| (w, teacher.membership(&w.concat(suffix)))).collect();
    algebra.apply(&effect.map(v, |w| answers[w]))
}
