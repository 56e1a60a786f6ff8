//! Language equivalence by bisimulation up to context.

use std::cell::RefCell;
use std::collections::{HashMap, HashSet, VecDeque};

use super::{DetState, SuccinctAutomaton};
use crate::effects::{Effect, EffectValue, EnumCaps, Scalar, Semiring};
use crate::error::{Error, Result};
use crate::linalg;
use crate::word::Word;

pub type StatePair = (DetState, DetState);

/// Decides whether a pair is already implied by a relation, so that
/// bisimulation need not explore it.
///
/// Implementations must be sound: answer true only when the candidate is a
/// combination of related pairs.
pub trait ContextChecker {
    fn discharges(&self, relation: &[StatePair], candidate: &StatePair) -> bool;
}

/// Never discharges: plain bisimulation.
#[derive(Clone, Copy, Debug, Default)]
pub struct NoContext;

impl ContextChecker for NoContext {
    fn discharges(&self, _: &[StatePair], _: &StatePair) -> bool {
        false
    }
}

/// Discharges pairs that are effect combinations of related pairs, using the
/// fastest available procedure for the effect.
#[derive(Clone, Debug)]
pub struct CongruenceContext {
    effect: Effect,
    caps: EnumCaps,
    linear: RefCell<LinearCache>,
}

/// For fields: the span of the relation seen so far, so that each query only
/// absorbs the pairs added since the previous one.
#[derive(Clone, Debug, Default)]
struct LinearCache {
    first: Option<StatePair>,
    consumed: usize,
    coords: HashMap<(bool, usize), usize>,
    span: Option<linalg::Span>,
}

impl LinearCache {
    fn vector(&mut self, (x, y): &StatePair) -> Vec<Scalar> {
        let mut v = Vec::new();
        for (side, val) in [(false, x), (true, y)] {
            let EffectValue::Semimodule(xs) = val else { panic!("expected a semimodule value") };
            for &(s, c) in xs {
                let n = self.coords.len();
                let i = *self.coords.entry((side, s)).or_insert(n);
                if v.len() <= i {
                    v.resize(i + 1, 0);
                }
                v[i] = c;
            }
        }
        v
    }
}

impl CongruenceContext {
    pub fn new(effect: Effect) -> Self {
        Self::with_caps(effect, EnumCaps { max_values: 1 << 14, ..EnumCaps::default() })
    }

    pub fn with_caps(effect: Effect, caps: EnumCaps) -> Self {
        CongruenceContext { effect, caps, linear: RefCell::default() }
    }

    fn linear_discharges(&self, field: &Semiring, relation: &[StatePair], candidate: &StatePair) -> bool {
        let mut cache = self.linear.borrow_mut();
        // A relation that is not an extension of the cached one starts over.
        if relation.len() < cache.consumed || relation.first() != cache.first.as_ref() {
            *cache = LinearCache { first: relation.first().cloned(), ..LinearCache::default() };
        }
        if cache.span.is_none() {
            cache.span = Some(linalg::Span::new(field.clone()));
        }
        for pair in &relation[cache.consumed..] {
            let v = cache.vector(pair);
            cache.span.as_mut().unwrap().insert(v);
        }
        cache.consumed = relation.len();
        let v = cache.vector(candidate);
        cache.span.as_ref().unwrap().contains(&v)
    }
}

impl ContextChecker for CongruenceContext {
    fn discharges(&self, relation: &[StatePair], candidate: &StatePair) -> bool {
        match &self.effect {
            Effect::Semimodule(f) if f.is_field() => self.linear_discharges(f, relation, candidate),
            // Giving up is always sound: the pair just gets explored.
            _ => context_check(&self.effect, relation, candidate, &self.caps).unwrap_or(false),
        }
    }
}

/// Generic check: is there `W ∈ T(relation)` whose two projections give the
/// candidate?
pub fn context_check_default(
    effect: &Effect,
    relation: &[StatePair],
    candidate: &StatePair,
    caps: &EnumCaps,
) -> Result<bool> {
    let idx: Vec<usize> = (0..relation.len()).collect();
    for w in effect.enumerate(&idx, caps)? {
        if effect.extend(&w, |&i| relation[i].0.clone()) == candidate.0
            && effect.extend(&w, |&i| relation[i].1.clone()) == candidate.1
        {
            return Ok(true);
        }
    }
    Ok(false)
}

/// [`context_check_default`] with fast paths for identity, powerset and
/// field-weighted effects.
pub fn context_check(effect: &Effect, relation: &[StatePair], candidate: &StatePair, caps: &EnumCaps) -> Result<bool> {
    match effect {
        Effect::Identity => Ok(relation.contains(candidate)),
        Effect::Powerset => Ok(powerset_check(relation, candidate)),
        Effect::Semimodule(f) if f.is_field() => Ok(linear_check(f, relation, candidate)),
        Effect::Maybe if candidate.0 == EffectValue::Maybe(None) && candidate.1 == EffectValue::Maybe(None) => Ok(true),
        Effect::Maybe => Ok(relation.contains(candidate)),
        _ => context_check_default(effect, relation, candidate, caps),
    }
}

fn as_set(v: &DetState) -> &[usize] {
    match v {
        EffectValue::Powerset(xs) => xs,
        _ => panic!("expected a powerset value"),
    }
}

fn subset(a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|x| b.binary_search(x).is_ok())
}

fn powerset_check(relation: &[StatePair], (p, q): &StatePair) -> bool {
    let (p, q) = (as_set(p), as_set(q));
    let mut up: HashSet<usize> = HashSet::new();
    let mut uq: HashSet<usize> = HashSet::new();
    for (x, y) in relation {
        let (x, y) = (as_set(x), as_set(y));
        if subset(x, p) && subset(y, q) {
            up.extend(x);
            uq.extend(y);
        }
    }
    up.len() == p.len() && uq.len() == q.len()
}

fn linear_check(field: &crate::effects::Semiring, relation: &[StatePair], candidate: &StatePair) -> bool {
    let coords = |v: &DetState| -> Vec<(usize, Scalar)> {
        match v {
            EffectValue::Semimodule(xs) => xs.clone(),
            _ => panic!("expected a semimodule value"),
        }
    };
    // Dimensions: every state mentioned on either side.
    let mut dims: HashMap<(bool, usize), usize> = HashMap::new();
    let all = relation.iter().chain(std::iter::once(candidate));
    for (x, y) in all {
        for (s, _) in coords(x) {
            let n = dims.len();
            dims.entry((false, s)).or_insert(n);
        }
        for (s, _) in coords(y) {
            let n = dims.len();
            dims.entry((true, s)).or_insert(n);
        }
    }
    let vector = |(x, y): &StatePair| {
        let mut v = vec![0; dims.len()];
        for (s, c) in coords(x) {
            v[dims[&(false, s)]] = c;
        }
        for (s, c) in coords(y) {
            v[dims[&(true, s)]] = c;
        }
        v
    };
    let gens: Vec<Vec<Scalar>> = relation.iter().map(vector).collect();
    linalg::solve(field, &gens, &vector(candidate)).is_some()
}

/// Breadth-first bisimulation up to `ctx`. Returns a shortest word on which
/// the two automata disagree among the pairs explored, or `None` when they
/// accept the same language.
///
/// Both automata must share effect, algebra and alphabet; see
/// [`super::harmonize`].
pub fn bisim_up_to(ctx: &dyn ContextChecker, a: &SuccinctAutomaton, b: &SuccinctAutomaton) -> Result<Option<Word>> {
    if a.alphabet() != b.alphabet() {
        return Err(Error::AlphabetMismatch(a.alphabet().to_string(), b.alphabet().to_string()));
    }
    if a.effect() != b.effect() {
        return Err(Error::Config(format!("cannot compare {} with {}", a.effect().name(), b.effect().name())));
    }
    let mut relation: Vec<StatePair> = Vec::new();
    let mut seen: HashSet<StatePair> = HashSet::new();
    let mut queue: VecDeque<(StatePair, Word)> = VecDeque::new();
    queue.push_back(((a.init().clone(), b.init().clone()), Word::epsilon()));
    while let Some((pair, w)) = queue.pop_front() {
        if seen.contains(&pair) || ctx.discharges(&relation, &pair) {
            continue;
        }
        if a.output(&pair.0) != b.output(&pair.1) {
            return Ok(Some(w));
        }
        for sym in a.alphabet().symbols() {
            let next = (a.step(&pair.0, sym), b.step(&pair.1, sym));
            if !seen.contains(&next) {
                queue.push_back((next, w.push(sym)));
            }
        }
        seen.insert(pair.clone());
        relation.push(pair);
    }
    Ok(None)
}
