//! Automata with side-effects, stored succinctly over their generator states.

pub mod bisim;
pub mod format;
pub mod minimal;

use crate::effects::{Effect, EffectValue, OutputAlgebra, Out};
use crate::error::{Error, Result};
use crate::word::{Alphabet, Symbol, Word};

pub type State = usize;

/// A state of the determinized automaton: a combination of succinct states.
pub type DetState = EffectValue<State>;

/// An automaton whose transitions land in `T(states)`.
///
/// Its determinization has state space `T(states)`; [`SuccinctAutomaton::step`]
/// and [`SuccinctAutomaton::output`] act on that space directly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuccinctAutomaton {
    effect: Effect,
    algebra: OutputAlgebra,
    alphabet: Alphabet,
    states: Vec<String>,
    init: DetState,
    delta: Vec<Vec<DetState>>,
    out: Vec<Out>,
}

impl SuccinctAutomaton {
    /// `delta[s][a]` is the successor combination of state `s` on symbol `a`.
    pub fn new(
        effect: Effect,
        algebra: OutputAlgebra,
        alphabet: Alphabet,
        states: Vec<String>,
        init: DetState,
        delta: Vec<Vec<DetState>>,
        out: Vec<Out>,
    ) -> Result<Self> {
        if !algebra.fits(&effect) {
            return Err(Error::Config(format!("output algebra {algebra:?} does not fit {}", effect.name())));
        }
        let n = states.len();
        for (i, s) in states.iter().enumerate() {
            if s.is_empty() || s.chars().any(|c| c.is_whitespace() || "{}[](),:".contains(c)) {
                return Err(Error::Invalid(format!("invalid state name `{s}`")));
            }
            if states[..i].contains(s) {
                return Err(Error::Invalid(format!("duplicate state `{s}`")));
            }
        }
        let check = |v: &DetState, what: &str| -> Result<()> {
            if !effect.owns(v) || !effect.is_canonical(v) {
                return Err(Error::Invalid(format!("{what} is not a canonical {} value", effect.name())));
            }
            if v.support().iter().any(|&&s| s >= n) {
                return Err(Error::Invalid(format!("{what} mentions an undeclared state")));
            }
            Ok(())
        };
        check(&init, "init")?;
        if delta.len() != n || out.len() != n {
            return Err(Error::Invalid("transition and output tables must cover every state".into()));
        }
        for (s, row) in delta.iter().enumerate() {
            if row.len() != alphabet.len() {
                return Err(Error::Invalid(format!("state `{}` lacks transitions", states[s])));
            }
            for v in row {
                check(v, "transition target")?;
            }
        }
        if let Some(o) = out.iter().find(|&&o| o >= algebra.carrier_size()) {
            return Err(Error::Invalid(format!("output {o} is outside the output carrier")));
        }
        Ok(SuccinctAutomaton { effect, algebra, alphabet, states, init, delta, out })
    }

    pub fn effect(&self) -> &Effect {
        &self.effect
    }

    pub fn algebra(&self) -> &OutputAlgebra {
        &self.algebra
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn state_names(&self) -> &[String] {
        &self.states
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn init(&self) -> &DetState {
        &self.init
    }

    pub fn delta(&self, s: State, a: Symbol) -> &DetState {
        &self.delta[s][a]
    }

    pub fn out(&self, s: State) -> Out {
        self.out[s]
    }

    /// One step of the determinization.
    pub fn step(&self, q: &DetState, a: Symbol) -> DetState {
        self.effect.extend(q, |&s| self.delta[s][a].clone())
    }

    /// Output of a determinized state.
    pub fn output(&self, q: &DetState) -> Out {
        self.algebra.apply(&self.effect.map(q, |&s| self.out[s]))
    }

    pub fn reach(&self, w: &Word) -> Result<DetState> {
        self.run_from(&self.init, w)
    }

    pub fn run_from(&self, q: &DetState, w: &Word) -> Result<DetState> {
        self.alphabet.check(w)?;
        Ok(w.symbols().iter().fold(q.clone(), |q, &a| self.step(&q, a)))
    }

    pub fn observe(&self, q: &DetState, w: &Word) -> Result<Out> {
        Ok(self.output(&self.run_from(q, w)?))
    }

    pub fn language(&self, w: &Word) -> Result<Out> {
        self.observe(&self.init, w)
    }

    /// Reinterprets an identity automaton under another effect by sending
    /// each transition to its unit.
    pub fn lift(&self, effect: &Effect, algebra: &OutputAlgebra) -> Result<Self> {
        if self.effect == *effect {
            return Ok(self.clone());
        }
        if self.effect != Effect::Identity {
            return Err(Error::Config(format!("cannot lift a {} automaton", self.effect.name())));
        }
        let lift = |v: &DetState| match v {
            EffectValue::Identity(s) => effect.unit(*s),
            _ => unreachable!("identity automata hold identity values"),
        };
        SuccinctAutomaton::new(
            effect.clone(),
            algebra.clone(),
            self.alphabet.clone(),
            self.states.clone(),
            lift(&self.init),
            self.delta.iter().map(|row| row.iter().map(lift).collect()).collect(),
            self.out.clone(),
        )
    }

    /// A copy with the given state names.
    pub fn renamed(&self, names: Vec<String>) -> Result<Self> {
        SuccinctAutomaton::new(
            self.effect.clone(),
            self.algebra.clone(),
            self.alphabet.clone(),
            names,
            self.init.clone(),
            self.delta.clone(),
            self.out.clone(),
        )
    }
}

fn same_structure(a: &OutputAlgebra, b: &OutputAlgebra) -> bool {
    match (a, b) {
        (OutputAlgebra::Free(_), OutputAlgebra::Free(_)) | (OutputAlgebra::Partial(_), OutputAlgebra::Partial(_)) => true,
        _ => a == b,
    }
}

/// Brings two automata to a common effect so they can be compared: an
/// identity automaton is lifted into the other's effect.
pub fn harmonize(a: &SuccinctAutomaton, b: &SuccinctAutomaton) -> Result<(SuccinctAutomaton, SuccinctAutomaton)> {
    if a.alphabet != b.alphabet {
        return Err(Error::AlphabetMismatch(a.alphabet.to_string(), b.alphabet.to_string()));
    }
    let (a, b) = if a.effect == b.effect {
        (a.clone(), b.clone())
    } else if a.effect == Effect::Identity {
        (a.lift(&b.effect, &b.algebra)?, b.clone())
    } else if b.effect == Effect::Identity {
        (a.clone(), b.lift(&a.effect, &a.algebra)?)
    } else {
        return Err(Error::Config(format!("cannot compare {} with {}", a.effect.name(), b.effect.name())));
    };
    if !same_structure(&a.algebra, &b.algebra) {
        return Err(Error::Config(format!("output algebras differ: {:?} vs {:?}", a.algebra, b.algebra)));
    }
    Ok((a, b))
}

#[cfg(test)]
pub(crate) mod examples {
    use super::*;

    /// The minimal DFA for {w ∈ a* : |w| ≠ 1}.
    pub fn dfa_ml() -> SuccinctAutomaton {
        let id = |s| EffectValue::Identity(s);
        SuccinctAutomaton::new(
            Effect::Identity,
            OutputAlgebra::Free(2),
            Alphabet::from_chars("a").unwrap(),
            vec!["m0".into(), "m1".into(), "m2".into()],
            id(0),
            vec![vec![id(1)], vec![id(2)], vec![id(2)]],
            vec![1, 0, 1],
        )
        .unwrap()
    }

    /// The two-state NFA for the same language.
    pub fn nfa_ml() -> SuccinctAutomaton {
        let set = |v: Vec<State>| EffectValue::Powerset(v);
        SuccinctAutomaton::new(
            Effect::Powerset,
            OutputAlgebra::Or,
            Alphabet::from_chars("a").unwrap(),
            vec!["q0".into(), "q1".into()],
            set(vec![0]),
            vec![vec![set(vec![1])], vec![set(vec![0, 1])]],
            vec![1, 0],
        )
        .unwrap()
    }
}
