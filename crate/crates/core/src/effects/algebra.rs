//! Algebras on output sets: how a combination of outputs collapses to one.

use super::{Effect, EffectValue, FiniteMonoid, Out, Semiring};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum OutputAlgebra {
    /// Identity effect over outputs `0..n`.
    Free(u32),
    /// Powerset over {0,1}: accept if some branch accepts.
    Or,
    /// Powerset over {0,1}: accept if all branches accept.
    And,
    /// Semimodule over the scalars themselves.
    Linear(Semiring),
    /// Maybe over outputs `0..n`; an absent state outputs 0.
    Partial(u32),
    /// Upset over {0,1}: a DNF is true if some clause is all ones.
    Dnf,
    /// Writer over the monoid acting on itself.
    Action(FiniteMonoid),
}

impl OutputAlgebra {
    /// The algebra an effect uses unless told otherwise.
    pub fn default_for(effect: &Effect, outputs: u32) -> OutputAlgebra {
        match effect {
            Effect::Identity => OutputAlgebra::Free(outputs),
            Effect::Powerset => OutputAlgebra::Or,
            Effect::Semimodule(s) => OutputAlgebra::Linear(s.clone()),
            Effect::Maybe => OutputAlgebra::Partial(outputs),
            Effect::Upset => OutputAlgebra::Dnf,
            Effect::Writer(m) => OutputAlgebra::Action(m.clone()),
        }
    }

    pub fn carrier_size(&self) -> u32 {
        match self {
            OutputAlgebra::Free(n) | OutputAlgebra::Partial(n) => *n,
            OutputAlgebra::Or | OutputAlgebra::And | OutputAlgebra::Dnf => 2,
            OutputAlgebra::Linear(s) => s.size(),
            OutputAlgebra::Action(m) => m.size(),
        }
    }

    pub fn carrier(&self) -> std::ops::Range<Out> {
        0..self.carrier_size()
    }

    pub fn fits(&self, effect: &Effect) -> bool {
        match (effect, self) {
            (Effect::Identity, OutputAlgebra::Free(n)) | (Effect::Maybe, OutputAlgebra::Partial(n)) => *n >= 1,
            (Effect::Powerset, OutputAlgebra::Or | OutputAlgebra::And) => true,
            (Effect::Semimodule(s), OutputAlgebra::Linear(t)) => s == t,
            (Effect::Upset, OutputAlgebra::Dnf) => true,
            (Effect::Writer(m), OutputAlgebra::Action(n)) => m == n,
            _ => false,
        }
    }

    /// The structure map `T(O) → O`.
    ///
    /// # Panics
    /// If the value belongs to an effect this algebra does not fit.
    pub fn apply(&self, v: &EffectValue<Out>) -> Out {
        match (self, v) {
            (OutputAlgebra::Free(_), EffectValue::Identity(o)) => *o,
            (OutputAlgebra::Or, EffectValue::Powerset(os)) => os.iter().any(|&o| o == 1) as Out,
            (OutputAlgebra::And, EffectValue::Powerset(os)) => os.iter().all(|&o| o == 1) as Out,
            (OutputAlgebra::Linear(s), EffectValue::Semimodule(os)) => s.sum(os.iter().map(|&(o, c)| s.mul(c, o))),
            (OutputAlgebra::Partial(_), EffectValue::Maybe(o)) => o.unwrap_or(0),
            (OutputAlgebra::Dnf, EffectValue::Upset(cs)) => cs.iter().any(|c| c.iter().all(|&o| o == 1)) as Out,
            (OutputAlgebra::Action(m), EffectValue::Writer(e, o)) => m.mul(*e, *o),
            _ => panic!("output algebra {self:?} does not fit the value"),
        }
    }

    /// The free extension of `f` along this algebra: `v ↦ α(T f (v))`.
    pub fn extend_to_output<'a, X, F>(&'a self, effect: &'a Effect, f: F) -> impl Fn(&EffectValue<X>) -> Out + 'a
    where
        F: Fn(&X) -> Out + 'a,
    {
        move |v| self.apply(&effect.map(v, &f))
    }
}
