//! Random instances and targets shared by the integration tests.
#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;

use lstar_t::automata::SuccinctAutomaton;
use lstar_t::bench::generate::alphabet;
use lstar_t::effects::{Effect, EffectValue, EnumCaps, FiniteMonoid, OutputAlgebra, Semiring};
use lstar_t::learner::CeMethod;
use lstar_t::table::ConsistencyMode;

/// An effect with the output algebra used for it, and the largest target
/// size that keeps brute-force checks cheap.
#[derive(Clone, Debug)]
pub struct Instance {
    pub name: &'static str,
    pub effect: Effect,
    pub algebra: OutputAlgebra,
    pub max_states: usize,
}

pub fn gf(p: u32) -> Semiring {
    Semiring::gf(p).unwrap()
}

pub fn instances() -> Vec<Instance> {
    let inst = |name, effect, algebra, max_states| Instance { name, effect, algebra, max_states };
    vec![
        inst("identity", Effect::Identity, OutputAlgebra::Free(2), 5),
        inst("powerset-or", Effect::Powerset, OutputAlgebra::Or, 5),
        inst("powerset-and", Effect::Powerset, OutputAlgebra::And, 5),
        inst("maybe", Effect::Maybe, OutputAlgebra::Partial(2), 5),
        inst("gf2", Effect::Semimodule(gf(2)), OutputAlgebra::Linear(gf(2)), 5),
        inst("gf5", Effect::Semimodule(gf(5)), OutputAlgebra::Linear(gf(5)), 5),
        inst("writer-z3", Effect::Writer(FiniteMonoid::cyclic(3).unwrap()), OutputAlgebra::Action(FiniteMonoid::cyclic(3).unwrap()), 5),
        inst("upset", Effect::Upset, OutputAlgebra::Dnf, 3),
    ]
}

pub const CE_METHODS: [CeMethod; 3] = [CeMethod::Angluin, CeMethod::MalerPnueli, CeMethod::RivestSchapire];

pub const CONSISTENCY_MODES: [ConsistencyMode; 4] =
    [ConsistencyMode::Full, ConsistencyMode::Transpose, ConsistencyMode::BolligRfsa, ConsistencyMode::None];

/// Transitions drawn uniformly from all of `T(states)`, outputs uniformly
/// from the carrier; the initial state is the unit at state 0.
pub fn random_target(inst: &Instance, n: usize, k: usize, rng: &mut impl Rng) -> SuccinctAutomaton {
    let states: Vec<usize> = (0..n).collect();
    let values = inst.effect.enumerate(&states, &EnumCaps::default()).unwrap();
    let carrier = inst.algebra.carrier_size();
    let delta = (0..n).map(|_| (0..k).map(|_| values.choose(rng).unwrap().clone()).collect()).collect();
    let out = (0..n).map(|_| rng.gen_range(0..carrier)).collect();
    SuccinctAutomaton::new(
        inst.effect.clone(),
        inst.algebra.clone(),
        alphabet(k).unwrap(),
        (0..n).map(|i| format!("q{i}")).collect(),
        inst.effect.unit(0),
        delta,
        out,
    )
    .unwrap()
}

/// Mean of a slice; NaN when empty.
pub fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

pub fn within(value: f64, reference: f64, tolerance: f64) -> bool {
    (value - reference).abs() <= tolerance * reference
}

/// A random value of `T(0..n)`, uniform over the enumeration.
pub fn random_value(effect: &Effect, n: usize, rng: &mut impl Rng) -> EffectValue<usize> {
    let states: Vec<usize> = (0..n).collect();
    effect.enumerate(&states, &EnumCaps::default()).unwrap().choose(rng).unwrap().clone()
}
