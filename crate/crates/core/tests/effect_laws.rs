mod common;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use lstar_t::effects::{Effect, EffectValue, FiniteMonoid, OutputAlgebra, Out, Semiring};

use common::*;

fn law_instances() -> Vec<(Effect, OutputAlgebra)> {
    let mut out: Vec<_> = instances().into_iter().map(|i| (i.effect, i.algebra)).collect();
    out.push((Effect::Identity, OutputAlgebra::Free(3)));
    out.push((Effect::Maybe, OutputAlgebra::Partial(3)));
    out.push((Effect::Semimodule(gf(3)), OutputAlgebra::Linear(gf(3))));
    let idem = FiniteMonoid::parse("m:0:0,1,2/1,1,2/2,2,2").unwrap();
    out.push((Effect::Writer(idem.clone()), OutputAlgebra::Action(idem)));
    out
}

/// A value in no particular normal form: duplicates, zero weights,
/// unsorted and dominated clauses.
fn raw_value(effect: &Effect, n: usize, rng: &mut ChaCha8Rng) -> EffectValue<usize> {
    let len = rng.gen_range(0..6);
    match effect {
        Effect::Identity => EffectValue::Identity(rng.gen_range(0..n)),
        Effect::Powerset => EffectValue::Powerset((0..len).map(|_| rng.gen_range(0..n)).collect()),
        Effect::Semimodule(s) => {
            EffectValue::Semimodule((0..len).map(|_| (rng.gen_range(0..n), rng.gen_range(0..s.size()))).collect())
        }
        Effect::Maybe => EffectValue::Maybe(rng.gen_bool(0.7).then(|| rng.gen_range(0..n))),
        Effect::Upset => EffectValue::Upset(
            (0..len).map(|_| (0..rng.gen_range(0..4)).map(|_| rng.gen_range(0..n)).collect()).collect(),
        ),
        Effect::Writer(m) => EffectValue::Writer(rng.gen_range(0..m.size()), rng.gen_range(0..n)),
    }
}

fn pick(effect: &Effect, n: usize, rng: &mut ChaCha8Rng) -> EffectValue<usize> {
    effect.canonicalize(raw_value(effect, n, rng))
}

fn instance_and_rng() -> impl Strategy<Value = (usize, u64)> {
    (0..law_instances().len(), any::<u64>())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn left_unit((i, seed) in instance_and_rng()) {
        let (effect, _) = &law_instances()[i];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f: Vec<_> = (0..3).map(|_| pick(effect, 3, &mut rng)).collect();
        let x = rng.gen_range(0..3);
        prop_assert_eq!(effect.extend(&effect.unit(x), |&y| f[y].clone()), f[x].clone());
    }

    #[test]
    fn right_unit((i, seed) in instance_and_rng()) {
        let (effect, _) = &law_instances()[i];
        let v = pick(effect, 4, &mut ChaCha8Rng::seed_from_u64(seed));
        prop_assert_eq!(effect.extend(&v, |&y| effect.unit(y)), v);
    }

    #[test]
    fn associativity((i, seed) in instance_and_rng()) {
        let (effect, _) = &law_instances()[i];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let v = pick(effect, 3, &mut rng);
        let f: Vec<_> = (0..3).map(|_| pick(effect, 3, &mut rng)).collect();
        let g: Vec<_> = (0..3).map(|_| pick(effect, 3, &mut rng)).collect();
        let left = effect.extend(&effect.extend(&v, |&y| f[y].clone()), |&y| g[y].clone());
        let right = effect.extend(&v, |&y| effect.extend(&f[y], |&z| g[z].clone()));
        prop_assert_eq!(left, right);
    }

    #[test]
    fn canonicalization_is_idempotent((i, seed) in instance_and_rng()) {
        let (effect, _) = &law_instances()[i];
        let raw = raw_value(effect, 4, &mut ChaCha8Rng::seed_from_u64(seed));
        let once = effect.canonicalize(raw);
        prop_assert!(effect.is_canonical(&once));
        prop_assert_eq!(effect.canonicalize(once.clone()), once);
    }

    #[test]
    fn support_is_minimal((i, seed) in instance_and_rng()) {
        let (effect, _) = &law_instances()[i];
        let v = pick(effect, 4, &mut ChaCha8Rng::seed_from_u64(seed));
        for &x in v.support() {
            // renaming x to a fresh label must be visible
            let probe = effect.map(&v, |&y| if y == x { 4 } else { y });
            prop_assert_ne!(&probe, &v, "{} is not needed", x);
        }
    }

    #[test]
    fn algebra_respects_flattening((i, seed) in instance_and_rng()) {
        let (effect, algebra) = &law_instances()[i];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let carrier = algebra.carrier_size() as usize;
        let inner: Vec<EffectValue<Out>> =
            (0..3).map(|_| effect.map(&pick(effect, carrier, &mut rng), |&o| o as Out)).collect();
        let vv = effect.map(&pick(effect, 3, &mut rng), |&j| inner[j].clone());
        prop_assert_eq!(algebra.apply(&effect.flatten(&vv)), algebra.apply(&effect.map(&vv, |v| algebra.apply(v))));
    }
}

#[test]
fn algebra_unit_law() {
    for (effect, algebra) in law_instances() {
        for o in algebra.carrier() {
            assert_eq!(algebra.apply(&effect.unit(o)), o, "{}", effect.name());
        }
    }
}

#[test]
fn semiring_axioms() {
    for s in [Semiring::boolean(), gf(2), gf(3), gf(5), gf(7)] {
        let xs: Vec<u32> = s.elements().collect();
        for &a in &xs {
            assert_eq!(s.add(a, 0), a);
            assert_eq!(s.mul(a, 1), a);
            assert_eq!(s.mul(a, 0), 0);
            if s.is_field() && a != 0 {
                assert_eq!(s.mul(a, s.inv(a).unwrap()), 1);
            }
            for &b in &xs {
                assert_eq!(s.add(a, b), s.add(b, a));
                for &c in &xs {
                    assert_eq!(s.add(s.add(a, b), c), s.add(a, s.add(b, c)));
                    assert_eq!(s.mul(s.mul(a, b), c), s.mul(a, s.mul(b, c)));
                    assert_eq!(s.mul(a, s.add(b, c)), s.add(s.mul(a, b), s.mul(a, c)));
                    assert_eq!(s.mul(s.add(a, b), c), s.add(s.mul(a, c), s.mul(b, c)));
                }
            }
        }
    }
}

#[test]
fn monoid_axioms() {
    let monoids = [
        FiniteMonoid::cyclic(1).unwrap(),
        FiniteMonoid::cyclic(3).unwrap(),
        FiniteMonoid::cyclic(4).unwrap(),
        FiniteMonoid::parse("m:0:0,1,2/1,1,2/2,2,2").unwrap(),
    ];
    for m in monoids {
        for a in m.elements() {
            assert_eq!(m.mul(m.unit(), a), a);
            assert_eq!(m.mul(a, m.unit()), a);
            for b in m.elements() {
                for c in m.elements() {
                    assert_eq!(m.mul(m.mul(a, b), c), m.mul(a, m.mul(b, c)));
                }
            }
        }
    }
}
