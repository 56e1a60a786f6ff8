//! Random targets.

use rand::seq::index::sample;
use rand::Rng;

use crate::automata::{DetState, SuccinctAutomaton};
use crate::effects::{Effect, EffectValue, OutputAlgebra, Out, Semiring};
use crate::error::{Error, Result};
use crate::word::Alphabet;

/// `a, b, c, ...` up to 26 symbols, `s0, s1, ...` beyond.
pub fn alphabet(k: usize) -> Result<Alphabet> {
    if k == 0 {
        return Err(Error::Config("the alphabet must not be empty".into()));
    }
    if k <= 26 {
        Alphabet::from_chars(&('a'..='z').take(k).collect::<String>())
    } else {
        Alphabet::new((0..k).map(|i| format!("s{i}")))
    }
}

fn names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("q{i}")).collect()
}

/// Uniform outputs and successors; state 0 is initial.
pub fn gen_moore(n: usize, k: usize, outputs: u32, rng: &mut impl Rng) -> Result<SuccinctAutomaton> {
    if n == 0 || outputs == 0 {
        return Err(Error::Config("need at least one state and one output".into()));
    }
    let mut out = Vec::with_capacity(n);
    let mut delta = Vec::with_capacity(n);
    for _ in 0..n {
        out.push(rng.gen_range(0..outputs));
        delta.push((0..k).map(|_| EffectValue::Identity(rng.gen_range(0..n))).collect());
    }
    SuccinctAutomaton::new(
        Effect::Identity,
        OutputAlgebra::Free(outputs),
        alphabet(k)?,
        names(n),
        EffectValue::Identity(0),
        delta,
        out,
    )
}

/// `round(density·n)` transitions per symbol, drawn without replacement from
/// all `n²` pairs, and `⌊n/2⌋` accepting states. Halves round up.
pub fn gen_tabakov_vardi_nfa(n: usize, k: usize, density: f64, rng: &mut impl Rng) -> Result<SuccinctAutomaton> {
    if n == 0 {
        return Err(Error::Config("need at least one state".into()));
    }
    let per_symbol = (density * n as f64 + 0.5).floor();
    if !(density >= 0.0) || per_symbol > (n * n) as f64 {
        return Err(Error::Config(format!("density {density} is out of range for {n} states")));
    }
    let per_symbol = per_symbol as usize;
    let mut succ = vec![vec![Vec::new(); k]; n];
    for a in 0..k {
        for pair in sample(rng, n * n, per_symbol) {
            succ[pair / n][a].push(pair % n);
        }
    }
    let mut out = vec![0; n];
    for s in sample(rng, n, n / 2) {
        out[s] = 1;
    }
    let delta: Vec<Vec<DetState>> = succ
        .into_iter()
        .map(|row| row.into_iter().map(|mut t| { t.sort_unstable(); EffectValue::Powerset(t) }).collect())
        .collect();
    SuccinctAutomaton::new(
        Effect::Powerset,
        OutputAlgebra::Or,
        alphabet(k)?,
        names(n),
        EffectValue::Powerset(vec![0]),
        delta,
        out,
    )
}

/// A weight for every state, symbol and state, uniform over the semiring,
/// zeros dropped. Outputs are uniform; the initial vector is state 0.
pub fn gen_wfa(n: usize, k: usize, field: &Semiring, rng: &mut impl Rng) -> Result<SuccinctAutomaton> {
    if n == 0 {
        return Err(Error::Config("need at least one state".into()));
    }
    let size = field.size();
    let mut out: Vec<Out> = Vec::with_capacity(n);
    let mut delta = Vec::with_capacity(n);
    for _ in 0..n {
        out.push(rng.gen_range(0..size));
        let row = (0..k)
            .map(|_| {
                let weights = (0..n).map(|t| (t, rng.gen_range(0..size))).filter(|&(_, w)| w != 0).collect();
                EffectValue::Semimodule(weights)
            })
            .collect();
        delta.push(row);
    }
    let effect = Effect::Semimodule(field.clone());
    SuccinctAutomaton::new(
        effect.clone(),
        OutputAlgebra::Linear(field.clone()),
        alphabet(k)?,
        names(n),
        effect.unit(0),
        delta,
        out,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::minimal::minimal_moore_size;
    use crate::word::Word;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn rng(seed: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(seed)
    }

    #[test]
    fn moore_shapes() {
        let one = gen_moore(1, 3, 2, &mut rng(0)).unwrap();
        for a in 0..3 {
            assert_eq!(one.delta(0, a), &EffectValue::Identity(0));
        }
        assert_eq!(gen_moore(7, 3, 5, &mut rng(9)).unwrap(), gen_moore(7, 3, 5, &mut rng(9)).unwrap());
        // random machines are mostly minimal already
        let mean: f64 = (0..100)
            .map(|s| minimal_moore_size(&gen_moore(20, 3, 2, &mut rng(s)).unwrap(), 1000).unwrap() as f64)
            .sum::<f64>()
            / 100.0;
        assert!(mean > 16.0 && mean <= 20.0, "{mean}");
    }

    #[test]
    fn nfa_shapes() {
        let nfa = gen_tabakov_vardi_nfa(4, 3, 1.25, &mut rng(1)).unwrap();
        for a in 0..3 {
            let count: usize = (0..4)
                .map(|s| match nfa.delta(s, a) {
                    EffectValue::Powerset(t) => t.len(),
                    _ => unreachable!(),
                })
                .sum();
            assert_eq!(count, 5);
        }
        assert_eq!((0..4).filter(|&s| nfa.out(s) == 1).count(), 2);
        let empty = gen_tabakov_vardi_nfa(5, 2, 0.0, &mut rng(2)).unwrap();
        let long = Word::from(vec![0, 1, 0]);
        assert_eq!(empty.language(&long).unwrap(), 0);
        assert_eq!(empty.language(&Word::epsilon()).unwrap(), empty.out(0));
        assert!(gen_tabakov_vardi_nfa(2, 2, 2.5, &mut rng(0)).is_err());
        assert!(gen_tabakov_vardi_nfa(2, 2, -1.0, &mut rng(0)).is_err());
        // 1.25 · 2 = 2.5 rounds up
        let two = gen_tabakov_vardi_nfa(2, 1, 1.25, &mut rng(3)).unwrap();
        let count: usize = (0..2).map(|s| two.delta(s, 0).support().len()).sum();
        assert_eq!(count, 3);
    }

    #[test]
    fn wfa_shapes() {
        let f = Semiring::gf(5).unwrap();
        let one = gen_wfa(1, 1, &f, &mut rng(4)).unwrap();
        let loop_weight = match one.delta(0, 0) {
            EffectValue::Semimodule(v) => v.first().map_or(0, |&(_, w)| w),
            _ => unreachable!(),
        };
        for len in 0..5 {
            let expect = (0..len).fold(one.out(0), |acc, _| f.mul(acc, loop_weight));
            assert_eq!(one.language(&Word::from(vec![0; len])).unwrap(), expect);
        }
        let (mut zeros, mut total) = (0usize, 0usize);
        for s in 0..100 {
            let w = gen_wfa(3, 3, &f, &mut rng(s)).unwrap();
            for q in 0..3 {
                for a in 0..3 {
                    zeros += 3 - w.delta(q, a).support().len();
                    total += 3;
                }
            }
        }
        let frac = zeros as f64 / total as f64;
        assert!((frac - 0.2).abs() < 0.03, "{frac}");
    }
}
