//! Sizes of minimal automata for a language, used as reference bounds.

use std::collections::{HashMap, HashSet, VecDeque};

use super::{DetState, SuccinctAutomaton};
use crate::effects::{minimize_dnf, Effect, EffectValue, EnumCaps, Out};
use crate::error::{Error, Result};

/// Moore partition refinement; returns the number of classes.
fn count_classes(outputs: &[Out], succ: &[Vec<usize>]) -> usize {
    let mut class: Vec<usize> = {
        let mut ids: HashMap<Out, usize> = HashMap::new();
        outputs.iter().map(|o| { let n = ids.len(); *ids.entry(*o).or_insert(n) }).collect()
    };
    let mut count = class.iter().max().map_or(0, |m| m + 1);
    loop {
        let mut ids: HashMap<Vec<usize>, usize> = HashMap::new();
        let next: Vec<usize> = (0..outputs.len())
            .map(|i| {
                let mut sig = Vec::with_capacity(succ[i].len() + 1);
                sig.push(class[i]);
                sig.extend(succ[i].iter().map(|&j| class[j]));
                let n = ids.len();
                *ids.entry(sig).or_insert(n)
            })
            .collect();
        if ids.len() == count {
            return count;
        }
        count = ids.len();
        class = next;
    }
}

/// Number of distinct languages among `states`, which must be closed under
/// transitions.
fn distinct_languages(aut: &SuccinctAutomaton, states: Vec<DetState>, limit: usize) -> Result<usize> {
    let mut index: HashMap<DetState, usize> = states.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
    let mut all = states;
    let mut succ: Vec<Vec<usize>> = Vec::new();
    let mut i = 0;
    while i < all.len() {
        let mut row = Vec::with_capacity(aut.alphabet().len());
        for a in aut.alphabet().symbols() {
            let t = aut.step(&all[i], a);
            let id = match index.get(&t) {
                Some(&id) => id,
                None => {
                    if all.len() >= limit {
                        return Err(Error::EnumerationCap {
                            what: "determinized states".into(),
                            requested: format!("more than {limit}"),
                            cap: limit.to_string(),
                        });
                    }
                    all.push(t.clone());
                    index.insert(t, all.len() - 1);
                    all.len() - 1
                }
            };
            row.push(id);
        }
        succ.push(row);
        i += 1;
    }
    let outputs: Vec<Out> = all.iter().map(|q| aut.output(q)).collect();
    Ok(count_classes(&outputs, &succ))
}

/// Size of the minimal Moore machine (for Boolean outputs: minimal DFA)
/// accepting the automaton's language.
pub fn minimal_moore_size(aut: &SuccinctAutomaton, limit: usize) -> Result<usize> {
    distinct_languages(aut, vec![aut.init().clone()], limit)
}

fn reachable(aut: &SuccinctAutomaton, limit: usize) -> Result<Vec<DetState>> {
    let mut seen: HashSet<DetState> = HashSet::new();
    let mut order = Vec::new();
    let mut queue = VecDeque::from([aut.init().clone()]);
    while let Some(q) = queue.pop_front() {
        if !seen.insert(q.clone()) {
            continue;
        }
        if order.len() >= limit {
            return Err(Error::EnumerationCap {
                what: "reachable states".into(),
                requested: format!("more than {limit}"),
                cap: limit.to_string(),
            });
        }
        for a in aut.alphabet().symbols() {
            queue.push_back(aut.step(&q, a));
        }
        order.push(q);
    }
    Ok(order)
}

/// Size of the minimal T-automaton for the language: the number of distinct
/// languages in the subalgebra generated by the reachable determinized
/// states.
pub fn minimal_t_size(aut: &SuccinctAutomaton, caps: &EnumCaps) -> Result<usize> {
    let limit = usize::try_from(caps.max_values).unwrap_or(usize::MAX);
    let reach = reachable(aut, limit)?;
    let effect = aut.effect();
    let over = |n: usize| -> Result<()> {
        if n > limit {
            Err(Error::EnumerationCap {
                what: format!("{} closure", effect.name()),
                requested: format!("more than {limit}"),
                cap: limit.to_string(),
            })
        } else {
            Ok(())
        }
    };
    let closure: Vec<DetState> = match effect {
        Effect::Identity => reach,
        Effect::Maybe => {
            let mut c = reach;
            if !c.contains(&EffectValue::Maybe(None)) {
                c.push(EffectValue::Maybe(None));
            }
            c
        }
        Effect::Writer(m) => {
            let mut set: HashSet<DetState> = HashSet::new();
            for q in &reach {
                if let EffectValue::Writer(e, x) = q {
                    for g in m.elements() {
                        set.insert(EffectValue::Writer(m.mul(g, *e), *x));
                    }
                }
            }
            set.into_iter().collect()
        }
        Effect::Powerset => {
            let mut set: HashSet<Vec<usize>> = HashSet::from([Vec::new()]);
            for q in &reach {
                let EffectValue::Powerset(xs) = q else { unreachable!() };
                let new: Vec<Vec<usize>> = set
                    .iter()
                    .map(|s| {
                        let mut u: Vec<usize> = s.iter().chain(xs).copied().collect();
                        u.sort();
                        u.dedup();
                        u
                    })
                    .collect();
                set.extend(new);
                over(set.len())?;
            }
            set.into_iter().map(EffectValue::Powerset).collect()
        }
        Effect::Semimodule(s) => {
            let mut set: HashSet<DetState> = HashSet::from([EffectValue::Semimodule(Vec::new())]);
            for q in &reach {
                let mut new = Vec::new();
                for base in &set {
                    for k in s.elements().skip(1) {
                        let combo = EffectValue::Semimodule(vec![(0usize, 1), (1usize, k)]);
                        let pair = [base.clone(), q.clone()];
                        new.push(effect.extend(&combo, |&i| pair[i].clone()));
                    }
                }
                set.extend(new);
                over(set.len())?;
            }
            set.into_iter().collect()
        }
        Effect::Upset => {
            let as_dnf = |q: &DetState| match q {
                EffectValue::Upset(cs) => cs.clone(),
                _ => unreachable!(),
            };
            let mut set: HashSet<Vec<Vec<usize>>> = HashSet::from([Vec::new(), vec![Vec::new()]]);
            set.extend(reach.iter().map(as_dnf));
            loop {
                let items: Vec<Vec<Vec<usize>>> = set.iter().cloned().collect();
                let before = set.len();
                for (i, a) in items.iter().enumerate() {
                    for b in &items[i + 1..] {
                        set.insert(minimize_dnf(a.iter().chain(b).cloned().collect()));
                        let mut conj = Vec::new();
                        for ca in a {
                            for cb in b {
                                conj.push(ca.iter().chain(cb).copied().collect());
                            }
                        }
                        set.insert(minimize_dnf(conj));
                        over(set.len())?;
                    }
                }
                if set.len() == before {
                    break;
                }
            }
            set.into_iter().map(EffectValue::Upset).collect()
        }
    };
    distinct_languages(aut, closure, limit)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::examples::{dfa_ml, nfa_ml};

    #[test]
    fn example_sizes() {
        assert_eq!(minimal_moore_size(&dfa_ml(), 100).unwrap(), 3);
        assert_eq!(minimal_moore_size(&nfa_ml(), 100).unwrap(), 3);
        // residuals L, L_a, L_aa plus the empty language, closed under union:
        // L_a ⊆ L_aa and L ∪ L_a = L_aa, so {∅, L_a, L, L_aa}
        assert_eq!(minimal_t_size(&nfa_ml(), &EnumCaps::default()).unwrap(), 4);
        assert_eq!(minimal_t_size(&dfa_ml(), &EnumCaps::default()).unwrap(), 3);
    }
}
