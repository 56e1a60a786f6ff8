mod common;

use std::collections::HashSet;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use lstar_t::effects::EnumCaps;
use lstar_t::oracle::{CountingTeacher, ExactTeacher, Teacher};
use lstar_t::table::decompose::closure;
use lstar_t::table::{ConsistencyMode, DecompositionStrategy, ObservationTable, Row};
use lstar_t::Word;

use common::*;

/// A filled table for a random target: prefix-closed `S`, `E` with up to
/// `max_e - 1` extra suffixes.
fn random_table(inst: &Instance, max_s: usize, max_e: usize, rng: &mut ChaCha8Rng) -> ObservationTable {
    let k = rng.gen_range(1..=2);
    let target = random_target(inst, rng.gen_range(1..=inst.max_states.min(4)), k, rng);
    let mut table = ObservationTable::new(inst.effect.clone(), inst.algebra.clone(), target.alphabet().clone(), EnumCaps::default());
    for _ in 1..rng.gen_range(1..=max_s) {
        let s = table.prefixes()[rng.gen_range(0..table.prefixes().len())].push(rng.gen_range(0..k));
        table.add_prefix(s);
    }
    for _ in 1..rng.gen_range(1..=max_e) {
        let e: Word = (0..rng.gen_range(1..=2)).map(|_| rng.gen_range(0..k)).collect::<Vec<_>>().into();
        table.add_suffix(e);
    }
    table.fill(&mut ExactTeacher::new(target));
    table
}

fn boolean_instances() -> Vec<Instance> {
    instances().into_iter().filter(|i| i.algebra.carrier_size() == 2).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    /// Closedness checked on `S × A` alone agrees with the definition over
    /// all of `T(S)`.
    #[test]
    fn closedness_on_single_rows_suffices(i in 0..boolean_instances().len(), seed in any::<u64>()) {
        let inst = &boolean_instances()[i];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let table = random_table(inst, 3, 2, &mut rng);
        let width = table.suffixes().len();
        let tops = table.top_rows(table.prefixes());
        let image: HashSet<Row> = closure(&inst.effect, &inst.algebra, &tops, width, 1 << 20).unwrap().into_iter().collect();
        let combos = inst.effect.enumerate(table.prefixes(), &EnumCaps::default()).unwrap();
        let full = combos.iter().all(|u| table.alphabet().symbols().all(|a| image.contains(&table.row_ext_bot(u, a))));
        let strategy = DecompositionStrategy::default_for(&inst.effect, &inst.algebra);
        prop_assert_eq!(table.closedness_defect(DecompositionStrategy::Enumerate).unwrap().is_none(), full);
        prop_assert_eq!(table.closedness_defect(strategy).unwrap().is_none(), full);
    }

    #[test]
    fn strategies_agree_with_enumeration(i in 0..instances().len(), seed in any::<u64>()) {
        let inst = &instances()[i];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let table = random_table(inst, 4, 3, &mut rng);
        let strategy = DecompositionStrategy::default_for(&inst.effect, &inst.algebra);
        let labels = table.prefixes().to_vec();
        for u in table.row_labels() {
            let r = table.row(&u);
            let fast = table.decompose(r, &labels, strategy).unwrap();
            let slow = table.decompose(r, &labels, DecompositionStrategy::Enumerate).unwrap();
            prop_assert_eq!(fast.is_some(), slow.is_some());
            for d in fast.iter().chain(slow.iter()) {
                prop_assert_eq!(&table.row_ext(d), r);
            }
        }
    }

    /// Repairing transpose defects leaves no defect for the full check.
    #[test]
    fn transpose_repairs_imply_consistency(i in 0..instances().len(), seed in any::<u64>()) {
        let inst = &instances()[i];
        prop_assume!(inst.effect.is_commutative() && inst.name != "upset");
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let k = rng.gen_range(1..=2);
        let target = random_target(inst, rng.gen_range(1..=inst.max_states.min(3)), k, &mut rng);
        let mut teacher = ExactTeacher::new(target.clone());
        let mut table = ObservationTable::new(inst.effect.clone(), inst.algebra.clone(), target.alphabet().clone(), EnumCaps::default());
        for _ in 0..rng.gen_range(0..3) {
            let s = table.prefixes()[rng.gen_range(0..table.prefixes().len())].push(rng.gen_range(0..k));
            table.add_prefix(s);
        }
        table.fill(&mut teacher);
        let strategy = DecompositionStrategy::default_for(&inst.effect, &inst.algebra);
        for _ in 0..64 {
            if let Some((s, a)) = table.closedness_defect(strategy).unwrap() {
                table.add_prefix(s.push(a));
            } else if let Some(e) = table.consistency_defect(ConsistencyMode::Transpose, strategy).unwrap() {
                table.add_suffix(e);
            } else {
                break;
            }
            table.fill(&mut teacher);
        }
        prop_assert!(table.closedness_defect(strategy).unwrap().is_none());
        prop_assert_eq!(table.consistency_defect(ConsistencyMode::Transpose, strategy).unwrap(), None);
        prop_assert_eq!(table.consistency_defect(ConsistencyMode::Full, strategy).unwrap(), None);
    }

    #[test]
    fn fill_asks_each_word_once(i in 0..instances().len(), seed in any::<u64>()) {
        let inst = &instances()[i];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let k = rng.gen_range(1..=2);
        let target = random_target(inst, 2, k, &mut rng);
        let mut teacher = CountingTeacher::new(ExactTeacher::new(target.clone()));
        let mut table = ObservationTable::new(inst.effect.clone(), inst.algebra.clone(), target.alphabet().clone(), EnumCaps::default());
        table.fill(&mut teacher);
        for _ in 0..rng.gen_range(0..6) {
            if rng.gen_bool(0.5) {
                let s = table.prefixes()[rng.gen_range(0..table.prefixes().len())].push(rng.gen_range(0..k));
                table.add_prefix(s);
            } else {
                let e = table.suffixes()[rng.gen_range(0..table.suffixes().len())].prepend(rng.gen_range(0..k));
                table.add_suffix(e);
            }
            table.fill(&mut teacher);
        }
        let words: HashSet<Word> =
            table.row_labels().iter().flat_map(|u| table.suffixes().iter().map(move |e| u.concat(e))).collect();
        prop_assert_eq!(teacher.counters().unwrap().mq as usize, words.len());
        prop_assert_eq!(table.queried(), words.len());
        for w in &words {
            prop_assert_eq!(table.cell(w), Some(target.language(w).unwrap()));
        }
    }
}
