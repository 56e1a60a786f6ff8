//! Counterexample processing.

use crate::effects::Out;
use crate::error::{Error, Result};
use crate::oracle::{extended_membership, Teacher};
use crate::table::ObservationTable;
use crate::word::Word;

use super::hypothesis::Hypothesis;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CeMethod {
    /// Add every prefix of the counterexample to `S`.
    Angluin,
    /// Add every suffix of the counterexample to `E`.
    MalerPnueli,
    /// Add one suffix, found by binary search, to `E`.
    RivestSchapire,
}

/// `R(u)(v)`: the language evaluated on the generator words the hypothesis
/// reaches on `u`, continued by `v`.
pub fn compute_r(hyp: &Hypothesis, teacher: &mut dyn Teacher, u: &Word, v: &Word) -> Result<Out> {
    let words = hyp.reach_words(u)?;
    let aut = &hyp.automaton;
    Ok(extended_membership(teacher, aut.effect(), aut.algebra(), &words, v))
}

/// Finds `i` with `R(z[..i])(z[i..]) = R(ε)(z) ≠ R(z[..i+1])(z[i+1..])` and
/// returns `z[i+1..]`. Requires the two ends of the search to differ.
pub fn rs_split(hyp: &Hypothesis, teacher: &mut dyn Teacher, z: &Word) -> Result<Word> {
    let g = |i: usize, t: &mut dyn Teacher| compute_r(hyp, t, &z.prefix(i), &z.suffix_from(i));
    let start = g(0, teacher)?;
    let (mut lo, mut hi) = (0, z.len());
    if g(hi, teacher)? == start {
        return Err(Error::NotACounterexample(format!(
            "no split point: the hypothesis and the table agree on {z:?}"
        )));
    }
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if g(mid, teacher)? == start {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(z.suffix_from(lo + 1))
}

/// Updates the table with `z` and refills it. Returns the words added to `S`
/// and to `E`.
pub fn handle_ce(
    table: &mut ObservationTable,
    hyp: &Hypothesis,
    teacher: &mut dyn Teacher,
    z: &Word,
    method: CeMethod,
) -> Result<(Vec<Word>, Vec<Word>)> {
    let expected = teacher.membership(z);
    if hyp.automaton.language(z)? == expected {
        return Err(Error::NotACounterexample(table.alphabet().show(z)));
    }
    let mut rows = Vec::new();
    let mut cols = Vec::new();
    match method {
        CeMethod::Angluin => {
            for p in z.prefixes() {
                if table.add_prefix(p.clone()) {
                    rows.push(p);
                }
            }
        }
        CeMethod::MalerPnueli => {
            for v in z.suffixes() {
                if table.add_suffix(v.clone()) {
                    cols.push(v);
                }
            }
        }
        CeMethod::RivestSchapire => {
            let v = if compute_r(hyp, teacher, &Word::epsilon(), z)? != expected { z.clone() } else { rs_split(hyp, teacher, z)? };
            if !table.add_suffix(v.clone()) {
                return Err(Error::Internal(format!("suffix {} is already a column", table.alphabet().show(&v))));
            }
            cols.push(v);
        }
    }
    table.fill(teacher);
    Ok((rows, cols))
}
