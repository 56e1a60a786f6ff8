//! Observation tables.

pub mod consistency;
pub mod decompose;

use std::collections::HashSet;

use rustc_hash::{FxHashMap, FxHashSet};

use crate::effects::{Effect, EffectValue, EnumCaps, OutputAlgebra, Out};
use crate::error::Result;
use crate::oracle::Teacher;
use crate::word::{Alphabet, Symbol, Word};

pub use consistency::ConsistencyMode;
pub use decompose::{combine, DecompositionStrategy, Decomposer, Row};

/// Rows indexed by prefixes `S ∪ S·A`, columns by suffixes `E`, cells filled
/// by membership queries.
#[derive(Clone, Debug)]
pub struct ObservationTable {
    effect: Effect,
    algebra: OutputAlgebra,
    alphabet: Alphabet,
    caps: EnumCaps,
    prefixes: Vec<Word>,
    suffixes: Vec<Word>,
    suffix_set: FxHashSet<Word>,
    cells: FxHashMap<Word, Out>,
    // every label of S ∪ S·A, in order of appearance
    labels: Vec<Word>,
    index: FxHashMap<Word, usize>,
    rows: Vec<Row>,
    in_top: Vec<bool>,
    // label index of s·a, per prefix position
    succ: Vec<Vec<usize>>,
}

impl ObservationTable {
    /// The table with `S = E = {ε}`, not yet filled.
    pub fn new(effect: Effect, algebra: OutputAlgebra, alphabet: Alphabet, caps: EnumCaps) -> Self {
        let eps = Word::epsilon();
        let mut t = ObservationTable {
            effect,
            algebra,
            alphabet,
            caps,
            prefixes: Vec::new(),
            suffixes: vec![eps.clone()],
            suffix_set: FxHashSet::from_iter([eps.clone()]),
            cells: FxHashMap::default(),
            labels: Vec::new(),
            index: FxHashMap::default(),
            rows: Vec::new(),
            in_top: Vec::new(),
            succ: Vec::new(),
        };
        t.add_prefix(eps);
        t
    }

    fn label(&mut self, w: Word) -> usize {
        if let Some(&i) = self.index.get(&w) {
            return i;
        }
        let i = self.labels.len();
        self.index.insert(w.clone(), i);
        self.labels.push(w);
        self.rows.push(Row::new());
        self.in_top.push(false);
        i
    }

    fn filled(&self, i: usize) -> &Row {
        let r = &self.rows[i];
        assert_eq!(r.len(), self.suffixes.len(), "table not filled");
        r
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

    pub fn caps(&self) -> &EnumCaps {
        &self.caps
    }

    /// `S`, in insertion order.
    pub fn prefixes(&self) -> &[Word] {
        &self.prefixes
    }

    /// `E`, in insertion order; `E[0] = ε`.
    pub fn suffixes(&self) -> &[Word] {
        &self.suffixes
    }

    pub fn has_prefix(&self, w: &Word) -> bool {
        self.index.get(w).is_some_and(|&i| self.in_top[i])
    }

    pub fn has_suffix(&self, w: &Word) -> bool {
        self.suffix_set.contains(w)
    }

    /// Returns false if `w` was already in `S`.
    pub fn add_prefix(&mut self, w: Word) -> bool {
        let i = self.label(w.clone());
        if self.in_top[i] {
            return false;
        }
        self.in_top[i] = true;
        let succ = self.alphabet.symbols().map(|a| self.label(w.push(a))).collect();
        self.succ.push(succ);
        self.prefixes.push(w);
        true
    }

    /// Returns false if `w` was already in `E`.
    pub fn add_suffix(&mut self, w: Word) -> bool {
        if self.suffix_set.insert(w.clone()) {
            self.suffixes.push(w);
            true
        } else {
            false
        }
    }

    /// `S ∪ S·A`, top part first.
    pub fn row_labels(&self) -> Vec<Word> {
        let mut out = self.prefixes.clone();
        out.extend(self.labels.iter().zip(&self.in_top).filter(|(_, &t)| !t).map(|(w, _)| w.clone()));
        out
    }

    /// Queries every missing cell; returns the number of queries issued.
    pub fn fill(&mut self, teacher: &mut dyn Teacher) -> usize {
        let mut asked = 0;
        let width = self.suffixes.len();
        for (u, row) in self.labels.iter().zip(self.rows.iter_mut()) {
            for e in &self.suffixes[row.len()..] {
                let ue = u.concat(e);
                let o = match self.cells.get(&ue) {
                    Some(&o) => o,
                    None => {
                        asked += 1;
                        let o = teacher.membership(&ue);
                        self.cells.insert(ue, o);
                        o
                    }
                };
                row.push(o);
            }
            debug_assert_eq!(row.len(), width);
        }
        asked
    }

    /// Membership value of a queried word.
    pub fn cell(&self, w: &Word) -> Option<Out> {
        self.cells.get(w).copied()
    }

    /// Distinct words queried so far.
    pub fn queried(&self) -> usize {
        self.cells.len()
    }

    /// Row of a word in `S ∪ S·A`.
    ///
    /// # Panics
    /// If the table has not been filled since `u` became a row label.
    pub fn row(&self, u: &Word) -> &Row {
        self.filled(self.index[u])
    }

    pub fn row_top(&self, s: &Word) -> &Row {
        debug_assert!(self.has_prefix(s));
        self.row(s)
    }

    pub fn row_bot(&self, s: &Word, a: Symbol) -> &Row {
        self.row(&s.push(a))
    }

    pub fn top_rows(&self, labels: &[Word]) -> Vec<Row> {
        labels.iter().map(|s| self.row(s).clone()).collect()
    }

    /// Combination of top rows: `row_t♯(U)`.
    pub fn row_ext(&self, u: &EffectValue<Word>) -> Row {
        (0..self.suffixes.len())
            .map(|e| self.algebra.apply(&self.effect.map(u, |s| self.row(s)[e])))
            .collect()
    }

    /// Combination of bottom rows: `row_b♯(U)(a)`.
    pub fn row_ext_bot(&self, u: &EffectValue<Word>, a: Symbol) -> Row {
        (0..self.suffixes.len())
            .map(|e| self.algebra.apply(&self.effect.map(u, |s| self.row(&s.push(a))[e])))
            .collect()
    }

    pub fn decomposer(&self, labels: &[Word], strategy: DecompositionStrategy) -> Result<Decomposer> {
        Decomposer::new(&self.effect, &self.algebra, strategy, self.caps, self.top_rows(labels))
    }

    /// Writes `r` as a combination of the rows of `labels`.
    pub fn decompose(
        &self,
        r: &Row,
        labels: &[Word],
        strategy: DecompositionStrategy,
    ) -> Result<Option<EffectValue<Word>>> {
        let d = self.decomposer(labels, strategy)?;
        Ok(d.decompose(r)?.map(|u| self.effect.map(&u, |&i| labels[i].clone())))
    }

    /// First `(s, a)` in `S × A` whose bottom row is not a combination of top
    /// rows. By restricting to single bottom rows this decides closedness of
    /// the whole extended table.
    pub fn closedness_defect(&self, strategy: DecompositionStrategy) -> Result<Option<(Word, Symbol)>> {
        let d = self.decomposer(&self.prefixes, strategy)?;
        let mut good: FxHashSet<&Row> = FxHashSet::default();
        for (s, succ) in self.prefixes.iter().zip(&self.succ) {
            for (a, &i) in self.alphabet.symbols().zip(succ) {
                if self.in_top[i] {
                    continue;
                }
                let r = self.filled(i);
                if good.contains(r) {
                    continue;
                }
                if d.decompose(r)?.is_none() {
                    return Ok(Some((s.clone(), a)));
                }
                good.insert(r);
            }
        }
        Ok(None)
    }

    /// Number of distinct rows among the top rows.
    pub fn distinct_top_rows(&self) -> usize {
        self.prefixes.iter().map(|s| self.row(s)).collect::<HashSet<_>>().len()
    }

    /// Number of distinct rows of the extended table `row_t♯(T(S))`.
    pub fn distinct_extended_rows(&self) -> Result<usize> {
        let rows = self.top_rows(&self.prefixes);
        Ok(decompose::closure(&self.effect, &self.algebra, &rows, self.suffixes.len(), self.caps.max_values)?.len())
    }

    /// Aligned text rendering: top rows, a rule, then rows of `S·A ∖ S`;
    /// each part sorted by length then symbols.
    pub fn dump(&self) -> String {
        let show = |w: &Word| self.alphabet.show(w);
        let mut top = self.prefixes.clone();
        top.sort_by(|a, b| a.shortlex_cmp(b));
        let mut bottom: Vec<Word> = self.row_labels().into_iter().filter(|w| !self.has_prefix(w)).collect();
        bottom.sort_by(|a, b| a.shortlex_cmp(b));
        let cell = |u: &Word, e: &Word| match self.cells.get(&u.concat(e)) {
            Some(o) => o.to_string(),
            None => "?".into(),
        };
        let width = |s: &str| s.chars().count();
        let label_w = top.iter().chain(&bottom).map(|w| width(&show(w))).max().unwrap_or(0);
        let col_w: Vec<usize> = self
            .suffixes
            .iter()
            .map(|e| {
                top.iter()
                    .chain(&bottom)
                    .map(|u| width(&cell(u, e)))
                    .chain(std::iter::once(width(&show(e))))
                    .max()
                    .unwrap_or(1)
            })
            .collect();
        let pad = |s: String, w: usize| {
            let n = width(&s);
            s + &" ".repeat(w.saturating_sub(n))
        };
        let line = |label: String, cells: Vec<String>| {
            let mut l = pad(label, label_w);
            for (c, w) in cells.into_iter().zip(&col_w) {
                l.push_str(" | ");
                l.push_str(&pad(c, *w));
            }
            l.trim_end().to_string() + "\n"
        };
        let rule = {
            let mut l = "-".repeat(label_w);
            for w in &col_w {
                l.push_str("-+-");
                l.push_str(&"-".repeat(*w));
            }
            l + "\n"
        };
        let mut out = line(String::new(), self.suffixes.iter().map(show).collect());
        out.push_str(&rule);
        for u in &top {
            out.push_str(&line(show(u), self.suffixes.iter().map(|e| cell(u, e)).collect()));
        }
        out.push_str(&rule);
        for u in &bottom {
            out.push_str(&line(show(u), self.suffixes.iter().map(|e| cell(u, e)).collect()));
        }
        out
    }
}
