//! Writing a row as an effect combination of other rows.

use std::cell::OnceCell;
use std::collections::{HashMap, HashSet};

use crate::effects::{Effect, EffectValue, EnumCaps, OutputAlgebra, Out};
use crate::error::{Error, Result};
use crate::linalg;

pub type Row = Vec<Out>;

/// How to search for a decomposition. Each strategy other than `Enumerate`
/// is specific to one effect and algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DecompositionStrategy {
    /// Brute force over every combination; works for any effect.
    Enumerate,
    /// Powerset with `or`: join of all rows below the target.
    JslJoin,
    /// Powerset with `and`: meet of all rows above the target.
    MeetDual,
    /// Semimodule over a field: solve a linear system.
    GaussianField,
    /// Writer: try every monoid element on every row.
    WriterScan,
    /// Upset: one clause per column where the target is 1.
    DnfY,
    /// Maybe: the all-zero row, or one of the rows.
    MaybeScan,
}

impl DecompositionStrategy {
    pub fn default_for(effect: &Effect, algebra: &OutputAlgebra) -> Self {
        match (effect, algebra) {
            (Effect::Powerset, OutputAlgebra::Or) => DecompositionStrategy::JslJoin,
            (Effect::Powerset, OutputAlgebra::And) => DecompositionStrategy::MeetDual,
            (Effect::Semimodule(s), _) if s.is_field() => DecompositionStrategy::GaussianField,
            (Effect::Writer(_), _) => DecompositionStrategy::WriterScan,
            (Effect::Upset, _) => DecompositionStrategy::DnfY,
            (Effect::Maybe, _) => DecompositionStrategy::MaybeScan,
            _ => DecompositionStrategy::Enumerate,
        }
    }

    pub fn supports(&self, effect: &Effect, algebra: &OutputAlgebra) -> bool {
        use DecompositionStrategy::*;
        match self {
            Enumerate => true,
            JslJoin => matches!((effect, algebra), (Effect::Powerset, OutputAlgebra::Or)),
            MeetDual => matches!((effect, algebra), (Effect::Powerset, OutputAlgebra::And)),
            GaussianField => matches!(effect, Effect::Semimodule(s) if s.is_field()),
            WriterScan => matches!(effect, Effect::Writer(_)),
            DnfY => matches!(effect, Effect::Upset),
            MaybeScan => matches!(effect, Effect::Maybe),
        }
    }
}

/// Componentwise combination of `rows` by `u`: entry `e` is
/// `α(T(i ↦ rows[i][e])(u))`.
pub fn combine(effect: &Effect, algebra: &OutputAlgebra, rows: &[Row], width: usize, u: &EffectValue<usize>) -> Row {
    (0..width).map(|e| algebra.apply(&effect.map(u, |&i| rows[i][e]))).collect()
}

/// Every row `combine(gens, U)` for `U ∈ T(gens)`, without duplicates, in a
/// deterministic order.
///
/// Computed by closing under the effect's operations rather than by
/// enumerating `T(gens)`, so its cost follows the number of distinct rows.
pub fn closure(effect: &Effect, algebra: &OutputAlgebra, gens: &[Row], width: usize, cap: u128) -> Result<Vec<Row>> {
    let mut out: Vec<Row> = Vec::new();
    let mut seen: HashSet<Row> = HashSet::new();
    let limit = usize::try_from(cap).unwrap_or(usize::MAX);
    let mut push = |r: Row, out: &mut Vec<Row>| -> Result<()> {
        if seen.insert(r.clone()) {
            if out.len() >= limit {
                return Err(Error::EnumerationCap {
                    what: format!("extended rows of the {} effect", effect.name()),
                    requested: format!("more than {limit}"),
                    cap: limit.to_string(),
                });
            }
            out.push(r);
        }
        Ok(())
    };
    let pointwise = |x: &Row, y: &Row, f: &dyn Fn(Out, Out) -> Out| -> Row { x.iter().zip(y).map(|(&a, &b)| f(a, b)).collect() };
    match (effect, algebra) {
        (Effect::Identity, _) => {
            for g in gens {
                push(g.clone(), &mut out)?;
            }
        }
        (Effect::Maybe, _) => {
            push(vec![0; width], &mut out)?;
            for g in gens {
                push(g.clone(), &mut out)?;
            }
        }
        (Effect::Writer(m), _) => {
            for g in gens {
                for e in m.elements() {
                    push(g.iter().map(|&o| m.mul(e, o)).collect(), &mut out)?;
                }
            }
        }
        (Effect::Powerset, OutputAlgebra::Or | OutputAlgebra::And) => {
            let and = *algebra == OutputAlgebra::And;
            let op = |a: Out, b: Out| if and { a & b } else { a | b };
            push(vec![and as Out; width], &mut out)?;
            for g in gens {
                for i in 0..out.len() {
                    let r = pointwise(&out[i], g, &op);
                    push(r, &mut out)?;
                }
            }
        }
        (Effect::Semimodule(s), _) => {
            push(vec![0; width], &mut out)?;
            for g in gens {
                for i in 0..out.len() {
                    for k in s.elements().skip(1) {
                        let r = pointwise(&out[i], g, &|a, b| s.add(a, s.mul(k, b)));
                        push(r, &mut out)?;
                    }
                }
            }
        }
        (Effect::Upset, _) => {
            // In a distributive lattice, the sublattice generated by L ∪ {g}
            // is { x ∨ (y ∧ g) : x, y ∈ L } when L contains 0 and 1.
            push(vec![0; width], &mut out)?;
            push(vec![1; width], &mut out)?;
            for g in gens {
                let current = out.clone();
                for y in &current {
                    let yg = pointwise(y, g, &|a, b| a & b);
                    for x in &current {
                        push(pointwise(x, &yg, &|a, b| a | b), &mut out)?;
                    }
                }
            }
        }
        _ => return Err(Error::Config(format!("no closure for {algebra:?} over {}", effect.name()))),
    }
    Ok(out)
}

/// Decomposes target rows over a fixed list of label rows.
pub struct Decomposer {
    effect: Effect,
    algebra: OutputAlgebra,
    strategy: DecompositionStrategy,
    caps: EnumCaps,
    rows: Vec<Row>,
    table: OnceCell<std::result::Result<HashMap<Row, EffectValue<usize>>, Error>>,
}

impl Decomposer {
    pub fn new(
        effect: &Effect,
        algebra: &OutputAlgebra,
        strategy: DecompositionStrategy,
        caps: EnumCaps,
        rows: Vec<Row>,
    ) -> Result<Self> {
        if !strategy.supports(effect, algebra) {
            return Err(Error::Config(format!("{strategy:?} does not apply to the {} effect", effect.name())));
        }
        Ok(Decomposer { effect: effect.clone(), algebra: algebra.clone(), strategy, caps, rows, table: OnceCell::new() })
    }

    pub fn rows(&self) -> &[Row] {
        &self.rows
    }

    pub fn combine(&self, u: &EffectValue<usize>, width: usize) -> Row {
        combine(&self.effect, &self.algebra, &self.rows, width, u)
    }

    /// A combination of the label rows equal to `target`, if there is one.
    pub fn decompose(&self, target: &Row) -> Result<Option<EffectValue<usize>>> {
        let found = self.search(target)?;
        if let Some(u) = &found {
            if self.combine(u, target.len()) != *target {
                return Err(Error::Internal(format!("{:?} returned a wrong decomposition", self.strategy)));
            }
        }
        Ok(found)
    }

    fn search(&self, r: &Row) -> Result<Option<EffectValue<usize>>> {
        use DecompositionStrategy::*;
        let n = self.rows.len();
        let width = r.len();
        let check = |u: EffectValue<usize>| (self.combine(&u, width) == *r).then_some(u);
        Ok(match self.strategy {
            Enumerate => {
                let table = self.table.get_or_init(|| {
                    let idx: Vec<usize> = (0..n).collect();
                    let mut map = HashMap::new();
                    for u in self.effect.enumerate(&idx, &self.caps)? {
                        map.entry(self.combine(&u, width)).or_insert(u);
                    }
                    Ok(map)
                });
                match table {
                    Ok(map) => map.get(r).cloned(),
                    Err(e) => return Err(e.clone()),
                }
            }
            JslJoin => {
                let below = (0..n).filter(|&i| self.rows[i].iter().zip(r).all(|(x, y)| x <= y)).collect();
                check(EffectValue::Powerset(below))
            }
            MeetDual => {
                let above = (0..n).filter(|&i| self.rows[i].iter().zip(r).all(|(x, y)| x >= y)).collect();
                check(EffectValue::Powerset(above))
            }
            GaussianField => {
                let Effect::Semimodule(field) = &self.effect else { unreachable!() };
                linalg::solve(field, &self.rows, r).map(|c| {
                    EffectValue::Semimodule(c.into_iter().enumerate().filter(|&(_, k)| k != 0).collect())
                })
            }
            WriterScan => {
                let Effect::Writer(m) = &self.effect else { unreachable!() };
                (0..n).find_map(|i| {
                    m.elements()
                        .find(|&g| self.rows[i].iter().zip(r).all(|(&o, &t)| m.mul(g, o) == t))
                        .map(|g| EffectValue::Writer(g, i))
                })
            }
            DnfY => {
                let clauses = (0..width)
                    .filter(|&e| r[e] == 1)
                    .map(|e| (0..n).filter(|&i| self.rows[i][e] == 1).collect())
                    .collect();
                check(EffectValue::Upset(crate::effects::minimize_dnf(clauses)))
            }
            MaybeScan => {
                if r.iter().all(|&o| o == 0) {
                    Some(EffectValue::Maybe(None))
                } else {
                    (0..n).find(|&i| self.rows[i] == *r).map(|i| EffectValue::Maybe(Some(i)))
                }
            }
        })
    }
}
