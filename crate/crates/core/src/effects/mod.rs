//! Effects (finitary monads) and their canonical value representations.
//!
//! An [`Effect`] fixes how a state may branch: not at all, into a set, into a
//! weighted combination, and so on. [`EffectValue`] is the canonical finite
//! representation of one such branching over some label type `X`; two values
//! are equal as mathematical objects exactly when they are equal as Rust
//! values.

pub mod algebra;
pub mod monoid;
pub mod scalar;
pub mod text;

use std::collections::BTreeMap;

use crate::error::{Error, Result};

pub use algebra::OutputAlgebra;
pub use monoid::{FiniteMonoid, MonoidElem};
pub use scalar::{Scalar, Semiring};

/// Output values are indices into the output algebra's carrier.
pub type Out = u32;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Effect {
    Identity,
    Powerset,
    Semimodule(Semiring),
    Maybe,
    /// Monotone Boolean formulas in DNF, for alternating automata.
    Upset,
    Writer(FiniteMonoid),
}

/// A value of `T(X)` in canonical form.
///
/// Construct values through [`Effect`] methods or run them through
/// [`Effect::canonicalize`]; the variants are public so that callers can
/// pattern-match.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EffectValue<X> {
    Identity(X),
    /// Sorted, no duplicates.
    Powerset(Vec<X>),
    /// Sorted by key, no zero coefficients.
    Semimodule(Vec<(X, Scalar)>),
    Maybe(Option<X>),
    /// Antichain of sorted clauses, sorted; no clause contains another.
    Upset(Vec<Vec<X>>),
    Writer(MonoidElem, X),
}

/// Guards against enumeration blow-up in brute-force paths.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumCaps {
    pub powerset: usize,
    pub upset: usize,
    pub max_values: u128,
}

impl Default for EnumCaps {
    fn default() -> Self {
        EnumCaps { powerset: 12, upset: 8, max_values: 1 << 22 }
    }
}

// Number of antichains of subsets of an n-element set.
const DEDEKIND: [u128; 9] = [
    2,
    3,
    6,
    20,
    168,
    7581,
    7_828_354,
    2_414_682_040_998,
    56_130_437_228_687_557_907_788,
];

fn is_sorted_strict<T: Ord>(xs: &[T]) -> bool {
    xs.windows(2).all(|w| w[0] < w[1])
}

/// Both slices sorted.
fn is_subset<X: Ord>(small: &[X], big: &[X]) -> bool {
    let mut it = big.iter();
    'outer: for x in small {
        for y in it.by_ref() {
            match y.cmp(x) {
                std::cmp::Ordering::Less => continue,
                std::cmp::Ordering::Equal => continue 'outer,
                std::cmp::Ordering::Greater => return false,
            }
        }
        return false;
    }
    true
}

fn sorted_union<X: Ord + Clone>(a: &[X], b: &[X]) -> Vec<X> {
    let mut out: Vec<X> = a.iter().chain(b).cloned().collect();
    out.sort();
    out.dedup();
    out
}

/// Drops duplicate and dominated clauses, returns the antichain sorted.
pub(crate) fn minimize_dnf<X: Ord + Clone>(mut clauses: Vec<Vec<X>>) -> Vec<Vec<X>> {
    for c in clauses.iter_mut() {
        c.sort();
        c.dedup();
    }
    clauses.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    clauses.dedup();
    let mut kept: Vec<Vec<X>> = Vec::with_capacity(clauses.len());
    for c in clauses {
        if !kept.iter().any(|k| is_subset(k, &c)) {
            kept.push(c);
        }
    }
    kept.sort();
    kept
}

fn dnf_and<X: Ord + Clone>(a: &[Vec<X>], b: &[Vec<X>]) -> Vec<Vec<X>> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for ca in a {
        for cb in b {
            out.push(sorted_union(ca, cb));
        }
    }
    minimize_dnf(out)
}

impl<X> EffectValue<X> {
    /// The labels occurring in the value, in first-occurrence order of the
    /// canonical representation (sorted for every variant but `Upset`, whose
    /// support is sorted by [`EffectValue::support`]).
    fn occurrences(&self) -> Vec<&X> {
        match self {
            EffectValue::Identity(x) | EffectValue::Writer(_, x) => vec![x],
            EffectValue::Powerset(xs) => xs.iter().collect(),
            EffectValue::Semimodule(xs) => xs.iter().map(|(x, _)| x).collect(),
            EffectValue::Maybe(x) => x.iter().collect(),
            EffectValue::Upset(cs) => cs.iter().flatten().collect(),
        }
    }

    /// Exactly the labels a `map` over this value inspects, sorted.
    pub fn support(&self) -> Vec<&X>
    where
        X: Ord,
    {
        let mut s = self.occurrences();
        s.sort();
        s.dedup();
        s
    }
}

impl Effect {
    pub fn unit<X: Ord + Clone>(&self, x: X) -> EffectValue<X> {
        match self {
            Effect::Identity => EffectValue::Identity(x),
            Effect::Powerset => EffectValue::Powerset(vec![x]),
            Effect::Semimodule(_) => EffectValue::Semimodule(vec![(x, 1)]),
            Effect::Maybe => EffectValue::Maybe(Some(x)),
            Effect::Upset => EffectValue::Upset(vec![vec![x]]),
            Effect::Writer(m) => EffectValue::Writer(m.unit(), x),
        }
    }

    /// The empty combination, where the effect has one (the value every
    /// algebra sends to its bottom/zero/reject output).
    pub fn zero<X>(&self) -> Option<EffectValue<X>> {
        match self {
            Effect::Powerset => Some(EffectValue::Powerset(Vec::new())),
            Effect::Semimodule(_) => Some(EffectValue::Semimodule(Vec::new())),
            Effect::Maybe => Some(EffectValue::Maybe(None)),
            Effect::Upset => Some(EffectValue::Upset(Vec::new())),
            Effect::Identity | Effect::Writer(_) => None,
        }
    }

    /// True if `v` has the variant this effect produces.
    pub fn owns<X>(&self, v: &EffectValue<X>) -> bool {
        matches!(
            (self, v),
            (Effect::Identity, EffectValue::Identity(_))
                | (Effect::Powerset, EffectValue::Powerset(_))
                | (Effect::Semimodule(_), EffectValue::Semimodule(_))
                | (Effect::Maybe, EffectValue::Maybe(_))
                | (Effect::Upset, EffectValue::Upset(_))
                | (Effect::Writer(_), EffectValue::Writer(..))
        )
    }

    /// Kleisli extension: substitutes `f(x)` for every `x` in `v` and
    /// flattens.
    ///
    /// # Panics
    /// If `v` or a result of `f` belongs to another effect.
    pub fn extend<X, Y, F>(&self, v: &EffectValue<X>, mut f: F) -> EffectValue<Y>
    where
        Y: Ord + Clone,
        F: FnMut(&X) -> EffectValue<Y>,
    {
        match (self, v) {
            (Effect::Identity, EffectValue::Identity(x)) => f(x),
            (Effect::Powerset, EffectValue::Powerset(xs)) => {
                let mut out = Vec::new();
                for x in xs {
                    match f(x) {
                        EffectValue::Powerset(ys) => out.extend(ys),
                        other => mismatch(self, &other),
                    }
                }
                out.sort();
                out.dedup();
                EffectValue::Powerset(out)
            }
            (Effect::Semimodule(s), EffectValue::Semimodule(xs)) => {
                let mut acc: BTreeMap<Y, Scalar> = BTreeMap::new();
                for (x, c) in xs {
                    match f(x) {
                        EffectValue::Semimodule(ys) => {
                            for (y, d) in ys {
                                let e = acc.entry(y).or_insert(0);
                                *e = s.add(*e, s.mul(*c, d));
                            }
                        }
                        other => mismatch(self, &other),
                    }
                }
                EffectValue::Semimodule(acc.into_iter().filter(|(_, c)| *c != 0).collect())
            }
            (Effect::Maybe, EffectValue::Maybe(x)) => match x {
                None => EffectValue::Maybe(None),
                Some(x) => f(x),
            },
            (Effect::Upset, EffectValue::Upset(clauses)) => {
                let mut out = Vec::new();
                for clause in clauses {
                    let mut conj: Vec<Vec<Y>> = vec![Vec::new()];
                    for x in clause {
                        match f(x) {
                            EffectValue::Upset(d) => conj = dnf_and(&conj, &d),
                            other => mismatch(self, &other),
                        }
                        if conj.is_empty() {
                            break;
                        }
                    }
                    out.extend(conj);
                }
                EffectValue::Upset(minimize_dnf(out))
            }
            (Effect::Writer(mon), EffectValue::Writer(m, x)) => match f(x) {
                EffectValue::Writer(m2, y) => EffectValue::Writer(mon.mul(*m, m2), y),
                other => mismatch(self, &other),
            },
            _ => mismatch(self, v),
        }
    }

    /// Functor action: relabels by `g`, merging labels that collide.
    pub fn map<X, Y, G>(&self, v: &EffectValue<X>, mut g: G) -> EffectValue<Y>
    where
        Y: Ord + Clone,
        G: FnMut(&X) -> Y,
    {
        match (self, v) {
            (Effect::Identity, EffectValue::Identity(x)) => EffectValue::Identity(g(x)),
            (Effect::Powerset, EffectValue::Powerset(xs)) => {
                let mut out: Vec<Y> = xs.iter().map(g).collect();
                out.sort();
                out.dedup();
                EffectValue::Powerset(out)
            }
            (Effect::Semimodule(s), EffectValue::Semimodule(xs)) => {
                let mut acc: BTreeMap<Y, Scalar> = BTreeMap::new();
                for (x, c) in xs {
                    let e = acc.entry(g(x)).or_insert(0);
                    *e = s.add(*e, *c);
                }
                EffectValue::Semimodule(acc.into_iter().filter(|(_, c)| *c != 0).collect())
            }
            (Effect::Maybe, EffectValue::Maybe(x)) => EffectValue::Maybe(x.as_ref().map(g)),
            (Effect::Upset, EffectValue::Upset(cs)) => {
                let mapped = cs.iter().map(|c| c.iter().map(&mut g).collect()).collect();
                EffectValue::Upset(minimize_dnf(mapped))
            }
            (Effect::Writer(_), EffectValue::Writer(m, x)) => EffectValue::Writer(*m, g(x)),
            _ => mismatch(self, v),
        }
    }

    /// Multiplication of the monad: `extend(id)`.
    pub fn flatten<X: Ord + Clone>(&self, vv: &EffectValue<EffectValue<X>>) -> EffectValue<X> {
        self.extend(vv, |v| v.clone())
    }

    /// Brings an arbitrary representation into canonical form.
    pub fn canonicalize<X: Ord + Clone>(&self, v: EffectValue<X>) -> EffectValue<X> {
        match (self, v) {
            (Effect::Powerset, EffectValue::Powerset(mut xs)) => {
                xs.sort();
                xs.dedup();
                EffectValue::Powerset(xs)
            }
            (Effect::Semimodule(_), v @ EffectValue::Semimodule(_)) => self.map(&v, |x| x.clone()),
            (Effect::Upset, EffectValue::Upset(cs)) => EffectValue::Upset(minimize_dnf(cs)),
            (_, v) => {
                if !self.owns(&v) {
                    mismatch(self, &v)
                }
                v
            }
        }
    }

    pub fn is_canonical<X: Ord>(&self, v: &EffectValue<X>) -> bool {
        match (self, v) {
            (Effect::Identity, EffectValue::Identity(_)) | (Effect::Maybe, EffectValue::Maybe(_)) => true,
            (Effect::Powerset, EffectValue::Powerset(xs)) => is_sorted_strict(xs),
            (Effect::Semimodule(s), EffectValue::Semimodule(xs)) => {
                xs.windows(2).all(|w| w[0].0 < w[1].0) && xs.iter().all(|(_, c)| *c != 0 && *c < s.size())
            }
            (Effect::Upset, EffectValue::Upset(cs)) => {
                is_sorted_strict(cs)
                    && cs.iter().all(|c| is_sorted_strict(c))
                    && cs
                        .iter()
                        .enumerate()
                        .all(|(i, a)| cs.iter().enumerate().all(|(j, b)| i == j || !is_subset(a, b)))
            }
            (Effect::Writer(mon), EffectValue::Writer(m, _)) => *m < mon.size(),
            _ => false,
        }
    }

    /// `|T(X)|` for `|X| = n`, when it fits in a `u128`.
    pub fn cardinality(&self, n: usize) -> Option<u128> {
        let n32 = u32::try_from(n).ok()?;
        match self {
            Effect::Identity => Some(n as u128),
            Effect::Powerset => 2u128.checked_pow(n32),
            Effect::Semimodule(s) => (s.size() as u128).checked_pow(n32),
            Effect::Maybe => Some(n as u128 + 1),
            Effect::Upset => DEDEKIND.get(n).copied(),
            Effect::Writer(m) => (m.size() as u128).checked_mul(n as u128),
        }
    }

    /// Every canonical value over `domain`, each exactly once.
    ///
    /// `domain` must be free of duplicates.
    pub fn enumerate<X: Ord + Clone>(&self, domain: &[X], caps: &EnumCaps) -> Result<Vec<EffectValue<X>>> {
        let n = domain.len();
        let cap_err = |requested: String, cap: String| Error::EnumerationCap {
            what: format!("{} over {n} labels", self.name()),
            requested,
            cap,
        };
        match self {
            Effect::Powerset if n > caps.powerset => {
                return Err(cap_err(format!("a domain of {n}"), format!("{} labels", caps.powerset)))
            }
            Effect::Upset if n > caps.upset => {
                return Err(cap_err(format!("a domain of {n}"), format!("{} labels", caps.upset)))
            }
            _ => {}
        }
        match self.cardinality(n) {
            Some(c) if c <= caps.max_values => {}
            c => {
                let req = c.map_or_else(|| "more than 2^128".to_string(), |c| c.to_string());
                return Err(cap_err(req, caps.max_values.to_string()));
            }
        }
        let out = match self {
            Effect::Identity => domain.iter().cloned().map(EffectValue::Identity).collect(),
            Effect::Powerset => (0u64..1 << n)
                .map(|mask| {
                    let xs = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| domain[i].clone()).collect();
                    self.canonicalize(EffectValue::Powerset(xs))
                })
                .collect(),
            Effect::Semimodule(s) => {
                let size = s.size();
                let mut digits = vec![0u32; n];
                let mut out = Vec::new();
                loop {
                    let xs = digits
                        .iter()
                        .enumerate()
                        .filter(|(_, &c)| c != 0)
                        .map(|(i, &c)| (domain[i].clone(), c))
                        .collect();
                    out.push(self.canonicalize(EffectValue::Semimodule(xs)));
                    // odometer with the last label as the fastest digit
                    let mut i = n;
                    loop {
                        if i == 0 {
                            return Ok(out);
                        }
                        i -= 1;
                        digits[i] += 1;
                        if digits[i] < size {
                            break;
                        }
                        digits[i] = 0;
                    }
                }
            }
            Effect::Maybe => std::iter::once(EffectValue::Maybe(None))
                .chain(domain.iter().cloned().map(|x| EffectValue::Maybe(Some(x))))
                .collect(),
            Effect::Upset => {
                let mut subsets: Vec<Vec<X>> = (0u64..1 << n)
                    .map(|mask| {
                        let mut c: Vec<X> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| domain[i].clone()).collect();
                        c.sort();
                        c
                    })
                    .collect();
                subsets.sort();
                let mut out = Vec::new();
                let mut current = Vec::new();
                antichains(&subsets, 0, &mut current, &mut out);
                out
            }
            Effect::Writer(m) => m
                .elements()
                .flat_map(|e| domain.iter().cloned().map(move |x| EffectValue::Writer(e, x)))
                .collect(),
        };
        Ok(out)
    }

    /// Short name used in file headers and on the command line.
    pub fn name(&self) -> String {
        match self {
            Effect::Identity => "identity".into(),
            Effect::Powerset => "powerset".into(),
            Effect::Semimodule(s) => match s.prime_order() {
                Some(p) => format!("semimodule:{p}"),
                None => format!("semimodule:{}", s.name()),
            },
            Effect::Maybe => "maybe".into(),
            Effect::Upset => "upset".into(),
            Effect::Writer(m) => format!("writer:{}", m.spec()),
        }
    }

    /// True when the monad is commutative, which is what makes the
    /// transposed-table consistency repair sound.
    pub fn is_commutative(&self) -> bool {
        match self {
            Effect::Identity | Effect::Powerset | Effect::Maybe => true,
            Effect::Semimodule(s) => s.elements().all(|a| s.elements().all(|b| s.mul(a, b) == s.mul(b, a))),
            Effect::Writer(m) => m.is_commutative(),
            Effect::Upset => false,
        }
    }
}

fn antichains<X: Ord + Clone>(
    subsets: &[Vec<X>],
    start: usize,
    current: &mut Vec<usize>,
    out: &mut Vec<EffectValue<X>>,
) {
    out.push(EffectValue::Upset(current.iter().map(|&i| subsets[i].clone()).collect()));
    for i in start..subsets.len() {
        let c = &subsets[i];
        if current
            .iter()
            .all(|&j| !is_subset(&subsets[j], c) && !is_subset(c, &subsets[j]))
        {
            current.push(i);
            antichains(subsets, i + 1, current, out);
            current.pop();
        }
    }
}

#[cold]
fn mismatch<X>(effect: &Effect, _v: &EffectValue<X>) -> ! {
    panic!("effect value does not belong to the {} effect", effect.name())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf5() -> Effect {
        Effect::Semimodule(Semiring::gf(5).unwrap())
    }

    #[test]
    fn units() {
        assert_eq!(Effect::Powerset.unit(0), EffectValue::Powerset(vec![0]));
        assert_eq!(gf5().unit(0), EffectValue::Semimodule(vec![(0, 1)]));
        assert_eq!(Effect::Upset.unit(0), EffectValue::Upset(vec![vec![0]]));
    }

    #[test]
    fn extend_examples() {
        // a=0, b=1, x=10, y=11
        let f = |v: &u32| match v {
            0 => EffectValue::Powerset(vec![10]),
            _ => EffectValue::Powerset(vec![10, 11]),
        };
        assert_eq!(Effect::Powerset.extend(&EffectValue::Powerset(vec![0, 1]), f), EffectValue::Powerset(vec![10, 11]));

        let g = |_: &u32| EffectValue::Semimodule(vec![(10u32, 2)]);
        assert_eq!(gf5().extend(&EffectValue::Semimodule(vec![(0, 3)]), g), EffectValue::Semimodule(vec![(10, 1)]));

        let h = |v: &u32| match v {
            0 => EffectValue::Upset(vec![vec![10u32], vec![11]]),
            _ => EffectValue::Upset(vec![vec![10]]),
        };
        assert_eq!(Effect::Upset.extend(&EffectValue::Upset(vec![vec![0, 1]]), h), EffectValue::Upset(vec![vec![10]]));
    }

    #[test]
    fn map_examples() {
        assert_eq!(Effect::Powerset.map(&EffectValue::Powerset(vec![0, 1]), |_| 7), EffectValue::Powerset(vec![7]));
        let w = Effect::Writer(FiniteMonoid::cyclic(3).unwrap());
        assert_eq!(w.map(&EffectValue::Writer(2, 0), |_| 5), EffectValue::Writer(2, 5));
        // coefficients of merged labels add up and may cancel
        let v = EffectValue::Semimodule(vec![(0, 2), (1, 3)]);
        assert_eq!(gf5().map(&v, |_| 9), EffectValue::Semimodule(vec![]));
    }

    #[test]
    fn support_examples() {
        assert_eq!(EffectValue::Semimodule(vec![(0, 2), (2, 4)]).support(), vec![&0, &2]);
        assert!(EffectValue::<u32>::Maybe(None).support().is_empty());
        assert_eq!(EffectValue::Upset(vec![vec![2, 3], vec![1, 3]]).support(), vec![&1, &2, &3]);
    }

    #[test]
    fn enumerate_examples() {
        let caps = EnumCaps::default();
        assert_eq!(
            Effect::Powerset.enumerate(&['a'], &caps).unwrap(),
            vec![EffectValue::Powerset(vec![]), EffectValue::Powerset(vec!['a'])]
        );
        let gf2 = Effect::Semimodule(Semiring::gf(2).unwrap());
        assert_eq!(
            gf2.enumerate(&['a'], &caps).unwrap(),
            vec![EffectValue::Semimodule(vec![]), EffectValue::Semimodule(vec![('a', 1)])]
        );
        let mut ups = Effect::Upset.enumerate(&['a'], &caps).unwrap();
        ups.sort();
        assert_eq!(
            ups,
            vec![EffectValue::Upset(vec![]), EffectValue::Upset(vec![vec![]]), EffectValue::Upset(vec![vec!['a']])]
        );
    }

    #[test]
    fn enumerate_counts_match_cardinality() {
        let caps = EnumCaps::default();
        let effects = [
            Effect::Identity,
            Effect::Powerset,
            gf5(),
            Effect::Maybe,
            Effect::Upset,
            Effect::Writer(FiniteMonoid::cyclic(3).unwrap()),
        ];
        for e in &effects {
            for n in 0..=4usize {
                let dom: Vec<usize> = (0..n).collect();
                let vals = e.enumerate(&dom, &caps).unwrap();
                assert_eq!(vals.len() as u128, e.cardinality(n).unwrap(), "{} n={n}", e.name());
                let mut sorted = vals.clone();
                sorted.sort();
                sorted.dedup();
                assert_eq!(sorted.len(), vals.len());
                assert!(vals.iter().all(|v| e.is_canonical(v)));
            }
        }
    }

    #[test]
    fn enumeration_caps() {
        let caps = EnumCaps::default();
        let dom: Vec<usize> = (0..13).collect();
        assert!(matches!(Effect::Powerset.enumerate(&dom, &caps), Err(Error::EnumerationCap { .. })));
        assert!(matches!(Effect::Upset.enumerate(&dom[..9], &caps), Err(Error::EnumerationCap { .. })));
        // 7 labels are inside the domain cap but over the value cap
        assert!(matches!(Effect::Upset.enumerate(&dom[..7], &caps), Err(Error::EnumerationCap { .. })));
        assert_eq!(Effect::Upset.enumerate(&dom[..5], &caps).unwrap().len(), 7581);
    }
}
