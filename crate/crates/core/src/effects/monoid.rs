//! Finite monoids for the writer effect.

use std::sync::Arc;

use crate::error::{Error, Result};

pub type MonoidElem = u32;

#[derive(Debug, PartialEq, Eq, Hash)]
struct Table {
    name: String,
    size: u32,
    unit: MonoidElem,
    mul: Vec<MonoidElem>,
}

/// A finite monoid on `0..size` given by its multiplication table.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteMonoid(Arc<Table>);

impl FiniteMonoid {
    /// Integers modulo `n` under addition.
    pub fn cyclic(n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::Invalid("cyclic monoid needs n ≥ 1".into()));
        }
        let mul = (0..n * n).map(|i| (i / n + i % n) % n).collect();
        FiniteMonoid::from_table(format!("z{n}"), n, 0, mul)
    }

    pub fn from_table(name: impl Into<String>, size: u32, unit: MonoidElem, mul: Vec<MonoidElem>) -> Result<Self> {
        let n = size as usize;
        if size == 0 || mul.len() != n * n || unit >= size || mul.iter().any(|&x| x >= size) {
            return Err(Error::Invalid("monoid table must be size×size over 0..size".into()));
        }
        let m = |a: u32, b: u32| mul[(a * size + b) as usize];
        for a in 0..size {
            if m(unit, a) != a || m(a, unit) != a {
                return Err(Error::Invalid(format!("{unit} is not a unit")));
            }
            for b in 0..size {
                for c in 0..size {
                    if m(m(a, b), c) != m(a, m(b, c)) {
                        return Err(Error::Invalid("monoid multiplication is not associative".into()));
                    }
                }
            }
        }
        Ok(FiniteMonoid(Arc::new(Table { name: name.into(), size, unit, mul })))
    }

    /// Parses `zN` or `m:<unit>:<row>/<row>/...` with comma-separated rows.
    pub fn parse(spec: &str) -> Result<Self> {
        let spec = spec.trim();
        if let Some(n) = spec.strip_prefix('z') {
            let n = n.parse().map_err(|_| Error::Invalid(format!("bad monoid `{spec}`")))?;
            return FiniteMonoid::cyclic(n);
        }
        let body = spec
            .strip_prefix("m:")
            .ok_or_else(|| Error::Invalid(format!("bad monoid `{spec}`")))?;
        let (unit, rows) = body
            .split_once(':')
            .ok_or_else(|| Error::Invalid(format!("bad monoid `{spec}`")))?;
        let unit = unit.parse().map_err(|_| Error::Invalid(format!("bad monoid unit `{unit}`")))?;
        let rows: Vec<Vec<u32>> = rows
            .split('/')
            .map(|r| r.split(',').map(|x| x.trim().parse::<u32>()).collect())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| Error::Invalid(format!("bad monoid table `{rows}`")))?;
        let size = rows.len() as u32;
        if rows.iter().any(|r| r.len() != rows.len()) {
            return Err(Error::Invalid("monoid table is not square".into()));
        }
        FiniteMonoid::from_table("m", size, unit, rows.concat())
    }

    /// Inverse of [`FiniteMonoid::parse`].
    pub fn spec(&self) -> String {
        if let Ok(c) = FiniteMonoid::cyclic(self.size()) {
            if c.0.mul == self.0.mul && c.0.unit == self.0.unit {
                return format!("z{}", self.size());
            }
        }
        let rows: Vec<String> = self
            .0
            .mul
            .chunks(self.size() as usize)
            .map(|r| r.iter().map(u32::to_string).collect::<Vec<_>>().join(","))
            .collect();
        format!("m:{}:{}", self.0.unit, rows.join("/"))
    }

    pub fn name(&self) -> &str {
        &self.0.name
    }

    pub fn size(&self) -> u32 {
        self.0.size
    }

    pub fn unit(&self) -> MonoidElem {
        self.0.unit
    }

    pub fn elements(&self) -> std::ops::Range<MonoidElem> {
        0..self.0.size
    }

    pub fn mul(&self, a: MonoidElem, b: MonoidElem) -> MonoidElem {
        self.0.mul[(a * self.0.size + b) as usize]
    }

    pub fn is_commutative(&self) -> bool {
        self.elements().all(|a| self.elements().all(|b| self.mul(a, b) == self.mul(b, a)))
    }
}
