//! Finite semirings used as weights of the free semimodule effect.

use std::sync::Arc;

use crate::error::{Error, Result};

/// Elements are `0..size`; element 0 is the additive identity, element 1 the
/// multiplicative one.
pub type Scalar = u32;

#[derive(Debug, PartialEq, Eq, Hash)]
struct Tables {
    name: String,
    size: u32,
    add: Vec<Scalar>,
    mul: Vec<Scalar>,
    inverse: Option<Vec<Scalar>>,
}

/// A finite semiring given by operation tables. Cheap to clone.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Semiring(Arc<Tables>);

fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

impl Semiring {
    /// The prime field of integers modulo `p`.
    pub fn gf(p: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::Invalid(format!("GF({p}) needs a prime order")));
        }
        if p > 251 {
            return Err(Error::Invalid(format!("GF({p}) is too large for table form")));
        }
        let n = p as usize;
        let mut add = vec![0; n * n];
        let mut mul = vec![0; n * n];
        for a in 0..p {
            for b in 0..p {
                add[(a * p + b) as usize] = (a + b) % p;
                mul[(a * p + b) as usize] = (a * b) % p;
            }
        }
        Semiring::from_tables(format!("gf{p}"), p, add, mul)
    }

    /// The Boolean semiring ({0,1}, or, and). Not a field.
    pub fn boolean() -> Self {
        Semiring::from_tables("bool", 2, vec![0, 1, 1, 1], vec![0, 0, 0, 1]).expect("boolean semiring")
    }

    /// Builds a semiring from row-major tables, checking the axioms.
    pub fn from_tables(name: impl Into<String>, size: u32, add: Vec<Scalar>, mul: Vec<Scalar>) -> Result<Self> {
        let n = size as usize;
        if size < 2 || add.len() != n * n || mul.len() != n * n {
            return Err(Error::Invalid("semiring tables must be size×size with size ≥ 2".into()));
        }
        if add.iter().chain(mul.iter()).any(|&x| x >= size) {
            return Err(Error::Invalid("semiring table entry out of range".into()));
        }
        let ad = |a: u32, b: u32| add[(a * size + b) as usize];
        let mu = |a: u32, b: u32| mul[(a * size + b) as usize];
        for a in 0..size {
            if ad(0, a) != a || ad(a, 0) != a {
                return Err(Error::Invalid("0 is not an additive identity".into()));
            }
            if mu(1, a) != a || mu(a, 1) != a {
                return Err(Error::Invalid("1 is not a multiplicative identity".into()));
            }
            if mu(0, a) != 0 || mu(a, 0) != 0 {
                return Err(Error::Invalid("0 does not annihilate".into()));
            }
            for b in 0..size {
                if ad(a, b) != ad(b, a) {
                    return Err(Error::Invalid("addition is not commutative".into()));
                }
                for c in 0..size {
                    if ad(ad(a, b), c) != ad(a, ad(b, c)) || mu(mu(a, b), c) != mu(a, mu(b, c)) {
                        return Err(Error::Invalid("operations are not associative".into()));
                    }
                    if mu(a, ad(b, c)) != ad(mu(a, b), mu(a, c)) || mu(ad(a, b), c) != ad(mu(a, c), mu(b, c)) {
                        return Err(Error::Invalid("multiplication does not distribute".into()));
                    }
                }
            }
        }
        let commutative = (0..size).all(|a| (0..size).all(|b| mu(a, b) == mu(b, a)));
        let additive_inverses = (0..size).all(|a| (0..size).any(|b| ad(a, b) == 0));
        let inverse = (commutative && additive_inverses)
            .then(|| {
                (0..size)
                    .map(|a| if a == 0 { Some(0) } else { (1..size).find(|&b| mu(a, b) == 1) })
                    .collect::<Option<Vec<_>>>()
            })
            .flatten();
        Ok(Semiring(Arc::new(Tables { name: name.into(), size, add, mul, inverse })))
    }

    pub fn name(&self) -> &str {
        &self.0.name
    }

    pub fn size(&self) -> u32 {
        self.0.size
    }

    pub fn elements(&self) -> std::ops::Range<Scalar> {
        0..self.0.size
    }

    pub fn add(&self, a: Scalar, b: Scalar) -> Scalar {
        self.0.add[(a * self.0.size + b) as usize]
    }

    pub fn mul(&self, a: Scalar, b: Scalar) -> Scalar {
        self.0.mul[(a * self.0.size + b) as usize]
    }

    pub fn is_field(&self) -> bool {
        self.0.inverse.is_some()
    }

    /// Multiplicative inverse of a nonzero element, if the semiring is a field.
    pub fn inv(&self, a: Scalar) -> Option<Scalar> {
        if a == 0 {
            return None;
        }
        self.0.inverse.as_ref().map(|t| t[a as usize])
    }

    /// Additive inverse, when it exists.
    pub fn neg(&self, a: Scalar) -> Option<Scalar> {
        self.elements().find(|&b| self.add(a, b) == 0)
    }

    pub fn sum<I: IntoIterator<Item = Scalar>>(&self, xs: I) -> Scalar {
        xs.into_iter().fold(0, |acc, x| self.add(acc, x))
    }

    /// `gfP` for prime fields, otherwise `None`.
    pub(crate) fn prime_order(&self) -> Option<u32> {
        self.0.name.strip_prefix("gf").and_then(|p| p.parse().ok()).filter(|&p| p == self.0.size)
    }
}
