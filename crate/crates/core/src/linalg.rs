//! Gaussian elimination over finite fields.

use crate::effects::{Scalar, Semiring};

/// Finds `c` with `Σ c[j]·gens[j] = target`, free variables set to zero.
///
/// `field` must be a field; every vector must have `target.len()` entries.
pub fn solve(field: &Semiring, gens: &[Vec<Scalar>], target: &[Scalar]) -> Option<Vec<Scalar>> {
    debug_assert!(field.is_field());
    let (m, n) = (target.len(), gens.len());
    let mut a: Vec<Vec<Scalar>> = (0..m)
        .map(|i| gens.iter().map(|g| g[i]).chain(std::iter::once(target[i])).collect())
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..n {
        if row == m {
            break;
        }
        let Some(p) = (row..m).find(|&r| a[r][col] != 0) else { continue };
        a.swap(row, p);
        let inv = field.inv(a[row][col]).expect("nonzero pivot is invertible");
        for x in a[row].iter_mut() {
            *x = field.mul(inv, *x);
        }
        for r in 0..m {
            if r != row && a[r][col] != 0 {
                let f = field.neg(a[r][col]).expect("fields have negatives");
                for k in col..=n {
                    let t = field.mul(f, a[row][k]);
                    a[r][k] = field.add(a[r][k], t);
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    if a[row..].iter().any(|r| r[n] != 0) {
        return None;
    }
    let mut coef = vec![0; n];
    for (i, &col) in pivots.iter().enumerate() {
        coef[col] = a[i][n];
    }
    Some(coef)
}

/// A subspace kept in echelon form, grown one vector at a time. Vectors may
/// be shorter than the current dimension; missing entries are zero.
#[derive(Clone, Debug)]
pub struct Span {
    field: Semiring,
    /// `(pivot, v)` with `v[pivot] = 1` and zeros at every other pivot.
    basis: Vec<(usize, Vec<Scalar>)>,
    pivot_of: Vec<Option<usize>>,
}

impl Span {
    pub fn new(field: Semiring) -> Self {
        debug_assert!(field.is_field());
        Span { field, basis: Vec::new(), pivot_of: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    // the basis is fully reduced, so the coefficient of each basis vector is
    // the entry of `v` at its pivot
    fn reduce(&self, mut v: Vec<Scalar>) -> Vec<Scalar> {
        let coeffs: Vec<(usize, Scalar)> = v
            .iter()
            .enumerate()
            .filter(|&(_, &x)| x != 0)
            .filter_map(|(c, &x)| self.pivot_of.get(c).copied().flatten().map(|k| (k, x)))
            .collect();
        for (k, c) in coeffs {
            let b = &self.basis[k].1;
            let f = self.field.neg(c).expect("fields have negatives");
            if v.len() < b.len() {
                v.resize(b.len(), 0);
            }
            for (x, &y) in v.iter_mut().zip(b) {
                if y != 0 {
                    *x = self.field.add(*x, self.field.mul(f, y));
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(v.to_vec()).iter().all(|&x| x == 0)
    }

    /// Adds `v`; returns false when it was already in the span.
    pub fn insert(&mut self, v: Vec<Scalar>) -> bool {
        let mut r = self.reduce(v);
        let Some(p) = r.iter().position(|&x| x != 0) else { return false };
        let inv = self.field.inv(r[p]).expect("nonzero is invertible");
        for x in r.iter_mut() {
            *x = self.field.mul(inv, *x);
        }
        for (_, b) in self.basis.iter_mut() {
            let c = b.get(p).copied().unwrap_or(0);
            if c == 0 {
                continue;
            }
            let f = self.field.neg(c).expect("fields have negatives");
            if b.len() < r.len() {
                b.resize(r.len(), 0);
            }
            for (x, &y) in b.iter_mut().zip(&r) {
                if y != 0 {
                    *x = self.field.add(*x, self.field.mul(f, y));
                }
            }
        }
        if self.pivot_of.len() <= p {
            self.pivot_of.resize(p + 1, None);
        }
        self.pivot_of[p] = Some(self.basis.len());
        self.basis.push((p, r));
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scalar_multiple() {
        let f = Semiring::gf(5).unwrap();
        assert_eq!(solve(&f, &[vec![1, 2]], &[2, 4]), Some(vec![2]));
        assert_eq!(solve(&f, &[vec![1, 2]], &[2, 3]), None);
    }

    #[test]
    fn dependent_generators() {
        let f = Semiring::gf(3).unwrap();
        let gens = vec![vec![1, 0, 1], vec![2, 0, 2], vec![0, 1, 1]];
        let c = solve(&f, &gens, &[1, 1, 2]).unwrap();
        let got: Vec<u32> = (0..3)
            .map(|i| f.sum(gens.iter().zip(&c).map(|(g, &k)| f.mul(k, g[i]))))
            .collect();
        assert_eq!(got, vec![1, 1, 2]);
        assert_eq!(solve(&f, &[], &[0, 0]), Some(vec![]));
        assert_eq!(solve(&f, &[], &[0, 1]), None);
    }

    #[test]
    fn span_membership() {
        let f = Semiring::gf(3).unwrap();
        let mut s = Span::new(f);
        assert!(s.insert(vec![1, 2, 0]));
        assert!(s.insert(vec![0, 1, 1, 2]));
        assert!(!s.insert(vec![2, 1]));
        assert!(s.contains(&[1, 0, 1, 2]));
        assert!(s.contains(&[]));
        assert!(!s.contains(&[0, 0, 1]));
        assert!(s.insert(vec![0, 0, 1]));
        assert_eq!(s.dim(), 3);
        assert!(s.contains(&[0, 1, 0, 2]));
        assert!(!s.contains(&[0, 0, 0, 1]));
    }
}
