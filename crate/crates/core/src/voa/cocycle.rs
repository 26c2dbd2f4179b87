//! The pinned bimultiplicative cocycle on an even lattice.

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;

/// `eps(b_i, b_j) = (-1)^{(b_i|b_j)}` for `i > j` and `1` otherwise, extended bilinearly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CocycleTable {
    gram: Vec<Vec<i64>>,
}

pub fn build_cocycle(gram: &IntMatrix) -> Result<CocycleTable> {
    let gram = gram
        .to_i64_rows()
        .ok_or_else(|| Error::Shape("gram entries too large".into()))?;
    if gram.iter().any(|r| r.len() != gram.len()) {
        return Err(Error::Shape("gram is not square".into()));
    }
    Ok(CocycleTable { gram })
}

impl CocycleTable {
    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    pub fn inner(&self, a: &[i64], b: &[i64]) -> i64 {
        let mut s = 0;
        for (i, row) in self.gram.iter().enumerate() {
            if a[i] == 0 {
                continue;
            }
            s += a[i] * row.iter().zip(b).map(|(g, y)| g * y).sum::<i64>();
        }
        s
    }

    pub fn norm(&self, a: &[i64]) -> i64 {
        self.inner(a, a)
    }

    /// `(b_i | a)` for every basis vector.
    pub fn pairings(&self, a: &[i64]) -> Vec<i64> {
        self.gram
            .iter()
            .map(|row| row.iter().zip(a).map(|(g, y)| g * y).sum())
            .collect()
    }

    /// The cocycle value as `+1` or `-1`.
    pub fn eps(&self, a: &[i64], b: &[i64]) -> i64 {
        let mut e = 0i64;
        for i in 1..self.rank() {
            if a[i] == 0 {
                continue;
            }
            for j in 0..i {
                e += a[i] * b[j] * self.gram[i][j];
            }
        }
        if e.rem_euclid(2) == 0 {
            1
        } else {
            -1
        }
    }

    /// `eps(a,b) eps(b,a) = (-1)^{(a|b)}`.
    pub fn commutator_holds(&self, a: &[i64], b: &[i64]) -> bool {
        let expected = if self.inner(a, b).rem_euclid(2) == 0 {
            1
        } else {
            -1
        };
        self.eps(a, b) * self.eps(b, a) == expected
    }
}
