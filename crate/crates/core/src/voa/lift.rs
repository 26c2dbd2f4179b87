//! Lifts `g^` of a lattice isometry to the central extension, acting on the model.

use num_traits::Zero;

use super::cocycle::CocycleTable;
use super::vector::{LowWeightVector, Symbol};
use crate::error::{Error, Result};
use crate::matrix::{rat, IntMatrix, Rat};

/// `g^(e^mu) = s(mu) e^{g mu}`, where `s` is fixed by its basis values and the lift condition.
#[derive(Clone, Debug)]
pub struct LiftedIsometry {
    table: CocycleTable,
    /// Columns are images of basis vectors.
    u: Vec<Vec<i64>>,
    basis_signs: Vec<i64>,
    /// `eta(b_i, b_j) = eps(b_i, b_j) eps(g b_i, g b_j)`.
    eta: Vec<Vec<i64>>,
}

/// The lift whose basis signs are `(-1)^{bit i of twist}`; `twist = 0` is the canonical lift.
pub fn build_lift(u: &IntMatrix, table: &CocycleTable, twist: u64) -> Result<LiftedIsometry> {
    let n = table.rank();
    if u.rows() != n || u.cols() != n {
        return Err(Error::Shape(format!(
            "isometry is {}x{}, lattice rank {}",
            u.rows(),
            u.cols(),
            n
        )));
    }
    let rows = u
        .to_i64_rows()
        .ok_or_else(|| Error::Shape("isometry entries too large".into()))?;
    let cols: Vec<Vec<i64>> = (0..n)
        .map(|j| rows.iter().map(|r| r[j]).collect())
        .collect();
    for i in 0..n {
        for j in 0..n {
            let lhs = table.inner(&cols[i], &cols[j]);
            if lhs != table.gram()[i][j] {
                return Err(Error::NotIsometry {
                    row: i,
                    col: j,
                    value: (lhs - table.gram()[i][j]).to_string(),
                });
            }
        }
    }
    let unit = |i: usize| {
        let mut v = vec![0i64; n];
        v[i] = 1;
        v
    };
    let eta = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| table.eps(&unit(i), &unit(j)) * table.eps(&cols[i], &cols[j]))
                .collect()
        })
        .collect();
    let basis_signs = (0..n)
        .map(|i| if (twist >> i) & 1 == 1 { -1 } else { 1 })
        .collect();
    let lift = LiftedIsometry {
        table: table.clone(),
        u: cols,
        basis_signs,
        eta,
    };
    if lift.basis_residual() != 0 {
        return Err(Error::Precondition(
            "lift condition fails on basis pairs".into(),
        ));
    }
    Ok(lift)
}

fn parity_sign(e: i64) -> i64 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

impl LiftedIsometry {
    pub fn table(&self) -> &CocycleTable {
        &self.table
    }

    pub fn basis_signs(&self) -> &[i64] {
        &self.basis_signs
    }

    pub fn apply_vec(&self, mu: &[i64]) -> Vec<i64> {
        let n = self.u.len();
        let mut out = vec![0i64; n];
        for (j, &m) in mu.iter().enumerate() {
            if m != 0 {
                for i in 0..n {
                    out[i] += m * self.u[j][i];
                }
            }
        }
        out
    }

    fn apply_rat(&self, a: &[Rat]) -> Vec<Rat> {
        let n = self.u.len();
        let mut out = vec![Rat::zero(); n];
        for (j, m) in a.iter().enumerate() {
            if !m.is_zero() {
                for (i, o) in out.iter_mut().enumerate() {
                    *o += m * rat(self.u[j][i], 1);
                }
            }
        }
        out
    }

    /// The quadratic refinement `s(mu)` of `eta` with the chosen basis values.
    pub fn sign(&self, mu: &[i64]) -> i64 {
        let n = mu.len();
        let mut e = 0i64;
        for i in 0..n {
            if self.basis_signs[i] == -1 {
                e += mu[i];
            }
            if self.eta[i][i] == -1 {
                e += mu[i] * (mu[i] - 1) / 2;
            }
            for j in i + 1..n {
                if self.eta[i][j] == -1 {
                    e += mu[i] * mu[j];
                }
            }
        }
        parity_sign(e)
    }

    /// Whether `s(a) s(b) eps(ga, gb) = s(a+b) eps(a, b)`.
    pub fn lift_holds(&self, a: &[i64], b: &[i64]) -> bool {
        let sum: Vec<i64> = a.iter().zip(b).map(|(x, y)| x + y).collect();
        let lhs =
            self.sign(a) * self.sign(b) * self.table.eps(&self.apply_vec(a), &self.apply_vec(b));
        lhs == self.sign(&sum) * self.table.eps(a, b)
    }

    /// Number of basis pairs violating the lift condition.
    pub fn basis_residual(&self) -> usize {
        let n = self.u.len();
        let unit = |i: usize| {
            let mut v = vec![0i64; n];
            v[i] = 1;
            v
        };
        let mut bad = 0;
        for i in 0..n {
            for j in 0..n {
                if !self.lift_holds(&unit(i), &unit(j)) {
                    bad += 1;
                }
            }
        }
        bad
    }

    pub fn act(&self, v: &LowWeightVector) -> Result<LowWeightVector> {
        let t = &self.table;
        let col = |i: usize| self.u[i].iter().map(|&x| rat(x, 1)).collect::<Vec<Rat>>();
        let mut out = LowWeightVector::zero();
        for (s, c) in v.terms() {
            let img = match s {
                Symbol::Vac => t.vac(),
                Symbol::H1(i) => t.h1(&col(*i)),
                Symbol::H2(i) => t.h2(&col(*i)),
                Symbol::HH(i, j) => t.hh(&col(*i), &col(*j)),
                Symbol::E(m) => t.e(&self.apply_vec(m))?.scale(&rat(self.sign(m), 1)),
                Symbol::HE(i, m) => t
                    .he(&col(*i), &self.apply_vec(m))?
                    .scale(&rat(self.sign(m), 1)),
            };
            out = out.add(&img.scale(c));
        }
        Ok(out)
    }

    /// `h[alpha](-1)` maps to `h[g alpha](-1)`.
    pub fn act_h1(&self, alpha: &[Rat]) -> LowWeightVector {
        self.table.h1(&self.apply_rat(alpha))
    }

    fn generators(&self) -> Vec<LowWeightVector> {
        let n = self.u.len();
        let mut gens = Vec::new();
        for i in 0..n {
            let mut v = vec![0i64; n];
            v[i] = 1;
            gens.push(LowWeightVector::single(Symbol::H1(i)));
            if self.table.norm(&v) <= 4 {
                gens.push(LowWeightVector::single(Symbol::E(v)));
            }
        }
        gens
    }

    /// Smallest `k <= bound` with `g^k` trivial on every `h[b_i](-1)` and every basis `e^{b_i}` in the model.
    pub fn order(&self, bound: u32) -> Result<Option<u32>> {
        let gens = self.generators();
        let mut cur = gens.clone();
        for k in 1..=bound {
            cur = cur.iter().map(|v| self.act(v)).collect::<Result<_>>()?;
            if cur == gens {
                return Ok(Some(k));
            }
        }
        Ok(None)
    }

    /// `g^4(e^mu) = chi(mu) e^mu` when `g^4 = 1`; `None` otherwise.
    pub fn fourth_power_sign(&self, mu: &[i64]) -> Result<Option<i64>> {
        let mut v = self.table.e(mu)?;
        for _ in 0..4 {
            v = self.act(&v)?;
        }
        let base = self.table.e(mu)?;
        Ok(if v == base {
            Some(1)
        } else if v == base.neg() {
            Some(-1)
        } else {
            None
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::voa::cocycle::build_cocycle;

    fn rotation() -> (CocycleTable, IntMatrix) {
        // 90 degree rotation of A1 + A1
        let t = build_cocycle(&IntMatrix::from_i64(&[&[2, 0], &[0, 2]])).unwrap();
        (t, IntMatrix::from_i64(&[&[0, -1], &[1, 0]]))
    }

    #[test]
    fn heisenberg_part_is_sign_free() {
        let (t, u) = rotation();
        let l = build_lift(&u, &t, 0b11).unwrap();
        let a = vec![rat(1, 1), rat(0, 1)];
        assert_eq!(l.act(&t.h1(&a)).unwrap(), t.h1(&[rat(0, 1), rat(1, 1)]));
    }

    #[test]
    fn residual_vanishes_and_lift_holds() {
        let (t, u) = rotation();
        for twist in 0..4 {
            let l = build_lift(&u, &t, twist).unwrap();
            assert_eq!(l.basis_residual(), 0);
            for a in -2..=2 {
                for b in -2..=2 {
                    assert!(l.lift_holds(&[a, b], &[b - 1, a + 2]));
                }
            }
        }
    }

    #[test]
    fn square_is_lift_of_minus_one() {
        let (t, u) = rotation();
        let l = build_lift(&u, &t, 0).unwrap();
        let mu = [1, 0];
        let sq = l.act(&l.act(&t.e(&mu).unwrap()).unwrap()).unwrap();
        let expected = l.sign(&mu) * l.sign(&l.apply_vec(&mu));
        assert_eq!(sq, t.e(&[-1, 0]).unwrap().scale(&rat(expected, 1)));
        let ord = l.order(8).unwrap().unwrap();
        assert!(ord == 4 || ord == 8);
    }

    #[test]
    fn non_isometry_rejected() {
        let (t, _) = rotation();
        assert!(build_lift(&IntMatrix::from_i64(&[&[1, 1], &[0, 1]]), &t, 0).is_err());
    }
}
