//! The frame triality `sigma`, line by line on `{h[a_k](-1), e^{a_k}, e^{-a_k}}`.
//!
//! With `c_k = eps(a_k, -a_k)` and `f_k = c_k e^{-a_k}` one has `[e_k, f_k] = h_k`, and
//! `sigma` is `h_k -> e_k + f_k`, `e_k + f_k -> h_k`, `e_k - f_k -> -(e_k - f_k)`.
//! Weight-two symbols are rewritten as `(-1)`-products of frame generators first, and
//! `sigma` is applied factorwise.

use num_traits::{One, Zero};

use super::cocycle::CocycleTable;
use super::vector::{LowWeightVector, Symbol};
use crate::error::{Error, Result};
use crate::matrix::{rat, Rat};

#[derive(Clone, Debug)]
pub struct FrameTriality {
    table: CocycleTable,
    lines: Vec<Vec<i64>>,
    signs: Vec<i64>,
    /// `coeff[i][k] = (b_i|a_k) / 2`, so that `h[b_i] = sum_k coeff[i][k] h[a_k]`.
    coeff: Vec<Vec<Rat>>,
}

fn ratv(a: &[i64]) -> Vec<Rat> {
    a.iter().map(|&x| rat(x, 1)).collect()
}

fn neg(a: &[i64]) -> Vec<i64> {
    a.iter().map(|x| -x).collect()
}

impl FrameTriality {
    /// `lines` are integer coordinates of an orthogonal frame of norm-2 vectors spanning `Q (x) L`.
    pub fn new(table: &CocycleTable, lines: Vec<Vec<i64>>) -> Result<Self> {
        let n = table.rank();
        if lines.len() != n {
            return Err(Error::Precondition(format!(
                "{} frame lines for rank {}",
                lines.len(),
                n
            )));
        }
        for i in 0..n {
            for j in 0..n {
                if table.inner(&lines[i], &lines[j]) != if i == j { 2 } else { 0 } {
                    return Err(Error::NotA1Frame(format!(
                        "(a_{}|a_{}) = {}",
                        i,
                        j,
                        table.inner(&lines[i], &lines[j])
                    )));
                }
            }
        }
        let signs = lines.iter().map(|a| table.eps(a, &neg(a))).collect();
        let coeff = (0..n)
            .map(|i| lines.iter().map(|a| rat(table.pairings(a)[i], 2)).collect())
            .collect();
        Ok(FrameTriality {
            table: table.clone(),
            lines,
            signs,
            coeff,
        })
    }

    pub fn lines(&self) -> &[Vec<i64>] {
        &self.lines
    }

    /// `c_k = eps(a_k, -a_k)`.
    pub fn signs(&self) -> &[i64] {
        &self.signs
    }

    pub fn h(&self, k: usize) -> LowWeightVector {
        self.table.h1(&ratv(&self.lines[k]))
    }

    pub fn e(&self, k: usize) -> LowWeightVector {
        self.table.e(&self.lines[k]).expect("norm 2")
    }

    /// `f_k = c_k e^{-a_k}`.
    pub fn f(&self, k: usize) -> LowWeightVector {
        self.table
            .e(&neg(&self.lines[k]))
            .expect("norm 2")
            .scale(&rat(self.signs[k], 1))
    }

    /// Every `h_k`, `e^{a_k}`, `e^{-a_k}`.
    pub fn generators(&self) -> Vec<LowWeightVector> {
        let mut g = Vec::new();
        for k in 0..self.lines.len() {
            g.push(self.h(k));
            g.push(self.e(k));
            g.push(self.table.e(&neg(&self.lines[k])).expect("norm 2"));
        }
        g
    }

    /// Frame coordinates `t_k = (mu|a_k)/2`.
    fn frame_coords(&self, mu: &[i64]) -> Vec<Rat> {
        self.lines
            .iter()
            .map(|a| rat(self.table.inner(mu, a), 2))
            .collect()
    }

    /// `mu = sign * a_k`.
    fn as_line(&self, mu: &[i64]) -> Option<(usize, i64)> {
        let t = self.frame_coords(mu);
        let nz: Vec<usize> = (0..t.len()).filter(|&k| !t[k].is_zero()).collect();
        match nz.as_slice() {
            [k] if t[*k].is_one() => Some((*k, 1)),
            [k] if t[*k] == rat(-1, 1) => Some((*k, -1)),
            _ => None,
        }
    }

    fn line_vec(&self, k: usize, sign: i64) -> Vec<i64> {
        self.lines[k].iter().map(|x| sign * x).collect()
    }

    fn sigma_h(&self, k: usize) -> LowWeightVector {
        self.e(k).add(&self.f(k))
    }

    fn sigma_e(&self, k: usize) -> LowWeightVector {
        self.h(k).sub(&self.e(k)).add(&self.f(k)).scale(&rat(1, 2))
    }

    /// `sigma(e^{-a_k}) = c_k sigma(f_k)`.
    fn sigma_e_minus(&self, k: usize) -> LowWeightVector {
        self.h(k)
            .add(&self.e(k))
            .sub(&self.f(k))
            .scale(&rat(self.signs[k], 2))
    }

    fn sigma_root(&self, mu: &[i64]) -> Result<LowWeightVector> {
        match self.as_line(mu) {
            Some((k, 1)) => Ok(self.sigma_e(k)),
            Some((k, _)) => Ok(self.sigma_e_minus(k)),
            None => Err(self.outside(&Symbol::E(mu.to_vec()))),
        }
    }

    /// `sigma(h[b_i](-1))`.
    fn sigma_hb(&self, i: usize) -> LowWeightVector {
        let mut v = LowWeightVector::zero();
        for (k, c) in self.coeff[i].iter().enumerate() {
            if !c.is_zero() {
                v = v.add(&self.sigma_h(k).scale(c));
            }
        }
        v
    }

    fn outside(&self, s: &Symbol) -> Error {
        Error::OutsideSigmaDomain(s.to_string())
    }

    fn prod(&self, a: &LowWeightVector, b: &LowWeightVector) -> Result<LowWeightVector> {
        self.table.neg_one_product(a, b)
    }

    fn sigma_symbol(&self, s: &Symbol) -> Result<LowWeightVector> {
        let t = &self.table;
        match s {
            Symbol::Vac => Ok(t.vac()),
            Symbol::H1(i) => Ok(self.sigma_hb(*i)),
            Symbol::HH(i, j) => self.prod(&self.sigma_hb(*i), &self.sigma_hb(*j)),
            Symbol::H2(i) => {
                // h[a_k](-2) = 2 c_k e^{a_k}_{-1} e^{-a_k} - h[a_k](-1)^2
                let mut v = LowWeightVector::zero();
                for (k, c) in self.coeff[*i].iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let ef = self
                        .prod(&self.sigma_e(k), &self.sigma_e_minus(k))?
                        .scale(&rat(2 * self.signs[k], 1));
                    let hh = self.prod(&self.sigma_h(k), &self.sigma_h(k))?;
                    v = v.add(&ef.sub(&hh).scale(c));
                }
                Ok(v)
            }
            Symbol::E(mu) if t.norm(mu) == 2 => self.sigma_root(mu),
            Symbol::E(mu) => {
                // e^{a+b} = eps(a,b) e^a_{-1} e^b for orthogonal frame roots a, b
                let fc = self.frame_coords(mu);
                let nz: Vec<usize> = (0..fc.len()).filter(|&k| !fc[k].is_zero()).collect();
                let unit = |k: usize| fc[k].is_one() || fc[k] == rat(-1, 1);
                let [k, l] = nz.as_slice() else {
                    return Err(self.outside(s));
                };
                if !unit(*k) || !unit(*l) {
                    return Err(self.outside(s));
                }
                let sk = if fc[*k].is_one() { 1 } else { -1 };
                let sl = if fc[*l].is_one() { 1 } else { -1 };
                let (a, b) = (self.line_vec(*k, sk), self.line_vec(*l, sl));
                let eps = rat(t.eps(&a, &b), 1);
                Ok(self
                    .prod(&self.sigma_root(&a)?, &self.sigma_root(&b)?)?
                    .scale(&eps))
            }
            Symbol::HE(i, mu) => {
                let root = self.sigma_root(mu)?;
                self.prod(&self.sigma_hb(*i), &root)
            }
        }
    }

    pub fn sigma(&self, v: &LowWeightVector) -> Result<LowWeightVector> {
        let mut out = LowWeightVector::zero();
        for (s, c) in v.terms() {
            out = out.add(&self.sigma_symbol(s)?.scale(c));
        }
        Ok(out)
    }
}
