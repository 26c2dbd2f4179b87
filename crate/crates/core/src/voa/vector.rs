//! Weight `<= 2` vectors of a lattice VOA and the `(-1)`-products between them.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::cocycle::CocycleTable;
use crate::error::{Error, Result};
use crate::matrix::{rat, Rat};

/// Basis symbols; `h` slots are indices of lattice basis vectors.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Symbol {
    Vac,
    /// `h[b_i](-1)`
    H1(usize),
    /// `h[b_i](-2)`
    H2(usize),
    /// `h[b_i](-1) h[b_j](-1)` with `i <= j`
    HH(usize, usize),
    /// `e^mu` with `(mu|mu) <= 4`
    E(Vec<i64>),
    /// `h[b_i](-1) e^mu` with `(mu|mu) = 2`
    HE(usize, Vec<i64>),
}

impl Symbol {
    pub fn weight(&self, t: &CocycleTable) -> i64 {
        match self {
            Symbol::Vac => 0,
            Symbol::H1(_) => 1,
            Symbol::H2(_) | Symbol::HH(..) => 2,
            Symbol::E(m) => t.norm(m) / 2,
            Symbol::HE(_, m) => 1 + t.norm(m) / 2,
        }
    }
}

fn hh(i: usize, j: usize) -> Symbol {
    Symbol::HH(i.min(j), i.max(j))
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LowWeightVector {
    terms: BTreeMap<Symbol, Rat>,
}

impl LowWeightVector {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn single(s: Symbol) -> Self {
        let mut v = Self::zero();
        v.add_term(s, Rat::one());
        v
    }

    pub fn terms(&self) -> &BTreeMap<Symbol, Rat> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, s: Symbol, c: Rat) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(s.clone()).or_insert_with(Rat::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&s);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut v = self.clone();
        for (s, c) in &other.terms {
            v.add_term(s.clone(), c.clone());
        }
        v
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&rat(-1, 1)))
    }

    pub fn scale(&self, k: &Rat) -> Self {
        let mut v = Self::zero();
        for (s, c) in &self.terms {
            v.add_term(s.clone(), c * k);
        }
        v
    }

    pub fn neg(&self) -> Self {
        self.scale(&rat(-1, 1))
    }

    /// The set of weights occurring.
    pub fn weights(&self, t: &CocycleTable) -> Vec<i64> {
        let mut w: Vec<i64> = self.terms.keys().map(|s| s.weight(t)).collect();
        w.sort();
        w.dedup();
        w
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = |m: &[i64]| m.iter().map(i64::to_string).collect::<Vec<_>>().join(",");
        match self {
            Symbol::Vac => write!(f, "1"),
            Symbol::H1(i) => write!(f, "h{}(-1)", i),
            Symbol::H2(i) => write!(f, "h{}(-2)", i),
            Symbol::HH(i, j) => write!(f, "h{}(-1)h{}(-1)", i, j),
            Symbol::E(m) => write!(f, "e^({})", v(m)),
            Symbol::HE(i, m) => write!(f, "h{}(-1)e^({})", i, v(m)),
        }
    }
}

impl fmt::Display for LowWeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(s, c)| format!("{}*{}", c, s))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

fn unsupported(a: &Symbol, b: &Symbol) -> Error {
    Error::UnsupportedProduct(format!("{} (-1) {}", a, b))
}

fn ints_to_rat(a: &[i64]) -> Vec<Rat> {
    a.iter().map(|&x| rat(x, 1)).collect()
}

impl CocycleTable {
    pub fn vac(&self) -> LowWeightVector {
        LowWeightVector::single(Symbol::Vac)
    }

    /// `h[alpha](-1)` for `alpha` in rational basis coordinates.
    pub fn h1(&self, alpha: &[Rat]) -> LowWeightVector {
        let mut v = LowWeightVector::zero();
        for (i, a) in alpha.iter().enumerate() {
            v.add_term(Symbol::H1(i), a.clone());
        }
        v
    }

    pub fn h2(&self, alpha: &[Rat]) -> LowWeightVector {
        let mut v = LowWeightVector::zero();
        for (i, a) in alpha.iter().enumerate() {
            v.add_term(Symbol::H2(i), a.clone());
        }
        v
    }

    pub fn hh(&self, alpha: &[Rat], beta: &[Rat]) -> LowWeightVector {
        let mut v = LowWeightVector::zero();
        for (i, a) in alpha.iter().enumerate() {
            for (j, b) in beta.iter().enumerate() {
                v.add_term(hh(i, j), a * b);
            }
        }
        v
    }

    pub fn e(&self, mu: &[i64]) -> Result<LowWeightVector> {
        if mu.iter().all(|&x| x == 0) {
            return Ok(self.vac());
        }
        if self.norm(mu) > 4 {
            return Err(Error::Precondition(format!(
                "e^mu of norm {} is above weight 2",
                self.norm(mu)
            )));
        }
        Ok(LowWeightVector::single(Symbol::E(mu.to_vec())))
    }

    pub fn he(&self, alpha: &[Rat], mu: &[i64]) -> Result<LowWeightVector> {
        if self.norm(mu) != 2 {
            return Err(Error::Precondition(format!(
                "h(-1)e^mu needs norm 2, got {}",
                self.norm(mu)
            )));
        }
        let mut v = LowWeightVector::zero();
        for (i, a) in alpha.iter().enumerate() {
            v.add_term(Symbol::HE(i, mu.to_vec()), a.clone());
        }
        Ok(v)
    }

    fn basis_rat(&self, i: usize) -> Vec<Rat> {
        let mut v = vec![Rat::zero(); self.rank()];
        v[i] = Rat::one();
        v
    }

    fn symbol_product(&self, a: &Symbol, b: &Symbol) -> Result<LowWeightVector> {
        match (a, b) {
            (Symbol::Vac, x) | (x, Symbol::Vac) => Ok(LowWeightVector::single(x.clone())),
            (Symbol::H1(i), Symbol::H1(j)) => Ok(LowWeightVector::single(hh(*i, *j))),
            (Symbol::H1(i), Symbol::E(mu)) if self.norm(mu) == 2 => {
                Ok(LowWeightVector::single(Symbol::HE(*i, mu.clone())))
            }
            (Symbol::E(al), Symbol::H1(j)) if self.norm(al) == 2 => {
                // b_j(-1) e^al - (al|b_j) al(-1) e^al
                let k = self.pairings(al)[*j];
                let first = self.he(&self.basis_rat(*j), al)?;
                Ok(first.sub(&self.he(&ints_to_rat(al), al)?.scale(&rat(k, 1))))
            }
            (Symbol::E(al), Symbol::E(be)) => {
                let k = self.inner(al, be);
                if k >= 1 {
                    return Ok(LowWeightVector::zero());
                }
                let sum: Vec<i64> = al.iter().zip(be).map(|(x, y)| x + y).collect();
                let sign = rat(self.eps(al, be), 1);
                match k {
                    0 if self.norm(&sum) <= 4 => Ok(self.e(&sum)?.scale(&sign)),
                    -1 if self.norm(&sum) == 2 => Ok(self.he(&ints_to_rat(al), &sum)?.scale(&sign)),
                    -2 if sum.iter().all(|&x| x == 0) => {
                        let a = ints_to_rat(al);
                        let half = rat(1, 2);
                        Ok(self.h2(&a).add(&self.hh(&a, &a)).scale(&(half * sign)))
                    }
                    _ => Err(unsupported(a, b)),
                }
            }
            _ => Err(unsupported(a, b)),
        }
    }

    /// `u_{-1} v`, exact on the supported table and an error elsewhere.
    pub fn neg_one_product(
        &self,
        u: &LowWeightVector,
        v: &LowWeightVector,
    ) -> Result<LowWeightVector> {
        let mut out = LowWeightVector::zero();
        for (a, ca) in u.terms() {
            for (b, cb) in v.terms() {
                let p = self.symbol_product(a, b)?;
                out = out.add(&p.scale(&(ca * cb)));
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::IntMatrix;
    use crate::voa::cocycle::build_cocycle;

    /// `A_1 + A_1` with basis `a, b`.
    fn a1a1() -> CocycleTable {
        build_cocycle(&IntMatrix::from_i64(&[&[2, 0], &[0, 2]])).unwrap()
    }

    #[test]
    fn boson_products() {
        let t = a1a1();
        let a = vec![rat(1, 1), rat(0, 1)];
        let b = vec![rat(0, 1), rat(1, 1)];
        let p = t
            .neg_one_product(&t.h1(&a), &t.neg_one_product(&t.h1(&b), &t.vac()).unwrap())
            .unwrap();
        assert_eq!(p, t.hh(&a, &b));
    }

    #[test]
    fn orthogonal_root_product() {
        let t = a1a1();
        let x = t.e(&[1, 0]).unwrap().add(&t.e(&[-1, 0]).unwrap());
        let y = t.e(&[0, 1]).unwrap().add(&t.e(&[0, -1]).unwrap());
        let p = t.neg_one_product(&x, &y).unwrap();
        assert_eq!(p.terms().len(), 4);
        assert_eq!(p.weights(&t), vec![2]);
        // eps(a, b) = 1 and eps(-a, -b) = 1 here since (b_1|b_0) = 0
        for (s, c) in p.terms() {
            assert!(matches!(s, Symbol::E(_)));
            assert_eq!(c, &rat(1, 1));
        }
    }

    #[test]
    fn opposite_roots() {
        // e^a_{-1} e^{-a} = eps(a,-a) (h[a](-2) + h[a](-1)^2) / 2
        let t = a1a1();
        let p = t
            .neg_one_product(&t.e(&[1, 0]).unwrap(), &t.e(&[-1, 0]).unwrap())
            .unwrap();
        let mut expected = LowWeightVector::zero();
        expected.add_term(Symbol::H2(0), rat(1, 2));
        expected.add_term(Symbol::HH(0, 0), rat(1, 2));
        assert_eq!(p, expected);
    }

    #[test]
    fn skew_symmetry_at_weight_two() {
        // h_{-1} e - e_{-1} h = L(-1)(e_0 h) correction: h(-1)e^a + h(-1)e^a = 2 h(-1) e^a for h = a
        let t = a1a1();
        let a = vec![rat(1, 1), rat(0, 1)];
        let e = t.e(&[1, 0]).unwrap();
        let he = t.neg_one_product(&t.h1(&a), &e).unwrap();
        let eh = t.neg_one_product(&e, &t.h1(&a)).unwrap();
        assert_eq!(he.sub(&eh), t.he(&a, &[1, 0]).unwrap().scale(&rat(2, 1)));
    }

    #[test]
    fn unsupported_is_loud() {
        let t = a1a1();
        let a = vec![rat(1, 1), rat(0, 1)];
        let w2 = t.hh(&a, &a);
        assert!(matches!(
            t.neg_one_product(&t.h1(&a), &w2),
            Err(Error::UnsupportedProduct(_))
        ));
        assert!(t.e(&[2, 0]).is_err());
    }
}
