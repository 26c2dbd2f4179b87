//! Truncated formal power series in a rational power of `q`.

use std::fmt;

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::matrix::{rat, Int, Rat};

/// `sum_k coeffs[k] q^(offset + k*step)`, exact for every exponent below `precision()`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSeries {
    offset: Rat,
    step: Rat,
    coeffs: Vec<Rat>,
}

impl QSeries {
    pub fn new(offset: Rat, step: Rat, coeffs: Vec<Rat>) -> Self {
        assert!(step > Rat::zero(), "step must be positive");
        QSeries {
            offset,
            step,
            coeffs,
        }
    }

    /// The constant series `1` on the grid `step Z`, known for exponents `< len * step`.
    pub fn one(step: Rat, len: usize) -> Self {
        let mut coeffs = vec![Rat::zero(); len];
        if let Some(c) = coeffs.first_mut() {
            *c = Rat::one();
        }
        QSeries::new(Rat::zero(), step, coeffs)
    }

    /// Integer-exponent series with coefficients known through `q^max_exp`.
    pub fn integral(coeffs: Vec<Rat>) -> Self {
        QSeries::new(Rat::zero(), Rat::one(), coeffs)
    }

    pub fn offset(&self) -> &Rat {
        &self.offset
    }

    pub fn step(&self) -> &Rat {
        &self.step
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// First exponent whose coefficient is unknown.
    pub fn precision(&self) -> Rat {
        &self.offset + &self.step * rat(self.coeffs.len() as i64, 1)
    }

    fn grid_index(&self, e: &Rat) -> Option<usize> {
        let k = (e - &self.offset) / &self.step;
        if k.is_integer() && k >= Rat::zero() {
            k.to_integer().try_into().ok()
        } else {
            None
        }
    }

    /// Coefficient of `q^e`; `None` when `e` is at or beyond the precision.
    pub fn coeff(&self, e: &Rat) -> Option<Rat> {
        if *e >= self.precision() {
            return None;
        }
        match self.grid_index(e) {
            Some(k) => Some(self.coeffs[k].clone()),
            None => Some(Rat::zero()),
        }
    }

    /// Coefficient at an integer exponent, as an integer.
    pub fn int_coeff(&self, m: u64) -> Option<Int> {
        self.coeff(&rat(m as i64, 1)).map(|c| {
            assert!(c.is_integer(), "non-integral coefficient {}", c);
            c.to_integer()
        })
    }

    /// Multiplies by `q^by`.
    pub fn shift(&self, by: &Rat) -> QSeries {
        QSeries::new(&self.offset + by, self.step.clone(), self.coeffs.clone())
    }

    pub fn scale(&self, k: &Rat) -> QSeries {
        QSeries::new(
            self.offset.clone(),
            self.step.clone(),
            self.coeffs.iter().map(|c| c * k).collect(),
        )
    }

    /// Re-expresses the series on a grid of step `step / factor`.
    pub fn refine(&self, factor: usize) -> QSeries {
        let mut coeffs = vec![Rat::zero(); self.coeffs.len() * factor];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs[k * factor] = c.clone();
        }
        QSeries::new(
            self.offset.clone(),
            &self.step / rat(factor as i64, 1),
            coeffs,
        )
    }

    fn check_grid(&self, other: &QSeries) -> Result<()> {
        if self.step != other.step {
            return Err(Error::Shape(format!(
                "q-series steps differ: {} vs {}",
                self.step, other.step
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &QSeries) -> Result<QSeries> {
        self.check_grid(other)?;
        if self.offset != other.offset {
            return Err(Error::Shape("q-series offsets differ".into()));
        }
        let n = self.len().min(other.len());
        let coeffs = (0..n).map(|k| &self.coeffs[k] + &other.coeffs[k]).collect();
        Ok(QSeries::new(self.offset.clone(), self.step.clone(), coeffs))
    }

    pub fn mul(&self, other: &QSeries) -> Result<QSeries> {
        self.check_grid(other)?;
        let n = self.len().min(other.len());
        let mut coeffs = vec![Rat::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate().take(n) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(n - i) {
                coeffs[i + j] += a * b;
            }
        }
        Ok(QSeries::new(
            &self.offset + &other.offset,
            self.step.clone(),
            coeffs,
        ))
    }

    /// Multiplies in place by `(1 + sign q^w)^power`, where `w` is a positive multiple of the step.
    pub fn mul_binomial(&mut self, w: &Rat, sign: i64, power: i64) -> Result<()> {
        let d = w / &self.step;
        if !d.is_integer() || d <= Rat::zero() {
            return Err(Error::Shape(format!(
                "exponent {} not on the grid of step {}",
                w, self.step
            )));
        }
        let d: usize = d
            .to_integer()
            .try_into()
            .map_err(|_| Error::Shape("exponent too large".into()))?;
        let s = rat(sign, 1);
        let n = self.coeffs.len();
        for _ in 0..power.unsigned_abs() {
            if power > 0 {
                for k in (d..n).rev() {
                    let t = &self.coeffs[k - d] * &s;
                    self.coeffs[k] += t;
                }
            } else {
                for k in d..n {
                    let t = &self.coeffs[k - d] * &s;
                    self.coeffs[k] -= t;
                }
            }
        }
        Ok(())
    }

    /// Multiplies by `1 / p(q^w)` for an integer polynomial `p` (coefficients from `t^0`) with `p(0) = 1`.
    pub fn div_poly_at(&mut self, p: &[Int], w: &Rat) -> Result<()> {
        if p.first().is_none_or(|c| !c.is_one()) {
            return Err(Error::Precondition(
                "polynomial must have constant term 1".into(),
            ));
        }
        let d = w / &self.step;
        if !d.is_integer() || d <= Rat::zero() {
            return Err(Error::Shape(format!(
                "exponent {} not on the grid of step {}",
                w, self.step
            )));
        }
        let d: usize = d
            .to_integer()
            .try_into()
            .map_err(|_| Error::Shape("exponent too large".into()))?;
        let n = self.coeffs.len();
        for k in 0..n {
            let mut acc = self.coeffs[k].clone();
            for (j, c) in p.iter().enumerate().skip(1) {
                if j * d > k {
                    break;
                }
                acc -= &self.coeffs[k - j * d] * Rat::from_integer(c.clone());
            }
            self.coeffs[k] = acc;
        }
        Ok(())
    }

    /// Least common multiple of the denominators of every exponent.
    pub fn grid_denominator(&self) -> Int {
        self.offset.denom().lcm(self.step.denom())
    }
}

/// `prod_{k>=1} (1 + sign q^(k*base))^power`, through exponents `< len` on the integer grid.
pub fn euler_product(base: u64, sign: i64, power: i64, len: usize) -> QSeries {
    let mut s = QSeries::one(Rat::one(), len);
    let mut k = base;
    while (k as usize) < len {
        s.mul_binomial(&rat(k as i64, 1), sign, power)
            .expect("on grid");
        k += base;
    }
    s
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = &self.offset + &self.step * rat(k as i64, 1);
            terms.push(if e.is_zero() {
                c.to_string()
            } else {
                format!("{}*q^{}", c, e)
            });
        }
        if terms.is_empty() {
            terms.push("0".into());
        }
        write!(f, "{} + O(q^{})", terms.join(" + "), self.precision())
    }
}
