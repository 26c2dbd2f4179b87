//! Dense integer and rational matrices with exact arithmetic.
//!
//! Everything here is plain row-major storage over `BigInt` / `BigRational`.
//! The normal forms (Hermite, Smith) and the characteristic polynomial are the
//! only algorithms of any size; the rest is bookkeeping.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Int = BigInt;
pub type Rat = BigRational;

pub fn int(v: i64) -> Int {
    BigInt::from(v)
}

pub fn rat(n: i64, d: i64) -> Rat {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(v: &Int) -> Rat {
    BigRational::from_integer(v.clone())
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Int>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Int>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} entries for a {}x{} matrix",
                data.len(),
                rows,
                cols
            )));
        }
        Ok(IntMatrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![Int::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Int::one();
        }
        m
    }

    /// Builds a matrix from nested rows; fails on ragged input.
    pub fn from_rows<T: Into<Int> + Clone>(rows: &[Vec<T>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut data = Vec::with_capacity(r * c);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != c {
                return Err(Error::Shape(format!(
                    "row {} has length {} (expected {})",
                    i,
                    row.len(),
                    c
                )));
            }
            data.extend(row.iter().cloned().map(Into::into));
        }
        Ok(IntMatrix {
            rows: r,
            cols: c,
            data,
        })
    }

    /// Panicking variant for literal tables in code.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let owned: Vec<Vec<i64>> = rows.iter().map(|r| r.to_vec()).collect();
        Self::from_rows(&owned).expect("rectangular literal")
    }

    pub fn from_diagonal(diag: &[Int]) -> Self {
        let n = diag.len();
        let mut m = Self::zeros(n, n);
        for (i, d) in diag.iter().enumerate() {
            m.data[i * n + i] = d.clone();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Int {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Int) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Int] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Int> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Int>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn to_i64_rows(&self) -> Option<Vec<Vec<i64>>> {
        use num_traits::ToPrimitive;
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|x| x.to_i64()).collect())
            .collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Int]) -> Vec<Int> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    fn zip_with(&self, other: &IntMatrix, f: impl Fn(&Int, &Int) -> Int) -> Result<IntMatrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Shape(
                "elementwise operation on different shapes".into(),
            ));
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| f(a, b))
            .collect();
        Ok(IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn add(&self, other: &IntMatrix) -> Result<IntMatrix> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &IntMatrix) -> Result<IntMatrix> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn neg(&self) -> IntMatrix {
        self.scale(&int(-1))
    }

    pub fn scale(&self, k: &Int) -> IntMatrix {
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * k).collect(),
        }
    }

    pub fn pow(&self, k: u64) -> Result<IntMatrix> {
        if !self.is_square() {
            return Err(Error::Shape("power of a non-square matrix".into()));
        }
        let mut acc = Self::identity(self.rows);
        for _ in 0..k {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Self::identity(self.rows)
    }

    pub fn to_rat(&self) -> RatMatrix {
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(rat_int).collect(),
        }
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> Int {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return Int::one();
        }
        let mut a = self.to_rows();
        let mut sign = Int::one();
        let mut prev = Int::one();
        for k in 0..n {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(i, k);
                        sign = -sign;
                    }
                    None => return Int::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        sign * &a[n - 1][n - 1]
    }

    /// Leading principal minors d_1, ..., d_n.
    pub fn leading_minors(&self) -> Vec<Int> {
        (1..=self.rows)
            .map(|k| {
                let data = (0..k).flat_map(|i| self.row(i)[..k].to_vec()).collect();
                IntMatrix {
                    rows: k,
                    cols: k,
                    data,
                }
                .det()
            })
            .collect()
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Rat::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Rat>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Shape("ragged rational matrix".into()));
        }
        Ok(RatMatrix {
            rows: r,
            cols: c,
            data: rows.concat(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rat {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rat) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rat> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Rat>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &RatMatrix) -> Result<RatMatrix> {
        if self.cols != other.rows {
            return Err(Error::Shape(
                "rational matrix product shape mismatch".into(),
            ));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn sub(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a - b)
            .collect();
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn scale(&self, k: &Rat) -> RatMatrix {
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * k).collect(),
        }
    }

    /// Returns the matrix if every entry is integral.
    pub fn to_int(&self) -> Option<IntMatrix> {
        if self.data.iter().all(|x| x.is_integer()) {
            Some(IntMatrix {
                rows: self.rows,
                cols: self.cols,
                data: self.data.iter().map(|x| x.to_integer()).collect(),
            })
        } else {
            None
        }
    }

    /// Least common multiple of all entry denominators.
    pub fn common_denominator(&self) -> Int {
        self.data
            .iter()
            .fold(Int::one(), |acc, x| acc.lcm(x.denom()))
    }

    pub fn inverse(&self) -> Option<RatMatrix> {
        assert_eq!(self.rows, self.cols, "inverse of a non-square matrix");
        let n = self.rows;
        let mut a = self.to_rows();
        let mut inv = Self::identity(n).to_rows();
        for col in 0..n {
            let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
            a.swap(piv, col);
            inv.swap(piv, col);
            let p = a[col][col].clone();
            for j in 0..n {
                a[col][j] = &a[col][j] / &p;
                inv[col][j] = &inv[col][j] / &p;
            }
            for r in 0..n {
                if r != col && !a[r][col].is_zero() {
                    let f = a[r][col].clone();
                    for j in 0..n {
                        let t = &f * &a[col][j];
                        a[r][j] -= t;
                        let t = &f * &inv[col][j];
                        inv[r][j] -= t;
                    }
                }
            }
        }
        RatMatrix::from_rows(&inv).ok()
    }

    pub fn rank(&self) -> usize {
        let mut a = self.to_rows();
        let (m, n) = (self.rows, self.cols);
        let mut r = 0;
        for col in 0..n {
            let Some(piv) = (r..m).find(|&i| !a[i][col].is_zero()) else {
                continue;
            };
            a.swap(piv, r);
            for i in r + 1..m {
                if !a[i][col].is_zero() {
                    let f = &a[i][col] / &a[r][col];
                    for j in col..n {
                        let t = &f * &a[r][j];
                        a[i][j] -= t;
                    }
                }
            }
            r += 1;
            if r == m {
                break;
            }
        }
        r
    }

    /// Characteristic polynomial det(xI - A), coefficients from x^0 upwards,
    /// by the Faddeev-LeVerrier recursion.
    pub fn char_poly(&self) -> Vec<Rat> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut coeffs = vec![Rat::zero(); n + 1];
        coeffs[n] = Rat::one();
        let mut m = Self::zeros(n, n);
        for k in 1..=n {
            // M_k = A M_{k-1} + c_{n-k+1} I, c_{n-k} = -tr(A M_k) / k
            let mut next = self.mul(&m).expect("square");
            for i in 0..n {
                next.data[i * n + i] += &coeffs[n - k + 1];
            }
            let am = self.mul(&next).expect("square");
            let tr: Rat = (0..n).map(|i| am.get(i, i).clone()).sum();
            coeffs[n - k] = -tr / Rat::from_integer(int(k as i64));
            m = next;
        }
        coeffs
    }
}

/// Hermite normal form of the row lattice spanned by `gens`.
///
/// Returns the nonzero rows: upper echelon, positive pivots, entries above
/// each pivot reduced into `[0, pivot)`.
pub fn hnf_rows(gens: &IntMatrix) -> IntMatrix {
    let n = gens.cols();
    let mut a = gens.to_rows();
    let m = a.len();
    let mut r = 0;
    for col in 0..n {
        if r == m {
            break;
        }
        loop {
            let piv = (r..m)
                .filter(|&i| !a[i][col].is_zero())
                .min_by(|&i, &j| a[i][col].abs().cmp(&a[j][col].abs()));
            let Some(piv) = piv else { break };
            a.swap(piv, r);
            let mut clean = true;
            for i in r + 1..m {
                if a[i][col].is_zero() {
                    continue;
                }
                let q = a[i][col].div_floor(&a[r][col]);
                let pivot_row = a[r].clone();
                for (x, p) in a[i].iter_mut().zip(&pivot_row) {
                    *x -= &q * p;
                }
                if !a[i][col].is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if a[r][col].is_zero() {
            continue;
        }
        if a[r][col].is_negative() {
            for x in a[r].iter_mut() {
                *x = -x.clone();
            }
        }
        for i in 0..r {
            let q = a[i][col].div_floor(&a[r][col]);
            if q.is_zero() {
                continue;
            }
            let pivot_row = a[r].clone();
            for (x, p) in a[i].iter_mut().zip(&pivot_row) {
                *x -= &q * p;
            }
        }
        r += 1;
    }
    a.truncate(r);
    if r == 0 {
        return IntMatrix::zeros(0, n);
    }
    IntMatrix::from_rows(&a).expect("rectangular")
}

/// Smith normal form `U A V = D` with unimodular `U`, `V`.
#[derive(Clone, Debug)]
pub struct Smith {
    pub u: IntMatrix,
    pub v: IntMatrix,
    /// Diagonal of `D` (length `min(rows, cols)`), nonnegative, each dividing the next.
    pub diagonal: Vec<Int>,
}

pub fn smith(a: &IntMatrix) -> Smith {
    let (m, n) = (a.rows(), a.cols());
    let mut d = a.to_rows();
    let mut u = IntMatrix::identity(m).to_rows();
    let mut v = IntMatrix::identity(n).to_rows();

    fn row_axpy(rows: &mut [Vec<Int>], dst: usize, src: usize, q: &Int) {
        let s = rows[src].clone();
        for (x, y) in rows[dst].iter_mut().zip(&s) {
            *x -= q * y;
        }
    }
    fn col_axpy(rows: &mut [Vec<Int>], dst: usize, src: usize, q: &Int) {
        for row in rows.iter_mut() {
            let t = q * &row[src];
            row[dst] -= t;
        }
    }
    fn col_swap(rows: &mut [Vec<Int>], a: usize, b: usize) {
        for row in rows.iter_mut() {
            row.swap(a, b);
        }
    }

    for t in 0..m.min(n) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..n {
                    if !d[i][j].is_zero()
                        && best.is_none_or(|(bi, bj)| d[i][j].abs() < d[bi][bj].abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return finish(d, u, v, m, n);
            };
            d.swap(t, pi);
            u.swap(t, pi);
            col_swap(&mut d, t, pj);
            col_swap(&mut v, t, pj);

            let mut done = true;
            for i in t + 1..m {
                if !d[i][t].is_zero() {
                    let q = d[i][t].div_floor(&d[t][t]);
                    row_axpy(&mut d, i, t, &q);
                    row_axpy(&mut u, i, t, &q);
                    if !d[i][t].is_zero() {
                        done = false;
                    }
                }
            }
            for j in t + 1..n {
                if !d[t][j].is_zero() {
                    let q = d[t][j].div_floor(&d[t][t]);
                    col_axpy(&mut d, j, t, &q);
                    col_axpy(&mut v, j, t, &q);
                    if !d[t][j].is_zero() {
                        done = false;
                    }
                }
            }
            if !done {
                continue;
            }
            let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| !d[i][j].is_multiple_of(&d[t][t])));
            if let Some(i) = bad {
                // d[t] += d[i] brings a non-multiple into row t
                let minus_one = int(-1);
                row_axpy(&mut d, t, i, &minus_one);
                row_axpy(&mut u, t, i, &minus_one);
                continue;
            }
            break;
        }
        if d[t][t].is_negative() {
            for x in d[t].iter_mut() {
                *x = -x.clone();
            }
            for x in u[t].iter_mut() {
                *x = -x.clone();
            }
        }
    }
    finish(d, u, v, m, n)
}

fn finish(d: Vec<Vec<Int>>, u: Vec<Vec<Int>>, v: Vec<Vec<Int>>, m: usize, n: usize) -> Smith {
    let diagonal = (0..m.min(n)).map(|i| d[i][i].clone()).collect();
    let u = if m == 0 {
        IntMatrix::zeros(0, 0)
    } else {
        IntMatrix::from_rows(&u).expect("square")
    };
    let v = if n == 0 {
        IntMatrix::zeros(0, 0)
    } else {
        IntMatrix::from_rows(&v).expect("square")
    };
    Smith { u, v, diagonal }
}

/// Multiplies integer polynomials given as coefficient vectors from `x^0` upwards.
/// Basis of the integer kernel `{x in Z^n : A x = 0}` (a saturated sublattice).
pub fn integer_kernel(a: &IntMatrix) -> Vec<Vec<Int>> {
    let s = smith(a);
    let r = s.diagonal.iter().filter(|d| !d.is_zero()).count();
    (r..a.cols()).map(|j| s.v.column(j)).collect()
}

pub fn poly_mul(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rat::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Evaluates the integer polynomial `p` (coefficients from `x^0`) at a square matrix.
pub fn poly_eval_matrix(p: &[Int], m: &IntMatrix) -> IntMatrix {
    let n = m.rows();
    let mut acc = IntMatrix::zeros(n, n);
    for c in p.iter().rev() {
        acc = acc.mul(m).expect("square");
        acc = acc.add(&IntMatrix::identity(n).scale(c)).expect("square");
    }
    acc
}
