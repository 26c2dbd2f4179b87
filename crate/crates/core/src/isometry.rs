//! Lattice isometries and the `(1 - g)` sublattice calculus for fourvolutions.

use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::{AbelianInvariants, Lattice, RatLattice};
use crate::matrix::{int, poly_eval_matrix, poly_mul, rat, Int, IntMatrix, Rat};

/// An integer matrix `U` with `U^T G U = G`, acting by `x -> U x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Isometry {
    matrix: IntMatrix,
    host: Lattice,
}

pub fn verify_isometry(l: &Lattice, u: &IntMatrix) -> Result<Isometry> {
    let n = l.rank();
    if u.rows() != n || u.cols() != n {
        return Err(Error::Shape(format!(
            "isometry is {}x{}, lattice rank {}",
            u.rows(),
            u.cols(),
            n
        )));
    }
    let defect = u.transpose().mul(l.gram())?.mul(u)?.sub(l.gram())?;
    for i in 0..n {
        for j in 0..n {
            if !defect.get(i, j).is_zero() {
                return Err(Error::NotIsometry {
                    row: i,
                    col: j,
                    value: defect.get(i, j).to_string(),
                });
            }
        }
    }
    Ok(Isometry {
        matrix: u.clone(),
        host: l.clone(),
    })
}

/// Index data of the chain `L >= (1-g)L >= 2L`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainReport {
    pub index_l_over_image: Int,
    pub index_image_over_2l: Int,
    pub det_one_minus: Int,
    pub rank: usize,
    /// Human-readable list of violated equalities; empty when everything holds.
    pub discrepancies: Vec<String>,
}

impl ChainReport {
    pub fn holds(&self) -> bool {
        self.discrepancies.is_empty()
    }
}

impl fmt::Display for ChainReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[L:(1-g)L] = {}, [(1-g)L:2L] = {}, |det(1-g)| = {}, rank {}",
            self.index_l_over_image, self.index_image_over_2l, self.det_one_minus, self.rank
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Containment {
    Equal,
    /// `(1-g)L*` strictly contains `L`.
    ImageContainsLattice,
    /// `L` strictly contains `(1-g)L*`.
    LatticeContainsImage,
    Incomparable,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoinvariantReport {
    pub equal: bool,
    pub containment: Containment,
    /// Invariants of the larger lattice modulo the smaller, when comparable.
    pub quotient: Option<AbelianInvariants>,
}

impl Isometry {
    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn host(&self) -> &Lattice {
        &self.host
    }

    pub fn rank(&self) -> usize {
        self.host.rank()
    }

    pub fn identity(l: &Lattice) -> Isometry {
        Isometry {
            matrix: IntMatrix::identity(l.rank()),
            host: l.clone(),
        }
    }

    pub fn negation(l: &Lattice) -> Isometry {
        Isometry {
            matrix: IntMatrix::identity(l.rank()).neg(),
            host: l.clone(),
        }
    }

    pub fn apply(&self, x: &[Int]) -> Vec<Int> {
        self.matrix.mul_vec(x)
    }

    pub fn apply_rat(&self, x: &[Rat]) -> Vec<Rat> {
        self.matrix.to_rat().mul_vec(x)
    }

    /// `self . other`: apply `other` first.
    pub fn compose(&self, other: &Isometry) -> Isometry {
        Isometry {
            matrix: self.matrix.mul(&other.matrix).expect("same rank"),
            host: self.host.clone(),
        }
    }

    pub fn pow(&self, k: u64) -> Isometry {
        Isometry {
            matrix: self.matrix.pow(k).expect("square"),
            host: self.host.clone(),
        }
    }

    pub fn inverse(&self) -> Isometry {
        // U^{-1} = G^{-1} U^T G
        let inv = self
            .matrix
            .to_rat()
            .inverse()
            .expect("unimodular")
            .to_int()
            .expect("integral inverse");
        Isometry {
            matrix: inv,
            host: self.host.clone(),
        }
    }

    pub fn order_of(&self, bound: u64) -> Result<u64> {
        let mut acc = self.matrix.clone();
        for k in 1..=bound {
            if acc.is_identity() {
                return Ok(k);
            }
            acc = acc.mul(&self.matrix)?;
        }
        Err(Error::OrderExceedsBound(bound))
    }

    pub fn is_fourvolution(&self) -> bool {
        let sq = self.matrix.mul(&self.matrix).expect("square");
        sq == IntMatrix::identity(self.rank()).neg()
    }

    fn require_fourvolution(&self) -> Result<()> {
        if self.is_fourvolution() {
            Ok(())
        } else {
            Err(Error::NotFourvolution)
        }
    }

    fn one_minus(&self) -> IntMatrix {
        IntMatrix::identity(self.rank())
            .sub(&self.matrix)
            .expect("square")
    }

    /// `(1-g)L` as the span of the images of the basis vectors.
    pub fn image_one_minus(&self) -> RatLattice {
        RatLattice::column_span(&self.one_minus().to_rat())
    }

    pub fn one_minus_g_chain(&self) -> Result<ChainReport> {
        self.require_fourvolution()?;
        let n = self.rank();
        let full = RatLattice::standard(n);
        let image = self.image_one_minus();
        let two_l = full.scaled(&rat(2, 1));
        let index1 = full.index_of(&image)?;
        let mut discrepancies = Vec::new();
        let index2 = match image.index_of(&two_l) {
            Ok(i) => i,
            Err(_) => {
                discrepancies.push("2L is not contained in (1-g)L".to_string());
                Int::zero()
            }
        };
        let det = self.one_minus().det().abs();
        let expected = num_traits::pow(int(2), n / 2);
        if n % 2 != 0 {
            discrepancies.push(format!("odd rank {}", n));
        }
        for (label, v) in [
            ("[L:(1-g)L]", &index1),
            ("[(1-g)L:2L]", &index2),
            ("|det(1-g)|", &det),
        ] {
            if *v != expected {
                discrepancies.push(format!("{} = {} but 2^(n/2) = {}", label, v, expected));
            }
        }
        if &index1 * &index2 != num_traits::pow(int(2), n) {
            discrepancies.push("indices do not multiply to |L/2L|".to_string());
        }
        Ok(ChainReport {
            index_l_over_image: index1,
            index_image_over_2l: index2,
            det_one_minus: det,
            rank: n,
            discrepancies,
        })
    }

    /// `(1 + sign g)^T G (1 + sign g) - 2G`; zero for a fourvolution.
    pub fn scaled_isometry_defect(&self, sign: i64) -> Result<IntMatrix> {
        self.require_fourvolution()?;
        let n = self.rank();
        let m = IntMatrix::identity(n).add(&self.matrix.scale(&int(sign.signum())))?;
        let g = self.host.gram();
        Ok(m.transpose().mul(g)?.mul(&m)?.sub(&g.scale(&int(2)))?)
    }

    pub fn fixed_sublattice_rank(&self) -> usize {
        let n = self.rank();
        let d = self.matrix.sub(&IntMatrix::identity(n)).expect("square");
        n - d.to_rat().rank()
    }

    /// Compares `(1-g)L*` with `L`.
    pub fn coinvariant_equality(&self) -> Result<CoinvariantReport> {
        self.require_fourvolution()?;
        let n = self.rank();
        let m = self.one_minus().to_rat().mul(&self.host.gram_inverse())?;
        let image = RatLattice::column_span(&m);
        let full = RatLattice::standard(n);
        let up = image.contains_lattice(&full);
        let down = full.contains_lattice(&image);
        let (containment, quotient) = match (up, down) {
            (true, true) => (Containment::Equal, None),
            (true, false) => (
                Containment::ImageContainsLattice,
                Some(image.quotient_invariants(&full)?),
            ),
            (false, true) => (
                Containment::LatticeContainsImage,
                Some(full.quotient_invariants(&image)?),
            ),
            (false, false) => (Containment::Incomparable, None),
        };
        Ok(CoinvariantReport {
            equal: containment == Containment::Equal,
            containment,
            quotient,
        })
    }

    /// `[L : (1-g^s)L*]` when `(1-g^s)L*` is a sublattice of `L`.
    pub fn index_over_dual_image(&self, s: u64) -> Result<Int> {
        let n = self.rank();
        let gs = self.pow(s);
        let m = gs.one_minus().to_rat().mul(&self.host.gram_inverse())?;
        let image = RatLattice::column_span(&m);
        let full = RatLattice::standard(n);
        if !full.contains_lattice(&image) {
            return Err(Error::Precondition(format!(
                "(1-g^{})L* is not contained in L",
                s
            )));
        }
        full.index_of(&image)
    }

    pub fn char_poly(&self) -> Vec<Rat> {
        self.matrix.to_rat().char_poly()
    }

    /// Exact comparison of the characteristic polynomial with `(x^2+1)^(n/2)`.
    pub fn char_poly_is_fourvolution_type(&self) -> bool {
        let n = self.rank();
        if n % 2 != 0 {
            return false;
        }
        let base = vec![rat(1, 1), rat(0, 1), rat(1, 1)];
        let mut target = vec![rat(1, 1)];
        for _ in 0..n / 2 {
            target = poly_mul(&target, &base);
        }
        self.char_poly() == target
    }

    /// Multiplicities of the eigenvalues `exp(2 pi i k/m)` on `C (x) L`, keyed by
    /// the reduced fraction `k/m` in `[0, 1)`.
    pub fn eigenvalue_multiplicities(&self, bound: u64) -> Result<Vec<(Rat, usize)>> {
        let m = self.order_of(bound)?;
        let mut out = Vec::new();
        for d in 1..=m {
            if m % d != 0 {
                continue;
            }
            let phi = cyclotomic(d);
            let kernel = self.rank() - poly_eval_matrix(&phi, &self.matrix).to_rat().rank();
            let degree = phi.len() - 1;
            if kernel == 0 {
                continue;
            }
            let each = kernel / degree;
            for k in 0..d {
                if k.gcd(&d) == 1 {
                    out.push((rat(k as i64, d as i64), each));
                }
            }
        }
        out.sort();
        Ok(out)
    }
}

/// Integer coefficients of the `d`-th cyclotomic polynomial, from `x^0` upwards.
pub fn cyclotomic(d: u64) -> Vec<Int> {
    // x^d - 1 divided by every Phi_e, e | d, e < d
    let mut num: Vec<Int> = vec![Int::zero(); d as usize + 1];
    num[0] = int(-1);
    num[d as usize] = Int::one();
    for e in 1..d {
        if d % e == 0 {
            num = poly_div_exact(&num, &cyclotomic(e));
        }
    }
    num
}

fn poly_div_exact(num: &[Int], den: &[Int]) -> Vec<Int> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let lead = den[dd].clone();
    let mut q = vec![Int::zero(); num.len() - dd];
    for i in (0..q.len()).rev() {
        let c = &rem[i + dd] / &lead;
        for (j, dj) in den.iter().enumerate() {
            rem[i + j] -= &c * dj;
        }
        q[i] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero));
    q
}
