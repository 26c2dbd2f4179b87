//! Even positive-definite lattices given by integer Gram matrices.
//!
//! Coordinates are always with respect to the lattice basis. Dual vectors are
//! rational coordinate vectors `G^{-1} y` with `y` integral, so no second basis
//! is ever stored.

use std::fmt;
use std::path::Path;

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{hnf_rows, int, rat_int, smith, Int, IntMatrix, Rat, RatMatrix};

/// Ambient coordinates for a lattice basis: `gram = scale * rows * rows^T`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Embedding {
    pub rows: RatMatrix,
    pub scale: Rat,
}

impl Embedding {
    pub fn gram(&self) -> RatMatrix {
        self.rows
            .mul(&self.rows.transpose())
            .expect("square")
            .scale(&self.scale)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    name: Option<String>,
    gram: IntMatrix,
    det: Int,
    embedding: Option<Embedding>,
}

/// Validates a Gram matrix: square, symmetric, positive definite, even diagonal.
pub fn build_lattice(gram: IntMatrix) -> Result<Lattice> {
    if !gram.is_square() {
        return Err(Error::Shape(format!(
            "gram is {}x{}",
            gram.rows(),
            gram.cols()
        )));
    }
    let n = gram.rows();
    for i in 0..n {
        for j in i + 1..n {
            if gram.get(i, j) != gram.get(j, i) {
                return Err(Error::NotSymmetric { row: i, col: j });
            }
        }
    }
    for (i, m) in gram.leading_minors().into_iter().enumerate() {
        if !m.is_positive() {
            return Err(Error::NotPositiveDefinite {
                index: i + 1,
                minor: m.to_string(),
            });
        }
    }
    for i in 0..n {
        if gram.get(i, i).is_odd() {
            return Err(Error::OddDiagonal { index: i });
        }
    }
    let det = gram.det();
    Ok(Lattice {
        name: None,
        gram,
        det,
        embedding: None,
    })
}

impl Lattice {
    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    /// Attaches ambient coordinates after checking they reproduce the Gram matrix.
    pub fn with_embedding(mut self, embedding: Embedding) -> Result<Self> {
        if embedding.gram() != self.gram.to_rat() {
            return Err(Error::Precondition(
                "embedding does not reproduce the gram matrix".into(),
            ));
        }
        self.embedding = Some(embedding);
        Ok(self)
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn gram(&self) -> &IntMatrix {
        &self.gram
    }

    pub fn rank(&self) -> usize {
        self.gram.rows()
    }

    pub fn det(&self) -> &Int {
        &self.det
    }

    pub fn embedding(&self) -> Option<&Embedding> {
        self.embedding.as_ref()
    }

    /// `(x|y)` for rational coordinate vectors.
    pub fn inner(&self, x: &[Rat], y: &[Rat]) -> Rat {
        let n = self.rank();
        let mut acc = Rat::zero();
        for i in 0..n {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..n {
                let g = self.gram.get(i, j);
                if !g.is_zero() && !y[j].is_zero() {
                    acc += &x[i] * &y[j] * rat_int(g);
                }
            }
        }
        acc
    }

    pub fn inner_int(&self, x: &[Int], y: &[Int]) -> Int {
        let gy = self.gram.mul_vec(y);
        x.iter().zip(&gy).map(|(a, b)| a * b).sum()
    }

    pub fn norm(&self, x: &[Rat]) -> Rat {
        self.inner(x, x)
    }

    pub fn gram_inverse(&self) -> RatMatrix {
        self.gram.to_rat().inverse().expect("positive definite")
    }

    /// Basis of the dual lattice `L*` as rational coordinate rows (rows of `G^{-1}`).
    pub fn dual_basis(&self) -> Vec<Vec<Rat>> {
        self.gram_inverse().to_rows()
    }

    /// True iff the rational coordinate vector lies in `L*`.
    pub fn in_dual(&self, x: &[Rat]) -> bool {
        self.gram.to_rat().mul_vec(x).iter().all(|v| v.is_integer())
    }

    /// Change of basis: the lattice with Gram matrix `T^T G T` (columns of `T` are
    /// the new basis vectors in old coordinates).
    pub fn transform(&self, t: &IntMatrix) -> Result<Lattice> {
        let g = t.transpose().mul(&self.gram)?.mul(t)?;
        build_lattice(g)
    }
}

impl fmt::Display for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} (rank {}, det {})",
            self.name.as_deref().unwrap_or("lattice"),
            self.rank(),
            self.det
        )
    }
}

/// A coset `rep + L` with `rep` given in lattice coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coset {
    pub lattice: Lattice,
    pub rep: Vec<Rat>,
}

impl Coset {
    pub fn new(lattice: Lattice, rep: Vec<Rat>) -> Result<Self> {
        if rep.len() != lattice.rank() {
            return Err(Error::Shape(format!(
                "representative of length {} for rank {}",
                rep.len(),
                lattice.rank()
            )));
        }
        Ok(Coset { lattice, rep })
    }

    pub fn zero(lattice: Lattice) -> Self {
        let n = lattice.rank();
        Coset {
            lattice,
            rep: vec![Rat::zero(); n],
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.rep.iter().all(|x| x.is_integer())
    }
}

/// Invariant factors `d_1 | d_2 | ... | d_k` (all > 1) of a finite abelian group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianInvariants {
    pub factors: Vec<Int>,
}

impl AbelianInvariants {
    pub fn from_diagonal(diag: &[Int]) -> Self {
        let factors = diag
            .iter()
            .map(|d| d.abs())
            .filter(|d| !d.is_one())
            .collect();
        AbelianInvariants { factors }
    }

    pub fn order(&self) -> Int {
        self.factors.iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    /// Elementary abelian 2-group of the given rank?
    pub fn is_elementary_two(&self, rank: usize) -> bool {
        self.factors.len() == rank && self.factors.iter().all(|d| *d == int(2))
    }
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.factors.iter().map(|d| format!("Z/{}", d)).collect();
        write!(f, "{}", parts.join(" x "))
    }
}

/// `L*/L` as the cokernel of the Gram matrix.
pub fn discriminant_group(l: &Lattice) -> AbelianInvariants {
    AbelianInvariants::from_diagonal(&smith(l.gram()).diagonal)
}

/// A full-rank-or-not Z-span of rational vectors in coordinate space `Q^n`.
///
/// Stored as `basis / denom` with `basis` an integer HNF.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatLattice {
    dim: usize,
    denom: Int,
    basis: IntMatrix,
}

impl RatLattice {
    pub fn from_generators(dim: usize, gens: &[Vec<Rat>]) -> Self {
        let denom = gens
            .iter()
            .flatten()
            .fold(Int::one(), |acc, x| acc.lcm(x.denom()));
        let rows: Vec<Vec<Int>> = gens
            .iter()
            .map(|g| {
                assert_eq!(g.len(), dim, "generator length mismatch");
                g.iter()
                    .map(|x| (x * rat_int(&denom)).to_integer())
                    .collect()
            })
            .collect();
        let basis = if rows.is_empty() {
            IntMatrix::zeros(0, dim)
        } else {
            hnf_rows(&IntMatrix::from_rows(&rows).expect("rectangular"))
        };
        let mut out = RatLattice { dim, denom, basis };
        out.normalize();
        out
    }

    pub fn from_int_generators(dim: usize, gens: &[Vec<Int>]) -> Self {
        let r: Vec<Vec<Rat>> = gens
            .iter()
            .map(|g| g.iter().map(rat_int).collect())
            .collect();
        Self::from_generators(dim, &r)
    }

    /// The standard lattice `Z^n`.
    pub fn standard(dim: usize) -> Self {
        RatLattice {
            dim,
            denom: Int::one(),
            basis: IntMatrix::identity(dim),
        }
    }

    /// Uses the columns of a matrix as generators.
    pub fn column_span(m: &RatMatrix) -> Self {
        let gens: Vec<Vec<Rat>> = (0..m.cols()).map(|j| m.column(j)).collect();
        Self::from_generators(m.rows(), &gens)
    }

    // Shrinks the denominator to the minimum.
    fn normalize(&mut self) {
        let g = self
            .basis
            .to_rows()
            .iter()
            .flatten()
            .fold(self.denom.clone(), |acc, x| acc.gcd(x));
        if !g.is_one() && !g.is_zero() {
            self.denom = &self.denom / &g;
            let rows: Vec<Vec<Int>> = self
                .basis
                .to_rows()
                .into_iter()
                .map(|r| r.into_iter().map(|x| x / &g).collect())
                .collect();
            self.basis = if rows.is_empty() {
                IntMatrix::zeros(0, self.dim)
            } else {
                IntMatrix::from_rows(&rows).expect("rect")
            };
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.basis.rows()
    }

    pub fn is_full_rank(&self) -> bool {
        self.rank() == self.dim
    }

    pub fn basis_rows(&self) -> Vec<Vec<Rat>> {
        let d = rat_int(&self.denom);
        self.basis
            .to_rows()
            .into_iter()
            .map(|r| r.iter().map(|x| rat_int(x) / &d).collect())
            .collect()
    }

    /// Volume of a fundamental domain relative to `Z^n` (full rank only).
    pub fn covolume(&self) -> Result<Rat> {
        if !self.is_full_rank() {
            return Err(Error::NotFiniteIndex {
                rank: self.rank(),
                dim: self.dim,
            });
        }
        let det = self.basis.det().abs();
        let dn = num_traits::pow(self.denom.clone(), self.dim);
        Ok(Rat::new(det, dn))
    }

    pub fn contains(&self, v: &[Rat]) -> bool {
        // solve v * denom = t^T basis over Z by back substitution on the HNF
        let d = rat_int(&self.denom);
        let mut rest: Vec<Rat> = v.iter().map(|x| x * &d).collect();
        if rest.iter().any(|x| !x.is_integer()) {
            return false;
        }
        let rows = self.basis.to_rows();
        for row in &rows {
            let Some(p) = row.iter().position(|x| !x.is_zero()) else {
                continue;
            };
            let q = &rest[p] / rat_int(&row[p]);
            if !q.is_integer() {
                return false;
            }
            for (r, b) in rest.iter_mut().zip(row) {
                *r -= &q * rat_int(b);
            }
        }
        rest.iter().all(Zero::is_zero)
    }

    pub fn contains_lattice(&self, other: &RatLattice) -> bool {
        other.basis_rows().iter().all(|v| self.contains(v))
    }

    /// `[self : sub]` when `sub` is a full-rank sublattice.
    pub fn index_of(&self, sub: &RatLattice) -> Result<Int> {
        if !self.contains_lattice(sub) {
            return Err(Error::Precondition("not a sublattice".into()));
        }
        let q = sub.covolume()? / self.covolume()?;
        Ok(q.to_integer())
    }

    /// Invariant factors of `self / sub`.
    pub fn quotient_invariants(&self, sub: &RatLattice) -> Result<AbelianInvariants> {
        if !self.contains_lattice(sub) {
            return Err(Error::Precondition("not a sublattice".into()));
        }
        if !sub.is_full_rank() {
            return Err(Error::NotFiniteIndex {
                rank: sub.rank(),
                dim: sub.dim,
            });
        }
        // coordinates of sub's basis in self's basis
        let own = RatMatrix::from_rows(&self.basis_rows())?;
        let inv_t = own.transpose().inverse().expect("full rank");
        let rows: Vec<Vec<Int>> = sub
            .basis_rows()
            .iter()
            .map(|v| {
                inv_t
                    .mul_vec(v)
                    .into_iter()
                    .map(|x| x.to_integer())
                    .collect()
            })
            .collect();
        let m = IntMatrix::from_rows(&rows)?;
        Ok(AbelianInvariants::from_diagonal(&smith(&m).diagonal))
    }

    pub fn scaled(&self, k: &Rat) -> RatLattice {
        let gens: Vec<Vec<Rat>> = self
            .basis_rows()
            .into_iter()
            .map(|r| r.into_iter().map(|x| x * k).collect())
            .collect();
        RatLattice::from_generators(self.dim, &gens)
    }

    pub fn sum(&self, other: &RatLattice) -> RatLattice {
        let mut gens = self.basis_rows();
        gens.extend(other.basis_rows());
        RatLattice::from_generators(self.dim, &gens)
    }
}

/// `[L : span(gens)]` for integer coordinate vectors.
pub fn sublattice_index(l: &Lattice, gens: &[Vec<Int>]) -> Result<Int> {
    let n = l.rank();
    let sub = RatLattice::from_int_generators(n, gens);
    if !sub.is_full_rank() {
        return Err(Error::NotFiniteIndex {
            rank: sub.rank(),
            dim: n,
        });
    }
    RatLattice::standard(n).index_of(&sub)
}

/// On-disk lattice description.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeFile {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub name: Option<String>,
    pub gram: Vec<Vec<i64>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub frame_num: Option<Vec<Vec<i64>>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub frame_den: Option<i64>,
    /// `[numerator, denominator]` of the scale in `gram = scale * F F^T`; defaults to 1.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub frame_scale: Option<[i64; 2]>,
}

impl LatticeFile {
    pub fn from_lattice(l: &Lattice) -> Result<Self> {
        let gram = l
            .gram()
            .to_i64_rows()
            .ok_or_else(|| Error::Parse("gram entry exceeds i64".into()))?;
        let (frame_num, frame_den, frame_scale) = match l.embedding() {
            None => (None, None, None),
            Some(e) => {
                let den = e.rows.common_denominator();
                let num = e
                    .rows
                    .scale(&rat_int(&den))
                    .to_int()
                    .expect("cleared")
                    .to_i64_rows();
                let scale = [
                    e.scale.numer().to_i64().unwrap_or(0),
                    e.scale.denom().to_i64().unwrap_or(1),
                ];
                (
                    num,
                    den.to_i64(),
                    if e.scale.is_one() { None } else { Some(scale) },
                )
            }
        };
        Ok(LatticeFile {
            name: l.name().map(str::to_owned),
            gram,
            frame_num,
            frame_den,
            frame_scale,
        })
    }

    pub fn into_lattice(self) -> Result<Lattice> {
        let gram = IntMatrix::from_rows(&self.gram)?;
        let mut l = build_lattice(gram)?;
        if let Some(name) = self.name {
            l = l.with_name(name);
        }
        if let Some(num) = self.frame_num {
            let den = int(self.frame_den.unwrap_or(1));
            let rows: Vec<Vec<Rat>> = num
                .iter()
                .map(|r| r.iter().map(|&x| Rat::new(int(x), den.clone())).collect())
                .collect();
            let [sn, sd] = self.frame_scale.unwrap_or([1, 1]);
            let e = Embedding {
                rows: RatMatrix::from_rows(&rows)?,
                scale: Rat::new(int(sn), int(sd)),
            };
            l = l.with_embedding(e)?;
        }
        Ok(l)
    }
}

pub fn read_lattice(path: &Path) -> Result<Lattice> {
    let text = std::fs::read_to_string(path)?;
    let file: LatticeFile = serde_json::from_str(&text)?;
    file.into_lattice()
}

pub fn write_lattice(l: &Lattice, path: &Path) -> Result<()> {
    let text = serde_json::to_string_pretty(&LatticeFile::from_lattice(l)?)?;
    std::fs::write(path, text + "\n")?;
    Ok(())
}

/// Reads a JSON integer matrix `[[int,...],...]`.
pub fn read_matrix(path: &Path) -> Result<IntMatrix> {
    let text = std::fs::read_to_string(path)?;
    let rows: Vec<Vec<i64>> = serde_json::from_str(&text)?;
    IntMatrix::from_rows(&rows)
}
