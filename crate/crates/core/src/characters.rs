//! Graded characters of lattice VOAs, traces of fourvolution lifts, eigenspace
//! dimensions and twisted-module weight data.
//!
//! Characters carry the plain `L(0)`-grading; no `-c/24` shift is applied.

use std::collections::BTreeSet;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::enumerate::{coset_shell_counts, shell_counts, EnumConfig};
use crate::error::{Error, Result};
use crate::isometry::Isometry;
use crate::lattice::RatLattice;
use crate::lattice::{discriminant_group, Coset, Lattice};
use crate::matrix::{rat, rat_int, Int, IntMatrix, Rat};
use crate::qseries::{euler_product, QSeries};

fn check_prec(prec: u64) -> Result<usize> {
    if prec < 2 {
        return Err(Error::Precondition(format!("precision {} < 2", prec)));
    }
    Ok(prec as usize + 1)
}

/// `sum_{x in L} q^{(x|x)/2}` through `q^prec`.
pub fn theta_series(l: &Lattice, prec: u64, cfg: EnumConfig) -> Result<QSeries> {
    let len = check_prec(prec)?;
    let mut coeffs = vec![Rat::zero(); len];
    coeffs[0] = Rat::one();
    if l.rank() > 0 {
        for (norm, count) in shell_counts(l, 2 * prec, cfg)? {
            coeffs[(norm / 2) as usize] = rat(count as i64, 1);
        }
    }
    Ok(QSeries::integral(coeffs))
}

/// `sum_{x in lambda+L} q^{(x|x)/2}` for exponents up to `prec`, on the finest grid the coset needs.
pub fn coset_theta_series(c: &Coset, prec: u64, cfg: EnumConfig) -> Result<QSeries> {
    check_prec(prec)?;
    let l = &c.lattice;
    let gl = l.gram().to_rat().mul_vec(&c.rep);
    let mut den = (l.norm(&c.rep) / rat(2, 1)).denom().clone();
    for x in &gl {
        den = den.lcm(x.denom());
    }
    let step = Rat::new(Int::one(), den.clone());
    let len = (rat(prec as i64, 1) / &step).to_integer() + Int::one();
    let len: usize = len
        .try_into()
        .map_err(|_| Error::Shape("coset grid too fine".into()))?;
    let mut coeffs = vec![Rat::zero(); len];
    if c.is_trivial() {
        coeffs[0] = Rat::one();
    }
    for (norm, count) in coset_shell_counts(c, 2 * prec, cfg)? {
        let k = (norm / rat(2, 1) / &step).to_integer();
        coeffs[usize::try_from(k).expect("index")] = rat(count as i64, 1);
    }
    Ok(QSeries::new(Rat::zero(), step, coeffs))
}

/// `sum_m dim (V_L)_m q^m = theta_L(q) prod_{k>=1} (1-q^k)^{-n}` through `q^prec`.
pub fn graded_dims_vl(l: &Lattice, prec: u64, cfg: EnumConfig) -> Result<QSeries> {
    let theta = theta_series(l, prec, cfg)?;
    let boson = euler_product(1, -1, -(l.rank() as i64), theta.len());
    theta.mul(&boson)
}

/// `prod_{k>=1} det(1 - h q^k)^{-1}`: the trace of a lift of `h` on the Heisenberg part.
pub fn heisenberg_trace(h: &Isometry, len: usize) -> QSeries {
    // det(1 - t h) is the reversed characteristic polynomial of h
    let cp = h.char_poly();
    let p: Vec<Int> = cp.iter().rev().map(|c| c.to_integer()).collect();
    let mut s = QSeries::one(Rat::one(), len);
    for k in 1..len {
        s.div_poly_at(&p, &rat(k as i64, 1)).expect("monic");
    }
    s
}

/// Graded trace of the `i`-th power of the lift on `V_L`, through `q^prec`.
///
/// Only the identity and fixed-point-free powers are supported; for the latter the lattice
/// part contributes only `e^0`.
pub fn graded_trace(g: &Isometry, i: u32, prec: u64, cfg: EnumConfig) -> Result<QSeries> {
    let len = check_prec(prec)?;
    let h = g.pow(i as u64);
    if h.matrix().is_identity() {
        return graded_dims_vl(g.host(), prec, cfg);
    }
    if h.fixed_sublattice_rank() != 0 {
        return Err(Error::Precondition(format!(
            "g^{} has nonzero fixed sublattice",
            i
        )));
    }
    Ok(heisenberg_trace(&h, len))
}

/// `re + im sqrt(-1)` with rational parts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaussRat {
    pub re: Rat,
    pub im: Rat,
}

impl GaussRat {
    pub fn zero() -> Self {
        GaussRat {
            re: Rat::zero(),
            im: Rat::zero(),
        }
    }

    /// `sqrt(-1)^k`.
    pub fn i_pow(k: i64) -> Self {
        match k.rem_euclid(4) {
            0 => GaussRat {
                re: rat(1, 1),
                im: rat(0, 1),
            },
            1 => GaussRat {
                re: rat(0, 1),
                im: rat(1, 1),
            },
            2 => GaussRat {
                re: rat(-1, 1),
                im: rat(0, 1),
            },
            _ => GaussRat {
                re: rat(0, 1),
                im: rat(-1, 1),
            },
        }
    }

    pub fn mul(&self, o: &GaussRat) -> GaussRat {
        GaussRat {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }

    pub fn add(&self, o: &GaussRat) -> GaussRat {
        GaussRat {
            re: &self.re + &o.re,
            im: &self.im + &o.im,
        }
    }

    pub fn scale(&self, k: &Rat) -> GaussRat {
        GaussRat {
            re: &self.re * k,
            im: &self.im * k,
        }
    }
}

/// `dims[m][j] = dim V_L(j)_m` for `m <= prec`, together with the four traces used.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EigenspaceTable {
    pub traces: [QSeries; 4],
    pub dims: Vec<[Int; 4]>,
}

impl EigenspaceTable {
    pub fn dim(&self, j: usize, m: usize) -> Option<&Int> {
        self.dims.get(m).map(|row| &row[j % 4])
    }

    pub fn total(&self, m: usize) -> Option<Int> {
        self.dims.get(m).map(|row| row.iter().sum())
    }
}

/// Fourier inversion `dim V_L(j)_m = 1/4 sum_i sqrt(-1)^{-ij} tr(g^i | V_L)_m`.
pub fn eigenspace_dims(g: &Isometry, prec: u64, cfg: EnumConfig) -> Result<EigenspaceTable> {
    if !g.is_fourvolution() {
        return Err(Error::NotFourvolution);
    }
    let traces = [
        graded_trace(g, 0, prec, cfg)?,
        graded_trace(g, 1, prec, cfg)?,
        graded_trace(g, 2, prec, cfg)?,
        graded_trace(g, 3, prec, cfg)?,
    ];
    let mut dims = Vec::with_capacity(prec as usize + 1);
    for m in 0..=prec as usize {
        let mut row: [Int; 4] = Default::default();
        for (j, slot) in row.iter_mut().enumerate() {
            let mut acc = GaussRat::zero();
            for (i, t) in traces.iter().enumerate() {
                let c = GaussRat {
                    re: t.coeffs()[m].clone(),
                    im: Rat::zero(),
                };
                acc = acc.add(&GaussRat::i_pow(-((i * j) as i64)).mul(&c));
            }
            let v = acc.scale(&rat(1, 4));
            if !v.im.is_zero() || !v.re.is_integer() || v.re.is_negative() {
                return Err(Error::BadEigenspaceDimension(format!(
                    "j={} m={}: {} + {} i",
                    j, m, v.re, v.im
                )));
            }
            *slot = v.re.to_integer();
        }
        dims.push(row);
    }
    Ok(EigenspaceTable { traces, dims })
}

pub fn eigenspace_dim(g: &Isometry, j: usize, m: u64, cfg: EnumConfig) -> Result<Int> {
    if j > 3 {
        return Err(Error::Precondition(format!(
            "eigenspace index {} not in 0..4",
            j
        )));
    }
    let t = eigenspace_dims(g, m.max(2), cfg)?;
    Ok(t.dims[m as usize][j].clone())
}

/// Lowest weight of the twisted Heisenberg module: `sum mult * r(1-r)/4` over eigenvalues `e^{2 pi i r}`.
pub fn vacuum_energy(eigenvalues: &[(Rat, usize)]) -> Rat {
    eigenvalues
        .iter()
        .map(|(r, mult)| r * (Rat::one() - r) / rat(4, 1) * rat(*mult as i64, 1))
        .fold(Rat::zero(), |a, b| a + b)
}

/// `epsilon = 3n/64` for a fourvolution of rank `n` (eigenvalue fractions 1/4, 3/4 each with multiplicity n/2).
pub fn fourvolution_epsilon(n: usize) -> Rat {
    vacuum_energy(&[(rat(1, 4), n / 2), (rat(3, 4), n / 2)])
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistedWeightData {
    pub s: u32,
    pub epsilon: Rat,
    pub index: Int,
    pub dim_t: Int,
    pub top_weight: Rat,
    pub weight_one_dim: Int,
    /// `dim T * q^epsilon * prod (1 - q^{k + r})^{-mult}` for `k + r > 0`.
    pub character: QSeries,
}

fn exact_sqrt(x: &Int) -> Option<Int> {
    let r = x.sqrt();
    (&r * &r == *x).then_some(r)
}

/// The character of `M(1)[h] (x) T`, with grid step `1/|h|`, through exponent `upto` (inclusive).
pub fn twisted_character(h: &Isometry, dim_t: &Int, upto: &Rat) -> Result<QSeries> {
    let order = h.order_of(64)?;
    let ev = h.eigenvalue_multiplicities(64)?;
    let eps = vacuum_energy(&ev);
    let step = rat(1, order as i64);
    let span = ((upto - &eps) / &step).floor().to_integer();
    let len = if span.is_negative() {
        0
    } else {
        usize::try_from(span).expect("len") + 1
    };
    let mut s = QSeries::one(step.clone(), len);
    for (r, mult) in &ev {
        let mut w = if r.is_zero() { Rat::one() } else { r.clone() };
        while w < s.precision() {
            s.mul_binomial(&w, -1, -(*mult as i64))?;
            w += Rat::one();
        }
    }
    Ok(s.shift(&eps).scale(&rat_int(dim_t)))
}

/// Conformal weight, defect dimension and weight-one dimension of the `g^s`-twisted module.
pub fn twisted_weight_data(g: &Isometry, s: u32) -> Result<TwistedWeightData> {
    if !g.is_fourvolution() {
        return Err(Error::NotFourvolution);
    }
    if !(1..=3).contains(&s) {
        return Err(Error::Precondition(format!(
            "twist power {} not in 1..=3",
            s
        )));
    }
    let h = g.pow(s as u64);
    let ev = h.eigenvalue_multiplicities(4)?;
    let epsilon = vacuum_energy(&ev);
    let index = g.index_over_dual_image(s as u64)?;
    let dim_t = exact_sqrt(&index).ok_or_else(|| Error::NotPerfectSquare(index.to_string()))?;
    let character = twisted_character(&h, &dim_t, &rat(2, 1))?;
    let weight_one_dim = character
        .coeff(&Rat::one())
        .expect("within precision")
        .to_integer();
    Ok(TwistedWeightData {
        s,
        top_weight: epsilon.clone(),
        epsilon,
        index,
        dim_t,
        weight_one_dim,
        character,
    })
}

/// Residues mod 1 of the weights occurring in a twisted character.
pub fn weight_residues(q: &QSeries) -> BTreeSet<Rat> {
    let mut out = BTreeSet::new();
    for (k, c) in q.coeffs().iter().enumerate() {
        if !c.is_zero() {
            let e = q.offset() + q.step() * rat(k as i64, 1);
            out.insert(&e - e.floor());
        }
    }
    out
}

/// Even ranks `n <= max_rank` with `3n/64 <= 1` and `3n/64` in `(1/4)Z`.
pub fn case_iii_scan(max_rank: usize) -> Result<Vec<usize>> {
    if max_rank < 2 || max_rank % 2 != 0 {
        return Err(Error::Precondition(format!(
            "max rank {} must be even and at least 2",
            max_rank
        )));
    }
    Ok((2..=max_rank)
        .step_by(2)
        .filter(|&n| {
            let e = fourvolution_epsilon(n);
            e <= Rat::one() && (e * rat(4, 1)).is_integer()
        })
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DetReport {
    /// `|L*/L|` from the Smith form of the Gram matrix.
    pub discriminant_order: Int,
    /// `[L : (1-g)L]` from the Hermite form of the image.
    pub index: Int,
    /// `|det(1-g)|`.
    pub det_one_minus: Int,
    pub discriminant_equals_index: bool,
    pub index_equals_det: bool,
}

impl DetReport {
    pub fn all_equal(&self) -> bool {
        self.discriminant_equals_index && self.index_equals_det
    }
}

pub fn det_one_minus_vs_discriminant(g: &Isometry) -> Result<DetReport> {
    if !g.is_fourvolution() {
        return Err(Error::NotFourvolution);
    }
    let discriminant_order = discriminant_group(g.host()).order();
    let n = g.rank();
    let index = RatLattice::standard(n).index_of(&g.image_one_minus())?;
    let one_minus = IntMatrix::identity(n).sub(g.matrix())?;
    let det_one_minus = one_minus.det().abs();
    Ok(DetReport {
        discriminant_equals_index: discriminant_order == index,
        index_equals_det: index == det_one_minus,
        discriminant_order,
        index,
        det_one_minus,
    })
}
