//! The obstruction to an extra automorphism of untwisted type.
//!
//! For frame roots `a_1 -> a_2 -> -a_1` under `g`, the element
//! `x = (e_1 + f_1)_{-1}(e_2 + f_2)` is fixed by a suitable lift `g^`, while
//! `sigma(x) = +-h[a_1](-1)h[a_2](-1)` is negated by every lift.

use serde::Serialize;

use super::cocycle::{build_cocycle, CocycleTable};
use super::lift::{build_lift, LiftedIsometry};
use super::sigma::FrameTriality;
use super::vector::LowWeightVector;
use crate::constructions::Frame;
use crate::error::{Error, Result};
use crate::isometry::Isometry;
use crate::lattice::{Lattice, RatLattice};
use crate::matrix::{rat, IntMatrix, Rat, RatMatrix};

pub const IMPOSSIBLE: &str = "untwisted-type extra automorphism impossible";

/// `L + sum Z a_k` with `g` and the frame in its coordinates.
#[derive(Clone, Debug)]
pub struct FrameExtension {
    pub table: CocycleTable,
    /// Basis rows in coordinates of the original lattice.
    pub basis: RatMatrix,
    pub g: IntMatrix,
    pub lines: Vec<Vec<i64>>,
}

fn integral(v: &[Rat], what: &str) -> Result<Vec<i64>> {
    v.iter()
        .map(|x| {
            if !x.is_integer() {
                return Err(Error::Precondition(format!(
                    "{} is not integral on L + frame",
                    what
                )));
            }
            i64::try_from(x.to_integer()).map_err(|_| Error::Shape("coordinate too large".into()))
        })
        .collect()
}

pub fn frame_extension(l: &Lattice, g: &Isometry, frame: &Frame) -> Result<FrameExtension> {
    let n = l.rank();
    if frame.len() != n || !frame.check(l) {
        return Err(Error::NotA1Frame(
            "frame is not an orthogonal norm-2 basis of Q (x) L".into(),
        ));
    }
    let mut gens: Vec<Vec<Rat>> = (0..n)
        .map(|i| (0..n).map(|j| rat(i64::from(i == j), 1)).collect())
        .collect();
    gens.extend(frame.vectors.iter().cloned());
    let basis = RatMatrix::from_rows(&RatLattice::from_generators(n, &gens).basis_rows())?;
    let gram = basis.mul(&l.gram().to_rat())?.mul(&basis.transpose())?;
    let gram = gram
        .to_int()
        .ok_or_else(|| Error::Precondition("L + frame is not integral".into()))?;
    let table = build_cocycle(&gram)?;
    if table.gram().iter().enumerate().any(|(i, r)| r[i] % 2 != 0) {
        return Err(Error::Precondition("L + frame is not even".into()));
    }
    let to_coords = basis
        .transpose()
        .inverse()
        .ok_or_else(|| Error::Shape("singular basis".into()))?;
    let mut cols = Vec::with_capacity(n);
    for j in 0..n {
        cols.push(integral(
            &to_coords.mul_vec(&g.apply_rat(basis.row(j))),
            "g",
        )?);
    }
    let g = IntMatrix::from_rows(
        &(0..n)
            .map(|i| cols.iter().map(|c| c[i]).collect())
            .collect::<Vec<Vec<i64>>>(),
    )?;
    let lines = frame
        .vectors
        .iter()
        .map(|a| integral(&to_coords.mul_vec(a), "frame"))
        .collect::<Result<_>>()?;
    Ok(FrameExtension {
        table,
        basis,
        g,
        lines,
    })
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct WitnessReport {
    /// Frame lines `(k, l)` with `g a_k = a_l` up to the chosen orientation.
    pub pair: (usize, usize),
    pub x_fixed: bool,
    pub sigma_x_eigenvalue: String,
    /// `sigma(x) = sign * h[a_1](-1) h[a_2](-1)`.
    pub sigma_x_sign: i64,
    pub lift_signs_used: Vec<i64>,
    pub twist: u64,
    pub canonical_lift: bool,
    pub lift_order: Option<u32>,
    /// `c_k = eps(a_k, -a_k)` on the two lines.
    pub line_signs: (i64, i64),
    pub x: String,
    pub sigma_x: String,
    pub untwisted_impossible: bool,
    pub conclusion: String,
}

fn ratv(a: &[i64]) -> Vec<Rat> {
    a.iter().map(|&x| rat(x, 1)).collect()
}

/// First lift, in order of twist value, with `g^(x) = x`.
fn fixing_lift(ext: &FrameExtension, x: &LowWeightVector) -> Result<(u64, LiftedIsometry)> {
    let n = ext.table.rank();
    let limit = if n >= 20 { 1u64 << 20 } else { 1u64 << n };
    for twist in 0..limit {
        let lift = build_lift(&ext.g, &ext.table, twist)?;
        if lift.act(x)? == *x {
            return Ok((twist, lift));
        }
    }
    Err(Error::NoLift)
}

/// Runs the witness on the line pair starting at frame line `k`.
pub fn witness_for_line(ext: &FrameExtension, k: usize) -> Result<WitnessReport> {
    let t = &ext.table;
    let a1 = ext.lines[k].clone();
    let g = build_lift(&ext.g, t, 0)?;
    let a2 = g.apply_vec(&a1);
    let minus_a1: Vec<i64> = a1.iter().map(|x| -x).collect();
    if g.apply_vec(&a2) != minus_a1 || t.inner(&a1, &a2) != 0 {
        return Err(Error::Precondition(format!(
            "g does not map a_{} -> a_2 -> -a_{}",
            k, k
        )));
    }
    let l = ext
        .lines
        .iter()
        .position(|b| *b == a2 || b.iter().zip(&a2).all(|(x, y)| *x == -y))
        .ok_or_else(|| Error::Precondition("g does not permute the frame lines".into()))?;
    let mut lines = ext.lines.clone();
    lines[l] = a2.clone();
    let sigma = FrameTriality::new(t, lines)?;
    let x = t.neg_one_product(&sigma.e(k).add(&sigma.f(k)), &sigma.e(l).add(&sigma.f(l)))?;
    let (twist, lift) = fixing_lift(ext, &x)?;
    let y = sigma.sigma(&x)?;
    let h12 = t.hh(&ratv(&a1), &ratv(&a2));
    let sigma_x_sign = if y == h12 {
        1
    } else if y == h12.neg() {
        -1
    } else {
        0
    };
    let gy = lift.act(&y)?;
    let negated = sigma_x_sign != 0 && gy == y.neg();
    let untwisted_impossible = negated;
    Ok(WitnessReport {
        pair: (k, l),
        x_fixed: true,
        sigma_x_eigenvalue: if negated {
            "-1".into()
        } else if gy == y {
            "1".into()
        } else {
            "none".into()
        },
        sigma_x_sign,
        lift_signs_used: lift.basis_signs().to_vec(),
        twist,
        canonical_lift: twist == 0,
        lift_order: lift.order(8)?,
        line_signs: (sigma.signs()[k], sigma.signs()[l]),
        x: x.to_string(),
        sigma_x: y.to_string(),
        untwisted_impossible,
        conclusion: if untwisted_impossible {
            IMPOSSIBLE.into()
        } else {
            "inconclusive".into()
        },
    })
}

/// The witness on the first frame line.
pub fn untwisted_witness(l: &Lattice, g: &Isometry, frame: &Frame) -> Result<WitnessReport> {
    witness_for_line(&frame_extension(l, g, frame)?, 0)
}

/// The witness on every frame line.
pub fn witness_all_lines(l: &Lattice, g: &Isometry, frame: &Frame) -> Result<Vec<WitnessReport>> {
    let ext = frame_extension(l, g, frame)?;
    (0..ext.lines.len())
        .map(|k| witness_for_line(&ext, k))
        .collect()
}
