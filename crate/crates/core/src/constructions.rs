//! Construction A/B lattices, the named-lattice catalog and fourvolution constructors.
//!
//! Construction B is carried out in integer coordinates `y = 2z`, where `z` are the
//! coordinates with respect to the norm-2 frame `alpha_i`; then `(v|w) = y.y'/2`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_traits::Zero;

use crate::code::{code_profile, BinaryCode};
use crate::enumerate::{shell, EnumConfig};
use crate::error::{Error, Result};
use crate::isometry::{verify_isometry, Isometry};
use crate::lattice::{build_lattice, Coset, Embedding, Lattice, RatLattice};
use crate::matrix::{hnf_rows, int, rat, Int, IntMatrix, Rat, RatMatrix};

/// `n` rational vectors in lattice coordinates with `(alpha_i|alpha_j) = 2 delta_ij`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Frame {
    pub vectors: Vec<Vec<Rat>>,
}

impl Frame {
    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn check(&self, l: &Lattice) -> bool {
        self.vectors.iter().enumerate().all(|(i, a)| {
            self.vectors
                .iter()
                .enumerate()
                .all(|(j, b)| l.inner(a, b) == rat(if i == j { 2 } else { 0 }, 1))
        })
    }
}

/// On-disk frame: vectors `num[i] / den` in lattice coordinates.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct FrameFile {
    pub num: Vec<Vec<i64>>,
    pub den: i64,
}

impl FrameFile {
    pub fn from_frame(f: &Frame) -> Result<Self> {
        let m = RatMatrix::from_rows(&f.vectors)?;
        let den = m.common_denominator();
        let num = m
            .scale(&Rat::from_integer(den.clone()))
            .to_int()
            .expect("cleared")
            .to_i64_rows();
        let num = num.ok_or_else(|| Error::Parse("frame entry exceeds i64".into()))?;
        let den =
            i64::try_from(den).map_err(|_| Error::Parse("frame denominator exceeds i64".into()))?;
        Ok(FrameFile { num, den })
    }

    pub fn into_frame(self) -> Result<Frame> {
        if self.den <= 0 {
            return Err(Error::Parse("frame denominator must be positive".into()));
        }
        Ok(Frame {
            vectors: self
                .num
                .iter()
                .map(|r| r.iter().map(|&x| rat(x, self.den)).collect())
                .collect(),
        })
    }
}

#[derive(Clone, Debug)]
pub struct FramedLattice {
    pub lattice: Lattice,
    pub frame: Frame,
}

impl FramedLattice {
    /// The frame vector `alpha_i` as a coset representative.
    pub fn frame_coset(&self, i: usize) -> Result<Coset> {
        Coset::new(self.lattice.clone(), self.frame.vectors[i].clone())
    }
}

fn lattice_from_rows(rows: &IntMatrix, scale: Rat) -> Result<Lattice> {
    let f = rows.to_rat();
    let g = f.mul(&f.transpose())?.scale(&scale);
    let gram = g
        .to_int()
        .ok_or_else(|| Error::Precondition("gram matrix is not integral".into()))?;
    build_lattice(gram)?.with_embedding(Embedding { rows: f, scale })
}

/// Lattice coordinates of an ambient vector, `x = (B^T)^{-1} y`.
pub fn to_lattice_coords(l: &Lattice, ambient: &[Rat]) -> Result<Vec<Rat>> {
    let e = l
        .embedding()
        .ok_or_else(|| Error::Precondition("lattice has no embedding".into()))?;
    let inv = e
        .rows
        .transpose()
        .inverse()
        .ok_or_else(|| Error::Shape("embedding is singular".into()))?;
    Ok(inv.mul_vec(ambient))
}

/// Conjugates an ambient linear map into lattice coordinates, `U = (B^T)^{-1} A B^T`,
/// and validates the result as an isometry.
pub fn transport(l: &Lattice, ambient: &IntMatrix) -> Result<Isometry> {
    let e = l
        .embedding()
        .ok_or_else(|| Error::Precondition("lattice has no embedding".into()))?;
    let bt = e.rows.transpose();
    let inv = bt
        .inverse()
        .ok_or_else(|| Error::Shape("embedding is singular".into()))?;
    let u = inv.mul(&ambient.to_rat())?.mul(&bt)?;
    let u = u
        .to_int()
        .ok_or_else(|| Error::Precondition("ambient map does not preserve the lattice".into()))?;
    verify_isometry(l, &u)
}

fn construction_generators(c: &BinaryCode, extra_alpha_1: bool) -> Result<IntMatrix> {
    let n = c.length();
    if n == 0 {
        return Err(Error::Shape("code of length 0".into()));
    }
    if !code_profile(c)?.doubly_even {
        return Err(Error::NotDoublyEven);
    }
    let mut gens: Vec<Vec<Int>> = c
        .generator()
        .iter()
        .map(|r| r.iter().map(|&b| int(b as i64)).collect())
        .collect();
    for i in 0..n {
        let mut v = vec![Int::zero(); n];
        v[0] += 2;
        v[i] += 2;
        gens.push(v);
    }
    if extra_alpha_1 {
        let mut v = vec![Int::zero(); n];
        v[0] = int(2);
        gens.push(v);
    }
    IntMatrix::from_rows(&gens)
}

/// The vectors `2 e_i` of the ambient frame coordinates, in lattice coordinates.
pub fn ambient_frame(l: &Lattice) -> Result<Frame> {
    let n = l.rank();
    let mut vectors = Vec::with_capacity(n);
    for i in 0..n {
        let mut y = vec![rat(0, 1); n];
        y[i] = rat(2, 1);
        vectors.push(to_lattice_coords(l, &y)?);
    }
    Ok(Frame { vectors })
}

fn framed(rows: IntMatrix, name: String) -> Result<FramedLattice> {
    let lattice = lattice_from_rows(&rows, rat(1, 2))?.with_name(name);
    let frame = ambient_frame(&lattice)?;
    Ok(FramedLattice { lattice, frame })
}

/// `L_B(C)`, spanned by `alpha_c / 2` and `alpha_i + alpha_j`.
pub fn construction_b(c: &BinaryCode) -> Result<FramedLattice> {
    let rows = hnf_rows(&construction_generators(c, false)?);
    framed(
        rows,
        format!("L_B(len {}, dim {})", c.length(), c.dimension()),
    )
}

/// `L_A(C) = L_B(C) + Z alpha_1`.
pub fn construction_a(c: &BinaryCode) -> Result<FramedLattice> {
    let rows = hnf_rows(&construction_generators(c, true)?);
    framed(
        rows,
        format!("L_A(len {}, dim {})", c.length(), c.dimension()),
    )
}

/// `[L_A(C) : L_B(C)]`.
pub fn construction_index(c: &BinaryCode) -> Result<Int> {
    let a =
        RatLattice::from_int_generators(c.length(), &construction_generators(c, true)?.to_rows());
    let b =
        RatLattice::from_int_generators(c.length(), &construction_generators(c, false)?.to_rows());
    a.index_of(&b)
}

/// Pairwise 90 degree rotation `(e_{2k}, e_{2k+1}) -> (e_{2k+1}, -e_{2k})` on an even number of coordinates.
pub fn block_rotation(n: usize) -> IntMatrix {
    assert!(n % 2 == 0, "block rotation needs even dimension");
    let mut j = IntMatrix::zeros(n, n);
    for k in 0..n / 2 {
        j.set(2 * k + 1, 2 * k, int(1));
        j.set(2 * k, 2 * k + 1, int(-1));
    }
    j
}

/// Bourbaki simple roots of E8, doubled so that coordinates are integers.
fn e8_rows() -> IntMatrix {
    let mut rows = vec![
        vec![1, -1, -1, -1, -1, -1, -1, 1],
        vec![2, 2, 0, 0, 0, 0, 0, 0],
    ];
    rows.push(vec![-2, 2, 0, 0, 0, 0, 0, 0]);
    for k in 1..6 {
        let mut r = vec![0; 8];
        r[k] = -2;
        r[k + 1] = 2;
        rows.push(r);
    }
    IntMatrix::from_rows(&rows).expect("rectangular")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CatalogName {
    E8,
    Sqrt2E8,
    Bw16,
    Sqrt2Dn(usize),
}

impl FromStr for CatalogName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let upper = s.trim().to_ascii_uppercase();
        match upper.as_str() {
            "E8" => Ok(CatalogName::E8),
            "SQRT2_E8" => Ok(CatalogName::Sqrt2E8),
            "BW16" => Ok(CatalogName::Bw16),
            _ => {
                let n = upper
                    .strip_prefix("SQRT2_D")
                    .map(|t| t.trim_start_matches('(').trim_end_matches(')'))
                    .and_then(|t| t.parse::<usize>().ok());
                match n {
                    Some(n) if n >= 2 => Ok(CatalogName::Sqrt2Dn(n)),
                    _ => Err(Error::UnknownName(s.to_string())),
                }
            }
        }
    }
}

impl fmt::Display for CatalogName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CatalogName::E8 => write!(f, "E8"),
            CatalogName::Sqrt2E8 => write!(f, "SQRT2_E8"),
            CatalogName::Bw16 => write!(f, "BW16"),
            CatalogName::Sqrt2Dn(n) => write!(f, "SQRT2_D{}", n),
        }
    }
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: CatalogName,
    pub lattice: Lattice,
    pub frame: Option<Frame>,
    pub fourvolution: Option<Isometry>,
}

pub fn catalog(name: CatalogName) -> Result<CatalogEntry> {
    match name {
        CatalogName::E8 => {
            let lattice = lattice_from_rows(&e8_rows(), rat(1, 4))?.with_name("E8");
            let g = transport(&lattice, &block_rotation(8))?;
            Ok(CatalogEntry {
                name,
                lattice,
                frame: None,
                fourvolution: Some(g),
            })
        }
        CatalogName::Sqrt2E8 => {
            let lattice = lattice_from_rows(&e8_rows(), rat(1, 2))?.with_name("SQRT2_E8");
            let g = fourvolution_block(&lattice)?;
            Ok(CatalogEntry {
                name,
                lattice,
                frame: None,
                fourvolution: Some(g),
            })
        }
        CatalogName::Bw16 => {
            let fixture = crate::bw16::load()?;
            let g = fixture.fourvolution()?;
            let frame = ambient_frame(&fixture.lattice)?;
            Ok(CatalogEntry {
                name,
                lattice: fixture.lattice,
                frame: Some(frame),
                fourvolution: Some(g),
            })
        }
        CatalogName::Sqrt2Dn(n) => {
            let fl = construction_b(&BinaryCode::zero(n))?;
            let lattice = fl.lattice.with_name(name.to_string());
            Ok(CatalogEntry {
                name,
                lattice,
                frame: Some(fl.frame),
                fourvolution: None,
            })
        }
    }
}

/// The block rotation of the ambient coordinates, pulled back to `L`.
pub fn fourvolution_block(l: &Lattice) -> Result<Isometry> {
    let g = transport(l, &block_rotation(l.rank()))?;
    if !g.is_fourvolution() {
        return Err(Error::NotFourvolution);
    }
    Ok(g)
}

/// Columns of an integer matrix as lattice-coordinate generators.
fn columns(gens: &[Vec<Int>], n: usize) -> Result<IntMatrix> {
    for g in gens {
        if g.len() != n {
            return Err(Error::Shape(format!(
                "generator of length {} in rank {}",
                g.len(),
                n
            )));
        }
    }
    Ok(IntMatrix::from_rows(gens)?.transpose())
}

/// Checks that the span of `gens` is isometric to `sqrt2 E8` by its invariants
/// (rank 8, gram divisible by 2 with the halved form even unimodular).
pub fn is_sqrt2_e8_sublattice(l: &Lattice, gens: &[Vec<Int>]) -> Result<bool> {
    let basis = hnf_rows(&IntMatrix::from_rows(gens)?);
    if basis.rows() != 8 {
        return Ok(false);
    }
    let b = basis.transpose();
    let gm = b.transpose().mul(l.gram())?.mul(&b)?;
    let ok = (0..8).all(|i| (0..8).all(|j| (gm.get(i, j) % int(2)).is_zero()))
        && (0..8).all(|i| (gm.get(i, i) % int(4)).is_zero())
        && gm.det() == int(256);
    Ok(ok)
}

/// The isometry acting as `-1` on `M` and `+1` on its annihilator in `L`.
pub fn involution_tm(l: &Lattice, m_gens: &[Vec<Int>]) -> Result<Isometry> {
    let n = l.rank();
    if !is_sqrt2_e8_sublattice(l, m_gens)? {
        return Err(Error::Precondition("M is not a sqrt2 E8 sublattice".into()));
    }
    let basis = hnf_rows(&IntMatrix::from_rows(m_gens)?);
    let rows: Vec<Vec<Int>> = basis.to_rows();
    let b = columns(&rows, n)?.to_rat();
    let g = l.gram().to_rat();
    let gm = b.transpose().mul(&g)?.mul(&b)?;
    let p = b
        .mul(&gm.inverse().expect("definite"))?
        .mul(&b.transpose())?
        .mul(&g)?;
    let t = RatMatrix::identity(n).sub(&p.scale(&rat(2, 1)));
    let t = t.to_int().ok_or(Error::InvolutionNotIntegral)?;
    verify_isometry(l, &t)
}

/// `t_M t_N`, after checking `L = M + N`.
pub fn fourvolution_tmtn(
    l: &Lattice,
    m_gens: &[Vec<Int>],
    n_gens: &[Vec<Int>],
) -> Result<(Isometry, Isometry, Isometry)> {
    let mut all = m_gens.to_vec();
    all.extend_from_slice(n_gens);
    let index =
        RatLattice::standard(l.rank()).index_of(&RatLattice::from_int_generators(l.rank(), &all));
    match index {
        Ok(i) if i == int(1) => {}
        Ok(i) => return Err(Error::SumNotLattice(i.to_string())),
        Err(_) => return Err(Error::SumNotLattice("infinite".into())),
    }
    let tm = involution_tm(l, m_gens)?;
    let tn = involution_tm(l, n_gens)?;
    let g = tm.compose(&tn);
    if !g.is_fourvolution() {
        return Err(Error::NotFourvolution);
    }
    Ok((g, tm, tn))
}

/// Closure of the group generated by the given isometries (bounded by `limit` elements).
pub fn group_closure(gens: &[Isometry], limit: usize) -> Result<Vec<IntMatrix>> {
    let Some(first) = gens.first() else {
        return Ok(Vec::new());
    };
    let mut seen: BTreeSet<Vec<Vec<Int>>> = BTreeSet::new();
    let id = IntMatrix::identity(first.rank());
    seen.insert(id.to_rows());
    let mut frontier = vec![id];
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y = g.matrix().mul(&x)?;
            if seen.insert(y.to_rows()) {
                if seen.len() > limit {
                    return Err(Error::SearchBudget(format!(
                        "group closure exceeds {} elements",
                        limit
                    )));
                }
                frontier.push(y);
            }
        }
    }
    Ok(seen
        .into_iter()
        .map(|r| IntMatrix::from_rows(&r).expect("square"))
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootFrame {
    pub frame: Frame,
    /// `g(alpha_i) = sign * alpha_{image}` for each frame line.
    pub line_images: Vec<(usize, i8)>,
    /// Orbits of `g` on lines, as pairs `(i, j)` with `g alpha_i = +-alpha_j`.
    pub orbits: Vec<(usize, usize)>,
    /// Whether `(alpha|g alpha) = 0` for every frame vector.
    pub orthogonal_to_image: bool,
    /// Whether `(1-g) lambda` lies in `L`.
    pub coset_preserved: bool,
}

/// Extracts the `A_1^n` frame of norm-2 vectors in `lambda + L` and records how `g` acts on it.
pub fn coset_root_frame(c: &Coset, g: &Isometry, cfg: EnumConfig) -> Result<RootFrame> {
    let l = &c.lattice;
    let n = l.rank();
    let roots = shell(c, &rat(2, 1), cfg)?;
    if roots.len() != 2 * n {
        return Err(Error::Precondition(format!(
            "coset has {} norm-2 vectors, expected {}",
            roots.len(),
            2 * n
        )));
    }
    let mut reps: Vec<Vec<Rat>> = Vec::new();
    for v in &roots {
        let neg: Vec<Rat> = v.iter().map(|x| -x).collect();
        let rep = if *v <= neg { v.clone() } else { neg };
        if !reps.contains(&rep) {
            reps.push(rep);
        }
    }
    reps.sort();
    if reps.len() != n {
        return Err(Error::NotA1Frame(format!(
            "{} lines for rank {}",
            reps.len(),
            n
        )));
    }
    for i in 0..n {
        for j in i + 1..n {
            let p = l.inner(&reps[i], &reps[j]);
            if !p.is_zero() {
                return Err(Error::NotA1Frame(format!(
                    "(alpha_{}|alpha_{}) = {}",
                    i, j, p
                )));
            }
        }
    }
    let mut line_images = Vec::with_capacity(n);
    let mut orthogonal_to_image = true;
    for a in &reps {
        let ga = g.apply_rat(a);
        let neg: Vec<Rat> = ga.iter().map(|x| -x).collect();
        let pos = reps.iter().position(|r| *r == ga).map(|j| (j, 1i8));
        let image = pos.or_else(|| reps.iter().position(|r| *r == neg).map(|j| (j, -1i8)));
        let Some(image) = image else {
            return Err(Error::Precondition(
                "g does not permute the frame lines".into(),
            ));
        };
        line_images.push(image);
        orthogonal_to_image &= l.inner(a, &ga).is_zero();
    }
    let mut orbits = Vec::new();
    for (i, &(j, _)) in line_images.iter().enumerate() {
        if i <= j {
            orbits.push((i, j));
        }
    }
    let moved: Vec<Rat> = c
        .rep
        .iter()
        .zip(g.apply_rat(&c.rep))
        .map(|(a, b)| a - b)
        .collect();
    let coset_preserved = moved.iter().all(|x| x.is_integer());
    Ok(RootFrame {
        frame: Frame { vectors: reps },
        line_images,
        orbits,
        orthogonal_to_image,
        coset_preserved,
    })
}

/// `[L : sub]` for integer generators in lattice coordinates.
pub fn integral_index(n: usize, gens: &[Vec<Int>]) -> Result<Int> {
    RatLattice::standard(n).index_of(&RatLattice::from_int_generators(n, gens))
}
