//! The pinned Barnes-Wall lattice `BW16` and its `t_M t_N` fourvolution.
//!
//! The fixture is regenerated by `cargo run -p olab-core --example gen_bw16`: it is
//! `L_B(RM(1,4))` in Hermite basis, with `M` the sublattice supported on the first
//! eight frame coordinates and `N` the `(-1)`-eigenlattice of the swap `y_i <-> y_{i+8}`.
//! Only the invariants are claimed, not a match with any particular choice elsewhere.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::code::BinaryCode;
use crate::constructions::{construction_b, fourvolution_tmtn, transport};
use crate::error::{Error, Result};
use crate::isometry::Isometry;
use crate::lattice::{Lattice, LatticeFile};
use crate::matrix::{hnf_rows, int, integer_kernel, Int, IntMatrix};

const FIXTURE: &str = include_str!("../data/bw16.json");
const FIXTURE_SHA256: &str = "c6de389a93dc93cda4be180529ef85334d2757cddf9d0f5e6cc2338519531702";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bw16File {
    #[serde(flatten)]
    pub lattice: LatticeFile,
    pub m: Vec<Vec<i64>>,
    pub n: Vec<Vec<i64>>,
}

#[derive(Clone, Debug)]
pub struct Bw16Fixture {
    pub lattice: Lattice,
    pub m: Vec<Vec<Int>>,
    pub n: Vec<Vec<Int>>,
}

impl Bw16Fixture {
    pub fn fourvolution(&self) -> Result<Isometry> {
        Ok(fourvolution_tmtn(&self.lattice, &self.m, &self.n)?.0)
    }

    pub fn involutions(&self) -> Result<(Isometry, Isometry)> {
        let (_, tm, tn) = fourvolution_tmtn(&self.lattice, &self.m, &self.n)?;
        Ok((tm, tn))
    }
}

fn to_i64(rows: &[Vec<Int>]) -> Vec<Vec<i64>> {
    IntMatrix::from_rows(rows)
        .expect("rectangular")
        .to_i64_rows()
        .expect("small entries")
}

/// Rebuilds the fixture contents from Construction B.
pub fn generate() -> Result<Bw16File> {
    let fl = construction_b(&BinaryCode::reed_muller_1_4())?;
    let l = fl.lattice.with_name("BW16");
    let mut swap = IntMatrix::zeros(16, 16);
    let mut tm = IntMatrix::identity(16);
    for i in 0..8 {
        swap.set(i + 8, i, int(1));
        swap.set(i, i + 8, int(1));
        tm.set(i, i, int(-1));
    }
    let id = IntMatrix::identity(16);
    let m = integer_kernel(&transport(&l, &tm)?.matrix().add(&id)?);
    let n = integer_kernel(&transport(&l, &swap)?.matrix().add(&id)?);
    let m = hnf_rows(&IntMatrix::from_rows(&m)?).to_rows();
    let n = hnf_rows(&IntMatrix::from_rows(&n)?).to_rows();
    Ok(Bw16File {
        lattice: LatticeFile::from_lattice(&l)?,
        m: to_i64(&m),
        n: to_i64(&n),
    })
}

fn matrix_json(rows: &[Vec<i64>]) -> String {
    let lines: Vec<String> = rows
        .iter()
        .map(|r| {
            format!(
                "    [{}]",
                r.iter().map(i64::to_string).collect::<Vec<_>>().join(", ")
            )
        })
        .collect();
    format!("[\n{}\n  ]", lines.join(",\n"))
}

/// Serialises with one matrix row per line.
pub fn to_json(f: &Bw16File) -> String {
    let mut parts = Vec::new();
    if let Some(name) = &f.lattice.name {
        parts.push(format!(
            "  \"name\": {}",
            serde_json::to_string(name).expect("string")
        ));
    }
    parts.push(format!("  \"gram\": {}", matrix_json(&f.lattice.gram)));
    if let Some(num) = &f.lattice.frame_num {
        parts.push(format!("  \"frame_num\": {}", matrix_json(num)));
    }
    if let Some(den) = f.lattice.frame_den {
        parts.push(format!("  \"frame_den\": {}", den));
    }
    if let Some([a, b]) = f.lattice.frame_scale {
        parts.push(format!("  \"frame_scale\": [{}, {}]", a, b));
    }
    parts.push(format!("  \"m\": {}", matrix_json(&f.m)));
    parts.push(format!("  \"n\": {}", matrix_json(&f.n)));
    format!("{{\n{}\n}}\n", parts.join(",\n"))
}

pub fn sha256_hex(text: &str) -> String {
    hex::encode(Sha256::digest(text.as_bytes()))
}

pub fn parse(text: &str) -> Result<Bw16Fixture> {
    let file: Bw16File = serde_json::from_str(text)?;
    let to_int = |rows: &[Vec<i64>]| {
        rows.iter()
            .map(|r| r.iter().map(|&x| int(x)).collect())
            .collect()
    };
    let (m, n) = (to_int(&file.m), to_int(&file.n));
    Ok(Bw16Fixture {
        lattice: file.lattice.into_lattice()?,
        m,
        n,
    })
}

/// Loads the committed fixture after verifying its checksum.
pub fn load() -> Result<Bw16Fixture> {
    let found = sha256_hex(FIXTURE);
    if found != FIXTURE_SHA256 {
        return Err(Error::Checksum {
            name: "bw16.json".into(),
            expected: FIXTURE_SHA256.into(),
            found,
        });
    }
    parse(FIXTURE)
}
