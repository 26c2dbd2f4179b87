//! Binary linear codes given by generator matrices.

use std::collections::BTreeMap;

use crate::error::{Error, Result};

/// Largest dimension for which codewords are enumerated exhaustively.
pub const MAX_BRUTE_FORCE_DIM: usize = 24;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryCode {
    length: usize,
    generator: Vec<Vec<u8>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodeProfile {
    pub weights: BTreeMap<usize, u64>,
    pub doubly_even: bool,
}

impl BinaryCode {
    pub fn new(length: usize, generator: Vec<Vec<u8>>) -> Result<Self> {
        for row in &generator {
            if row.len() != length {
                return Err(Error::Shape(format!(
                    "generator row of length {} in a code of length {}",
                    row.len(),
                    length
                )));
            }
            if row.iter().any(|&b| b > 1) {
                return Err(Error::Parse("generator entries must be 0 or 1".into()));
            }
        }
        if gf2_rank(&generator) != generator.len() {
            return Err(Error::DependentGenerators);
        }
        Ok(BinaryCode { length, generator })
    }

    pub fn zero(length: usize) -> Self {
        BinaryCode {
            length,
            generator: Vec::new(),
        }
    }

    pub fn full(length: usize) -> Self {
        let generator = (0..length).map(|i| unit(length, i)).collect();
        BinaryCode { length, generator }
    }

    pub fn repetition(length: usize) -> Self {
        BinaryCode {
            length,
            generator: vec![vec![1; length]],
        }
    }

    /// The extended Hamming code [8,4,4].
    pub fn extended_hamming() -> Self {
        let rows = ["11110000", "00111100", "00001111", "01010101"];
        Self::from_strings(&rows).expect("independent rows")
    }

    /// First-order Reed-Muller code RM(1,4), a doubly even [16,5,8] code.
    pub fn reed_muller_1_4() -> Self {
        let mut generator = vec![vec![1u8; 16]];
        for bit in 0..4 {
            generator.push((0..16).map(|x| ((x >> bit) & 1) as u8).collect());
        }
        BinaryCode {
            length: 16,
            generator,
        }
    }

    pub fn from_strings(rows: &[&str]) -> Result<Self> {
        let text = rows.join("\n");
        parse_code(&text)
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn dimension(&self) -> usize {
        self.generator.len()
    }

    pub fn generator(&self) -> &[Vec<u8>] {
        &self.generator
    }

    pub fn codewords(&self) -> Result<Vec<Vec<u8>>> {
        let k = self.dimension();
        if k > MAX_BRUTE_FORCE_DIM {
            return Err(Error::DimensionTooLarge(k));
        }
        let mut out = Vec::with_capacity(1 << k);
        for mask in 0u64..(1u64 << k) {
            let mut w = vec![0u8; self.length];
            for (i, row) in self.generator.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    for (a, b) in w.iter_mut().zip(row) {
                        *a ^= b;
                    }
                }
            }
            out.push(w);
        }
        Ok(out)
    }

    pub fn contains(&self, word: &[u8]) -> bool {
        let mut rows = self.generator.clone();
        rows.push(word.to_vec());
        word.len() == self.length && gf2_rank(&rows) == self.dimension()
    }
}

pub fn code_profile(c: &BinaryCode) -> Result<CodeProfile> {
    let mut weights = BTreeMap::new();
    for w in c.codewords()? {
        let wt = w.iter().filter(|&&b| b == 1).count();
        *weights.entry(wt).or_insert(0) += 1;
    }
    let doubly_even = weights.keys().all(|w| w % 4 == 0);
    Ok(CodeProfile {
        weights,
        doubly_even,
    })
}

/// Parses one generator per line written as a `0`/`1` string; blank lines and
/// lines starting with `#` are skipped.
pub fn parse_code(text: &str) -> Result<BinaryCode> {
    let mut rows = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let row = line
            .chars()
            .map(|ch| match ch {
                '0' => Ok(0u8),
                '1' => Ok(1u8),
                other => Err(Error::Parse(format!(
                    "line {}: unexpected character {:?}",
                    lineno + 1,
                    other
                ))),
            })
            .collect::<Result<Vec<u8>>>()?;
        rows.push(row);
    }
    let length = match rows.first() {
        Some(r) => r.len(),
        None => return Err(Error::Parse("code file has no generator rows".into())),
    };
    BinaryCode::new(length, rows)
}

fn unit(n: usize, i: usize) -> Vec<u8> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

fn gf2_rank(rows: &[Vec<u8>]) -> usize {
    let mut m: Vec<Vec<u8>> = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&r| m[r][c] == 1) else {
            continue;
        };
        m.swap(rank, p);
        for r in 0..m.len() {
            if r != rank && m[r][c] == 1 {
                let pivot = m[rank].clone();
                for (a, b) in m[r].iter_mut().zip(&pivot) {
                    *a ^= b;
                }
            }
        }
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hamming_profile() {
        let p = code_profile(&BinaryCode::extended_hamming()).unwrap();
        assert_eq!(p.weights, BTreeMap::from([(0, 1), (4, 14), (8, 1)]));
        assert!(p.doubly_even);
    }

    #[test]
    fn trivial_profiles() {
        let z = code_profile(&BinaryCode::zero(5)).unwrap();
        assert_eq!(z.weights, BTreeMap::from([(0, 1)]));
        assert!(z.doubly_even);
        let f = code_profile(&BinaryCode::full(2)).unwrap();
        assert_eq!(f.weights, BTreeMap::from([(0, 1), (1, 2), (2, 1)]));
        assert!(!f.doubly_even);
    }

    #[test]
    fn reed_muller_profile() {
        let p = code_profile(&BinaryCode::reed_muller_1_4()).unwrap();
        assert_eq!(p.weights, BTreeMap::from([(0, 1), (8, 30), (16, 1)]));
    }

    #[test]
    fn parse_and_reject() {
        let c = parse_code("# rep\n1111\n").unwrap();
        assert_eq!((c.length(), c.dimension()), (4, 1));
        assert_eq!(parse_code("11\n11\n"), Err(Error::DependentGenerators));
        assert!(matches!(parse_code("1a1\n"), Err(Error::Parse(_))));
        assert!(matches!(parse_code("11\n111\n"), Err(Error::Shape(_))));
    }

    #[test]
    fn dimension_guard() {
        assert_eq!(
            BinaryCode::full(25).codewords().unwrap_err(),
            Error::DimensionTooLarge(25)
        );
    }

    #[test]
    fn membership() {
        let h = BinaryCode::extended_hamming();
        assert!(h.contains(&[1, 1, 0, 0, 1, 1, 0, 0]));
        assert!(!h.contains(&[1, 0, 0, 0, 0, 0, 0, 0]));
    }
}
