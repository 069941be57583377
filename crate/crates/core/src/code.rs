//! Code construction and the polar transform.
//!
//! The generator matrix is the m-fold Kronecker power of `[[1, 0], [1, 1]]`
//! in natural bit order (no bit-reversal permutation). With that ordering a
//! message `u = (u_L, u_R)` maps to `x = ((u_L ^ u_R) G', u_R G')`, so the
//! first half of `u` sees the degraded channel at every split.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{PolarError, Result};

/// Default BEC erasure probability used to rank bit channels.
pub const DEFAULT_DESIGN_ERASURE: f64 = 0.5;

/// A vector of binary values stored one per byte.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u8>", into = "Vec<u8>")]
pub struct BitVector(Vec<u8>);

impl BitVector {
    pub fn zeros(len: usize) -> Self {
        Self(vec![0; len])
    }

    /// Wraps `bits`, rejecting anything other than 0 or 1.
    pub fn from_bits(bits: Vec<u8>) -> Result<Self> {
        if let Some(&b) = bits.iter().find(|&&b| b > 1) {
            return Err(PolarError::NotBinary(b));
        }
        Ok(Self(bits))
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        Self(bits.iter().map(|&b| b as u8).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[u8] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<u8> {
        self.0
    }

    pub fn get(&self, i: usize) -> u8 {
        self.0[i]
    }

    pub fn set(&mut self, i: usize, bit: bool) {
        self.0[i] = bit as u8;
    }

    /// Element-wise XOR. Panics on length mismatch.
    pub fn xor(&self, other: &BitVector) -> BitVector {
        assert_eq!(self.len(), other.len(), "xor of unequal lengths");
        BitVector(self.0.iter().zip(&other.0).map(|(a, b)| a ^ b).collect())
    }
}

impl TryFrom<Vec<u8>> for BitVector {
    type Error = PolarError;

    fn try_from(bits: Vec<u8>) -> Result<Self> {
        Self::from_bits(bits)
    }
}

impl From<BitVector> for Vec<u8> {
    fn from(v: BitVector) -> Self {
        v.0
    }
}

impl fmt::Display for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b == 1 { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for BitVector {
    type Err = PolarError;

    /// Parses a string of `0`/`1` characters, ignoring whitespace.
    fn from_str(s: &str) -> Result<Self> {
        let mut bits = Vec::with_capacity(s.len());
        for c in s.chars() {
            match c {
                '0' => bits.push(0),
                '1' => bits.push(1),
                c if c.is_whitespace() => {}
                c => return Err(PolarError::Parse(format!("unexpected character {c:?} in bit string"))),
            }
        }
        Ok(Self(bits))
    }
}

/// An (n, k) polar code: block length, information length and frozen mask.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeSpec {
    n: usize,
    k: usize,
    m: usize,
    frozen: Vec<bool>,
}

impl CodeSpec {
    /// Builds a code from an explicit frozen mask (`true` = frozen).
    pub fn from_frozen_mask(frozen: Vec<bool>) -> Result<Self> {
        let n = frozen.len();
        let m = log2_block_length(n)?;
        let k = frozen.iter().filter(|&&f| !f).count();
        Ok(Self { n, k, m, frozen })
    }

    /// Builds a code from 0-indexed frozen positions.
    pub fn from_frozen_positions(n: usize, positions: &[usize]) -> Result<Self> {
        log2_block_length(n)?;
        let mut frozen = vec![false; n];
        for &p in positions {
            if p >= n {
                return Err(PolarError::Parse(format!("frozen position {} outside 1..={n}", p + 1)));
            }
            if frozen[p] {
                return Err(PolarError::Parse(format!("frozen position {} listed twice", p + 1)));
            }
            frozen[p] = true;
        }
        Self::from_frozen_mask(frozen)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Number of decoder stages, log2(n).
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn rate(&self) -> f64 {
        self.k as f64 / self.n as f64
    }

    pub fn frozen_mask(&self) -> &[bool] {
        &self.frozen
    }

    pub fn is_frozen(&self, i: usize) -> bool {
        self.frozen[i]
    }

    pub fn frozen_positions(&self) -> Vec<usize> {
        (0..self.n).filter(|&i| self.frozen[i]).collect()
    }

    pub fn info_positions(&self) -> Vec<usize> {
        (0..self.n).filter(|&i| !self.frozen[i]).collect()
    }

    /// Scatters `info` (length k) into a length-n message with zeros at frozen positions.
    pub fn embed(&self, info: &BitVector) -> Result<BitVector> {
        check_len(self.k, info.len())?;
        let mut u = BitVector::zeros(self.n);
        for (&pos, &b) in self.info_positions().iter().zip(info.as_slice()) {
            u.set(pos, b == 1);
        }
        Ok(u)
    }

    /// Gathers the information bits of a length-n message.
    pub fn extract(&self, u: &BitVector) -> Result<BitVector> {
        check_len(self.n, u.len())?;
        Ok(BitVector(self.info_positions().iter().map(|&i| u.get(i)).collect()))
    }

    /// Serializes as the frozen-set file format: a line `n k` followed by the
    /// 1-indexed frozen positions in ascending order.
    pub fn to_frozen_file(&self) -> String {
        let positions: Vec<String> = self.frozen_positions().iter().map(|p| (p + 1).to_string()).collect();
        format!("{} {}\n{}\n", self.n, self.k, positions.join(" "))
    }

    /// Parses the frozen-set file format. Lines starting with `#` are ignored.
    pub fn from_frozen_file(text: &str) -> Result<Self> {
        let mut tokens = text
            .lines()
            .filter(|l| !l.trim_start().starts_with('#'))
            .flat_map(str::split_whitespace);
        let mut next_num = |what: &str| -> Result<usize> {
            let tok = tokens.next().ok_or_else(|| PolarError::Parse(format!("missing {what}")))?;
            tok.parse::<usize>().map_err(|_| PolarError::Parse(format!("bad {what}: {tok:?}")))
        };
        let n = next_num("block length")?;
        let k = next_num("information length")?;
        log2_block_length(n)?;
        if k > n {
            return Err(PolarError::InfoLength { n, k });
        }
        let mut positions = Vec::with_capacity(n - k);
        let mut last = 0;
        for _ in 0..n - k {
            let p = next_num("frozen position")?;
            if p == 0 || p > n {
                return Err(PolarError::Parse(format!("frozen position {p} outside 1..={n}")));
            }
            if p <= last {
                return Err(PolarError::Parse("frozen positions must be strictly ascending".into()));
            }
            last = p;
            positions.push(p - 1);
        }
        if let Some(extra) = tokens.next() {
            return Err(PolarError::Parse(format!("trailing token {extra:?} after {} positions", n - k)));
        }
        Self::from_frozen_positions(n, &positions)
    }
}

pub(crate) fn log2_block_length(n: usize) -> Result<usize> {
    if n < 2 || !n.is_power_of_two() {
        return Err(PolarError::BlockLength(n));
    }
    Ok(n.trailing_zeros() as usize)
}

fn check_len(expected: usize, actual: usize) -> Result<()> {
    if expected != actual {
        return Err(PolarError::LengthMismatch { expected, actual });
    }
    Ok(())
}

/// Bhattacharyya parameters of the n bit channels under the BEC recursion
/// `Z -> (2Z - Z^2, Z^2)`, in natural index order.
pub fn bhattacharyya(n: usize, design_erasure: f64) -> Result<Vec<f64>> {
    log2_block_length(n)?;
    if !(design_erasure > 0.0 && design_erasure < 1.0) {
        return Err(PolarError::DesignErasure(design_erasure));
    }
    let mut z = vec![design_erasure];
    while z.len() < n {
        z = z.iter().flat_map(|&v| [2.0 * v - v * v, v * v]).collect();
    }
    Ok(z)
}

/// Freezes the n - k positions with the largest Bhattacharyya parameter.
/// Equal parameters freeze the lower index first.
pub fn construct_frozen(n: usize, k: usize, design_erasure: f64) -> Result<CodeSpec> {
    let z = bhattacharyya(n, design_erasure)?;
    if k > n {
        return Err(PolarError::InfoLength { n, k });
    }
    CodeSpec::from_frozen_mask(freeze_largest(&z, k))
}

/// Marks the `len - k` largest parameters as frozen, lower index first on ties.
fn freeze_largest(z: &[f64], k: usize) -> Vec<bool> {
    let mut order: Vec<usize> = (0..z.len()).collect();
    order.sort_by(|&a, &b| z[b].total_cmp(&z[a]).then(a.cmp(&b)));
    let mut frozen = vec![false; z.len()];
    for &i in &order[..z.len() - k] {
        frozen[i] = true;
    }
    frozen
}

/// In-place `x <- x G` over GF(2) for a power-of-two slice.
pub(crate) fn polar_transform(bits: &mut [u8]) {
    let n = bits.len();
    let mut stride = 1;
    while stride < n {
        for block in bits.chunks_mut(2 * stride) {
            let (lo, hi) = block.split_at_mut(stride);
            for (a, b) in lo.iter_mut().zip(hi.iter()) {
                *a ^= *b;
            }
        }
        stride *= 2;
    }
}

/// Encodes `u` to `x = u G`. Every frozen position of `u` must be 0.
pub fn encode(spec: &CodeSpec, u: &BitVector) -> Result<BitVector> {
    check_len(spec.n, u.len())?;
    if let Some(i) = (0..spec.n).find(|&i| spec.frozen[i] && u.get(i) != 0) {
        return Err(PolarError::FrozenViolation(i));
    }
    let mut x = u.0.clone();
    polar_transform(&mut x);
    Ok(BitVector(x))
}

/// Applies the transform twice, which must reproduce `u` because `G G = I`.
/// Unlike [`encode`] this ignores the frozen mask, since the image of a
/// valid message is generally not itself frozen-consistent.
pub fn encode_involution_check(spec: &CodeSpec, u: &BitVector) -> Result<BitVector> {
    check_len(spec.n, u.len())?;
    let mut x = u.0.clone();
    polar_transform(&mut x);
    polar_transform(&mut x);
    Ok(BitVector(x))
}
