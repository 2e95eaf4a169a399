//! Finite binary words.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A letter of the alphabet {0, 1}.
pub type Bit = u8;

/// A finite word over {0, 1}. The empty word is valid.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BinaryWord(Vec<Bit>);

impl BinaryWord {
    pub fn empty() -> Self {
        BinaryWord(Vec::new())
    }

    /// Builds a word from raw letters, rejecting anything other than 0 and 1.
    pub fn from_bits(bits: Vec<Bit>) -> Result<Self> {
        if let Some(pos) = bits.iter().position(|&b| b > 1) {
            return Err(Error::Parse {
                position: pos,
                message: format!("letter {} is not a bit", bits[pos]),
            });
        }
        Ok(BinaryWord(bits))
    }

    pub(crate) fn from_bits_unchecked(bits: Vec<Bit>) -> Self {
        debug_assert!(bits.iter().all(|&b| b <= 1));
        BinaryWord(bits)
    }

    pub fn repeat_letter(letter: Bit, n: usize) -> Self {
        BinaryWord::from_bits_unchecked(vec![letter & 1; n])
    }

    pub fn bits(&self) -> &[Bit] {
        &self.0
    }

    pub fn into_bits(self) -> Vec<Bit> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, i: usize) -> Option<Bit> {
        self.0.get(i).copied()
    }

    pub fn first(&self) -> Option<Bit> {
        self.0.first().copied()
    }

    pub fn last(&self) -> Option<Bit> {
        self.0.last().copied()
    }

    /// |w|_1
    pub fn count_ones(&self) -> usize {
        self.0.iter().filter(|&&b| b == 1).count()
    }

    /// |w|_0
    pub fn count_zeros(&self) -> usize {
        self.len() - self.count_ones()
    }

    /// True when the word uses a single letter (vacuously true for ε).
    pub fn is_constant(&self) -> bool {
        self.0.windows(2).all(|p| p[0] == p[1])
    }

    pub fn has_both_letters(&self) -> bool {
        !self.is_constant()
    }

    pub fn reversed(&self) -> Self {
        BinaryWord(self.0.iter().rev().copied().collect())
    }

    pub fn is_palindrome(&self) -> bool {
        is_palindrome(&self.0)
    }

    pub fn slice(&self, start: usize, end: usize) -> Self {
        BinaryWord(self.0[start..end].to_vec())
    }

    pub fn prefix(&self, n: usize) -> Self {
        self.slice(0, n.min(self.len()))
    }

    pub fn suffix_from(&self, start: usize) -> Self {
        self.slice(start.min(self.len()), self.len())
    }

    pub fn is_prefix_of(&self, other: &BinaryWord) -> bool {
        other.0.starts_with(&self.0)
    }

    pub fn push(&mut self, letter: Bit) {
        self.0.push(letter & 1);
    }

    pub fn concat(&self, other: &BinaryWord) -> Self {
        let mut bits = Vec::with_capacity(self.len() + other.len());
        bits.extend_from_slice(&self.0);
        bits.extend_from_slice(&other.0);
        BinaryWord(bits)
    }

    pub fn concat_all<'a>(parts: impl IntoIterator<Item = &'a BinaryWord>) -> Self {
        BinaryWord(parts.into_iter().flat_map(|w| w.0.iter().copied()).collect())
    }

    /// Circular shift by `k` positions: T^k on finite words.
    pub fn rotate(&self, k: usize) -> Self {
        if self.is_empty() {
            return self.clone();
        }
        let mut bits = self.0.clone();
        bits.rotate_left(k % self.len());
        BinaryWord(bits)
    }

    /// All |w| circular shifts, starting with w itself.
    pub fn rotations(&self) -> Vec<BinaryWord> {
        (0..self.len().max(1)).map(|k| self.rotate(k)).collect()
    }

    /// Whether `ell` is a period: x_i = x_{i+ell} wherever both exist.
    /// Any ell >= |w| is a period.
    pub fn has_period(&self, ell: usize) -> bool {
        ell >= 1 && (ell..self.len()).all(|i| self.0[i] == self.0[i - ell])
    }

    /// Smallest period, computed as |w| minus the longest proper border.
    pub fn minimal_period(&self) -> Result<usize> {
        if self.is_empty() {
            return Err(Error::domain("minimal period of the empty word"));
        }
        let fail = failure_function(&self.0);
        Ok(self.len() - fail[self.len() - 1])
    }

    /// Length of the primitive root of the word.
    pub fn primitive_root_len(&self) -> usize {
        match self.minimal_period() {
            Ok(p) if self.len().is_multiple_of(p) => p,
            _ => self.len(),
        }
    }

    pub fn is_primitive(&self) -> bool {
        !self.is_empty() && self.primitive_root_len() == self.len()
    }

    /// Big-endian integer value of the letters.
    pub fn to_biguint(&self) -> num_bigint::BigUint {
        let mut n = num_bigint::BigUint::default();
        for &b in &self.0 {
            n <<= 1u32;
            if b == 1 {
                n += 1u32;
            }
        }
        n
    }
}

pub(crate) fn is_palindrome(bits: &[Bit]) -> bool {
    bits.iter().eq(bits.iter().rev())
}

/// KMP failure function: `fail[i]` is the length of the longest proper
/// border of `bits[..=i]`.
pub(crate) fn failure_function(bits: &[Bit]) -> Vec<usize> {
    let mut fail = vec![0usize; bits.len()];
    let mut k = 0;
    for i in 1..bits.len() {
        while k > 0 && bits[i] != bits[k] {
            k = fail[k - 1];
        }
        if bits[i] == bits[k] {
            k += 1;
        }
        fail[i] = k;
    }
    fail
}

/// Smallest period of a nonempty word.
pub fn minimal_period(w: &BinaryWord) -> Result<usize> {
    w.minimal_period()
}

impl fmt::Display for BinaryWord {
    /// Letters as a bit-string; the empty word prints as `ε`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("ε");
        }
        for &b in &self.0 {
            f.write_str(if b == 1 { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BinaryWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinaryWord({self})")
    }
}

impl FromStr for BinaryWord {
    type Err = Error;

    /// Accepts `[01]*`; `ε` alone denotes the empty word.
    fn from_str(s: &str) -> Result<Self> {
        if s == "ε" {
            return Ok(BinaryWord::empty());
        }
        let mut bits = Vec::with_capacity(s.len());
        for (pos, c) in s.char_indices() {
            match c {
                '0' => bits.push(0),
                '1' => bits.push(1),
                other => {
                    return Err(Error::Parse {
                        position: pos,
                        message: format!("expected '0' or '1', found {other:?}"),
                    })
                }
            }
        }
        Ok(BinaryWord(bits))
    }
}

impl From<&BinaryWord> for Vec<Bit> {
    fn from(w: &BinaryWord) -> Self {
        w.0.clone()
    }
}

/// Shorthand for tests and examples: panics on malformed input.
pub fn w(s: &str) -> BinaryWord {
    s.parse().expect("malformed word literal")
}
