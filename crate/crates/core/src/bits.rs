//! Fixed-width binary candidate solutions.
//!
//! Bit `q` of the packed word is qubit `q`, so a `BitString` doubles as a
//! basis-state index into a state vector. The textual form lists qubit 0
//! first: `"0101"` has qubits 1 and 3 set.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const MAX_BITS: usize = 64;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitString {
    word: u64,
    len: u8,
}

impl BitString {
    pub fn zeros(len: usize) -> Result<Self> {
        Self::from_word(0, len)
    }

    /// Builds a string from the low `len` bits of `word`. Higher bits are
    /// rejected rather than silently dropped.
    pub fn from_word(word: u64, len: usize) -> Result<Self> {
        if len > MAX_BITS {
            return Err(Error::TooManyBits { got: len, max: MAX_BITS });
        }
        if len < MAX_BITS && word >> len != 0 {
            return Err(Error::InvalidInstance(format!(
                "word {word:#x} does not fit in {len} bits"
            )));
        }
        Ok(Self { word, len: len as u8 })
    }

    pub fn from_bits(bits: &[bool]) -> Result<Self> {
        if bits.len() > MAX_BITS {
            return Err(Error::TooManyBits { got: bits.len(), max: MAX_BITS });
        }
        let word = bits
            .iter()
            .enumerate()
            .fold(0u64, |w, (q, &b)| w | (u64::from(b) << q));
        Ok(Self { word, len: bits.len() as u8 })
    }

    /// Mask with ones exactly at `qubits`.
    pub fn from_qubits(qubits: &[usize], len: usize) -> Result<Self> {
        let mut word = 0u64;
        for &q in qubits {
            if q >= len {
                return Err(Error::InvalidInstance(format!("qubit {q} outside width {len}")));
            }
            word |= 1 << q;
        }
        Self::from_word(word, len)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len as usize
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Packed representation; also the state-vector index.
    #[inline]
    pub fn word(&self) -> u64 {
        self.word
    }

    #[inline]
    pub fn get(&self, q: usize) -> bool {
        q < self.len() && (self.word >> q) & 1 == 1
    }

    pub fn is_zero(&self) -> bool {
        self.word == 0
    }

    pub fn count_ones(&self) -> u32 {
        self.word.count_ones()
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len()).map(move |q| self.get(q))
    }

    /// Qubits set to one, ascending.
    pub fn ones(&self) -> Vec<usize> {
        (0..self.len()).filter(|&q| self.get(q)).collect()
    }

    pub fn xor(&self, other: &BitString) -> Result<BitString> {
        if self.len != other.len {
            return Err(Error::LengthMismatch { left: self.len(), right: other.len() });
        }
        Ok(BitString { word: self.word ^ other.word, len: self.len })
    }

    /// Reads the string as an unsigned integer with qubit 0 as the most
    /// significant bit.
    pub fn to_binary_index(&self) -> u64 {
        (0..self.len()).fold(0u64, |acc, q| (acc << 1) | u64::from(self.get(q)))
    }

    /// Inverse of [`BitString::to_binary_index`].
    pub fn from_binary_index(index: u64, len: usize) -> Result<Self> {
        if len > MAX_BITS {
            return Err(Error::TooManyBits { got: len, max: MAX_BITS });
        }
        if len < MAX_BITS && index >> len != 0 {
            return Err(Error::IndexOutOfRange { index, bits: len });
        }
        let mut word = 0u64;
        for q in 0..len {
            if (index >> (len - 1 - q)) & 1 == 1 {
                word |= 1 << q;
            }
        }
        Ok(Self { word, len: len as u8 })
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.iter() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitString({self})")
    }
}

impl FromStr for BitString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bits = s
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::InvalidInstance(format!("invalid bit character {other:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_bits(&bits)
    }
}

impl Serialize for BitString {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for BitString {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
