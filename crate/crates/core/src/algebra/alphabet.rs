use serde::{Deserialize, Serialize};

use super::{Symbol, MAX_Q};
use crate::error::{Error, Result};

/// How the indices `0..q` of an alphabet should be read.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Structure {
    Plain,
    /// `Q_{2p}` with index `residue + p * bit`.
    TwoIndexed { p: usize },
    /// `GF(p^k)`; index is the base-`p` number of the polynomial coefficients.
    Field { p: u32, k: u32 },
    /// `Q_{q1} × Q_{q2}` with index `a * q2 + b`.
    Pair { q1: usize, q2: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Alphabet {
    q: usize,
    structure: Structure,
}

impl Alphabet {
    pub fn new(q: usize, structure: Structure) -> Result<Self> {
        if !(2..=MAX_Q).contains(&q) {
            return Err(Error::InvalidAlphabet(format!("q = {q} outside 2..={MAX_Q}")));
        }
        let consistent = match structure {
            Structure::Plain => true,
            Structure::TwoIndexed { p } => p >= 2 && q == 2 * p,
            Structure::Field { p, k } => {
                super::is_prime(p) && k >= 1 && (p as usize).checked_pow(k) == Some(q)
            }
            Structure::Pair { q1, q2 } => q1 >= 2 && q2 >= 2 && q1 * q2 == q,
        };
        if !consistent {
            return Err(Error::InvalidAlphabet(format!("q = {q} inconsistent with {structure:?}")));
        }
        Ok(Self { q, structure })
    }

    pub fn plain(q: usize) -> Result<Self> {
        Self::new(q, Structure::Plain)
    }

    pub fn two_indexed(p: usize) -> Result<Self> {
        Self::new(2 * p, Structure::TwoIndexed { p })
    }

    pub fn field(p: u32, k: u32) -> Result<Self> {
        let q = (p as usize)
            .checked_pow(k)
            .filter(|&q| q <= MAX_Q)
            .ok_or(Error::FieldTooLarge { p, k })?;
        Self::new(q, Structure::Field { p, k })
    }

    pub fn pair(q1: usize, q2: usize) -> Result<Self> {
        Self::new(q1 * q2, Structure::Pair { q1, q2 })
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn structure(&self) -> Structure {
        self.structure
    }

    /// The two-indexed lens, when this is `Q_{2p}`.
    pub fn two_indexed_view(&self) -> Option<TwoIndexed> {
        match self.structure {
            Structure::TwoIndexed { p } => Some(TwoIndexed::new(p)),
            _ => None,
        }
    }

    pub fn contains(&self, s: Symbol) -> bool {
        (s as usize) < self.q
    }
}

/// The element `x_ζ` of `Q_{2p}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TwoIndexedElement {
    pub residue: usize,
    pub bit: u8,
}

/// Conversion between indices of `Q_{2p}` and the pairs `x_ζ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TwoIndexed {
    p: usize,
}

impl TwoIndexed {
    pub fn new(p: usize) -> Self {
        assert!(p >= 2 && 2 * p <= MAX_Q, "two-indexed alphabet needs 2 <= p <= 128");
        Self { p }
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn q(&self) -> usize {
        2 * self.p
    }

    /// Index of `residue_bit`; the residue is reduced modulo `p`.
    pub fn index(&self, residue: i64, bit: u8) -> Symbol {
        let r = residue.rem_euclid(self.p as i64) as usize;
        (r + self.p * (bit as usize & 1)) as Symbol
    }

    pub fn element(&self, s: Symbol) -> TwoIndexedElement {
        let s = s as usize;
        TwoIndexedElement { residue: s % self.p, bit: (s / self.p) as u8 }
    }

    /// `(residue, bit)` with the residue as a signed integer, for formula work.
    pub fn split(&self, s: Symbol) -> (i64, u8) {
        let e = self.element(s);
        (e.residue as i64, e.bit)
    }
}

/// `(-1)^bit` as an integer.
pub(crate) fn sign(bit: u8) -> i64 {
    if bit & 1 == 0 {
        1
    } else {
        -1
    }
}
