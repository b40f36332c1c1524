//! Binary quasigroups and loops: the order-`2p` structures `Z_p × Z_2`,
//! `D_p` and `C_p`, principal isotopes, loop isomorphism and the G-loop test.

mod builtin;
mod gloop;
mod iso;
mod latin;

use std::ops::Deref;

use serde::{Deserialize, Serialize};

pub use builtin::{make_cp, make_cyclic, make_dihedral, make_zp_z2, BuiltinLoop};
pub use gloop::{
    find_non_g_loop, g_loop_autotopism, is_g_loop, non_g_loop_fixture, principal_isotope, GLoopVerdict,
    PrincipalIsotope, G_LOOP_ORDER_BOUND,
};
pub use iso::{loop_automorphisms, loop_isomorphic};
pub use latin::{latin_squares, reduced_latin_squares};

use crate::algebra::{Alphabet, Permutation, Symbol};
use crate::code::{MdsCode, NAryQuasigroup, Provenance};
use crate::error::{Error, Result};

/// A Latin square read as a binary operation: `op(x, y) = table[x * q + y]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BinaryQuasigroup {
    alphabet: Alphabet,
    table: Vec<Symbol>,
}

impl BinaryQuasigroup {
    pub fn new(alphabet: Alphabet, table: Vec<Symbol>) -> Result<Self> {
        let q = alphabet.q();
        if table.len() != q * q {
            return Err(Error::NotQuasigroup(format!("table has {} entries, expected {}", table.len(), q * q)));
        }
        let mut row = vec![false; q];
        let mut col = vec![false; q];
        for i in 0..q {
            row.fill(false);
            col.fill(false);
            for j in 0..q {
                let (r, c) = (table[i * q + j] as usize, table[j * q + i] as usize);
                if r >= q || c >= q || row[r] || col[c] {
                    return Err(Error::NotQuasigroup(format!("row/column {i} is not a permutation")));
                }
                row[r] = true;
                col[c] = true;
            }
        }
        Ok(Self { alphabet, table })
    }

    pub fn from_fn(alphabet: Alphabet, f: impl Fn(Symbol, Symbol) -> Symbol) -> Result<Self> {
        let q = alphabet.q();
        let table = (0..q * q).map(|i| f((i / q) as Symbol, (i % q) as Symbol)).collect();
        Self::new(alphabet, table)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn order(&self) -> usize {
        self.alphabet.q()
    }

    pub fn table(&self) -> &[Symbol] {
        &self.table
    }

    #[inline]
    pub fn op(&self, x: Symbol, y: Symbol) -> Symbol {
        self.table[x as usize * self.order() + y as usize]
    }

    /// `y ↦ x·y`.
    pub fn left_translation(&self, x: Symbol) -> Permutation {
        Permutation::from_fn(self.order(), |y| self.op(x, y)).expect("rows of a Latin square")
    }

    /// `x ↦ x·y`.
    pub fn right_translation(&self, y: Symbol) -> Permutation {
        Permutation::from_fn(self.order(), |x| self.op(x, y)).expect("columns of a Latin square")
    }

    pub fn identity_element(&self) -> Option<Symbol> {
        let q = self.order() as Symbol;
        (0..q).find(|&e| (0..q).all(|x| self.op(x, e) == x && self.op(e, x) == x))
    }

    /// A triple with `(x·y)·z ≠ x·(y·z)`, if any.
    pub fn associativity_witness(&self) -> Option<(Symbol, Symbol, Symbol)> {
        let q = self.order() as Symbol;
        for x in 0..q {
            for y in 0..q {
                let xy = self.op(x, y);
                for z in 0..q {
                    if self.op(xy, z) != self.op(x, self.op(y, z)) {
                        return Some((x, y, z));
                    }
                }
            }
        }
        None
    }

    pub fn is_associative(&self) -> bool {
        self.associativity_witness().is_none()
    }

    pub fn as_nary(&self) -> NAryQuasigroup {
        NAryQuasigroup::new(self.alphabet, 2, self.table.clone()).expect("validated Latin square")
    }

    /// The graph `{(x, y, x·y)}`.
    pub fn graph(&self) -> MdsCode {
        self.as_nary().graph_of()
    }

    pub fn into_loop(self) -> Result<Loop> {
        match self.identity_element() {
            Some(identity) => Ok(Loop { quasigroup: self, identity }),
            None => Err(Error::NotQuasigroup("no two-sided identity element".into())),
        }
    }

    /// The value table of `(x, y) ↦ φ(f(ξx, ψy))`.
    pub fn isotope(&self, xi: &Permutation, psi: &Permutation, phi: &Permutation) -> BinaryQuasigroup {
        let f = |x, y| phi.apply(self.op(xi.apply(x), psi.apply(y)));
        BinaryQuasigroup::from_fn(self.alphabet, f).expect("isotope of a Latin square")
    }
}

/// A binary quasigroup with a two-sided identity.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Loop {
    quasigroup: BinaryQuasigroup,
    identity: Symbol,
}

impl Loop {
    pub fn identity(&self) -> Symbol {
        self.identity
    }

    pub fn quasigroup(&self) -> &BinaryQuasigroup {
        &self.quasigroup
    }

    /// Graph with the given provenance recorded.
    pub(crate) fn graph_with(&self, provenance: Provenance) -> MdsCode {
        self.quasigroup.as_nary().graph_with(provenance)
    }

    /// Two-sided inverse, for associative loops.
    pub fn inverse(&self, x: Symbol) -> Symbol {
        let q = self.order() as Symbol;
        (0..q).find(|&y| self.op(x, y) == self.identity).expect("Latin row contains the identity")
    }
}

impl Deref for Loop {
    type Target = BinaryQuasigroup;

    fn deref(&self) -> &BinaryQuasigroup {
        &self.quasigroup
    }
}

/// Cayley table with its identity, as stored in JSON.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LoopFile {
    pub identity: Symbol,
    pub table: Vec<Vec<Symbol>>,
}

impl LoopFile {
    pub fn from_loop(l: &Loop) -> Self {
        let q = l.order();
        Self { identity: l.identity, table: l.table().chunks(q).map(|r| r.to_vec()).collect() }
    }

    pub fn into_loop(self) -> Result<Loop> {
        let q = self.table.len();
        if self.table.iter().any(|r| r.len() != q) {
            return Err(Error::NotQuasigroup("table is not square".into()));
        }
        let l = BinaryQuasigroup::new(Alphabet::plain(q)?, self.table.concat())?.into_loop()?;
        if l.identity != self.identity {
            return Err(Error::NotQuasigroup(format!(
                "declared identity {} but the identity is {}",
                self.identity, l.identity
            )));
        }
        Ok(l)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn loop_file_round_trip() {
        let l = make_cp(3).unwrap();
        let json = serde_json::to_string(&LoopFile::from_loop(&l)).unwrap();
        let back: LoopFile = serde_json::from_str(&json).unwrap();
        assert_eq!(back.into_loop().unwrap().table(), l.table());
    }

    #[test]
    fn loop_file_wrong_identity() {
        let l = make_cyclic(3).unwrap();
        let mut f = LoopFile::from_loop(&l);
        f.identity = 1;
        assert!(f.into_loop().is_err());
    }

    #[test]
    fn quasigroup_without_identity() {
        // x - y mod 3 has no two-sided identity
        let q = BinaryQuasigroup::from_fn(Alphabet::plain(3).unwrap(), |x, y| (x + 3 - y) % 3).unwrap();
        assert!(q.into_loop().is_err());
    }
}
