use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{BinaryQuasigroup, Loop};
use crate::algebra::{sign, Alphabet, Symbol, TwoIndexed};
use crate::error::{Error, Result};

/// Loops that can be named in specs and provenance records.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum BuiltinLoop {
    /// `Z_q`.
    Cyclic { q: usize },
    /// `Z_p × Z_2` on the two-indexed alphabet.
    #[serde(rename = "zpz2")]
    ZpZ2 { p: usize },
    /// `D_p` on the two-indexed alphabet.
    Dihedral { p: usize },
    /// The loop `C_p`.
    Cp { p: usize },
    /// A fixed loop of order 6 that is not a G-loop.
    NonG6,
}

impl BuiltinLoop {
    pub fn build(&self) -> Result<Loop> {
        match *self {
            BuiltinLoop::Cyclic { q } => make_cyclic(q),
            BuiltinLoop::ZpZ2 { p } => make_zp_z2(p),
            BuiltinLoop::Dihedral { p } => make_dihedral(p),
            BuiltinLoop::Cp { p } => make_cp(p),
            BuiltinLoop::NonG6 => Ok(super::non_g_loop_fixture()),
        }
    }
}

impl fmt::Display for BuiltinLoop {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BuiltinLoop::Cyclic { q } => write!(f, "cyclic:{q}"),
            BuiltinLoop::ZpZ2 { p } => write!(f, "zpz2:{p}"),
            BuiltinLoop::Dihedral { p } => write!(f, "dihedral:{p}"),
            BuiltinLoop::Cp { p } => write!(f, "cp:{p}"),
            BuiltinLoop::NonG6 => write!(f, "non-g6"),
        }
    }
}

/// Parses `cp:3`, `cp3`, `dihedral:5`, `zpz2:3`, `cyclic:6`, `non-g6`.
impl FromStr for BuiltinLoop {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().to_ascii_lowercase();
        if s == "non-g6" {
            return Ok(BuiltinLoop::NonG6);
        }
        let s = s.trim_end_matches(')').replace('(', ":");
        let split = match s.rfind(':') {
            Some(i) => i,
            None => s.rfind(|c: char| !c.is_ascii_digit()).map_or(0, |i| i + 1),
        };
        let (name, num) = s.split_at(split);
        let name = name.trim();
        let num: usize = num
            .trim_start_matches(':')
            .trim()
            .parse()
            .map_err(|_| Error::InvalidSpec(format!("cannot parse loop name {s:?}")))?;
        match name {
            "cyclic" | "z" => Ok(BuiltinLoop::Cyclic { q: num }),
            "zpz2" | "zp-z2" => Ok(BuiltinLoop::ZpZ2 { p: num }),
            "dihedral" | "d" => Ok(BuiltinLoop::Dihedral { p: num }),
            "cp" | "c" => Ok(BuiltinLoop::Cp { p: num }),
            _ => Err(Error::InvalidSpec(format!("unknown loop family {name:?}"))),
        }
    }
}

fn two_indexed_loop(p: usize, f: impl Fn(i64, u8, i64, u8) -> (i64, u8)) -> Result<Loop> {
    if p < 2 {
        return Err(Error::InvalidSpec(format!("p = {p} must be at least 2")));
    }
    let alphabet = Alphabet::two_indexed(p)?;
    let view = TwoIndexed::new(p);
    let op = |a: Symbol, b: Symbol| {
        let (x, z) = view.split(a);
        let (y, w) = view.split(b);
        let (r, bit) = f(x, z, y, w);
        view.index(r, bit)
    };
    BinaryQuasigroup::from_fn(alphabet, op)?.into_loop()
}

/// `Z_q` with identity 0.
pub fn make_cyclic(q: usize) -> Result<Loop> {
    let alphabet = Alphabet::plain(q)?;
    BinaryQuasigroup::from_fn(alphabet, |x, y| ((x as usize + y as usize) % q) as Symbol)?.into_loop()
}

/// `x_ζ + y_ξ = (x + y)_{ζ⊕ξ}`.
pub fn make_zp_z2(p: usize) -> Result<Loop> {
    two_indexed_loop(p, |x, z, y, w| (x + y, z ^ w))
}

/// `x_ζ ∘ y_ξ = ((−1)^ξ x + y)_{ζ⊕ξ}`.
pub fn make_dihedral(p: usize) -> Result<Loop> {
    two_indexed_loop(p, |x, z, y, w| (sign(w) * x + y, z ^ w))
}

/// `x_ζ ∗ y_ξ = ((−1)^ξ x + y + ζξ)_{ζ⊕ξ}`.
pub fn make_cp(p: usize) -> Result<Loop> {
    if p % 2 == 0 {
        log::warn!("C_p with even p = {p}: outside the odd-prime setting, built anyway");
    }
    two_indexed_loop(p, |x, z, y, w| (sign(w) * x + y + (z & w) as i64, z ^ w))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(p: usize, r: i64, b: u8) -> Symbol {
        TwoIndexed::new(p).index(r, b)
    }

    #[test]
    fn zp_z2_values() {
        let g = make_zp_z2(3).unwrap();
        assert_eq!(g.op(el(3, 1, 0), el(3, 2, 0)), el(3, 0, 0));
        assert_eq!(g.op(el(3, 1, 1), el(3, 1, 1)), el(3, 2, 0));
        assert_eq!(g.identity(), 0);
    }

    #[test]
    fn dihedral_values() {
        let g = make_dihedral(3).unwrap();
        assert_eq!(g.op(el(3, 1, 1), el(3, 1, 1)), el(3, 0, 0));
        assert_eq!(g.op(el(3, 1, 0), el(3, 1, 1)), el(3, 0, 1));
        assert_eq!(g.op(el(3, 1, 1), el(3, 1, 0)), el(3, 2, 1));
        assert_eq!(g.identity(), 0);
    }

    #[test]
    fn cp_values() {
        let c = make_cp(3).unwrap();
        assert_eq!(c.op(el(3, 1, 1), el(3, 1, 1)), el(3, 1, 0));
        for x in 0..6 {
            assert_eq!(c.op(x, 0), x);
            assert_eq!(c.op(0, x), x);
        }
    }

    #[test]
    fn latin_for_small_primes() {
        for p in [2, 3, 5, 7] {
            make_zp_z2(p).unwrap();
            make_dihedral(p).unwrap();
            make_cp(p).unwrap();
        }
    }

    #[test]
    fn associativity_split() {
        for p in [3, 5] {
            assert!(make_zp_z2(p).unwrap().is_associative());
            assert!(make_dihedral(p).unwrap().is_associative());
            let (x, y, z) = make_cp(p).unwrap().associativity_witness().expect("C_p is not a group");
            let c = make_cp(p).unwrap();
            assert_ne!(c.op(c.op(x, y), z), c.op(x, c.op(y, z)));
        }
        assert!(make_cp(7).unwrap().associativity_witness().is_some());
    }

    #[test]
    fn names_round_trip() {
        for b in [
            BuiltinLoop::Cyclic { q: 6 },
            BuiltinLoop::ZpZ2 { p: 3 },
            BuiltinLoop::Dihedral { p: 5 },
            BuiltinLoop::Cp { p: 3 },
            BuiltinLoop::NonG6,
        ] {
            assert_eq!(b.to_string().parse::<BuiltinLoop>().unwrap(), b);
        }
        assert_eq!("cp3".parse::<BuiltinLoop>().unwrap(), BuiltinLoop::Cp { p: 3 });
        assert!("foo:3".parse::<BuiltinLoop>().is_err());
    }

    #[test]
    fn serde_tag() {
        let s = serde_json::to_string(&BuiltinLoop::Cyclic { q: 2 }).unwrap();
        assert_eq!(s, r#"{"family":"cyclic","q":2}"#);
        let s = serde_json::to_string(&BuiltinLoop::ZpZ2 { p: 3 }).unwrap();
        assert_eq!(s, r#"{"family":"zpz2","p":3}"#);
    }
}
