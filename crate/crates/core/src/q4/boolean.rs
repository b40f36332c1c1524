use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A Boolean function of `n ≤ 16` variables as its truth table; bit `i - 1`
/// of the table index is `x_i`. Serialised as the table of 0/1 values.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u8>", into = "Vec<u8>")]
pub struct BooleanFunction {
    n: usize,
    table: Vec<u8>,
}

impl TryFrom<Vec<u8>> for BooleanFunction {
    type Error = Error;

    fn try_from(table: Vec<u8>) -> Result<Self> {
        if !table.len().is_power_of_two() || table.len() > 1 << 16 {
            return Err(Error::InvalidSpec(format!("truth table of length {}", table.len())));
        }
        if table.iter().any(|&b| b > 1) {
            return Err(Error::InvalidSpec("truth table entries must be 0 or 1".into()));
        }
        Ok(Self { n: table.len().trailing_zeros() as usize, table })
    }
}

impl From<BooleanFunction> for Vec<u8> {
    fn from(f: BooleanFunction) -> Self {
        f.table
    }
}

fn mobius(v: &mut [u8]) {
    let mut h = 1;
    while h < v.len() {
        for i in 0..v.len() {
            if i & h != 0 {
                v[i] ^= v[i ^ h];
            }
        }
        h <<= 1;
    }
}

impl BooleanFunction {
    pub fn zero(n: usize) -> Self {
        Self { n, table: vec![0; 1 << n] }
    }

    pub fn from_fn(n: usize, f: impl Fn(&[u8]) -> u8) -> Self {
        let mut x = vec![0u8; n];
        let table = (0..1usize << n)
            .map(|m| {
                for (i, xi) in x.iter_mut().enumerate() {
                    *xi = ((m >> i) & 1) as u8;
                }
                f(&x) & 1
            })
            .collect();
        Self { n, table }
    }

    /// From the ANF coefficients, indexed by monomial bitmask.
    pub fn from_anf(n: usize, mut anf: Vec<u8>) -> Self {
        assert_eq!(anf.len(), 1 << n, "ANF of {n} variables");
        mobius(&mut anf);
        Self { n, table: anf }
    }

    /// Sums (`+`, `^` or `⊕`) of monomials such as `x1x2`, `x3*x4`, `1` or `0`.
    pub fn parse(n: usize, s: &str) -> Result<Self> {
        let mut anf = vec![0u8; 1 << n];
        let bad = |m: String| Error::InvalidSpec(format!("r = {s:?}: {m}"));
        for term in s.split(['+', '^', '⊕']) {
            let term: String = term.chars().filter(|c| !c.is_whitespace() && *c != '*').collect();
            match term.as_str() {
                "" => return Err(bad("empty term".into())),
                "0" => continue,
                "1" => {
                    anf[0] ^= 1;
                    continue;
                }
                _ => {}
            }
            let mut parts = term.split('x');
            if parts.next() != Some("") {
                return Err(bad(format!("bad term {term:?}")));
            }
            let mut mask = 0usize;
            for v in parts {
                match v.parse::<usize>() {
                    Ok(i) if (1..=n).contains(&i) => mask |= 1 << (i - 1),
                    _ => return Err(bad(format!("bad variable x{v}"))),
                }
            }
            anf[mask] ^= 1;
        }
        Ok(Self::from_anf(n, anf))
    }

    pub fn arity(&self) -> usize {
        self.n
    }

    pub fn table(&self) -> &[u8] {
        &self.table
    }

    pub fn eval(&self, x: &[u8]) -> u8 {
        let m = x.iter().enumerate().fold(0usize, |m, (i, &b)| m | (((b & 1) as usize) << i));
        self.table[m]
    }

    /// ANF coefficients, indexed by monomial bitmask.
    pub fn anf(&self) -> Vec<u8> {
        let mut v = self.table.clone();
        mobius(&mut v);
        v
    }

    /// Monomials with nonzero coefficient, as sorted 0-based variable lists.
    pub fn monomials(&self) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = self
            .anf()
            .iter()
            .enumerate()
            .filter(|(_, &c)| c == 1)
            .map(|(m, _)| (0..self.n).filter(|i| m >> i & 1 == 1).collect())
            .collect();
        out.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
        out
    }

    /// Degree of the ANF; 0 for constants.
    pub fn degree(&self) -> usize {
        self.anf()
            .iter()
            .enumerate()
            .filter(|(_, &c)| c == 1)
            .map(|(m, _)| m.count_ones() as usize)
            .max()
            .unwrap_or(0)
    }

    /// The function of `x_1, …, x_{n−1}` obtained by substituting
    /// `x_n = x_1 ⊕ ⋯ ⊕ x_{n−1}`.
    pub fn reduced(&self) -> BooleanFunction {
        assert!(self.n >= 1, "nothing to eliminate");
        let k = self.n - 1;
        BooleanFunction::from_fn(k, |x| {
            let last = x.iter().fold(0, |a, &b| a ^ b);
            let mut full = x.to_vec();
            full.push(last);
            self.eval(&full)
        })
    }

    /// This function of `n` variables padded with unused ones up to `m`.
    pub fn extend(&self, m: usize) -> BooleanFunction {
        assert!(m >= self.n);
        let mask = (1usize << self.n) - 1;
        Self { n: m, table: (0..1usize << m).map(|i| self.table[i & mask]).collect() }
    }
}

impl fmt::Display for BooleanFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .monomials()
            .into_iter()
            .map(|m| {
                if m.is_empty() {
                    "1".to_string()
                } else {
                    m.iter().map(|i| format!("x{}", i + 1)).collect()
                }
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" ⊕ "))
        }
    }
}

impl fmt::Debug for BooleanFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BooleanFunction({}; {})", self.n, self)
    }
}
