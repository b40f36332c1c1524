use super::{Alphabet, Symbol};
use crate::error::{Error, Result};

pub fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

/// Complete arithmetic of `GF(p^k)`, `p^k <= 256`.
///
/// Element `i` is the polynomial whose base-`p` digits (lowest first) are the
/// coefficients of `i`. Multiplication goes through exp/log tables for the
/// generator `x` modulo `modulus`, the first monic primitive polynomial of
/// degree `k` in the order of its low coefficients read as a base-`p` number.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldTable {
    p: u32,
    k: u32,
    q: usize,
    /// Coefficients of the monic modulus, lowest degree first (length `k + 1`).
    modulus: Vec<u32>,
    add: Vec<Symbol>,
    mul: Vec<Symbol>,
    neg: Vec<Symbol>,
    exp: Vec<Symbol>,
    log: Vec<u32>,
}

pub fn field_make(p: u32, k: u32) -> Result<FieldTable> {
    FieldTable::new(p, k)
}

fn digits(mut v: usize, p: u32, k: u32) -> Vec<u32> {
    (0..k)
        .map(|_| {
            let d = (v % p as usize) as u32;
            v /= p as usize;
            d
        })
        .collect()
}

fn from_digits(d: &[u32], p: u32) -> usize {
    d.iter().rev().fold(0usize, |acc, &c| acc * p as usize + c as usize)
}

impl FieldTable {
    pub fn new(p: u32, k: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let alphabet = Alphabet::field(p, k)?;
        let q = alphabet.q();

        let (modulus, exp) = (0..q)
            .filter(|tail| tail % p as usize != 0)
            .find_map(|tail| {
                let mut f = digits(tail, p, k);
                f.push(1);
                Self::powers_of_x(p, k, &f).map(|exp| (f, exp))
            })
            .expect("a primitive polynomial exists for every prime power");

        let mut log = vec![0u32; q];
        for (i, &e) in exp.iter().enumerate() {
            log[e as usize] = i as u32;
        }

        let mut add = vec![0; q * q];
        for a in 0..q {
            let da = digits(a, p, k);
            for b in 0..q {
                let db = digits(b, p, k);
                let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[a * q + b] = from_digits(&s, p) as Symbol;
            }
        }
        let neg = (0..q)
            .map(|a| (0..q).find(|&b| add[a * q + b] == 0).unwrap() as Symbol)
            .collect();

        let order = (q - 1) as u32;
        let mut mul = vec![0; q * q];
        for a in 1..q {
            for b in 1..q {
                mul[a * q + b] = exp[((log[a] + log[b]) % order) as usize];
            }
        }

        Ok(Self { p, k, q, modulus, add, mul, neg, exp, log })
    }

    /// `x^0, x^1, …, x^(q-2)` as indices, or `None` if `x` is not a generator
    /// of the multiplicative group modulo `f` (then `f` is not primitive).
    fn powers_of_x(p: u32, k: u32, f: &[u32]) -> Option<Vec<Symbol>> {
        let q = (p as usize).pow(k);
        let mut cur = vec![0u32; k as usize];
        cur[0] = 1;
        let mut out = Vec::with_capacity(q - 1);
        for i in 0..q - 1 {
            let idx = from_digits(&cur, p);
            if i > 0 && idx == 1 {
                return None;
            }
            out.push(idx as Symbol);
            // multiply by x and reduce by the monic f
            let top = cur[k as usize - 1];
            for j in (1..k as usize).rev() {
                cur[j] = cur[j - 1];
            }
            cur[0] = 0;
            for j in 0..k as usize {
                cur[j] = (cur[j] + (p - top % p) * f[j]) % p;
            }
        }
        (from_digits(&cur, p) == 1).then_some(out)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// The modulus written out, e.g. `x^2 + x + 1`.
    pub fn modulus_string(&self) -> String {
        let mut terms = Vec::new();
        for (d, &c) in self.modulus.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let mono = match d {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{d}"),
            };
            terms.push(match (c, d) {
                (_, 0) => c.to_string(),
                (1, _) => mono,
                _ => format!("{c}{mono}"),
            });
        }
        terms.join(" + ")
    }

    pub fn alphabet(&self) -> Alphabet {
        Alphabet::field(self.p, self.k).expect("validated at construction")
    }

    #[inline]
    pub fn add(&self, a: Symbol, b: Symbol) -> Symbol {
        self.add[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn sub(&self, a: Symbol, b: Symbol) -> Symbol {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn neg(&self, a: Symbol) -> Symbol {
        self.neg[a as usize]
    }

    #[inline]
    pub fn mul(&self, a: Symbol, b: Symbol) -> Symbol {
        self.mul[a as usize * self.q + b as usize]
    }

    pub fn inv(&self, a: Symbol) -> Option<Symbol> {
        if a == 0 {
            return None;
        }
        let order = (self.q - 1) as u32;
        Some(self.exp[((order - self.log[a as usize]) % order) as usize])
    }

    pub fn sum(&self, it: impl IntoIterator<Item = Symbol>) -> Symbol {
        it.into_iter().fold(0, |acc, x| self.add(acc, x))
    }

    pub fn elements(&self) -> impl Iterator<Item = Symbol> {
        (0..self.q).map(|x| x as Symbol)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_axioms(f: &FieldTable) {
        let q = f.q() as Symbol;
        for a in 0..q {
            assert_eq!(f.add(a, 0), a);
            assert_eq!(f.mul(a, 1), a);
            assert_eq!(f.mul(a, 0), 0);
            assert_eq!(f.add(a, f.neg(a)), 0);
            if a != 0 {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
            }
            for b in 0..q {
                assert_eq!(f.add(a, b), f.add(b, a));
                assert_eq!(f.mul(a, b), f.mul(b, a));
                for c in 0..q {
                    assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                    assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                    assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                }
            }
        }
    }

    #[test]
    fn axioms_hold_up_to_sixteen() {
        for (p, k) in [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2), (11, 1), (13, 1), (2, 4)] {
            check_axioms(&field_make(p, k).unwrap());
        }
    }

    #[test]
    fn small_values() {
        let gf2 = field_make(2, 1).unwrap();
        assert_eq!(gf2.add(1, 1), 0);
        let gf3 = field_make(3, 1).unwrap();
        assert_eq!(gf3.mul(2, 2), 1);
    }

    /// Enumerates every multiplication on {0,1,2,3} with XOR addition, 0
    /// absorbing and 1 neutral, and keeps those satisfying the field axioms.
    fn gf4_oracle() -> Vec<[[u8; 4]; 4]> {
        let mut found = Vec::new();
        for code in 0..64u32 {
            let (a, b, c) = ((code & 3) as u8, ((code >> 2) & 3) as u8, ((code >> 4) & 3) as u8);
            let mut m = [[0u8; 4]; 4];
            for x in 0..4 {
                m[1][x] = x as u8;
                m[x][1] = x as u8;
            }
            m[2][2] = a;
            m[2][3] = b;
            m[3][2] = b;
            m[3][3] = c;
            let ok = (0..4).all(|x| {
                (0..4).all(|y| {
                    (0..4).all(|z| {
                        m[m[x][y] as usize][z] == m[x][m[y][z] as usize]
                            && m[x][(y ^ z) as usize] == m[x][y] ^ m[x][z]
                    })
                })
            }) && (1..4).all(|x| (1..4).any(|y| m[x][y] == 1));
            if ok {
                found.push(m);
            }
        }
        found
    }

    #[test]
    fn gf4_matches_unique_oracle_table() {
        let oracle = gf4_oracle();
        assert_eq!(oracle.len(), 1);
        let f = field_make(2, 2).unwrap();
        for x in 0..4u8 {
            for y in 0..4u8 {
                assert_eq!(f.mul(x, y), oracle[0][x as usize][y as usize]);
            }
        }
        assert_ne!(f.mul(2, 2), 2);
        assert_ne!(f.mul(3, 3), 3);
        assert_eq!(f.modulus_string(), "x^2 + x + 1");
    }

    #[test]
    fn errors() {
        assert!(matches!(field_make(4, 1), Err(Error::NotPrime(4))));
        assert!(matches!(field_make(2, 9), Err(Error::FieldTooLarge { .. })));
    }
}
