use std::fmt;

use serde::{Deserialize, Serialize};

use super::{Symbol, MAX_Q};
use crate::error::{Error, Result};

/// A bijection of `0..q`, stored by its images.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<Symbol>", into = "Vec<Symbol>")]
pub struct Permutation(Vec<Symbol>);

impl Permutation {
    pub fn identity(q: usize) -> Self {
        assert!(q <= MAX_Q);
        Self((0..q).map(|x| x as Symbol).collect())
    }

    pub fn from_images(images: Vec<Symbol>) -> Result<Self> {
        if images.len() > MAX_Q {
            return Err(Error::NotAPermutation(format!("degree {} too large", images.len())));
        }
        let mut seen = vec![false; images.len()];
        for &y in &images {
            let y = y as usize;
            if y >= images.len() || seen[y] {
                return Err(Error::NotAPermutation(format!("{images:?}")));
            }
            seen[y] = true;
        }
        Ok(Self(images))
    }

    pub fn from_fn(q: usize, f: impl Fn(Symbol) -> Symbol) -> Result<Self> {
        Self::from_images((0..q).map(|x| f(x as Symbol)).collect())
    }

    /// The transposition exchanging `a` and `b` (identity when `a == b`).
    pub fn transposition(q: usize, a: Symbol, b: Symbol) -> Self {
        let mut p = Self::identity(q);
        p.0.swap(a as usize, b as usize);
        p
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn apply(&self, x: Symbol) -> Symbol {
        self.0[x as usize]
    }

    pub fn images(&self) -> &[Symbol] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &y)| i == y as usize)
    }

    /// `self ∘ other`, i.e. `x ↦ self(other(x))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch(self.degree(), other.degree()));
        }
        Ok(self.compose_unchecked(other))
    }

    pub(crate) fn compose_unchecked(&self, other: &Permutation) -> Permutation {
        Permutation(other.0.iter().map(|&x| self.0[x as usize]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.0.len()];
        for (x, &y) in self.0.iter().enumerate() {
            inv[y as usize] = x as Symbol;
        }
        Permutation(inv)
    }

    /// Lengths of the cycles, sorted ascending.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut seen = vec![false; self.0.len()];
        let mut lengths = Vec::new();
        for start in 0..self.0.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.0[x] as usize;
                len += 1;
            }
            lengths.push(len);
        }
        lengths.sort_unstable();
        lengths
    }
}

impl TryFrom<Vec<Symbol>> for Permutation {
    type Error = Error;

    fn try_from(images: Vec<Symbol>) -> Result<Self> {
        Self::from_images(images)
    }
}

impl From<Permutation> for Vec<Symbol> {
    fn from(p: Permutation) -> Self {
        p.0
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm{:?}", self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn random_perm(rng: &mut ChaCha8Rng, q: usize) -> Permutation {
        let mut v: Vec<Symbol> = (0..q as Symbol).collect();
        v.shuffle(rng);
        Permutation::from_images(v).unwrap()
    }

    #[test]
    fn identity_is_neutral() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let s = random_perm(&mut rng, 7);
        let id = Permutation::identity(7);
        assert_eq!(id.compose(&s).unwrap(), s);
        assert_eq!(s.compose(&id).unwrap(), s);
    }

    #[test]
    fn transposition_is_involution() {
        for a in 0..5 {
            let t = Permutation::transposition(5, 0, a);
            assert_eq!(t.inverse(), t);
        }
    }

    #[test]
    fn random_inverses() {
        let mut rng = ChaCha8Rng::seed_from_u64(0xC0DE);
        for _ in 0..100 {
            let s = random_perm(&mut rng, 10);
            assert!(s.compose(&s.inverse()).unwrap().is_identity());
            assert!(s.inverse().compose(&s).unwrap().is_identity());
        }
    }

    #[test]
    fn compose_order_is_right_to_left() {
        let a = Permutation::from_images(vec![1, 2, 0]).unwrap();
        let b = Permutation::transposition(3, 0, 1);
        let ab = a.compose(&b).unwrap();
        for x in 0..3 {
            assert_eq!(ab.apply(x), a.apply(b.apply(x)));
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(Permutation::from_images(vec![0, 0, 1]).is_err());
        assert!(Permutation::from_images(vec![0, 3, 1]).is_err());
        let a = Permutation::identity(3);
        let b = Permutation::identity(4);
        assert!(matches!(a.compose(&b), Err(Error::DegreeMismatch(3, 4))));
        assert!(serde_json::from_str::<Permutation>("[1,1]").is_err());
    }

    #[test]
    fn cycle_type_of_three_cycle() {
        let a = Permutation::from_images(vec![1, 2, 0, 3]).unwrap();
        assert_eq!(a.cycle_type(), vec![1, 3]);
    }
}
