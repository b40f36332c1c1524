//! Equivalence of MDS codes under isometries (coordinate permutations
//! composed with isotopisms).

use itertools::Itertools;

use super::{isotopy_search, Budget, Isometry, Isotopism, Pin};
use crate::algebra::{Permutation, Symbol};
use crate::code::MdsCode;
use crate::error::Result;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EquivalenceVerdict {
    /// `map` sends the first code onto the second.
    Equivalent(Isometry),
    /// Every coordinate permutation and every target for the first codeword
    /// was searched exhaustively.
    Inequivalent,
}

impl EquivalenceVerdict {
    pub fn is_equivalent(&self) -> bool {
        matches!(self, EquivalenceVerdict::Equivalent(_))
    }
}

/// Intercalate statistics of the Latin squares obtained by fixing all but
/// three coordinates. Both are invariant under isotopy, and move with the
/// coordinates under a coordinate permutation.
struct Invariants {
    triples: Vec<[usize; 3]>,
    /// Per triple: sorted intercalate counts over all contexts.
    profile: Vec<Vec<u32>>,
    /// Per word, per triple: intercalates through the word in its context.
    local: Vec<Vec<u32>>,
}

impl Invariants {
    fn new(code: &MdsCode) -> Self {
        let (q, n) = (code.q(), code.n());
        let triples: Vec<[usize; 3]> = (0..n).combinations(3).map(|c| [c[0], c[1], c[2]]).collect();
        let mut profile = Vec::with_capacity(triples.len());
        let mut local = vec![vec![0u32; triples.len()]; code.len()];
        let mut square = vec![0 as Symbol; q * q];
        let mut pos = vec![0usize; q * q];
        let mut ids = vec![0usize; q * q];
        for (t, &[i, j, k]) in triples.iter().enumerate() {
            let others: Vec<usize> = (0..n).filter(|c| ![i, j, k].contains(c)).collect();
            let mut counts = Vec::new();
            let contexts = q.pow(others.len() as u32);
            let mut w = vec![0 as Symbol; n];
            for ctx in 0..contexts {
                let mut c = ctx;
                for &o in others.iter().rev() {
                    w[o] = (c % q) as Symbol;
                    c /= q;
                }
                for x in 0..q {
                    for y in 0..q {
                        w[i] = x as Symbol;
                        w[j] = y as Symbol;
                        let z = code.complete(k, &w);
                        square[x * q + y] = z;
                        pos[x * q + z as usize] = y;
                        w[k] = z;
                        ids[x * q + y] = code.index_of(&w).expect("completed word is a codeword");
                    }
                }
                let mut total = 0u32;
                for x1 in 0..q {
                    for y1 in 0..q {
                        let s = square[x1 * q + y1];
                        let mut through = 0u32;
                        for x2 in (0..q).filter(|&x2| x2 != x1) {
                            let y2 = pos[x2 * q + s as usize];
                            if square[x1 * q + y2] == square[x2 * q + y1] {
                                through += 1;
                            }
                        }
                        local[ids[x1 * q + y1]][t] = through;
                        total += through;
                    }
                }
                counts.push(total / 4);
            }
            counts.sort_unstable();
            profile.push(counts);
        }
        Self { triples, profile, local }
    }

    fn triple_index(&self, mut t: [usize; 3]) -> usize {
        t.sort_unstable();
        self.triples.binary_search(&t).expect("triple of distinct coordinates")
    }
}

/// An isometry sending `a` onto `b`, or an exhaustive proof that none exists.
pub fn equivalent_codes(a: &MdsCode, b: &MdsCode, budget: &Budget) -> Result<EquivalenceVerdict> {
    if a.q() != b.q() || a.n() != b.n() {
        return Ok(EquivalenceVerdict::Inequivalent);
    }
    let (q, n) = (a.q(), a.n());
    budget.check_points(q, n)?;
    let ia = Invariants::new(a);
    let ib = Invariants::new(b);
    let base = a.word(0).to_vec();
    for imgs in (0..n as Symbol).permutations(n) {
        let eps = Permutation::from_images(imgs)?;
        // where each triple of `a` lands
        let moved: Vec<usize> = ia
            .triples
            .iter()
            .map(|t| ib.triple_index(t.map(|c| eps.apply(c as Symbol) as usize)))
            .collect();
        if moved.iter().enumerate().any(|(t, &u)| ia.profile[t] != ib.profile[u]) {
            continue;
        }
        let shuffle = Isometry::new(eps.clone(), Isotopism::identity(q, n))?;
        let image = shuffle.apply(a)?;
        let from = shuffle.apply_word(&base);
        let base_local = &ia.local[0];
        for (widx, w) in b.words().enumerate() {
            if moved.iter().enumerate().any(|(t, &u)| base_local[t] != ib.local[widx][u]) {
                continue;
            }
            if let Some(tau) = isotopy_search(&image, b, &Pin::word(&from, w), budget)?.first()? {
                return Ok(EquivalenceVerdict::Equivalent(Isometry::new(eps, tau)?));
            }
        }
    }
    Ok(EquivalenceVerdict::Inequivalent)
}
