use std::fmt;

use serde::{Deserialize, Serialize};

use super::Provenance;
use crate::algebra::{Alphabet, Symbol};
use crate::error::{BudgetExceeded, Error, Result};

/// Upper bound on `q^(n-1)` for any code held in memory.
pub const MAX_MATERIALIZED_WORDS: u64 = 1 << 24;

/// Why a word set fails to be an MDS code.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum MdsViolation {
    WrongSize { expected: u64, actual: usize },
    Duplicate { word: Vec<Symbol> },
    /// Two words on the same line, differing only at `coord`.
    SharedLine { coord: usize, a: Vec<Symbol>, b: Vec<Symbol> },
    /// A line that carries no word (reported by the explicit line census).
    EmptyLine { coord: usize, line: Vec<Symbol> },
}

impl fmt::Display for MdsViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MdsViolation::WrongSize { expected, actual } => {
                write!(f, "expected {expected} words, found {actual}")
            }
            MdsViolation::Duplicate { word } => write!(f, "duplicate word {word:?}"),
            MdsViolation::SharedLine { coord, a, b } => {
                write!(f, "{a:?} and {b:?} share a line in direction {coord}")
            }
            MdsViolation::EmptyLine { coord, line } => {
                write!(f, "line through {line:?} in direction {coord} is empty")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MdsVerdict {
    Mds,
    Violation(MdsViolation),
}

impl MdsVerdict {
    pub fn is_mds(&self) -> bool {
        matches!(self, MdsVerdict::Mds)
    }
}

pub(crate) fn checked_pow(q: usize, e: usize) -> Option<u64> {
    (q as u64).checked_pow(e as u32)
}

pub(crate) fn words_budget(q: usize, n: usize) -> Result<u64> {
    match checked_pow(q, n.saturating_sub(1)) {
        Some(w) if w <= MAX_MATERIALIZED_WORDS => Ok(w),
        other => Err(BudgetExceeded::new("materialized words", MAX_MATERIALIZED_WORDS, other).into()),
    }
}

/// Rank of `word` with coordinate `skip` removed, first coordinate most significant.
#[inline]
pub(crate) fn rank_without(word: &[Symbol], skip: usize, q: usize) -> usize {
    let mut r = 0usize;
    for (j, &s) in word.iter().enumerate() {
        if j != skip {
            r = r * q + s as usize;
        }
    }
    r
}

fn validate_words<'a>(
    words: impl IntoIterator<Item = &'a [Symbol]>,
    q: usize,
    n: usize,
) -> Result<()> {
    if n < 2 {
        return Err(Error::MalformedWord(format!("length {n} < 2 is not supported")));
    }
    for w in words {
        if w.len() != n {
            return Err(Error::MalformedWord(format!("{w:?} does not have length {n}")));
        }
        if let Some(&s) = w.iter().find(|&&s| s as usize >= q) {
            return Err(Error::MalformedWord(format!("symbol {s} outside alphabet of size {q}")));
        }
    }
    Ok(())
}

/// Builds the completion tables, or reports the first violation found.
fn build_tables(
    words: &[Symbol],
    q: usize,
    n: usize,
) -> std::result::Result<Vec<Vec<Symbol>>, MdsViolation> {
    let count = words.len() / n;
    let expected = checked_pow(q, n - 1).unwrap_or(u64::MAX);
    if count as u64 != expected {
        return Err(MdsViolation::WrongSize { expected, actual: count });
    }
    let mut owner = vec![u32::MAX; count];
    let mut tables = Vec::with_capacity(n);
    for coord in 0..n {
        let mut table = vec![0 as Symbol; count];
        owner.fill(u32::MAX);
        for (idx, w) in words.chunks_exact(n).enumerate() {
            let r = rank_without(w, coord, q);
            if owner[r] != u32::MAX {
                let other = &words[owner[r] as usize * n..][..n];
                return Err(if other == w {
                    MdsViolation::Duplicate { word: w.to_vec() }
                } else {
                    MdsViolation::SharedLine { coord, a: other.to_vec(), b: w.to_vec() }
                });
            }
            owner[r] = idx as u32;
            table[r] = w[coord];
        }
        tables.push(table);
    }
    Ok(tables)
}

/// Decides whether `words` form an MDS code of length `n` over `alphabet`.
///
/// Size `q^(n-1)` together with "no two words on one line" is equivalent to
/// "exactly one word on every line".
pub fn is_mds(words: &[Vec<Symbol>], alphabet: &Alphabet, n: usize) -> Result<MdsVerdict> {
    validate_words(words.iter().map(|w| w.as_slice()), alphabet.q(), n)?;
    words_budget(alphabet.q(), n)?;
    let flat: Vec<Symbol> = words.iter().flatten().copied().collect();
    Ok(match build_tables(&flat, alphabet.q(), n) {
        Ok(_) => MdsVerdict::Mds,
        Err(v) => MdsVerdict::Violation(v),
    })
}

/// An MDS code with code distance 2: `q^(n-1)` words, one on every line.
#[derive(Clone)]
pub struct MdsCode {
    alphabet: Alphabet,
    n: usize,
    words: Vec<Symbol>,
    pub(crate) completion: Vec<Vec<Symbol>>,
    provenance: Provenance,
}

impl MdsCode {
    /// Validates and indexes a word set.
    pub fn from_words<I, W>(alphabet: Alphabet, n: usize, words: I, provenance: Provenance) -> Result<Self>
    where
        I: IntoIterator<Item = W>,
        W: AsRef<[Symbol]>,
    {
        let q = alphabet.q();
        let cap = words_budget(q, n)? as usize;
        let mut flat = Vec::with_capacity(cap * n);
        let mut rows = 0usize;
        for w in words {
            let w = w.as_ref();
            validate_words([w], q, n)?;
            flat.extend_from_slice(w);
            rows += 1;
            if rows > cap {
                return Err(Error::NotMds(MdsViolation::WrongSize {
                    expected: cap as u64,
                    actual: rows,
                }));
            }
        }
        Self::from_flat(alphabet, n, flat, provenance)
    }

    pub(crate) fn from_flat(alphabet: Alphabet, n: usize, mut flat: Vec<Symbol>, provenance: Provenance) -> Result<Self> {
        let q = alphabet.q();
        validate_words(flat.chunks_exact(n.max(1)), q, n)?;
        if flat.len() % n != 0 {
            return Err(Error::MalformedWord("flat word buffer not a multiple of n".into()));
        }
        words_budget(q, n)?;
        let mut rows: Vec<&[Symbol]> = flat.chunks_exact(n).collect();
        if !rows.windows(2).all(|w| w[0] <= w[1]) {
            rows.sort_unstable();
            flat = rows.concat();
        }
        let completion = build_tables(&flat, q, n).map_err(Error::NotMds)?;
        Ok(Self { alphabet, n, words: flat, completion, provenance })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn q(&self) -> usize {
        self.alphabet.q()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.words.len() / self.n
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn with_provenance(mut self, provenance: Provenance) -> Self {
        self.provenance = provenance;
        self
    }

    /// Words in lexicographic order.
    pub fn words(&self) -> impl ExactSizeIterator<Item = &[Symbol]> + '_ {
        self.words.chunks_exact(self.n)
    }

    pub fn word(&self, idx: usize) -> &[Symbol] {
        &self.words[idx * self.n..(idx + 1) * self.n]
    }

    /// Index of a codeword in the sorted order, `None` if it is not in the code.
    pub fn index_of(&self, word: &[Symbol]) -> Option<usize> {
        if word.len() != self.n || word.iter().any(|&s| s as usize >= self.q()) {
            return None;
        }
        let r = rank_without(word, self.n - 1, self.q());
        (self.completion[self.n - 1][r] == word[self.n - 1]).then_some(r)
    }

    pub fn contains(&self, word: &[Symbol]) -> bool {
        self.index_of(word).is_some()
    }

    /// The unique symbol at `coord` completing the other coordinates of `word`
    /// to a codeword (the value of `word[coord]` is ignored).
    #[inline]
    pub fn complete(&self, coord: usize, word: &[Symbol]) -> Symbol {
        self.completion[coord][rank_without(word, coord, self.q())]
    }

    /// The all-zero word is a codeword.
    pub fn contains_zero(&self) -> bool {
        self.word(0).iter().all(|&s| s == 0)
    }

    /// Explicit census: walks every one of the `n * q^(n-1)` lines and counts
    /// its codewords by binary search in the sorted word list (independently of
    /// the completion tables). Returns the number of lines checked.
    pub fn check_lines(&self) -> std::result::Result<usize, MdsViolation> {
        let (q, n) = (self.q(), self.n);
        let rows: Vec<&[Symbol]> = self.words().collect();
        let mut line = vec![0 as Symbol; n];
        let mut checked = 0;
        for coord in 0..n {
            let free: Vec<usize> = (0..n).filter(|&j| j != coord).collect();
            let total = q.pow(free.len() as u32);
            for code in 0..total {
                let mut c = code;
                for &j in free.iter().rev() {
                    line[j] = (c % q) as Symbol;
                    c /= q;
                }
                let mut hits = Vec::new();
                for s in 0..q {
                    line[coord] = s as Symbol;
                    if rows.binary_search(&line.as_slice()).is_ok() {
                        hits.push(s as Symbol);
                    }
                }
                match hits.len() {
                    1 => {}
                    0 => {
                        line[coord] = 0;
                        return Err(MdsViolation::EmptyLine { coord, line: line.clone() });
                    }
                    _ => {
                        let mut a = line.clone();
                        let mut b = line.clone();
                        a[coord] = hits[0];
                        b[coord] = hits[1];
                        return Err(MdsViolation::SharedLine { coord, a, b });
                    }
                }
                checked += 1;
            }
        }
        Ok(checked)
    }

    /// Words equal as sets (alphabet size and length included).
    pub fn same_words(&self, other: &MdsCode) -> bool {
        self.q() == other.q() && self.n == other.n && self.words == other.words
    }

    /// The parity-check code `{x : x_1 + … + x_n ≡ 0 (mod q)}`.
    pub fn parity(q: usize, n: usize) -> Result<Self> {
        let alphabet = Alphabet::plain(q)?;
        let count = words_budget(q, n)? as usize;
        let mut flat = Vec::with_capacity(count * n);
        let mut w = vec![0 as Symbol; n];
        for r in 0..count {
            let mut c = r;
            let mut s = 0usize;
            for j in (0..n - 1).rev() {
                w[j] = (c % q) as Symbol;
                s += w[j] as usize;
                c /= q;
            }
            w[n - 1] = ((q - s % q) % q) as Symbol;
            flat.extend_from_slice(&w);
        }
        let prov = Provenance::Iterated {
            group: crate::loops::BuiltinLoop::Cyclic { q },
            length: n,
        };
        Self::from_flat(alphabet, n, flat, prov)
    }
}

impl fmt::Debug for MdsCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MdsCode")
            .field("q", &self.q())
            .field("n", &self.n)
            .field("words", &self.len())
            .field("provenance", &self.provenance)
            .finish()
    }
}

impl PartialEq for MdsCode {
    fn eq(&self, other: &Self) -> bool {
        self.same_words(other)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parity_words(q: usize, n: usize) -> Vec<Vec<Symbol>> {
        itertools::Itertools::multi_cartesian_product((0..n).map(|_| 0..q as Symbol))
            .filter(|w| w.iter().map(|&s| s as usize).sum::<usize>() % q == 0)
            .collect()
    }

    #[test]
    fn parity_three_is_mds() {
        let a = Alphabet::plain(3).unwrap();
        let words = parity_words(3, 3);
        assert_eq!(words.len(), 9);
        assert!(is_mds(&words, &a, 3).unwrap().is_mds());
        let code = MdsCode::parity(3, 3).unwrap();
        assert_eq!(code.len(), 9);
        assert_eq!(code.check_lines(), Ok(27));
    }

    #[test]
    fn missing_word_is_size_violation() {
        let a = Alphabet::plain(3).unwrap();
        let mut words = parity_words(3, 3);
        words.pop();
        assert_eq!(
            is_mds(&words, &a, 3).unwrap(),
            MdsVerdict::Violation(MdsViolation::WrongSize { expected: 9, actual: 8 })
        );
    }

    #[test]
    fn neighbours_are_reported() {
        let a = Alphabet::plain(2).unwrap();
        let words = vec![vec![0, 0], vec![0, 1]];
        match is_mds(&words, &a, 2).unwrap() {
            MdsVerdict::Violation(MdsViolation::SharedLine { coord: 1, .. }) => {}
            v => panic!("unexpected {v:?}"),
        }
        let dup = vec![vec![0, 0], vec![0, 0]];
        assert!(matches!(
            is_mds(&dup, &a, 2).unwrap(),
            MdsVerdict::Violation(MdsViolation::Duplicate { .. })
        ));
    }

    #[test]
    fn malformed_words_are_errors() {
        let a = Alphabet::plain(2).unwrap();
        assert!(is_mds(&[vec![0, 2]], &a, 2).is_err());
        assert!(is_mds(&[vec![0]], &a, 2).is_err());
        assert!(is_mds(&[vec![0]], &a, 1).is_err());
    }

    #[test]
    fn index_and_completion() {
        let code = MdsCode::parity(4, 3).unwrap();
        for (i, w) in code.words().enumerate() {
            assert_eq!(code.index_of(w), Some(i));
            for c in 0..3 {
                assert_eq!(code.complete(c, w), w[c]);
            }
        }
        assert_eq!(code.index_of(&[1, 0, 0]), None);
        assert!(code.contains_zero());
    }
}
