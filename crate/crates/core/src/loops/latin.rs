use super::BinaryQuasigroup;
use crate::algebra::{Alphabet, Symbol};
use crate::error::{Error, Result};

/// Calls `visit` on every Latin square of order `q` (row-major), in
/// lexicographic order. With `reduced`, the first row and column are fixed to
/// the identity, i.e. only loops with identity 0 are produced.
fn for_each_latin(q: usize, reduced: bool, visit: &mut dyn FnMut(&[Symbol])) {
    let mut t = vec![0 as Symbol; q * q];
    let mut rows = vec![0u32; q];
    let mut cols = vec![0u32; q];
    let mut start = 0;
    if reduced {
        for i in 0..q {
            for (cell, v) in [(i, i), (i * q, i)] {
                t[cell] = v as Symbol;
                rows[cell / q] |= 1 << v;
                cols[cell % q] |= 1 << v;
            }
        }
        start = q + 1;
    }
    fn go(
        cell: usize,
        q: usize,
        reduced: bool,
        t: &mut [Symbol],
        rows: &mut [u32],
        cols: &mut [u32],
        visit: &mut dyn FnMut(&[Symbol]),
    ) {
        if cell == q * q {
            visit(t);
            return;
        }
        let (i, j) = (cell / q, cell % q);
        if reduced && j == 0 {
            return go(cell + 1, q, reduced, t, rows, cols, visit);
        }
        let free = !(rows[i] | cols[j]) & ((1u32 << q) - 1);
        let mut bits = free;
        while bits != 0 {
            let v = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            t[cell] = v as Symbol;
            rows[i] |= 1 << v;
            cols[j] |= 1 << v;
            go(cell + 1, q, reduced, t, rows, cols, visit);
            rows[i] &= !(1 << v);
            cols[j] &= !(1 << v);
        }
    }
    go(start, q, reduced, &mut t, &mut rows, &mut cols, visit);
}

fn collect(q: usize, reduced: bool, bound: usize) -> Result<Vec<BinaryQuasigroup>> {
    if q > bound {
        return Err(Error::OrderTooLarge { order: q, bound });
    }
    let alphabet = Alphabet::plain(q)?;
    let mut out = Vec::new();
    for_each_latin(q, reduced, &mut |t| {
        out.push(BinaryQuasigroup::new(alphabet, t.to_vec()).expect("backtracking yields Latin squares"));
    });
    Ok(out)
}

/// All Latin squares of order `q ≤ 5`, as binary quasigroups.
pub fn latin_squares(q: usize) -> Result<Vec<BinaryQuasigroup>> {
    collect(q, false, 5)
}

/// All Latin squares of order `q ≤ 6` whose first row and column are
/// `0, 1, …, q−1`: the loops on `0..q` with identity 0.
pub fn reduced_latin_squares(q: usize) -> Result<Vec<BinaryQuasigroup>> {
    collect(q, true, 6)
}
