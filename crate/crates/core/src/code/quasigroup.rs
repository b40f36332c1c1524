use super::{mds::words_budget, MdsCode, Provenance};
use crate::algebra::{Alphabet, Symbol};
use crate::error::{Error, Result};

/// A function `Q_q^arity → Q_q` that is a bijection in each argument
/// (a Latin hypercube). The table is indexed by the argument tuple read as a
/// base-`q` number, first argument most significant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NAryQuasigroup {
    alphabet: Alphabet,
    arity: usize,
    table: Vec<Symbol>,
}

impl NAryQuasigroup {
    pub fn new(alphabet: Alphabet, arity: usize, table: Vec<Symbol>) -> Result<Self> {
        let q = alphabet.q();
        if arity == 0 {
            return Err(Error::NotQuasigroup("arity must be positive".into()));
        }
        let size = words_budget(q, arity + 1)? as usize;
        if table.len() != size {
            return Err(Error::NotQuasigroup(format!("table has {} entries, expected {size}", table.len())));
        }
        if let Some(&s) = table.iter().find(|&&s| s as usize >= q) {
            return Err(Error::NotQuasigroup(format!("value {s} outside alphabet")));
        }
        for i in 0..arity {
            let stride = q.pow((arity - 1 - i) as u32);
            for base in (0..size).filter(|b| (b / stride) % q == 0) {
                let mut seen = 0u128;
                let mut seen_hi = 0u128;
                for s in 0..q {
                    let v = table[base + s * stride] as u32;
                    let (bits, bit) = if v < 128 { (&mut seen, v) } else { (&mut seen_hi, v - 128) };
                    if *bits >> bit & 1 == 1 {
                        return Err(Error::NotQuasigroup(format!(
                            "argument {i} retract at table index {base} repeats value {v}"
                        )));
                    }
                    *bits |= 1 << bit;
                }
            }
        }
        Ok(Self { alphabet, arity, table })
    }

    pub fn from_fn(alphabet: Alphabet, arity: usize, f: impl Fn(&[Symbol]) -> Symbol) -> Result<Self> {
        let q = alphabet.q();
        let size = words_budget(q, arity + 1)? as usize;
        let mut args = vec![0 as Symbol; arity];
        let table = (0..size)
            .map(|idx| {
                decode(idx, q, &mut args);
                f(&args)
            })
            .collect();
        Self::new(alphabet, arity, table)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn table(&self) -> &[Symbol] {
        &self.table
    }

    pub fn eval(&self, args: &[Symbol]) -> Symbol {
        debug_assert_eq!(args.len(), self.arity);
        let q = self.alphabet.q();
        let idx = args.iter().fold(0usize, |acc, &a| acc * q + a as usize);
        self.table[idx]
    }

    /// The graph `{(x̄, f(x̄))}`, an MDS code of length `arity + 1`.
    pub fn graph_of(&self) -> MdsCode {
        self.graph_with(Provenance::Literal)
    }

    pub(crate) fn graph_with(&self, provenance: Provenance) -> MdsCode {
        let q = self.alphabet.q();
        let n = self.arity + 1;
        let mut flat = Vec::with_capacity(self.table.len() * n);
        let mut args = vec![0 as Symbol; self.arity];
        for (idx, &v) in self.table.iter().enumerate() {
            decode(idx, q, &mut args);
            flat.extend_from_slice(&args);
            flat.push(v);
        }
        MdsCode::from_flat(self.alphabet, n, flat, provenance).expect("graph of a quasigroup is MDS")
    }
}

/// Writes the base-`q` digits of `idx` into `out`, most significant first.
pub(crate) fn decode(mut idx: usize, q: usize, out: &mut [Symbol]) {
    for slot in out.iter_mut().rev() {
        *slot = (idx % q) as Symbol;
        idx /= q;
    }
}

/// The quasigroup whose graph, with the value placed at `output_coord`, is `code`.
pub fn quasigroup_of(code: &MdsCode, output_coord: usize) -> Result<NAryQuasigroup> {
    if output_coord >= code.n() {
        return Err(Error::InvalidSpec(format!("coordinate {output_coord} out of range")));
    }
    let table = code.completion[output_coord].clone();
    NAryQuasigroup::new(*code.alphabet(), code.n() - 1, table)
}

/// `{(x̄, ȳ) : f(x̄) = g(ȳ)}`, an MDS code of length `arity(f) + arity(g)`.
pub fn pair_code(f: &NAryQuasigroup, g: &NAryQuasigroup) -> Result<MdsCode> {
    if f.alphabet.q() != g.alphabet.q() {
        return Err(Error::AlphabetMismatch(f.alphabet.q(), g.alphabet.q()));
    }
    let q = f.alphabet.q();
    let (af, ag) = (f.arity, g.arity);
    let n = af + ag;
    words_budget(q, n)?;
    // inverse of g in its last argument, per prefix
    let prefixes = q.pow((ag - 1) as u32);
    let mut inv = vec![0 as Symbol; prefixes * q];
    for pidx in 0..prefixes {
        for y in 0..q {
            let v = g.table[pidx * q + y] as usize;
            inv[pidx * q + v] = y as Symbol;
        }
    }
    let mut flat = Vec::with_capacity(q.pow((n - 1) as u32) * n);
    let mut xs = vec![0 as Symbol; af];
    let mut ys = vec![0 as Symbol; ag - 1];
    for (xidx, &v) in f.table.iter().enumerate() {
        decode(xidx, q, &mut xs);
        for pidx in 0..prefixes {
            decode(pidx, q, &mut ys);
            flat.extend_from_slice(&xs);
            flat.extend_from_slice(&ys);
            flat.push(inv[pidx * q + v as usize]);
        }
    }
    MdsCode::from_flat(f.alphabet, n, flat, Provenance::Literal)
}
