//! Codes `{(x̄, ȳ) : Σx_i = 0, Σy_i + r(x̄) = 0}` over `Q_q × Q_q` for
//! `r(x̄) = Σ α_ij x_i x_j + Σ β_i(x_i)` with coefficients in `GF(q)`.

use serde::{Deserialize, Serialize};

use crate::algebra::{Alphabet, FieldTable, Permutation, Symbol};
use crate::code::{decode, words_budget, MdsCode, Provenance};
use crate::error::{Error, Result};
use crate::isometry::Isotopism;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawQuadraticSpec {
    p: u32,
    #[serde(default = "one")]
    k: u32,
    n: usize,
    alpha: Option<Vec<Vec<Symbol>>>,
    beta: Option<Vec<Vec<Symbol>>>,
    r: Option<String>,
}

fn one() -> u32 {
    1
}

/// Field `GF(p^k)`, length `n`, the `n × n` matrix `α` and the tables `β_i`
/// (one value per field element, `β_i(0) = 0`).
///
/// On input `r` may be given as a polynomial string such as `"x1x2 + 2x3"`
/// instead of `alpha`/`beta`; it is stored in the matrix form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawQuadraticSpec")]
pub struct QuadraticSpec {
    pub p: u32,
    pub k: u32,
    pub n: usize,
    pub alpha: Vec<Vec<Symbol>>,
    pub beta: Vec<Vec<Symbol>>,
}

impl TryFrom<RawQuadraticSpec> for QuadraticSpec {
    type Error = Error;

    fn try_from(r: RawQuadraticSpec) -> Result<Self> {
        match (r.r, r.alpha, r.beta) {
            (Some(s), None, None) => QuadraticSpec::parse(r.p, r.k, r.n, &s),
            (None, alpha, beta) => {
                let q = field_order(r.p, r.k)?;
                let alpha = alpha.unwrap_or_else(|| vec![vec![0; r.n]; r.n]);
                let beta = beta.unwrap_or_else(|| vec![vec![0; q]; r.n]);
                QuadraticSpec::new(r.p, r.k, r.n, alpha, beta)
            }
            _ => Err(Error::InvalidSpec("give either r or alpha/beta, not both".into())),
        }
    }
}

fn field_order(p: u32, k: u32) -> Result<usize> {
    Ok(Alphabet::field(p, k)?.q())
}

impl QuadraticSpec {
    pub fn new(p: u32, k: u32, n: usize, alpha: Vec<Vec<Symbol>>, beta: Vec<Vec<Symbol>>) -> Result<Self> {
        let field = FieldTable::new(p, k)?;
        let q = field.q();
        if n < 2 {
            return Err(Error::InvalidSpec(format!("length {n} must be at least 2")));
        }
        if alpha.len() != n || alpha.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidSpec(format!("alpha must be {n} x {n}")));
        }
        if alpha.iter().flatten().any(|&a| a as usize >= q) {
            return Err(Error::InvalidSpec("alpha entry outside the field".into()));
        }
        if beta.len() != n || beta.iter().any(|t| t.len() != q) {
            return Err(Error::InvalidSpec(format!("beta must be {n} tables of {q} values")));
        }
        if beta.iter().flatten().any(|&b| b as usize >= q) {
            return Err(Error::InvalidSpec("beta value outside the field".into()));
        }
        if let Some(i) = beta.iter().position(|t| t[0] != 0) {
            return Err(Error::InvalidSpec(format!("beta_{} must vanish at 0", i + 1)));
        }
        Ok(Self { p, k, n, alpha, beta })
    }

    /// Only the quadratic part: `r = Σ α_ij x_i x_j`.
    pub fn pure(p: u32, k: u32, alpha: Vec<Vec<Symbol>>) -> Result<Self> {
        let n = alpha.len();
        let q = field_order(p, k)?;
        Self::new(p, k, n, alpha, vec![vec![0; q]; n])
    }

    /// Parses `r` as a sum of terms `[c]x_i[x_j]` (`+` or `⊕` between terms,
    /// optional `*` inside a term, `c` a field element index).
    pub fn parse(p: u32, k: u32, n: usize, r: &str) -> Result<Self> {
        let field = FieldTable::new(p, k)?;
        let q = field.q();
        let mut alpha = vec![vec![0 as Symbol; n]; n];
        let mut beta = vec![vec![0 as Symbol; q]; n];
        let bad = |m: String| Error::InvalidSpec(format!("r = {r:?}: {m}"));
        for term in r.split(['+', '⊕']).map(str::trim) {
            if term.is_empty() {
                return Err(bad("empty term".into()));
            }
            let term: String = term.chars().filter(|c| !c.is_whitespace() && *c != '*').collect();
            let mut parts = term.split('x');
            let coef = match parts.next().unwrap_or("") {
                "" => 1,
                c => c.parse::<usize>().map_err(|_| bad(format!("bad coefficient {c:?}")))?,
            };
            if coef >= q {
                return Err(bad(format!("coefficient {coef} outside GF({q})")));
            }
            let vars = parts
                .map(|v| match v.parse::<usize>() {
                    Ok(i) if (1..=n).contains(&i) => Ok(i - 1),
                    _ => Err(bad(format!("bad variable x{v}"))),
                })
                .collect::<Result<Vec<_>>>()?;
            let c = coef as Symbol;
            match vars[..] {
                [] if c == 0 => {}
                [] => return Err(bad("nonzero constant term".into())),
                [i] => {
                    for x in 0..q as Symbol {
                        beta[i][x as usize] = field.add(beta[i][x as usize], field.mul(c, x));
                    }
                }
                [i, j] => {
                    let (i, j) = (i.min(j), i.max(j));
                    alpha[i][j] = field.add(alpha[i][j], c);
                }
                _ => return Err(bad("terms of degree above 2".into())),
            }
        }
        Self::new(p, k, n, alpha, beta)
    }

    pub fn field(&self) -> FieldTable {
        FieldTable::new(self.p, self.k).expect("validated field")
    }

    pub fn q(&self) -> usize {
        (self.p as usize).pow(self.k)
    }

    pub fn alphabet(&self) -> Alphabet {
        let q = self.q();
        Alphabet::pair(q, q).expect("validated field order")
    }

    pub fn r(&self, field: &FieldTable, x: &[Symbol]) -> Symbol {
        let mut acc = 0;
        for i in 0..self.n {
            for j in 0..self.n {
                acc = field.add(acc, field.mul(self.alpha[i][j], field.mul(x[i], x[j])));
            }
            acc = field.add(acc, self.beta[i][x[i] as usize]);
        }
        acc
    }

    fn x_of(&self, s: Symbol) -> Symbol {
        (s as usize / self.q()) as Symbol
    }

    fn y_of(&self, s: Symbol) -> Symbol {
        (s as usize % self.q()) as Symbol
    }

    fn pack(&self, x: Symbol, y: Symbol) -> Symbol {
        (x as usize * self.q() + y as usize) as Symbol
    }
}

/// The code, with |M| = `(q²)^(n-1)`.
pub fn quadratic_code(spec: &QuadraticSpec) -> Result<MdsCode> {
    let field = spec.field();
    let q2 = spec.q() * spec.q();
    let n = spec.n;
    let count = words_budget(q2, n)? as usize;
    let mut flat = Vec::with_capacity(count * n);
    let mut prefix = vec![0 as Symbol; n - 1];
    let mut x = vec![0 as Symbol; n];
    for idx in 0..count {
        decode(idx, q2, &mut prefix);
        let mut ys = 0;
        x[n - 1] = 0;
        for (i, &s) in prefix.iter().enumerate() {
            x[i] = spec.x_of(s);
            x[n - 1] = field.sub(x[n - 1], x[i]);
            ys = field.add(ys, spec.y_of(s));
        }
        let yn = field.neg(field.add(ys, spec.r(&field, &x)));
        flat.extend_from_slice(&prefix);
        flat.push(spec.pack(x[n - 1], yn));
    }
    MdsCode::from_flat(spec.alphabet(), n, flat, Provenance::Quadratic { spec: spec.clone() })
}

/// The isotopism `(x_i, y_i) ↦ (x_i − a_i, y_i + D_i(x_i) − D_i(a_i) − b_i)`
/// with `D_i(x) = x Σ_j (α_ij + α_ji) a_j − β_i(x − a_i) + β_i(x)`,
/// which preserves the code and sends the codeword `(ā, b̄)` to `0̄`.
pub fn quadratic_witness(spec: &QuadraticSpec, word: &[Symbol]) -> Result<Isotopism> {
    let field = spec.field();
    if word.len() != spec.n {
        return Err(Error::LengthMismatch(word.len(), spec.n));
    }
    let q2 = spec.q() * spec.q();
    if word.iter().any(|&s| s as usize >= q2) {
        return Err(Error::NotACodeword(word.to_vec()));
    }
    let a: Vec<Symbol> = word.iter().map(|&s| spec.x_of(s)).collect();
    let b: Vec<Symbol> = word.iter().map(|&s| spec.y_of(s)).collect();
    let sum_a = field.sum(a.iter().copied());
    let sum_b = field.sum(b.iter().copied());
    if sum_a != 0 || field.add(sum_b, spec.r(&field, &a)) != 0 {
        return Err(Error::NotACodeword(word.to_vec()));
    }
    Ok(witness_unchecked(spec, &field, &a, &b))
}

fn witness_unchecked(spec: &QuadraticSpec, field: &FieldTable, a: &[Symbol], b: &[Symbol]) -> Isotopism {
    let n = spec.n;
    let taus = (0..n)
        .map(|i| {
            let s = (0..n).fold(0, |acc, j| {
                let c = field.add(spec.alpha[i][j], spec.alpha[j][i]);
                field.add(acc, field.mul(c, a[j]))
            });
            let beta = &spec.beta[i];
            let d = |x: Symbol| {
                let shifted = beta[field.sub(x, a[i]) as usize];
                field.add(field.sub(field.mul(x, s), shifted), beta[x as usize])
            };
            let shift = field.add(d(a[i]), b[i]);
            Permutation::from_fn(spec.q() * spec.q(), |v| {
                let (x, y) = (spec.x_of(v), spec.y_of(v));
                spec.pack(field.sub(x, a[i]), field.sub(field.add(y, d(x)), shift))
            })
            .expect("affine in y for each x")
        })
        .collect();
    Isotopism::new(taus)
}

/// One witness per codeword; together they form a group acting regularly.
pub fn quadratic_witnesses(spec: &QuadraticSpec, code: &MdsCode) -> Vec<Isotopism> {
    let field = spec.field();
    code.words()
        .map(|w| {
            let a: Vec<Symbol> = w.iter().map(|&s| spec.x_of(s)).collect();
            let b: Vec<Symbol> = w.iter().map(|&s| spec.y_of(s)).collect();
            witness_unchecked(spec, &field, &a, &b)
        })
        .collect()
}
