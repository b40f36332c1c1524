//! Codes over `Q_4 ≅ Z_2 × Z_2` (symbol `2x + y`): semilinear codes
//! `Σx_i = 0, Σy_i + r(x̄) = 0`, the non-semilinear code `H`, and the
//! transitivity classification by the degree of `r`.

mod boolean;

use std::collections::BTreeMap;

use itertools::Itertools;
use serde::Serialize;

pub use boolean::BooleanFunction;

use crate::algebra::{Alphabet, Permutation, Symbol};
use crate::code::{decode, pair_code, subcode, words_budget, MdsCode, NAryQuasigroup, Provenance};
use crate::constructions::QuadraticSpec;
use crate::error::{Error, Result};
use crate::isometry::{equivalent_codes, is_isotopically_transitive, Budget, EquivalenceVerdict, Isometry, Isotopism};

/// Largest length accepted by [`semilinearity_test`] and [`classify`].
pub const MAX_Q4_LENGTH: usize = 5;

impl BooleanFunction {
    /// The same `r` as quadratic code data over `GF(2)`, when it has degree
    /// at most 2 and vanishes at `0̄`.
    pub fn as_quadratic(&self) -> Option<QuadraticSpec> {
        let anf = self.anf();
        if anf[0] != 0 || self.degree() > 2 {
            return None;
        }
        let n = self.arity();
        let mut alpha = vec![vec![0; n]; n];
        let mut beta = vec![vec![0, 0]; n];
        for m in self.monomials() {
            match m[..] {
                [i] => beta[i][1] = 1,
                [i, j] => alpha[i][j] = 1,
                _ => unreachable!("degree at most 2"),
            }
        }
        QuadraticSpec::new(2, 1, n, alpha, beta).ok()
    }
}

/// The four representatives of length 4: `0`, `x1x2 ⊕ x3x4`, `x1x2`, `x1x2x3`.
pub fn representative(i: usize) -> Option<BooleanFunction> {
    let s = match i {
        1 => "0",
        2 => "x1x2 + x3x4",
        3 => "x1x2",
        4 => "x1x2x3",
        _ => return None,
    };
    Some(BooleanFunction::parse(4, s).expect("fixed representative"))
}

/// `{(x̄, ȳ) : Σx_i = 0, Σy_i + r(x̄) = 0}` over `Z_2 × Z_2`.
pub fn standard_semilinear_code(n: usize, r: &BooleanFunction) -> Result<MdsCode> {
    if n < 2 || r.arity() != n {
        return Err(Error::InvalidSpec(format!("need n >= 2 and r of {n} variables, got {}", r.arity())));
    }
    let count = words_budget(4, n)? as usize;
    let mut flat = Vec::with_capacity(count * n);
    let mut prefix = vec![0 as Symbol; n - 1];
    let mut x = vec![0u8; n];
    for idx in 0..count {
        decode(idx, 4, &mut prefix);
        let mut ys = 0;
        x[n - 1] = 0;
        for (i, &s) in prefix.iter().enumerate() {
            x[i] = s >> 1;
            x[n - 1] ^= x[i];
            ys ^= s & 1;
        }
        flat.extend_from_slice(&prefix);
        flat.push(2 * x[n - 1] + (ys ^ r.eval(&x)));
    }
    MdsCode::from_flat(Alphabet::pair(2, 2)?, n, flat, Provenance::Semilinear { r: r.clone() })
}

/// `H = {x̄ : x_1 ⋆ x_2 = x_3 ⋄ x_4}` with `⋆` addition mod 4 and
/// `x ⋄ y = σ⁻¹(σx + σy)`, `σ = (1 2)`: both have identity 0, while the
/// elements of order 2 are 2 and 1 respectively.
pub fn code_h() -> MdsCode {
    code_h_with(&Permutation::transposition(4, 1, 2))
}

fn code_h_with(sigma: &Permutation) -> MdsCode {
    let a = Alphabet::plain(4).expect("q = 4");
    let inv = sigma.inverse();
    let star = NAryQuasigroup::from_fn(a, 2, |v| (v[0] + v[1]) % 4).expect("Z_4");
    let diamond = NAryQuasigroup::from_fn(a, 2, |v| inv.apply((sigma.apply(v[0]) + sigma.apply(v[1])) % 4))
        .expect("isotope of Z_4");
    pair_code(&star, &diamond).expect("length 4 pair code").with_provenance(Provenance::CodeH)
}

/// An isotopism to standard form together with the resulting `r`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SemilinearForm {
    /// Sends the input code onto `standard_semilinear_code(n, r)`.
    pub witness: Isotopism,
    /// `r`, depending only on `x_1, …, x_{n−1}`.
    pub r: BooleanFunction,
    /// `r` after substituting `x_n = x_1 ⊕ ⋯ ⊕ x_{n−1}`.
    pub reduced: BooleanFunction,
    pub degree: usize,
}

fn lin(m: [[u8; 2]; 2], s: Symbol) -> Symbol {
    let (x, y) = (s >> 1, s & 1);
    let nx = (m[0][0] & x) ^ (m[0][1] & y);
    let ny = (m[1][0] & x) ^ (m[1][1] & y);
    2 * nx + ny
}

/// Representatives of `GL(2,2)` modulo left multiplication by the shear
/// `(x, y) ↦ (x, y ⊕ x)`, which only adds linear terms to `r`.
fn coset_reps() -> Vec<Permutation> {
    let all: Vec<[[u8; 2]; 2]> = (0..16u8)
        .map(|b| [[b & 1, b >> 1 & 1], [b >> 2 & 1, b >> 3 & 1]])
        .filter(|m| (m[0][0] & m[1][1]) ^ (m[0][1] & m[1][0]) == 1)
        .collect();
    let perm = |m: [[u8; 2]; 2]| Permutation::from_fn(4, |s| lin(m, s)).expect("invertible");
    let shear = perm([[1, 0], [1, 1]]);
    let mut reps: Vec<Permutation> = Vec::new();
    for m in all {
        let p = perm(m);
        let sp = shear.compose_unchecked(&p);
        if !reps.iter().any(|r| *r == p || *r == sp) {
            reps.push(p);
        }
    }
    reps
}

fn check_q4(code: &MdsCode) -> Result<()> {
    if code.q() != 4 {
        return Err(Error::InvalidSpec(format!("alphabet of size {} is not Q_4", code.q())));
    }
    if code.n() > MAX_Q4_LENGTH {
        return Err(Error::OrderTooLarge { order: code.n(), bound: MAX_Q4_LENGTH });
    }
    Ok(())
}

/// Searches the isotopisms `x ↦ K_i(x ⊕ w_i)` with `w` the first codeword;
/// since every permutation of `Z_2^2` is affine, this covers all isotopy
/// classes of standard forms. Among the forms found, one of minimal degree
/// is returned.
pub fn semilinearity_test(code: &MdsCode) -> Result<Option<SemilinearForm>> {
    check_q4(code)?;
    let n = code.n();
    let w = code.word(0).to_vec();
    let reps = coset_reps();
    let mut best: Option<SemilinearForm> = None;
    let mut parity = vec![u8::MAX; 1 << n];
    for choice in (0..n).map(|_| 0..reps.len()).multi_cartesian_product() {
        let taus: Vec<Permutation> = (0..n)
            .map(|i| Permutation::from_fn(4, |s| reps[choice[i]].apply(s ^ w[i])).expect("affine map"))
            .collect();
        parity.iter_mut().for_each(|p| *p = u8::MAX);
        let ok = code.words().all(|word| {
            let (mut mask, mut xs, mut ys) = (0usize, 0u8, 0u8);
            for (i, &s) in word.iter().enumerate() {
                let t = taus[i].apply(s);
                mask |= ((t >> 1) as usize) << i;
                xs ^= t >> 1;
                ys ^= t & 1;
            }
            if xs != 0 {
                return false;
            }
            match parity[mask] {
                u8::MAX => {
                    parity[mask] = ys;
                    true
                }
                p => p == ys,
            }
        });
        if !ok {
            continue;
        }
        let reduced = BooleanFunction::from_fn(n - 1, |x| {
            let last = x.iter().fold(0, |a, &b| a ^ b) as usize;
            let m = x.iter().enumerate().fold(last << (n - 1), |m, (i, &b)| m | (b as usize) << i);
            parity[m]
        });
        // linear terms are absorbed by the shear (x, y) -> (x, y + x)
        let mut anf = reduced.anf();
        let mut taus = taus;
        for i in 0..n - 1 {
            if anf[1 << i] == 1 {
                anf[1 << i] = 0;
                taus[i] = Permutation::from_fn(4, |s| s ^ (s >> 1)).expect("shear").compose_unchecked(&taus[i]);
            }
        }
        let reduced = BooleanFunction::from_anf(n - 1, anf);
        let degree = reduced.degree();
        if best.as_ref().map_or(true, |b| degree < b.degree) {
            let r = reduced.extend(n);
            best = Some(SemilinearForm { witness: Isotopism::new(taus), r, reduced, degree });
        }
        if degree <= 2 {
            break;
        }
    }
    Ok(best)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Q4Evidence {
    /// The standard form of degree at most 2.
    Form { form: SemilinearForm },
    /// A degree-3 monomial of the reduced `r` (1-based variables) and the
    /// subcode of length 4 obtained by fixing the remaining coordinates, whose
    /// reduced `r` keeps that monomial.
    Cubic { form: SemilinearForm, monomial: Vec<usize>, fixed: BTreeMap<usize, Symbol> },
    /// A subcode of length 4 equivalent to `H`.
    HSubcode { fixed: BTreeMap<usize, Symbol>, isometry: Isometry },
    /// Not semilinear, and no subcode equivalent to `H` was located.
    Unlocated,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Q4Verdict {
    pub semilinear: bool,
    pub degree: Option<usize>,
    /// Semilinear of degree at most 2.
    pub transitive: bool,
    pub evidence: Q4Evidence,
    /// Brute-force transitivity, when requested.
    pub cross_check: Option<bool>,
}

impl Q4Verdict {
    /// `false` only when the brute-force check ran and disagreed.
    pub fn consistent(&self) -> bool {
        self.cross_check.map_or(true, |c| c == self.transitive)
    }
}

fn locate_h(code: &MdsCode, budget: &Budget) -> Result<Option<(BTreeMap<usize, Symbol>, Isometry)>> {
    let n = code.n();
    if n < 4 {
        return Ok(None);
    }
    let h = code_h();
    for free in (0..n).combinations(4) {
        let rest: Vec<usize> = (0..n).filter(|i| !free.contains(i)).collect();
        for vals in rest.iter().map(|_| 0..4 as Symbol).multi_cartesian_product() {
            let fixed: BTreeMap<usize, Symbol> = rest.iter().copied().zip(vals).collect();
            let sub = subcode(code, &fixed)?;
            if let EquivalenceVerdict::Equivalent(g) = equivalent_codes(&sub, &h, budget)? {
                return Ok(Some((fixed, g)));
            }
        }
    }
    Ok(None)
}

/// The transitivity verdict for a code in `Q_4^n`, `n ≤ 5`: transitive iff
/// semilinear with `r` of degree at most 2.
pub fn classify(code: &MdsCode, cross_check: bool, budget: &Budget) -> Result<Q4Verdict> {
    let form = semilinearity_test(code)?;
    let (semilinear, degree) = (form.is_some(), form.as_ref().map(|f| f.degree));
    let transitive = degree.is_some_and(|d| d <= 2);
    let evidence = match form {
        Some(form) if form.degree <= 2 => Q4Evidence::Form { form },
        Some(form) => {
            let support = form
                .reduced
                .monomials()
                .into_iter()
                .find(|m| m.len() == 3)
                .expect("degree above 2 for n <= 5 means a cubic or quartic term");
            let mut fixed = BTreeMap::new();
            for i in (0..code.n() - 1).filter(|i| !support.contains(i)) {
                fixed.insert(i, form.witness.component(i).inverse().apply(0));
            }
            let monomial = support.iter().map(|i| i + 1).collect();
            Q4Evidence::Cubic { form, monomial, fixed }
        }
        None => match locate_h(code, budget)? {
            Some((fixed, isometry)) => Q4Evidence::HSubcode { fixed, isometry },
            None => Q4Evidence::Unlocated,
        },
    };
    let cross_check = if cross_check { Some(is_isotopically_transitive(code, budget)?.is_transitive()) } else { None };
    Ok(Q4Verdict { semilinear, degree, transitive, evidence, cross_check })
}
