//! Lower bounds on the number of inequivalent codes: integer partitions for
//! compositions, quadratic forms for quadratic codes.

use itertools::Itertools;
use num_bigint::{BigInt, BigUint};
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::constructions::{composition_code, quadratic_code, CompositionSpec, Outer, QuadraticSpec};
use crate::error::{Error, Result};
use crate::isometry::{equivalent_codes, Budget, EquivalenceVerdict, Isometry};

/// Largest `N` accepted by [`partition_exact`].
pub const MAX_PARTITION_N: usize = 10_000;

/// `p(N)` by Euler's pentagonal recurrence.
pub fn partition_exact(n: usize) -> Result<BigUint> {
    if n > MAX_PARTITION_N {
        return Err(Error::OrderTooLarge { order: n, bound: MAX_PARTITION_N });
    }
    let mut p: Vec<BigInt> = Vec::with_capacity(n + 1);
    p.push(BigInt::from(1));
    for m in 1..=n {
        let mut acc = BigInt::zero();
        for k in 1.. {
            let g1 = k * (3 * k - 1) / 2;
            if g1 > m {
                break;
            }
            let g2 = k * (3 * k + 1) / 2;
            let mut term = p[m - g1].clone();
            if g2 <= m {
                term += &p[m - g2];
            }
            if k % 2 == 1 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        p.push(acc);
    }
    Ok(p[n].to_biguint().expect("partition numbers are positive"))
}

/// All partitions of `n` as non-increasing part lists.
pub fn partitions_of(n: usize) -> Vec<Vec<usize>> {
    fn rec(left: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=max.min(left)).rev() {
            cur.push(part);
            rec(left - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// `e^{π√(2N/3)} / (4N√3)`.
pub fn partition_asymptotic(n: usize) -> f64 {
    let n = n as f64;
    (std::f64::consts::PI * (2.0 * n / 3.0).sqrt()).exp() / (4.0 * n * 3f64.sqrt())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PartitionCount {
    pub n: usize,
    /// Decimal digits of `p(N)`.
    pub exact: String,
    pub estimate: f64,
    pub ratio: f64,
}

pub fn ratio_report(ns: &[usize]) -> Result<Vec<PartitionCount>> {
    ns.iter()
        .map(|&n| {
            if n == 0 {
                return Err(Error::InvalidSpec("N must be positive".into()));
            }
            let exact = partition_exact(n)?;
            let estimate = partition_asymptotic(n);
            let ratio = exact.to_f64().unwrap_or(f64::INFINITY) / estimate;
            Ok(PartitionCount { n, exact: exact.to_string(), estimate, ratio })
        })
        .collect()
}

/// Number of quadratic parts `Σ_{i<j} α_ij x_i x_j` over `GF(q)`: `q^C(n,2)`.
pub fn quadratic_form_count(q: usize, n: usize) -> BigUint {
    let e = n * n.saturating_sub(1) / 2;
    BigUint::from(q).pow(e as u32)
}

/// Every strictly upper-triangular `α` over `GF(p^k)` in length `n`.
pub fn upper_triangular_forms(p: u32, k: u32, n: usize) -> Result<Vec<QuadraticSpec>> {
    let q = (p as usize).pow(k);
    let cells: Vec<(usize, usize)> = (0..n).tuple_combinations().collect();
    let total = quadratic_form_count(q, n).to_usize().filter(|&t| t <= 1 << 16);
    let Some(total) = total else {
        return Err(Error::OrderTooLarge { order: usize::MAX, bound: 1 << 16 });
    };
    (0..total)
        .map(|mut idx| {
            let mut alpha = vec![vec![0u8; n]; n];
            for &(i, j) in &cells {
                alpha[i][j] = (idx % q) as u8;
                idx /= q;
            }
            QuadraticSpec::pure(p, k, alpha)
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum PairStatus {
    Equivalent { isometry: Isometry },
    Inequivalent,
    BudgetLimited,
}

/// Pairwise equivalence of a list of codes, and the resulting classes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EquivalenceTable {
    pub labels: Vec<String>,
    /// `(i, j, status)` for `i < j`.
    pub pairs: Vec<(usize, usize, PairStatus)>,
    /// Classes of the labels under the equivalences found.
    pub classes: Vec<Vec<usize>>,
    pub complete: bool,
}

fn equivalence_table(codes: &[crate::code::MdsCode], labels: Vec<String>, budget: &Budget) -> Result<EquivalenceTable> {
    let mut parent: Vec<usize> = (0..codes.len()).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let mut pairs = Vec::new();
    for (i, j) in (0..codes.len()).tuple_combinations() {
        let status = match equivalent_codes(&codes[i], &codes[j], budget) {
            Ok(EquivalenceVerdict::Equivalent(isometry)) => {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[b] = a;
                PairStatus::Equivalent { isometry }
            }
            Ok(EquivalenceVerdict::Inequivalent) => PairStatus::Inequivalent,
            Err(e) if e.is_budget() => PairStatus::BudgetLimited,
            Err(e) => return Err(e),
        };
        pairs.push((i, j, status));
    }
    let complete = pairs.iter().all(|(_, _, s)| *s != PairStatus::BudgetLimited);
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for i in 0..codes.len() {
        let root = find(&mut parent, i);
        match classes.iter_mut().find(|c| find(&mut parent, c[0]) == root) {
            Some(c) => c.push(i),
            None => classes.push(vec![i]),
        }
    }
    Ok(EquivalenceTable { labels, pairs, classes, complete })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LowerBoundReport {
    pub q: usize,
    pub s: usize,
    pub n: usize,
    /// Alphabet size `q² s` of the codes counted.
    pub alphabet: usize,
    /// `q^C(n,2)`, as decimal digits.
    pub forms: String,
    /// Codes of all strictly upper-triangular forms, compared pairwise;
    /// present only for `s = 1` and at most 64 forms.
    pub exhibit: Option<EquivalenceTable>,
}

/// The quadratic-form count for codes in `Q_{q²s}^n`, with a pairwise
/// equivalence exhibit when small enough.
pub fn lower_bound_report(q: usize, s: usize, n: usize, budget: &Budget) -> Result<LowerBoundReport> {
    let (p, k) = prime_power(q).ok_or_else(|| Error::InvalidSpec(format!("{q} is not a prime power")))?;
    if s == 0 || n < 2 {
        return Err(Error::InvalidSpec("need s >= 1 and n >= 2".into()));
    }
    let forms = quadratic_form_count(q, n);
    let exhibit = if s == 1 && forms <= BigUint::from(64u32) && budget.check_points(q * q, n).is_ok() {
        let specs = upper_triangular_forms(p, k, n)?;
        let codes = specs.iter().map(quadratic_code).collect::<Result<Vec<_>>>()?;
        let labels = specs.iter().map(form_label).collect();
        Some(equivalence_table(&codes, labels, budget)?)
    } else {
        None
    };
    Ok(LowerBoundReport { q, s, n, alphabet: q * q * s, forms: forms.to_string(), exhibit })
}

fn form_label(spec: &QuadraticSpec) -> String {
    let mut terms = Vec::new();
    for i in 0..spec.n {
        for j in 0..spec.n {
            match spec.alpha[i][j] {
                0 => {}
                1 => terms.push(format!("x{}x{}", i + 1, j + 1)),
                c => terms.push(format!("{c}x{}x{}", i + 1, j + 1)),
            }
        }
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

fn prime_power(q: usize) -> Option<(u32, u32)> {
    let p = (2..=q).find(|d| q % d == 0)?;
    let mut k = 0;
    let mut m = q;
    while m % p == 0 {
        m /= p;
        k += 1;
    }
    (m == 1).then_some((p as u32, k))
}

/// Composition codes with outer `Z_p × Z_2` for every partition of `total`,
/// compared pairwise.
pub fn partition_codes_report(total: usize, p: usize, budget: &Budget) -> Result<EquivalenceTable> {
    let parts = partitions_of(total);
    let mut codes = Vec::with_capacity(parts.len());
    for part in &parts {
        let spec = CompositionSpec::new(p, Outer::Zpz2, part.clone())?;
        codes.push(composition_code(&spec)?);
    }
    let labels = parts.iter().map(|pt| pt.iter().join("+")).collect();
    equivalence_table(&codes, labels, budget)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dp(n: usize) -> Vec<u64> {
        let mut t = vec![0u64; n + 1];
        t[0] = 1;
        for part in 1..=n {
            for m in part..=n {
                t[m] += t[m - part];
            }
        }
        t
    }

    #[test]
    fn small_values() {
        assert_eq!(partition_exact(0).unwrap(), BigUint::from(1u32));
        assert_eq!(partition_exact(1).unwrap(), BigUint::from(1u32));
        assert_eq!(partition_exact(5).unwrap(), BigUint::from(7u32));
        assert_eq!(partitions_of(5).len(), 7);
        assert_eq!(partition_exact(50).unwrap(), BigUint::from(dp(50)[50]));
        assert_eq!(dp(50)[50], 204226);
        assert!(partition_exact(MAX_PARTITION_N + 1).is_err());
    }

    #[test]
    fn matches_enumeration() {
        for n in 0..=30 {
            assert_eq!(partition_exact(n).unwrap(), BigUint::from(partitions_of(n).len()), "N = {n}");
        }
    }

    #[test]
    fn ratio_trend() {
        let ns: Vec<usize> = (1..=10).map(|i| 10 * i).collect();
        let rows = ratio_report(&ns).unwrap();
        assert!(rows.iter().all(|r| r.estimate > 0.0));
        for w in rows.windows(2) {
            assert!((w[1].ratio - 1.0).abs() < (w[0].ratio - 1.0).abs());
        }
    }

    #[test]
    fn form_counts() {
        assert_eq!(quadratic_form_count(2, 3), BigUint::from(8u32));
        assert_eq!(quadratic_form_count(3, 4), BigUint::from(729u32));
        assert_eq!(upper_triangular_forms(2, 1, 3).unwrap().len(), 8);
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(6), None);
    }
}
