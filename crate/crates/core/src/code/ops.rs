use std::collections::BTreeMap;

use super::{MdsCode, Provenance};
use crate::algebra::{Alphabet, Symbol};
use crate::error::{Error, Result};

/// Fixes the coordinates in `fixed` and projects onto the remaining ones
/// (kept in ascending order).
pub fn subcode(code: &MdsCode, fixed: &BTreeMap<usize, Symbol>) -> Result<MdsCode> {
    let n = code.n();
    if fixed.len() + 2 > n {
        return Err(Error::InvalidSubcode(format!(
            "fixing {} of {n} coordinates leaves fewer than 2",
            fixed.len()
        )));
    }
    if let Some((&c, &s)) = fixed.iter().find(|(&c, &s)| c >= n || s as usize >= code.q()) {
        return Err(Error::InvalidSubcode(format!("cannot fix coordinate {c} to {s}")));
    }
    let free: Vec<usize> = (0..n).filter(|c| !fixed.contains_key(c)).collect();
    let mut flat = Vec::new();
    for w in code.words().filter(|w| fixed.iter().all(|(&c, &s)| w[c] == s)) {
        flat.extend(free.iter().map(|&c| w[c]));
    }
    let prov = Provenance::Subcode { parent: Box::new(code.provenance().clone()), fixed: fixed.clone() };
    MdsCode::from_flat(*code.alphabet(), free.len(), flat, prov)
}

/// Coordinatewise Cartesian product over `Q_{q1} × Q_{q2}`, symbol `(a, b)`
/// stored as `a * q2 + b`.
pub fn product_code(a: &MdsCode, b: &MdsCode) -> Result<MdsCode> {
    if a.n() != b.n() {
        return Err(Error::LengthMismatch(a.n(), b.n()));
    }
    let (n, q2) = (a.n(), b.q());
    let alphabet = Alphabet::pair(a.q(), q2)?;
    let mut flat = Vec::with_capacity(a.len() * b.len() * n);
    for wa in a.words() {
        for wb in b.words() {
            flat.extend(wa.iter().zip(wb).map(|(&x, &y)| (x as usize * q2 + y as usize) as Symbol));
        }
    }
    let prov = Provenance::Product {
        left: Box::new(a.provenance().clone()),
        right: Box::new(b.provenance().clone()),
    };
    MdsCode::from_flat(alphabet, n, flat, prov)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subcode_of_parity() {
        let code = MdsCode::parity(3, 3).unwrap();
        let sub = subcode(&code, &BTreeMap::from([(0, 0)])).unwrap();
        assert!(sub.same_words(&MdsCode::parity(3, 2).unwrap()));
    }

    #[test]
    fn subcode_refuses_degenerate() {
        let code = MdsCode::parity(3, 3).unwrap();
        assert!(subcode(&code, &BTreeMap::from([(0, 0), (1, 0)])).is_err());
        assert!(subcode(&code, &BTreeMap::from([(5, 0)])).is_err());
    }

    #[test]
    fn binary_parity_squared_is_klein_parity() {
        let p2 = MdsCode::parity(2, 3).unwrap();
        let prod = product_code(&p2, &p2).unwrap();
        assert_eq!(prod.len(), 16);
        // symbol (a,b) = 2a+b; coordinatewise XOR of pairs vanishes
        for w in prod.words() {
            assert_eq!(w.iter().fold(0, |acc, &s| acc ^ s), 0);
        }
    }

    #[test]
    fn mixed_product_is_mds() {
        let prod = product_code(&MdsCode::parity(2, 3).unwrap(), &MdsCode::parity(3, 3).unwrap()).unwrap();
        assert_eq!((prod.q(), prod.len()), (6, 36));
        assert_eq!(prod.check_lines(), Ok(3 * 36));
    }

    #[test]
    fn length_mismatch() {
        let a = MdsCode::parity(2, 3).unwrap();
        let b = MdsCode::parity(2, 4).unwrap();
        assert!(matches!(product_code(&a, &b), Err(Error::LengthMismatch(3, 4))));
    }
}
