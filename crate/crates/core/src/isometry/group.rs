use std::collections::{HashMap, HashSet};

use super::{Budget, Isotopism};
use crate::algebra::{Permutation, Symbol};
use crate::code::MdsCode;
use crate::error::{BudgetExceeded, Error, Result};

/// All elements of the group generated by `gens`, identity first, in
/// breadth-first order.
pub fn generate_group(gens: &[Isotopism], budget: &Budget) -> Result<Vec<Isotopism>> {
    let Some(first) = gens.first() else {
        return Err(Error::InvalidSpec("no generators".into()));
    };
    let (q, n) = (first.q(), first.n());
    if let Some(g) = gens.iter().find(|g| g.q() != q || g.n() != n) {
        return Err(Error::DegreeMismatch(q, g.q()));
    }
    let id = Isotopism::identity(q, n);
    let mut seen: HashSet<Isotopism> = HashSet::from([id.clone()]);
    let mut elems = vec![id];
    let mut head = 0;
    while head < elems.len() {
        let e = elems[head].clone();
        head += 1;
        for g in gens {
            let h = g.compose_unchecked(&e);
            if !seen.contains(&h) {
                if elems.len() >= budget.max_group {
                    return Err(BudgetExceeded::new("group elements", budget.max_group as u64, None).into());
                }
                seen.insert(h.clone());
                elems.push(h);
            }
        }
    }
    Ok(elems)
}

/// The orbit of `word` under the group generated by `gens`.
pub fn orbit_of(word: &[Symbol], gens: &[Isotopism]) -> Vec<Vec<Symbol>> {
    let mut seen: HashSet<Vec<Symbol>> = HashSet::from([word.to_vec()]);
    let mut out = vec![word.to_vec()];
    let mut head = 0;
    while head < out.len() {
        let w = out[head].clone();
        head += 1;
        for g in gens {
            let v = g.apply_word(&w);
            if seen.insert(v.clone()) {
                out.push(v);
            }
        }
    }
    out.sort();
    out
}

/// The word the regularity criterion is read at: `0̄` if present, else the
/// first codeword.
pub(crate) fn base_word(code: &MdsCode) -> Vec<Symbol> {
    code.word(0).to_vec()
}

/// Whether, in the group generated by `gens`, two elements that agree on the
/// base word (`0̄` when it is a codeword) always agree at coordinate `coord`.
/// For a transitive group of autotopisms this makes the group regular.
pub fn check_regular_condition(code: &MdsCode, gens: &[Isotopism], coord: usize, budget: &Budget) -> Result<bool> {
    if coord >= code.n() {
        return Err(Error::InvalidSpec(format!("coordinate {coord} out of range")));
    }
    let group = generate_group(gens, budget)?;
    let base = base_word(code);
    let mut by_image: HashMap<Vec<Symbol>, &Permutation> = HashMap::new();
    for g in &group {
        let comp = g.component(coord);
        match by_image.entry(g.apply_word(&base)) {
            std::collections::hash_map::Entry::Occupied(e) => {
                if *e.get() != comp {
                    return Ok(false);
                }
            }
            std::collections::hash_map::Entry::Vacant(e) => {
                e.insert(comp);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::isometry::{autotopism_search, ic_p_generators, ic_p_regular_generators, Pin};
    use crate::loops::make_cp;

    #[test]
    fn cp_regular_subfamily() {
        for p in [3, 5] {
            let m = make_cp(p).unwrap().graph();
            let gens = ic_p_regular_generators(p);
            let g = generate_group(&gens, &Budget::default()).unwrap();
            assert_eq!(g.len(), 4 * p * p);
            assert!(check_regular_condition(&m, &gens, 1, &Budget::default()).unwrap());
            assert_eq!(orbit_of(&[0, 0, 0], &gens).len(), m.len());
        }
    }

    #[test]
    fn full_ic_p_has_a_stabiliser() {
        let m = make_cp(3).unwrap().graph();
        let gens = ic_p_generators(3);
        assert_eq!(generate_group(&gens, &Budget::default()).unwrap().len(), 108);
        for coord in 0..3 {
            assert!(!check_regular_condition(&m, &gens, coord, &Budget::default()).unwrap());
        }
    }

    #[test]
    fn parity_groups() {
        let b = Budget::default();
        let m2 = MdsCode::parity(2, 3).unwrap();
        let ist2 = autotopism_search(&m2, &Pin::none(), &b).unwrap().collect_all().unwrap();
        // order 4 = |M|: already regular
        assert!(check_regular_condition(&m2, &ist2, 1, &b).unwrap());
        let m3 = MdsCode::parity(3, 3).unwrap();
        let ist3 = autotopism_search(&m3, &Pin::none(), &b).unwrap().collect_all().unwrap();
        // negation fixes 0̄ but moves every coordinate
        assert!(!check_regular_condition(&m3, &ist3, 1, &b).unwrap());
    }

    #[test]
    fn group_cap() {
        let gens = ic_p_generators(5);
        let tight = Budget { max_group: 10, ..Budget::default() };
        assert!(generate_group(&gens, &tight).unwrap_err().is_budget());
    }
}
