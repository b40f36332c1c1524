use super::Loop;
use crate::algebra::{Permutation, Symbol};

const UNSET: Symbol = Symbol::MAX;

/// Per-element invariant: cycle types of both translations and the square.
fn profile(l: &Loop, x: Symbol) -> (Vec<usize>, Vec<usize>, bool, bool) {
    let sq = l.op(x, x);
    (l.left_translation(x).cycle_type(), l.right_translation(x).cycle_type(), sq == l.identity(), sq == x)
}

struct Search<'a> {
    f: &'a Loop,
    g: &'a Loop,
    q: usize,
    fprof: Vec<usize>,
    gprof: Vec<usize>,
}

impl Search<'_> {
    /// Assigns `x ↦ y` and closes the partial map under the operation.
    /// Returns false on a contradiction.
    fn assign(&self, map: &mut [Symbol], inv: &mut [Symbol], done: &mut Vec<Symbol>, x: Symbol, y: Symbol) -> bool {
        let mut queue = vec![(x, y)];
        while let Some((x, y)) = queue.pop() {
            match (map[x as usize], inv[y as usize]) {
                (UNSET, UNSET) => {}
                (m, _) if m == y => continue,
                _ => return false,
            }
            if self.fprof[x as usize] != self.gprof[y as usize] {
                return false;
            }
            map[x as usize] = y;
            inv[y as usize] = x;
            done.push(x);
            for i in 0..done.len() {
                let z = done[i];
                let mz = map[z as usize];
                for (u, v) in [(self.f.op(x, z), self.g.op(y, mz)), (self.f.op(z, x), self.g.op(mz, y))] {
                    match (map[u as usize], inv[v as usize]) {
                        (m, _) if m == v => {}
                        (UNSET, UNSET) => queue.push((u, v)),
                        _ => return false,
                    }
                }
            }
        }
        true
    }

    fn extend_all(&self, map: &[Symbol], inv: &[Symbol], done: &[Symbol], out: &mut Vec<Vec<Symbol>>) {
        let Some(x) = (0..self.q as Symbol).find(|&x| map[x as usize] == UNSET) else {
            out.push(map.to_vec());
            return;
        };
        for y in 0..self.q as Symbol {
            if inv[y as usize] != UNSET || self.fprof[x as usize] != self.gprof[y as usize] {
                continue;
            }
            let (mut m, mut i, mut d) = (map.to_vec(), inv.to_vec(), done.to_vec());
            if self.assign(&mut m, &mut i, &mut d, x, y) {
                self.extend_all(&m, &i, &d, out);
            }
        }
    }

    fn extend(&self, map: &[Symbol], inv: &[Symbol], done: &[Symbol]) -> Option<Vec<Symbol>> {
        let Some(x) = (0..self.q as Symbol).find(|&x| map[x as usize] == UNSET) else {
            return Some(map.to_vec());
        };
        for y in 0..self.q as Symbol {
            if inv[y as usize] != UNSET || self.fprof[x as usize] != self.gprof[y as usize] {
                continue;
            }
            let (mut m, mut i, mut d) = (map.to_vec(), inv.to_vec(), done.to_vec());
            if self.assign(&mut m, &mut i, &mut d, x, y) {
                if let Some(found) = self.extend(&m, &i, &d) {
                    return Some(found);
                }
            }
        }
        None
    }
}

/// Every automorphism of `l`, in lexicographic order of image tables.
pub fn loop_automorphisms(l: &Loop) -> Vec<Permutation> {
    let q = l.order();
    let prof: Vec<_> = (0..q as Symbol).map(|x| profile(l, x)).collect();
    let mut classes = prof.clone();
    classes.sort();
    classes.dedup();
    let ids: Vec<usize> = prof.iter().map(|p| classes.binary_search(p).unwrap()).collect();
    let search = Search { f: l, g: l, q, fprof: ids.clone(), gprof: ids };
    let (mut map, mut inv, mut done) = (vec![UNSET; q], vec![UNSET; q], Vec::with_capacity(q));
    let mut out = Vec::new();
    if search.assign(&mut map, &mut inv, &mut done, l.identity(), l.identity()) {
        search.extend_all(&map, &inv, &done, &mut out);
    }
    out.sort();
    out.into_iter().map(|m| Permutation::from_images(m).expect("bijective")).collect()
}

/// A permutation `τ` with `τ(f(x, y)) = g(τx, τy)` for all `x, y`, if one exists.
///
/// Backtracks over images of one element at a time; every assignment is
/// closed under products, and elements are only matched to elements with the
/// same translation cycle types.
pub fn loop_isomorphic(f: &Loop, g: &Loop) -> Option<Permutation> {
    let q = f.order();
    if q != g.order() {
        return None;
    }
    let fp: Vec<_> = (0..q as Symbol).map(|x| profile(f, x)).collect();
    let gp: Vec<_> = (0..q as Symbol).map(|x| profile(g, x)).collect();
    let mut classes: Vec<_> = fp.clone();
    classes.sort();
    classes.dedup();
    let class_of = |p: &(Vec<usize>, Vec<usize>, bool, bool)| classes.binary_search(p).ok();
    let fprof: Vec<usize> = fp.iter().map(|p| class_of(p).unwrap()).collect();
    let mut gprof = Vec::with_capacity(q);
    for p in &gp {
        gprof.push(class_of(p)?);
    }
    let (mut fs, mut gs) = (fprof.clone(), gprof.clone());
    fs.sort_unstable();
    gs.sort_unstable();
    if fs != gs {
        return None;
    }
    let search = Search { f, g, q, fprof, gprof };
    let (mut map, mut inv, mut done) = (vec![UNSET; q], vec![UNSET; q], Vec::with_capacity(q));
    if !search.assign(&mut map, &mut inv, &mut done, f.identity(), g.identity()) {
        return None;
    }
    let images = search.extend(&map, &inv, &done)?;
    let tau = Permutation::from_images(images).ok()?;
    let ok = (0..q as Symbol)
        .all(|x| (0..q as Symbol).all(|y| tau.apply(f.op(x, y)) == g.op(tau.apply(x), tau.apply(y))));
    ok.then_some(tau)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Alphabet;
    use crate::loops::{make_cp, make_cyclic, make_dihedral, make_zp_z2, BinaryQuasigroup};

    #[test]
    fn automorphism_counts() {
        // |Aut(D_p)| = p(p − 1); |Aut(Z_6)| = 2
        assert_eq!(loop_automorphisms(&make_dihedral(3).unwrap()).len(), 6);
        assert_eq!(loop_automorphisms(&make_dihedral(5).unwrap()).len(), 20);
        assert_eq!(loop_automorphisms(&make_cyclic(6).unwrap()).len(), 2);
    }

    #[test]
    fn reflexive() {
        for l in [make_cp(3).unwrap(), make_dihedral(3).unwrap(), make_cyclic(6).unwrap()] {
            assert!(loop_isomorphic(&l, &l).is_some());
        }
    }

    #[test]
    fn z6_is_z3_z2() {
        let a = make_cyclic(6).unwrap();
        let b = make_zp_z2(3).unwrap();
        let tau = loop_isomorphic(&a, &b).unwrap();
        assert_eq!(tau.apply(0), 0);
    }

    #[test]
    fn d3_not_z6() {
        assert!(loop_isomorphic(&make_dihedral(3).unwrap(), &make_cyclic(6).unwrap()).is_none());
        assert!(loop_isomorphic(&make_cp(3).unwrap(), &make_dihedral(3).unwrap()).is_none());
    }

    #[test]
    fn relabelled_copy_is_found() {
        let l = make_cp(5).unwrap();
        let sigma = Permutation::from_images(vec![0, 3, 7, 1, 9, 2, 8, 4, 6, 5]).unwrap();
        let inv = sigma.inverse();
        let alphabet = Alphabet::plain(10).unwrap();
        let h = BinaryQuasigroup::from_fn(alphabet, |x, y| sigma.apply(l.op(inv.apply(x), inv.apply(y))))
            .unwrap()
            .into_loop()
            .unwrap();
        let tau = loop_isomorphic(&l, &h).unwrap();
        let back = loop_isomorphic(&h, &l).unwrap();
        // back ∘ tau is an automorphism of l
        let auto = back.compose(&tau).unwrap();
        for x in 0..10 {
            for y in 0..10 {
                assert_eq!(auto.apply(l.op(x, y)), l.op(auto.apply(x), auto.apply(y)));
            }
        }
    }
}
