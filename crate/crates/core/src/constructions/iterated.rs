//! Iterated groups `x_1 ∘ ⋯ ∘ x_n = e`, their propelinear operation and
//! shift isotopisms.

use crate::code::decode;
use crate::algebra::{Permutation, Symbol};
use crate::code::{MdsCode, Provenance};
use crate::error::{Error, Result};
use crate::isometry::Isotopism;
use crate::loops::{BuiltinLoop, Loop};

/// A group together with a code length.
#[derive(Clone, Debug)]
pub struct IteratedGroupSpec {
    group: Loop,
    name: Option<BuiltinLoop>,
    n: usize,
}

impl IteratedGroupSpec {
    /// Fails with [`Error::NotAssociative`] on a non-group.
    pub fn new(group: Loop, n: usize) -> Result<Self> {
        if let Some((x, y, z)) = group.associativity_witness() {
            return Err(Error::NotAssociative(x, y, z));
        }
        if n < 2 {
            return Err(Error::InvalidSpec(format!("length {n} < 2")));
        }
        Ok(Self { group, name: None, n })
    }

    pub fn builtin(name: BuiltinLoop, n: usize) -> Result<Self> {
        let mut spec = Self::new(name.build()?, n)?;
        spec.name = Some(name);
        Ok(spec)
    }

    pub fn group(&self) -> &Loop {
        &self.group
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `z_1 ∘ ⋯ ∘ z_k`.
    pub fn product(&self, z: &[Symbol]) -> Symbol {
        z.iter().fold(self.group.identity(), |acc, &s| self.group.op(acc, s))
    }

    /// `x ∗ y = (x_1 y_1, y_1⁻¹ x_2 y_1 y_2, …)`: component `i` is
    /// `P_{i−1}⁻¹ x_i P_i` with `P_i = y_1 ⋯ y_i`.
    pub fn star(&self, x: &[Symbol], y: &[Symbol]) -> Vec<Symbol> {
        self.right_multiplication(y).apply_word(x)
    }

    /// `ρ_y : x ↦ x ∗ y`, which acts coordinatewise.
    pub fn right_multiplication(&self, y: &[Symbol]) -> Isotopism {
        let g = &self.group;
        let q = g.order();
        let mut prev = g.identity();
        let taus = y
            .iter()
            .map(|&yi| {
                let next = g.op(prev, yi);
                let pinv = g.inverse(prev);
                let t = Permutation::from_fn(q, |z| g.op(g.op(pinv, z), next)).expect("group translations");
                prev = next;
                t
            })
            .collect();
        Isotopism::new(taus)
    }

    /// `{ρ_y : y ∈ M}`, a regular group of autotopisms of the code.
    pub fn propelinear_group(&self, code: &MdsCode) -> Vec<Isotopism> {
        code.words().map(|y| self.right_multiplication(y)).collect()
    }
}

/// `{x ∈ Q_q^n : x_1 ∘ ⋯ ∘ x_n = e}`.
pub fn iterated_code(spec: &IteratedGroupSpec) -> Result<MdsCode> {
    let g = &spec.group;
    let (q, n) = (g.order(), spec.n);
    let count = crate::code::words_budget(q, n)? as usize;
    let mut flat = Vec::with_capacity(count * n);
    let mut w = vec![0 as Symbol; n];
    for idx in 0..count {
        decode(idx, q, &mut w[..n - 1]);
        let p = spec.product(&w[..n - 1]);
        w[n - 1] = g.inverse(p);
        flat.extend_from_slice(&w);
    }
    let prov = match spec.name {
        Some(group) => Provenance::Iterated { group, length: n },
        None => Provenance::Literal,
    };
    MdsCode::from_flat(*g.alphabet(), n, flat, prov)
}

/// `θ_i(z) = B_{i−1} z B_i⁻¹` with `B_i = b_1 ⋯ b_i`: sends `b` to `0̄` and
/// satisfies `h(θ̄z̄) = h(z̄)` for `h = z_1 ∘ ⋯ ∘ z_m`, provided `h(b) = e`.
pub fn shift_isotopism(spec: &IteratedGroupSpec, b: &[Symbol]) -> Result<Isotopism> {
    let g = &spec.group;
    if b.is_empty() {
        return Err(Error::InvalidSpec("empty tuple".into()));
    }
    if spec.product(b) != g.identity() {
        return Err(Error::InvalidSpec(format!("h({b:?}) is not the identity")));
    }
    Ok(shift_isotopism_unchecked(g, b))
}

pub(crate) fn shift_isotopism_unchecked(g: &Loop, b: &[Symbol]) -> Isotopism {
    let q = g.order();
    let mut prev = g.identity();
    let taus = b
        .iter()
        .map(|&bi| {
            let next = g.op(prev, bi);
            let ninv = g.inverse(next);
            let t = Permutation::from_fn(q, |z| g.op(g.op(prev, z), ninv)).expect("group translations");
            prev = next;
            t
        })
        .collect();
    Isotopism::new(taus)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::TwoIndexed;
    use crate::isometry::{generate_group, Budget};

    fn all_tuples(q: usize, m: usize) -> impl Iterator<Item = Vec<Symbol>> {
        (0..q.pow(m as u32)).map(move |i| {
            let mut z = vec![0; m];
            decode(i, q, &mut z);
            z
        })
    }

    #[test]
    fn binary_is_xor() {
        let spec = IteratedGroupSpec::builtin(BuiltinLoop::Cyclic { q: 2 }, 3).unwrap();
        let m = iterated_code(&spec).unwrap();
        assert!(m.same_words(&MdsCode::parity(2, 3).unwrap()));
        for x in m.words() {
            for y in m.words() {
                let xy: Vec<Symbol> = x.iter().zip(y).map(|(a, b)| a ^ b).collect();
                assert_eq!(spec.star(x, y), xy);
            }
        }
    }

    #[test]
    fn dihedral_star_is_propelinear() {
        let spec = IteratedGroupSpec::builtin(BuiltinLoop::Dihedral { p: 3 }, 3).unwrap();
        let m = iterated_code(&spec).unwrap();
        assert_eq!(m.len(), 36);
        let zero = [0, 0, 0];
        for x in m.words() {
            assert_eq!(spec.star(x, &zero), x.to_vec());
            assert_eq!(spec.star(&zero, x), x.to_vec());
            assert!(spec.right_multiplication(x).is_autotopism(&m));
            for y in m.words() {
                let xy = spec.star(x, y);
                assert!(m.contains(&xy));
                for z in m.words() {
                    assert_eq!(spec.star(&xy, z), spec.star(x, &spec.star(y, z)));
                }
            }
        }
    }

    #[test]
    fn cyclic_group_is_regular() {
        let spec = IteratedGroupSpec::builtin(BuiltinLoop::Cyclic { q: 3 }, 3).unwrap();
        let m = iterated_code(&spec).unwrap();
        let gens = spec.propelinear_group(&m);
        let g = generate_group(&gens, &Budget::default()).unwrap();
        assert_eq!(g.len(), 9);
        let images: std::collections::HashSet<_> = g.iter().map(|t| t.apply_word(&[0, 0, 0])).collect();
        assert_eq!(images.len(), 9);
    }

    #[test]
    fn rejects_non_groups() {
        assert!(IteratedGroupSpec::builtin(BuiltinLoop::Cp { p: 3 }, 3).is_err());
        assert!(IteratedGroupSpec::builtin(BuiltinLoop::Cyclic { q: 3 }, 1).is_err());
    }

    #[test]
    fn shift_identities() {
        let spec = IteratedGroupSpec::builtin(BuiltinLoop::Dihedral { p: 3 }, 3).unwrap();
        assert!(shift_isotopism(&spec, &[0, 0, 0]).unwrap().is_identity());
        let v = TwoIndexed::new(3);
        let b = [v.index(1, 0), v.index(2, 0), v.index(0, 0)];
        let theta = shift_isotopism(&spec, &b).unwrap();
        assert_eq!(theta.apply_word(&b), vec![0, 0, 0]);
        for z in all_tuples(6, 3) {
            assert_eq!(spec.product(&theta.apply_word(&z)), spec.product(&z));
        }
        assert!(shift_isotopism(&spec, &[1, 0, 0]).is_err());
    }

    #[test]
    fn shift_for_cyclic_is_subtraction() {
        let spec = IteratedGroupSpec::builtin(BuiltinLoop::Cyclic { q: 3 }, 3).unwrap();
        let b = [1, 1, 1];
        let theta = shift_isotopism(&spec, &b).unwrap();
        // θ_i(z) = z + B_{i−1} − B_i = z − b_i
        for (i, t) in theta.taus().iter().enumerate() {
            for z in 0..3 {
                assert_eq!(t.apply(z), (z + 3 - b[i]) % 3);
            }
        }
    }
}
