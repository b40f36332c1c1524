use rayon::prelude::*;

use super::{loop_isomorphic, reduced_latin_squares, BinaryQuasigroup, Loop};
use crate::algebra::{Alphabet, Permutation, Symbol};
use crate::error::{Error, Result};
use crate::isometry::Isotopism;

/// Largest loop order accepted by [`is_g_loop`].
pub const G_LOOP_ORDER_BOUND: usize = 12;

/// A loop `f''(x, y) = φ(f(ξx, ψy))` with identity 0, isotopic to `f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrincipalIsotope {
    pub isotope: Loop,
    pub xi: Permutation,
    pub psi: Permutation,
    pub phi: Permutation,
}

/// Normalizes `f` around the entry at `(a, b)`.
///
/// With `ξ = (0 a)`, `ψ = (0 b)`, `φ = (f(a,b) 0)` put `f'(x,y) = φf(ξx, ψy)`,
/// `ξ₀x = f'(x,0)`, `ψ₀y = f'(0,y)`; the result is
/// `f''(x,y) = f'(ξ₀⁻¹x, ψ₀⁻¹y)`, a loop with identity 0.
pub fn principal_isotope(f: &BinaryQuasigroup, a: Symbol, b: Symbol) -> PrincipalIsotope {
    let q = f.order();
    let xi = Permutation::transposition(q, 0, a);
    let psi = Permutation::transposition(q, 0, b);
    let phi = Permutation::transposition(q, f.op(a, b), 0);
    let f1 = f.isotope(&xi, &psi, &phi);
    let xi0 = f1.right_translation(0);
    let psi0 = f1.left_translation(0);
    let xi = xi.compose_unchecked(&xi0.inverse());
    let psi = psi.compose_unchecked(&psi0.inverse());
    let isotope = f.isotope(&xi, &psi, &phi).into_loop().expect("principal isotope has identity 0");
    debug_assert_eq!(isotope.identity(), 0);
    PrincipalIsotope { isotope, xi, psi, phi }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GLoopVerdict {
    GLoop,
    /// The principal isotope at `(a, b)` is not isomorphic to the loop.
    NotGLoop { a: Symbol, b: Symbol, isotope: Loop },
}

impl GLoopVerdict {
    pub fn is_g_loop(&self) -> bool {
        matches!(self, GLoopVerdict::GLoop)
    }
}

/// Whether `f` is isomorphic to each of its principal isotopes.
///
/// Every loop isotopic to `f` is isomorphic to a principal isotope of `f`, so
/// this decides the G-loop property.
pub fn is_g_loop(f: &Loop) -> Result<GLoopVerdict> {
    let q = f.order();
    if q > G_LOOP_ORDER_BOUND {
        return Err(Error::OrderTooLarge { order: q, bound: G_LOOP_ORDER_BOUND });
    }
    let found = (0..q * q).into_par_iter().find_map_first(|idx| {
        let (a, b) = ((idx / q) as Symbol, (idx % q) as Symbol);
        let iso = principal_isotope(f, a, b).isotope;
        loop_isomorphic(f, &iso).is_none().then_some(GLoopVerdict::NotGLoop { a, b, isotope: iso })
    });
    Ok(found.unwrap_or(GLoopVerdict::GLoop))
}

/// The autotopism of the graph of `f` sending `(e, e, e)` to `(a, b, f(a,b))`,
/// built from an isomorphism `τ : f → f''`: `(ξτ, ψτ, φ⁻¹τ)`.
pub fn g_loop_autotopism(f: &Loop, a: Symbol, b: Symbol) -> Option<Isotopism> {
    let pi = principal_isotope(f, a, b);
    let tau = loop_isomorphic(f, &pi.isotope)?;
    Some(Isotopism::new(vec![
        pi.xi.compose_unchecked(&tau),
        pi.psi.compose_unchecked(&tau),
        pi.phi.inverse().compose_unchecked(&tau),
    ]))
}

/// The first loop of order 6 with identity 0, in lexicographic order of
/// Cayley tables, that is not a G-loop.
pub fn find_non_g_loop() -> Option<(Loop, GLoopVerdict)> {
    reduced_latin_squares(6).expect("order 6 is in range").into_iter().find_map(|sq| {
        let l = sq.into_loop().ok()?;
        match is_g_loop(&l).ok()? {
            GLoopVerdict::GLoop => None,
            v => Some((l, v)),
        }
    })
}

const NON_G6: [[Symbol; 6]; 6] = [
    [0, 1, 2, 3, 4, 5],
    [1, 0, 3, 2, 5, 4],
    [2, 3, 4, 5, 0, 1],
    [3, 2, 5, 4, 1, 0],
    [4, 5, 0, 1, 3, 2],
    [5, 4, 1, 0, 2, 3],
];

/// A fixed loop of order 6 that is not a G-loop (the first one in
/// [`find_non_g_loop`] order).
pub fn non_g_loop_fixture() -> Loop {
    BinaryQuasigroup::new(Alphabet::plain(6).expect("q = 6"), NON_G6.concat())
        .and_then(BinaryQuasigroup::into_loop)
        .expect("fixture is a loop")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::loops::{make_cp, make_cyclic, make_dihedral, make_zp_z2};

    #[test]
    fn trivial_normalization() {
        let c = make_cp(3).unwrap();
        assert_eq!(principal_isotope(&c, 0, 0).isotope, c);
    }

    #[test]
    fn isotope_is_isotopic() {
        let c = make_cp(3).unwrap();
        let pi = principal_isotope(&c, 1, 3);
        assert_eq!(pi.isotope.identity(), 0);
        for x in 0..6 {
            for y in 0..6 {
                assert_eq!(pi.isotope.op(x, y), pi.phi.apply(c.op(pi.xi.apply(x), pi.psi.apply(y))));
            }
        }
    }

    #[test]
    fn group_isotopes_are_isomorphic() {
        let z6 = make_cyclic(6).unwrap();
        for a in 0..6 {
            for b in 0..6 {
                assert!(loop_isomorphic(&z6, &principal_isotope(&z6, a, b).isotope).is_some());
            }
        }
    }

    #[test]
    fn groups_and_cp_are_g_loops() {
        for l in [make_cyclic(6).unwrap(), make_dihedral(3).unwrap(), make_zp_z2(3).unwrap(), make_cp(3).unwrap()] {
            assert!(is_g_loop(&l).unwrap().is_g_loop());
        }
    }

    #[test]
    fn autotopisms_from_isomorphisms() {
        let c = make_cp(3).unwrap();
        let g = c.graph();
        for a in 0..6 {
            for b in 0..6 {
                let t = g_loop_autotopism(&c, a, b).unwrap();
                assert!(t.is_autotopism(&g));
                assert_eq!(t.apply_word(&[0, 0, 0]), vec![a, b, c.op(a, b)]);
            }
        }
    }

    #[test]
    fn order_bound() {
        let big = make_cyclic(13).unwrap();
        assert!(is_g_loop(&big).is_err());
    }

    #[test]
    fn fixture_is_not_a_g_loop() {
        let l = non_g_loop_fixture();
        let GLoopVerdict::NotGLoop { a, b, isotope } = is_g_loop(&l).unwrap() else { panic!("fixture is a G-loop") };
        assert_eq!(principal_isotope(&l, a, b).isotope, isotope);
        assert!(loop_isomorphic(&l, &isotope).is_none());
    }

    #[test]
    fn fixture_is_first_in_search_order() {
        let (found, _) = find_non_g_loop().unwrap();
        assert_eq!(found, non_g_loop_fixture());
    }
}
