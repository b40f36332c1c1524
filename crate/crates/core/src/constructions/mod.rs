//! Code constructions: iterated groups, compositions with iterated `D_p`,
//! and quadratic codes, each with the autotopisms that make it transitive.

mod composition;
mod iterated;
mod quadratic;

pub use composition::{
    composition_code, lemma_condition_c, lemma_condition_c_check, Composition, CompositionSpec, LemmaEntry,
    LemmaReport, LemmaWitness, Outer,
};
pub use iterated::{iterated_code, shift_isotopism, IteratedGroupSpec};
pub use quadratic::{quadratic_code, quadratic_witness, quadratic_witnesses, QuadraticSpec};

use crate::code::{product_code, subcode, MdsCode, Provenance};
use crate::error::{Error, Result};
use crate::isometry::{ic_p_regular_generators, Isometry, Isotopism};
use crate::loops::BuiltinLoop;
use crate::q4::{code_h, standard_semilinear_code};

/// Rebuilds the code a provenance record describes.
pub fn replay(provenance: &Provenance) -> Result<MdsCode> {
    match provenance {
        Provenance::Literal => Err(Error::InvalidSpec("a literal code has no recipe".into())),
        Provenance::Graph { quasigroup } => Ok(quasigroup.build()?.graph_with(provenance.clone())),
        Provenance::Iterated { group, length } => iterated_code(&IteratedGroupSpec::builtin(*group, *length)?),
        Provenance::Composition { spec } => composition_code(spec),
        Provenance::Quadratic { spec } => quadratic_code(spec),
        Provenance::Semilinear { r } => standard_semilinear_code(r.arity(), r),
        Provenance::CodeH => Ok(code_h()),
        Provenance::Product { left, right } => product_code(&replay(left)?, &replay(right)?),
        Provenance::Subcode { parent, fixed } => subcode(&replay(parent)?, fixed),
        Provenance::Image { parent, isometry } => isometry.apply(&replay(parent)?),
    }
}

/// Autotopisms known from how `code` was built, generating a transitive
/// group (regular for every construction except the composition, whose
/// witnesses are only known to act transitively). `None` when the
/// provenance carries no such family or does not reproduce `code`.
pub fn provided_generators(code: &MdsCode) -> Option<Vec<Isotopism>> {
    let replayed = replay(code.provenance()).ok()?;
    if !replayed.same_words(code) {
        return None;
    }
    let gens = generators_for(code.provenance(), code).ok()??;
    gens.iter().all(|g| g.n() == code.n() && g.q() == code.q()).then_some(gens)
}

fn generators_for(provenance: &Provenance, code: &MdsCode) -> Result<Option<Vec<Isotopism>>> {
    Ok(match provenance {
        Provenance::Graph { quasigroup: BuiltinLoop::Cp { p } } => Some(ic_p_regular_generators(*p)),
        Provenance::Graph { quasigroup } => {
            let g = quasigroup.build()?;
            if !g.is_associative() {
                return Ok(None);
            }
            // (x, y, z) ↦ (a x, y b, a z b)
            let q = g.order();
            let mut gens = Vec::new();
            for a in 0..q as u8 {
                for b in 0..q as u8 {
                    gens.push(Isotopism::from_fns(q, 3, |i, x| match i {
                        0 => g.op(a, x),
                        1 => g.op(x, b),
                        _ => g.op(g.op(a, x), b),
                    })?);
                }
            }
            Some(gens)
        }
        Provenance::Iterated { group, length } => Some(IteratedGroupSpec::builtin(*group, *length)?.propelinear_group(code)),
        Provenance::Composition { spec } => {
            let comp = Composition::new(spec)?;
            let mut out = Vec::with_capacity(code.len());
            for w in code.words() {
                out.push(comp.witness(code, w)?.inverse());
            }
            Some(out)
        }
        Provenance::Quadratic { spec } => Some(quadratic_witnesses(spec, code)),
        Provenance::Semilinear { r } => match r.as_quadratic() {
            Some(spec) => Some(quadratic_witnesses(&spec, code)),
            None => None,
        },
        Provenance::Product { left, right } => {
            let (a, b) = (replay(left)?, replay(right)?);
            let (Some(ga), Some(gb)) = (generators_for(left, &a)?, generators_for(right, &b)?) else {
                return Ok(None);
            };
            let ida = Isotopism::identity(a.q(), a.n());
            let idb = Isotopism::identity(b.q(), b.n());
            let mut gens = Vec::with_capacity(ga.len() + gb.len());
            for g in &ga {
                gens.push(Isotopism::product(g, &idb)?);
            }
            for g in &gb {
                gens.push(Isotopism::product(&ida, g)?);
            }
            Some(gens)
        }
        Provenance::Image { parent, isometry } => {
            let base = replay(parent)?;
            let Some(gens) = generators_for(parent, &base)? else {
                return Ok(None);
            };
            let inv = isometry.inverse();
            let mut out = Vec::with_capacity(gens.len());
            for g in gens {
                let c = isometry.compose(&Isometry::from(g))?.compose(&inv)?;
                debug_assert!(c.is_isotopism());
                out.push(c.isotopism);
            }
            Some(out)
        }
        Provenance::Literal | Provenance::CodeH | Provenance::Subcode { .. } => None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Permutation;
    use crate::code::MdsCode;
    use crate::isometry::{generate_group, Budget};
    use crate::loops::make_dihedral;

    #[test]
    fn replay_reproduces() {
        let specs = [
            Provenance::Graph { quasigroup: BuiltinLoop::Cp { p: 3 } },
            Provenance::Iterated { group: BuiltinLoop::Dihedral { p: 3 }, length: 3 },
            Provenance::Composition { spec: CompositionSpec::new(3, Outer::Cp, vec![1, 1]).unwrap() },
            Provenance::Quadratic { spec: QuadraticSpec::parse(2, 1, 3, "x1x2").unwrap() },
            Provenance::CodeH,
        ];
        for p in specs {
            let a = replay(&p).unwrap();
            assert_eq!(a.provenance(), &p);
            assert!(replay(a.provenance()).unwrap().same_words(&a));
        }
        assert!(replay(&Provenance::Literal).is_err());
    }

    #[test]
    fn generators_are_autotopisms() {
        let d3 = make_dihedral(3).unwrap().graph_with(Provenance::Graph { quasigroup: BuiltinLoop::Dihedral { p: 3 } });
        let sq = QuadraticSpec::parse(2, 1, 3, "x1x2").unwrap();
        let codes = vec![
            d3.clone(),
            replay(&Provenance::Graph { quasigroup: BuiltinLoop::Cp { p: 3 } }).unwrap(),
            quadratic_code(&sq).unwrap(),
            product_code(&MdsCode::parity(2, 3).unwrap(), &quadratic_code(&sq).unwrap()).unwrap(),
        ];
        for c in &codes {
            let gens = provided_generators(c).unwrap_or_default();
            assert!(gens.iter().all(|g| g.is_autotopism(c)), "{:?}", c.provenance());
        }
        let gens = provided_generators(&d3).unwrap();
        assert_eq!(generate_group(&gens, &Budget::default()).unwrap().len(), 36);
    }

    #[test]
    fn image_conjugates() {
        let base = quadratic_code(&QuadraticSpec::parse(2, 1, 3, "x1x2").unwrap()).unwrap();
        let eps = Permutation::from_images(vec![1, 2, 0]).unwrap();
        let tau = Isotopism::from_fns(4, 3, |i, x| if i == 1 { x ^ 3 } else { x }).unwrap();
        let img = Isometry::new(eps, tau).unwrap().apply(&base).unwrap();
        let gens = provided_generators(&img).unwrap();
        assert_eq!(gens.len(), 16);
        assert!(gens.iter().all(|g| g.is_autotopism(&img)));
    }

    #[test]
    fn mismatched_provenance_is_ignored() {
        let c = MdsCode::parity(4, 3).unwrap().with_provenance(Provenance::CodeH);
        assert!(provided_generators(&c).is_none());
    }
}
