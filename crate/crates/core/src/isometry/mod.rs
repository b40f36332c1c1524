//! Isotopisms and isometries of `Q_q^n`, explicit autotopism families,
//! backtracking autotopism search, and the transitivity, topolinearity and
//! equivalence verdicts built on them.

mod cp;
mod equiv;
mod group;
mod search;
mod transitive;

use std::fmt;

use serde::{Deserialize, Serialize};

pub use cp::{chase_to_zero_cp, cp_autotopism_a1, cp_autotopism_a2, cp_autotopism_a3, ic_p_generators, ic_p_regular_generators};
pub use equiv::{equivalent_codes, EquivalenceVerdict};
pub use group::{check_regular_condition, generate_group, orbit_of};
pub use search::{autotopism_search, isotopy_search, Budget, IsotopySearch, Pin};
pub use transitive::{
    code_id, is_isotopically_transitive, is_topolinear, is_transitive, CertificateMode, TopolinearMethod, TopolinearVerdict,
    TransitivityCertificate, TransitivityVerdict, Witness,
};

use crate::algebra::{Permutation, Symbol};
use crate::code::{MdsCode, Provenance};
use crate::error::{Error, Result};

/// A tuple `(τ_1, …, τ_n)` acting coordinatewise on `Q_q^n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Isotopism {
    taus: Vec<Permutation>,
}

impl Isotopism {
    /// # Panics
    /// If the components have different degrees or the tuple is empty.
    pub fn new(taus: Vec<Permutation>) -> Self {
        Self::try_new(taus).expect("isotopism components of one degree")
    }

    pub fn try_new(taus: Vec<Permutation>) -> Result<Self> {
        let Some(first) = taus.first() else {
            return Err(Error::InvalidSpec("isotopism with no components".into()));
        };
        if let Some(t) = taus.iter().find(|t| t.degree() != first.degree()) {
            return Err(Error::DegreeMismatch(first.degree(), t.degree()));
        }
        Ok(Self { taus })
    }

    pub fn identity(q: usize, n: usize) -> Self {
        Self { taus: vec![Permutation::identity(q); n] }
    }

    /// Coordinatewise translation-free isotopism given by a function per coordinate.
    pub fn from_fns(q: usize, n: usize, f: impl Fn(usize, Symbol) -> Symbol) -> Result<Self> {
        let taus = (0..n).map(|i| Permutation::from_fn(q, |x| f(i, x))).collect::<Result<_>>()?;
        Ok(Self { taus })
    }

    pub fn n(&self) -> usize {
        self.taus.len()
    }

    pub fn q(&self) -> usize {
        self.taus[0].degree()
    }

    pub fn taus(&self) -> &[Permutation] {
        &self.taus
    }

    pub fn component(&self, i: usize) -> &Permutation {
        &self.taus[i]
    }

    pub fn into_taus(self) -> Vec<Permutation> {
        self.taus
    }

    pub fn is_identity(&self) -> bool {
        self.taus.iter().all(Permutation::is_identity)
    }

    pub fn apply_word(&self, w: &[Symbol]) -> Vec<Symbol> {
        w.iter().zip(&self.taus).map(|(&x, t)| t.apply(x)).collect()
    }

    /// `self ∘ other`, componentwise.
    pub fn compose(&self, other: &Isotopism) -> Result<Isotopism> {
        self.check_shape(other)?;
        Ok(self.compose_unchecked(other))
    }

    pub(crate) fn compose_unchecked(&self, other: &Isotopism) -> Isotopism {
        Isotopism { taus: self.taus.iter().zip(&other.taus).map(|(a, b)| a.compose_unchecked(b)).collect() }
    }

    pub fn inverse(&self) -> Isotopism {
        Isotopism { taus: self.taus.iter().map(Permutation::inverse).collect() }
    }

    fn check_shape(&self, other: &Isotopism) -> Result<()> {
        if self.n() != other.n() {
            return Err(Error::LengthMismatch(self.n(), other.n()));
        }
        if self.q() != other.q() {
            return Err(Error::DegreeMismatch(self.q(), other.q()));
        }
        Ok(())
    }

    fn check_code(&self, code: &MdsCode) -> Result<()> {
        if self.n() != code.n() {
            return Err(Error::LengthMismatch(self.n(), code.n()));
        }
        if self.q() != code.q() {
            return Err(Error::DegreeMismatch(self.q(), code.q()));
        }
        Ok(())
    }

    /// Whether `τ̄M = M`.
    ///
    /// # Panics
    /// On a shape mismatch; see [`Isometry::is_automorphism`] for the checked form.
    pub fn is_autotopism(&self, code: &MdsCode) -> bool {
        self.check_code(code).expect("isotopism shape matches code");
        let mut img = vec![0; code.n()];
        code.words().all(|w| {
            for (j, (&x, t)) in w.iter().zip(&self.taus).enumerate() {
                img[j] = t.apply(x);
            }
            code.contains(&img)
        })
    }

    /// Components at the listed coordinates, in order.
    pub fn restrict(&self, coords: &[usize]) -> Isotopism {
        Isotopism { taus: coords.iter().map(|&i| self.taus[i].clone()).collect() }
    }

    /// The componentwise product on the pair alphabet `Q_{q1} × Q_{q2}`,
    /// index `a * q2 + b`.
    pub fn product(a: &Isotopism, b: &Isotopism) -> Result<Isotopism> {
        if a.n() != b.n() {
            return Err(Error::LengthMismatch(a.n(), b.n()));
        }
        let q2 = b.q();
        let q = a.q() * q2;
        let taus = a
            .taus
            .iter()
            .zip(&b.taus)
            .map(|(s, t)| {
                Permutation::from_fn(q, |x| {
                    let (u, v) = (x as usize / q2, x as usize % q2);
                    (s.apply(u as Symbol) as usize * q2 + t.apply(v as Symbol) as usize) as Symbol
                })
            })
            .collect::<Result<_>>()?;
        Ok(Isotopism { taus })
    }
}

impl fmt::Debug for Isotopism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.taus).finish()
    }
}

/// `x̄ ↦ τ̄(x̄_ε)` where `(x̄_ε)_i = x_{ε⁻¹(i)}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Isometry {
    /// The coordinate permutation `ε`.
    pub coords: Permutation,
    pub isotopism: Isotopism,
}

impl Isometry {
    pub fn new(coords: Permutation, isotopism: Isotopism) -> Result<Self> {
        if coords.degree() != isotopism.n() {
            return Err(Error::LengthMismatch(coords.degree(), isotopism.n()));
        }
        Ok(Self { coords, isotopism })
    }

    pub fn identity(q: usize, n: usize) -> Self {
        Self { coords: Permutation::identity(n), isotopism: Isotopism::identity(q, n) }
    }

    pub fn n(&self) -> usize {
        self.isotopism.n()
    }

    pub fn q(&self) -> usize {
        self.isotopism.q()
    }

    pub fn is_isotopism(&self) -> bool {
        self.coords.is_identity()
    }

    pub fn apply_word(&self, w: &[Symbol]) -> Vec<Symbol> {
        let inv = self.coords.inverse();
        (0..w.len()).map(|i| self.isotopism.taus[i].apply(w[inv.apply(i as Symbol) as usize])).collect()
    }

    /// `self ∘ other`: coordinate parts compose, and
    /// `τ_i = τ^self_i ∘ τ^other_{ε_self⁻¹(i)}`.
    pub fn compose(&self, other: &Isometry) -> Result<Isometry> {
        self.isotopism.check_shape(&other.isotopism)?;
        let inv = self.coords.inverse();
        let taus = (0..self.n())
            .map(|i| {
                let j = inv.apply(i as Symbol) as usize;
                self.isotopism.taus[i].compose_unchecked(&other.isotopism.taus[j])
            })
            .collect();
        Ok(Isometry { coords: self.coords.compose_unchecked(&other.coords), isotopism: Isotopism { taus } })
    }

    pub fn inverse(&self) -> Isometry {
        let taus = (0..self.n())
            .map(|j| self.isotopism.taus[self.coords.apply(j as Symbol) as usize].inverse())
            .collect();
        Isometry { coords: self.coords.inverse(), isotopism: Isotopism { taus } }
    }

    /// The image code `{g(x̄) : x̄ ∈ M}`.
    pub fn apply(&self, code: &MdsCode) -> Result<MdsCode> {
        self.isotopism.check_code(code)?;
        let words = code.words().map(|w| self.apply_word(w)).collect::<Vec<_>>();
        let prov = Provenance::Image { parent: Box::new(code.provenance().clone()), isometry: self.clone() };
        MdsCode::from_words(*code.alphabet(), code.n(), words, prov)
    }

    pub fn is_automorphism(&self, code: &MdsCode) -> Result<bool> {
        self.isotopism.check_code(code)?;
        Ok(code.words().all(|w| code.contains(&self.apply_word(w))))
    }
}

impl From<Isotopism> for Isometry {
    fn from(isotopism: Isotopism) -> Self {
        let n = isotopism.n();
        Isometry { coords: Permutation::identity(n), isotopism }
    }
}

/// The image `τ̄M`.
pub fn apply(g: &Isometry, code: &MdsCode) -> Result<MdsCode> {
    g.apply(code)
}

pub fn is_automorphism(g: &Isometry, code: &MdsCode) -> Result<bool> {
    g.is_automorphism(code)
}

/// Translation isotopism `x_i ↦ x_i − w_i (mod q)` on every coordinate;
/// sends `w` to `0̄`. Used to normalise codes that miss the zero word.
pub fn translation_to_zero(w: &[Symbol], q: usize) -> Isotopism {
    Isotopism::from_fns(q, w.len(), |i, x| ((x as usize + q - w[i] as usize) % q) as Symbol)
        .expect("translations are permutations")
}
