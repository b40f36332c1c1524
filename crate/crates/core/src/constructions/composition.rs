//! The composition `x = f(h_1(z̄_1), …, h_n(z̄_n))` of an outer quasigroup
//! (`C_p`, or iterated `Z_p × Z_2`) with inner iterated `D_p`, and the
//! witness isotopisms sending each codeword to `0̄`.

use std::collections::HashMap;
use std::sync::Mutex;

use serde::{Deserialize, Serialize};

use super::iterated::shift_isotopism_unchecked;
use crate::algebra::{Alphabet, Permutation, Symbol};
use crate::code::{decode, words_budget, MdsCode, NAryQuasigroup, Provenance};
use crate::error::{Error, Result};
use crate::isometry::{autotopism_search, chase_to_zero_cp, Budget, Isotopism, Pin};
use crate::loops::{loop_automorphisms, make_cp, make_dihedral, make_zp_z2, Loop};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Outer {
    /// The binary loop `C_p`; takes exactly two inner quasigroups.
    Cp,
    /// `u_1 + ⋯ + u_n` in `Z_p × Z_2`, with `n` the number of inner quasigroups.
    Zpz2,
}

#[derive(Deserialize)]
struct RawCompositionSpec {
    p: usize,
    outer: Outer,
    inner: Vec<usize>,
}

/// The inner arities `m_1, …, m_n`; each inner quasigroup is iterated `D_p`.
/// For the symmetric outer `Z_p × Z_2` the arities are kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawCompositionSpec")]
pub struct CompositionSpec {
    pub p: usize,
    pub outer: Outer,
    pub inner: Vec<usize>,
}

impl TryFrom<RawCompositionSpec> for CompositionSpec {
    type Error = Error;

    fn try_from(r: RawCompositionSpec) -> Result<Self> {
        CompositionSpec::new(r.p, r.outer, r.inner)
    }
}

impl CompositionSpec {
    pub fn new(p: usize, outer: Outer, mut inner: Vec<usize>) -> Result<Self> {
        if p < 2 {
            return Err(Error::InvalidSpec(format!("p = {p} must be at least 2")));
        }
        if inner.iter().any(|&m| m == 0) {
            return Err(Error::InvalidSpec("inner arities must be positive".into()));
        }
        match outer {
            Outer::Cp if inner.len() != 2 => {
                return Err(Error::InvalidSpec(format!(
                    "C_p is binary: expected 2 inner arities, got {}",
                    inner.len()
                )))
            }
            Outer::Zpz2 if inner.is_empty() => {
                return Err(Error::InvalidSpec("at least one inner arity required".into()))
            }
            Outer::Zpz2 => inner.sort_unstable(),
            Outer::Cp => {}
        }
        Ok(Self { p, outer, inner })
    }

    pub fn q(&self) -> usize {
        2 * self.p
    }

    /// `1 + m_1 + ⋯ + m_n`.
    pub fn length(&self) -> usize {
        1 + self.inner.iter().sum::<usize>()
    }
}

/// Tables needed to build the code and its witnesses.
pub struct Composition {
    spec: CompositionSpec,
    outer_loop: Loop,
    cp_graph: Option<MdsCode>,
    dihedral: Loop,
    automorphisms: Vec<Permutation>,
    lifts: Mutex<HashMap<(Permutation, usize), Isotopism>>,
}

impl Composition {
    pub fn new(spec: &CompositionSpec) -> Result<Self> {
        let spec = CompositionSpec::new(spec.p, spec.outer, spec.inner.clone())?;
        let p = spec.p;
        let (outer_loop, cp_graph) = match spec.outer {
            Outer::Cp => {
                let c = make_cp(p)?;
                let g = c.graph();
                (c, Some(g))
            }
            Outer::Zpz2 => (make_zp_z2(p)?, None),
        };
        let dihedral = make_dihedral(p)?;
        let automorphisms = loop_automorphisms(&dihedral);
        Ok(Self { spec, outer_loop, cp_graph, dihedral, automorphisms, lifts: Mutex::new(HashMap::new()) })
    }

    pub fn spec(&self) -> &CompositionSpec {
        &self.spec
    }

    fn h(&self, z: &[Symbol]) -> Symbol {
        z.iter().fold(self.dihedral.identity(), |acc, &s| self.dihedral.op(acc, s))
    }

    fn f(&self, u: &[Symbol]) -> Symbol {
        match self.spec.outer {
            Outer::Cp => self.outer_loop.op(u[0], u[1]),
            Outer::Zpz2 => u.iter().fold(0, |acc, &s| self.outer_loop.op(acc, s)),
        }
    }

    fn blocks<'w>(&self, z: &'w [Symbol]) -> Vec<&'w [Symbol]> {
        let mut out = Vec::with_capacity(self.spec.inner.len());
        let mut at = 0;
        for &m in &self.spec.inner {
            out.push(&z[at..at + m]);
            at += m;
        }
        out
    }

    pub fn code(&self) -> Result<MdsCode> {
        let q = self.spec.q();
        let n = self.spec.length();
        let count = words_budget(q, n)? as usize;
        let mut flat = Vec::with_capacity(count * n);
        let mut z = vec![0 as Symbol; n - 1];
        for idx in 0..count {
            decode(idx, q, &mut z);
            let u: Vec<Symbol> = self.blocks(&z).iter().map(|b| self.h(b)).collect();
            flat.push(self.f(&u));
            flat.extend_from_slice(&z);
        }
        let alphabet = Alphabet::two_indexed(self.spec.p)?;
        MdsCode::from_flat(alphabet, n, flat, Provenance::Composition { spec: self.spec.clone() })
    }

    /// `[σ_0, σ_1, …, σ_n]`, an autotopism of `{(x, ū) : x = f(ū)}` sending
    /// `(b_0, u_1, …, u_n)` to `0̄`.
    fn outer_sigma(&self, b0: Symbol, u: &[Symbol]) -> Result<Vec<Permutation>> {
        let q = self.spec.q();
        match (&self.cp_graph, self.spec.outer) {
            (Some(graph), Outer::Cp) => {
                // graph coordinates are (x, y, x∗y)
                let t = chase_to_zero_cp(self.spec.p, graph, &[u[0], u[1], b0])?.into_taus();
                Ok(vec![t[2].clone(), t[0].clone(), t[1].clone()])
            }
            _ => {
                let g = &self.outer_loop;
                let minus = |a: Symbol| Permutation::from_fn(q, |x| g.op(x, g.inverse(a))).expect("translation");
                Ok(std::iter::once(b0).chain(u.iter().copied()).map(minus).collect())
            }
        }
    }

    /// Lifts `σ` to `τ̄` with `h(τ̄z̄) = σ(h(z̄))` for `h` of arity `m`.
    fn lift(&self, sigma: &Permutation, m: usize) -> Result<Isotopism> {
        let key = (sigma.clone(), m);
        if let Some(t) = self.lifts.lock().expect("lift cache").get(&key) {
            return Ok(t.clone());
        }
        let w = lemma_condition_c_with(&self.dihedral, &self.automorphisms, sigma, m, &Budget::default())?.ok_or_else(|| {
            Error::InvalidSpec(format!("no isotopism lifts {sigma:?} through iterated D_{}", self.spec.p))
        })?;
        self.lifts.lock().expect("lift cache").insert(key, w.tau.clone());
        Ok(w.tau)
    }

    /// An autotopism of the composition code sending `word` to `0̄`: the outer
    /// autotopism `σ`, lifted blockwise through the inner quasigroups, then
    /// followed by a shift isotopism on each block.
    pub fn witness(&self, code: &MdsCode, word: &[Symbol]) -> Result<Isotopism> {
        if !code.contains(word) {
            return Err(Error::NotACodeword(word.to_vec()));
        }
        let blocks = self.blocks(&word[1..]);
        let u: Vec<Symbol> = blocks.iter().map(|b| self.h(b)).collect();
        let sigma = self.outer_sigma(word[0], &u)?;
        let mut taus = vec![sigma[0].clone()];
        for (i, b) in blocks.iter().enumerate() {
            let tau = self.lift(&sigma[i + 1], b.len())?;
            let moved = tau.apply_word(b);
            let theta = shift_isotopism_unchecked(&self.dihedral, &moved);
            taus.extend(theta.compose_unchecked(&tau).into_taus());
        }
        Ok(Isotopism::new(taus))
    }
}

/// The composition code `{(x, z̄_1, …, z̄_n) : x = f(h_1(z̄_1), …, h_n(z̄_n))}`.
pub fn composition_code(spec: &CompositionSpec) -> Result<MdsCode> {
    Composition::new(spec)?.code()
}

/// A lift of `σ` through the `m`-ary iterated `D_p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LemmaWitness {
    pub sigma: Permutation,
    pub tau: Isotopism,
    /// Found as `σ(x) = g·φ(x)·k` with `φ ∈ Aut(D_p)`, rather than by general search.
    pub structured: bool,
}

fn lemma_condition_c_with(
    d: &Loop,
    auts: &[Permutation],
    sigma: &Permutation,
    m: usize,
    budget: &Budget,
) -> Result<Option<LemmaWitness>> {
    let q = d.order();
    if m == 0 || sigma.degree() != q {
        return Err(Error::InvalidSpec("lift needs positive arity and matching degree".into()));
    }
    if m == 1 {
        return Ok(Some(LemmaWitness { sigma: sigma.clone(), tau: Isotopism::new(vec![sigma.clone()]), structured: true }));
    }
    let e = d.identity();
    for phi in auts {
        for g in 0..q as Symbol {
            let k = d.op(d.inverse(g), sigma.apply(e));
            if (0..q as Symbol).all(|x| sigma.apply(x) == d.op(d.op(g, phi.apply(x)), k)) {
                let mut taus = vec![Permutation::from_fn(q, |z| d.op(g, phi.apply(z)))?];
                taus.extend(std::iter::repeat(phi.clone()).take(m - 2));
                taus.push(Permutation::from_fn(q, |z| d.op(phi.apply(z), k))?);
                return Ok(Some(LemmaWitness { sigma: sigma.clone(), tau: Isotopism::new(taus), structured: true }));
            }
        }
    }
    let h = NAryQuasigroup::from_fn(*d.alphabet(), m, |z| z.iter().fold(e, |acc, &s| d.op(acc, s)))?;
    let graph = h.graph_of();
    let pin = Pin::none().with_component(m, sigma);
    let found = autotopism_search(&graph, &pin, budget)?.first()?;
    Ok(found.map(|t| LemmaWitness {
        sigma: sigma.clone(),
        tau: t.restrict(&(0..m).collect::<Vec<_>>()),
        structured: false,
    }))
}

/// Condition (c) for one component: an isotopism `τ̄` of `Q_{2p}^m` with
/// `h(τ̄z̄) = σ(h(z̄))` on all points, `h` the `m`-ary iterated `D_p`.
pub fn lemma_condition_c(p: usize, sigma: &Permutation, m: usize, budget: &Budget) -> Result<Option<LemmaWitness>> {
    let d = make_dihedral(p)?;
    let auts = loop_automorphisms(&d);
    let found = lemma_condition_c_with(&d, &auts, sigma, m, budget)?;
    if let Some(w) = &found {
        let mut z = vec![0; m];
        let hz = |z: &[Symbol]| z.iter().fold(d.identity(), |acc, &s| d.op(acc, s));
        for idx in 0..(2 * p).pow(m as u32) {
            decode(idx, 2 * p, &mut z);
            if hz(&w.tau.apply_word(&z)) != sigma.apply(hz(&z)) {
                return Err(Error::InvalidCertificate(format!("lift of {sigma:?} fails at {z:?}")));
            }
        }
    }
    Ok(found)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LemmaEntry {
    pub generator: usize,
    pub component: usize,
    pub witness: Option<LemmaWitness>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LemmaReport {
    pub entries: Vec<LemmaEntry>,
}

impl LemmaReport {
    pub fn holds(&self) -> bool {
        self.entries.iter().all(|e| e.witness.is_some())
    }
}

/// Condition (c) for every argument component of every generator. The
/// generators act on the graph `{(ū, f(ū))}`, so the argument components are
/// all but the last.
pub fn lemma_condition_c_check(generators: &[Isotopism], p: usize, inner_arity: usize, budget: &Budget) -> Result<LemmaReport> {
    let mut entries = Vec::new();
    for (gi, g) in generators.iter().enumerate() {
        for c in 0..g.n() - 1 {
            let witness = lemma_condition_c(p, g.component(c), inner_arity, budget)?;
            entries.push(LemmaEntry { generator: gi, component: c, witness });
        }
    }
    Ok(LemmaReport { entries })
}
