//! Transitivity and topolinearity verdicts, with replayable certificates.

use std::collections::{HashMap, HashSet};

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use super::group::{base_word, check_regular_condition, generate_group};
use super::{autotopism_search, isotopy_search, Budget, Isometry, Isotopism, Pin};
use crate::algebra::{Permutation, Symbol};
use crate::code::MdsCode;
use crate::error::{BudgetExceeded, Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CertificateMode {
    /// Witnesses are isotopisms.
    Isotopic,
    /// Witnesses may permute coordinates.
    Full,
    /// Witnesses are isotopisms forming a regular group.
    Topolinear,
}

/// An isometry of the code sending the base word to `word`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub word: Vec<Symbol>,
    pub map: Isometry,
}

/// One witness per codeword. In topolinear mode the witnesses are the
/// elements of a regular group and `generators` indexes a generating set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransitivityCertificate {
    pub mode: CertificateMode,
    pub q: usize,
    pub n: usize,
    pub code_id: String,
    pub base: Vec<Symbol>,
    pub regular: bool,
    pub witnesses: Vec<Witness>,
    #[serde(default)]
    pub generators: Vec<usize>,
}

/// FNV-1a over `q`, `n` and the sorted words.
pub fn code_id(code: &MdsCode) -> String {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    let mut eat = |b: u8| {
        h ^= b as u64;
        h = h.wrapping_mul(0x0100_0000_01b3);
    };
    for b in (code.q() as u32).to_le_bytes().into_iter().chain((code.n() as u32).to_le_bytes()) {
        eat(b);
    }
    for w in code.words() {
        w.iter().for_each(|&s| eat(s));
    }
    format!("{h:016x}")
}

fn bad(msg: impl Into<String>) -> Error {
    Error::InvalidCertificate(msg.into())
}

impl TransitivityCertificate {
    /// Checks every stored claim against `code`; no search is performed.
    pub fn verify(&self, code: &MdsCode) -> Result<()> {
        if self.q != code.q() || self.n != code.n() {
            return Err(bad(format!("certificate is for q={}, n={}", self.q, self.n)));
        }
        if self.code_id != code_id(code) {
            return Err(bad("code id does not match"));
        }
        if !code.contains(&self.base) {
            return Err(bad("base word is not a codeword"));
        }
        if self.witnesses.len() != code.len() {
            return Err(bad(format!("{} witnesses for {} codewords", self.witnesses.len(), code.len())));
        }
        let mut covered = vec![false; code.len()];
        for w in &self.witnesses {
            if w.map.n() != self.n || w.map.q() != self.q {
                return Err(bad(format!("witness for {:?} has the wrong shape", w.word)));
            }
            let idx = code.index_of(&w.word).ok_or_else(|| bad(format!("{:?} is not a codeword", w.word)))?;
            if std::mem::replace(&mut covered[idx], true) {
                return Err(bad(format!("two witnesses for {:?}", w.word)));
            }
            if self.mode != CertificateMode::Full && !w.map.is_isotopism() {
                return Err(bad(format!("witness for {:?} permutes coordinates", w.word)));
            }
            if w.map.apply_word(&self.base) != w.word {
                return Err(bad(format!("witness does not send the base word to {:?}", w.word)));
            }
            if !w.map.is_automorphism(code)? {
                return Err(bad(format!("witness for {:?} does not preserve the code", w.word)));
            }
        }
        if self.mode == CertificateMode::Topolinear {
            self.verify_group()?;
        } else if self.regular {
            return Err(bad("regular flag needs topolinear mode"));
        }
        Ok(())
    }

    /// The witnesses are closed under left multiplication by the generators
    /// and are reached from the identity by them: they form the group the
    /// generators generate, which is then regular.
    fn verify_group(&self) -> Result<()> {
        if !self.regular {
            return Err(bad("topolinear certificate must be flagged regular"));
        }
        let index: HashMap<&Isometry, usize> = self.witnesses.iter().enumerate().map(|(i, w)| (&w.map, i)).collect();
        let id = Isometry::identity(self.q, self.n);
        let start = *index.get(&id).ok_or_else(|| bad("identity missing from the group"))?;
        let gens: Vec<&Isometry> = self
            .generators
            .iter()
            .map(|&g| self.witnesses.get(g).map(|w| &w.map).ok_or_else(|| bad(format!("generator index {g}"))))
            .collect::<Result<_>>()?;
        let mut reached = vec![false; self.witnesses.len()];
        reached[start] = true;
        let mut queue = vec![start];
        for w in &self.witnesses {
            for g in &gens {
                let h = g.compose(&w.map)?;
                if !index.contains_key(&h) {
                    return Err(bad("witness set is not closed under the generators"));
                }
            }
        }
        while let Some(i) = queue.pop() {
            for g in &gens {
                let j = index[&g.compose(&self.witnesses[i].map)?];
                if !std::mem::replace(&mut reached[j], true) {
                    queue.push(j);
                }
            }
        }
        if reached.iter().any(|r| !r) {
            return Err(bad("generators do not reach every witness"));
        }
        Ok(())
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TransitivityVerdict {
    Transitive(TransitivityCertificate),
    /// No automorphism sends `base` to `word`; established by exhaustive search.
    NotTransitive { base: Vec<Symbol>, word: Vec<Symbol> },
}

impl TransitivityVerdict {
    pub fn is_transitive(&self) -> bool {
        matches!(self, TransitivityVerdict::Transitive(_))
    }
}

/// Witness bookkeeping: one isometry per reached codeword, extended by
/// closing the reached set under the generators found so far.
struct Orbit<'a> {
    code: &'a MdsCode,
    base: Vec<Symbol>,
    witness: Vec<Option<Isometry>>,
    gens: Vec<Isometry>,
}

impl<'a> Orbit<'a> {
    fn new(code: &'a MdsCode) -> Self {
        let base = base_word(code);
        let mut witness = vec![None; code.len()];
        witness[0] = Some(Isometry::identity(code.q(), code.n()));
        Self { code, base, witness, gens: Vec::new() }
    }

    fn add(&mut self, g: Isometry) {
        self.add_all(vec![g]);
    }

    /// Closes the reached set under the enlarged generator list; words
    /// reached before only need the new generators.
    fn add_all(&mut self, new: Vec<Isometry>) {
        let start = self.gens.len();
        self.gens.extend(new);
        let mut queue: Vec<(usize, usize)> =
            (0..self.witness.len()).filter(|&i| self.witness[i].is_some()).map(|i| (i, start)).collect();
        while let Some((i, from)) = queue.pop() {
            let h = self.witness[i].clone().expect("queued words are reached");
            let w = self.code.word(i).to_vec();
            for g in &self.gens[from..] {
                let j = self.code.index_of(&g.apply_word(&w)).expect("generators preserve the code");
                if self.witness[j].is_none() {
                    self.witness[j] = Some(g.compose(&h).expect("shapes agree"));
                    queue.push((j, 0));
                }
            }
        }
    }

    fn first_unreached(&self) -> Option<usize> {
        self.witness.iter().position(Option::is_none)
    }

    fn certificate(self, mode: CertificateMode) -> TransitivityCertificate {
        let words: Vec<Vec<Symbol>> = self.code.words().map(<[Symbol]>::to_vec).collect();
        let witnesses = words
            .into_iter()
            .zip(self.witness)
            .map(|(word, map)| Witness { word, map: map.expect("orbit is complete") })
            .collect();
        TransitivityCertificate {
            mode,
            q: self.code.q(),
            n: self.code.n(),
            code_id: code_id(self.code),
            base: self.base,
            regular: false,
            witnesses,
            generators: Vec::new(),
        }
    }
}

/// Whether some isometry (isotopism unless `full`) sends the base word to
/// each codeword. Explicit autotopisms known from the code's construction are
/// used first; the remaining codewords are reached by pinned search.
pub fn is_transitive(code: &MdsCode, full: bool, budget: &Budget) -> Result<TransitivityVerdict> {
    budget.check_points(code.q(), code.n())?;
    let mut orbit = Orbit::new(code);
    if let Some(gens) = crate::constructions::provided_generators(code) {
        orbit.add_all(gens.into_iter().filter(|g| g.is_autotopism(code)).map(Isometry::from).collect());
    }
    let permuted: Vec<(Permutation, MdsCode)> = if full {
        let n = code.n();
        (0..n as Symbol)
            .permutations(n)
            .map(|imgs| {
                let eps = Permutation::from_images(imgs).expect("permutation of coordinates");
                let g = Isometry::new(eps.clone(), Isotopism::identity(code.q(), n)).expect("shape");
                (eps, g.apply(code).expect("isometric image of an MDS code"))
            })
            .collect()
    } else {
        Vec::new()
    };
    while let Some(target) = orbit.first_unreached() {
        let word = code.word(target).to_vec();
        let found = if full {
            let mut hit = None;
            for (eps, image) in &permuted {
                let g = Isometry::new(eps.clone(), Isotopism::identity(code.q(), code.n()))?;
                let pin = Pin::word(&g.apply_word(&orbit.base), &word);
                if let Some(t) = isotopy_search(image, code, &pin, budget)?.first()? {
                    hit = Some(Isometry::new(Permutation::identity(code.n()), t)?.compose(&g)?);
                    break;
                }
            }
            hit
        } else {
            let pin = Pin::word(&orbit.base, &word);
            autotopism_search(code, &pin, budget)?.first()?.map(Isometry::from)
        };
        match found {
            Some(g) => orbit.add(g),
            None => return Ok(TransitivityVerdict::NotTransitive { base: orbit.base, word }),
        }
    }
    let mode = if full { CertificateMode::Full } else { CertificateMode::Isotopic };
    Ok(TransitivityVerdict::Transitive(orbit.certificate(mode)))
}

/// [`is_transitive`] restricted to isotopisms.
pub fn is_isotopically_transitive(code: &MdsCode, budget: &Budget) -> Result<TransitivityVerdict> {
    is_transitive(code, false, budget)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "method", rename_all = "kebab-case")]
pub enum TopolinearMethod {
    /// The group supplied by the construction (or the caller) is regular.
    ProvidedGroup,
    /// The group generated by the transitivity witnesses passes the
    /// regularity criterion at `coord`.
    RegularCriterion { coord: usize },
    /// Found by exhaustive search among subgroups of the full autotopism group.
    SubgroupSearch,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TopolinearVerdict {
    Topolinear { certificate: TransitivityCertificate, method: TopolinearMethod },
    NotTransitive { base: Vec<Symbol>, word: Vec<Symbol> },
    /// The autotopism group was enumerated completely and has no regular subgroup.
    NoRegularSubgroup { group_order: usize },
}

impl TopolinearVerdict {
    pub fn is_topolinear(&self) -> bool {
        matches!(self, TopolinearVerdict::Topolinear { .. })
    }
}

/// A regular group inside `⟨elems⟩`, picking generators greedily from
/// `elems`; `None` once a generated subgroup stops acting semiregularly.
fn regular_from(code: &MdsCode, elems: &[Isotopism], budget: &Budget) -> Result<Option<(Vec<Isotopism>, Vec<usize>)>> {
    let base = base_word(code);
    let cap = Budget { max_group: code.len() + 1, ..*budget };
    let mut chosen: Vec<Isotopism> = Vec::new();
    let mut group = vec![Isotopism::identity(code.q(), code.n())];
    let mut members: HashSet<Isotopism> = group.iter().cloned().collect();
    for e in elems {
        if group.len() == code.len() {
            break;
        }
        if members.contains(e) || e.apply_word(&base) == base {
            continue;
        }
        chosen.push(e.clone());
        group = match generate_group(&chosen, &cap) {
            Ok(g) => g,
            Err(e) if e.is_budget() => return Ok(None),
            Err(e) => return Err(e),
        };
        let images: HashSet<Vec<Symbol>> = group.iter().map(|g| g.apply_word(&base)).collect();
        if images.len() != group.len() {
            return Ok(None);
        }
        members = group.iter().cloned().collect();
    }
    if group.len() != code.len() {
        return Ok(None);
    }
    let index: HashMap<&Isotopism, usize> = group.iter().enumerate().map(|(i, g)| (g, i)).collect();
    let gens = chosen.iter().map(|g| index[g]).collect();
    Ok(Some((group, gens)))
}

fn regular_certificate(code: &MdsCode, group: Vec<Isotopism>, gen_positions: Vec<usize>) -> TransitivityCertificate {
    let base = base_word(code);
    let mut slots: Vec<Option<Isotopism>> = vec![None; code.len()];
    let mut order = vec![0usize; group.len()];
    for (i, g) in group.into_iter().enumerate() {
        let idx = code.index_of(&g.apply_word(&base)).expect("group preserves the code");
        order[i] = idx;
        slots[idx] = Some(g);
    }
    let witnesses = slots
        .into_iter()
        .enumerate()
        .map(|(i, g)| Witness { word: code.word(i).to_vec(), map: g.expect("regular group").into() })
        .collect();
    TransitivityCertificate {
        mode: CertificateMode::Topolinear,
        q: code.q(),
        n: code.n(),
        code_id: code_id(code),
        base,
        regular: true,
        witnesses,
        generators: gen_positions.into_iter().map(|g| order[g]).collect(),
    }
}

/// Backtracking over transversals of the base stabiliser in `ist`: adds one
/// element per uncovered codeword while the generated subgroup stays
/// semiregular.
fn search_regular_subgroup(code: &MdsCode, ist: &[Isotopism], budget: &Budget) -> Result<Option<(Vec<Isotopism>, Vec<usize>)>> {
    let base = base_word(code);
    let mut buckets: Vec<Vec<&Isotopism>> = vec![Vec::new(); code.len()];
    for g in ist {
        buckets[code.index_of(&g.apply_word(&base)).expect("autotopism")].push(g);
    }
    let cap = Budget { max_group: code.len() + 1, ..*budget };
    let mut nodes = 0u64;

    fn rec(
        code: &MdsCode,
        base: &[Symbol],
        buckets: &[Vec<&Isotopism>],
        chosen: &mut Vec<Isotopism>,
        group: &[Isotopism],
        cap: &Budget,
        nodes: &mut u64,
    ) -> Result<Option<Vec<Isotopism>>> {
        if group.len() == code.len() {
            return Ok(Some(group.to_vec()));
        }
        let covered: HashSet<usize> = group.iter().map(|g| code.index_of(&g.apply_word(base)).unwrap()).collect();
        let target = (0..code.len()).find(|i| !covered.contains(i)).expect("group smaller than the code");
        for g in &buckets[target] {
            *nodes += 1;
            if *nodes > cap.max_nodes {
                return Err(BudgetExceeded::new("subgroup search nodes", cap.max_nodes, None).into());
            }
            chosen.push((*g).clone());
            let next = match generate_group(chosen, cap) {
                Ok(h) => {
                    let images: HashSet<Vec<Symbol>> = h.iter().map(|x| x.apply_word(base)).collect();
                    (images.len() == h.len() && code.len() % h.len() == 0).then_some(h)
                }
                Err(e) if e.is_budget() => None,
                Err(e) => return Err(e),
            };
            if let Some(h) = next {
                if let Some(found) = rec(code, base, buckets, chosen, &h, cap, nodes)? {
                    return Ok(Some(found));
                }
            }
            chosen.pop();
        }
        Ok(None)
    }

    let mut chosen = Vec::new();
    let id = vec![Isotopism::identity(code.q(), code.n())];
    let Some(group) = rec(code, &base, &buckets, &mut chosen, &id, &cap, &mut nodes)? else {
        return Ok(None);
    };
    let index: HashMap<&Isotopism, usize> = group.iter().enumerate().map(|(i, g)| (g, i)).collect();
    let gens = chosen.iter().map(|g| index[g]).collect();
    Ok(Some((group, gens)))
}

/// Whether the autotopism group of `code` has a regular subgroup.
///
/// Tries, in order: the `provided` autotopisms (or those known from the
/// construction), the group generated by the transitivity witnesses under the
/// regularity criterion, and finally an exhaustive subgroup search over the
/// enumerated autotopism group.
pub fn is_topolinear(code: &MdsCode, provided: Option<&[Isotopism]>, budget: &Budget) -> Result<TopolinearVerdict> {
    budget.check_points(code.q(), code.n())?;
    let supplied = match provided {
        Some(p) => Some(p.to_vec()),
        None => crate::constructions::provided_generators(code),
    };
    if let Some(elems) = supplied {
        if elems.iter().all(|g| g.n() == code.n() && g.q() == code.q() && g.is_autotopism(code)) {
            if let Some((group, gens)) = regular_from(code, &elems, budget)? {
                let certificate = regular_certificate(code, group, gens);
                return Ok(TopolinearVerdict::Topolinear { certificate, method: TopolinearMethod::ProvidedGroup });
            }
        }
    }
    let cert = match is_isotopically_transitive(code, budget)? {
        TransitivityVerdict::Transitive(c) => c,
        TransitivityVerdict::NotTransitive { base, word } => {
            return Ok(TopolinearVerdict::NotTransitive { base, word })
        }
    };
    // the generators the orbit search actually used
    let mut found: Vec<Isotopism> = Vec::new();
    let mut seen = HashSet::new();
    for w in &cert.witnesses {
        if seen.insert(w.map.isotopism.clone()) && !w.map.isotopism.is_identity() {
            found.push(w.map.isotopism.clone());
        }
    }
    let gens = minimal_generators(code, &found);
    let capped = Budget { max_group: budget.max_group.min(code.len() * 64), ..*budget };
    for coord in 0..code.n() {
        match check_regular_condition(code, &gens, coord, &capped) {
            Ok(true) => {
                if let Some((group, positions)) = regular_from(code, &gens, budget)? {
                    let certificate = regular_certificate(code, group, positions);
                    return Ok(TopolinearVerdict::Topolinear {
                        certificate,
                        method: TopolinearMethod::RegularCriterion { coord },
                    });
                }
            }
            Ok(false) => break,
            Err(e) if e.is_budget() => break,
            Err(e) => return Err(e),
        }
    }
    let ist = autotopism_search(code, &Pin::none(), budget)?
        .take(budget.max_group + 1)
        .collect::<Result<Vec<_>>>()?;
    if ist.len() > budget.max_group {
        return Err(BudgetExceeded::new("autotopism group order", budget.max_group as u64, None).into());
    }
    match search_regular_subgroup(code, &ist, budget)? {
        Some((group, positions)) => Ok(TopolinearVerdict::Topolinear {
            certificate: regular_certificate(code, group, positions),
            method: TopolinearMethod::SubgroupSearch,
        }),
        None => Ok(TopolinearVerdict::NoRegularSubgroup { group_order: ist.len() }),
    }
}

/// Witness isotopisms reduced to those needed to reach every codeword from
/// the base word.
fn minimal_generators(code: &MdsCode, cands: &[Isotopism]) -> Vec<Isotopism> {
    let base = base_word(code);
    let mut gens: Vec<Isotopism> = Vec::new();
    let mut orbit = HashSet::from([base.clone()]);
    for c in cands {
        if orbit.len() == code.len() {
            break;
        }
        if orbit.contains(&c.apply_word(&base)) {
            continue;
        }
        gens.push(c.clone());
        orbit = super::orbit_of(&base, &gens).into_iter().collect();
    }
    gens
}
