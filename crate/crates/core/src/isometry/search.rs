//! Backtracking search for isotopisms `τ̄` with `τ̄A = B`.
//!
//! A partial assignment of component values is closed under the forcing
//! rule: once `n − 1` coordinates of a word of `A` have known images, the
//! last image is the unique completion in `B`. Each codeword keeps a count of
//! its assigned coordinates, so forcing costs one pass over the words
//! through each newly assigned cell.

use serde::{Deserialize, Serialize};

use super::Isotopism;
use crate::algebra::{Permutation, Symbol};
use crate::code::MdsCode;
use crate::error::{BudgetExceeded, Error, Result};

const UNSET: Symbol = Symbol::MAX;

/// Bounds shared by every search.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    /// Largest `q^n` a search will take on.
    pub max_points: u64,
    /// Backtracking nodes per search.
    pub max_nodes: u64,
    /// Elements per generated group.
    pub max_group: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Self { max_points: 7776, max_nodes: 50_000_000, max_group: 1_000_000 }
    }
}

impl Budget {
    pub fn check_points(&self, q: usize, n: usize) -> Result<()> {
        let points = (q as u64).checked_pow(n as u32);
        match points {
            Some(v) if v <= self.max_points => Ok(()),
            _ => Err(BudgetExceeded::new("points q^n", self.max_points, points).into()),
        }
    }
}

/// Prescribed component values `τ_i(x) = y`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Pin {
    entries: Vec<(usize, Symbol, Symbol)>,
}

impl Pin {
    pub fn none() -> Self {
        Self::default()
    }

    /// `τ̄(from) = to`.
    pub fn word(from: &[Symbol], to: &[Symbol]) -> Self {
        Self { entries: from.iter().zip(to).enumerate().map(|(i, (&x, &y))| (i, x, y)).collect() }
    }

    pub fn with(mut self, coord: usize, x: Symbol, y: Symbol) -> Self {
        self.entries.push((coord, x, y));
        self
    }

    /// Pins the whole component at `coord`.
    pub fn with_component(mut self, coord: usize, tau: &Permutation) -> Self {
        self.entries.extend(tau.images().iter().enumerate().map(|(x, &y)| (coord, x as Symbol, y)));
        self
    }

    pub fn entries(&self) -> &[(usize, Symbol, Symbol)] {
        &self.entries
    }
}

struct Frame {
    cell: usize,
    next: usize,
    trail_len: usize,
}

#[derive(PartialEq, Eq)]
enum Phase {
    Start,
    Running,
    Done,
}

/// Deterministic stream of the isotopisms from one code onto another that
/// agree with a [`Pin`]. Yields `Err` once if the node budget runs out.
pub struct IsotopySearch<'a> {
    from: &'a MdsCode,
    to: &'a MdsCode,
    q: usize,
    n: usize,
    /// Words of `from` through each cell `i * q + x`.
    occ: Vec<Vec<u32>>,
    map: Vec<Symbol>,
    inv: Vec<Symbol>,
    count: Vec<u16>,
    trail: Vec<usize>,
    stack: Vec<Frame>,
    queue: Vec<(usize, Symbol)>,
    img: Vec<Symbol>,
    pin: Pin,
    phase: Phase,
    nodes: u64,
    max_nodes: u64,
}

/// Isotopisms `τ̄` with `τ̄(from) = to` consistent with `pin`.
pub fn isotopy_search<'a>(from: &'a MdsCode, to: &'a MdsCode, pin: &Pin, budget: &Budget) -> Result<IsotopySearch<'a>> {
    if from.n() != to.n() {
        return Err(Error::LengthMismatch(from.n(), to.n()));
    }
    if from.q() != to.q() {
        return Err(Error::AlphabetMismatch(from.q(), to.q()));
    }
    let (q, n) = (from.q(), from.n());
    budget.check_points(q, n)?;
    for &(i, x, y) in pin.entries() {
        if i >= n || x as usize >= q || y as usize >= q {
            return Err(Error::InvalidSpec(format!("pin ({i}, {x}, {y}) out of range")));
        }
    }
    let mut occ = vec![Vec::new(); n * q];
    for (idx, w) in from.words().enumerate() {
        for (j, &x) in w.iter().enumerate() {
            occ[j * q + x as usize].push(idx as u32);
        }
    }
    Ok(IsotopySearch {
        from,
        to,
        q,
        n,
        occ,
        map: vec![UNSET; n * q],
        inv: vec![UNSET; n * q],
        count: vec![0; from.len()],
        trail: Vec::with_capacity(n * q),
        stack: Vec::new(),
        queue: Vec::new(),
        img: vec![0; n],
        pin: pin.clone(),
        phase: Phase::Start,
        nodes: 0,
        max_nodes: budget.max_nodes,
    })
}

/// Autotopisms of `code` consistent with `pin`.
pub fn autotopism_search<'a>(code: &'a MdsCode, pin: &Pin, budget: &Budget) -> Result<IsotopySearch<'a>> {
    isotopy_search(code, code, pin, budget)
}

impl IsotopySearch<'_> {
    /// Backtracking nodes visited so far.
    pub fn nodes(&self) -> u64 {
        self.nodes
    }

    /// The first solution, if any.
    pub fn first(&mut self) -> Result<Option<Isotopism>> {
        self.next().transpose()
    }

    /// Every solution, or the budget error.
    pub fn collect_all(self) -> Result<Vec<Isotopism>> {
        self.collect()
    }

    fn complete(&self) -> bool {
        self.trail.len() == self.n * self.q
    }

    fn current(&self) -> Isotopism {
        let taus = self
            .map
            .chunks_exact(self.q)
            .map(|c| Permutation::from_images(c.to_vec()).expect("complete assignment is bijective"))
            .collect();
        Isotopism::new(taus)
    }

    fn image_of(&mut self, w: usize) {
        let word = self.from.word(w);
        for j in 0..self.n {
            self.img[j] = self.map[j * self.q + word[j] as usize];
        }
    }

    fn assign(&mut self, cell: usize, y: Symbol) -> bool {
        let (q, n) = (self.q, self.n);
        self.queue.clear();
        self.queue.push((cell, y));
        while let Some((c, y)) = self.queue.pop() {
            let i = c / q;
            match self.map[c] {
                UNSET => {}
                cur if cur == y => continue,
                _ => return false,
            }
            if self.inv[i * q + y as usize] != UNSET {
                return false;
            }
            self.map[c] = y;
            self.inv[i * q + y as usize] = (c % q) as Symbol;
            self.trail.push(c);
            let occ = std::mem::take(&mut self.occ[c]);
            for &w in &occ {
                self.count[w as usize] += 1;
            }
            let mut ok = true;
            for &w in &occ {
                let w = w as usize;
                let k = self.count[w] as usize;
                if k == n {
                    self.image_of(w);
                    if !self.to.contains(&self.img) {
                        ok = false;
                        break;
                    }
                } else if k == n - 1 {
                    self.image_of(w);
                    let missing = self.img.iter().position(|&s| s == UNSET).expect("one coordinate unset");
                    let forced = self.to.complete(missing, &self.img);
                    let src = self.from.word(w)[missing];
                    self.queue.push((missing * q + src as usize, forced));
                }
            }
            self.occ[c] = occ;
            if !ok {
                return false;
            }
        }
        true
    }

    fn undo(&mut self, len: usize) {
        while self.trail.len() > len {
            let c = self.trail.pop().expect("trail longer than len");
            let y = self.map[c];
            self.map[c] = UNSET;
            self.inv[(c / self.q) * self.q + y as usize] = UNSET;
            for &w in &self.occ[c] {
                self.count[w as usize] -= 1;
            }
        }
    }

    /// An unassigned cell on a word with the most assigned coordinates.
    fn choose_cell(&self) -> usize {
        let n = self.n;
        let mut best = (0usize, usize::MAX);
        for (w, &c) in self.count.iter().enumerate() {
            let c = c as usize;
            if c < n && (best.1 == usize::MAX || c > best.0) {
                best = (c, w);
                if c + 2 == n {
                    break;
                }
            }
        }
        let word = self.from.word(best.1);
        (0..n)
            .map(|j| j * self.q + word[j] as usize)
            .find(|&cell| self.map[cell] == UNSET)
            .expect("incomplete word has an unassigned cell")
    }

    fn push_frame(&mut self) {
        let cell = self.choose_cell();
        self.stack.push(Frame { cell, next: 0, trail_len: self.trail.len() });
    }
}

impl Iterator for IsotopySearch<'_> {
    type Item = Result<Isotopism>;

    fn next(&mut self) -> Option<Self::Item> {
        match self.phase {
            Phase::Done => return None,
            Phase::Start => {
                self.phase = Phase::Running;
                let pins = std::mem::take(&mut self.pin.entries);
                for &(i, x, y) in &pins {
                    if !self.assign(i * self.q + x as usize, y) {
                        self.phase = Phase::Done;
                        return None;
                    }
                }
                if self.complete() {
                    self.phase = Phase::Done;
                    return Some(Ok(self.current()));
                }
                self.push_frame();
            }
            Phase::Running => {}
        }
        let q = self.q;
        loop {
            let Some(top) = self.stack.last() else {
                self.phase = Phase::Done;
                return None;
            };
            let (cell, start, len) = (top.cell, top.next, top.trail_len);
            self.undo(len);
            let row = (cell / q) * q;
            let Some(y) = (start..q).find(|&y| self.inv[row + y] == UNSET) else {
                self.stack.pop();
                continue;
            };
            self.stack.last_mut().expect("top frame").next = y + 1;
            self.nodes += 1;
            if self.nodes > self.max_nodes {
                self.phase = Phase::Done;
                return Some(Err(BudgetExceeded::new("search nodes", self.max_nodes, None).into()));
            }
            if self.assign(cell, y as Symbol) {
                if self.complete() {
                    return Some(Ok(self.current()));
                }
                self.push_frame();
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::MdsCode;

    #[test]
    fn binary_parity_group() {
        // Ist of the even-weight code of length 3: translations by even-weight vectors
        let m = MdsCode::parity(2, 3).unwrap();
        let all = autotopism_search(&m, &Pin::none(), &Budget::default()).unwrap().collect_all().unwrap();
        assert_eq!(all.len(), 4);
        for g in &all {
            let shift: Vec<Symbol> = g.taus().iter().map(|t| t.apply(0)).collect();
            assert!(m.contains(&shift));
            for (i, t) in g.taus().iter().enumerate() {
                assert_eq!(t.apply(1), 1 ^ shift[i]);
            }
        }
    }

    #[test]
    fn ternary_parity_group_order() {
        // autotopisms of the Cayley table of Z_3: |G|^2 |Aut G| = 18
        let m = MdsCode::parity(3, 3).unwrap();
        let all = autotopism_search(&m, &Pin::none(), &Budget::default()).unwrap().collect_all().unwrap();
        assert_eq!(all.len(), 18);
        assert!(all.iter().all(|g| g.is_autotopism(&m)));
    }

    #[test]
    fn deterministic_order() {
        let m = MdsCode::parity(4, 3).unwrap();
        let a = autotopism_search(&m, &Pin::none(), &Budget::default()).unwrap().collect_all().unwrap();
        let b = autotopism_search(&m, &Pin::none(), &Budget::default()).unwrap().collect_all().unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn pins_are_respected() {
        let m = MdsCode::parity(4, 3).unwrap();
        let w = [1, 2, 1];
        let pin = Pin::word(&[0, 0, 0], &w);
        let sols = autotopism_search(&m, &pin, &Budget::default()).unwrap().collect_all().unwrap();
        assert!(!sols.is_empty());
        assert!(sols.iter().all(|g| g.apply_word(&[0, 0, 0]) == w));
    }

    #[test]
    fn impossible_pin() {
        let m = MdsCode::parity(3, 3).unwrap();
        let pin = Pin::word(&[0, 0, 0], &[1, 1, 0]);
        assert!(autotopism_search(&m, &pin, &Budget::default()).unwrap().first().unwrap().is_none());
    }

    #[test]
    fn budgets() {
        let m = MdsCode::parity(6, 6).unwrap();
        let err = autotopism_search(&m, &Pin::none(), &Budget::default()).err().unwrap();
        assert!(err.is_budget());
        let small = MdsCode::parity(5, 4).unwrap();
        let tight = Budget { max_nodes: 3, ..Budget::default() };
        let res = autotopism_search(&small, &Pin::none(), &tight).unwrap().collect_all();
        assert!(res.unwrap_err().is_budget());
    }
}
