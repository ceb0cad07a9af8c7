//! The sl_infinity crystal: fore periods, vessels, aft periods and the arrow rule.
//!
//! Fore periods are found greedily as lexicographic maxima among quasiperiods
//! disjoint from earlier ones. The vessel of `P_k` collects free beads lying
//! between `P_k` and `P_{k+1}`, and the aft period `Q_k` is the lexicographic
//! minimum inside it. `Upsilon_k^+` shifts `P_k` right when the shift becomes the
//! new `Q_k`; `Upsilon_k^-` shifts `Q_k` left when the shift becomes the new `P_k`.

use serde::Serialize;
use std::collections::{BTreeMap, HashSet};

use crate::abacus::{materialize, to_multipartition, AbacusWindow, Bead, ChargedMultipartition};
use crate::error::{CrystalError, Result};
use crate::partition::Partition;

/// e beads in consecutive decreasing columns with weakly decreasing rows.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Quasiperiod {
    beads: Vec<Bead>,
}

impl Quasiperiod {
    /// Validates the quasiperiod shape for modulus `e`.
    pub fn new(beads: Vec<Bead>, e: i64) -> Result<Self> {
        let ok = beads.len() as i64 == e
            && beads
                .windows(2)
                .all(|w| w[1].beta == w[0].beta - 1 && w[1].row <= w[0].row);
        if !ok {
            return Err(CrystalError::MalformedWindow(format!(
                "not a {e}-quasiperiod: {beads:?}"
            )));
        }
        Ok(Quasiperiod { beads })
    }

    pub fn beads(&self) -> &[Bead] {
        &self.beads
    }

    pub fn first(&self) -> Bead {
        self.beads[0]
    }

    pub fn last(&self) -> Bead {
        *self.beads.last().expect("e >= 2")
    }

    /// The row occupied at column `beta`, if the quasiperiod meets that column.
    pub fn row_at(&self, beta: i64) -> Option<usize> {
        let first = self.first().beta;
        if beta > first || beta < self.last().beta {
            return None;
        }
        Some(self.beads[(first - beta) as usize].row)
    }

    pub fn shifted(&self, delta: i64) -> Quasiperiod {
        Quasiperiod {
            beads: self.beads.iter().map(|b| b.shifted(delta)).collect(),
        }
    }

    /// Every row's rightmost bead has a space to its right.
    pub fn is_right_shiftable(&self, window: &AbacusWindow) -> bool {
        self.beads.iter().enumerate().all(|(i, b)| {
            let rightmost_in_row = i == 0 || self.beads[i - 1].row != b.row;
            !rightmost_in_row || !window.contains(b.beta + 1, b.row)
        })
    }

    /// Every row's leftmost bead has a space to its left.
    pub fn is_left_shiftable(&self, window: &AbacusWindow) -> bool {
        let n = self.beads.len();
        self.beads.iter().enumerate().all(|(i, b)| {
            let leftmost_in_row = i + 1 == n || self.beads[i + 1].row != b.row;
            !leftmost_in_row || !window.contains(b.beta - 1, b.row)
        })
    }
}

/// Lazily computed fore periods of one abacus.
pub(crate) struct Engine<'a> {
    window: &'a AbacusWindow,
    e: i64,
    fore: Vec<Quasiperiod>,
    /// Fore-period membership, indexed by `(hi - beta) * l + row - 1`; grows downward.
    used: Vec<bool>,
}

impl<'a> Engine<'a> {
    pub(crate) fn new(window: &'a AbacusWindow) -> Self {
        Engine {
            window,
            e: window.e(),
            fore: Vec::new(),
            used: Vec::new(),
        }
    }

    fn slot(&self, b: Bead) -> usize {
        (self.window.hi() - b.beta) as usize * self.window.level() + b.row - 1
    }

    fn is_used(&self, b: Bead) -> bool {
        b.beta <= self.window.hi() && self.used.get(self.slot(b)).copied().unwrap_or(false)
    }

    fn mark_used(&mut self, path: &[Bead]) {
        for &b in path {
            let i = self.slot(b);
            if i >= self.used.len() {
                self.used.resize(i + 1, false);
            }
            self.used[i] = true;
        }
    }

    fn available(&self, b: Bead) -> bool {
        self.window.contains_bead(b) && !self.is_used(b)
    }

    fn extend_max(&self, path: &mut Vec<Bead>) -> bool {
        if path.len() as i64 == self.e {
            return true;
        }
        let last = *path.last().expect("non-empty path");
        for row in 1..=last.row {
            let b = Bead::new(last.beta - 1, row);
            if self.available(b) {
                path.push(b);
                if self.extend_max(path) {
                    return true;
                }
                path.pop();
            }
        }
        false
    }

    fn compute_next(&mut self) -> Quasiperiod {
        let ell = self.window.level();
        let start = self
            .fore
            .last()
            .map(|p| p.first().beta)
            .unwrap_or(self.window.hi());
        let mut beta = start;
        loop {
            for row in 1..=ell {
                let b = Bead::new(beta, row);
                if !self.available(b) {
                    continue;
                }
                let mut path = Vec::with_capacity(self.e as usize);
                path.push(b);
                if self.extend_max(&mut path) {
                    self.mark_used(&path);
                    return Quasiperiod { beads: path };
                }
            }
            beta -= 1;
        }
    }

    /// Makes sure at least `k` fore periods are known.
    pub(crate) fn ensure(&mut self, k: usize) {
        while self.fore.len() < k {
            let p = self.compute_next();
            self.fore.push(p);
        }
    }

    /// Makes sure every bead in a column `>= beta` is classified as fore or free.
    pub(crate) fn decide_down_to(&mut self, beta: i64) {
        self.ensure(1);
        while self.fore.last().expect("ensured").first().beta >= beta {
            let p = self.compute_next();
            self.fore.push(p);
        }
    }

    pub(crate) fn fore(&mut self, k: usize) -> Quasiperiod {
        self.ensure(k);
        self.fore[k - 1].clone()
    }

    /// Number of fore periods whose first bead lies at or right of `B_full`.
    pub(crate) fn active_count(&mut self) -> usize {
        let full = self.window.full_threshold();
        self.decide_down_to(full);
        self.fore
            .iter()
            .take_while(|p| p.first().beta >= full)
            .count()
    }

    fn is_free(&self, b: Bead) -> bool {
        self.available(b)
    }

    /// Members in decreasing bead order.
    pub(crate) fn vessel(&mut self, k: usize) -> Vec<Bead> {
        self.ensure(k + 1);
        let lo = self.fore[k].last().beta;
        self.decide_down_to(lo);
        let pk = &self.fore[k - 1];
        let pk1 = &self.fore[k];
        let ell = self.window.level();
        let mut members: Vec<Bead> = Vec::with_capacity(2 * self.e as usize);
        let last_col = pk.last().beta;
        // whether the column just above the current one holds a member
        let mut above = false;
        for beta in (lo..=pk.first().beta).rev() {
            let pk_row = pk.row_at(beta);
            let mut free_here: Vec<Bead> = Vec::new();
            for row in 1..=ell {
                let b = Bead::new(beta, row);
                if !self.is_free(b) {
                    continue;
                }
                if let Some(r) = pk_row {
                    if row <= r {
                        continue;
                    }
                }
                if let Some(r) = pk1.row_at(beta) {
                    if row >= r {
                        continue;
                    }
                }
                if beta < last_col && !above {
                    continue;
                }
                free_here.push(b);
            }
            let mut col: Vec<Bead> = free_here;
            if let Some(r) = pk_row {
                col.push(Bead::new(beta, r));
            }
            col.sort_unstable_by(|a, b| b.cmp(a));
            above = !col.is_empty();
            members.extend(col);
        }
        members
    }

    pub(crate) fn aft(&mut self, k: usize) -> Quasiperiod {
        let v = self.vessel(k);
        minimal_quasiperiod(&v, self.e).expect("a vessel contains its fore period")
    }

    pub(crate) fn free_beads_decided(&self) -> Vec<Bead> {
        let floor = self
            .fore
            .last()
            .map(|p| p.first().beta)
            .unwrap_or(self.window.hi());
        let ell = self.window.level();
        let mut out = Vec::new();
        for beta in ((floor + 1)..=self.window.hi()).rev() {
            for row in 1..=ell {
                let b = Bead::new(beta, row);
                if self.is_free(b) {
                    out.push(b);
                }
            }
        }
        out
    }
}

/// The lexicographically smallest quasiperiod inside `set`.
pub(crate) fn minimal_quasiperiod(set: &[Bead], e: i64) -> Option<Quasiperiod> {
    let mut candidates: Vec<Bead> = set.to_vec();
    candidates.sort_unstable();
    let members = candidates.as_slice();
    fn extend(members: &[Bead], e: i64, path: &mut Vec<Bead>) -> bool {
        if path.len() as i64 == e {
            return true;
        }
        let last = *path.last().expect("non-empty path");
        for row in (1..=last.row).rev() {
            let b = Bead::new(last.beta - 1, row);
            if members.binary_search(&b).is_ok() {
                path.push(b);
                if extend(members, e, path) {
                    return true;
                }
                path.pop();
            }
        }
        false
    }
    for &c in members {
        let mut path = Vec::with_capacity(e as usize);
        path.push(c);
        if extend(members, e, &mut path) {
            return Some(Quasiperiod { beads: path });
        }
    }
    None
}

/// Fore periods, free beads, vessels and aft periods of an abacus.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PeriodDecomposition {
    pub fore: Vec<Quasiperiod>,
    /// Free beads in columns already classified by the computed fore periods, decreasing order.
    pub free: Vec<Bead>,
    pub vessels: Vec<Vec<Bead>>,
    pub aft: Vec<Quasiperiod>,
    /// Free beads within the vessels' column range that lie in no computed vessel.
    pub adrift: Vec<Bead>,
    pub truncation_index: usize,
}

/// The first `count` fore periods and the free beads they classify.
pub fn fore_periods(cm: &ChargedMultipartition, count: usize) -> Result<PeriodDecomposition> {
    if count == 0 {
        return Err(CrystalError::CountOutOfRange(count));
    }
    let w = materialize(cm);
    let mut eng = Engine::new(&w);
    eng.ensure(count);
    let fore = eng.fore.clone();
    Ok(PeriodDecomposition {
        free: eng.free_beads_decided(),
        truncation_index: fore.len(),
        fore,
        vessels: Vec::new(),
        aft: Vec::new(),
        adrift: Vec::new(),
    })
}

/// Vessels and aft periods for `k = 1..=count`.
pub fn vessels_and_aft(cm: &ChargedMultipartition, count: usize) -> Result<PeriodDecomposition> {
    if count == 0 {
        return Err(CrystalError::CountOutOfRange(count));
    }
    let w = materialize(cm);
    let mut eng = Engine::new(&w);
    let mut vessels = Vec::with_capacity(count);
    let mut aft = Vec::with_capacity(count);
    for k in 1..=count {
        let v = eng.vessel(k);
        aft.push(minimal_quasiperiod(&v, cm.e()).expect("a vessel contains its fore period"));
        vessels.push(v);
    }
    let floor = eng.fore(count + 1).last().beta;
    let in_vessel: HashSet<Bead> = vessels.iter().flatten().copied().collect();
    let free = eng.free_beads_decided();
    let adrift = free
        .iter()
        .copied()
        .filter(|b| b.beta >= floor && !in_vessel.contains(b))
        .collect();
    let fore = eng.fore.clone();
    Ok(PeriodDecomposition {
        truncation_index: fore.len(),
        fore,
        free,
        vessels,
        aft,
        adrift,
    })
}

/// Vessels and aft periods for every fore period starting at or right of `B_full`.
pub fn full_decomposition(cm: &ChargedMultipartition) -> PeriodDecomposition {
    let w = materialize(cm);
    let count = Engine::new(&w).active_count().max(1);
    vessels_and_aft(cm, count).expect("count >= 1")
}

/// Shifts `P_k` right when the shift is the k-th aft period of the result.
pub fn upsilon_plus(cm: &ChargedMultipartition, k: usize) -> Option<ChargedMultipartition> {
    if k == 0 {
        return None;
    }
    let w = materialize(cm);
    let mut eng = Engine::new(&w);
    let pk = eng.fore(k);
    upsilon_plus_with(&w, &pk, k)
}

fn upsilon_plus_with(
    w: &AbacusWindow,
    pk: &Quasiperiod,
    k: usize,
) -> Option<ChargedMultipartition> {
    if pk.first().beta < w.full_threshold() || !pk.is_right_shiftable(w) {
        return None;
    }
    let w2 = w.shift_window(pk.beads(), 1).expect("right-shiftable");
    let q = Engine::new(&w2).aft(k);
    (q == pk.shifted(1)).then(|| to_multipartition(&w2).expect("shifted window is well formed"))
}

/// Shifts `Q_k` left when the shift is the k-th fore period of the result.
pub fn upsilon_minus(cm: &ChargedMultipartition, k: usize) -> Option<ChargedMultipartition> {
    if k == 0 {
        return None;
    }
    let w = materialize(cm);
    let mut eng = Engine::new(&w);
    if eng.fore(k).first().beta < w.full_threshold() {
        return None;
    }
    let qk = eng.aft(k);
    upsilon_minus_with(&w, &qk, k)
}

fn upsilon_minus_with(
    w: &AbacusWindow,
    qk: &Quasiperiod,
    k: usize,
) -> Option<ChargedMultipartition> {
    if !qk.is_left_shiftable(w) {
        return None;
    }
    let w2 = w.shift_window(qk.beads(), -1).expect("left-shiftable");
    let p = Engine::new(&w2).fore(k);
    (p == qk.shifted(-1)).then(|| to_multipartition(&w2).expect("shifted window is well formed"))
}

/// Every k with a defined `Upsilon_k^+`, with its result.
pub fn outgoing_edges(cm: &ChargedMultipartition) -> BTreeMap<usize, ChargedMultipartition> {
    let w = materialize(cm);
    let mut eng = Engine::new(&w);
    let count = eng.active_count();
    (1..=count)
        .filter_map(|k| {
            let pk = eng.fore(k);
            upsilon_plus_with(&w, &pk, k).map(|x| (k, x))
        })
        .collect()
}

/// Every k with a defined `Upsilon_k^-`, with its result.
pub fn incoming_edges(cm: &ChargedMultipartition) -> BTreeMap<usize, ChargedMultipartition> {
    let w = materialize(cm);
    let mut eng = Engine::new(&w);
    let count = eng.active_count();
    (1..=count)
        .filter_map(|k| {
            let qk = eng.aft(k);
            upsilon_minus_with(&w, &qk, k).map(|x| (k, x))
        })
        .collect()
}

/// The position partition theta and the source of the component.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ThetaPosition {
    pub theta: Partition,
    pub q: usize,
    pub source: ChargedMultipartition,
    pub alphas: BTreeMap<usize, usize>,
    pub r: usize,
}

/// Number of successive `Upsilon_k^-` applications starting from `cm`.
pub fn alpha(cm: &ChargedMultipartition, k: usize) -> usize {
    let mut cur = cm.clone();
    let mut n = 0;
    while let Some(next) = upsilon_minus(&cur, k) {
        cur = next;
        n += 1;
    }
    n
}

pub fn theta_position(cm: &ChargedMultipartition) -> ThetaPosition {
    let w = materialize(cm);
    let count = Engine::new(&w).active_count();
    let alphas: BTreeMap<usize, usize> = (1..=count)
        .map(|k| (k, alpha(cm, k)))
        .filter(|&(_, a)| a > 0)
        .collect();
    let r = alphas.keys().copied().max().unwrap_or(0);
    let parts: Vec<i64> = (1..=r)
        .map(|k| alphas.range(k..).map(|(_, &a)| a as i64).sum())
        .collect();
    let theta = Partition::new(parts).expect("partial sums decrease");
    let q = theta.size();

    let mut source = cm.clone();
    let mut steps = 0;
    while let Some((_, up)) = incoming_edges(&source).into_iter().next() {
        source = up;
        steps += 1;
    }
    assert_eq!(
        steps, q,
        "upstream path length disagrees with |theta| for {cm}"
    );
    ThetaPosition {
        theta,
        q,
        source,
        alphas,
        r,
    }
}
