//! Charged multipartitions and their l-abaci.
//!
//! Row j of the abacus holds beads at the beta-numbers `lambda^j_k + s_j + 1 - k`.
//! Only a finite window `[lo, hi]` is ever stored: every position left of `lo`
//! is a bead and every position right of `hi` is a space.

use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use crate::error::{CrystalError, Result};
use crate::partition::{Charge, Partition};

/// A position `(beta, row)` on the abacus, rows numbered from 1 at the bottom.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Bead {
    pub beta: i64,
    pub row: usize,
}

impl Bead {
    pub fn new(beta: i64, row: usize) -> Self {
        Bead { beta, row }
    }

    pub fn shifted(self, delta: i64) -> Self {
        Bead {
            beta: self.beta + delta,
            row: self.row,
        }
    }
}

/// `a < b` iff `a.beta < b.beta`, or the betas agree and `a` sits in a higher row.
pub fn bead_compare(a: &Bead, b: &Bead) -> Ordering {
    a.beta.cmp(&b.beta).then_with(|| b.row.cmp(&a.row))
}

impl Ord for Bead {
    fn cmp(&self, other: &Self) -> Ordering {
        bead_compare(self, other)
    }
}

impl PartialOrd for Bead {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Bead {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.beta, self.row)
    }
}

/// An l-tuple of partitions with a charge and the modulus e.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawCm")]
pub struct ChargedMultipartition {
    e: i64,
    charge: Charge,
    components: Vec<Partition>,
}

#[derive(Deserialize)]
struct RawCm {
    e: i64,
    charge: Vec<i64>,
    components: Vec<Partition>,
}

impl TryFrom<RawCm> for ChargedMultipartition {
    type Error = CrystalError;
    fn try_from(raw: RawCm) -> Result<Self> {
        ChargedMultipartition::new(raw.components, Charge::new(raw.charge)?, raw.e)
    }
}

impl ChargedMultipartition {
    pub fn new(components: Vec<Partition>, charge: Charge, e: i64) -> Result<Self> {
        if e < 2 {
            return Err(CrystalError::InvalidModulus(e));
        }
        if charge.level() < 2 {
            return Err(CrystalError::InvalidLevel(charge.level()));
        }
        if components.len() != charge.level() {
            return Err(CrystalError::LengthMismatch {
                expected: charge.level(),
                found: components.len(),
            });
        }
        Ok(ChargedMultipartition {
            e,
            charge,
            components,
        })
    }

    /// Convenience constructor from raw vectors.
    pub fn from_vecs(components: Vec<Vec<i64>>, charge: Vec<i64>, e: i64) -> Result<Self> {
        let comps = components
            .into_iter()
            .map(Partition::new)
            .collect::<Result<Vec<_>>>()?;
        Self::new(comps, Charge::new(charge)?, e)
    }

    /// The empty multipartition with the given charge.
    pub fn empty(charge: Charge, e: i64) -> Result<Self> {
        let ell = charge.level();
        Self::new(vec![Partition::empty(); ell], charge, e)
    }

    pub fn e(&self) -> i64 {
        self.e
    }

    pub fn charge(&self) -> &Charge {
        &self.charge
    }

    pub fn components(&self) -> &[Partition] {
        &self.components
    }

    /// Component j, 1-indexed.
    pub fn component(&self, j: usize) -> &Partition {
        &self.components[j - 1]
    }

    pub fn level(&self) -> usize {
        self.components.len()
    }

    pub fn rank(&self) -> usize {
        self.components.iter().map(Partition::size).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.components.iter().all(Partition::is_empty)
    }

    /// Same charge and modulus, new components.
    pub fn with_components(&self, components: Vec<Partition>) -> Result<Self> {
        Self::new(components, self.charge.clone(), self.e)
    }

    /// The column of the k-th bead of row j (both 1-indexed).
    pub fn beta(&self, j: usize, k: usize) -> i64 {
        self.component(j).part(k) as i64 + self.charge.get(j) + 1 - k as i64
    }

    /// `min_j (s_j - len(lambda^j))`: every position at or left of this column is a bead.
    pub fn full_threshold(&self) -> i64 {
        (1..=self.level())
            .map(|j| self.charge.get(j) - self.component(j).len() as i64)
            .min()
            .expect("level >= 2")
    }

    /// The largest bead column.
    pub fn max_bead(&self) -> i64 {
        (1..=self.level())
            .map(|j| self.beta(j, 1))
            .max()
            .expect("level >= 2")
    }

    pub fn translate(&self, t: i64) -> Self {
        ChargedMultipartition {
            e: self.e,
            charge: self.charge.translate(t),
            components: self.components.clone(),
        }
    }
}

impl fmt::Display for ChargedMultipartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}",
            crate::notation::format_components(&self.components)
        )
    }
}

/// Returns `beta(b_1^row), ..., beta(b_count^row)`.
pub fn beta_numbers(cm: &ChargedMultipartition, row: usize, count: usize) -> Result<Vec<i64>> {
    if row == 0 || row > cm.level() {
        return Err(CrystalError::RowOutOfRange {
            row,
            ell: cm.level(),
        });
    }
    if count == 0 {
        return Err(CrystalError::CountOutOfRange(count));
    }
    Ok((1..=count).map(|k| cm.beta(row, k)).collect())
}

pub fn translate_charge(cm: &ChargedMultipartition, t: i64) -> ChargedMultipartition {
    cm.translate(t)
}

/// A finite window `[lo, hi]` of an abacus; columns below `lo` are full, above `hi` empty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbacusWindow {
    e: i64,
    ell: usize,
    lo: i64,
    hi: i64,
    full_threshold: i64,
    cells: Vec<bool>,
}

/// Materializes the canonical window `[B_full - e, max bead + 1]`.
pub fn materialize(cm: &ChargedMultipartition) -> AbacusWindow {
    let full = cm.full_threshold();
    let lo = full - cm.e();
    let hi = cm.max_bead() + 1;
    materialize_range(cm, lo, hi)
}

/// Materializes `[lo, hi]`, widened when needed so the window invariants hold.
pub fn materialize_range(cm: &ChargedMultipartition, lo: i64, hi: i64) -> AbacusWindow {
    let full = cm.full_threshold();
    let lo = lo.min(full - cm.e());
    let hi = hi.max(cm.max_bead() + 1);
    let ell = cm.level();
    let width = (hi - lo + 1) as usize;
    let mut cells = vec![false; width * ell];
    for j in 1..=ell {
        let mut k = 1;
        loop {
            let b = cm.beta(j, k);
            if b < lo {
                break;
            }
            cells[(b - lo) as usize * ell + (j - 1)] = true;
            k += 1;
        }
    }
    AbacusWindow {
        e: cm.e(),
        ell,
        lo,
        hi,
        full_threshold: full,
        cells,
    }
}

/// Recovers the charged multipartition encoded by a window.
pub fn to_multipartition(window: &AbacusWindow) -> Result<ChargedMultipartition> {
    let ell = window.level();
    let mut comps = Vec::with_capacity(ell);
    let mut charge = Vec::with_capacity(ell);
    for j in 1..=ell {
        if !window.contains(window.lo, j) {
            return Err(CrystalError::MalformedWindow(format!(
                "row {j} has a space at the window's lower edge {}",
                window.lo
            )));
        }
        let betas: Vec<i64> = (window.lo..=window.hi)
            .rev()
            .filter(|&b| window.contains(b, j))
            .collect();
        let s = window.lo - 1 + betas.len() as i64;
        let parts: Vec<i64> = betas
            .iter()
            .enumerate()
            .map(|(i, &b)| b - s + i as i64)
            .collect();
        comps.push(Partition::new(parts)?);
        charge.push(s);
    }
    ChargedMultipartition::new(comps, Charge::new(charge)?, window.e)
}

impl AbacusWindow {
    /// Builds a window from explicit bead positions: every column `<= full_upto`
    /// is full in every row, and `rows[j-1]` lists the bead columns of row j right of it.
    pub fn from_rows(e: i64, full_upto: i64, rows: &[Vec<i64>]) -> Result<AbacusWindow> {
        let ell = rows.len();
        if ell < 2 {
            return Err(CrystalError::InvalidLevel(ell));
        }
        let mut comps = Vec::with_capacity(ell);
        let mut charge = Vec::with_capacity(ell);
        for row in rows {
            let mut betas: Vec<i64> = row.clone();
            betas.sort_unstable_by(|a, b| b.cmp(a));
            betas.dedup();
            if betas.iter().any(|&b| b <= full_upto) {
                return Err(CrystalError::MalformedWindow(format!(
                    "bead listed at or below the full region {full_upto}"
                )));
            }
            let s = full_upto + betas.len() as i64;
            let parts: Vec<i64> = betas
                .iter()
                .enumerate()
                .map(|(i, &b)| b - s + i as i64)
                .collect();
            comps.push(Partition::new(parts)?);
            charge.push(s);
        }
        let cm = ChargedMultipartition::new(comps, Charge::new(charge)?, e)?;
        Ok(materialize(&cm))
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.hi
    }

    pub fn full_threshold(&self) -> i64 {
        self.full_threshold
    }

    pub fn level(&self) -> usize {
        self.ell
    }

    pub fn e(&self) -> i64 {
        self.e
    }

    /// Membership on the infinite abacus.
    pub fn contains(&self, beta: i64, row: usize) -> bool {
        if beta < self.lo {
            true
        } else if beta > self.hi {
            false
        } else {
            self.cells[(beta - self.lo) as usize * self.level() + (row - 1)]
        }
    }

    pub fn contains_bead(&self, b: Bead) -> bool {
        self.contains(b.beta, b.row)
    }

    /// Beads with `lo <= beta <= hi`.
    pub fn beads(&self) -> BTreeSet<Bead> {
        let ell = self.level();
        (self.lo..=self.hi)
            .flat_map(|b| (1..=ell).map(move |j| Bead::new(b, j)))
            .filter(|b| self.contains_bead(*b))
            .collect()
    }

    /// The abacus after moving each bead of `from` by `delta` columns.
    ///
    /// Every source must be a bead and every target a space once all sources are lifted.
    pub fn shift_window(&self, from: &[Bead], delta: i64) -> Result<AbacusWindow> {
        let lo = from
            .iter()
            .flat_map(|b| [b.beta, b.beta + delta])
            .fold(self.lo, i64::min)
            - 1;
        let hi = self
            .hi
            .max(from.iter().map(|b| b.beta + delta).max().unwrap_or(self.hi))
            + 1;
        let ell = self.level();
        let width = (hi - lo + 1) as usize;
        let mut cells = vec![false; width * ell];
        for b in lo..=hi {
            for j in 1..=ell {
                cells[(b - lo) as usize * ell + (j - 1)] = self.contains(b, j);
            }
        }
        let idx = |b: Bead| (b.beta - lo) as usize * ell + (b.row - 1);
        for &b in from {
            if !cells[idx(b)] {
                return Err(CrystalError::MalformedWindow(format!("{b} is not a bead")));
            }
            cells[idx(b)] = false;
        }
        for &b in from {
            let t = b.shifted(delta);
            if cells[idx(t)] {
                return Err(CrystalError::MalformedWindow(format!("{t} is occupied")));
            }
            cells[idx(t)] = true;
        }
        // each row is full strictly below its lowest space
        let full_threshold = (0..ell)
            .map(|j| {
                (0..width)
                    .find(|&c| !cells[c * ell + j])
                    .map_or(hi, |c| lo + c as i64)
                    - 1
            })
            .min()
            .expect("level >= 2");
        Ok(AbacusWindow {
            e: self.e,
            ell,
            lo,
            hi,
            full_threshold,
            cells,
        })
    }

    /// Moves the beads `from` by `delta` columns and reads off the result.
    pub fn shift(&self, from: &[Bead], delta: i64) -> Result<ChargedMultipartition> {
        to_multipartition(&self.shift_window(from, delta)?)
    }

    /// True when no row has a space left of one of its beads.
    pub fn is_packed_without(&self, removed: &std::collections::HashSet<Bead>) -> bool {
        let ell = self.level();
        let present = |b: i64, j: usize| self.contains(b, j) && !removed.contains(&Bead::new(b, j));
        let lowest = removed
            .iter()
            .map(|b| b.beta)
            .min()
            .unwrap_or(self.lo)
            .min(self.lo)
            - 1;
        (1..=ell).all(|j| {
            let mut seen_space = false;
            for b in lowest..=self.hi {
                let p = present(b, j);
                if p && seen_space {
                    return false;
                }
                if !p {
                    seen_space = true;
                }
            }
            true
        })
    }
}
