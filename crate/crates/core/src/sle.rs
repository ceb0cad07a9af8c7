//! The affine sl_e crystal in Uglov's realization.

use serde::Serialize;
use std::collections::HashSet;

use crate::abacus::{materialize, AbacusWindow, Bead, ChargedMultipartition};
use crate::error::{CrystalError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Direction {
    Left,
    Right,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Sign {
    Plus,
    Minus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct ShiftableBead {
    pub bead: Bead,
    pub direction: Direction,
    pub residue: i64,
}

impl ShiftableBead {
    pub fn sign(&self) -> Sign {
        match self.direction {
            Direction::Right => Sign::Plus,
            Direction::Left => Sign::Minus,
        }
    }
}

/// The i-signature: shiftable i-beads ordered by the box they move across, and the reduced word.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SignatureWord {
    pub entries: Vec<ShiftableBead>,
    pub reduced: Vec<ShiftableBead>,
}

impl SignatureWord {
    pub fn word(&self) -> String {
        signs_to_string(&self.entries)
    }

    pub fn reduced_word(&self) -> String {
        signs_to_string(&self.reduced)
    }

    /// The bead of the rightmost surviving `+`.
    pub fn good_right(&self) -> Option<Bead> {
        self.reduced
            .iter()
            .rev()
            .find(|s| s.direction == Direction::Right)
            .map(|s| s.bead)
    }

    /// The bead of the leftmost surviving `-`.
    pub fn good_left(&self) -> Option<Bead> {
        self.reduced
            .iter()
            .find(|s| s.direction == Direction::Left)
            .map(|s| s.bead)
    }
}

fn signs_to_string(v: &[ShiftableBead]) -> String {
    v.iter()
        .map(|s| match s.sign() {
            Sign::Plus => '+',
            Sign::Minus => '-',
        })
        .collect()
}

/// Deletes `-+` pairs until the word has the shape `+...+-...-`.
pub fn reduce_word(entries: &[ShiftableBead]) -> Vec<ShiftableBead> {
    let mut stack: Vec<ShiftableBead> = Vec::with_capacity(entries.len());
    for &s in entries {
        if s.sign() == Sign::Plus {
            if let Some(top) = stack.last() {
                if top.sign() == Sign::Minus {
                    stack.pop();
                    continue;
                }
            }
        }
        stack.push(s);
    }
    stack
}

fn check_residue(cm: &ChargedMultipartition, i: i64) -> Result<()> {
    if i < 0 || i >= cm.e() {
        return Err(CrystalError::ResidueOutOfRange { i, e: cm.e() });
    }
    Ok(())
}

/// The box a shift adds or removes, as the bead on its left: a right shift of `(β, j)` and a
/// left shift of `(β+1, j)` both touch the box of content `β` in row `j`.
fn box_position(s: &ShiftableBead) -> Bead {
    match s.direction {
        Direction::Right => s.bead,
        Direction::Left => s.bead.shifted(-1),
    }
}

fn signature_in(window: &AbacusWindow, i: i64) -> SignatureWord {
    let e = window.e();
    let ell = window.level();
    let mut entries = Vec::new();
    for beta in window.lo()..=window.hi() {
        for row in (1..=ell).rev() {
            if !window.contains(beta, row) {
                continue;
            }
            let bead = Bead::new(beta, row);
            if (beta - 1).rem_euclid(e) == i && !window.contains(beta - 1, row) {
                entries.push(ShiftableBead {
                    bead,
                    direction: Direction::Left,
                    residue: i,
                });
            }
            if beta.rem_euclid(e) == i && !window.contains(beta + 1, row) {
                entries.push(ShiftableBead {
                    bead,
                    direction: Direction::Right,
                    residue: i,
                });
            }
        }
    }
    entries.sort_by_key(box_position);
    let reduced = reduce_word(&entries);
    SignatureWord { entries, reduced }
}

pub fn shiftable_beads(cm: &ChargedMultipartition, i: i64) -> Result<SignatureWord> {
    check_residue(cm, i)?;
    Ok(signature_in(&materialize(cm), i))
}

pub fn f_tilde(cm: &ChargedMultipartition, i: i64) -> Result<Option<ChargedMultipartition>> {
    check_residue(cm, i)?;
    let w = materialize(cm);
    match signature_in(&w, i).good_right() {
        Some(b) => Ok(Some(w.shift(&[b], 1)?)),
        None => Ok(None),
    }
}

pub fn e_tilde(cm: &ChargedMultipartition, i: i64) -> Result<Option<ChargedMultipartition>> {
    check_residue(cm, i)?;
    let w = materialize(cm);
    match signature_in(&w, i).good_left() {
        Some(b) => Ok(Some(w.shift(&[b], -1)?)),
        None => Ok(None),
    }
}

/// The depth in the sl_e crystal and the highest weight vertex above `cm`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Depth {
    pub p: usize,
    pub source: ChargedMultipartition,
}

/// Applies `e_tilde` greedily, smallest residue first, until no arrow remains.
pub fn p_depth(cm: &ChargedMultipartition) -> Depth {
    let mut cur = cm.clone();
    let mut p = 0;
    'outer: loop {
        for i in 0..cur.e() {
            if let Some(next) = e_tilde(&cur, i).expect("residue in range") {
                cur = next;
                p += 1;
                continue 'outer;
            }
        }
        break;
    }
    Depth { p, source: cur }
}

/// All `i` arrows out of `cm`, keyed by residue.
pub fn sle_outgoing(cm: &ChargedMultipartition) -> Vec<(i64, ChargedMultipartition)> {
    (0..cm.e())
        .filter_map(|i| f_tilde(cm, i).expect("residue in range").map(|x| (i, x)))
        .collect()
}

/// All `i` arrows into `cm`, keyed by residue.
pub fn sle_incoming(cm: &ChargedMultipartition) -> Vec<(i64, ChargedMultipartition)> {
    (0..cm.e())
        .filter_map(|i| e_tilde(cm, i).expect("residue in range").map(|x| (i, x)))
        .collect()
}

/// A first e-period: consecutive decreasing columns, minimal row in each column.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct JLPeriod {
    pub beads: Vec<Bead>,
}

fn present(window: &AbacusWindow, used: &HashSet<Bead>, b: Bead) -> bool {
    window.contains_bead(b) && !used.contains(&b)
}

pub fn jl_first_period(window: &AbacusWindow, used: &HashSet<Bead>) -> Option<JLPeriod> {
    let ell = window.level();
    let e = window.e();
    let floor = used
        .iter()
        .map(|b| b.beta)
        .min()
        .unwrap_or(window.lo())
        .min(window.lo())
        - 1;
    let top = (floor..=window.hi())
        .rev()
        .find(|&beta| (1..=ell).any(|j| present(window, used, Bead::new(beta, j))))?;
    let mut beads = Vec::with_capacity(e as usize);
    for i in 0..e {
        let beta = top - i;
        let row = (1..=ell).find(|&j| present(window, used, Bead::new(beta, j)))?;
        if let Some(prev) = beads.last() {
            let prev: &Bead = prev;
            if row > prev.row {
                return None;
            }
        }
        beads.push(Bead::new(beta, row));
    }
    Some(JLPeriod { beads })
}

/// Peels first periods until the remainder is packed or no period exists.
///
/// Returns the peeled periods and whether the remainder is packed.
pub fn jl_peel(cm: &ChargedMultipartition) -> (Vec<JLPeriod>, bool) {
    let w = materialize(cm);
    let mut used = HashSet::new();
    let mut out = Vec::new();
    let budget = w.beads().len() / cm.e() as usize + cm.level() + 2;
    for _ in 0..=budget {
        if w.is_packed_without(&used) {
            return (out, true);
        }
        match jl_first_period(&w, &used) {
            Some(p) => {
                used.extend(p.beads.iter().copied());
                out.push(p);
            }
            None => return (out, false),
        }
    }
    (out, false)
}

/// The periods of a totally periodic abacus; `None` otherwise.
pub fn jl_periods(cm: &ChargedMultipartition) -> Option<Vec<JLPeriod>> {
    match jl_peel(cm) {
        (periods, true) => Some(periods),
        _ => None,
    }
}

pub fn is_totally_periodic(cm: &ChargedMultipartition) -> bool {
    jl_periods(cm).is_some()
}
