//! Closed formulas for the sl_infinity component of the empty multipartition when the
//! charge lies in eZ^l.
//!
//! Every period of the empty abacus with charge `e*z` lies in one row, so the order in
//! which periods are peeled is recorded by a tabloid `T`. Row `j` of `T` lists the
//! indices of the periods that live in abacus row `j`, and the component of
//! `b_sigma` in row `j` is `sigma[T_j, e]`.

use serde::Serialize;
use std::collections::HashSet;

use crate::abacus::{materialize_range, ChargedMultipartition};
use crate::error::{CrystalError, Result};
use crate::partition::{Charge, Partition};
use crate::sle::jl_first_period;

/// A finite truncation of the tabloid of `A(∅, e*z)`.
///
/// Entry `T_j(m)` sits in tabloid column `z_j - m + 1`; every column `>= floor` is
/// stored, so the stored entries are exactly `1..=K` for some `K`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Tabloid {
    pub z: Vec<i64>,
    pub floor: i64,
    /// `rows[j-1]` is `T_j` in increasing order.
    pub rows: Vec<Vec<u64>>,
}

impl Tabloid {
    pub fn row(&self, j: usize) -> &[u64] {
        &self.rows[j - 1]
    }

    pub fn level(&self) -> usize {
        self.z.len()
    }

    /// The entry in row `j` and tabloid column `c`, if stored.
    pub fn at(&self, j: usize, c: i64) -> Option<u64> {
        let zj = self.z[j - 1];
        if c > zj || c < self.floor {
            return None;
        }
        self.rows[j - 1].get((zj - c) as usize).copied()
    }

    /// The row containing entry `k`.
    pub fn row_of(&self, k: u64) -> Option<usize> {
        self.rows
            .iter()
            .position(|r| r.binary_search(&k).is_ok())
            .map(|i| i + 1)
    }
}

fn check_z(z: &[i64]) -> Result<()> {
    if z.len() < 2 {
        return Err(CrystalError::InvalidLevel(z.len()));
    }
    if z.iter().copied().min() != Some(0) {
        return Err(CrystalError::InvalidZ(format!(
            "min(z) must be 0, got {z:?}"
        )));
    }
    Ok(())
}

fn check_e(e: i64) -> Result<()> {
    if e < 2 {
        return Err(CrystalError::InvalidModulus(e));
    }
    Ok(())
}

/// Peels periods off `A(∅, e*z)` until every row holds at least `depth` entries.
pub fn tabloid_of(z: &[i64], e: i64, depth: usize) -> Result<Tabloid> {
    check_z(z)?;
    check_e(e)?;
    if depth == 0 {
        return Err(CrystalError::CountOutOfRange(depth));
    }
    let ell = z.len();
    let floor = 1 - depth as i64;
    let charge: Vec<i64> = z.iter().map(|&x| e * x).collect();
    let empty = ChargedMultipartition::empty(Charge::new(charge)?, e)?;
    let hi = e * z.iter().copied().max().unwrap_or(0) + 1;
    let window = materialize_range(&empty, e * floor - e, hi);
    let total: i64 = z.iter().map(|&x| x - floor + 1).sum();
    let mut rows = vec![Vec::new(); ell];
    let mut used = HashSet::new();
    for k in 1..=total as u64 {
        let p = jl_first_period(&window, &used).expect("packed abacus always has a period");
        let row = p.beads[0].row;
        debug_assert!(p.beads.iter().all(|b| b.row == row));
        debug_assert_eq!(p.beads[0].beta.rem_euclid(e), 0);
        rows[row - 1].push(k);
        used.extend(p.beads.iter().copied());
    }
    Ok(Tabloid {
        z: z.to_vec(),
        floor,
        rows,
    })
}

/// `sigma[X, e]`: each `sigma_x` for `x` in `X`, repeated `e` times.
fn sigma_at(sigma: &Partition, indices: &[u64], e: i64) -> Result<Partition> {
    let mut parts = Vec::new();
    for &x in indices {
        let v = sigma.part(x as usize);
        if v == 0 {
            break;
        }
        parts.extend(std::iter::repeat_n(v as i64, e as usize));
    }
    Partition::new(parts)
}

/// `b_sigma` applied to the empty multipartition with charge `e*z`, via the tabloid.
pub fn b_sigma_closed(sigma: &Partition, z: &[i64], e: i64) -> Result<ChargedMultipartition> {
    check_z(z)?;
    check_e(e)?;
    let t = tabloid_of(z, e, sigma.len() + 1)?;
    let comps = t
        .rows
        .iter()
        .map(|row| sigma_at(sigma, row, e))
        .collect::<Result<Vec<_>>>()?;
    ChargedMultipartition::new(comps, Charge::new(z.iter().map(|&x| e * x).collect())?, e)
}

/// The indices of row `j` of the tabloid for weakly decreasing `z`, up to index `bound`.
pub fn sorted_row_indices(z: &[i64], j: usize, bound: u64) -> Result<Vec<u64>> {
    check_sorted(z)?;
    let ell = z.len() as u64;
    let mut ys: Vec<i64> = Vec::new();
    let mut a: Vec<u64> = Vec::new();
    for &x in z.iter().filter(|&&x| x > 0) {
        if ys.last() == Some(&x) {
            *a.last_mut().expect("non-empty") += 1;
        } else {
            ys.push(x);
            a.push(1);
        }
    }
    let m = ys.len();
    let d: Vec<u64> = (0..m)
        .map(|i| (ys[i] - ys.get(i + 1).copied().unwrap_or(0)) as u64)
        .collect();
    let cum_a: Vec<u64> = a
        .iter()
        .scan(0, |s, &x| {
            *s += x;
            Some(*s)
        })
        .collect();
    // offsets[t] = sum over i < t of d_i * A_i
    let mut offsets = vec![0u64; m + 1];
    for t in 0..m {
        offsets[t + 1] = offsets[t] + d[t] * cum_a[t];
    }
    let n_total = offsets[m];
    let j = j as u64;
    let first_block = cum_a.iter().position(|&c| j <= c).unwrap_or(m);
    let mut out = Vec::new();
    for t in first_block..m {
        for i in 0..d[t] {
            let v = offsets[t] + j + i * cum_a[t];
            if v > bound {
                return Ok(out);
            }
            out.push(v);
        }
    }
    let mut v = n_total + j;
    while v <= bound {
        out.push(v);
        v += ell;
    }
    Ok(out)
}

fn check_sorted(z: &[i64]) -> Result<()> {
    if z.len() < 2 {
        return Err(CrystalError::InvalidLevel(z.len()));
    }
    if z.windows(2).any(|w| w[0] < w[1]) || z.last() != Some(&0) {
        return Err(CrystalError::InvalidZ(format!(
            "z must be weakly decreasing and end in 0, got {z:?}"
        )));
    }
    Ok(())
}

/// The block formula for weakly decreasing `z` ending in 0.
pub fn zpartition_closed(sigma: &Partition, z: &[i64], e: i64) -> Result<ChargedMultipartition> {
    check_sorted(z)?;
    check_e(e)?;
    let bound = sigma.len() as u64;
    let comps = (1..=z.len())
        .map(|j| sigma_at(sigma, &sorted_row_indices(z, j, bound)?, e))
        .collect::<Result<Vec<_>>>()?;
    ChargedMultipartition::new(comps, Charge::new(z.iter().map(|&x| e * x).collect())?, e)
}

/// Swaps `z_j` and `z_j2` and slides the entries of the affected rectangle.
pub fn tabloid_swap(tab: &Tabloid, j: usize, j2: usize) -> Result<Tabloid> {
    let ell = tab.level();
    for r in [j, j2] {
        if r == 0 || r > ell {
            return Err(CrystalError::RowOutOfRange { row: r, ell });
        }
    }
    if j == j2 {
        return Ok(tab.clone());
    }
    let (lo_row, hi_row) = (j.min(j2), j.max(j2));
    let mut z2 = tab.z.clone();
    z2.swap(lo_row - 1, hi_row - 1);
    let top = tab.z.iter().copied().max().unwrap_or(0);
    let mut grid: Vec<Vec<Option<u64>>> = (1..=ell)
        .map(|r| (tab.floor..=top).rev().map(|c| tab.at(r, c)).collect())
        .collect();
    let (z_lo, z_hi) = (tab.z[lo_row - 1], tab.z[hi_row - 1]);
    let (c_min, c_max) = (z_lo.min(z_hi) + 1, z_lo.max(z_hi));
    for c in c_min..=c_max {
        let idx = (top - c) as usize;
        let entries: Vec<u64> = (lo_row..=hi_row).filter_map(|r| grid[r - 1][idx]).collect();
        let slots: Vec<usize> = (lo_row..=hi_row).filter(|&r| c <= z2[r - 1]).collect();
        debug_assert_eq!(entries.len(), slots.len());
        for r in lo_row..=hi_row {
            grid[r - 1][idx] = None;
        }
        for (v, r) in entries.into_iter().zip(slots) {
            grid[r - 1][idx] = Some(v);
        }
    }
    let rows = grid
        .into_iter()
        .map(|col| {
            let mut row: Vec<u64> = col.into_iter().flatten().collect();
            row.sort_unstable();
            row
        })
        .collect();
    Ok(Tabloid {
        z: z2,
        floor: tab.floor,
        rows,
    })
}
