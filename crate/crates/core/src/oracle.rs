//! Naive reference implementations for differential testing.
//!
//! Nothing here shares search logic with the crystal modules: quasiperiods are
//! enumerated exhaustively and extremal ones are picked by sorting.

use std::collections::{BTreeSet, HashMap, HashSet};

use crate::abacus::{materialize, materialize_range, AbacusWindow, Bead, ChargedMultipartition};
use crate::partition::Partition;
use crate::slinf::Quasiperiod;

/// Every quasiperiod inside the window's columns, optionally restricted to `within`.
pub fn all_quasiperiods(window: &AbacusWindow, within: Option<&HashSet<Bead>>) -> Vec<Quasiperiod> {
    let e = window.e();
    let ell = window.level();
    let allowed = |b: Bead| {
        b.beta >= window.lo()
            && window.contains_bead(b)
            && within.is_none_or(|set| set.contains(&b))
    };
    fn grow(
        path: &mut Vec<Bead>,
        e: usize,
        allowed: &dyn Fn(Bead) -> bool,
        out: &mut Vec<Quasiperiod>,
    ) {
        if path.len() == e {
            out.push(
                Quasiperiod::new(path.clone(), e as i64).expect("built with the quasiperiod shape"),
            );
            return;
        }
        let last = *path.last().expect("non-empty");
        for row in 1..=last.row {
            let b = Bead::new(last.beta - 1, row);
            if allowed(b) {
                path.push(b);
                grow(path, e, allowed, out);
                path.pop();
            }
        }
    }
    let mut out = Vec::new();
    let mut path = Vec::with_capacity(e as usize);
    for beta in window.lo()..=window.hi() {
        for row in 1..=ell {
            let b = Bead::new(beta, row);
            if allowed(b) {
                path.push(b);
                grow(&mut path, e as usize, &allowed, &mut out);
                path.pop();
            }
        }
    }
    out.sort();
    out
}

/// Whether `beads` splits into disjoint quasiperiods.
pub fn tiling_exists(window: &AbacusWindow, beads: &BTreeSet<Bead>) -> bool {
    let e = window.e() as usize;
    if !beads.len().is_multiple_of(e) {
        return false;
    }
    fn go(rest: &mut BTreeSet<Bead>, e: usize) -> bool {
        let Some(&top) = rest.iter().next_back() else {
            return true;
        };
        let mut choices: Vec<Vec<Bead>> = vec![vec![top]];
        while let Some(path) = choices.pop() {
            if path.len() == e {
                for b in &path {
                    rest.remove(b);
                }
                let ok = go(rest, e);
                for b in &path {
                    rest.insert(*b);
                }
                if ok {
                    return true;
                }
                continue;
            }
            let last = *path.last().expect("non-empty");
            for row in 1..=last.row {
                let b = Bead::new(last.beta - 1, row);
                if rest.contains(&b) {
                    let mut next = path.clone();
                    next.push(b);
                    choices.push(next);
                }
            }
        }
        false
    }
    let mut rest = beads.clone();
    go(&mut rest, e)
}

/// Whether finitely many disjoint quasiperiods can be removed to leave a packed abacus.
///
/// Scans columns right to left. A row is either still open, where every bead must join a
/// quasiperiod, or kept, where every position from there down must be a bead. Quasiperiods
/// under construction are carried as `(row of last bead, beads still missing)`. Columns at
/// or below `B_full` are all beads, so states there are compared without their column and
/// the search is a finite reachability question.
/// `(column, kept-row mask, open quasiperiods as (row of last bead, beads missing))`.
type ScanState = (i64, u32, Vec<(usize, usize)>);

pub fn is_totally_quasiperiodic(cm: &ChargedMultipartition) -> bool {
    let e = cm.e() as usize;
    let ell = cm.level();
    let window = materialize(cm);
    let full = window.full_threshold();
    let all_kept: u32 = (1u32 << ell) - 1;
    let mut seen: HashSet<ScanState> = HashSet::new();
    let mut stack: Vec<ScanState> = vec![(window.hi(), 0, Vec::new())];
    while let Some((col, kept, open)) = stack.pop() {
        if kept == all_kept && open.is_empty() && col <= full {
            return true;
        }
        if !seen.insert((col.max(full), kept, open.clone())) {
            continue;
        }
        let cells: Vec<bool> = (1..=ell).map(|j| window.contains(col, j)).collect();
        for (kept2, open2) in column_moves(&cells, kept, &open, e) {
            stack.push((col - 1, kept2, open2));
        }
    }
    false
}

/// Every way to account for one column given the rows already kept and the open quasiperiods.
fn column_moves(
    cells: &[bool],
    kept: u32,
    open: &[(usize, usize)],
    e: usize,
) -> Vec<(u32, Vec<(usize, usize)>)> {
    struct Search<'a> {
        cells: &'a [bool],
        open: &'a [(usize, usize)],
        e: usize,
        out: Vec<(u32, Vec<(usize, usize)>)>,
    }
    fn go(s: &mut Search<'_>, row: usize, kept: u32, claimed: u32, next: &mut Vec<(usize, usize)>) {
        if row == s.cells.len() {
            if claimed.count_ones() as usize == s.open.len() {
                let mut v = next.clone();
                v.sort_unstable();
                s.out.push((kept, v));
            }
            return;
        }
        let j = row + 1;
        let bit = 1u32 << row;
        let bead = s.cells[row];
        if kept & bit != 0 {
            if bead {
                go(s, row + 1, kept, claimed, next);
            }
            return;
        }
        if !bead {
            go(s, row + 1, kept, claimed, next);
            return;
        }
        go(s, row + 1, kept | bit, claimed, next);
        next.push((j, s.e - 1));
        go(s, row + 1, kept, claimed, next);
        next.pop();
        for (idx, &(r, missing)) in s.open.iter().enumerate() {
            if claimed & (1 << idx) != 0 || r < j {
                continue;
            }
            let pushed = missing > 1;
            if pushed {
                next.push((j, missing - 1));
            }
            go(s, row + 1, kept, claimed | (1 << idx), next);
            if pushed {
                next.pop();
            }
        }
    }
    let mut search = Search {
        cells,
        open,
        e,
        out: Vec::new(),
    };
    go(&mut search, 0, kept, 0, &mut Vec::new());
    search.out.sort();
    search.out.dedup();
    search.out
}

/// The k-th fore period by exhaustive enumeration and sorting.
pub fn brute_fore_period(window: &AbacusWindow, k: usize) -> Option<Quasiperiod> {
    let all = all_quasiperiods(window, None);
    let mut used: HashSet<Bead> = HashSet::new();
    let mut found = None;
    for _ in 0..k {
        let next = all
            .iter()
            .rev()
            .find(|q| q.beads().iter().all(|b| !used.contains(b)))?
            .clone();
        used.extend(next.beads().iter().copied());
        found = Some(next);
    }
    found
}

/// Partitions of `n` in decreasing lexicographic order.
fn partitions_of(n: usize) -> Vec<Partition> {
    fn go(n: usize, max: usize, prefix: &mut Vec<i64>, out: &mut Vec<Partition>) {
        if n == 0 {
            out.push(Partition::new(prefix.clone()).expect("weakly decreasing"));
            return;
        }
        for part in (1..=n.min(max)).rev() {
            prefix.push(part as i64);
            go(n - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// The vertex `b_θ(source)` for every θ with `e|θ| <= cap - rank(source)`.
///
/// Each θ is realized by shifting the first fore period right `θ_1` times, then the
/// second `θ_2` times, and so on.
///
/// # Panics
/// When a required fore period is not right-shiftable.
pub fn component_from_source(
    source: &ChargedMultipartition,
    cap: usize,
) -> Vec<(Partition, ChargedMultipartition)> {
    let e = source.e() as usize;
    let budget = cap.saturating_sub(source.rank()) / e;
    // keyed by the sequence of shifted period indices, so prefixes are shared
    let mut reached: HashMap<Vec<usize>, ChargedMultipartition> = HashMap::new();
    reached.insert(Vec::new(), source.clone());
    let mut out = Vec::new();
    for size in 0..=budget {
        for theta in partitions_of(size) {
            let moves: Vec<usize> = theta
                .parts()
                .iter()
                .enumerate()
                .flat_map(|(idx, &times)| std::iter::repeat_n(idx + 1, times as usize))
                .collect();
            for len in 1..=moves.len() {
                if !reached.contains_key(&moves[..len]) {
                    let next = shift_fore_period(&reached[&moves[..len - 1]], moves[len - 1]);
                    reached.insert(moves[..len].to_vec(), next);
                }
            }
            out.push((theta, reached[&moves].clone()));
        }
    }
    out
}

fn shift_fore_period(cm: &ChargedMultipartition, k: usize) -> ChargedMultipartition {
    let e = cm.e();
    let lo = cm.full_threshold() - e * (k as i64 + 2);
    let window = materialize_range(cm, lo, cm.max_bead() + 1);
    let p = brute_fore_period(&window, k).expect("the window holds k fore periods");
    window
        .shift(p.beads(), 1)
        .unwrap_or_else(|_| panic!("fore period {k} of {cm} is not right-shiftable"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abacus::materialize;

    fn cm(c: Vec<Vec<i64>>, s: Vec<i64>, e: i64) -> ChargedMultipartition {
        ChargedMultipartition::from_vecs(c, s, e).unwrap()
    }

    #[test]
    fn quasiperiods_of_packed_block() {
        let a = cm(vec![vec![], vec![]], vec![0, 0], 2);
        let w = materialize_range(&a, -2, 1);
        let within: HashSet<Bead> = (-2..=0)
            .flat_map(|beta| [Bead::new(beta, 1), Bead::new(beta, 2)])
            .collect();
        let qs = all_quasiperiods(&w, Some(&within));
        // per column boundary: (1,1), (2,2), (2,1)
        assert_eq!(qs.len(), 6);
        assert!(all_quasiperiods(&w, Some(&HashSet::new())).is_empty());
    }

    #[test]
    fn tiling_examples() {
        let a = cm(vec![vec![], vec![]], vec![0, 0], 3);
        let w = materialize(&a);
        let block: BTreeSet<Bead> = (-2..=0)
            .flat_map(|beta| [Bead::new(beta, 1), Bead::new(beta, 2)])
            .collect();
        assert!(tiling_exists(&w, &block));
        let triv = cm(vec![vec![1; 7], vec![]], vec![3, -1], 3);
        assert!(!is_totally_quasiperiodic(&triv));
        assert!(is_totally_quasiperiodic(&a));
    }

    #[test]
    fn first_component_of_empty() {
        let a = cm(vec![vec![], vec![]], vec![0, 1], 3);
        let comp = component_from_source(&a, 12);
        assert_eq!(comp.len(), 12);
        let distinct: HashSet<_> = comp.iter().map(|(_, v)| v.clone()).collect();
        assert_eq!(distinct.len(), 12);
        assert_eq!(component_from_source(&a, 0), vec![(Partition::empty(), a)]);
    }

    #[test]
    fn partitions_are_counted() {
        let counts: Vec<usize> = (0..7).map(|n| partitions_of(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11]);
    }
}
