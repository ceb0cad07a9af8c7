//! Classifiers for simple modules of cyclotomic rational Cherednik algebras.
//!
//! `L(λ)` is finite-dimensional exactly when `λ` has bidepth `(0, 0)`, i.e. it is a source
//! in both the sl_e and the sl_infinity crystals. The functions here evaluate closed
//! criteria for several families and the general support descriptor.

use num_rational::Ratio;
use serde::Serialize;
use std::collections::HashSet;

use crate::abacus::{beta_numbers, materialize, Bead, ChargedMultipartition};
use crate::error::{CrystalError, Result};
use crate::partition::{Charge, Partition};
use crate::sle::{is_totally_periodic, jl_peel, p_depth};
use crate::slinf::{fore_periods, theta_position};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FockParams {
    pub e: i64,
    pub s: Charge,
    pub n: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CherednikParams {
    pub h: Ratio<i64>,
    pub h_p: Vec<Ratio<i64>>,
    pub kappa: Ratio<i64>,
    pub type_b_c: Option<(Ratio<i64>, Ratio<i64>)>,
}

/// `h = -1/e`, `h_p = (s_{p+1} - s_p)/e`, `kappa = 1/e`.
pub fn fock_to_cherednik(fp: &FockParams) -> Result<CherednikParams> {
    if fp.e < 2 {
        return Err(CrystalError::InvalidModulus(fp.e));
    }
    let e = fp.e;
    let s = fp.s.values();
    let h_p: Vec<Ratio<i64>> = s.windows(2).map(|w| Ratio::new(w[1] - w[0], e)).collect();
    let type_b_c = (s.len() == 2).then(|| {
        (
            Ratio::new(1, e),
            Ratio::new(s[1] - s[0], e) - Ratio::new(1, 2),
        )
    });
    Ok(CherednikParams {
        h: Ratio::new(-1, e),
        h_p,
        kappa: Ratio::new(1, e),
        type_b_c,
    })
}

/// Recovers `(e, s)` with `s_1 = 0`; `None` if the parameters are not of Fock type.
pub fn cherednik_to_fock(params: &CherednikParams) -> Option<(i64, Charge)> {
    let inv = -params.h.recip();
    if !inv.is_integer() || *inv.numer() < 2 {
        return None;
    }
    let e = inv.to_integer();
    let mut s = vec![0i64];
    for hp in &params.h_p {
        let d = hp * e;
        if !d.is_integer() {
            return None;
        }
        s.push(s.last().expect("non-empty") + d.to_integer());
    }
    Charge::new(s).ok().map(|c| (e, c))
}

fn check_e(e: i64) -> Result<()> {
    if e < 2 {
        return Err(CrystalError::InvalidModulus(e));
    }
    Ok(())
}

/// Translates `s` so that `s[idx] = target`.
fn normalized(s: &Charge, idx: usize, target: i64) -> Vec<i64> {
    let t = target - s.values()[idx];
    s.values().iter().map(|x| x + t).collect()
}

/// `((1^n), ∅, ..., ∅)` with charge `s`.
pub fn triv(n: usize, e: i64, s: &Charge) -> Result<ChargedMultipartition> {
    let mut comps = vec![Partition::new(vec![1; n])?];
    comps.extend(std::iter::repeat_n(Partition::empty(), s.level() - 1));
    ChargedMultipartition::new(comps, s.clone(), e)
}

/// The bidepth `(q, p)` of Triv.
pub fn triv_bidepth(n: usize, e: i64, s: &Charge) -> Result<(usize, usize)> {
    check_e(e)?;
    let n_i = n as i64;
    let s = normalized(s, 0, n_i - e - 1);
    let (q, r) = ((n_i / e) as usize, (n_i % e) as usize);
    let nonneg: Vec<i64> = s[1..].iter().copied().filter(|&x| x >= 0).collect();
    if nonneg.is_empty() {
        return Ok((q, r));
    }
    let m = nonneg
        .iter()
        .map(|x| x.rem_euclid(e) as usize)
        .fold(r, usize::min);
    Ok((0, m))
}

pub fn triv_is_fd(n: usize, e: i64, s: &Charge) -> Result<bool> {
    check_e(e)?;
    if n == 0 {
        return Ok(true);
    }
    let n = n as i64;
    let v = s.values();
    let diffs = v[1..].iter().map(|x| x - v[0]);
    let clause_i = diffs.clone().any(|d| {
        let k = d + n - 1;
        k % e == 0 && k / e >= 1
    });
    let clause_ii = n % e == 0 && diffs.clone().any(|d| d > e - n);
    Ok(clause_i || clause_ii)
}

/// `(m^n)` in component `a`, every other component empty.
pub fn rectangle(
    m: usize,
    n: usize,
    a: usize,
    e: i64,
    s: &Charge,
) -> Result<ChargedMultipartition> {
    let ell = s.level();
    if a == 0 || a > ell {
        return Err(CrystalError::RowOutOfRange { row: a, ell });
    }
    let mut comps = vec![Partition::empty(); ell];
    comps[a - 1] = Partition::new(vec![m as i64; n])?;
    ChargedMultipartition::new(comps, s.clone(), e)
}

/// The sl_infinity depth of the rectangle `(m^n)` in component `a`.
pub fn rectangle_q(m: usize, n: usize, a: usize, e: i64, s: &Charge) -> Result<usize> {
    check_e(e)?;
    let ell = s.level();
    if a == 0 || a > ell {
        return Err(CrystalError::RowOutOfRange { row: a, ell });
    }
    let s = normalized(s, a - 1, n as i64 - e - m as i64);
    let q = n / e as usize;
    let set: Vec<i64> = (1..=ell)
        .filter(|&j| j != a)
        .map(|j| if j > a { s[j - 1] } else { s[j - 1] + e })
        .collect();
    let t_prime = if set.iter().all(|&x| x < 0) {
        set.iter().copied().max().unwrap_or(0)
    } else {
        0
    };
    let t = (-t_prime).min(m as i64).max(0) as usize;
    Ok(t * q)
}

fn first_component(lambda: &Partition, e: i64, s: &Charge) -> Result<ChargedMultipartition> {
    let mut comps = vec![lambda.clone()];
    comps.extend(std::iter::repeat_n(Partition::empty(), s.level() - 1));
    ChargedMultipartition::new(comps, s.clone(), e)
}

/// Distinct parts with multiplicities and `Σ_{t>i} a_t` for each.
fn parts_with_tails(lambda: &Partition) -> Vec<(i64, i64, i64)> {
    let mult = lambda.multiplicities();
    let total: i64 = mult.iter().map(|&(_, a)| a as i64).sum();
    let mut seen = 0i64;
    mult.into_iter()
        .map(|(part, a)| {
            seen += a as i64;
            (part as i64, a as i64, total - seen)
        })
        .collect()
}

/// Whether `(λ, ∅, ..., ∅)` is a source of both crystals.
pub fn firstcomp_is_hw(lambda: &Partition, e: i64, s: &Charge) -> Result<bool> {
    check_e(e)?;
    if lambda.is_empty() {
        return Ok(true);
    }
    let n_parts = lambda.len() as i64;
    let s = normalized(s, 0, n_parts);
    let rest = &s[1..];
    let info = parts_with_tails(lambda);
    // The congruence test reads each part in isolation. Row-1 beads of a larger part with
    // e ∤ a_i shift the period alignment of the rows above, so with two or more such parts
    // the periods are peeled directly.
    let misaligned = info.iter().filter(|&&(_, a, _)| a % e != 0).count();
    let clause1 = if misaligned <= 1 {
        info.iter().all(|&(part, a, tail)| {
            a % e == 0
                || rest.iter().any(|&sj| {
                    let k = sj - part - tail;
                    k % e == 0 && k / e >= 1
                })
        })
    } else {
        is_totally_periodic(&first_component(lambda, e, &Charge::new(s.clone())?)?)
    };
    let (lambda1, a1, _) = info[0];
    let clause2 = rest.iter().any(|&sj| sj >= lambda1 + n_parts - a1 + e);
    Ok(clause1 && clause2)
}

/// The position `θ` of `(λ, ∅, ..., ∅)` in its sl_infinity component.
pub fn firstcomp_theta(lambda: &Partition, e: i64, s: &Charge) -> Result<Partition> {
    check_e(e)?;
    let n_parts = lambda.len() as i64;
    let s_norm = normalized(s, 0, n_parts);
    let big_s = s_norm[1..].iter().copied().max().expect("level >= 2");
    let big: Vec<(i64, i64, i64)> = parts_with_tails(lambda)
        .into_iter()
        .filter(|&(_, a, _)| a >= e)
        .collect();
    if big.is_empty() {
        return Ok(Partition::empty());
    }
    let n_big = big.len();
    let x: Vec<i64> = big.iter().map(|&(p, _, tail)| p + tail).collect();
    let qs: Vec<i64> = big.iter().map(|&(_, a, _)| a / e).collect();
    let cum_q: Vec<i64> = qs
        .iter()
        .scan(0, |acc, &q| {
            *acc += q;
            Some(*acc)
        })
        .collect();
    let delta: Vec<i64> = (0..n_big)
        .map(|u| big[u].0 - big.get(u + 1).map(|b| b.0).unwrap_or(0))
        .collect();
    // Columns of θ: (cum_q[v])^{delta[v]} for v < count, plus an optional leading block.
    let columns = |count: usize, lead: Option<(i64, i64)>| -> Result<Partition> {
        let mut cols: Vec<i64> = Vec::new();
        if let Some((value, times)) = lead {
            cols.extend(std::iter::repeat_n(value, times.max(0) as usize));
        }
        for v in (0..count).rev() {
            cols.extend(std::iter::repeat_n(cum_q[v], delta[v] as usize));
        }
        Ok(Partition::new(cols)?.transpose())
    };
    if big_s >= x[0] + e {
        return Ok(Partition::empty());
    }
    if big_s <= e {
        return columns(n_big, None);
    }
    for u in 1..n_big {
        if x[u] + e <= big_s && big_s <= x[u] + big[u].1 + e {
            return columns(u, None);
        }
    }
    let row1 = beta_numbers(
        &first_component(lambda, e, &Charge::new(s_norm.clone())?)?,
        1,
        lambda.len() + 1,
    )?;
    for u in 0..n_big {
        let lower = if u + 1 < n_big {
            x[u + 1] + big[u + 1].1 + e
        } else {
            e
        };
        if lower < big_s && big_s < x[u] + e {
            let lo = big_s - e;
            let beads_between = row1.iter().filter(|&&b| lo < b && b < x[u]).count() as i64;
            let b = x[u] - lo - beads_between;
            return columns(u, Some((cum_q[u], b)));
        }
    }
    unreachable!("the four cases cover every charge")
}

/// A forbidden two-row configuration: `(β,2)` and `(β-k,1)` empty, the rest of the block full.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PatternHit {
    pub beta: i64,
    pub k: i64,
    pub upper_space: Bead,
    pub lower_space: Bead,
}

fn check_level_two(cm: &ChargedMultipartition) -> Result<()> {
    if cm.level() != 2 {
        return Err(CrystalError::WrongLevel {
            expected: 2,
            found: cm.level(),
        });
    }
    Ok(())
}

/// The rightmost forbidden pattern at or left of the first fore period, if any.
pub fn type_b_violation(cm: &ChargedMultipartition) -> Result<Option<PatternHit>> {
    check_level_two(cm)?;
    let e = cm.e();
    let w = materialize(cm);
    let n_col = fore_periods(cm, 1)?.fore[0].first().beta;
    for beta in (w.lo()..=n_col).rev() {
        if w.contains(beta, 2) {
            continue;
        }
        for k in 0..=e {
            if w.contains(beta - k, 1) {
                continue;
            }
            let full = (beta - k..=beta).all(|c| {
                (1..=2).all(|j| (c, j) == (beta, 2) || (c, j) == (beta - k, 1) || w.contains(c, j))
            });
            if full {
                return Ok(Some(PatternHit {
                    beta,
                    k,
                    upper_space: Bead::new(beta, 2),
                    lower_space: Bead::new(beta - k, 1),
                }));
            }
        }
    }
    Ok(None)
}

#[allow(non_snake_case)]
pub fn typeB_slinf_hw(cm: &ChargedMultipartition) -> Result<bool> {
    Ok(type_b_violation(cm)?.is_none())
}

/// Why a bipartition fails the finite-dimensionality test.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum TypeBFailure {
    Pattern(PatternHit),
    /// A bead right of a space that violates the period condition.
    NotLastOfPeriod(Bead),
}

/// `None` when `L(λ)` is finite-dimensional, otherwise the first obstruction found.
pub fn type_b_obstruction(cm: &ChargedMultipartition) -> Result<Option<TypeBFailure>> {
    if let Some(hit) = type_b_violation(cm)? {
        return Ok(Some(TypeBFailure::Pattern(hit)));
    }
    let (periods, _) = jl_peel(cm);
    let lasts: HashSet<Bead> = periods
        .iter()
        .map(|p| *p.beads.last().expect("e >= 2"))
        .collect();
    let members: HashSet<Bead> = periods
        .iter()
        .flat_map(|p| p.beads.iter().copied())
        .collect();
    let w = materialize(cm);
    for b in w.beads().into_iter().rev() {
        if w.contains(b.beta - 1, b.row) {
            continue;
        }
        let ok = match b.row {
            1 => lasts.contains(&b),
            _ => {
                // right of the first fore period the row-1 beads below need not exist,
                // so an empty (β,1) only helps when b itself lies in a period
                let below = Bead::new(b.beta, 1);
                if w.contains_bead(below) {
                    lasts.contains(&below)
                } else {
                    members.contains(&b)
                }
            }
        };
        if !ok {
            return Ok(Some(TypeBFailure::NotLastOfPeriod(b)));
        }
    }
    Ok(None)
}

#[allow(non_snake_case)]
pub fn typeB_is_fd(cm: &ChargedMultipartition) -> Result<bool> {
    Ok(type_b_obstruction(cm)?.is_none())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Parabolic {
    pub ell: usize,
    pub m1: usize,
    pub e: i64,
    pub q: usize,
}

impl std::fmt::Display for Parabolic {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "G({},1,{})", self.ell, self.m1)?;
        for _ in 0..self.q {
            write!(f, "×S_{}", self.e)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SupportDescriptor {
    pub q: usize,
    pub p: usize,
    pub parabolic: Parabolic,
    pub doubly_source: ChargedMultipartition,
}

pub fn support(cm: &ChargedMultipartition) -> SupportDescriptor {
    let q = theta_position(cm).q;
    let depth = p_depth(cm);
    let p = depth.p;
    let n = cm.rank();
    let e = cm.e() as usize;
    assert!(
        e * q + p <= n,
        "depths out of range: n={n}, e={e}, q={q}, p={p}"
    );
    let doubly_source = theta_position(&depth.source).source;
    SupportDescriptor {
        q,
        p,
        parabolic: Parabolic {
            ell: cm.level(),
            m1: n - e * q - p,
            e: cm.e(),
            q,
        },
        doubly_source,
    }
}
