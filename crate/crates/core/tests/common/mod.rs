#![allow(dead_code)]

use fock_crystal::notation::parse_components;
use fock_crystal::{Charge, ChargedMultipartition, Partition};

pub fn cm(s: &str, charge: &[i64], e: i64) -> ChargedMultipartition {
    ChargedMultipartition::new(
        parse_components(s).unwrap(),
        Charge::new(charge.to_vec()).unwrap(),
        e,
    )
    .unwrap()
}

pub fn part(v: &[i64]) -> Partition {
    Partition::new(v.to_vec()).unwrap()
}

/// All l-tuples of partitions with total size n.
pub fn multipartitions(ell: usize, n: usize) -> Vec<Vec<Partition>> {
    if ell == 1 {
        return vec![[Partition::all_of_size(n)].concat()]
            .into_iter()
            .flat_map(|ps| ps.into_iter().map(|p| vec![p]))
            .collect();
    }
    let mut out = Vec::new();
    for first in 0..=n {
        for head in Partition::all_of_size(first) {
            for mut tail in multipartitions(ell - 1, n - first) {
                let mut v = vec![head.clone()];
                v.append(&mut tail);
                out.push(v);
            }
        }
    }
    out
}

/// Every charge in `[lo, hi]^ell`.
pub fn charges(ell: usize, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..ell {
        out = out
            .into_iter()
            .flat_map(|v| {
                (lo..=hi).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}

/// Every charged multipartition of rank `<= max_rank` over the given levels, moduli and charge box.
pub fn corpus(
    max_rank: usize,
    ells: &[usize],
    es: &[i64],
    lo: i64,
    hi: i64,
) -> Vec<ChargedMultipartition> {
    let mut out = Vec::new();
    for &ell in ells {
        let shapes: Vec<Vec<Partition>> = (0..=max_rank)
            .flat_map(|n| multipartitions(ell, n))
            .collect();
        for &e in es {
            for s in charges(ell, lo, hi) {
                let charge = Charge::new(s).unwrap();
                for comps in &shapes {
                    out.push(ChargedMultipartition::new(comps.clone(), charge.clone(), e).unwrap());
                }
            }
        }
    }
    out
}

pub fn triv(n: usize, s: &[i64], e: i64) -> ChargedMultipartition {
    let mut comps = vec![Partition::new(vec![1; n]).unwrap()];
    comps.extend(std::iter::repeat_n(Partition::empty(), s.len() - 1));
    ChargedMultipartition::new(comps, Charge::new(s.to_vec()).unwrap(), e).unwrap()
}
