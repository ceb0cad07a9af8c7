mod common;

use common::*;
use fock_crystal::abacus::{to_multipartition, AbacusWindow, Bead};
use fock_crystal::slinf::{
    fore_periods, full_decomposition, incoming_edges, outgoing_edges, theta_position,
    upsilon_minus, vessels_and_aft,
};
use fock_crystal::ChargedMultipartition;

fn from_rows(e: i64, full_upto: i64, rows: &[Vec<i64>]) -> ChargedMultipartition {
    to_multipartition(&AbacusWindow::from_rows(e, full_upto, rows).unwrap()).unwrap()
}

fn keys(m: &std::collections::BTreeMap<usize, ChargedMultipartition>) -> Vec<usize> {
    m.keys().copied().collect()
}

#[test]
fn four_row_example_with_adrift_beads() {
    let a = from_rows(
        3,
        -9,
        &[
            vec![10, 6, 4, 3, -2, -5, -6, -7, -8],
            vec![9, 7, 2, 0, -1, -5, -6, -7, -8],
            vec![8, 7, 6, 3, 2, 1, 0, -2, -3, -4, -7, -8],
            vec![9, 7, 5, 4, 1, -2, -7, -8],
        ],
    );
    let d = full_decomposition(&a);
    // both sit below and right of the first fore period
    assert_eq!(d.adrift, vec![Bead::new(10, 1), Bead::new(9, 2)]);
    let p1 = &d.fore[0];
    assert!(d
        .adrift
        .iter()
        .all(|b| b.beta > p1.last().beta && b.row < p1.first().row));
    let pos = theta_position(&a);
    assert_eq!(pos.theta, part(&[2, 1, 1, 1, 1]));
    assert_eq!(pos.q, 6);
    assert_eq!(keys(&outgoing_edges(&a)), vec![1, 2, 6]);
    assert_eq!(keys(&incoming_edges(&a)), vec![1, 5]);
}

#[test]
fn three_row_example_is_a_source() {
    let a = from_rows(
        3,
        -1,
        &[
            (0..=9).rev().collect(),
            vec![7, 6, 5, 4, 2, 1, 0],
            vec![10, 8, 6, 5, 4, 2, 1, 0],
        ],
    );
    assert!(incoming_edges(&a).is_empty());
    assert!(theta_position(&a).theta.is_empty());
}

#[test]
fn totally_periodic_example_reaches_its_source() {
    let a = from_rows(
        4,
        -10,
        &[
            [vec![6, 5, 4, 3, 0], (-9..=-1).rev().collect()].concat(),
            [vec![6, 5, 4], (-9..=-4).rev().collect()].concat(),
            vec![7, 3, 2, 1, -2, -3, -5, -6, -7, -8, -9],
        ],
    );
    assert!(fock_crystal::sle::is_totally_periodic(&a));
    assert_eq!(keys(&incoming_edges(&a)), vec![2]);
    let pos = theta_position(&a);
    assert_eq!(pos.theta, part(&[2, 2]));
    let mut up = a.clone();
    for k in [2, 2, 1, 1] {
        up = upsilon_minus(&up, k).expect("period travels upstream");
    }
    assert_eq!(up, pos.source);
    assert!(incoming_edges(&up).is_empty());
}

#[test]
fn period_shiftable_both_ways() {
    // drawn window: columns -2..=4, everything at or below -3 full
    let a = from_rows(3, -3, &[vec![1, -1, -2], vec![3, 2, -1, -2]]);
    assert_eq!(a, cm("((1),(2,2))", &[0, 1], 3));
    let w = fock_crystal::abacus::materialize(&a);
    let p1 = fore_periods(&a, 1).unwrap().fore[0].clone();
    assert_eq!(
        p1.beads(),
        &[Bead::new(3, 2), Bead::new(2, 2), Bead::new(1, 1)]
    );
    assert!(p1.is_right_shiftable(&w));
    assert!(p1.is_left_shiftable(&w));
    let right = from_rows(3, -3, &[vec![2, -1, -2], vec![4, 3, -1, -2]]);
    let left = from_rows(3, -3, &[vec![0, -1, -2], vec![2, 1, -1, -2]]);
    assert_eq!(w.shift(p1.beads(), 1).unwrap(), right);
    assert_eq!(w.shift(p1.beads(), -1).unwrap(), left);
}

#[test]
fn five_row_example_fore_and_aft() {
    let a = cm(
        "((9,2),(5,5,4,3,2,1,1),(2,1,1),(6,4,2,1,1),(4,4,2,2,1,1))",
        &[-4, 2, -1, 2, 3],
        4,
    );
    let d = vessels_and_aft(&a, 8).unwrap();
    let differ: Vec<usize> = (1..=8).filter(|&k| d.fore[k - 1] != d.aft[k - 1]).collect();
    assert_eq!(differ, vec![3, 5]);
}
