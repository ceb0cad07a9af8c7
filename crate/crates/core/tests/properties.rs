mod common;

use std::collections::{BTreeSet, HashSet};

use proptest::prelude::*;

use fock_crystal::abacus::{
    bead_compare, materialize, materialize_range, to_multipartition, translate_charge, Bead,
};
use fock_crystal::cherednik::{
    cherednik_to_fock, firstcomp_is_hw, firstcomp_theta, fock_to_cherednik, rectangle, rectangle_q,
    triv, triv_bidepth, FockParams,
};
use fock_crystal::closedform::{b_sigma_closed, tabloid_of, tabloid_swap, zpartition_closed};
use fock_crystal::graph::{build_component, CrystalKind};
use fock_crystal::oracle::{all_quasiperiods, brute_fore_period};
use fock_crystal::sle::{
    e_tilde, f_tilde, is_totally_periodic, jl_first_period, p_depth, reduce_word, shiftable_beads,
    sle_outgoing, Sign,
};
use fock_crystal::slinf::{
    fore_periods, full_decomposition, incoming_edges, outgoing_edges, theta_position,
    upsilon_minus, upsilon_plus, vessels_and_aft,
};
use fock_crystal::{Charge, ChargedMultipartition, Partition};

fn partition(max_len: usize, max_part: i64) -> impl Strategy<Value = Partition> {
    prop::collection::vec(1..=max_part, 0..=max_len)
        .prop_map(|v| Partition::from_unsorted(v).expect("positive parts"))
}

fn charged(max_len: usize, max_part: i64) -> impl Strategy<Value = ChargedMultipartition> {
    (2usize..=3, 2i64..=4).prop_flat_map(move |(ell, e)| {
        (
            prop::collection::vec(partition(max_len, max_part), ell),
            prop::collection::vec(-4i64..=4, ell),
        )
            .prop_map(move |(comps, s)| {
                ChargedMultipartition::new(comps, Charge::new(s).unwrap(), e).unwrap()
            })
    })
}

fn small() -> impl Strategy<Value = ChargedMultipartition> {
    charged(3, 3)
}

fn bead() -> impl Strategy<Value = Bead> {
    (-3i64..=3, 1usize..=3).prop_map(|(beta, row)| Bead::new(beta, row))
}

/// The first `count` periods in peeling order, read on a window wide enough to reach them.
fn jl_prefix(cm: &ChargedMultipartition, count: usize) -> Vec<Vec<Bead>> {
    let lo = cm.full_threshold() - cm.e() * (count as i64 + 2);
    let w = materialize_range(cm, lo, cm.max_bead() + 1);
    let mut used = HashSet::new();
    let mut out = Vec::new();
    for _ in 0..count {
        let p = jl_first_period(&w, &used).expect("periods continue into the packed region");
        used.extend(p.beads.iter().copied());
        out.push(p.beads);
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn window_round_trip(cm in charged(5, 6)) {
        prop_assert_eq!(to_multipartition(&materialize(&cm)).unwrap(), cm);
    }

    #[test]
    fn beta_numbers_decrease_then_run_consecutively(cm in charged(5, 6)) {
        for j in 1..=cm.level() {
            let len = cm.component(j).len();
            for k in 1..len + 4 {
                prop_assert!(cm.beta(j, k) > cm.beta(j, k + 1));
            }
            for k in len + 1..len + 4 {
                prop_assert_eq!(cm.beta(j, k), cm.charge().get(j) + 1 - k as i64);
            }
        }
    }

    #[test]
    fn bead_order_is_total(a in bead(), b in bead(), c in bead()) {
        use std::cmp::Ordering::*;
        prop_assert_eq!(bead_compare(&a, &b), bead_compare(&b, &a).reverse());
        prop_assert_eq!(bead_compare(&a, &b) == Equal, a == b);
        if bead_compare(&a, &b) == Less && bead_compare(&b, &c) == Less {
            prop_assert_eq!(bead_compare(&a, &c), Less);
        }
    }

    #[test]
    fn packing_a_row_recovers_its_charge(cm in charged(5, 6)) {
        let w = materialize(&cm);
        for j in 1..=cm.level() {
            let count = (w.lo()..=w.hi()).filter(|&b| w.contains(b, j)).count() as i64;
            prop_assert_eq!(w.lo() - 1 + count, cm.charge().get(j));
        }
    }

    #[test]
    fn translation_moves_every_bead(cm in small(), t in -5i64..=5) {
        let moved = translate_charge(&cm, t);
        let (w, w2) = (materialize(&cm), materialize(&moved));
        for beta in w.lo() - 2..=w.hi() + 2 {
            for j in 1..=cm.level() {
                prop_assert_eq!(w.contains(beta, j), w2.contains(beta + t, j));
            }
        }
    }

    #[test]
    fn reduction_ignores_deletion_order(cm in small(), picks in prop::collection::vec(any::<usize>(), 64)) {
        for i in 0..cm.e() {
            let sig = shiftable_beads(&cm, i).unwrap();
            let mut word = sig.entries.clone();
            let mut picks = picks.iter().cycle();
            loop {
                let spots: Vec<usize> = (0..word.len().saturating_sub(1))
                    .filter(|&x| word[x].sign() == Sign::Minus && word[x + 1].sign() == Sign::Plus)
                    .collect();
                if spots.is_empty() {
                    break;
                }
                let at = spots[picks.next().unwrap() % spots.len()];
                word.drain(at..at + 2);
            }
            prop_assert_eq!(&word, &reduce_word(&sig.entries));
            prop_assert_eq!(&word, &sig.reduced);
            let w = sig.reduced_word();
            prop_assert!(!w.contains("-+"));
        }
    }

    #[test]
    fn kashiwara_operators_are_inverse(cm in small()) {
        for i in 0..cm.e() {
            if let Some(down) = f_tilde(&cm, i).unwrap() {
                prop_assert_eq!(down.rank(), cm.rank() + 1);
                prop_assert_eq!(e_tilde(&down, i).unwrap(), Some(cm.clone()));
            }
            if let Some(up) = e_tilde(&cm, i).unwrap() {
                prop_assert_eq!(up.rank() + 1, cm.rank());
                prop_assert_eq!(f_tilde(&up, i).unwrap(), Some(cm.clone()));
            }
        }
    }

    #[test]
    fn depth_zero_iff_totally_periodic(cm in small()) {
        prop_assert_eq!(p_depth(&cm).p == 0, is_totally_periodic(&cm));
        prop_assert!(is_totally_periodic(&p_depth(&cm).source));
    }

    #[test]
    fn residues_follow_charge_translation(cm in small(), t in -4i64..=4) {
        let e = cm.e();
        let moved: BTreeSet<(i64, ChargedMultipartition)> = sle_outgoing(&translate_charge(&cm, t))
            .into_iter()
            .collect();
        let expected: BTreeSet<(i64, ChargedMultipartition)> = sle_outgoing(&cm)
            .into_iter()
            .map(|(i, w)| ((i + t).rem_euclid(e), translate_charge(&w, t)))
            .collect();
        prop_assert_eq!(moved, expected);
    }

    #[test]
    fn slinf_edges_follow_charge_translation(cm in small(), t in -4i64..=4) {
        let moved: Vec<(usize, ChargedMultipartition)> =
            outgoing_edges(&translate_charge(&cm, t)).into_iter().collect();
        let expected: Vec<(usize, ChargedMultipartition)> = outgoing_edges(&cm)
            .into_iter()
            .map(|(k, w)| (k, translate_charge(&w, t)))
            .collect();
        prop_assert_eq!(moved, expected);
    }

    #[test]
    fn depth_is_path_independent(cm in small(), picks in prop::collection::vec(any::<usize>(), 32)) {
        let target = p_depth(&cm);
        let mut cur = cm.clone();
        let mut steps = 0;
        let mut picks = picks.iter().cycle();
        loop {
            let ups: Vec<ChargedMultipartition> = (0..cur.e())
                .filter_map(|i| e_tilde(&cur, i).unwrap())
                .collect();
            if ups.is_empty() {
                break;
            }
            cur = ups[picks.next().unwrap() % ups.len()].clone();
            steps += 1;
        }
        prop_assert_eq!(steps, target.p);
        prop_assert_eq!(cur, target.source);
    }

    #[test]
    fn fore_free_and_adrift_classify_the_window(cm in small()) {
        let d = full_decomposition(&cm);
        let mut fore: HashSet<Bead> = HashSet::new();
        for (idx, p) in d.fore.iter().enumerate() {
            for b in p.beads() {
                prop_assert!(fore.insert(*b), "fore periods overlap at {}", b);
            }
            if idx > 0 {
                prop_assert!(d.fore[idx - 1] > *p);
            }
        }
        let free: HashSet<Bead> = d.free.iter().copied().collect();
        prop_assert!(fore.is_disjoint(&free));
        let floor = d.fore.last().map_or(i64::MIN, |p| p.last().beta);
        let w = materialize(&cm);
        for b in w.beads() {
            if b.beta >= floor {
                prop_assert!(fore.contains(&b) || free.contains(&b), "{} unclassified", b);
            }
        }
        let mut in_vessel: HashSet<Bead> = HashSet::new();
        for v in &d.vessels {
            for b in v {
                prop_assert!(in_vessel.insert(*b), "vessels overlap at {}", b);
            }
        }
        for b in &d.adrift {
            prop_assert!(free.contains(b) && !in_vessel.contains(b));
        }
    }

    #[test]
    fn upsilon_moves_are_inverse(cm in small(), k in 1usize..=4) {
        if let Some(down) = upsilon_plus(&cm, k) {
            prop_assert_eq!(upsilon_minus(&down, k), Some(cm.clone()));
        }
        if let Some(up) = upsilon_minus(&cm, k) {
            prop_assert_eq!(upsilon_plus(&up, k), Some(cm.clone()));
        }
    }

    #[test]
    fn arrows_add_one_box_to_theta(cm in small()) {
        let here = theta_position(&cm);
        for (k, w) in outgoing_edges(&cm) {
            let there = theta_position(&w);
            prop_assert_eq!(Some(there.theta), here.theta.add_box(k));
            prop_assert_eq!(there.q, here.q + 1);
            prop_assert_eq!(w.rank(), cm.rank() + cm.e() as usize);
        }
        for (k, w) in incoming_edges(&cm) {
            prop_assert_eq!(Some(theta_position(&w).theta), here.theta.remove_box(k));
        }
    }

    #[test]
    fn totally_periodic_arrows_shift_the_kth_period(start in small()) {
        let cm = p_depth(&start).source;
        let w = materialize(&cm);
        let count = full_decomposition(&cm).fore.len() + 1;
        let periods = jl_prefix(&cm, count);
        let mut expected = BTreeSet::new();
        for (idx, p) in periods.iter().enumerate() {
            let Ok(next) = w.shift(p, 1) else { continue };
            if jl_prefix(&next, idx + 1)[idx] == p.iter().map(|b| b.shifted(1)).collect::<Vec<_>>() {
                expected.insert((idx + 1, next));
            }
        }
        let got: BTreeSet<(usize, ChargedMultipartition)> = outgoing_edges(&cm).into_iter().collect();
        prop_assert_eq!(got, expected);
    }

    #[test]
    fn brute_force_finds_the_same_extremal_periods(cm in small()) {
        let d = vessels_and_aft(&cm, 3).unwrap();
        let lo = cm.full_threshold() - cm.e() * 5;
        let w = materialize_range(&cm, lo, cm.max_bead() + 1);
        for k in 1..=3 {
            prop_assert_eq!(brute_fore_period(&w, k), Some(d.fore[k - 1].clone()));
            let vessel: HashSet<Bead> = d.vessels[k - 1].iter().copied().collect();
            let inside = all_quasiperiods(&w, Some(&vessel));
            prop_assert_eq!(inside.first(), Some(&d.aft[k - 1]));
        }
    }

    #[test]
    fn tabloid_swap_matches_swapped_charge(
        z in prop::collection::vec(0i64..=4, 2..=4),
        e in 2i64..=3,
        j in 1usize..=4,
        j2 in 1usize..=4,
    ) {
        let mut z = z;
        z[0] = 0;
        prop_assume!(j <= z.len() && j2 <= z.len());
        let t = tabloid_of(&z, e, 4).unwrap();
        let mut z2 = z.clone();
        z2.swap(j - 1, j2 - 1);
        let direct = tabloid_of(&z2, e, 4).unwrap();
        let swapped = tabloid_swap(&t, j, j2).unwrap();
        prop_assert_eq!(&swapped.z, &direct.z);
        let top = z.iter().copied().max().unwrap();
        let floor = swapped.floor.max(direct.floor);
        for r in 1..=z.len() {
            for c in floor..=top {
                prop_assert_eq!(swapped.at(r, c), direct.at(r, c), "row {} column {}", r, c);
            }
        }
    }

    #[test]
    fn tabloid_entries_are_an_initial_segment(
        z in prop::collection::vec(0i64..=4, 2..=4),
        e in 2i64..=3,
        depth in 1usize..=5,
    ) {
        let mut z = z;
        z[0] = 0;
        let t = tabloid_of(&z, e, depth).unwrap();
        let mut all: Vec<u64> = t.rows.concat();
        all.sort_unstable();
        let k = all.len() as u64;
        prop_assert_eq!(all, (1..=k).collect::<Vec<_>>());
        prop_assert!(t.rows.iter().all(|r| r.len() >= depth));
    }

    #[test]
    fn triv_free_beads_count_depth(n in 0usize..=10, e in 2i64..=4, s in prop::collection::vec(-12i64..=12, 1..=2)) {
        let charge = Charge::new([vec![0], s.clone()].concat()).unwrap();
        let a = triv(n, e, &charge).unwrap();
        let free = full_decomposition(&a).free.len();
        prop_assert_eq!(free, p_depth(&a).p);
        let (_, p) = triv_bidepth(n, e, &charge).unwrap();
        prop_assert_eq!(free, p);
    }

    #[test]
    fn rectangle_depth_matches_crystal(
        m in 1usize..=4,
        n in 1usize..=5,
        a in 1usize..=3,
        e in 2i64..=3,
        s in prop::collection::vec(-10i64..=10, 3),
    ) {
        let charge = Charge::new(s).unwrap();
        let r = rectangle(m, n, a, e, &charge).unwrap();
        prop_assert_eq!(rectangle_q(m, n, a, e, &charge).unwrap(), theta_position(&r).q);
    }

    #[test]
    fn first_component_formulas_match_crystal(
        lambda in partition(5, 5),
        e in 2i64..=3,
        s in prop::collection::vec(-10i64..=12, 1..=2),
    ) {
        let charge = Charge::new([vec![0], s].concat()).unwrap();
        let mut comps = vec![lambda.clone()];
        comps.resize(charge.level(), Partition::empty());
        let a = ChargedMultipartition::new(comps, charge.clone(), e).unwrap();
        let pos = theta_position(&a);
        prop_assert_eq!(firstcomp_theta(&lambda, e, &charge).unwrap(), pos.theta);
        let hw = pos.q == 0 && p_depth(&a).p == 0;
        prop_assert_eq!(firstcomp_is_hw(&lambda, e, &charge).unwrap(), hw);
    }

    #[test]
    fn parameter_dictionary_inverts(e in 2i64..=9, s in prop::collection::vec(-20i64..=20, 2..=4)) {
        let charge = Charge::new(s.clone()).unwrap();
        let params = fock_to_cherednik(&FockParams { e, s: charge, n: 0 }).unwrap();
        let (e2, s2) = cherednik_to_fock(&params).unwrap();
        prop_assert_eq!(e2, e);
        let shift = s[0];
        prop_assert_eq!(s2.values().iter().map(|x| x + shift).collect::<Vec<_>>(), s);
    }
}

fn partition_count(n: usize) -> usize {
    Partition::all_of_size(n).len()
}

#[test]
fn closed_form_equals_iterated_upsilon() {
    let mut checked = 0;
    for e in [2i64, 3] {
        for ell in 2..=4usize {
            let zs = (0..4i64.pow(ell as u32)).map(|code| {
                (0..ell)
                    .map(|i| (code / 4i64.pow(i as u32)) % 4)
                    .collect::<Vec<i64>>()
            });
            for z in zs.filter(|z| z.contains(&0)) {
                let empty = ChargedMultipartition::empty(
                    Charge::new(z.iter().map(|x| e * x).collect()).unwrap(),
                    e,
                )
                .unwrap();
                for size in 0..=8 {
                    for sigma in Partition::all_of_size(size) {
                        let mut cur = empty.clone();
                        for (idx, &times) in sigma.parts().iter().enumerate() {
                            for _ in 0..times {
                                cur = upsilon_plus(&cur, idx + 1).expect("downstream move exists");
                            }
                        }
                        let closed = b_sigma_closed(&sigma, &z, e).unwrap();
                        assert_eq!(closed, cur, "sigma {sigma} z {z:?} e {e}");
                        if z.windows(2).all(|w| w[0] >= w[1]) {
                            assert_eq!(zpartition_closed(&sigma, &z, e).unwrap(), closed);
                        }
                        checked += 1;
                    }
                }
            }
        }
    }
    assert!(checked > 20_000);
}

#[test]
fn closed_form_sits_at_sigma() {
    for (z, e) in [(vec![2, 0, 1], 2), (vec![0, 3], 3), (vec![1, 1, 0, 2], 2)] {
        for size in 0..=6 {
            for sigma in Partition::all_of_size(size) {
                let b = b_sigma_closed(&sigma, &z, e).unwrap();
                let pos = theta_position(&b);
                assert_eq!(pos.q, size);
                assert_eq!(pos.theta, sigma);
            }
        }
    }
}

#[test]
fn slinf_components_are_young_graphs() {
    for (s, e) in [(vec![0, 1], 3), (vec![2, 0, -1], 2), (vec![0, 0], 2)] {
        let source = ChargedMultipartition::empty(Charge::new(s).unwrap(), e).unwrap();
        let cap = 5 * e as usize;
        let g = build_component(&source, CrystalKind::Slinf, cap).unwrap();
        let sizes: Vec<usize> = (0..=5).map(partition_count).collect();
        assert_eq!(g.layer_sizes(), sizes);
        for (idx, v) in g.vertices.iter().enumerate() {
            let theta = theta_position(v).theta;
            if v.rank() + (e as usize) <= cap {
                assert_eq!(g.out_degree(idx), theta.addable_rows().len());
            }
            assert_eq!(g.in_degree(idx), theta.removable_rows().len());
        }
        let again = build_component(&source, CrystalKind::Slinf, cap).unwrap();
        assert_eq!(g.to_json(), again.to_json());
        let sle = build_component(&source, CrystalKind::Sle, 6).unwrap();
        assert_eq!(
            sle.to_json(),
            build_component(&source, CrystalKind::Sle, 6)
                .unwrap()
                .to_json()
        );
        assert!(sle
            .edges
            .iter()
            .all(|x| sle.vertices[x.to].rank() == sle.vertices[x.from].rank() + 1));
    }
}

#[test]
fn fore_periods_reject_zero() {
    let a = common::cm("(∅,∅)", &[0, 0], 2);
    assert!(fore_periods(&a, 0).is_err());
}
