mod common;

use common::*;
use ftpaths::dso::*;
use ftpaths::gen::{gnp, rng};
use ftpaths::hitting::{greedy_bound, verify_hitting};
use ftpaths::oracle::naive_dso_distance;
use ftpaths::sssp::hop_bounded_distance;
use ftpaths::{Element, FaultSet, Graph};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;

fn random_faults(g: &Graph<i64>, k: usize, r: &mut impl Rng) -> FaultSet {
    let all = all_elements(g);
    all.choose_multiple(r, k).copied().collect()
}

#[test]
fn n10_nodes_and_queries_match_oracle() {
    let g = gnp(10, 0.3, Some((1, 20)), 10);
    let trees = build_ft_trees(&g, 4, 2, DEFAULT_BUDGET).unwrap();
    let mut r = rng(10);
    for tree in &trees.trees {
        for (avoided, node) in tree.walk() {
            let f: FaultSet = avoided.into_iter().collect();
            assert_eq!(node.dist(), hop_bounded_distance(&g, tree.s, tree.t, 4, &f));
        }
        let mut candidates: Vec<Element> = tree.root().members().to_vec();
        candidates.extend(all_elements(&g).choose_multiple(&mut r, 4));
        for (i, a) in candidates.iter().enumerate() {
            for b in &candidates[i..] {
                let f = faults(&[*a, *b]);
                assert_eq!(
                    query_ft_tree(tree, &f),
                    hop_bounded_distance(&g, tree.s, tree.t, 4, &f),
                    "{}->{} F={:?}",
                    tree.s,
                    tree.t,
                    f
                );
            }
        }
    }
}

#[test]
fn family_members_are_long_and_bounded() {
    let g = gnp(10, 0.3, Some((1, 20)), 11);
    let trees = build_ft_trees(&g, 4, 1, DEFAULT_BUDGET).unwrap();
    let fam = collect_long_stored_paths(&trees);
    assert!(fam.q() <= trees.node_count());
    assert!(fam.members.iter().all(|m| m.len() >= 3));
    assert_eq!(fam.l, 3);
    assert!(trees.distinct_paths() as f64 <= estimated_nodes(10, 4, 1));
}

#[test]
fn l_one_family_takes_every_edge_path() {
    let g = Graph::from_edges(3, [(0, 1, 1i64), (1, 2, 1)]).unwrap();
    let trees = build_ft_trees(&g, 1, 1, DEFAULT_BUDGET).unwrap();
    let fam = collect_long_stored_paths(&trees);
    assert_eq!(fam.members, vec![vec![0, 1], vec![1, 2]]);
}

#[test]
fn n20_pivots_within_bound() {
    let g = gnp(20, 0.15, Some((1, 20)), 20);
    let dso = build_dso(&g, 3, 2).unwrap();
    let fam = dso.long_paths();
    assert!(verify_hitting(&fam, &dso.pivots));
    assert!(dso.pivots.len() <= greedy_bound(20, fam.l, fam.q()));
}

#[test]
fn n40_random_queries() {
    let g = gnp(40, 0.08, Some((1, 20)), 40);
    let dso = build_dso(&g, 4, 2).unwrap();
    let mut r = rng(41);
    for _ in 0..500 {
        let (s, t) = (r.gen_range(0..40), r.gen_range(0..40));
        let f = random_faults(&g, r.gen_range(0..=2), &mut r);
        assert_eq!(dso.query(s, t, &f).unwrap(), naive_dso_distance(&g, s, t, &f), "{s}->{t} {f:?}");
    }
}

#[test]
fn failing_the_target_disconnects() {
    let g = gnp(15, 0.2, Some((1, 9)), 3);
    let dso = build_dso(&g, 3, 1).unwrap();
    let f = faults(&[Element::Vertex(7)]);
    assert_eq!(dso.query(0, 7, &f).unwrap(), None);
}

#[test]
fn rebuild_is_identical() {
    let g = gnp(12, 0.25, Some((1, 9)), 5);
    assert_eq!(build_dso(&g, 3, 2).unwrap(), build_dso(&g, 3, 2).unwrap());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn sandwich_and_monotonicity(g in weighted_graph(9, 1, 12), l in 2usize..5, picks in proptest::collection::vec(any::<prop::sample::Index>(), 3)) {
        let dso = build_dso(&g, l, 2).unwrap();
        let all = all_elements(&g);
        let chosen: Vec<Element> = picks.iter().map(|p| all[p.index(all.len())]).collect();
        for s in 0..g.n() {
            for t in 0..g.n() {
                let tree = dso.trees.get(s, t);
                let mut prev = query_ft_tree(tree, &FaultSet::new());
                let mut f = FaultSet::new();
                for e in &chosen[..2] {
                    f.insert(*e);
                    let cur = query_ft_tree(tree, &f);
                    let monotone = match (prev, cur) {
                        (Some(a), Some(b)) => b >= a,
                        (None, c) => c.is_none(),
                        _ => true,
                    };
                    prop_assert!(monotone);
                    prev = cur;
                }
                for k in 0..=2 {
                    let f: FaultSet = chosen[..k].iter().copied().collect();
                    let truth = naive_dso_distance(&g, s, t, &f);
                    let got = dso.query(s, t, &f).unwrap();
                    prop_assert_eq!(got, truth);
                    if let Some(single) = query_ft_tree(tree, &f) {
                        prop_assert!(got.is_some_and(|x| x <= single));
                    }
                }
            }
        }
    }

    #[test]
    fn negative_weights_are_recovered(g in potential_graph(8), pick in any::<prop::sample::Index>()) {
        let dso = build_dso(&g, 3, 1).unwrap();
        let all = all_elements(&g);
        let f = faults(&[all[pick.index(all.len())]]);
        for s in 0..g.n() {
            for t in 0..g.n() {
                prop_assert_eq!(dso.query(s, t, &f).unwrap(), naive_dso_distance(&g, s, t, &f));
            }
        }
    }
}
