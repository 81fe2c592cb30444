mod common;

use common::*;
use ftpaths::gen::{farthest_from, gnp, path_plus, planted};
use ftpaths::hitting::{greedy_bound, verify_hitting};
use ftpaths::oracle::*;
use ftpaths::rp::*;
use ftpaths::sssp::bfs;
use ftpaths::{Graph, Weight};
use proptest::prelude::*;

fn as_usize(v: &[Option<i64>]) -> Vec<Option<usize>> {
    v.iter().map(|x| x.map(|d| d as usize)).collect()
}

fn structural(g: &Graph<impl Weight>, base: &BasePath, d: &DetourSet) -> Result<(), String> {
    let c = sqrt_threshold(g.n());
    if d.len() > g.n() || d.c != c {
        return Err("size".into());
    }
    let gp = without_path_edges(g, base.vertices());
    for e in &d.entries {
        if e.path.len() != c + 1 || e.path[0] != base.vertex(e.rho) || *e.path.last().unwrap() != e.x {
            return Err(format!("entry {e:?} has the wrong shape"));
        }
        if !e.path.windows(2).all(|w| gp.has_edge(w[0], w[1])) {
            return Err(format!("entry {e:?} leaves G'"));
        }
        if base.position(e.x).is_some() {
            return Err(format!("entry {e:?} ends on P"));
        }
    }
    Ok(())
}

/// Every long triple is covered by an entry that extends to an optimal
/// replacement path.
fn coverage_violations(g: &Graph<i64>, s: usize, t: usize, d: &DetourSet) -> Vec<usize> {
    let naive = naive_replacement_paths(g, s, t).unwrap();
    let c = sqrt_threshold(g.n());
    enumerate_long_triples(g, s, t)
        .unwrap()
        .into_iter()
        .filter(|&i| {
            let h = g.without(&edge_faults(&naive.path, i));
            let to_t = bfs(&h.reversed(), t);
            let target = naive.lengths[i].unwrap() as usize;
            !d.entries
                .iter()
                .any(|e| e.rho <= i && to_t[e.x].is_some_and(|dx| e.rho + c + dx == target))
        })
        .collect()
}

#[test]
fn base_path_hop_count_is_bfs_distance() {
    let g = gnp(30, 0.15, None, 8);
    for t in 0..30 {
        if let Some(d) = bfs(&g, 0)[t] {
            assert_eq!(compute_base_path(&g, 0, t).unwrap().k(), d);
        }
    }
}

#[test]
fn rd_table_matches_all_pairs_bfs() {
    let g = gnp(40, 0.2, None, 3);
    let t = farthest_from(&g, 0);
    let base = compute_base_path(&g, 0, t).unwrap();
    let rd = compute_rd_table(&g, &base).unwrap();
    let table = path_vertex_distances(&g, base.vertices());
    let c = rd.c;
    for i in 0..=base.k() {
        assert_eq!(rd.get(i, 0), Some(0));
        for j in 1..=c.min(base.k() - i) {
            let truth = table[i][base.vertex(i + j)];
            match rd.get(i, j) {
                Some(v) => assert_eq!(Some(v), truth),
                None => assert!(truth.is_none_or(|d| d > c)),
            }
        }
    }
}

#[test]
fn short_lengths_exact_when_a_short_detour_is_optimal() {
    let g = gnp(40, 0.2, None, 3);
    let t = farthest_from(&g, 0);
    let base = compute_base_path(&g, 0, t).unwrap();
    let short = short_detour_lengths(&base, &compute_rd_table(&g, &base).unwrap());
    let naive = naive_replacement_paths(&g, 0, t).unwrap();
    let c = sqrt_threshold(40);
    for i in 0..base.k() {
        let truth = naive.lengths[i].map(|d| d as usize);
        assert!(short[i].is_none_or(|v| truth.is_some_and(|x| v >= x)));
        if min_detour_edges(&g, &naive.path, i).is_some_and(|d| d <= c) {
            assert_eq!(short[i], truth, "edge {i}");
        }
    }
}

#[test]
fn long_lengths_bound_and_match_on_long_triples() {
    let mut checked = 0;
    for seed in 0..40 {
        let inst = planted(60, 900 + seed);
        let (g, t) = (inst.graph, inst.t);
        let base = compute_base_path(&g, 0, t).unwrap();
        let d = compute_detour_set_trees(&g, &base).unwrap();
        let pivots = select_long_pivots(&d, 60).unwrap();
        let long = long_detour_lengths(&g, &base, &pivots).unwrap();
        let naive = naive_replacement_paths(&g, 0, t).unwrap();
        for (i, l) in long.iter().enumerate() {
            assert!(l.is_none_or(|v| naive.lengths[i].is_some_and(|x| v >= x as usize)));
        }
        for i in enumerate_long_triples(&g, 0, t).unwrap() {
            assert_eq!(long[i], naive.lengths[i].map(|x| x as usize));
            checked += 1;
        }
    }
    assert!(checked > 0);
}

#[test]
fn pivots_hit_detour_paths() {
    let g = gnp(50, 0.1, None, 21);
    let t = farthest_from(&g, 0);
    let base = compute_base_path(&g, 0, t).unwrap();
    let d = compute_detour_set_trees(&g, &base).unwrap();
    let r = select_long_pivots(&d, 50).unwrap();
    assert!(verify_hitting(&d.family(), &r));
    assert!(r.len() <= greedy_bound(50, d.c + 1, d.len()));
    assert!(select_long_pivots(&DetourSet::default(), 50).unwrap().is_empty());
}

#[test]
fn decremental_computes_the_disjoint_detour_set() {
    for seed in 0..100 {
        let n = 10 + (seed as usize * 7) % 51;
        let g = gnp(n, 0.1, None, 300 + seed);
        let t = farthest_from(&g, 0);
        let base = compute_base_path(&g, 0, t).unwrap();
        let (d, stats) = compute_detour_set_decremental(&g, &base).unwrap();
        structural(&g, &base, &d).unwrap();
        assert_eq!(d.pairs(), disjoint_detour_set(&g, base.vertices()), "seed {seed}");
        assert!(stats.max_membership() <= d.c + 1);
        for e in &d.entries {
            assert!(e.path[1..].iter().all(|&v| base.position(v).is_none()));
        }
    }
}

#[test]
fn trees_entries_are_shortest_g_prime_paths() {
    for seed in 0..100 {
        let n = 10 + (seed as usize * 7) % 51;
        let g = gnp(n, 0.1, None, 300 + seed);
        let t = farthest_from(&g, 0);
        let base = compute_base_path(&g, 0, t).unwrap();
        let d = compute_detour_set_trees(&g, &base).unwrap();
        structural(&g, &base, &d).unwrap();
        let table = path_vertex_distances(&g, base.vertices());
        for e in &d.entries {
            assert_eq!(table[e.rho][e.x], Some(d.c));
        }
    }
}

#[test]
fn coverage_on_small_graphs() {
    let mut long = 0;
    for seed in 0..50u64 {
        let inst = planted(20 + (seed as usize % 21), 700 + seed);
        let (g, s, t) = (inst.graph, inst.s, inst.t);
        let base = compute_base_path(&g, s, t).unwrap();
        let trees = compute_detour_set_trees(&g, &base).unwrap();
        let (dec, _) = compute_detour_set_decremental(&g, &base).unwrap();
        assert_eq!(coverage_violations(&g, s, t, &trees), Vec::<usize>::new());
        assert_eq!(coverage_violations(&g, s, t, &dec), Vec::<usize>::new());
        long += enumerate_long_triples(&g, s, t).unwrap().len();
    }
    assert!(long > 0);
}

#[test]
fn both_algorithms_give_identical_lengths() {
    for seed in 0..30 {
        let inst = path_plus(80, 240, seed);
        let a = replacement_paths(&inst.graph, inst.s, inst.t).unwrap();
        let opts = RpOptions { algo: DetourAlgo::Decremental, ..Default::default() };
        let b = replacement_paths_with(&inst.graph, inst.s, inst.t, &opts).unwrap();
        assert_eq!(a.lengths, b.lengths);
        let naive = naive_replacement_paths(&inst.graph, inst.s, inst.t).unwrap();
        assert_eq!(a.lengths, as_usize(&naive.lengths));
    }
}

#[test]
fn second_shortest_is_minimum_replacement() {
    let g = gnp(40, 0.12, None, 2);
    let t = farthest_from(&g, 0);
    let r = replacement_paths(&g, 0, t).unwrap();
    let best = r.lengths.iter().flatten().min().copied();
    assert_eq!(second_shortest_path(&g, 0, t).unwrap(), best);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn exact_on_random_graphs(g in unit_graph(14), s in 0usize..14, t in 0usize..14) {
        let (s, t) = (s % g.n(), t % g.n());
        let Ok(naive) = naive_replacement_paths(&g, s, t) else {
            prop_assert!(replacement_paths(&g, s, t).is_err());
            return Ok(());
        };
        for algo in [DetourAlgo::Trees, DetourAlgo::Decremental] {
            let r = replacement_paths_with(&g, s, t, &RpOptions { algo, ..Default::default() }).unwrap();
            prop_assert_eq!(r.base.vertices(), naive.path.as_slice());
            let expect: Vec<Option<usize>> = naive.lengths.iter().map(|x| x.map(|d| d as usize)).collect();
            prop_assert_eq!(&r.lengths, &expect);
            for i in 0..r.base.k() {
                if let Some(len) = r.lengths[i] {
                    let w = r.witness(i).unwrap();
                    prop_assert_eq!(w.hops(), len);
                    prop_assert!(w.avoids(&edge_faults(&naive.path, i)));
                    prop_assert_eq!(w.recompute_weight(&g), Some(len as u64));
                }
            }
            prop_assert!(r.detours.len() <= g.n());
        }
    }
}
