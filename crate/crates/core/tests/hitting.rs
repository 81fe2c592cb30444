use ftpaths::gen::rng;
use ftpaths::hitting::*;
use proptest::prelude::*;
use rand::seq::index::sample;

fn family(members: Vec<Vec<usize>>, l: usize) -> PathFamily {
    PathFamily { members, l }
}

#[test]
fn singleton_is_forced() {
    let r = greedy_pivot_selection(&family(vec![vec![7]], 1), 10).unwrap();
    assert_eq!(r.pivots, vec![7]);
}

#[test]
fn overlapping_pairs() {
    let fam = family(vec![vec![1, 2], vec![2, 3], vec![3, 4]], 2);
    let r = greedy_pivot_selection(&fam, 5).unwrap();
    assert_eq!(r.pivots, vec![2, 3]);
    assert!(verify_hitting(&fam, &r));
}

#[test]
fn verifier_examples() {
    let fam = family(vec![vec![1, 2]], 2);
    assert!(verify_hitting(&fam, &PivotSet { pivots: vec![2] }));
    assert!(!verify_hitting(&fam, &PivotSet { pivots: vec![3] }));
}

#[test]
fn hundred_random_subsets() {
    let mut r = rng(77);
    let members: Vec<Vec<usize>> = (0..100).map(|_| sample(&mut r, 200, 10).into_vec()).collect();
    let fam = family(members, 10);
    let pivots = greedy_pivot_selection_audited(&fam, 200).unwrap();
    assert!(verify_hitting(&fam, &pivots));
    assert_eq!(greedy_bound(200, 10, 100), 94);
    assert!(pivots.len() <= 93);
}

#[test]
fn empty_family_needs_no_pivots() {
    let r = greedy_pivot_selection(&PathFamily::new(3), 10).unwrap();
    assert!(r.is_empty());
    assert_eq!(greedy_bound(10, 3, 0), 0);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn greedy_hits_within_bound(
        n in 2usize..60,
        l in 1usize..8,
        seeds in proptest::collection::vec(any::<u64>(), 1..40),
    ) {
        let l = l.min(n);
        let members: Vec<Vec<usize>> = seeds
            .iter()
            .map(|&s| sample(&mut rng(s), n, l).into_vec())
            .collect();
        let fam = family(members, l);
        let r = greedy_pivot_selection_audited(&fam, n).unwrap();
        prop_assert!(verify_hitting(&fam, &r));
        prop_assert!(r.len() <= greedy_bound(n, l, fam.q()));
        prop_assert_eq!(&r, &greedy_pivot_selection(&fam, n).unwrap());
    }
}
