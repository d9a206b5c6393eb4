//! Randomized checks at sizes beyond the exhaustive sweeps.

use std::collections::BTreeMap;

use proptest::prelude::*;
use tubelat::hopf::{self, FormalSum};
use tubelat::weakorder::{self, join_by_closure, meet_by_closure, weak_le};
use tubelat::{oracle, tubing, Graph, Permutation};

fn graph(n: usize) -> impl Strategy<Value = Graph> {
    let pairs: Vec<(usize, usize)> = (1..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j))).collect();
    proptest::collection::vec(any::<bool>(), pairs.len())
        .prop_map(move |keep| Graph::new(n, pairs.iter().zip(keep).filter(|(_, k)| *k).map(|(p, _)| *p)).unwrap())
}

/// Close a random edge set under `{i,k} ⇒ {i,j},{j,k}` for `i < j < k`.
fn filled_graph(n: usize) -> impl Strategy<Value = Graph> {
    graph(n).prop_map(move |g| {
        let mut edges = g.edges();
        let mut k = 0;
        while k < edges.len() {
            let (a, c) = edges[k];
            for b in a + 1..c {
                for e in [(a, b), (b, c)] {
                    if !edges.contains(&e) {
                        edges.push(e);
                    }
                }
            }
            k += 1;
        }
        Graph::new(n, edges).unwrap()
    })
}

fn permutation(n: usize) -> impl Strategy<Value = Permutation> {
    Just((1..=n).collect::<Vec<_>>()).prop_shuffle().prop_map(|w| Permutation::new(w).unwrap())
}

fn sorted(mut v: Vec<tubing::Tubing>) -> Vec<tubing::Tubing> {
    v.sort();
    v
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn enumerations_agree(g in (5usize..=7).prop_flat_map(graph)) {
        let sweep = sorted(tubing::enumerate_by_sweep(&g));
        prop_assert_eq!(&sweep, &sorted(tubing::enumerate_by_decomposition(&g)));
        prop_assert_eq!(&sweep, &oracle::maximal_tubings_by_cliques(&g));
    }

    #[test]
    fn chi_tau_round_trip(g in (5usize..=7).prop_flat_map(graph)) {
        for x in tubing::enumerate_maximal_tubings(&g) {
            let t = tubing::tau(&x).unwrap();
            prop_assert_eq!(tubing::chi(&t), x);
        }
    }

    #[test]
    fn fibers_are_linear_extensions(g in graph(6)) {
        let mut sizes: BTreeMap<tubing::Tubing, usize> = BTreeMap::new();
        for w in Permutation::all(6) {
            *sizes.entry(tubing::psi(&g, &w).unwrap()).or_default() += 1;
        }
        prop_assert_eq!(sizes.len(), tubing::enumerate_maximal_tubings(&g).len());
        for (x, count) in sizes {
            prop_assert_eq!(tubing::tau(&x).unwrap().linear_extensions().len(), count);
        }
    }

    #[test]
    fn closure_join_is_least_upper_bound((u, w) in (6usize..=7).prop_flat_map(|n| (permutation(n), permutation(n)))) {
        let j = join_by_closure(&u, &w);
        let m = meet_by_closure(&u, &w);
        prop_assert!(weak_le(&u, &j) && weak_le(&w, &j));
        prop_assert!(weak_le(&m, &u) && weak_le(&m, &w));
        for v in Permutation::all(u.len()) {
            if weak_le(&u, &v) && weak_le(&w, &v) {
                prop_assert!(weak_le(&j, &v));
            }
            if weak_le(&v, &u) && weak_le(&v, &w) {
                prop_assert!(weak_le(&v, &m));
            }
        }
    }

    #[test]
    fn theta_matches_fibers_on_six_vertices(g in filled_graph(6)) {
        prop_assert!(g.is_filled());
        let c = weakorder::theta_g(&g).unwrap();
        prop_assert_eq!(c.classes(), weakorder::psi_fibers(&g));
    }

    #[test]
    fn mr_coproduct_is_multiplicative((u, w) in (0usize..=3, 0usize..=3).prop_flat_map(|(a, b)| (permutation(a), permutation(b)))) {
        let lhs = hopf::mr_product(&u, &w).map_linear(hopf::mr_coproduct);
        let mut rhs = FormalSum::zero();
        for ((a, b), c) in hopf::mr_coproduct(&u).iter() {
            for ((x, y), d) in hopf::mr_coproduct(&w).iter() {
                let left = hopf::mr_product(a, x);
                let right = hopf::mr_product(b, y);
                rhs.add_scaled(&hopf::tensor(&left, &right), &(c * d));
            }
        }
        prop_assert_eq!(lhs, rhs);
    }
}
