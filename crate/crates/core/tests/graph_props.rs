//! Graph predicates against brute-force oracles on small random graphs.

use fsroute::graph::{cycle_edges, is_simple_cycle, Graph, PathId, ThetaParams};
use proptest::prelude::*;

fn graph_strategy(min_n: usize, max_n: usize) -> impl Strategy<Value = Graph> {
    (min_n..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let mut edges = Vec::new();
            let mut it = bits.into_iter();
            for u in 0..n {
                for v in u + 1..n {
                    if it.next().unwrap() {
                        edges.push((u, v));
                    }
                }
            }
            Graph::new(n, edges).unwrap()
        })
    })
}

fn component_count_without(g: &Graph, removed: usize) -> usize {
    let keep: Vec<usize> = (0..g.n()).filter(|&v| v != removed).collect();
    g.induced_subgraph(&keep).unwrap().0.components().len()
}

/// Every simple cycle, each once, as a vertex list.
fn brute_cycles(g: &Graph) -> Vec<Vec<usize>> {
    fn go(g: &Graph, start: usize, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let v = *path.last().unwrap();
        for &w in g.neighbors(v) {
            if w == start && path.len() >= 3 && path[1] < v {
                out.push(path.clone());
            } else if w > start && !path.contains(&w) {
                path.push(w);
                go(g, start, path, out);
                path.pop();
            }
        }
    }
    let mut out = Vec::new();
    for s in 0..g.n() {
        go(g, s, &mut vec![s], &mut out);
    }
    out
}

fn has_edge_in(cycle: &[usize], (a, b): (usize, usize)) -> bool {
    cycle_edges(cycle).any(|(u, v)| (u, v) == (a, b) || (u, v) == (b, a))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn cut_vertices_match_deletion(g in graph_strategy(1, 8)) {
        let base = g.components().len();
        let brute: Vec<usize> = if g.n() == 1 {
            vec![]
        } else {
            (0..g.n()).filter(|&v| component_count_without(&g, v) > base).collect()
        };
        prop_assert_eq!(g.cut_vertices(), brute);
    }

    #[test]
    fn removable_vertex_keeps_connectivity(g in graph_strategy(2, 8)) {
        match g.removable_vertex() {
            Ok(v) => {
                prop_assert!(g.is_connected());
                prop_assert!(g.without_vertex(v).unwrap().0.is_connected());
            }
            Err(_) => prop_assert!(!g.is_connected()),
        }
    }

    #[test]
    fn bipartite_iff_no_odd_cycle(g in graph_strategy(1, 8)) {
        let odd = brute_cycles(&g).iter().any(|c| c.len() % 2 == 1);
        prop_assert_eq!(g.is_bipartite(), !odd);
        match g.bipartition() {
            fsroute::graph::Bipartition::Coloring(c) => {
                for (u, v) in g.edges() {
                    prop_assert_ne!(c[u], c[v]);
                }
            }
            fsroute::graph::Bipartition::OddCycle(fsroute::graph::OddCycle(c)) => {
                prop_assert!(c.len() % 2 == 1);
                prop_assert!(is_simple_cycle(&g, &c));
            }
        }
    }

    #[test]
    fn cycle_through_two_edges_matches_enumeration(g in graph_strategy(3, 8), a in any::<prop::sample::Index>(), b in any::<prop::sample::Index>()) {
        let edges: Vec<_> = g.edges().collect();
        prop_assume!(edges.len() >= 2);
        let e1 = edges[a.index(edges.len())];
        let e2 = edges[b.index(edges.len())];
        prop_assume!(e1 != e2);
        let exists = brute_cycles(&g).iter().any(|c| has_edge_in(c, e1) && has_edge_in(c, e2));
        match g.cycle_through_two_edges(e1, e2) {
            Ok(c) => {
                prop_assert!(is_simple_cycle(&g, &c));
                prop_assert!(has_edge_in(&c, e1) && has_edge_in(&c, e2));
            }
            Err(_) => prop_assert!(!exists),
        }
        if g.is_biconnected() {
            prop_assert!(exists);
        }
    }

    #[test]
    fn theta_frames_are_valid(g in graph_strategy(4, 8), odd in any::<bool>()) {
        prop_assume!(g.is_biconnected() && !g.is_cycle_graph());
        let bad = ThetaParams::new(1, 2, 2).unwrap();
        if odd && (g.is_bipartite() || g.is_isomorphic_small(&bad.graph())) {
            prop_assert!(g.find_theta_subgraph(true).is_err());
            return Ok(());
        }
        let f = g.find_theta_subgraph(odd).unwrap();
        let t = f.params();
        prop_assert!(t.i <= t.j && t.j <= t.k && t.j >= 1);
        let mut interior = Vec::new();
        for id in PathId::ALL {
            let p = f.path(id);
            prop_assert_eq!(p[0], f.endp1);
            prop_assert_eq!(*p.last().unwrap(), f.endp2);
            for w in p.windows(2) {
                prop_assert!(g.has_edge(w[0], w[1]));
            }
            interior.extend_from_slice(&p[1..p.len() - 1]);
        }
        let count = interior.len();
        interior.sort_unstable();
        interior.dedup();
        prop_assert_eq!(interior.len(), count);
        prop_assert!(!interior.contains(&f.endp1) && !interior.contains(&f.endp2));
        let (sub, _) = f.subgraph();
        prop_assert!(sub.is_isomorphic_small(&t.graph()));
        if odd {
            prop_assert!(f.has_odd_cycle());
            prop_assert!(!sub.is_isomorphic_small(&bad.graph()));
        }
    }

    #[test]
    fn canonical_mask_is_relabeling_invariant(g in graph_strategy(1, 7), seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let mut perm: Vec<usize> = (0..g.n()).collect();
        perm.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
        let h = g.relabel(&perm).unwrap();
        prop_assert_eq!(g.canonical_mask(), h.canonical_mask());
        prop_assert!(g.is_isomorphic_small(&h));
    }
}
