//! Every graph on a few vertices, one per isomorphism class.

use std::collections::BTreeSet;

use rayon::prelude::*;

use super::Graph;

/// Graph from an upper-triangle mask as produced by
/// [`Graph::adjacency_mask`].
pub fn from_mask(n: usize, mask: u64) -> Graph {
    let mut edges = Vec::new();
    let mut bit = 0;
    for u in 0..n {
        for v in u + 1..n {
            if mask >> bit & 1 == 1 {
                edges.push((u, v));
            }
            bit += 1;
        }
    }
    Graph::new(n, edges).expect("mask edges are simple")
}

/// One graph per isomorphism class on `n` vertices (`1 <= n <= 8`), in
/// ascending canonical mask order. Built by adding a vertex with every
/// possible neighbourhood to each class on `n - 1` vertices.
pub fn all_graphs(n: usize) -> Vec<Graph> {
    assert!((1..=8).contains(&n), "catalog covers 1..=8 vertices");
    let mut level: Vec<Graph> = vec![Graph::empty(1).expect("one vertex")];
    for m in 2..=n {
        let grown: BTreeSet<u64> = level
            .par_iter()
            .flat_map_iter(|g| {
                (0u64..1 << (m - 1)).map(move |nbrs| {
                    let mut edges: Vec<(usize, usize)> = g.edges().collect();
                    edges.extend((0..m - 1).filter(|&u| nbrs >> u & 1 == 1).map(|u| (u, m - 1)));
                    Graph::new(m, edges).expect("simple").canonical_mask()
                })
            })
            .collect::<Vec<u64>>()
            .into_iter()
            .collect();
        level = grown.into_iter().map(|mask| from_mask(m, mask)).collect();
    }
    level
}

/// Connected classes on `n` vertices.
pub fn connected_graphs(n: usize) -> Vec<Graph> {
    all_graphs(n).into_iter().filter(Graph::is_connected).collect()
}
