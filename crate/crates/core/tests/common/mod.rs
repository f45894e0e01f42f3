//! Helpers shared by the integration tests: a deliberately plain BFS over
//! configurations, and the stored graph catalog.
#![allow(dead_code)]

use std::collections::{HashMap, VecDeque};
use std::path::PathBuf;

use fsroute::Graph;

/// Occupant lists reachable from `start` by friendly swaps, with their BFS
/// distance.
pub fn naive_bfs(x: &Graph, y: &Graph, start: &[usize]) -> HashMap<Vec<usize>, usize> {
    let mut dist = HashMap::from([(start.to_vec(), 0)]);
    let mut queue = VecDeque::from([start.to_vec()]);
    while let Some(occ) = queue.pop_front() {
        let d = dist[&occ];
        for (u, v) in y.edges() {
            if x.has_edge(occ[u], occ[v]) {
                let mut next = occ.clone();
                next.swap(u, v);
                if !dist.contains_key(&next) {
                    dist.insert(next.clone(), d + 1);
                    queue.push_back(next);
                }
            }
        }
    }
    dist
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for k in 0..n {
        out = out
            .into_iter()
            .flat_map(|p| (0..=k).map(move |i| {
                let mut q = p.clone();
                q.insert(i, k);
                q
            }))
            .collect();
    }
    out
}

/// `(size, diameter)` of every component, sorted, by BFS from every state.
pub fn naive_components(x: &Graph, y: &Graph) -> Vec<(usize, usize)> {
    let mut seen: HashMap<Vec<usize>, ()> = HashMap::new();
    let mut out = Vec::new();
    for p in permutations(x.n()) {
        if seen.contains_key(&p) {
            continue;
        }
        let comp = naive_bfs(x, y, &p);
        let diameter = comp.keys().map(|s| *naive_bfs(x, y, s).values().max().unwrap()).max().unwrap();
        out.push((comp.len(), diameter));
        seen.extend(comp.into_keys().map(|k| (k, ())));
    }
    out.sort_unstable();
    out
}

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

/// Graphs of `catalog.txt`, grouped under their `# ...` section titles.
pub fn read_catalog() -> Vec<(String, Vec<Graph>)> {
    let text = std::fs::read_to_string(fixture("catalog.txt")).expect("catalog fixture");
    let mut sections: Vec<(String, Vec<Graph>)> = Vec::new();
    for block in text.split("\n\n") {
        let block = block.trim();
        if block.lines().all(|l| l.starts_with('#')) && !block.starts_with("## ") {
            continue;
        }
        if let Some(title) = block.strip_prefix("## ") {
            sections.push((title.lines().next().unwrap().to_string(), Vec::new()));
            continue;
        }
        let g = Graph::parse_edge_list(block).expect("catalog entry parses");
        sections.last_mut().expect("section before graphs").1.push(g);
    }
    sections
}

/// `key,value` lines after a header, as pairs.
pub fn read_pairs(name: &str) -> Vec<(u64, u64)> {
    let text = std::fs::read_to_string(fixture(name)).expect("fixture");
    text.lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| {
            let (a, b) = l.split_once(',').unwrap();
            (a.trim().parse().unwrap(), b.trim().parse().unwrap())
        })
        .collect()
}
