use std::collections::VecDeque;

use super::Graph;
use crate::error::GraphError;

impl Graph {
    /// Shortest path from `from` to the first vertex satisfying `is_target`,
    /// never entering a vertex for which `blocked` holds (the start may be
    /// blocked). Neighbours are scanned in label order, so ties go to the
    /// lexicographically smallest path.
    pub fn bfs_path_where(
        &self,
        from: usize,
        is_target: impl Fn(usize) -> bool,
        blocked: impl Fn(usize) -> bool,
    ) -> Option<Vec<usize>> {
        if is_target(from) {
            return Some(vec![from]);
        }
        let mut parent = vec![usize::MAX; self.n()];
        parent[from] = from;
        let mut queue = VecDeque::from([from]);
        while let Some(v) = queue.pop_front() {
            for &w in self.neighbors(v) {
                if parent[w] != usize::MAX || blocked(w) {
                    continue;
                }
                parent[w] = v;
                if is_target(w) {
                    let mut path = vec![w];
                    let mut x = w;
                    while x != from {
                        x = parent[x];
                        path.push(x);
                    }
                    path.reverse();
                    return Some(path);
                }
                queue.push_back(w);
            }
        }
        None
    }

    pub fn bfs_path(&self, from: usize, to: usize) -> Option<Vec<usize>> {
        self.bfs_path_where(from, |v| v == to, |_| false)
    }

    /// Hop distances from `from`; unreachable vertices get `usize::MAX`.
    pub fn distances(&self, from: usize) -> Vec<usize> {
        self.bfs_tree(from).0
    }

    /// A simple cycle through both edges, as a closed vertex sequence
    /// without the repeated start. Both edges are subdivided conceptually:
    /// the cycle is two vertex-disjoint paths joining the endpoint pairs.
    pub fn cycle_through_two_edges(
        &self,
        e1: (usize, usize),
        e2: (usize, usize),
    ) -> Result<Vec<usize>, GraphError> {
        let norm = |(a, b): (usize, usize)| (a.min(b), a.max(b));
        let (e1, e2) = (norm(e1), norm(e2));
        if !self.has_edge(e1.0, e1.1) || !self.has_edge(e2.0, e2.1) {
            return Err(GraphError::Precondition("both edges must belong to the graph".into()));
        }
        if e1 == e2 {
            return Err(GraphError::Precondition("the two edges must differ".into()));
        }
        let paths = two_disjoint_paths(self, &[e1.0, e1.1], &[e2.0, e2.1], |_| false)
            .ok_or_else(|| GraphError::Precondition("no cycle through both edges; graph not biconnected".into()))?;
        // paths[0] starts at e1.0, paths[1] at e1.1; each ends in e2.
        let mut cycle = paths[0].clone();
        cycle.extend(paths[1].iter().rev());
        Ok(cycle)
    }
}

/// Two vertex-disjoint paths joining `sources` (two vertices) to `targets`
/// (two vertices), found by unit-capacity vertex-split flow. A vertex in
/// both sets may serve as a one-vertex path. Paths never pass through a
/// target before their end, nor through blocked vertices. The returned
/// paths start at `sources[0]` and `sources[1]` respectively.
pub fn two_disjoint_paths(
    g: &Graph,
    sources: &[usize; 2],
    targets: &[usize; 2],
    blocked: impl Fn(usize) -> bool,
) -> Option<[Vec<usize>; 2]> {
    if sources[0] == sources[1] || targets[0] == targets[1] {
        return None;
    }
    let n = g.n();
    let is_target = |v: usize| targets.contains(&v);
    let is_source = |v: usize| sources.contains(&v);
    // Node 2v is v_in, 2v+1 is v_out; 2n is the source, 2n+1 the sink.
    let (src, sink) = (2 * n, 2 * n + 1);
    let mut flow: std::collections::HashMap<(usize, usize), i32> = Default::default();
    let cap = |a: usize, b: usize| -> i32 {
        if a == src {
            return (b % 2 == 0 && b < 2 * n && is_source(b / 2)) as i32;
        }
        if b == sink {
            return (a % 2 == 1 && a < 2 * n && is_target(a / 2)) as i32;
        }
        if a >= 2 * n || b >= 2 * n {
            return 0;
        }
        let (u, v) = (a / 2, b / 2);
        if a % 2 == 0 && b == a + 1 {
            return (!blocked(u) || is_source(u)) as i32;
        }
        if a % 2 == 1 && b % 2 == 0 && g.has_edge(u, v) && !is_target(u) && !blocked(v) && !is_source(v) {
            return 1;
        }
        0
    };
    let out_nodes = |a: usize| -> Vec<usize> {
        if a == src {
            let mut v: Vec<usize> = sources.iter().map(|&s| 2 * s).collect();
            v.sort_unstable();
            return v;
        }
        if a == sink {
            let mut v: Vec<usize> = targets.iter().map(|&t| 2 * t + 1).collect();
            v.sort_unstable();
            return v;
        }
        let u = a / 2;
        let mut v = Vec::new();
        if a % 2 == 0 {
            v.push(a + 1);
            v.extend(g.neighbors(u).iter().map(|&w| 2 * w + 1));
        } else {
            v.push(a - 1);
            v.extend(g.neighbors(u).iter().map(|&w| 2 * w));
            if is_target(u) {
                v.push(sink);
            }
            if is_source(u) {
                v.push(src);
            }
        }
        v
    };
    for _ in 0..2 {
        let mut prev = vec![usize::MAX; 2 * n + 2];
        prev[src] = src;
        let mut queue = VecDeque::from([src]);
        while let Some(a) = queue.pop_front() {
            if a == sink {
                break;
            }
            for b in out_nodes(a) {
                if prev[b] != usize::MAX {
                    continue;
                }
                let f = flow.get(&(a, b)).copied().unwrap_or(0);
                if cap(a, b) - f > 0 {
                    prev[b] = a;
                    queue.push_back(b);
                }
            }
        }
        if prev[sink] == usize::MAX {
            return None;
        }
        let mut b = sink;
        while b != src {
            let a = prev[b];
            *flow.entry((a, b)).or_insert(0) += 1;
            *flow.entry((b, a)).or_insert(0) -= 1;
            b = a;
        }
    }
    let mut result: [Vec<usize>; 2] = Default::default();
    for (slot, &s) in sources.iter().enumerate() {
        let mut path = vec![s];
        let mut a = 2 * s + 1;
        loop {
            if flow.get(&(a, sink)).copied().unwrap_or(0) > 0 {
                break;
            }
            let next = g
                .neighbors(a / 2)
                .iter()
                .map(|&w| 2 * w)
                .find(|&b| flow.get(&(a, b)).copied().unwrap_or(0) > 0)?;
            path.push(next / 2);
            a = next + 1;
        }
        result[slot] = path;
    }
    Some(result)
}

/// True when `cycle` lists at least three distinct vertices with each
/// consecutive pair (including last to first) adjacent in `g`.
pub fn is_simple_cycle(g: &Graph, cycle: &[usize]) -> bool {
    let mut seen = vec![false; g.n()];
    cycle.len() >= 3
        && cycle.iter().all(|&v| v < g.n() && !std::mem::replace(&mut seen[v], true))
        && cycle_edges(cycle).all(|(u, v)| g.has_edge(u, v))
}

/// Consecutive pairs of a closed vertex sequence, including the wrap.
pub fn cycle_edges(cycle: &[usize]) -> impl Iterator<Item = (usize, usize)> + '_ {
    (0..cycle.len()).map(move |i| (cycle[i], cycle[(i + 1) % cycle.len()]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{Family, ThetaParams};

    fn contains_edge(cycle: &[usize], (a, b): (usize, usize)) -> bool {
        cycle_edges(cycle).any(|(u, v)| (u, v) == (a, b) || (u, v) == (b, a))
    }

    #[test]
    fn k4_cycle_through_opposite_edges() {
        let k4 = Family::Complete.build(4).unwrap();
        let c = k4.cycle_through_two_edges((0, 1), (2, 3)).unwrap();
        assert_eq!(c.len(), 4);
        assert!(is_simple_cycle(&k4, &c));
        assert!(contains_edge(&c, (0, 1)) && contains_edge(&c, (2, 3)));
    }

    #[test]
    fn c5_cycle_is_whole_graph() {
        let c5 = Family::Cycle.build(5).unwrap();
        let c = c5.cycle_through_two_edges((0, 1), (2, 3)).unwrap();
        let mut sorted = c.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn theta_cycle_through_p_and_q() {
        let t = ThetaParams::new(1, 2, 2).unwrap();
        let g = t.graph();
        let f = t.canonical_frame();
        let e1 = (f.p[0], f.p[1]);
        let e2 = (f.q[0], f.q[1]);
        let c = g.cycle_through_two_edges(e1, e2).unwrap();
        assert!(is_simple_cycle(&g, &c));
        assert!(contains_edge(&c, e1) && contains_edge(&c, e2));
        // P has 2 edges, Q has 3, and the alternative through R is longer
        assert_eq!(c.len(), 5);
    }

    #[test]
    fn adjacent_edges_share_a_vertex() {
        let c4 = Family::Cycle.build(4).unwrap();
        let c = c4.cycle_through_two_edges((0, 1), (1, 2)).unwrap();
        assert!(is_simple_cycle(&c4, &c));
        assert_eq!(c.len(), 4);
    }

    #[test]
    fn cycle_through_edges_rejects_bad_input() {
        let p = Family::Path.build(4).unwrap();
        assert!(p.cycle_through_two_edges((0, 1), (2, 3)).is_err());
        assert!(p.cycle_through_two_edges((0, 1), (0, 1)).is_err());
        assert!(p.cycle_through_two_edges((0, 2), (2, 3)).is_err());
    }

    #[test]
    fn bfs_prefers_low_labels() {
        let c4 = Family::Cycle.build(4).unwrap();
        assert_eq!(c4.bfs_path(0, 2).unwrap(), vec![0, 1, 2]);
        assert_eq!(
            c4.bfs_path_where(0, |v| v == 2, |v| v == 1).unwrap(),
            vec![0, 3, 2]
        );
    }
}
