use std::collections::HashSet;
use std::ops::ControlFlow;

use super::connectivity::tree_cycle;
use super::Graph;
use crate::error::GraphError;

/// Internal vertex counts of the three paths of a θ graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ThetaParams {
    pub i: usize,
    pub j: usize,
    pub k: usize,
}

impl ThetaParams {
    pub fn new(i: usize, j: usize, k: usize) -> Result<Self, GraphError> {
        if !(i <= j && j <= k) {
            return Err(GraphError::Parameter(format!("theta needs i <= j <= k, got ({i},{j},{k})")));
        }
        if j == 0 {
            return Err(GraphError::Parameter("theta(0,0,k) would need parallel edges".into()));
        }
        Ok(ThetaParams { i, j, k })
    }

    pub fn vertex_count(&self) -> usize {
        self.i + self.j + self.k + 2
    }

    /// Vertex 0 is `endp1`, vertex 1 is `endp2`; then the internal vertices
    /// of P, Q and R in order from the `endp1` side.
    pub fn canonical_frame(&self) -> ThetaFrame {
        let mut next = 2;
        let mut path = |len: usize| {
            let mut p = vec![0];
            p.extend(next..next + len);
            p.push(1);
            next += len;
            p
        };
        let (p, q, r) = (path(self.i), path(self.j), path(self.k));
        let mut edges = Vec::new();
        for path in [&p, &q, &r] {
            edges.extend(path.windows(2).map(|w| (w[0], w[1])));
        }
        let host = Graph::new(self.vertex_count(), edges).expect("theta edges are simple");
        ThetaFrame { host, endp1: 0, endp2: 1, p, q, r }
    }

    pub fn graph(&self) -> Graph {
        self.canonical_frame().host
    }

    /// At least one path length differs in parity from another.
    pub fn has_odd_cycle(&self) -> bool {
        !(self.i % 2 == self.j % 2 && self.j % 2 == self.k % 2)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PathId {
    P,
    Q,
    R,
}

impl PathId {
    pub const ALL: [PathId; 3] = [PathId::P, PathId::Q, PathId::R];
}

/// A θ subgraph of `host`: three internally disjoint `endp1`–`endp2` paths,
/// ordered so that `|p| <= |q| <= |r|`. Each path lists its endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaFrame {
    pub host: Graph,
    pub endp1: usize,
    pub endp2: usize,
    pub p: Vec<usize>,
    pub q: Vec<usize>,
    pub r: Vec<usize>,
}

impl ThetaFrame {
    /// Validates three endpoint-to-endpoint paths and sorts them by length
    /// (ties by label sequence).
    pub fn from_paths(host: &Graph, mut paths: [Vec<usize>; 3]) -> Result<Self, GraphError> {
        let bad = |m: &str| Err(GraphError::Precondition(format!("not a theta frame: {m}")));
        let (a, b) = match paths[0].as_slice() {
            [a, .., b] => (*a, *b),
            _ => return bad("path too short"),
        };
        if a == b {
            return bad("endpoints coincide");
        }
        let mut seen = HashSet::new();
        for path in &paths {
            if path.len() < 2 || path[0] != a || path[path.len() - 1] != b {
                return bad("paths must join the same endpoints");
            }
            if path.windows(2).any(|w| !host.has_edge(w[0], w[1])) {
                return bad("path uses a non-edge");
            }
            for &v in &path[1..path.len() - 1] {
                if v == a || v == b || !seen.insert(v) {
                    return bad("paths are not internally disjoint");
                }
            }
        }
        paths.sort_by(|x, y| x.len().cmp(&y.len()).then_with(|| x.cmp(y)));
        if paths[1].len() == 2 {
            return bad("two paths are the same edge");
        }
        let [p, q, r] = paths;
        Ok(ThetaFrame { host: host.clone(), endp1: a, endp2: b, p, q, r })
    }

    pub fn params(&self) -> ThetaParams {
        ThetaParams { i: self.p.len() - 2, j: self.q.len() - 2, k: self.r.len() - 2 }
    }

    pub fn path(&self, id: PathId) -> &[usize] {
        match id {
            PathId::P => &self.p,
            PathId::Q => &self.q,
            PathId::R => &self.r,
        }
    }

    /// All frame vertices: endpoints first, then P, Q, R internals.
    pub fn vertices(&self) -> Vec<usize> {
        let mut out = vec![self.endp1, self.endp2];
        for id in PathId::ALL {
            let p = self.path(id);
            out.extend_from_slice(&p[1..p.len() - 1]);
        }
        out
    }

    /// The cycle formed by paths `a` and `b`, starting at `endp1`, going
    /// out along `a` and back along `b`.
    pub fn cycle(&self, a: PathId, b: PathId) -> Vec<usize> {
        let pa = self.path(a);
        let pb = self.path(b);
        let mut out = pa.to_vec();
        out.extend(pb[1..pb.len() - 1].iter().rev());
        out
    }

    pub fn has_odd_cycle(&self) -> bool {
        self.params().has_odd_cycle()
    }

    /// The frame as a graph on its own vertices, with the map back to host
    /// labels.
    pub fn subgraph(&self) -> (Graph, Vec<usize>) {
        let verts = self.vertices();
        let mut local = std::collections::HashMap::new();
        for (i, &v) in verts.iter().enumerate() {
            local.insert(v, i);
        }
        let mut edges = Vec::new();
        for id in PathId::ALL {
            edges.extend(self.path(id).windows(2).map(|w| (local[&w[0]], local[&w[1]])));
        }
        (Graph::new(verts.len(), edges).expect("frame edges are simple"), verts)
    }
}

impl Graph {
    /// Visits θ subgraphs in a fixed order: cycles closed by non-tree edges
    /// of BFS trees (roots ascending), each extended by every ear hanging
    /// off it. Small graphs additionally get an exhaustive pass over all
    /// simple cycles, so every θ subgraph shape reachable that way is seen.
    pub fn for_each_theta_frame<B>(&self, mut visit: impl FnMut(ThetaFrame) -> ControlFlow<B>) -> Option<B> {
        let mut seen_cycles: HashSet<Vec<usize>> = HashSet::new();
        for root in 0..self.n() {
            let (dist, parent) = self.bfs_tree(root);
            for v in 0..self.n() {
                if dist[v] == usize::MAX {
                    continue;
                }
                for &w in self.neighbors(v) {
                    if v > w || parent[v] == w || parent[w] == v {
                        continue;
                    }
                    let cycle = normalize_cycle(tree_cycle(&parent, &dist, v, w));
                    if seen_cycles.insert(cycle.clone()) {
                        if let ControlFlow::Break(b) = self.ears_of(&cycle, &mut visit) {
                            return Some(b);
                        }
                    }
                }
            }
        }
        if self.n() <= 10 {
            let mut all = Vec::new();
            self.all_simple_cycles(&mut all);
            for cycle in all {
                if seen_cycles.insert(cycle.clone()) {
                    if let ControlFlow::Break(b) = self.ears_of(&cycle, &mut visit) {
                        return Some(b);
                    }
                }
            }
        }
        None
    }

    fn ears_of<B>(
        &self,
        cycle: &[usize],
        visit: &mut impl FnMut(ThetaFrame) -> ControlFlow<B>,
    ) -> ControlFlow<B> {
        let len = cycle.len();
        let mut pos = vec![usize::MAX; self.n()];
        for (i, &v) in cycle.iter().enumerate() {
            pos[v] = i;
        }
        for (xi, &x) in cycle.iter().enumerate() {
            let prev = cycle[(xi + len - 1) % len];
            let next = cycle[(xi + 1) % len];
            for &y in self.neighbors(x) {
                if y == prev || y == next {
                    continue;
                }
                let ear = if pos[y] != usize::MAX {
                    if pos[y] < xi {
                        continue; // chord already seen from the other end
                    }
                    vec![x, y]
                } else {
                    match self.bfs_path_where(
                        y,
                        |v| pos[v] != usize::MAX && v != x,
                        |v| v == x,
                    ) {
                        Some(tail) => std::iter::once(x).chain(tail).collect(),
                        None => continue,
                    }
                };
                let z = *ear.last().unwrap();
                let (zi, xi_) = (pos[z], xi);
                let arc = |from: usize, step: usize| {
                    let mut out = vec![cycle[from]];
                    let mut i = from;
                    while i != zi {
                        i = (i + step) % len;
                        out.push(cycle[i]);
                    }
                    out
                };
                let forward = arc(xi_, 1);
                let backward = arc(xi_, len - 1);
                let (a, b) = (x.min(z), x.max(z));
                let orient = |p: Vec<usize>| if p[0] == a { p } else { p.into_iter().rev().collect() };
                let paths = [orient(forward), orient(backward), orient(ear)];
                debug_assert_eq!(paths[0][0], a);
                debug_assert_eq!(*paths[2].last().unwrap(), b);
                if let Ok(frame) = ThetaFrame::from_paths(self, paths) {
                    visit(frame)?;
                }
            }
        }
        ControlFlow::Continue(())
    }

    fn all_simple_cycles(&self, out: &mut Vec<Vec<usize>>) {
        // Each cycle is found from its smallest vertex, in one direction.
        fn dfs(g: &Graph, start: usize, path: &mut Vec<usize>, on: &mut [bool], out: &mut Vec<Vec<usize>>) {
            let v = *path.last().unwrap();
            for &w in g.neighbors(v) {
                if w < start {
                    continue;
                }
                if w == start && path.len() >= 3 && path[1] < v {
                    out.push(path.clone());
                } else if !on[w] {
                    on[w] = true;
                    path.push(w);
                    dfs(g, start, path, on, out);
                    path.pop();
                    on[w] = false;
                }
            }
        }
        for start in 0..self.n() {
            let mut on = vec![false; self.n()];
            on[start] = true;
            dfs(self, start, &mut vec![start], &mut on, out);
        }
        out.sort_by(|x, y| x.len().cmp(&y.len()).then_with(|| x.cmp(y)));
    }

    /// First θ subgraph in the order of [`Graph::for_each_theta_frame`].
    /// With `require_odd_cycle` the frame must contain an odd cycle and not
    /// be θ(1,2,2); frames other than θ(0,1,1) are preferred.
    pub fn find_theta_subgraph(&self, require_odd_cycle: bool) -> Result<ThetaFrame, GraphError> {
        if !self.is_biconnected() || self.n() < 4 {
            return Err(GraphError::Precondition("theta search needs a biconnected graph".into()));
        }
        if self.is_cycle_graph() {
            return Err(GraphError::Precondition("a cycle has no theta subgraph".into()));
        }
        if !require_odd_cycle {
            return self
                .for_each_theta_frame(ControlFlow::Break)
                .ok_or_else(|| GraphError::Internal("no theta subgraph in a biconnected non-cycle".into()));
        }
        if self.is_bipartite() {
            return Err(GraphError::Precondition("odd theta search needs a non-bipartite graph".into()));
        }
        let bad = ThetaParams { i: 1, j: 2, k: 2 };
        let k4e = ThetaParams { i: 0, j: 1, k: 1 };
        let mut fallback = None;
        let found = self.for_each_theta_frame(|f| {
            let t = f.params();
            if !t.has_odd_cycle() || t == bad {
                ControlFlow::Continue(())
            } else if t == k4e {
                fallback.get_or_insert(f);
                ControlFlow::Continue(())
            } else {
                ControlFlow::Break(f)
            }
        });
        found.or(fallback).ok_or_else(|| {
            if self.is_isomorphic_small(&bad.graph()) {
                GraphError::Precondition("theta(1,2,2) has no other odd theta subgraph".into())
            } else {
                GraphError::Internal("no odd theta subgraph found".into())
            }
        })
    }
}

/// Rotates a cycle to start at its smallest vertex, heading towards the
/// smaller of its two neighbours.
fn normalize_cycle(mut c: Vec<usize>) -> Vec<usize> {
    let m = (0..c.len()).min_by_key(|&i| c[i]).unwrap();
    c.rotate_left(m);
    if c[c.len() - 1] < c[1] {
        c[1..].reverse();
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Family;

    #[test]
    fn params_validation() {
        assert!(ThetaParams::new(0, 0, 3).is_err());
        assert!(ThetaParams::new(2, 1, 3).is_err());
        assert_eq!(ThetaParams::new(0, 1, 1).unwrap().vertex_count(), 4);
    }

    #[test]
    fn canonical_frame_round_trips() {
        let t = ThetaParams::new(1, 2, 3).unwrap();
        let f = t.canonical_frame();
        assert_eq!(f.params(), t);
        let again = ThetaFrame::from_paths(&f.host, [f.r.clone(), f.p.clone(), f.q.clone()]).unwrap();
        assert_eq!(again, f);
        assert_eq!(f.cycle(PathId::P, PathId::Q).len(), 2 + 1 + 2);
    }

    #[test]
    fn k4_gives_theta_011() {
        let k4 = Family::Complete.build(4).unwrap();
        let f = k4.find_theta_subgraph(false).unwrap();
        assert_eq!(f.params(), ThetaParams::new(0, 1, 1).unwrap());
        // K4 has no odd frame besides theta(0,1,1)
        assert_eq!(k4.find_theta_subgraph(true).unwrap().params(), f.params());
    }

    #[test]
    fn theta_233_is_its_own_odd_frame() {
        let t = ThetaParams::new(2, 3, 3).unwrap();
        let f = t.graph().find_theta_subgraph(true).unwrap();
        assert_eq!(f.params(), t);
        assert!(f.has_odd_cycle());
    }

    #[test]
    fn c6_with_chord_uses_chord_as_p() {
        let g = Graph::new(6, (0..6).map(|i| (i, (i + 1) % 6)).chain([(0, 3)])).unwrap();
        let f = g.find_theta_subgraph(false).unwrap();
        assert_eq!(f.p, vec![0, 3]);
        assert_eq!(f.params(), ThetaParams::new(0, 2, 2).unwrap());
    }

    #[test]
    fn theta_122_has_no_other_odd_frame() {
        let g = ThetaParams::new(1, 2, 2).unwrap().graph();
        assert!(matches!(g.find_theta_subgraph(true), Err(GraphError::Precondition(_))));
        assert!(g.find_theta_subgraph(false).is_ok());
    }

    #[test]
    fn preconditions() {
        assert!(Family::Cycle.build(6).unwrap().find_theta_subgraph(false).is_err());
        assert!(Family::Path.build(4).unwrap().find_theta_subgraph(false).is_err());
        let grid = Family::Grid.build(9).unwrap();
        assert!(grid.find_theta_subgraph(true).is_err());
        assert!(grid.find_theta_subgraph(false).is_ok());
    }
}
